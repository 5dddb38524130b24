#ifndef SIEVEKIT_IO_HPP
#define SIEVEKIT_IO_HPP

#include <string>

#include "sievekit/cut_tree.hpp"
#include "sievekit/sieves.hpp"
#include "sievekit/tight_span.hpp"
#include "sievekit/weight.hpp"

namespace sievekit::io {

enum class MatrixFormat { csv, json };

// CSV: first line of labels, then a square body. Cells hold exact numeric
// tokens: integers, decimals ("1.5", "2e-3") or fractions ("4/3").
// JSON: {"labels": [...], "matrix": [[...]]}; entries are numbers or the same
// exact tokens as strings. Integral JSON numbers stay exact; fractional JSON
// numbers pass through double, so exact non-integers belong in strings.
WeightSpace parse_matrix(const std::string& text, MatrixFormat format);
WeightSpace parse_matrix_csv(const std::string& text);
WeightSpace parse_matrix_json(const std::string& text);

std::string emit_matrix_csv(const WeightSpace& u);
std::string emit_matrix_json(const WeightSpace& u);

// Canonical sieve document: {"points": [...], "levels": [{"t": ..., "cover":
// [[labels]...]}, ...]} with sorted blocks and ascending thresholds.
std::string emit_sieve(const Sieve& s);
Sieve parse_sieve(const std::string& text);

// Dendrogram when every cover is a partition, layered cover diagram with
// shared point nodes otherwise.
std::string sieve_dot(const Sieve& s);
std::string tight_span_dot(const TightSpanReport& report);

std::string emit_decomposition(const CutDecomposition& dec);
std::string emit_certificate(const WeightSpace& d, const std::vector<Rational>& farkas);

std::string emit_tight_span(const TightSpanReport& report);

// Canonical scalar token: exact values as integer or "p/q" strings, doubles
// in shortest round-trip form.
std::string num_token(const Num& v);

}  // namespace sievekit::io

#endif
