#include "sievekit/io.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

namespace sievekit::io {

using nlohmann::ordered_json;

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    for (auto& s : out) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.pop_back();
    }
    return out;
}

Num parse_json_entry(const ordered_json& v, int row, int col) {
    try {
        if (v.is_string()) return Num::parse(v.get<std::string>());
        if (v.is_number_integer()) return Num(static_cast<std::int64_t>(v.get<std::int64_t>()));
        if (v.is_number_float()) return Num(v.get<double>());
    } catch (const parse_error& e) {
        throw parse_error("matrix entry (" + std::to_string(row + 1) + "," +
                          std::to_string(col + 1) + "): " + e.what());
    }
    throw parse_error("matrix entry (" + std::to_string(row + 1) + "," + std::to_string(col + 1) +
                      ") is not numeric");
}

ordered_json num_json(const Num& v) {
    if (v.is_exact()) {
        const Rational& r = v.rat();
        if (r.is_integer() && r.num().fits_int64()) return ordered_json(r.num().to_int64());
        return ordered_json(r.to_string());
    }
    return ordered_json(v.to_double());
}

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

std::string block_label(const std::vector<std::string>& labels) {
    std::string out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) out += ",";
        out += labels[i];
    }
    return out;
}

}  // namespace

std::string num_token(const Num& v) {
    if (v.is_exact()) return v.rat().to_string();
    std::ostringstream os;
    os.precision(17);
    os << v.to_double();
    return os.str();
}

WeightSpace parse_matrix(const std::string& text, MatrixFormat format) {
    return format == MatrixFormat::csv ? parse_matrix_csv(text) : parse_matrix_json(text);
}

WeightSpace parse_matrix_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        bool blank = true;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
        if (blank) continue;
        rows.push_back(split(line, ','));
    }
    if (rows.empty()) throw parse_error("empty matrix document");
    const auto labels = rows.front();
    const int n = static_cast<int>(labels.size());
    if (static_cast<int>(rows.size()) != n + 1)
        throw parse_error("expected " + std::to_string(n) + " body rows after the header, got " +
                          std::to_string(rows.size() - 1));
    std::vector<std::vector<Num>> m;
    for (int i = 0; i < n; ++i) {
        const auto& cells = rows[static_cast<std::size_t>(i) + 1];
        if (static_cast<int>(cells.size()) != n)
            throw parse_error("row " + std::to_string(i + 2) + " has " +
                              std::to_string(cells.size()) + " cells, expected " +
                              std::to_string(n));
        std::vector<Num> row;
        for (int j = 0; j < n; ++j) {
            try {
                row.push_back(Num::parse(cells[static_cast<std::size_t>(j)]));
            } catch (const parse_error& e) {
                throw parse_error("row " + std::to_string(i + 2) + ", column " +
                                  std::to_string(j + 1) + ": " + e.what());
            }
        }
        m.push_back(std::move(row));
    }
    return WeightSpace::validate(labels, std::move(m));
}

WeightSpace parse_matrix_json(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("bad JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("labels") || !doc.contains("matrix"))
        throw parse_error("matrix document needs 'labels' and 'matrix'");
    std::vector<std::string> labels;
    for (const auto& l : doc["labels"]) labels.push_back(l.get<std::string>());
    std::vector<std::vector<Num>> m;
    int i = 0;
    for (const auto& row : doc["matrix"]) {
        std::vector<Num> r;
        int j = 0;
        for (const auto& v : row) r.push_back(parse_json_entry(v, i, j++));
        m.push_back(std::move(r));
        ++i;
    }
    return WeightSpace::validate(std::move(labels), std::move(m));
}

std::string emit_matrix_csv(const WeightSpace& u) {
    std::ostringstream os;
    for (int j = 0; j < u.size(); ++j) {
        if (j) os << ",";
        os << u.label(j);
    }
    os << "\n";
    for (int i = 0; i < u.size(); ++i) {
        for (int j = 0; j < u.size(); ++j) {
            if (j) os << ",";
            os << num_token(u.at(i, j));
        }
        os << "\n";
    }
    return os.str();
}

std::string emit_matrix_json(const WeightSpace& u) {
    ordered_json doc;
    doc["labels"] = u.points();
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < u.size(); ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < u.size(); ++j) row.push_back(num_json(u.at(i, j)));
        rows.push_back(std::move(row));
    }
    doc["matrix"] = std::move(rows);
    return doc.dump(2) + "\n";
}

std::string emit_sieve(const Sieve& s) {
    ordered_json doc;
    doc["points"] = s.points();
    ordered_json levels = ordered_json::array();
    for (int lvl = 0; lvl < s.levels(); ++lvl) {
        ordered_json level;
        level["t"] = num_json(s.thresholds()[static_cast<std::size_t>(lvl)]);
        ordered_json blocks = ordered_json::array();
        for (const auto& b : s.covers()[static_cast<std::size_t>(lvl)].cover().label_blocks())
            blocks.push_back(b);
        level["cover"] = std::move(blocks);
        levels.push_back(std::move(level));
    }
    doc["levels"] = std::move(levels);
    return doc.dump(2) + "\n";
}

Sieve parse_sieve(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("bad JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("points") || !doc.contains("levels"))
        throw parse_error("sieve document needs 'points' and 'levels'");
    std::vector<std::string> points;
    for (const auto& p : doc["points"]) points.push_back(p.get<std::string>());
    std::vector<Num> thresholds;
    std::vector<FlagCover> covers;
    for (const auto& level : doc["levels"]) {
        if (!level.contains("t") || !level.contains("cover"))
            throw parse_error("sieve level needs 't' and 'cover'");
        thresholds.push_back(parse_json_entry(level["t"], 0, 0));
        std::vector<std::vector<std::string>> blocks;
        for (const auto& b : level["cover"]) {
            std::vector<std::string> blk;
            for (const auto& l : b) blk.push_back(l.get<std::string>());
            blocks.push_back(std::move(blk));
        }
        covers.push_back(FlagCover(Cover::from_label_blocks(points, blocks)));
    }
    return Sieve::make(std::move(points), std::move(thresholds), std::move(covers));
}

std::string sieve_dot(const Sieve& s) {
    bool dendrogram = true;
    for (const auto& c : s.covers())
        if (!is_partition(c.cover())) dendrogram = false;

    std::ostringstream os;
    os << (dendrogram ? "// dendrogram\n" : "// layered cover diagram\n");
    os << "digraph sieve {\n  rankdir=BT;\n  node [shape=box];\n";
    auto node_id = [](int lvl, std::size_t blk) {
        return "L" + std::to_string(lvl) + "_B" + std::to_string(blk);
    };
    for (int lvl = 0; lvl < s.levels(); ++lvl) {
        const auto& cover = s.covers()[static_cast<std::size_t>(lvl)].cover();
        os << "  { rank=same;";
        for (std::size_t b = 0; b < cover.blocks().size(); ++b) {
            os << " " << node_id(lvl, b) << " [label=\""
               << dot_escape(num_token(s.thresholds()[static_cast<std::size_t>(lvl)]) + ": {" +
                             block_label(cover.label_blocks()[b]) + "}")
               << "\"];";
        }
        os << " }\n";
    }
    for (int lvl = 0; lvl + 1 < s.levels(); ++lvl) {
        const auto lower = s.covers()[static_cast<std::size_t>(lvl)].cover().block_masks();
        const auto upper = s.covers()[static_cast<std::size_t>(lvl) + 1].cover().block_masks();
        for (std::size_t a = 0; a < lower.size(); ++a)
            for (std::size_t b = 0; b < upper.size(); ++b)
                if ((lower[a] & ~upper[b]) == 0)
                    os << "  " << node_id(lvl, a) << " -> " << node_id(lvl + 1, b) << ";\n";
    }
    os << "}\n";
    return os.str();
}

std::string tight_span_dot(const TightSpanReport& report) {
    std::ostringstream os;
    os << "graph tight_span {\n  node [shape=ellipse];\n";
    for (std::size_t v = 0; v < report.vertices.size(); ++v) {
        const auto& f = report.vertices[v];
        std::string label = "v" + std::to_string(v) + " (";
        for (std::size_t i = 0; i < f.values.size(); ++i) {
            if (i) label += ",";
            label += num_token(f.values[i]);
        }
        label += ")";
        int kur = -1;
        for (std::size_t x = 0; x < report.kuratowski_index.size(); ++x)
            if (report.kuratowski_index[x] == static_cast<int>(v)) kur = static_cast<int>(x);
        if (kur >= 0) label += " = e(" + f.points[static_cast<std::size_t>(kur)] + ")";
        os << "  v" << v << " [label=\"" << dot_escape(label) << "\"];\n";
    }
    for (auto [a, b] : report.skeleton_edges)
        os << "  v" << a << " -- v" << b << " [label=\""
           << dot_escape(num_token(report.distances[static_cast<std::size_t>(a)]
                                                   [static_cast<std::size_t>(b)]))
           << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string emit_decomposition(const CutDecomposition& dec) {
    ordered_json doc;
    doc["feasible"] = true;
    ordered_json terms = ordered_json::array();
    for (const auto& [cut, weight] : dec.terms) {
        ordered_json t;
        t["side"] = cut.side_labels();
        t["weight"] = num_json(weight);
        terms.push_back(std::move(t));
    }
    doc["cuts"] = std::move(terms);
    return doc.dump(2) + "\n";
}

std::string emit_certificate(const WeightSpace& d, const std::vector<Rational>& farkas) {
    ordered_json doc;
    doc["feasible"] = false;
    ordered_json rows = ordered_json::array();
    std::size_t k = 0;
    Rational value(0);
    for (int i = 0; i < d.size(); ++i)
        for (int j = i + 1; j < d.size(); ++j) {
            const Rational& y = farkas[k++];
            if (!y.is_zero()) {
                ordered_json row;
                row["pair"] = ordered_json::array({d.label(i), d.label(j)});
                row["y"] = y.to_string();
                rows.push_back(std::move(row));
            }
            Num e = d.at(i, j);
            Rational ei = e.is_exact() ? e.rat() : Rational::from_double(e.to_double());
            value = value + y * ei;
        }
    doc["certificate"] = std::move(rows);
    doc["y_dot_d"] = value.to_string();
    doc["meaning"] =
        "y has nonpositive pairing with every cut metric but positive pairing with d";
    return doc.dump(2) + "\n";
}

std::string emit_tight_span(const TightSpanReport& report) {
    ordered_json doc;
    doc["diameter"] = num_json(report.diameter_value);
    ordered_json verts = ordered_json::array();
    for (std::size_t v = 0; v < report.vertices.size(); ++v) {
        const auto& f = report.vertices[v];
        ordered_json jf;
        ordered_json values = ordered_json::array();
        for (const auto& val : f.values) values.push_back(num_json(val));
        jf["values"] = std::move(values);
        jf["height"] = num_json(height(f));
        ordered_json ms = ordered_json::array();
        for (int i : minset(f)) ms.push_back(f.points[static_cast<std::size_t>(i)]);
        jf["minset"] = std::move(ms);
        ordered_json tp = ordered_json::array();
        for (auto [a, b] : f.tight_pairs)
            tp.push_back(ordered_json::array(
                {f.points[static_cast<std::size_t>(a)], f.points[static_cast<std::size_t>(b)]}));
        jf["tight_pairs"] = std::move(tp);
        verts.push_back(std::move(jf));
    }
    doc["vertices"] = std::move(verts);
    ordered_json kur = ordered_json::array();
    for (int v : report.kuratowski_index) kur.push_back(v);
    doc["kuratowski_index"] = std::move(kur);
    ordered_json edges = ordered_json::array();
    for (auto [a, b] : report.skeleton_edges) edges.push_back(ordered_json::array({a, b}));
    doc["skeleton_edges"] = std::move(edges);
    doc["has_root"] = report.has_root;
    if (report.has_root) {
        ordered_json rv = ordered_json::array();
        for (const auto& val : report.root->values) rv.push_back(num_json(val));
        doc["root"] = std::move(rv);
    }
    return doc.dump(2) + "\n";
}

}  // namespace sievekit::io
