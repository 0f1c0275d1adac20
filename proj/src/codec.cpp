#include "homind/codec.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace homind {

namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;
    int col() const { return static_cast<int>(i) + 1; }
    bool done() const { return i >= s.size(); }
    char peek() const { return done() ? '\0' : s[i]; }
    void skip_ws() {
        while (!done() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n' || s[i] == '\r')) ++i;
    }
    void expect(char c) {
        skip_ws();
        if (done() || s[i] != c)
            throw ParseError(std::string("expected '") + c + "'", 1, col());
        ++i;
    }
    bool try_consume(char c) {
        skip_ws();
        if (!done() && s[i] == c) { ++i; return true; }
        return false;
    }
    int integer() {
        skip_ws();
        std::size_t start = i;
        while (!done() && s[i] >= '0' && s[i] <= '9') ++i;
        if (i == start) throw ParseError("expected integer", 1, col());
        return std::stoi(s.substr(start, i - start));
    }
};

} // namespace

std::string encode_graph(const LabelledGraph& g) {
    std::ostringstream os;
    os << "n=" << g.n();
    if (g.graph().edge_count() > 0) {
        os << "; e=";
        bool first = true;
        for (auto [u, v] : g.graph().edges()) {
            if (!first) os << ",";
            os << u << "-" << v;
            first = false;
        }
    }
    auto labels = g.assigned_labels();
    if (!labels.empty()) {
        os << "; l=";
        bool first = true;
        for (int l : labels) {
            if (!first) os << ",";
            os << l << ":" << g.label_vertex(l);
            first = false;
        }
    }
    return os.str();
}

std::string encode_graph_json(const LabelledGraph& g) {
    nlohmann::ordered_json j;
    j["n"] = g.n();
    j["edges"] = nlohmann::ordered_json::array();
    for (auto [u, v] : g.graph().edges()) j["edges"].push_back({u, v});
    j["labels"] = nlohmann::ordered_json::object();
    for (int l : g.assigned_labels()) j["labels"][std::to_string(l)] = g.label_vertex(l);
    return j.dump();
}

namespace {

LabelledGraph decode_text(const std::string& text) {
    Cursor c{text};
    c.skip_ws();
    c.expect('n');
    c.expect('=');
    int n = c.integer();
    Graph g(n);
    int max_label = 0;
    std::vector<std::pair<int, int>> label_assignments;
    while (c.try_consume(';')) {
        c.skip_ws();
        if (c.done()) break;
        char section = c.peek();
        if (section == 'e') {
            ++c.i;
            c.expect('=');
            while (true) {
                int pos = c.col();
                int u = c.integer();
                c.expect('-');
                int v = c.integer();
                if (u == v) throw ParseError("loop rejected at vertex " + std::to_string(u), 1, pos);
                if (u < 0 || v < 0 || u >= n || v >= n)
                    throw ParseError("edge endpoint out of range", 1, pos);
                g.add_edge(u, v);
                if (!c.try_consume(',')) break;
            }
        } else if (section == 'l') {
            ++c.i;
            c.expect('=');
            while (true) {
                int pos = c.col();
                int l = c.integer();
                c.expect(':');
                int v = c.integer();
                if (l < 1) throw ParseError("labels are positive", 1, pos);
                if (v < 0 || v >= n) throw ParseError("label target out of range", 1, pos);
                label_assignments.emplace_back(l, v);
                max_label = std::max(max_label, l);
                if (!c.try_consume(',')) break;
            }
        } else {
            throw ParseError("unknown section", 1, c.col());
        }
    }
    c.skip_ws();
    if (!c.done()) throw ParseError("trailing input", 1, c.col());
    LabelledGraph out(g, max_label);
    for (auto [l, v] : label_assignments) {
        if (out.label_assigned(l))
            throw ParseError("label " + std::to_string(l) + " assigned twice", 1, 1);
        out.set_label(l, v);
    }
    return out;
}

LabelledGraph decode_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("bad JSON: ") + e.what(), 1, static_cast<int>(e.byte));
    }
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw ParseError("missing integer field n", 1, 1);
    int n = j["n"].get<int>();
    Graph g(n);
    if (j.contains("edges")) {
        for (auto& e : j["edges"]) {
            if (!e.is_array() || e.size() != 2) throw ParseError("edge must be a pair", 1, 1);
            int u = e[0].get<int>(), v = e[1].get<int>();
            if (u == v) throw ParseError("loop rejected at vertex " + std::to_string(u), 1, 1);
            g.add_edge(u, v);
        }
    }
    int max_label = 0;
    std::vector<std::pair<int, int>> assigns;
    if (j.contains("labels")) {
        for (auto& [key, val] : j["labels"].items()) {
            int l = std::stoi(key);
            if (l < 1) throw ParseError("labels are positive", 1, 1);
            assigns.emplace_back(l, val.get<int>());
            max_label = std::max(max_label, l);
        }
    }
    LabelledGraph out(g, max_label);
    for (auto [l, v] : assigns) {
        if (v < 0 || v >= n) throw ParseError("label target out of range", 1, 1);
        out.set_label(l, v);
    }
    return out;
}

} // namespace

LabelledGraph decode_graph(const std::string& text) {
    for (char ch : text) {
        if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') continue;
        return ch == '{' ? decode_json(text) : decode_text(text);
    }
    throw ParseError("empty input", 1, 1);
}

LabelledGraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return decode_graph(ss.str());
}

} // namespace homind
