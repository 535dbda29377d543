#include "torusmc/document.hpp"

#include "torusmc/errors.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace torusmc {

std::string format_number(double value) {
    if (value == 0.0) return "0";  // also folds -0
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

namespace {

struct Token {
    std::string_view text;
    std::size_t column = 0;  // 1-based
};

struct Line {
    std::size_t number = 0;
    std::vector<Token> tokens;
    std::size_t end_column = 1;
};

std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> lines;
    std::size_t number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(start, end - start);
        ++number;
        if (const auto hash = raw.find('#'); hash != std::string_view::npos)
            raw = raw.substr(0, hash);
        Line line{number, {}, raw.size() + 1};
        std::size_t i = 0;
        while (i < raw.size()) {
            while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
            const std::size_t begin = i;
            while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
            if (i > begin) line.tokens.push_back({raw.substr(begin, i - begin), begin + 1});
        }
        if (!line.tokens.empty()) lines.push_back(std::move(line));
        if (end == text.size()) break;
        start = end + 1;
    }
    return lines;
}

[[noreturn]] void parse_error(std::size_t line, std::size_t column, const std::string& message) {
    std::ostringstream out;
    out << line << ":" << column << ": " << message;
    fail(ErrorKind::ParseError, out.str());
}

double parse_real(const Line& line, const Token& token) {
    double value = 0.0;
    const char* first = token.text.data();
    const char* last = first + token.text.size();
    if (!token.text.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value))
        parse_error(line.number, token.column,
                    "expected a number, got '" + std::string(token.text) + "'");
    return value;
}

std::int64_t parse_integer(const Line& line, const Token& token) {
    std::int64_t value = 0;
    const char* first = token.text.data();
    const char* last = first + token.text.size();
    if (!token.text.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        parse_error(line.number, token.column,
                    "expected an integer, got '" + std::string(token.text) + "'");
    return value;
}

void expect_count(const Line& line, std::size_t count, const char* usage) {
    if (line.tokens.size() != count)
        parse_error(line.number, line.tokens.size() < count ? line.end_column
                                                            : line.tokens[count].column,
                    std::string("expected '") + usage + "'");
}

TorusShape parse_torus(const Line& line) {
    expect_count(line, 5, "torus a b c d");
    const Mat2 m{parse_real(line, line.tokens[1]), parse_real(line, line.tokens[2]),
                 parse_real(line, line.tokens[3]), parse_real(line, line.tokens[4])};
    try {
        return TorusShape(m);
    } catch (const Error& e) {
        parse_error(line.number, line.tokens[1].column, e.what());
    }
}

void check_name(std::string_view name, const char* what) {
    if (name.empty()) fail(ErrorKind::InvalidArgument, std::string(what) + " name is empty");
    for (char c : name)
        if (std::isspace(static_cast<unsigned char>(c)) || c == '#')
            fail(ErrorKind::InvalidArgument,
                 std::string(what) + " name '" + std::string(name) + "' is not a single token");
}

} // namespace

GraphDocument parse_document(std::string_view text) {
    const auto lines = tokenize(text);
    std::optional<TorusShape> shape;
    std::vector<VertexRecord> vertices;
    std::vector<EdgeRecord> edges;
    std::map<std::string, VertexId, std::less<>> vertex_ids;
    std::map<std::string, EdgeId, std::less<>> edge_ids;
    std::map<VertexId, std::pair<std::size_t, std::vector<DartId>>> rotations;
    std::map<EdgeId, double> stress;
    std::map<VertexId, double> weights;
    std::size_t last_line = 0;

    auto vertex_ref = [&](const Line& line, const Token& token) {
        const auto it = vertex_ids.find(token.text);
        if (it == vertex_ids.end())
            parse_error(line.number, token.column,
                        "unknown vertex '" + std::string(token.text) + "'");
        return it->second;
    };
    auto edge_ref = [&](const Line& line, const Token& token, std::string_view name) {
        const auto it = edge_ids.find(name);
        if (it == edge_ids.end())
            parse_error(line.number, token.column, "unknown edge '" + std::string(name) + "'");
        return it->second;
    };

    bool first = true;
    for (const Line& line : lines) {
        last_line = line.number;
        const std::string_view keyword = line.tokens[0].text;
        if (keyword == "torusgraph") {
            if (!first) parse_error(line.number, 1, "version line must come first");
            expect_count(line, 2, "torusgraph 1");
            if (line.tokens[1].text != "1")
                parse_error(line.number, line.tokens[1].column, "unsupported format version");
        } else if (keyword == "torus") {
            if (shape) parse_error(line.number, 1, "duplicate torus record");
            shape = parse_torus(line);
        } else if (keyword == "vertex") {
            expect_count(line, 4, "vertex name x y");
            const std::string name(line.tokens[1].text);
            if (vertex_ids.count(name))
                parse_error(line.number, line.tokens[1].column, "duplicate vertex '" + name + "'");
            vertex_ids[name] = vertices.size();
            vertices.push_back(
                {name, {parse_real(line, line.tokens[2]), parse_real(line, line.tokens[3])}});
        } else if (keyword == "edge") {
            expect_count(line, 6, "edge name tail head hx hy");
            const std::string name(line.tokens[1].text);
            if (edge_ids.count(name))
                parse_error(line.number, line.tokens[1].column, "duplicate edge '" + name + "'");
            EdgeRecord rec{name, vertex_ref(line, line.tokens[2]), vertex_ref(line, line.tokens[3]),
                           {parse_integer(line, line.tokens[4]), parse_integer(line, line.tokens[5])}};
            edge_ids[name] = edges.size();
            edges.push_back(std::move(rec));
        } else if (keyword == "rotation") {
            if (line.tokens.size() < 3)
                parse_error(line.number, line.end_column, "expected 'rotation vertex dart...'");
            const VertexId v = vertex_ref(line, line.tokens[1]);
            if (rotations.count(v))
                parse_error(line.number, line.tokens[1].column,
                            "duplicate rotation for vertex '" + vertices[v].name + "'");
            std::vector<DartId> cycle;
            for (std::size_t i = 2; i < line.tokens.size(); ++i) {
                const Token& tok = line.tokens[i];
                const char sign = tok.text.back();
                if (tok.text.size() < 2 || (sign != '+' && sign != '-'))
                    parse_error(line.number, tok.column, "dart must be written edge+ or edge-");
                const EdgeId e = edge_ref(line, tok, tok.text.substr(0, tok.text.size() - 1));
                cycle.push_back(sign == '+' ? reference_dart(e) : reversal(reference_dart(e)));
            }
            rotations[v] = {line.number, std::move(cycle)};
        } else if (keyword == "stress") {
            expect_count(line, 3, "stress edge value");
            const EdgeId e = edge_ref(line, line.tokens[1], line.tokens[1].text);
            if (stress.count(e)) parse_error(line.number, line.tokens[1].column, "duplicate stress");
            stress[e] = parse_real(line, line.tokens[2]);
        } else if (keyword == "weight") {
            expect_count(line, 3, "weight vertex value");
            const VertexId v = vertex_ref(line, line.tokens[1]);
            if (weights.count(v)) parse_error(line.number, line.tokens[1].column, "duplicate weight");
            weights[v] = parse_real(line, line.tokens[2]);
        } else {
            parse_error(line.number, 1, "unknown record '" + std::string(keyword) + "'");
        }
        first = false;
    }

    const std::size_t end_line = last_line + 1;
    if (!shape) parse_error(end_line, 1, "missing torus record");
    GraphSpec spec;
    spec.shape = *shape;
    spec.rotations.resize(vertices.size());
    for (VertexId v = 0; v < vertices.size(); ++v) {
        const auto it = rotations.find(v);
        if (it == rotations.end())
            parse_error(end_line, 1, "missing rotation record for vertex '" + vertices[v].name + "'");
        spec.rotations[v] = it->second.second;
    }
    spec.vertices = std::move(vertices);
    spec.edges = std::move(edges);

    GraphDocument doc;
    try {
        doc.graph = TorusGraph::build(std::move(spec));
    } catch (const Error& e) {
        fail(ErrorKind::ValidationError, std::string(kind_name(e.kind())) + ": " + e.what());
    }
    if (!stress.empty()) {
        if (stress.size() != doc.graph.num_edges())
            parse_error(end_line, 1, "stress section must cover every edge");
        Stress s(doc.graph.num_edges());
        for (const auto& [e, value] : stress) s[e] = value;
        doc.stress = std::move(s);
    }
    if (!weights.empty()) {
        if (weights.size() != doc.graph.num_vertices())
            parse_error(end_line, 1, "weight section must cover every vertex");
        VertexWeights w(doc.graph.num_vertices());
        for (const auto& [v, value] : weights) w[v] = value;
        doc.weights = std::move(w);
    }
    return doc;
}

std::string serialize_document(const TorusGraph& g, const Stress* stress,
                               const VertexWeights* weights) {
    if (stress && stress->size() != g.num_edges())
        fail(ErrorKind::InvalidArgument, "stress size does not match the edge count");
    if (weights && weights->size() != g.num_vertices())
        fail(ErrorKind::InvalidArgument, "weight count does not match the vertex count");
    std::ostringstream out;
    const Mat2& m = g.shape().matrix();
    out << "torusgraph 1\n";
    out << "torus " << format_number(m.a) << " " << format_number(m.b) << " "
        << format_number(m.c) << " " << format_number(m.d) << "\n";
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        check_name(g.vertex_name(v), "vertex");
        const Vec2 p = g.position(v);
        out << "vertex " << g.vertex_name(v) << " " << format_number(p.x) << " "
            << format_number(p.y) << "\n";
    }
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        check_name(g.edge_name(e), "edge");
        const DartId d = reference_dart(e);
        const IVec2 h = g.homology(d);
        out << "edge " << g.edge_name(e) << " " << g.vertex_name(g.tail(d)) << " "
            << g.vertex_name(g.head(d)) << " " << h.x << " " << h.y << "\n";
    }
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        out << "rotation " << g.vertex_name(v);
        for (DartId d : g.map().darts_around(v))
            out << " " << g.edge_name(edge_of(d)) << (is_reference(d) ? "+" : "-");
        out << "\n";
    }
    if (stress)
        for (EdgeId e = 0; e < g.num_edges(); ++e)
            out << "stress " << g.edge_name(e) << " " << format_number((*stress)[e]) << "\n";
    if (weights)
        for (VertexId v = 0; v < g.num_vertices(); ++v)
            out << "weight " << g.vertex_name(v) << " " << format_number((*weights)[v]) << "\n";
    return out.str();
}

SitesDocument parse_sites(std::string_view text) {
    SitesDocument doc;
    bool have_shape = false;
    std::map<std::string, bool, std::less<>> names;
    std::size_t last_line = 0;
    for (const Line& line : tokenize(text)) {
        last_line = line.number;
        const std::string_view keyword = line.tokens[0].text;
        if (keyword == "torus") {
            if (have_shape) parse_error(line.number, 1, "duplicate torus record");
            doc.shape = parse_torus(line);
            have_shape = true;
        } else if (keyword == "site") {
            expect_count(line, 5, "site name x y weight");
            const std::string name(line.tokens[1].text);
            if (names.count(name))
                parse_error(line.number, line.tokens[1].column, "duplicate site '" + name + "'");
            names[name] = true;
            doc.sites.push_back({name,
                                 {parse_real(line, line.tokens[2]), parse_real(line, line.tokens[3])},
                                 parse_real(line, line.tokens[4])});
        } else {
            parse_error(line.number, 1, "unknown record '" + std::string(keyword) + "'");
        }
    }
    if (!have_shape) parse_error(last_line + 1, 1, "missing torus record");
    if (doc.sites.empty()) parse_error(last_line + 1, 1, "no sites");
    return doc;
}

std::string serialize_sites(const SitesDocument& doc) {
    std::ostringstream out;
    const Mat2& m = doc.shape.matrix();
    out << "torus " << format_number(m.a) << " " << format_number(m.b) << " "
        << format_number(m.c) << " " << format_number(m.d) << "\n";
    for (const auto& s : doc.sites) {
        check_name(s.name, "site");
        out << "site " << s.name << " " << format_number(s.position.x) << " "
            << format_number(s.position.y) << " " << format_number(s.weight) << "\n";
    }
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::IoError, "cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::IoError, "cannot write " + path);
    out << text;
    if (!out) fail(ErrorKind::IoError, "write failed for " + path);
}

} // namespace torusmc
