#include "torusmc/coherence.hpp"
#include "torusmc/document.hpp"
#include "torusmc/equilibrium.hpp"
#include "torusmc/errors.hpp"
#include "torusmc/oracle.hpp"
#include "torusmc/pipeline.hpp"
#include "torusmc/reciprocal.hpp"
#include "torusmc/render.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <map>
#include <sstream>

using namespace torusmc;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string input;
    std::string output;
    std::string stress;
    std::string pin;
    std::string patch;
    double tolerance = 1e-9;
    double scale = 400.0;
    bool canonical = false;
    bool dual = false;
    bool weights = false;
};

void emit(const Options& opts, const std::string& text) {
    if (opts.output.empty())
        std::cout << text;
    else
        write_file(opts.output, text);
}

std::string matrix_text(const Mat2& m) {
    return format_number(m.a) + " " + format_number(m.b) + " " + format_number(m.c) + " " +
           format_number(m.d);
}

// --stress uniform:V, a file of "stress <edge> <value>" (or "<edge> <value>")
// lines, or the document's own stress section.
Stress resolve_stress(const GraphDocument& doc, const std::string& spec) {
    const TorusGraph& g = doc.graph;
    if (spec.empty()) return doc.stress ? *doc.stress : uniform_stress(g, 1.0);
    if (spec.rfind("uniform:", 0) == 0) {
        const std::string value = spec.substr(8);
        try {
            std::size_t used = 0;
            const double v = std::stod(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
            return uniform_stress(g, v);
        } catch (const std::logic_error&) {
            throw UsageError("bad --stress value '" + value + "'");
        }
    }
    std::istringstream in(read_file(spec));
    std::map<EdgeId, double> values;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream words(line);
        std::vector<std::string> tokens;
        for (std::string w; words >> w;) tokens.push_back(w);
        if (tokens.empty()) continue;
        if (tokens[0] == "stress") tokens.erase(tokens.begin());
        if (tokens.size() != 2)
            fail(ErrorKind::ParseError, spec + ":" + std::to_string(number) +
                                            ": expected 'stress <edge> <value>'");
        const auto e = g.find_edge(tokens[0]);
        if (!e)
            fail(ErrorKind::ParseError,
                 spec + ":" + std::to_string(number) + ": unknown edge '" + tokens[0] + "'");
        try {
            values[*e] = std::stod(tokens[1]);
        } catch (const std::logic_error&) {
            fail(ErrorKind::ParseError,
                 spec + ":" + std::to_string(number) + ": bad number '" + tokens[1] + "'");
        }
    }
    if (values.size() != g.num_edges())
        fail(ErrorKind::ParseError, spec + ": stress must be given for every edge");
    Stress s(g.num_edges());
    for (const auto& [e, v] : values) s[e] = v;
    return s;
}

VertexId resolve_pin(const TorusGraph& g, const std::string& pin) {
    if (pin.empty()) return 0;
    if (const auto v = g.find_vertex(pin)) return *v;
    throw UsageError("unknown vertex '" + pin + "' for --pin");
}

std::int64_t resolve_patch(const std::string& patch) {
    if (patch.empty()) return 0;
    const auto x = patch.find('x');
    try {
        if (x == std::string::npos) throw std::invalid_argument(patch);
        std::size_t used_a = 0, used_b = 0;
        const long a = std::stol(patch.substr(0, x), &used_a);
        const long b = std::stol(patch.substr(x + 1), &used_b);
        if (used_a != x || used_b != patch.size() - x - 1 || a != b || a < 1)
            throw std::invalid_argument(patch);
        return a;
    } catch (const std::logic_error&) {
        throw UsageError("--patch expects KxK with K >= 1, got '" + patch + "'");
    }
}

GraphDocument load(const Options& opts) { return parse_document(read_file(opts.input)); }

int cmd_validate(const Options& opts) {
    const GraphDocument doc = load(opts);
    const TorusGraph& g = doc.graph;
    const EssentialReport essential = check_essential(g);
    const EmbeddingReport embedding = embedding_report(g);
    std::ostringstream out;
    out << "vertices " << g.num_vertices() << "\nedges " << g.num_edges() << "\nfaces "
        << g.num_faces() << "\nessentially_simple " << std::boolalpha
        << essential.essentially_simple << "\nessentially_3_connected "
        << essential.essentially_3_connected << "\nwindow_limited " << essential.window_limited
        << "\ngeodesic_embedding " << embedding.valid << "\n";
    emit(opts, out.str());
    return 0;
}

int cmd_embed(const Options& opts) {
    const GraphDocument doc = load(opts);
    const Stress omega = resolve_stress(doc, opts.stress);
    const TorusGraph embedded = tutte_embed(doc.graph, omega, resolve_pin(doc.graph, opts.pin));
    emit(opts, serialize_document(embedded, &omega));
    return 0;
}

int cmd_analyze(const Options& opts) {
    const GraphDocument doc = load(opts);
    const TorusGraph& g = doc.graph;
    const Stress omega = resolve_stress(doc, opts.stress);
    const StressAnalysis a = covariance(g, omega);
    const EquilibriumReport eq = equilibrium_residual(g, omega, opts.tolerance);
    std::ostringstream out;
    out << "alpha " << format_number(a.alpha) << "\nbeta " << format_number(a.beta) << "\ngamma "
        << format_number(a.gamma) << "\ndiscriminant " << format_number(a.discriminant)
        << "\nequilibrium " << std::boolalpha << eq.in_equilibrium << "\nmax_residual "
        << format_number(eq.max_residual) << "\n";
    if (a.discriminant > 0.0 && is_positive(omega)) {
        const StressAnalysis normalized = covariance(g, normalize_stress(g, omega));
        out << "reciprocal_torus " << matrix_text(reciprocal_torus(normalized).matrix()) << "\n";
        out << "reciprocal_here " << is_reciprocal_on(g, omega, g.shape(), opts.tolerance)
            << "\n";
        if (eq.in_equilibrium)
            out << "force_diagram_torus " << matrix_text(force_diagram(g, omega).shape.matrix())
                << "\n";
    }
    emit(opts, out.str());
    return 0;
}

int cmd_reciprocal(const Options& opts) {
    const GraphDocument doc = load(opts);
    Stress omega = resolve_stress(doc, opts.stress);
    TorusShape shape = doc.graph.shape();
    if (opts.canonical) {
        omega = normalize_stress(doc.graph, omega);
        shape = reciprocal_torus(covariance(doc.graph, omega));
    }
    const ReciprocalPair pair = build_reciprocal(doc.graph, omega, shape);
    Stress dual_stress(omega.size());
    for (std::size_t e = 0; e < omega.size(); ++e) dual_stress[e] = 1.0 / omega[e];
    emit(opts, serialize_document(pair.dual, &dual_stress));
    return 0;
}

int cmd_weights(const Options& opts) {
    const GraphDocument doc = load(opts);
    const Stress omega = resolve_stress(doc, opts.stress);
    if (opts.canonical) {
        const SteinitzResult r = toroidal_steinitz(doc.graph, omega, resolve_pin(doc.graph, opts.pin));
        emit(opts, serialize_document(r.coherent.pair.primal, &r.normalized,
                                      &r.coherent.lifting.weights));
        return 0;
    }
    const ReciprocalPair pair = build_reciprocal(doc.graph, omega, doc.graph.shape());
    const CoherentLifting lifted = coherent_lifting(pair.primal, pair);
    emit(opts, serialize_document(pair.primal, &omega, &lifted.lifting.weights));
    return 0;
}

int cmd_check_delaunay(const Options& opts) {
    const GraphDocument doc = load(opts);
    const TorusGraph& g = doc.graph;
    const VertexWeights w = doc.weights ? *doc.weights : VertexWeights(g.num_vertices(), 0.0);
    const DelaunayVerdict verdict = is_weighted_delaunay(g, w, opts.tolerance);
    std::ostringstream out;
    for (EdgeId e = 0; e < g.num_edges(); ++e)
        out << "edge " << g.edge_name(e) << " " << class_name(verdict.edge_class[e]) << " "
            << format_number(verdict.edge_det[e].value) << "\n";
    out << "weighted_delaunay " << std::boolalpha << verdict.weighted_delaunay << "\n";
    emit(opts, out.str());
    return 0;
}

int cmd_oracle(const Options& opts) {
    const SitesDocument sites = parse_sites(read_file(opts.input));
    OracleOptions oracle;
    oracle.tolerance = opts.tolerance;
    oracle.parallel = false;  // one thread per invocation
    const TorusGraph g = oracle_weighted_delaunay(sites.shape, sites.sites, oracle);
    VertexWeights w;
    for (const auto& s : sites.sites) w.push_back(s.weight);
    emit(opts, serialize_document(g, nullptr, &w));
    return 0;
}

int cmd_render(const Options& opts) {
    const GraphDocument doc = load(opts);
    const TorusGraph& g = doc.graph;
    RenderOptions render;
    render.patch = resolve_patch(opts.patch);
    render.show_dual = opts.dual;
    render.show_weights = opts.weights;
    render.scale = opts.scale;
    if (opts.weights && !doc.weights) throw UsageError("--weights needs a weight section");
    std::optional<TorusGraph> dual;
    if (opts.dual) {
        if (doc.weights)
            dual = power_dual(g, *doc.weights).dual;
        else if (doc.stress && is_reciprocal_on(g, *doc.stress, g.shape()))
            dual = build_reciprocal(g, *doc.stress, g.shape()).dual;
        else
            dual = natural_dual(g);
    }
    emit(opts, render_svg(g, render, dual ? &*dual : nullptr, doc.weights ? &*doc.weights : nullptr));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Geodesic graphs on flat tori: equilibrium embeddings, reciprocal diagrams "
                 "and Delaunay weights"};
    app.require_subcommand(1, 1);
    Options opts;

    auto add_io = [&](CLI::App* sub, const char* what) {
        sub->add_option("input", opts.input, what)->required();
        sub->add_option("-o,--output", opts.output, "Write to this file instead of stdout");
    };
    auto add_stress = [&](CLI::App* sub) {
        sub->add_option("--stress", opts.stress,
                        "Stress file or uniform:VALUE (default: document stress, else 1)");
    };

    auto* validate = app.add_subcommand("validate", "Parse and validate a graph document");
    add_io(validate, "Graph document");
    auto* embed = app.add_subcommand("embed", "Equilibrium (Tutte) embedding");
    add_io(embed, "Graph document");
    add_stress(embed);
    embed->add_option("--pin", opts.pin, "Vertex kept in place (default: first vertex)");
    auto* analyze = app.add_subcommand("analyze", "Stress covariance and reciprocal tori");
    add_io(analyze, "Graph document");
    add_stress(analyze);
    analyze->add_option("--tolerance", opts.tolerance, "Relative equilibrium tolerance");
    auto* reciprocal = app.add_subcommand("reciprocal", "Reciprocal dual embedding");
    add_io(reciprocal, "Graph document");
    add_stress(reciprocal);
    reciprocal->add_flag("--canonical", opts.canonical,
                         "Normalize and move to the canonical reciprocal torus first");
    auto* weights = app.add_subcommand("weights", "Delaunay weights from a reciprocal stress");
    add_io(weights, "Graph document");
    add_stress(weights);
    weights->add_option("--pin", opts.pin, "Pinned vertex for the equilibrium solve");
    weights->add_flag("--canonical", opts.canonical,
                      "Run the full pipeline: embed, normalize, move to the reciprocal torus");
    auto* check = app.add_subcommand("check-delaunay", "Weighted Delaunay test");
    add_io(check, "Graph document (weights default to 0)");
    check->add_option("--tolerance", opts.tolerance, "Relative determinant tolerance");
    auto* oracle = app.add_subcommand("oracle", "Brute-force weighted Delaunay graph of sites");
    add_io(oracle, "Sites file");
    oracle->add_option("--tolerance", opts.tolerance, "Power tolerance relative to scale^2");
    auto* render = app.add_subcommand("render", "SVG drawing");
    add_io(render, "Graph document");
    render->add_option("--patch", opts.patch, "Draw a KxK cover patch");
    render->add_flag("--dual", opts.dual, "Overlay the dual");
    render->add_flag("--weights", opts.weights, "Label vertices with weights");
    render->add_option("--scale", opts.scale, "Pixels per unit length");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: usage: " << e.what() << "\n";
        return 2;
    }
    // The oracle works on squared lengths; its default is tighter.
    if (oracle->parsed() && oracle->count("--tolerance") == 0) opts.tolerance = 1e-10;

    try {
        if (validate->parsed()) return cmd_validate(opts);
        if (embed->parsed()) return cmd_embed(opts);
        if (analyze->parsed()) return cmd_analyze(opts);
        if (reciprocal->parsed()) return cmd_reciprocal(opts);
        if (weights->parsed()) return cmd_weights(opts);
        if (check->parsed()) return cmd_check_delaunay(opts);
        if (oracle->parsed()) return cmd_oracle(opts);
        if (render->parsed()) return cmd_render(opts);
    } catch (const UsageError& e) {
        std::cerr << "error: usage: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << kind_name(e.kind()) << ": " << e.what() << "\n";
        return 1;
    }
    return 2;
}
