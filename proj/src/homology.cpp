#include "torusmc/homology.hpp"

#include "torusmc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

namespace torusmc {

namespace {

void require_edge_values(const TorusGraph& g, std::span<const double> phi) {
    if (phi.size() != g.num_edges())
        fail(ErrorKind::InvalidArgument, "need one circulation value per edge");
}

double max_abs_value(std::span<const double> values) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

} // namespace

IVec2 cycle_homology(const TorusGraph& g, std::span<const DartId> cycle) {
    if (cycle.empty()) return {};
    IVec2 sum;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        const DartId d = cycle[i];
        if (d >= g.num_darts()) fail(ErrorKind::InvalidArgument, "dart out of range");
        const DartId next = cycle[(i + 1) % cycle.size()];
        if (next >= g.num_darts()) fail(ErrorKind::InvalidArgument, "dart out of range");
        if (g.head(d) != g.tail(next)) {
            std::ostringstream msg;
            msg << "walk breaks after position " << i << ": dart " << d << " ends at "
                << g.vertex_name(g.head(d)) << ", next starts at "
                << g.vertex_name(g.tail(next));
            fail(ErrorKind::NotClosed, msg.str());
        }
        sum += g.homology(d);
    }
    return sum;
}

std::vector<double> vertex_imbalance(const TorusGraph& g, std::span<const double> phi) {
    require_edge_values(g, phi);
    std::vector<double> out(g.num_vertices(), 0.0);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        const DartId d = reference_dart(e);
        out[g.tail(d)] += phi[e];
        out[g.head(d)] -= phi[e];
    }
    return out;
}

Vec2 circulation_class(const TorusGraph& g, std::span<const double> phi, double tolerance) {
    const auto imbalance = vertex_imbalance(g, phi);
    const double limit = tolerance * (1.0 + max_abs_value(phi));
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (std::abs(imbalance[v]) > limit) {
            std::ostringstream msg;
            msg << "vertex " << g.vertex_name(v) << " is out of balance by " << imbalance[v];
            fail(ErrorKind::NotACirculation, msg.str());
        }
    }
    Vec2 sum;
    for (EdgeId e = 0; e < g.num_edges(); ++e)
        sum += phi[e] * to_real(g.homology(reference_dart(e)));
    return sum;
}

double verify_harmonic(const TorusGraph& g, std::span<const double> phi) {
    require_edge_values(g, phi);
    const auto reference = g.reference_displacement_matrix();
    Vec2 delta_phi, lambda_phi;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        delta_phi += phi[e] * reference[e];
        lambda_phi += phi[e] * to_real(g.homology(reference_dart(e)));
    }
    return max_abs(delta_phi - lambda_phi);
}

BoundaryCocirculations boundary_cocirculations(const TorusGraph& g) {
    const TorusGraph dual_graph = natural_dual(g);
    BoundaryCocirculations out;
    out.first.resize(g.num_edges());
    out.second.resize(g.num_edges());
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        const IVec2 h = g.homology(reference_dart(e));
        out.first[e] = static_cast<double>(h.x);
        out.second[e] = static_cast<double>(h.y);
    }
    // Dual edge e* has the same index as e.
    auto measure = [&](const std::vector<double>& row, const char* label) {
        try {
            return circulation_class(dual_graph, row);
        } catch (const Error& err) {
            fail(ErrorKind::CocirculationCheckFailed,
                 std::string(label) + " is not a cocirculation: " + err.what());
        }
    };
    out.first_class = measure(out.first, "first row of Lambda");
    out.second_class = measure(out.second, "second row of Lambda");
    if (!(out.first_class == Vec2{0.0, 1.0}) || !(out.second_class == Vec2{-1.0, 0.0})) {
        std::ostringstream msg;
        msg << "cohomology classes (" << out.first_class.x << ", " << out.first_class.y
            << ") and (" << out.second_class.x << ", " << out.second_class.y
            << "), expected (0, 1) and (-1, 0)";
        fail(ErrorKind::CocirculationCheckFailed, msg.str());
    }
    return out;
}

Circulation walk_indicator(const TorusGraph& g, std::span<const DartId> cycle) {
    Circulation phi(g.num_edges(), 0.0);
    for (DartId d : cycle) phi[edge_of(d)] += is_reference(d) ? 1.0 : -1.0;
    return phi;
}

std::vector<std::vector<DartId>> fundamental_cycles(const TorusGraph& g) {
    const std::size_t n = g.num_vertices();
    const DartId none = g.num_darts();
    std::vector<DartId> parent(n, none);
    std::vector<std::size_t> depth(n, 0);
    std::vector<bool> reached(n, false);
    std::vector<bool> tree_edge(g.num_edges(), false);
    std::queue<VertexId> queue;
    if (n == 0) return {};
    reached[0] = true;
    queue.push(0);
    while (!queue.empty()) {
        const VertexId v = queue.front();
        queue.pop();
        for (DartId d : g.map().darts_around(v)) {
            const VertexId w = g.head(d);
            if (reached[w]) continue;
            reached[w] = true;
            parent[w] = d;
            depth[w] = depth[v] + 1;
            tree_edge[edge_of(d)] = true;
            queue.push(w);
        }
    }
    // Tree path from the root down to v.
    auto path_from_root = [&](VertexId v) {
        std::vector<DartId> path;
        while (parent[v] != none) {
            path.push_back(parent[v]);
            v = g.tail(parent[v]);
        }
        std::reverse(path.begin(), path.end());
        return path;
    };
    std::vector<std::vector<DartId>> cycles;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        if (tree_edge[e]) continue;
        const DartId d = reference_dart(e);
        // root -> tail, d, head -> root
        std::vector<DartId> walk = path_from_root(g.tail(d));
        walk.push_back(d);
        auto back = path_from_root(g.head(d));
        for (auto it = back.rbegin(); it != back.rend(); ++it) walk.push_back(reversal(*it));
        cycles.push_back(std::move(walk));
    }
    return cycles;
}

Circulation random_circulation(const TorusGraph& g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coefficient(-1.0, 1.0);
    Circulation phi(g.num_edges(), 0.0);
    for (const auto& cycle : fundamental_cycles(g)) {
        const double c = coefficient(rng);
        const Circulation basis = walk_indicator(g, cycle);
        for (EdgeId e = 0; e < g.num_edges(); ++e) phi[e] += c * basis[e];
    }
    return phi;
}

} // namespace torusmc
