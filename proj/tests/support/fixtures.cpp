#include "fixtures.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace torusmc::fixtures {

TorusGraph k7() {
    std::vector<VertexRecord> vertices;
    for (int i = 0; i < 7; ++i)
        vertices.push_back({"p" + std::to_string(i), {i / 7.0, ((3 * i) % 7) / 7.0}});
    const int step[3] = {1, 3, 2};
    const Vec2 offset[3] = {{1.0 / 7, 3.0 / 7}, {3.0 / 7, 2.0 / 7}, {2.0 / 7, -1.0 / 7}};
    std::vector<GeometricEdge> edges;
    for (int i = 0; i < 7; ++i)
        for (int c = 0; c < 3; ++c)
            edges.push_back({"e" + std::to_string(i) + "_" + std::to_string((i + step[c]) % 7),
                             static_cast<VertexId>(i), static_cast<VertexId>((i + step[c]) % 7),
                             offset[c]});
    return TorusGraph::from_displacements(TorusShape::square(), std::move(vertices),
                                          std::move(edges));
}

TorusGraph g1() { return gk(1); }

TorusGraph gk(int k) {
    std::vector<VertexRecord> vertices;
    auto id = [k](int i, int j) { return static_cast<VertexId>(((i % k + k) % k) * k + (j % k + k) % k); };
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            vertices.push_back({"p" + std::to_string(i) + "_" + std::to_string(j),
                                {static_cast<double>(i) / k, static_cast<double>(j) / k}});
    const int dx[3] = {1, 1, 2};
    const int dy[3] = {0, 1, 1};
    const char* label[3] = {"a", "b", "c"};
    std::vector<GeometricEdge> edges;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            for (int c = 0; c < 3; ++c)
                edges.push_back({std::string(label[c]) + std::to_string(i) + "_" + std::to_string(j),
                                 id(i, j), id(i + dx[c], j + dy[c]),
                                 {static_cast<double>(dx[c]) / k, static_cast<double>(dy[c]) / k}});
    return TorusGraph::from_displacements(TorusShape::square(), std::move(vertices),
                                          std::move(edges));
}

std::vector<double> k7_class_stress(double slope3, double slope23, double slope_half) {
    std::vector<double> omega(21);
    for (EdgeId e = 0; e < 21; ++e) {
        const int c = k7_class(e);
        omega[e] = c == 0 ? slope3 : (c == 1 ? slope23 : slope_half);
    }
    return omega;
}

std::vector<Site> random_sites(const TorusShape& shape, int count, double max_weight,
                               std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double min_gap = 0.35 / std::sqrt(static_cast<double>(count));
    std::vector<Site> sites;
    while (static_cast<int>(sites.size()) < count) {
        const Vec2 lattice{unit(rng), unit(rng)};
        bool ok = true;
        for (const Site& s : sites) {
            Vec2 diff = lattice - shape.to_lattice(s.position);
            diff.x -= std::round(diff.x);
            diff.y -= std::round(diff.y);
            if (norm(diff) < min_gap) ok = false;
        }
        if (!ok) continue;
        sites.push_back({shape.from_lattice(lattice), max_weight * unit(rng)});
    }
    return sites;
}

TorusShape random_shape(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> shear(-0.4, 0.4);
    std::uniform_real_distribution<double> stretch(0.7, 1.4);
    std::uniform_real_distribution<double> scale(0.5, 2.0);
    const Mat2 base{stretch(rng), shear(rng), 0.0, 1.0 / stretch(rng)};
    return TorusShape(scale(rng) * (Mat2::rotation(angle(rng)) * base));
}

std::vector<Vec2> relax_equilibrium(const TorusGraph& g, std::span<const double> omega,
                                    VertexId pinned) {
    std::vector<Vec2> x(g.num_vertices());
    for (VertexId v = 0; v < g.num_vertices(); ++v) x[v] = g.position(v);
    for (int sweep = 0; sweep < 200000; ++sweep) {
        double change = 0.0;
        for (VertexId v = 0; v < g.num_vertices(); ++v) {
            if (v == pinned) continue;
            Vec2 sum;
            double total = 0.0;
            for (DartId d : g.map().darts_around(v)) {
                if (g.head(d) == v) continue;  // loops pull both ways
                const double w = omega[edge_of(d)];
                sum += w * (x[g.head(d)] + g.shape().translation(g.homology(d)));
                total += w;
            }
            const Vec2 next = sum / total;
            change = std::max(change, max_abs(next - x[v]));
            x[v] = next;
        }
        if (change < 1e-16) break;
    }
    return x;
}

} // namespace torusmc::fixtures
