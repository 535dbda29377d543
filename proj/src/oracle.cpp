#include "torusmc/oracle.hpp"

#include "torusmc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace torusmc {

TriplePatch make_triple_patch(const TorusShape& shape, const std::vector<WeightedSite>& sites,
                              std::int64_t reach, double relative_tolerance) {
    TriplePatch patch;
    patch.shape = shape;
    patch.reach = reach;
    const double scale = shape.scale();
    patch.tolerance = relative_tolerance * scale * scale;
    std::vector<Vec2> reduced;
    for (const auto& s : sites) reduced.push_back(reduce_to_fundamental(s.position, shape).point);
    for (std::size_t i = 0; i < sites.size(); ++i)
        patch.points.push_back({i, {}, reduced[i], sites[i].weight});
    patch.central = sites.size();
    for (std::int64_t ky = -reach; ky <= reach; ++ky)
        for (std::int64_t kx = -reach; kx <= reach; ++kx) {
            if (kx == 0 && ky == 0) continue;
            for (std::size_t i = 0; i < sites.size(); ++i)
                patch.points.push_back({i, {kx, ky}, reduced[i] + shape.translation({kx, ky}),
                                        sites[i].weight});
        }
    return patch;
}

namespace {

enum class Outcome { Rejected, Accepted, Cocircular };

struct Candidate {
    Outcome outcome = Outcome::Rejected;
    std::array<std::size_t, 3> triangle{};
    bool needs_larger = false;
};

// Distance from a point (lattice coordinates) to the outside of the patch.
double clearance(const TriplePatch& patch, Vec2 lattice) {
    const double lo = -static_cast<double>(patch.reach);
    const double hi = static_cast<double>(patch.reach) + 1.0;
    const double area = patch.shape.area();
    const double across_u = area / norm(patch.shape.v());  // spacing of lines x = const
    const double across_v = area / norm(patch.shape.u());
    return std::min({(lattice.x - lo) * across_u, (hi - lattice.x) * across_u,
                     (lattice.y - lo) * across_v, (hi - lattice.y) * across_v});
}

Candidate evaluate(const TriplePatch& patch, std::size_t i, std::size_t j, std::size_t k,
                   double max_weight) {
    Candidate out;
    const auto& pts = patch.points;
    const LiftedSite& p = pts[i];
    Vec2 a = pts[j].position - p.position;
    Vec2 b = pts[k].position - p.position;
    double wa = pts[j].weight, wb = pts[k].weight;
    std::size_t jj = j, kk = k;
    const double turn = cross(a, b);
    if (std::abs(turn) <= patch.tolerance) return out;
    if (turn < 0.0) {
        std::swap(a, b);
        std::swap(wa, wb);
        std::swap(jj, kk);
    }
    const Mat2 rows{a.x, a.y, b.x, b.y};
    const Vec2 rhs{0.5 * squared_norm(a) - (wa - p.weight), 0.5 * squared_norm(b) - (wb - p.weight)};
    const Vec2 center = rows.inverse() * rhs;  // relative to p
    const double power = 0.5 * squared_norm(center) - p.weight;
    bool on_circle = false;
    for (std::size_t m = 0; m < pts.size(); ++m) {
        if (m == i || m == j || m == k) continue;
        const Vec2 offset = pts[m].position - p.position;
        const double excess = 0.5 * squared_norm(center - offset) - pts[m].weight - power;
        if (excess < -patch.tolerance) return out;
        if (excess <= patch.tolerance) on_circle = true;
    }
    if (on_circle) {
        out.outcome = Outcome::Cocircular;
        return out;
    }
    out.outcome = Outcome::Accepted;
    out.triangle = {i, jj, kk};
    const double room = clearance(patch, patch.shape.to_lattice(center + p.position));
    out.needs_larger = room <= 0.0 || 0.5 * room * room <= power + max_weight + patch.tolerance;
    return out;
}

double largest_weight(const TriplePatch& patch) {
    double w = -1e300;
    for (const auto& s : patch.points) w = std::max(w, s.weight);
    return w;
}

void finish(TripleScan& scan) { std::sort(scan.triangles.begin(), scan.triangles.end()); }

} // namespace

TripleScan scan_triples_serial(const TriplePatch& patch) {
    TripleScan scan;
    const double max_weight = largest_weight(patch);
    const std::size_t n = patch.points.size();
    for (std::size_t i = 0; i < patch.central; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            for (std::size_t k = j + 1; k < n; ++k) {
                if (k == i) continue;
                const Candidate c = evaluate(patch, i, j, k, max_weight);
                if (c.outcome == Outcome::Cocircular) scan.cocircular = true;
                if (c.outcome != Outcome::Accepted) continue;
                scan.triangles.push_back(c.triangle);
                scan.needs_larger = scan.needs_larger || c.needs_larger;
            }
        }
    finish(scan);
    return scan;
}

TripleScan scan_triples_parallel(const TriplePatch& patch) {
    TripleScan scan;
    const double max_weight = largest_weight(patch);
    const auto n = static_cast<std::ptrdiff_t>(patch.points.size());
    const auto central = static_cast<std::ptrdiff_t>(patch.central);
    bool cocircular = false, needs_larger = false;
#pragma omp parallel reduction(|| : cocircular, needs_larger)
    {
        std::vector<std::array<std::size_t, 3>> local;
#pragma omp for collapse(2) schedule(dynamic, 16) nowait
        for (std::ptrdiff_t i = 0; i < central; ++i)
            for (std::ptrdiff_t j = 0; j < n; ++j) {
                if (j == i) continue;
                for (std::ptrdiff_t k = j + 1; k < n; ++k) {
                    if (k == i) continue;
                    const Candidate c = evaluate(patch, static_cast<std::size_t>(i),
                                                 static_cast<std::size_t>(j),
                                                 static_cast<std::size_t>(k), max_weight);
                    if (c.outcome == Outcome::Cocircular) cocircular = true;
                    if (c.outcome != Outcome::Accepted) continue;
                    local.push_back(c.triangle);
                    needs_larger = needs_larger || c.needs_larger;
                }
            }
#pragma omp critical(torusmc_oracle_merge)
        scan.triangles.insert(scan.triangles.end(), local.begin(), local.end());
    }
    scan.cocircular = cocircular;
    scan.needs_larger = needs_larger;
    finish(scan);
    return scan;
}

namespace {

using Corner = std::tuple<std::size_t, std::int64_t, std::int64_t>;
using Triangle = std::array<Corner, 3>;

Triangle canonical(const TriplePatch& patch, const std::array<std::size_t, 3>& t) {
    Triangle best{};
    bool first = true;
    for (int r = 0; r < 3; ++r) {
        const IVec2 base = patch.points[t[r]].copy;
        Triangle candidate;
        for (int s = 0; s < 3; ++s) {
            const LiftedSite& p = patch.points[t[(r + s) % 3]];
            candidate[s] = {p.site, p.copy.x - base.x, p.copy.y - base.y};
        }
        if (first || candidate < best) best = candidate;
        first = false;
    }
    return best;
}

} // namespace

TorusGraph oracle_weighted_delaunay(const TorusShape& shape, const std::vector<WeightedSite>& sites,
                                    const OracleOptions& options) {
    if (sites.empty()) fail(ErrorKind::InvalidArgument, "no sites");
    for (const auto& s : sites)
        if (!std::isfinite(s.position.x) || !std::isfinite(s.position.y) ||
            !std::isfinite(s.weight))
            fail(ErrorKind::InvalidArgument, "site " + s.name + " is not finite");

    std::set<Triangle> triangles;
    std::vector<Vec2> reduced;
    for (const auto& s : sites) reduced.push_back(reduce_to_fundamental(s.position, shape).point);
    bool complete = false;
    for (std::int64_t reach = 1; reach <= 2 && !complete; ++reach) {
        const TriplePatch patch = make_triple_patch(shape, sites, reach, options.tolerance);
        const TripleScan scan =
            options.parallel ? scan_triples_parallel(patch) : scan_triples_serial(patch);
        if (scan.cocircular)
            fail(ErrorKind::NonGeneric,
                 "some site lies on a candidate power circle; perturb the input");
        triangles.clear();
        for (const auto& t : scan.triangles) triangles.insert(canonical(patch, t));
        double area = 0.0;
        for (const Triangle& t : triangles) {
            Vec2 corner[3];
            for (int s = 0; s < 3; ++s) {
                const auto& [site, kx, ky] = t[s];
                corner[s] = reduced[site] + shape.translation({kx, ky});
            }
            area += 0.5 * cross(corner[1] - corner[0], corner[2] - corner[0]);
        }
        complete = !scan.needs_larger && std::abs(area - shape.area()) <= 1e-9 * shape.area();
    }
    if (!complete)
        fail(ErrorKind::NonGeneric, "triangles found on the 5x5 patch do not tile the torus");

    // Edges keyed by (tail, head, homology) up to reversal.
    using EdgeKey = std::tuple<std::size_t, std::size_t, std::int64_t, std::int64_t>;
    std::map<EdgeKey, int> uses;
    std::vector<bool> used_site(sites.size(), false);
    for (const Triangle& t : triangles)
        for (int s = 0; s < 3; ++s) {
            auto [a, ax, ay] = t[s];
            auto [b, bx, by] = t[(s + 1) % 3];
            used_site[a] = true;
            IVec2 h{bx - ax, by - ay};
            if (b < a || (a == b && h < IVec2{})) {
                std::swap(a, b);
                h = -h;
            }
            ++uses[{a, b, h.x, h.y}];
        }
    for (std::size_t i = 0; i < sites.size(); ++i)
        if (!used_site[i])
            fail(ErrorKind::NonGeneric, "site " + sites[i].name + " has an empty power cell");

    std::vector<VertexRecord> vertices;
    for (std::size_t i = 0; i < sites.size(); ++i) vertices.push_back({sites[i].name, reduced[i]});
    std::vector<GeometricEdge> edges;
    for (const auto& [key, count] : uses) {
        const auto& [a, b, hx, hy] = key;
        if (count != 2)
            fail(ErrorKind::NonGeneric, "triangles do not pair up along every edge");
        const Vec2 displacement = reduced[b] + shape.translation({hx, hy}) - reduced[a];
        edges.push_back({"e" + std::to_string(edges.size()), a, b, displacement});
    }
    TorusGraph g = TorusGraph::from_displacements(shape, std::move(vertices), std::move(edges));
    if (g.num_faces() != triangles.size())
        fail(ErrorKind::NonGeneric, "triangle set does not form a map");
    return g;
}

} // namespace torusmc
