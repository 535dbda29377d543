#include "torusmc/equilibrium.hpp"

#include "torusmc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace torusmc {

bool is_positive(std::span<const double> omega) {
    return std::all_of(omega.begin(), omega.end(),
                       [](double w) { return std::isfinite(w) && w > 0.0; });
}

Stress uniform_stress(const TorusGraph& g, double value) {
    return Stress(g.num_edges(), value);
}

EquilibriumReport equilibrium_residual(const TorusGraph& g, std::span<const double> omega,
                                       double tolerance) {
    if (omega.size() != g.num_edges())
        fail(ErrorKind::InvalidArgument, "need one stress coefficient per edge");
    EquilibriumReport report;
    report.residual.assign(g.num_vertices(), Vec2{});
    for (DartId d = 0; d < g.num_darts(); ++d) {
        const Vec2 force = omega[edge_of(d)] * g.displacement(d);
        report.residual[g.tail(d)] += force;
        report.scale = std::max(report.scale, norm(force));
    }
    for (const Vec2& r : report.residual)
        report.max_residual = std::max(report.max_residual, norm(r));
    report.in_equilibrium = report.max_residual <= tolerance * report.scale;
    return report;
}

TorusGraph tutte_embed(const TorusGraph& g, std::span<const double> omega, VertexId pinned) {
    if (omega.size() != g.num_edges())
        fail(ErrorKind::InvalidArgument, "need one stress coefficient per edge");
    if (!is_positive(omega)) fail(ErrorKind::InvalidArgument, "stress must be positive");
    if (pinned >= g.num_vertices()) fail(ErrorKind::InvalidArgument, "pinned vertex out of range");
    const EssentialReport essential = check_essential(g);
    if (!essential.essentially_simple || !essential.essentially_3_connected)
        fail(ErrorKind::NotEssentiallyValid,
             std::string("graph is not essentially ") +
                 (essential.essentially_simple ? "3-connected" : "simple"));

    const std::size_t n = g.num_vertices();
    // Unknown index per vertex; the pinned vertex has none.
    std::vector<std::size_t> unknown(n, n);
    std::size_t count = 0;
    for (VertexId v = 0; v < n; ++v)
        if (v != pinned) unknown[v] = count++;

    std::vector<Vec2> positions(n);
    for (VertexId v = 0; v < n; ++v) positions[v] = g.position(v);

    if (count > 0) {
        LinearSystem system{DenseMatrix(count, count), DenseMatrix(count, 2)};
        const Vec2 anchor = g.position(pinned);
        // sum_d omega (x_head - x_tail + M h_d) = 0 at every unpinned tail.
        for (DartId d = 0; d < g.num_darts(); ++d) {
            const VertexId t = g.tail(d);
            if (t == pinned) continue;
            const std::size_t row = unknown[t];
            const double w = omega[edge_of(d)];
            const VertexId h = g.head(d);
            const Vec2 offset = w * g.shape().translation(g.homology(d));
            system.rhs(row, 0) -= offset.x;
            system.rhs(row, 1) -= offset.y;
            system.matrix(row, row) -= w;
            if (h == pinned) {
                system.rhs(row, 0) -= w * anchor.x;
                system.rhs(row, 1) -= w * anchor.y;
            } else {
                system.matrix(row, unknown[h]) += w;
            }
        }
        const DenseMatrix solution = solve_dense(system);
        for (VertexId v = 0; v < n; ++v)
            if (v != pinned) positions[v] = {solution(unknown[v], 0), solution(unknown[v], 1)};
    }

    TorusGraph embedded = g.relocated(positions);
    const EquilibriumReport report = equilibrium_residual(embedded, omega);
    if (!report.in_equilibrium) {
        std::ostringstream msg;
        msg << "solved drawing is out of equilibrium by " << report.max_residual;
        fail(ErrorKind::EmbeddingFailed, msg.str());
    }
    if (!embedding_check(embedded))
        fail(ErrorKind::EmbeddingFailed, "equilibrium drawing is not an embedding");
    return embedded;
}

TorusGraph affine_transfer(const TorusGraph& g, const TorusShape& target) {
    GraphSpec spec = g.spec();
    spec.shape = target;
    for (auto& vertex : spec.vertices) {
        Vec2 lattice = g.shape().to_lattice(vertex.position);
        // Keep rounding noise from pushing a coordinate onto the far side.
        lattice.x = std::clamp(lattice.x, 0.0, 1.0);
        lattice.y = std::clamp(lattice.y, 0.0, 1.0);
        vertex.position = target.from_lattice(lattice);
    }
    return TorusGraph::build(std::move(spec));
}

// --- embedding validation -------------------------------------------------

SegmentSet cover_segments(const TorusGraph& g) {
    SegmentSet set;
    std::int64_t reach = 1;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        const IVec2 h = g.homology(reference_dart(e));
        reach = std::max({reach, 1 + std::abs(h.x), 1 + std::abs(h.y)});
    }
    const double scale = std::max(g.shape().scale(), 1e-300);
    set.tolerance = 1e-10 * scale * scale;
    for (std::int64_t ky = -reach; ky <= reach; ++ky)
        for (std::int64_t kx = -reach; kx <= reach; ++kx)
            for (EdgeId e = 0; e < g.num_edges(); ++e) {
                const DartId d = reference_dart(e);
                CoverSegment s;
                s.tail = g.tail(d);
                s.head = g.head(d);
                s.tail_copy = {kx, ky};
                s.head_copy = s.tail_copy + g.homology(d);
                s.a = g.position(s.tail) + g.shape().translation(s.tail_copy);
                s.b = s.a + g.displacement(d);
                s.edge = e;
                set.all.push_back(s);
                if (kx == 0 && ky == 0) set.probes.push_back(s);
            }
    return set;
}

namespace {

double orient(Vec2 a, Vec2 b, Vec2 c) { return cross(b - a, c - a); }

bool within_box(Vec2 a, Vec2 b, Vec2 p, double slack) {
    return p.x >= std::min(a.x, b.x) - slack && p.x <= std::max(a.x, b.x) + slack &&
           p.y >= std::min(a.y, b.y) - slack && p.y <= std::max(a.y, b.y) + slack;
}

bool same_end(VertexId v, IVec2 kv, VertexId w, IVec2 kw) { return v == w && kv == kw; }

// True when s and t share more than a common endpoint.
bool segments_meet(const CoverSegment& s, const CoverSegment& t, double tolerance) {
    if (s.edge == t.edge && s.tail_copy == t.tail_copy) return false;
    const bool aa = same_end(s.tail, s.tail_copy, t.tail, t.tail_copy);
    const bool ab = same_end(s.tail, s.tail_copy, t.head, t.head_copy);
    const bool ba = same_end(s.head, s.head_copy, t.tail, t.tail_copy);
    const bool bb = same_end(s.head, s.head_copy, t.head, t.head_copy);
    const int shared = aa + ab + ba + bb;
    if (shared >= 2) return true;  // two distinct edges on the same lifted segment
    if (shared == 1) {
        const Vec2 pivot = (aa || ab) ? s.a : s.b;
        const Vec2 other_s = (aa || ab) ? s.b : s.a;
        const Vec2 other_t = (aa || ba) ? t.b : t.a;
        const Vec2 u = other_s - pivot, w = other_t - pivot;
        return std::abs(cross(u, w)) <= tolerance && dot(u, w) > 0.0;
    }
    const double o1 = orient(s.a, s.b, t.a), o2 = orient(s.a, s.b, t.b);
    const double o3 = orient(t.a, t.b, s.a), o4 = orient(t.a, t.b, s.b);
    // Quick reject on bounding boxes.
    const double slack = std::sqrt(tolerance);
    if (std::max(s.a.x, s.b.x) + slack < std::min(t.a.x, t.b.x) ||
        std::max(t.a.x, t.b.x) + slack < std::min(s.a.x, s.b.x) ||
        std::max(s.a.y, s.b.y) + slack < std::min(t.a.y, t.b.y) ||
        std::max(t.a.y, t.b.y) + slack < std::min(s.a.y, s.b.y))
        return false;
    if (std::abs(o1) <= tolerance && within_box(s.a, s.b, t.a, slack)) return true;
    if (std::abs(o2) <= tolerance && within_box(s.a, s.b, t.b, slack)) return true;
    if (std::abs(o3) <= tolerance && within_box(t.a, t.b, s.a, slack)) return true;
    if (std::abs(o4) <= tolerance && within_box(t.a, t.b, s.b, slack)) return true;
    return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0)) && std::abs(o1) > tolerance &&
           std::abs(o2) > tolerance && std::abs(o3) > tolerance && std::abs(o4) > tolerance;
}

} // namespace

std::size_t count_crossings_serial(const SegmentSet& set) {
    std::size_t count = 0;
    for (const CoverSegment& probe : set.probes)
        for (const CoverSegment& other : set.all)
            if (segments_meet(probe, other, set.tolerance)) ++count;
    return count;
}

std::size_t count_crossings_parallel(const SegmentSet& set) {
    const auto probes = static_cast<std::ptrdiff_t>(set.probes.size());
    const auto others = static_cast<std::ptrdiff_t>(set.all.size());
    std::size_t count = 0;
#pragma omp parallel for collapse(2) reduction(+ : count) schedule(static)
    for (std::ptrdiff_t i = 0; i < probes; ++i)
        for (std::ptrdiff_t j = 0; j < others; ++j)
            if (segments_meet(set.probes[i], set.all[j], set.tolerance)) ++count;
    return count;
}

namespace {

bool polygon_simple(const std::vector<Vec2>& corners, double tolerance) {
    const std::size_t m = corners.size();
    if (m < 3) return false;
    const double slack = std::sqrt(tolerance);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (norm(corners[i] - corners[j]) <= slack) return false;
    for (std::size_t i = 0; i < m; ++i) {
        const Vec2 a = corners[i], b = corners[(i + 1) % m], c = corners[(i + 2) % m];
        // Adjacent sides must not fold back onto each other.
        if (std::abs(cross(a - b, c - b)) <= tolerance && dot(a - b, c - b) > 0.0) return false;
        for (std::size_t j = i + 2; j < m; ++j) {
            if ((j + 1) % m == i) continue;
            const Vec2 p = corners[j], q = corners[(j + 1) % m];
            const double o1 = orient(a, b, p), o2 = orient(a, b, q);
            const double o3 = orient(p, q, a), o4 = orient(p, q, b);
            if (((o1 > tolerance && o2 < -tolerance) || (o1 < -tolerance && o2 > tolerance)) &&
                ((o3 > tolerance && o4 < -tolerance) || (o3 < -tolerance && o4 > tolerance)))
                return false;
            if ((std::abs(o1) <= tolerance && within_box(a, b, p, slack)) ||
                (std::abs(o2) <= tolerance && within_box(a, b, q, slack)) ||
                (std::abs(o3) <= tolerance && within_box(p, q, a, slack)) ||
                (std::abs(o4) <= tolerance && within_box(p, q, b, slack)))
                return false;
        }
    }
    return true;
}

} // namespace

EmbeddingReport embedding_report(const TorusGraph& g) {
    EmbeddingReport report;
    const SegmentSet segments = cover_segments(g);
    report.crossings = count_crossings_parallel(segments);

    const double scale = g.shape().scale();
    for (const CoverSegment& s : segments.probes)
        if (norm(s.b - s.a) <= 1e-12 * scale) report.coincident_vertices = true;
    for (VertexId v = 0; v < g.num_vertices() && !report.coincident_vertices; ++v)
        for (VertexId w = 0; w < g.num_vertices(); ++w)
            for (std::int64_t ky = -1; ky <= 1; ++ky)
                for (std::int64_t kx = -1; kx <= 1; ++kx) {
                    if (v == w && kx == 0 && ky == 0) continue;
                    const Vec2 other = g.position(w) + g.shape().translation({kx, ky});
                    if (norm(other - g.position(v)) <= 1e-12 * scale)
                        report.coincident_vertices = true;
                }

    const FaceLifts lifts = face_lifts(g);
    const auto areas = face_areas(g);
    const double area = g.shape().area();
    report.faces_positive = true;
    report.faces_simple = true;
    double total = 0.0;
    for (FaceId f = 0; f < g.num_faces(); ++f) {
        total += areas[f];
        if (!(areas[f] > 1e-12 * area)) report.faces_positive = false;
        std::vector<Vec2> corners;
        for (DartId d : g.map().face_boundary(f)) corners.push_back(lifts.corner[d]);
        if (!polygon_simple(corners, segments.tolerance)) report.faces_simple = false;
    }
    report.area_error = std::abs(total - area);
    report.valid = report.crossings == 0 && !report.coincident_vertices &&
                   report.faces_positive && report.faces_simple &&
                   report.area_error <= 1e-9 * area;
    return report;
}

bool embedding_check(const TorusGraph& g) { return embedding_report(g).valid; }

} // namespace torusmc
