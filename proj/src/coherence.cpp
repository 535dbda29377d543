#include "torusmc/coherence.hpp"

#include "torusmc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

namespace torusmc {

const char* class_name(EdgeClass c) {
    switch (c) {
    case EdgeClass::Delaunay: return "delaunay";
    case EdgeClass::Flat: return "flat";
    case EdgeClass::Violated: return "violated";
    }
    return "unknown";
}

DartTriple delaunay_triple(const TorusGraph& g, DartId middle) {
    const VertexId p = g.tail(middle);
    if (g.map().degree(p) < 3)
        fail(ErrorKind::DegenerateStar,
             "vertex " + g.vertex_name(p) + " has fewer than three darts");
    return {g.map().rotation_prev(middle), middle, g.map().rotation_next(middle)};
}

namespace {

double det3(const double m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

double row_norm(const double row[3]) {
    return std::sqrt(row[0] * row[0] + row[1] * row[1] + row[2] * row[2]);
}

} // namespace

Determinant delaunay_det3(Vec2 to_q, double pi_q, Vec2 to_r, double pi_r, Vec2 to_s,
                          double pi_s, double pi_p) {
    const double m[3][3] = {
        {to_q.x, to_q.y, 0.5 * squared_norm(to_q) + pi_p - pi_q},
        {to_r.x, to_r.y, 0.5 * squared_norm(to_r) + pi_p - pi_r},
        {to_s.x, to_s.y, 0.5 * squared_norm(to_s) + pi_p - pi_s},
    };
    const double largest = std::max({row_norm(m[0]), row_norm(m[1]), row_norm(m[2])});
    return {det3(m), largest * largest * largest};
}

Determinant delaunay_det4(Vec2 p, double pi_p, Vec2 q, double pi_q, Vec2 r, double pi_r,
                          Vec2 s, double pi_s) {
    const Vec2 pts[4] = {p, q, r, s};
    const double pis[4] = {pi_p, pi_q, pi_r, pi_s};
    double m[4][4];
    for (int i = 0; i < 4; ++i) {
        m[i][0] = 1.0;
        m[i][1] = pts[i].x;
        m[i][2] = pts[i].y;
        m[i][3] = 0.5 * squared_norm(pts[i]) - pis[i];
    }
    // Cofactor expansion along the first column.
    double value = 0.0;
    for (int i = 0; i < 4; ++i) {
        double minor[3][3];
        for (int r = 0, mr = 0; r < 4; ++r) {
            if (r == i) continue;
            for (int c = 1; c < 4; ++c) minor[mr][c - 1] = m[r][c];
            ++mr;
        }
        value += ((i % 2 == 0) ? 1.0 : -1.0) * det3(minor);
    }
    // Same scale as the 3x3 form so both share one flatness threshold.
    double largest = 0.0;
    for (int i = 1; i < 4; ++i) {
        const Vec2 diff = pts[i] - p;
        const double row[3] = {diff.x, diff.y, 0.5 * squared_norm(diff) + pi_p - pis[i]};
        largest = std::max(largest, row_norm(row));
    }
    return {value, largest * largest * largest};
}

EdgeClass classify(const Determinant& det, double tolerance) {
    if (std::abs(det.value) <= tolerance * det.scale) return EdgeClass::Flat;
    return det.value > 0.0 ? EdgeClass::Delaunay : EdgeClass::Violated;
}

Determinant local_delaunay_det(const TorusGraph& g, std::span<const double> weights,
                               DartId dart) {
    if (weights.size() != g.num_vertices())
        fail(ErrorKind::InvalidArgument, "need one weight per vertex");
    const DartTriple t = delaunay_triple(g, dart);
    return delaunay_det3(g.displacement(t.before), weights[g.head(t.before)],
                         g.displacement(t.middle), weights[g.head(t.middle)],
                         g.displacement(t.after), weights[g.head(t.after)],
                         weights[g.tail(dart)]);
}

Determinant local_delaunay_det(const TorusGraph& g, std::span<const double> weights,
                               EdgeId e, bool from_head) {
    const DartId d = reference_dart(e);
    return local_delaunay_det(g, weights, from_head ? reversal(d) : d);
}

DelaunayVerdict is_weighted_delaunay(const TorusGraph& g, std::span<const double> weights,
                                     double tolerance) {
    if (weights.size() != g.num_vertices())
        fail(ErrorKind::InvalidArgument, "need one weight per vertex");
    DelaunayVerdict verdict;
    verdict.weighted_delaunay = true;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        const Determinant det = local_delaunay_det(g, weights, e, false);
        verdict.edge_det.push_back(det);
        verdict.edge_class.push_back(classify(det, tolerance));
        if (verdict.edge_class.back() != EdgeClass::Delaunay) verdict.weighted_delaunay = false;
    }

    const FaceLifts lifts = face_lifts(g);
    for (FaceId f = 0; f < g.num_faces(); ++f) {
        const auto& boundary = g.map().face_boundary(f);
        const std::size_t m = boundary.size();
        if (m < 4) continue;
        std::vector<Vec2> corner(m);
        std::vector<double> pi(m);
        for (std::size_t i = 0; i < m; ++i) {
            corner[i] = lifts.corner[boundary[i]];
            pi[i] = weights[g.tail(boundary[i])];
        }
        auto check = [&](std::size_t i, std::size_t j) {
            const std::size_t next = (i + 1) % m, prev = (i + m - 1) % m;
            DiagonalCheck c;
            c.face = f;
            c.from = i;
            c.to = j;
            c.det = delaunay_det3(corner[prev] - corner[i], pi[prev], corner[j] - corner[i],
                                  pi[j], corner[next] - corner[i], pi[next], pi[i]);
            c.verdict = classify(c.det, tolerance);
            if (c.verdict != EdgeClass::Flat) verdict.weighted_delaunay = false;
            verdict.diagonals.push_back(c);
        };
        if (m <= 8) {
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = i + 2; j < m; ++j)
                    if (!(i == 0 && j == m - 1)) check(i, j);
        } else {
            std::size_t apex = 0;
            for (std::size_t i = 1; i < m; ++i)
                if (g.tail(boundary[i]) < g.tail(boundary[apex])) apex = i;
            for (std::size_t step = 2; step + 1 < m; ++step) check(apex, (apex + step) % m);
        }
    }
    return verdict;
}

ReciprocalPair power_dual(const TorusGraph& g, std::span<const double> weights) {
    if (weights.size() != g.num_vertices())
        fail(ErrorKind::InvalidArgument, "need one weight per vertex");
    const FaceLifts lifts = face_lifts(g);
    ReciprocalPair pair;
    pair.primal = g;
    pair.face_points.resize(g.num_faces());
    for (FaceId f = 0; f < g.num_faces(); ++f) {
        const auto& boundary = g.map().face_boundary(f);
        const Vec2 a = lifts.corner[boundary[0]];
        const Vec2 b = lifts.corner[boundary[1 % boundary.size()]];
        const Vec2 c = lifts.corner[boundary[2 % boundary.size()]];
        const double wa = weights[g.tail(boundary[0])];
        const double wb = weights[g.tail(boundary[1 % boundary.size()])];
        const double wc = weights[g.tail(boundary[2 % boundary.size()])];
        // x . (b - a) = (|b|^2 - |a|^2) / 2 - (wb - wa), same for c.
        const Mat2 rows{b.x - a.x, b.y - a.y, c.x - a.x, c.y - a.y};
        if (std::abs(rows.det()) <= 1e-14 * squared_norm(b - a) * squared_norm(c - a))
            fail(ErrorKind::InvalidArgument, "face has collinear leading corners");
        const Vec2 rhs{0.5 * (squared_norm(b) - squared_norm(a)) - (wb - wa),
                       0.5 * (squared_norm(c) - squared_norm(a)) - (wc - wa)};
        pair.face_points[f] = rows.inverse() * rhs;
    }
    pair.dual = dual_from_face_points(g, pair.face_points, g.shape());
    pair.stress.resize(g.num_edges());
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        const Vec2 primal = g.displacement(reference_dart(e));
        const Vec2 dual_edge = pair.dual.displacement(reference_dart(e));
        pair.stress[e] = dot(dual_edge, perp(primal)) / squared_norm(primal);
    }
    return pair;
}

// --- lifting --------------------------------------------------------------

namespace {

constexpr std::int64_t kLiftReach = 3;     // BFS window [-3, 3]^2
constexpr std::int64_t kPeriodicReach = 2; // periodicity checked on [-2, 2]^2

struct CoverNode {
    FaceId face;
    IVec2 copy;
};

struct NodeIndex {
    std::size_t faces;
    std::size_t operator()(FaceId f, IVec2 k) const {
        const std::int64_t side = 2 * kLiftReach + 1;
        return static_cast<std::size_t>((k.y + kLiftReach) * side + (k.x + kLiftReach)) * faces +
               f;
    }
    static bool inside(IVec2 k) {
        return std::abs(k.x) <= kLiftReach && std::abs(k.y) <= kLiftReach;
    }
};

} // namespace

LiftingResult lift(const TorusGraph& g, const ReciprocalPair& pair, VertexId origin) {
    const TorusGraph& primal = pair.primal;
    if (!(g.map() == primal.map()))
        fail(ErrorKind::InvalidArgument, "pair does not belong to this graph");
    if (origin >= primal.num_vertices())
        fail(ErrorKind::InvalidArgument, "origin vertex out of range");
    if (pair.face_points.size() != primal.num_faces() ||
        pair.stress.size() != primal.num_edges())
        fail(ErrorKind::InvalidArgument, "incomplete reciprocal pair");

    const FaceLifts lifts = face_lifts(primal);
    const TorusShape& shape = primal.shape();
    LiftingResult out;
    out.origin = origin;
    out.root_dart = primal.map().first_dart(origin);
    out.root_face = primal.map().left_face(out.root_dart);
    out.origin_offset = lifts.corner[out.root_dart];

    const std::size_t faces = primal.num_faces();
    const NodeIndex index{faces};
    const std::int64_t side = 2 * kLiftReach + 1;
    const std::size_t nodes = faces * static_cast<std::size_t>(side * side);
    std::vector<double> constant(nodes, 0.0);
    std::vector<Vec2> gradient(nodes);
    std::vector<bool> seen(nodes, false);

    const std::size_t root = index(out.root_face, {});
    seen[root] = true;
    gradient[root] = pair.face_points[out.root_face] - out.origin_offset;
    std::queue<CoverNode> queue;
    queue.push({out.root_face, {}});

    double max_constant = 0.0, max_gradient = norm(gradient[root]);
    double worst = 0.0;
    while (!queue.empty()) {
        const CoverNode node = queue.front();
        queue.pop();
        const std::size_t here = index(node.face, node.copy);
        for (DartId x : primal.map().face_boundary(node.face)) {
            // Dual dart of d = reversal(x) runs from this face to left_face(d).
            const DartId d = reversal(x);
            const FaceId next_face = primal.map().left_face(d);
            const IVec2 next_copy = node.copy - lifts.shift[d];
            if (!NodeIndex::inside(next_copy)) continue;
            const double w = pair.stress[edge_of(d)];
            const Vec2 delta = primal.displacement(d);
            const Vec2 tail = lifts.corner[d] + shape.translation(next_copy) - out.origin_offset;
            const double c = constant[here] + w * cross(tail, tail + delta);
            const Vec2 grad = gradient[here] + w * perp(delta);
            const std::size_t there = index(next_face, next_copy);
            if (seen[there]) {
                worst = std::max({worst, std::abs(c - constant[there]),
                                  max_abs(grad - gradient[there])});
                continue;
            }
            seen[there] = true;
            constant[there] = c;
            gradient[there] = grad;
            max_constant = std::max(max_constant, std::abs(c));
            max_gradient = std::max(max_gradient, norm(grad));
            queue.push({next_face, next_copy});
        }
    }
    const double extent = static_cast<double>(kLiftReach + 1) * shape.scale();
    out.path_residual = worst;
    const double path_scale = 1.0 + max_constant + max_gradient * extent;
    if (worst > 1e-9 * path_scale) {
        std::ostringstream msg;
        msg << "lifting depends on the dual path, discrepancy " << worst;
        fail(ErrorKind::PathInconsistent, msg.str());
    }
    const std::size_t at_u = index(out.root_face, {1, 0});
    const std::size_t at_v = index(out.root_face, {0, 1});
    if (!seen[at_u] || !seen[at_v])
        fail(ErrorKind::PathInconsistent, "translated root face not reached");
    out.root_u_constant = constant[at_u];
    out.root_v_constant = constant[at_v];

    out.plane_constant.resize(faces);
    out.gradient.resize(faces);
    for (FaceId f = 0; f < faces; ++f) {
        const std::size_t base = index(f, {});
        if (!seen[base]) fail(ErrorKind::PathInconsistent, "face lift not reached");
        out.plane_constant[f] = constant[base];
        out.gradient[f] = gradient[base];
    }

    auto weight_at = [&](DartId d, IVec2 k) {
        const std::size_t node = index(primal.map().left_face(d), k);
        const Vec2 x = lifts.corner[d] + shape.translation(k) - out.origin_offset;
        return 0.5 * squared_norm(x) - (dot(gradient[node], x) + constant[node]);
    };
    out.weights.resize(primal.num_vertices());
    for (VertexId v = 0; v < primal.num_vertices(); ++v)
        out.weights[v] = weight_at(primal.map().first_dart(v), {});
    out.weights[origin] = 0.0;  // exact by construction; drop rounding
    for (DartId d = 0; d < primal.num_darts(); ++d)
        for (std::int64_t ky = -kPeriodicReach; ky <= kPeriodicReach; ++ky)
            for (std::int64_t kx = -kPeriodicReach; kx <= kPeriodicReach; ++kx) {
                if (!seen[index(primal.map().left_face(d), {kx, ky})]) continue;
                out.periodicity_residual =
                    std::max(out.periodicity_residual,
                             std::abs(weight_at(d, {kx, ky}) - out.weights[primal.tail(d)]));
            }
    return out;
}

Vec2 fix_translation(const ReciprocalPair& pair, const LiftingResult& lifting) {
    const TorusShape& shape = pair.primal.shape();
    const Vec2 u = shape.u(), v = shape.v();
    const Vec2 rhs{-0.5 * squared_norm(u) - lifting.root_u_constant,
                   -0.5 * squared_norm(v) - lifting.root_v_constant};
    // Plane-frame gradient, then back to the pair frame.
    return row_times(rhs, shape.inverse()) + lifting.origin_offset;
}

CoherentLifting coherent_lifting(const TorusGraph& g, const ReciprocalPair& pair,
                                 VertexId origin) {
    const LiftingResult first = lift(g, pair, origin);
    const Vec2 target = fix_translation(pair, first);
    CoherentLifting out;
    out.applied_offset = target - pair.face_points[first.root_face];
    out.pair = translate_dual(pair, out.applied_offset);
    out.lifting = lift(g, out.pair, origin);

    const double extent = static_cast<double>(kPeriodicReach + 1) * pair.primal.shape().scale();
    const double limit = 1e-9 * (1.0 + extent * extent);
    if (out.lifting.periodicity_residual > limit) {
        std::ostringstream msg;
        msg << "weights are not periodic after fixing the translation, residual "
            << out.lifting.periodicity_residual;
        fail(ErrorKind::PathInconsistent, msg.str());
    }
    if (!is_weighted_delaunay(out.pair.primal, out.lifting.weights).weighted_delaunay)
        fail(ErrorKind::PathInconsistent,
             "lifted weights do not make the graph weighted Delaunay");
    return out;
}

VertexWeights weights_from_reciprocal(const TorusGraph& g, const ReciprocalPair& pair) {
    return coherent_lifting(g, pair).lifting.weights;
}

} // namespace torusmc
