#include "torusmc/reciprocal.hpp"

#include "torusmc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

namespace torusmc {

StressAnalysis covariance(const TorusGraph& g, std::span<const double> omega) {
    if (omega.size() != g.num_edges())
        fail(ErrorKind::InvalidArgument, "need one stress coefficient per edge");
    StressAnalysis s;
    const auto reference = g.reference_displacement_matrix();
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        const Vec2 r = reference[e];
        s.alpha += omega[e] * r.x * r.x;
        s.beta += omega[e] * r.y * r.y;
        s.gamma += omega[e] * r.x * r.y;
    }
    s.discriminant = s.alpha * s.beta - s.gamma * s.gamma;
    return s;
}

Stress normalize_stress(const TorusGraph& g, std::span<const double> omega) {
    if (!is_positive(omega)) fail(ErrorKind::InvalidArgument, "stress must be positive");
    const StressAnalysis s = covariance(g, omega);
    if (!(s.discriminant > 0.0))
        fail(ErrorKind::InvalidArgument, "covariance is singular");
    const double factor = 1.0 / std::sqrt(s.discriminant);
    Stress out(omega.begin(), omega.end());
    for (double& w : out) w *= factor;
    return out;
}

TorusShape reciprocal_torus(const StressAnalysis& analysis, double tolerance) {
    if (!(std::abs(analysis.discriminant - 1.0) <= tolerance)) {
        std::ostringstream msg;
        msg << "discriminant is " << analysis.discriminant << ", normalize the stress first";
        fail(ErrorKind::NotNormalized, msg.str());
    }
    return TorusShape(Mat2{analysis.beta, -analysis.gamma, 0.0, 1.0});
}

Mat2 required_covariance(const TorusShape& shape) {
    const Mat2& m = shape.matrix();
    const double det = m.det();
    const double off = -(m.a * m.b + m.c * m.d) / det;
    return {(m.b * m.b + m.d * m.d) / det, off, off, (m.a * m.a + m.c * m.c) / det};
}

bool is_reciprocal_on(const TorusGraph& g, std::span<const double> omega,
                      const TorusShape& shape, double tolerance) {
    if (omega.size() != g.num_edges() || !is_positive(omega)) return false;
    if (!equilibrium_residual(g, omega).in_equilibrium) return false;
    const Mat2 have = covariance(g, omega).matrix();
    const Mat2 want = required_covariance(shape);
    auto close = [tolerance](double x, double y) {
        return std::abs(x - y) <= tolerance * std::max(1.0, std::abs(y));
    };
    return close(have.a, want.a) && close(have.b, want.b) && close(have.d, want.d);
}

namespace {

struct Integrated {
    std::vector<Vec2> face_points;
    double closure_residual = 0.0;
    double scale = 0.0;
};

// Places dual vertices by walking a BFS tree of the dual from face 0, which
// starts at its centroid. Crossing dart d from right to left adds rows[d] and
// the lattice shift that relates the two base lifts, measured on `lattice`.
Integrated integrate_dual(const TorusGraph& primal, const std::vector<Vec2>& rows,
                          const TorusShape& lattice) {
    const FaceLifts lifts = face_lifts(primal);
    const std::size_t faces = primal.num_faces();
    Integrated out;
    out.face_points.assign(faces, Vec2{});
    std::vector<bool> placed(faces, false);
    std::vector<bool> tree(primal.num_edges(), false);
    auto step = [&](DartId d) {
        return rows[d] + lattice.translation(lifts.shift[d]);
    };
    if (faces == 0) return out;
    out.face_points[0] = lifts.centroid[0];
    placed[0] = true;
    std::queue<FaceId> queue;
    queue.push(0);
    while (!queue.empty()) {
        const FaceId f = queue.front();
        queue.pop();
        // Darts of f's boundary have f on their left; their reversals cross out of f.
        for (DartId d : primal.map().face_boundary(f)) {
            const DartId out_dart = reversal(d);
            const FaceId g = primal.map().left_face(out_dart);
            if (placed[g]) continue;
            placed[g] = true;
            tree[edge_of(d)] = true;
            out.face_points[g] = out.face_points[f] + step(out_dart);
            queue.push(g);
        }
    }
    for (const Vec2& r : rows) out.scale = std::max(out.scale, norm(r));
    out.scale += lattice.scale();
    for (EdgeId e = 0; e < primal.num_edges(); ++e) {
        const DartId d = reference_dart(e);
        const FaceId right = primal.map().right_face(d);
        const FaceId left = primal.map().left_face(d);
        const Vec2 gap = out.face_points[left] - out.face_points[right] - step(d);
        out.closure_residual = std::max(out.closure_residual, norm(gap));
    }
    return out;
}

std::vector<Vec2> dual_rows(const TorusGraph& g, std::span<const double> omega) {
    std::vector<Vec2> rows(g.num_darts());
    for (DartId d = 0; d < g.num_darts(); ++d) rows[d] = omega[edge_of(d)] * perp(g.displacement(d));
    return rows;
}

} // namespace

ReciprocalPair build_reciprocal(const TorusGraph& g, std::span<const double> omega,
                                const TorusShape& shape) {
    if (!is_reciprocal_on(g, omega, shape)) {
        std::ostringstream msg;
        const StressAnalysis s = omega.size() == g.num_edges() ? covariance(g, omega)
                                                               : StressAnalysis{};
        const Mat2 want = required_covariance(shape);
        msg << "stress is not reciprocal on this torus: covariance (" << s.alpha << ", "
            << s.gamma << "; " << s.gamma << ", " << s.beta << "), required (" << want.a
            << ", " << want.b << "; " << want.c << ", " << want.d << ")";
        fail(ErrorKind::NotReciprocalHere, msg.str());
    }
    ReciprocalPair pair;
    pair.primal = g.shape() == shape ? g : affine_transfer(g, shape);
    pair.stress.assign(omega.begin(), omega.end());

    const std::vector<Vec2> rows = dual_rows(pair.primal, omega);

    // Lambda * reference rows must equal -J for a dual on the same torus.
    Mat2 product{0.0, 0.0, 0.0, 0.0};
    for (EdgeId e = 0; e < pair.primal.num_edges(); ++e) {
        const Vec2 h = to_real(pair.primal.homology(reference_dart(e)));
        const Vec2 ref = row_times(rows[reference_dart(e)], shape.matrix().transpose().inverse());
        product = product + Mat2{h.x * ref.x, h.x * ref.y, h.y * ref.x, h.y * ref.y};
    }
    const Mat2 minus_j{0.0, 1.0, -1.0, 0.0};
    if (max_abs(product - minus_j) > 1e-9 * (1.0 + max_abs(product))) {
        std::ostringstream msg;
        msg << "dual rows have cohomology (" << product.a << ", " << product.b << "; "
            << product.c << ", " << product.d << ")";
        fail(ErrorKind::ClosureFailure, msg.str());
    }

    Integrated placed = integrate_dual(pair.primal, rows, shape);
    pair.closure_residual = placed.closure_residual;
    if (placed.closure_residual > 1e-9 * placed.scale) {
        std::ostringstream msg;
        msg << "dual does not close, residual " << placed.closure_residual;
        fail(ErrorKind::ClosureFailure, msg.str());
    }
    pair.face_points = std::move(placed.face_points);
    pair.dual = dual_from_face_points(pair.primal, pair.face_points, shape);

    if (orthogonality_defect(pair.primal, pair.dual) > 1e-9)
        fail(ErrorKind::ClosureFailure, "dual edges are not orthogonal to primal edges");
    const auto ratios = measured_stress(pair.primal, pair.dual);
    for (EdgeId e = 0; e < ratios.size(); ++e)
        if (std::abs(ratios[e] - omega[e]) > 1e-9 * omega[e])
            fail(ErrorKind::ClosureFailure,
                 "dual edge length ratio disagrees with the stress on " +
                     pair.primal.edge_name(e));
    return pair;
}

ReciprocalPair translate_dual(const ReciprocalPair& pair, Vec2 offset) {
    ReciprocalPair out = pair;
    for (Vec2& p : out.face_points) p += offset;
    out.dual = dual_from_face_points(out.primal, out.face_points, out.primal.shape());
    return out;
}

ForceDiagram force_diagram(const TorusGraph& g, std::span<const double> omega) {
    if (!is_positive(omega) || omega.size() != g.num_edges())
        fail(ErrorKind::InvalidArgument, "force diagram needs a positive stress per edge");
    const Mat2 c = covariance(g, omega).matrix();
    const Mat2 n = kJ * g.shape().matrix() * c * kJ.transpose();
    ForceDiagram out{TorusShape(n), {}, {}};
    const std::vector<Vec2> rows = dual_rows(g, omega);
    Integrated placed = integrate_dual(g, rows, out.shape);
    if (placed.closure_residual > 1e-9 * placed.scale) {
        std::ostringstream msg;
        msg << "force diagram does not close, residual " << placed.closure_residual;
        fail(ErrorKind::ClosureFailure, msg.str());
    }
    out.face_points = std::move(placed.face_points);
    out.dual = dual_from_face_points(g, out.face_points, out.shape);
    return out;
}

std::vector<double> measured_stress(const TorusGraph& primal, const TorusGraph& dual) {
    std::vector<double> out(primal.num_edges());
    for (EdgeId e = 0; e < primal.num_edges(); ++e)
        out[e] = norm(dual.displacement(reference_dart(e))) /
                 norm(primal.displacement(reference_dart(e)));
    return out;
}

double orthogonality_defect(const TorusGraph& primal, const TorusGraph& dual) {
    double worst = 0.0;
    for (EdgeId e = 0; e < primal.num_edges(); ++e) {
        const Vec2 a = primal.displacement(reference_dart(e));
        const Vec2 b = dual.displacement(reference_dart(e));
        const double denom = norm(a) * norm(b);
        worst = std::max(worst, denom > 0.0 ? std::abs(dot(a, b)) / denom : 1.0);
    }
    return worst;
}

} // namespace torusmc
