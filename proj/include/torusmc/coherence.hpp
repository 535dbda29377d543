#pragma once

#include "torusmc/reciprocal.hpp"
#include "torusmc/torus_graph.hpp"

#include <span>
#include <vector>

namespace torusmc {

// Delaunay weight per vertex; power distance to p is |x - p|^2 / 2 - weight.
using VertexWeights = std::vector<double>;

enum class EdgeClass { Delaunay, Flat, Violated };

const char* class_name(EdgeClass c);

// Three consecutive darts around tail(middle) with
// left_face(before) == right_face(middle) and left_face(middle) == right_face(after).
struct DartTriple {
    DartId before = 0;
    DartId middle = 0;
    DartId after = 0;
};

// Throws DegenerateStar when the tail has fewer than three darts.
DartTriple delaunay_triple(const TorusGraph& g, DartId middle);

struct Determinant {
    double value = 0.0;
    double scale = 0.0;  // largest row norm, cubed
};

// 3x3 test on displacement rows [dx, dy, |d|^2 / 2 + pi_tail - pi_head].
Determinant delaunay_det3(Vec2 to_q, double pi_q, Vec2 to_r, double pi_r, Vec2 to_s,
                          double pi_s, double pi_p);

// 4x4 test on rows [1, x, y, |x|^2 / 2 - pi] of the lifted points p, q, r, s.
Determinant delaunay_det4(Vec2 p, double pi_p, Vec2 q, double pi_q, Vec2 r, double pi_r,
                          Vec2 s, double pi_s);

EdgeClass classify(const Determinant& det, double tolerance = 1e-9);

// Local test of the edge of `dart`, evaluated around its tail.
Determinant local_delaunay_det(const TorusGraph& g, std::span<const double> weights,
                               DartId dart);
// Same, on the reference dart of edge e.
Determinant local_delaunay_det(const TorusGraph& g, std::span<const double> weights,
                               EdgeId e, bool from_head);

struct DiagonalCheck {
    FaceId face = 0;
    std::size_t from = 0, to = 0;  // corner indices along the face boundary
    Determinant det;
    EdgeClass verdict = EdgeClass::Flat;
};

struct DelaunayVerdict {
    std::vector<Determinant> edge_det;
    std::vector<EdgeClass> edge_class;
    std::vector<DiagonalCheck> diagonals;
    bool weighted_delaunay = false;
};

DelaunayVerdict is_weighted_delaunay(const TorusGraph& g, std::span<const double> weights,
                                     double tolerance = 1e-9);

// Power center of each face (from its first three lifted corners) as a
// reciprocal pair; the stress is the signed ratio |e*| / |e|.
ReciprocalPair power_dual(const TorusGraph& g, std::span<const double> weights);

struct LiftingResult {
    VertexId origin = 0;
    DartId root_dart = 0;          // first dart of the origin; its left face is the root
    FaceId root_face = 0;
    Vec2 origin_offset;            // plane frame: x' = x - origin_offset puts o at (0, 0)
    std::vector<double> plane_constant;  // C(f) of each face's base lift, plane frame
    std::vector<Vec2> gradient;          // f* of each face's base lift, plane frame
    double root_u_constant = 0.0;  // C(f0 + u)
    double root_v_constant = 0.0;  // C(f0 + v)
    VertexWeights weights;
    double path_residual = 0.0;        // largest disagreement between dual paths
    double periodicity_residual = 0.0; // largest |pi(copy) - pi(vertex)| on a 5x5 window
};

// Polyhedral lifting of the cover with the pair's dual positions as gradients.
// Throws PathInconsistent.
LiftingResult lift(const TorusGraph& g, const ReciprocalPair& pair, VertexId origin = 0);

// Position (pair frame) of the root face's dual vertex that makes the weights
// of o, o + u and o + v vanish.
Vec2 fix_translation(const ReciprocalPair& pair, const LiftingResult& lifting);

struct CoherentLifting {
    ReciprocalPair pair;  // dual translated into the weighted Voronoi position
    LiftingResult lifting;
    Vec2 applied_offset;
};

// lift + fix_translation + relift; checks periodicity and Delaunayhood.
// Throws PathInconsistent.
CoherentLifting coherent_lifting(const TorusGraph& g, const ReciprocalPair& pair,
                                 VertexId origin = 0);

VertexWeights weights_from_reciprocal(const TorusGraph& g, const ReciprocalPair& pair);

} // namespace torusmc
