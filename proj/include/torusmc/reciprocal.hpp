#pragma once

#include "torusmc/equilibrium.hpp"
#include "torusmc/torus_graph.hpp"

#include <span>
#include <vector>

namespace torusmc {

// Second moments of omega-weighted reference displacements.
struct StressAnalysis {
    double alpha = 0.0;  // sum omega dx^2
    double beta = 0.0;   // sum omega dy^2
    double gamma = 0.0;  // sum omega dx dy
    double discriminant = 0.0;

    Mat2 matrix() const { return {alpha, gamma, gamma, beta}; }
};

StressAnalysis covariance(const TorusGraph& g, std::span<const double> omega);

// omega / sqrt(discriminant).
Stress normalize_stress(const TorusGraph& g, std::span<const double> omega);

// ((beta, -gamma), (0, 1)). Throws NotNormalized unless the discriminant is 1.
TorusShape reciprocal_torus(const StressAnalysis& analysis, double tolerance = 1e-9);

// Covariance a reciprocal stress must have on `shape`:
// ((b^2 + d^2, -(ab + cd)), (-(ab + cd), a^2 + c^2)) / det.
Mat2 required_covariance(const TorusShape& shape);

// Positive equilibrium stress whose covariance matches required_covariance(shape)
// to a relative tolerance.
bool is_reciprocal_on(const TorusGraph& g, std::span<const double> omega,
                      const TorusShape& shape, double tolerance = 1e-9);

struct ReciprocalPair {
    TorusGraph primal;               // image of the input on the requested shape
    TorusGraph dual;                 // same shape; dual dart d* has the id of d
    Stress stress;
    std::vector<Vec2> face_points;   // dual vertex of face f in the frame of its base lift
    double closure_residual = 0.0;
};

// Throws NotReciprocalHere, ClosureFailure.
ReciprocalPair build_reciprocal(const TorusGraph& g, std::span<const double> omega,
                                const TorusShape& shape);

// Same pair with every dual position shifted by `offset` (a row vector).
ReciprocalPair translate_dual(const ReciprocalPair& pair, Vec2 offset);

struct ForceDiagram {
    TorusShape shape;
    TorusGraph dual;
    std::vector<Vec2> face_points;
};

// Periodic Maxwell dual of the cover; lives on J M C J^T with C the covariance.
ForceDiagram force_diagram(const TorusGraph& g, std::span<const double> omega);

// |e*| / |e| per edge.
std::vector<double> measured_stress(const TorusGraph& primal, const TorusGraph& dual);

// Largest |<e, e*>| / (|e| |e*|).
double orthogonality_defect(const TorusGraph& primal, const TorusGraph& dual);

} // namespace torusmc
