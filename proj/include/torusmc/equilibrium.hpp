#pragma once

#include "torusmc/torus_graph.hpp"

#include <span>
#include <vector>

namespace torusmc {

// One coefficient per edge.
using Stress = std::vector<double>;

bool is_positive(std::span<const double> omega);
Stress uniform_stress(const TorusGraph& g, double value);

struct EquilibriumReport {
    std::vector<Vec2> residual;  // per vertex: sum of omega * displacement over outgoing darts
    double max_residual = 0.0;
    double scale = 0.0;          // largest |omega * displacement| term
    bool in_equilibrium = false; // max_residual <= tolerance * scale
};

EquilibriumReport equilibrium_residual(const TorusGraph& g, std::span<const double> omega,
                                       double tolerance = 1e-9);

// Equilibrium embedding homotopic to g, with `pinned` kept in place.
// Throws NotEssentiallyValid, InvalidArgument (non-positive stress),
// SingularSystem, EmbeddingFailed.
TorusGraph tutte_embed(const TorusGraph& g, std::span<const double> omega, VertexId pinned);

// Image of g under target * M^-1; homology vectors are unchanged.
TorusGraph affine_transfer(const TorusGraph& g, const TorusShape& target);

// Straight segments of the universal cover near the fundamental domain.
struct CoverSegment {
    Vec2 a, b;
    VertexId tail = 0, head = 0;
    IVec2 tail_copy, head_copy;  // lattice translation of each endpoint's copy
    EdgeId edge = 0;
};

struct SegmentSet {
    std::vector<CoverSegment> probes;  // segments whose tail lies in the central copy
    std::vector<CoverSegment> all;     // every segment with tail in the window
    double tolerance = 0.0;            // absolute, for orientation tests
};

SegmentSet cover_segments(const TorusGraph& g);

// Number of (probe, segment) pairs that meet other than at a shared endpoint.
// Serial reference and OpenMP version give identical counts.
std::size_t count_crossings_serial(const SegmentSet& set);
std::size_t count_crossings_parallel(const SegmentSet& set);

struct EmbeddingReport {
    std::size_t crossings = 0;
    bool coincident_vertices = false;
    bool faces_positive = false;
    bool faces_simple = false;
    double area_error = 0.0;  // |sum of face areas - det M|
    bool valid = false;
};

EmbeddingReport embedding_report(const TorusGraph& g);
bool embedding_check(const TorusGraph& g);

} // namespace torusmc
