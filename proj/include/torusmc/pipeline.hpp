#pragma once

#include "torusmc/coherence.hpp"
#include "torusmc/equilibrium.hpp"
#include "torusmc/reciprocal.hpp"

namespace torusmc {

// Equilibrium embedding, normalized stress, the torus on which that stress is
// reciprocal, the reciprocal pair there and its Delaunay weights.
struct SteinitzResult {
    TorusGraph equilibrium;
    Stress normalized;
    StressAnalysis analysis;  // of the normalized stress
    TorusShape torus;
    CoherentLifting coherent; // coherent.pair.primal is the image on `torus`
};

SteinitzResult toroidal_steinitz(const TorusGraph& g, std::span<const double> omega,
                                 VertexId pinned);

} // namespace torusmc
