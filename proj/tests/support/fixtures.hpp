#pragma once

#include "torusmc/torus_graph.hpp"

#include <random>
#include <vector>

namespace torusmc::fixtures {

// Seven points (i/7, 3i/7 mod 1) on the square torus, triangulated as K7.
// Edge 3i+c joins vertex i to i+1, i+3, i+2 for c = 0, 1, 2 (slopes 3, 2/3, -1/2).
TorusGraph k7();

// Class of edge e of k7(): 0 slope 3, 1 slope 2/3, 2 slope -1/2.
inline int k7_class(EdgeId e) { return static_cast<int>(e % 3); }

// One vertex, three loops with displacements (1,0), (1,1), (2,1).
TorusGraph g1();

// k x k cover of g1 on the square torus.
TorusGraph gk(int k);

// Per-class stress on k7().
std::vector<double> k7_class_stress(double slope3, double slope23, double slope_half);

struct Site {
    Vec2 position;
    double weight = 0.0;
};

// Sites uniformly spread on the torus, well separated, weights in [0, max_weight].
std::vector<Site> random_sites(const TorusShape& shape, int count, double max_weight,
                               std::mt19937_64& rng);

// Random shape with det > 0 and moderate aspect ratio.
TorusShape random_shape(std::mt19937_64& rng);

// Gauss-Seidel relaxation of the equilibrium equations with `pinned` fixed,
// started from the current positions. Unreduced positions, same homology.
std::vector<Vec2> relax_equilibrium(const TorusGraph& g, std::span<const double> omega,
                                    VertexId pinned);

} // namespace torusmc::fixtures
