#pragma once

#include "torusmc/torus_graph.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace torusmc {

// Real value per edge, read on reference darts; phi(e-) = -phi(e+).
using Circulation = std::vector<double>;

// Sum of homology vectors along a closed walk. Throws NotClosed.
IVec2 cycle_homology(const TorusGraph& g, std::span<const DartId> cycle);

// Signed outgoing sum at every vertex.
std::vector<double> vertex_imbalance(const TorusGraph& g, std::span<const double> phi);

// Lambda * phi. Throws NotACirculation when some vertex is out of balance by
// more than tolerance * (1 + max |phi|).
Vec2 circulation_class(const TorusGraph& g, std::span<const double> phi,
                       double tolerance = 1e-9);

// max |Delta phi - Lambda phi| with Delta the reference displacement matrix.
double verify_harmonic(const TorusGraph& g, std::span<const double> phi);

struct BoundaryCocirculations {
    std::vector<double> first;   // row 1 of Lambda
    std::vector<double> second;  // row 2 of Lambda
    Vec2 first_class;            // expected (0, 1)
    Vec2 second_class;           // expected (-1, 0)
};

// Rows of Lambda with their cohomology classes, measured on the natural dual.
// Throws CocirculationCheckFailed if either row is unbalanced at a dual vertex
// or has an unexpected class.
BoundaryCocirculations boundary_cocirculations(const TorusGraph& g);

// Indicator circulation of a closed walk (multiplicities added).
Circulation walk_indicator(const TorusGraph& g, std::span<const DartId> cycle);

// One closed walk per non-tree edge of a BFS spanning tree rooted at vertex 0.
std::vector<std::vector<DartId>> fundamental_cycles(const TorusGraph& g);

// Random combination of fundamental cycles with coefficients in [-1, 1].
Circulation random_circulation(const TorusGraph& g, std::mt19937_64& rng);

} // namespace torusmc
