#pragma once

#include "torusmc/torus_graph.hpp"

#include <array>
#include <string>
#include <vector>

namespace torusmc {

struct WeightedSite {
    std::string name;
    Vec2 position;
    double weight = 0.0;
};

struct OracleOptions {
    double tolerance = 1e-10;  // relative to the squared torus scale
    bool parallel = true;
};

// Weighted Delaunay graph of the sites by brute force over candidate triples
// on a 3x3 cover patch, escalating to 5x5. Throws NonGeneric.
TorusGraph oracle_weighted_delaunay(const TorusShape& shape, const std::vector<WeightedSite>& sites,
                                    const OracleOptions& options = {});

// Lifted copies of the sites over translations in [-reach, reach]^2; the
// central copy of every site comes first.
struct LiftedSite {
    std::size_t site = 0;
    IVec2 copy;
    Vec2 position;
    double weight = 0.0;
};

struct TriplePatch {
    std::vector<LiftedSite> points;
    std::size_t central = 0;  // points[0, central) are the central copies
    std::int64_t reach = 1;
    TorusShape shape;
    double tolerance = 0.0;   // absolute, on power excess
};

TriplePatch make_triple_patch(const TorusShape& shape, const std::vector<WeightedSite>& sites,
                              std::int64_t reach, double relative_tolerance);

struct TripleScan {
    std::vector<std::array<std::size_t, 3>> triangles;  // counterclockwise patch indices
    bool cocircular = false;     // some site sits on a candidate's power circle
    bool needs_larger = false;   // some accepted power circle leaves the patch
};

// Serial reference and OpenMP version return the same sorted triangle list.
TripleScan scan_triples_serial(const TriplePatch& patch);
TripleScan scan_triples_parallel(const TriplePatch& patch);

} // namespace torusmc
