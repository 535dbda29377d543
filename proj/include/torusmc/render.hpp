#pragma once

#include "torusmc/coherence.hpp"
#include "torusmc/torus_graph.hpp"

#include <string>

namespace torusmc {

struct RenderOptions {
    std::int64_t patch = 0;  // 0 draws the fundamental domain, k > 0 a k x k cover patch
    bool show_dual = false;
    bool show_weights = false;
    double scale = 400.0;    // pixels per unit length
};

// SVG 1.1 drawing. Element classes: domain, edge, vertex, dual-edge,
// dual-vertex, weight. Output depends only on the arguments.
std::string render_svg(const TorusGraph& g, const RenderOptions& options,
                       const TorusGraph* dual = nullptr, const VertexWeights* weights = nullptr);

} // namespace torusmc
