#include "torusmc/pipeline.hpp"

namespace torusmc {

SteinitzResult toroidal_steinitz(const TorusGraph& g, std::span<const double> omega,
                                 VertexId pinned) {
    SteinitzResult out;
    out.equilibrium = tutte_embed(g, omega, pinned);
    out.normalized = normalize_stress(out.equilibrium, omega);
    out.analysis = covariance(out.equilibrium, out.normalized);
    out.torus = reciprocal_torus(out.analysis);
    const ReciprocalPair pair = build_reciprocal(out.equilibrium, out.normalized, out.torus);
    out.coherent = coherent_lifting(pair.primal, pair);
    return out;
}

} // namespace torusmc
