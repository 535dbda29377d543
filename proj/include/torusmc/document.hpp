#pragma once

#include "torusmc/coherence.hpp"
#include "torusmc/equilibrium.hpp"
#include "torusmc/oracle.hpp"
#include "torusmc/torus_graph.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace torusmc {

// Line-oriented graph document:
//   torusgraph 1
//   torus a b c d
//   vertex <name> <x> <y>
//   edge <name> <tail> <head> <hx> <hy>
//   rotation <vertex> <edge>+|- ...
//   stress <edge> <value>        (optional, all edges or none)
//   weight <vertex> <value>      (optional, all vertices or none)
// '#' starts a comment.
struct GraphDocument {
    TorusGraph graph;
    std::optional<Stress> stress;
    std::optional<VertexWeights> weights;
};

// Throws ParseError ("line:col: message") or ValidationError.
GraphDocument parse_document(std::string_view text);

// Canonical form: index order, 17 significant digits, rotations starting at
// the lowest dart.
std::string serialize_document(const TorusGraph& g, const Stress* stress = nullptr,
                               const VertexWeights* weights = nullptr);

// Sites file for the oracle:
//   torus a b c d
//   site <name> <x> <y> <weight>
struct SitesDocument {
    TorusShape shape;
    std::vector<WeightedSite> sites;
};

SitesDocument parse_sites(std::string_view text);
std::string serialize_sites(const SitesDocument& doc);

// Whole-file helpers; throw IoError.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view text);

// 17 significant digits; parses back to exactly `value`.
std::string format_number(double value);

} // namespace torusmc
