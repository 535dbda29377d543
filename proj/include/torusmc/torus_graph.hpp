#pragma once

#include "torusmc/geometry.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace torusmc {

using VertexId = std::size_t;
using EdgeId = std::size_t;
using DartId = std::size_t;
using FaceId = std::size_t;

// Dart 2e is the reference dart e+ of edge e, dart 2e+1 its reversal e-.
constexpr DartId reversal(DartId d) { return d ^ 1U; }
constexpr EdgeId edge_of(DartId d) { return d >> 1U; }
constexpr bool is_reference(DartId d) { return (d & 1U) == 0; }
constexpr DartId reference_dart(EdgeId e) { return 2 * e; }

// Darts, rotation system and faces. The rotation system lists darts
// counterclockwise around their tail; faces are traced with
// face_next(d) = rotation_prev(reversal(d)), so every face keeps its darts
// on the left and is traversed counterclockwise.
class CombinatorialMap {
public:
    CombinatorialMap() = default;

    // tails[d] is the tail of dart d, rotation_next[d] the next dart
    // counterclockwise around that tail. Throws MalformedMap.
    static CombinatorialMap build(std::size_t num_vertices, std::vector<VertexId> tails,
                                  std::vector<DartId> rotation_next);

    // Same, for an arbitrary dart numbering with an explicit reversal
    // permutation. Darts are renumbered so that each pair becomes (2e, 2e+1),
    // the lower original id becoming the reference dart.
    static CombinatorialMap from_permutations(std::size_t num_vertices,
                                              std::span<const VertexId> tails,
                                              std::span<const DartId> reversal_perm,
                                              std::span<const DartId> rotation_next);

    std::size_t num_vertices() const noexcept { return first_dart_.size(); }
    std::size_t num_darts() const noexcept { return tail_.size(); }
    std::size_t num_edges() const noexcept { return tail_.size() / 2; }
    std::size_t num_faces() const noexcept { return faces_.size(); }

    VertexId tail(DartId d) const { return tail_[d]; }
    VertexId head(DartId d) const { return tail_[reversal(d)]; }
    DartId rotation_next(DartId d) const { return rot_next_[d]; }
    DartId rotation_prev(DartId d) const { return rot_prev_[d]; }
    DartId face_next(DartId d) const { return rot_prev_[reversal(d)]; }
    FaceId left_face(DartId d) const { return face_of_[d]; }
    FaceId right_face(DartId d) const { return face_of_[reversal(d)]; }

    DartId first_dart(VertexId v) const { return first_dart_[v]; }
    std::vector<DartId> darts_around(VertexId v) const;
    std::size_t degree(VertexId v) const;

    const std::vector<DartId>& face_boundary(FaceId f) const { return faces_[f]; }

    long euler_characteristic() const;
    bool connected() const;

    friend bool operator==(const CombinatorialMap& a, const CombinatorialMap& b) {
        return a.tail_ == b.tail_ && a.rot_next_ == b.rot_next_ &&
               a.first_dart_.size() == b.first_dart_.size();
    }

private:
    std::vector<VertexId> tail_;
    std::vector<DartId> rot_next_;
    std::vector<DartId> rot_prev_;
    std::vector<FaceId> face_of_;
    std::vector<DartId> first_dart_;
    std::vector<std::vector<DartId>> faces_;
};

// Dual map: vertex f of the result is face f of the input and dart d of the
// result is d*, running from right_face(d) to left_face(d).
CombinatorialMap dual_map(const CombinatorialMap& map);

struct VertexRecord {
    std::string name;
    Vec2 position;
};

struct EdgeRecord {
    std::string name;
    VertexId tail = 0;
    VertexId head = 0;
    IVec2 homology;  // of the reference dart
};

// Input of TorusGraph::build: the coordinate representation plus rotations.
struct GraphSpec {
    TorusShape shape;
    std::vector<VertexRecord> vertices;
    std::vector<EdgeRecord> edges;
    std::vector<std::vector<DartId>> rotations;  // per vertex, counterclockwise
};

struct GeometricEdge {
    std::string name;
    VertexId tail = 0;
    VertexId head = 0;
    Vec2 displacement;
};

// Geodesic graph on a flat torus. Immutable once built.
class TorusGraph {
public:
    TorusGraph() = default;

    // Validates the map, reduces coordinates into the fundamental domain and
    // checks Euler's relation, connectivity, that homology vectors generate
    // Z^2 and that every face boundary is contractible.
    static TorusGraph build(GraphSpec spec);

    // Rotation system taken from the angular order of the displacements;
    // homology vectors follow from the reduced coordinates.
    static TorusGraph from_displacements(const TorusShape& shape,
                                         std::vector<VertexRecord> vertices,
                                         std::vector<GeometricEdge> edges);

    const TorusShape& shape() const noexcept { return shape_; }
    const CombinatorialMap& map() const noexcept { return map_; }

    std::size_t num_vertices() const noexcept { return vertices_.size(); }
    std::size_t num_edges() const noexcept { return edges_.size(); }
    std::size_t num_darts() const noexcept { return 2 * edges_.size(); }
    std::size_t num_faces() const noexcept { return map_.num_faces(); }

    const std::string& vertex_name(VertexId v) const { return vertices_[v].name; }
    const std::string& edge_name(EdgeId e) const { return edges_[e].name; }
    std::optional<VertexId> find_vertex(std::string_view name) const;
    std::optional<EdgeId> find_edge(std::string_view name) const;

    Vec2 position(VertexId v) const { return vertices_[v].position; }
    VertexId tail(DartId d) const { return map_.tail(d); }
    VertexId head(DartId d) const { return map_.head(d); }
    IVec2 homology(DartId d) const;
    Vec2 displacement(DartId d) const;

    // 2 x E, column e is the displacement of e+.
    std::vector<Vec2> displacement_matrix() const;
    // Same drawing pulled back to the square reference torus (M^-1 Delta).
    std::vector<Vec2> reference_displacement_matrix() const;
    // 2 x E, column e is the homology vector of e+.
    std::vector<IVec2> homology_matrix() const;

    // Same map moved to new (unreduced) vertex positions; homology vectors
    // are rewritten so every cycle keeps its class.
    TorusGraph relocated(std::span<const Vec2> positions) const;

    GraphSpec spec() const;

    friend bool operator==(const TorusGraph& a, const TorusGraph& b);

private:
    TorusShape shape_;
    std::vector<VertexRecord> vertices_;
    std::vector<EdgeRecord> edges_;
    CombinatorialMap map_;
};

// Canonical lift of every face: corners are placed by walking the boundary
// from the reduced position of its first dart's tail.
struct FaceLifts {
    std::vector<Vec2> corner;    // per dart d: tail(d) in the base lift of left_face(d)
    std::vector<IVec2> shift;    // per dart d: base(left) = neighbour of base(right) + M shift
    std::vector<Vec2> centroid;  // per face, vertex average of its base-lift corners
};

FaceLifts face_lifts(const TorusGraph& g);

// Signed area of each face's lifted boundary polygon.
std::vector<double> face_areas(const TorusGraph& g);

struct DualEmbedding {
    CombinatorialMap map;
    // Dual face i surrounds this primal vertex.
    std::vector<VertexId> primal_vertex_of_face;
};

DualEmbedding dual(const TorusGraph& g);

// Geodesic dual drawn on `dual_shape` with dual vertex f placed at
// face_points[f] (given in the frame of the base lift of face f). The dual is
// homotopic to the natural dual carried over to `dual_shape` by the linear map
// that sends the primal lattice onto the dual one.
TorusGraph dual_from_face_points(const TorusGraph& primal, std::span<const Vec2> face_points,
                                 const TorusShape& dual_shape);

// Natural dual, dual vertices at face centroids.
TorusGraph natural_dual(const TorusGraph& g);

struct CoverRange {
    std::int64_t x0 = 0, x1 = 0, y0 = 0, y1 = 0;  // inclusive

    // k x k translations, centred on the origin for odd k.
    static CoverRange square(std::int64_t k);
    bool contains(IVec2 t) const { return t.x >= x0 && t.x <= x1 && t.y >= y0 && t.y <= y1; }
    std::size_t count() const {
        return static_cast<std::size_t>((x1 - x0 + 1) * (y1 - y0 + 1));
    }
};

struct PatchVertex {
    VertexId source = 0;
    IVec2 translation;
    Vec2 position;
};

struct PatchEdge {
    EdgeId edge = 0;
    std::size_t tail = 0;  // indices into PlanePatch::vertices
    std::size_t head = 0;
};

struct PlanePatch {
    std::vector<PatchVertex> vertices;
    std::vector<PatchEdge> edges;

    std::optional<std::size_t> find(VertexId v, IVec2 t) const;
};

PlanePatch universal_cover_patch(const TorusGraph& g, const CoverRange& range);

struct EssentialReport {
    bool essentially_simple = false;
    bool essentially_3_connected = false;
    // Some homology entry exceeds 1 in absolute value, so the 3x3 window is
    // not a proven certificate for 3-connectivity.
    bool window_limited = false;
};

EssentialReport check_essential(const TorusGraph& g);

} // namespace torusmc
