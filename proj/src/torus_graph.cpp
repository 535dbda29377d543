#include "torusmc/torus_graph.hpp"

#include "torusmc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <tuple>

namespace torusmc {

namespace {

std::string dart_label(DartId d) {
    std::ostringstream out;
    out << "dart " << d << " (edge " << edge_of(d) << (is_reference(d) ? "+" : "-") << ")";
    return out.str();
}

} // namespace

CombinatorialMap CombinatorialMap::build(std::size_t num_vertices, std::vector<VertexId> tails,
                                         std::vector<DartId> rotation_next) {
    const std::size_t n = tails.size();
    if (n % 2 != 0) fail(ErrorKind::MalformedMap, "odd number of darts");
    if (rotation_next.size() != n)
        fail(ErrorKind::MalformedMap, "rotation permutation has the wrong length");

    CombinatorialMap m;
    m.tail_ = std::move(tails);
    m.rot_next_ = std::move(rotation_next);
    m.rot_prev_.assign(n, n);
    for (DartId d = 0; d < n; ++d) {
        if (m.tail_[d] >= num_vertices)
            fail(ErrorKind::MalformedMap, dart_label(d) + " has an out-of-range tail");
        const DartId next = m.rot_next_[d];
        if (next >= n || m.rot_prev_[next] != n)
            fail(ErrorKind::MalformedMap, "rotation is not a permutation at " + dart_label(d));
        m.rot_prev_[next] = d;
    }
    for (DartId d = 0; d < n; ++d) {
        if (m.tail_[m.rot_next_[d]] != m.tail_[d])
            fail(ErrorKind::MalformedMap,
                 "rotation leaves the tail vertex of " + dart_label(d));
    }

    m.first_dart_.assign(num_vertices, n);
    std::vector<bool> seen(n, false);
    for (DartId d = 0; d < n; ++d) {
        if (seen[d]) continue;
        const VertexId v = m.tail_[d];
        if (m.first_dart_[v] != n) {
            std::ostringstream msg;
            msg << "vertex " << v << " has more than one rotation cycle";
            fail(ErrorKind::MalformedMap, msg.str());
        }
        m.first_dart_[v] = d;
        for (DartId x = d; !seen[x]; x = m.rot_next_[x]) seen[x] = true;
    }
    for (VertexId v = 0; v < num_vertices; ++v) {
        if (m.first_dart_[v] == n) {
            std::ostringstream msg;
            msg << "vertex " << v << " has no incident darts";
            fail(ErrorKind::MalformedMap, msg.str());
        }
    }

    m.face_of_.assign(n, n);
    for (DartId d = 0; d < n; ++d) {
        if (m.face_of_[d] != n) continue;
        const FaceId f = m.faces_.size();
        std::vector<DartId> boundary;
        for (DartId x = d; m.face_of_[x] == n; x = m.face_next(x)) {
            m.face_of_[x] = f;
            boundary.push_back(x);
        }
        m.faces_.push_back(std::move(boundary));
    }
    return m;
}

CombinatorialMap CombinatorialMap::from_permutations(std::size_t num_vertices,
                                                     std::span<const VertexId> tails,
                                                     std::span<const DartId> reversal_perm,
                                                     std::span<const DartId> rotation_next) {
    const std::size_t n = tails.size();
    if (reversal_perm.size() != n || rotation_next.size() != n)
        fail(ErrorKind::MalformedMap, "permutation lengths disagree");
    for (DartId d = 0; d < n; ++d) {
        const DartId r = reversal_perm[d];
        if (r >= n || reversal_perm[r] != d)
            fail(ErrorKind::MalformedMap, "reversal is not an involution at dart " +
                                              std::to_string(d));
        if (r == d)
            fail(ErrorKind::MalformedMap, "reversal fixes dart " + std::to_string(d));
        if (rotation_next[d] >= n)
            fail(ErrorKind::MalformedMap, "rotation out of range at dart " + std::to_string(d));
    }
    std::vector<DartId> renumber(n, n);
    std::size_t edges = 0;
    for (DartId d = 0; d < n; ++d) {
        if (renumber[d] != n) continue;
        renumber[d] = 2 * edges;
        renumber[reversal_perm[d]] = 2 * edges + 1;
        ++edges;
    }
    std::vector<VertexId> new_tails(n);
    std::vector<DartId> new_rotation(n);
    for (DartId d = 0; d < n; ++d) {
        new_tails[renumber[d]] = tails[d];
        new_rotation[renumber[d]] = renumber[rotation_next[d]];
    }
    return build(num_vertices, std::move(new_tails), std::move(new_rotation));
}

std::vector<DartId> CombinatorialMap::darts_around(VertexId v) const {
    std::vector<DartId> out;
    const DartId start = first_dart_[v];
    DartId d = start;
    do {
        out.push_back(d);
        d = rot_next_[d];
    } while (d != start);
    return out;
}

std::size_t CombinatorialMap::degree(VertexId v) const { return darts_around(v).size(); }

long CombinatorialMap::euler_characteristic() const {
    return static_cast<long>(num_vertices()) - static_cast<long>(num_edges()) +
           static_cast<long>(num_faces());
}

bool CombinatorialMap::connected() const {
    if (num_vertices() == 0) return true;
    std::vector<bool> reached(num_vertices(), false);
    std::vector<VertexId> stack{0};
    reached[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
        const VertexId v = stack.back();
        stack.pop_back();
        for (DartId d : darts_around(v)) {
            const VertexId w = head(d);
            if (!reached[w]) {
                reached[w] = true;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == num_vertices();
}

CombinatorialMap dual_map(const CombinatorialMap& map) {
    const std::size_t n = map.num_darts();
    std::vector<VertexId> tails(n);
    std::vector<DartId> rotation(n);
    for (DartId d = 0; d < n; ++d) {
        tails[d] = map.right_face(d);
        rotation[d] = reversal(map.face_next(reversal(d)));
    }
    return CombinatorialMap::build(map.num_faces(), std::move(tails), std::move(rotation));
}

// --- TorusGraph -----------------------------------------------------------

namespace {

// gcd of all 2x2 minors; equals 1 iff the vectors generate Z^2.
std::int64_t lattice_index(const std::vector<IVec2>& classes) {
    std::int64_t g = 0;
    for (std::size_t i = 0; i < classes.size() && g != 1; ++i)
        for (std::size_t j = i + 1; j < classes.size() && g != 1; ++j) {
            const std::int64_t minor =
                classes[i].x * classes[j].y - classes[i].y * classes[j].x;
            g = std::gcd(g, minor < 0 ? -minor : minor);
        }
    return g;
}

} // namespace

TorusGraph TorusGraph::build(GraphSpec spec) {
    const std::size_t num_v = spec.vertices.size();
    const std::size_t num_e = spec.edges.size();

    std::vector<VertexId> tails(2 * num_e);
    for (EdgeId e = 0; e < num_e; ++e) {
        const auto& rec = spec.edges[e];
        if (rec.tail >= num_v || rec.head >= num_v)
            fail(ErrorKind::MalformedMap, "edge " + rec.name + " references a missing vertex");
        tails[2 * e] = rec.tail;
        tails[2 * e + 1] = rec.head;
    }
    if (spec.rotations.size() != num_v)
        fail(ErrorKind::MalformedMap, "expected one rotation per vertex");

    std::vector<DartId> rotation(2 * num_e, 2 * num_e);
    for (VertexId v = 0; v < num_v; ++v) {
        const auto& cycle = spec.rotations[v];
        if (cycle.empty())
            fail(ErrorKind::MalformedMap, "vertex " + spec.vertices[v].name + " has no darts");
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            const DartId d = cycle[i];
            if (d >= 2 * num_e)
                fail(ErrorKind::MalformedMap, "rotation of " + spec.vertices[v].name +
                                                  " names a missing dart");
            if (tails[d] != v)
                fail(ErrorKind::MalformedMap, "rotation of " + spec.vertices[v].name +
                                                  " lists a dart with a different tail");
            if (rotation[d] != 2 * num_e)
                fail(ErrorKind::MalformedMap, "dart listed twice in rotations");
            rotation[d] = cycle[(i + 1) % cycle.size()];
        }
    }
    for (DartId d = 0; d < 2 * num_e; ++d)
        if (rotation[d] == 2 * num_e)
            fail(ErrorKind::MalformedMap, dart_label(d) + " is missing from the rotations");

    TorusGraph g;
    g.shape_ = spec.shape;
    g.map_ = CombinatorialMap::build(num_v, std::move(tails), std::move(rotation));

    // Canonical coordinates: shift into the fundamental domain and fold the
    // shift into the homology vectors.
    std::vector<IVec2> shift(num_v);
    for (VertexId v = 0; v < num_v; ++v) {
        const Reduced r = reduce_to_fundamental(spec.vertices[v].position, g.shape_);
        spec.vertices[v].position = r.point;
        shift[v] = r.shift;
    }
    for (auto& rec : spec.edges) rec.homology += shift[rec.head] - shift[rec.tail];
    g.vertices_ = std::move(spec.vertices);
    g.edges_ = std::move(spec.edges);

    if (!g.map_.connected()) fail(ErrorKind::NotCellular, "graph is disconnected");
    if (g.map_.euler_characteristic() != 0) {
        std::ostringstream msg;
        msg << "V - E + F = " << g.map_.euler_characteristic() << ", expected 0 on the torus";
        fail(ErrorKind::NotCellular, msg.str());
    }

    for (FaceId f = 0; f < g.num_faces(); ++f) {
        IVec2 sum;
        for (DartId d : g.map_.face_boundary(f)) sum += g.homology(d);
        if (sum != IVec2{}) {
            std::ostringstream msg;
            msg << "face " << f << " has boundary homology (" << sum.x << ", " << sum.y << ")";
            fail(ErrorKind::BadFaceHomology, msg.str());
        }
    }

    // Classes of the fundamental cycles of a BFS tree must generate Z^2.
    std::vector<IVec2> potential(num_v);
    std::vector<DartId> parent(num_v, 2 * num_e);
    std::vector<bool> reached(num_v, false);
    std::queue<VertexId> queue;
    queue.push(0);
    reached[0] = true;
    while (!queue.empty()) {
        const VertexId v = queue.front();
        queue.pop();
        for (DartId d : g.map_.darts_around(v)) {
            const VertexId w = g.head(d);
            if (reached[w]) continue;
            reached[w] = true;
            parent[w] = d;
            potential[w] = potential[v] + g.homology(d);
            queue.push(w);
        }
    }
    std::vector<IVec2> classes;
    for (EdgeId e = 0; e < num_e; ++e) {
        const DartId d = reference_dart(e);
        if (parent[g.head(d)] == d || parent[g.tail(d)] == reversal(d)) continue;
        const IVec2 c = potential[g.tail(d)] + g.homology(d) - potential[g.head(d)];
        if (c != IVec2{}) classes.push_back(c);
    }
    if (lattice_index(classes) != 1)
        fail(ErrorKind::NotCellular, "cycle homology classes do not generate Z^2");
    return g;
}

TorusGraph TorusGraph::from_displacements(const TorusShape& shape,
                                          std::vector<VertexRecord> vertices,
                                          std::vector<GeometricEdge> edges) {
    GraphSpec spec;
    spec.shape = shape;
    for (auto& v : vertices) v.position = reduce_to_fundamental(v.position, shape).point;
    std::vector<std::vector<std::pair<double, DartId>>> around(vertices.size());
    for (EdgeId e = 0; e < edges.size(); ++e) {
        const auto& ge = edges[e];
        if (ge.tail >= vertices.size() || ge.head >= vertices.size())
            fail(ErrorKind::MalformedMap, "edge " + ge.name + " references a missing vertex");
        const Vec2 chord = vertices[ge.head].position - vertices[ge.tail].position;
        double err = 0.0;
        const IVec2 h = round_to_lattice(shape.to_lattice(ge.displacement - chord), &err);
        if (err > 1e-6)
            fail(ErrorKind::InvalidArgument,
                 "displacement of edge " + ge.name + " does not connect its endpoints");
        spec.edges.push_back({ge.name, ge.tail, ge.head, h});
        around[ge.tail].push_back({std::atan2(ge.displacement.y, ge.displacement.x), 2 * e});
        around[ge.head].push_back({std::atan2(-ge.displacement.y, -ge.displacement.x), 2 * e + 1});
    }
    spec.rotations.resize(vertices.size());
    for (VertexId v = 0; v < vertices.size(); ++v) {
        auto& list = around[v];
        std::sort(list.begin(), list.end());
        for (std::size_t i = 0; i + 1 < list.size(); ++i)
            if (list[i].first == list[i + 1].first)
                fail(ErrorKind::MalformedMap,
                     "two darts leave vertex " + vertices[v].name + " in the same direction");
        for (const auto& [angle, d] : list) spec.rotations[v].push_back(d);
    }
    spec.vertices = std::move(vertices);
    return build(std::move(spec));
}

std::optional<VertexId> TorusGraph::find_vertex(std::string_view name) const {
    for (VertexId v = 0; v < vertices_.size(); ++v)
        if (vertices_[v].name == name) return v;
    return std::nullopt;
}

std::optional<EdgeId> TorusGraph::find_edge(std::string_view name) const {
    for (EdgeId e = 0; e < edges_.size(); ++e)
        if (edges_[e].name == name) return e;
    return std::nullopt;
}

IVec2 TorusGraph::homology(DartId d) const {
    const IVec2 h = edges_[edge_of(d)].homology;
    return is_reference(d) ? h : -h;
}

Vec2 TorusGraph::displacement(DartId d) const {
    return position(head(d)) - position(tail(d)) + shape_.translation(homology(d));
}

std::vector<Vec2> TorusGraph::displacement_matrix() const {
    std::vector<Vec2> cols(num_edges());
    for (EdgeId e = 0; e < num_edges(); ++e) cols[e] = displacement(reference_dart(e));
    return cols;
}

std::vector<Vec2> TorusGraph::reference_displacement_matrix() const {
    std::vector<Vec2> cols = displacement_matrix();
    for (auto& c : cols) c = shape_.to_lattice(c);
    return cols;
}

std::vector<IVec2> TorusGraph::homology_matrix() const {
    std::vector<IVec2> cols(num_edges());
    for (EdgeId e = 0; e < num_edges(); ++e) cols[e] = edges_[e].homology;
    return cols;
}

TorusGraph TorusGraph::relocated(std::span<const Vec2> positions) const {
    if (positions.size() != num_vertices())
        fail(ErrorKind::InvalidArgument, "position count does not match the vertex count");
    GraphSpec s = spec();
    for (VertexId v = 0; v < num_vertices(); ++v) s.vertices[v].position = positions[v];
    return build(std::move(s));
}

GraphSpec TorusGraph::spec() const {
    GraphSpec s;
    s.shape = shape_;
    s.vertices = vertices_;
    s.edges = edges_;
    s.rotations.resize(num_vertices());
    for (VertexId v = 0; v < num_vertices(); ++v) s.rotations[v] = map_.darts_around(v);
    return s;
}

bool operator==(const TorusGraph& a, const TorusGraph& b) {
    if (!(a.shape_ == b.shape_) || !(a.map_ == b.map_)) return false;
    if (a.vertices_.size() != b.vertices_.size() || a.edges_.size() != b.edges_.size())
        return false;
    for (std::size_t i = 0; i < a.vertices_.size(); ++i)
        if (a.vertices_[i].name != b.vertices_[i].name ||
            !(a.vertices_[i].position == b.vertices_[i].position))
            return false;
    for (std::size_t i = 0; i < a.edges_.size(); ++i)
        if (a.edges_[i].name != b.edges_[i].name || a.edges_[i].tail != b.edges_[i].tail ||
            a.edges_[i].head != b.edges_[i].head || a.edges_[i].homology != b.edges_[i].homology)
            return false;
    return true;
}

// --- lifts and duals ------------------------------------------------------

FaceLifts face_lifts(const TorusGraph& g) {
    FaceLifts lifts;
    lifts.corner.resize(g.num_darts());
    lifts.shift.resize(g.num_darts());
    lifts.centroid.resize(g.num_faces());
    for (FaceId f = 0; f < g.num_faces(); ++f) {
        const auto& boundary = g.map().face_boundary(f);
        Vec2 pos = g.position(g.tail(boundary.front()));
        Vec2 sum;
        for (DartId d : boundary) {
            lifts.corner[d] = pos;
            sum += pos;
            pos += g.displacement(d);
        }
        lifts.centroid[f] = sum / static_cast<double>(boundary.size());
    }
    for (DartId d = 0; d < g.num_darts(); ++d) {
        const Vec2 tail_from_right = lifts.corner[reversal(d)] - g.displacement(d);
        lifts.shift[d] = round_to_lattice(g.shape().to_lattice(lifts.corner[d] - tail_from_right));
    }
    return lifts;
}

std::vector<double> face_areas(const TorusGraph& g) {
    std::vector<double> areas(g.num_faces());
    for (FaceId f = 0; f < g.num_faces(); ++f) {
        Vec2 pos;
        double twice = 0.0;
        for (DartId d : g.map().face_boundary(f)) {
            const Vec2 next = pos + g.displacement(d);
            twice += cross(pos, next);
            pos = next;
        }
        areas[f] = 0.5 * twice;
    }
    return areas;
}

DualEmbedding dual(const TorusGraph& g) {
    DualEmbedding out;
    out.map = dual_map(g.map());
    out.primal_vertex_of_face.resize(out.map.num_faces());
    // Dual faces are primal rotation orbits: d* has tail(d) on its left.
    for (DartId d = 0; d < g.num_darts(); ++d)
        out.primal_vertex_of_face[out.map.left_face(d)] = g.tail(d);
    return out;
}

TorusGraph dual_from_face_points(const TorusGraph& primal, std::span<const Vec2> face_points,
                                 const TorusShape& dual_shape) {
    if (face_points.size() != primal.num_faces())
        fail(ErrorKind::InvalidArgument, "need one dual point per face");
    const FaceLifts lifts = face_lifts(primal);
    const CombinatorialMap dmap = dual_map(primal.map());

    GraphSpec spec;
    spec.shape = dual_shape;
    std::vector<IVec2> cell(primal.num_faces());
    for (FaceId f = 0; f < primal.num_faces(); ++f) {
        const Reduced r = reduce_to_fundamental(face_points[f], dual_shape);
        cell[f] = r.shift;
        spec.vertices.push_back({"f" + std::to_string(f), r.point});
    }
    for (EdgeId e = 0; e < primal.num_edges(); ++e) {
        const DartId d = reference_dart(e);
        const FaceId from = primal.map().right_face(d);
        const FaceId to = primal.map().left_face(d);
        // P(to) - N shift - P(from) is the cover displacement of d*.
        const IVec2 h = cell[to] - lifts.shift[d] - cell[from];
        spec.edges.push_back({primal.edge_name(e) + "*", from, to, h});
    }
    spec.rotations.resize(primal.num_faces());
    for (FaceId f = 0; f < primal.num_faces(); ++f) spec.rotations[f] = dmap.darts_around(f);
    return TorusGraph::build(std::move(spec));
}

TorusGraph natural_dual(const TorusGraph& g) {
    const FaceLifts lifts = face_lifts(g);
    return dual_from_face_points(g, lifts.centroid, g.shape());
}

// --- universal cover ------------------------------------------------------

CoverRange CoverRange::square(std::int64_t k) {
    if (k <= 0) fail(ErrorKind::InvalidArgument, "patch size must be positive");
    const std::int64_t lo = -(k - 1) / 2;
    return {lo, lo + k - 1, lo, lo + k - 1};
}

std::optional<std::size_t> PlanePatch::find(VertexId v, IVec2 t) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i].source == v && vertices[i].translation == t) return i;
    return std::nullopt;
}

PlanePatch universal_cover_patch(const TorusGraph& g, const CoverRange& range) {
    if (range.x1 < range.x0 || range.y1 < range.y0)
        fail(ErrorKind::InvalidArgument, "empty cover range");
    PlanePatch patch;
    const std::int64_t nx = range.x1 - range.x0 + 1;
    const std::size_t nv = g.num_vertices();
    auto index = [&](VertexId v, IVec2 t) {
        return static_cast<std::size_t>((t.y - range.y0) * nx + (t.x - range.x0)) * nv + v;
    };
    for (std::int64_t ty = range.y0; ty <= range.y1; ++ty)
        for (std::int64_t tx = range.x0; tx <= range.x1; ++tx)
            for (VertexId v = 0; v < nv; ++v) {
                const IVec2 t{tx, ty};
                patch.vertices.push_back({v, t, g.position(v) + g.shape().translation(t)});
            }
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        const DartId d = reference_dart(e);
        const IVec2 h = g.homology(d);
        for (std::int64_t ty = range.y0; ty <= range.y1; ++ty)
            for (std::int64_t tx = range.x0; tx <= range.x1; ++tx) {
                const IVec2 t{tx, ty};
                const IVec2 end = t + h;
                if (!range.contains(end)) continue;
                patch.edges.push_back({e, index(g.tail(d), t), index(g.head(d), end)});
            }
    }
    return patch;
}

namespace {

// Articulation points of the graph restricted to `alive`, plus connectivity.
// Returns true iff the alive part is connected and has no cut vertex.
bool biconnected(const std::vector<std::vector<std::size_t>>& adj, const std::vector<bool>& alive) {
    const std::size_t n = adj.size();
    std::size_t root = n;
    std::size_t alive_count = 0;
    for (std::size_t v = 0; v < n; ++v)
        if (alive[v]) {
            ++alive_count;
            if (root == n) root = v;
        }
    if (alive_count <= 2) return alive_count > 0;

    std::vector<std::size_t> disc(n, 0), low(n, 0);
    std::size_t timer = 0;
    std::size_t visited = 0;
    bool cut = false;
    struct Frame {
        std::size_t v, parent, next;
        std::size_t children;
    };
    std::vector<Frame> stack;
    stack.push_back({root, n, 0, 0});
    disc[root] = low[root] = ++timer;
    ++visited;
    while (!stack.empty() && !cut) {
        Frame& top = stack.back();
        if (top.next < adj[top.v].size()) {
            const std::size_t w = adj[top.v][top.next++];
            if (!alive[w] || w == top.v) continue;
            if (disc[w] == 0) {
                disc[w] = low[w] = ++timer;
                ++visited;
                ++top.children;
                stack.push_back({w, top.v, 0, 0});
            } else if (w != top.parent) {
                low[top.v] = std::min(low[top.v], disc[w]);
            }
        } else {
            const Frame done = top;
            stack.pop_back();
            if (stack.empty()) {
                if (done.children > 1) cut = true;
            } else {
                Frame& up = stack.back();
                low[up.v] = std::min(low[up.v], low[done.v]);
                if (up.parent != n && low[done.v] >= disc[up.v]) cut = true;
            }
        }
    }
    return !cut && visited == alive_count;
}

} // namespace

EssentialReport check_essential(const TorusGraph& g) {
    EssentialReport report;

    // Lifted edges are (tail, head, homology) up to reversal.
    using Key = std::tuple<VertexId, VertexId, std::int64_t, std::int64_t>;
    std::set<Key> keys;
    report.essentially_simple = true;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        const DartId d = reference_dart(e);
        VertexId a = g.tail(d), b = g.head(d);
        IVec2 h = g.homology(d);
        if (std::abs(h.x) > 1 || std::abs(h.y) > 1) report.window_limited = true;
        if (a == b && h == IVec2{}) {
            report.essentially_simple = false;
            continue;
        }
        if (b < a || (a == b && h < IVec2{})) {
            std::swap(a, b);
            h = -h;
        }
        if (!keys.insert({a, b, h.x, h.y}).second) report.essentially_simple = false;
    }

    // 3x3 wraparound cover: vertex (v, t mod 3).
    constexpr std::int64_t kWindow = 3;
    const std::size_t nv = g.num_vertices();
    const std::size_t n = nv * kWindow * kWindow;
    auto id = [&](VertexId v, std::int64_t tx, std::int64_t ty) {
        tx = ((tx % kWindow) + kWindow) % kWindow;
        ty = ((ty % kWindow) + kWindow) % kWindow;
        return static_cast<std::size_t>(ty * kWindow + tx) * nv + v;
    };
    std::vector<std::vector<std::size_t>> adj(n);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        const DartId d = reference_dart(e);
        const IVec2 h = g.homology(d);
        for (std::int64_t ty = 0; ty < kWindow; ++ty)
            for (std::int64_t tx = 0; tx < kWindow; ++tx) {
                const std::size_t a = id(g.tail(d), tx, ty);
                const std::size_t b = id(g.head(d), tx + h.x, ty + h.y);
                if (a == b) continue;
                adj[a].push_back(b);
                adj[b].push_back(a);
            }
    }
    bool three = n >= 4;
    std::vector<bool> alive(n, true);
    for (std::size_t removed = 0; removed < n && three; ++removed) {
        alive[removed] = false;
        three = biconnected(adj, alive);
        alive[removed] = true;
    }
    report.essentially_3_connected = three;
    return report;
}

} // namespace torusmc
