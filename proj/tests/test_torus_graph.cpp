#include "fixtures.hpp"
#include "torusmc/errors.hpp"
#include "torusmc/torus_graph.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>

using namespace torusmc;

namespace {

ErrorKind kind_of(const auto& thunk) {
    try {
        thunk();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no exception");
    return ErrorKind::InvalidArgument;
}

// dd is the double dual of m: some vertex bijection phi makes
// dd.tail(d) = phi(m.head(d)) and dd.rot_next(d) = rev(m.rot_next(rev d)).
bool double_dual_matches(const CombinatorialMap& m, const CombinatorialMap& dd) {
    if (dd.num_darts() != m.num_darts() || dd.num_vertices() != m.num_vertices()) return false;
    std::map<VertexId, VertexId> phi, inverse;
    for (DartId d = 0; d < m.num_darts(); ++d) {
        const VertexId from = m.head(d), to = dd.tail(d);
        if (auto [it, fresh] = phi.emplace(from, to); !fresh && it->second != to) return false;
        if (auto [it, fresh] = inverse.emplace(to, from); !fresh && it->second != from)
            return false;
        if (dd.rotation_next(d) != reversal(m.rotation_next(reversal(d)))) return false;
    }
    return phi.size() == m.num_vertices();
}

} // namespace

TEST_CASE("G1 builds with V=1, E=3, F=2") {
    const TorusGraph g = fixtures::g1();
    CHECK(g.num_vertices() == 1);
    CHECK(g.num_edges() == 3);
    CHECK(g.num_faces() == 2);
    const auto h = g.homology_matrix();
    REQUIRE(h.size() == 3);
    CHECK(h[0] == IVec2{1, 0});
    CHECK(h[1] == IVec2{1, 1});
    CHECK(h[2] == IVec2{2, 1});
    const auto cols = g.reference_displacement_matrix();
    CHECK(cols[1] == Vec2{1, 1});
    CHECK(g.displacement(reference_dart(1)) == Vec2{1, 1});
}

TEST_CASE("K7 builds with the seven points") {
    const TorusGraph g = fixtures::k7();
    CHECK(g.num_vertices() == 7);
    CHECK(g.num_edges() == 21);
    CHECK(g.num_faces() == 14);
    for (FaceId f = 0; f < g.num_faces(); ++f) CHECK(g.map().face_boundary(f).size() == 3);
    const Vec2 expected[7] = {{0, 0},         {1.0 / 7, 3.0 / 7}, {2.0 / 7, 6.0 / 7},
                              {3.0 / 7, 2.0 / 7}, {4.0 / 7, 5.0 / 7}, {5.0 / 7, 1.0 / 7},
                              {6.0 / 7, 4.0 / 7}};
    for (VertexId v = 0; v < 7; ++v) CHECK(max_abs(g.position(v) - expected[v]) < 1e-15);
    // Dart from (0,0) to (1/7,3/7): slope 3.
    const DartId d = reference_dart(0);
    CHECK(g.tail(d) == 0);
    CHECK(g.head(d) == 1);
    CHECK(g.homology(d) == IVec2{0, 0});
    CHECK(max_abs(g.displacement(d) - Vec2{1.0 / 7, 3.0 / 7}) < 1e-15);
}

TEST_CASE("displacement antisymmetry and contractible faces") {
    for (const TorusGraph& g : {fixtures::k7(), fixtures::g1(), fixtures::gk(3)}) {
        for (DartId d = 0; d < g.num_darts(); ++d) {
            CHECK(max_abs(g.displacement(d) + g.displacement(reversal(d))) == 0.0);
            CHECK(g.homology(d) + g.homology(reversal(d)) == IVec2{});
        }
        for (FaceId f = 0; f < g.num_faces(); ++f) {
            Vec2 sum;
            IVec2 hsum;
            for (DartId d : g.map().face_boundary(f)) {
                sum += g.displacement(d);
                hsum += g.homology(d);
            }
            CHECK(max_abs(sum) < 1e-12);
            CHECK(hsum == IVec2{});
        }
    }
}

TEST_CASE("empty graph has an empty displacement matrix") {
    const TorusGraph g;
    CHECK(g.displacement_matrix().empty());
    CHECK(g.reference_displacement_matrix().empty());
}

TEST_CASE("malformed maps are rejected") {
    // Reversal with a fixed point.
    const std::vector<VertexId> tails{0, 0};
    const std::vector<DartId> reversal_perm{0, 1};
    const std::vector<DartId> rot{1, 0};
    CHECK(kind_of([&] { CombinatorialMap::from_permutations(1, tails, reversal_perm, rot); }) ==
          ErrorKind::MalformedMap);
    // Rotation that is not a permutation.
    CHECK(kind_of([&] { CombinatorialMap::build(1, {0, 0}, {0, 0}); }) ==
          ErrorKind::MalformedMap);
    // Rotation leaving the vertex.
    CHECK(kind_of([&] { CombinatorialMap::build(2, {0, 1}, {1, 0}); }) ==
          ErrorKind::MalformedMap);
}

TEST_CASE("from_permutations renumbers dart pairs") {
    // G1 written with darts in the order a+, b+, c+, a-, b-, c-.
    const std::vector<VertexId> tails(6, 0);
    const std::vector<DartId> rev{3, 4, 5, 0, 1, 2};
    // Counterclockwise: a+ (0 deg), c+ (26.6), b+ (45), a- (180), c- (206.6), b- (225).
    const std::vector<DartId> rot{2, 3, 1, 5, 0, 4};
    const CombinatorialMap m = CombinatorialMap::from_permutations(1, tails, rev, rot);
    CHECK(m.num_edges() == 3);
    CHECK(m.euler_characteristic() == 0);
    CHECK(m == fixtures::g1().map());
}

TEST_CASE("a planar map is not cellular on the torus") {
    GraphSpec spec;
    spec.vertices = {{"a", {0.1, 0.1}}, {"b", {0.5, 0.1}}, {"c", {0.3, 0.5}}};
    spec.edges = {{"ab", 0, 1, {}}, {"bc", 1, 2, {}}, {"ca", 2, 0, {}}};
    spec.rotations = {{0, 5}, {2, 1}, {4, 3}};
    CHECK(kind_of([&] { TorusGraph::build(spec); }) == ErrorKind::NotCellular);
}

TEST_CASE("bad face homology is rejected") {
    GraphSpec spec = fixtures::k7().spec();
    spec.edges[0].homology = IVec2{1, 0};
    const ErrorKind k = kind_of([&] { TorusGraph::build(spec); });
    CHECK((k == ErrorKind::BadFaceHomology || k == ErrorKind::NotCellular));
}

TEST_CASE("spec round trip") {
    for (const TorusGraph& g : {fixtures::k7(), fixtures::g1()}) CHECK(TorusGraph::build(g.spec()) == g);
}

TEST_CASE("from_displacements rejects ties in angular order") {
    std::vector<VertexRecord> v{{"p", {0, 0}}};
    std::vector<GeometricEdge> e{{"a", 0, 0, {1, 0}}, {"b", 0, 0, {2, 0}}, {"c", 0, 0, {0, 1}}};
    CHECK(kind_of([&] { TorusGraph::from_displacements(TorusShape(), v, e); }) ==
          ErrorKind::MalformedMap);
}

TEST_CASE("dual counts") {
    const DualEmbedding g1_dual = dual(fixtures::g1());
    CHECK(g1_dual.map.num_vertices() == 2);
    CHECK(g1_dual.map.num_edges() == 3);
    CHECK(g1_dual.map.num_faces() == 1);

    const DualEmbedding k7_dual = dual(fixtures::k7());
    CHECK(k7_dual.map.num_vertices() == 14);
    CHECK(k7_dual.map.num_edges() == 21);
    CHECK(k7_dual.map.num_faces() == 7);
    for (FaceId f = 0; f < 7; ++f) CHECK(k7_dual.map.face_boundary(f).size() == 6);
    // Dual face i surrounds primal vertex primal_vertex_of_face[i].
    std::vector<VertexId> seen = k7_dual.primal_vertex_of_face;
    std::sort(seen.begin(), seen.end());
    for (VertexId v = 0; v < 7; ++v) CHECK(seen[v] == v);
}

TEST_CASE("dual of dual is the original map") {
    for (const TorusGraph& g : {fixtures::k7(), fixtures::g1(), fixtures::gk(2)}) {
        const CombinatorialMap dd = dual_map(dual_map(g.map()));
        CHECK(double_dual_matches(g.map(), dd));
    }
}

TEST_CASE("natural dual is a valid torus graph") {
    const TorusGraph d = natural_dual(fixtures::k7());
    CHECK(d.num_vertices() == 14);
    CHECK(d.num_edges() == 21);
    CHECK(d.num_faces() == 7);
}

TEST_CASE("universal cover patch") {
    const TorusGraph g1 = fixtures::g1();
    const PlanePatch single = universal_cover_patch(g1, CoverRange::square(1));
    CHECK(single.vertices.size() == 1);
    CHECK(single.edges.empty());  // every loop leaves the 1x1 box

    const TorusGraph k7 = fixtures::k7();
    const PlanePatch patch = universal_cover_patch(k7, CoverRange::square(3));
    CHECK(patch.vertices.size() == 63);
    for (const auto& pv : patch.vertices)
        CHECK(pv.position == k7.position(pv.source) + k7.shape().translation(pv.translation));
    for (const auto& pe : patch.edges) {
        const auto& a = patch.vertices[pe.tail];
        const auto& b = patch.vertices[pe.head];
        CHECK(max_abs(b.position - a.position - k7.displacement(reference_dart(pe.edge))) < 1e-12);
    }
    // Copies at k and k' differ by M(k - k').
    const auto i = patch.find(3, {-1, 1});
    const auto j = patch.find(3, {1, 0});
    REQUIRE(i);
    REQUIRE(j);
    CHECK(max_abs(patch.vertices[*j].position - patch.vertices[*i].position - Vec2{2, -1}) < 1e-12);
}

TEST_CASE("essential simplicity and 3-connectivity") {
    const EssentialReport k7 = check_essential(fixtures::k7());
    CHECK(k7.essentially_simple);
    CHECK(k7.essentially_3_connected);
    CHECK_FALSE(k7.window_limited);

    const EssentialReport g1 = check_essential(fixtures::g1());
    CHECK(g1.essentially_simple);
    CHECK(g1.window_limited);  // the (2,1) loop

    // Parallel copy of edge e0_1 with the same homology, forming a digon.
    GraphSpec spec = fixtures::k7().spec();
    const EdgeId dup = spec.edges.size();
    spec.edges.push_back({"dup", spec.edges[0].tail, spec.edges[0].head, spec.edges[0].homology});
    auto insert_before = [](std::vector<DartId>& cycle, DartId at, DartId d) {
        cycle.insert(std::find(cycle.begin(), cycle.end(), at), d);
    };
    auto insert_after = [](std::vector<DartId>& cycle, DartId at, DartId d) {
        cycle.insert(std::find(cycle.begin(), cycle.end(), at) + 1, d);
    };
    insert_before(spec.rotations[spec.edges[0].tail], 0, reference_dart(dup));
    insert_after(spec.rotations[spec.edges[0].head], 1, reversal(reference_dart(dup)));
    const TorusGraph doubled = TorusGraph::build(spec);
    CHECK(doubled.num_faces() == 15);
    CHECK_FALSE(check_essential(doubled).essentially_simple);
}
