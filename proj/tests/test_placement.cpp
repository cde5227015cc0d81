#include <catch_amalgamated.hpp>

#include <random>

#include <strucsense/model.hpp>
#include <strucsense/placement.hpp>

#include "support/generators.hpp"

using namespace strucsense;

namespace {

StateGraph edges(const char* json) { return parse_edge_list(json); }

const char* kTree9 = R"({"n":9,"star":[[0,1],[1,4],[2,3],[3,4],[4,5],[5,7],[7,8],[8,6]]})";

} // namespace

TEST_CASE("place_tree: path, star, nine-node tree") {
    CHECK(place_tree(edges(R"({"n":3,"star":[[0,1],[1,2]]})")).measured == std::vector<Index>{0});
    CHECK(place_tree(edges(R"({"n":4,"star":[[0,3],[1,3],[2,3]]})")).measured == std::vector<Index>{0, 1});
    const SensorPlacement p = place_tree(edges(kTree9));
    CHECK(p.measured == std::vector<Index>{0, 2});
    CHECK(p.mode == PlacementMode::tree);
}

TEST_CASE("place_tree: single node and empty graph") {
    CHECK(place_tree(StateGraph(1, {}, {})).measured == std::vector<Index>{0});
    CHECK(place_tree(StateGraph(0, {}, {})).measured.empty());
}

TEST_CASE("place_tree rejects cycles and disconnected input") {
    const StateGraph tri = edges(R"({"n":3,"star":[[0,1],[0,2],[1,2]]})");
    CHECK_THROWS_WITH(place_tree(tri), Catch::Matchers::ContainsSubstring("edge 0-2 closes a cycle"));
    CHECK_THROWS_AS(place_tree(edges(R"({"n":4,"star":[[0,1],[2,3]]})")), PlacementError);
}

TEST_CASE("place_cyclic: triangle and the triangle network") {
    const StateGraph tri = edges(R"({"n":3,"star":[[0,1],[0,2],[1,2]]})");
    const SensorPlacement p = place_cyclic(tri, spanning_tree_dfs(tri));
    CHECK(p.measured == std::vector<Index>{0, 2});
    CHECK(p.mode == PlacementMode::cyclic);

    const NetworkModel m = load_model(STRUCSENSE_FIXTURES "/triangle.inp");
    const StateGraph g = from_pattern(m.pattern);
    const SpanningTree t = spanning_tree_dfs(g);
    const SensorPlacement w = place_cyclic(g, t);
    REQUIRE(w.measured == std::vector<Index>{2, 7});
    CHECK(m.qualified_label(2) == "q:e3");
    CHECK(m.qualified_label(7) == "h:4");

    const SensorCountReport r = sensor_count_report(g, t, w);
    CHECK(r.n_e_graph == 1);
    CHECK(r.cycles == 1);
    CHECK(r.sensors == 2);
    CHECK(r.bound_ok);
}

TEST_CASE("place_cyclic includes isolated nodes") {
    const StateGraph g = edges(R"({"n":4,"star":[[0,1],[1,2]]})");
    CHECK(place_cyclic(g, spanning_tree_dfs(g)).measured == std::vector<Index>{0, 2, 3});
}

TEST_CASE("place_cyclic on a tree measures every extreme node") {
    std::mt19937_64 rng(4);
    for (int k = 0; k < 100; ++k) {
        const StateGraph g = from_pattern(testgen::random_tree(2 + rng() % 40, testgen::Diagonal::any, rng));
        const SpanningTree t = spanning_tree_dfs(g);
        const SensorPlacement c = place_cyclic(g, t);
        const SensorPlacement l = place_tree(g);
        CHECK(c.measured == classify_nodes(g).extreme);
        CHECK(c.n_y() == l.n_y() + 1);
        const auto r = sensor_count_report(g, t, c);
        CHECK(r.cycles == 0);
        CHECK(r.sensors == r.n_e_graph);
        CHECK(r.bound_ok);
    }
}

TEST_CASE("sensor_count_report bounds") {
    const StateGraph g = edges(R"({"n":3,"star":[[0,1],[0,2],[1,2]]})");
    const SpanningTree t = spanning_tree_dfs(g);
    CHECK(sensor_count_report(g, t, {{0, 2}, PlacementMode::cyclic}).bound_ok);
    CHECK_FALSE(sensor_count_report(g, t, {{}, PlacementMode::cyclic}).bound_ok);
    CHECK_FALSE(sensor_count_report(g, t, {{0, 1, 2}, PlacementMode::cyclic}).bound_ok);
}

TEST_CASE("build_c_pattern") {
    const PatternMatrix c1 = build_c_pattern({{1}, PlacementMode::tree}, 3);
    CHECK(c1.rows() == 1);
    CHECK(c1(0, 1) == Entry::Star);
    CHECK(c1.count(Entry::Star) == 1);

    const PatternMatrix c2 = build_c_pattern({{0, 2}, PlacementMode::cyclic}, 3);
    CHECK(c2(0, 0) == Entry::Star);
    CHECK(c2(1, 2) == Entry::Star);
    CHECK(c2.count(Entry::Star) == 2);

    const NumericMatrix c = output_matrix({{2, 0, 4}, PlacementMode::cyclic}, 5);
    CHECK((c.rowwise().sum().array() == 1.0).all());
    CHECK((c.colwise().sum().array() <= 1.0).all());
    CHECK(c.fullPivLu().rank() == 3);

    CHECK_THROWS_AS(build_c_pattern({{1, 1}, PlacementMode::cyclic}, 3), InputError);
    CHECK_THROWS_AS(build_c_pattern({{3}, PlacementMode::cyclic}, 3), InputError);
}

TEST_CASE("augment_until_certified reaches a certified placement") {
    std::mt19937_64 rng(31);
    for (int k = 0; k < 100; ++k) {
        const PatternMatrix a = testgen::random_cyclic(3 + rng() % 30, 8, testgen::Diagonal::wdn, rng);
        const StateGraph g = from_pattern(a);
        SensorPlacement p = place_cyclic(g, spanning_tree_dfs(g));
        const std::size_t before = p.n_y();
        const auto added = augment_until_certified(a, p);
        CHECK(p.n_y() == before + added.size());
        CHECK(certify_sso(a, build_c_pattern(p, a.rows())).sso);
    }
}

TEST_CASE("two-chord nine-node graph: DFS leaves are 1, 3 and 7") {
    const NetworkModel m = load_model(STRUCSENSE_FIXTURES "/two_chord.json");
    const StateGraph g = from_pattern(m.pattern);
    const SensorPlacement p = place_cyclic(g, spanning_tree_dfs(g));
    CHECK(p.measured == std::vector<Index>{0, 2, 6});
    CHECK(cycle_count(g) == 2);
    CHECK(certify_sso(m.pattern, build_c_pattern(p, 9)).sso);
}

TEST_CASE("the DFS-leaf rule alone does not always certify") {
    // the nine-node tree with chords 2-3 and 6-7 (1-based): ascending DFS walks
    // the Hamiltonian path 1-2-3-4-5-6-7-9-8 and leaves only {1, 8}
    const StateGraph g = parse_edge_list(
        R"({"n":9,"star":[[0,1],[1,4],[2,3],[3,4],[4,5],[5,7],[7,8],[8,6],[1,2],[5,6]]})");
    const SpanningTree t = spanning_tree_dfs(g);
    const SensorPlacement p = place_cyclic(g, t);
    CHECK(p.measured == std::vector<Index>{0, 7});
    CHECK_FALSE(certify_sso(to_pattern(g), build_c_pattern(p, 9)).sso);
    CHECK(certify_sso(to_pattern(g), build_c_pattern({{0, 2, 6}, PlacementMode::cyclic}, 9)).sso);
}
