#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "attractor/attractor.hpp"
#include "corpus.hpp"
#include "oracles.hpp"

using namespace attractor;

namespace {

// exact minimum set-cover size by subset enumeration
std::int64_t min_cover(const SetCoverInstance& sc) {
    std::int64_t t = static_cast<std::int64_t>(sc.sets.size());
    std::int64_t best = t + 1;
    for (std::int64_t mask = 0; mask < (std::int64_t{1} << t); ++mask) {
        std::vector<bool> hit(static_cast<std::size_t>(sc.universe), false);
        for (std::int64_t i = 0; i < t; ++i)
            if ((mask >> i) & 1)
                for (std::int64_t u : sc.sets[static_cast<std::size_t>(i)])
                    hit[static_cast<std::size_t>(u)] = true;
        bool all = true;
        for (bool h : hit) all = all && h;
        if (all) best = std::min<std::int64_t>(best, std::popcount(static_cast<std::uint64_t>(mask)));
    }
    return best;
}

PathAttractor edges_for_positions(const std::vector<std::int64_t>& positions) {
    PathAttractor a;
    for (std::int64_t p : positions) a.edge_ids.push_back(static_cast<int>(p - 1));
    return a;
}

}  // namespace

TEST_CASE("path attractor verification on a path graph matches the string case") {
    Text t = Text::from_bytes("CDABCCDABCCA");
    LabeledTree g = LabeledTree::path_of(t);
    REQUIRE(g.n() == 12);
    REQUIRE(verify_path_attractor(g, edges_for_positions({4, 7, 11, 12})).valid);
    SECTION("all edges always verify") {
        std::vector<std::int64_t> all;
        for (std::int64_t p = 1; p <= 12; ++p) all.push_back(p);
        REQUIRE(verify_path_attractor(g, edges_for_positions(all)).valid);
    }
    SECTION("a missing second character is witnessed") {
        LabeledTree ab = LabeledTree::path_of(Text::from_bytes("ab"));
        auto res = verify_path_attractor(ab, edges_for_positions({1}));
        REQUIRE_FALSE(res.valid);
        REQUIRE(res.witness_path == "b");
    }
    SECTION("foreign edges are rejected") {
        PathAttractor bad;
        bad.edge_ids = {99};
        REQUIRE_THROWS_MATCHES(verify_path_attractor(g, bad), Error,
                               Catch::Matchers::Predicate<Error>(
                                   [](const Error& e) { return e.code() == "edge-not-in-tree"; }));
    }
}

TEST_CASE("greedy path attractor on a star selects every edge") {
    LabeledTree g = LabeledTree::single_root();
    for (int k = 0; k < 5; ++k) g.add_child(g.root(), static_cast<unsigned char>('a' + k));
    PathAttractor a = greedy_path_attractor(g);
    REQUIRE(a.k() == 5);
    REQUIRE(verify_path_attractor(g, a).valid);
}

TEST_CASE("greedy on the running example sits between the optimum and the ln bound") {
    Text t = Text::from_bytes("CDABCCDABCCA");
    LabeledTree g = LabeledTree::path_of(t);
    PathAttractor a = greedy_path_attractor(g);
    REQUIRE(verify_path_attractor(g, a).valid);
    std::int64_t N = trie_edge_count(g);
    std::int64_t bound = static_cast<std::int64_t>(std::ceil(std::log(static_cast<double>(N)))) * 4;
    REQUIRE(a.k() >= 4);
    REQUIRE(a.k() <= bound);
}

TEST_CASE("greedy string attractor equals greedy path attractor on path graphs") {
    for (const auto& s : corpus::standard_upto(60)) {
        Text t = Text::from_bytes(s);
        AttractorSet from_string = greedy_string_attractor(t);
        PathAttractor from_tree = greedy_path_attractor(LabeledTree::path_of(t));
        std::vector<std::int64_t> tree_positions;
        for (int e : from_tree.edge_ids) tree_positions.push_back(e + 1);
        REQUIRE(from_string.positions == tree_positions);
    }
}

TEST_CASE("greedy string attractor verifies and is never smaller than the optimum") {
    std::mt19937 rng(555);
    for (int reps = 0; reps < 80; ++reps) {
        int len = 1 + static_cast<int>(rng() % 14);
        int sigma = 1 + static_cast<int>(rng() % 3);
        std::string s;
        for (int i = 0; i < len; ++i) s.push_back(static_cast<char>('a' + rng() % sigma));
        Text t = Text::from_bytes(s);
        SuffixIndex idx(t);
        AttractorSet greedy = greedy_string_attractor(t);
        REQUIRE(verify_attractor(t, idx, greedy).valid);
        AttractorSet brute = smallest_attractor_bruteforce(t, idx);
        REQUIRE(greedy.gamma() >= brute.gamma());
        std::int64_t N = trie_edge_count(LabeledTree::path_of(t));
        std::int64_t lnN = static_cast<std::int64_t>(std::ceil(std::log(static_cast<double>(N))));
        REQUIRE(greedy.gamma() <= std::max<std::int64_t>(1, lnN) * brute.gamma());
    }
}

TEST_CASE("trivial strings have singleton greedy attractors") {
    REQUIRE(greedy_string_attractor(Text::from_bytes("a")).positions ==
            std::vector<std::int64_t>{1});
    REQUIRE(greedy_string_attractor(Text::from_bytes("aaa")).gamma() == 1);
}

TEST_CASE("set-cover reduction tree structure") {
    SECTION("two singleton sets over a two-element universe") {
        SetCoverInstance sc;
        sc.universe = 2;
        sc.sets = {{0}, {1}};
        auto [tree, t_count] = tree_from_setcover(sc);
        REQUIRE(t_count == 2);
        REQUIRE(tree.n() == 10);  // 2 + 4 + 2*2 single-bit tries
    }
    SECTION("singleton universe needs no padding") {
        SetCoverInstance sc;
        sc.universe = 1;
        sc.sets = {{0}};
        auto [tree, t_count] = tree_from_setcover(sc);
        REQUIRE(t_count == 1);
        REQUIRE(tree.n() == 3);  // marker edge + the 0/1 pair of empty tries
    }
    SECTION("non-power universes get one padding set") {
        SetCoverInstance sc;
        sc.universe = 3;
        sc.sets = {{0, 1}, {1, 2}};
        auto [tree, t_count] = tree_from_setcover(sc);
        REQUIRE(t_count == 3);  // padding set {3} appended
        PathAttractor brute = bruteforce_path_attractor(tree, 64);
        REQUIRE(verify_path_attractor(tree, brute).valid);
    }
    SECTION("empty universes are rejected") {
        SetCoverInstance sc;
        sc.universe = 0;
        REQUIRE_THROWS_MATCHES(tree_from_setcover(sc), Error,
                               Catch::Matchers::Predicate<Error>(
                                   [](const Error& e) { return e.code() == "empty-universe"; }));
    }
}

TEST_CASE("brute-force path attractor basics") {
    SECTION("a single edge is its own attractor") {
        LabeledTree g = LabeledTree::single_root();
        g.add_child(g.root(), 'x');
        PathAttractor a = bruteforce_path_attractor(g);
        REQUIRE(a.edge_ids == std::vector<int>{0});
    }
    SECTION("a unary path needs one edge") {
        LabeledTree g = LabeledTree::path_of(Text::from_bytes("aaa"));
        PathAttractor a = bruteforce_path_attractor(g);
        REQUIRE(a.k() == 1);
        REQUIRE(a.edge_ids == std::vector<int>{0});  // lexicographically smallest optimum
    }
    SECTION("edge-count limit is enforced") {
        LabeledTree g = LabeledTree::path_of(Text::from_bytes(std::string(17, 'a')));
        REQUIRE_THROWS_AS(bruteforce_path_attractor(g), Error);
    }
    SECTION("path-graph brute force matches the string brute force") {
        std::mt19937 rng(31337);
        for (int reps = 0; reps < 40; ++reps) {
            int len = 1 + static_cast<int>(rng() % 10);
            std::string s;
            for (int i = 0; i < len; ++i) s.push_back(static_cast<char>('a' + rng() % 3));
            Text t = Text::from_bytes(s);
            SuffixIndex idx(t);
            PathAttractor a = bruteforce_path_attractor(LabeledTree::path_of(t), 16);
            REQUIRE(a.k() == smallest_attractor_bruteforce(t, idx).gamma());
        }
    }
}

TEST_CASE("reduction equivalence: smallest path attractor equals t + 2q*") {
    SECTION("two singletons") {
        SetCoverInstance sc;
        sc.universe = 2;
        sc.sets = {{0}, {1}};
        auto [tree, t_count] = tree_from_setcover(sc);
        PathAttractor best = bruteforce_path_attractor(tree, 64);
        REQUIRE(best.k() == t_count + 2 * min_cover(sc));  // 2 + 2*2 = 6
        REQUIRE(best.k() == 6);
    }
    SECTION("random instances") {
        std::mt19937 rng(777);
        for (int reps = 0; reps < 25; ++reps) {
            SetCoverInstance sc;
            sc.universe = 2 + static_cast<std::int64_t>(rng() % 7);
            std::int64_t t_sets = 1 + static_cast<std::int64_t>(rng() % 4);
            sc.sets.assign(static_cast<std::size_t>(t_sets), {});
            for (std::int64_t u = 0; u < sc.universe; ++u)
                sc.sets[static_cast<std::size_t>(rng() % t_sets)].push_back(u);
            for (std::int64_t i = 0; i < t_sets; ++i)
                for (std::int64_t u = 0; u < sc.universe; ++u)
                    if (rng() % 3 == 0) sc.sets[static_cast<std::size_t>(i)].push_back(u);
            for (auto& set : sc.sets) {
                std::sort(set.begin(), set.end());
                set.erase(std::unique(set.begin(), set.end()), set.end());
            }
            SetCoverInstance padded = sc;  // reduction pads internally; q* uses the padded instance
            int m = ceil_log2(sc.universe);
            if ((std::int64_t{1} << m) > sc.universe) {
                std::vector<std::int64_t> extra;
                for (std::int64_t u = sc.universe; u < (std::int64_t{1} << m); ++u) extra.push_back(u);
                padded.sets.push_back(extra);
                padded.universe = std::int64_t{1} << m;
            }
            auto [tree, t_count] = tree_from_setcover(sc);
            REQUIRE(t_count == static_cast<std::int64_t>(padded.sets.size()));
            PathAttractor best = bruteforce_path_attractor(tree, 1000);
            REQUIRE(verify_path_attractor(tree, best).valid);
            REQUIRE(best.k() == t_count + 2 * min_cover(padded));
            PathAttractor greedy = greedy_path_attractor(tree);
            REQUIRE(verify_path_attractor(tree, greedy).valid);
        }
    }
}

TEST_CASE("tree JSON round-trip") {
    SetCoverInstance sc;
    sc.universe = 2;
    sc.sets = {{0}, {1}};
    auto [tree, t_count] = tree_from_setcover(sc);
    LabeledTree back = LabeledTree::from_json(tree.to_json());
    REQUIRE(back.n() == tree.n());
    PathAttractor a = bruteforce_path_attractor(back, 64);
    REQUIRE(a.k() == 6);
    SetCoverInstance sc2 = SetCoverInstance::from_json(sc.to_json());
    REQUIRE(sc2.universe == 2);
    REQUIRE(sc2.sets == sc.sets);
}
