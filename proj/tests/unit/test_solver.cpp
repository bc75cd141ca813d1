#include "doctest.h"
#include "gpcart/formulas.hpp"
#include "gpcart/solver.hpp"
#include "gpcart/spec.hpp"
#include "oracles.hpp"

#include <numeric>

using namespace gpcart;

namespace {

ProductGraph spec(const std::string& text) { return build(parse_spec(text)); }

oracle::Adj oracle_factor(char family, int n)
{
    switch (family) {
    case 'P': return oracle::path(n);
    case 'C': return oracle::cycle(n);
    case 'K': return oracle::complete(n);
    default: return oracle::star(n);
    }
}

struct Pair {
    char fa;
    int a;
    char fb;
    int b;
    std::string text() const { return fa + std::to_string(a) + "x" + fb + std::to_string(b); }
    oracle::Adj adj() const { return oracle::product(oracle_factor(fa, a), oracle_factor(fb, b)); }
};

std::vector<Pair> small_corpus()
{
    const std::vector<std::pair<char, int>> f = {{'P', 2}, {'P', 3}, {'P', 4}, {'C', 3}, {'C', 4},
                                                 {'C', 5}, {'K', 2}, {'K', 3}, {'K', 4}, {'S', 2}};
    std::vector<Pair> out;
    for (auto [fa, a] : f)
        for (auto [fb, b] : f) {
            const int na = fa == 'S' ? a + 1 : a;
            const int nb = fb == 'S' ? b + 1 : b;
            if (na * nb <= 16)
                out.push_back({fa, a, fb, b});
        }
    return out;
}

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("gp examples")
{
    CHECK(gp_exact(spec("P4xP5")).gp_value == 4);
    CHECK(gp_exact(spec("P5xC8")).gp_value == 4);
    CHECK(gp_exact(spec("K3xK4")).gp_value == 5);
    CHECK(gp_exact(spec("P2xP2")).gp_value == 2);
    CHECK(oracle::maximum_sets(oracle::product(oracle::path(2), oracle::path(2))).gp == 2);
    CHECK(gp_exact(spec("P1")).gp_value == 1);
    CHECK(gp_exact(spec("P2")).gp_value == 2);
    CHECK(gp_exact(spec("C7")).gp_value == 3);
    CHECK(gp_exact(spec("K7")).gp_value == 7);
}

TEST_CASE("witness is certified and lexicographically first")
{
    for (const auto& p : small_corpus()) {
        auto g = spec(p.text());
        auto res = gp_exact(g);
        const auto truth = oracle::maximum_sets(p.adj());
        CHECK_MESSAGE(res.exact(), p.text());
        CHECK_MESSAGE(res.gp_value == static_cast<std::uint32_t>(truth.gp), p.text());
        CHECK(res.witness.size() == res.gp_value);
        CHECK(is_general_position(g, res.witness.members));
        std::vector<VertexId> first(truth.first.begin(), truth.first.end());
        CHECK_MESSAGE(res.witness.members == first, p.text());
        CHECK(res.witness.provenance == "solver");
    }
    auto res = gp_exact(spec("P5xC7"));
    CHECK(res.witness.coords() ==
          std::vector<VertexCoord>{{0, 0}, {1, 2}, {2, 4}, {3, 6}, {4, 1}});
}

TEST_CASE("factor order does not matter")
{
    for (const auto& p : small_corpus()) {
        const Pair q{p.fb, p.b, p.fa, p.a};
        CHECK(gp_exact(spec(p.text())).gp_value == gp_exact(spec(q.text())).gp_value);
    }
    CHECK(gp_exact(spec("P5xC9")).gp_value == gp_exact(spec("C9xP5")).gp_value);
}

TEST_CASE("thread count does not change the result")
{
    for (const char* text : {"C7xC7", "P5xC9", "K4xK5", "C8xC7", "P6xP6", "K2^5", "C5xC5xK2"}) {
        auto g = spec(text);
        auto one = gp_exact(g, {.threads = 1});
        for (unsigned t : {2u, 4u, 7u}) {
            auto many = gp_exact(g, {.threads = t});
            CHECK_MESSAGE(many.gp_value == one.gp_value, text);
            CHECK_MESSAGE(many.witness.members == one.witness.members, text);
        }
    }
}

TEST_CASE("budgets report best-found instead of failing silently")
{
    auto g = spec("C10xC10");
    SearchOptions opts;
    opts.budget.node_limit = 50;
    auto res = gp_exact(g, opts);
    CHECK(res.status == SearchStatus::BudgetExhausted);
    CHECK_FALSE(res.exact());
    CHECK(res.witness.size() == res.gp_value);
    CHECK(is_general_position(g, res.witness.members));
    CHECK(res.gp_value <= 7);

    SearchOptions timed;
    timed.budget.time_limit = std::chrono::milliseconds(0);
    auto t = gp_exact(g, timed);
    CHECK(t.status == SearchStatus::BudgetExhausted);
    CHECK(is_general_position(g, t.witness.members));

    SearchOptions loose;
    loose.budget.node_limit = 100'000'000;
    CHECK(gp_exact(spec("C7xC7"), loose).exact());
}

TEST_CASE("caps")
{
    CHECK_THROWS_AS(gp_exact(spec("P201")), CapExceeded);
    CHECK_NOTHROW(gp_exact(spec("P201"), {.vertex_cap = 201}));
    CHECK_THROWS_AS(gp_exact(spec("P257"), {.vertex_cap = 1000}), CapExceeded);
    CHECK_THROWS_AS(count_maximum_gp_sets(spec("P9xP9")), CapExceeded);
    CHECK_THROWS_AS(BadTripleIndex(spec("P300")), CapExceeded);
}

TEST_CASE("counting maximum sets")
{
    auto c22 = count_maximum_gp_sets(spec("P2xP2"));
    CHECK(c22.gp_value == 2);
    CHECK(c22.count == 6);
    auto c23 = count_maximum_gp_sets(spec("P2xP3"));
    CHECK(c23.gp_value == 3);
    CHECK(c23.count == 2);
    auto c33 = count_maximum_gp_sets(spec("P3xP3"));
    CHECK(c33.gp_value == 4);
    CHECK(c33.count == 1);
    CHECK(grid_gp_count(2, 3) == 2);
    CHECK(grid_gp_count(3, 3) == 1);
}

TEST_CASE("grid counts agree with brute force")
{
    for (int r = 2; r <= 5; ++r)
        for (int s = r; s <= (r == 2 ? 8 : 5); ++s) {
            auto g = spec("P" + std::to_string(r) + "xP" + std::to_string(s));
            const auto truth = oracle::maximum_sets(oracle::product(oracle::path(r), oracle::path(s)));
            const auto got = count_maximum_gp_sets(g);
            CHECK(got.gp_value == static_cast<std::uint32_t>(truth.gp));
            CHECK(got.count == truth.count);
        }
}

TEST_CASE("grid count formula matches enumeration for thin grids")
{
    for (std::uint32_t r = 2; r <= 3; ++r)
        for (std::uint32_t s = r; s <= 8; ++s) {
            auto g = spec("P" + std::to_string(r) + "xP" + std::to_string(s));
            CHECK(BigInt(count_maximum_gp_sets(g).count) == grid_gp_count(r, s));
        }
    // The published closed form diverges once both sides are at least 4.
    CHECK(count_maximum_gp_sets(spec("P4xP4")).count == 36);
    CHECK(grid_gp_count(4, 4) == 28);
}

TEST_CASE("enumeration")
{
    auto g = spec("C5");
    std::vector<std::vector<VertexId>> seen;
    auto n = enumerate_gp_sets_of_size(g, 2, [&](std::span<const VertexId> s) {
        seen.emplace_back(s.begin(), s.end());
    });
    CHECK(n == 10);
    CHECK(std::is_sorted(seen.begin(), seen.end()));
    CHECK(enumerate_gp_sets_of_size(g, 3, [](auto) {}) == 5);
    CHECK(enumerate_gp_sets_of_size(g, 4, [](auto) {}) == 0);
    CHECK(enumerate_gp_sets_of_size(g, 0, [](auto) {}) == 1);
}

TEST_CASE("layer structure of maximum cylinder sets")
{
    for (std::uint32_t r = 2; r <= 5; ++r)
        for (std::uint32_t s = 4; s <= 10; ++s) {
            auto g = spec("P" + std::to_string(r) + "xC" + std::to_string(s));
            const auto gp = gp_exact(g).gp_value;
            enumerate_gp_sets_of_size(g, gp, [&](std::span<const VertexId> set) {
                std::vector<int> per_layer(r, 0);
                for (auto v : set)
                    ++per_layer[g.decode(v)[0]];
                const int most = *std::max_element(per_layer.begin(), per_layer.end());
                CHECK(most <= 2);
                if (most == 2)
                    CHECK(set.size() <= 4);
            });
        }
}

TEST_CASE("bad triple index")
{
    for (const char* text : {"P3xC4", "K3xS2", "C5xC3", "K2^4"}) {
        auto g = spec(text);
        BadTripleIndex idx(g);
        const auto n = idx.vertex_count();
        for (std::uint32_t y = 0; y < n; ++y)
            for (std::uint32_t z = 0; z < n; ++z) {
                if (y == z)
                    continue;
                const auto row = idx.between(y, z);
                const auto conf = idx.conflicts(y, z);
                for (std::uint32_t x = 0; x < n; ++x) {
                    const bool expected = x != y && x != z && is_between(g, VertexId{x}, VertexId{y}, VertexId{z});
                    const bool bit = row[x / 64] >> (x % 64) & 1;
                    CHECK(bit == expected);
                    CHECK(idx.strictly_between(x, y, z) == expected);
                    const bool c = x != y && x != z &&
                                   !is_general_position(g, std::vector<VertexId>{x, y, z});
                    const bool cbit = conf[x / 64] >> (x % 64) & 1;
                    if (x != y && x != z)
                        CHECK(cbit == c);
                }
            }
    }
}

TEST_CASE("isometric cover bounds")
{
    auto torus = spec("C6xC6");
    auto cover = torus_quadrant_cover(6, 6);
    REQUIRE(cover.size() == 4);
    auto bound = isometric_cover_bound(torus, cover);
    CHECK(bound.bound == 16);
    CHECK(bound.part_values == std::vector<std::uint32_t>{4, 4, 4, 4});
    CHECK(bound.bound >= gp_exact(torus).gp_value);

    auto grid = spec("P4xP4");
    std::vector<VertexId> all(16);
    std::iota(all.begin(), all.end(), 0);
    CHECK(isometric_cover_bound(grid, {all}).bound == 4);

    auto g = spec("P3xP4");
    std::vector<VertexId> left, right;
    for (std::uint32_t i = 0; i < 3; ++i)
        for (std::uint32_t j = 0; j < 4; ++j) {
            if (j <= 2)
                left.push_back(g.encode(VertexCoord{i, j}));
            if (j >= 1)
                right.push_back(g.encode(VertexCoord{i, j}));
        }
    auto halves = isometric_cover_bound(g, {left, right});
    CHECK(halves.bound == 8);

    auto c6 = spec("C6");
    try {
        isometric_cover_bound(c6, {{0, 1, 2, 3, 4}, {5, 0}});
        FAIL("expected NotIsometric");
    } catch (const NotIsometric& e) {
        CHECK(e.induced_distance > e.host_distance);
    }
    CHECK_THROWS_AS(isometric_cover_bound(c6, {{0, 1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(isometric_cover_bound(c6, {{0, 2}, {1, 3, 4, 5}}), std::invalid_argument);
}

TEST_CASE("induced subgraphs")
{
    auto g = spec("P3xP3");
    auto h = induced_subgraph(g, std::vector<VertexId>{0, 1, 3, 4});
    CHECK(h.vertex_count() == 4);
    CHECK(h.edge_count() == 4);
}

}
