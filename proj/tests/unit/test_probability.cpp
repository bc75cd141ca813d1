#include "doctest.h"
#include "gpcart/position.hpp"
#include "gpcart/probability.hpp"
#include "gpcart/rng.hpp"
#include "gpcart/spec.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numeric>

using namespace gpcart;

namespace {

ExactProbability frac(long n, long d) { return ExactProbability(BigInt(n), BigInt(d)); }

ExactProbability from_oracle(std::pair<std::uint64_t, std::uint64_t> c)
{
    return ExactProbability(BigInt(c.first), BigInt(c.second));
}

/// p^-n as an exact rational.
BigRational inverse_power(const ExactProbability& p, std::uint32_t n)
{
    BigRational inv = 1;
    for (std::uint32_t i = 0; i < n; ++i)
        inv *= BigRational(p.denominator(), p.numerator());
    return inv;
}

}  // namespace

TEST_SUITE("randomized") {

TEST_CASE("exact probability type")
{
    auto p = frac(6, 8);
    CHECK(p.numerator() == 3);
    CHECK(p.denominator() == 4);
    CHECK(p.to_string() == "3/4");
    CHECK(p.to_double() == doctest::Approx(0.75));
    CHECK(p.pow(2) == frac(9, 16));
    CHECK(frac(0, 5).to_string() == "0/1");
    CHECK_THROWS_AS(frac(5, 4), std::invalid_argument);
    CHECK_THROWS_AS(frac(-1, 4), std::invalid_argument);
    CHECK_THROWS_AS(frac(1, 0), std::invalid_argument);
}

TEST_CASE("p examples")
{
    CHECK(p_exact(FactorGraph::complete(2)) == frac(3, 4));
    CHECK(p_exact(FactorGraph::cycle(4)) == frac(9, 16));
    CHECK(p_exact(FactorGraph::path(3)) == frac(17, 27));
    CHECK(from_oracle(oracle::bad_triples(oracle::complete(2))) == frac(3, 4));
    CHECK(from_oracle(oracle::bad_triples(oracle::cycle(4))) == frac(9, 16));
    CHECK(from_oracle(oracle::bad_triples(oracle::path(3))) == frac(17, 27));
    CHECK(p_exact(FactorGraph::star(2)) == frac(17, 27));
}

TEST_CASE("p agrees with brute force on assorted factors")
{
    for (int n = 1; n <= 9; ++n) {
        CHECK(p_exact(FactorGraph::path(n)) == from_oracle(oracle::bad_triples(oracle::path(n))));
        CHECK(p_exact(FactorGraph::star(n)) == from_oracle(oracle::bad_triples(oracle::star(n))));
    }
}

TEST_CASE("closed forms")
{
    using K = GraphFamily::Kind;
    CHECK(p_closed_form({K::Complete, 3}) == frac(5, 9));
    CHECK(p_closed_form({K::Cycle, 5}) == frac(11, 25));
    CHECK(from_oracle(oracle::bad_triples(oracle::cycle(5))) == frac(11, 25));
    CHECK(p_closed_form({K::StarLeafRestricted, 2}) == frac(3, 4));
    CHECK_THROWS_AS(p_closed_form({K::Star, 2}), UnsupportedFamily);
    CHECK_THROWS_AS(p_closed_form({K::Complete, 1}), std::invalid_argument);
    CHECK_THROWS_AS(p_closed_form({K::Cycle, 2}), std::invalid_argument);

    for (std::uint32_t n = 2; n <= 8; ++n) {
        CHECK(p_closed_form({K::Complete, n}) == p_exact(FactorGraph::complete(n)));
        CHECK(p_closed_form({K::Complete, n}) == from_oracle(oracle::bad_triples(oracle::complete(n))));
    }
    for (std::uint32_t m = 3; m <= 12; ++m) {
        CHECK(p_closed_form({K::Cycle, m}) == p_exact(FactorGraph::cycle(m)));
        CHECK(p_closed_form({K::Cycle, m}) == from_oracle(oracle::bad_triples(oracle::cycle(m))));
    }
    for (std::uint32_t k = 2; k <= 8; ++k) {
        std::vector<std::uint32_t> leaves(k);
        std::iota(leaves.begin(), leaves.end(), 1u);
        std::vector<int> oracle_leaves(leaves.begin(), leaves.end());
        CHECK(p_closed_form({K::StarLeafRestricted, k}) == p_exact_restricted(FactorGraph::star(k), leaves));
        CHECK(p_closed_form({K::StarLeafRestricted, k}) ==
              from_oracle(oracle::bad_triples(oracle::star(k), oracle_leaves)));
    }
    CHECK(p_exact(FactorGraph::cycle(3)) == frac(5, 9));
    CHECK(p_exact(FactorGraph::complete(3)) == frac(5, 9));
}

TEST_CASE("published star formula differs from enumeration")
{
    CHECK(star_formula_as_published(2) == BigRational(19, 27));
    for (std::uint32_t k = 2; k <= 8; ++k)
        CHECK(star_formula_as_published(k) != p_exact(FactorGraph::star(k)).value());
}

TEST_CASE("probability stays below the vertex-count bound")
{
    // Equality holds for K2.
    CHECK(p_exact(FactorGraph::complete(2)).value() == BigRational(3, 4));
    std::vector<FactorGraph> graphs;
    for (std::uint32_t n = 2; n <= 9; ++n) {
        graphs.push_back(FactorGraph::path(n));
        graphs.push_back(FactorGraph::complete(n));
        graphs.push_back(FactorGraph::star(n));
    }
    for (std::uint32_t n = 3; n <= 12; ++n)
        graphs.push_back(FactorGraph::cycle(n));
    for (const auto& g : graphs) {
        const BigRational n = g.vertex_count();
        const auto p = p_exact(g).value();
        CHECK_MESSAGE(p <= 1 - (n - 1) / (n * n), g.name());
        CHECK(p < 1);
    }
}

TEST_CASE("product rule")
{
    CHECK(p_power(FactorGraph::complete(2), 2) == frac(9, 16));
    CHECK(p_power(FactorGraph::complete(2), 2) == p_exact(FactorGraph::cycle(4)));
    CHECK(p_power(FactorGraph::complete(2), 10) == ExactProbability(BigInt(59049), BigInt(1048576)));
    CHECK(p_power(FactorGraph::cycle(5), 2) == frac(121, 625));
    CHECK(from_oracle(oracle::bad_triples(oracle::product(oracle::cycle(5), oracle::cycle(5)))) == frac(121, 625));

    for (const auto& g : {FactorGraph::complete(2), FactorGraph::complete(3), FactorGraph::cycle(3),
                          FactorGraph::cycle(5), FactorGraph::path(3)}) {
        ProductGraph sq(std::vector<FactorGraph>{g, g});
        CHECK(p_power(g, 2) == p_exact_direct(sq));
        CHECK(p_power(g, 2) == p_exact(explicit_adjacency(sq)));
    }
    auto mixed = build(parse_spec("P3xC4xK2"));
    CHECK(p_exact(mixed) == p_exact_direct(mixed));
    CHECK_THROWS_AS(p_exact_direct(build(parse_spec("P30xP30xP30"))), CapExceeded);
}

TEST_CASE("choose_M")
{
    CHECK(choose_M(frac(3, 4), 10) == 5);
    CHECK(choose_M(frac(3, 4), 2) == 2);
    CHECK(choose_M(frac(1, 4), 1) == 3);
    CHECK_THROWS_AS(choose_M(frac(1, 1), 3), std::invalid_argument);
    CHECK_THROWS_AS(choose_M(frac(0, 1), 3), std::invalid_argument);

    for (auto p : {frac(3, 4), frac(5, 9), frac(11, 25), frac(17, 27), frac(1, 2), frac(99, 100)}) {
        BigInt prev = 0;
        for (std::uint32_t n = 1; n <= 40; ++n) {
            const auto m = choose_M(p, n);
            CHECK(m >= prev);
            const auto inv = inverse_power(p, n);
            CHECK(m >= 2);
            if (m > 2)
                CHECK(BigRational((m - 1) * (m - 2)) <= inv);
            CHECK(BigRational(m * (m - 1)) > inv);
            prev = m;
        }
    }
}

TEST_CASE("counter RNG")
{
    CounterRng a(0);
    CHECK(a.next() == 0xE220A8397B1DCDAFULL);
    CounterRng b(42), c(42);
    for (int i = 0; i < 100; ++i)
        CHECK(b.next() == c.next());
    CounterRng d(9);
    for (int i = 0; i < 1000; ++i)
        CHECK(d.uniform(7) < 7);
    CHECK(d.draws() >= 1000);
}

TEST_CASE("first moment construction")
{
    auto k2 = FactorGraph::complete(2);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto run = first_moment_construct(k2, 10, seed, 10);
        CHECK(run.sample_size == 5);
        ProductGraph host(std::vector<FactorGraph>(10, k2));
        CHECK(is_general_position(host, certify(host, run.output, "sample").members));
        if (run.success)
            CHECK(run.output.size() >= 3);
    }

    auto k3 = FactorGraph::complete(3);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto run = first_moment_construct(k3, 1, seed, 0);
        CHECK(run.deletions == 0);
        CHECK(run.output.size() + run.duplicates_removed == run.sample_size);
    }

    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto run = first_moment_construct(k2, 4, seed, 3);
        ProductGraph host(std::vector<FactorGraph>(4, k2));
        std::vector<VertexId> members;
        for (const auto& c : run.output)
            members.push_back(host.encode(c));
        CHECK(is_general_position(host, members));
    }
}

TEST_CASE("sampler runs are reproducible and consistent")
{
    auto c5 = FactorGraph::cycle(5);
    ProductGraph host(std::vector<FactorGraph>(4, c5));
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto a = first_moment_construct(c5, 4, seed, 5);
        auto b = first_moment_construct(c5, 4, seed, 5);
        CHECK(a.output == b.output);
        CHECK(a.samples == b.samples);
        CHECK(a.seed == b.seed);
        CHECK(a.seed >= seed);
        CHECK(a.seed - seed < a.attempts);
        CHECK(a.attempts <= 6);
        CHECK(a.samples.size() == a.sample_size);
        CHECK(a.output.size() == a.sample_size - a.duplicates_removed - a.deletions);
        CHECK(a.success == (a.output.size() >= a.target()));
        CHECK(a.deletions <= a.bad_triples);
        CHECK(std::is_sorted(a.output.begin(), a.output.end()));
        std::vector<VertexId> members;
        for (const auto& c : a.output)
            members.push_back(host.encode(c));
        CHECK(is_general_position(host, members));
    }
}

TEST_CASE("sampler deletes the smallest member of each bad triple")
{
    // Replays one run: recompute the bad triples from the samples with the
    // oracle and redo the greedy deletion independently.
    auto c5 = FactorGraph::cycle(5);
    const auto d = oracle::bfs_all(oracle::cycle(5));
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto run = first_moment_construct(c5, 4, seed, 0);
        std::vector<std::vector<std::uint32_t>> pts;
        for (const auto& c : run.samples)
            pts.push_back(c.values);
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        auto dist = [&](std::size_t a, std::size_t b) {
            int s = 0;
            for (std::size_t i = 0; i < 4; ++i)
                s += d[pts[a][i]][pts[b][i]];
            return s;
        };
        auto between = [&](std::size_t x, std::size_t y, std::size_t z) { return dist(y, z) == dist(y, x) + dist(x, z); };
        std::vector<bool> gone(pts.size(), false);
        std::uint64_t bad = 0;
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j)
                for (std::size_t k = j + 1; k < pts.size(); ++k)
                    if (between(i, j, k) || between(j, i, k) || between(k, i, j)) {
                        ++bad;
                        if (!gone[i] && !gone[j] && !gone[k])
                            gone[i] = true;
                    }
        std::vector<VertexCoord> expected;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (!gone[i])
                expected.emplace_back(pts[i]);
        CHECK(run.bad_triples == bad);
        CHECK(run.output == expected);
    }
}

TEST_CASE("growth exponent bounds")
{
    CHECK(std::abs(gp_box_lower_bound(FactorGraph::complete(2)) - (1 - 0.5 * std::log2(3.0))) < 1e-12);
    CHECK(gp_box_lower_bound(FactorGraph::complete(3)) == doctest::Approx(std::log(9.0 / 5.0) / std::log(3.0) / 2));
    CHECK(gp_box_lower_bound(FactorGraph::complete(3)) == doctest::Approx(0.26748).epsilon(1e-4));
    for (std::uint32_t n = 2; n <= 9; ++n)
        for (const auto& g : {FactorGraph::path(n), FactorGraph::complete(n), FactorGraph::star(n)}) {
            const double b = gp_box_lower_bound(g);
            CHECK(b > 0);
            CHECK(b < 1);
            CHECK(gp_box_vertex_count_bound(g.vertex_count()) <= b + 1e-12);
        }
    CHECK(gp_box_vertex_count_bound(2) == doctest::Approx(1 - 0.5 * std::log2(3.0)));
    CHECK_THROWS(gp_box_lower_bound(FactorGraph::path(1)));
}

}
