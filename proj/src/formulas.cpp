#include "gpcart/formulas.hpp"

#include "gpcart/solver.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace gpcart {

namespace {

BigInt exact_div(const BigInt& num, unsigned den)
{
    if (num % den != 0)
        throw std::logic_error("closed form division by " + std::to_string(den) + " is not exact");
    return num / den;
}

ProductGraph cylinder(std::uint32_t r, std::uint32_t s)
{
    return ProductGraph({FactorGraph::path(r), FactorGraph::cycle(s)});
}

ProductGraph torus(std::uint32_t r, std::uint32_t s)
{
    return ProductGraph({FactorGraph::cycle(r), FactorGraph::cycle(s)});
}

}  // namespace

BigInt grid_gp_count(std::uint32_t r, std::uint32_t s)
{
    if (r > s)
        std::swap(r, s);
    if (r < 2)
        throw std::invalid_argument("grid_gp_count needs both sides at least 2");
    const BigInt R = r;
    const BigInt S = s;
    if (r == 2 && s == 2)
        return 6;
    if (r == 2)
        return exact_div(S * (S - 1) * (S - 2), 3);
    return exact_div(R * S * (R - 1) * (R - 2) * (S - 1) * (S - 2) * (R * (S - 3) - S + 7), 144);
}

std::uint32_t cylinder_gp_value(std::uint32_t r, std::uint32_t s)
{
    if (r < 2 || s < 3)
        throw std::invalid_argument("cylinder needs r >= 2 and s >= 3");
    if (r == 2 && s == 3)
        return 3;
    if (r >= 5 && (s == 7 || s >= 9))
        return 5;
    return 4;
}

TorusBounds torus_gp_bounds(std::uint32_t r, std::uint32_t s)
{
    if (r < 3 || s < 3)
        throw std::invalid_argument("torus needs both cycles of length at least 3");
    const auto big = std::max(r, s);
    const auto small = std::min(r, s);
    TorusBounds out;
    if (small != 4 && big >= 6)
        out.lower = 6;
    return out;
}

std::uint64_t hamming_lower_bound(std::span<const std::uint32_t> sizes)
{
    if (sizes.size() < 2)
        throw std::invalid_argument("hamming bound needs at least two factors");
    std::uint64_t sum = 0;
    for (auto n : sizes) {
        if (n < 2)
            throw std::invalid_argument("hamming bound needs every factor of size at least 2");
        sum += n;
    }
    return sum - sizes.size();
}

GpSet cycle_gp_triple(std::uint32_t s)
{
    if (s < 3)
        throw std::invalid_argument("cycle needs at least 3 vertices");
    if (s == 4)
        throw std::invalid_argument("C4 has no general position set of size 3");
    return certify(ProductGraph(FactorGraph::cycle(s)), std::vector<VertexId>{0, s / 3, 2 * s / 3}, "construction");
}

GpSet cylinder_witness(std::uint32_t r, std::uint32_t s)
{
    const auto value = cylinder_gp_value(r, s);
    auto host = cylinder(r, s);
    if (value == 3) {
        auto found = gp_exact(host);
        if (found.gp_value != 3)
            throw std::logic_error("solver disagrees with the cylinder table at (2,3)");
        return found.witness;
    }
    if (value == 5) {
        std::vector<VertexCoord> set;
        if (s == 7)
            set = {{0, 0}, {1, 2}, {2, 4}, {3, 6}, {4, 1}};
        else
            set = {{0, 1}, {1, 4}, {2, s / 2 + 2}, {3, 0}, {4, 3}};
        return certify(std::move(host), set, "construction");
    }
    if (s == 3)
        return certify(std::move(host), std::vector<VertexCoord>{{0, 1}, {1, 0}, {1, 2}, {2, 1}}, "construction");
    return certify(std::move(host), std::vector<VertexCoord>{{0, 0}, {1, 1}, {0, s / 2}, {1, s / 2 + 1}},
                   "construction");
}

GpSet torus_witness6(std::uint32_t r, std::uint32_t s)
{
    const bool swapped = r < s;
    const auto big = std::max(r, s);
    const auto small = std::min(r, s);
    if (small < 3)
        throw std::invalid_argument("torus needs both cycles of length at least 3");
    if (small == 4)
        throw std::invalid_argument("six-vertex torus construction excludes C4");
    if (big < 6)
        throw std::invalid_argument("six-vertex torus construction needs a cycle of length at least 6");

    const auto half = big / 2;
    const std::uint32_t a = big / 6;
    const std::uint32_t b = 2 * big / 6;
    const std::uint32_t y1 = small / 3;
    const std::uint32_t y2 = 2 * small / 3;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pts = {
        {0, 0}, {half, 0}, {a, y1}, {a + half, y1}, {b, y2}, {b + half, y2},
    };
    std::vector<VertexCoord> set;
    for (auto [x, y] : pts)
        set.push_back(swapped ? VertexCoord{y, x % big} : VertexCoord{x % big, y});
    return certify(torus(r, s), set, "construction");
}

GpSet torus_witness7()
{
    return certify(torus(7, 7),
                   std::vector<VertexCoord>{{0, 1}, {1, 4}, {2, 0}, {3, 3}, {4, 6}, {5, 2}, {6, 5}},
                   "construction");
}

}  // namespace gpcart

namespace gpcart {

std::vector<std::vector<VertexId>> torus_quadrant_cover(std::uint32_t r, std::uint32_t s)
{
    if (r < 3 || s < 3)
        throw std::invalid_argument("torus needs both cycles of length at least 3");
    const auto host = torus(r, s);
    const auto hr = r / 2;
    const auto hs = s / 2;
    auto block = [&](std::uint32_t row0, std::uint32_t col0) {
        std::vector<VertexId> out;
        for (std::uint32_t i = 0; i <= hr; ++i)
            for (std::uint32_t j = 0; j <= hs; ++j)
                out.push_back(host.encode(VertexCoord{(row0 + i) % r, (col0 + j) % s}));
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };
    return {block(0, 0), block(hr, 0), block(hr, hs), block(0, hs)};
}

}  // namespace gpcart
