#pragma once

#include "gpcart/bigint.hpp"
#include "gpcart/position.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>

namespace gpcart {

/// Number of maximum general position sets of the r x s grid P_r x P_s
/// (arguments are swapped if r > s). Requires min(r, s) >= 2.
BigInt grid_gp_count(std::uint32_t r, std::uint32_t s);

/// gp(P_r x C_s): 3 for (2,3), 5 when r >= 5 and s = 7 or s >= 9, else 4.
std::uint32_t cylinder_gp_value(std::uint32_t r, std::uint32_t s);

struct TorusBounds {
    /// 6 when the larger cycle has at least 6 vertices and the smaller one is
    /// not C_4; empty when no lower bound is claimed.
    std::optional<std::uint32_t> lower;
    std::uint32_t upper = 7;
};

TorusBounds torus_gp_bounds(std::uint32_t r, std::uint32_t s);

/// n_1 + ... + n_k - k, a lower bound on gp of K_{n_1} x ... x K_{n_k}.
std::uint64_t hamming_lower_bound(std::span<const std::uint32_t> sizes);

/// {0, floor(s/3), floor(2s/3)} on C_s; s = 4 has no general position triple.
GpSet cycle_gp_triple(std::uint32_t s);

/// A maximum general position set of P_r x C_s. For (2,3) the set comes from
/// the exact solver and is labelled "solver".
GpSet cylinder_witness(std::uint32_t r, std::uint32_t s);

/// Six-vertex general position set of C_r x C_s. Coordinates follow the
/// caller's factor order.
GpSet torus_witness6(std::uint32_t r, std::uint32_t s);

/// Seven-vertex general position set of C_7 x C_7.
GpSet torus_witness7();

/// A closed-form statement with the checked parameters it applies to.
struct ValueClaim {
    std::string graph;
    std::string quantity;
    std::string source;
};

}  // namespace gpcart

namespace gpcart {

/// The four grid quadrants of C_r x C_s around w = (floor(r/2), floor(s/2)):
/// each is a P_{floor(r/2)+1} x P_{floor(s/2)+1} block containing w, and
/// together they cover the torus.
std::vector<std::vector<VertexId>> torus_quadrant_cover(std::uint32_t r, std::uint32_t s);

}  // namespace gpcart
