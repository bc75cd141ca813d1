#pragma once

#include "gpcart/bigint.hpp"
#include "gpcart/graph.hpp"
#include "gpcart/spec.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gpcart {

/// A reduced fraction in [0, 1].
class ExactProbability {
public:
    ExactProbability(BigInt numerator, BigInt denominator);
    explicit ExactProbability(const BigRational& value);

    const BigInt& numerator() const noexcept { return num_; }
    const BigInt& denominator() const noexcept { return den_; }
    BigRational value() const { return BigRational(num_, den_); }
    double to_double() const;
    /// "num/den"
    std::string to_string() const;

    ExactProbability pow(std::uint32_t exponent) const;

    bool operator==(const ExactProbability&) const = default;

private:
    BigInt num_;
    BigInt den_;
};

/// Probability that a uniform ordered triple (x, y, z) of vertices has
/// d(y,z) = d(y,x) + d(x,z). Triples with x = y or x = z count; y = z with
/// x != y never does.
ExactProbability p_exact(const FactorGraph& g);

/// Same probability restricted to triples drawn from `sample_space`.
ExactProbability p_exact_restricted(const FactorGraph& g, std::span<const std::uint32_t> sample_space);

/// Product of the factor probabilities: a triple of a product is bad exactly
/// when it is bad in every coordinate.
ExactProbability p_exact(const ProductGraph& g);

/// Product rule applied to a parsed spec without building the product, so
/// large powers such as K2^1000 are cheap.
ExactProbability p_exact(const GraphSpec& spec);
inline constexpr std::uint64_t kDirectProbabilityCap = 10'000;

/// Direct triple count on the product using additive distances.
ExactProbability p_exact_direct(const ProductGraph& g, std::uint64_t vertex_cap = kDirectProbabilityCap);

struct GraphFamily {
    enum class Kind { Complete, Cycle, Star, StarLeafRestricted };
    Kind kind;
    std::uint32_t n;
};

class UnsupportedFamily : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Closed forms for K_n, C_m and the leaf-restricted star. The unrestricted
/// star is rejected: its published closed form disagrees with enumeration
/// (see star_formula_as_published).
ExactProbability p_closed_form(const GraphFamily& family);

/// 1/(k+1) + (k/(k+1)) (2k+1)/(k+1)^2, the published star value. Kept for
/// reporting only; enumeration gives 17/27 for k = 2 where this gives 19/27.
BigRational star_formula_as_published(std::uint32_t k);

ExactProbability p_power(const FactorGraph& g, std::uint32_t n);

/// Largest M with (M-1)(M-2) <= p^-n, at least 2. M = 2 means only the
/// trivial two-vertex guarantee survives.
BigInt choose_M(const ExactProbability& p, std::uint32_t n);

struct SampleRun {
    std::uint64_t seed = 0;
    std::uint64_t sample_size = 0;
    std::vector<VertexCoord> samples;
    std::uint64_t duplicates_removed = 0;
    std::uint64_t bad_triples = 0;
    std::uint64_t deletions = 0;
    std::vector<VertexCoord> output;
    bool success = false;
    std::uint32_t attempts = 0;

    /// ceil(M / 2)
    std::uint64_t target() const noexcept { return (sample_size + 1) / 2; }
};

inline constexpr std::uint64_t kMaxSampleSize = 4096;

/// Samples M = choose_M(p(g), n) vertices of the n-th Cartesian power of g,
/// deduplicates them, deletes the smallest vertex of every bad triple not
/// already hit, and retries with seed + 1 (up to `retries` more times) while
/// the result is smaller than ceil(M/2). Returns the first successful run, or
/// the largest output seen. The output is always in general position.
SampleRun first_moment_construct(const FactorGraph& g, std::uint32_t n, std::uint64_t seed, std::uint32_t retries,
                                 std::uint64_t max_sample = kMaxSampleSize);

/// -(1/2) ln p(G) / ln |V(G)|, a lower bound on the growth exponent of gp
/// over Cartesian powers of G.
double gp_box_lower_bound(const FactorGraph& g);

/// 1 - (1/2) log_n (n^2 - n + 1), the bound implied by p(G) <= 1 - (n-1)/n^2.
double gp_box_vertex_count_bound(std::uint64_t n);

}  // namespace gpcart
