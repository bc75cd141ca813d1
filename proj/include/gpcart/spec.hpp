#pragma once

#include "gpcart/graph.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gpcart {

/// Parse failure; offset is the byte position in the source text.
class SpecError : public std::invalid_argument {
public:
    SpecError(const std::string& message, std::size_t offset);

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

struct FactorSpec {
    char family;  // one of P C K S Q
    std::uint32_t size;

    bool operator==(const FactorSpec&) const = default;
};

/// Parsed graph-spec text.
///
///   spec    := product | power
///   product := factor ('x' factor)*
///   power   := factor '^' uint
///   factor  := ('P'|'C'|'K'|'S'|'Q') uint
///
/// Q n stands for K2^n. No whitespace is accepted.
struct GraphSpec {
    std::vector<FactorSpec> factors;
    std::uint32_t exponent = 1;
    bool is_power = false;
    std::string source;

    /// Canonical text: factors joined by 'x', or "<factor>^<exponent>".
    std::string format() const;
};

GraphSpec parse_spec(std::string_view text);

/// Expands Q factors and powers into the factor list.
std::vector<FactorGraph> expand_factors(const GraphSpec& spec);

/// Default resource guard for build().
inline constexpr std::uint64_t kDefaultBuildCap = 1'000'000;

ProductGraph build(const GraphSpec& spec, std::uint64_t vertex_cap = kDefaultBuildCap);

/// Number of vertices build() would produce, saturating at UINT64_MAX.
std::uint64_t spec_vertex_count(const GraphSpec& spec);

}  // namespace gpcart
