#pragma once

#include "gpcart/graph.hpp"
#include "gpcart/position.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace gpcart {

/// Precomputed betweenness for every unordered vertex pair of a host graph.
///
/// Rows are bitsets over the vertex set. between(y, z) holds the vertices
/// strictly inside some y,z-geodesic; conflicts(a, b) holds every c such that
/// {a, b, c} is not in general position.
class BadTripleIndex {
public:
    static constexpr std::uint32_t kMaxVertices = 256;

    explicit BadTripleIndex(const ProductGraph& g);

    std::uint32_t vertex_count() const noexcept { return n_; }
    std::uint32_t words() const noexcept { return words_; }

    std::span<const std::uint64_t> between(std::uint32_t y, std::uint32_t z) const { return row(between_, y, z); }
    std::span<const std::uint64_t> conflicts(std::uint32_t a, std::uint32_t b) const { return row(conflicts_, a, b); }

    /// x is strictly between y and z (x differs from both).
    bool strictly_between(std::uint32_t x, std::uint32_t y, std::uint32_t z) const;

private:
    std::span<const std::uint64_t> row(const std::vector<std::uint64_t>& bits, std::uint32_t a, std::uint32_t b) const;

    std::uint32_t n_;
    std::uint32_t words_;
    std::vector<std::uint64_t> between_;
    std::vector<std::uint64_t> conflicts_;
};

struct SearchBudget {
    std::optional<std::uint64_t> node_limit;
    std::optional<std::chrono::milliseconds> time_limit;
};

struct SearchOptions {
    unsigned threads = 1;
    SearchBudget budget;
    std::uint64_t vertex_cap = 200;
};

enum class SearchStatus { Exact, BudgetExhausted };

struct SearchResult {
    SearchStatus status = SearchStatus::Exact;
    /// Exact gp(G) when status is Exact, otherwise the best size found.
    std::uint32_t gp_value = 0;
    GpSet witness;
    std::uint64_t nodes_explored = 0;
    std::chrono::nanoseconds elapsed{0};
    std::optional<std::uint64_t> count_of_maximum_sets;

    bool exact() const noexcept { return status == SearchStatus::Exact; }
};

/// Exact general position number by depth-first search over vertices in flat
/// index order. The witness is the lexicographically first maximum set, for
/// any thread count.
SearchResult gp_exact(const ProductGraph& g, const SearchOptions& options = {});

struct MaximumSetCount {
    std::uint32_t gp_value;
    std::uint64_t count;
};

inline constexpr std::uint64_t kDefaultCountCap = 64;

MaximumSetCount count_maximum_gp_sets(const ProductGraph& g, std::uint64_t vertex_cap = kDefaultCountCap);

/// Calls `visit` for every general position set of exactly `size` vertices,
/// in lexicographic order. Returns the number visited.
std::uint64_t enumerate_gp_sets_of_size(const ProductGraph& g, std::uint32_t size,
                                        const std::function<void(std::span<const VertexId>)>& visit,
                                        std::uint64_t vertex_cap = kDefaultCountCap);

class NotIsometric : public std::invalid_argument {
public:
    NotIsometric(VertexId u, VertexId v, Distance induced, Distance host, const std::string& what);

    VertexId u, v;
    Distance induced_distance, host_distance;
};

struct CoverBound {
    std::uint64_t bound = 0;
    std::vector<std::uint32_t> part_values;
};

/// Upper bound on gp(g) from an isometric cover: checks that every set induces
/// a connected isometric subgraph and that the sets cover V(g), then sums the
/// exact gp of each induced subgraph.
CoverBound isometric_cover_bound(const ProductGraph& g, const std::vector<std::vector<VertexId>>& cover,
                                 const SearchOptions& options = {});

/// Subgraph of g induced by `members` (sorted), relabelled 0..k-1 in order.
FactorGraph induced_subgraph(const ProductGraph& g, std::span<const VertexId> members);

}  // namespace gpcart
