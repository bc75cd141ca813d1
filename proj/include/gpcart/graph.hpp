#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gpcart {

using VertexId = std::uint64_t;
using Distance = std::uint32_t;

/// Thrown when a requested graph or computation exceeds a configured vertex cap.
class CapExceeded : public std::runtime_error {
public:
    CapExceeded(std::uint64_t requested, std::uint64_t cap);

    std::uint64_t requested() const noexcept { return requested_; }
    std::uint64_t cap() const noexcept { return cap_; }

private:
    std::uint64_t requested_;
    std::uint64_t cap_;
};

enum class FactorKind { Path, Cycle, Complete, Star, Explicit };

/// A connected simple graph on vertices [n]_0.
///
/// Path n and Cycle n list their vertices in path/cyclic order. Star k has
/// center 0 and leaves 1..k. The all-pairs distance table is computed by BFS on
/// first use and shared between copies.
class FactorGraph {
public:
    static FactorGraph path(std::uint32_t n);
    static FactorGraph cycle(std::uint32_t n);
    static FactorGraph complete(std::uint32_t n);
    static FactorGraph star(std::uint32_t leaves);
    /// Validates symmetry, absence of loops and connectivity; sorts neighbor lists.
    static FactorGraph from_adjacency(std::vector<std::vector<std::uint32_t>> adjacency);

    FactorKind kind() const noexcept { return kind_; }
    /// n for P/C/K, k (leaf count) for S, vertex count for explicit graphs.
    std::uint32_t parameter() const noexcept { return parameter_; }
    std::uint32_t vertex_count() const noexcept { return static_cast<std::uint32_t>(adjacency_.size()); }
    std::uint64_t edge_count() const noexcept;

    std::span<const std::uint32_t> neighbors(std::uint32_t v) const { return adjacency_.at(v); }
    bool adjacent(std::uint32_t u, std::uint32_t v) const;

    Distance distance(std::uint32_t u, std::uint32_t v) const;
    /// Row-major n*n distance table.
    std::span<const Distance> distances() const;

    /// "P5", "C7", "K3", "S2" or "G<n>" for explicit graphs.
    std::string name() const;

private:
    struct DistanceCache {
        std::once_flag once;
        std::vector<Distance> table;
    };

    FactorGraph(FactorKind kind, std::uint32_t parameter, std::vector<std::vector<std::uint32_t>> adjacency);

    FactorKind kind_;
    std::uint32_t parameter_;
    std::vector<std::vector<std::uint32_t>> adjacency_;
    std::shared_ptr<DistanceCache> cache_;
};

/// A vertex of a product graph as one vertex index per factor.
struct VertexCoord {
    std::vector<std::uint32_t> values;

    VertexCoord() = default;
    VertexCoord(std::initializer_list<std::uint32_t> init) : values(init) {}
    explicit VertexCoord(std::vector<std::uint32_t> v) : values(std::move(v)) {}

    std::size_t size() const noexcept { return values.size(); }
    std::uint32_t operator[](std::size_t i) const { return values[i]; }

    auto operator<=>(const VertexCoord&) const = default;
    bool operator==(const VertexCoord&) const = default;
};

/// "(0,1,2)"
std::string to_string(const VertexCoord& c);

/// Cartesian product of an ordered, nonempty list of factors.
///
/// Vertices are numbered by a mixed-radix encoding with the last factor varying
/// fastest. Distances are sums of factor distances and are never tabulated for
/// the product itself.
class ProductGraph {
public:
    explicit ProductGraph(std::vector<FactorGraph> factors);
    explicit ProductGraph(FactorGraph factor);

    std::size_t factor_count() const noexcept { return factors_.size(); }
    const FactorGraph& factor(std::size_t i) const { return factors_.at(i); }
    const std::vector<FactorGraph>& factors() const noexcept { return factors_; }
    std::uint64_t total_vertices() const noexcept { return total_; }

    VertexId encode(const VertexCoord& c) const;
    VertexCoord decode(VertexId v) const;
    bool contains(const VertexCoord& c) const noexcept;

    Distance distance(const VertexCoord& u, const VertexCoord& v) const;
    Distance distance(VertexId u, VertexId v) const;
    bool adjacent(VertexId u, VertexId v) const;

    /// "P5xC7"; repeated factors are not folded into powers.
    std::string name() const;

private:
    std::vector<FactorGraph> factors_;
    std::uint64_t total_ = 1;
};

/// Materializes the product as an explicit graph on flat indices.
FactorGraph explicit_adjacency(const ProductGraph& g, std::uint64_t cap = 1'000'000);

}  // namespace gpcart
