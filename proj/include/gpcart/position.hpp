#pragma once

#include "gpcart/graph.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gpcart {

/// `middle` lies on a geodesic between `end_a` and `end_b`.
struct BadTriple {
    VertexId middle;
    VertexId end_a;
    VertexId end_b;

    bool operator==(const BadTriple&) const = default;
};

class NotInGeneralPosition : public std::invalid_argument {
public:
    explicit NotInGeneralPosition(BadTriple triple, const std::string& what);
    const BadTriple& triple() const noexcept { return triple_; }

private:
    BadTriple triple_;
};

/// True iff d(y,z) = d(y,x) + d(x,z). Holds trivially when x equals y or z.
bool is_between(const ProductGraph& g, VertexId x, VertexId y, VertexId z);
bool is_between(const ProductGraph& g, const VertexCoord& x, const VertexCoord& y, const VertexCoord& z);

/// First violating triple of distinct members, scanning 3-subsets i<j<k in
/// lexicographic order of positions in `set`.
std::optional<BadTriple> find_violation(const ProductGraph& g, std::span<const VertexId> set);

bool is_general_position(const ProductGraph& g, std::span<const VertexId> set);

/// Partition of a set into induced cliques with constant inter-part distances.
struct PartitionCertificate {
    std::vector<std::vector<VertexId>> parts;
    /// part_distances[i][j]; zero on the diagonal.
    std::vector<std::vector<Distance>> part_distances;
};

struct CharacterizationResult {
    bool general_position = false;
    std::optional<PartitionCertificate> certificate;
    /// Why the test failed, empty on success.
    std::string reason;
};

/// Decides general position through the induced components of the set: every
/// component must be a clique, and the component partition must be
/// distance-constant and intransitive. Agrees with is_general_position.
CharacterizationResult characterization_check(const ProductGraph& g, std::span<const VertexId> set);

/// Vertices u outside X such that X + u is not in general position.
/// Throws NotInGeneralPosition if X itself is not.
std::vector<VertexId> forbidden_set(const ProductGraph& g, std::span<const VertexId> x);

/// No two members adjacent.
bool independence_check(const ProductGraph& g, std::span<const VertexId> set);

/// A vertex set on a host graph, sorted and duplicate free.
struct GpSet {
    ProductGraph host;
    std::vector<VertexId> members;
    /// Where the set came from, e.g. "construction" or "solver".
    std::string provenance;

    std::size_t size() const noexcept { return members.size(); }
    std::vector<VertexCoord> coords() const;
};

/// Sorts and deduplicates `members`, then checks general position. Throws
/// NotInGeneralPosition on failure, std::out_of_range on bad ids.
GpSet certify(ProductGraph host, std::vector<VertexId> members, std::string provenance);
GpSet certify(ProductGraph host, const std::vector<VertexCoord>& members, std::string provenance);

}  // namespace gpcart
