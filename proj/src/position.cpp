#include "gpcart/position.hpp"

#include <algorithm>
#include <numeric>

namespace gpcart {

namespace {

std::optional<BadTriple> triple_violation(const ProductGraph& g, VertexId a, VertexId b, VertexId c)
{
    const auto ab = g.distance(a, b);
    const auto ac = g.distance(a, c);
    const auto bc = g.distance(b, c);
    if (ac == ab + bc)
        return BadTriple{b, a, c};
    if (bc == ab + ac)
        return BadTriple{a, b, c};
    if (ab == ac + bc)
        return BadTriple{c, a, b};
    return std::nullopt;
}

void check_range(const ProductGraph& g, std::span<const VertexId> set)
{
    for (auto v : set)
        if (v >= g.total_vertices())
            throw std::out_of_range("vertex index " + std::to_string(v) + " not in " + g.name());
}

std::string describe(const ProductGraph& g, const BadTriple& t)
{
    return to_string(g.decode(t.middle)) + " lies on a geodesic between " + to_string(g.decode(t.end_a)) + " and "
           + to_string(g.decode(t.end_b));
}

}  // namespace

NotInGeneralPosition::NotInGeneralPosition(BadTriple triple, const std::string& what)
    : std::invalid_argument(what), triple_(triple)
{
}

bool is_between(const ProductGraph& g, VertexId x, VertexId y, VertexId z)
{
    return g.distance(y, z) == g.distance(y, x) + g.distance(x, z);
}

bool is_between(const ProductGraph& g, const VertexCoord& x, const VertexCoord& y, const VertexCoord& z)
{
    return g.distance(y, z) == g.distance(y, x) + g.distance(x, z);
}

std::optional<BadTriple> find_violation(const ProductGraph& g, std::span<const VertexId> set)
{
    check_range(g, set);
    const auto n = set.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                if (auto t = triple_violation(g, set[i], set[j], set[k]))
                    return t;
    return std::nullopt;
}

bool is_general_position(const ProductGraph& g, std::span<const VertexId> set)
{
    return !find_violation(g, set).has_value();
}

CharacterizationResult characterization_check(const ProductGraph& g, std::span<const VertexId> set)
{
    check_range(g, set);
    CharacterizationResult result;
    const auto n = set.size();

    // union-find over the induced subgraph
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t a) {
        while (parent[a] != a)
            a = parent[a] = parent[parent[a]];
        return a;
    };
    std::vector<std::vector<Distance>> d(n, std::vector<Distance>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            d[i][j] = d[j][i] = g.distance(set[i], set[j]);
            if (d[i][j] == 1)
                parent[find(i)] = find(j);
        }

    std::vector<std::size_t> part_of(n);
    std::vector<std::vector<std::size_t>> parts;
    {
        std::vector<std::size_t> label(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto root = find(i);
            if (label[root] == n) {
                label[root] = parts.size();
                parts.emplace_back();
            }
            part_of[i] = label[root];
            parts[label[root]].push_back(i);
        }
    }

    for (const auto& part : parts)
        for (std::size_t a = 0; a < part.size(); ++a)
            for (std::size_t b = a + 1; b < part.size(); ++b)
                if (d[part[a]][part[b]] != 1) {
                    result.reason = "induced component containing " + to_string(g.decode(set[part[a]]))
                                    + " is not complete";
                    return result;
                }

    const auto p = parts.size();
    std::vector<std::vector<Distance>> pd(p, std::vector<Distance>(p, 0));
    for (std::size_t a = 0; a < p; ++a)
        for (std::size_t b = a + 1; b < p; ++b) {
            const auto ref = d[parts[a].front()][parts[b].front()];
            for (auto u : parts[a])
                for (auto v : parts[b])
                    if (d[u][v] != ref) {
                        result.reason = "partition is not distance-constant: d" + to_string(g.decode(set[u]))
                                        + to_string(g.decode(set[v])) + " = " + std::to_string(d[u][v])
                                        + " but another pair of the same parts has distance "
                                        + std::to_string(ref);
                        return result;
                    }
            pd[a][b] = pd[b][a] = ref;
        }

    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j)
            for (std::size_t k = 0; k < p; ++k) {
                if (i == j || j == k || i == k)
                    continue;
                if (pd[i][k] == pd[i][j] + pd[j][k]) {
                    result.reason = "partition is not intransitive: part " + std::to_string(j)
                                    + " lies between parts " + std::to_string(i) + " and " + std::to_string(k);
                    return result;
                }
            }

    PartitionCertificate cert;
    for (const auto& part : parts) {
        std::vector<VertexId> members;
        for (auto i : part)
            members.push_back(set[i]);
        cert.parts.push_back(std::move(members));
    }
    cert.part_distances = std::move(pd);
    result.general_position = true;
    result.certificate = std::move(cert);
    return result;
}

std::vector<VertexId> forbidden_set(const ProductGraph& g, std::span<const VertexId> x)
{
    if (auto t = find_violation(g, x))
        throw NotInGeneralPosition(*t, "forbidden_set needs a general position set: " + describe(g, *t));
    std::vector<VertexId> sorted(x.begin(), x.end());
    std::sort(sorted.begin(), sorted.end());

    std::vector<VertexId> out;
    for (VertexId u = 0; u < g.total_vertices(); ++u) {
        if (std::binary_search(sorted.begin(), sorted.end(), u))
            continue;
        bool forbidden = false;
        for (std::size_t i = 0; i < sorted.size() && !forbidden; ++i)
            for (std::size_t j = i + 1; j < sorted.size() && !forbidden; ++j)
                forbidden = triple_violation(g, sorted[i], sorted[j], u).has_value();
        if (forbidden)
            out.push_back(u);
    }
    return out;
}

bool independence_check(const ProductGraph& g, std::span<const VertexId> set)
{
    check_range(g, set);
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j)
            if (g.distance(set[i], set[j]) == 1)
                return false;
    return true;
}

std::vector<VertexCoord> GpSet::coords() const
{
    std::vector<VertexCoord> out;
    out.reserve(members.size());
    for (auto v : members)
        out.push_back(host.decode(v));
    return out;
}

GpSet certify(ProductGraph host, std::vector<VertexId> members, std::string provenance)
{
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (auto t = find_violation(host, members))
        throw NotInGeneralPosition(*t, "not in general position: " + describe(host, *t));
    return GpSet{std::move(host), std::move(members), std::move(provenance)};
}

GpSet certify(ProductGraph host, const std::vector<VertexCoord>& members, std::string provenance)
{
    std::vector<VertexId> ids;
    ids.reserve(members.size());
    for (const auto& c : members)
        ids.push_back(host.encode(c));
    return certify(std::move(host), std::move(ids), std::move(provenance));
}

}  // namespace gpcart
