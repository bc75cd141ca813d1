#include "gpcart/graph.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <sstream>

namespace gpcart {

namespace {

constexpr Distance kUnreached = std::numeric_limits<Distance>::max();

std::vector<Distance> bfs_from(const std::vector<std::vector<std::uint32_t>>& adj, std::uint32_t source)
{
    std::vector<Distance> dist(adj.size(), kUnreached);
    std::queue<std::uint32_t> frontier;
    dist[source] = 0;
    frontier.push(source);
    while (!frontier.empty()) {
        auto u = frontier.front();
        frontier.pop();
        for (auto w : adj[u]) {
            if (dist[w] == kUnreached) {
                dist[w] = dist[u] + 1;
                frontier.push(w);
            }
        }
    }
    return dist;
}

}  // namespace

CapExceeded::CapExceeded(std::uint64_t requested, std::uint64_t cap)
    : std::runtime_error("graph has " + std::to_string(requested) + " vertices, exceeding the cap of "
                         + std::to_string(cap)),
      requested_(requested), cap_(cap)
{
}

FactorGraph::FactorGraph(FactorKind kind, std::uint32_t parameter, std::vector<std::vector<std::uint32_t>> adjacency)
    : kind_(kind), parameter_(parameter), adjacency_(std::move(adjacency)), cache_(std::make_shared<DistanceCache>())
{
}

FactorGraph FactorGraph::path(std::uint32_t n)
{
    if (n < 1)
        throw std::invalid_argument("path needs at least 1 vertex");
    std::vector<std::vector<std::uint32_t>> adj(n);
    for (std::uint32_t i = 0; i + 1 < n; ++i) {
        adj[i].push_back(i + 1);
        adj[i + 1].push_back(i);
    }
    for (auto& row : adj)
        std::sort(row.begin(), row.end());
    return FactorGraph(FactorKind::Path, n, std::move(adj));
}

FactorGraph FactorGraph::cycle(std::uint32_t n)
{
    if (n < 3)
        throw std::invalid_argument("cycle needs at least 3 vertices");
    std::vector<std::vector<std::uint32_t>> adj(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        adj[i].push_back((i + 1) % n);
        adj[i].push_back((i + n - 1) % n);
        std::sort(adj[i].begin(), adj[i].end());
    }
    return FactorGraph(FactorKind::Cycle, n, std::move(adj));
}

FactorGraph FactorGraph::complete(std::uint32_t n)
{
    if (n < 1)
        throw std::invalid_argument("complete graph needs at least 1 vertex");
    std::vector<std::vector<std::uint32_t>> adj(n);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j)
            if (i != j)
                adj[i].push_back(j);
    return FactorGraph(FactorKind::Complete, n, std::move(adj));
}

FactorGraph FactorGraph::star(std::uint32_t leaves)
{
    if (leaves < 1)
        throw std::invalid_argument("star needs at least 1 leaf");
    std::vector<std::vector<std::uint32_t>> adj(leaves + 1);
    for (std::uint32_t i = 1; i <= leaves; ++i) {
        adj[0].push_back(i);
        adj[i].push_back(0);
    }
    return FactorGraph(FactorKind::Star, leaves, std::move(adj));
}

FactorGraph FactorGraph::from_adjacency(std::vector<std::vector<std::uint32_t>> adjacency)
{
    const auto n = adjacency.size();
    if (n == 0)
        throw std::invalid_argument("graph needs at least 1 vertex");
    if (n > std::numeric_limits<std::uint32_t>::max())
        throw std::invalid_argument("graph too large");
    for (std::size_t u = 0; u < n; ++u) {
        auto& row = adjacency[u];
        std::sort(row.begin(), row.end());
        if (std::adjacent_find(row.begin(), row.end()) != row.end())
            throw std::invalid_argument("duplicate edge at vertex " + std::to_string(u));
        for (auto w : row) {
            if (w >= n)
                throw std::invalid_argument("neighbor out of range at vertex " + std::to_string(u));
            if (w == u)
                throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
        }
    }
    for (std::size_t u = 0; u < n; ++u)
        for (auto w : adjacency[u])
            if (!std::binary_search(adjacency[w].begin(), adjacency[w].end(), static_cast<std::uint32_t>(u)))
                throw std::invalid_argument("adjacency is not symmetric at edge " + std::to_string(u) + "-"
                                            + std::to_string(w));
    auto reach = bfs_from(adjacency, 0);
    if (std::find(reach.begin(), reach.end(), kUnreached) != reach.end())
        throw std::invalid_argument("graph is not connected");
    const auto count = static_cast<std::uint32_t>(n);
    return FactorGraph(FactorKind::Explicit, count, std::move(adjacency));
}

std::uint64_t FactorGraph::edge_count() const noexcept
{
    std::uint64_t degree_sum = 0;
    for (const auto& row : adjacency_)
        degree_sum += row.size();
    return degree_sum / 2;
}

bool FactorGraph::adjacent(std::uint32_t u, std::uint32_t v) const
{
    const auto& row = adjacency_.at(u);
    return std::binary_search(row.begin(), row.end(), v);
}

std::span<const Distance> FactorGraph::distances() const
{
    std::call_once(cache_->once, [this] {
        const auto n = adjacency_.size();
        std::vector<Distance> table;
        table.reserve(n * n);
        for (std::uint32_t s = 0; s < n; ++s) {
            auto row = bfs_from(adjacency_, s);
            table.insert(table.end(), row.begin(), row.end());
        }
        cache_->table = std::move(table);
    });
    return cache_->table;
}

Distance FactorGraph::distance(std::uint32_t u, std::uint32_t v) const
{
    const auto n = vertex_count();
    if (u >= n || v >= n)
        throw std::out_of_range("vertex out of range");
    return distances()[static_cast<std::size_t>(u) * n + v];
}

std::string FactorGraph::name() const
{
    switch (kind_) {
    case FactorKind::Path: return "P" + std::to_string(parameter_);
    case FactorKind::Cycle: return "C" + std::to_string(parameter_);
    case FactorKind::Complete: return "K" + std::to_string(parameter_);
    case FactorKind::Star: return "S" + std::to_string(parameter_);
    case FactorKind::Explicit: return "G" + std::to_string(parameter_);
    }
    return "?";
}

std::string to_string(const VertexCoord& c)
{
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i)
            out << ',';
        out << c[i];
    }
    out << ')';
    return out.str();
}

ProductGraph::ProductGraph(std::vector<FactorGraph> factors) : factors_(std::move(factors))
{
    if (factors_.empty())
        throw std::invalid_argument("product needs at least one factor");
    for (const auto& f : factors_) {
        const auto n = f.vertex_count();
        if (total_ > std::numeric_limits<std::uint64_t>::max() / 2 / n)
            throw std::overflow_error("product vertex count overflows");
        total_ *= n;
    }
}

ProductGraph::ProductGraph(FactorGraph factor) : ProductGraph(std::vector<FactorGraph>{std::move(factor)}) {}

bool ProductGraph::contains(const VertexCoord& c) const noexcept
{
    if (c.size() != factors_.size())
        return false;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] >= factors_[i].vertex_count())
            return false;
    return true;
}

VertexId ProductGraph::encode(const VertexCoord& c) const
{
    if (!contains(c))
        throw std::out_of_range("coordinate " + to_string(c) + " not in " + name());
    VertexId v = 0;
    for (std::size_t i = 0; i < c.size(); ++i)
        v = v * factors_[i].vertex_count() + c[i];
    return v;
}

VertexCoord ProductGraph::decode(VertexId v) const
{
    if (v >= total_)
        throw std::out_of_range("vertex index " + std::to_string(v) + " not in " + name());
    std::vector<std::uint32_t> c(factors_.size());
    for (std::size_t i = factors_.size(); i-- > 0;) {
        const auto n = factors_[i].vertex_count();
        c[i] = static_cast<std::uint32_t>(v % n);
        v /= n;
    }
    return VertexCoord(std::move(c));
}

Distance ProductGraph::distance(const VertexCoord& u, const VertexCoord& v) const
{
    if (!contains(u) || !contains(v))
        throw std::out_of_range("coordinate not in " + name());
    Distance d = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i)
        d += factors_[i].distance(u[i], v[i]);
    return d;
}

Distance ProductGraph::distance(VertexId u, VertexId v) const
{
    return distance(decode(u), decode(v));
}

bool ProductGraph::adjacent(VertexId u, VertexId v) const
{
    const auto cu = decode(u);
    const auto cv = decode(v);
    std::size_t differing = 0;
    std::size_t where = 0;
    for (std::size_t i = 0; i < cu.size(); ++i)
        if (cu[i] != cv[i]) {
            ++differing;
            where = i;
        }
    return differing == 1 && factors_[where].adjacent(cu[where], cv[where]);
}

std::string ProductGraph::name() const
{
    std::string out;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i)
            out += 'x';
        out += factors_[i].name();
    }
    return out;
}

FactorGraph explicit_adjacency(const ProductGraph& g, std::uint64_t cap)
{
    const auto n = g.total_vertices();
    if (n > cap)
        throw CapExceeded(n, cap);
    const auto k = g.factor_count();
    // stride[i] = product of the sizes of factors after i
    std::vector<std::uint64_t> stride(k, 1);
    for (std::size_t i = k - 1; i-- > 0;)
        stride[i] = stride[i + 1] * g.factor(i + 1).vertex_count();

    std::vector<std::vector<std::uint32_t>> adj(n);
    for (VertexId v = 0; v < n; ++v) {
        const auto c = g.decode(v);
        for (std::size_t i = 0; i < k; ++i) {
            const auto base = v - c[i] * stride[i];
            for (auto w : g.factor(i).neighbors(c[i]))
                adj[v].push_back(static_cast<std::uint32_t>(base + w * stride[i]));
        }
    }
    return FactorGraph::from_adjacency(std::move(adj));
}

}  // namespace gpcart
