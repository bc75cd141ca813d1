#pragma once

// Brute-force reference implementations for tests. Nothing here touches the
// library: graphs are built from their own coordinate rules and distances come
// from a plain BFS over explicit adjacency lists.

#include <cstdint>
#include <functional>
#include <queue>
#include <utility>
#include <vector>

namespace oracle {

using Adj = std::vector<std::vector<int>>;
using Dist = std::vector<std::vector<int>>;

inline Adj path(int n)
{
    Adj a(n);
    for (int i = 0; i + 1 < n; ++i) {
        a[i].push_back(i + 1);
        a[i + 1].push_back(i);
    }
    return a;
}

inline Adj cycle(int n)
{
    Adj a(n);
    for (int i = 0; i < n; ++i) {
        a[i].push_back((i + 1) % n);
        a[(i + 1) % n].push_back(i);
    }
    return a;
}

inline Adj complete(int n)
{
    Adj a(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j)
                a[i].push_back(j);
    return a;
}

inline Adj star(int leaves)
{
    Adj a(leaves + 1);
    for (int i = 1; i <= leaves; ++i) {
        a[0].push_back(i);
        a[i].push_back(0);
    }
    return a;
}

/// Vertex (i, j) is i * |b| + j; edges change one coordinate along a factor edge.
inline Adj product(const Adj& a, const Adj& b)
{
    const int nb = static_cast<int>(b.size());
    Adj out(a.size() * b.size());
    for (int i = 0; i < static_cast<int>(a.size()); ++i)
        for (int j = 0; j < nb; ++j) {
            for (int i2 : a[i])
                out[i * nb + j].push_back(i2 * nb + j);
            for (int j2 : b[j])
                out[i * nb + j].push_back(i * nb + j2);
        }
    return out;
}

inline Dist bfs_all(const Adj& a)
{
    const int n = static_cast<int>(a.size());
    Dist d(n, std::vector<int>(n, -1));
    for (int s = 0; s < n; ++s) {
        std::queue<int> q;
        d[s][s] = 0;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int w : a[u])
                if (d[s][w] < 0) {
                    d[s][w] = d[s][u] + 1;
                    q.push(w);
                }
        }
    }
    return d;
}

inline bool bad(const Dist& d, int a, int b, int c)
{
    return d[a][c] == d[a][b] + d[b][c] || d[a][b] == d[a][c] + d[c][b] || d[b][c] == d[b][a] + d[a][c];
}

inline bool general_position(const Dist& d, const std::vector<int>& s)
{
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            for (std::size_t k = j + 1; k < s.size(); ++k)
                if (bad(d, s[i], s[j], s[k]))
                    return false;
    return true;
}

/// Calls f on every k-subset of [0, n) in lexicographic order; stops when f returns false.
inline void for_each_subset(int n, int k, const std::function<bool(const std::vector<int>&)>& f)
{
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i)
        idx[i] = i;
    if (k > n)
        return;
    for (;;) {
        if (!f(idx))
            return;
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i)
            --i;
        if (i < 0)
            return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

struct MaxInfo {
    int gp = 0;
    std::uint64_t count = 0;
    std::vector<int> first;
};

/// gp number, number of maximum sets and the lexicographically first one, by
/// checking every subset size in turn.
inline MaxInfo maximum_sets(const Adj& a)
{
    const auto d = bfs_all(a);
    const int n = static_cast<int>(a.size());
    MaxInfo best;
    for (int k = 1; k <= n; ++k) {
        MaxInfo here;
        here.gp = k;
        for_each_subset(n, k, [&](const std::vector<int>& s) {
            if (general_position(d, s)) {
                if (here.count == 0)
                    here.first = s;
                ++here.count;
            }
            return true;
        });
        if (here.count == 0)
            break;
        best = here;
    }
    return best;
}

/// Number of ordered bad triples over `space` (all vertices when empty).
inline std::pair<std::uint64_t, std::uint64_t> bad_triples(const Adj& a, std::vector<int> space = {})
{
    const auto d = bfs_all(a);
    if (space.empty())
        for (int v = 0; v < static_cast<int>(a.size()); ++v)
            space.push_back(v);
    std::uint64_t bad_count = 0;
    for (int x : space)
        for (int y : space)
            for (int z : space)
                if (d[y][z] == d[y][x] + d[x][z])
                    ++bad_count;
    const std::uint64_t n = space.size();
    return {bad_count, n * n * n};
}

}  // namespace oracle
