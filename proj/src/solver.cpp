#include "gpcart/solver.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <mutex>
#include <thread>

namespace gpcart {

BadTripleIndex::BadTripleIndex(const ProductGraph& g)
{
    const auto total = g.total_vertices();
    if (total > kMaxVertices)
        throw CapExceeded(total, kMaxVertices);
    n_ = static_cast<std::uint32_t>(total);
    words_ = (n_ + 63) / 64;
    const std::size_t rows = static_cast<std::size_t>(n_) * n_;
    between_.assign(rows * words_, 0);
    conflicts_.assign(rows * words_, 0);

    // scratch table for the O(n^3) sweep; released after construction
    std::vector<Distance> d(rows);
    {
        std::vector<VertexCoord> coords;
        coords.reserve(n_);
        for (std::uint32_t v = 0; v < n_; ++v)
            coords.push_back(g.decode(v));
        for (std::uint32_t a = 0; a < n_; ++a)
            for (std::uint32_t b = a; b < n_; ++b)
                d[a * n_ + b] = d[b * n_ + a] = g.distance(coords[a], coords[b]);
    }

    auto set_bit = [&](std::vector<std::uint64_t>& bits, std::uint32_t a, std::uint32_t b, std::uint32_t c) {
        bits[(static_cast<std::size_t>(a) * n_ + b) * words_ + c / 64] |= std::uint64_t{1} << (c % 64);
    };
    for (std::uint32_t y = 0; y < n_; ++y)
        for (std::uint32_t z = y + 1; z < n_; ++z)
            for (std::uint32_t x = 0; x < n_; ++x) {
                if (x == y || x == z)
                    continue;
                if (d[y * n_ + z] == d[y * n_ + x] + d[x * n_ + z]) {
                    set_bit(between_, y, z, x);
                    set_bit(between_, z, y, x);
                    // x in the middle: each pair of the triple conflicts with the third
                    set_bit(conflicts_, y, z, x);
                    set_bit(conflicts_, z, y, x);
                    set_bit(conflicts_, std::min(x, y), std::max(x, y), z);
                    set_bit(conflicts_, std::max(x, y), std::min(x, y), z);
                    set_bit(conflicts_, std::min(x, z), std::max(x, z), y);
                    set_bit(conflicts_, std::max(x, z), std::min(x, z), y);
                }
            }
}

std::span<const std::uint64_t> BadTripleIndex::row(const std::vector<std::uint64_t>& bits, std::uint32_t a,
                                                   std::uint32_t b) const
{
    if (a >= n_ || b >= n_)
        throw std::out_of_range("vertex out of range");
    return {bits.data() + (static_cast<std::size_t>(a) * n_ + b) * words_, words_};
}

bool BadTripleIndex::strictly_between(std::uint32_t x, std::uint32_t y, std::uint32_t z) const
{
    const auto r = between(y, z);
    return (r[x / 64] >> (x % 64)) & 1U;
}

namespace {

using Clock = std::chrono::steady_clock;

template <std::size_t W>
using Bits = std::array<std::uint64_t, W>;

template <std::size_t W>
Bits<W> load(std::span<const std::uint64_t> row)
{
    Bits<W> out{};
    std::copy_n(row.begin(), W, out.begin());
    return out;
}

template <std::size_t W>
std::uint32_t popcount(const Bits<W>& b)
{
    std::uint32_t c = 0;
    for (auto w : b)
        c += static_cast<std::uint32_t>(std::popcount(w));
    return c;
}

/// Vertices strictly greater than v.
template <std::size_t W>
Bits<W> above(std::uint32_t v)
{
    Bits<W> out{};
    const auto word = v / 64;
    for (std::size_t i = word + 1; i < W; ++i)
        out[i] = ~std::uint64_t{0};
    out[word] = ~((std::uint64_t{2} << (v % 64)) - 1);
    return out;
}

struct StopControl {
    std::atomic<bool> stop{false};
    std::atomic<std::uint64_t> nodes{0};
    std::optional<std::uint64_t> node_limit;
    std::optional<Clock::time_point> deadline;

    void charge(std::uint64_t batch)
    {
        const auto total = nodes.fetch_add(batch, std::memory_order_relaxed) + batch;
        if (node_limit && total >= *node_limit)
            stop.store(true, std::memory_order_relaxed);
        if (deadline && Clock::now() >= *deadline)
            stop.store(true, std::memory_order_relaxed);
    }
};

/// Best value so far with the lowest task index reaching it, packed so that a
/// larger packed number is a better (value, earlier task) pair.
class SharedBest {
public:
    explicit SharedBest(std::uint32_t value) : packed_(pack(value, 0)) {}

    void offer(std::uint32_t value, std::uint32_t task)
    {
        const auto mine = pack(value, task);
        auto cur = packed_.load(std::memory_order_relaxed);
        while (mine > cur && !packed_.compare_exchange_weak(cur, mine, std::memory_order_relaxed)) {
        }
    }

    /// A branch of `task` may be cut when its size bound is <= the returned value.
    /// Against a later task only strictly larger sets matter, since ties must
    /// still be found by the earlier task to keep the witness lexicographic.
    std::uint32_t threshold_for(std::uint32_t task) const
    {
        const auto cur = packed_.load(std::memory_order_relaxed);
        const auto value = static_cast<std::uint32_t>(cur >> 32);
        const auto owner = 0xFFFFFFFFU - static_cast<std::uint32_t>(cur & 0xFFFFFFFFU);
        if (owner <= task)
            return value;
        return value == 0 ? 0 : value - 1;
    }

private:
    static std::uint64_t pack(std::uint32_t value, std::uint32_t task)
    {
        return (std::uint64_t{value} << 32) | (0xFFFFFFFFU - task);
    }

    std::atomic<std::uint64_t> packed_;
};

struct TaskOutcome {
    std::uint32_t value = 0;
    std::uint32_t task = 0xFFFFFFFFU;
    std::vector<std::uint32_t> witness;

    bool better_than(const TaskOutcome& o) const
    {
        return value > o.value || (value == o.value && task < o.task);
    }
};

template <std::size_t W>
class MaxWorker {
public:
    MaxWorker(const BadTripleIndex& index, SharedBest& shared, StopControl& control)
        : index_(index), shared_(shared), control_(control)
    {
    }

    void run_task(std::uint32_t task, std::uint32_t a, std::uint32_t b)
    {
        task_ = task;
        local_best_ = 0;
        chosen_[0] = a;
        chosen_[1] = b;
        size_ = 2;
        auto cand = above<W>(b);
        const auto conflict = load<W>(index_.conflicts(a, b));
        for (std::size_t i = 0; i < W; ++i)
            cand[i] &= ~conflict[i];
        mask_tail(cand);
        dfs(cand);
    }

    const TaskOutcome& outcome() const { return outcome_; }
    void flush() { control_.charge(std::exchange(pending_nodes_, 0)); }

private:
    void mask_tail(Bits<W>& b) const
    {
        const auto n = index_.vertex_count();
        for (std::size_t i = 0; i < W; ++i) {
            const auto lo = i * 64;
            if (lo >= n)
                b[i] = 0;
            else if (n - lo < 64)
                b[i] &= (std::uint64_t{1} << (n - lo)) - 1;
        }
    }

    std::uint32_t threshold() const { return std::max(local_best_, shared_.threshold_for(task_)); }

    void record()
    {
        local_best_ = size_;
        shared_.offer(size_, task_);
        TaskOutcome mine{size_, task_, std::vector<std::uint32_t>(chosen_.begin(), chosen_.begin() + size_)};
        if (mine.better_than(outcome_))
            outcome_ = std::move(mine);
    }

    void dfs(const Bits<W>& cand)
    {
        if (++pending_nodes_ >= 4096) {
            flush();
        }
        if (control_.stop.load(std::memory_order_relaxed))
            return;
        if (size_ > local_best_)
            record();

        auto remaining = popcount(cand);
        auto limit = threshold();
        if (size_ + remaining <= limit)
            return;

        for (std::size_t w = 0; w < W; ++w) {
            auto word = cand[w];
            while (word) {
                const auto v = static_cast<std::uint32_t>(w * 64 + std::countr_zero(word));
                word &= word - 1;
                if (size_ + remaining <= limit)
                    return;
                --remaining;

                auto next = cand;
                const auto higher = above<W>(v);
                for (std::size_t i = 0; i < W; ++i)
                    next[i] &= higher[i];
                for (std::uint32_t s = 0; s < size_; ++s) {
                    const auto* row = index_.conflicts(chosen_[s], v).data();
                    for (std::size_t i = 0; i < W; ++i)
                        next[i] &= ~row[i];
                }
                if (size_ + 1 + popcount(next) > limit) {
                    chosen_[size_++] = v;
                    dfs(next);
                    --size_;
                    if (control_.stop.load(std::memory_order_relaxed))
                        return;
                    limit = threshold();
                }
            }
        }
    }

    const BadTripleIndex& index_;
    SharedBest& shared_;
    StopControl& control_;
    std::array<std::uint32_t, BadTripleIndex::kMaxVertices> chosen_{};
    std::uint32_t size_ = 0;
    std::uint32_t task_ = 0;
    std::uint32_t local_best_ = 0;
    std::uint64_t pending_nodes_ = 0;
    TaskOutcome outcome_;
};

template <std::size_t W>
TaskOutcome run_max_search(const BadTripleIndex& index, unsigned threads, StopControl& control)
{
    const auto n = index.vertex_count();
    std::vector<std::pair<std::uint32_t, std::uint32_t>> tasks;
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = a + 1; b < n; ++b)
            tasks.emplace_back(a, b);

    SharedBest shared(2);
    std::atomic<std::size_t> next_task{0};
    std::mutex merge_mutex;
    TaskOutcome best;

    auto work = [&] {
        MaxWorker<W> worker(index, shared, control);
        for (;;) {
            const auto t = next_task.fetch_add(1, std::memory_order_relaxed);
            if (t >= tasks.size() || control.stop.load(std::memory_order_relaxed))
                break;
            worker.run_task(static_cast<std::uint32_t>(t), tasks[t].first, tasks[t].second);
        }
        worker.flush();
        std::lock_guard lock(merge_mutex);
        if (worker.outcome().better_than(best))
            best = worker.outcome();
    };

    threads = std::max(1U, threads);
    if (threads == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < threads; ++i)
            pool.emplace_back(work);
    }
    return best;
}

template <std::size_t W>
class Enumerator {
public:
    Enumerator(const BadTripleIndex& index, std::uint32_t target,
               const std::function<void(std::span<const VertexId>)>& visit)
        : index_(index), target_(target), visit_(visit)
    {
    }

    std::uint64_t run()
    {
        Bits<W> all{};
        for (std::uint32_t v = 0; v < index_.vertex_count(); ++v)
            all[v / 64] |= std::uint64_t{1} << (v % 64);
        dfs(all);
        return count_;
    }

private:
    void dfs(const Bits<W>& cand)
    {
        if (size_ == target_) {
            ++count_;
            if (visit_) {
                std::vector<VertexId> ids(chosen_.begin(), chosen_.begin() + size_);
                visit_(ids);
            }
            return;
        }
        auto remaining = popcount(cand);
        for (std::size_t w = 0; w < W; ++w) {
            auto word = cand[w];
            while (word) {
                const auto v = static_cast<std::uint32_t>(w * 64 + std::countr_zero(word));
                word &= word - 1;
                if (size_ + remaining < target_)
                    return;
                --remaining;
                auto next = cand;
                const auto higher = above<W>(v);
                for (std::size_t i = 0; i < W; ++i)
                    next[i] &= higher[i];
                for (std::uint32_t s = 0; s < size_; ++s) {
                    const auto* row = index_.conflicts(chosen_[s], v).data();
                    for (std::size_t i = 0; i < W; ++i)
                        next[i] &= ~row[i];
                }
                if (size_ + 1 + popcount(next) >= target_) {
                    chosen_[size_++] = v;
                    dfs(next);
                    --size_;
                }
            }
        }
    }

    const BadTripleIndex& index_;
    std::uint32_t target_;
    const std::function<void(std::span<const VertexId>)>& visit_;
    std::array<std::uint32_t, BadTripleIndex::kMaxVertices> chosen_{};
    std::uint32_t size_ = 0;
    std::uint64_t count_ = 0;
};

template <template <std::size_t> class F, typename... Args>
auto dispatch_words(std::uint32_t words, Args&&... args)
{
    switch (words) {
    case 1: return F<1>{}(std::forward<Args>(args)...);
    case 2: return F<2>{}(std::forward<Args>(args)...);
    case 3: return F<3>{}(std::forward<Args>(args)...);
    default: return F<4>{}(std::forward<Args>(args)...);
    }
}

template <std::size_t W>
struct MaxSearchFn {
    TaskOutcome operator()(const BadTripleIndex& index, unsigned threads, StopControl& control) const
    {
        return run_max_search<W>(index, threads, control);
    }
};

template <std::size_t W>
struct EnumerateFn {
    std::uint64_t operator()(const BadTripleIndex& index, std::uint32_t target,
                             const std::function<void(std::span<const VertexId>)>& visit) const
    {
        return Enumerator<W>(index, target, visit).run();
    }
};

}  // namespace

SearchResult gp_exact(const ProductGraph& g, const SearchOptions& options)
{
    const auto start = Clock::now();
    const auto n = g.total_vertices();
    if (n > options.vertex_cap)
        throw CapExceeded(n, options.vertex_cap);

    if (n <= 2) {
        std::vector<VertexId> all;
        for (VertexId v = 0; v < n; ++v)
            all.push_back(v);
        return SearchResult{SearchStatus::Exact, static_cast<std::uint32_t>(n), certify(g, std::move(all), "solver"),
                            0, Clock::now() - start, std::nullopt};
    }

    const BadTripleIndex index(g);
    StopControl control;
    control.node_limit = options.budget.node_limit;
    if (options.budget.time_limit)
        control.deadline = start + *options.budget.time_limit;

    auto best = dispatch_words<MaxSearchFn>(index.words(), index, options.threads, control);

    return SearchResult{control.stop.load() ? SearchStatus::BudgetExhausted : SearchStatus::Exact,
                        best.value,
                        certify(g, std::vector<VertexId>(best.witness.begin(), best.witness.end()), "solver"),
                        control.nodes.load(),
                        Clock::now() - start,
                        std::nullopt};
}

std::uint64_t enumerate_gp_sets_of_size(const ProductGraph& g, std::uint32_t size,
                                        const std::function<void(std::span<const VertexId>)>& visit,
                                        std::uint64_t vertex_cap)
{
    const auto n = g.total_vertices();
    if (n > vertex_cap)
        throw CapExceeded(n, vertex_cap);
    if (size > n)
        return 0;
    const BadTripleIndex index(g);
    return dispatch_words<EnumerateFn>(index.words(), index, size, visit);
}

MaximumSetCount count_maximum_gp_sets(const ProductGraph& g, std::uint64_t vertex_cap)
{
    const auto n = g.total_vertices();
    if (n > vertex_cap)
        throw CapExceeded(n, vertex_cap);
    SearchOptions options;
    options.vertex_cap = vertex_cap;
    const auto gp = gp_exact(g, options).gp_value;
    return {gp, enumerate_gp_sets_of_size(g, gp, {}, vertex_cap)};
}

NotIsometric::NotIsometric(VertexId u_, VertexId v_, Distance induced, Distance host, const std::string& what)
    : std::invalid_argument(what), u(u_), v(v_), induced_distance(induced), host_distance(host)
{
}

FactorGraph induced_subgraph(const ProductGraph& g, std::span<const VertexId> members)
{
    std::vector<std::vector<std::uint32_t>> adj(members.size());
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j)
            if (g.distance(members[i], members[j]) == 1) {
                adj[i].push_back(static_cast<std::uint32_t>(j));
                adj[j].push_back(static_cast<std::uint32_t>(i));
            }
    return FactorGraph::from_adjacency(std::move(adj));
}

CoverBound isometric_cover_bound(const ProductGraph& g, const std::vector<std::vector<VertexId>>& cover,
                                 const SearchOptions& options)
{
    const auto n = g.total_vertices();
    std::vector<bool> covered(n, false);
    CoverBound out;
    for (std::size_t p = 0; p < cover.size(); ++p) {
        auto members = cover[p];
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        if (members.empty())
            throw std::invalid_argument("cover set " + std::to_string(p) + " is empty");
        for (auto v : members) {
            if (v >= n)
                throw std::out_of_range("cover set " + std::to_string(p) + " has a vertex out of range");
            covered[v] = true;
        }
        FactorGraph sub = [&] {
            try {
                return induced_subgraph(g, members);
            } catch (const std::invalid_argument& e) {
                throw std::invalid_argument("cover set " + std::to_string(p) + ": " + e.what());
            }
        }();
        for (std::uint32_t i = 0; i < members.size(); ++i)
            for (std::uint32_t j = i + 1; j < members.size(); ++j) {
                const auto local = sub.distance(i, j);
                const auto host = g.distance(members[i], members[j]);
                if (local != host)
                    throw NotIsometric(members[i], members[j], local, host,
                                       "cover set " + std::to_string(p) + " is not isometric: "
                                           + to_string(g.decode(members[i])) + " and "
                                           + to_string(g.decode(members[j])) + " are at distance "
                                           + std::to_string(local) + " inside but " + std::to_string(host)
                                           + " in the host");
            }
        const auto value = gp_exact(ProductGraph(std::move(sub)), options);
        if (!value.exact())
            throw std::runtime_error("budget exhausted while bounding cover set " + std::to_string(p));
        out.part_values.push_back(value.gp_value);
        out.bound += value.gp_value;
    }
    for (VertexId v = 0; v < n; ++v)
        if (!covered[v])
            throw std::invalid_argument("family does not cover vertex " + to_string(g.decode(v)));
    return out;
}

}  // namespace gpcart
