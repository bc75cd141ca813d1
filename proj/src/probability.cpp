#include "gpcart/probability.hpp"

#include "gpcart/rng.hpp"

#include <algorithm>
#include <cmath>

namespace gpcart {

namespace {

using boost::multiprecision::gcd;

ExactProbability from_counts(std::uint64_t bad, std::uint64_t sample_space)
{
    const BigInt n = sample_space;
    return ExactProbability(BigInt(bad), n * n * n);
}

/// Unordered triple of distinct vertices with one member between the other two.
bool bad_unordered(Distance ab, Distance ac, Distance bc)
{
    return ac == ab + bc || bc == ab + ac || ab == ac + bc;
}

}  // namespace

ExactProbability::ExactProbability(BigInt numerator, BigInt denominator)
    : num_(std::move(numerator)), den_(std::move(denominator))
{
    if (den_ <= 0)
        throw std::invalid_argument("probability denominator must be positive");
    if (num_ < 0 || num_ > den_)
        throw std::invalid_argument("probability must lie in [0, 1]");
    const BigInt g = gcd(num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
    if (num_ == 0)
        den_ = 1;
}

ExactProbability::ExactProbability(const BigRational& value)
    : ExactProbability(boost::multiprecision::numerator(value), boost::multiprecision::denominator(value))
{
}

double ExactProbability::to_double() const
{
    if (num_ == 0)
        return 0.0;
    // exp of a log difference keeps precision when both parts overflow double
    const auto ln_num = std::log(num_.convert_to<long double>());
    const auto ln_den = std::log(den_.convert_to<long double>());
    if (std::isfinite(ln_num) && std::isfinite(ln_den))
        return static_cast<double>(std::exp(ln_num - ln_den));
    return value().convert_to<double>();
}

std::string ExactProbability::to_string() const
{
    return num_.str() + "/" + den_.str();
}

ExactProbability ExactProbability::pow(std::uint32_t exponent) const
{
    return ExactProbability(boost::multiprecision::pow(num_, exponent), boost::multiprecision::pow(den_, exponent));
}

ExactProbability p_exact(const FactorGraph& g)
{
    const auto n = g.vertex_count();
    std::vector<std::uint32_t> all(n);
    for (std::uint32_t v = 0; v < n; ++v)
        all[v] = v;
    return p_exact_restricted(g, all);
}

ExactProbability p_exact_restricted(const FactorGraph& g, std::span<const std::uint32_t> sample_space)
{
    if (sample_space.empty())
        throw std::invalid_argument("empty sample space");
    if (sample_space.size() > kDirectProbabilityCap)
        throw CapExceeded(sample_space.size(), kDirectProbabilityCap);
    const auto d = g.distances();
    const auto n = g.vertex_count();
    std::uint64_t bad = 0;
    for (auto y : sample_space)
        for (auto z : sample_space) {
            const auto yz = d[static_cast<std::size_t>(y) * n + z];
            for (auto x : sample_space)
                if (d[static_cast<std::size_t>(y) * n + x] + d[static_cast<std::size_t>(x) * n + z] == yz)
                    ++bad;
        }
    return from_counts(bad, sample_space.size());
}

ExactProbability p_exact(const ProductGraph& g)
{
    BigInt num = 1;
    BigInt den = 1;
    for (const auto& f : g.factors()) {
        const auto p = p_exact(f);
        num *= p.numerator();
        den *= p.denominator();
    }
    return ExactProbability(num, den);
}

ExactProbability p_exact(const GraphSpec& spec)
{
    BigInt num = 1;
    BigInt den = 1;
    for (const auto& f : spec.factors) {
        const auto p = f.family == 'Q' ? p_exact(FactorGraph::complete(2)).pow(f.size)
                                       : p_exact(expand_factors(GraphSpec{{f}, 1, false, ""}).front());
        num *= p.numerator();
        den *= p.denominator();
    }
    return ExactProbability(num, den).pow(spec.exponent);
}

ExactProbability p_exact_direct(const ProductGraph& g, std::uint64_t vertex_cap)
{
    const auto n = g.total_vertices();
    if (n > vertex_cap)
        throw CapExceeded(n, vertex_cap);
    std::vector<VertexCoord> coords;
    coords.reserve(n);
    for (VertexId v = 0; v < n; ++v)
        coords.push_back(g.decode(v));
    std::vector<Distance> d(n * n);
    for (VertexId a = 0; a < n; ++a)
        for (VertexId b = 0; b < n; ++b)
            d[a * n + b] = g.distance(coords[a], coords[b]);
    std::uint64_t bad = 0;
    for (VertexId y = 0; y < n; ++y)
        for (VertexId z = 0; z < n; ++z)
            for (VertexId x = 0; x < n; ++x)
                if (d[y * n + x] + d[x * n + z] == d[y * n + z])
                    ++bad;
    return from_counts(bad, n);
}

ExactProbability p_closed_form(const GraphFamily& family)
{
    const BigInt n = family.n;
    switch (family.kind) {
    case GraphFamily::Kind::Complete:
        if (family.n < 2)
            throw UnsupportedFamily("complete graph closed form needs n >= 2");
        return ExactProbability(2 * n - 1, n * n);
    case GraphFamily::Kind::Cycle: {
        if (family.n < 3)
            throw UnsupportedFamily("cycle closed form needs m >= 3");
        const BigInt k = n / 2;
        if (family.n % 2 == 0)
            return ExactProbability(k * (k + 3) - 1, 4 * k * k);
        return ExactProbability(k * (k + 3) + 1, (2 * k + 1) * (2 * k + 1));
    }
    case GraphFamily::Kind::StarLeafRestricted:
        if (family.n < 2)
            throw UnsupportedFamily("leaf-restricted star closed form needs k >= 2");
        return ExactProbability(2 * n - 1, n * n);
    case GraphFamily::Kind::Star:
        throw UnsupportedFamily("no verified closed form for the unrestricted star; use p_exact");
    }
    throw UnsupportedFamily("unknown family");
}

BigRational star_formula_as_published(std::uint32_t k)
{
    const BigRational kk = k;
    return BigRational(1) / (kk + 1) + (kk / (kk + 1)) * (2 * kk + 1) / ((kk + 1) * (kk + 1));
}

ExactProbability p_power(const FactorGraph& g, std::uint32_t n)
{
    if (n < 1)
        throw std::invalid_argument("power exponent must be at least 1");
    return p_exact(g).pow(n);
}

BigInt choose_M(const ExactProbability& p, std::uint32_t n)
{
    if (p.numerator() == 0 || p.numerator() == p.denominator())
        throw std::invalid_argument("choose_M needs 0 < p < 1");
    if (n < 1)
        throw std::invalid_argument("choose_M needs n >= 1");
    // (M-1)(M-2) is an integer, so compare against floor(p^-n); with m = M - 2
    // the condition reads m(m+1) <= t
    const BigInt t = boost::multiprecision::pow(p.denominator(), n) / boost::multiprecision::pow(p.numerator(), n);
    const BigInt disc = 4 * t + 1;
    BigInt m = (boost::multiprecision::sqrt(disc) - 1) / 2;
    while (m * (m + 1) > t)
        --m;
    while ((m + 1) * (m + 2) <= t)
        ++m;
    return m + 2;
}

namespace {

SampleRun sample_once(const FactorGraph& g, std::uint32_t n, std::uint64_t seed, std::uint64_t m)
{
    SampleRun run;
    run.seed = seed;
    run.sample_size = m;
    CounterRng rng(seed);
    const auto size = g.vertex_count();
    run.samples.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i) {
        std::vector<std::uint32_t> c(n);
        for (auto& x : c)
            x = static_cast<std::uint32_t>(rng.uniform(size));
        run.samples.emplace_back(std::move(c));
    }

    // lexicographic order on coordinates is flat-index order
    auto distinct = run.samples;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    run.duplicates_removed = m - distinct.size();

    const auto k = distinct.size();
    std::vector<Distance> d(k * k, 0);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b) {
            Distance sum = 0;
            for (std::uint32_t i = 0; i < n; ++i)
                sum += g.distance(distinct[a][i], distinct[b][i]);
            d[a * k + b] = d[b * k + a] = sum;
        }

    std::vector<bool> deleted(k, false);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b)
            for (std::size_t c = b + 1; c < k; ++c) {
                if (!bad_unordered(d[a * k + b], d[a * k + c], d[b * k + c]))
                    continue;
                ++run.bad_triples;
                if (!deleted[a] && !deleted[b] && !deleted[c]) {
                    deleted[a] = true;
                    ++run.deletions;
                }
            }

    for (std::size_t a = 0; a < k; ++a)
        if (!deleted[a])
            run.output.push_back(distinct[a]);
    run.success = run.output.size() >= run.target();
    return run;
}

}  // namespace

SampleRun first_moment_construct(const FactorGraph& g, std::uint32_t n, std::uint64_t seed, std::uint32_t retries,
                                 std::uint64_t max_sample)
{
    if (n < 1)
        throw std::invalid_argument("power exponent must be at least 1");
    if (g.vertex_count() < 2)
        throw std::invalid_argument("sampling needs a graph with at least 2 vertices");
    const auto big_m = choose_M(p_exact(g), n);
    if (big_m > max_sample)
        throw CapExceeded(big_m > BigInt(~std::uint64_t{0}) ? ~std::uint64_t{0} : big_m.convert_to<std::uint64_t>(),
                          max_sample);
    const auto m = big_m.convert_to<std::uint64_t>();

    SampleRun best;
    bool have_best = false;
    std::uint32_t attempts = 0;
    for (std::uint64_t attempt = 0; attempt <= retries; ++attempt) {
        auto run = sample_once(g, n, seed + attempt, m);
        ++attempts;
        if (run.success) {
            run.attempts = attempts;
            return run;
        }
        if (!have_best || run.output.size() > best.output.size()) {
            best = std::move(run);
            have_best = true;
        }
    }
    best.attempts = attempts;
    return best;
}

double gp_box_lower_bound(const FactorGraph& g)
{
    const auto n = g.vertex_count();
    if (n < 2)
        throw std::invalid_argument("bound needs at least 2 vertices");
    const auto p = p_exact(g);
    const auto ln_p = std::log(p.numerator().convert_to<double>()) - std::log(p.denominator().convert_to<double>());
    return -0.5 * ln_p / std::log(static_cast<double>(n));
}

double gp_box_vertex_count_bound(std::uint64_t n)
{
    if (n < 2)
        throw std::invalid_argument("bound needs at least 2 vertices");
    const auto nd = static_cast<double>(n);
    return 1.0 - 0.5 * std::log(nd * nd - nd + 1.0) / std::log(nd);
}

}  // namespace gpcart
