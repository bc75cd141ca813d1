#include "gpcart/spec.hpp"

#include <limits>

namespace gpcart {

namespace {

constexpr std::uint64_t kMaxLiteral = 1'000'000'000;

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    bool done() const { return pos_ == text_.size(); }
    std::size_t pos() const { return pos_; }
    char peek() const { return done() ? '\0' : text_[pos_]; }
    void advance() { ++pos_; }

    std::uint32_t number()
    {
        const auto start = pos_;
        std::uint64_t value = 0;
        while (!done() && peek() >= '0' && peek() <= '9') {
            value = value * 10 + static_cast<std::uint64_t>(peek() - '0');
            if (value > kMaxLiteral)
                throw SpecError("integer literal too large", start);
            advance();
        }
        if (pos_ == start)
            throw SpecError(std::string("expected digit, found ") + describe(), pos_);
        return static_cast<std::uint32_t>(value);
    }

    std::string describe() const
    {
        if (done())
            return "end of input";
        return std::string("'") + peek() + "'";
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

FactorSpec parse_factor(Lexer& lex)
{
    const auto start = lex.pos();
    const char family = lex.peek();
    switch (family) {
    case 'P': case 'C': case 'K': case 'S': case 'Q': break;
    default:
        throw SpecError("expected one of P, C, K, S, Q, found " + lex.describe(), start);
    }
    lex.advance();
    const auto n = lex.number();
    const std::string label = std::string(1, family) + std::to_string(n);
    switch (family) {
    case 'P':
        if (n < 1) throw SpecError(label + ": path needs at least 1 vertex", start);
        break;
    case 'C':
        if (n < 3) throw SpecError(label + ": cycle needs at least 3 vertices", start);
        break;
    case 'K':
        if (n < 1) throw SpecError(label + ": complete graph needs at least 1 vertex", start);
        break;
    case 'S':
        if (n < 1) throw SpecError(label + ": star needs at least 1 leaf", start);
        break;
    case 'Q':
        if (n < 1) throw SpecError(label + ": hypercube dimension must be at least 1", start);
        break;
    }
    return {family, n};
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b)
{
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
        return std::numeric_limits<std::uint64_t>::max();
    return a * b;
}

}  // namespace

SpecError::SpecError(const std::string& message, std::size_t offset)
    : std::invalid_argument(message + " (at offset " + std::to_string(offset) + ")"), offset_(offset)
{
}

GraphSpec parse_spec(std::string_view text)
{
    Lexer lex(text);
    GraphSpec spec;
    spec.source = std::string(text);
    spec.factors.push_back(parse_factor(lex));
    if (lex.peek() == '^') {
        lex.advance();
        const auto at = lex.pos();
        spec.exponent = lex.number();
        if (spec.exponent < 1)
            throw SpecError("power exponent must be at least 1", at);
        spec.is_power = true;
    } else {
        while (lex.peek() == 'x') {
            lex.advance();
            spec.factors.push_back(parse_factor(lex));
        }
    }
    if (!lex.done())
        throw SpecError("unexpected " + lex.describe(), lex.pos());
    return spec;
}

std::string GraphSpec::format() const
{
    std::string out;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i)
            out += 'x';
        out += factors[i].family;
        out += std::to_string(factors[i].size);
    }
    if (is_power)
        out += '^' + std::to_string(exponent);
    return out;
}

std::uint64_t spec_vertex_count(const GraphSpec& spec)
{
    std::uint64_t once = 1;
    for (const auto& f : spec.factors) {
        std::uint64_t n = f.size;
        if (f.family == 'S')
            n = f.size + 1ULL;
        if (f.family == 'Q') {
            n = 1;
            for (std::uint32_t i = 0; i < f.size; ++i)
                n = saturating_mul(n, 2);
        }
        once = saturating_mul(once, n);
    }
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < spec.exponent; ++i) {
        total = saturating_mul(total, once);
        if (total == std::numeric_limits<std::uint64_t>::max())
            break;
    }
    return total;
}

std::vector<FactorGraph> expand_factors(const GraphSpec& spec)
{
    std::vector<FactorGraph> once;
    for (const auto& f : spec.factors) {
        switch (f.family) {
        case 'P': once.push_back(FactorGraph::path(f.size)); break;
        case 'C': once.push_back(FactorGraph::cycle(f.size)); break;
        case 'K': once.push_back(FactorGraph::complete(f.size)); break;
        case 'S': once.push_back(FactorGraph::star(f.size)); break;
        case 'Q': {
            const auto k2 = FactorGraph::complete(2);
            for (std::uint32_t i = 0; i < f.size; ++i)
                once.push_back(k2);
            break;
        }
        default: throw std::invalid_argument("unknown factor family");
        }
    }
    std::vector<FactorGraph> all;
    all.reserve(once.size() * spec.exponent);
    for (std::uint32_t i = 0; i < spec.exponent; ++i)
        all.insert(all.end(), once.begin(), once.end());
    return all;
}

ProductGraph build(const GraphSpec& spec, std::uint64_t vertex_cap)
{
    const auto n = spec_vertex_count(spec);
    if (n > vertex_cap)
        throw CapExceeded(n, vertex_cap);
    return ProductGraph(expand_factors(spec));
}

}  // namespace gpcart
