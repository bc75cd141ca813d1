#include "gpcart/formulas.hpp"
#include "gpcart/position.hpp"
#include "gpcart/probability.hpp"
#include "gpcart/report.hpp"
#include "gpcart/solver.hpp"
#include "gpcart/spec.hpp"

#include <pybind11/chrono.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace gpcart;

namespace {

using Coords = std::vector<std::vector<std::uint32_t>>;

Coords to_lists(const std::vector<VertexCoord>& coords)
{
    Coords out;
    for (const auto& c : coords)
        out.push_back(c.values);
    return out;
}

std::vector<VertexCoord> from_lists(const Coords& lists)
{
    std::vector<VertexCoord> out;
    for (const auto& l : lists)
        out.emplace_back(l);
    return out;
}

std::vector<VertexId> encode_all(const ProductGraph& g, const Coords& lists)
{
    std::vector<VertexId> ids;
    for (const auto& c : from_lists(lists)) {
        if (!g.contains(c))
            throw std::out_of_range("vertex " + to_string(c) + " is not in " + g.name());
        ids.push_back(g.encode(c));
    }
    return ids;
}

py::int_ big(const BigInt& v) { return py::int_(py::str(v.str())); }

py::tuple fraction(const ExactProbability& p) { return py::make_tuple(big(p.numerator()), big(p.denominator())); }

FactorGraph single_factor(const std::string& text)
{
    const auto factors = expand_factors(parse_spec(text));
    if (factors.size() != 1)
        throw std::invalid_argument("expected a single factor, got " + text);
    return factors.front();
}

py::dict witness_dict(const GpSet& set)
{
    py::dict d;
    d["witness"] = to_lists(set.coords());
    d["size"] = set.size();
    d["provenance"] = set.provenance;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "General position sets in Cartesian products of graphs";

    py::register_exception<SpecError>(m, "SpecError", PyExc_ValueError);
    py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);

    py::class_<ProductGraph>(m, "Graph")
        .def(py::init([](const std::string& spec, std::uint64_t cap) { return build(parse_spec(spec), cap); }),
             py::arg("spec"), py::arg("cap") = kDefaultBuildCap)
        .def_property_readonly("name", &ProductGraph::name)
        .def_property_readonly("vertex_count", &ProductGraph::total_vertices)
        .def_property_readonly("factor_count", &ProductGraph::factor_count)
        .def("encode", [](const ProductGraph& g, const std::vector<std::uint32_t>& c) { return g.encode(VertexCoord(c)); })
        .def("decode", [](const ProductGraph& g, VertexId v) { return g.decode(v).values; })
        .def("distance",
             [](const ProductGraph& g, const std::vector<std::uint32_t>& u, const std::vector<std::uint32_t>& v) {
                 return g.distance(VertexCoord(u), VertexCoord(v));
             })
        .def("is_general_position",
             [](const ProductGraph& g, const Coords& set) { return is_general_position(g, encode_all(g, set)); })
        .def("__repr__", [](const ProductGraph& g) { return "Graph('" + g.name() + "')"; });

    m.def(
        "gp",
        [](const std::string& spec, unsigned threads, std::optional<double> time_limit) {
            SearchOptions opts;
            opts.threads = threads;
            if (time_limit)
                opts.budget.time_limit = std::chrono::milliseconds(static_cast<std::int64_t>(*time_limit * 1000));
            const auto g = build(parse_spec(spec));
            auto r = [&] {
                py::gil_scoped_release release;
                return gp_exact(g, opts);
            }();
            py::dict d = witness_dict(r.witness);
            d["gp"] = r.gp_value;
            d["exact"] = r.exact();
            d["nodes"] = r.nodes_explored;
            return d;
        },
        py::arg("spec"), py::arg("threads") = 1, py::arg("time_limit") = py::none(),
        "Exact gp number with the lexicographically first maximum set.");

    m.def(
        "check",
        [](const std::string& spec, const Coords& set) {
            const auto g = build(parse_spec(spec));
            return is_general_position(g, encode_all(g, set));
        },
        py::arg("spec"), py::arg("set"));

    m.def(
        "count_maximum_sets",
        [](const std::string& spec) {
            const auto c = count_maximum_gp_sets(build(parse_spec(spec)));
            return py::make_tuple(c.gp_value, c.count);
        },
        py::arg("spec"));

    m.def("grid_gp_count", [](std::uint32_t r, std::uint32_t s) { return big(grid_gp_count(r, s)); });
    m.def("cylinder_gp_value", &cylinder_gp_value);
    m.def("torus_gp_bounds", [](std::uint32_t r, std::uint32_t s) {
        const auto b = torus_gp_bounds(r, s);
        return py::make_tuple(b.lower ? py::object(py::int_(*b.lower)) : py::object(py::none()), b.upper);
    });
    m.def("hamming_lower_bound", [](const std::vector<std::uint32_t>& sizes) { return hamming_lower_bound(sizes); });

    m.def("cycle_triple", [](std::uint32_t s) { return witness_dict(cycle_gp_triple(s)); });
    m.def("cylinder_witness", [](std::uint32_t r, std::uint32_t s) { return witness_dict(cylinder_witness(r, s)); });
    m.def("torus_witness6", [](std::uint32_t r, std::uint32_t s) { return witness_dict(torus_witness6(r, s)); });
    m.def("torus_witness7", [] { return witness_dict(torus_witness7()); });

    m.def(
        "p_exact", [](const std::string& spec) { return fraction(p_exact(parse_spec(spec))); },
        py::arg("spec"), "Bad-triple probability as (numerator, denominator).");
    m.def(
        "choose_M",
        [](py::int_ num, py::int_ den, std::uint32_t n) {
            const ExactProbability p(BigInt(py::str(num).cast<std::string>()), BigInt(py::str(den).cast<std::string>()));
            return big(choose_M(p, n));
        },
        py::arg("num"), py::arg("den"), py::arg("n"));
    m.def(
        "power_sample",
        [](const std::string& factor, std::uint32_t n, std::uint64_t seed, std::uint32_t retries) {
            const auto run = first_moment_construct(single_factor(factor), n, seed, retries);
            py::dict d;
            d["seed"] = run.seed;
            d["M"] = run.sample_size;
            d["target"] = run.target();
            d["duplicates_removed"] = run.duplicates_removed;
            d["bad_triples"] = run.bad_triples;
            d["deletions"] = run.deletions;
            d["attempts"] = run.attempts;
            d["success"] = run.success;
            d["witness"] = to_lists(run.output);
            return d;
        },
        py::arg("factor"), py::arg("n"), py::arg("seed") = 0, py::arg("retries") = 10);
    m.def(
        "gp_box_lower_bound", [](const std::string& factor) { return gp_box_lower_bound(single_factor(factor)); },
        py::arg("factor"));

    m.def(
        "verify_paper",
        [](bool quick, unsigned threads) {
            VerifyOptions opts;
            opts.quick = quick;
            opts.threads = threads;
            VerificationReport report;
            {
                py::gil_scoped_release release;
                report = verify_paper(opts);
            }
            py::list claims;
            for (const auto& c : report.claims) {
                py::dict d;
                d["id"] = c.id;
                d["anchor"] = c.anchor;
                d["parameters"] = c.parameters;
                d["expected"] = c.expected;
                d["computed"] = c.computed;
                d["status"] = to_string(c.status);
                d["elapsed_ms"] = c.elapsed.count();
                claims.append(d);
            }
            return claims;
        },
        py::arg("quick") = false, py::arg("threads") = 1);
}
