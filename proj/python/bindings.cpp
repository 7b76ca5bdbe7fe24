// Python bindings for the main operations: grids, fields, catalogue
// symbols, norms, decompositions, operator application, the bracket
// calculus and the estimate experiments.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "paracalc/calculus.hpp"
#include "paracalc/config.hpp"
#include "paracalc/decompose.hpp"
#include "paracalc/elementary.hpp"
#include "paracalc/operators.hpp"
#include "paracalc/seminorms.hpp"

namespace py = pybind11;
using namespace paracalc;

namespace {

Field field_from_array(const Grid& g, py::array_t<cplx, py::array::c_style> arr) {
    if (static_cast<std::size_t>(arr.size()) != g.size())
        throw InputError("array size does not match grid");
    std::vector<cplx> samples(arr.data(), arr.data() + arr.size());
    return Field(g, std::move(samples));
}

py::array_t<cplx> field_to_array(const Field& f) {
    const Grid& g = f.grid();
    if (g.dim() == 1) {
        py::array_t<cplx> out(static_cast<py::ssize_t>(g.size()));
        std::copy(f.samples().begin(), f.samples().end(), out.mutable_data());
        return out;
    }
    py::array_t<cplx> out({static_cast<py::ssize_t>(g.n()), static_cast<py::ssize_t>(g.n())});
    std::copy(f.samples().begin(), f.samples().end(), out.mutable_data());
    return out;
}

SymbolSpec spec_from_kwargs(const std::string& id, double m, double amplitude, double s0,
                            std::uint64_t seed) {
    SymbolSpec s;
    s.id = id;
    s.m = m;
    s.amplitude = amplitude;
    s.s0 = s0;
    s.seed = seed;
    return s;
}

py::dict report_to_dict(const EstimateReport& rep) {
    py::dict d;
    d["id"] = rep.id;
    d["theorem"] = rep.theorem;
    d["c_emp"] = rep.c_emp;
    d["pass"] = rep.pass;
    d["degenerate_zero"] = rep.degenerate_zero;
    if (rep.slope) {
        py::dict s;
        s["value"] = rep.slope->value;
        s["expected"] = rep.slope->expected;
        s["deviation"] = rep.slope->deviation;
        d["slope"] = s;
    } else {
        d["slope"] = py::none();
    }
    py::dict terms;
    for (const auto& [k, v] : rep.terms) terms[py::str(k)] = v;
    d["terms"] = terms;
    py::list rows;
    for (const auto& r : rep.rows) {
        py::dict row;
        row["probe"] = r.probe;
        row["label"] = r.label;
        row["numerator"] = r.num;
        row["denominator"] = r.den;
        row["ratio"] = r.ratio;
        rows.append(row);
    }
    d["ratios"] = rows;
    d["json"] = report_to_json(rep).dump(2);
    return d;
}

}  // namespace

PYBIND11_MODULE(_paracalc, mod) {
    mod.doc() = "numerical paradifferential-operator calculus";

    py::register_exception<ConfigError>(mod, "ConfigError");
    py::register_exception<InputError>(mod, "InputError");
    py::register_exception<CapabilityError>(mod, "CapabilityError");
    py::register_exception<ClassViolationError>(mod, "ClassViolationError");
    py::register_exception<HypothesisError>(mod, "HypothesisError");

    py::class_<Grid>(mod, "Grid")
        .def(py::init<int, int, double>(), py::arg("d"), py::arg("n"), py::arg("L"))
        .def_property_readonly("d", &Grid::dim)
        .def_property_readonly("n", &Grid::n)
        .def_property_readonly("L", &Grid::length)
        .def_property_readonly("dxi", &Grid::dxi)
        .def_property_readonly("xi_max", &Grid::xi_max)
        .def("__repr__", [](const Grid& g) {
            return "Grid(d=" + std::to_string(g.dim()) + ", n=" + std::to_string(g.n()) +
                   ", L=" + std::to_string(g.length()) + ")";
        });

    py::class_<Field>(mod, "Field")
        .def(py::init([](const Grid& g, py::array_t<cplx, py::array::c_style> arr) {
                 return field_from_array(g, arr);
             }),
             py::arg("grid"), py::arg("samples"))
        .def_property_readonly("grid", &Field::grid)
        .def("samples", &field_to_array)
        .def("l2", &Field::l2)
        .def("linf", &Field::linf)
        .def("sobolev", &Field::sobolev, py::arg("s"));

    py::class_<FilterBank>(mod, "FilterBank")
        .def(py::init<const Grid&>(), py::arg("grid"))
        .def_property_readonly("p_max", &FilterBank::p_max)
        .def("partition_deviation", &FilterBank::partition_deviation)
        .def("lp_block", &FilterBank::lp_block, py::arg("u"), py::arg("p"));

    py::class_<Symbol>(mod, "Symbol")
        .def_property_readonly("order", &Symbol::order)
        .def_property_readonly("is_multiplier", &Symbol::is_multiplier)
        .def_property_readonly("is_function", &Symbol::is_function)
        .def_property_readonly("name", &Symbol::name);

    py::class_<FourWaySplit>(mod, "FourWaySplit")
        .def_readonly("N", &FourWaySplit::N)
        .def("component",
             [](const FourWaySplit& s, const std::string& which) { return s.component(which); },
             py::arg("which"));

    py::class_<ElementarySymbols>(mod, "ElementarySymbols")
        .def_property_readonly("K", &ElementarySymbols::K)
        .def("reconstruction_error", [](const ElementarySymbols& es, const Symbol& sym) {
            auto e = es.reconstruction_error(sym);
            return py::make_tuple(e.absolute, e.relative());
        });

    mod.def("catalogue_symbol",
            [](const Grid& g, const std::string& id, double m, double amplitude, double s0,
               std::uint64_t seed) {
                return make_catalogue_symbol(spec_from_kwargs(id, m, amplitude, s0, seed), g);
            },
            py::arg("grid"), py::arg("id"), py::arg("m") = 1.0, py::arg("amplitude") = 0.1,
            py::arg("s0") = 3.0, py::arg("seed") = 1);

    mod.def("random_band_limited", &random_band_limited, py::arg("grid"), py::arg("decay"),
            py::arg("seed"));
    mod.def("smooth_coefficient", &smooth_coefficient, py::arg("grid"), py::arg("amplitude"));
    mod.def("zygmund_norm", &zygmund_norm, py::arg("bank"), py::arg("u"), py::arg("r"));

    mod.def("op_apply_dense", &op_apply_dense, py::arg("sigma"), py::arg("u"));
    mod.def("op_apply_elementary", &op_apply_elementary, py::arg("es"), py::arg("u"));
    mod.def("four_way_split", &four_way_split, py::arg("bank"), py::arg("sigma"), py::arg("N"));
    mod.def("elementary_decompose", &elementary_decompose, py::arg("bank"), py::arg("sigma"),
            py::arg("K"));

    mod.def("seminorm_N", &seminorm_N, py::arg("grid"), py::arg("sigma"), py::arg("k"),
            py::arg("s"));
    mod.def("seminorm_M", &seminorm_M, py::arg("grid"), py::arg("sigma"), py::arg("k"),
            py::arg("l") = 0);

    mod.def("sharp_n", &sharp_n, py::arg("grid"), py::arg("sigma1"), py::arg("sigma2"),
            py::arg("n"));
    mod.def("poisson_n", &poisson_n, py::arg("grid"), py::arg("sigma1"), py::arg("sigma2"),
            py::arg("n"));
    mod.def("commutator_apply", &commutator_apply, py::arg("sigma1"), py::arg("sigma2"),
            py::arg("u"));
    mod.def("remainder_apply",
            [](const Symbol& s1, const Symbol& s2, int n, const Field& u) {
                return remainder_apply(s1, s2, n, u);
            },
            py::arg("sigma1"), py::arg("sigma2"), py::arg("n"), py::arg("u"));

    mod.def("run_experiment",
            [](const std::string& config_json) {
                ExperimentConfig cfg = config_from_json(json::parse(config_json));
                return report_to_dict(run_experiment(cfg));
            },
            py::arg("config_json"), "Run an experiment from a JSON config string.");
}
