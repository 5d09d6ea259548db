// Python bindings for the zetareg core: point counting, zeta-function
// reconstruction, special values, weight homology, regulator products, and
// scenario verification. Big integers cross the boundary as Python ints and
// rationals as fractions.Fraction, so all arithmetic stays exact.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "zetareg/chowcat.hpp"
#include "zetareg/config.hpp"
#include "zetareg/errors.hpp"
#include "zetareg/ffield.hpp"
#include "zetareg/geometry.hpp"
#include "zetareg/scenario.hpp"
#include "zetareg/weight.hpp"
#include "zetareg/zeta.hpp"

namespace py = pybind11;
using namespace zetareg;

namespace {

// Thin handles around the shared-pointer aliases used by the C++ core.
struct PyField {
    FieldRef ref;
};

struct PyVariety {
    SpecPtr ref;
};

py::int_ to_py(const Int& x) {
    return py::cast<py::int_>(
        py::module_::import("builtins").attr("int")(x.get_str()));
}

Int int_from_py(const py::int_& x) {
    return Int(py::cast<std::string>(x.attr("__str__")()));
}

py::object to_py(const Rat& x) {
    static py::object fraction =
        py::module_::import("fractions").attr("Fraction");
    return fraction(to_py(x.get_num()), to_py(x.get_den()));
}

Rat rat_from_py(const py::object& x) {
    if (py::isinstance<py::int_>(x))
        return Rat(int_from_py(py::cast<py::int_>(x)));
    Int num = int_from_py(py::cast<py::int_>(x.attr("numerator")));
    Int den = int_from_py(py::cast<py::int_>(x.attr("denominator")));
    Rat r(num, den);
    r.canonicalize();
    return r;
}

std::vector<Int> ints_from_py(const std::vector<py::int_>& xs) {
    std::vector<Int> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(int_from_py(x));
    return out;
}

py::list to_py(const std::vector<Int>& xs) {
    py::list out;
    for (const auto& x : xs) out.append(to_py(x));
    return out;
}

py::dict group_to_py(const FGAbGroup& g) {
    py::dict d;
    d["free_rank"] = g.free_rank;
    d["torsion"] = to_py(g.torsion);
    return d;
}

using PyTerms =
    std::vector<std::pair<std::vector<unsigned>, unsigned long long>>;

MultiPoly poly_from_py(unsigned nvars, const PyTerms& terms) {
    std::vector<MultiPoly::Term> ts;
    ts.reserve(terms.size());
    for (const auto& [exps, coeff] : terms) ts.push_back({exps, coeff});
    return make_poly(nvars, std::move(ts));
}

Lambda lambda_from_py(const std::optional<py::int_>& invert_p) {
    return invert_p ? Lambda::Z_inv(int_from_py(*invert_p)) : Lambda::Z();
}

py::dict laurent_to_py(const LaurentData& L) {
    py::dict d;
    d["point"] = to_py(L.point);
    d["order"] = L.order;
    d["leading"] = to_py(L.leading);
    return d;
}

} // namespace

PYBIND11_MODULE(zetareg, m) {
    m.doc() = "Exact zeta-function and regulator computations over finite "
              "fields";

    py::register_exception<Error>(m, "ZetaregError");

    // --- base fields ------------------------------------------------------
    py::class_<PyField>(m, "Field")
        .def_property_readonly("p",
                               [](const PyField& f) { return f.ref->p; })
        .def_property_readonly("e",
                               [](const PyField& f) { return f.ref->e; })
        .def_property_readonly(
            "cardinality",
            [](const PyField& f) { return to_py(f.ref->cardinality()); })
        .def("__repr__", [](const PyField& f) {
            std::ostringstream os;
            os << "Field(p=" << f.ref->p << ", e=" << f.ref->e << ")";
            return os.str();
        });

    m.def(
        "field",
        [](unsigned long p, unsigned e) { return PyField{build_field(p, e)}; },
        py::arg("p"), py::arg("e") = 1, "Base field with p^e elements");

    // --- varieties --------------------------------------------------------
    py::class_<PyVariety>(m, "Variety")
        .def_property_readonly(
            "dim", [](const PyVariety& v) { return v.ref->dim; })
        .def("to_json",
             [](const PyVariety& v) { return variety_to_json(v.ref).dump(); })
        .def("__repr__", [](const PyVariety& v) {
            return "Variety(" + variety_to_json(v.ref).dump() + ")";
        });

    m.def(
        "affine_space",
        [](const PyField& f, int n) { return PyVariety{affine_space(f.ref, n)}; },
        py::arg("field"), py::arg("n"));
    m.def(
        "projective_space",
        [](const PyField& f, int n) {
            return PyVariety{projective_space(f.ref, n)};
        },
        py::arg("field"), py::arg("n"));
    m.def(
        "affine_sub",
        [](const PyField& f, int n, const PyTerms& terms,
           std::optional<int> dim) {
            return PyVariety{affine_sub(f.ref, n, {poly_from_py(n, terms)},
                                        dim)};
        },
        py::arg("field"), py::arg("n"), py::arg("terms"),
        py::arg("dim") = std::nullopt,
        "Zero locus in affine n-space of one polynomial given as "
        "[(exponents, coefficient), ...]");
    m.def(
        "projective_sub",
        [](const PyField& f, int n, const PyTerms& terms,
           std::optional<int> dim) {
            return PyVariety{
                projective_sub(f.ref, n, {poly_from_py(n + 1, terms)}, dim)};
        },
        py::arg("field"), py::arg("n"), py::arg("terms"),
        py::arg("dim") = std::nullopt,
        "Zero locus in projective n-space of one homogeneous polynomial");
    m.def(
        "product",
        [](const PyVariety& a, const PyVariety& b) {
            return PyVariety{product(a.ref, b.ref)};
        },
        py::arg("a"), py::arg("b"));
    m.def(
        "disjoint_union",
        [](const std::vector<PyVariety>& parts) {
            std::vector<SpecPtr> ps;
            ps.reserve(parts.size());
            for (const auto& v : parts) ps.push_back(v.ref);
            return PyVariety{disjoint_union(std::move(ps))};
        },
        py::arg("parts"));
    m.def(
        "complement",
        [](const PyVariety& ambient, const PyVariety& closed) {
            return PyVariety{complement(ambient.ref, closed.ref)};
        },
        py::arg("ambient"), py::arg("closed"));
    m.def(
        "base_restriction",
        [](const PyVariety& inner, unsigned degree) {
            return PyVariety{base_restriction(inner.ref, degree)};
        },
        py::arg("inner"), py::arg("degree"));
    m.def(
        "variety_from_json",
        [](const std::string& text, const PyField& base) {
            return PyVariety{variety_from_json(Json::parse(text), base.ref)};
        },
        py::arg("json_text"), py::arg("field"));

    m.def(
        "count_points",
        [](const PyVariety& v, unsigned n, unsigned jobs) {
            return to_py(count_points(v.ref, n, jobs));
        },
        py::arg("variety"), py::arg("n"), py::arg("jobs") = 0,
        "Exact number of points over the degree-n extension");
    m.def(
        "closed_point_census",
        [](const PyVariety& v, unsigned D, unsigned jobs) {
            py::dict out;
            for (const auto& [d, a] : closed_point_census(v.ref, D, jobs))
                out[py::int_(d)] = to_py(a);
            return out;
        },
        py::arg("variety"), py::arg("depth"), py::arg("jobs") = 0,
        "Closed points of each degree up to the depth");

    m.def("enumeration_budget", &enumeration_budget);
    m.def("set_enumeration_budget", &set_enumeration_budget,
          py::arg("budget"));

    // --- zeta functions ---------------------------------------------------
    py::class_<RationalFunctionQ>(m, "RationalFunction")
        .def_property_readonly(
            "num", [](const RationalFunctionQ& f) { return to_py(f.num); })
        .def_property_readonly(
            "den", [](const RationalFunctionQ& f) { return to_py(f.den); })
        .def("__eq__",
             [](const RationalFunctionQ& a, const RationalFunctionQ& b) {
                 return rf_equal(a, b);
             })
        .def("__mul__", &rf_mul)
        .def("__repr__", [](const RationalFunctionQ& f) {
            auto poly = [](const PolyZ& p) {
                std::string s = "[";
                for (size_t i = 0; i < p.size(); ++i)
                    s += (i ? ", " : "") + p[i].get_str();
                return s + "]";
            };
            return "RationalFunction(num=" + poly(f.num) +
                   ", den=" + poly(f.den) + ")";
        });

    m.def(
        "rational_function",
        [](const std::vector<py::int_>& num,
           const std::vector<py::int_>& den) {
            return make_rational_function(ints_from_py(num),
                                          ints_from_py(den));
        },
        py::arg("num"), py::arg("den"),
        "Rational function from coefficient lists, ascending degree");
    m.def(
        "zeta_series",
        [](const std::vector<py::int_>& counts) {
            auto s = zeta_series(ints_from_py(counts));
            py::list out;
            for (const auto& c : s.coeffs) out.append(to_py(c));
            return out;
        },
        py::arg("counts"),
        "Coefficients of exp(sum N_n t^n / n) to order len(counts)");
    m.def(
        "zeta_from_counts",
        [](const std::vector<py::int_>& counts,
           std::optional<std::pair<size_t, size_t>> bound, size_t guard) {
            return reconstruct_rational(zeta_series(ints_from_py(counts)),
                                        bound, guard);
        },
        py::arg("counts"), py::arg("bound") = std::nullopt,
        py::arg("guard") = 2,
        "Rational zeta function reconstructed from point counts");
    m.def(
        "zeta",
        [](const PyVariety& v, size_t depth,
           std::optional<std::pair<size_t, size_t>> bound, size_t guard,
           unsigned jobs) {
            std::vector<Int> counts;
            for (unsigned n = 1; n <= depth; ++n)
                counts.push_back(count_points(v.ref, n, jobs));
            return reconstruct_rational(zeta_series(counts), bound, guard);
        },
        py::arg("variety"), py::arg("depth"), py::arg("bound") = std::nullopt,
        py::arg("guard") = 2, py::arg("jobs") = 0,
        "Count points to the given depth and reconstruct the zeta function");
    m.def(
        "special_value",
        [](const RationalFunctionQ& Z, const py::int_& q, long r) {
            return laurent_to_py(special_value(Z, int_from_py(q), r));
        },
        py::arg("Z"), py::arg("q"), py::arg("r"),
        "Leading Laurent coefficient and vanishing order at t = q^(-r)");
    m.def("base_change", &base_change, py::arg("Z"), py::arg("e"),
          "Substitute t -> t^e: view a zeta function over the degree-e "
          "subfield");
    m.def(
        "strip_sign_ppower",
        [](const py::object& x, const py::int_& p) {
            return to_py(strip_sign_ppower(rat_from_py(x), int_from_py(p)));
        },
        py::arg("x"), py::arg("p"),
        "Absolute value with all powers of p removed");

    // --- weight homology --------------------------------------------------
    py::class_<SNCConfig>(m, "SNCConfig")
        .def_readonly("dim", &SNCConfig::dim)
        .def_readonly("levels", &SNCConfig::levels)
        .def("to_json",
             [](const SNCConfig& c) { return snc_to_json(c).dump(); });

    m.def(
        "snc_from_json",
        [](const std::string& text) {
            auto cfg = snc_from_json(Json::parse(text));
            validate_snc(cfg);
            return cfg;
        },
        py::arg("json_text"),
        "Boundary incidence data; validates the simplicial identities");
    m.def(
        "weight_homology",
        [](const SNCConfig& cfg, std::optional<py::int_> invert_p) {
            auto hs =
                weight_homology(build_snc_complex(cfg, lambda_from_py(invert_p)));
            py::list out;
            for (const auto& h : hs) out.append(group_to_py(h));
            return out;
        },
        py::arg("snc"), py::arg("invert_p") = std::nullopt,
        "Homology of the boundary complex, degree 0 upward; each group as "
        "{'free_rank', 'torsion'}");
    m.def(
        "localization_check",
        [](const SNCConfig& cfg, std::optional<py::int_> invert_p) {
            auto rep = localization_check(cfg, lambda_from_py(invert_p));
            py::dict d;
            d["exact"] = rep.exact;
            d["failing_degree"] = rep.failing_degree;
            py::list hu;
            for (const auto& h : rep.homology_U) hu.append(group_to_py(h));
            d["homology_U"] = hu;
            return d;
        },
        py::arg("snc"), py::arg("invert_p") = std::nullopt);

    // --- regulator products -----------------------------------------------
    py::class_<ChowProfile>(m, "ChowProfile")
        .def_readonly("tag", &ChowProfile::tag)
        .def_readonly("dim", &ChowProfile::dim)
        .def_property_readonly(
            "q", [](const ChowProfile& p) { return to_py(p.q); })
        .def("to_json",
             [](const ChowProfile& p) { return profile_to_json(p).dump(); })
        .def(
            "entry",
            [](const ChowProfile& p, long r, long i) -> py::object {
                auto g = p.entry(r, i);
                if (!g) return py::none();
                py::dict d = group_to_py(g->finite);
                d["divisible_rank"] =
                    g->divisible_rank ? py::object(to_py(*g->divisible_rank))
                                      : py::object(py::none());
                return d;
            },
            py::arg("r"), py::arg("i"));

    m.def(
        "point_profile",
        [](const py::int_& q, long r_depth, long i_max) {
            return point_profile(int_from_py(q), r_depth, i_max);
        },
        py::arg("q"), py::arg("r_depth"), py::arg("i_max"));
    m.def("projective_bundle_profile", &projective_bundle_profile,
          py::arg("base"), py::arg("n"));
    m.def(
        "curve_profile",
        [](const std::vector<py::int_>& P, const py::int_& q, long e) {
            return curve_profile(ints_from_py(P), int_from_py(q), e);
        },
        py::arg("P"), py::arg("q"), py::arg("e") = 1,
        "Profile of a smooth projective curve with zeta numerator P");
    m.def(
        "profile_from_json",
        [](const std::string& text, const std::string& base_dir) {
            return profile_from_json(Json::parse(text), base_dir);
        },
        py::arg("json_text"), py::arg("base_dir") = std::string("."));
    m.def(
        "regulator_product",
        [](const ChowProfile& profile, const py::int_& constant_field_degree,
           std::optional<py::int_> invert_p) {
            RegulatorAssembly A;
            A.dim = profile.dim;
            RegComponent comp;
            comp.profile = profile;
            comp.constant_field_degree = int_from_py(constant_field_degree);
            A.terms.push_back({{comp}});
            validate_assembly(A);
            return to_py(regulator_chi(A, lambda_from_py(invert_p)).product);
        },
        py::arg("profile"), py::arg("constant_field_degree") = 1,
        py::arg("invert_p") = std::nullopt,
        "Alternating product of degree-map Euler characteristics for a "
        "single smooth projective term");

    // --- scenarios --------------------------------------------------------
    m.def(
        "run_scenarios",
        [](const std::vector<std::string>& paths, unsigned jobs) {
            std::ostringstream table;
            std::vector<Json> reports;
            int code = run_scenario_files(paths, jobs, table, &reports);
            py::list out;
            py::object loads = py::module_::import("json").attr("loads");
            for (const auto& r : reports) out.append(loads(r.dump()));
            return py::make_tuple(code, out, table.str());
        },
        py::arg("paths"), py::arg("jobs") = 0,
        "Run verification scenarios; returns (exit_code, reports, table)");
}
