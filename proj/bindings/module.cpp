#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

#include "hypercrit/conjugacy.hpp"
#include "hypercrit/counting.hpp"
#include "hypercrit/cylinder.hpp"
#include "hypercrit/density.hpp"
#include "hypercrit/errors.hpp"
#include "hypercrit/irs.hpp"
#include "hypercrit/json_io.hpp"
#include "hypercrit/plane.hpp"
#include "hypercrit/series.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace hypercrit;

namespace {

py::object big_to_py(const BigInt& b) {
    PyObject* v = PyLong_FromString(b.to_string().c_str(), nullptr, 10);
    if (!v) throw py::error_already_set();
    return py::reinterpret_steal<py::object>(v);
}

py::object json_to_py(const Json& j) {
    switch (j.type()) {
        case Json::value_t::null: return py::none();
        case Json::value_t::boolean: return py::bool_(j.get<bool>());
        case Json::value_t::number_integer: return py::int_(j.get<long long>());
        case Json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
        case Json::value_t::number_float: return py::float_(j.get<double>());
        case Json::value_t::string: return py::str(j.get<std::string>());
        case Json::value_t::array: {
            py::list out;
            for (const auto& e : j) out.append(json_to_py(e));
            return out;
        }
        case Json::value_t::object: {
            py::dict out;
            for (const auto& [k, v] : j.items()) out[py::str(k)] = json_to_py(v);
            return out;
        }
        default: return py::none();
    }
}

Json py_json(const py::object& obj) {
    return Json::parse(py::str(py::module_::import("json").attr("dumps")(obj)).cast<std::string>());
}

PermutationAction action_from(int rank, const std::vector<std::vector<int>>& perms) {
    return PermutationAction::make(rank, perms);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Growth, Poincare series, conformal densities and invariant random subgroups "
              "on free-group Cayley trees and the hyperbolic plane";

    py::register_exception<InvalidInputError>(m, "InvalidInputError", PyExc_ValueError);
    py::register_exception<NotFoundError>(m, "NotFoundError", PyExc_LookupError);
    py::register_exception<UnsupportedOperationError>(m, "UnsupportedOperationError",
                                                      PyExc_NotImplementedError);

    // words and tree geometry
    m.def("reduce_word", [](const std::string& s, int rank) {
        return Word::parse(s, rank).str();
    }, py::arg("letters"), py::arg("rank") = 2);
    m.def("word_length", [](const std::string& s, int rank) {
        return Word::parse(s, rank).length();
    }, py::arg("word"), py::arg("rank") = 2);
    m.def("mul", [](const std::string& a, const std::string& b, int rank) {
        return (Word::parse(a, rank) * Word::parse(b, rank)).str();
    }, py::arg("a"), py::arg("b"), py::arg("rank") = 2);
    m.def("inverse", [](const std::string& a, int rank) {
        return Word::parse(a, rank).inverse().str();
    }, py::arg("a"), py::arg("rank") = 2);
    m.def("dist", [](const std::string& x, const std::string& y, int rank) {
        return tree_dist(Word::parse(x, rank), Word::parse(y, rank));
    }, py::arg("x"), py::arg("y"), py::arg("rank") = 2);
    m.def("gromov_product", [](const std::string& x, const std::string& y,
                               const std::string& base, int rank) {
        return 0.5 * gromov_product_doubled(Word::parse(x, rank), Word::parse(y, rank),
                                            Word::parse(base, rank));
    }, py::arg("x"), py::arg("y"), py::arg("base") = "", py::arg("rank") = 2);

    py::class_<TreeBoundaryPoint>(m, "BoundaryPoint")
        .def_static("make", [](const std::string& prefix, const std::string& tail, int rank) {
            return TreeBoundaryPoint::make(Word::parse(prefix, rank), Word::parse(tail, rank));
        }, py::arg("prefix"), py::arg("tail"), py::arg("rank") = 2)
        .def("__str__", &TreeBoundaryPoint::str)
        .def("__eq__", [](const TreeBoundaryPoint& a, const TreeBoundaryPoint& b) {
            return a == b;
        })
        .def("translated", [](const TreeBoundaryPoint& p, const std::string& g, int rank) {
            return p.translated(Word::parse(g, rank));
        }, py::arg("g"), py::arg("rank") = 2);

    m.def("visual_distance", [](const TreeBoundaryPoint& a, const TreeBoundaryPoint& b,
                                double base) { return visual_distance(a, b, base); },
          py::arg("a"), py::arg("b"), py::arg("base") = 2.718281828459045235360287);
    m.def("busemann", [](const TreeBoundaryPoint& xi, const std::string& x,
                         const std::string& y, int rank) {
        return busemann_tree(xi, Word::parse(x, rank), Word::parse(y, rank));
    }, py::arg("xi"), py::arg("x"), py::arg("y"), py::arg("rank") = 2);

    m.def("classify_isometry", [](const std::string& w, int rank) {
        return isometry_type_name(classify_tree_isometry(Word::parse(w, rank)));
    }, py::arg("word"), py::arg("rank") = 2);
    m.def("tree_axis", [](const std::string& h, int rank) {
        TreeAxis ax = tree_axis(Word::parse(h, rank));
        py::dict d;
        d["repelling"] = ax.repelling;
        d["attracting"] = ax.attracting;
        d["translation_length"] = ax.translation_length;
        return d;
    }, py::arg("h"), py::arg("rank") = 2);

    // plane model
    m.def("plane_dist", [](double xr, double xi, double yr, double yi) {
        return plane_dist(PlanePoint(xr, xi), PlanePoint(yr, yi));
    });
    m.def("classify_plane_isometry", [](double a, double b, double c, double d) {
        return isometry_type_name(classify_plane_isometry(PlaneIsometry(a, b, c, d)));
    });
    m.def("plane_axis", [](double a, double b, double c, double d) {
        PlaneAxis ax = plane_axis(PlaneIsometry(a, b, c, d));
        py::dict out;
        out["attracting"] = ax.attracting.at_infinity ? py::object(py::str("inf"))
                                                      : py::object(py::float_(ax.attracting.value));
        out["repelling"] = ax.repelling.at_infinity ? py::object(py::str("inf"))
                                                    : py::object(py::float_(ax.repelling.value));
        out["translation_length"] = ax.translation_length;
        return out;
    });
    m.def("plane_busemann", [](py::object xi, double xr, double xim, double yr, double yim) {
        PlaneBoundaryPoint b = xi.is_none() ? PlaneBoundaryPoint::infinity()
                                            : PlaneBoundaryPoint::at(xi.cast<double>());
        return busemann_plane(b, PlanePoint(xr, xim), PlanePoint(yr, yim));
    }, py::arg("xi"), py::arg("x_re"), py::arg("x_im"), py::arg("y_re"), py::arg("y_im"));

    // subgroups
    py::class_<SubgroupHandle>(m, "Subgroup")
        .def_static("full_group", &SubgroupHandle::full_group, py::arg("rank") = 2)
        .def_static("from_generators", [](std::vector<std::string> gens, int rank) {
            std::vector<Word> ws;
            for (const auto& g : gens) ws.push_back(Word::parse(g, rank));
            return SubgroupHandle::stallings(rank, ws);
        }, py::arg("generators"), py::arg("rank") = 2)
        .def_static("kernel_abelian", &SubgroupHandle::kernel_abelian, py::arg("rank"),
                    py::arg("images"))
        .def_static("kernel_finite", &SubgroupHandle::kernel_finite, py::arg("rank"),
                    py::arg("images"))
        .def_static("coset_stabilizer", [](int rank, std::vector<std::vector<int>> perms,
                                           int point) {
            return SubgroupHandle::coset_stabilizer(action_from(rank, perms), point);
        }, py::arg("rank"), py::arg("perms"), py::arg("point") = 0)
        .def_static("from_description", [](const py::object& desc, py::object rank) {
            std::optional<int> hint;
            if (!rank.is_none()) hint = rank.cast<int>();
            return subgroup_from_json(py_json(desc), hint);
        }, py::arg("description"), py::arg("rank") = py::none())
        .def("contains", [](const SubgroupHandle& h, const std::string& w) {
            return h.contains(Word::parse(w, h.rank()));
        })
        .def("conjugated", [](const SubgroupHandle& h, const std::string& g) {
            return h.conjugated(Word::parse(g, h.rank()));
        })
        .def_property_readonly("rank", &SubgroupHandle::rank)
        .def_property_readonly("canonical_key", &SubgroupHandle::canonical_key)
        .def_property_readonly("finite_index", [](const SubgroupHandle& h) -> py::object {
            if (!h.has_finite_index()) return py::none();
            return py::int_(h.finite_index());
        })
        .def("is_normal_on_generators", &SubgroupHandle::is_normal_on_generators)
        .def("description", [](const SubgroupHandle& h) { return json_to_py(subgroup_to_json(h)); });

    m.def("sphere_counts", [](const SubgroupHandle& h, int nmax) {
        py::list out;
        for (const BigInt& c : sphere_counts(h, nmax)) out.append(big_to_py(c));
        return out;
    }, py::arg("subgroup"), py::arg("nmax"));
    m.def("annulus_count", [](const SubgroupHandle& h, int r1, int r2) {
        return big_to_py(annulus_count(h, r1, r2).count);
    });
    m.def("coornaert_ratios", [](const SubgroupHandle& h, int window, int rmax, double dh) {
        return json_to_py(coornaert_to_json(coornaert_ratios(h, window, rmax, dh)));
    }, py::arg("subgroup"), py::arg("window"), py::arg("rmax"), py::arg("delta_hat"));

    // series
    m.def("poincare_partial", [](const SubgroupHandle& h, double s, int R) {
        return json_to_py(series_to_json(poincare_partial(h, s, R)));
    });
    m.def("critical_exponent_estimate", [](const SubgroupHandle& h, int rmax) {
        return json_to_py(exponent_to_json(critical_exponent_estimate(h, rmax)));
    });
    m.def("divergence_diagnostic", [](const SubgroupHandle& h, double dh, int rmax) {
        return json_to_py(divergence_to_json(divergence_diagnostic(h, dh, rmax)));
    });
    m.def("partial_poincare_over_action",
          [](const SubgroupHandle& h, int rank, std::vector<std::vector<int>> perms, int z,
             std::vector<int> U, double s, int R) {
              return json_to_py(series_to_json(
                  partial_poincare_over_action(h, action_from(rank, perms), z, U, s, R)));
          });
    m.def("conjugation_series", [](int rank, const std::string& h, std::vector<std::string> V,
                                   double s, int R) {
        std::vector<Word> ws;
        for (const auto& v : V) ws.push_back(Word::parse(v, rank));
        return json_to_py(series_to_json(
            conjugation_series(SubgroupHandle::full_group(rank), Word::parse(h, rank), ws, s, R)));
    });
    m.def("half_exponent_check", [](int rank, const std::string& h, std::vector<std::string> K,
                                    double s, int R) {
        std::vector<Word> ws;
        for (const auto& v : K) ws.push_back(Word::parse(v, rank));
        return json_to_py(half_exponent_to_json(
            half_exponent_check(rank, Word::parse(h, rank), ws, s, R)));
    });
    m.def("shortest_element_bound", [](int rank, const std::string& h,
                                       std::vector<std::string> K, double s, int R) {
        std::vector<Word> ws;
        for (const auto& v : K) ws.push_back(Word::parse(v, rank));
        return json_to_py(shortest_element_to_json(
            shortest_element_bound(rank, Word::parse(h, rank), ws, s, R)));
    });
    m.def("lambda0_from_delta", &lambda0_from_delta, py::arg("delta"), py::arg("dim"));

    // boundary
    m.def("shadow", [](int rank, const std::string& x, const std::string& y, int R) {
        return json_to_py(shadow_to_json(shadow(rank, Word::parse(x, rank),
                                                Word::parse(y, rank), R)));
    }, py::arg("rank"), py::arg("x"), py::arg("y"), py::arg("radius"));
    m.def("shadow_cover_check", [](const SubgroupHandle& h, int k, int R, int r) {
        return json_to_py(cover_to_json(shadow_cover_check(h, k, R, r)));
    });
    m.def("busemann_shadow_bounds_check", [](int rank, const std::string& x,
                                             const std::string& y, int R, int depth) {
        return json_to_py(busemann_bounds_to_json(
            busemann_shadow_bounds_check(rank, Word::parse(x, rank), Word::parse(y, rank), R,
                                         depth)));
    });
    m.def("ws_measure", [](const SubgroupHandle& h, double s, int R) {
        return json_to_py(orbit_measure_to_json(ws_measure(h, s, R)));
    });
    m.def("boundary_project", [](const SubgroupHandle& h, double s, int R, int depth) {
        return json_to_py(cylinder_measure_to_json(boundary_project(ws_measure(h, s, R), depth)));
    });
    m.def("exact_conformal_density", [](int rank, const std::string& x, int depth) {
        return json_to_py(cylinder_measure_to_json(
            exact_conformal_density(rank, Word::parse(x, rank), depth)));
    }, py::arg("rank"), py::arg("x") = "", py::arg("depth") = 3);
    m.def("shadow_lemma_check", [](const SubgroupHandle& h, int R, int rmax) {
        int rank = h.rank();
        CylinderMeasure nu = exact_conformal_density(rank, Word(), std::max(1, rmax - R));
        double dh = std::log(static_cast<double>(2 * rank - 1));
        return json_to_py(shadow_lemma_to_json(
            shadow_lemma_check(h, dh, 2 * rank - 1, R, rmax, nu)));
    }, py::arg("subgroup"), py::arg("radius"), py::arg("rmax"));
    m.def("exact_cocycle_pi", [](int rank, const std::string& g) {
        return pi_exact_full_group(rank, Word::parse(g, rank).inverse()).to_string();
    }, py::arg("rank"), py::arg("g"));
    m.def("cocycle_residual", [](int rank, const std::string& g, const std::string& h) {
        DensityFamily fam = exact_full_group_family(rank);
        CocycleResidual r = quasi_cocycle_residual(fam, SubgroupHandle::full_group(rank),
                                                   Word::parse(g, rank), Word::parse(h, rank));
        py::dict d;
        d["pi_gh"] = r.pi_gh;
        d["pi_g_conj"] = r.pi_g_conj;
        d["pi_h"] = r.pi_h;
        d["residual"] = r.residual;
        return d;
    }, py::arg("rank"), py::arg("g"), py::arg("h"));

    // invariant random subgroups
    py::class_<FiniteIrs>(m, "FiniteIrs")
        .def_static("from_finite_index", &irs_from_finite_index, py::arg("subgroup"))
        .def_static("dirac_at_normal", &irs_from_normal, py::arg("subgroup"))
        .def_static("from_description", [](const py::object& desc, py::object rank) {
            std::optional<int> hint;
            if (!rank.is_none()) hint = rank.cast<int>();
            return irs_from_json(py_json(desc), hint);
        }, py::arg("description"), py::arg("rank") = py::none())
        .def_property_readonly("rank", &FiniteIrs::rank)
        .def("support", [](const FiniteIrs& mu) {
            py::list out;
            for (const auto& m : mu.support()) {
                py::dict d;
                d["weight"] = m.weight;
                d["subgroup"] = m.subgroup;
                out.append(d);
            }
            return out;
        })
        .def("description", [](const FiniteIrs& mu) { return json_to_py(irs_to_json(mu)); });

    m.def("expected_critical_exponent", [](const FiniteIrs& mu, int rmax) {
        return json_to_py(expected_exponent_to_json(expected_critical_exponent(mu, rmax)));
    });
    m.def("theorem_one_check", [](const FiniteIrs& mu, int rmax) {
        return json_to_py(theorem_one_to_json(theorem_one_check(mu, rmax)));
    });
    m.def("recurrence_counts", [](int rank, std::vector<std::vector<int>> perms, int x,
                                  std::vector<int> U, int window, int rmax, double dh) {
        return json_to_py(recurrence_to_json(
            recurrence_counts(rank, action_from(rank, perms), x, U, window, rmax, dh)));
    });
    m.def("divergence_pipeline", [](const SubgroupHandle& delta, std::vector<std::string> V,
                                    int R) {
        std::vector<Word> ws;
        for (const auto& v : V) ws.push_back(Word::parse(v, delta.rank()));
        return json_to_py(pipeline_to_json(divergence_pipeline(delta, ws, R)));
    });
    m.def("summed_cocycle_check", [](const FiniteIrs& mu, double dh, int orbitR, int depth,
                                     int window, int rmax, int shadowR) {
        DensityFamily fam = irs_density_family(mu, dh, orbitR, depth);
        return json_to_py(summed_cocycle_to_json(
            summed_cocycle_check(mu, fam, window, rmax, shadowR)));
    }, py::arg("irs"), py::arg("delta_hat"), py::arg("orbit_radius") = 7, py::arg("depth") = 5,
       py::arg("window") = 1, py::arg("rmax") = 8, py::arg("shadow_radius") = 1);

#ifdef VERSION_INFO
    m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
    m.attr("__version__") = "dev";
#endif
}
