#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "latticeforge/latticeforge.hpp"

namespace py = pybind11;
namespace lf = latticeforge;

namespace {

lf::PointSet as_point_set(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw std::invalid_argument("empty point set");
    lf::PointSet p;
    p.n = static_cast<std::int64_t>(rows.size());
    p.dims = static_cast<int>(rows.front().size());
    p.data.reserve(rows.size() * rows.front().size());
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != p.dims)
            throw std::invalid_argument("ragged point set");
        for (double v : row) p.data.push_back(v);
    }
    return p;
}

std::vector<std::vector<double>> as_rows(const lf::PointSet& p) {
    std::vector<std::vector<double>> rows;
    rows.reserve(static_cast<std::size_t>(p.n));
    for (std::int64_t k = 0; k < p.n; ++k) rows.push_back(p.row(k));
    return rows;
}

py::dict bound_to_dict(const lf::BoundReport& report) {
    py::dict components, assumptions;
    for (const auto& [k, v] : report.components) components[py::str(k)] = v;
    for (const auto& [k, v] : report.assumptions) assumptions[py::str(k)] = v;
    py::dict out;
    out["value"] = report.value;
    out["components"] = components;
    out["assumptions"] = assumptions;
    return out;
}

lf::CbcAlgorithm algorithm_from(const std::string& name) {
    if (name == "reduced") return lf::CbcAlgorithm::reduced;
    if (name == "fast") return lf::CbcAlgorithm::fast;
    if (name == "standard") return lf::CbcAlgorithm::standard;
    if (name == "exhaustive") return lf::CbcAlgorithm::exhaustive;
    throw std::invalid_argument("unknown algorithm '" + name + "'");
}

lf::PhiMethod phi_from(const std::string& name) {
    if (name == "direct") return lf::PhiMethod::direct;
    if (name == "fast") return lf::PhiMethod::fft;
    throw std::invalid_argument("unknown phi method '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "reduced CBC construction of rank-1 lattice generating vectors";

    py::register_exception<lf::ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<lf::ScaleLimitError>(m, "ScaleLimitError", PyExc_RuntimeError);

    py::class_<lf::Instance>(m, "Instance")
        .def_property_readonly("base", [](const lf::Instance& i) { return i.config.b; })
        .def_property_readonly("m", [](const lf::Instance& i) { return i.config.m; })
        .def_property_readonly("n", [](const lf::Instance& i) { return i.config.n; })
        .def_property_readonly("dims", [](const lf::Instance& i) { return i.dims; })
        .def("gamma", [](const lf::Instance& i, std::int64_t j) { return i.weights.gamma(j); })
        .def("w", [](const lf::Instance& i, std::int64_t j) { return i.schedule.w(j); })
        .def("__repr__", [](const lf::Instance& i) { return lf::format_instance(i); });

    py::class_<lf::GeneratingVector>(m, "GeneratingVector")
        .def_property_readonly("components",
                               [](const lf::GeneratingVector& g) {
                                   std::vector<std::tuple<int, std::int64_t, std::int64_t>> out;
                                   for (const auto& c : g.components)
                                       out.emplace_back(c.w, c.z, c.c);
                                   return out;
                               })
        .def_property_readonly("dims", &lf::GeneratingVector::dims)
        .def("__repr__", [](const lf::GeneratingVector& g) {
            std::ostringstream ss;
            ss << "GeneratingVector(z=[";
            for (int j = 0; j < g.dims(); ++j) {
                if (j) ss << ", ";
                ss << g.components[static_cast<std::size_t>(j)].z;
            }
            ss << "])";
            return ss.str();
        });

    py::class_<lf::DiscrepancyResult>(m, "DiscrepancyResult")
        .def_readonly("value", &lf::DiscrepancyResult::value)
        .def_readonly("witness_x", &lf::DiscrepancyResult::witness_x)
        .def_readonly("witness_u", &lf::DiscrepancyResult::witness_u)
        .def_readonly("closed_side", &lf::DiscrepancyResult::closed_side);

    py::class_<lf::ConstructionResult>(m, "CbcResult")
        .def_readonly("vector", &lf::ConstructionResult::vector)
        .def_readonly("step_r", &lf::ConstructionResult::step_r)
        .def_property_readonly("total_macs", [](const lf::ConstructionResult& r) {
            return r.cost.total_macs();
        });

    m.def(
        "make_instance",
        [](std::int64_t base, int m_exp, int dims, const std::string& weights,
           const std::string& reduction) {
            return lf::validate_instance(lf::LatticeConfig(base, m_exp),
                                         lf::parse_weights(weights),
                                         lf::parse_reduction(reduction), dims);
        },
        py::arg("base"), py::arg("m"), py::arg("dims"), py::arg("weights"),
        py::arg("reduction"));

    m.def("s_n", &lf::s_n, py::arg("n"));
    m.def(
        "s_n_asymptotic",
        [](std::int64_t n) {
            const auto r = lf::s_n_asymptotic(n);
            return py::make_tuple(r.approx, r.eps.lower, r.eps.upper);
        },
        py::arg("n"));

    m.def(
        "phi_table",
        [](std::int64_t base, int m_exp, const std::string& method) {
            return lf::phi_table(lf::LatticeConfig(base, m_exp), phi_from(method)).phi;
        },
        py::arg("base"), py::arg("m"), py::arg("method") = "direct");

    m.def(
        "t_direct",
        [](std::int64_t base, int m_exp, int w, std::int64_t k) {
            return lf::t_direct(lf::LatticeConfig(base, m_exp), w, k);
        },
        py::arg("base"), py::arg("m"), py::arg("w"), py::arg("k"));
    m.def(
        "t_closed_form",
        [](std::int64_t base, int m_exp, int w, std::int64_t k) {
            return lf::t_closed_form(lf::LatticeConfig(base, m_exp), w, k);
        },
        py::arg("base"), py::arg("m"), py::arg("w"), py::arg("k"));

    m.def(
        "search_space",
        [](std::int64_t base, int m_exp, int w) {
            return lf::search_space(lf::LatticeConfig(base, m_exp), w).members;
        },
        py::arg("base"), py::arg("m"), py::arg("w"));

    m.def(
        "construct",
        [](const lf::Instance& instance, const std::string& algorithm, bool strict_paper,
           const std::string& phi) {
            lf::CbcOptions options;
            options.strict_paper = strict_paper;
            options.phi_method = phi_from(phi);
            return lf::construct(instance, algorithm_from(algorithm), options);
        },
        py::arg("instance"), py::arg("algorithm") = "fast", py::arg("strict_paper") = false,
        py::arg("phi") = "direct");

    m.def(
        "evaluate",
        [](const lf::Instance& instance, const lf::GeneratingVector& z,
           const std::string& form) {
            const auto kernel = lf::phi_table(instance.config);
            if (form == "product")
                return lf::r_weighted_product(instance.config, instance.weights, z,
                                              instance.dims, kernel);
            if (form == "subset")
                return lf::r_weighted(instance.config, instance.weights, z, instance.dims,
                                      kernel);
            throw std::invalid_argument("form must be 'product' or 'subset'");
        },
        py::arg("instance"), py::arg("vector"), py::arg("form") = "product");

    m.def(
        "lattice_points",
        [](const lf::GeneratingVector& z) {
            return as_rows(lf::lattice_points(z.config, z));
        },
        py::arg("vector"));

    m.def("mean_bound",
          [](const lf::Instance& instance) { return bound_to_dict(lf::mean_bound(instance)); },
          py::arg("instance"));
    m.def("mean_r_bruteforce", &lf::mean_r_bruteforce, py::arg("instance"));
    m.def(
        "cbc_bound",
        [](const lf::Instance& instance, int d, bool log_bound) {
            return bound_to_dict(lf::cbc_bound(instance, d > 0 ? d : instance.dims, log_bound));
        },
        py::arg("instance"), py::arg("d") = 0, py::arg("log_bound") = false);
    m.def(
        "discrepancy_bound",
        [](const lf::Instance& instance, const lf::GeneratingVector* z,
           const std::string& form) {
            const auto f = form == "as-printed" ? lf::FirstTermForm::as_printed
                                                : lf::FirstTermForm::standard;
            return bound_to_dict(lf::discrepancy_bound_for_vector(instance, z, f));
        },
        py::arg("instance"), py::arg("vector") = nullptr, py::arg("form") = "standard");

    m.def(
        "sigma_d",
        [](const lf::Instance& instance, std::int64_t d) {
            const auto s = lf::sigma_d(instance.weights, instance.schedule, instance.config.b, d);
            return py::make_tuple(s.lower, s.upper);
        },
        py::arg("instance"), py::arg("d"));

    m.def(
        "n_star",
        [](const lf::Instance& instance, double epsilon, double delta, int m_max,
           bool log_bound) {
            const auto r = lf::n_star_estimate(instance.weights, instance.schedule,
                                               instance.config.b, instance.dims, epsilon,
                                               delta, m_max, log_bound);
            py::dict out;
            out["sigma_0"] = r.sigma_0;
            out["asymptotic_available"] = r.asymptotic_available;
            out["d_star"] = r.d_star;
            out["c_gamma_delta"] = r.c_gamma_delta;
            out["log_c_gamma_delta"] = r.log_c_gamma_delta;
            out["n_star_asymptotic_exponent"] = r.n_star_asymptotic_exponent;
            out["n_star_asymptotic"] = r.n_star_asymptotic;
            out["constructive_found"] = r.constructive_found;
            out["trivial_epsilon"] = r.trivial_epsilon;
            out["constructive_m"] = r.constructive_m;
            out["n_star_constructive"] = r.n_star_constructive;
            out["constructive_bound_value"] = r.constructive_bound_value;
            return out;
        },
        py::arg("instance"), py::arg("epsilon"), py::arg("delta") = 0.5,
        py::arg("m_max") = 20, py::arg("log_bound") = false);

    m.def(
        "local_discrepancy",
        [](const std::vector<std::vector<double>>& points, const std::vector<double>& x) {
            return lf::local_discrepancy(as_point_set(points), x);
        },
        py::arg("points"), py::arg("x"));

    m.def(
        "star_discrepancy_exact",
        [](const std::vector<std::vector<double>>& points) {
            return lf::star_discrepancy_exact(as_point_set(points));
        },
        py::arg("points"));

    m.def(
        "weighted_star_discrepancy_exact",
        [](const std::vector<std::vector<double>>& points, const lf::Instance& instance) {
            return lf::weighted_star_discrepancy_exact(as_point_set(points), instance.weights);
        },
        py::arg("points"), py::arg("instance"));

    m.def(
        "qmc_error_demo",
        [](const std::vector<std::vector<double>>& points, const std::string& family,
           const std::vector<double>& alpha, const lf::Instance* instance) {
            const auto fam = family == "product-quadratic" ? lf::TestFamily::product_quadratic
                                                           : lf::TestFamily::product_linear;
            if (family != "product-linear" && family != "product-quadratic")
                throw std::invalid_argument("family must be product-linear or product-quadratic");
            const auto r = lf::qmc_error_demo(as_point_set(points), fam, alpha,
                                              instance ? &instance->weights : nullptr);
            py::dict out;
            out["estimate"] = r.estimate;
            out["integral"] = r.integral;
            out["error"] = r.error;
            out["weighted_variation"] =
                r.weighted_variation ? py::cast(*r.weighted_variation) : py::none();
            return out;
        },
        py::arg("points"), py::arg("family"), py::arg("alpha"),
        py::arg("instance") = nullptr);

    m.attr("__version__") = "0.1.0";
}
