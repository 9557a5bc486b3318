#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nneig/eigensolver.hpp"
#include "nneig/error.hpp"
#include "nneig/extreme.hpp"
#include "nneig/matgen.hpp"
#include "nneig/polyapprox.hpp"
#include "nneig/pseudospectra.hpp"
#include "nneig/report.hpp"
#include "nneig/sigma_oracle.hpp"

namespace py = pybind11;
using namespace nneig;

namespace {

// nlohmann json -> plain Python objects
py::object to_python(const nlohmann::json& j) {
    switch (j.type()) {
        case nlohmann::json::value_t::null: return py::none();
        case nlohmann::json::value_t::boolean: return py::bool_(j.get<bool>());
        case nlohmann::json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
        case nlohmann::json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
        case nlohmann::json::value_t::number_float: return py::float_(j.get<double>());
        case nlohmann::json::value_t::string: return py::str(j.get<std::string>());
        case nlohmann::json::value_t::array: {
            py::list out;
            for (const auto& v : j) out.append(to_python(v));
            return out;
        }
        case nlohmann::json::value_t::object: {
            py::dict out;
            for (const auto& [k, v] : j.items()) out[py::str(k)] = to_python(v);
            return out;
        }
        default: return py::none();
    }
}

SigmaOracleConfig oracle(const std::string& mode, double precision, std::uint64_t seed) {
    if (mode != "exact" && mode != "noisy") fail(ErrorKind::input, "oracle must be 'exact' or 'noisy'");
    return {mode == "noisy" ? OracleMode::noisy : OracleMode::exact, precision, 0.0, seed};
}

Region region_of(const std::string& name) {
    if (name == "disk") return Region::whole();
    if (name == "right-half") return Region::right_half();
    if (name == "real") return Region::real_segment(-2.0, 2.0);
    fail(ErrorKind::input, "region must be disk, right-half or real");
}

SolverParams solver(double eps, double kappa, int m, const std::string& mode, double p_fail, double oracle_eps,
                    std::uint64_t seed, bool normalize, const std::string& region) {
    SolverParams p;
    p.epsilon = eps;
    p.kappa = kappa;
    p.m = m;
    p.p_fail = p_fail;
    p.oracle = oracle(mode, oracle_eps, seed);
    p.normalize = normalize;
    p.region = region_of(region);
    return p;
}

ExtremeParams extreme(double eps, double kappa, int m, bool normalize) {
    ExtremeParams p;
    p.epsilon = eps;
    p.kappa = kappa;
    p.m = m;
    p.normalize = normalize;
    return p;
}

TraceDetail detail(bool full) { return full ? TraceDetail::full : TraceDetail::summary; }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Eigenvalue estimation for non-normal matrices from smallest-singular-value queries";

    py::register_exception<Error>(m, "NneigError", PyExc_ValueError);

    m.def("sigma0", [](const Eigen::MatrixXcd& a, cplx mu) { return SigmaOracle(ComplexMatrix(a), {}).exact(mu); },
          py::arg("a"), py::arg("mu"), "Smallest singular value of A - mu I.");

    m.def(
        "estimate_eigenvalue",
        [](const Eigen::MatrixXcd& a, double eps, double kappa, int mm, const std::string& mode, double p_fail,
           double oracle_eps, std::uint64_t seed, bool normalize, bool full_trace) {
            const auto p = solver(eps, kappa, mm, mode, p_fail, oracle_eps, seed, normalize, "disk");
            return to_python(to_json(estimate_eigenvalue(ComplexMatrix(a), p), detail(full_trace)));
        },
        py::arg("a"), py::arg("eps") = 1e-3, py::arg("kappa") = 1.0, py::arg("m") = 1, py::arg("oracle") = "exact",
        py::arg("p_fail") = 0.0, py::arg("oracle_eps") = 0.0, py::arg("seed") = 0, py::arg("normalize") = false,
        py::arg("full_trace") = false);

    m.def(
        "estimate_real_eigenvalue",
        [](const Eigen::MatrixXcd& a, double eps, double kappa, int mm, bool normalize, bool full_trace) {
            const auto p = solver(eps, kappa, mm, "exact", 0.0, 0.0, 0, normalize, "disk");
            return to_python(to_json(estimate_real_eigenvalue(ComplexMatrix(a), p), detail(full_trace)));
        },
        py::arg("a"), py::arg("eps") = 1e-3, py::arg("kappa") = 1.0, py::arg("m") = 1, py::arg("normalize") = false,
        py::arg("full_trace") = false);

    m.def(
        "has_eigenvalue_in_region",
        [](const Eigen::MatrixXcd& a, const std::string& region, double eps, double kappa, int mm) {
            const auto p = solver(eps, kappa, mm, "exact", 0.0, 0.0, 0, false, region);
            return to_python(to_json(has_eigenvalue_in_region(ComplexMatrix(a), p), TraceDetail::summary));
        },
        py::arg("a"), py::arg("region") = "right-half", py::arg("eps") = 1e-3, py::arg("kappa") = 1.0,
        py::arg("m") = 1);

    m.def(
        "smallest_modulus_eigenvalue",
        [](const Eigen::MatrixXcd& a, double eps, double kappa, int mm, bool normalize) {
            return to_python(to_json(smallest_modulus_eigenvalue(ComplexMatrix(a), extreme(eps, kappa, mm, normalize)),
                                     TraceDetail::summary));
        },
        py::arg("a"), py::arg("eps") = 1e-3, py::arg("kappa") = 1.0, py::arg("m") = 1, py::arg("normalize") = false);

    m.def(
        "largest_modulus_eigenvalue",
        [](const Eigen::MatrixXcd& a, double eps, double kappa, int mm, bool normalize) {
            return to_python(to_json(largest_modulus_eigenvalue(ComplexMatrix(a), extreme(eps, kappa, mm, normalize)),
                                     TraceDetail::summary));
        },
        py::arg("a"), py::arg("eps") = 1e-3, py::arg("kappa") = 1.0, py::arg("m") = 1, py::arg("normalize") = false);

    m.def(
        "spectral_gap",
        [](const Eigen::MatrixXcd& a, double eps, double kappa, int mm, bool normalize) {
            return to_python(
                to_json(spectral_gap(ComplexMatrix(a), extreme(eps, kappa, mm, normalize)), TraceDetail::summary));
        },
        py::arg("a"), py::arg("eps") = 1e-3, py::arg("kappa") = 1.0, py::arg("m") = 1, py::arg("normalize") = false);

    m.def(
        "jordan_matrix",
        [](const std::vector<cplx>& eigenvalues, std::vector<int> block_sizes, double kappa, std::uint64_t seed) {
            if (block_sizes.empty()) block_sizes.assign(eigenvalues.size(), 1);
            const auto g = jordan_matrix({eigenvalues, block_sizes, kappa, seed});
            return py::make_tuple(g.matrix.eigen(), to_python(metadata_json(g)));
        },
        py::arg("eigenvalues"), py::arg("block_sizes") = std::vector<int>{}, py::arg("kappa") = 1.0,
        py::arg("seed") = 0, "Returns (matrix, metadata).");

    m.def(
        "companion_matrix",
        [](const std::vector<cplx>& coeffs) {
            const auto g = companion_matrix(coeffs);
            return py::make_tuple(g.matrix.eigen(), g.scale);
        },
        py::arg("coeffs"), "Coefficients low order first, monic leading term implied. Returns (matrix, scale).");

    py::class_<ChebPoly>(m, "ChebPoly")
        .def_readonly("coeffs", &ChebPoly::coeffs)
        .def_readonly("a", &ChebPoly::a)
        .def_readonly("b", &ChebPoly::b)
        .def_readonly("bounded", &ChebPoly::bounded)
        .def_property_readonly("degree", &ChebPoly::degree)
        .def("__call__", py::overload_cast<double>(&ChebPoly::operator(), py::const_))
        .def("__call__", py::overload_cast<const std::vector<double>&>(&ChebPoly::operator(), py::const_));

    m.def("cheb_sqrt", &cheb_sqrt, py::arg("eta"), py::arg("eps"));
    m.def("heaviside_poly", &heaviside_poly, py::arg("eta"), py::arg("eps"));
    m.def("sqrt_product", &sqrt_product, py::arg("eta"), py::arg("eps"));

    m.def(
        "verify_hmu",
        [](const Eigen::MatrixXcd& a, cplx mu, double nu, double eps) {
            return to_python(to_json(verify_hmu(ComplexMatrix(a), mu, nu, eps)));
        },
        py::arg("a"), py::arg("mu"), py::arg("nu") = 0.01, py::arg("eps") = 1e-2);

    m.def(
        "pspec_grid",
        [](const Eigen::MatrixXcd& a, std::vector<double> box, int resolution) {
            if (box.size() != 4) fail(ErrorKind::input, "box needs re_min, re_max, im_min, im_max");
            const auto g = pspec_grid(ComplexMatrix(a), {box[0], box[1], box[2], box[3]}, resolution);
            Eigen::MatrixXd v(resolution, resolution);
            for (int j = 0; j < resolution; ++j)
                for (int i = 0; i < resolution; ++i) v(j, i) = g.at(i, j);
            return v;
        },
        py::arg("a"), py::arg("box"), py::arg("resolution"), "sigma_0 on the grid, rows along Im, columns along Re.");
}
