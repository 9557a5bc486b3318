// nneig: command-line front end for the eigenvalue search library.
//
// Every run prints one JSON document (stdout or --out) holding the resolved
// configuration and the result. Failures print {"error": {...}} and exit with
//   2 input, 3 bound violation, 4 probabilistic failure, 5 approximation.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nneig/eigensolver.hpp"
#include "nneig/error.hpp"
#include "nneig/extreme.hpp"
#include "nneig/matgen.hpp"
#include "nneig/matrix_io.hpp"
#include "nneig/polyapprox.hpp"
#include "nneig/pseudospectra.hpp"
#include "nneig/report.hpp"

using nlohmann::json;
using namespace nneig;

namespace {

enum Exit { ok = 0, input_error = 2, bound_violation = 3, probabilistic = 4, approximation = 5 };

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::bound_violation: return bound_violation;
        case ErrorKind::probabilistic: return probabilistic;
        case ErrorKind::approximation: return approximation;
        default: return input_error;
    }
}

std::string category(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::bound_violation: return "bound-violation";
        case ErrorKind::probabilistic: return "probabilistic-failure";
        case ErrorKind::approximation: return "approximation";
        default: return "input";
    }
}

// Outcome of a search that returned instead of throwing.
int exit_code(FailureKind kind) {
    switch (kind) {
        case FailureKind::none: return ok;
        case FailureKind::bound_violation: return bound_violation;
        case FailureKind::probabilistic: return probabilistic;
    }
    return input_error;
}

cplx parse_complex(std::string s) {
    static const std::string num = R"((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)";
    static const std::regex full("^([+-]?" + num + ")(?:([+-])(" + num + ")?[ij])?$");
    static const std::regex imag("^([+-]?)(" + num + ")?[ij]$");
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    std::smatch m;
    if (std::regex_match(s, m, full)) {
        const double re = std::stod(m[1]);
        if (!m[2].matched) return {re, 0.0};
        const double im = m[3].matched ? std::stod(m[3]) : 1.0;
        return {re, m[2] == "-" ? -im : im};
    }
    if (std::regex_match(s, m, imag)) {
        const double im = m[2].matched ? std::stod(m[2]) : 1.0;
        return {0.0, m[1] == "-" ? -im : im};
    }
    fail(ErrorKind::input, "cannot parse complex number '" + s + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::vector<cplx> parse_complex_list(const std::string& s) {
    std::vector<cplx> out;
    for (const auto& item : split(s, ',')) out.push_back(parse_complex(item));
    return out;
}

std::vector<double> parse_real_list(const std::string& s) {
    std::vector<double> out;
    for (const auto& item : split(s, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            fail(ErrorKind::input, "cannot parse number '" + item + "'");
        }
    }
    return out;
}

struct Options {
    std::string in;
    std::string out;
    double eps = 1e-3;
    double kappa = 1.0;
    int m = 1;
    double pfail = 0.0;
    std::string oracle = "exact";
    double oracle_eps = 0.0;
    std::uint64_t seed = 0;
    bool normalize = false;
    std::string region = "disk";
    double nu = 0.01;
    double eta = 0.1;
    int resolution = 100;
    std::string trace = "full";

    // subcommand specific
    std::string which = "smallest";
    std::string lambda;
    double gap = 0.0;
    std::string box = "-1.2,1.2,-1.2,1.2";
    std::string eps_list = "1e-3,1e-2,1e-1";
    std::string meta;
    std::string csv;
    std::string eigs;
    std::string blocks;
    std::string monic;
    int max_escalations = 6;
    std::string mu = "0";
    int points = 201;
};

SigmaOracleConfig oracle_config(const Options& o) {
    SigmaOracleConfig c;
    c.mode = o.oracle == "noisy" ? OracleMode::noisy : OracleMode::exact;
    c.precision = o.oracle_eps;
    c.seed = o.seed;
    return c;
}

Region region_of(const std::string& name) {
    if (name == "right-half") return Region::right_half();
    if (name == "real") return Region::real_segment(-2.0, 2.0);
    return Region::whole();
}

SolverParams solver_params(const Options& o) {
    SolverParams p;
    p.epsilon = o.eps;
    p.kappa = o.kappa;
    p.m = o.m;
    p.p_fail = o.pfail;
    p.oracle = oracle_config(o);
    p.region = region_of(o.region);
    p.normalize = o.normalize;
    return p;
}

ExtremeParams extreme_params(const Options& o) {
    ExtremeParams p;
    p.epsilon = o.eps;
    p.kappa = o.kappa;
    p.m = o.m;
    p.oracle = oracle_config(o);
    p.normalize = o.normalize;
    return p;
}

TraceDetail detail(const Options& o) { return o.trace == "summary" ? TraceDetail::summary : TraceDetail::full; }

ComplexMatrix input_matrix(const Options& o) {
    if (o.in.empty()) fail(ErrorKind::input, "--in is required");
    return read_matrix(o.in);
}

json config_json(const std::string& command, const Options& o) {
    return {{"command", command},   {"in", o.in},         {"eps", o.eps},
            {"kappa", o.kappa},     {"m", o.m},           {"pfail", o.pfail},
            {"oracle", o.oracle},   {"oracle_eps", o.oracle_eps}, {"seed", o.seed},
            {"normalize", o.normalize}, {"region", o.region}, {"nu", o.nu},
            {"eta", o.eta},         {"resolution", o.resolution}, {"trace", o.trace}};
}

struct RunResult {
    json result;
    int code = ok;
};

RunResult run_eig(const Options& o) {
    const auto a = input_matrix(o);
    auto p = solver_params(o);
    if (o.region != "disk") {
        const auto r = has_eigenvalue_in_region(a, p);
        const int code = r.trace.outcome == Outcome::failure ? exit_code(r.trace.failure) : ok;
        return {to_json(r, detail(o)), code};
    }
    const auto r = estimate_eigenvalue(a, p);
    return {to_json(r, detail(o)), exit_code(r.trace.failure)};
}

RunResult run_eig_real(const Options& o) {
    const auto r = estimate_real_eigenvalue(input_matrix(o), solver_params(o));
    return {to_json(r, detail(o)), exit_code(r.trace.failure)};
}

RunResult run_extreme(const Options& o) {
    const auto a = input_matrix(o);
    const auto p = extreme_params(o);
    const auto r = o.which == "largest" ? largest_modulus_eigenvalue(a, p) : smallest_modulus_eigenvalue(a, p);
    auto j = to_json(r, detail(o));
    j["which"] = o.which;
    return {j, exit_code(r.trace.failure)};
}

RunResult run_gap(const Options& o) {
    const auto r = spectral_gap(input_matrix(o), extreme_params(o));
    const int code = r.ok() ? ok : exit_code(r.second.ok() ? r.first.trace.failure : r.second.trace.failure);
    return {to_json(r, detail(o)), code};
}

RunResult run_eigvec(const Options& o) {
    const auto a = input_matrix(o);
    if (!(o.gap > 0.0)) fail(ErrorKind::input, "--gap (a lower bound on the spectral gap) is required");
    json j;
    cplx lambda;
    std::optional<double> err;
    if (o.lambda.empty()) {
        const auto e = estimate_eigenvalue(a, solver_params(o));
        j["estimate"] = to_json(e, detail(o));
        if (!e.ok()) return {j, exit_code(e.trace.failure)};
        lambda = e.value;
        err = e.error_bound;
    } else {
        lambda = parse_complex(o.lambda);
    }
    const auto v = eigenvector_for(a, lambda, o.gap, err);
    j.update(to_json(v));
    j["eigenvalue"] = complex_to_json(lambda);
    return {j, ok};
}

RunResult run_pspec(const Options& o) {
    const auto a = input_matrix(o);
    const auto b = parse_real_list(o.box);
    if (b.size() != 4) fail(ErrorKind::input, "--box needs re_min,re_max,im_min,im_max");
    const auto eps = parse_real_list(o.eps_list);
    const auto grid = pspec_grid(a, {b[0], b[1], b[2], b[3]}, o.resolution);
    json j = json::parse(sidecar_json(grid, eps));
    j["lipschitz_excess"] = lipschitz_excess(grid);
    if (!o.csv.empty()) {
        std::ofstream csv(o.csv);
        if (!csv) fail(ErrorKind::input, "cannot write " + o.csv);
        write_csv(grid, csv);
        std::ofstream side(o.csv + ".json");
        side << sidecar_json(grid, eps) << '\n';
        j["csv"] = o.csv;
    }
    if (!o.meta.empty()) {
        std::ifstream in(o.meta);
        if (!in) fail(ErrorKind::input, "cannot read " + o.meta);
        const json meta = json::parse(in, nullptr, false);
        if (meta.is_discarded()) fail(ErrorKind::parse, "metadata is not valid JSON");
        const json& md = meta.contains("metadata") ? meta["metadata"] : meta;
        std::vector<cplx> eigs;
        for (const auto& z : md.at("true_eigenvalues")) eigs.push_back(complex_from_json(z));
        const double kappa = md.value("jordan_kappa", json(nullptr)).is_number() ? md["jordan_kappa"].get<double>()
                                                                                 : md.value("kappa_used", 1.0);
        const int m = md.value("m_max", json(nullptr)).is_number() ? md["m_max"].get<int>() : 1;
        const auto report = check_inclusions(grid, eigs, kappa, m, eps);
        j["inclusions"] = to_json(report);
    }
    return {j, ok};
}

RunResult run_gen(const Options& o) {
    if (o.eigs.empty()) fail(ErrorKind::input, "--eigs is required");
    JordanSpec spec;
    spec.eigenvalues = parse_complex_list(o.eigs);
    if (o.blocks.empty()) {
        spec.block_sizes.assign(spec.eigenvalues.size(), 1);
    } else {
        for (double b : parse_real_list(o.blocks)) spec.block_sizes.push_back(static_cast<int>(b));
    }
    spec.kappa_target = o.kappa;
    spec.seed = o.seed;
    const auto g = jordan_matrix(spec);
    if (!o.out.empty()) write_matrix(g.matrix, o.out);
    return {{{"matrix", matrix_to_json(g.matrix)}, {"metadata", metadata_json(g)}}, ok};
}

RunResult run_roots(const Options& o) {
    auto coeffs = parse_complex_list(o.monic);
    if (coeffs.size() < 2) fail(ErrorKind::input, "--monic needs at least two coefficients");
    json j;
    if (coeffs.front() != cplx(1.0)) {
        const cplx lead = coeffs.front();
        if (lead == cplx(0.0)) fail(ErrorKind::input, "leading coefficient must be nonzero");
        for (auto& c : coeffs) c /= lead;
        j["warnings"] = {"coefficients divided by the leading coefficient"};
    }
    // Companion form wants low order first without the leading one.
    const std::vector<cplx> low(coeffs.rbegin(), coeffs.rend() - 1);
    const auto g = companion_matrix(low);
    auto p = solver_params(o);
    p.region = Region::whole();

    // The companion matrix's condition number is unknown: retry with a
    // larger kappa after each bound violation.
    json attempts = json::array();
    for (int k = 0; k <= o.max_escalations; ++k) {
        const auto r = estimate_eigenvalue(g.matrix, p);
        attempts.push_back({{"kappa", p.kappa}, {"outcome", to_string(r.trace.outcome)}});
        if (r.ok()) {
            j["root"] = complex_to_json(r.value * g.scale);
            j["error_bound"] = r.error_bound * g.scale;
            j["scale"] = g.scale;
            j["kappa"] = p.kappa;
            j["attempts"] = attempts;
            j["trace"] = to_json(r.trace, detail(o));
            return {j, ok};
        }
        if (r.trace.failure != FailureKind::bound_violation) {
            j["attempts"] = attempts;
            j["trace"] = to_json(r.trace, detail(o));
            return {j, exit_code(r.trace.failure)};
        }
        p.kappa *= 10.0;
    }
    j["attempts"] = attempts;
    return {j, bound_violation};
}

RunResult run_approx_sqrt(const Options& o) {
    const auto p = sqrt_product(o.eta, o.eps);
    const auto sweep = sweep_sqrt_product(p, o.eta);
    json j{{"eta", o.eta},
           {"eps", o.eps},
           {"degree", p.degree()},
           {"max_abs", sweep.max_abs},
           {"max_sqrt_error", sweep.max_sqrt_error},
           {"sweep_points", sweep.points}};
    if (!o.csv.empty()) {
        std::ofstream csv(o.csv);
        if (!csv) fail(ErrorKind::input, "cannot write " + o.csv);
        csv.precision(17);
        csv << "x,p,sqrt,error\n";
        for (double x : sweep_points({{-1.0, 1.0}}, o.points)) {
            const double r = x >= 0.0 ? std::sqrt(x) : NAN;
            csv << x << ',' << p(x) << ',' << r << ',' << (x >= 0.0 ? p(x) - r : NAN) << '\n';
        }
        j["csv"] = o.csv;
    }
    if (!o.in.empty()) {
        const auto a = read_matrix(o.in);
        if (std::abs(o.eta - o.nu / (1.0 + o.nu)) > 1e-15) {
            j["hmu"] = to_json(verify_hmu(a, parse_complex(o.mu), o.nu, o.eps));
        } else {
            j["hmu"] = to_json(verify_hmu(a, parse_complex(o.mu), o.nu, o.eps, p));
        }
    }
    return {j, ok};
}

void emit(const json& doc, const std::string& path) {
    const std::string text = doc.dump(2) + "\n";
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        std::cerr << "nneig: cannot write " << path << '\n';
        std::cout << text;
        return;
    }
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Eigenvalue estimation for non-normal matrices from smallest-singular-value queries"};
    app.require_subcommand(1);
    Options o;

    auto common = [&o](CLI::App* sub, bool search) {
        sub->add_option("--in", o.in, "input matrix (.json or .mtx)");
        sub->add_option("--out", o.out, "write the result JSON here instead of stdout");
        sub->add_option("--eps", o.eps, "target accuracy")->check(CLI::PositiveNumber);
        sub->add_option("--seed", o.seed, "random seed");
        sub->add_option("--trace", o.trace, "trace detail")->check(CLI::IsMember({"full", "summary"}));
        if (!search) return;
        sub->add_option("--kappa", o.kappa, "upper bound on the Jordan condition number")->check(CLI::Range(1.0, 1e300));
        sub->add_option("--m", o.m, "upper bound on the largest Jordan block")->check(CLI::Range(1, 64));
        sub->add_option("--pfail", o.pfail, "overall failure probability (noisy oracle)")->check(CLI::Range(0.0, 1.0));
        sub->add_option("--oracle", o.oracle, "sigma_0 oracle")->check(CLI::IsMember({"exact", "noisy"}));
        sub->add_option("--oracle-eps", o.oracle_eps, "noisy oracle precision (default: delta / 4 per level)");
        sub->add_flag("--normalize", o.normalize, "divide A by its norm when it exceeds 1");
    };

    auto* eig = app.add_subcommand("eig", "estimate one eigenvalue (grid search)");
    common(eig, true);
    eig->add_option("--region", o.region, "restrict the search; non-disk regions report found / none")
        ->check(CLI::IsMember({"disk", "right-half", "real"}));

    auto* eig_real = app.add_subcommand("eig-real", "estimate one eigenvalue of a matrix with real spectrum");
    common(eig_real, true);

    auto* extreme = app.add_subcommand("extreme", "eigenvalue of smallest or largest modulus");
    common(extreme, true);
    extreme->add_option("--which", o.which, "smallest or largest")->check(CLI::IsMember({"smallest", "largest"}));

    auto* gap = app.add_subcommand("gap", "distance from the smallest-modulus eigenvalue to the next one");
    common(gap, true);

    auto* eigvec = app.add_subcommand("eigvec", "approximate eigenvector for an eigenvalue estimate");
    common(eigvec, true);
    eigvec->add_option("--lambda", o.lambda, "eigenvalue estimate, e.g. 0.5-0.2i (default: run eig first)");
    eigvec->add_option("--gap", o.gap, "lower bound on the distance to other eigenvalues")->required();

    auto* pspec = app.add_subcommand("pspec", "sigma_0 on a grid with optional inclusion checks");
    common(pspec, false);
    pspec->add_option("--resolution", o.resolution, "points per axis")->check(CLI::Range(2, 4096));
    pspec->add_option("--box", o.box, "re_min,re_max,im_min,im_max");
    pspec->add_option("--eps-list", o.eps_list, "comma separated eps values");
    pspec->add_option("--csv", o.csv, "write re,im,sigma0 rows here (sidecar at <csv>.json)");
    pspec->add_option("--meta", o.meta, "matrix metadata from `gen` for the inclusion check");

    auto* gen = app.add_subcommand("gen", "generate a matrix with prescribed Jordan structure");
    gen->add_option("--eigs", o.eigs, "eigenvalues, e.g. 0.5,-0.25+0.3i")->required();
    gen->add_option("--blocks", o.blocks, "Jordan block sizes (default all 1)");
    gen->add_option("--kappa", o.kappa, "condition number of the similarity")->check(CLI::Range(1.0, 1e12));
    gen->add_option("--seed", o.seed, "random seed");
    gen->add_option("--out", o.out, "write the matrix here (metadata goes to stdout)");

    auto* roots = app.add_subcommand("roots", "one root of a monic polynomial via its companion matrix");
    common(roots, true);
    roots->add_option("--monic", o.monic, "coefficients, leading first, e.g. 1,0,-0.25")->required();
    roots->add_option("--max-escalations", o.max_escalations, "kappa increases (x10) after bound violations")
        ->check(CLI::Range(0, 30));

    auto* approx = app.add_subcommand("approx-sqrt", "bounded polynomial approximation of sqrt on [eta, 1]");
    common(approx, false);
    approx->add_option("--eta", o.eta, "lower end of the accuracy interval")->check(CLI::Range(0.0, 1.0));
    approx->add_option("--nu", o.nu, "regularization for the H_mu check (with --in)")->check(CLI::PositiveNumber);
    approx->add_option("--mu", o.mu, "shift for the H_mu check");
    approx->add_option("--csv", o.csv, "write x,p,sqrt,error rows here");
    approx->add_option("--points", o.points, "rows in the CSV table")->check(CLI::Range(2, 1000000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : input_error;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();
    json doc{{"config", config_json(command, o)}};
    if (command == "eigvec") doc["config"]["gap"] = o.gap;
    if (command == "roots") doc["config"]["monic"] = o.monic;
    if (command == "approx-sqrt") doc["config"]["mu"] = o.mu;
    if (command == "gen") doc["config"] = {{"command", command}, {"eigs", o.eigs}, {"blocks", o.blocks},
                                           {"kappa", o.kappa}, {"seed", o.seed}};

    int code = ok;
    try {
        RunResult r;
        if (command == "eig") r = run_eig(o);
        else if (command == "eig-real") r = run_eig_real(o);
        else if (command == "extreme") r = run_extreme(o);
        else if (command == "gap") r = run_gap(o);
        else if (command == "eigvec") r = run_eigvec(o);
        else if (command == "pspec") r = run_pspec(o);
        else if (command == "gen") r = run_gen(o);
        else if (command == "roots") r = run_roots(o);
        else r = run_approx_sqrt(o);
        doc.update(r.result);
        code = r.code;
        if (code != ok) doc["error"] = {{"category", code == bound_violation ? "bound-violation" : "probabilistic-failure"}};
    } catch (const Error& e) {
        doc["error"] = {{"category", category(e.kind())}, {"kind", std::string(to_string(e.kind()))},
                        {"message", e.what()}};
        code = exit_code(e.kind());
        std::cerr << "nneig: " << e.what() << '\n';
    } catch (const std::exception& e) {
        doc["error"] = {{"category", "input"}, {"message", e.what()}};
        code = input_error;
        std::cerr << "nneig: " << e.what() << '\n';
    }
    // gen writes the matrix to --out; its metadata always goes to stdout.
    emit(doc, command == "gen" ? std::string() : o.out);
    return code;
}
