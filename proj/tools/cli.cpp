#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "frc/density.hpp"
#include "frc/errors.hpp"
#include "frc/escort.hpp"
#include "frc/measures.hpp"
#include "frc/quantum.hpp"
#include "frc/stam.hpp"
#include "json.hpp"

namespace frc::cli {

namespace {

constexpr const char* kVersion = "1.0.0";

// All floating-point output goes through one fixed 12-significant-digit
// format so identical invocations produce byte-identical files.
std::string fmt(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of negative zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// Report tables: commands fill one of these and a sink renders it as CSV
// (with '#' metadata comments) or as a JSON array of flat records.

struct Cell {
    enum class Kind { text, number, integer, flag, empty } kind;
    std::string text;
    double num = 0.0;
    long long i = 0;
    bool b = false;

    static Cell T(std::string s) { return {Kind::text, std::move(s)}; }
    static Cell N(double v) { return {Kind::number, "", v}; }
    static Cell I(long long v) { return {Kind::integer, "", 0.0, v}; }
    static Cell B(bool v) { return {Kind::flag, "", 0.0, 0, v}; }
    static Cell E() { return {Kind::empty, ""}; }
};

struct Table {
    std::vector<std::string> meta;     // rendered as "# ..." comment lines
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

// RFC 4180 quoting: wrap fields holding commas, quotes or newlines in
// double quotes, doubling any embedded quote
std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        q += ch;
        if (ch == '"') q += ch;
    }
    q += '"';
    return q;
}

std::string csv_cell(const Cell& c) {
    switch (c.kind) {
        case Cell::Kind::text: return csv_escape(c.text);
        case Cell::Kind::number: return fmt(c.num);
        case Cell::Kind::integer: return std::to_string(c.i);
        case Cell::Kind::flag: return c.b ? "1" : "0";
        case Cell::Kind::empty: return "";
    }
    return "";
}

void render_csv(const Table& t, std::ostream& os) {
    for (const std::string& m : t.meta) os << "# " << m << "\n";
    for (std::size_t j = 0; j < t.columns.size(); ++j)
        os << (j ? "," : "") << t.columns[j];
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t j = 0; j < row.size(); ++j)
            os << (j ? "," : "") << csv_cell(row[j]);
        os << "\n";
    }
}

void render_json(const Table& t, std::ostream& os) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json rec;
        for (std::size_t j = 0; j < row.size(); ++j) {
            const Cell& c = row[j];
            switch (c.kind) {
                case Cell::Kind::text: rec[t.columns[j]] = c.text; break;
                case Cell::Kind::number:
                    // round through the 12-digit format so both renderers
                    // carry the same numeric content
                    rec[t.columns[j]] = std::stod(fmt(c.num));
                    break;
                case Cell::Kind::integer: rec[t.columns[j]] = c.i; break;
                case Cell::Kind::flag: rec[t.columns[j]] = c.b; break;
                case Cell::Kind::empty: rec[t.columns[j]] = nullptr; break;
            }
        }
        arr.push_back(std::move(rec));
    }
    os << arr.dump(2) << "\n";
}

// Returns 0 or exit code 4 on I/O failure.
int emit(const Table& t, const std::string& format, const std::string& path) {
    std::ostringstream body;
    if (format == "json")
        render_json(t, body);
    else
        render_csv(t, body);
    if (path.empty()) {
        std::cout << body.str();
        return std::cout ? 0 : 4;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file '" << path << "'\n";
        return 4;
    }
    out << body.str();
    out.flush();
    if (!out) {
        std::cerr << "error: write to '" << path << "' failed\n";
        return 4;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Density-spec mini-grammar:
//   gaussian[:mu,sigma] | stretched:p,lambda | pbl:p,beta,lambda |
//   quantum:system,space,d,n,l[,constant]
// Grammar problems throw std::invalid_argument (usage, exit 1); parameter
// problems surface from the constructors as std::domain_error (exit 2).

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

double num_arg(const std::string& spec, const std::string& tok) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != tok.size())
        throw std::invalid_argument("density-spec '" + spec +
                                    "': expected a number, got '" + tok + "'");
    return v;
}

int int_arg(const std::string& spec, const std::string& tok) {
    const double v = num_arg(spec, tok);
    const int i = static_cast<int>(v);
    if (i != v)
        throw std::invalid_argument("density-spec '" + spec +
                                    "': expected an integer, got '" + tok +
                                    "'");
    return i;
}

DensityModel parse_density(const std::string& spec) {
    const std::size_t colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    std::vector<std::string> args;
    if (colon != std::string::npos)
        args = split(spec.substr(colon + 1), ',');

    const auto want = [&](std::size_t lo, std::size_t hi) {
        if (args.size() < lo || args.size() > hi)
            throw std::invalid_argument(
                "density-spec '" + spec + "': wrong number of parameters for " +
                name);
    };

    if (name == "gaussian") {
        want(0, 2);
        if (args.empty()) return gaussian(0.0, 1.0);
        want(2, 2);
        return gaussian(num_arg(spec, args[0]), num_arg(spec, args[1]));
    }
    if (name == "stretched") {
        want(2, 2);
        return stretched_gaussian(num_arg(spec, args[0]),
                                  num_arg(spec, args[1]));
    }
    if (name == "pbl") {
        want(3, 3);
        return pbl_gaussian(num_arg(spec, args[0]), num_arg(spec, args[1]),
                            num_arg(spec, args[2]));
    }
    if (name == "quantum") {
        want(5, 6);
        QuantumSystem sys;
        if (args[0] == "hydrogenic")
            sys = QuantumSystem::hydrogenic;
        else if (args[0] == "harmonic")
            sys = QuantumSystem::harmonic;
        else
            throw std::invalid_argument("density-spec '" + spec +
                                        "': unknown system '" + args[0] + "'");
        QuantumSpace sp;
        if (args[1] == "position")
            sp = QuantumSpace::position;
        else if (args[1] == "momentum")
            sp = QuantumSpace::momentum;
        else
            throw std::invalid_argument("density-spec '" + spec +
                                        "': unknown space '" + args[1] + "'");
        const int d = int_arg(spec, args[2]);
        const int n = int_arg(spec, args[3]);
        const int l = int_arg(spec, args[4]);
        const double c = args.size() == 6 ? num_arg(spec, args[5]) : 1.0;
        return radial_density(quantum_state(sys, sp, n, l, d, c));
    }
    throw std::invalid_argument("density-spec '" + spec +
                                "': unknown density family '" + name + "'");
}

// ---------------------------------------------------------------------------
// Shared measurement core. `strict` rethrows with the quantity named so
// single evaluations fail loudly; sweeps instead record a status marker.

struct MeasureRow {
    std::optional<double> F, N, C, K, ratio;
    std::string status = "ok";
};

template <typename Fn>
std::optional<double> grab(const char* quantity, bool strict,
                           std::string* status, Fn&& fn) {
    try {
        return fn();
    } catch (const divergence_error& e) {
        if (strict)
            throw divergence_error(std::string(quantity) + ": " + e.what());
        if (*status == "ok") *status = "divergent";
    } catch (const std::domain_error& e) {
        if (strict) throw std::domain_error(std::string(quantity) + ": " + e.what());
        if (*status == "ok") *status = "domain";
    }
    return std::nullopt;
}

MeasureRow measure_core(const DensityModel& rho, double p, double beta,
                        double lambda, double tol, bool strict) {
    MeasureRow row;
    row.K = grab("lower bound K", strict, &row.status,
                 [&] { return sharp_bound(p, beta, lambda).K; });
    row.F = grab("Fisher information F", strict, &row.status,
                 [&] { return fisher_info(rho, p, beta, tol); });
    row.N = grab("entropy power N", strict, &row.status,
                 [&] { return renyi_entropy_power(rho, lambda, tol); });
    if (row.F && row.N) row.C = std::pow(*row.F * *row.N, beta);
    if (row.C && row.K) row.ratio = *row.C / *row.K;
    return row;
}

Cell opt_cell(const std::optional<double>& v) {
    return v ? Cell::N(*v) : Cell::E();
}

// ---------------------------------------------------------------------------
// Option bundles.

struct CommonOpts {
    std::string format = "csv";
    std::string output;
    double tol = -1.0;  // sentinel: resolve against FRC_TOL, then 1e-10
};

double resolve_tol(const CommonOpts& c) {
    if (c.tol > 0.0) return c.tol;
    if (const char* env = std::getenv("FRC_TOL")) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(env, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != std::string(env).size() || !(v > 0.0))
            throw std::invalid_argument(
                std::string("FRC_TOL must be a positive number, got '") + env +
                "'");
        return v;
    }
    return 1e-10;
}

void add_common(CLI::App* cmd, CommonOpts* c) {
    // options may come from the command line or from the [command] section
    // of a --config file
    cmd->configurable();
    cmd->fallthrough();
    cmd->add_option("--format", c->format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--output", c->output,
                    "Write the report to this file instead of stdout");
    cmd->add_option("--tol", c->tol,
                    "Quadrature tolerance (default: FRC_TOL or 1e-10)");
}

std::vector<std::string> base_meta(const std::string& invocation, double tol) {
    return {std::string("frc ") + kVersion, "tolerance " + fmt(tol),
            "invocation: " + invocation};
}

// ---------------------------------------------------------------------------
// measure: one density, one (p, beta, lambda) triple, one record.

struct MeasureOpts {
    std::string density;
    double p = 0, beta = 0, lambda = 0;
    CommonOpts common;
};

int do_measure(const MeasureOpts& o, const std::string& invocation) {
    const double tol = resolve_tol(o.common);
    const MeasureParams mp = measure_params(o.p, o.beta, o.lambda);
    const DomainClass dc = classify(o.p, o.beta, o.lambda);
    const DensityModel rho = parse_density(o.density);
    const MeasureRow r =
        measure_core(rho, mp.p, mp.beta, mp.lambda, tol, /*strict=*/true);

    Table t;
    t.meta = base_meta(invocation, tol);
    t.columns = {"density", "p",    "beta", "lambda",     "F",
                 "N",       "C",    "K",    "C_over_K",   "in_D_tilde",
                 "in_D",    "on_L", "on_L_bar"};
    t.rows.push_back({Cell::T(o.density), Cell::N(o.p), Cell::N(o.beta),
                      Cell::N(o.lambda), opt_cell(r.F), opt_cell(r.N),
                      opt_cell(r.C), opt_cell(r.K), opt_cell(r.ratio),
                      Cell::B(dc.in_D_tilde), Cell::B(dc.in_D),
                      Cell::B(dc.on_L), Cell::B(dc.on_L_bar)});
    return emit(t, o.common.format, o.common.output);
}

// ---------------------------------------------------------------------------
// sweep: cartesian product over quantum states and measure parameters, one
// row each, lexicographic in (system, space, d, n, l, p, beta, lambda).
// Out-of-domain rows are emitted with a status marker, never aborted on.

struct SweepOpts {
    std::vector<std::string> systems, spaces;
    std::vector<int> ds, ns, ls;
    std::vector<double> ps, betas, lambdas;
    double constant = 1.0;
    CommonOpts common;
};

int do_sweep(const SweepOpts& o, const std::string& invocation) {
    const double tol = resolve_tol(o.common);
    Table t;
    t.meta = base_meta(invocation, tol);
    t.columns = {"system", "space", "d", "n", "l",        "p",     "beta",
                 "lambda", "F",     "N", "C", "K",        "C_over_K",
                 "status"};

    for (const std::string& sys_name : o.systems) {
        QuantumSystem sys;
        if (sys_name == "hydrogenic")
            sys = QuantumSystem::hydrogenic;
        else if (sys_name == "harmonic")
            sys = QuantumSystem::harmonic;
        else
            throw std::invalid_argument("sweep: unknown system '" + sys_name +
                                        "'");
        for (const std::string& sp_name : o.spaces) {
            QuantumSpace sp;
            if (sp_name == "position")
                sp = QuantumSpace::position;
            else if (sp_name == "momentum")
                sp = QuantumSpace::momentum;
            else
                throw std::invalid_argument("sweep: unknown space '" +
                                            sp_name + "'");
            for (int d : o.ds)
                for (int n : o.ns)
                    for (int l : o.ls) {
                        std::optional<DensityModel> rho;
                        std::string state_status = "ok";
                        try {
                            rho = radial_density(
                                quantum_state(sys, sp, n, l, d, o.constant));
                        } catch (const std::domain_error&) {
                            state_status = "domain";
                        }
                        for (double p : o.ps)
                            for (double beta : o.betas)
                                for (double lambda : o.lambdas) {
                                    MeasureRow r;
                                    r.status = state_status;
                                    if (rho)
                                        r = measure_core(*rho, p, beta, lambda,
                                                         tol,
                                                         /*strict=*/false);
                                    t.rows.push_back(
                                        {Cell::T(sys_name), Cell::T(sp_name),
                                         Cell::I(d), Cell::I(n), Cell::I(l),
                                         Cell::N(p), Cell::N(beta),
                                         Cell::N(lambda), opt_cell(r.F),
                                         opt_cell(r.N), opt_cell(r.C),
                                         opt_cell(r.K), opt_cell(r.ratio),
                                         Cell::T(r.status)});
                                }
                    }
        }
    }
    return emit(t, o.common.format, o.common.output);
}

// ---------------------------------------------------------------------------
// gauss: tabulate the minimizing three-parameter Gaussian on an x grid.

struct GaussOpts {
    double p = 0, beta = 0, lambda = 0;
    std::vector<double> xs;
    std::vector<double> range;  // lo, hi, count
    CommonOpts common;
};

int do_gauss(const GaussOpts& o, const std::string& invocation) {
    const double tol = resolve_tol(o.common);
    (void)tol;  // the closed-form density needs no quadrature
    const DomainClass dc = classify(o.p, o.beta, o.lambda);
    if (!dc.in_D_tilde)
        throw std::domain_error(
            "gauss: (beta, lambda) outside the region lambda > 1 - beta p* "
            "where the bound and its minimizer exist");
    const DensityModel g = pbl_gaussian(o.p, o.beta, o.lambda);

    std::vector<double> xs = o.xs;
    if (!o.range.empty()) {
        if (o.range.size() != 3 || o.range[2] < 1 ||
            o.range[2] != std::floor(o.range[2]))
            throw std::invalid_argument(
                "gauss: --range wants lo,hi,count with an integral count");
        const int count = static_cast<int>(o.range[2]);
        for (int i = 0; i < count; ++i)
            xs.push_back(count == 1 ? o.range[0]
                                    : o.range[0] + (o.range[1] - o.range[0]) *
                                                       i / (count - 1.0));
    }
    if (xs.empty())
        throw std::invalid_argument("gauss: no grid points (use --x or --range)");

    Table t;
    t.meta = base_meta(invocation, resolve_tol(o.common));
    t.meta.push_back("support " + fmt(g.support.lo) + " " + fmt(g.support.hi));
    t.meta.push_back("normalization_constant " + fmt(g.normalization_constant));
    t.columns = {"x", "pdf", "dpdf"};
    for (double x : xs)
        t.rows.push_back({Cell::N(x), Cell::N(g.pdf(x)), Cell::N(g.dpdf(x))});
    return emit(t, o.common.format, o.common.output);
}

// ---------------------------------------------------------------------------
// escort: evaluate both sides of the three order-alpha scaling identities.

struct EscortOpts {
    std::string density;
    double alpha = 0;
    std::vector<double> lambdas{2.0};
    std::vector<std::string> pbetas{"2,1"};
    CommonOpts common;
};

int do_escort(const EscortOpts& o, const std::string& invocation) {
    const double tol = resolve_tol(o.common);
    const DensityModel rho = parse_density(o.density);
    const auto [ea, map] = escort_transform(rho, o.alpha);
    const double a = o.alpha;

    std::vector<std::pair<double, double>> pbs;
    for (const std::string& s : o.pbetas) {
        const std::vector<std::string> parts = split(s, ',');
        if (parts.size() != 2)
            throw std::invalid_argument("escort: --pbeta wants 'p,beta', got '" +
                                        s + "'");
        pbs.emplace_back(num_arg(s, parts[0]), num_arg(s, parts[1]));
    }

    Table t;
    t.meta = base_meta(invocation, tol);
    t.columns = {"identity", "alpha", "p",   "beta",   "lambda",
                 "lhs",      "rhs",   "rel_gap"};
    const auto push = [&](const char* id, Cell p, Cell beta, Cell lambda,
                          double lhs, double rhs) {
        const double gap = std::fabs(lhs - rhs) / std::fabs(rhs);
        t.rows.push_back({Cell::T(id), Cell::N(a), std::move(p),
                          std::move(beta), std::move(lambda), Cell::N(lhs),
                          Cell::N(rhs), Cell::N(gap)});
    };

    for (double lam : o.lambdas) {
        const double lhs = renyi_entropy_power(ea, lam, tol);
        const double rhs =
            std::pow(renyi_entropy_power(rho, 1.0 + a * (lam - 1.0), tol), a);
        push("entropy_power", Cell::E(), Cell::E(), Cell::N(lam), lhs, rhs);
    }
    for (const auto& [p, beta] : pbs) {
        const double lhs = fisher_info(ea, p, beta, tol);
        const double rhs = std::pow(a, 2.0 / beta) *
                           std::pow(fisher_info(rho, p, a * beta, tol), a);
        push("fisher", Cell::N(p), Cell::N(beta), Cell::E(), lhs, rhs);
    }
    for (const auto& [p, beta] : pbs)
        for (double lam : o.lambdas) {
            const double lhs = complexity(ea, measure_params(p, beta, lam), tol);
            const double rhs =
                a * a * complexity(rho,
                                   measure_params(p, a * beta,
                                                  1.0 + a * (lam - 1.0)),
                                   tol);
            push("complexity", Cell::N(p), Cell::N(beta), Cell::N(lam), lhs,
                 rhs);
        }
    return emit(t, o.common.format, o.common.output);
}

std::string join_args(int argc, char** argv) {
    std::string s;
    for (int i = 1; i < argc; ++i) {
        if (i > 1) s += ' ';
        s += argv[i];
    }
    return s;
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{
        "Fisher-Renyi complexity toolkit: information measures, sharp "
        "bounds, minimizing densities, differential-escort transforms and "
        "quantum radial densities"};
    app.set_config("--config", "",
                   "Read options from a config file; keys live in a section "
                   "named after the command, e.g. [measure]");
    app.require_subcommand(1);
    const std::string invocation = join_args(argc, argv);

    MeasureOpts mo;
    CLI::App* measure = app.add_subcommand(
        "measure", "Evaluate F, N, C and the sharp bound for one density");
    measure->add_option("--density", mo.density, "Density spec")->required();
    measure->add_option("--p", mo.p, "Derivative exponent p > 1")->required();
    measure->add_option("--beta", mo.beta, "Fisher parameter beta > 0")
        ->required();
    measure->add_option("--lambda", mo.lambda, "entropy order lambda > 0")
        ->required();
    add_common(measure, &mo.common);

    SweepOpts so;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "Tabulate measures over a grid of quantum states");
    sweep->add_option("--system", so.systems, "hydrogenic and/or harmonic");
    sweep->add_option("--space", so.spaces, "position and/or momentum");
    sweep->add_option("--d", so.ds, "dimensions");
    sweep->add_option("--n", so.ns, "principal / radial quantum numbers");
    sweep->add_option("--l", so.ls, "orbital quantum numbers");
    sweep->add_option("--p", so.ps, "derivative exponents");
    sweep->add_option("--beta", so.betas, "Fisher parameters");
    sweep->add_option("--lambda", so.lambdas, "entropy orders");
    sweep->add_option("--constant", so.constant,
                      "potential constant (Z or omega)")
        ->capture_default_str();
    add_common(sweep, &so.common);

    GaussOpts go;
    CLI::App* gauss = app.add_subcommand(
        "gauss", "Tabulate the minimizing three-parameter Gaussian");
    gauss->add_option("--p", go.p, "Derivative exponent p > 1")->required();
    gauss->add_option("--beta", go.beta, "Fisher parameter beta > 0")
        ->required();
    gauss->add_option("--lambda", go.lambda, "entropy order lambda > 0")
        ->required();
    gauss->add_option("--x", go.xs, "explicit grid points");
    gauss->add_option("--range", go.range, "linear grid as lo,hi,count")
        ->delimiter(',');
    add_common(gauss, &go.common);

    EscortOpts eo;
    CLI::App* escort = app.add_subcommand(
        "escort", "Check the order-alpha scaling identities on a density");
    escort->add_option("--density", eo.density, "Density spec")->required();
    escort->add_option("--alpha", eo.alpha, "escort order alpha > 0")
        ->required();
    escort->add_option("--lambda", eo.lambdas, "entropy orders")
        ->capture_default_str();
    escort->add_option("--pbeta", eo.pbetas, "p,beta pairs")
        ->capture_default_str();
    add_common(escort, &eo.common);

    // Dispatch after parsing completes rather than through subcommand
    // callbacks: a configurable subcommand fires its callback once per
    // trigger (command line and config section), which would render the
    // table twice.
    int rc = 0;
    try {
        app.parse(argc, argv);
        if (measure->parsed())
            rc = do_measure(mo, invocation);
        else if (sweep->parsed())
            rc = do_sweep(so, invocation);
        else if (gauss->parsed())
            rc = do_gauss(go, invocation);
        else if (escort->parsed())
            rc = do_escort(eo, invocation);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage problems exit 1, --help exits 0
    } catch (const divergence_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::range_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}

}  // namespace frc::cli
