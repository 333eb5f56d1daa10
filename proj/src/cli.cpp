#include "macoll/cli.hpp"

#include "macoll/analysis.hpp"
#include "macoll/continuation.hpp"
#include "macoll/error.hpp"
#include "macoll/problem.hpp"
#include "macoll/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

namespace macoll::cli {

namespace {

struct RunConfig {
    std::string command;
    std::string problem = "exp";
    std::optional<int> degree;
    std::string degrees;
    std::string start = "cold-chain";
    std::string start_file;
    double weight = kDefaultBoundaryWeight;
    std::optional<double> oversample;
    int grid = kDefaultGridResolution;
    std::uint64_t seed = 0;
    int trials = 100;
    std::string check = "boundary";
    std::optional<double> fill;
    std::string out_path;
    std::string coeffs_out;
    std::string format = "csv";
};

/// Failure to open a file the command needs.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<int> parse_degrees(const std::string& text) {
    std::vector<int> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) {
        try {
            std::size_t used = 0;
            parts.push_back(std::stoi(item, &used));
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception&) {
            throw InvalidInput("degree range '" + text + "' is not of the form a:step:b");
        }
    }
    if (parts.size() == 1) {
        return parts;
    }
    if (parts.size() != 3 || parts[1] <= 0 || parts[0] > parts[2]) {
        throw InvalidInput("degree range '" + text + "' is not of the form a:step:b with step > 0");
    }
    std::vector<int> out;
    for (int d = parts[0]; d <= parts[2]; d += parts[1]) {
        out.push_back(d);
    }
    return out;
}

MAProblem make_problem(const std::string& name) {
    if (name == "exp") {
        return exp_problem();
    }
    return quadratic_problem(1.0);
}

SweepConfig make_sweep_config(const RunConfig& rc) {
    SweepConfig cfg;
    cfg.boundary_weight = rc.weight;
    cfg.oversample_safety = rc.oversample;
    cfg.grid_resolution = rc.grid;
    cfg.start_mode = rc.start == "taylor" ? StartMode::taylor : StartMode::cold_chain;
    return cfg;
}

CoeffTriangle load_start(const RunConfig& rc) {
    if (rc.start_file.empty()) {
        throw InvalidInput("--start file requires --start-file PATH");
    }
    std::ifstream in(rc.start_file);
    if (!in) {
        throw IoError("cannot open start file '" + rc.start_file + "'");
    }
    return io::read_coefficients(in);
}

std::ofstream open_output(const std::string& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) {
        throw IoError("cannot open output file '" + path + "' for writing");
    }
    return os;
}

std::string fmt_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

std::string fmt_opt(const std::optional<double>& v) {
    return v ? fmt_sci(*v) : std::string("-");
}

/// Writes sweep rows to a file in the chosen format.
class SweepWriter {
public:
    SweepWriter(const std::string& path, const std::string& format) : csv_(format == "csv") {
        if (!path.empty()) {
            os_ = open_output(path);
            if (csv_) {
                *os_ << io::kSweepCsvHeader << '\n';
            }
        }
    }

    void write(const SolveReport& report) {
        if (!os_) {
            return;
        }
        const auto rec = io::to_record(report);
        *os_ << (csv_ ? io::format_csv(rec) : io::format_jsonl(rec)) << '\n';
    }

    void flush() {
        if (os_) {
            os_->flush();
        }
    }

private:
    bool csv_;
    std::optional<std::ofstream> os_;
};

void print_table(std::ostream& out, std::span<const SolveReport> reports) {
    out << "  M  unknowns     K_D    K_B        rmse     max_sol     max_bnd     max_pde  iters  "
           "ratio\n";
    const auto rows = convergence_table(reports);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        const auto& rep = reports[i];
        char line[200];
        std::snprintf(line, sizeof(line), "%3d  %8zu  %6zu  %5zu  %10s  %10s  %10s  %10s  %5d  %s\n",
                      row.degree, rep.unknowns, rep.domain_points, rep.boundary_points,
                      fmt_opt(row.rmse_solution).c_str(), fmt_opt(row.max_solution).c_str(),
                      fmt_sci(row.max_boundary).c_str(), fmt_sci(row.max_pde).c_str(),
                      row.iterations,
                      row.rmse_ratio ? fmt_sci(*row.rmse_ratio).c_str() : "-");
        out << line;
    }
}

void print_solve(std::ostream& out, const SolveReport& rep) {
    out << "degree " << rep.degree << ": " << rep.unknowns << " unknowns, K_D = "
        << rep.domain_points << ", K_B = " << rep.boundary_points << '\n';
    out << "  termination      " << lsq::to_string(rep.trace.termination) << " after "
        << rep.trace.iterations() << " iterations (" << rep.trace.rejected_steps
        << " rejected steps)\n";
    out << "  sum of squares   " << fmt_sci(rep.sum_sq_initial) << " -> "
        << fmt_sci(rep.sum_sq_final) << '\n';
    out << "  PDE residual     " << fmt_sci(rep.pde_residual_initial) << " -> "
        << fmt_sci(rep.pde_residual_final) << '\n';
    out << "  boundary resid.  " << fmt_sci(rep.boundary_residual_initial) << " -> "
        << fmt_sci(rep.boundary_residual_final) << '\n';
    out << "  rmse_solution    " << fmt_opt(rep.metrics.rmse_solution) << '\n';
    out << "  max_solution     " << fmt_opt(rep.metrics.max_solution) << '\n';
    out << "  max_boundary     " << fmt_sci(rep.metrics.max_boundary) << '\n';
    out << "  max_pde          " << fmt_sci(rep.metrics.max_pde) << '\n';
    out << "  coefficients (m,n,value):\n";
    const auto flat = rep.coeffs.flat();
    for (std::size_t i = 0; i < flat.size(); ++i) {
        const auto [m, n] = exponents_of(i);
        char line[80];
        std::snprintf(line, sizeof(line), "    %2d %2d  % .15e\n", m, n, flat[i]);
        out << line;
    }
}

int run_solve(const RunConfig& rc, std::ostream& out, std::ostream& err) {
    if (!rc.degree) {
        throw InvalidInput("solve requires --degree N");
    }
    const int degree = *rc.degree;
    const MAProblem problem = make_problem(rc.problem);
    SweepConfig cfg = make_sweep_config(rc);

    if (rc.start == "file") {
        cfg.chain_seed = load_start(rc);
        if (cfg.chain_seed->degree() > degree) {
            throw InvalidInput("start file has degree " + std::to_string(cfg.chain_seed->degree()) +
                               ", above the requested degree");
        }
        cfg.degrees = {degree};
    } else if (rc.start == "taylor") {
        cfg.degrees = {degree};
    } else {
        // Cold chain: constant 1 at degree 0 (or 1), stepping by 2.
        cfg.degrees.clear();
        for (int d = degree % 2; d <= degree; d += 2) {
            cfg.degrees.push_back(d);
        }
    }

    SweepWriter writer(rc.out_path, rc.format);
    std::optional<std::ofstream> coeffs_os;
    if (!rc.coeffs_out.empty()) {
        coeffs_os = open_output(rc.coeffs_out);
    }

    const SweepResult result = sweep(problem, cfg);
    if (result.failure) {
        err << "solver failure: " << result.failure->message << '\n';
        if (!result.reports.empty()) {
            writer.write(result.reports.back());
        }
        writer.flush();
        return kExitSolverFailure;
    }
    const SolveReport& rep = result.reports.back();
    writer.write(rep);
    writer.flush();
    if (coeffs_os) {
        io::write_coefficients(*coeffs_os, rep.coeffs);
        coeffs_os->flush();
    }
    print_solve(out, rep);
    return kExitOk;
}

int run_sweep(const RunConfig& rc, std::ostream& out, std::ostream& err) {
    const MAProblem problem = make_problem(rc.problem);
    SweepConfig cfg = make_sweep_config(rc);
    cfg.degrees = parse_degrees(rc.degrees.empty() ? "0:2:12" : rc.degrees);
    if (rc.start == "file") {
        cfg.chain_seed = load_start(rc);
    }
    cfg.validate();

    SweepWriter writer(rc.out_path, rc.format);
    const SweepResult result = sweep(problem, cfg);
    for (const auto& rep : result.reports) {
        writer.write(rep);
    }
    writer.flush();
    if (!result.reports.empty()) {
        print_table(out, result.reports);
    }
    if (result.failure) {
        err << "solver failure: " << result.failure->message << '\n';
        return kExitSolverFailure;
    }
    return kExitOk;
}

int run_stability(const RunConfig& rc, std::ostream& out, std::ostream&) {
    std::vector<int> degrees;
    if (!rc.degrees.empty()) {
        degrees = parse_degrees(rc.degrees);
    } else if (rc.degree) {
        degrees = {*rc.degree};
    } else {
        throw InvalidInput("stability requires --degree N or --degrees a:step:b");
    }
    const bool boundary = rc.check == "boundary";

    std::optional<std::ofstream> os;
    if (!rc.out_path.empty()) {
        os = open_output(rc.out_path);
        if (rc.format == "csv") {
            *os << io::kStabilityCsvHeader << '\n';
        }
    }

    for (const int degree : degrees) {
        const double m2 = static_cast<double>(degree) * degree;
        double fill = 0.0;
        if (rc.fill) {
            fill = *rc.fill;
        } else if (boundary) {
            fill = degree == 0 ? 2.0 : 0.5 / m2;
        } else {
            fill = degree == 0 ? 1.0 : 0.25 / m2;
        }
        const StabilityCheck res = boundary
                                       ? boundary_stability_check(degree, rc.trials, fill, rc.seed)
                                       : laplacian_stability_check(degree, rc.trials, fill, rc.seed);
        io::StabilityRecord rec{rc.check, degree, res.trials, res.seed, res.fill_distance,
                                res.worst_ratio, boundary ? 2.0 : 1.0};
        if (os) {
            *os << (rc.format == "csv" ? io::format_csv(rec) : io::format_jsonl(rec)) << '\n';
        }
        char line[200];
        std::snprintf(line, sizeof(line),
                      "%s check, M = %d, fill %.6g, %d trials (seed %llu): worst ratio %.6f "
                      "(bound %.1f) %s\n",
                      rc.check.c_str(), degree, fill, res.trials,
                      static_cast<unsigned long long>(res.seed), res.worst_ratio, rec.bound,
                      res.worst_ratio <= rec.bound ? "ok" : "VIOLATED");
        out << line;
    }
    if (os) {
        os->flush();
    }
    return kExitOk;
}

void add_common_options(CLI::App* sub, RunConfig& rc) {
    sub->add_option("--problem", rc.problem, "Problem instance")
        ->check(CLI::IsMember({"exp", "quadratic"}))
        ->capture_default_str();
    sub->add_option("--degree", rc.degree, "Polynomial total degree")->check(CLI::NonNegativeNumber);
    sub->add_option("--degrees", rc.degrees, "Degree range a:step:b");
    sub->add_option("--start", rc.start, "Starting guess")
        ->check(CLI::IsMember({"taylor", "cold-chain", "file"}))
        ->capture_default_str();
    sub->add_option("--start-file", rc.start_file, "Coefficient CSV (m,n,value) for --start file");
    sub->add_option("--weight", rc.weight, "Boundary residual weight")->capture_default_str();
    sub->add_option("--oversample", rc.oversample, "Oversampling safety factor c in (0,1]");
    sub->add_option("--grid", rc.grid, "Evaluation grid points per side")->capture_default_str();
    sub->add_option("--seed", rc.seed, "Random seed")->capture_default_str();
    sub->add_option("--trials", rc.trials, "Random trial polynomials")->capture_default_str();
    sub->add_option("--check", rc.check, "Stability inequality to test")
        ->check(CLI::IsMember({"boundary", "laplacian"}))
        ->capture_default_str();
    sub->add_option("--fill", rc.fill, "Fill distance override for stability checks");
    sub->add_option("--out", rc.out_path, "Output file");
    sub->add_option("--coeffs-out", rc.coeffs_out, "Coefficient CSV output (solve)");
    sub->add_option("--format", rc.format, "Output format")
        ->check(CLI::IsMember({"csv", "jsonl"}))
        ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig rc;
    CLI::App app{"Meshless polynomial collocation for the Monge-Ampere Dirichlet problem", "macoll"};
    app.require_subcommand(1);
    const std::pair<const char*, const char*> commands[] = {
        {"solve", "Single solve at one degree"},
        {"sweep", "Degree continuation sweep"},
        {"stability", "Empirical discrete-to-continuous norm checks"},
    };
    for (const auto& [name, description] : commands) {
        CLI::App* sub = app.add_subcommand(name, description);
        add_common_options(sub, rc);
        sub->callback([&rc, name = name] { rc.command = name; });
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (rc.command == "solve") {
            return run_solve(rc, out, err);
        }
        if (rc.command == "sweep") {
            return run_sweep(rc, out, err);
        }
        return run_stability(rc, out, err);
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        err << "invalid argument: " << e.what() << '\n';
        return kExitUsage;
    } catch (const lsq::SolverError& e) {
        err << "solver failure: " << e.what() << '\n';
        return kExitSolverFailure;
    }
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run(args, std::cout, std::cerr);
}

}  // namespace macoll::cli
