// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include "macoll/analysis.hpp"
#include "macoll/cli.hpp"
#include "macoll/collocation.hpp"
#include "macoll/report_io.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace macoll;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

fs::path work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "macoll_acceptance";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string in_work(const std::string& name) { return (work_dir() / name).string(); }

int run_cli(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    if (code != 0) {
        std::fprintf(stderr, "command failed (%d): %s\n", code, err.str().c_str());
    }
    return code;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::map<int, double> sweep_rmse(const std::string& csv_path) {
    std::ifstream in(csv_path);
    std::string line;
    std::getline(in, line);  // header
    std::map<int, double> out;
    while (std::getline(in, line)) {
        const io::SweepRecord rec = io::parse_sweep_csv(line);
        if (rec.rmse_solution) {
            out[rec.degree] = *rec.rmse_solution;
        }
    }
    return out;
}

double exact_solution(double x, double y) { return std::exp(0.5 * (x * x + y * y)); }

Verdict quadratic_recovery() {
    {
        std::ofstream start(in_work("perturbed.csv"));
        start << "m,n,value\n2,0,0.9\n0,2,1.1\n";
    }
    const auto t0 = std::chrono::steady_clock::now();
    const int code = run_cli({"solve", "--problem", "quadratic", "--degree", "2", "--start", "file",
                              "--start-file", in_work("perturbed.csv"), "--coeffs-out",
                              in_work("quad_coeffs.csv"), "--out", in_work("quad_row.csv")});
    const double elapsed = seconds_since(t0);
    if (code != 0) {
        return {false, "solve exited with " + std::to_string(code)};
    }
    std::ifstream cin(in_work("quad_coeffs.csv"));
    const CoeffTriangle c = io::read_coefficients(cin);
    double err = 0.0;
    for (int m = 0; m <= 2; ++m) {
        for (int n = 0; m + n <= 2; ++n) {
            const double want = (m + n == 2 && m != 1) ? 1.0 : 0.0;
            err = std::max(err, std::abs(c(m, n) - want));
        }
    }
    std::ifstream rin(in_work("quad_row.csv"));
    std::string line;
    std::getline(rin, line);
    std::getline(rin, line);
    const double ssq = io::parse_sweep_csv(line).sum_sq_final;
    return {err <= 1e-10 && ssq <= 1e-20 && elapsed < 1.0,
            fmt("coefficient error %.2e, sum of squares %.2e, %.3f s", err, ssq, elapsed)};
}

Verdict exponential_convergence(std::map<int, double>& cold) {
    const auto t0 = std::chrono::steady_clock::now();
    const int code = run_cli({"sweep", "--problem", "exp", "--degrees", "0:2:12", "--start",
                              "cold-chain", "--out", in_work("cold.csv")});
    const double elapsed = seconds_since(t0);
    if (code != 0) {
        return {false, "sweep exited with " + std::to_string(code)};
    }
    cold = sweep_rmse(in_work("cold.csv"));
    if (cold.size() != 7) {
        return {false, "sweep produced " + std::to_string(cold.size()) + " rows"};
    }
    double worst_ratio = 0.0;
    for (int m = 4; m <= 10; m += 2) {
        worst_ratio = std::max(worst_ratio, cold[m + 2] / cold[m]);
    }
    const double floor = oracle::polynomial_fit_rmse(exact_solution, 12, 101);
    const double rmse12 = cold[12];
    return {worst_ratio <= 0.5 && rmse12 <= 1e-5 && rmse12 <= 100.0 * floor && elapsed < 30.0,
            fmt("worst ratio %.3f, rmse(12) %.3e, fit floor %.3e (x%.1f), %.3f s", worst_ratio,
                rmse12, floor, rmse12 / floor, elapsed)};
}

Verdict taylor_sweep(const std::map<int, double>& cold) {
    const auto t0 = std::chrono::steady_clock::now();
    const int code = run_cli({"sweep", "--problem", "exp", "--degrees", "0:2:12", "--start",
                              "taylor", "--out", in_work("taylor.csv")});
    const double elapsed = seconds_since(t0);
    if (code != 0) {
        return {false, "sweep exited with " + std::to_string(code)};
    }
    const auto taylor = sweep_rmse(in_work("taylor.csv"));
    if (taylor.size() != cold.size() || cold.empty()) {
        return {false, "row count mismatch"};
    }
    double worst = 0.0;
    for (const auto& [m, rmse] : cold) {
        worst = std::max(worst, taylor.at(m) / rmse);
    }
    return {worst <= 10.0 && elapsed < 30.0,
            fmt("worst taylor/cold rmse %.3f, %.3f s", worst, elapsed)};
}

Verdict jacobian_check() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const MAProblem p = exp_problem();
    double worst = 0.0;
    for (int degree : {2, 4, 6}) {
        const ResidualSystem sys = assemble(p, regular_points(degree), degree);
        for (int trial = 0; trial < 10; ++trial) {
            CoeffTriangle c(degree);
            for (double& v : c.flat()) {
                v = dist(rng);
            }
            const Eigen::MatrixXd fd = oracle::fd_jacobian(sys, c, 1e-6);
            worst = std::max(worst, oracle::jacobian_mismatch(jacobian(sys, c), fd, 1e-6, 1e-8));
        }
    }
    const double elapsed = seconds_since(t0);
    return {worst <= 1.0 && elapsed < 5.0,
            fmt("worst error %.2e of tolerance, %.3f s", worst, elapsed)};
}

Verdict manufactured_data() {
    const MAProblem p = exp_problem();
    double worst = 0.0;
    for (int j = 0; j <= 10; ++j) {
        for (int i = 0; i <= 10; ++i) {
            const double x = -1.0 + 0.2 * i;
            const double y = -1.0 + 0.2 * j;
            const double g = p.g({x, y});
            const double det = oracle::fd_hessian_det(exact_solution, x, y, 1e-4);
            worst = std::max(worst, std::abs(det - g) / g);
        }
    }
    return {worst <= 1e-6, fmt("worst relative error %.2e", worst)};
}

Verdict boundary_stability() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    std::string per;
    for (int degree : {1, 2, 4, 8}) {
        const StabilityCheck c = boundary_stability_check(degree, 200, 0.5 / (degree * degree), 0);
        worst = std::max(worst, c.worst_ratio);
        per += fmt(" M=%d:%.4f", degree, c.worst_ratio);
    }
    const double elapsed = seconds_since(t0);
    return {worst <= 2.0 && elapsed < 10.0, fmt("worst ratio%s, %.3f s", per.c_str(), elapsed)};
}

Verdict laplacian_stability() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    std::string per;
    for (int degree : {2, 4, 8}) {
        const StabilityCheck c = laplacian_stability_check(degree, 200, 0.25 / (degree * degree), 0);
        worst = std::max(worst, c.worst_ratio);
        per += fmt(" M=%d:%.4f", degree, c.worst_ratio);
    }
    const double elapsed = seconds_since(t0);
    return {worst <= 1.0 && elapsed < 20.0, fmt("worst ratio%s, %.3f s", per.c_str(), elapsed)};
}

Verdict determinism() {
    const std::vector<std::vector<std::string>> commands{
        {"sweep", "--degrees", "0:2:12", "--format", "jsonl", "--out", "@"},
        {"sweep", "--degrees", "2:2:8", "--start", "taylor", "--oversample", "0.8", "--out", "@"},
        {"solve", "--degree", "6", "--out", "@", "--coeffs-out", "@c"},
        {"stability", "--check", "boundary", "--degrees", "1:1:6", "--seed", "7", "--out", "@"},
        {"stability", "--check", "laplacian", "--degrees", "2:2:6", "--seed", "3", "--out", "@"},
    };
    int identical = 0;
    for (std::size_t k = 0; k < commands.size(); ++k) {
        std::vector<std::string> outputs[2];
        for (int run = 0; run < 2; ++run) {
            std::vector<std::string> args;
            for (const std::string& a : commands[k]) {
                if (a.front() == '@') {
                    const std::string path = in_work(fmt("det_%zu_%d%s", k, run, a.c_str() + 1));
                    outputs[run].push_back(path);
                    args.push_back(path);
                } else {
                    args.push_back(a);
                }
            }
            if (run_cli(args) != 0) {
                return {false, "command " + std::to_string(k) + " failed"};
            }
        }
        bool same = true;
        for (std::size_t f = 0; f < outputs[0].size(); ++f) {
            const std::string a = slurp(outputs[0][f]);
            same = same && !a.empty() && a == slurp(outputs[1][f]);
        }
        identical += same;
    }
    return {identical == static_cast<int>(commands.size()),
            fmt("%d of %zu commands byte-identical across two runs", identical, commands.size())};
}

}  // namespace

int main() {
    std::map<int, double> cold;
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"exact quadratic recovery", quadratic_recovery},
        {"exponential convergence of the cold-chain sweep", [&] { return exponential_convergence(cold); }},
        {"Taylor-start sweep within 10x of cold chain", [&] { return taylor_sweep(cold); }},
        {"analytic Jacobian matches finite differences", jacobian_check},
        {"right-hand side matches FD Hessian determinant", manufactured_data},
        {"boundary stability ratio <= 2", boundary_stability},
        {"Laplacian stability ratio <= 1", laplacian_stability},
        {"deterministic output files", determinism},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failed += !v.pass;
        std::printf("%s  %zu  %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    v.detail.c_str());
        std::fflush(stdout);
    }
    fs::remove_all(work_dir());
    std::printf("%zu of %zu criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
