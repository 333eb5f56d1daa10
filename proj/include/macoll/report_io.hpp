#pragma once

#include "macoll/analysis.hpp"
#include "macoll/polytrial.hpp"
#include "macoll/report.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace macoll::io {

inline constexpr std::string_view kSweepCsvHeader =
    "degree,unknowns,K_D,K_B,rmse_solution,max_solution,max_boundary,max_pde,"
    "sum_sq_initial,sum_sq_final,iterations,termination";

inline constexpr std::string_view kStabilityCsvHeader =
    "check,degree,trials,seed,fill_distance,worst_ratio,bound";

inline constexpr std::string_view kCoefficientCsvHeader = "m,n,value";

/// One row of the sweep CSV. Empty fields stand for absent solution errors.
struct SweepRecord {
    int degree = 0;
    std::size_t unknowns = 0;
    std::size_t domain_points = 0;
    std::size_t boundary_points = 0;
    std::optional<double> rmse_solution;
    std::optional<double> max_solution;
    double max_boundary = 0.0;
    double max_pde = 0.0;
    double sum_sq_initial = 0.0;
    double sum_sq_final = 0.0;
    int iterations = 0;
    std::string termination;

    friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

SweepRecord to_record(const SolveReport& report);

std::string format_csv(const SweepRecord& rec);
SweepRecord parse_sweep_csv(std::string_view line);

std::string format_jsonl(const SweepRecord& rec);
SweepRecord parse_sweep_jsonl(std::string_view line);

struct StabilityRecord {
    std::string check;  ///< "boundary" or "laplacian"
    int degree = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    double fill_distance = 0.0;
    double worst_ratio = 0.0;
    double bound = 0.0;  ///< theoretical cap on worst_ratio

    friend bool operator==(const StabilityRecord&, const StabilityRecord&) = default;
};

std::string format_csv(const StabilityRecord& rec);
StabilityRecord parse_stability_csv(std::string_view line);

std::string format_jsonl(const StabilityRecord& rec);
StabilityRecord parse_stability_jsonl(std::string_view line);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

/// Writes "m,n,value" rows in graded-lex order after a header line.
void write_coefficients(std::ostream& os, const CoeffTriangle& c);

/// Reads the format written by write_coefficients. Rows may come in any
/// order; missing entries are zero and the degree is the largest m + n
/// seen, raised to `min_degree` if given.
CoeffTriangle read_coefficients(std::istream& is, int min_degree = 0);

}  // namespace macoll::io
