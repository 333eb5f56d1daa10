#include "macoll/report_io.hpp"

#include "macoll/error.hpp"

#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace macoll::io {

namespace {

using Json = nlohmann::ordered_json;

std::vector<std::string_view> split_fields(std::string_view line) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) {
        line.remove_suffix(1);
    }
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

template <typename T>
T parse_number(std::string_view field, std::string_view what) {
    T value{};
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw InvalidInput("malformed " + std::string(what) + " field '" + std::string(field) + "'");
    }
    return value;
}

std::optional<double> parse_optional(std::string_view field, std::string_view what) {
    if (field.empty()) {
        return std::nullopt;
    }
    return parse_number<double>(field, what);
}

std::string format_optional(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string{};
}

Json optional_json(const std::optional<double>& v) {
    return v ? Json(*v) : Json(nullptr);
}

std::optional<double> optional_from_json(const Json& j) {
    if (j.is_null()) {
        return std::nullopt;
    }
    return j.get<double>();
}

Json parse_json_line(std::string_view line) {
    try {
        return Json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("malformed JSON line: ") + e.what());
    }
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) {
        throw std::runtime_error("failed to format a double");
    }
    return std::string(buf, ptr);
}

SweepRecord to_record(const SolveReport& report) {
    SweepRecord rec;
    rec.degree = report.degree;
    rec.unknowns = report.unknowns;
    rec.domain_points = report.domain_points;
    rec.boundary_points = report.boundary_points;
    rec.rmse_solution = report.metrics.rmse_solution;
    rec.max_solution = report.metrics.max_solution;
    rec.max_boundary = report.metrics.max_boundary;
    rec.max_pde = report.metrics.max_pde;
    rec.sum_sq_initial = report.sum_sq_initial;
    rec.sum_sq_final = report.sum_sq_final;
    rec.iterations = report.trace.iterations();
    rec.termination = std::string(lsq::to_string(report.trace.termination));
    return rec;
}

std::string format_csv(const SweepRecord& rec) {
    std::ostringstream os;
    os << rec.degree << ',' << rec.unknowns << ',' << rec.domain_points << ','
       << rec.boundary_points << ',' << format_optional(rec.rmse_solution) << ','
       << format_optional(rec.max_solution) << ',' << format_double(rec.max_boundary) << ','
       << format_double(rec.max_pde) << ',' << format_double(rec.sum_sq_initial) << ','
       << format_double(rec.sum_sq_final) << ',' << rec.iterations << ',' << rec.termination;
    return os.str();
}

SweepRecord parse_sweep_csv(std::string_view line) {
    const auto f = split_fields(line);
    if (f.size() != 12) {
        throw InvalidInput("sweep CSV row needs 12 fields, got " + std::to_string(f.size()));
    }
    SweepRecord rec;
    rec.degree = parse_number<int>(f[0], "degree");
    rec.unknowns = parse_number<std::size_t>(f[1], "unknowns");
    rec.domain_points = parse_number<std::size_t>(f[2], "K_D");
    rec.boundary_points = parse_number<std::size_t>(f[3], "K_B");
    rec.rmse_solution = parse_optional(f[4], "rmse_solution");
    rec.max_solution = parse_optional(f[5], "max_solution");
    rec.max_boundary = parse_number<double>(f[6], "max_boundary");
    rec.max_pde = parse_number<double>(f[7], "max_pde");
    rec.sum_sq_initial = parse_number<double>(f[8], "sum_sq_initial");
    rec.sum_sq_final = parse_number<double>(f[9], "sum_sq_final");
    rec.iterations = parse_number<int>(f[10], "iterations");
    rec.termination = std::string(f[11]);
    return rec;
}

std::string format_jsonl(const SweepRecord& rec) {
    Json j;
    j["degree"] = rec.degree;
    j["unknowns"] = rec.unknowns;
    j["K_D"] = rec.domain_points;
    j["K_B"] = rec.boundary_points;
    j["rmse_solution"] = optional_json(rec.rmse_solution);
    j["max_solution"] = optional_json(rec.max_solution);
    j["max_boundary"] = rec.max_boundary;
    j["max_pde"] = rec.max_pde;
    j["sum_sq_initial"] = rec.sum_sq_initial;
    j["sum_sq_final"] = rec.sum_sq_final;
    j["iterations"] = rec.iterations;
    j["termination"] = rec.termination;
    return j.dump();
}

SweepRecord parse_sweep_jsonl(std::string_view line) {
    const Json j = parse_json_line(line);
    try {
        SweepRecord rec;
        rec.degree = j.at("degree").get<int>();
        rec.unknowns = j.at("unknowns").get<std::size_t>();
        rec.domain_points = j.at("K_D").get<std::size_t>();
        rec.boundary_points = j.at("K_B").get<std::size_t>();
        rec.rmse_solution = optional_from_json(j.at("rmse_solution"));
        rec.max_solution = optional_from_json(j.at("max_solution"));
        rec.max_boundary = j.at("max_boundary").get<double>();
        rec.max_pde = j.at("max_pde").get<double>();
        rec.sum_sq_initial = j.at("sum_sq_initial").get<double>();
        rec.sum_sq_final = j.at("sum_sq_final").get<double>();
        rec.iterations = j.at("iterations").get<int>();
        rec.termination = j.at("termination").get<std::string>();
        return rec;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("malformed sweep record: ") + e.what());
    }
}

std::string format_csv(const StabilityRecord& rec) {
    std::ostringstream os;
    os << rec.check << ',' << rec.degree << ',' << rec.trials << ',' << rec.seed << ','
       << format_double(rec.fill_distance) << ',' << format_double(rec.worst_ratio) << ','
       << format_double(rec.bound);
    return os.str();
}

StabilityRecord parse_stability_csv(std::string_view line) {
    const auto f = split_fields(line);
    if (f.size() != 7) {
        throw InvalidInput("stability CSV row needs 7 fields, got " + std::to_string(f.size()));
    }
    StabilityRecord rec;
    rec.check = std::string(f[0]);
    rec.degree = parse_number<int>(f[1], "degree");
    rec.trials = parse_number<int>(f[2], "trials");
    rec.seed = parse_number<std::uint64_t>(f[3], "seed");
    rec.fill_distance = parse_number<double>(f[4], "fill_distance");
    rec.worst_ratio = parse_number<double>(f[5], "worst_ratio");
    rec.bound = parse_number<double>(f[6], "bound");
    return rec;
}

std::string format_jsonl(const StabilityRecord& rec) {
    Json j;
    j["check"] = rec.check;
    j["degree"] = rec.degree;
    j["trials"] = rec.trials;
    j["seed"] = rec.seed;
    j["fill_distance"] = rec.fill_distance;
    j["worst_ratio"] = rec.worst_ratio;
    j["bound"] = rec.bound;
    return j.dump();
}

StabilityRecord parse_stability_jsonl(std::string_view line) {
    const Json j = parse_json_line(line);
    try {
        StabilityRecord rec;
        rec.check = j.at("check").get<std::string>();
        rec.degree = j.at("degree").get<int>();
        rec.trials = j.at("trials").get<int>();
        rec.seed = j.at("seed").get<std::uint64_t>();
        rec.fill_distance = j.at("fill_distance").get<double>();
        rec.worst_ratio = j.at("worst_ratio").get<double>();
        rec.bound = j.at("bound").get<double>();
        return rec;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("malformed stability record: ") + e.what());
    }
}

void write_coefficients(std::ostream& os, const CoeffTriangle& c) {
    os << kCoefficientCsvHeader << '\n';
    const auto flat = c.flat();
    for (std::size_t i = 0; i < flat.size(); ++i) {
        const auto [m, n] = exponents_of(i);
        os << m << ',' << n << ',' << format_double(flat[i]) << '\n';
    }
}

CoeffTriangle read_coefficients(std::istream& is, int min_degree) {
    std::string line;
    if (!std::getline(is, line)) {
        throw InvalidInput("coefficient file is empty");
    }
    if (split_fields(line) != std::vector<std::string_view>{"m", "n", "value"}) {
        throw InvalidInput("coefficient file must start with the header 'm,n,value'");
    }
    std::map<std::pair<int, int>, double> entries;
    int degree = std::max(min_degree, 0);
    while (std::getline(is, line)) {
        if (line.empty() || line == "\r") {
            continue;
        }
        const auto f = split_fields(line);
        if (f.size() != 3) {
            throw InvalidInput("coefficient row needs 3 fields: '" + line + "'");
        }
        const int m = parse_number<int>(f[0], "m");
        const int n = parse_number<int>(f[1], "n");
        if (m < 0 || n < 0) {
            throw InvalidInput("negative exponent in coefficient row '" + line + "'");
        }
        if (!entries.emplace(std::pair{m, n}, parse_number<double>(f[2], "value")).second) {
            throw InvalidInput("duplicate coefficient (" + std::to_string(m) + "," +
                               std::to_string(n) + ")");
        }
        degree = std::max(degree, m + n);
    }
    CoeffTriangle c(degree);
    for (const auto& [mn, value] : entries) {
        c(mn.first, mn.second) = value;
    }
    return c;
}

}  // namespace macoll::io
