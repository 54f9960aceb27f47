#pragma once

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "entrofit/distribution.hpp"
#include "entrofit/error.hpp"
#include "entrofit/fit.hpp"

namespace entrofit {

struct LoadOptions {
    std::string period;  // forwarded to BinnedSeries.period
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        // trim surrounding whitespace
        const auto a = field.find_first_not_of(" \t\r");
        const auto b = field.find_last_not_of(" \t\r");
        fields.push_back(a == std::string::npos ? "" : field.substr(a, b - a + 1));
    }
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

inline double parse_number(const std::string& s, std::size_t line_no, const char* column) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0' || errno == ERANGE) {
        throw InvalidInput("line " + std::to_string(line_no) + ": cannot parse " + column +
                           " value '" + s + "'");
    }
    return v;
}

// Atomic write: stage into a sibling temp file, rename over the target.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InvalidInput("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out.flush()) throw InvalidInput("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace detail

// Load a benefit,count[,states] CSV with a header row. '#' lines are
// comments. Rows are sorted by benefit; duplicate benefit values are
// rejected. Errors name the offending line.
inline BinnedSeries load_distribution(const std::filesystem::path& path,
                                      const LoadOptions& options = {}) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open input file " + path.string());

    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    bool has_states = false;

    struct Row {
        double benefit, count, states;
        std::size_t line_no;
    };
    std::vector<Row> rows;

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        auto fields = detail::split_csv_line(line);
        if (!header_seen) {
            if (fields.size() < 2 || fields[0] != "benefit" || fields[1] != "count") {
                throw InvalidInput("line " + std::to_string(line_no) +
                                   ": expected header 'benefit,count[,states]'");
            }
            if (fields.size() >= 3 && fields[2] == "states") has_states = true;
            header_seen = true;
            continue;
        }
        if (fields.size() < 2 || (has_states && fields.size() < 3)) {
            throw InvalidInput("line " + std::to_string(line_no) + ": too few columns");
        }
        Row r{};
        r.benefit = detail::parse_number(fields[0], line_no, "benefit");
        r.count = detail::parse_number(fields[1], line_no, "count");
        if (r.benefit < 0.0) {
            throw InvalidInput("line " + std::to_string(line_no) + ": negative benefit");
        }
        if (r.count < 0.0) {
            throw InvalidInput("line " + std::to_string(line_no) + ": negative count");
        }
        if (has_states) {
            const double s = detail::parse_number(fields[2], line_no, "states");
            if (!(s >= 1.0) || s != std::floor(s)) {
                throw InvalidInput("line " + std::to_string(line_no) +
                                   ": states must be a positive integer");
            }
            r.states = s;
        }
        r.line_no = line_no;
        rows.push_back(r);
    }
    if (!header_seen) throw InvalidInput("empty input file " + path.string());
    if (rows.empty()) throw InvalidInput("no data rows in " + path.string());

    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.benefit < b.benefit; });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].benefit == rows[i - 1].benefit) {
            throw InvalidInput("line " + std::to_string(rows[i].line_no) +
                               ": duplicate benefit value");
        }
    }

    BinnedSeries series;
    series.period = options.period;
    for (const auto& r : rows) {
        series.benefits.push_back(r.benefit);
        series.counts.push_back(r.count);
        if (has_states) series.states.push_back(r.states);
    }
    series.validate();
    return series;
}

// Per-bin plot table: omega,benefit,nu_observed,nu_smoothed,nu_fitted,segment_id.
// Absent fitted values serialize as empty fields. Bins outside every segment
// range clamp to the nearest one so ids tile contiguously.
inline std::string plot_data_csv(const BenefitDistribution& raw,
                                 const BenefitDistribution& smoothed,
                                 const std::vector<std::optional<double>>& fitted,
                                 const std::vector<Segment>& segments) {
    if (smoothed.size() != raw.size() || fitted.size() != raw.size()) {
        throw InvalidInput("plot_data: length mismatch");
    }
    auto segment_of = [&](std::size_t bin) -> int {
        if (segments.empty()) return 0;
        for (const auto& s : segments) {
            if (bin >= s.bin_first && bin <= s.bin_last) return s.label;
        }
        if (bin < segments.front().bin_first) return segments.front().label;
        return segments.back().label;
    };

    std::string out = "omega,benefit,nu_observed,nu_smoothed,nu_fitted,segment_id\n";
    char buf[512];
    for (std::size_t k = 0; k < raw.size(); ++k) {
        std::string fitted_field;
        if (fitted[k].has_value()) {
            std::snprintf(buf, sizeof buf, "%.17g", *fitted[k]);
            fitted_field = buf;
        }
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%s,%d\n", raw.omega[k],
                      raw.omega[k] * raw.w_bar, raw.nu[k], smoothed.nu[k], fitted_field.c_str(),
                      segment_of(k));
        out += buf;
    }
    return out;
}

inline void write_plot_data(const std::filesystem::path& path, const std::string& csv) {
    detail::write_file_atomic(path, csv);
}

}  // namespace entrofit
