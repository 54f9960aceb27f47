#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include "entrofit/error.hpp"
#include "entrofit/fit.hpp"

namespace entrofit {

namespace detail {

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline bool parse_bool(const std::string& v, std::size_t line_no) {
    if (v == "true" || v == "on" || v == "1") return true;
    if (v == "false" || v == "off" || v == "0") return false;
    throw InvalidInput("config line " + std::to_string(line_no) + ": expected a boolean, got '" +
                       v + "'");
}

}  // namespace detail

// Flat key = value file mirroring the FitConfig fields. '#' starts a comment.
// Unknown keys are errors so typos do not silently fall back to defaults.
inline FitConfig load_config(const std::filesystem::path& path, FitConfig base = {}) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open config file " + path.string());

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw InvalidInput("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        try {
            if (key == "window") {
                base.smoothing.window = std::stoi(value);
            } else if (key == "passes") {
                base.smoothing.passes = std::stoi(value);
            } else if (key == "pin_peak_to_min") {
                base.pin_peak_to_min = detail::parse_bool(value, line_no);
            } else if (key == "theta_min") {
                base.theta_min = std::stod(value);
            } else if (key == "theta_max") {
                base.theta_max = std::stod(value);
            } else if (key == "theta_tolerance") {
                base.theta_tolerance = std::stod(value);
            } else if (key == "max_segments") {
                base.max_segments = std::stoi(value);
            } else if (key == "segment_criterion") {
                if (value == "bic") {
                    base.segment_criterion = SegmentCriterion::bic;
                } else if (value == "fixed-k") {
                    base.segment_criterion = SegmentCriterion::fixed_k;
                } else {
                    throw InvalidInput("config line " + std::to_string(line_no) +
                                       ": segment_criterion must be 'bic' or 'fixed-k'");
                }
            } else if (key == "min_segment_bins") {
                base.min_segment_bins = std::stoi(value);
            } else if (key == "exclude_zero_occupation") {
                base.exclude_zero_occupation = detail::parse_bool(value, line_no);
            } else if (key == "weight_by_count") {
                base.weight_by_count = detail::parse_bool(value, line_no);
            } else {
                throw InvalidInput("config line " + std::to_string(line_no) + ": unknown key '" +
                                   key + "'");
            }
        } catch (const std::invalid_argument&) {
            throw InvalidInput("config line " + std::to_string(line_no) + ": bad value '" + value +
                               "' for " + key);
        } catch (const std::out_of_range&) {
            throw InvalidInput("config line " + std::to_string(line_no) + ": value out of range");
        }
    }
    base.validate();
    return base;
}

}  // namespace entrofit
