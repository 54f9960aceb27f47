#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "entrofit/distribution.hpp"
#include "entrofit/error.hpp"
#include "entrofit/fit.hpp"
#include "entrofit/io.hpp"
#include "entrofit/lorenz.hpp"

namespace entrofit {

inline constexpr const char* kReportFormatVersion = "1";

// Flat, serializable mirror of a FitReport plus the config echo. Field order
// is fixed so serialization is reproducible byte for byte.
struct ReportDocument {
    std::string format_version = kReportFormatVersion;

    struct Parameters {
        double alpha = 0.0, beta = 0.0, lambda = 0.0, theta = 0.0, mu = 0.0, temperature = 0.0;
    } parameters;

    struct Peak {
        double omega_p = 0.0;
        std::uint64_t index = 0;
        std::string mode;  // "detected" | "pinned-to-minimum"
    } peak;

    double poverty_fraction = 0.0;
    double gini = 0.0;

    struct Symmetry {
        std::string kind;  // "symmetry-feasible" | "asymmetry-required"
        std::optional<double> equivalent_ratio;
    } symmetry;

    double inequality_index = 0.0;
    double welfare = 0.0;
    bool extreme_poverty_defined = true;

    struct SegmentRow {
        int label = 0;
        std::uint64_t bin_first = 0, bin_last = 0;
        double omega_min = 0.0, omega_max = 0.0;
        double benefit_min = 0.0, benefit_max = 0.0;
        double alpha = 0.0, beta = 0.0, lambda = 0.0, theta = 0.0;
        double pearson_r = 0.0;
    };
    std::vector<SegmentRow> segments;

    struct GoodnessRow {
        double pearson_r = 0.0, rmse_nu = 0.0, r_squared = 0.0;
    } goodness;

    struct ConfigEcho {
        int window = 5, passes = 1;
        bool pin_peak_to_min = false;
        double theta_min = -0.9, theta_max = 0.9, theta_tolerance = 1e-4;
        int max_segments = 6;
        std::string segment_criterion = "bic";
        int min_segment_bins = 4;
        bool exclude_zero_occupation = true;
        bool weight_by_count = false;
    } config;
};

inline ReportDocument build_document(const FitReport& report, const FitConfig& cfg) {
    ReportDocument doc;
    doc.parameters = {report.global_params.alpha(),  report.global_params.beta(),
                      report.global_params.lambda(), report.global_params.theta(),
                      report.global_params.mu(),     report.global_params.temperature()};
    doc.peak.omega_p = report.peak.omega_p;
    doc.peak.index = report.peak.index;
    doc.peak.mode = report.peak.mode == PeakMode::detected ? "detected" : "pinned-to-minimum";
    doc.poverty_fraction = report.poverty_fraction;
    doc.gini = report.gini;
    doc.symmetry.kind = report.symmetry.kind == SymmetryKind::symmetry_feasible
                            ? "symmetry-feasible"
                            : "asymmetry-required";
    doc.symmetry.equivalent_ratio = report.symmetry.equivalent_ratio;
    doc.inequality_index = report.inequality.index;
    doc.welfare = report.inequality.welfare;
    doc.extreme_poverty_defined = report.extreme_poverty_defined;
    for (const auto& s : report.segments) {
        doc.segments.push_back({s.label, s.bin_first, s.bin_last, s.omega_min, s.omega_max,
                                s.benefit_min, s.benefit_max, s.params.alpha(), s.params.beta(),
                                s.params.lambda(), s.params.theta(), s.pearson_r});
    }
    doc.goodness = {report.goodness.pearson_r, report.goodness.rmse_nu,
                    report.goodness.r_squared};
    doc.config = {cfg.smoothing.window,
                  cfg.smoothing.passes,
                  cfg.pin_peak_to_min,
                  cfg.theta_min,
                  cfg.theta_max,
                  cfg.theta_tolerance,
                  cfg.max_segments,
                  cfg.segment_criterion == SegmentCriterion::bic ? "bic" : "fixed-k",
                  cfg.min_segment_bins,
                  cfg.exclude_zero_occupation,
                  cfg.weight_by_count};
    return doc;
}

namespace detail {

// Hand-rolled writer so numbers always carry 17 significant digits and key
// order never depends on a library's map implementation.
class JsonWriter {
public:
    std::string take() { return std::move(out_); }

    void begin_object() { out_ += '{'; fresh_ = true; }
    void end_object() { out_ += '}'; fresh_ = false; }
    void begin_array(const char* key) { prefix(key); out_ += '['; fresh_ = true; }
    void end_array() { out_ += ']'; fresh_ = false; }
    void begin_object(const char* key) { prefix(key); out_ += '{'; fresh_ = true; }
    void begin_element() { separate(); out_ += '{'; fresh_ = true; }

    void field(const char* key, const std::string& value) {
        prefix(key);
        out_ += '"';
        out_ += value;  // report strings are plain identifiers, nothing to escape
        out_ += '"';
    }

    void field(const char* key, double value) {
        prefix(key);
        if (!std::isfinite(value)) {
            out_ += "null";
            return;
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", value);
        out_ += buf;
    }

    void field(const char* key, bool value) { prefix(key); out_ += value ? "true" : "false"; }

    void field(const char* key, std::uint64_t value) {
        prefix(key);
        out_ += std::to_string(value);
    }

    void field(const char* key, int value) {
        prefix(key);
        out_ += std::to_string(value);
    }

    void null_field(const char* key) { prefix(key); out_ += "null"; }

private:
    void separate() {
        if (!fresh_) out_ += ',';
        fresh_ = false;
    }

    void prefix(const char* key) {
        separate();
        out_ += '"';
        out_ += key;
        out_ += "\":";
    }

    std::string out_;
    bool fresh_ = true;
};

}  // namespace detail

inline std::string to_json(const ReportDocument& doc) {
    detail::JsonWriter w;
    w.begin_object();
    w.field("format_version", doc.format_version);

    w.begin_object("parameters");
    w.field("alpha", doc.parameters.alpha);
    w.field("beta", doc.parameters.beta);
    w.field("lambda", doc.parameters.lambda);
    w.field("theta", doc.parameters.theta);
    w.field("mu", doc.parameters.mu);
    w.field("temperature", doc.parameters.temperature);
    w.end_object();

    w.begin_object("peak");
    w.field("omega_p", doc.peak.omega_p);
    w.field("index", doc.peak.index);
    w.field("mode", doc.peak.mode);
    w.end_object();

    w.field("poverty_fraction", doc.poverty_fraction);
    w.field("gini", doc.gini);

    w.begin_object("symmetry");
    w.field("kind", doc.symmetry.kind);
    if (doc.symmetry.equivalent_ratio) {
        w.field("equivalent_ratio", *doc.symmetry.equivalent_ratio);
    } else {
        w.null_field("equivalent_ratio");
    }
    w.end_object();

    w.field("inequality_index", doc.inequality_index);
    w.field("welfare", doc.welfare);
    w.field("extreme_poverty_defined", doc.extreme_poverty_defined);

    w.begin_array("segments");
    for (const auto& s : doc.segments) {
        w.begin_element();
        w.field("label", s.label);
        w.field("bin_first", s.bin_first);
        w.field("bin_last", s.bin_last);
        w.field("omega_min", s.omega_min);
        w.field("omega_max", s.omega_max);
        w.field("benefit_min", s.benefit_min);
        w.field("benefit_max", s.benefit_max);
        w.field("alpha", s.alpha);
        w.field("beta", s.beta);
        w.field("lambda", s.lambda);
        w.field("theta", s.theta);
        w.field("pearson_r", s.pearson_r);
        w.end_object();
    }
    w.end_array();

    w.begin_object("goodness");
    w.field("pearson_r", doc.goodness.pearson_r);
    w.field("rmse_nu", doc.goodness.rmse_nu);
    w.field("r_squared", doc.goodness.r_squared);
    w.end_object();

    w.begin_object("config");
    w.field("window", doc.config.window);
    w.field("passes", doc.config.passes);
    w.field("pin_peak_to_min", doc.config.pin_peak_to_min);
    w.field("theta_min", doc.config.theta_min);
    w.field("theta_max", doc.config.theta_max);
    w.field("theta_tolerance", doc.config.theta_tolerance);
    w.field("max_segments", doc.config.max_segments);
    w.field("segment_criterion", doc.config.segment_criterion);
    w.field("min_segment_bins", doc.config.min_segment_bins);
    w.field("exclude_zero_occupation", doc.config.exclude_zero_occupation);
    w.field("weight_by_count", doc.config.weight_by_count);
    w.end_object();

    w.end_object();
    std::string text = w.take();
    text += '\n';
    return text;
}

inline ReportDocument parse_report(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("report: ") + e.what());
    }
    try {
        ReportDocument doc;
        doc.format_version = j.at("format_version").get<std::string>();
        if (doc.format_version != kReportFormatVersion) {
            throw InvalidInput("report: unsupported format_version '" + doc.format_version + "'");
        }
        const auto& p = j.at("parameters");
        doc.parameters = {p.at("alpha"), p.at("beta"),  p.at("lambda"),
                          p.at("theta"), p.at("mu"), p.at("temperature")};
        const auto& pk = j.at("peak");
        doc.peak = {pk.at("omega_p"), pk.at("index"), pk.at("mode")};
        doc.poverty_fraction = j.at("poverty_fraction");
        doc.gini = j.at("gini");
        const auto& sym = j.at("symmetry");
        doc.symmetry.kind = sym.at("kind");
        if (!sym.at("equivalent_ratio").is_null()) {
            doc.symmetry.equivalent_ratio = sym.at("equivalent_ratio").get<double>();
        }
        doc.inequality_index = j.at("inequality_index");
        doc.welfare = j.at("welfare");
        doc.extreme_poverty_defined = j.at("extreme_poverty_defined");
        for (const auto& s : j.at("segments")) {
            doc.segments.push_back({s.at("label"), s.at("bin_first"), s.at("bin_last"),
                                    s.at("omega_min"), s.at("omega_max"), s.at("benefit_min"),
                                    s.at("benefit_max"), s.at("alpha"), s.at("beta"),
                                    s.at("lambda"), s.at("theta"), s.at("pearson_r")});
        }
        const auto& g = j.at("goodness");
        doc.goodness = {g.at("pearson_r"), g.at("rmse_nu"), g.at("r_squared")};
        const auto& c = j.at("config");
        doc.config = {c.at("window"),
                      c.at("passes"),
                      c.at("pin_peak_to_min"),
                      c.at("theta_min"),
                      c.at("theta_max"),
                      c.at("theta_tolerance"),
                      c.at("max_segments"),
                      c.at("segment_criterion"),
                      c.at("min_segment_bins"),
                      c.at("exclude_zero_occupation"),
                      c.at("weight_by_count")};
        return doc;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("report: ") + e.what());
    }
}

inline void write_report(const std::filesystem::path& path, const ReportDocument& doc) {
    detail::write_file_atomic(path, to_json(doc));
}

}  // namespace entrofit
