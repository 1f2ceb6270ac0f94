#pragma once

/**
 * JSON interchange for all CLI artifacts and the sweep CSV.
 *
 * Instance JSON: {"labels": [...], "mode": "rational"|"float64",
 * "cost": [[...]]}.  Rational scalars render as integers when integral and
 * as "p/q" strings otherwise; floats are plain JSON numbers.
 */

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "weakkam/critical.hpp"
#include "weakkam/lax_oleinik.hpp"
#include "weakkam/mather.hpp"
#include "weakkam/selection.hpp"
#include "weakkam/space.hpp"

namespace weakkam {

using json = nlohmann::json;

enum class CsvRational { decimal, fraction };

inline json scalar_json(const Rat& v) {
    if (v.get_den() == 1 && v.get_num().fits_slong_p())
        return json(static_cast<long>(v.get_num().get_si()));
    return json(v.get_str());
}

inline json scalar_json(double v) { return json(v); }

template <class S>
S scalar_from_json(const json& j);

template <>
inline Rat scalar_from_json<Rat>(const json& j) {
    if (j.is_number_integer()) return rat_from(j.get<long>());
    if (j.is_string()) return rat_parse(j.get<std::string>());
    throw std::invalid_argument(
        "rational-mode value must be an integer or a \"p/q\" string, got: " + j.dump());
}

template <>
inline double scalar_from_json<double>(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return scalar_traits<Rat>::to_double(rat_parse(j.get<std::string>()));
    throw std::invalid_argument("numeric value expected, got: " + j.dump());
}

/// Parse "p/q", integers, and plain decimals ("0.75") exactly.
inline Rat rat_parse_flexible(const std::string& text) {
    auto dot = text.find('.');
    if (dot == std::string::npos) return rat_parse(text);
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const long frac_len = static_cast<long>(text.size() - dot - 1);
    Rat scale = 1;
    for (long i = 0; i < frac_len; ++i) scale *= 10;
    return rat_parse(digits) / scale;
}

template <class S>
S scalar_parse(const std::string& text);

template <>
inline Rat scalar_parse<Rat>(const std::string& text) { return rat_parse_flexible(text); }

template <>
inline double scalar_parse<double>(const std::string& text) { return std::stod(text); }

// ---- instances -----------------------------------------------------------

using Instance = std::variant<Space<Rat>, Space<double>>;

template <class S>
json instance_json(const Space<S>& sp) {
    json cost = json::array();
    for (int y = 0; y < sp.n; ++y) {
        json row = json::array();
        for (int x = 0; x < sp.n; ++x) row.push_back(scalar_json(sp.c(y, x)));
        cost.push_back(std::move(row));
    }
    return {{"labels", sp.labels},
            {"mode", scalar_traits<S>::exact ? "rational" : "float64"},
            {"cost", std::move(cost)}};
}

inline json instance_json(const Instance& inst) {
    return std::visit([](const auto& sp) { return instance_json(sp); }, inst);
}

template <class S>
Space<S> space_from_json(const json& j) {
    std::vector<std::string> labels = j.at("labels").get<std::vector<std::string>>();
    std::vector<std::vector<S>> rows;
    for (const auto& row : j.at("cost")) {
        rows.emplace_back();
        for (const auto& v : row) rows.back().push_back(scalar_from_json<S>(v));
    }
    return validate_space(labels, rows);
}

inline Instance instance_from_json(const json& j) {
    const std::string mode = j.value("mode", "rational");
    if (mode == "rational") return space_from_json<Rat>(j);
    if (mode == "float64") return space_from_json<double>(j);
    throw std::invalid_argument("unknown mode: '" + mode + "'");
}

// ---- value functions and solutions ---------------------------------------

template <class S>
json values_json(const std::vector<S>& values) {
    json arr = json::array();
    for (const S& v : values) arr.push_back(scalar_json(v));
    return {{"values", std::move(arr)}};
}

template <class S>
std::vector<S> values_from_json(const json& j) {
    std::vector<S> out;
    for (const auto& v : j.at("values")) out.push_back(scalar_from_json<S>(v));
    return out;
}

template <class S>
json solution_json(const DiscountedSolution<S>& sol) {
    json j = values_json(sol.u);
    j["iterations"] = sol.iterations;
    j["residual"] = scalar_json(sol.residual);
    j["argmin_map"] = sol.argmin_map;
    return j;
}

template <class S>
json matrix_json(const std::vector<S>& m, int n) {
    json rows = json::array();
    for (int y = 0; y < n; ++y) {
        json row = json::array();
        for (int x = 0; x < n; ++x) row.push_back(scalar_json(m[static_cast<std::size_t>(y) * n + x]));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <class S>
json barrier_json(const BarrierData<S>& b, int n) {
    json edges = json::array();
    for (auto [y, x] : b.critical_edges) edges.push_back(json::array({y, x}));
    return {{"alpha", scalar_json(b.alpha)},
            {"phi", matrix_json(b.phi, n)},
            {"h", matrix_json(b.h, n)},
            {"aubry", b.aubry},
            {"critical_edges", std::move(edges)}};
}

template <class S>
json edge_measure_json(const EdgeMeasure<S>& mu, bool closed) {
    return {{"weights", matrix_json(mu.weights, mu.n)}, {"closed", closed}};
}

template <class S>
json cycle_measure_json(const CycleMeasure<S>& cm) {
    json j = edge_measure_json(cm.measure, true);
    j["cycle"] = cm.cycle;
    return j;
}

template <class S>
json selection_json(const SelectionResult<S>& sel) {
    json measures = json::array();
    for (std::size_t m = 0; m < sel.measures.size(); ++m) {
        json entry = cycle_measure_json(sel.measures[m]);
        entry["h_mu"] = values_json(sel.h_mu_values[m]);
        measures.push_back(std::move(entry));
    }
    json j = values_json(sel.u0);
    j["u0"] = j["values"];
    j["per_measure"] = std::move(measures);
    j["argmin_measure"] = sel.argmin_measure;
    return j;
}

// ---- sweep CSV -----------------------------------------------------------

inline std::string csv_scalar(const Rat& v, CsvRational style) {
    if (style == CsvRational::decimal) {
        std::string dec = rat_decimal(v);
        if (!dec.empty()) return dec;
    }
    return v.get_str();
}

inline std::string csv_scalar(double v, CsvRational) { return scalar_traits<double>::str(v); }

template <class S>
std::string sweep_csv(const SweepReport<S>& rep, CsvRational style = CsvRational::decimal) {
    std::string out = "lambda,sup_error,residual,iterations,alpha_hat,occupation_defect\n";
    for (const auto& row : rep.rows) {
        if (row.failed) {
            out += csv_scalar(row.lambda, style) + ",FAILED,,,,\n";
            continue;
        }
        out += csv_scalar(row.lambda, style) + ',' + csv_scalar(row.sup_error, style) + ',' +
               csv_scalar(row.residual, style) + ',' + std::to_string(row.iterations) + ',' +
               csv_scalar(row.alpha_hat, style) + ',' + csv_scalar(row.occupation_defect, style) +
               '\n';
    }
    return out;
}

}  // namespace weakkam
