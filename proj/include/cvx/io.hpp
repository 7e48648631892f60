// Copyright 2026 The cvx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// JSON state/channel ingestion and deterministic report serialization.
//
// State schemas:
//   {"type": "fock", "dims": [...], "coefficients": [[re, im], ...]}
//   {"type": "fock_mixed", "dims": [...], "matrix": [[[re, im], ...], ...]}
//   {"type": "gaussian", "means": [...], "cm": [[...], ...]}
// Any state may carry "partition": {"a": [...], "b": [...]} (0-based modes).
// Channel schemas:
//   {"type": "xy", "x": [[...]], "y": [[...]]}
//   {"type": "pure_loss", "eta": 0.8}
//
// Reports: JSON with sorted keys and numbers written as decimal strings with
// 12 significant digits; CSV with the same formatting; LF line endings.

#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "cvx/channels.hpp"
#include "cvx/errors.hpp"
#include "cvx/fock.hpp"
#include "cvx/gaussify.hpp"
#include "cvx/measures.hpp"
#include "cvx/phase_space.hpp"

namespace cvx {

using Json = nlohmann::json;

/// 12 significant digits, shortest %g form.
inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
    return buf;
}

struct StateSpec {
    std::variant<FockDensityOperator, GaussianState> state;
    std::optional<Bipartition> partition;

    bool is_fock() const { return std::holds_alternative<FockDensityOperator>(state); }
    std::size_t n_modes() const {
        return is_fock() ? std::get<FockDensityOperator>(state).n_modes() : std::get<GaussianState>(state).n_modes();
    }
    /// Partition given in the input, otherwise the first half of the modes against the rest.
    Bipartition partition_or_default() const {
        return partition ? *partition : Bipartition::split(n_modes(), std::max<std::size_t>(1, n_modes() / 2));
    }
};

namespace detail {

class FieldReader {
   public:
    FieldReader(const Json& j, std::string source) : j_(j), source_(std::move(source)) {
        if (!j_.is_object()) fail("", "expected a JSON object");
    }

    [[noreturn]] void fail(const std::string& field, const std::string& what) const {
        throw parse_error(source_ + (field.empty() ? "" : ": field '" + field + "'") + ": " + what);
    }

    const Json& at(const std::string& field) const {
        if (!j_.contains(field)) fail(field, "missing");
        return j_.at(field);
    }

    std::string string(const std::string& field) const {
        const Json& v = at(field);
        if (!v.is_string()) fail(field, "expected a string");
        return v.get<std::string>();
    }

    double number(const Json& v, const std::string& field) const {
        if (!v.is_number()) fail(field, "expected a number");
        return v.get<double>();
    }

    std::vector<std::size_t> index_list(const Json& v, const std::string& field) const {
        if (!v.is_array()) fail(field, "expected an array of non-negative integers");
        std::vector<std::size_t> out;
        for (const auto& e : v) {
            if (!e.is_number_unsigned() && !(e.is_number_integer() && e.get<long long>() >= 0)) {
                fail(field, "expected an array of non-negative integers");
            }
            out.push_back(e.get<std::size_t>());
        }
        return out;
    }

    Complex complex(const Json& v, const std::string& field) const {
        if (v.is_number()) return v.get<double>();
        if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
            return {v[0].get<double>(), v[1].get<double>()};
        }
        fail(field, "expected a number or a [re, im] pair");
    }

    RealVector real_vector(const Json& v, const std::string& field) const {
        if (!v.is_array()) fail(field, "expected an array of numbers");
        RealVector out(static_cast<Eigen::Index>(v.size()));
        for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = number(v[i], field);
        return out;
    }

    RealMatrix real_matrix(const Json& v, const std::string& field) const {
        if (!v.is_array() || v.empty()) fail(field, "expected a non-empty array of rows");
        const std::size_t cols = v[0].is_array() ? v[0].size() : 0;
        RealMatrix out(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(cols));
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_array() || v[i].size() != cols) fail(field, "row " + std::to_string(i) + " has the wrong length");
            for (std::size_t k = 0; k < cols; ++k)
                out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = number(v[i][k], field);
        }
        return out;
    }

    const std::string& source() const { return source_; }

   private:
    const Json& j_;
    std::string source_;
};

inline Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(path.string() + ": " + e.what());
    }
}

}  // namespace detail

inline StateSpec parse_state(const Json& j, const std::string& source = "state") {
    const detail::FieldReader r(j, source);
    const std::string type = r.string("type");
    std::optional<Bipartition> partition;
    if (j.contains("partition")) {
        const detail::FieldReader p(j.at("partition"), source + ": partition");
        try {
            partition.emplace(p.index_list(p.at("a"), "a"), p.index_list(p.at("b"), "b"));
        } catch (const partition_error& e) {
            r.fail("partition", e.what());
        }
    }
    try {
        if (type == "gaussian") {
            const RealMatrix cm = r.real_matrix(r.at("cm"), "cm");
            RealVector means = j.contains("means") ? r.real_vector(j.at("means"), "means") : RealVector::Zero(cm.rows());
            GaussianState g(std::move(means), cm);
            if (validate_cm(g.cm) != CmValidity::valid) r.fail("cm", std::string("covariance matrix is ") + to_string(validate_cm(g.cm)));
            return {std::move(g), partition};
        }
        if (type == "fock" || type == "fock_mixed") {
            const Dims dims = r.index_list(r.at("dims"), "dims");
            if (dims.empty()) r.fail("dims", "at least one mode required");
            if (type == "fock") {
                const Json& c = r.at("coefficients");
                if (!c.is_array()) r.fail("coefficients", "expected an array");
                ComplexVector v(static_cast<Eigen::Index>(c.size()));
                for (std::size_t i = 0; i < c.size(); ++i) v(static_cast<Eigen::Index>(i)) = r.complex(c[i], "coefficients");
                return {build_pure_state(dims, std::move(v)), partition};
            }
            const Json& m = r.at("matrix");
            if (!m.is_array()) r.fail("matrix", "expected an array of rows");
            ComplexMatrix rho(static_cast<Eigen::Index>(m.size()), static_cast<Eigen::Index>(m.size()));
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (!m[i].is_array() || m[i].size() != m.size()) r.fail("matrix", "row " + std::to_string(i) + " has the wrong length");
                for (std::size_t k = 0; k < m.size(); ++k)
                    rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = r.complex(m[i][k], "matrix");
            }
            return {build_mixed_state(dims, std::move(rho)), partition};
        }
    } catch (const capacity_error&) {
        throw;
    } catch (const parse_error&) {
        throw;
    } catch (const error& e) {
        throw parse_error(source + ": " + e.what());
    }
    r.fail("type", "unknown state type '" + type + "'");
}

inline StateSpec load_state(const std::filesystem::path& path) {
    return parse_state(detail::read_json_file(path), path.string());
}

inline GaussianChannel parse_channel(const Json& j, const std::string& source = "channel") {
    const detail::FieldReader r(j, source);
    const std::string type = r.string("type");
    try {
        if (type == "pure_loss") return make_pure_loss(r.number(r.at("eta"), "eta"));
        if (type == "xy") return {r.real_matrix(r.at("x"), "x"), r.real_matrix(r.at("y"), "y")};
    } catch (const parse_error&) {
        throw;
    } catch (const error& e) {
        throw parse_error(source + ": " + e.what());
    }
    r.fail("type", "unknown channel type '" + type + "'");
}

inline GaussianChannel load_channel(const std::filesystem::path& path) {
    return parse_channel(detail::read_json_file(path), path.string());
}

// ---------------------------------------------------------------------------
// Serialization

inline Json number_json(double v) { return format_number(v); }

inline Json matrix_json(const RealMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(format_number(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json vector_json(const RealVector& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(format_number(v(i)));
    return out;
}

inline std::string serialize(const Json& j) { return j.dump(2) + "\n"; }

inline Json to_json(const ConvergenceReport& r) {
    Json j;
    j["grid"] = {{"max", number_json(r.grid.max)}, {"step", number_json(r.grid.step)},
                 {"points", r.grid.points.size()}, {"metric", "sup over grid of |chi_k - chi_G|"}};
    Json fit, tail;
    for (const auto& [cls, s] : r.slopes) fit[cls] = s ? number_json(*s) : Json(nullptr);
    for (const auto& [cls, s] : r.tail_slopes) tail[cls] = s ? number_json(*s) : Json(nullptr);
    j["slope_fit"] = {{"slopes", fit}, {"tail_min_n", r.tail_min_n}, {"tail_slopes", tail}};
    Json rows = Json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"n", row.n}, {"row_class", row.row_class}, {"row", row.row}, {"sup_error", number_json(row.sup_error)}});
    j["rows"] = std::move(rows);
    return j;
}

inline std::string convergence_csv(const ConvergenceReport& r) {
    std::string out = "n,row_class,sup_error\n";
    for (const auto& row : r.rows) out += std::to_string(row.n) + "," + row.row_class + "," + format_number(row.sup_error) + "\n";
    return out;
}

inline Json to_json(const ExtremalityReport& r) {
    Json j;
    j["label"] = r.label;
    j["cm"] = matrix_json(r.moments.cm);
    j["means"] = vector_json(r.moments.means);
    j["quantities"] = {
        {"state", {{"entropy", number_json(r.entropy)},
                   {"reduced_entropy", number_json(r.reduced_entropy)},
                   {"conditional_entropy", number_json(r.conditional_entropy)},
                   {"log_negativity", number_json(r.log_negativity)}}},
        {"gaussian", {{"entropy", number_json(r.entropy_gaussian)},
                      {"reduced_entropy", number_json(r.reduced_entropy_gaussian)},
                      {"conditional_entropy", number_json(r.conditional_entropy_gaussian)},
                      {"log_negativity", number_json(r.log_negativity_gaussian)},
                      {"distillable", r.distillable_gaussian}}}};
    j["verdicts"] = {
        {"max_entropy", {{"holds", r.max_entropy_holds()}, {"margin", number_json(r.max_entropy_margin())}}},
        {"conditional_entropy",
         {{"holds", r.conditional_entropy_holds()}, {"margin", number_json(r.conditional_entropy_margin())}}},
        {"log_negativity",
         {{"asserted", false},
          {"margin", number_json(r.negativity_margin())},
          {"gaussian_exceeds_state", r.negativity_counterexample()}}},
        {"distillability", {{"gaussian_criterion", r.distillable_gaussian}, {"sufficient_for_state", r.distillable_gaussian}}}};
    j["tolerance"] = number_json(r.tolerance);
    j["units"] = "bits";
    return j;
}

inline std::string extremality_csv_header() {
    return "label,entropy,entropy_gaussian,reduced_entropy,reduced_entropy_gaussian,conditional_entropy,"
           "conditional_entropy_gaussian,log_negativity,log_negativity_gaussian,distillable_gaussian,"
           "max_entropy_margin,conditional_entropy_margin\n";
}

inline std::string extremality_csv_row(const ExtremalityReport& r) {
    std::string s = r.label;
    for (double v : {r.entropy, r.entropy_gaussian, r.reduced_entropy, r.reduced_entropy_gaussian, r.conditional_entropy,
                     r.conditional_entropy_gaussian, r.log_negativity, r.log_negativity_gaussian})
        s += "," + format_number(v);
    s += std::string(",") + (r.distillable_gaussian ? "1" : "0");
    s += "," + format_number(r.max_entropy_margin()) + "," + format_number(r.conditional_entropy_margin()) + "\n";
    return s;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw io_error("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open " + path.string() + " for writing");
    out << content;
    if (!out) throw io_error("write failed for " + path.string());
}

/// Writes `<stem>.csv` and the `<stem>.json` sidecar; returns both paths.
inline std::vector<std::filesystem::path> emit_report(const ConvergenceReport& r, const std::filesystem::path& dir,
                                                      const std::string& stem = "convergence") {
    const auto csv = dir / (stem + ".csv"), json = dir / (stem + ".json");
    write_text_file(csv, convergence_csv(r));
    write_text_file(json, serialize(to_json(r)));
    return {csv, json};
}

inline std::vector<std::filesystem::path> emit_report(const ExtremalityReport& r, const std::filesystem::path& dir,
                                                      const std::string& stem = "extremality") {
    const auto csv = dir / (stem + ".csv"), json = dir / (stem + ".json");
    write_text_file(csv, extremality_csv_header() + extremality_csv_row(r));
    write_text_file(json, serialize(to_json(r)));
    return {csv, json};
}

}  // namespace cvx
