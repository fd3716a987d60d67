#pragma once

#include <cctype>
#include <charconv>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hewalk/pipeline.hpp"

namespace hewalk {

using Json = nlohmann::ordered_json;

/// Parses a plain number or a multiple of pi written with a "pi" suffix:
/// "1.5", "pi", "-pi", "-0.5pi".
inline double parse_angle(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ConfigError("empty angle");

    double scale = 1.0;
    if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
        scale = std::numbers::pi;
        s.resize(s.size() - 2);
        if (s.empty() || s == "+") return scale;
        if (s == "-") return -scale;
        if (s.back() == '*') s.pop_back();
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ConfigError("cannot parse angle '" + text + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw ConfigError("cannot parse angle '" + text + "'");
    return v * scale;
}

inline double angle_from_json(const Json& j, const char* key) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return parse_angle(j.get<std::string>());
    throw ConfigError(std::string("field '") + key + "' must be a number or an angle string");
}

inline Json to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

inline Complex complex_from_json(const Json& j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

inline Json to_json(const WalkConfig& c) {
    return Json{{"n_sites", c.n_sites},   {"alpha0", c.alpha0},
                {"delta", c.delta},       {"theta1", c.theta1},
                {"theta2", c.theta2},     {"axis", to_string(c.axis)},
                {"steps", c.steps},       {"boundary", to_string(c.boundary)},
                {"leakage_tol", std::isinf(c.leakage_tol) ? Json("inf") : Json(c.leakage_tol)},
                {"window", c.window}};
}

/// Flat config object; absent fields keep their defaults, unknown ones are
/// rejected.
inline WalkConfig config_from_json(const Json& j, WalkConfig c = {}) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, v] : j.items()) {
        try {
            if (key == "n_sites") c.n_sites = v.get<std::size_t>();
            else if (key == "alpha0") c.alpha0 = v.get<double>();
            else if (key == "delta") c.delta = angle_from_json(v, "delta");
            else if (key == "theta1") c.theta1 = angle_from_json(v, "theta1");
            else if (key == "theta2") c.theta2 = angle_from_json(v, "theta2");
            else if (key == "axis") c.axis = parse_axis(v.get<std::string>());
            else if (key == "steps") c.steps = v.get<std::size_t>();
            else if (key == "boundary") c.boundary = parse_boundary(v.get<std::string>());
            else if (key == "leakage_tol")
                c.leakage_tol = v == "inf" ? std::numeric_limits<double>::infinity() : v.get<double>();
            else if (key == "window") c.window = v.get<std::size_t>();
            else throw ConfigError("unknown config field '" + key + "'");
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("config field '" + key + "': " + e.what());
        }
    }
    return c;
}

inline WalkConfig load_config(const std::filesystem::path& path, WalkConfig base = {}) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    try {
        return config_from_json(Json::parse(in), base);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config file " + path.string() + ": " + e.what());
    }
}

inline const std::vector<std::string>& state_columns() {
    static const std::vector<std::string> cols{"site", "re0", "im0", "re1", "im1", "prob"};
    return cols;
}

inline Json to_json(const RunRecord& r) {
    Json j;
    j["config"] = to_json(r.config);
    j["alpha_bar_1"] = to_json(r.alpha_bar_1);
    j["alpha_bar_2"] = to_json(r.alpha_bar_2);
    j["peak_sites"] = Json::array({r.peak_sites.first, r.peak_sites.second});
    j["prob_pair"] = Json::array({r.prob_pair.first, r.prob_pair.second});
    j["fidelity"] = r.fidelity;
    j["phi"] = r.phi;
    j["phase_class"] = Json{{"label", to_string(r.phase_class)}, {"phi", r.phase_phi}, {"global", to_json(r.global_phase)}};
    j["alpha_sym"] = r.alpha_sym ? to_json(*r.alpha_sym) : Json(nullptr);
    j["error"] = r.error ? Json(*r.error) : Json(nullptr);
    if (r.distributions) {
        Json rows = Json::array();
        for (const auto& row : *r.distributions)
            rows.push_back(Json::array({row.site, row.amp0.real(), row.amp0.imag(), row.amp1.real(), row.amp1.imag(), row.prob}));
        j["distributions"] = Json{{"columns", state_columns()}, {"rows", std::move(rows)}};
    } else {
        j["distributions"] = nullptr;
    }
    return j;
}

inline RunRecord record_from_json(const Json& j) {
    RunRecord r;
    r.config = config_from_json(j.at("config"));
    r.alpha_bar_1 = complex_from_json(j.at("alpha_bar_1"));
    r.alpha_bar_2 = complex_from_json(j.at("alpha_bar_2"));
    r.peak_sites = {j.at("peak_sites").at(0).get<std::size_t>(), j.at("peak_sites").at(1).get<std::size_t>()};
    r.prob_pair = {j.at("prob_pair").at(0).get<double>(), j.at("prob_pair").at(1).get<double>()};
    r.fidelity = j.at("fidelity").get<double>();
    r.phi = j.at("phi").get<double>();
    const Json& pc = j.at("phase_class");
    r.phase_class = parse_phase_label(pc.at("label").get<std::string>());
    r.phase_phi = pc.at("phi").get<double>();
    r.global_phase = complex_from_json(pc.at("global"));
    if (!j.at("alpha_sym").is_null()) r.alpha_sym = complex_from_json(j.at("alpha_sym"));
    if (!j.at("error").is_null()) r.error = j.at("error").get<std::string>();
    if (j.contains("distributions") && !j.at("distributions").is_null()) {
        std::vector<StateRow> rows;
        for (const auto& row : j.at("distributions").at("rows"))
            rows.push_back({row.at(0).get<std::size_t>(), {row.at(1).get<double>(), row.at(2).get<double>()},
                            {row.at(3).get<double>(), row.at(4).get<double>()}, row.at(5).get<double>()});
        r.distributions = std::move(rows);
    }
    return r;
}

inline std::string serialize(const RunRecord& r) { return to_json(r).dump(2) + "\n"; }

inline RunRecord parse_record(const std::string& text) { return record_from_json(Json::parse(text)); }

/// Shortest decimal form that reads back to the same double (at most 17
/// significant digits).
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

/// Header row plus numeric rows, written RFC-4180 style.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add(std::vector<double> row) {
        if (row.size() != columns.size()) throw DimensionError("csv row width does not match header");
        rows.push_back(std::move(row));
    }

    std::string str() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
        os << "\r\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
            os << "\r\n";
        }
        return os.str();
    }

    void write(const std::filesystem::path& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw ConfigError("cannot write " + path.string());
        out << str();
    }
};

/// site, re0, im0, re1, im1, prob with 1-based sites.
inline CsvTable state_table(const CoinLatticeState& s) {
    CsvTable t{state_columns(), {}};
    for (const auto& r : state_rows(s))
        t.add({static_cast<double>(r.site), r.amp0.real(), r.amp0.imag(), r.amp1.real(), r.amp1.imag(), r.prob});
    return t;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << text;
}

}  // namespace hewalk
