#pragma once

// Declarative run configuration, read from a JSON file:
//
// {
//   "parameterizations": [{"name": "fast", "T": 8, "x": 10, "k": 4}, {"T": "inf", "x": 0, "k": "inf"}],
//   "alerts": [{"kind": "absolute_below", "threshold": -100, "parameterization": "fast"},
//              {"kind": "percentile_bottom", "fraction": 0.25, "parameterization": "fast"}],
//   "matrix": {"F": [6, 4, -10, -25], "f": [4, 6, -4, -10], "d": [-10, -4, 6, 4], "D": [-25, -10, 4, 6]},
//   "classes": {"F1": "F", "d3": "d"},
//   "simulator": {"dots_per_color": 8, "width": 100, "height": 100, "players_per_class": 5,
//                 "actions_per_player": 20, "switch_at": 11, "proposals": 16, "max_retries": 3},
//   "seed": 1,
//   "output": "table"
// }
//
// Every field is optional. Missing parameterizations default to the four
// experiment parameterizations; a missing k defaults to T.

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cqr/alerts.hpp"
#include "cqr/eval.hpp"

namespace cqr {

enum class OutputFormat { table, structured };

inline OutputFormat parse_output_format(const std::string& s) {
    if (s == "table") return OutputFormat::table;
    if (s == "structured") return OutputFormat::structured;
    throw InvalidArgument("unknown output format '" + s + "' (expected table or structured)");
}

struct SimulatorSettings {
    std::size_t dots_per_color = 8;
    double width = 100.0;
    double height = 100.0;
    std::size_t players_per_class = 5;
    std::size_t actions_per_player = 20;
    std::size_t switch_at = 11;
    std::size_t proposals = 16;
    std::size_t max_retries = 3;
};

struct RunConfig {
    std::vector<CqrParams> parameterizations = experiment_parameterizations();
    std::vector<AlertRule> alerts;
    ClassValueMatrix matrix;
    std::map<std::string, PlayerClass, std::less<>> classes;
    SimulatorSettings simulator;
    std::uint64_t seed = 1;
    OutputFormat output = OutputFormat::table;

    /// Every alert must name a declared parameterization.
    void validate() const {
        for (const auto& rule : alerts) {
            bool found = false;
            for (const auto& p : parameterizations) found = found || p.name() == rule.parameterization;
            if (!found)
                throw InvalidArgument("alert rule references undeclared parameterization '" + rule.parameterization + "'");
        }
        if (parameterizations.empty()) throw InvalidArgument("config declares no parameterizations");
        for (std::size_t i = 0; i < parameterizations.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (parameterizations[i].name() == parameterizations[j].name())
                    throw InvalidArgument("duplicate parameterization name '" + parameterizations[i].name() + "'");
    }
};

namespace detail {

inline Limit limit_from_json(const nlohmann::json& j, const char* field) {
    if (j.is_string()) return Limit::parse(j.get<std::string>());
    if (j.is_number_unsigned()) return Limit::of(j.get<std::size_t>());
    throw InvalidArgument(std::string("'") + field + "' must be a positive integer or \"inf\"");
}

template <class T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
    const auto it = j.find(key);
    if (it == j.end()) return fallback;
    try {
        return it->get<T>();
    } catch (const nlohmann::json::exception&) {
        throw InvalidArgument(std::string("config field '") + key + "' has the wrong type");
    }
}

}  // namespace detail

inline CqrParams params_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InvalidArgument("parameterization entry must be an object");
    if (!j.contains("T")) throw InvalidArgument("parameterization entry needs 'T'");
    const Limit window = detail::limit_from_json(j.at("T"), "T");
    const Limit run = j.contains("k") ? detail::limit_from_json(j.at("k"), "k") : window;
    const double x = detail::get_or<double>(j, "x", 0.0);
    return CqrParams::make(window, x, run, detail::get_or<std::string>(j, "name", ""));
}

/// {"F": [..4..], "f": [...], "d": [...], "D": [...]} or a 4x4 array in F, f, d, D order.
inline ClassValueMatrix matrix_from_json(const nlohmann::json& j) {
    ClassValueMatrix::Values values{};
    auto read_row = [](const nlohmann::json& row) {
        if (!row.is_array() || row.size() != 4) throw InvalidArgument("matrix rows must have 4 integers");
        std::array<long, 4> r{};
        for (std::size_t q = 0; q < 4; ++q) {
            if (!row[q].is_number_integer()) throw InvalidArgument("matrix values must be integers");
            r[q] = row[q].get<long>();
        }
        return r;
    };
    if (j.is_array()) {
        if (j.size() != 4) throw InvalidArgument("matrix must have 4 rows");
        for (std::size_t c = 0; c < 4; ++c) values[c] = read_row(j[c]);
    } else if (j.is_object()) {
        for (PlayerClass c : all_player_classes) {
            const std::string key(1, to_char(c));
            if (!j.contains(key)) throw InvalidArgument("matrix is missing class '" + key + "'");
            values[static_cast<std::size_t>(c)] = read_row(j.at(key));
        }
    } else {
        throw InvalidArgument("matrix must be an object or an array");
    }
    return ClassValueMatrix(values);
}

/// Inline JSON when the text starts with '{' or '[', otherwise a file path.
inline ClassValueMatrix load_matrix(const std::string& text_or_path) {
    const auto first = text_or_path.find_first_not_of(" \t\r\n");
    try {
        if (first != std::string::npos && (text_or_path[first] == '{' || text_or_path[first] == '['))
            return matrix_from_json(nlohmann::json::parse(text_or_path));
        std::ifstream in(text_or_path);
        if (!in) throw InvalidArgument("cannot open matrix file '" + text_or_path + "'");
        return matrix_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("malformed matrix JSON: ") + e.what());
    }
}

inline RunConfig config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
    RunConfig cfg;

    if (const auto it = j.find("parameterizations"); it != j.end()) {
        if (!it->is_array()) throw InvalidArgument("'parameterizations' must be an array");
        cfg.parameterizations.clear();
        for (const auto& p : *it) cfg.parameterizations.push_back(params_from_json(p));
    }

    if (const auto it = j.find("alerts"); it != j.end()) {
        if (!it->is_array()) throw InvalidArgument("'alerts' must be an array");
        for (const auto& a : *it) {
            const auto kind = detail::get_or<std::string>(a, "kind", "");
            const auto param = detail::get_or<std::string>(a, "parameterization", "");
            if (kind == "absolute_below") {
                if (!a.contains("threshold")) throw InvalidArgument("absolute_below alert needs 'threshold'");
                cfg.alerts.push_back(AlertRule::absolute_below(detail::get_or<double>(a, "threshold", 0.0), param));
            } else if (kind == "percentile_bottom") {
                if (!a.contains("fraction")) throw InvalidArgument("percentile_bottom alert needs 'fraction'");
                cfg.alerts.push_back(AlertRule::percentile_bottom(detail::get_or<double>(a, "fraction", 0.0), param));
            } else {
                throw InvalidArgument("unknown alert kind '" + kind + "'");
            }
        }
    }

    if (const auto it = j.find("matrix"); it != j.end()) cfg.matrix = matrix_from_json(*it);

    if (const auto it = j.find("classes"); it != j.end()) {
        if (!it->is_object()) throw InvalidArgument("'classes' must map player ids to F, f, d or D");
        for (const auto& [player, cls] : it->items()) {
            if (!cls.is_string()) throw InvalidArgument("class of player '" + player + "' must be a string");
            cfg.classes[player] = parse_player_class(cls.get<std::string>());
        }
    }

    if (const auto it = j.find("simulator"); it != j.end()) {
        auto& s = cfg.simulator;
        s.dots_per_color = detail::get_or<std::size_t>(*it, "dots_per_color", s.dots_per_color);
        s.width = detail::get_or<double>(*it, "width", s.width);
        s.height = detail::get_or<double>(*it, "height", s.height);
        s.players_per_class = detail::get_or<std::size_t>(*it, "players_per_class", s.players_per_class);
        s.actions_per_player = detail::get_or<std::size_t>(*it, "actions_per_player", s.actions_per_player);
        s.switch_at = detail::get_or<std::size_t>(*it, "switch_at", s.switch_at);
        s.proposals = detail::get_or<std::size_t>(*it, "proposals", s.proposals);
        s.max_retries = detail::get_or<std::size_t>(*it, "max_retries", s.max_retries);
        if (s.switch_at < 1) throw InvalidArgument("simulator.switch_at must be at least 1");
        if (s.proposals < 1) throw InvalidArgument("simulator.proposals must be at least 1");
    }

    cfg.seed = detail::get_or<std::uint64_t>(j, "seed", cfg.seed);
    if (j.contains("output")) cfg.output = parse_output_format(detail::get_or<std::string>(j, "output", "table"));

    cfg.validate();
    return cfg;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open config file '" + path + "'");
    try {
        return config_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument("malformed config '" + path + "': " + e.what());
    }
}

}  // namespace cqr
