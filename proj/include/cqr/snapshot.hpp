#pragma once

// JSON snapshot of an engine's ledgers, so a log can be ingested across
// several invocations.

#include <fstream>
#include <string>

#include <json.hpp>

#include "cqr/engine.hpp"

namespace cqr {

namespace detail {

inline const char* sign_key(Sign s) {
    switch (s) {
        case Sign::positive: return "positive";
        case Sign::negative: return "negative";
        case Sign::zero: return "none";
    }
    return "none";
}

inline Sign sign_from_key(const std::string& s) {
    if (s == "positive") return Sign::positive;
    if (s == "negative") return Sign::negative;
    if (s == "none") return Sign::zero;
    throw InvalidArgument("bad run sign '" + s + "' in snapshot");
}

inline nlohmann::json params_json(const CqrParams& p) {
    return {{"name", p.name()}, {"T", p.window().to_string()}, {"x", p.threshold()}, {"k", p.run_length().to_string()}};
}

}  // namespace detail

inline nlohmann::json engine_snapshot(const Engine& engine) {
    nlohmann::json j;
    j["version"] = 1;
    j["parameterizations"] = nlohmann::json::array();
    for (const auto& p : engine.parameterizations()) j["parameterizations"].push_back(detail::params_json(p));
    j["players"] = nlohmann::json::object();
    engine.visit_ledgers([&](const std::string& player, const CqrParams&, const DeltaLedger& ledger) {
        const auto s = ledger.state();
        nlohmann::json l;
        static constexpr const char* class_keys[] = {"positive", "negative", "zero"};
        for (std::size_t c = 0; c < 3; ++c) {
            auto arr = nlohmann::json::array();
            for (const auto& d : s.classes[c]) arr.push_back({d.seq, d.value});
            l[class_keys[c]] = std::move(arr);
        }
        l["run_sign"] = detail::sign_key(s.run_sign);
        l["run_count"] = s.run_count;
        l["total_recorded"] = s.total_recorded;
        l["last_seq"] = s.last_seq ? nlohmann::json(*s.last_seq) : nlohmann::json(nullptr);
        l["positive_sum"] = s.positive_sum;
        l["negative_sum"] = s.negative_sum;
        l["filtered_sum"] = s.filtered_sum;
        j["players"][player].push_back(std::move(l));
    });
    return j;
}

/// Restores ledgers into a freshly configured engine. The snapshot must
/// have been taken with the same parameterizations, in the same order.
inline void restore_snapshot(Engine& engine, const nlohmann::json& j) {
    try {
        if (j.at("version").get<int>() != 1) throw InvalidArgument("unsupported snapshot version");
        const auto& params = j.at("parameterizations");
        const auto& configured = engine.parameterizations();
        if (params.size() != configured.size()) throw InvalidArgument("snapshot parameterizations differ from config");
        for (std::size_t i = 0; i < configured.size(); ++i)
            if (params[i] != detail::params_json(configured[i]))
                throw InvalidArgument("snapshot parameterization '" + params[i].value("name", std::string("?")) +
                                      "' differs from config");

        static constexpr const char* class_keys[] = {"positive", "negative", "zero"};
        for (const auto& [player, ledgers] : j.at("players").items()) {
            std::vector<DeltaLedger::State> states;
            for (const auto& l : ledgers) {
                DeltaLedger::State s;
                for (std::size_t c = 0; c < 3; ++c)
                    for (const auto& e : l.at(class_keys[c]))
                        s.classes[c].push_back(Delta{e.at(1).get<double>(), e.at(0).get<std::uint64_t>()});
                s.run_sign = detail::sign_from_key(l.at("run_sign").get<std::string>());
                s.run_count = l.at("run_count").get<std::size_t>();
                s.total_recorded = l.at("total_recorded").get<std::uint64_t>();
                if (!l.at("last_seq").is_null()) s.last_seq = l.at("last_seq").get<std::uint64_t>();
                s.positive_sum = l.at("positive_sum").get<double>();
                s.negative_sum = l.at("negative_sum").get<double>();
                s.filtered_sum = l.at("filtered_sum").get<double>();
                states.push_back(std::move(s));
            }
            engine.restore_player(player, states);
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("malformed snapshot: ") + e.what());
    }
}

inline void save_snapshot(const Engine& engine, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw InvalidArgument("cannot write snapshot '" + path + "'");
    out << engine_snapshot(engine).dump() << '\n';
}

/// Returns false when the file does not exist.
inline bool load_snapshot(Engine& engine, const std::string& path) {
    std::ifstream in(path);
    if (!in) return false;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument("malformed snapshot '" + path + "': " + e.what());
    }
    restore_snapshot(engine, j);
    return true;
}

}  // namespace cqr
