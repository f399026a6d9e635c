#pragma once

// Line-delimited event log: one JSON object per line.
//
//   {"seq":1,"player":"F1","delta":5}
//   {"seq":2,"player":"F1","action":{"domain":"clustering","dot":3,"x":41.5,"y":12.0}}
//
// Unknown fields are ignored. Blank lines are skipped.

#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "cqr/clustering.hpp"
#include "cqr/error.hpp"

namespace cqr {

/// Drag of one dot in the clustering game.
struct ClusteringMove {
    std::size_t dot = 0;
    Position target;

    friend bool operator==(const ClusteringMove&, const ClusteringMove&) = default;
};

inline constexpr const char* clustering_domain = "clustering";

struct EventRecord {
    std::uint64_t seq = 0;
    std::string player;
    std::variant<double, ClusteringMove> payload;

    bool is_delta() const noexcept { return std::holds_alternative<double>(payload); }
    double delta() const { return std::get<double>(payload); }
    const ClusteringMove& move() const { return std::get<ClusteringMove>(payload); }

    friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

inline nlohmann::json to_json(const EventRecord& r) {
    nlohmann::json j;
    j["seq"] = r.seq;
    j["player"] = r.player;
    if (r.is_delta()) {
        j["delta"] = r.delta();
    } else {
        const auto& m = r.move();
        j["action"] = {{"domain", clustering_domain}, {"dot", m.dot}, {"x", m.target.x}, {"y", m.target.y}};
    }
    return j;
}

inline std::string serialize_event(const EventRecord& r) { return to_json(r).dump(); }

inline void write_event_log(std::ostream& os, const std::vector<EventRecord>& records) {
    for (const auto& r : records) os << serialize_event(r) << '\n';
}

/// Parses one nonempty line. `line_no` is only used in error messages.
inline EventRecord parse_event(const std::string& line, std::size_t line_no) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(line_no, std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError(line_no, "record is not an object");

    EventRecord r;
    const auto seq = j.find("seq");
    if (seq == j.end() || !seq->is_number_unsigned()) throw ParseError(line_no, "missing or invalid 'seq'");
    r.seq = seq->get<std::uint64_t>();

    const auto player = j.find("player");
    if (player == j.end() || !player->is_string() || player->get_ref<const std::string&>().empty())
        throw ParseError(line_no, "missing or invalid 'player'");
    r.player = player->get<std::string>();

    const auto delta = j.find("delta");
    const auto action = j.find("action");
    if ((delta == j.end()) == (action == j.end()))
        throw ParseError(line_no, "record must carry exactly one of 'delta' or 'action'");

    if (delta != j.end()) {
        if (!delta->is_number()) throw ParseError(line_no, "'delta' is not a number");
        r.payload = delta->get<double>();
        return r;
    }

    if (!action->is_object()) throw ParseError(line_no, "'action' is not an object");
    const auto domain = action->find("domain");
    if (domain == action->end() || !domain->is_string()) throw ParseError(line_no, "action has no domain");
    if (domain->get_ref<const std::string&>() != clustering_domain)
        throw ParseError(line_no, "unsupported action domain '" + domain->get<std::string>() + "'");
    const auto dot = action->find("dot");
    const auto x = action->find("x");
    const auto y = action->find("y");
    if (dot == action->end() || !dot->is_number_unsigned() || x == action->end() || !x->is_number() ||
        y == action->end() || !y->is_number())
        throw ParseError(line_no, "clustering action needs integer 'dot' and numeric 'x', 'y'");
    r.payload = ClusteringMove{dot->get<std::size_t>(), Position{x->get<double>(), y->get<double>()}};
    return r;
}

/// Parses a whole log and checks that seq strictly increases per player.
inline std::vector<EventRecord> parse_event_log(std::istream& in) {
    std::vector<EventRecord> records;
    std::map<std::string, std::uint64_t, std::less<>> last_seq;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        EventRecord r = parse_event(line, line_no);
        const auto it = last_seq.find(r.player);
        if (it != last_seq.end() && r.seq <= it->second)
            throw ParseError(line_no, "seq " + std::to_string(r.seq) + " for player '" + r.player +
                                          "' does not exceed previous seq " + std::to_string(it->second));
        last_seq[r.player] = r.seq;
        records.push_back(std::move(r));
    }
    return records;
}

}  // namespace cqr
