#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "cqr/engine.hpp"

namespace cqr {

/// Threshold rule over a ranking: either an absolute CQR floor or the
/// bottom fraction of the distribution.
struct AlertRule {
    enum class Kind { absolute_below, percentile_bottom };

    Kind kind = Kind::absolute_below;
    double value = 0.0;  // threshold, or fraction in (0, 1)
    std::string parameterization;

    static AlertRule absolute_below(double threshold, std::string parameterization) {
        if (std::isnan(threshold)) throw InvalidArgument("alert threshold is NaN");
        return AlertRule{Kind::absolute_below, threshold, std::move(parameterization)};
    }

    static AlertRule percentile_bottom(double fraction, std::string parameterization) {
        if (!(fraction > 0.0 && fraction < 1.0))
            throw InvalidArgument("percentile fraction must lie strictly between 0 and 1");
        return AlertRule{Kind::percentile_bottom, fraction, std::move(parameterization)};
    }

    std::string describe() const {
        if (kind == Kind::absolute_below) return "cqr < " + format_number(value) + " under " + parameterization;
        return "bottom " + format_number(value * 100.0) + "% under " + parameterization;
    }
};

struct Alert {
    std::string player;
    std::size_t rule = 0;  // index into the rule list
    double cqr = 0.0;
};

/// Applies every rule to one ranking. The parameterization field of the
/// rules is not consulted here; see check_engine_alerts.
inline std::vector<Alert> check_alerts(const std::vector<RankingEntry>& ranking, const std::vector<AlertRule>& rules) {
    std::vector<Alert> out;
    for (std::size_t r = 0; r < rules.size(); ++r) {
        const AlertRule& rule = rules[r];
        if (rule.kind == AlertRule::Kind::absolute_below) {
            for (const auto& e : ranking)
                if (e.cqr < rule.value) out.push_back(Alert{e.player, r, e.cqr});
        } else {
            // 1e-9 absorbs products such as 0.29 * 100 = 28.999999999999996.
            const auto n = static_cast<std::size_t>(std::floor(rule.value * static_cast<double>(ranking.size()) + 1e-9));
            for (std::size_t i = ranking.size() - std::min(n, ranking.size()); i < ranking.size(); ++i)
                out.push_back(Alert{ranking[i].player, r, ranking[i].cqr});
        }
    }
    return out;
}

/// Evaluates each rule against the engine ranking of its parameterization.
inline std::vector<Alert> check_engine_alerts(const Engine& engine, const std::vector<AlertRule>& rules) {
    std::vector<Alert> out;
    for (std::size_t r = 0; r < rules.size(); ++r) {
        auto fired = check_alerts(engine.ranking(rules[r].parameterization), {rules[r]});
        for (auto& a : fired) {
            a.rule = r;
            out.push_back(std::move(a));
        }
    }
    return out;
}

}  // namespace cqr
