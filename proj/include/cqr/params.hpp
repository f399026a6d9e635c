#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "cqr/error.hpp"

namespace cqr {

/// A positive count that may also be unbounded (the window T and the
/// sign-run length k).
class Limit {
public:
    static constexpr Limit unbounded() noexcept { return Limit{}; }

    static Limit of(std::size_t n) {
        if (n == 0) throw InvalidArgument("limit must be a positive integer");
        return Limit{n};
    }

    constexpr bool is_unbounded() const noexcept { return !n_.has_value(); }
    constexpr bool is_finite() const noexcept { return n_.has_value(); }

    /// Only meaningful for finite limits.
    constexpr std::size_t value() const noexcept { return n_.value_or(std::numeric_limits<std::size_t>::max()); }

    friend constexpr bool operator==(const Limit&, const Limit&) = default;

    /// "inf" for unbounded, the decimal count otherwise.
    std::string to_string() const { return is_unbounded() ? "inf" : std::to_string(*n_); }

    /// Accepts "inf" / "∞" or a positive integer.
    static Limit parse(const std::string& text) {
        if (text == "inf" || text == "\xE2\x88\x9E") return unbounded();
        std::size_t pos = 0;
        unsigned long long n = 0;
        try {
            n = std::stoull(text, &pos);
        } catch (const std::exception&) {
            throw InvalidArgument("cannot parse limit '" + text + "'");
        }
        if (pos != text.size() || text.front() == '-') throw InvalidArgument("cannot parse limit '" + text + "'");
        return of(static_cast<std::size_t>(n));
    }

private:
    constexpr Limit() = default;
    constexpr explicit Limit(std::size_t n) : n_(n) {}

    std::optional<std::size_t> n_;
};

/// One signed change in community quality caused by one player action.
struct Delta {
    double value = 0.0;
    std::uint64_t seq = 0;

    friend bool operator==(const Delta&, const Delta&) = default;
};

/// Sign class of a delta value. Zero is its own class and breaks sign runs.
enum class Sign : std::uint8_t { positive = 0, negative = 1, zero = 2 };

inline Sign sign_of(double v) noexcept {
    if (v > 0.0) return Sign::positive;
    if (v < 0.0) return Sign::negative;
    return Sign::zero;
}

inline std::string format_number(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

/// The (T, x, k) triple of a rating expression: window length, magnitude
/// threshold and sign-run length.
class CqrParams {
public:
    /// Validates the triple. An unbounded k with a finite T is normalized
    /// to k = T. An empty name is replaced by "(T,x,k)".
    static CqrParams make(Limit window, double threshold, Limit run_length, std::string name = {}) {
        if (!std::isfinite(threshold) || threshold < 0.0)
            throw InvalidArgument("magnitude threshold must be a finite nonnegative number");
        if (window.is_finite() && run_length.is_unbounded()) run_length = window;
        if (window.is_finite() && run_length.value() > window.value())
            throw InvalidArgument("run length k=" + run_length.to_string() + " exceeds window T=" + window.to_string());
        CqrParams p;
        p.window_ = window;
        p.threshold_ = threshold;
        p.run_length_ = run_length;
        p.name_ = name.empty() ? default_name(window, threshold, run_length) : std::move(name);
        return p;
    }

    static CqrParams make(std::size_t window, double threshold, std::size_t run_length, std::string name = {}) {
        return make(Limit::of(window), threshold, Limit::of(run_length), std::move(name));
    }

    /// (∞, 0, ∞): the plain total.
    static CqrParams total(std::string name = {}) {
        return make(Limit::unbounded(), 0.0, Limit::unbounded(), std::move(name));
    }

    static std::string default_name(Limit window, double threshold, Limit run_length) {
        return "(" + window.to_string() + "," + format_number(threshold) + "," + run_length.to_string() + ")";
    }

    Limit window() const noexcept { return window_; }
    double threshold() const noexcept { return threshold_; }
    Limit run_length() const noexcept { return run_length_; }
    const std::string& name() const noexcept { return name_; }

    /// Human rendering with ∞ for unbounded limits.
    std::string label() const {
        auto r = [](Limit l) { return l.is_unbounded() ? std::string("\xE2\x88\x9E") : l.to_string(); };
        return "(" + r(window_) + "," + format_number(threshold_) + "," + r(run_length_) + ")";
    }

    friend bool operator==(const CqrParams&, const CqrParams&) = default;

private:
    CqrParams() = default;

    Limit window_ = Limit::unbounded();
    double threshold_ = 0.0;
    Limit run_length_ = Limit::unbounded();
    std::string name_;
};

inline std::ostream& operator<<(std::ostream& os, const CqrParams& p) { return os << p.name(); }

}  // namespace cqr
