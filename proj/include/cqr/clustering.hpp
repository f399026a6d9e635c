#pragma once

// The collaborative clustering game: a shared board of four equally sized
// groups of colored dots that players drag around. Quality rewards tight
// same-color clusters that lie far from the other colors.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cqr/error.hpp"
#include "cqr/random.hpp"

namespace cqr {

class LockError : public Error {
public:
    using Error::Error;
};

class BoundsError : public Error {
public:
    using Error::Error;
};

enum class Color : std::uint8_t { white = 0, light_gray = 1, dark_gray = 2, black = 3 };

inline constexpr std::size_t color_count = 4;

inline const char* color_name(Color c) noexcept {
    static constexpr std::array<const char*, color_count> names{"white", "light_gray", "dark_gray", "black"};
    return names[static_cast<std::size_t>(c)];
}

struct Position {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Position&, const Position&) = default;
};

inline double distance(Position a, Position b) noexcept { return std::hypot(a.x - b.x, a.y - b.y); }

struct Dot {
    std::size_t id = 0;
    Color color = Color::white;
    Position position;

    friend bool operator==(const Dot&, const Dot&) = default;
};

struct DragAction {
    std::string player;
    std::size_t dot = 0;
    Position target;

    friend bool operator==(const DragAction&, const DragAction&) = default;
};

/// Component-wise mean. Throws on an empty list.
inline Position centroid(std::span<const Position> points) {
    if (points.empty()) throw InvalidArgument("centroid of an empty dot list");
    Position c;
    for (const auto& p : points) {
        c.x += p.x;
        c.y += p.y;
    }
    const double n = static_cast<double>(points.size());
    return Position{c.x / n, c.y / n};
}

/// Quality of a partition of positions into color groups:
///
///   - sum_c mean_{d in c} dist(d, centroid(c))
///   + sum_{c1 != c2} mean_{d1 in c1, d2 in c2} dist(d1, d2)
///
/// The second sum runs over ordered pairs, so every unordered pair of
/// colors contributes twice. Every group must be nonempty. Groups are
/// summed in sorted order, so reordering dots within a color gives a
/// bit-identical result.
inline double clustering_quality(std::span<const std::vector<Position>> unsorted) {
    std::vector<std::vector<Position>> groups(unsorted.begin(), unsorted.end());
    for (auto& g : groups)
        std::sort(g.begin(), g.end(), [](Position a, Position b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    double quality = 0.0;
    for (const auto& g : groups) {
        if (g.empty()) throw InvalidArgument("clustering quality: a color has no dots");
        const Position c = centroid(g);
        double spread = 0.0;
        for (const auto& p : g) spread += distance(p, c);
        quality -= spread / static_cast<double>(g.size());
    }
    for (std::size_t i = 0; i < groups.size(); ++i) {
        for (std::size_t j = i + 1; j < groups.size(); ++j) {
            double sum = 0.0;
            for (const auto& a : groups[i])
                for (const auto& b : groups[j]) sum += distance(a, b);
            quality += 2.0 * sum / static_cast<double>(groups[i].size() * groups[j].size());
        }
    }
    return quality;
}

/// Groups dots by the colors actually present and evaluates their quality.
inline double clustering_quality(std::span<const Dot> dots) {
    std::array<std::vector<Position>, color_count> by_color;
    for (const auto& d : dots) by_color[static_cast<std::size_t>(d.color)].push_back(d.position);
    std::vector<std::vector<Position>> groups;
    for (auto& g : by_color)
        if (!g.empty()) groups.push_back(std::move(g));
    if (groups.empty()) throw InvalidArgument("clustering quality of an empty board");
    return clustering_quality(std::span<const std::vector<Position>>(groups));
}

/// Shared game board. Holds the same number of dots of every color, all
/// inside [0, width] x [0, height], and at most one lock holder per dot.
class Board {
public:
    Board(double width, double height, std::vector<Dot> dots) : width_(width), height_(height), dots_(std::move(dots)) {
        if (!(width > 0.0) || !(height > 0.0)) throw InvalidArgument("board bounds must be positive");
        std::array<std::size_t, color_count> counts{};
        for (std::size_t i = 0; i < dots_.size(); ++i) {
            if (!contains(dots_[i].position)) throw BoundsError("dot " + std::to_string(dots_[i].id) + " lies outside the board");
            ++counts[static_cast<std::size_t>(dots_[i].color)];
            for (std::size_t j = 0; j < i; ++j)
                if (dots_[j].id == dots_[i].id) throw InvalidArgument("duplicate dot id " + std::to_string(dots_[i].id));
        }
        for (std::size_t c = 1; c < color_count; ++c)
            if (counts[c] != counts[0]) throw InvalidArgument("board colors must have equal dot counts");
    }

    /// Uniform random initial positions, ids 0..4n-1 grouped by color.
    static Board random(std::size_t dots_per_color, double width, double height, Rng& rng) {
        std::vector<Dot> dots;
        dots.reserve(dots_per_color * color_count);
        for (std::size_t c = 0; c < color_count; ++c)
            for (std::size_t i = 0; i < dots_per_color; ++i)
                dots.push_back(Dot{dots.size(), static_cast<Color>(c),
                                   Position{uniform_real(rng, 0.0, width), uniform_real(rng, 0.0, height)}});
        return Board(width, height, std::move(dots));
    }

    double width() const noexcept { return width_; }
    double height() const noexcept { return height_; }
    const std::vector<Dot>& dots() const noexcept { return dots_; }

    bool contains(Position p) const noexcept { return p.x >= 0.0 && p.x <= width_ && p.y >= 0.0 && p.y <= height_; }

    Position clamp(Position p) const noexcept {
        return Position{std::min(std::max(p.x, 0.0), width_), std::min(std::max(p.y, 0.0), height_)};
    }

    const Dot* find(std::size_t id) const noexcept {
        for (const auto& d : dots_)
            if (d.id == id) return &d;
        return nullptr;
    }

    std::optional<std::string> lock_holder(std::size_t id) const {
        const auto it = locks_.find(id);
        if (it == locks_.end()) return std::nullopt;
        return it->second;
    }

    /// Starts a drag. Throws LockError when another player holds the dot.
    void acquire(std::size_t id, const std::string& player) {
        require_dot(id);
        const auto it = locks_.find(id);
        if (it != locks_.end() && it->second != player)
            throw LockError("dot " + std::to_string(id) + " is being dragged by " + it->second);
        locks_[id] = player;
    }

    /// Drops a dot. Releasing a dot the player does not hold is a no-op.
    void release(std::size_t id, const std::string& player) {
        const auto it = locks_.find(id);
        if (it != locks_.end() && it->second == player) locks_.erase(it);
    }

    double quality() const { return clustering_quality(std::span<const Dot>(dots_)); }

    /// Positions of one color.
    std::vector<Position> positions(Color c) const {
        std::vector<Position> out;
        for (const auto& d : dots_)
            if (d.color == c) out.push_back(d.position);
        return out;
    }

    /// Copy with one dot moved; no lock or bounds checks.
    Board with_position(std::size_t id, Position p) const {
        Board b = *this;
        for (auto& d : b.dots_)
            if (d.id == id) d.position = p;
        return b;
    }

private:
    void require_dot(std::size_t id) const {
        if (!find(id)) throw InvalidArgument("unknown dot " + std::to_string(id));
    }

    double width_;
    double height_;
    std::vector<Dot> dots_;
    std::map<std::size_t, std::string> locks_;
};

/// Drag-and-drop as one atomic step: acquire the lock, move, release.
inline Board apply_drag(const Board& board, const DragAction& action) {
    if (!board.find(action.dot)) throw InvalidArgument("unknown dot " + std::to_string(action.dot));
    if (!board.contains(action.target))
        throw BoundsError("target (" + std::to_string(action.target.x) + ", " + std::to_string(action.target.y) +
                          ") lies outside the board");
    Board next = board;
    next.acquire(action.dot, action.player);
    next = next.with_position(action.dot, action.target);
    next.release(action.dot, action.player);
    return next;
}

}  // namespace cqr
