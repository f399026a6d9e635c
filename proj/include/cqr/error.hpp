#pragma once

#include <stdexcept>
#include <string>

namespace cqr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid construction arguments (bad parameters, malformed config).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A delta arrived with a sequence number not greater than the last one
/// recorded for the same player.
class OrderError : public Error {
public:
    OrderError(std::string player, unsigned long long seq, unsigned long long last)
        : Error("out-of-order delta for player '" + player + "': seq " + std::to_string(seq) +
                " does not exceed last recorded seq " + std::to_string(last)),
          player_(std::move(player)),
          seq_(seq) {}

    const std::string& player() const noexcept { return player_; }
    unsigned long long seq() const noexcept { return seq_; }

private:
    std::string player_;
    unsigned long long seq_;
};

/// Lookup of a parameterization name the engine was not configured with.
class UnknownParameterization : public Error {
public:
    explicit UnknownParameterization(const std::string& name)
        : Error("unknown parameterization '" + name + "'") {}
};

/// Malformed input line in an event log.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace cqr
