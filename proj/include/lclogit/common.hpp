#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lclogit {

// User-facing error (bad input, bad config, infeasible request).
// The CLI maps it to exit code 1.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

namespace logging {

enum class Level { error = 0, info = 1, debug = 2 };

void set_level(Level level);
Level level();

// Reads LCLOGIT_LOG ({error, info, debug}); unknown values fall back to error.
Level level_from_env();

void error(const std::string& msg);
void info(const std::string& msg);
void debug(const std::string& msg);

}  // namespace logging

// Stateless 64-bit mixer. Used to derive independent per-entity substreams
// from one top-level seed so parallel order cannot change any draw.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);

// Canonical numeric formatting for CSV and report output ("%.12g").
std::string format_double(double v);

}  // namespace lclogit
