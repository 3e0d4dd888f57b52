#include "lclogit/common.hpp"

#include <cstdio>
#include <cstdlib>

namespace lclogit {

namespace logging {

namespace {
Level g_level = Level::error;
}

void set_level(Level level) { g_level = level; }
Level level() { return g_level; }

Level level_from_env() {
  const char* env = std::getenv("LCLOGIT_LOG");
  if (env == nullptr) return Level::error;
  const std::string value(env);
  if (value == "debug") return Level::debug;
  if (value == "info") return Level::info;
  return Level::error;
}

void error(const std::string& msg) {
  std::fprintf(stderr, "[error] %s\n", msg.c_str());
}

void info(const std::string& msg) {
  if (g_level >= Level::info) std::fprintf(stderr, "[info] %s\n", msg.c_str());
}

void debug(const std::string& msg) {
  if (g_level >= Level::debug) std::fprintf(stderr, "[debug] %s\n", msg.c_str());
}

}  // namespace logging

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 1));
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::string(buf);
}

}  // namespace lclogit
