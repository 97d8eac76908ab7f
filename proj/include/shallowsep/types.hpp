#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace shallowsep {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;
using Dist = std::int64_t;

inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();
inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();
inline constexpr Dist kInfDist = std::numeric_limits<Dist>::max() / 4;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed graph input; carries the offending 1-based line number.
struct ParseError : Error {
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line(line) {}
  std::size_t line;
};

// Parameters outside the regime an algorithm supports.
struct RegimeError : Error {
  using Error::Error;
};

// An internal contract was broken. Always a bug or a misconfigured budget.
struct InvariantViolation : Error {
  using Error::Error;
};

#define SHALLOWSEP_CHECK(cond, msg)                                        \
  do {                                                                     \
    if (!(cond)) throw ::shallowsep::InvariantViolation(std::string(msg)); \
  } while (0)

// Set membership over [0, n) with O(1) clear via generation stamps.
class StampSet {
 public:
  StampSet() = default;
  explicit StampSet(std::size_t n) : stamp_(n, 0) {}

  void resize(std::size_t n) { stamp_.assign(n, 0), current_ = 1; }
  std::size_t capacity() const { return stamp_.size(); }

  void clear() {
    if (++current_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      current_ = 1;
    }
  }
  bool contains(std::size_t v) const { return stamp_[v] == current_; }
  // Returns true if v was newly inserted.
  bool insert(std::size_t v) {
    if (stamp_[v] == current_) return false;
    stamp_[v] = current_;
    return true;
  }
  void erase(std::size_t v) { stamp_[v] = 0; }

 private:
  std::vector<std::uint32_t> stamp_;
  std::uint32_t current_ = 1;
};

// Stable 64-bit generator wrapper. Draws are defined here rather than through
// <random> distributions so results do not depend on the standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9E3779B97F4A7C15ull) {}

  std::uint64_t next() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  // Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do x = next();
    while (x >= limit);
    return x % bound;
  }
  // Uniform in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace shallowsep
