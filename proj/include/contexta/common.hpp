#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace contexta {

// Input that fails validation (bad prime, malformed cover, non-isotropic
// context, out-of-range index...).  CLI maps this to exit code 2.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Request exceeds a hard capacity guard.  CLI maps this to exit code 3.
struct capacity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical-precision failure: a value that must be exactly representable
// (a probability entering the exact LP, say) is not close enough to any
// admissible rational.  CLI maps this to exit code 4.
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Tolerances used across the library.  Matrix identities (unitarity, the
// phase-function law, point-operator orthonormality) are checked entrywise
// against kMatTol; probabilities and Wigner values against kProbTol.
inline constexpr double kMatTol = 1e-10;
inline constexpr double kProbTol = 1e-9;

namespace detail {

inline std::string trimmed(const std::string& s) {
  const std::size_t a = s.find_first_not_of(" \t");
  const std::size_t b = s.find_last_not_of(" \t");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

// Strict integer/real parsing: the whole (trimmed) token must be consumed.
inline long long parse_int_arg(const std::string& raw, const std::string& what) {
  const std::string s = trimmed(raw);
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw input_error("");
    return v;
  } catch (const std::exception&) {
    throw input_error("cannot parse " + what + " from '" + raw + "'");
  }
}

inline double parse_real_arg(const std::string& raw, const std::string& what) {
  const std::string s = trimmed(raw);
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw input_error("");
    return v;
  } catch (const std::exception&) {
    throw input_error("cannot parse " + what + " from '" + raw + "'");
  }
}

}  // namespace detail

inline std::uint64_t fnv1a(const void* data, std::size_t len,
                           std::uint64_t seed = 14695981039346656037ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace contexta
