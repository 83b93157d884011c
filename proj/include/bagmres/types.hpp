/// @file types.hpp
/// @brief Shared scalar/vector primitives, error types and the seeded RNG.

#ifndef BAGMRES_TYPES_HPP
#define BAGMRES_TYPES_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace bagmres {

using Vector = std::vector<double>;
using index_t = std::size_t;

/// Error category carried by every exception so the C API can map it
/// onto a stable status code.
enum class ErrorCode {
  invalid_argument,
  dimension_mismatch,
  parse_error,
  not_positive_definite,
  singular_matrix,
  no_convergence,
  unknown_method,
  io_error,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) throw Error(code, what);
}

// ---- small vector kernels ----

inline double dot(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (index_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vector& a) { return std::sqrt(dot(a, a)); }

/// y += alpha * x
inline void axpy(double alpha, const Vector& x, Vector& y) {
  for (index_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline void scale(Vector& x, double alpha) {
  for (double& v : x) v *= alpha;
}

inline Vector subtract(const Vector& a, const Vector& b) {
  Vector r(a.size());
  for (index_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vector zeros(index_t n) { return Vector(n, 0.0); }

inline Vector ones(index_t n) { return Vector(n, 1.0); }

inline bool all_finite(const Vector& x) {
  for (double v : x)
    if (!std::isfinite(v)) return false;
  return true;
}

/// Deterministic RNG used everywhere randomness is needed.  The raw
/// mt19937_64 stream is specified by the standard, and the uniform
/// conversions below avoid the implementation-defined distributions so
/// that seeded runs are bit-identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// uniform double in [0,1)
  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  /// uniform double in [lo,hi)
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  /// uniform integer in [0,n)
  index_t uniform_index(index_t n) {
    return static_cast<index_t>(uniform01() * static_cast<double>(n)) % n;
  }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace bagmres

#endif  // BAGMRES_TYPES_HPP
