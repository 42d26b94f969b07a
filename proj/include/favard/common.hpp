#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace favard {

using Complex = std::complex<double>;

inline constexpr const char* kVersion = "0.1.0";

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Requested work exceeds a configured cap (generation depth, memory, panel budget).
class resource_error : public std::runtime_error {
  public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent configuration (unknown key, bad type, bad value).
class config_error : public std::runtime_error {
  public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// A checked invariant failed at runtime.
class invariant_violation : public std::runtime_error {
  public:
    explicit invariant_violation(const std::string& what) : std::runtime_error(what) {}
};

// A numeric procedure could not reach its contract (unstable winding count,
// Newton stall, truncation tail too large).
class numeric_error : public std::runtime_error {
  public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

inline double int_pow(double base, int exp) {
    double r = 1.0;
    double b = base;
    int e = exp < 0 ? -exp : exp;
    while (e != 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return exp < 0 ? 1.0 / r : r;
}

// 3^k as an exact double for |k| small enough that 3^|k| is integer-representable.
inline double pow3(int k) { return int_pow(3.0, k); }

}  // namespace favard
