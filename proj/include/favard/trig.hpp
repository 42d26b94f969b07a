#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "favard/common.hpp"

namespace favard {

// Normalized three-term exponential symbol (1 + e^{-itz} + e^{-iz})/3.
// For real t and x it has modulus at most 1 and phi(t, 0) = 1.
inline Complex phi(Complex t, Complex z) {
    const Complex mi(0.0, -1.0);
    return (1.0 + std::exp(mi * t * z) + std::exp(mi * z)) / 3.0;
}

// Unnormalized symbol 1 + e^{-itz} + e^{-iz} (= 3 phi) and its partials.
// The zero machinery works with this scaling.
inline Complex trinomial(Complex t, Complex z) {
    const Complex mi(0.0, -1.0);
    return 1.0 + std::exp(mi * t * z) + std::exp(mi * z);
}

inline Complex trinomial_dz(Complex t, Complex z) {
    const Complex mi(0.0, -1.0);
    return mi * t * std::exp(mi * t * z) + mi * std::exp(mi * z);
}

inline Complex trinomial_dt(Complex t, Complex z) {
    const Complex mi(0.0, -1.0);
    return mi * z * std::exp(mi * t * z);
}

inline Complex trinomial_dzz(Complex t, Complex z) {
    const Complex mi(0.0, -1.0);
    return -t * t * std::exp(mi * t * z) - std::exp(mi * z);
}

inline Complex trinomial_dzt(Complex t, Complex z) {
    const Complex mi(0.0, -1.0);
    return (mi - t * z) * std::exp(mi * t * z);
}

// x -> prod_{k=k_lo}^{k_hi} phi(t, 3^{-k} x); empty when k_lo > k_hi.
struct TrigProduct {
    Complex t;
    int k_lo = 1;
    int k_hi = 0;

    int factor_count() const { return k_hi >= k_lo ? k_hi - k_lo + 1 : 0; }
};

inline Complex product_eval(const TrigProduct& p, Complex x) {
    Complex acc(1.0, 0.0);
    for (int k = p.k_lo; k <= p.k_hi; ++k) acc *= phi(p.t, x * pow3(-k));
    return acc;
}

// Frequency-band split of the full product prod_{k=1}^{n}. Index ranges:
//   p1       k in [1, n-m]            medium + high band
//   p2       k in [n-m+1, n]          low band
//   p1_sharp k in [1, n-m-ell-1]      high band
//   p1_flat  k in [n-m-ell, n-m]      medium band
// so full = p1 * p2 and p1 = p1_sharp * p1_flat hold by construction.
struct ProductSplit {
    TrigProduct full, p1, p2, p1_sharp, p1_flat;
};

inline ProductSplit product_split(Complex t, int n, int m, int ell) {
    if (!(m >= 0 && ell >= 0 && m + ell + 1 <= n))
        throw std::invalid_argument("product_split: need 1 <= m + ell + 1 <= n");
    ProductSplit s;
    s.full = {t, 1, n};
    s.p1 = {t, 1, n - m};
    s.p2 = {t, n - m + 1, n};
    s.p1_sharp = {t, 1, n - m - ell - 1};
    s.p1_flat = {t, n - m - ell, n - m};
    return s;
}

// Nonnegative trigonometric factor (7 + 2 cos x)/9, ranging over [5/9, 1].
inline double riesz_factor(double x) { return (7.0 + 2.0 * std::cos(x)) / 9.0; }

// x -> prod_{k=k_lo}^{k_hi} riesz_factor(3^{-k} x); periodic with period
// 2*pi*3^{k_hi} (lacunary frequencies).
struct RieszProduct {
    int k_lo = 1;
    int k_hi = 0;

    int factor_count() const { return k_hi >= k_lo ? k_hi - k_lo + 1 : 0; }
    double period() const { return 2.0 * kPi * pow3(k_hi); }
};

inline double riesz_eval(const RieszProduct& r, double x) {
    double acc = 1.0;
    for (int k = r.k_lo; k <= r.k_hi; ++k) acc *= riesz_factor(x * pow3(-k));
    return acc;
}

// Per-unit-length mean over one full period. Lacunarity makes every factor
// average independently, so the exact value is (7/9)^{factor_count}; this
// computes it by quadrature for use as a cross-check.
inline double riesz_period_mean(const RieszProduct& r, int samples_per_finest_period = 256) {
    const double period = r.period();
    // Composite Simpson; the finest oscillation scale is 2*pi*3^{k_lo}.
    std::int64_t repeats = static_cast<std::int64_t>(int_pow(3.0, std::min(r.k_hi - r.k_lo, 20)));
    std::int64_t panels = static_cast<std::int64_t>(samples_per_finest_period) * repeats;
    if (panels < 2) panels = 2;
    if (panels % 2) ++panels;
    const double h = period / static_cast<double>(panels);
    double sum = riesz_eval(r, 0.0) + riesz_eval(r, period);
    for (std::int64_t i = 1; i < panels; ++i)
        sum += riesz_eval(r, static_cast<double>(i) * h) * (i % 2 ? 4.0 : 2.0);
    return sum * h / (3.0 * period);
}

inline double riesz_period_mean_exact(const RieszProduct& r) {
    return int_pow(7.0 / 9.0, r.factor_count());
}

// Single-factor domination |phi_t(x)|^2 <= min(r(x), r(tx)) with slack.
inline bool riesz_dominates(double t, double x, double slack = 1e-12) {
    double lhs = std::norm(phi(Complex(t, 0.0), Complex(x, 0.0)));
    return lhs <= std::min(riesz_factor(x), riesz_factor(t * x)) + slack;
}

// Product form: |p1_flat(x)|^2 <= min(R(x), R(tx)) for the Riesz product over
// the same factor range.
inline bool riesz_dominates_product(double t, const TrigProduct& flat, double x,
                                    double slack = 1e-12) {
    RieszProduct r{flat.k_lo, flat.k_hi};
    double lhs = std::norm(product_eval(flat, Complex(x, 0.0)));
    return lhs <= std::min(riesz_eval(r, x), riesz_eval(r, t * x)) + slack;
}

}  // namespace favard
