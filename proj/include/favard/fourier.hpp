#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "favard/common.hpp"
#include "favard/projection.hpp"
#include "favard/quadrature.hpp"
#include "favard/similarity.hpp"
#include "favard/trig.hpp"

namespace favard {

// Fourier transform convention: fhat(x) = integral f(s) e^{-isx} ds, with the
// Plancherel factor 1/(2 pi) on the frequency side.

// Transform of the projected generation-n counting measure: the self-similar
// product prod_{k=1}^{n} (1/M) sum_j e^{-i g_j ratio^{k-1} x}, where g_j are
// the projections of the translation centers.
inline Complex projected_measure_transform(const SimilaritySystem& sys, double theta, int n,
                                           double x) {
    std::vector<double> freq(sys.map_count());
    for (std::size_t j = 0; j < sys.map_count(); ++j) freq[j] = project(sys.centers[j], theta);
    Complex acc(1.0, 0.0);
    double scale = 1.0;
    for (int k = 1; k <= n; ++k) {
        Complex factor(0.0, 0.0);
        for (std::size_t j = 0; j < sys.map_count(); ++j)
            factor += std::exp(Complex(0.0, -freq[j] * scale * x));
        acc *= factor / static_cast<double>(sys.map_count());
        scale *= sys.ratio;
    }
    return acc;
}

// sinc-type transform of the indicator of [-r, r].
inline double indicator_transform(double r, double x) {
    if (std::abs(x) < 1e-8) {
        double u = r * x;
        return 2.0 * r * (1.0 - u * u / 6.0);
    }
    return 2.0 * std::sin(r * x) / x;
}

struct PlancherelReport {
    double lhs = 0.0;          // exact squared L2 norm of the step function
    double rhs = 0.0;          // truncated Fourier-side integral
    double relative_gap = 0.0; // |lhs - rhs| / lhs
    double x_max = 0.0;
    double tail_bound = 0.0;   // crude bound on the discarded tail
    PanelBudget budget;
};

// Compares the exact L2 energy of the multiplicity function with the
// truncated frequency-side integral (1/2pi) int |M^n chi_hat nu_hat|^2 dx.
// x_max is widened until the crude tail bound fits inside tail_fraction of
// the requested tolerance; failure to fit raises numeric_error.
inline PlancherelReport plancherel_check(const SimilaritySystem& sys, int n, double theta,
                                         double x_max = 0.0, double tolerance = 0.02) {
    PlancherelReport rep;
    const DiscCloud cloud = cells(sys, n);
    const StepFunction f = multiplicity(cloud, theta);
    rep.lhs = f.l2_squared();
    const double count = std::pow(static_cast<double>(sys.map_count()), n);
    const double r = cloud.radius();

    // |chi_hat| <= 2/x and |nu_hat| <= 1, so the two-sided tail beyond X is
    // at most (1/2pi) * 2 * count^2 * 4 / X.
    auto tail_bound_at = [&](double x) { return 4.0 * count * count / (kPi * x); };
    if (x_max <= 0.0) x_max = 1e4;
    while (tail_bound_at(x_max) > 0.25 * tolerance * rep.lhs && x_max < 1e9) x_max *= 2.0;
    if (tail_bound_at(x_max) > 0.25 * tolerance * rep.lhs)
        throw numeric_error("plancherel_check: truncation tail bound will not fit tolerance");
    rep.x_max = x_max;
    rep.tail_bound = tail_bound_at(x_max);

    // Shortest local period of |f_hat|^2: total frequency spread of f is the
    // hull width, doubled by squaring.
    const double hull = f.empty() ? 2.0 : (f.hull_hi() - f.hull_lo());
    const double max_freq = 2.0 * hull;
    const double panel_w = (2.0 * kPi / max_freq) / 8.0;

    auto integrand = [&](double x) {
        Complex fhat = count * indicator_transform(r, x) *
                       projected_measure_transform(sys, theta, n, x);
        return std::norm(fhat);
    };
    // Even integrand: integrate [0, x_max] and double.
    rep.rhs = 2.0 * integrate_panels(integrand, 0.0, x_max, panel_w, &rep.budget) / (2.0 * kPi);
    rep.relative_gap = std::abs(rep.lhs - rep.rhs) / rep.lhs;
    return rep;
}

struct P1EnergyReport {
    double energy = 0.0;
    double ratio_to_3m = 0.0;
    PanelBudget budget;
};

// Quadrature of |P1|^2 over I = [3^{n-m}, 3^n], reported against 3^m.
inline P1EnergyReport p1_energy(double t, int n, int m, PanelBudget* budget = nullptr) {
    if (!(m >= 0 && m <= n)) throw std::invalid_argument("p1_energy: need 0 <= m <= n");
    P1EnergyReport rep;
    TrigProduct p1{Complex(t, 0.0), 1, n - m};
    // Frequencies of P1 lie in [-(1+t)/2, 0]; squaring doubles the spread.
    const double max_freq = (1.0 + t) + 1e-9;
    const double panel_w = (2.0 * kPi / max_freq) / 8.0;
    auto integrand = [&](double x) { return std::norm(product_eval(p1, Complex(x, 0.0))); };
    rep.energy = integrate_panels(integrand, pow3(n - m), pow3(n), panel_w, &rep.budget);
    if (budget) *budget = rep.budget;
    rep.ratio_to_3m = rep.energy / pow3(m);
    return rep;
}

}  // namespace favard
