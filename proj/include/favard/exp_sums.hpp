#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "favard/common.hpp"

namespace favard {

// Exponential polynomial data: unit-modulus coefficients attached to real
// frequencies.
struct FrequencySet {
    std::vector<double> frequencies;
    std::vector<Complex> coefficients;

    std::size_t size() const { return frequencies.size(); }

    void validate() const {
        if (frequencies.empty()) throw std::domain_error("FrequencySet: empty set");
        if (coefficients.size() != frequencies.size())
            throw std::invalid_argument("FrequencySet: coefficient count mismatch");
    }
};

// int_0^1 e^{i d y} dy.
inline Complex unit_interval_kernel(double d) {
    if (std::abs(d) < 1e-9) return Complex(1.0 - d * d / 6.0, d / 2.0);
    return (std::exp(Complex(0.0, d)) - 1.0) / Complex(0.0, d);
}

// Closed form of int_0^1 |sum c_j e^{i a_j y}|^2 dy.
inline double exp_sum_energy(const FrequencySet& fs) {
    fs.validate();
    const std::size_t k = fs.size();
    double total = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        total += std::norm(fs.coefficients[j]);
        for (std::size_t l = j + 1; l < k; ++l) {
            Complex term = fs.coefficients[j] * std::conj(fs.coefficients[l]) *
                           unit_interval_kernel(fs.frequencies[j] - fs.frequencies[l]);
            total += 2.0 * std::real(term);
        }
    }
    return total;
}

// Exact overlap energy int (sum chi_{[a_j - w, a_j + w]})^2 dx
// = sum_{j,l} max(0, 2w - |a_j - a_l|).
inline double overlap_energy(const FrequencySet& fs, double half_width = 1.0) {
    fs.validate();
    std::vector<double> a = fs.frequencies;
    std::sort(a.begin(), a.end());
    double total = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        total += 2.0 * half_width;
        for (std::size_t l = j + 1; l < a.size(); ++l) {
            double ov = 2.0 * half_width - (a[l] - a[j]);
            if (ov <= 0.0) break;  // sorted: later gaps only grow
            total += 2.0 * ov;
        }
    }
    return total;
}

inline double cetsq_ratio(const FrequencySet& fs) {
    return exp_sum_energy(fs) / overlap_energy(fs);
}

// Largest number of frequencies inside any closed unit interval.
inline std::size_t max_unit_interval_count(const FrequencySet& fs) {
    fs.validate();
    std::vector<double> a = fs.frequencies;
    std::sort(a.begin(), a.end());
    std::size_t best = 0, lo = 0;
    for (std::size_t hi = 0; hi < a.size(); ++hi) {
        while (a[hi] - a[lo] > 1.0) ++lo;
        best = std::max(best, hi - lo + 1);
    }
    return best;
}

// Ratio for the weaker cardinality-based bound energy <= C k S0.
inline double cet_ratio(const FrequencySet& fs) {
    double denom = static_cast<double>(fs.size()) *
                   static_cast<double>(max_unit_interval_count(fs));
    return exp_sum_energy(fs) / denom;
}

}  // namespace favard
