#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "favard/common.hpp"
#include "favard/trig.hpp"

namespace favard {

// Axis-aligned rectangle in the complex plane.
struct Rect {
    double re_lo = 0.0, re_hi = 0.0;
    double im_lo = 0.0, im_hi = 0.0;

    double width() const { return re_hi - re_lo; }
    double height() const { return im_hi - im_lo; }
    double diameter() const { return std::hypot(width(), height()); }
    Complex center() const { return Complex(0.5 * (re_lo + re_hi), 0.5 * (im_lo + im_hi)); }

    bool contains(Complex z, double slack = 0.0) const {
        return z.real() >= re_lo - slack && z.real() <= re_hi + slack &&
               z.imag() >= im_lo - slack && z.imag() <= im_hi + slack;
    }

    Rect inflated(double eps) const {
        return Rect{re_lo - eps, re_hi + eps, im_lo - eps, im_hi + eps};
    }
};

// A contour sample fell on (or extremely close to) a zero; callers inflate
// the contour and retry.
class near_boundary_zero : public numeric_error {
  public:
    near_boundary_zero() : numeric_error("winding: contour passes near a zero") {}
};

namespace detail {

inline double arg_delta(Complex v0, Complex v1) { return std::arg(v1 / v0); }

// Accumulated argument change of f along the straight segment [z0, z1],
// refined until consecutive phase steps are unambiguous.
template <typename F>
double segment_phase(const F& f, Complex z0, Complex z1, Complex v0, Complex v1, int depth,
                     double mag_floor) {
    if (std::abs(v0) < mag_floor || std::abs(v1) < mag_floor) throw near_boundary_zero{};
    Complex zm = 0.5 * (z0 + z1);
    Complex vm = f(zm);
    if (std::abs(vm) < mag_floor) throw near_boundary_zero{};
    double d0 = arg_delta(v0, vm);
    double d1 = arg_delta(vm, v1);
    if (std::abs(d0) < 0.8 && std::abs(d1) < 0.8 && depth >= 2) return d0 + d1;
    if (depth > 42) throw numeric_error("winding: segment refinement exhausted");
    return segment_phase(f, z0, zm, v0, vm, depth + 1, mag_floor) +
           segment_phase(f, zm, z1, vm, v1, depth + 1, mag_floor);
}

}  // namespace detail

// Number of zeros (with multiplicity) of f inside the rectangle, by the
// argument principle along the boundary. The total phase must snap to an
// integer multiple of 2 pi within 0.25 turns.
template <typename F>
int winding_number(const F& f, const Rect& r, double mag_floor = 1e-11) {
    const Complex c0(r.re_lo, r.im_lo), c1(r.re_hi, r.im_lo), c2(r.re_hi, r.im_hi),
        c3(r.re_lo, r.im_hi);
    const Complex v0 = f(c0), v1 = f(c1), v2 = f(c2), v3 = f(c3);
    double total = detail::segment_phase(f, c0, c1, v0, v1, 0, mag_floor) +
                   detail::segment_phase(f, c1, c2, v1, v2, 0, mag_floor) +
                   detail::segment_phase(f, c2, c3, v2, v3, 0, mag_floor) +
                   detail::segment_phase(f, c3, c0, v3, v0, 0, mag_floor);
    double turns = total / (2.0 * kPi);
    double snapped = std::round(turns);
    if (std::abs(turns - snapped) > 0.25)
        throw numeric_error("winding: phase total " + std::to_string(turns) +
                            " does not snap to an integer");
    return static_cast<int>(snapped);
}

template <typename F>
int winding_number_circle(const F& f, Complex center, double radius, double mag_floor = 1e-11) {
    auto on_circle = [&](double a) {
        return center + radius * Complex(std::cos(a), std::sin(a));
    };
    // Polygonal contour with adaptive per-arc refinement; 64 base arcs keep
    // each chord's phase step small for smooth integrands.
    const int base = 64;
    double total = 0.0;
    Complex zprev = on_circle(0.0);
    Complex vprev = f(zprev);
    for (int i = 1; i <= base; ++i) {
        double a = 2.0 * kPi * static_cast<double>(i) / base;
        Complex z = on_circle(a);
        Complex v = f(z);
        total += detail::segment_phase(f, zprev, z, vprev, v, 0, mag_floor);
        zprev = z;
        vprev = v;
    }
    double turns = total / (2.0 * kPi);
    double snapped = std::round(turns);
    if (std::abs(turns - snapped) > 0.25)
        throw numeric_error("winding (circle): phase total does not snap to an integer");
    return static_cast<int>(snapped);
}

struct ZeroFindOptions {
    double residual_tol = 1e-10;
    double isolate_diameter = 1e-4;  // box size at which Newton takes over
    double boundary_inflate = 1e-6;
    int max_inflate_retries = 4;
    double dedupe_distance = 1e-7;
    int newton_max_iter = 60;
    double strip_half_height = 2.4;  // search rects must fit inside |Im z| bands of height 2H
};

namespace detail {

inline std::optional<Complex> trinomial_newton(Complex t, Complex z0, double tol, int max_iter) {
    Complex z = z0;
    for (int i = 0; i < max_iter; ++i) {
        Complex v = trinomial(t, z);
        if (std::abs(v) < tol) return z;
        Complex d = trinomial_dz(t, z);
        if (std::abs(d) < 1e-14) return std::nullopt;
        z -= v / d;
        if (std::abs(z.imag()) > 50.0) return std::nullopt;
    }
    return std::abs(trinomial(t, z)) < tol ? std::optional<Complex>(z) : std::nullopt;
}

template <typename F>
int winding_with_inflation(const F& f, Rect r, const ZeroFindOptions& opt, Rect* used) {
    double eps = opt.boundary_inflate;
    for (int attempt = 0;; ++attempt) {
        try {
            int w = winding_number(f, r);
            if (used) *used = r;
            return w;
        } catch (const near_boundary_zero&) {
            if (attempt >= opt.max_inflate_retries)
                throw numeric_error("winding: persistent near-boundary zero");
            r = r.inflated(eps);
            eps *= 3.0;
        }
    }
}

}  // namespace detail

// All zeros of the trinomial 1 + e^{-itz} + e^{-iz} inside the rectangle, by
// quadtree subdivision with boundary winding counts and Newton refinement.
// Boxes whose boundary passes near a zero are inflated and retried, so zeros
// on shared edges may be seen twice; duplicates are removed at the end.
inline std::vector<Complex> find_zeros(Complex t, const Rect& rect,
                                       const ZeroFindOptions& opt = {}) {
    if (rect.height() > 2.0 * opt.strip_half_height)
        throw std::invalid_argument("find_zeros: rectangle height exceeds the 2H strip");
    auto f = [&](Complex z) { return trinomial(t, z); };
    std::vector<Complex> zeros;
    std::vector<Rect> stack = {rect};
    while (!stack.empty()) {
        Rect r = stack.back();
        stack.pop_back();
        Rect used = r;
        int w = detail::winding_with_inflation(f, r, opt, &used);
        if (w == 0) continue;
        if (used.diameter() < opt.isolate_diameter) {
            if (w > 1 && used.diameter() < opt.isolate_diameter / 64.0)
                throw numeric_error("find_zeros: unresolved zero cluster (possible branch point)");
            if (w == 1 || used.diameter() < opt.isolate_diameter / 64.0) {
                auto z = detail::trinomial_newton(t, used.center(), opt.residual_tol,
                                                  opt.newton_max_iter);
                if (z && used.contains(*z, 2.0 * used.diameter())) zeros.push_back(*z);
                continue;
            }
        }
        const double rm = 0.5 * (used.re_lo + used.re_hi);
        const double im = 0.5 * (used.im_lo + used.im_hi);
        stack.push_back(Rect{used.re_lo, rm, used.im_lo, im});
        stack.push_back(Rect{rm, used.re_hi, used.im_lo, im});
        stack.push_back(Rect{used.re_lo, rm, im, used.im_hi});
        stack.push_back(Rect{rm, used.re_hi, im, used.im_hi});
    }
    // Dedupe (inflated sibling boxes can both capture an edge zero) and keep
    // only zeros inside the requested rectangle, with boundary slack.
    std::sort(zeros.begin(), zeros.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    std::vector<Complex> out;
    for (Complex z : zeros) {
        if (!rect.contains(z, opt.boundary_inflate * 10.0)) continue;
        bool dup = false;
        for (auto it = out.rbegin(); it != out.rend(); ++it) {
            if (std::abs(*it - z) < opt.dedupe_distance) {
                dup = true;
                break;
            }
            if (z.real() - it->real() > opt.dedupe_distance) break;
        }
        if (!dup) out.push_back(z);
    }
    return out;
}

// Candidate simultaneous zero of the trinomial and its z-derivative.
struct BranchCandidate {
    Complex t;
    Complex z;
    double residual_value = 0.0;       // |trinomial|
    double residual_derivative = 0.0;  // |d/dz trinomial|
};

struct BranchSearchOptions {
    int k_window = 12;          // seeds z_k spaced 2 pi apart
    double search_radius = 0.5; // keep solutions with |t* - t_seed| below this
    double residual_tol = 1e-10;
    double strip_half_height = 12.0;
    int newton_max_iter = 80;
};

namespace detail {

// One complex-Newton step on the pair (trinomial, trinomial_dz) in (t, z).
inline bool branch_newton(Complex& t, Complex& z, int max_iter, double tol) {
    for (int i = 0; i < max_iter; ++i) {
        if (std::abs((t * z).imag()) > 80.0 || std::abs(z.imag()) > 80.0) return false;
        Complex f1 = trinomial(t, z), f2 = trinomial_dz(t, z);
        if (std::abs(f1) < tol && std::abs(f2) < tol) return true;
        Complex a = trinomial_dt(t, z), b = trinomial_dz(t, z);
        Complex c = trinomial_dzt(t, z), d = trinomial_dzz(t, z);
        Complex det = a * d - b * c;
        if (std::abs(det) < 1e-28) return false;
        Complex dt = (f1 * d - b * f2) / det;
        Complex dz = (a * f2 - f1 * c) / det;
        t -= dt;
        z -= dz;
    }
    return std::abs(trinomial(t, z)) < tol && std::abs(trinomial_dz(t, z)) < tol;
}

}  // namespace detail

// Solves the closed-form branch system e^{-iz} = t/(1-t), e^{-itz} = 1/(t-1).
// For real t the candidates are evaluated at the query parameter and none can
// satisfy both residuals (no real branch points); for complex t each seed is
// polished by a joint Newton iteration in (t, z), returning nearby genuine
// branch points.
inline std::vector<BranchCandidate> branch_candidates(Complex t,
                                                      const BranchSearchOptions& opt = {}) {
    std::vector<BranchCandidate> out;
    if (std::abs(t) < 1e-9 || std::abs(t - 1.0) < 1e-9) return out;
    const Complex base = Complex(0.0, 1.0) * std::log(t / (1.0 - t));
    const bool real_t = (t.imag() == 0.0);
    for (int k = -opt.k_window; k <= opt.k_window; ++k) {
        Complex z = base - 2.0 * kPi * static_cast<double>(k);
        Complex tt = t;
        if (real_t) {
            // Fixed-parameter evaluation; the derivative equation decides.
            double r1 = std::abs(trinomial(tt, z));
            double r2 = std::abs(trinomial_dz(tt, z));
            if (r1 < opt.residual_tol && r2 < opt.residual_tol)
                out.push_back({tt, z, r1, r2});
            continue;
        }
        if (!detail::branch_newton(tt, z, opt.newton_max_iter, opt.residual_tol)) continue;
        if (std::abs(tt - t) > opt.search_radius) continue;
        if (std::abs(z.imag()) > opt.strip_half_height) continue;
        BranchCandidate cand{tt, z, std::abs(trinomial(tt, z)), std::abs(trinomial_dz(tt, z))};
        bool dup = false;
        for (const auto& c : out)
            if (std::abs(c.t - cand.t) < 1e-6 && std::abs(c.z - cand.z) < 1e-6) dup = true;
        if (!dup) out.push_back(cand);
    }
    return out;
}

// One sample of an analytically continued zero path.
struct TraceSample {
    double t = 0.0;
    Complex lambda;
    Complex dlambda;  // dz/dt = -trinomial_dt / trinomial_dz at (t, lambda)
};

enum class TraceTermination { Reached, NearBranch, LeftStrip, StepUnderflow };

inline const char* to_string(TraceTermination r) {
    switch (r) {
        case TraceTermination::Reached: return "reached";
        case TraceTermination::NearBranch: return "near-branch";
        case TraceTermination::LeftStrip: return "left-strip";
        case TraceTermination::StepUnderflow: return "step-underflow";
    }
    return "?";
}

struct ZeroTrace {
    std::vector<TraceSample> samples;
    int k_index = 0;  // scale tag: which factor phi(t, 3^{-k} x) this zero feeds
    TraceTermination termination = TraceTermination::Reached;
};

struct ContinuationOptions {
    double max_step = 1e-3;
    double residual_tol = 1e-10;
    int band_scale_m = 3;                    // critical band half-height 3^{-m}
    double derivative_floor_band = 1e-3;     // times |1 - 2t| inside the band
    double derivative_floor_outside = 1e-8;
    double strip_half_height = 2.4;          // the Blaschke strip constant H
    int corrector_max_iter = 5;
    int k_index = 0;
};

namespace detail {

inline double derivative_floor(const ContinuationOptions& opt, double t, Complex lambda) {
    double band = 2.0 * pow3(-opt.band_scale_m);
    if (std::abs(lambda.imag()) <= band)
        return std::max(opt.derivative_floor_band * std::abs(1.0 - 2.0 * t),
                        opt.derivative_floor_outside);
    return opt.derivative_floor_outside;
}

}  // namespace detail

// Predictor-corrector continuation of a zero of the trinomial along real t.
// Every accepted sample satisfies the residual tolerance; steps halve when
// the corrector struggles and the trace truncates near branch points or when
// the zero leaves the strip |Im z| <= 2H.
inline ZeroTrace continue_zero(double t0, Complex lambda0, double t1,
                               const ContinuationOptions& opt = {}) {
    auto residual = [](double t, Complex z) { return std::abs(trinomial(Complex(t, 0.0), z)); };
    auto dz = [](double t, Complex z) { return trinomial_dz(Complex(t, 0.0), z); };
    auto dlam = [&](double t, Complex z) {
        return -trinomial_dt(Complex(t, 0.0), z) / dz(t, z);
    };
    if (residual(t0, lambda0) >= opt.residual_tol)
        throw std::invalid_argument("continue_zero: start is not a zero at the residual tolerance");
    if (std::abs(dz(t0, lambda0)) <= detail::derivative_floor(opt, t0, lambda0))
        throw std::invalid_argument("continue_zero: start violates the derivative floor");

    ZeroTrace trace;
    trace.k_index = opt.k_index;
    trace.samples.push_back({t0, lambda0, dlam(t0, lambda0)});
    const double dir = (t1 >= t0) ? 1.0 : -1.0;
    double t = t0;
    Complex lambda = lambda0;
    double step = std::min(opt.max_step, std::abs(t1 - t0));
    const double min_step = opt.max_step * std::ldexp(1.0, -30);

    while (dir * (t1 - t) > 1e-15) {
        double h = dir * std::min(step, std::abs(t1 - t));
        double t_next = t + h;
        Complex pred = lambda + h * trace.samples.back().dlambda;
        // Corrector: Newton in z at frozen t_next.
        Complex z = pred;
        bool ok = false;
        for (int it = 0; it < opt.corrector_max_iter; ++it) {
            Complex v = trinomial(Complex(t_next, 0.0), z);
            if (std::abs(v) < opt.residual_tol) {
                ok = true;
                break;
            }
            Complex d = dz(t_next, z);
            if (std::abs(d) < 1e-14) break;
            z -= v / d;
        }
        if (ok && std::abs(trinomial(Complex(t_next, 0.0), z)) >= opt.residual_tol) ok = false;
        if (!ok) {
            step *= 0.5;
            if (step < min_step) {
                trace.termination = TraceTermination::StepUnderflow;
                return trace;
            }
            continue;
        }
        if (std::abs(dz(t_next, z)) < detail::derivative_floor(opt, t_next, z)) {
            trace.termination = TraceTermination::NearBranch;
            return trace;
        }
        if (std::abs(z.imag()) > 2.0 * opt.strip_half_height) {
            trace.termination = TraceTermination::LeftStrip;
            return trace;
        }
        t = t_next;
        lambda = z;
        trace.samples.push_back({t, lambda, dlam(t, lambda)});
        step = std::min(step * 1.6, opt.max_step);
    }
    trace.termination = TraceTermination::Reached;
    return trace;
}

// Finite-difference view of the two Riesz change-of-variable maps
// g1 = Re(lambda) and g2 = t * Re(lambda) along a real-t trace, with the
// cover of the time window by U = {|g1'| large} and V = {|g2'| large}.
struct GFunctionsReport {
    std::vector<double> mid_t;
    std::vector<double> g1_prime;  // finite differences at midpoints
    std::vector<double> g2_prime;
    std::vector<bool> in_u;
    std::vector<bool> in_v;
    double identity_residual_max = 0.0;   // |g2' - t g1' - x| at midpoints
    double fd_vs_analytic_max = 0.0;      // g1' FD vs Re(dlambda) midpoint average
    double floor_used = 0.0;
    bool covered = false;                 // U union V covers every midpoint
    int u_components = 0;
    int v_components = 0;
};

inline GFunctionsReport g_functions(const ZeroTrace& trace, int band_scale_m,
                                    double floor_coeff = 0.4) {
    GFunctionsReport rep;
    rep.floor_used = floor_coeff * pow3(-band_scale_m);
    const auto& s = trace.samples;
    if (s.size() < 2) throw std::invalid_argument("g_functions: trace needs at least 2 samples");
    rep.covered = true;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        double h = s[i + 1].t - s[i].t;
        if (h == 0.0) continue;
        double tm = 0.5 * (s[i].t + s[i + 1].t);
        double x0 = s[i].lambda.real(), x1 = s[i + 1].lambda.real();
        double g1p = (x1 - x0) / h;
        double g2p = (s[i + 1].t * x1 - s[i].t * x0) / h;
        rep.mid_t.push_back(tm);
        rep.g1_prime.push_back(g1p);
        rep.g2_prime.push_back(g2p);
        double xm = 0.5 * (x0 + x1);
        rep.identity_residual_max =
            std::max(rep.identity_residual_max, std::abs(g2p - tm * g1p - xm));
        double analytic = 0.5 * (s[i].dlambda.real() + s[i + 1].dlambda.real());
        rep.fd_vs_analytic_max = std::max(rep.fd_vs_analytic_max, std::abs(g1p - analytic));
        bool u = std::abs(g1p) >= rep.floor_used;
        bool v = std::abs(g2p) >= rep.floor_used;
        rep.in_u.push_back(u);
        rep.in_v.push_back(v);
        if (!u && !v) rep.covered = false;
    }
    auto components = [](const std::vector<bool>& flags) {
        int c = 0;
        bool prev = false;
        for (bool b : flags) {
            if (b && !prev) ++c;
            prev = b;
        }
        return c;
    };
    rep.u_components = components(rep.in_u);
    rep.v_components = components(rep.in_v);
    return rep;
}

// Centers t_r = c r 3^{-2m} of the overlapping time windows used when
// counting traces; radius c 3^{-2m} covers [0,1] with 2x overlap at c = 1/2.
inline std::vector<double> dr_window_centers(int m, double c = 0.5) {
    std::vector<double> out;
    const double width = c * pow3(-2 * m);
    for (double t = width; t < 1.0 + width; t += width) out.push_back(t);
    return out;
}

// Zero-count bound for a holomorphic function on the unit disc from its sup
// norm and a unit-size value at the origin, cross-checked against the actual
// count in the half disc.
struct BlaschkeReport {
    double sup_bound = 0.0;
    int bound = 0;            // floor(log2 sup_bound)
    int zeros_in_half_disc = 0;
};

template <typename F>
BlaschkeReport blaschke_count(const F& f, int boundary_samples = 1024) {
    if (std::abs(f(Complex(0.0, 0.0))) < 1.0 - 1e-12)
        throw std::invalid_argument("blaschke_count: |f(0)| must be at least 1");
    BlaschkeReport rep;
    for (int i = 0; i < boundary_samples; ++i) {
        double a = 2.0 * kPi * static_cast<double>(i) / boundary_samples;
        rep.sup_bound = std::max(rep.sup_bound, std::abs(f(Complex(std::cos(a), std::sin(a)))));
    }
    rep.bound = static_cast<int>(std::floor(std::log2(rep.sup_bound)));
    double radius = 0.5;
    for (int attempt = 0;; ++attempt) {
        try {
            rep.zeros_in_half_disc = winding_number_circle(f, Complex(0.0, 0.0), radius);
            break;
        } catch (const near_boundary_zero&) {
            if (attempt >= 4) throw numeric_error("blaschke_count: zero pinned to the half circle");
            radius += 1e-6;
        }
    }
    return rep;
}

// Grid verification that the small-value set of the trinomial inside the
// quarter disc sits inside the predicted neighborhoods of its zeros.
struct SmallValueReport {
    bool contained = false;
    bool vacuous = false;        // no small values on the grid
    double eps_m = 0.0;          // localization radius (disc units)
    int blaschke_m = 0;
    double sup_bound = 0.0;
    int zero_count = 0;
    std::size_t small_value_points = 0;
    double worst_margin = 0.0;   // min over small-value points of eps_m - dist
};

inline SmallValueReport small_value_localization(Complex t, double eps, const Rect& rect,
                                                 int grid = 129) {
    const Complex z0 = rect.center();
    const double rho = 0.5 * std::min(rect.width(), rect.height());
    const Complex f0 = trinomial(t, z0);
    if (std::abs(f0) < 1e-9)
        throw std::domain_error("small_value_localization: disc center too close to a zero");
    auto psi = [&](Complex w) { return trinomial(t, z0 + rho * w) / f0; };

    SmallValueReport rep;
    for (int i = 0; i < 512; ++i) {
        double a = 2.0 * kPi * static_cast<double>(i) / 512;
        rep.sup_bound = std::max(rep.sup_bound, std::abs(psi(Complex(std::cos(a), std::sin(a)))));
    }
    rep.blaschke_m = std::max(1, static_cast<int>(std::floor(std::log2(std::max(rep.sup_bound, 2.0)))));
    const double delta = eps / std::abs(f0);
    if (delta >= 1.0 / 3.0)
        throw std::domain_error("small_value_localization: threshold must satisfy delta < 1/3");
    rep.eps_m = (9.0 / 16.0) * std::pow(3.0 * delta, 1.0 / rep.blaschke_m);

    // Zeros of psi in the half disc via the trinomial in the enclosing square.
    Rect half{z0.real() - 0.5 * rho, z0.real() + 0.5 * rho, z0.imag() - 0.5 * rho,
              z0.imag() + 0.5 * rho};
    std::vector<Complex> zeros_w;
    for (Complex z : find_zeros(t, half))
        if (std::abs(z - z0) <= 0.5 * rho) zeros_w.push_back((z - z0) / rho);
    rep.zero_count = static_cast<int>(zeros_w.size());

    rep.contained = true;
    rep.vacuous = true;
    rep.worst_margin = rep.eps_m;
    for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
            Complex w(-0.25 + 0.5 * static_cast<double>(i) / (grid - 1),
                      -0.25 + 0.5 * static_cast<double>(j) / (grid - 1));
            if (std::abs(w) > 0.25) continue;
            if (std::abs(psi(w)) >= delta) continue;
            rep.vacuous = false;
            ++rep.small_value_points;
            double dist = std::numeric_limits<double>::infinity();
            for (Complex lw : zeros_w) dist = std::min(dist, std::abs(w - lw));
            double margin = rep.eps_m - dist;
            rep.worst_margin = std::min(rep.worst_margin, margin);
            if (margin < 0.0) rep.contained = false;
        }
    }
    return rep;
}

}  // namespace favard
