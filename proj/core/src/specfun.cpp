#include "frc/specfun.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "frc/quadrature.hpp"

namespace frc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();

[[noreturn]] void fail_domain(const char* what) {
    throw std::domain_error(what);
}

double lgamma_pos(double a) {
#ifdef __GLIBC__
    int sign = 0;
    return ::lgamma_r(a, &sign);  // reentrant; sign is +1 for a > 0
#else
    return std::lgamma(a);
#endif
}

// Modified-Lentz continued fraction for the regularized incomplete beta,
// valid for a,b > 0 and x below the crossover (a+1)/(a+b+2).
double beta_cf(double a, double b, double x) {
    const double fpmin = std::numeric_limits<double>::min() / kEps;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m < 1000; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) <= kEps) break;
    }
    return h;
}

// Split point for the b <= 0 evaluation: below x0 the integral is computed
// directly (substitution removes the t=0 singularity); above it the missing
// piece is integrated in log space near t = 1 where the integrand blows up.
constexpr double kSplitX = 0.75;
constexpr double kSplitW = 0.25;  // 1 - kSplitX

// Tail piece for b <= 0:  integral_w^{w1} (1-s)^(a-1) s^(b-1) ds, computed
// with s = e^t so that w may be arbitrarily small (down to ~1e-300).
SpecFunResult beta_tail_log(double a, double b, double w, double w1) {
    if (w >= w1) return {0.0, 0.0};
    const QuadResult r = integrate(
        [a, b](double t) {
            return std::exp(b * t + (a - 1.0) * std::log1p(-std::exp(t)));
        },
        {std::log(w), std::log(w1)}, 1e-13, 1e-300);
    return {r.value, r.abs_error_estimate};
}

}  // namespace

double log_gamma(double a) {
    if (!(a > 0.0)) {
        std::ostringstream msg;
        msg << "log_gamma: require a > 0, got " << a;
        throw std::domain_error(msg.str());
    }
    return lgamma_pos(a);
}

double gamma_fn(double a) { return std::exp(log_gamma(a)); }

double beta_fn(double a, double b) {
    if (!(a > 0.0)) fail_domain("beta_fn: require a > 0");
    if (!(b > 0.0)) return kInf;
    return std::exp(lgamma_pos(a) + lgamma_pos(b) - lgamma_pos(a + b));
}

SpecFunResult inc_beta_est(double a, double b, double x) {
    if (!(a > 0.0)) fail_domain("inc_beta: require a > 0");
    if (!(x >= 0.0) || x >= 1.0) fail_domain("inc_beta: require 0 <= x < 1");
    if (x == 0.0) return {0.0, 0.0};

    if (b > 0.0) {
        const double lx = std::log(x), l1x = std::log1p(-x);
        if (x < (a + 1.0) / (a + b + 2.0)) {
            const double v =
                std::exp(a * lx + b * l1x) * beta_cf(a, b, x) / a;
            return {v, 1e-14 * std::fabs(v)};
        }
        const double bab = beta_fn(a, b);
        const double v =
            bab - std::exp(a * lx + b * l1x) * beta_cf(b, a, 1.0 - x) / b;
        return {v, 1e-14 * bab};
    }

    // b <= 0: no standard routine; integrate. The integrand magnitude is
    // bounded by (1-x)^(b-1); saturate to +inf once that exceeds double
    // range rather than letting the quadrature overflow.
    if ((b - 1.0) * std::log1p(-x) > 700.0) return {kInf, kInf};

    // Direct part via t = s^(1/a), which flattens the t^(a-1) endpoint:
    //   B(a,b;x) = (1/a) * integral_0^{x^a} (1 - s^(1/a))^(b-1) ds
    const double xe = std::min(x, kSplitX);
    const double inv_a = 1.0 / a;
    const QuadResult direct = integrate(
        [b, inv_a](double s) {
            return std::exp((b - 1.0) * std::log1p(-std::pow(s, inv_a)));
        },
        {0.0, std::pow(xe, a)}, 1e-13, 1e-300);
    double value = direct.value / a;
    double est = direct.abs_error_estimate / a;

    if (x > kSplitX) {
        const SpecFunResult tail = beta_tail_log(a, b, 1.0 - x, kSplitW);
        value += tail.value;
        est += tail.abs_error_estimate;
    }
    return {value, est};
}

double inc_beta(double a, double b, double x) { return inc_beta_est(a, b, x).value; }

namespace {

// Bracketed Newton for inc_beta(a,b,u) = y on u in [0, ucap], where the
// root is known to lie. The integrand itself is the derivative.
double solve_beta_u(double a, double b, double y, double ucap) {
    double lo = 0.0, hi = ucap;
    // Small-y behaviour B ~ u^a / a gives the starting guess; work in logs
    // so that tiny y (where u underflows) saturates gracefully to ~0.
    const double lg = std::log(a * y) / a;
    if (lg < -690.0) return std::exp(lg);
    double u = std::exp(lg);
    if (!(u > lo) || !(u < hi)) u = 0.5 * (lo + hi);
    const double tol = 1e-13 * y;
    for (int it = 0; it < 200; ++it) {
        const double r = inc_beta(a, b, u) - y;
        if (std::fabs(r) <= tol) return u;
        if (r > 0.0) hi = u;
        else lo = u;
        const double deriv =
            std::exp((a - 1.0) * std::log(u) + (b - 1.0) * std::log1p(-u));
        double un = u - r / deriv;
        if (!(un > lo) || !(un < hi)) un = 0.5 * (lo + hi);
        if (hi - lo <= 4.0 * kEps * hi + 1e-300) return 0.5 * (lo + hi);
        u = un;
    }
    return u;
}

// Tail inverse for b <= 0: solve  base + T(w) = y  with
// T(w) = integral_w^{w1} (1-s)^(a-1) s^(b-1) ds, Newton running in ln w so
// that w can be resolved far below double-subtraction range.
double solve_beta_w_tail(double a, double b, double y, double base) {
    const double target = y - base;  // > 0
    const double t_top = std::log(kSplitW);
    const double t_floor = std::log(1e-300);
    auto tail = [a, b](double t) {
        return beta_tail_log(a, b, std::exp(t), kSplitW).value;
    };

    // Walk down in ln w until the tail integral exceeds the target.
    double t_hi = t_top;
    double t_lo = t_top - 1.0;
    while (tail(t_lo) < target) {
        if (t_lo <= t_floor) return 1e-300;  // beyond double range: saturate
        t_lo = std::max(t_floor, t_top + 2.0 * (t_lo - t_top));
    }

    double t = 0.5 * (t_lo + t_hi);
    const double tol = 1e-13 * y;
    for (int it = 0; it < 200; ++it) {
        const double r = tail(t) - target;  // decreasing in t
        if (std::fabs(r) <= tol) break;
        if (r > 0.0) t_lo = t;
        else t_hi = t;
        // dT/d(ln w) = -(1-w)^(a-1) w^b
        const double w = std::exp(t);
        const double deriv = -std::exp(b * t + (a - 1.0) * std::log1p(-w));
        double tn = t - r / deriv;
        if (!(tn > t_lo) || !(tn < t_hi)) tn = 0.5 * (t_lo + t_hi);
        if (t_hi - t_lo <= 1e-14) break;
        t = tn;
    }
    return std::exp(t);
}

}  // namespace

InvIncBeta inv_inc_beta_split(double a, double b, double y) {
    if (!(a > 0.0)) fail_domain("inv_inc_beta: require a > 0");
    if (!(y >= 0.0)) fail_domain("inv_inc_beta: require y >= 0");
    if (y == 0.0) return {0.0, 1.0};

    double bab = kInf;
    if (b > 0.0) {
        bab = beta_fn(a, b);
        if (y >= bab) {
            throw std::range_error(
                "inv_inc_beta: y must lie strictly below B(a,b)");
        }
    }

    const double y_half = inc_beta(a, b, 0.5);
    if (y <= y_half) {
        const double u = solve_beta_u(a, b, y, 0.5);
        return {u, 1.0 - u};
    }
    if (b > 0.0) {
        // Mirror: B(a,b;1-w) = B(a,b) - B(b,a;w), so invert the reflected
        // integral for the complement w < 1/2.
        const double w = solve_beta_u(b, a, bab - y, 0.5);
        return {1.0 - w, w};
    }
    const double base = inc_beta(a, b, kSplitX);
    if (y <= base) {
        const double u = solve_beta_u(a, b, y, kSplitX);
        return {u, 1.0 - u};
    }
    const double w = solve_beta_w_tail(a, b, y, base);
    return {1.0 - w, w};
}

double inv_inc_beta(double a, double b, double y) {
    const double x = inv_inc_beta_split(a, b, y).x;
    return std::min(x, std::nextafter(1.0, 0.0));
}

namespace {

// Upper incomplete gamma integral_w^inf t^(a-1) e^(-t) dt by continued
// fraction (for w >= a+1, where it converges fast).
double upper_gamma_cf(double a, double w) {
    const double fpmin = std::numeric_limits<double>::min() / kEps;
    double b = w + 1.0 - a;
    double c = 1.0 / fpmin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = b + an / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) <= kEps) break;
    }
    return std::exp(-w + a * std::log(w)) * h;
}

}  // namespace

double inc_gamma_lower(double a, double w) {
    if (!(a > 0.0)) fail_domain("inc_gamma_lower: require a > 0");
    if (!(w >= 0.0)) fail_domain("inc_gamma_lower: require w >= 0");
    if (w == 0.0) return 0.0;
    if (w < a + 1.0) {
        // Ascending series for the lower integral.
        double ap = a, del = 1.0 / a, sum = del;
        for (int k = 0; k < 10000; ++k) {
            ap += 1.0;
            del *= w / ap;
            sum += del;
            if (std::fabs(del) < std::fabs(sum) * kEps) break;
        }
        return sum * std::exp(-w + a * std::log(w));
    }
    return gamma_fn(a) - upper_gamma_cf(a, w);
}

double inc_gamma_grow(double a, double v) {
    if (!(a > 0.0)) fail_domain("inc_gamma_grow: require a > 0");
    if (!(v >= 0.0)) fail_domain("inc_gamma_grow: require v >= 0");
    if (v == 0.0) return 0.0;
    // v^a * sum_k v^k / (k! (a+k)); every term is positive, so there is no
    // cancellation for any v.
    double term = 1.0 / a;
    double sum = term;
    for (int k = 1; k < 100000; ++k) {
        term *= v / k * (a + k - 1.0) / (a + k);
        sum += term;
        if (term < sum * kEps) break;
    }
    return std::exp(a * std::log(v)) * sum;
}

namespace {

// Shared bracketed-Newton driver for the monotone gamma integrals.
template <typename F, typename Deriv>
double solve_gamma(F&& fn, Deriv&& deriv, double y, double lo, double hi) {
    double w = 0.5 * (lo + hi);
    const double tol = 1e-13 * std::fabs(y);
    for (int it = 0; it < 200; ++it) {
        const double r = fn(w) - y;
        if (std::fabs(r) <= tol) return w;
        if (r > 0.0) hi = w;
        else lo = w;
        double wn = w - r / deriv(w);
        if (!(wn > lo) || !(wn < hi)) wn = 0.5 * (lo + hi);
        if (hi - lo <= 4.0 * kEps * std::max(1.0, hi)) return 0.5 * (lo + hi);
        w = wn;
    }
    return w;
}

}  // namespace

double inv_inc_gamma_lower(double a, double y) {
    if (!(a > 0.0)) fail_domain("inv_inc_gamma_lower: require a > 0");
    if (!(y >= 0.0)) fail_domain("inv_inc_gamma_lower: require y >= 0");
    const double g = gamma_fn(a);
    if (y >= g) {
        throw std::range_error(
            "inv_inc_gamma_lower: y must lie strictly below Gamma(a)");
    }
    if (y == 0.0) return 0.0;

    // Below w = a+1 the lower integral is evaluated by its ascending series,
    // which is cancellation-free however close y is to Gamma(a); above it,
    // solve the complementary upper integral (continued fraction) instead of
    // forming Gamma(a) - (number nearly equal to Gamma(a)).
    const double f_split = inc_gamma_lower(a, a + 1.0);
    if (y <= f_split) {
        return solve_gamma([a](double w) { return inc_gamma_lower(a, w); },
                           [a](double w) {
                               return std::exp((a - 1.0) * std::log(w) - w);
                           },
                           y, 0.0, a + 1.0);
    }
    const double yc = g - y;  // > 0; accuracy limited only by ulp(Gamma(a))
    const double lo = a + 1.0;
    double hi = 2.0 * lo;
    while (upper_gamma_cf(a, hi) > yc && hi < 1e4) hi *= 2.0;
    return solve_gamma([a](double w) { return -upper_gamma_cf(a, w); },
                       [a](double w) {
                           return std::exp((a - 1.0) * std::log(w) - w);
                       },
                       -yc, lo, hi);
}

double inv_inc_gamma_grow(double a, double y) {
    if (!(a > 0.0)) fail_domain("inv_inc_gamma_grow: require a > 0");
    if (!(y >= 0.0)) fail_domain("inv_inc_gamma_grow: require y >= 0");
    if (y == 0.0) return 0.0;
    double hi = std::max(a, 1.0);
    while (inc_gamma_grow(a, hi) < y && hi < 1e4) hi *= 2.0;
    return solve_gamma([a](double v) { return inc_gamma_grow(a, v); },
                       [a](double v) {
                           return std::exp((a - 1.0) * std::log(v) + v);
                       },
                       y, 0.0, hi);
}

double erf(double x) { return std::erf(x); }

}  // namespace frc
