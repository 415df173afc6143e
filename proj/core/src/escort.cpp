#include "frc/escort.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <memory>
#include <sstream>
#include <vector>

#include "frc/errors.hpp"
#include "frc/quadrature.hpp"

namespace frc {

namespace {

// Relative floor below which the density is treated as zero when choosing
// the tabulated region. The probability mass ignored this way is at most
// ~1e-16 of the total for any tail that decays at all, so the truncation is
// invisible at the working tolerances.
constexpr double kRhoCutRel = 1e-16;

// Midpoint-error target of the cumulative-integral interpolant, relative to
// max(1, |y|).
constexpr double kInterpTol = 1e-10;

// Deepest dyadic refinement of one seed segment. 48 halvings shrink any
// segment by 3e14, enough for the steepest integrable edge profiles.
constexpr int kMaxDepth = 48;

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void fail_divergent(double alpha, const char* what) {
    std::ostringstream os;
    os << "escort_transform: " << what << " at alpha = " << alpha
       << "; this order is outside the usable range for the given density";
    throw divergence_error(os.str());
}

// Cumulative-integral table of w(x) = rho(x)^{1-alpha}: knots x with exact
// cumulative values y and exact slopes s = w(x). Between knots the map is
// the cubic Hermite interpolant of (y, s), which is C^1 and increasing for
// the refined tables we build.
struct MapTable {
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> s;

    double eval_segment(std::size_t i, double xx) const {
        const double h = x[i + 1] - x[i];
        const double t = (xx - x[i]) / h;
        const double t2 = t * t;
        const double t3 = t2 * t;
        return y[i] * (2.0 * t3 - 3.0 * t2 + 1.0) + y[i + 1] * (3.0 * t2 - 2.0 * t3) +
               h * (s[i] * (t3 - 2.0 * t2 + t) + s[i + 1] * (t3 - t2));
    }

    double eval(double xx) const {
        if (xx <= x.front()) return y.front() + s.front() * (xx - x.front());
        if (xx >= x.back()) return y.back() + s.back() * (xx - x.back());
        const std::size_t i =
            static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), xx) - x.begin()) - 1;
        return eval_segment(i, xx);
    }

    // Inverse of the interpolant. Newton on the segment cubic with a
    // bisection bracket as safeguard; the bracket alone already converges to
    // ~53 bits, so flat spots (orders alpha < 1 across an interior zero of
    // rho) only cost iterations, not accuracy.
    double invert(double yy) const {
        if (yy <= y.front()) return x.front();
        if (yy >= y.back()) return x.back();
        std::size_t i =
            static_cast<std::size_t>(std::upper_bound(y.begin(), y.end(), yy) - y.begin()) - 1;
        while (i + 2 < x.size() && y[i + 1] <= yy) ++i;
        double lo = x[i], hi = x[i + 1];
        const double dy = y[i + 1] - y[i];
        double xx = dy > 0.0 ? lo + (hi - lo) * (yy - y[i]) / dy : 0.5 * (lo + hi);
        for (int it = 0; it < 90; ++it) {
            const double f = eval_segment(i, xx) - yy;
            if (f > 0.0) {
                hi = xx;
            } else if (f < 0.0) {
                lo = xx;
            } else {
                break;
            }
            const double h = x[i + 1] - x[i];
            const double t = (xx - x[i]) / h;
            const double d = (6.0 * t * t - 6.0 * t) * (y[i] - y[i + 1]) / h +
                             s[i] * (3.0 * t * t - 4.0 * t + 1.0) + s[i + 1] * (3.0 * t * t - 2.0 * t);
            const double step = d > 0.0 ? xx - f / d : lo;
            xx = (step > lo && step < hi) ? step : 0.5 * (lo + hi);
            if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() *
                               (std::fabs(lo) + std::fabs(hi) + 1e-300))
                break;
        }
        return xx;
    }
};

// Evaluator for the cumulative sub-integrals of w = rho^{1-alpha}. Each call
// passes the cumulative value already accumulated at the segment's near end
// ("scale"): kInterpTol/3 * max(1, scale) is the finest distinction the
// interpolant acceptance test can make there, so it serves as the absolute
// tolerance and far-tail sub-integrals are not asked for precision the map
// cannot represent. The relative rung starts at 3e-11 -- above the ~1e-11
// evaluation noise of densities that go through inverse special functions --
// and loosens by a decade whenever the quadrature cannot certify the
// current rung against the integrand's own noise: interpolation kinks of an
// escort of an escort (~1e-10), the subtractive cancellation in a
// compact-support density's edge factor (~1e-8 at the region cut), or
// table rounding divided by a near-zero slope at the far end of an escort
// of an escort (~1e-7). Genuinely divergent integrals fail every rung and
// propagate the failure.
class CumEval {
  public:
    explicit CumEval(std::function<double(double)> w) : w_(std::move(w)) {}

    double operator()(double a, double b, double scale) {
        if (!(b > a)) return 0.0;
        const double abs_tol = (kInterpTol / 3.0) * std::max(1.0, scale);
        for (;;) {
            try {
                return integrate(w_, Interval{a, b}, kRungs[rung_], abs_tol).value;
            } catch (const divergence_error&) {
                if (rung_ + 1 >= static_cast<int>(std::size(kRungs))) throw;
                ++rung_;
            }
        }
    }

    double slope(double x) const { return w_(x); }

  private:
    static constexpr double kRungs[] = {3e-11, 3e-10, 3e-9, 3e-8, 3e-7, 3e-6};
    std::function<double(double)> w_;
    int rung_ = 0;
};

// Recursive refinement: [a,b] with exact end values/slopes is accepted once
// the Hermite midpoint prediction matches the recomputed cumulative
// integral. Refinement driven by integrand noise rather than genuine
// interpolation error stops on its own: the sub-integral error is capped by
// the same absolute floor the acceptance test uses.
void build_segment(CumEval& cum, double a, double b, double ya, double yb, double sa,
                   double sb, int depth, MapTable* table) {
    const double mid = 0.5 * (a + b);
    const double ym = ya + cum(a, mid, std::fabs(ya));
    const double sm = cum.slope(mid);
    const double pred = 0.5 * (ya + yb) + (b - a) * (sa - sb) / 8.0;
    if (depth >= kMaxDepth || mid <= a || mid >= b ||
        std::fabs(pred - ym) <= kInterpTol * std::max(1.0, std::fabs(ym))) {
        table->x.push_back(b);
        table->y.push_back(yb);
        table->s.push_back(sb);
        return;
    }
    build_segment(cum, a, mid, ya, ym, sa, sm, depth + 1, table);
    build_segment(cum, mid, b, ym, yb, sm, sb, depth + 1, table);
}

// Region where rho exceeds kRhoCutRel of its sampled peak. Probes the
// support on a rational grid (so infinite ends are reachable), takes the
// outermost probes still above the threshold, and bisects the crossing
// against the neighbouring below-threshold point; an above-threshold tail at
// the last probe of an infinite end is chased by doubling first.
Interval tabulated_region(const DensityModel& rho) {
    const Interval sup = rho.support;
    const int n = 2048;
    std::vector<double> xs;
    xs.reserve(n);
    const bool lo_inf = std::isinf(sup.lo);
    const bool hi_inf = std::isinf(sup.hi);
    for (int k = 0; k < n; ++k) {
        const double u = (k + 0.5) / n;  // in (0,1)
        double xx;
        if (lo_inf && hi_inf) {
            const double v = 2.0 * u - 1.0;
            xx = v / (1.0 - v * v);
        } else if (hi_inf) {
            xx = sup.lo + u / (1.0 - u);
        } else if (lo_inf) {
            xx = sup.hi - (1.0 - u) / u;
        } else {
            xx = sup.lo + (sup.hi - sup.lo) * u;
        }
        xs.push_back(xx);
    }
    double peak = 0.0;
    for (double xx : xs) peak = std::max(peak, rho.pdf(xx));
    if (!(peak > 0.0) || !std::isfinite(peak))
        throw std::domain_error("escort_transform: density has no finite positive peak");
    const double thresh = kRhoCutRel * peak;

    int first = -1, last = -1;
    for (int k = 0; k < n; ++k) {
        if (rho.pdf(xs[k]) > thresh) {
            if (first < 0) first = k;
            last = k;
        }
    }
    // Bisect rho(x) = thresh between an above-threshold point and a
    // below-threshold (or support-end) point.
    const auto crossing = [&](double above, double below) {
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (above + below);
            if (mid == above || mid == below) break;
            (rho.pdf(mid) > thresh ? above : below) = mid;
        }
        return 0.5 * (above + below);
    };

    double lo_cut;
    if (first == 0 && !lo_inf) {
        // Every probe clears the threshold, but a continuously vanishing
        // endpoint still crosses it in the last (sub-probe-width) sliver.
        lo_cut = rho.pdf(sup.lo) > thresh ? sup.lo : crossing(xs[0], sup.lo);
    } else {
        double below = first == 0 ? xs[0] - std::max(1.0, std::fabs(xs[0])) : xs[first - 1];
        if (first == 0) {
            // chase an infinite left tail still above threshold
            while (rho.pdf(below) > thresh && std::isfinite(below))
                below -= std::max(1.0, std::fabs(below));
        }
        lo_cut = crossing(xs[first], below);
    }
    double hi_cut;
    if (last == n - 1 && !hi_inf) {
        hi_cut = rho.pdf(sup.hi) > thresh ? sup.hi : crossing(xs[n - 1], sup.hi);
    } else {
        double below = last == n - 1 ? xs[n - 1] + std::max(1.0, std::fabs(xs[n - 1])) : xs[last + 1];
        if (last == n - 1) {
            while (rho.pdf(below) > thresh && std::isfinite(below))
                below += std::max(1.0, std::fabs(below));
        }
        hi_cut = crossing(xs[last], below);
    }
    if (!(hi_cut > lo_cut))
        throw std::domain_error("escort_transform: degenerate tabulated region");
    // Densities report pdf = 0 at their own support endpoints even when the
    // interior limit is positive (hard truncation); nudge such a cut inward
    // so the knot slopes stay evaluable.
    const double span = hi_cut - lo_cut;
    for (double step = 1e-15 * span; !(rho.pdf(lo_cut) > 0.0) && step < span; step *= 2.0)
        lo_cut += step;
    for (double step = 1e-15 * span; !(rho.pdf(hi_cut) > 0.0) && step < span; step *= 2.0)
        hi_cut -= step;
    if (!(hi_cut > lo_cut) || !(rho.pdf(lo_cut) > 0.0) || !(rho.pdf(hi_cut) > 0.0))
        throw std::domain_error("escort_transform: degenerate tabulated region");
    return Interval{lo_cut, hi_cut};
}

}  // namespace

std::pair<DensityModel, EscortMap> escort_transform(const DensityModel& rho, double alpha) {
    if (!(alpha > 0.0)) {
        std::ostringstream os;
        os << "escort_transform: order alpha must be positive, got " << alpha
           << " (the alpha -> 0 limit is escort_uniformize)";
        throw std::domain_error(os.str());
    }

    const Interval region = tabulated_region(rho);
    const auto base_pdf = rho.pdf;
    const double expo = 1.0 - alpha;
    const auto w = [base_pdf, expo](double xx) {
        const double r = base_pdf(xx);
        if (!(r > 0.0)) return expo >= 0.0 ? 0.0 : kInf;
        return std::exp(expo * std::log(r));
    };

    // Anchor y = 0 at x = 0, or at the nearest tabulated point when the
    // region lies off to one side.
    const double anchor = std::clamp(0.0, region.lo, region.hi);

    // Both halves accumulate outward from the anchor, the left one on the
    // reflected axis; never inward from a far end. Tail cumulative values
    // can reach ~1e15 while the bulk sits at order 1, and a half built from
    // its far end would compute every bulk knot as the difference of two
    // enormous numbers, destroying it.
    const auto wr = [w](double xx) { return w(-xx); };
    // The far-end values only place the outermost knots, where the density
    // sits at its relative floor; 3e-7 relative is plenty there, and asking
    // for more would trip over the noise such integrals reach near a
    // compact-support edge.
    constexpr double kEndRelTol = 3e-7;
    double y_hi = 0.0, y_left = 0.0;  // cumulative from the anchor to each end
    try {
        if (anchor < region.hi)
            y_hi = integrate(w, Interval{anchor, region.hi}, kEndRelTol, 1e-30).value;
        if (anchor > region.lo)
            y_left = integrate(wr, Interval{-anchor, -region.lo}, kEndRelTol, 1e-30).value;
    } catch (const divergence_error&) {
        fail_divergent(alpha, "the cumulative integral of rho^{1-alpha} diverges");
    }
    if (!std::isfinite(y_hi) || !std::isfinite(y_left))
        fail_divergent(alpha, "the cumulative integral of rho^{1-alpha} overflows");

    CumEval cum(w), cum_r(wr);

    MapTable right, left;
    try {
        if (anchor < region.hi) {
            right.x.push_back(anchor);
            right.y.push_back(0.0);
            right.s.push_back(w(anchor));
            build_segment(cum, anchor, region.hi, 0.0, y_hi, right.s.front(),
                          w(region.hi), 0, &right);
        }
        if (anchor > region.lo) {
            left.x.push_back(-anchor);
            left.y.push_back(0.0);
            left.s.push_back(wr(-anchor));
            build_segment(cum_r, -anchor, -region.lo, 0.0, y_left, left.s.front(),
                          wr(-region.lo), 0, &left);
        }
    } catch (const divergence_error&) {
        fail_divergent(alpha, "the cumulative integral of rho^{1-alpha} diverges");
    }

    MapTable table;
    table.x.reserve(left.x.size() + right.x.size());
    table.y.reserve(left.x.size() + right.x.size());
    table.s.reserve(left.x.size() + right.x.size());
    for (std::size_t i = left.x.size(); i-- > 0;) {
        table.x.push_back(-left.x[i]);
        table.y.push_back(i == 0 ? 0.0 : -left.y[i]);
        table.s.push_back(left.s[i]);
    }
    // skip the right half's anchor knot when the left half already placed it
    for (std::size_t i = left.x.empty() ? 0 : 1; i < right.x.size(); ++i) {
        table.x.push_back(right.x[i]);
        table.y.push_back(right.y[i]);
        table.s.push_back(right.s[i]);
    }
    for (double yy : table.y)
        if (!std::isfinite(yy))
            fail_divergent(alpha, "the cumulative integral of rho^{1-alpha} overflows");
    // The far-end knot comes from the one integral evaluated at kEndRelTol,
    // and within the terminal refinement slivers its error can exceed the
    // sliver's own increment. Restore strict ordering there; the density is
    // at its relative floor in those slivers, so only the ordering matters.
    for (std::size_t i = 1; i < table.y.size(); ++i)
        if (!(table.y[i] > table.y[i - 1]))
            table.y[i] = std::nextafter(table.y[i - 1], kInf);

    auto shared = std::make_shared<const MapTable>(std::move(table));
    const auto base_dpdf = rho.dpdf;
    const double a = alpha;

    DensityModel out;
    // A table end far from the anchor is the truncation of a cumulative
    // integral that diverges (or barely converges) toward the base support
    // end; the honest support on that side is infinite. Reporting it as such
    // also steers quadrature over the output through the compactifying
    // transform, which resolves an order-1 bulk inside an enormous range.
    constexpr double kWideRange = 64.0;
    out.support = Interval{shared->y.front() < -kWideRange ? -kInf : shared->y.front(),
                           shared->y.back() > kWideRange ? kInf : shared->y.back()};
    out.normalization_constant = 1.0;
    out.smooth = rho.smooth;
    out.pdf = [shared, base_pdf, a](double yy) {
        if (yy <= shared->y.front() || yy >= shared->y.back()) return 0.0;
        const double r = base_pdf(shared->invert(yy));
        if (!(r > 0.0)) return 0.0;
        return std::exp(a * std::log(r));
    };
    out.dpdf = [shared, base_pdf, base_dpdf, a](double yy) {
        if (yy <= shared->y.front() || yy >= shared->y.back()) return 0.0;
        const double xx = shared->invert(yy);
        const double r = base_pdf(xx);
        if (!(r > 0.0)) return 0.0;
        return a * std::exp((2.0 * a - 2.0) * std::log(r)) * base_dpdf(xx);
    };

    EscortMap map;
    map.alpha = alpha;
    map.y_range = out.support;
    map.y_of_x = [shared](double xx) { return shared->eval(xx); };
    map.x_of_y = [shared, base_pdf, expo](double yy) {
        double xx = shared->invert(yy);
        // One Newton polish against the exact integrand slope.
        const double r = base_pdf(xx);
        if (r > 0.0) {
            const double slope = std::exp(expo * std::log(r));
            if (std::isfinite(slope) && slope > 0.0) {
                const double yc = std::clamp(yy, shared->y.front(), shared->y.back());
                const double step = (shared->eval(xx) - yc) / slope;
                if (std::fabs(step) <= 1e-6 * std::max(1.0, std::fabs(xx))) xx -= step;
            }
        }
        return xx;
    };

    // The change of variables preserves mass exactly; a failed check means
    // the truncated table missed a non-negligible part of the transform.
    double mass = 0.0;
    try {
        mass = integrate(out.pdf, out.support, 1e-9, 1e-12).value;
    } catch (const divergence_error&) {
        fail_divergent(alpha, "the transformed density is unnormalizable on the tabulated range");
    }
    if (std::fabs(mass - 1.0) > 1e-6)
        fail_divergent(alpha, "the transformed density is unnormalizable on the tabulated range");

    return {std::move(out), std::move(map)};
}

DensityModel escort_uniformize(const DensityModel& rho) {
    const double anchor = std::clamp(0.0, rho.support.lo, rho.support.hi);
    double below = 0.0, above = 0.0;
    if (anchor > rho.support.lo)
        below = integrate(rho.pdf, Interval{rho.support.lo, anchor}).value;
    if (anchor < rho.support.hi)
        above = integrate(rho.pdf, Interval{anchor, rho.support.hi}).value;
    const double lo = -below, hi = above;
    DensityModel out;
    out.support = Interval{lo, hi};
    out.normalization_constant = 1.0;
    out.smooth = false;
    out.pdf = [lo, hi](double yy) { return (yy > lo && yy < hi) ? 1.0 : 0.0; };
    out.dpdf = [](double) { return 0.0; };
    return out;
}

}  // namespace frc
