#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fsw {

struct bracket_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct convergence_error : std::runtime_error {
    convergence_error(const std::string& msg, double best)
        : std::runtime_error(msg), best_estimate(best) {}
    double best_estimate;
};

/// Bisection on a bracketing interval. Terminates when |f| <= tol_f or the
/// bracket width reaches tol_x (or the midpoint is no longer representable
/// between the endpoints). Guaranteed to converge; max_iter = 200 covers the
/// ~53 halvings needed to reach machine resolution with a wide margin.
template <class F>
double find_root_bracketed(F&& f, double lo, double hi, double tol_x = 1e-14,
                           double tol_f = 1e-12, int max_iter = 200) {
    if (!(lo < hi)) throw std::invalid_argument("find_root_bracketed: requires lo < hi");
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0))
        throw bracket_error("find_root_bracketed: no sign change on [" + std::to_string(lo) +
                            ", " + std::to_string(hi) + "]");
    for (int it = 0; it < max_iter; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) return mid;  // bracket at machine spacing
        const double fm = f(mid);
        if (std::abs(fm) <= tol_f) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (hi - lo <= tol_x) return 0.5 * (lo + hi);
    }
    throw convergence_error("find_root_bracketed: max_iter exceeded on bracket [" +
                                std::to_string(lo) + ", " + std::to_string(hi) + "]",
                            0.5 * (lo + hi));
}

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    int panels = 0;
    bool converged = false;
};

namespace detail {

// Gauss 7 / Kronrod 15 pair on [-1, 1]; odd-indexed Kronrod nodes are the
// Gauss points.
inline constexpr double kKronrodNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double kGaussWeights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
    double lo, hi, value, error, resabs;
    // error at the rounding floor of the panel: refining cannot improve it
    bool saturated() const { return error <= 50.0 * 2.220446049250313e-16 * resabs; }
};

template <class F>
Panel eval_panel(F& f, double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(mid);
    double resk = kKronrodWeights[7] * fc;
    double resg = kGaussWeights[3] * fc;
    double resabs = kKronrodWeights[7] * std::abs(fc);
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kKronrodNodes[i];
        const double fa = f(mid - dx);
        const double fb = f(mid + dx);
        resk += kKronrodWeights[i] * (fa + fb);
        resabs += kKronrodWeights[i] * (std::abs(fa) + std::abs(fb));
        if (i % 2 == 1) resg += kGaussWeights[i / 2] * (fa + fb);
    }
    return Panel{lo, hi, resk * half, std::abs(resk - resg) * half, resabs * half};
}

struct PanelWorse {
    bool operator()(const Panel& a, const Panel& b) const {
        if (a.error != b.error) return a.error < b.error;
        return a.lo > b.lo;  // deterministic tie-break: leftmost first
    }
};

struct KahanAccumulator {
    double sum = 0.0, c = 0.0;
    void add(double x) {
        const double y = x - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

}  // namespace detail

/// Adaptive Gauss-Kronrod quadrature. Initial panel seams are placed at the
/// supplied breakpoints so that no panel ever straddles one (subdivision only
/// bisects within a panel); refinement always splits the current worst panel.
/// The final value and error estimate are accumulated in interval order with
/// compensated summation, which makes the result independent of refinement
/// history and bit-reproducible. A non-converged result is reported as such,
/// never silently.
template <class F>
QuadratureResult integrate(F&& f, double lo, double hi, double tol = 1e-10,
                           std::span<const double> breakpoints = {}, int max_panels = 20000) {
    if (!(lo < hi)) throw std::invalid_argument("integrate: requires lo < hi");
    if (!(tol > 0.0)) throw std::invalid_argument("integrate: requires tol > 0");

    std::vector<double> seams;
    seams.push_back(lo);
    {
        std::vector<double> inner(breakpoints.begin(), breakpoints.end());
        std::sort(inner.begin(), inner.end());
        for (double b : inner)
            if (b > lo && b < hi && b > seams.back()) seams.push_back(b);
    }
    seams.push_back(hi);

    std::priority_queue<detail::Panel, std::vector<detail::Panel>, detail::PanelWorse> active;
    std::vector<detail::Panel> finished;  // panels too narrow to split further
    double err_sum = 0.0;
    int count = 0;
    for (std::size_t i = 0; i + 1 < seams.size(); ++i) {
        auto p = detail::eval_panel(f, seams[i], seams[i + 1]);
        err_sum += p.error;
        ++count;
        active.push(p);
    }

    while (err_sum > tol && count < max_panels && !active.empty()) {
        detail::Panel worst = active.top();
        active.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (worst.saturated() || mid <= worst.lo || mid >= worst.hi) {
            finished.push_back(worst);  // refining cannot improve this panel
            continue;
        }
        auto left = detail::eval_panel(f, worst.lo, mid);
        auto right = detail::eval_panel(f, mid, worst.hi);
        err_sum += left.error + right.error - worst.error;
        ++count;
        active.push(left);
        active.push(right);
    }

    while (!active.empty()) {
        finished.push_back(active.top());
        active.pop();
    }
    std::sort(finished.begin(), finished.end(),
              [](const detail::Panel& a, const detail::Panel& b) { return a.lo < b.lo; });

    detail::KahanAccumulator value, error;
    for (const auto& p : finished) {
        value.add(p.value);
        error.add(p.error);
    }
    QuadratureResult out;
    out.value = value.sum;
    out.abs_error_estimate = error.sum;
    out.panels = static_cast<int>(finished.size());
    out.converged = out.abs_error_estimate <= tol;
    return out;
}

struct LinearFit {
    double intercept = 0.0;
    double slope = 0.0;
    double r_squared = 0.0;
};

/// Ordinary least squares y = intercept + slope x.
inline LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("linear_fit: need two equally sized samples of length >= 2");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw std::invalid_argument("linear_fit: degenerate abscissae");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss_res += r * r;
    }
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return fit;
}

}  // namespace fsw
