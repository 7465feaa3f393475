#pragma once

#include <numbers>
#include <vector>

#include "fsw/model.hpp"
#include "fsw/numerics.hpp"

namespace fsw {

// The zero defaults drive bisection all the way to machine resolution
// (~53 halvings). Residual-tolerance roots are not good enough downstream:
// the removable-singularity branch of the momentum amplitude divides by
// z - beta, which amplifies any leftover root error by ~1e8 right where the
// limit-sequence checks look.
struct SpectrumRequest {
    WellSpec well{};
    double tol_root = 0.0;  // on the pole-free eigenvalue function value
    double tol_d = 0.0;     // on the bracket width in d
    int max_iter = 200;
};

/// floor(gamma a / pi) + 1: one root per half-period window of d in (0, gamma a/2].
inline int count_bound_states(const WellSpec& well) {
    validate(well);
    return static_cast<int>(std::floor(gamma(well) * well.a / std::numbers::pi)) + 1;
}

/// Solves every bound state by bisection in d = beta a/2. The k-th root lives
/// in the window (k pi/2, (k+1) pi/2) clipped to (0, gamma a/2], even and odd
/// parity alternating. A root pinned to the top of the well (alpha -> 0) is
/// still reported, flagged near_threshold.
inline std::vector<BoundState> solve_all(const SpectrumRequest& req) {
    const WellSpec& well = req.well;
    validate(well);
    if (req.tol_root < 0.0 || req.tol_d < 0.0 || req.max_iter <= 0)
        throw std::domain_error("solve_all: tolerances must be non-negative, max_iter positive");

    constexpr double half_pi = std::numbers::pi / 2.0;
    const double cap = gamma(well) * well.a / 2.0;
    const int expected = count_bound_states(well);

    std::vector<BoundState> states;
    states.reserve(expected);
    for (int k = 0; k < expected; ++k) {
        const Parity parity = (k % 2 == 0) ? Parity::Even : Parity::Odd;
        const double lo = k * half_pi;
        const double hi = std::min((k + 1) * half_pi, cap);
        auto f = [&](double d) { return eigenvalue_residual(well, parity, d); };

        double root;
        if (!(lo < hi)) {
            root = cap;  // window collapsed: threshold root at the very top
        } else {
            const double flo = f(lo);
            const double fhi = f(hi);
            if (flo == 0.0) {
                root = lo;
            } else if (fhi == 0.0) {
                root = hi;
            } else if ((flo < 0.0) == (fhi < 0.0)) {
                // The count formula promises a root here; the only legitimate
                // way to lose the sign change is a threshold root squeezed
                // against d = cap.
                if (hi == cap && std::abs(fhi) <= 1e-9 * gamma(well)) {
                    root = cap;
                } else {
                    throw std::logic_error("solve_all: no sign change in expected bracket " +
                                           std::to_string(lo) + ".." + std::to_string(hi));
                }
            } else {
                root = find_root_bracketed(f, lo, hi, req.tol_d, req.tol_root, req.max_iter);
            }
        }
        states.push_back(detail::make_state_from_d(well, root, parity, k));
    }

    for (std::size_t i = 1; i < states.size(); ++i) {
        if (!(states[i].energy > states[i - 1].energy))
            throw std::logic_error("solve_all: energies failed to increase with n");
    }
    return states;
}

inline std::vector<BoundState> solve_all(const WellSpec& well) {
    return solve_all(SpectrumRequest{well});
}

inline IswState isw_state(int n, double a, UnitSystem units = {}) {
    validate(units);
    if (n < 1) throw std::domain_error("isw_state: quantum number n must be >= 1");
    if (!(a > 0.0)) throw std::domain_error("isw_state: width a must be positive");
    const double beta_n = n * std::numbers::pi / a;
    const double energy = units.hbar * units.hbar * beta_n * beta_n / (2.0 * units.mass);
    return IswState{n, a, units, beta_n, energy};
}

}  // namespace fsw
