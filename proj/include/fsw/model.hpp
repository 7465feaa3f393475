#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace fsw {

/// Unit constants carried explicitly so every formula keeps its m and hbar
/// factors. The defaults encode the 2m = 1, hbar = 1 convention used for
/// all reference datasets; SI-style values work equally well.
struct UnitSystem {
    double mass = 0.5;
    double hbar = 1.0;
};

inline void validate(const UnitSystem& u) {
    if (!(u.mass > 0.0) || !(u.hbar > 0.0))
        throw std::domain_error("UnitSystem: mass and hbar must be positive");
}

/// Square well: V(x) = 0 for |x| < a/2 and V(x) = v0 outside.
struct WellSpec {
    double v0 = 10.0;
    double a = 2.0;
    UnitSystem units{};

    /// gamma^2 = 2 m v0 / hbar^2; alpha^2 + beta^2 = gamma^2 for every bound state.
    double gamma_squared() const { return 2.0 * units.mass * v0 / (units.hbar * units.hbar); }
};

inline void validate(const WellSpec& w) {
    validate(w.units);
    if (!(w.v0 > 0.0)) throw std::domain_error("WellSpec: v0 must be positive");
    if (!(w.a > 0.0)) throw std::domain_error("WellSpec: a must be positive");
}

inline double gamma(const WellSpec& w) { return std::sqrt(w.gamma_squared()); }

enum class Parity { Even, Odd };

inline const char* to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

/// Pole-free eigenvalue functions in the dimensionless variable d = beta a/2:
///   even: beta sin d - alpha cos d      (same zeros as tan d =  alpha/beta)
///   odd:  alpha sin d + beta cos d      (same zeros as tan d = -beta/alpha)
/// both stay finite where the tan forms blow up.
inline double eigenvalue_residual(const WellSpec& w, Parity parity, double d) {
    const double beta = 2.0 * d / w.a;
    const double alpha = std::sqrt(std::max(w.gamma_squared() - beta * beta, 0.0));
    return parity == Parity::Even ? beta * std::sin(d) - alpha * std::cos(d)
                                  : alpha * std::sin(d) + beta * std::cos(d);
}

/// One solved eigenstate with all derived wavenumbers. Immutable after
/// construction. States are indexed by energy, parity alternating from
/// Even at n = 0.
struct BoundState {
    Parity parity;
    int n;
    double energy;
    double alpha;  // decay wavenumber outside the well
    double beta;   // oscillation wavenumber inside the well
    double d;      // beta a / 2
    double norm;   // normalization constant A_e or A_o
    WellSpec well;
    bool near_threshold = false;  // d within 1e-9 of gamma a/2; alpha clamped
};

namespace detail {

inline double normalization_constant(Parity parity, double alpha, double beta, double d, double a) {
    const double c2d = std::cos(2.0 * d);
    const double s2d = std::sin(2.0 * d);
    const double bracket = parity == Parity::Even
                               ? (1.0 + c2d) / alpha + s2d / beta + a
                               : (1.0 - c2d) / alpha - s2d / beta + a;
    return std::sqrt(2.0 / bracket);
}

/// Assembles a BoundState from the dimensionless root d. alpha is clamped to
/// 1e-300 for threshold states (d at the very top of the well) because the
/// normalization divides by it.
inline BoundState make_state_from_d(const WellSpec& well, double d, Parity parity, int n) {
    const double cap = gamma(well) * well.a / 2.0;
    const double beta = 2.0 * d / well.a;
    double alpha = std::sqrt(std::max(well.gamma_squared() - beta * beta, 0.0));
    const bool threshold = (cap - d) <= 1e-9;
    if (alpha < 1e-300) alpha = 1e-300;
    const double hbar = well.units.hbar;
    const double energy = hbar * hbar * beta * beta / (2.0 * well.units.mass);
    const double norm = normalization_constant(parity, alpha, beta, d, well.a);
    return BoundState{parity, n, energy, alpha, beta, d, norm, well, threshold};
}

}  // namespace detail

/// Builds the derived per-state quantities for a caller-supplied eigenvalue.
/// The energy must satisfy the parity-appropriate eigenvalue condition to
/// within consistency_tol (relative to gamma); anything else is rejected as
/// a non-eigenvalue.
inline BoundState derive_state_quantities(const WellSpec& well, double energy, Parity parity,
                                          int n, double consistency_tol = 1e-3) {
    validate(well);
    if (n < 0) throw std::domain_error("derive_state_quantities: state index must be non-negative");
    if (!(energy > 0.0) || !(energy < well.v0))
        throw std::domain_error("derive_state_quantities: energy must lie strictly inside (0, v0)");
    const double hbar = well.units.hbar;
    const double beta = std::sqrt(2.0 * well.units.mass * energy) / hbar;
    const double d = beta * well.a / 2.0;
    const double resid = eigenvalue_residual(well, parity, d);
    if (std::abs(resid) > consistency_tol * gamma(well))
        throw std::invalid_argument("derive_state_quantities: energy is not an eigenvalue of the requested parity (residual " +
                                    std::to_string(resid) + ")");
    return detail::make_state_from_d(well, d, parity, n);
}

/// Rigid-wall box state: psi vanishes at x = +-a/2, forcing beta_n = n pi / a
/// and E_n = hbar^2 beta_n^2 / (2m). n is 1-based; odd n are even-parity
/// (cosine) states, even n odd-parity (sine) states.
struct IswState {
    int n;
    double a;
    UnitSystem units{};
    double beta_n;
    double energy;
};

}  // namespace fsw
