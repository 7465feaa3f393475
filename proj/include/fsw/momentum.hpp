#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "fsw/model.hpp"

namespace fsw {

enum class Branch { Regular, NearSingularLimit };

struct MomentumAmplitude {
    std::complex<double> value;
    Branch branch;
    double z;  // p / hbar
};

/// Half-width (in z = p/hbar) of the interval around |z| = beta inside which
/// the removable 0/0 of the analytic amplitude is evaluated by its Taylor
/// representation instead of naive division.
struct SingularityWindow {
    double delta;
};

inline SingularityWindow default_window(const BoundState& s) { return {1e-4 * s.beta}; }
inline SingularityWindow default_window(const IswState& s) { return {1e-4 * s.beta_n}; }

namespace detail {

/// Taylor data for num(z)/(z - beta) about z = beta, where num is the
/// parity-appropriate numerator of the closed-form amplitude:
///   even: -alpha cos(za/2) + z sin(za/2)
///   odd:   alpha sin(za/2) + z cos(za/2)
/// num(beta) = 0 by the eigenvalue condition, so
///   num(z)/(z - beta) = n1 + n2 u/2 + n3 u^2/6,  u = z - beta,
/// with n_k the k-th derivative of num at beta. Carrying the series to
/// second order keeps the stitch with the regular branch below ~1e-12 at
/// the default window edge.
///
/// The value n1/(2 beta) is the finite limit of num/(z^2 - beta^2):
///   even: [(alpha a + 2) sin d + 2 d cos d] / (4 beta)
///   odd:  [(alpha a + 2) cos d - 2 d sin d] / (4 beta)
/// The even form follows from differentiating numerator and denominator; a
/// commonly quoted variant flips the sign of its 2 d cos d term, which
/// disagrees with the two-sided limit sequence (see the momentum tests).
/// The odd form matches the usual printed expression.
struct SingularSeries {
    double n1, n2, n3;
};

inline SingularSeries singular_series(const BoundState& s) {
    const double c = s.well.a / 2.0;
    const double sd = std::sin(s.d);
    const double cd = std::cos(s.d);
    if (s.parity == Parity::Even) {
        return {(s.alpha * c + 1.0) * sd + s.beta * c * cd,
                (s.alpha * c + 2.0) * c * cd - s.beta * c * c * sd,
                -(s.alpha * c + 3.0) * c * c * sd - s.beta * c * c * c * cd};
    }
    return {(s.alpha * c + 1.0) * cd - s.beta * c * sd,
            -(s.alpha * c + 2.0) * c * sd - s.beta * c * c * cd,
            -(s.alpha * c + 3.0) * c * c * cd + s.beta * c * c * c * sd};
}

inline double series_eval(const SingularSeries& t, double u, double z_plus_beta) {
    return (t.n1 + 0.5 * t.n2 * u + t.n3 * u * u / 6.0) / z_plus_beta;
}

inline double regular_numerator(const BoundState& s, double z) {
    const double c = s.well.a / 2.0;
    return s.parity == Parity::Even ? -s.alpha * std::cos(z * c) + z * std::sin(z * c)
                                    : s.alpha * std::sin(z * c) + z * std::cos(z * c);
}

}  // namespace detail

/// Analytic momentum amplitude, total in p. Away from |z| = beta it is
///   even: 2 A gamma^2 cos d [-alpha cos(za/2) + z sin(za/2)]
///              / (sqrt(2 pi hbar) (z^2 + alpha^2)(z^2 - beta^2))
///   odd:  2i A gamma^2 sin d [ alpha sin(za/2) + z cos(za/2)]
///              / (sqrt(2 pi hbar) (z^2 + alpha^2)(z^2 - beta^2))
/// and near |z| = beta the removable factor num/(z^2 - beta^2) switches to
/// its Taylor representation. Even amplitudes are real and even in p, odd
/// amplitudes purely imaginary and odd, so phi(-p) = conj(phi(p)) always.
///
/// The overall sign is fixed by phi = phi_in + phi_out, i.e. by the direct
/// transform of psi as normalized here (A > 0). Published tables sometimes
/// carry the odd amplitude with the opposite global sign; |phi|^2 is
/// unaffected.
inline MomentumAmplitude phi(const BoundState& s, double p, const SingularityWindow& window) {
    const double hbar = s.well.units.hbar;
    const double z = p / hbar;
    const double az = std::abs(z);
    const double denom_sq = az * az + s.alpha * s.alpha;
    const double trig = s.parity == Parity::Even ? std::cos(s.d) : std::sin(s.d);
    const double pref = 2.0 * s.norm * s.well.gamma_squared() * trig /
                        (std::sqrt(2.0 * std::numbers::pi * hbar) * denom_sq);

    double factor;
    Branch branch;
    if (std::abs(az - s.beta) <= window.delta) {
        factor = detail::series_eval(detail::singular_series(s), az - s.beta, az + s.beta);
        branch = Branch::NearSingularLimit;
    } else {
        factor = detail::regular_numerator(s, az) / ((az - s.beta) * (az + s.beta));
        branch = Branch::Regular;
    }

    std::complex<double> value;
    if (s.parity == Parity::Even) {
        value = {pref * factor, 0.0};
    } else {
        const double sign = z < 0.0 ? -1.0 : 1.0;  // numerator is odd in z
        value = {0.0, sign * pref * factor};
    }
    return {value, branch, z};
}

inline MomentumAmplitude phi(const BoundState& s, double p) {
    return phi(s, p, default_window(s));
}

/// The single nonzero real component of phi: Re for even states, Im for odd.
inline double phi_component(const BoundState& s, double p) {
    const auto amp = phi(s, p);
    return s.parity == Parity::Even ? amp.value.real() : amp.value.imag();
}

/// Interior/exterior parts of the transform before the eigenvalue condition
/// is applied. Each part decays only like 1/p; their sum cancels down to the
/// 1/p^3 total amplitude, which is why phi() uses the combined form. Both
/// parts share the removable 0/0 at |z| = beta, so evaluation inside the
/// singular window is refused.
inline std::pair<std::complex<double>, std::complex<double>> phi_in_out(
    const BoundState& s, double p, const SingularityWindow& window) {
    const double hbar = s.well.units.hbar;
    const double z = p / hbar;
    if (std::abs(std::abs(z) - s.beta) <= window.delta)
        throw std::domain_error("phi_in_out: p lies in the singular window around hbar*beta; use phi()");
    const double c = s.well.a / 2.0;
    const double root = std::sqrt(2.0 * std::numbers::pi * hbar);
    const double sd = std::sin(s.d);
    const double cd = std::cos(s.d);
    const double szc = std::sin(z * c);
    const double czc = std::cos(z * c);
    const double in_den = root * (s.beta * s.beta - z * z);
    const double out_den = root * (z * z + s.alpha * s.alpha);
    if (s.parity == Parity::Even) {
        const std::complex<double> in{2.0 * s.norm * (s.beta * czc * sd - z * szc * cd) / in_den, 0.0};
        const std::complex<double> out{2.0 * s.norm * (s.alpha * czc - z * szc) * cd / out_den, 0.0};
        return {in, out};
    }
    const std::complex<double> in{0.0, 2.0 * s.norm * (s.beta * cd * szc - z * sd * czc) / in_den};
    const std::complex<double> out{0.0, -2.0 * s.norm * (s.alpha * szc + z * czc) * sd / out_den};
    return {in, out};
}

inline std::pair<std::complex<double>, std::complex<double>> phi_in_out(const BoundState& s,
                                                                        double p) {
    return phi_in_out(s, p, default_window(s));
}

/// Momentum distribution I(p) = |phi(p)|^2; non-negative and even in p.
inline double intensity(const BoundState& s, double p) {
    return std::norm(phi(s, p).value);
}

/// Coefficient C with lim sup p^6 I(p) = C:
///   C = [2 A gamma^2 (cos d or sin d) hbar^3]^2 / (2 pi hbar).
/// Quantifies the p^-6 fall-off of the distribution.
inline double asymptotic_envelope(const BoundState& s) {
    const double hbar = s.well.units.hbar;
    const double trig = s.parity == Parity::Even ? std::cos(s.d) : std::sin(s.d);
    const double num = 2.0 * s.norm * s.well.gamma_squared() * trig * hbar * hbar * hbar;
    return num * num / (2.0 * std::numbers::pi * hbar);
}

/// Box momentum amplitude: the transform of the box eigenfunction,
///   phi_n(p) = K_n f(za/2) / (beta_n^2 - z^2),  K_n = 2 sqrt(2/a) beta_n / sqrt(2 pi hbar),
/// with f = cos for odd n (real amplitude) and f = sin for even n (purely
/// imaginary). |K_n|^2/(a^2 hbar^2)^2 reproduces the familiar closed form
/// with |N_n| = sqrt(4 a n^2 pi hbar^3); the per-state phase here is the one
/// the direct transform of the positive-normalized psi_n produces, so the
/// n = 1 amplitude is positive at p = 0. The apparent divergence at
/// |p| = n pi hbar / a is removable: I there limits to a/(4 pi hbar).
inline MomentumAmplitude isw_phi(const IswState& s, double p, const SingularityWindow& window) {
    const double hbar = s.units.hbar;
    const double z = p / hbar;
    const double az = std::abs(z);
    const double c = s.a / 2.0;
    const bool cosine = (s.n % 2 == 1);
    const double pref = 2.0 * std::sqrt(2.0 / s.a) * s.beta_n /
                        std::sqrt(2.0 * std::numbers::pi * hbar);

    double factor;
    Branch branch;
    if (std::abs(az - s.beta_n) <= window.delta) {
        // f(az c)/(beta^2 - z^2) = -(f1 + f3 u^2/6)/(az + beta), u = az - beta;
        // the middle derivative vanishes because f'' is proportional to f.
        const double u = az - s.beta_n;
        double f1, f3;
        if (cosine) {
            const double sgn = (s.n % 4 == 1) ? 1.0 : -1.0;  // sin(n pi/2), n odd
            f1 = -c * sgn;
            f3 = c * c * c * sgn;
        } else {
            const double sgn = (s.n % 4 == 0) ? 1.0 : -1.0;  // cos(n pi/2), n even
            f1 = c * sgn;
            f3 = -c * c * c * sgn;
        }
        factor = -(f1 + f3 * u * u / 6.0) / (az + s.beta_n);
        branch = Branch::NearSingularLimit;
    } else {
        const double f = cosine ? std::cos(az * c) : std::sin(az * c);
        factor = f / ((s.beta_n - az) * (s.beta_n + az));
        branch = Branch::Regular;
    }

    std::complex<double> value;
    if (cosine) {
        value = {pref * factor, 0.0};
    } else {
        const double sign = z < 0.0 ? -1.0 : 1.0;
        value = {0.0, sign * pref * factor};
    }
    return {value, branch, z};
}

inline MomentumAmplitude isw_phi(const IswState& s, double p) {
    return isw_phi(s, p, default_window(s));
}

inline double isw_intensity(const IswState& s, double p) {
    return std::norm(isw_phi(s, p).value);
}

/// Coefficient C with lim sup p^4 I(p) = C for the box distribution
/// (p^-4 fall-off): C = [2 sqrt(2/a) beta_n hbar^2]^2 / (2 pi hbar).
inline double isw_asymptotic_envelope(const IswState& s) {
    const double hbar = s.units.hbar;
    const double num = 2.0 * std::sqrt(2.0 / s.a) * s.beta_n * hbar * hbar;
    return num * num / (2.0 * std::numbers::pi * hbar);
}

}  // namespace fsw
