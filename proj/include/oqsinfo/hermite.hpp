#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace oqsinfo {

struct OscillatorParams {
    double omega = 1.0;
};

inline void require_positive_omega(double omega) {
    if (!(omega > 0.0)) {
        throw std::invalid_argument("oscillator frequency must be positive");
    }
}

// Physicists' Hermite polynomial H_n(y) via the three-term recurrence
// H_{n+1} = 2y H_n - 2n H_{n-1}, H_0 = 1.
inline double hermite_poly(int n, double y) {
    if (n < 0) {
        throw std::invalid_argument("hermite order must be nonnegative");
    }
    double h_prev = 0.0;
    double h = 1.0;
    for (int k = 0; k < n; ++k) {
        const double h_next = 2.0 * y * h - 2.0 * k * h_prev;
        h_prev = h;
        h = h_next;
    }
    return h;
}

// Normalization factor (omega/pi)^{1/4} / sqrt(2^n n!), evaluated in log
// space so larger n stay finite.
inline double hermite_norm(int n, double omega) {
    const double log_fact = std::lgamma(static_cast<double>(n) + 1.0);
    return std::pow(omega / std::numbers::pi, 0.25) *
           std::exp(-0.5 * (n * std::numbers::ln2 + log_fact));
}

// Position-space eigenfunction phi_n(x) of a trap with frequency omega,
// real and L2-normalized.
inline double eigenfunction_x(int n, const OscillatorParams& params, double x) {
    require_positive_omega(params.omega);
    const double y = std::sqrt(params.omega) * x;
    return hermite_norm(n, params.omega) * hermite_poly(n, y) * std::exp(-0.5 * y * y);
}

// Real envelope of the momentum-space eigenfunction: phi_n evaluated with
// the inverted frequency 1/omega.  The full momentum eigenfunction is this
// envelope times the phase (-i)^n.
inline double eigenfunction_p_real(int n, const OscillatorParams& params, double p) {
    require_positive_omega(params.omega);
    return eigenfunction_x(n, OscillatorParams{1.0 / params.omega}, p);
}

// Momentum-space eigenfunction (-i)^n phi_n(p; 1/omega) under the unitary
// Fourier convention psi~(p) = (2 pi)^{-1/2} Int psi(x) e^{-ipx} dx.  The
// (-i)^n phase decides which part of the coherence drives the momentum
// density cross term, so it is not optional.
inline std::complex<double> eigenfunction_p(int n, const OscillatorParams& params, double p) {
    static constexpr std::complex<double> phase[4] = {
        {1.0, 0.0}, {0.0, -1.0}, {-1.0, 0.0}, {0.0, 1.0}};
    return phase[n % 4] * eigenfunction_p_real(n, params, p);
}

// Level energy E_n = omega (n + 1/2).
inline double energy(int n, const OscillatorParams& params) {
    require_positive_omega(params.omega);
    if (n < 0) {
        throw std::invalid_argument("level index must be nonnegative");
    }
    return params.omega * (n + 0.5);
}

}  // namespace oqsinfo
