#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace oqsinfo {

enum class Regime { PureDephasing, Relaxation };

struct BathParams {
    double gamma = 0.0;
    Regime regime = Regime::PureDephasing;
};

// Coefficients of the density operator truncated to the two lowest levels:
// rho10 is implied as the conjugate of rho01, so hermiticity is structural.
struct DensityMatrix2 {
    double rho00 = 0.0;
    double rho11 = 0.0;
    std::complex<double> rho01;

    double trace() const { return rho00 + rho11; }
};

inline void require_nonnegative_time(double t) {
    if (!(t >= 0.0)) {
        throw std::invalid_argument("time must be nonnegative");
    }
}

inline void require_nonnegative_gamma(double gamma) {
    if (!(gamma >= 0.0)) {
        throw std::invalid_argument("bath coupling must be nonnegative");
    }
}

// Equal superposition of the two levels: all four coefficients are 1/2.
inline DensityMatrix2 initial_state() {
    return {0.5, 0.5, {0.5, 0.0}};
}

// Pure dephasing: populations stay at 1/2, the coherence rotates at the
// level gap omega and decays at gamma/2 (equal level coupling rates).
inline DensityMatrix2 dephasing_coefficients(double t, double omega, const BathParams& bath) {
    require_nonnegative_time(t);
    require_nonnegative_gamma(bath.gamma);
    if (bath.regime != Regime::PureDephasing) {
        throw std::invalid_argument("dephasing coefficients need a pure-dephasing bath");
    }
    const double magnitude = 0.5 * std::exp(-0.5 * bath.gamma * t);
    const std::complex<double> phase(std::cos(omega * t), std::sin(omega * t));
    return {0.5, 0.5, magnitude * phase};
}

// Bath-induced transition rates with detailed balance: the downward 1->0
// rate is gamma, upward rates carry Boltzmann factors e^{-omega} per level
// of excitation, and the 1->2 rate matches the 0->1 one.
struct RelaxationRates {
    double g01 = 0.0;
    double g10 = 0.0;
    double g20 = 0.0;
    double g21 = 0.0;
};

inline RelaxationRates relaxation_rates(double gamma, double omega) {
    require_nonnegative_gamma(gamma);
    const double boltz = std::exp(-omega);
    return {gamma, gamma * boltz, gamma * boltz * boltz, gamma * boltz};
}

// Relaxation with separate frequencies for the coherence phase and for the
// detailed-balance rates.  The single-oscillator case uses the same
// frequency for both; the interacting two-particle model balances the bath
// at its interaction-shifted frequency while the phase keeps the bare gap.
inline DensityMatrix2 relaxation_coefficients(double t, double phase_omega, double rate_omega,
                                              const BathParams& bath) {
    require_nonnegative_time(t);
    require_nonnegative_gamma(bath.gamma);
    if (bath.regime != Regime::Relaxation) {
        throw std::invalid_argument("relaxation coefficients need a relaxation bath");
    }
    const RelaxationRates r = relaxation_rates(bath.gamma, rate_omega);
    const double decay = r.g01 + r.g10;
    // With zero coupling the populations are frozen at 1/2; the stationary
    // value is never reached and the formula below reduces to 1/2 exactly.
    const double rho_stat = decay > 0.0 ? r.g01 / decay : 0.5;
    const double rho00 = rho_stat + (0.5 - rho_stat) * std::exp(-decay * t);
    const double coherence_rate = 0.5 * (r.g10 + r.g20 + r.g01 + r.g21);
    const double magnitude = 0.5 * std::exp(-coherence_rate * t);
    const std::complex<double> phase(std::cos(phase_omega * t), std::sin(phase_omega * t));
    return {rho00, 1.0 - rho00, magnitude * phase};
}

inline DensityMatrix2 relaxation_coefficients(double t, double omega, const BathParams& bath) {
    return relaxation_coefficients(t, omega, omega, bath);
}

// Closed-form coefficients for either regime at the given level gap.
inline DensityMatrix2 coefficients_at(double t, double omega, const BathParams& bath) {
    if (bath.regime == Regime::PureDephasing) {
        return dephasing_coefficients(t, omega, bath);
    }
    return relaxation_coefficients(t, omega, bath);
}

// Fixed-step fourth-order Runge-Kutta integration of the coefficient ODEs:
//   dephasing:   d rho01 = (i omega - gamma/2) rho01, populations constant
//   relaxation:  d rho00 = g01 rho11 - g10 rho00,
//                d rho01 = (i omega - Gamma) rho01
// Used only as an independent check of the closed forms above.
inline DensityMatrix2 propagate_numeric(double t_end, double omega, const BathParams& bath,
                                        double dt) {
    require_nonnegative_time(t_end);
    require_nonnegative_gamma(bath.gamma);
    if (!(dt > 0.0)) {
        throw std::invalid_argument("step size must be positive");
    }

    double damp00 = 0.0;
    double feed00 = 0.0;
    double coherence_rate = 0.0;
    if (bath.regime == Regime::PureDephasing) {
        coherence_rate = 0.5 * bath.gamma;
    } else {
        const RelaxationRates r = relaxation_rates(bath.gamma, omega);
        damp00 = r.g10;
        feed00 = r.g01;
        coherence_rate = 0.5 * (r.g10 + r.g20 + r.g01 + r.g21);
    }

    // State vector y = (rho00, rho11, Re rho01, Im rho01).
    auto deriv = [&](const double y[4], double dy[4]) {
        dy[0] = feed00 * y[1] - damp00 * y[0];
        dy[1] = -dy[0];
        dy[2] = -omega * y[3] - coherence_rate * y[2];
        dy[3] = omega * y[2] - coherence_rate * y[3];
    };

    double y[4] = {0.5, 0.5, 0.5, 0.0};
    auto rk4_step = [&](double h) {
        double k1[4], k2[4], k3[4], k4[4], tmp[4];
        deriv(y, k1);
        for (int i = 0; i < 4; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
        deriv(tmp, k2);
        for (int i = 0; i < 4; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
        deriv(tmp, k3);
        for (int i = 0; i < 4; ++i) tmp[i] = y[i] + h * k3[i];
        deriv(tmp, k4);
        for (int i = 0; i < 4; ++i) {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    };

    const auto steps = static_cast<long long>(t_end / dt);
    for (long long s = 0; s < steps; ++s) {
        rk4_step(dt);
    }
    const double remainder = t_end - static_cast<double>(steps) * dt;
    if (remainder > 0.0) {
        rk4_step(remainder);
    }

    if (std::abs(y[0] + y[1] - 1.0) > 1e-9) {
        throw std::runtime_error("numeric propagation lost unit trace");
    }
    return {y[0], y[1], {y[2], y[3]}};
}

}  // namespace oqsinfo
