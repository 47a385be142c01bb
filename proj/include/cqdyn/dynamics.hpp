#pragma once

#include <cmath>
#include <vector>

#include "cqdyn/density.hpp"

namespace cqdyn {

// Precomputed ingredients for closed-form evolution: the spectrum of H and
// the initial state rotated into H's eigenbasis. Immutable; one plan serves
// any number of evaluation times, from any number of threads.
struct EvolutionPlan {
    Spectrum spectrum;
    DensityMatrix rho0;
    DensityMatrix rho0_eigenbasis;
    double gamma = 0.0;

    static EvolutionPlan create(const Hermitian4& h, const DensityMatrix& rho0, double gamma) {
        if (gamma < 0.0) throw ValidationError("EvolutionPlan: gamma must be >= 0");
        Spectrum spec = eig_hermitian(h);
        const Matrix4& u = spec.eigenvectors;
        const Matrix4 rotated = adjoint(u) * rho0.matrix() * u;
        return EvolutionPlan{std::move(spec), rho0, DensityMatrix(hermitize(rotated)), gamma};
    }
};

// Exact solution of the dephasing master equation
//   d(rho)/dt = -i [H, rho] - (gamma/2) [H, [H, rho]]
// In the eigenbasis each element just picks up a phase and a Gaussian-in-gap
// envelope:  rho_kl(t) = rho_kl(0) * exp(-i w_kl t - gamma w_kl^2 t / 2),
// w_kl = E_k - E_l. Gaps are formed before exponentiating, so H and H + cI
// give the same state to machine accuracy.
inline DensityMatrix evolve_closed_form(const EvolutionPlan& plan, double t) {
    if (t < 0.0) throw NegativeTimeError("evolve_closed_form: t must be >= 0");
    if (t == 0.0) return plan.rho0;
    const auto& ev = plan.spectrum.eigenvalues;
    Matrix4 x;
    for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 4; ++l) {
            const double w = ev[static_cast<std::size_t>(k)] - ev[static_cast<std::size_t>(l)];
            const double envelope = std::exp(-0.5 * plan.gamma * w * w * t);
            const Complex phase = std::polar(envelope, -w * t);
            x(k, l) = plan.rho0_eigenbasis(k, l) * phase;
        }
    }
    const Matrix4& u = plan.spectrum.eigenvectors;
    return DensityMatrix(hermitize(u * x * adjoint(u)));
}

namespace detail {

// log(m!) for m = 0..n, by accumulation.
inline std::vector<double> log_factorials(int n) {
    std::vector<double> lf(static_cast<std::size_t>(n) + 1, 0.0);
    for (int m = 1; m <= n; ++m)
        lf[static_cast<std::size_t>(m)] = lf[static_cast<std::size_t>(m) - 1] + std::log(m);
    return lf;
}

} // namespace detail

// Upper bound on the Poisson tail sum_{m > m_max} e^-x x^m / m!. Once the
// mean x sits below the cutoff the terms decay at least geometrically, so
// the first omitted term over (1 - ratio) bounds the rest.
inline double poisson_tail_bound(double x, int m_max) {
    if (x < 0.0 || m_max < 0) throw ValidationError("poisson_tail_bound: bad arguments");
    if (x == 0.0) return 0.0;
    if (x >= static_cast<double>(m_max) + 2.0) return 1.0;
    const double ratio = x / (static_cast<double>(m_max) + 2.0);
    double log_fact = 0.0;
    for (int m = 1; m <= m_max + 1; ++m) log_fact += std::log(m);
    const double log_term = -x + (static_cast<double>(m_max) + 1.0) * std::log(x) - log_fact;
    return std::exp(log_term) / (1.0 - ratio);
}

// Smallest m_max whose tail bound at x stays below tail_tol.
inline int kraus_order_for(double x, double tail_tol, int hard_cap = 100000) {
    for (int m = 0; m <= hard_cap; ++m)
        if (poisson_tail_bound(x, m) < tail_tol) return m;
    throw TruncationError("kraus_order_for: no order below the cap reaches the tolerance");
}

namespace detail {

// Truncated Kraus sum, unvalidated. In the eigenbasis the m-th term scales
// element (k,l) by (gamma t E_k E_l)^m / m! under the shared envelope
// exp(-gamma t (E_k^2 + E_l^2)/2); both factors blow up for energies of
// typical magnitude, so each term is assembled in log space.
inline Matrix4 kraus_truncated(const Hermitian4& h, const DensityMatrix& rho0, double gamma,
                               double t, int m_max) {
    const Spectrum spec = eig_hermitian(h);
    const Matrix4& u = spec.eigenvectors;
    const Matrix4 rho0_eig = hermitize(adjoint(u) * rho0.matrix() * u);
    const auto& ev = spec.eigenvalues;

    const std::vector<double> lf = log_factorials(m_max);
    Matrix4 x;
    for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 4; ++l) {
            const double ek = ev[static_cast<std::size_t>(k)];
            const double el = ev[static_cast<std::size_t>(l)];
            const double z = gamma * t * ek * el;
            const double log_envelope = -0.5 * gamma * t * (ek * ek + el * el);
            double series = 0.0;
            if (z == 0.0) {
                series = std::exp(log_envelope);
            } else {
                const double log_abs_z = std::log(std::abs(z));
                double sign = 1.0;
                for (int m = 0; m <= m_max; ++m) {
                    series += sign * std::exp(log_envelope + m * log_abs_z -
                                              lf[static_cast<std::size_t>(m)]);
                    if (z < 0.0) sign = -sign;
                }
            }
            const Complex phase = std::polar(1.0, -(ek - el) * t);
            x(k, l) = rho0_eig(k, l) * series * phase;
        }
    }
    return u * x * adjoint(u);
}

} // namespace detail

// Kraus-operator solution truncated at m_max terms. The omitted mass is
// bounded by the Poisson tail at x = gamma * t * max_k E_k^2; if that bound
// is not below tail_tol the truncation is refused rather than silently
// returning a trace-deficient state.
inline DensityMatrix evolve_kraus(const Hermitian4& h, const DensityMatrix& rho0, double gamma,
                                  double t, int m_max = 40,
                                  double tail_tol = tol().kraus_tail) {
    if (t < 0.0) throw NegativeTimeError("evolve_kraus: t must be >= 0");
    if (m_max < 0) throw ValidationError("evolve_kraus: m_max must be >= 0");
    if (gamma < 0.0) throw ValidationError("evolve_kraus: gamma must be >= 0");
    if (t == 0.0) return rho0;

    const Spectrum spec = eig_hermitian(h);
    double emax2 = 0.0;
    for (double e : spec.eigenvalues) emax2 = std::max(emax2, e * e);
    const double x = gamma * t * emax2;
    const double tail = poisson_tail_bound(x, m_max);
    if (!(tail < tail_tol))
        throw TruncationError("evolve_kraus: Poisson tail bound " + std::to_string(tail) +
                              " at m_max=" + std::to_string(m_max) + " exceeds tolerance");

    return DensityMatrix(hermitize(detail::kraus_truncated(h, rho0, gamma, t, m_max)));
}

// Fixed-step classical RK4 on the master equation, final partial step
// shortened to land exactly on t. The state is re-hermitized after every
// step. Deliberately independent of the spectral route: no eigensolve.
inline DensityMatrix evolve_rk4(const Hermitian4& h, const DensityMatrix& rho0, double gamma,
                                double t, double dt) {
    if (t < 0.0) throw NegativeTimeError("evolve_rk4: t must be >= 0");
    if (gamma < 0.0) throw ValidationError("evolve_rk4: gamma must be >= 0");
    if (t == 0.0) return rho0;
    if (!(dt > 0.0) || dt > t) throw ValidationError("evolve_rk4: need 0 < dt <= t");
    if (dt * frobenius_norm(h.matrix()) > tol().rk4_step_limit)
        throw StepTooLargeError("evolve_rk4: dt * ||H|| exceeds stability guard");

    const Matrix4& hm = h.matrix();
    const auto rhs = [&hm, gamma](const Matrix4& rho) {
        const Matrix4 c1 = commutator(hm, rho);
        Matrix4 out = Complex(0.0, -1.0) * c1;
        if (gamma != 0.0) {
            const Matrix4 c2 = commutator(hm, c1);
            out = out - (0.5 * gamma) * c2;
        }
        return out;
    };

    Matrix4 rho = rho0.matrix();
    const auto n_full = static_cast<long long>(std::floor(t / dt));
    double reached = 0.0;
    for (long long i = 0; i <= n_full; ++i) {
        const double target =
            (i == n_full) ? t : std::min((static_cast<double>(i) + 1.0) * dt, t);
        const double step = target - reached;
        if (step <= 0.0) continue;
        const Matrix4 k1 = rhs(rho);
        const Matrix4 k2 = rhs(rho + (0.5 * step) * k1);
        const Matrix4 k3 = rhs(rho + (0.5 * step) * k2);
        const Matrix4 k4 = rhs(rho + step * k3);
        rho = rho + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        rho = hermitize(rho);
        reached = target;
    }
    return DensityMatrix(rho);
}

} // namespace cqdyn
