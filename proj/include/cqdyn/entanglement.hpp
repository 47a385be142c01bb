#pragma once

#include <algorithm>

#include "cqdyn/density.hpp"

namespace cqdyn {

// sigma_y (x) sigma_y in the computational basis: antidiagonal (-1, 1, 1, -1).
inline const Matrix4& spin_flip_operator() {
    static const Matrix4 y = [] {
        Matrix4 m;
        m(0, 3) = -1.0;
        m(1, 2) = 1.0;
        m(2, 1) = 1.0;
        m(3, 0) = -1.0;
        return m;
    }();
    return y;
}

// Wootters concurrence. The usual lambda_i are the square roots of the
// eigenvalues of rho * rho_tilde with rho_tilde = Y rho* Y (conjugation in
// the computational basis). That product is not Hermitian, so we use the
// equivalent Hermitian form sqrt(rho) * rho_tilde * sqrt(rho), which has the
// same spectrum and keeps everything inside the Jacobi solver.
inline double concurrence(const DensityMatrix& rho, const Tolerances& t = tol()) {
    const Matrix4& y = spin_flip_operator();
    const Matrix4 tilde = y * conjugate(rho.matrix()) * y;
    const Matrix4 root = sqrt_psd(Hermitian4(rho.matrix(), t), t).matrix();
    const Matrix4 product = hermitize(root * tilde * root);

    const Spectrum spec = eig_hermitian(Hermitian4(product, t), t);
    const double floor = eigenvalue_noise_floor(product);
    std::array<double, 4> lambdas{};
    for (int k = 0; k < 4; ++k) {
        double ev = spec.eigenvalues[static_cast<std::size_t>(k)];
        if (ev < t.psd_clamp)
            throw NotPositiveSemidefiniteError("concurrence: eigenvalue " + std::to_string(ev) +
                                               " below tolerance");
        lambdas[static_cast<std::size_t>(k)] = std::sqrt(ev < floor ? 0.0 : ev);
    }
    std::sort(lambdas.begin(), lambdas.end(), std::greater<double>());
    const double c = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3];
    return std::clamp(c, 0.0, 1.0);
}

inline double purity(const DensityMatrix& rho) {
    const Complex tr = trace(rho.matrix() * rho.matrix());
    if (std::abs(tr.imag()) >= 1e-12)
        throw ValidationError("purity: trace has imaginary part");
    return tr.real();
}

// zeta = |rho_{00,11}|, and the Frobenius distance from rho to the
// equal-halves template built from rho's own corner coherence:
// diagonal (1/2, 0, 0, 1/2), corners of magnitude zeta with rho's phase.
// The distance is zero exactly when rho already has that form.
struct MemsMeasure {
    double zeta;
    double deviation;
};

inline MemsMeasure mems_measure(const DensityMatrix& rho) {
    const Complex corner = rho(0, 3);
    Matrix4 templ;
    templ(0, 0) = 0.5;
    templ(3, 3) = 0.5;
    templ(0, 3) = corner;
    templ(3, 0) = std::conj(corner);
    return MemsMeasure{std::abs(corner), frobenius_distance(rho.matrix(), templ)};
}

// Per-state bundle used by the time-series code.
struct EntanglementRecord {
    double concurrence;
    double purity;
    double zeta;
    double mems_deviation;
};

inline EntanglementRecord measure_entanglement(const DensityMatrix& rho) {
    EntanglementRecord r{};
    r.concurrence = concurrence(rho);
    r.purity = purity(rho);
    const MemsMeasure m = mems_measure(rho);
    r.zeta = m.zeta;
    r.mems_deviation = m.deviation;
    if (r.purity < 0.25 - 1e-9 || r.purity > 1.0 + 1e-9)
        throw ValidationError("measure_entanglement: purity out of range");
    if (r.zeta > 0.5 + 1e-9)
        throw ValidationError("measure_entanglement: zeta above 1/2");
    return r;
}

} // namespace cqdyn
