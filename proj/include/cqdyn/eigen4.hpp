#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "cqdyn/matrix4.hpp"

namespace cqdyn {

// Eigendecomposition of a Hermitian 4x4. Eigenvalues ascending; column k of
// `eigenvectors` pairs with eigenvalues[k]. Phase convention: in each column
// the entry of largest magnitude is real and positive (ties -> lowest index),
// so identical input bits give identical output bits.
struct Spectrum {
    std::array<double, 4> eigenvalues{};
    Matrix4 eigenvectors;
};

namespace detail {

inline double offdiagonal_norm(const Matrix4& a) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// Frobenius norm of A - (tr A / 4) I. Used as the convergence scale so that
// H and H + cI run through bit-identical rotation sequences.
inline double traceless_norm(const Matrix4& a) {
    const Complex shift = trace(a) / 4.0;
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s += std::norm(i == j ? a(i, j) - shift : a(i, j));
    return std::sqrt(s);
}

} // namespace detail

// Cyclic complex Jacobi rotations. For a 4x4 Hermitian matrix this converges
// quadratically; the sweep cap exists only to turn a logic error into a
// diagnosable failure instead of a hang.
inline Spectrum eig_hermitian(const Hermitian4& h, const Tolerances& t = tol()) {
    Matrix4 a = h.matrix();
    Matrix4 v = Matrix4::identity();

    // Scale on the traceless part so H and H + cI take identical rotation
    // paths; the rounding floor keeps near-scalar matrices from spinning.
    const double scale = detail::traceless_norm(a);
    const double rounding_floor = 8.0 * std::numeric_limits<double>::epsilon() * frobenius_norm(a);
    const double threshold = std::max(t.jacobi_rel_offdiag * scale, rounding_floor);

    int sweep = 0;
    while (detail::offdiagonal_norm(a) > threshold) {
        if (++sweep > t.jacobi_max_sweeps)
            throw NonConvergenceError("eig_hermitian: off-diagonal norm did not converge");
        for (int p = 0; p < 4; ++p) {
            for (int q = p + 1; q < 4; ++q) {
                const Complex apq = a(p, q);
                const double abs_apq = std::abs(apq);
                if (abs_apq == 0.0) continue;

                // Rotation angle from the 2x2 subproblem; phase carries apq's argument.
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double cot2 = (app - aqq) / (2.0 * abs_apq);
                const double tan_theta =
                    (cot2 >= 0.0 ? 1.0 : -1.0) / (std::abs(cot2) + std::sqrt(1.0 + cot2 * cot2));
                const double c = 1.0 / std::sqrt(1.0 + tan_theta * tan_theta);
                const double s = tan_theta * c;
                const Complex phase = apq / abs_apq;

                // Columns: [col_p, col_q] <- [c*col_p + s*conj(phase)*col_q,
                //                             -s*phase*col_p + c*col_q]
                for (int i = 0; i < 4; ++i) {
                    const Complex aip = a(i, p);
                    const Complex aiq = a(i, q);
                    a(i, p) = c * aip + s * std::conj(phase) * aiq;
                    a(i, q) = -s * phase * aip + c * aiq;
                }
                // Rows (conjugate transform).
                for (int j = 0; j < 4; ++j) {
                    const Complex apj = a(p, j);
                    const Complex aqj = a(q, j);
                    a(p, j) = c * apj + s * phase * aqj;
                    a(q, j) = -s * std::conj(phase) * apj + c * aqj;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = Complex(a(p, p).real(), 0.0);
                a(q, q) = Complex(a(q, q).real(), 0.0);

                for (int i = 0; i < 4; ++i) {
                    const Complex vip = v(i, p);
                    const Complex viq = v(i, q);
                    v(i, p) = c * vip + s * std::conj(phase) * viq;
                    v(i, q) = -s * phase * vip + c * viq;
                }
            }
        }
    }

    // Ascending eigenvalue order, stable under ties.
    std::array<int, 4> order{0, 1, 2, 3};
    std::stable_sort(order.begin(), order.end(),
                     [&a](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    Spectrum spec;
    for (int k = 0; k < 4; ++k) {
        const int src = order[k];
        spec.eigenvalues[static_cast<std::size_t>(k)] = a(src, src).real();
        for (int i = 0; i < 4; ++i) spec.eigenvectors(i, k) = v(i, src);
    }

    // Fix each column's global phase: largest-magnitude entry real positive.
    for (int k = 0; k < 4; ++k) {
        int imax = 0;
        double best = -1.0;
        for (int i = 0; i < 4; ++i) {
            const double m = std::abs(spec.eigenvectors(i, k));
            if (m > best) {
                best = m;
                imax = i;
            }
        }
        const Complex pivot = spec.eigenvectors(imax, k);
        if (best > 0.0) {
            const Complex rot = std::conj(pivot) / best;
            for (int i = 0; i < 4; ++i) spec.eigenvectors(i, k) *= rot;
            spec.eigenvectors(imax, k) = Complex(std::abs(spec.eigenvectors(imax, k)), 0.0);
        }
    }

    // Self-check, scaled so that large-norm inputs are judged fairly.
    const Matrix4& u = spec.eigenvectors;
    const Matrix4 gram = adjoint(u) * u;
    if (frobenius_distance(gram, Matrix4::identity()) > t.spectrum_orthonormality * 4.0)
        throw NonConvergenceError("eig_hermitian: eigenvector matrix not orthonormal");
    Matrix4 lam;
    for (int k = 0; k < 4; ++k) lam(k, k) = spec.eigenvalues[static_cast<std::size_t>(k)];
    const Matrix4 recon = u * lam * adjoint(u);
    const double rel = std::max(1.0, frobenius_norm(h.matrix()));
    if (frobenius_distance(recon, h.matrix()) > t.spectrum_reconstruction * rel)
        throw NonConvergenceError("eig_hermitian: reconstruction residual too large");

    return spec;
}

// Eigenvalues this close to zero are roundoff of an exact zero; taking their
// square root would amplify the noise from ~1e-16 to ~1e-8.
inline double eigenvalue_noise_floor(const Matrix4& m) {
    return 512.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, frobenius_norm(m));
}

// Positive-semidefinite square root. Eigenvalues in [psd_clamp, noise floor)
// are treated as exact zeros; anything below psd_clamp raises.
inline Hermitian4 sqrt_psd(const Hermitian4& m, const Tolerances& t = tol()) {
    const Spectrum spec = eig_hermitian(m, t);
    const double floor = eigenvalue_noise_floor(m.matrix());
    Matrix4 root;
    for (int k = 0; k < 4; ++k) {
        double lambda = spec.eigenvalues[static_cast<std::size_t>(k)];
        if (lambda < t.psd_clamp)
            throw NotPositiveSemidefiniteError("sqrt_psd: eigenvalue " + std::to_string(lambda) +
                                               " below tolerance");
        if (lambda < floor) lambda = 0.0;
        root(k, k) = std::sqrt(lambda);
    }
    const Matrix4 r = spec.eigenvectors * root * adjoint(spec.eigenvectors);
    return Hermitian4(hermitize(r), t);
}

} // namespace cqdyn
