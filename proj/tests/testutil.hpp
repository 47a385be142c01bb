#pragma once

#include <random>

#include "cqdyn/cqdyn.hpp"

namespace testutil {

using cqdyn::Complex;
using cqdyn::Matrix4;

inline Matrix4 random_matrix(std::mt19937& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    Matrix4 m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = Complex(u(rng), u(rng));
    return m;
}

inline cqdyn::Hermitian4 random_hermitian(std::mt19937& rng, double scale = 1.0) {
    return cqdyn::Hermitian4(cqdyn::hermitize(random_matrix(rng, scale)));
}

// A A^dagger normalized to unit trace: Hermitian, PSD, trace one.
inline cqdyn::DensityMatrix random_density(std::mt19937& rng) {
    const Matrix4 a = random_matrix(rng);
    Matrix4 p = a * cqdyn::adjoint(a);
    const double tr = cqdyn::trace(p).real();
    p = (1.0 / tr) * p;
    return cqdyn::DensityMatrix(cqdyn::hermitize(p));
}

// Random 2x2 special unitary exp(-i theta n.sigma).
struct Unitary2 {
    Complex u00, u01, u10, u11;
};

inline Unitary2 random_unitary2(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double nx = u(rng), ny = u(rng), nz = u(rng);
    const double n = std::sqrt(nx * nx + ny * ny + nz * nz);
    if (n == 0.0) return Unitary2{1.0, 0.0, 0.0, 1.0};
    nx /= n;
    ny /= n;
    nz /= n;
    std::uniform_real_distribution<double> th(0.0, 2.0 * std::numbers::pi);
    const double theta = th(rng);
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    // exp(-i theta/2 n.sigma) = c I - i s (n.sigma)
    return Unitary2{Complex(c, -s * nz), Complex(-s * ny, -s * nx), Complex(s * ny, -s * nx),
                    Complex(c, s * nz)};
}

inline Matrix4 kron2(const Unitary2& a, const Unitary2& b) {
    const Complex av[2][2] = {{a.u00, a.u01}, {a.u10, a.u11}};
    const Complex bv[2][2] = {{b.u00, b.u01}, {b.u10, b.u11}};
    Matrix4 m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = av[i][j] * bv[k][l];
    return m;
}

inline Matrix4 bell_phi_plus() {
    Matrix4 m;
    m(0, 0) = 0.5;
    m(0, 3) = 0.5;
    m(3, 0) = 0.5;
    m(3, 3) = 0.5;
    return m;
}

// Equal halves on |00>,|11> with corner coherence zeta.
inline Matrix4 equal_halves_state(double zeta) {
    Matrix4 m;
    m(0, 0) = 0.5;
    m(3, 3) = 0.5;
    m(0, 3) = zeta;
    m(3, 0) = zeta;
    return m;
}

inline Matrix4 werner_state(double p) {
    return p * bell_phi_plus() + (0.25 * (1.0 - p)) * Matrix4::identity();
}

} // namespace testutil
