#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "cqdyn/errors.hpp"
#include "cqdyn/tolerances.hpp"

namespace cqdyn {

using Complex = std::complex<double>;

// Dense 4x4 complex matrix with value semantics. Row-major storage.
struct Matrix4 {
    std::array<Complex, 16> e{};

    Complex& operator()(int r, int c) { return e[static_cast<std::size_t>(4 * r + c)]; }
    const Complex& operator()(int r, int c) const { return e[static_cast<std::size_t>(4 * r + c)]; }

    static Matrix4 zero() { return Matrix4{}; }

    static Matrix4 identity() {
        Matrix4 m;
        for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
        return m;
    }

    static Matrix4 diagonal(double d0, double d1, double d2, double d3) {
        Matrix4 m;
        m(0, 0) = d0;
        m(1, 1) = d1;
        m(2, 2) = d2;
        m(3, 3) = d3;
        return m;
    }

    bool is_finite() const {
        for (const Complex& z : e) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        }
        return true;
    }
};

inline Matrix4 operator+(const Matrix4& a, const Matrix4& b) {
    Matrix4 r;
    for (std::size_t i = 0; i < 16; ++i) r.e[i] = a.e[i] + b.e[i];
    return r;
}

inline Matrix4 operator-(const Matrix4& a, const Matrix4& b) {
    Matrix4 r;
    for (std::size_t i = 0; i < 16; ++i) r.e[i] = a.e[i] - b.e[i];
    return r;
}

inline Matrix4 operator*(Complex s, const Matrix4& a) {
    Matrix4 r;
    for (std::size_t i = 0; i < 16; ++i) r.e[i] = s * a.e[i];
    return r;
}

inline Matrix4 operator*(double s, const Matrix4& a) { return Complex(s, 0.0) * a; }

inline Matrix4 operator*(const Matrix4& a, const Matrix4& b) {
    Matrix4 r;
    for (int i = 0; i < 4; ++i) {
        for (int k = 0; k < 4; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex(0.0, 0.0)) continue;
            for (int j = 0; j < 4; ++j) r(i, j) += aik * b(k, j);
        }
    }
    return r;
}

inline Matrix4 adjoint(const Matrix4& a) {
    Matrix4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r(i, j) = std::conj(a(j, i));
    return r;
}

inline Matrix4 conjugate(const Matrix4& a) {
    Matrix4 r;
    for (std::size_t i = 0; i < 16; ++i) r.e[i] = std::conj(a.e[i]);
    return r;
}

inline Complex trace(const Matrix4& a) { return a(0, 0) + a(1, 1) + a(2, 2) + a(3, 3); }

inline Matrix4 commutator(const Matrix4& a, const Matrix4& b) { return a * b - b * a; }

inline double frobenius_norm(const Matrix4& a) {
    double s = 0.0;
    for (const Complex& z : a.e) s += std::norm(z);
    return std::sqrt(s);
}

inline double frobenius_distance(const Matrix4& a, const Matrix4& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < 16; ++i) s += std::norm(a.e[i] - b.e[i]);
    return std::sqrt(s);
}

inline double max_abs_entry(const Matrix4& a) {
    double m = 0.0;
    for (const Complex& z : a.e) m = std::max(m, std::abs(z));
    return m;
}

// (a + a^dagger)/2 with an exactly real diagonal.
inline Matrix4 hermitize(const Matrix4& a) {
    Matrix4 r;
    for (int i = 0; i < 4; ++i) {
        r(i, i) = Complex(a(i, i).real(), 0.0);
        for (int j = i + 1; j < 4; ++j) {
            const Complex avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
            r(i, j) = avg;
            r(j, i) = std::conj(avg);
        }
    }
    return r;
}

// Largest |a(i,j) - conj(a(j,i))| over all entries.
inline double hermiticity_defect(const Matrix4& a) {
    double d = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) d = std::max(d, std::abs(a(i, j) - std::conj(a(j, i))));
    return d;
}

// A matrix known to be Hermitian: the constructor symmetrizes input with a
// defect up to `hermiticity_reject` and rejects anything worse, so
// entries(i,j) == conj(entries(j,i)) holds exactly afterwards.
class Hermitian4 {
  public:
    explicit Hermitian4(const Matrix4& m, const Tolerances& t = tol()) {
        if (!m.is_finite()) throw ValidationError("Hermitian4: non-finite entry");
        const double defect = hermiticity_defect(m);
        if (defect > t.hermiticity_reject)
            throw ValidationError("Hermitian4: hermiticity defect " + std::to_string(defect) +
                                  " exceeds tolerance");
        m_ = hermitize(m);
    }

    const Matrix4& matrix() const { return m_; }
    const Complex& operator()(int r, int c) const { return m_(r, c); }

  private:
    Matrix4 m_;
};

} // namespace cqdyn
