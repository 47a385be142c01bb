#pragma once

#include <array>

#include "cqdyn/eigen4.hpp"

namespace cqdyn {

// Two-qubit state: 4x4 Hermitian, unit trace, positive semidefinite within
// tolerance. Admission symmetrizes and then checks trace and spectrum, so a
// held DensityMatrix is always safe to hand to the measures below.
class DensityMatrix {
  public:
    explicit DensityMatrix(const Matrix4& m, const Tolerances& t = tol()) {
        if (!m.is_finite()) throw ValidationError("DensityMatrix: non-finite entry");
        const double defect = hermiticity_defect(m);
        if (defect > t.density_hermiticity)
            throw ValidationError("DensityMatrix: hermiticity defect " + std::to_string(defect));
        m_ = hermitize(m);
        const double tr = trace(m_).real();
        if (std::abs(tr - 1.0) > t.density_trace)
            throw ValidationError("DensityMatrix: trace " + std::to_string(tr) + " is not 1");
        const Spectrum spec = eig_hermitian(Hermitian4(m_, t), t);
        if (spec.eigenvalues[0] < t.density_min_eigenvalue)
            throw NotPositiveSemidefiniteError("DensityMatrix: eigenvalue " +
                                               std::to_string(spec.eigenvalues[0]));
    }

    // |b><b| for a basis index in 0..3 (00, 01, 10, 11).
    static DensityMatrix pure_basis(int b) {
        if (b < 0 || b > 3) throw ValidationError("DensityMatrix: basis index out of range");
        Matrix4 m;
        m(b, b) = 1.0;
        return DensityMatrix(m);
    }

    // |psi><psi| from an (unnormalized) ket.
    static DensityMatrix pure_ket(const std::array<Complex, 4>& ket) {
        double n2 = 0.0;
        for (const Complex& z : ket) n2 += std::norm(z);
        if (n2 <= 0.0) throw ValidationError("DensityMatrix: zero ket");
        Matrix4 m;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                m(i, j) = ket[static_cast<std::size_t>(i)] *
                          std::conj(ket[static_cast<std::size_t>(j)]) / n2;
        return DensityMatrix(m);
    }

    static DensityMatrix maximally_mixed() {
        return DensityMatrix(0.25 * Matrix4::identity());
    }

    const Matrix4& matrix() const { return m_; }
    const Complex& operator()(int r, int c) const { return m_(r, c); }

  private:
    Matrix4 m_;
};

// Diagonal occupation probabilities in basis order. The diagonal of an
// admitted DensityMatrix is exactly real, so this is a plain read-out; the
// guard only fires on internal corruption.
inline std::array<double, 4> populations(const DensityMatrix& rho) {
    std::array<double, 4> p{};
    for (int i = 0; i < 4; ++i) {
        const Complex d = rho(i, i);
        if (std::abs(d.imag()) >= 1e-12)
            throw ValidationError("populations: diagonal entry has imaginary part");
        p[static_cast<std::size_t>(i)] = d.real();
    }
    return p;
}

} // namespace cqdyn
