#pragma once

namespace cqdyn {

// All numerical thresholds in one place. Functions default to `tol()`;
// tests that need to probe edge behaviour pass their own copy.
struct Tolerances {
    // Hermitian4 constructor: symmetrize below, reject above.
    double hermiticity_reject = 1e-9;

    // DensityMatrix admission.
    double density_hermiticity = 1e-10;
    double density_trace = 1e-10;
    double density_min_eigenvalue = -1e-9;

    // Jacobi eigensolver: stop once the off-diagonal Frobenius norm falls
    // below jacobi_rel_offdiag times the norm of the traceless part.
    double jacobi_rel_offdiag = 1e-13;
    int jacobi_max_sweeps = 100;

    // Spectrum self-checks, scaled by max(1, ||H||_F).
    double spectrum_orthonormality = 1e-10;
    double spectrum_reconstruction = 1e-10;

    // Eigenvalues in [psd_clamp, 0) are treated as 0 before square roots;
    // anything below psd_clamp is an error.
    double psd_clamp = -1e-10;
    double sqrt_residual = 1e-9;

    // Kraus truncation: Poisson tail bound must stay below this.
    double kraus_tail = 1e-12;

    // RK4 guard: dt * ||H||_F must not exceed this.
    double rk4_step_limit = 0.1;

    // Detector defaults.
    double mems_dev_tol = 0.05;
    double mems_zeta_min = 0.05;
    double esd_zero_tol = 1e-6;
};

inline const Tolerances& tol() {
    static const Tolerances t{};
    return t;
}

} // namespace cqdyn
