#include <doctest.h>

#include "testutil.hpp"

using namespace cqdyn;

TEST_CASE("DensityMatrix admission") {
    SUBCASE("accepts random physical states") {
        std::mt19937 rng(11);
        for (int i = 0; i < 20; ++i) CHECK_NOTHROW(testutil::random_density(rng));
    }

    SUBCASE("rejects wrong trace") {
        CHECK_THROWS_AS(DensityMatrix(Matrix4::diagonal(0.5, 0.5, 0.5, 0.5)), ValidationError);
    }

    SUBCASE("rejects negative eigenvalues") {
        CHECK_THROWS_AS(DensityMatrix(Matrix4::diagonal(1.5, -0.5, 0, 0)),
                        NotPositiveSemidefiniteError);
    }

    SUBCASE("rejects non-Hermitian input") {
        Matrix4 m = Matrix4::diagonal(0.5, 0.5, 0, 0);
        m(0, 1) = 0.1;
        CHECK_THROWS_AS(DensityMatrix{m}, ValidationError);
    }

    SUBCASE("corner coherence above the PSD limit is rejected") {
        // zeta may not exceed 1/2 on the equal-halves family.
        CHECK_THROWS_AS(DensityMatrix(testutil::equal_halves_state(0.51)),
                        NotPositiveSemidefiniteError);
        CHECK_NOTHROW(DensityMatrix(testutil::equal_halves_state(0.5)));
    }
}

TEST_CASE("pure state constructors") {
    const DensityMatrix p0 = DensityMatrix::pure_basis(0);
    CHECK(p0(0, 0) == Complex(1.0, 0.0));
    CHECK_THROWS_AS(DensityMatrix::pure_basis(4), ValidationError);

    // pure_ket normalizes.
    const DensityMatrix bell = DensityMatrix::pure_ket({1.0, 0.0, 0.0, 1.0});
    CHECK(bell(0, 0).real() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(bell(0, 3).real() == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("populations") {
    SUBCASE("basis state") {
        const auto p = populations(DensityMatrix::pure_basis(0));
        CHECK(p[0] == 1.0);
        CHECK(p[1] == 0.0);
        CHECK(p[2] == 0.0);
        CHECK(p[3] == 0.0);
    }

    SUBCASE("maximally mixed") {
        const auto p = populations(DensityMatrix::maximally_mixed());
        for (double v : p) CHECK(v == doctest::Approx(0.25).epsilon(1e-15));
    }

    SUBCASE("equal-halves family") {
        const auto p = populations(DensityMatrix(testutil::equal_halves_state(0.13)));
        CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(p[1] == 0.0);
        CHECK(p[2] == 0.0);
        CHECK(p[3] == doctest::Approx(0.5).epsilon(1e-15));
    }

    SUBCASE("sum to one within tolerance on random states") {
        std::mt19937 rng(23);
        for (int i = 0; i < 30; ++i) {
            const auto p = populations(testutil::random_density(rng));
            CHECK(std::abs(p[0] + p[1] + p[2] + p[3] - 1.0) <= 1e-10);
        }
    }
}
