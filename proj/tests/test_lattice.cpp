#include <doctest.h>

#include <cmath>

#include "mkv/lattice.hpp"
#include "support.hpp"

using namespace mkv;
using mkv::testing::random_integer_vector;
using mkv::testing::random_interior;
using mkv::testing::random_segment;
using mkv::testing::random_vector;

namespace {

std::vector<double> as_vector(const LatticeVector& u) { return {u.values().begin(), u.values().end()}; }

}  // namespace

TEST_CASE("apply_B stencil with zero padding") {
    CHECK(as_vector(apply_B(LatticeVector::basis(2, 0))) == std::vector<double>{0, 1, -1, 0, 0});

    const LatticeVector c = LatticeVector::constant(3, 2.5);
    const LatticeVector bc = apply_B(c);
    for (int i = -3; i < 3; ++i) CHECK(bc[i] == 0.0);
    CHECK(bc[3] == -2.5);
}

TEST_CASE("apply_Bstar stencil with zero padding") {
    CHECK(as_vector(apply_Bstar(LatticeVector::basis(2, 0))) == std::vector<double>{0, 0, -1, 1, 0});
    CHECK(apply_Bstar(LatticeVector(3)) == LatticeVector(3));
}

TEST_CASE("apply_A stencil") {
    CHECK(as_vector(apply_A(LatticeVector::basis(2, 0))) == std::vector<double>{0, -1, 2, -1, 0});
}

TEST_CASE("B* is the adjoint of B") {
    SUBCASE("exhaustive over basis vectors, I = 3") {
        for (int a = -3; a <= 3; ++a)
            for (int b = -3; b <= 3; ++b) {
                const auto ea = LatticeVector::basis(3, a);
                const auto eb = LatticeVector::basis(3, b);
                CHECK(inner(apply_Bstar(ea), eb) == inner(ea, apply_B(eb)));
            }
    }
    SUBCASE("random interior-supported pairs, I = 4") {
        std::mt19937_64 gen(41);
        for (int trial = 0; trial < 200; ++trial) {
            const auto u = random_vector(gen, 4);
            const auto v = random_interior(gen, 4);
            // brute-force sums written out independently of apply_B / apply_Bstar
            double lhs = 0.0, rhs = 0.0;
            for (int i = -4; i <= 4; ++i) {
                lhs += (u.padded(i - 1) - u[i]) * v[i];
                rhs += u[i] * (v.padded(i + 1) - v[i]);
            }
            CHECK(inner(apply_Bstar(u), v) == doctest::Approx(lhs).epsilon(1e-13));
            CHECK(inner(u, apply_B(v)) == doctest::Approx(rhs).epsilon(1e-13));
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        }
    }
}

TEST_CASE("A factors through B and B* on interior-supported vectors") {
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 200; ++trial) {
        LatticeVector u = random_integer_vector(gen, 5);
        u[-5] = 0.0;
        u[5] = 0.0;
        CHECK(apply_A(u) == apply_Bstar(apply_B(u)));
        CHECK(apply_A(u) == apply_B(apply_Bstar(u)));
    }
}

TEST_CASE("operator bound on A") {
    std::mt19937_64 gen(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto u = random_vector(gen, 16, 3.0);
        const double au = l2_norm(apply_A(u));
        const double n = l2_norm(u);
        CHECK(au * au <= 18.0 * n * n);
        CHECK(au <= 4.0 * n);
    }
}

TEST_CASE("norms and inner products") {
    const auto e0 = LatticeVector::basis(3, 0);
    const auto e1 = LatticeVector::basis(3, 1);
    CHECK(lp_norm(e0 + e1, 4.0) == doctest::Approx(std::pow(2.0, 0.25)));
    CHECK(inner(e0, e1) == 0.0);
    CHECK_THROWS_AS(lp_norm(e0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(inner(e0, LatticeVector::basis(2, 0)), DimensionError);

    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 500; ++trial) {
        const auto u = random_vector(gen, 6);
        const auto v = random_vector(gen, 6);
        CHECK(std::abs(inner(u, v)) <= l2_norm(u) * l2_norm(v) * (1.0 + 1e-14));
        CHECK(l2_norm(u) * l2_norm(u) == doctest::Approx(inner(u, u)).epsilon(1e-14));
        CHECK(lp_norm(u, 2.0) == doctest::Approx(l2_norm(u)).epsilon(1e-13));
    }
}

TEST_CASE("LatticeVector construction rejects bad shapes") {
    CHECK_THROWS_AS(LatticeVector(0), DimensionError);
    CHECK_THROWS_AS(LatticeVector(2, {1.0, 2.0}), DimensionError);
    CHECK_THROWS_AS(LatticeVector(1, {1.0, NAN, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(LatticeVector::basis(2, 3), DimensionError);
}

TEST_CASE("tail_mass") {
    const auto e3 = LatticeVector::basis(4, 3);
    CHECK(tail_mass(e3, 2) == 1.0);
    CHECK(tail_mass(e3, 4) == 0.0);
    CHECK_THROWS_AS(tail_mass(e3, 6), std::out_of_range);
    CHECK_THROWS_AS(tail_mass(e3, -1), std::out_of_range);

    std::mt19937_64 gen(9);
    for (int trial = 0; trial < 100; ++trial) {
        const auto u = random_vector(gen, 7);
        CHECK(tail_mass(u, 0) == doctest::Approx(l2_norm(u) * l2_norm(u)).epsilon(1e-14));
        CHECK(tail_mass(u, 8) == 0.0);
        for (int n = 1; n <= 8; ++n) CHECK(tail_mass(u, n) <= tail_mass(u, n - 1));
    }
}

TEST_CASE("SegmentBuffer grid and ring order") {
    CHECK(delay_steps(0.2, 0.01) == 20);
    CHECK_THROWS_AS(delay_steps(0.205, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(SegmentBuffer(0.2, 0.03, LatticeVector(2)), std::invalid_argument);

    SegmentBuffer s(0.3, 0.1, LatticeVector(2));
    CHECK(s.frame_count() == 4);
    for (int j = 1; j <= 5; ++j) s.push(LatticeVector::constant(2, j));
    // frames now hold 2, 3, 4, 5 oldest first
    CHECK(s.oldest()[0] == 2.0);
    CHECK(s.newest()[0] == 5.0);
    CHECK(s.at_offset(0.0)[0] == 5.0);
    CHECK(s.at_offset(-0.3)[0] == 2.0);
    CHECK(s.at_offset(-0.1)[0] == 4.0);
    CHECK_THROWS_AS(s.at_offset(0.1), std::out_of_range);
    CHECK_THROWS_AS(s.at_offset(-0.4), std::out_of_range);
    CHECK_THROWS_AS(SegmentBuffer(0.3, 0.1, std::vector<LatticeVector>(3, LatticeVector(2))), DimensionError);
    CHECK_THROWS_AS(s.push(LatticeVector(3)), DimensionError);
}

TEST_CASE("segment_sup_norm") {
    CHECK(segment_sup_norm(SegmentBuffer(0.5, 0.1, LatticeVector(3))) == 0.0);

    const auto e0 = LatticeVector::basis(2, 0);
    CHECK(segment_sup_norm(SegmentBuffer(0.1, 0.1, std::vector<LatticeVector>{e0, 2.0 * e0})) == 2.0);

    std::mt19937_64 gen(17);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = random_segment(gen, 3, 0.05, 0.01);
        const auto b = random_segment(gen, 3, 0.05, 0.01);
        double brute = 0.0;
        for (const auto& f : a.ordered_frames()) {
            double s = 0.0;
            for (double x : f.values()) s += x * x;
            brute = std::max(brute, std::sqrt(s));
        }
        CHECK(segment_sup_norm(a) == doctest::Approx(brute).epsilon(1e-15));

        // norm axioms; b - (-a) = a + b frame-wise
        std::vector<LatticeVector> neg;
        for (const auto& f : a.ordered_frames()) neg.push_back(-1.0 * f);
        const SegmentBuffer sum = segment_difference(b, SegmentBuffer(0.05, 0.01, neg));
        CHECK(segment_sup_norm(sum) <= segment_sup_norm(a) + segment_sup_norm(b) + 1e-12);
        std::vector<LatticeVector> scaled;
        for (const auto& f : a.ordered_frames()) scaled.push_back(-2.5 * f);
        CHECK(segment_sup_norm(SegmentBuffer(0.05, 0.01, scaled)) ==
              doctest::Approx(2.5 * segment_sup_norm(a)).epsilon(1e-14));
    }
}
