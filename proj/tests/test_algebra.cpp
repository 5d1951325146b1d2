#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "goalg/algebra.hpp"
#include "goalg/errors.hpp"
#include "test_util.hpp"

using namespace goalg;

namespace {

GoElement unit1(Kind k, double c = 1.0) { return GoElement::unit(1, {k, 0, -1}, c); }

bool same_matrices(const GeneratorMatrices& a, const GeneratorMatrices& b) {
    return a.gamma_M == b.gamma_M && a.gamma_D == b.gamma_D && a.gamma_v == b.gamma_v;
}

// Affine operator of an element on raw moments (1, mu, vech-free S): dS = G S + S G^T + 2D + v mu^T + mu v^T.
// Written as an explicit matrix on the stacked vector [1, mu, vec S].
Eigen::MatrixXd moment_operator(const GeneratorMatrices& m) {
    const int d = static_cast<int>(m.gamma_v.size());
    const int N = 1 + d + d * d;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N, N);
    auto S = [d](int r, int c) { return 1 + d + c * d + r; };
    for (int i = 0; i < d; ++i) {
        A(1 + i, 0) = m.gamma_v(i);
        for (int k = 0; k < d; ++k) A(1 + i, 1 + k) = m.gamma_M(i, k);
    }
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
            A(S(r, c), 0) += 2.0 * m.gamma_D(r, c);
            A(S(r, c), 1 + c) += m.gamma_v(r);
            A(S(r, c), 1 + r) += m.gamma_v(c);
            for (int k = 0; k < d; ++k) {
                A(S(r, c), S(k, c)) += m.gamma_M(r, k);
                A(S(r, c), S(r, k)) += m.gamma_M(c, k);
            }
        }
    return A;
}

}  // namespace

TEST_CASE("to_matrices examples") {
    const auto rot = to_matrices(unit1(Kind::AdN));
    Mat expect(2, 2);
    expect << 0, -1, 1, 0;
    CHECK(rot.gamma_M == expect);
    CHECK(rot.gamma_D.isZero(0));
    CHECK(rot.gamma_v.isZero(0));

    const auto z = to_matrices(GoElement(1));
    CHECK(z.gamma_M.isZero(0));
    CHECK(z.gamma_D.isZero(0));
    CHECK(z.gamma_v.isZero(0));

    CHECK(to_matrices(unit1(Kind::LmXP)).gamma_M == Mat::Identity(2, 2));
}

TEST_CASE("from_matrices examples") {
    GeneratorMatrices m = GeneratorMatrices::zero(1);
    m.gamma_M = Mat::Identity(2, 2);
    CHECK(from_matrices(m).pruned() == unit1(Kind::LmXP));

    CHECK(from_matrices(GeneratorMatrices::zero(1)).pruned().coeffs.empty());

    m.gamma_M << 0, -1, 1, 0;
    CHECK(from_matrices(m).pruned() == unit1(Kind::AdN));

    m = GeneratorMatrices::zero(1);
    m.gamma_D(0, 1) = 1.0;
    CHECK_THROWS_AS(from_matrices(m), ValidationError);
}

TEST_CASE("bracket examples") {
    CHECK(bracket(unit1(Kind::AdN), unit1(Kind::AdXsq)).pruned() == unit1(Kind::AdYsq, -2.0));
    CHECK(bracket(unit1(Kind::AdN), unit1(Kind::AdX)).pruned() == unit1(Kind::AdP));

    CounterRng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        GoElement h1(1), h2(1);
        for (Kind k : {Kind::AdX, Kind::AdP, Kind::LppXX, Kind::LppPP, Kind::LppXP}) {
            h1.add({k, 0, -1}, rng.normal());
            h2.add({k, 0, -1}, rng.normal());
        }
        CHECK(bracket(h1, h2).pruned().coeffs.empty());
    }
    CHECK_THROWS_AS(bracket(GoElement(1), GoElement(2)), ValidationError);
}

TEST_CASE("poincare and lorentz maps") {
    auto e = poincare_to_go({1, 0, 0});
    CHECK(e.coeff({Kind::LppXX, 0, -1}) == 0.5);
    CHECK(e.coeff({Kind::LppPP, 0, -1}) == 0.5);
    CHECK(poincare_to_go({0, 0, 0}).pruned().coeffs.empty());
    e = poincare_to_go({1, 1, 0});
    CHECK(e.coeff({Kind::LppXX, 0, -1}) == 1.0);
    CHECK(e.coeff({Kind::LppPP, 0, -1}) == 0.0);
    CHECK(poincare_to_go({0, 0, 0.3}).coeff({Kind::LppXP, 0, -1}) == 0.3);

    CHECK(lorentz_to_go(LorentzPlane::XY, 0.6).pruned() == unit1(Kind::AdN, -0.3));
    CHECK(lorentz_to_go(LorentzPlane::TauX, 0.6).pruned() == unit1(Kind::AdXsq, 0.3));
    CHECK(lorentz_to_go(LorentzPlane::TauY, 0.6).pruned() == unit1(Kind::AdYsq, -0.3));
}

TEST_CASE("basis size and validation") {
    for (int n = 1; n <= 4; ++n) CHECK(basis(n).size() == static_cast<size_t>(6 * n * n + 3 * n));
    CHECK_THROWS_AS(validate({Kind::AdX, 2, -1}, 2), ValidationError);
    CHECK_THROWS_AS(validate({Kind::AdNplus, 1, 0}, 2), ValidationError);
    CHECK_THROWS_AS(validate({Kind::AdNplus, 0, -1}, 2), ValidationError);
    CHECK_THROWS_AS(validate({Kind::LmXX, 0, -1}, 2), ValidationError);
    CHECK_THROWS_AS(validate({Kind::LmXP, 1, 1}, 2), ValidationError);
    CHECK_NOTHROW(validate({Kind::LmXP, 1, 0}, 2));
    CHECK_NOTHROW(validate({Kind::LppXX, 0, 1}, 2));
    CHECK_THROWS_AS(kind_from_name("Lxy+"), ValidationError);
    for (const auto& id : basis(2)) CHECK(kind_from_name(kind_name(id.kind)) == id.kind);
}

TEST_CASE("basis matrices are linearly independent, both x_i p_j orderings included") {
    for (int n = 1; n <= 3; ++n) {
        const auto b = basis(n);
        const int d = 2 * n;
        Mat cols(d * d + d * d + d, static_cast<long>(b.size()));
        for (size_t k = 0; k < b.size(); ++k) {
            const auto m = to_matrices(GoElement::unit(n, b[k]));
            Vec v(cols.rows());
            v << m.gamma_M.reshaped(), m.gamma_D.reshaped(), m.gamma_v;
            cols.col(static_cast<long>(k)) = v;
        }
        Eigen::FullPivLU<Mat> lu(cols);
        CHECK(lu.rank() == static_cast<long>(b.size()));
    }
}

TEST_CASE("round trip is exact on dyadic triples") {
    CounterRng rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 1 + trial % 3;
        const GoElement g = tu::random_dyadic(rng, n);
        const GeneratorMatrices m = to_matrices(g);
        CHECK(from_matrices(m) == g);
        CHECK(same_matrices(to_matrices(from_matrices(m)), m));
        CHECK(m.gamma_D == m.gamma_D.transpose());
    }
}

TEST_CASE("structure constants are in {0, +-1/2, +-1, +-2}") {
    const std::set<double> allowed = {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0};
    for (int n = 1; n <= 3; ++n) {
        const auto b = basis(n);
        int bad = 0;
        for (const auto& a : b)
            for (const auto& c : b) {
                const GoElement r = bracket(GoElement::unit(n, a), GoElement::unit(n, c));
                for (const auto& [id, v] : r.coeffs)
                    if (v != 0.0 && !allowed.count(v)) ++bad;
                // Residual of the expansion is exactly zero.
                const auto direct = bracket(to_matrices(GoElement::unit(n, a)), to_matrices(GoElement::unit(n, c)));
                if (!same_matrices(to_matrices(r), direct)) ++bad;
            }
        CHECK(bad == 0);
    }
}

TEST_CASE("bracket is antisymmetric and bilinear") {
    CounterRng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + trial % 3;
        const GoElement a = tu::random_dyadic(rng, n), b = tu::random_dyadic(rng, n), c = tu::random_dyadic(rng, n);
        CHECK(bracket(a, b) == bracket(b, a) * -1.0);
        const auto lhs = to_matrices(bracket(a + c * 2.0, b));
        const auto rhs = to_matrices(bracket(a, b) + bracket(c, b) * 2.0);
        CHECK(tu::max_abs(lhs.gamma_M - rhs.gamma_M) <= 1e-12);
        CHECK(tu::max_abs(lhs.gamma_D - rhs.gamma_D) <= 1e-12);
    }
}

TEST_CASE("Jacobi identity") {
    CounterRng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + trial % 3;
        const auto a = to_matrices(tu::random_element(rng, n));
        const auto b = to_matrices(tu::random_element(rng, n));
        const auto c = to_matrices(tu::random_element(rng, n));
        const auto j1 = bracket(a, bracket(b, c));
        const auto j2 = bracket(b, bracket(c, a));
        const auto j3 = bracket(c, bracket(a, b));
        const double r = std::max({tu::max_abs(j1.gamma_M + j2.gamma_M + j3.gamma_M),
                                   tu::max_abs(j1.gamma_D + j2.gamma_D + j3.gamma_D),
                                   (j1.gamma_v + j2.gamma_v + j3.gamma_v).cwiseAbs().maxCoeff()});
        CHECK(r <= 1e-10);
    }
}

TEST_CASE("noise and displacement part is an ideal") {
    CounterRng rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + trial % 3;
        GeneratorMatrices g = to_matrices(tu::random_element(rng, n));
        GeneratorMatrices h = to_matrices(tu::random_element(rng, n));
        h.gamma_M.setZero();
        CHECK(bracket(g, h).gamma_M.isZero(0));
        CHECK(bracket(h, g).gamma_M.isZero(0));
    }
}

TEST_CASE("bracket matches the commutator of moment operators") {
    CounterRng rng(9);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + trial % 3;
        const GoElement a = tu::random_element(rng, n), b = tu::random_element(rng, n);
        const Eigen::MatrixXd Aa = moment_operator(to_matrices(a));
        const Eigen::MatrixXd Ab = moment_operator(to_matrices(b));
        const Eigen::MatrixXd comm = Aa * Ab - Ab * Aa;
        const Eigen::MatrixXd got = moment_operator(to_matrices(bracket(a, b)));
        CHECK(tu::max_abs(comm - got) <= 1e-10 * std::max(1.0, tu::max_abs(comm)));
    }
}

TEST_CASE("named elements") {
    const auto d = to_matrices(elements::damping(1, 0, 2.0));
    CHECK(tu::max_abs(d.gamma_M + Mat::Identity(2, 2)) == 0.0);
    const auto h = to_matrices(elements::heating(1, 0, 1.0));
    CHECK(tu::max_abs(h.gamma_M - 0.5 * Mat::Identity(2, 2)) == 0.0);
    CHECK(tu::max_abs(d.gamma_D - h.gamma_D * 2.0) == 0.0);
    const auto r = to_matrices(elements::rotation(2, 1));
    CHECK(r.gamma_M(1, 3) == -1.0);
    CHECK(r.gamma_M(3, 1) == 1.0);
}
