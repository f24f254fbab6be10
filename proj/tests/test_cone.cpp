#include <doctest.h>

#include "support.hpp"

using namespace symdom;
using namespace symdom::test;

namespace {

const Algebra& sym2() {
    static const Algebra A({Family::SymReal, 2, 0});
    return A;
}

Vec sym2_el(double a, double b, double c) {
    CMat X(2, 2);
    X << a, b, b, c;
    return element_from_matrix(sym2(), X);
}

Vec signature_vec(std::initializer_list<double> s) {
    Vec v(s.size());
    int i = 0;
    for (double x : s) v(i++) = x;
    return v;
}

}  // namespace

TEST_CASE("principal minors") {
    const Algebra S({Family::SpinFactor, 4, 0});
    const Vec x = spin_element(S, 3, 2, Vec::Ones(2));
    CHECK(delta_j(S, x, 1) == doctest::Approx(3.0));
    CHECK(delta_j(S, x, 2) == doctest::Approx(4.0));
    CHECK(delta_j_star(S, x, 1) == doctest::Approx(2.0));

    const Vec d = sym2_el(2, 0, 3);
    CHECK(delta_j(sym2(), d, 1) == doctest::Approx(2.0));
    CHECK(delta_j(sym2(), d, 2) == doctest::Approx(6.0));
    CHECK(delta_j_star(sym2(), d, 1) == doctest::Approx(3.0));

    for (const auto& spec : all_specs()) {
        const Algebra A(spec);
        CAPTURE(family_name(spec.family));
        const Vec e = identity(A);
        for (int j = 1; j <= A.rank(); ++j) CHECK(delta_j(A, e, j) == doctest::Approx(1.0));
        Rng rng(21);
        for (int i = 0; i < 50; ++i) {
            const Vec y = gaussian_vec(A.dim(), rng);
            CHECK(delta_j_star(A, y, A.rank()) == doctest::Approx(delta_j(A, y, A.rank())).epsilon(1e-10));
            CHECK(std::abs(delta_j(A, CVec(y.cast<cd>()), A.rank()) - delta_j(A, y, A.rank())) <
                  1e-10 * (1 + std::abs(delta_j(A, y, A.rank()))));
        }
    }
    CHECK_THROWS_AS(delta_j(sym2(), d, 3), RejectedInput);
}

TEST_CASE("determinant is the product of eigenvalues") {
    for (const auto& spec : all_specs()) {
        const Algebra A(spec);
        CAPTURE(family_name(spec.family));
        Rng rng(22);
        for (int i = 0; i < 1000; ++i) {
            const Vec x = gaussian_vec(A.dim(), rng);
            const double p = spectral_decomposition(A, x).eigenvalues.prod();
            CHECK(std::abs(delta_j(A, x, A.rank()) - p) <= 1e-9 * std::max(1.0, std::abs(p)));
        }
    }
}

TEST_CASE("generalized powers") {
    const Vec d = sym2_el(2, 0, 3);
    CHECK(delta_power(sym2(), d, signature_vec({2, 1})) == doctest::Approx(12.0));
    Rng rng(23);
    for (int i = 0; i < 20; ++i) {
        const Vec x = cone_point(sym2(), rng);
        CHECK(delta_power(sym2(), x, signature_vec({1, 1})) == doctest::Approx(delta_j(sym2(), x, 2)));
        CHECK(delta_power(sym2(), x, signature_vec({3, 3})) ==
              doctest::Approx(std::pow(determinant(sym2(), x), 3)).epsilon(1e-10));
    }
    CHECK_THROWS_AS(delta_power(sym2(), sym2_el(-1, 0, 1), signature_vec({0.5, 0})), DomainError);
}

TEST_CASE("complex powers on the tube") {
    for (const auto& spec : all_specs()) {
        const Algebra A(spec);
        CAPTURE(family_name(spec.family));
        const CVec e = identity(A).cast<cd>();
        Rng rng(24);
        const CVec s = gaussian_cvec(A.rank(), rng);
        CHECK(std::abs(delta_power_complex(A, e, s) - 1.0) < 1e-14);

        // real cone points agree with the real power
        for (int i = 0; i < 20; ++i) {
            const Vec x = cone_point(A, rng);
            const Vec sr = gaussian_vec(A.rank(), rng);
            const double ref = delta_power(A, x, sr);
            CHECK(std::abs(delta_power_complex(A, x.cast<cd>(), sr.cast<cd>()) - ref) < 1e-12 * std::max(1.0, ref));
        }

        // exp(log Delta_j) = Delta_j, and the log is continuous around a loop
        const Vec u = cone_point(A, rng, 0.5);
        const Vec v1 = 3.0 * gaussian_vec(A.dim(), rng), v2 = 3.0 * gaussian_vec(A.dim(), rng);
        for (int j = 1; j <= A.rank(); ++j) {
            const int steps = 2000;
            auto at = [&](int k) {
                const double t = 2 * M_PI * k / steps;
                return CVec(u.cast<cd>() + I1 * (std::cos(t) * v1 + std::sin(t) * v2).cast<cd>());
            };
            cd prev = log_delta_j(A, at(0), j), travelled = 0.0;
            double worst_step = 0.0, worst_exp = 0.0;
            for (int k = 1; k <= steps; ++k) {
                const CVec w = at(k);
                const cd cur = log_delta_j(A, w, j);
                worst_step = std::max(worst_step, std::abs(cur - prev));
                travelled += cur - prev;
                const cd dj = delta_j(A, w, j);
                worst_exp = std::max(worst_exp, std::abs(std::exp(cur) - dj) / std::abs(dj));
                prev = cur;
            }
            CHECK(worst_step < 0.2);
            CHECK(std::abs(travelled) < 1e-10);
            CHECK(worst_exp < 1e-10);
        }
    }
}

TEST_CASE("scalar complex power needs the open tube") {
    const Algebra A({Family::HermComplex, 1, 1});
    CVec s(1);
    s << -1.0;
    CVec w(1);
    w << I1;
    CHECK_THROWS_AS(delta_power_complex(A, w, s), DomainError);
    w << cd(1e-12, 1.0);
    CHECK(std::abs(delta_power_complex(A, w, s) - (-I1)) < 1e-10);
}

TEST_CASE("cone membership") {
    for (const auto& spec : all_specs()) {
        const Algebra A(spec);
        CAPTURE(family_name(spec.family));
        CHECK(in_cone(A, identity(A)));
        CHECK_FALSE(in_cone(A, -identity(A)));
        Rng rng(25);
        int checked = 0;
        for (int i = 0; i < 2000; ++i) {
            const Vec x = gaussian_vec(A.dim(), rng) + 0.5 * identity(A);
            if (std::abs(min_eigenvalue(A, x)) < 1e-6) continue;
            bool all_pos = true;
            for (int j = 1; j <= A.rank(); ++j) all_pos = all_pos && delta_j(A, x, j) > 0;
            CHECK(in_cone(A, x) == all_pos);
            ++checked;
        }
        CHECK(checked > 1000);
    }
    const Algebra S({Family::SpinFactor, 4, 0});
    const Vec b = spin_element(S, 1, 1, Vec::Unit(2, 0));
    CHECK(delta_j(S, b, 2) == doctest::Approx(0.0));
    CHECK_FALSE(in_cone(S, b, 1e-300));
}

TEST_CASE("triangular group") {
    const auto t = cholesky_t(sym2(), sym2_el(4, 2, 2));
    CMat expect(2, 2);
    expect << 2, 0, 1, 1;
    CHECK((t.t - expect).norm() < 1e-12);
    CHECK((cholesky_t(sym2(), identity(sym2())).t - CMat::Identity(2, 2)).norm() < 1e-14);
    CHECK_THROWS_AS(cholesky_t(sym2(), sym2_el(1, 2, 1)), DomainError);

    for (const auto& spec : all_specs()) {
        const Algebra A(spec);
        CAPTURE(family_name(spec.family));
        const Vec e = identity(A);
        Rng rng(26);
        for (int i = 0; i < 100; ++i) {
            const Vec x = cone_point(A, rng);
            CHECK((t_action(A, cholesky_t(A, x), e) - x).norm() < 1e-10 * std::max(1.0, x.norm()));
        }
        int preserved = 0;
        for (int i = 0; i < 1000; ++i) {
            const auto ti = random_triangular(A, rng);
            preserved += in_cone(A, t_action(A, ti, cone_point(A, rng)));
        }
        CHECK(preserved == 1000);

        for (int i = 0; i < 50; ++i) {
            const auto t1 = random_triangular(A, rng), t2 = random_triangular(A, rng);
            const Vec x = gaussian_vec(A.dim(), rng);
            const Vec a = t_action(A, compose(A, t1, t2), x);
            const Vec b = t_action(A, t1, t_action(A, t2, x));
            CHECK((a - b).norm() < 1e-10 * std::max(1.0, b.norm()));
            CHECK((t_action(A, triangular_identity(A), x) - x).norm() < 1e-14 * std::max(1.0, x.norm()));
            CHECK((t_action(A, inverse(A, t1), t_action(A, t1, x)) - x).norm() < 1e-10 * std::max(1.0, x.norm()));
        }

        // character law, |s| <= 6
        for (int i = 0; i < 50; ++i) {
            const auto ti = random_triangular(A, rng);
            const Vec x = cone_point(A, rng);
            std::vector<int> parts(A.rank());
            std::uniform_int_distribution<int> ud(0, 6 / A.rank());
            for (int& p : parts) p = ud(rng);
            std::sort(parts.rbegin(), parts.rend());
            Vec s(A.rank());
            for (int j = 0; j < A.rank(); ++j) s(j) = parts[j];
            const double chi = character(A, ti, s);
            const Vec diag = triangular_diagonal(A, ti);
            double prod = 1.0;
            for (int j = 0; j < A.rank(); ++j) prod *= std::pow(diag(j), 2 * s(j));
            CHECK(chi == doctest::Approx(prod).epsilon(1e-12));
            CHECK(delta_power(A, t_action(A, ti, e), s) == doctest::Approx(chi).epsilon(1e-9));
            const double lhs = delta_power(A, t_action(A, ti, x), s);
            const double rhs = chi * delta_power(A, x, s);
            CHECK(std::abs(lhs - rhs) < 1e-9 * std::abs(rhs));
        }
    }
}
