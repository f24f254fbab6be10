#include <doctest.h>

#include "support.hpp"

using namespace symdom;
using namespace symdom::test;

namespace {

Vec sym2(double a, double b, double c) {
    const Algebra A({Family::SymReal, 2, 0});
    CMat X(2, 2);
    X << a, b, b, c;
    return element_from_matrix(A, X);
}

}  // namespace

TEST_CASE("structure constants of the families") {
    const Algebra h23({Family::HermComplex, 2, 3});
    CHECK(h23.rank() == 2);
    CHECK(h23.desc().peirce_a == 2);
    CHECK(h23.desc().genus_g == doctest::Approx(5.0));

    const Algebra s2({Family::SymReal, 2, 0});
    CHECK(s2.rank() == 2);
    CHECK(s2.desc().peirce_a == 1);
    CHECK(s2.dim() == 3);
    CHECK(s2.desc().genus_g == doctest::Approx(3.0));

    const Algebra sp5({Family::SpinFactor, 5, 0});
    CHECK(sp5.rank() == 2);
    CHECK(sp5.desc().peirce_a == 3);
    CHECK(sp5.desc().genus_g == doctest::Approx(5.0));

    CHECK(Algebra({Family::HermQuaternion, 3, 0}).desc().peirce_a == 4);
    CHECK(Algebra({Family::HermComplex, 3, 0}).desc().peirce_a == 2);

    for (const auto& spec : all_specs()) {
        const auto& d = Algebra(spec).desc();
        CAPTURE(family_name(d.family));
        CHECK(double(d.dim_m) / d.rank - 1 == doctest::Approx(d.peirce_a * (d.rank - 1) / 2.0));
        CHECK(d.genus_g == doctest::Approx(double(d.siegel_n + 2 * d.dim_m) / d.rank));
    }
}

TEST_CASE("bad family sizes are rejected") {
    CHECK_THROWS_AS(Algebra({Family::SymReal, 0, 0}), RejectedInput);
    CHECK_THROWS_AS(Algebra({Family::SpinFactor, 2, 0}), RejectedInput);
    CHECK_THROWS_AS(Algebra({Family::HermComplex, 3, 2}), RejectedInput);
}

TEST_CASE("jordan product examples") {
    const Algebra A({Family::SymReal, 2, 0});
    const Vec e11 = sym2(1, 0, 0);
    CHECK((jordan_product(A, e11, e11) - e11).norm() < 1e-14);
    const Vec off = sym2(0, 1, 0);
    CHECK((jordan_product(A, off, off) - identity(A)).norm() < 1e-14);

    const Algebra S({Family::SpinFactor, 4, 0});
    const Vec c1 = spin_element(S, 1, 0, Vec::Zero(2)), c2 = spin_element(S, 0, 1, Vec::Zero(2));
    CHECK(jordan_product(S, c1, c2).norm() < 1e-14);
    CHECK(trace_inner(S, c1, c2) == doctest::Approx(0.0));
}

TEST_CASE("jordan product matches the dense symmetrized product") {
    for (const auto& spec : all_specs()) {
        const Algebra A(spec);
        if (!A.is_matrix()) continue;
        CAPTURE(family_name(spec.family));
        Rng rng(11);
        for (int i = 0; i < 50; ++i) {
            const Vec x = gaussian_vec(A.dim(), rng), y = gaussian_vec(A.dim(), rng);
            const CMat X = A.embed(x.cast<cd>()), Y = A.embed(y.cast<cd>());
            const CMat P = A.embed(jordan_product(A, x, y).cast<cd>());
            CHECK((P - 0.5 * (X * Y + Y * X)).norm() < 1e-12 * (1 + X.norm() * Y.norm()));
        }
    }
}

TEST_CASE("jordan identity and power associativity on random pairs") {
    for (const auto& spec : all_specs()) {
        const Algebra A(spec);
        CAPTURE(family_name(spec.family));
        Rng rng(12);
        double worst_jordan = 0, worst_power = 0;
        for (int i = 0; i < 1000; ++i) {
            const Vec x = gaussian_vec(A.dim(), rng), y = gaussian_vec(A.dim(), rng);
            const Vec x2 = jordan_product(A, x, x);
            const double scale = x2.norm() * x.norm() * y.norm();
            const Vec lhs = jordan_product(A, x2, jordan_product(A, x, y));
            const Vec rhs = jordan_product(A, x, jordan_product(A, x2, y));
            worst_jordan = std::max(worst_jordan, (lhs - rhs).norm() / scale);
            const Vec p1 = jordan_product(A, x, x2), p2 = jordan_product(A, x2, x);
            worst_power = std::max(worst_power, (p1 - p2).norm() / (x2.norm() * x.norm()));
        }
        CHECK(worst_jordan < 1e-10);
        CHECK(worst_power < 1e-12);
    }
}

TEST_CASE("identity and trace form") {
    const Algebra A({Family::SymReal, 2, 0});
    CHECK((identity(A) - sym2(1, 0, 1)).norm() < 1e-15);
    CHECK(trace_inner(A, identity(A), identity(A)) == doctest::Approx(2.0));

    const Algebra S({Family::SpinFactor, 5, 0});
    CHECK((identity(S) - spin_element(S, 1, 1, Vec::Zero(3))).norm() < 1e-15);

    const Algebra Q({Family::HermQuaternion, 2, 0});
    CHECK((Q.embed(identity(Q).cast<cd>()) - CMat::Identity(4, 4)).norm() < 1e-14);

    for (const auto& spec : all_specs()) {
        const Algebra B(spec);
        for (const Vec& c : standard_frame(B)) CHECK(trace_inner(B, c, c) == doctest::Approx(1.0));
    }
}

TEST_CASE("spectral decomposition") {
    const Algebra A({Family::SymReal, 2, 0});
    const auto sd = spectral_decomposition(A, sym2(1, 0, 2));
    CHECK(sd.eigenvalues(0) == doctest::Approx(2.0));
    CHECK(sd.eigenvalues(1) == doctest::Approx(1.0));
    CHECK((sd.frame[0] - sym2(0, 0, 1)).norm() < 1e-12);
    CHECK((sd.frame[1] - sym2(1, 0, 0)).norm() < 1e-12);

    const Algebra S({Family::SpinFactor, 4, 0});
    const Vec x = spin_element(S, 3, 2, Vec::Ones(2));
    const auto ss = spectral_decomposition(S, x);
    CHECK(ss.eigenvalues(0) == doctest::Approx(4.0));
    CHECK(ss.eigenvalues(1) == doctest::Approx(1.0));
    CHECK(determinant(S, x) == doctest::Approx(4.0));

    for (const auto& spec : all_specs()) {
        const Algebra B(spec);
        CAPTURE(family_name(spec.family));
        const auto se = spectral_decomposition(B, identity(B));
        for (int i = 0; i < se.eigenvalues.size(); ++i) CHECK(se.eigenvalues(i) == doctest::Approx(1.0));

        Rng rng(13);
        for (int t = 0; t < 100; ++t) {
            const Vec y = gaussian_vec(B.dim(), rng);
            const auto d = spectral_decomposition(B, y);
            Vec rec = Vec::Zero(B.dim()), sum = Vec::Zero(B.dim());
            for (int i = 0; i < B.rank(); ++i) {
                rec += d.eigenvalues(i) * d.frame[i];
                sum += d.frame[i];
                CHECK((jordan_product(B, d.frame[i], d.frame[i]) - d.frame[i]).norm() < 1e-10);
                for (int j = i + 1; j < B.rank(); ++j)
                    CHECK(jordan_product(B, d.frame[i], d.frame[j]).norm() < 1e-10);
            }
            CHECK((rec - y).norm() < 1e-10 * y.norm());
            CHECK((sum - identity(B)).norm() < 1e-10);
            CHECK(determinant(B, y) == doctest::Approx(d.eigenvalues.prod()).epsilon(1e-9));
        }
    }
}

TEST_CASE("determinant and inverse") {
    const Algebra A3({Family::SymReal, 3, 0});
    CMat D3 = CMat::Zero(3, 3);
    D3.diagonal() << 1, 2, 3;
    CHECK(determinant(A3, element_from_matrix(A3, D3)) == doctest::Approx(6.0));

    const Algebra A({Family::SymReal, 2, 0});
    CHECK((inverse(A, sym2(2, 0, 4)) - sym2(0.5, 0, 0.25)).norm() < 1e-14);
    CHECK(determinant(A, identity(A)) == doctest::Approx(1.0));
    CHECK((inverse(A, identity(A)) - identity(A)).norm() < 1e-14);
    CHECK_THROWS_AS(inverse(A, sym2(1, 0, 0)), SingularElement);

    const Algebra S({Family::SpinFactor, 4, 0});
    Rng rng(14);
    for (int i = 0; i < 100; ++i) {
        const Vec x = cone_point(S, rng);
        CHECK((jordan_product(S, x, inverse(S, x)) - identity(S)).norm() < 1e-10);
    }
}

TEST_CASE("triple product") {
    for (const auto& spec : all_specs()) {
        const Algebra A(spec);
        CAPTURE(family_name(spec.family));
        Rng rng(15);
        const CVec e = identity(A).cast<cd>();
        const CVec z = gaussian_cvec(A.dim(), rng);
        CHECK((triple_product(A, e, e, z) - z).norm() < 1e-12 * z.norm());
        CHECK((triple_product(A, e, z, e) - z.conjugate()).norm() < 1e-12 * z.norm());
        for (const Vec& c : standard_frame(A)) {
            const CVec cc = c.cast<cd>();
            CHECK((triple_product(A, cc, cc, cc) - cc).norm() < 1e-12);
        }
    }
}

TEST_CASE("peirce projectors") {
    const Algebra A({Family::SymReal, 2, 0});
    const auto pe = peirce_projectors(A, identity(A));
    CHECK((pe.p1 - Mat::Identity(3, 3)).norm() < 1e-12);
    CHECK(pe.p0.norm() < 1e-12);
    CHECK(pe.p_half.norm() < 1e-12);

    const auto pz = peirce_projectors(A, Vec::Zero(3));
    CHECK((pz.p0 - Mat::Identity(3, 3)).norm() < 1e-12);

    const auto p11 = peirce_projectors(A, sym2(1, 0, 0));
    CHECK(p11.p1.trace() == doctest::Approx(1.0));
    CHECK(p11.p_half.trace() == doctest::Approx(1.0));
    CHECK(p11.p0.trace() == doctest::Approx(1.0));
}

TEST_CASE("standard frames") {
    const Algebra A({Family::SymReal, 2, 0});
    const auto f = standard_frame(A);
    REQUIRE(f.size() == 2);
    CHECK((f[0] - sym2(1, 0, 0)).norm() < 1e-15);
    CHECK((f[1] - sym2(0, 0, 1)).norm() < 1e-15);

    const Algebra S({Family::SpinFactor, 5, 0});
    const auto fs = standard_frame(S);
    CHECK((fs[0] - spin_element(S, 1, 0, Vec::Zero(3))).norm() < 1e-15);
    CHECK((fs[1] - spin_element(S, 0, 1, Vec::Zero(3))).norm() < 1e-15);

    for (const auto& spec : all_specs()) {
        const Algebra B(spec);
        Vec sum = Vec::Zero(B.dim());
        for (const Vec& c : standard_frame(B)) sum += c;
        CHECK((sum - identity(B)).norm() < 1e-14);
    }
}
