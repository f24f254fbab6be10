#include <doctest.h>

#include "support.hpp"

using namespace symdom;
using namespace symdom::test;

namespace {

// sqrt of the operator norm of z -> {z, z, .} on Z coordinates.
double box_norm_oracle(const Domain& D, const CVec& z) {
    const int n = D.dim();
    CMat M(n, n);
    for (int i = 0; i < n; ++i) M.col(i) = D.triple(z, z, CVec::Unit(n, i));
    return std::sqrt(Eigen::JacobiSVD<CMat>(M).singularValues()(0));
}

CVec scalar(cd c) {
    CVec v(1);
    v << c;
    return v;
}

const Domain& disc() {
    static const Domain D(disc_spec());
    return D;
}

}  // namespace

TEST_CASE("spectral norm") {
    for (const auto& spec : all_specs()) {
        const Domain D(spec);
        CAPTURE(D.name());
        const CVec e = D.e_point();
        CHECK(spectral_norm(D, e) == doctest::Approx(1.0));
        CHECK(spectral_norm(D, CVec(0.5 * e)) == doctest::Approx(0.5));
        Rng rng(41);
        for (int i = 0; i < 100; ++i) {
            const CVec z = gaussian_cvec(D.dim(), rng);
            const double sn = spectral_norm(D, z);
            CHECK(sn == doctest::Approx(box_norm_oracle(D, z)).epsilon(1e-10));
            if (D.has_matrix_picture()) {
                const double sv = Eigen::JacobiSVD<CMat>(D.to_matrix(z)).singularValues()(0);
                CHECK(sn == doctest::Approx(sv).epsilon(1e-10));
            }
        }
        CHECK(in_bounded_domain(D, CVec::Zero(D.dim())));
        CHECK_FALSE(in_bounded_domain(D, e));
        CHECK(in_bounded_domain(D, CVec(0.99 * e)));
    }
}

TEST_CASE("phi form and the siegel domain") {
    const Domain B(ball_spec(3));
    Rng rng(42);
    const CVec a = gaussian_cvec(B.zeta_dim(), rng), b = gaussian_cvec(B.zeta_dim(), rng);
    CHECK(phi_form(B, CVec::Zero(B.zeta_dim()), b).norm() == 0.0);
    const cd inner = (a.transpose() * b.conjugate())(0);
    CHECK(std::abs(phi_form(B, a, b)(0) - inner) < 1e-12);

    const Domain H({Family::HermComplex, 2, 3});
    for (int i = 0; i < 1000; ++i) {
        const CVec z = gaussian_cvec(H.zeta_dim(), rng);
        const CVec phi = phi_form(H, z, z);
        const Vec re = phi.real();
        CHECK(phi.imag().norm() < 1e-12 * phi.norm());
        CHECK(min_eigenvalue(H.algebra(), re) >= -1e-12 * re.norm());
        CHECK(re.norm() > 0);
    }

    for (const auto& spec : all_specs()) {
        const Domain D(spec);
        CHECK(in_siegel_domain(D, siegel_base_point(D)));
        CHECK_FALSE(in_siegel_domain(D, {CVec::Zero(D.zeta_dim()), CVec::Zero(D.algebra().dim())}));
    }
    const CVec zeta = gaussian_cvec(B.zeta_dim(), rng);
    CHECK(in_siegel_domain(B, {zeta, scalar(cd(0.3, zeta.squaredNorm() + 1.0))}));
    CHECK_FALSE(in_siegel_domain(B, {zeta, scalar(cd(0.3, zeta.squaredNorm() - 1e-3))}));
}

TEST_CASE("cayley transform") {
    CHECK((cayley(disc(), scalar(0.5)).z - scalar(3.0 * I1)).norm() < 1e-14);
    for (const auto& spec : all_specs()) {
        const Domain D(spec);
        CAPTURE(D.name());
        const SiegelPoint c0 = cayley(D, CVec::Zero(D.dim()));
        const SiegelPoint base = siegel_base_point(D);
        CHECK((c0.z - base.z).norm() < 1e-14);
        CHECK(c0.zeta.norm() < 1e-14);
        Rng rng(43);
        double worst = 0;
        int inside = 0;
        for (int i = 0; i < 1000; ++i) {
            const CVec z = sample_bounded(D, rng);
            const SiegelPoint p = cayley(D, z);
            inside += in_siegel_domain(D, p);
            worst = std::max(worst, (inverse_cayley(D, p) - z).norm());
        }
        CHECK(worst < 1e-10);
        CHECK(inside == 1000);
    }
}

TEST_CASE("siegel kernel") {
    for (const auto& spec : all_specs()) {
        const Domain D(spec);
        CAPTURE(D.name());
        const SiegelPoint base = siegel_base_point(D);
        CHECK(std::abs(kernel_siegel(D, 2.0, base, base) - 1.0) < 1e-14);
        Rng rng(44);
        for (int i = 0; i < 50; ++i) {
            const SiegelPoint p = cayley(D, sample_bounded(D, rng)), q = cayley(D, sample_bounded(D, rng));
            for (double lam : {0.5, 1.7, D.genus()}) {
                const cd a = kernel_siegel(D, lam, p, q), b = kernel_siegel(D, lam, q, p);
                CHECK(std::abs(a - std::conj(b)) < 1e-12 * std::abs(a));
            }
        }
    }
    // upper half-plane, lambda = 2: ((z - conj w)/2i)^{-2}
    const SiegelPoint p{CVec(0), scalar(cd(0.3, 1.2))}, q{CVec(0), scalar(cd(-0.7, 0.4))};
    const cd expect = std::pow((p.z(0) - std::conj(q.z(0))) / (2.0 * I1), -2.0);
    CHECK(std::abs(kernel_siegel(disc(), 2.0, p, q) - expect) < 1e-13);
}

TEST_CASE("bounded kernel") {
    const CVec z = scalar(cd(0.3, -0.4)), w = scalar(cd(-0.1, 0.5));
    CHECK(std::abs(kernel_bounded(disc(), 1.0, z, w) - 1.0 / (1.0 - z(0) * std::conj(w(0)))) < 1e-14);

    const Domain D22({Family::HermComplex, 2, 2});
    CMat Z = CMat::Zero(2, 2);
    Z(0, 0) = 0.6;
    const CVec zz = D22.from_matrix(Z);
    CHECK(std::abs(kernel_bounded(D22, 4.0, zz, zz) - std::pow(1 - 0.36, -4.0)) < 1e-12);

    const Domain S2({Family::SymReal, 2, 0});
    for (const auto& spec : all_specs()) {
        const Domain D(spec);
        CAPTURE(D.name());
        Rng rng(45);
        for (int i = 0; i < 50; ++i) {
            const CVec a = sample_bounded(D, rng), b = sample_bounded(D, rng);
            for (double lam : {1.0, 2.5}) {
                CHECK(std::abs(kernel_bounded(D, lam, a, CVec::Zero(D.dim())) - 1.0) < 1e-12);
                const cd k = kernel_bounded(D, lam, a, b);
                CHECK(std::abs(k - std::conj(kernel_bounded(D, lam, b, a))) < 1e-10 * std::abs(k));
                // independent closed form of the generic norm
                CHECK(std::abs(k - std::exp(-lam * log_generic_norm(D, a, b))) < 1e-9 * std::abs(k));
            }
            if (spec.family == Family::SymReal) {
                const CMat A = D.to_matrix(a), B = D.to_matrix(b);
                const CMat M = CMat::Identity(A.rows(), A.cols()) - A * B.adjoint();
                // (I - A B*) has spectrum in the right half-plane only near 0, so compare moduli
                const double mod = std::pow(std::abs(M.determinant()), -1.5);
                CHECK(std::abs(kernel_bounded(D, 1.5, a, b)) == doctest::Approx(mod).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("mobius maps") {
    MobiusMap id = mobius_identity(1);
    CHECK(std::abs(mobius_jacobian(id, scalar(0.3)) - 1.0) < 1e-15);
    MobiusMap phi{scalar(cd(0.4, 0.2)), CMat::Identity(1, 1)};
    CHECK(std::abs(mobius_jacobian(phi, scalar(0.0)) - (1.0 - 0.2)) < 1e-14);

    for (const auto& spec : {disc_spec(), ball_spec(2), ball_spec(3)}) {
        const Domain D(spec);
        CAPTURE(D.name());
        const double g = D.genus();
        Rng rng(46);
        double worst = 0;
        for (int i = 0; i < 100; ++i) {
            const MobiusMap m = mobius_sample(D, rng);
            const CVec z = sample_bounded(D, rng), w = sample_bounded(D, rng);
            CHECK(in_bounded_domain(D, mobius_apply(m, z)));
            CHECK((mobius_apply_inverse(m, mobius_apply(m, z)) - z).norm() < 1e-12);
            for (double lam : {1.0, g, 0.7}) {
                const cd lhs = kernel_bounded(D, lam, z, w);
                const cd rhs = mobius_jacobian_power(m, z, lam) *
                               kernel_bounded(D, lam, mobius_apply(m, z), mobius_apply(m, w)) *
                               std::conj(mobius_jacobian_power(m, w, lam));
                worst = std::max(worst, std::abs(lhs - rhs) / std::abs(lhs));
            }
            // the lambda = g power is the complex Jacobian itself
            CHECK(std::abs(mobius_jacobian_power(m, z, g) - mobius_jacobian(m, z)) < 1e-12 * std::abs(mobius_jacobian(m, z)));
        }
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("affine maps") {
    const Domain& D1 = disc();
    AffineMap tr = affine_identity(D1);
    tr.x0 = Vec::Constant(1, 2.5);
    const SiegelPoint p{CVec(0), scalar(cd(0.1, 0.7))};
    CHECK((affine_apply(D1, tr, p).z - scalar(cd(2.6, 0.7))).norm() < 1e-15);
    AffineMap half = affine_identity(D1);
    half.t = cholesky_t(D1.algebra(), Vec::Constant(1, 0.25));
    CHECK((affine_apply(D1, half, p).z - 0.25 * p.z).norm() < 1e-15);

    for (const auto& spec : all_specs()) {
        const Domain D(spec);
        CAPTURE(D.name());
        Rng rng(47);
        for (int i = 0; i < 100; ++i) {
            const AffineMap a = affine_sample(D, rng), b = affine_sample(D, rng);
            const SiegelPoint q = cayley(D, sample_bounded(D, rng));
            const SiegelPoint ab = affine_apply(D, affine_compose(D, a, b), q);
            const SiegelPoint seq = affine_apply(D, a, affine_apply(D, b, q));
            const double scale = std::max(1.0, seq.z.norm());
            CHECK((ab.z - seq.z).norm() < 1e-10 * scale);
            CHECK((ab.zeta - seq.zeta).norm() < 1e-10 * scale);
            CHECK(in_siegel_domain(D, affine_apply(D, a, q)));
            const SiegelPoint back = affine_apply(D, affine_inverse(D, a), affine_apply(D, a, q));
            CHECK((back.z - q.z).norm() < 1e-10 * std::max(1.0, q.z.norm()));

            // translations leave the height unchanged
            AffineMap n = a;
            n.t = triangular_identity(D.algebra());
            const Vec h0 = siegel_height(D, q), h1 = siegel_height(D, affine_apply(D, n, q));
            CHECK((h1 - h0).norm() < 1e-12 * std::max(1.0, h0.norm() + a.zeta0.squaredNorm()));

            const double d0 = invariant_measure_density(D, q);
            const double d1 = invariant_measure_density(D, affine_apply(D, a, q));
            const double jac = std::pow(affine_abs_jacobian(D, a), 2);
            CHECK(std::abs(d1 * jac - d0) < 1e-9 * d0);
        }
        CHECK(invariant_measure_density(D, siegel_base_point(D)) == doctest::Approx(1.0));
    }
    CHECK(invariant_measure_density(D1, p) == doctest::Approx(std::pow(0.7, -2)));
}

TEST_CASE("samplers") {
    Rng rng(48);
    long attempts = 0, accepted = 0;
    for (; accepted < 1000000; ++accepted) {
        long a = 0;
        const CVec z = sample_bounded(disc(), rng, &a);
        attempts += a;
        if (!in_bounded_domain(disc(), z)) break;
    }
    CHECK(accepted == 1000000);
    CHECK(double(accepted) / attempts == doctest::Approx(M_PI / 4).epsilon(0.02));
    CHECK(bounded_proposal_volume(disc()) == doctest::Approx(4.0));

    for (const auto& spec : all_specs()) {
        const Domain D(spec);
        CAPTURE(D.name());
        int bad = 0;
        for (int i = 0; i < 100000; ++i) {
            const SiegelSample s = sample_siegel(D, rng);
            bad += !(std::isfinite(s.density) && s.density > 0 && in_siegel_domain(D, s.p));
        }
        CHECK(bad == 0);
    }
}
