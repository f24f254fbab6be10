#include <doctest.h>

#include <cmath>

#include "support.hpp"

using namespace symdom;
using namespace symdom::test;

namespace {

double binom(int n, int k) { return std::round(std::tgamma(n + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(n - k + 1.0))); }

std::vector<Domain> projector_domains() {
    return {Domain(ball_spec(2)), Domain({Family::SymReal, 2, 0}), Domain({Family::SpinFactor, 4, 0})};
}

// Complex Gaussian with E|z_i|^2 = 1, the Fock weight e^{-|z|^2}/pi^n.
CVec fock_sample(int n, Rng& rng) {
    std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
    CVec z(n);
    for (int i = 0; i < n; ++i) {
        const double re = nd(rng);
        z(i) = cd(re, nd(rng));
    }
    return z;
}

// Symmetric matrix of the quadratic form Delta_r (rank 2) in Z coordinates.
CMat quadratic_form(const SparsePolynomial& q, int n) {
    CMat Q = CMat::Zero(n, n);
    for (const auto& [key, c] : q.terms()) {
        const auto al = key_exponents(key, n);
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < al[i]; ++k) idx.push_back(i);
        if (idx[0] == idx[1]) {
            Q(idx[0], idx[0]) += c;
        } else {
            Q(idx[0], idx[1]) += 0.5 * c;
            Q(idx[1], idx[0]) += 0.5 * c;
        }
    }
    return Q;
}

}  // namespace

TEST_CASE("polynomial arithmetic") {
    const auto z1sq = SparsePolynomial::monomial(2, {2, 0});
    CVec p(2);
    p << 2.0, 5.0;
    CHECK(std::abs(z1sq.eval(p) - 4.0) < 1e-15);
    const auto same = compose_linear(z1sq, CMat::Identity(2, 2));
    CHECK(fischer_norm(same - z1sq) == 0.0);
    CMat L = CMat::Identity(2, 2) * 2.0;
    CHECK(fischer_norm(compose_linear(z1sq, L) - 4.0 * z1sq) < 1e-14);

    Rng rng(51);
    const auto a = random_polynomial(3, 4, rng), b = random_polynomial(3, 3, rng);
    const CVec z = gaussian_cvec(3, rng);
    CHECK(std::abs((a * b).eval(z) - a.eval(z) * b.eval(z)) < 1e-10 * std::abs(a.eval(z) * b.eval(z)));
    CHECK(std::abs((a + b).eval(z) - (a.eval(z) + b.eval(z))) < 1e-12 * (1 + std::abs(a.eval(z))));
    const CMat M = CMat::Random(3, 3);
    const CVec c = CVec::Random(3);
    CHECK(std::abs(compose_affine(a, M, c).eval(z) - a.eval(M * z + c)) < 1e-10 * std::max(1.0, std::abs(a.eval(M * z + c))));
    CHECK(std::abs(power(b, 3).eval(z) - std::pow(b.eval(z), 3)) < 1e-9 * std::abs(std::pow(b.eval(z), 3)));
    CHECK(a.homogeneous_part(2).degree() == 2);
    CHECK(make_key({0, 0, 3}) > make_key({2, 0, 0}));  // graded first
    CHECK(make_key({3, 0, 0}) > make_key({1, 2, 0}));  // then lexicographic
    CHECK(key_degree(make_key({1, 2, 0})) == 3);
    CHECK(key_factorial(make_key({2, 3}), 2) == doctest::Approx(12.0));
}

TEST_CASE("fischer inner product") {
    CHECK(std::abs(fischer_inner(SparsePolynomial::constant(1, 1.0), SparsePolynomial::constant(1, 1.0)) - 1.0) < 1e-15);
    CHECK(std::abs(fischer_inner(z_power(2), z_power(2)) - 2.0) < 1e-15);
    const auto z1z2 = SparsePolynomial::monomial(2, {1, 1});
    CHECK(std::abs(fischer_inner(z1z2, z1z2) - 1.0) < 1e-15);
    CHECK(std::abs(fischer_inner(z_power(3), z_power(2))) == 0.0);

    // Gaussian-integral oracle at 1e6 samples, 20 random degree <= 4 pairs
    for (int pair = 0; pair < 20; ++pair) {
        Rng rng = make_rng(52, 1, pair);
        const auto p = random_polynomial(2, 4, rng), q = random_polynomial(2, 4, rng);
        const long n = 1000000;
        cd sum = 0.0;
        double sq = 0.0;
        for (long i = 0; i < n; ++i) {
            const CVec z = fock_sample(2, rng);
            const cd v = p.eval(z) * std::conj(q.eval(z));
            sum += v;
            sq += std::norm(v);
        }
        const cd mean = sum / double(n);
        const double se = std::sqrt((sq / n - std::norm(mean)) / n);
        CAPTURE(pair);
        CHECK(std::abs(mean - fischer_inner(p, q)) < 3 * se);
    }
}

TEST_CASE("isotropy group samples") {
    for (const auto& spec : all_specs()) {
        const Domain D(spec);
        CAPTURE(D.name());
        Rng rng(53);
        const KSample id = k_identity(D);
        const CVec z0 = gaussian_cvec(D.dim(), rng);
        CHECK((apply_k(id, z0) - z0).norm() == 0.0);
        for (int i = 0; i < 100; ++i) {
            const KSample k = haar_sample_K(D, rng);
            const CVec z = gaussian_cvec(D.dim(), rng), y = gaussian_cvec(D.dim(), rng), x = gaussian_cvec(D.dim(), rng);
            CHECK(spectral_norm(D, apply_k(k, z)) == doctest::Approx(spectral_norm(D, z)).epsilon(1e-10));
            const CVec lhs = D.triple(apply_k(k, x), apply_k(k, y), apply_k(k, z));
            const CVec rhs = apply_k(k, D.triple(x, y, z));
            CHECK((lhs - rhs).norm() < 1e-9 * rhs.norm());
            CHECK((k.L.adjoint() * k.L - CMat::Identity(D.dim(), D.dim())).norm() < 1e-10);
        }
        // Haar symmetry: entry means vanish
        const int N = 10000;
        CMat sum = CMat::Zero(D.dim(), D.dim());
        Mat sq = Mat::Zero(D.dim(), D.dim());
        for (int i = 0; i < N; ++i) {
            const CMat L = haar_sample_K(D, rng).L;
            sum += L;
            sq += L.cwiseAbs2();
        }
        int outliers = 0;
        for (int a = 0; a < D.dim(); ++a)
            for (int b = 0; b < D.dim(); ++b) {
                const double se = std::sqrt(sq(a, b) / N / N);
                outliers += std::abs(sum(a, b) / double(N)) > 3 * se;
            }
        CHECK(outliers == 0);
    }
}

TEST_CASE("fischer product is K-invariant") {
    for (const auto& D : projector_domains()) {
        Rng rng(54);
        for (int i = 0; i < 20; ++i) {
            const auto p = random_polynomial(D.dim(), 4, rng), q = random_polynomial(D.dim(), 4, rng);
            const KSample k = haar_sample_K(D, rng);
            const cd a = fischer_inner(compose_linear(p, k.L), compose_linear(q, k.L));
            const cd b = fischer_inner(p, q);
            CHECK(std::abs(a - b) < 1e-9 * std::max(1.0, std::abs(b)));
        }
    }
}

TEST_CASE("determinant polynomials") {
    for (const auto& spec : all_specs()) {
        const Domain D(spec);
        CAPTURE(D.name());
        const Algebra& A = D.algebra();
        Rng rng(55);
        for (int j = 1; j <= D.rank(); ++j) {
            const auto dp = delta_poly(D, j);
            CHECK(std::abs(dp.eval(D.e_point()) - 1.0) < 1e-12);
            CHECK(dp.degree() == j);
            for (int i = 0; i < 20; ++i) {
                const CVec w = gaussian_cvec(D.dim(), rng);
                // type I coordinates are matrix entries; the others are algebra coordinates
                const cd minor = D.type_one() ? D.to_matrix(w).topLeftCorner(j, j).determinant() : delta_j(A, w, j);
                CHECK(std::abs(dp.eval(w) - minor) < 1e-10 * std::max(1.0, std::abs(minor)));
            }
        }
    }
}

TEST_CASE("orbit spans") {
    const Domain B2(ball_spec(2));
    std::vector<KSample> ks;
    Rng rng(56);
    for (int i = 0; i < 32; ++i) ks.push_back(haar_sample_K(B2, rng));
    CHECK(orbit_span(SparsePolynomial::variable(2, 0), ks).rank() == 2);
    CHECK(orbit_span(SparsePolynomial::constant(2, 1.0), ks).rank() == 1);

    const Domain S2({Family::SymReal, 2, 0});
    std::vector<KSample> ks2;
    for (int i = 0; i < 32; ++i) ks2.push_back(haar_sample_K(S2, rng));
    CHECK(orbit_span(delta_poly(S2, 2), ks2).rank() == 1);

    OrbitSpanOptions opt;
    opt.batch_size = 1;
    opt.max_batches = 2;
    CHECK_THROWS_AS(orbit_span_adaptive(S2, delta_s_factors(S2, {3, 0}), opt, 9), RankNotStable);
}

TEST_CASE("projections onto the K-types") {
    // rank one: homogeneous components
    ProjectionCache disc_cache{Domain(disc_spec())};
    const auto f = SparsePolynomial::constant(1, 1.0) + z_power(1);
    CHECK(fischer_norm(disc_cache.project(f, {1}) - z_power(1)) < 1e-15);

    for (const auto& D : projector_domains()) {
        CAPTURE(D.name());
        ProjectionCache cache(D);
        const int deg = 6;
        const auto sigs = enumerate_signatures(D.rank(), deg);
        Rng rng(57);
        const auto p = random_polynomial(D.dim(), deg, rng);
        SparsePolynomial total(D.dim());
        double idem = 0, orth = 0;
        for (const auto& s : sigs) {
            const auto ps = cache.project(p, s);
            total += ps;
            idem = std::max(idem, fischer_norm(cache.project(ps, s) - ps) / fischer_norm(p));
            for (const auto& t : sigs)
                if (t != s) orth = std::max(orth, fischer_norm(cache.project(ps, t)) / fischer_norm(p));
            // the generator lies in its own space
            const auto gen = expand_factors(delta_s_factors(D, s), D.dim());
            CHECK(fischer_norm(cache.project(gen, s) - gen) < 1e-8 * fischer_norm(gen));
        }
        CHECK(idem < 1e-8);
        CHECK(orth < 1e-8);
        CHECK(fischer_norm(total - p) < 1e-8 * fischer_norm(p));

        // dimensions add up degree by degree
        for (int k = 0; k <= deg; ++k) {
            int sum = 0;
            for (const auto& s : sigs)
                if (total_degree(s) == k) sum += cache.dim(s);
            CHECK(sum == homogeneous_dim(D.dim(), k));
        }
        CHECK(cache.dim(Signature(D.rank(), 0)) == 1);
    }

    for (int n : {2, 3}) {
        ProjectionCache cache{Domain(ball_spec(n))};
        for (int k = 0; k <= 6; ++k) CHECK(cache.dim({k}) == binom(n + k - 1, k));
    }
    CHECK(dim_Ps(Domain({Family::SymReal, 2, 0}), {1, 1}) == 1);
}

TEST_CASE("parallel and serial orbit spans agree") {
    const Domain D({Family::SpinFactor, 4, 0});
    OrbitSpanOptions ser, par;
    ser.exec = Exec::Serial;
    par.exec = Exec::Parallel;
    const auto gen = delta_s_factors(D, {3, 1});
    const OrbitBasis a = orbit_span_adaptive(D, gen, ser, 3), b = orbit_span_adaptive(D, gen, par, 3);
    REQUIRE(a.rank() == b.rank());
    CHECK((a.Q - b.Q).norm() == 0.0);
}

TEST_CASE("kernel taylor expansion") {
    const Domain disc(disc_spec());
    CVec w(1);
    w << cd(0.3, -0.2);
    for (double lam : {0.5, 1.0, 2.0, 3.7}) {
        const auto kt = kernel_taylor(disc, lam, w, 20);
        double coef = 1.0;
        for (int k = 0; k <= 20; ++k) {
            const cd expect = coef * std::pow(std::conj(w(0)), k);
            CHECK(std::abs(kt.coeff({k}) - expect) < 1e-13 * std::max(1.0, std::abs(expect)));
            coef *= (lam + k) / (k + 1);
        }
    }
    for (const auto& spec : all_specs()) {
        const Domain D(spec);
        CAPTURE(D.name());
        Rng rng(58);
        const CVec wp = 0.5 * sample_bounded(D, rng);
        CHECK(fischer_norm(kernel_taylor(D, 0.0, wp, 6) - SparsePolynomial::constant(D.dim(), 1.0)) < 1e-14);
        const auto kt = kernel_taylor(D, 1.5, wp, 10);
        CHECK(std::abs(kt.coeff(std::vector<int>(D.dim(), 0)) - 1.0) < 1e-14);
        const CVec z = 0.3 * sample_bounded(D, rng);
        CHECK(std::abs(kt.eval(z) - kernel_bounded(D, 1.5, z, wp)) < 1e-5);
    }
}

TEST_CASE("box operator") {
    const Domain disc(disc_spec());
    CHECK(fischer_norm(box_operator(disc, z_power(2)) - 2.0 * z_power(1)) < 1e-15);

    const Domain S2({Family::SymReal, 2, 0});
    const auto delta = delta_poly(S2, 2);
    const auto bd = box_operator(S2, delta);
    CHECK(bd.degree() == 0);
    CHECK_THROWS_AS(box_operator(Domain(ball_spec(2)), z_power(1)), Unsupported);

    // finite differences of a random cubic against the symbol of Delta
    const CMat Q = quadratic_form(delta, 3);
    Rng rng(59);
    const auto f = random_polynomial(3, 3, rng);
    const CVec z = gaussian_cvec(3, rng);
    const double h = 1e-3;
    cd fd = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const CVec ei = h * CVec::Unit(3, i), ej = h * CVec::Unit(3, j);
            const cd d2 = (f.eval(z + ei + ej) - f.eval(z + ei - ej) - f.eval(z - ei + ej) + f.eval(z - ei - ej)) / (4 * h * h);
            fd += Q(i, j) * d2;
        }
    const cd exact = box_operator(S2, f).eval(z);
    CHECK(std::abs(fd - exact) < 1e-5 * std::max(1.0, std::abs(exact)));
    CHECK(std::abs(bd.eval(z) - box_operator(S2, delta).eval(CVec::Zero(3))) < 1e-14);
}
