#include "suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "symdom/invariant.hpp"

namespace symdom::harness {

namespace {

// Stream tags for per-suite random draws.
enum : std::uint64_t {
    kAlgebra = 100,
    kCone,
    kFischer,
    kKernels,
    kHnorm,
    kHtilde,
    kIntertwine,
    kMinmax,
    kBergman,
};

double tol_or(const RunConfig& cfg, double def) { return cfg.tol > 0.0 ? cfg.tol : def; }

std::vector<Domain> domains_or(const RunConfig& cfg, const std::vector<FamilySpec>& defaults) {
    if (!cfg.family.empty()) return {config_domain(cfg)};
    std::vector<Domain> out;
    for (const auto& s : defaults) out.emplace_back(s);
    return out;
}

cd normal_cd(Rng& rng) {
    std::normal_distribution<double> nd;
    const double re = nd(rng);
    return cd(re, nd(rng));
}

SparsePolynomial random_polynomial(int nvars, int max_degree, Rng& rng) {
    SparsePolynomial p(nvars);
    for (int k = 0; k <= max_degree; ++k)
        for (MonoKey m : homogeneous_monomials(nvars, k)) p.add_term(m, normal_cd(rng));
    return p;
}

// Point of D with spectral norm exactly `radius`.
CVec point_with_norm(const Domain& D, Rng& rng, double radius) {
    CVec z = sample_bounded(D, rng);
    return z * (radius / spectral_norm(D, z));
}

Vec random_element(const Algebra& A, Rng& rng) {
    std::normal_distribution<double> nd;
    Vec x(A.dim());
    for (int i = 0; i < x.size(); ++i) x(i) = nd(rng);
    return x;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }
double rel(cd a, cd b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

json lam_inputs(const Domain& D, double lambda) { return {{"domain", D.name()}, {"lambda", lambda}}; }

// ---- algebra

void suite_algebra(const RunConfig& cfg, Report& rep) {
    const auto doms = domains_or(cfg, {disc_spec(), ball_spec(3), {Family::SymReal, 3, 0},
                                       {Family::HermComplex, 2, 3}, {Family::HermQuaternion, 2, 0},
                                       {Family::SpinFactor, 5, 0}});
    for (const Domain& D : doms) {
        const Algebra& A = D.algebra();
        const Vec e = identity(A);
        double jordan = 0, spectral = 0, inv = 0, det = 0;
        for (int i = 0; i < 20; ++i) {
            Rng rng = make_rng(cfg.seed, kAlgebra, i);
            const Vec x = random_element(A, rng), y = random_element(A, rng);
            const Vec x2 = jordan_product(A, x, x);
            const Vec lhs = jordan_product(A, x2, jordan_product(A, x, y));
            const Vec rhs = jordan_product(A, x, jordan_product(A, x2, y));
            jordan = std::max(jordan, (lhs - rhs).norm() / (std::pow(x.norm(), 3) * y.norm()));
            const SpectralDecomposition sd = spectral_decomposition(A, x);
            Vec rec = Vec::Zero(x.size());
            double prod = 1.0;
            for (int k = 0; k < sd.eigenvalues.size(); ++k) {
                rec += sd.eigenvalues(k) * sd.frame[k];
                prod *= sd.eigenvalues(k);
            }
            spectral = std::max(spectral, (rec - x).norm() / x.norm());
            det = std::max(det, rel(determinant(A, x), prod));
            const Vec xp = x2 + 0.1 * e;
            inv = std::max(inv, (jordan_product(A, xp, inverse(A, xp)) - e).norm());
        }
        const json in = {{"domain", D.name()}, {"samples", 20}};
        rep.add(check_le("algebra", "jordan_identity", in, jordan, tol_or(cfg, 1e-12), "relative"));
        rep.add(check_le("algebra", "spectral_reconstruction", in, spectral, tol_or(cfg, 1e-12), "relative"));
        rep.add(check_le("algebra", "determinant_vs_eigenvalues", in, det, tol_or(cfg, 1e-10), "relative"));
        rep.add(check_le("algebra", "inverse", in, inv, tol_or(cfg, 1e-9), "absolute"));
        const StructureConstants c = constants_of(D.desc());
        rep.add(check_le("algebra", "structure_identity", in,
                         std::abs(double(c.m) / c.r - 1.0 - c.a * (c.r - 1) / 2.0), tol_or(cfg, 1e-12), "absolute"));
    }
}

// ---- cone

void suite_cone(const RunConfig& cfg, Report& rep) {
    const auto doms = domains_or(cfg, {disc_spec(), {Family::SymReal, 3, 0}, {Family::HermComplex, 3, 0},
                                       {Family::HermQuaternion, 2, 0}, {Family::SpinFactor, 5, 0}});
    for (const Domain& D : doms) {
        const Algebra& A = D.algebra();
        const Vec e = identity(A);
        const int r = A.rank();
        double chol = 0, charlaw = 0, group = 0;
        int outside = 0;
        for (int i = 0; i < 20; ++i) {
            Rng rng = make_rng(cfg.seed, kCone, i);
            const Vec y = random_element(A, rng);
            const Vec x = jordan_product(A, y, y) + 0.2 * e;
            outside += !in_cone(A, x);
            chol = std::max(chol, (t_action(A, cholesky_t(A, x), e) - x).norm() / x.norm());
            const TriangularElement t = random_triangular(A, rng);
            std::uniform_real_distribution<double> ud(-2.0, 2.0);
            Vec s(r);
            for (int j = 0; j < r; ++j) s(j) = ud(rng);
            const double lhs = delta_power(A, t_action(A, t, x), s);
            const double rhs = character(A, t, s) * delta_power(A, x, s);
            charlaw = std::max(charlaw, std::abs(lhs - rhs) / std::abs(rhs));
            const Vec back = t_action(A, inverse(A, t), t_action(A, t, x));
            group = std::max(group, (back - x).norm() / x.norm());
        }
        const json in = {{"domain", D.name()}, {"samples", 20}};
        rep.add(check_le("cone", "squares_in_cone", in, outside, 0, "count"));
        rep.add(check_le("cone", "cholesky_reconstruction", in, chol, tol_or(cfg, 1e-10), "relative"));
        rep.add(check_le("cone", "generalized_power_character", in, charlaw, tol_or(cfg, 1e-9), "relative"));
        rep.add(check_le("cone", "triangular_inverse", in, group, tol_or(cfg, 1e-10), "relative"));
    }
}

// ---- fischer (projector suite)

void suite_fischer(const RunConfig& cfg, Report& rep) {
    const int deg = cfg.trunc > 0 ? cfg.trunc : 6;
    const auto doms = domains_or(cfg, {ball_spec(2), {Family::SymReal, 2, 0}, {Family::SpinFactor, 4, 0}});
    for (const Domain& D : doms) {
        OrbitSpanOptions opt;
        opt.seed = cfg.seed;
        opt.exec = cfg.exec();
        ProjectionCache cache(D, opt);
        cache.prebuild(deg);
        const auto sigs = enumerate_signatures(D.rank(), deg);
        Rng rng = make_rng(cfg.seed, kFischer, 0);
        const SparsePolynomial f = random_polynomial(D.dim(), deg, rng);
        const double nf2 = std::pow(fischer_norm(f), 2);
        double idem = 0, orth = 0, dims = 0;
        std::map<Signature, SparsePolynomial> proj;
        SparsePolynomial sum(D.dim());
        for (const auto& s : sigs) {
            proj.emplace(s, cache.project(f, s));
            const SparsePolynomial& p = proj.at(s);
            idem = std::max(idem, fischer_norm(cache.project(p, s) - p) / std::sqrt(nf2));
            sum += p;
        }
        for (const auto& [s, p] : proj)
            for (const auto& [t, q] : proj)
                if (s < t) orth = std::max(orth, std::abs(fischer_inner(p, q)) / nf2);
        for (int k = 0; k <= deg; ++k) {
            int total = 0;
            for (const auto& s : sigs)
                if (total_degree(s) == k) total += cache.dim(s);
            dims = std::max(dims, double(std::abs(total - homogeneous_dim(D.dim(), k))));
            if (D.is_rank_one_ball() && D.dim() == 2)
                dims = std::max(dims, double(std::abs(cache.dim({k}) - (k + 1))));
        }
        const json in = {{"domain", D.name()}, {"degree", deg}};
        rep.add(check_le("fischer", "projector_idempotence", in, idem, tol_or(cfg, 1e-8), "fischer"));
        rep.add(check_le("fischer", "projector_orthogonality", in, orth, tol_or(cfg, 1e-8), "fischer"));
        rep.add(check_le("fischer", "projector_completeness", in, fischer_norm(sum - f) / std::sqrt(nf2), tol_or(cfg, 1e-8),
                         "fischer"));
        rep.add(check_le("fischer", "dimension_count", in, dims, 0.0, "count"));
        double dpoly = 0;
        for (int i = 0; i < 10; ++i) {
            Rng r2 = make_rng(cfg.seed, kFischer, 1 + i);
            const CVec z = sample_bounded(D, r2);
            for (int j = 1; j <= D.rank(); ++j) {
                const cd want = D.type_one() ? D.to_matrix(z).topLeftCorner(j, j).determinant()
                                             : delta_j(D.algebra(), z, j);
                dpoly = std::max(dpoly, rel(delta_poly(D, j).eval(z), want));
            }
        }
        rep.add(check_le("fischer", "delta_polynomial_vs_minor", in, dpoly, tol_or(cfg, 1e-12), "relative"));
    }
}

// ---- kernels and geometry

void suite_kernels(const RunConfig& cfg, Report& rep) {
    const auto doms = domains_or(cfg, {disc_spec(), ball_spec(2), {Family::SymReal, 2, 0}, {Family::SymReal, 3, 0},
                                       {Family::HermComplex, 2, 3}, {Family::HermQuaternion, 2, 0},
                                       {Family::SpinFactor, 4, 0}, {Family::SpinFactor, 5, 0}});
    for (const Domain& D : doms) {
        double round = 0;
        int outside = 0;
        for (int i = 0; i < 1000; ++i) {
            Rng rng = make_rng(cfg.seed, kKernels, i);
            const CVec z = sample_bounded(D, rng);
            const SiegelPoint p = cayley(D, z);
            outside += !in_siegel_domain(D, p);
            round = std::max(round, (inverse_cayley(D, p) - z).norm());
        }
        const json in = {{"domain", D.name()}, {"points", 1000}};
        rep.add(check_le("kernels", "cayley_roundtrip", in, round, tol_or(cfg, 1e-10), "absolute"));
        rep.add(check_le("kernels", "cayley_image_in_siegel_domain", in, outside, 0, "count"));

        double height = 0, heis = 0, dens = 0, supinv = 0;
        const double lam = D.genus();
        const std::vector<SiegelPoint> grid = siegel_grid(D, 100, cfg.seed);
        Lattice atom{{siegel_base_point(D)}, 1.0};
        const HolFunction f = atomic_synthesis(D, {1.0}, atom, lam);
        const double base = sup_norm_max_space(D, f, lam, grid);
        SiegelSamplerParams light;
        light.heavy_tails = false;
        for (int i = 0; i < 20; ++i) {
            Rng rng = make_rng(cfg.seed, kKernels, 5000 + i);
            const AffineMap m = affine_sample(D, rng, 0.3);
            AffineMap hm = m;
            hm.t = triangular_identity(D.algebra());
            const SiegelPoint p = sample_siegel(D, rng, light).p;
            const Vec hp = siegel_height(D, p);
            const Vec want = t_action(D.algebra(), m.t, hp);
            height = std::max(height, (siegel_height(D, affine_apply(D, m, p)) - want).norm() / want.norm());
            heis = std::max(heis, (siegel_height(D, affine_apply(D, hm, p)) - hp).norm() / hp.norm());
            const double jac = affine_abs_jacobian(D, m);
            const double d1 = invariant_measure_density(D, affine_apply(D, m, p)) * jac * jac;
            const double d0 = invariant_measure_density(D, p);
            dens = std::max(dens, std::abs(d1 - d0) / d0);
            std::vector<SiegelPoint> moved;
            for (const auto& q : grid) moved.push_back(affine_apply(D, m, q));
            supinv = std::max(supinv, std::abs(sup_norm_max_space(D, affine_transport(D, f, m, lam), lam, moved) -
                                               base) / base);
        }
        rep.add(check_le("kernels", "affine_height_law", in, height, tol_or(cfg, 1e-12), "relative"));
        rep.add(check_le("kernels", "heisenberg_height_invariance", in, heis, tol_or(cfg, 1e-12), "relative"));
        rep.add(check_le("kernels", "invariant_measure_equivariance", in, dens, tol_or(cfg, 1e-9), "relative"));
        rep.add(check_le("kernels", "sup_norm_affine_invariance", in, supinv, tol_or(cfg, 1e-12), "relative"));
        rep.add(check_le("kernels", "atom_normalization", in, std::abs(base - 1.0), tol_or(cfg, 1e-12), "absolute"));

        if (D.is_rank_one_ball()) {
            double law = 0;
            for (double l : {0.7, 2.5}) {
                for (int i = 0; i < 50; ++i) {
                    Rng rng = make_rng(cfg.seed, kKernels, 9000 + i);
                    const MobiusMap phi = mobius_sample(D, rng);
                    const CVec z = sample_bounded(D, rng), w = sample_bounded(D, rng);
                    const cd lhs = kernel_bounded(D, l, mobius_apply(phi, z), mobius_apply(phi, w)) *
                                   mobius_jacobian_power(phi, z, l) * std::conj(mobius_jacobian_power(phi, w, l));
                    law = std::max(law, std::abs(lhs - kernel_bounded(D, l, z, w)) /
                                            std::abs(kernel_bounded(D, l, z, w)));
                }
            }
            rep.add(check_le("kernels", "mobius_kernel_law", in, law, tol_or(cfg, 1e-9), "relative"));
        }
    }
}

// ---- H_lambda series norms

std::vector<double> hnorm_lambdas(const RunConfig& cfg, const Domain& D) {
    if (cfg.lambdas_set) return cfg.lambdas;
    const StructureConstants c = constants_of(D.desc());
    if (c.r == 1) return {1.0, 2.0};
    return {c.a / 2.0, D.genus()};
}

void suite_hnorm(const RunConfig& cfg, Report& rep) {
    const auto doms = domains_or(cfg, {disc_spec(), {Family::SymReal, 2, 0}, {Family::SpinFactor, 4, 0}});
    for (const Domain& D : doms) {
        const int trunc = cfg.trunc > 0 ? cfg.trunc : (D.rank() == 1 ? 60 : 12);
        OrbitSpanOptions opt;
        opt.seed = cfg.seed;
        opt.exec = cfg.exec();
        ProjectionCache cache(D, opt);
        cache.prebuild(trunc);
        const StructureConstants c = constants_of(D.desc());
        for (double lam : hnorm_lambdas(cfg, D)) {
            json in = lam_inputs(D, lam);
            in["trunc"] = trunc;
            in["pairs"] = cfg.pairs;
            if (!wallach_contains(lam, c)) {
                Record r = info("hnorm", "reproducing_identity", in, 0.0, "fischer");
                r.status = Status::Inconclusive;
                r.inputs["skipped"] = "lambda outside the Wallach set";
                rep.add(r);
                continue;
            }
            double worst = 0.0;
            for (int i = 0; i < cfg.pairs; ++i) {
                Rng rng = make_rng(cfg.seed, kHnorm, i);
                std::uniform_real_distribution<double> ud(0.0, 0.6);
                const CVec w = point_with_norm(D, rng, ud(rng)), w2 = point_with_norm(D, rng, ud(rng));
                const SeriesValue v = h_lambda_inner(cache, kernel_taylor(D, lam, w, trunc),
                                                     kernel_taylor(D, lam, w2, trunc), lam, trunc);
                const double err = std::abs(v.value - kernel_bounded(D, lam, w2, w));
                worst = std::max(worst, err / std::max(1e-6, v.last_shell));
            }
            rep.add(check_le("hnorm", "reproducing_identity_over_tail_bound", in, worst, 1.0, "fischer"));
        }
        if (D.is_rank_one_ball() && D.dim() == 1) {
            double hardy_series = 0, poch = 0;
            for (int k = 0; k <= std::min(40, trunc); ++k) {
                const SparsePolynomial zk = SparsePolynomial::monomial(1, {k});
                hardy_series = std::max(hardy_series, std::abs(h_lambda_inner(cache, zk, zk, 1.0, trunc).value - 1.0));
                const double want = std::tgamma(k + 1.0) / pochhammer(2.5, Signature{k}, c);
                poch = std::max(poch, std::abs(h_lambda_inner(cache, zk, zk, 2.5, trunc).value.real() / want - 1.0));
            }
            rep.add(check_le("hnorm", "hardy_series_norm_of_monomials", lam_inputs(D, 1.0), hardy_series, tol_or(cfg, 1e-12),
                             "fischer"));
            rep.add(check_le("hnorm", "monomial_norm_pochhammer", lam_inputs(D, 2.5), poch, tol_or(cfg, 1e-12), "fischer"));
            double hardy_mc = 0;
            for (int k : {1, 5, 10}) {
                const McEstimate e = hardy_norm_mc(D, from_polynomial(SparsePolynomial::monomial(1, {k})),
                                                   cfg.samples, default_hardy_radii(), cfg.seed, cfg.exec());
                hardy_mc = std::max(hardy_mc, std::abs(e.value - 1.0));
            }
            rep.add(check_le("hnorm", "hardy_mc_of_monomials", {{"domain", D.name()}, {"samples", cfg.samples}},
                             hardy_mc, tol_or(cfg, 0.01), "lebesgue"));
            Rng rng = make_rng(cfg.seed, kHnorm, 1000);
            const SparsePolynomial f = random_polynomial(1, 5, rng);
            std::vector<double> radii;
            for (int i = 1; i <= 20; ++i) radii.push_back(i / 20.0);
            const DilationReport dr = dilation_monotonicity(cache, f, 2.0, radii, trunc);
            Record r = check_le("hnorm", "dilation_limit", lam_inputs(D, 2.0), rel(dr.norms.back(), dr.limit), tol_or(cfg, 1e-12),
                                "fischer");
            if (!dr.monotone) r.status = Status::Fail;
            r.inputs["monotone"] = dr.monotone;
            rep.add(r);
        }
    }
}

// ---- residual seminorms

void suite_htilde(const RunConfig& cfg, Report& rep) {
    const Domain D(disc_spec());
    ProjectionCache cache(D);
    const int trunc = cfg.trunc > 0 ? cfg.trunc : 12;
    auto sq = [&](const SparsePolynomial& f, double lam) {
        const double v = h_tilde_seminorm(cache, f, lam, trunc).value.real();
        return v * v;
    };
    const double c1 = sq(SparsePolynomial::monomial(1, {1}), 0.0);
    double prop = 0, lam1 = 0;
    for (int k = 1; k <= std::min(10, trunc); ++k) {
        prop = std::max(prop, std::abs(sq(SparsePolynomial::monomial(1, {k}), 0.0) / (c1 * k) - 1.0));
        if (k >= 2) lam1 = std::max(lam1, std::abs(sq(SparsePolynomial::monomial(1, {k}), -1.0) / (k * (k - 1.0)) - 1.0));
    }
    rep.add(info("htilde", "dirichlet_constant", lam_inputs(D, 0.0), c1, "fischer"));
    rep.add(check_le("htilde", "dirichlet_proportionality", lam_inputs(D, 0.0), prop, tol_or(cfg, 1e-9), "relative"));
    rep.add(check_le("htilde", "residue_norm_lambda_minus_one", lam_inputs(D, -1.0), lam1, tol_or(cfg, 1e-9), "relative"));
    rep.add(check_le("htilde", "constants_have_zero_seminorm", lam_inputs(D, 0.0),
                     sq(SparsePolynomial::constant(1, 3.0), 0.0), 0.0, "fischer"));
    double quad = 0;
    for (int i = 0; i < 10; ++i) {
        Rng rng = make_rng(cfg.seed, kHtilde, i);
        const SparsePolynomial f = random_polynomial(1, 6, rng);
        quad = std::max(quad, std::abs(dirichlet_integral_disc(f) / (M_PI * c1 * sq(f, 0.0)) - 1.0));
    }
    rep.add(check_le("htilde", "dirichlet_quadrature_vs_series", lam_inputs(D, 0.0), quad, tol_or(cfg, 0.01), "lebesgue"));
}

// ---- intertwining

void suite_intertwine(const RunConfig& cfg, Report& rep) {
    const Domain disc(disc_spec());
    const std::vector<double> lams = cfg.lambdas_set ? cfg.lambdas : std::vector<double>{0.0, -1.0, -2.0};
    for (double lam : lams) {
        if (lam > 0 || lam != std::floor(lam)) continue;
        double worst = 0;
        for (int i = 0; i < 20; ++i) {
            Rng rng = make_rng(cfg.seed, kIntertwine, i);
            const MobiusMap phi = mobius_sample(disc, rng);
            const SparsePolynomial f = random_polynomial(1, 6, rng);
            std::vector<cd> pts;
            for (int j = 0; j < 5; ++j) pts.push_back(uniform_complex_ball(1, 0.9, rng)(0));
            worst = std::max(worst, intertwine_check_disc(phi, f, static_cast<int>(lam), pts));
        }
        json in = lam_inputs(disc, lam);
        in["maps"] = 20;
        rep.add(check_le("intertwine", "disc_derivative_intertwining", in, worst, tol_or(cfg, 1e-9), "relative"));
    }
    const Domain sym2(FamilySpec{Family::SymReal, 2, 0});
    const StructureConstants c = constants_of(sym2.desc());
    const double mr = double(c.m) / c.r;
    const std::vector<double> tl = cfg.lambdas_set ? cfg.lambdas : std::vector<double>{mr - 2.0};
    for (double lam : tl) {
        const double k = mr - lam;
        if (k < 0 || k != std::floor(k)) continue;
        std::vector<AffineMap> maps;
        std::vector<CVec> pts;
        for (int i = 0; i < 15; ++i) {
            Rng rng = make_rng(cfg.seed, kIntertwine, 100 + i);
            AffineMap m = affine_sample(sym2, rng);
            if (i < 5) m.t = triangular_identity(sym2.algebra());  // translations
            if (i >= 5 && i < 10) m.x0.setZero();                  // dilations
            maps.push_back(m);
            pts.push_back(sample_siegel(sym2, rng).p.z);
        }
        Rng rng = make_rng(cfg.seed, kIntertwine, 99);
        const SparsePolynomial f = random_polynomial(sym2.dim(), 6, rng);
        json in = lam_inputs(sym2, lam);
        in["maps"] = 15;
        rep.add(check_le("intertwine", "tube_box_intertwining", in, intertwine_check_tube(sym2, f, lam, maps, pts),
                         tol_or(cfg, 1e-8), "relative"));
    }
}

// ---- sup-norm spaces, atoms and the disc chain

void suite_minmax(const RunConfig& cfg, Report& rep) {
    const Domain D(disc_spec());
    ProjectionCache cache(D);
    double c1 = INFINITY, c2 = 0;
    for (int i = 0; i < 20; ++i) {
        Rng rng = make_rng(cfg.seed, kMinmax, i);
        const SparsePolynomial f = random_polynomial(1, 6, rng);
        const double besov = besov1_norm_disc(f);
        const double ht = h_tilde_seminorm(cache, f, 0.0, 6).value.real();
        const double bloch = bloch_seminorm_disc(f);
        c1 = std::min(c1, besov / ht);
        c2 = std::max(c2, bloch / besov);
    }
    rep.add(info("minmax", "besov_over_dirichlet_min", {{"polynomials", 20}}, c1, "lebesgue"));
    rep.add(info("minmax", "bloch_over_besov_max", {{"polynomials", 20}}, c2, "lebesgue"));
    rep.add(check_le("minmax", "bloch_of_z", {}, std::abs(bloch_seminorm_disc(SparsePolynomial::variable(1, 0)) - 1.0),
                     tol_or(cfg, 1e-12), "absolute"));
    rep.add(check_le("minmax", "besov_of_z_squared", {},
                     std::abs(besov1_norm_disc(SparsePolynomial::monomial(1, {2})) - 2.0 * M_PI), tol_or(cfg, 1e-9), "lebesgue"));

    const double delta = 0.5, lam = 2.0;
    const Lattice L = lattice_generate(D, delta);
    double sep = INFINITY;
    for (size_t i = 0; i < L.points.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            sep = std::min(sep, half_plane_distance(L.points[i].z(0), L.points[j].z(0)));
    rep.add(check_ge("minmax", "lattice_separation", {{"delta", delta}, {"points", L.points.size()}}, sep,
                     2.0 * delta, "hyperbolic"));
    Rng rng = make_rng(cfg.seed, kMinmax, 100);
    std::vector<cd> a(L.points.size());
    double l1 = 0;
    for (auto& x : a) {
        x = normal_cd(rng) * 0.05;
        l1 += std::abs(x);
    }
    std::vector<SiegelPoint> grid = siegel_grid(D, 2000, cfg.seed);
    grid.insert(grid.end(), L.points.begin(), L.points.end());
    const double sup = sup_norm_max_space(D, atomic_synthesis(D, a, L, lam), lam, grid);
    rep.add(check_le("minmax", "atomic_sup_over_l1", {{"lambda", lam}, {"constant", 1.0}}, sup / l1, 1.0 + 1e-12,
                     "absolute"));
}

// ---- Bergman Monte Carlo

void suite_bergman(const RunConfig& cfg, Report& rep) {
    const std::vector<std::pair<FamilySpec, Realization>> runs = {
        {disc_spec(), Realization::Bounded},
        {disc_spec(), Realization::Siegel},
        {{Family::SymReal, 2, 0}, Realization::Bounded},
        {{Family::SymReal, 2, 0}, Realization::Siegel}};
    std::map<std::string, std::vector<McEstimate>> bounded;
    for (const auto& [spec, where] : runs) {
        const Domain D(spec);
        const double lam = D.genus() + 1.0;
        const int n = D.dim();
        std::vector<SparsePolynomial> ps = {SparsePolynomial::constant(n, 1.0), SparsePolynomial::variable(n, 0),
                                            SparsePolynomial::variable(n, n - 1, 2.0) + SparsePolynomial::constant(n, 0.5),
                                            SparsePolynomial::variable(n, 0) * SparsePolynomial::variable(n, n - 1),
                                            power(SparsePolynomial::variable(n, 0) - SparsePolynomial::variable(n, n - 1, I1), 2)};
        std::vector<HolFunction> fs;
        for (const auto& p : ps) fs.push_back(siegel_transport(D, from_polynomial(p), lam));
        const auto est = bergman_norm_mc(D, fs, lam, where, cfg.samples, cfg.seed, cfg.exec());
        ProjectionCache cache(D);
        std::vector<double> ratio;
        for (size_t i = 0; i < ps.size(); ++i)
            ratio.push_back(est[i].value / h_lambda_inner(cache, ps[i], ps[i], lam, 4).value.real());
        double mean = 0;
        for (double r : ratio) mean += r / ratio.size();
        double spread = 0;
        for (double r : ratio) spread = std::max(spread, std::abs(r / mean - 1.0));
        const char* wname = where == Realization::Bounded ? "bounded" : "siegel";
        json in = lam_inputs(D, lam);
        in["realization"] = wname;
        in["samples"] = cfg.samples;
        rep.add(info("bergman", "norm_ratio_mean", in, mean, "lebesgue"));
        rep.add(check_le("bergman", "norm_ratio_spread", in, spread, tol_or(cfg, 0.05), "lebesgue"));
        if (where == Realization::Bounded) {
            bounded[D.name()] = est;
        } else {
            // the Cayley change of variables scales the norm by 4^dim
            const McEstimate& b = bounded.at(D.name())[0];
            const McEstimate& s = est[0];
            const double k = std::pow(4.0, n);
            const double z = std::abs(s.value - k * b.value) / std::hypot(s.std_error, k * b.std_error);
            rep.add(check_le("bergman", "siegel_vs_bounded_sigma", in, z, 3.0, "lebesgue"));
        }
    }
}

using SuiteFn = std::function<void(const RunConfig&, Report&)>;

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
    static const std::vector<std::pair<std::string, SuiteFn>> s = {
        {"algebra", suite_algebra},   {"cone", suite_cone},       {"fischer", suite_fischer},
        {"kernels", suite_kernels},   {"hnorm", suite_hnorm},     {"htilde", suite_htilde},
        {"intertwine", suite_intertwine}, {"minmax", suite_minmax}, {"bergman", suite_bergman}};
    return s;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [k, v] : suites()) n.push_back(k);
        n.push_back("all");
        return n;
    }();
    return names;
}

void run_suite(const std::string& name, const RunConfig& cfg, Report& rep) {
    for (const auto& [k, fn] : suites())
        if (name == "all" || name == k) fn(cfg, rep);
    if (name != "all" && std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
        throw UsageError("unknown suite '" + name + "'");
}

Domain config_domain(const RunConfig& cfg) {
    if (cfg.family.empty()) throw UsageError("--family is required");
    int size = cfg.size;
    if (size == 0) size = cfg.family == "ball" ? 2 : cfg.family == "spin" ? 3 : 1;
    try {
        return Domain(parse_family(cfg.family, size, cfg.cols));
    } catch (const RejectedInput& e) {
        throw UsageError(e.what());
    }
}

void run_constants(const RunConfig& cfg, Report& rep) {
    const Domain D = config_domain(cfg);
    const StructureConstants c = constants_of(D.desc());
    const json in = {{"domain", D.name()}};
    rep.add(info("constants", "r", in, c.r, "structure"));
    rep.add(info("constants", "a", in, c.a, "structure"));
    rep.add(info("constants", "m", in, c.m, "structure"));
    rep.add(info("constants", "n", in, c.n, "structure"));
    rep.add(info("constants", "g", in, c.g, "structure"));
    rep.add(check_le("constants", "identity_m_over_r_minus_1", in,
                     std::abs(double(c.m) / c.r - 1.0 - c.a * (c.r - 1) / 2.0), tol_or(cfg, 1e-12), "absolute"));
}

void run_wallach(const RunConfig& cfg, Report& rep, const std::string& realization) {
    RunConfig local = cfg;
    if (local.family.empty()) local.family = "disc";
    const Domain D = config_domain(local);
    const StructureConstants c = constants_of(D.desc());
    std::vector<double> grid = cfg.lambdas;
    if (!cfg.lambdas_set) {
        if (c.r == 1)
            grid = {-0.5, 0.0, 0.5, 1.0, 2.0};
        else
            grid = {0.0, c.a * (c.r - 1) / 4.0, c.a / 2.0, c.a * (c.r - 1) / 2.0 + 0.5};
    }
    WallachSearchOptions opt;
    opt.trials = cfg.trials;
    opt.seed = cfg.seed;
    opt.exec = cfg.exec();
    if (realization == "siegel")
        opt.realization = Realization::Siegel;
    else if (realization != "bounded")
        throw UsageError("--realization must be bounded or siegel");
    for (double lam : grid) {
        const GramReport g = wallach_search(D, lam, opt);
        const bool inside = wallach_contains(lam, c);
        json in = lam_inputs(D, lam);
        in["realization"] = realization;
        in["trials"] = cfg.trials;
        in["in_wallach_set"] = inside;
        in["verdict"] = verdict_name(g.verdict);
        in["worst_trial"] = g.trial;
        in["points"] = g.n_points;
        Record r = inside ? check_ge("wallach", "gram_min_eigenvalue_ratio", in, g.ratio(), -opt.tol.psd, "gram_ratio")
                          : check_le("wallach", "gram_min_eigenvalue_ratio", in, g.ratio(), -opt.tol.not_psd,
                                     "gram_ratio");
        if (g.verdict == Verdict::Inconclusive) r.status = Status::Inconclusive;
        rep.add(r);
    }
}

}  // namespace symdom::harness
