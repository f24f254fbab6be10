#include "symdom/invariant.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <exception>

namespace symdom {

namespace {

constexpr std::uint64_t kStreamWallach = 0x5741;
constexpr std::uint64_t kStreamBergman = 0x4245;
constexpr std::uint64_t kStreamHardy = 0x4841;
constexpr std::uint64_t kStreamGrid = 0x4752;
constexpr long kChunk = 4096;

CVec concat(const CVec& a, const CVec& b) {
    CVec out(a.size() + b.size());
    out << a, b;
    return out;
}

std::vector<cd> univariate_coeffs(const SparsePolynomial& f) {
    if (f.nvars() != 1) throw RejectedInput("expected a polynomial in one variable");
    std::vector<cd> c(std::max(f.degree(), 0) + 1, 0.0);
    for (const auto& [k, v] : f.terms()) c[key_degree(k)] += v;
    return c;
}

Series1 constant_series(int order, cd c) { return Series1(order, c); }

// Runs body(i) for i < n, rethrowing the first exception after the loop.
template <class F>
void run_trials(long n, Exec exec, F&& body) {
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
    for (long i = 0; i < n; ++i) {
        try {
            body(i);
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
}

struct Moments {
    double sum = 0.0;
    double sumsq = 0.0;
};

McEstimate finish(const Moments& m, long n, double scale) {
    const double mean = m.sum / double(n);
    const double var = std::max(0.0, m.sumsq / double(n) - mean * mean);
    return {scale * mean, scale * std::sqrt(var / double(n)), n};
}

// Chunked Monte Carlo: chunk c draws from make_rng(seed, stream, c) and
// sample(rng, out) adds one value per function to out. Reduction is in chunk order.
template <class F>
std::vector<Moments> chunked_mc(int nfun, long n_samples, std::uint64_t seed, std::uint64_t stream, Exec exec,
                                F&& sample) {
    if (n_samples < 1) throw RejectedInput("sample count must be positive");
    const long chunks = (n_samples + kChunk - 1) / kChunk;
    std::vector<std::vector<Moments>> part(chunks, std::vector<Moments>(nfun));
    run_trials(chunks, exec, [&](long c) {
        Rng rng = make_rng(seed, stream, std::uint64_t(c));
        const long lo = c * kChunk, hi = std::min(n_samples, lo + kChunk);
        std::vector<double> v(nfun);
        for (long i = lo; i < hi; ++i) {
            sample(rng, v);
            for (int f = 0; f < nfun; ++f) {
                part[c][f].sum += v[f];
                part[c][f].sumsq += v[f] * v[f];
            }
        }
    });
    std::vector<Moments> total(nfun);
    for (const auto& p : part)
        for (int f = 0; f < nfun; ++f) {
            total[f].sum += p[f].sum;
            total[f].sumsq += p[f].sumsq;
        }
    return total;
}

CVec bounded_proposal(const Domain& D, Rng& rng) {
    if (D.is_rank_one_ball()) {
        std::uniform_real_distribution<double> ud(-1.0, 1.0);
        CVec z(D.dim());
        for (int i = 0; i < z.size(); ++i) z(i) = cd(ud(rng), ud(rng));
        return z;
    }
    return uniform_complex_ball(D.dim(), std::sqrt(double(D.rank())), rng);
}

CVec sphere_point(int n, Rng& rng) {
    std::normal_distribution<double> nd;
    CVec z(n);
    for (int i = 0; i < n; ++i) z(i) = cd(nd(rng), nd(rng));
    return z / z.norm();
}

// Quadratic form matrix of the rank-two determinant polynomial.
Mat delta_quadratic_form(const Domain& D) {
    const SparsePolynomial d = delta_poly(D, 2);
    const int n = D.dim();
    Mat A = Mat::Zero(n, n);
    for (const auto& [k, c] : d.terms()) {
        if (std::abs(c.imag()) > 1e-12) throw Unsupported("complex determinant coefficients");
        const std::vector<int> a = key_exponents(k, n);
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            for (int e = 0; e < a[i]; ++e) idx.push_back(i);
        if (idx.size() != 2) throw RejectedInput("determinant is not quadratic");
        if (idx[0] == idx[1]) {
            A(idx[0], idx[0]) += c.real();
        } else {
            A(idx[0], idx[1]) += 0.5 * c.real();
            A(idx[1], idx[0]) += 0.5 * c.real();
        }
    }
    return A;
}

std::vector<CVec> uniform_configuration(const Domain& D, Rng& rng, int max_points) {
    std::uniform_int_distribution<int> npd(2, max_points);
    const int n = npd(rng);
    std::vector<CVec> pts;
    for (int i = 0; i < n; ++i) pts.push_back(sample_bounded(D, rng));
    return pts;
}

std::vector<CVec> cluster_configuration(const Domain& D, Rng& rng, int max_points) {
    std::uniform_int_distribution<int> npd(2, max_points);
    std::uniform_real_distribution<double> ud(-3.0, -0.5);
    const int n = npd(rng);
    const CVec center = 0.9 * sample_bounded(D, rng);
    const double radius = std::pow(10.0, ud(rng));
    std::vector<CVec> pts;
    while (static_cast<int>(pts.size()) < n) {
        CVec z = center + uniform_complex_ball(D.dim(), radius, rng);
        if (in_bounded_domain(D, z, 0.01)) pts.push_back(z);
    }
    return pts;
}

// Points and weights such that sum_i w_i p(z_i) vanishes on polynomials of
// degree < 2 and on P_(2), and is proportional to the Fischer pairing with
// Delta on degree two. Rank one uses an antipodal pair instead.
std::vector<CVec> stencil_configuration(const Domain& D, Rng& rng, int max_points) {
    std::uniform_real_distribution<double> ud(-1.5, -0.5);
    double h = std::pow(10.0, ud(rng));
    const KSample k = haar_sample_K(D, rng);
    std::vector<CVec> dirs;
    if (D.rank() == 1) {
        dirs.push_back(sphere_point(D.dim(), rng));
    } else {
        if (D.rank() != 2) return cluster_configuration(D, rng, max_points);
        Eigen::SelfAdjointEigenSolver<Mat> es(delta_quadratic_form(D));
        const Vec& e = es.eigenvalues();
        std::vector<int> nz;
        for (int i = 0; i < e.size(); ++i)
            if (std::abs(e(i)) > 1e-12 * e.cwiseAbs().maxCoeff()) nz.push_back(i);
        const int m = static_cast<int>(nz.size());
        if (2 * m > max_points) return uniform_configuration(D, rng, max_points);
        for (int j = 0; j < m; ++j) {
            const cd w = std::polar(1.0, 2.0 * M_PI * j / m);
            dirs.push_back(std::sqrt(cd(e(nz[j])) / w) * es.eigenvectors().col(nz[j]).cast<cd>());
        }
    }
    for (auto& d : dirs) d = apply_k(k, d);
    for (;;) {
        std::vector<CVec> pts;
        bool inside = true;
        for (const auto& d : dirs)
            for (double sgn : {1.0, -1.0}) {
                pts.push_back(sgn * h * d);
                inside = inside && spectral_norm(D, pts.back()) < 0.95;
            }
        if (inside) return pts;
        h *= 0.5;
    }
}

struct ShellTerm {
    int degree;
    cd value;
};

// Fischer pairings of the projections of f and g on each P_s with |s| <= trunc
// and q_order(s) == order, divided by the given Pochhammer weight.
template <class Weight>
std::vector<ShellTerm> shell_terms(ProjectionCache& cache, const SparsePolynomial& f, const SparsePolynomial& g,
                                   double lambda, int trunc, int order, Weight&& weight) {
    const Domain& D = cache.domain();
    const StructureConstants c = constants_of(D.desc());
    if (trunc < 0) throw RejectedInput("negative truncation degree");
    if (f.nvars() != D.dim() || g.nvars() != D.dim()) throw RejectedInput("polynomial has the wrong variable count");
    std::map<int, std::pair<CVec, CVec>> vecs;
    std::vector<ShellTerm> out;
    for (const Signature& s : enumerate_signatures(D.rank(), trunc)) {
        if (q_order(s, lambda, c) != order) continue;
        const int k = total_degree(s);
        const OrbitBasis& b = cache.basis(s);
        if (b.rank() == 0) continue;
        auto it = vecs.find(k);
        if (it == vecs.end())
            it = vecs.emplace(k, std::make_pair(to_fischer_vector(f.homogeneous_part(k), b.monos),
                                                to_fischer_vector(g.homogeneous_part(k), b.monos)))
                     .first;
        const CVec pf = b.Q.adjoint() * it->second.first;
        const CVec pg = b.Q.adjoint() * it->second.second;
        out.push_back({k, pg.dot(pf) / weight(s, c)});
    }
    return out;
}

}  // namespace

HolFunction from_polynomial(const SparsePolynomial& p) {
    HolFunction f;
    f.eval = [p](const CVec& z) { return p.eval(z); };
    f.eval_siegel = [p](const SiegelPoint& q) { return p.eval(concat(q.zeta, q.z)); };
    f.taylor = p;
    return f;
}

HolFunction siegel_transport(const Domain& D, const HolFunction& f, double lambda) {
    HolFunction out = f;
    out.eval_siegel = [D, g = f.eval, lambda](const SiegelPoint& p) {
        return g(inverse_cayley(D, p)) * cayley_factor(D, lambda, p);
    };
    return out;
}

// ---- Gram matrices

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::PSD: return "PSD";
        case Verdict::NotPSD: return "NotPSD";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

namespace {

template <class P, class K>
CMat gram_of(const std::vector<P>& pts, K&& kernel) {
    const int n = static_cast<int>(pts.size());
    if (n == 0) throw RejectedInput("empty point set");
    CMat G(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G(i, j) = kernel(pts[i], pts[j]);
    return 0.5 * (G + G.adjoint());
}

void check_distinct(const std::vector<CVec>& pts) {
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            if ((pts[i] - pts[j]).norm() <= 1e-12 * (1.0 + pts[i].norm()))
                throw RejectedInput("coincident points give a degenerate Gram matrix");
}

}  // namespace

CMat gram_matrix(const Domain& D, double lambda, const std::vector<CVec>& points) {
    check_distinct(points);
    for (const auto& z : points)
        if (!in_bounded_domain(D, z)) throw DomainError("Gram point outside the bounded domain");
    return gram_of(points, [&](const CVec& z, const CVec& w) { return kernel_bounded(D, lambda, z, w); });
}

CMat gram_matrix(const Domain& D, double lambda, const std::vector<SiegelPoint>& points) {
    std::vector<CVec> flat;
    for (const auto& p : points) {
        if (!in_siegel_domain(D, p)) throw DomainError("Gram point outside the Siegel domain");
        flat.push_back(concat(p.zeta, p.z));
    }
    check_distinct(flat);
    return gram_of(points,
                   [&](const SiegelPoint& p, const SiegelPoint& q) { return kernel_siegel(D, lambda, p, q); });
}

GramReport psd_verdict(const CMat& G, double lambda, const PsdTolerances& tol) {
    Eigen::SelfAdjointEigenSolver<CMat> es(G, Eigen::EigenvaluesOnly);
    const Vec& ev = es.eigenvalues();
    GramReport rep;
    rep.lambda = lambda;
    rep.n_points = static_cast<int>(G.rows());
    rep.min_eigenvalue = ev(0);
    rep.matrix_norm = ev.cwiseAbs().maxCoeff();
    const double ratio = rep.ratio();
    if (ratio < -tol.not_psd)
        rep.verdict = Verdict::NotPSD;
    else if (ratio >= -tol.psd)
        rep.verdict = Verdict::PSD;
    else
        rep.verdict = Verdict::Inconclusive;
    return rep;
}

GramReport psd_verdict(const Domain& D, double lambda, const std::vector<CVec>& points, const PsdTolerances& tol) {
    return psd_verdict(gram_matrix(D, lambda, points), lambda, tol);
}

std::vector<CVec> wallach_configuration(const Domain& D, std::uint64_t seed, long index, int max_points) {
    if (max_points < 2) throw RejectedInput("configurations need at least two points");
    Rng rng = make_rng(seed, kStreamWallach, std::uint64_t(index));
    switch (index % 3) {
        case 0: return uniform_configuration(D, rng, max_points);
        case 1: return cluster_configuration(D, rng, max_points);
        default: return stencil_configuration(D, rng, max_points);
    }
}

GramReport wallach_search(const Domain& D, double lambda, const WallachSearchOptions& opt) {
    if (opt.trials < 1) throw RejectedInput("trials must be positive");
    std::vector<GramReport> reps(opt.trials);
    run_trials(opt.trials, opt.exec, [&](long t) {
        const std::vector<CVec> pts = wallach_configuration(D, opt.seed, t, opt.max_points);
        CMat G;
        if (opt.realization == Realization::Bounded) {
            G = gram_matrix(D, lambda, pts);
        } else {
            std::vector<SiegelPoint> sp;
            for (const auto& z : pts) sp.push_back(cayley(D, z));
            G = gram_matrix(D, lambda, sp);
        }
        reps[t] = psd_verdict(G, lambda, opt.tol);
        reps[t].trial = t;
    });
    size_t worst = 0;
    for (size_t i = 1; i < reps.size(); ++i)
        if (reps[i].ratio() < reps[worst].ratio()) worst = i;
    return reps[worst];
}

// ---- Fischer-series norms

SeriesValue h_lambda_inner(ProjectionCache& cache, const SparsePolynomial& f, const SparsePolynomial& g,
                           double lambda, int trunc) {
    const StructureConstants c = constants_of(cache.domain().desc());
    if (!wallach_contains(lambda, c)) throw RejectedInput("lambda is outside the Wallach set");
    const auto terms = shell_terms(cache, f, g, lambda, trunc, 0, [lambda](const Signature& s, const auto& cc) {
        return pochhammer(lambda, s, cc);
    });
    SeriesValue out{0.0, 0.0, trunc};
    for (const auto& t : terms) {
        out.value += t.value;
        if (t.degree == trunc) out.last_shell += std::abs(t.value);
    }
    return out;
}

SeriesValue h_tilde_seminorm(ProjectionCache& cache, const SparsePolynomial& f, double lambda, int trunc) {
    const StructureConstants c = constants_of(cache.domain().desc());
    if (!on_residual_lattice(lambda, c)) throw RejectedInput("lambda is not on the lattice m/r - 1 - N");
    const int qm = q_max(lambda, c);
    const auto terms = shell_terms(cache, f, f, lambda, trunc, qm, [lambda](const Signature& s, const auto& cc) {
        return residue_pochhammer(lambda, s, cc);
    });
    double sq = 0.0, shell = 0.0;
    for (const auto& t : terms) {
        sq += t.value.real();
        if (t.degree == trunc) shell += std::abs(t.value);
    }
    return {std::sqrt(std::max(0.0, sq)), shell, trunc};
}

DilationReport dilation_monotonicity(ProjectionCache& cache, const SparsePolynomial& f, double lambda,
                                     const std::vector<double>& radii, int trunc) {
    const StructureConstants c = constants_of(cache.domain().desc());
    if (!wallach_contains(lambda, c)) throw RejectedInput("lambda is outside the Wallach set");
    if (!std::is_sorted(radii.begin(), radii.end())) throw RejectedInput("radii must be increasing");
    const auto terms = shell_terms(cache, f, f, lambda, trunc, 0, [lambda](const Signature& s, const auto& cc) {
        return pochhammer(lambda, s, cc);
    });
    DilationReport rep{radii, {}, true, 0.0};
    double full = 0.0;
    for (const auto& t : terms) full += t.value.real();
    rep.limit = std::sqrt(std::max(0.0, full));
    for (double R : radii) {
        double acc = 0.0;
        for (const auto& t : terms) acc += std::pow(R, 2 * t.degree) * t.value.real();
        rep.norms.push_back(std::sqrt(std::max(0.0, acc)));
    }
    for (size_t i = 1; i < rep.norms.size(); ++i)
        if (rep.norms[i] < rep.norms[i - 1] - 1e-12 * std::max(1.0, rep.limit)) rep.monotone = false;
    return rep;
}

// ---- Monte Carlo norms

std::vector<McEstimate> bergman_norm_mc(const Domain& D, const std::vector<HolFunction>& fs, double lambda,
                                        Realization where, long n_samples, std::uint64_t seed, Exec exec,
                                        const SiegelSamplerParams& params) {
    const int nf = static_cast<int>(fs.size());
    const double g = D.genus();
    const Algebra& A = D.algebra();
    std::vector<Moments> mom;
    double scale = 1.0;
    if (where == Realization::Bounded) {
        scale = bounded_proposal_volume(D);
        mom = chunked_mc(nf, n_samples, seed, kStreamBergman, exec, [&](Rng& rng, std::vector<double>& v) {
            const CVec z = bounded_proposal(D, rng);
            if (!in_bounded_domain(D, z)) {
                std::fill(v.begin(), v.end(), 0.0);
                return;
            }
            const double w = std::exp((lambda - g) * log_generic_norm(D, z, z).real());
            for (int f = 0; f < nf; ++f) v[f] = std::norm(fs[f].eval(z)) * w;
        });
    } else {
        mom = chunked_mc(nf, n_samples, seed, kStreamBergman, exec, [&](Rng& rng, std::vector<double>& v) {
            const SiegelSample s = sample_siegel(D, rng, params);
            const double w = std::pow(determinant(A, siegel_height(D, s.p)), lambda - g) / s.density;
            for (int f = 0; f < nf; ++f) v[f] = std::norm(fs[f].eval_siegel(s.p)) * w;
        });
    }
    std::vector<McEstimate> out;
    for (const auto& m : mom) out.push_back(finish(m, n_samples, scale));
    return out;
}

McEstimate bergman_norm_mc(const Domain& D, const HolFunction& f, double lambda, Realization where,
                           long n_samples, std::uint64_t seed, Exec exec, const SiegelSamplerParams& params) {
    return bergman_norm_mc(D, std::vector<HolFunction>{f}, lambda, where, n_samples, seed, exec, params)[0];
}

std::vector<double> default_hardy_radii() { return {0.5, 0.9, 0.99, 0.999, 0.9999, 1.0 - 1e-6}; }

McEstimate hardy_norm_mc(const Domain& D, const HolFunction& f, long n_samples, const std::vector<double>& radii,
                         std::uint64_t seed, Exec exec) {
    if (radii.empty()) throw RejectedInput("empty radius grid");
    const int nr = static_cast<int>(radii.size());
    std::vector<Moments> mom;
    if (D.is_rank_one_ball()) {
        for (double r : radii)
            if (!(r > 0.0 && r < 1.0)) throw RejectedInput("radii must lie in (0, 1)");
        mom = chunked_mc(nr, n_samples, seed, kStreamHardy, exec, [&](Rng& rng, std::vector<double>& v) {
            const CVec u = sphere_point(D.dim(), rng);
            for (int i = 0; i < nr; ++i) v[i] = std::norm(f.eval(radii[i] * u));
        });
    } else if (D.is_tube()) {
        // radius r stands for the height (1 - r) e; x follows a Student-t proposal
        const Vec e = identity(D.algebra());
        const double nu = 3.0;
        mom = chunked_mc(nr, n_samples, seed, kStreamHardy, exec, [&](Rng& rng, std::vector<double>& v) {
            std::student_t_distribution<double> td(nu);
            Vec x(e.size());
            double dens = 1.0;
            for (int i = 0; i < x.size(); ++i) {
                x(i) = td(rng);
                dens *= std::tgamma(0.5 * (nu + 1)) / (std::sqrt(nu * M_PI) * std::tgamma(0.5 * nu)) *
                        std::pow(1.0 + x(i) * x(i) / nu, -0.5 * (nu + 1));
            }
            for (int i = 0; i < nr; ++i) {
                SiegelPoint p{CVec(0), x.cast<cd>() + I1 * ((1.0 - radii[i]) * e).cast<cd>()};
                v[i] = std::norm(f.eval_siegel(p)) / dens;
            }
        });
    } else {
        throw Unsupported("Hardy norms are implemented for balls and tube domains");
    }
    McEstimate best{-1.0, 0.0, n_samples};
    for (int i = 0; i < nr; ++i) {
        const McEstimate e = finish(mom[i], n_samples, 1.0);
        if (e.value > best.value) best = e;
    }
    return best;
}

// ---- Sup-norm spaces and atoms

double sup_norm_max_space(const Domain& D, const HolFunction& f, double lambda, const std::vector<SiegelPoint>& grid) {
    double best = 0.0;
    for (const auto& p : grid) {
        const double dh = determinant(D.algebra(), siegel_height(D, p));
        if (!(dh > 0.0)) throw DomainError("grid point outside the Siegel domain");
        best = std::max(best, std::pow(dh, 0.5 * lambda) * std::abs(f.eval_siegel(p)));
    }
    return best;
}

std::vector<SiegelPoint> siegel_grid(const Domain& D, int n_points, std::uint64_t seed) {
    std::vector<SiegelPoint> grid{siegel_base_point(D)};
    SiegelSamplerParams params;
    params.heavy_tails = false;
    for (int i = 1; i < n_points; ++i) {
        Rng rng = make_rng(seed, kStreamGrid, std::uint64_t(i));
        grid.push_back(sample_siegel(D, rng, params).p);
    }
    return grid;
}

HolFunction affine_transport(const Domain& D, const HolFunction& f, const AffineMap& m, double lambda) {
    const AffineMap minv = affine_inverse(D, m);
    const double factor = std::pow(affine_abs_jacobian(D, minv), lambda / D.genus());
    HolFunction out;
    out.eval_siegel = [D, minv, factor, g = f.eval_siegel](const SiegelPoint& p) {
        return g(affine_apply(D, minv, p)) * factor;
    };
    return out;
}

double half_plane_distance(cd z, cd w) {
    if (!(z.imag() > 0.0 && w.imag() > 0.0)) throw DomainError("point outside the upper half-plane");
    return std::acosh(1.0 + std::norm(z - w) / (2.0 * z.imag() * w.imag()));
}

Lattice lattice_generate(const Domain& D, double delta, const HalfPlaneRegion& region) {
    if (!(D.is_tube() && D.rank() == 1)) throw Unsupported("lattices are generated on the upper half-plane only");
    if (!(delta > 0.0)) throw RejectedInput("separation must be positive");
    if (!(region.y_min > 0.0 && region.y_max > region.y_min && region.x_max > 0.0 && region.grid >= 2))
        throw RejectedInput("bad lattice region");
    std::vector<cd> accepted;
    const int n = region.grid;
    for (int iy = 0; iy < n; ++iy) {
        const double y = region.y_min * std::pow(region.y_max / region.y_min, double(iy) / (n - 1));
        for (int ix = 0; ix < n; ++ix) {
            const cd z(-region.x_max + 2.0 * region.x_max * ix / (n - 1), y);
            bool ok = true;
            for (const cd& w : accepted)
                if (half_plane_distance(z, w) < 2.0 * delta) {
                    ok = false;
                    break;
                }
            if (ok) accepted.push_back(z);
        }
    }
    Lattice L{{}, delta};
    for (const cd& z : accepted) L.points.push_back({CVec(0), CVec::Constant(1, z)});
    return L;
}

HolFunction atomic_synthesis(const Domain& D, const std::vector<cd>& coeffs, const Lattice& lattice, double lambda) {
    const StructureConstants c = constants_of(D.desc());
    if (!(lambda > 2.0 * (double(c.m) / c.r - 1.0))) throw RejectedInput("lambda must exceed 2(m/r - 1)");
    if (coeffs.size() != lattice.points.size()) throw RejectedInput("one coefficient per lattice point");
    for (const cd& a : coeffs)
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) throw RejectedInput("non-summable coefficients");
    std::vector<cd> w(coeffs.size());
    for (size_t j = 0; j < coeffs.size(); ++j)
        w[j] = coeffs[j] * std::pow(determinant(D.algebra(), siegel_height(D, lattice.points[j])), 0.5 * lambda);
    HolFunction f;
    f.eval_siegel = [D, w, pts = lattice.points, lambda](const SiegelPoint& p) {
        cd acc = 0.0;
        for (size_t j = 0; j < pts.size(); ++j) acc += w[j] * kernel_siegel(D, lambda, p, pts[j]);
        return acc;
    };
    return f;
}

// ---- Disc: Bloch, Besov, Dirichlet

namespace {

// int_D F(z) dA with Gauss-Legendre in r and the trapezoid rule in theta.
template <class F>
double disc_quadrature(F&& fn, int n_angles) {
    auto radial = [&](double r) {
        double acc = 0.0;
        for (int k = 0; k < n_angles; ++k) acc += fn(std::polar(r, 2.0 * M_PI * k / n_angles));
        return r * acc * 2.0 * M_PI / n_angles;
    };
    return boost::math::quadrature::gauss<double, 40>::integrate(radial, 0.0, 1.0);
}

}  // namespace

double bloch_seminorm_disc(const SparsePolynomial& f, int n_radii, int n_angles) {
    const SparsePolynomial df = derivative(f, 0);
    double best = 0.0;
    for (int i = 0; i < n_radii; ++i) {
        const double r = double(i) / n_radii;
        for (int k = 0; k < n_angles; ++k) {
            const CVec z = CVec::Constant(1, std::polar(r, 2.0 * M_PI * k / n_angles));
            best = std::max(best, (1.0 - r * r) * std::abs(df.eval(z)));
        }
    }
    return best;
}

double besov1_norm_disc(const SparsePolynomial& f, int n_angles) {
    const SparsePolynomial df = derivative(f, 0);
    const SparsePolynomial d2f = derivative(df, 0);
    const CVec zero = CVec::Zero(1);
    const double area = disc_quadrature([&](cd z) { return std::abs(d2f.eval(CVec::Constant(1, z))); }, n_angles);
    return std::abs(f.eval(zero)) + std::abs(df.eval(zero)) + area;
}

double dirichlet_integral_disc(const SparsePolynomial& f, int n_angles) {
    const SparsePolynomial df = derivative(f, 0);
    return disc_quadrature([&](cd z) { return std::norm(df.eval(CVec::Constant(1, z))); }, n_angles);
}

// ---- Intertwining

Mobius1 disc_map(const MobiusMap& phi) {
    if (phi.b.size() != 1) throw RejectedInput("disc maps act on one variable");
    const cd u = phi.U(0, 0), b = phi.b(0);
    return {u, -u * b, -std::conj(b), 1.0};
}

Mobius1 disc_map_inverse(const MobiusMap& phi) {
    if (phi.b.size() != 1) throw RejectedInput("disc maps act on one variable");
    const cd u = phi.U(0, 0), b = phi.b(0);
    return {1.0, u * b, std::conj(b), u};
}

Series1 disc_transform_series(const SparsePolynomial& f, const Mobius1& psi, double lambda, cd z0, int order) {
    const Series1 t = Series1::variable(order, z0);
    const Series1 den = psi.c * t + constant_series(order, psi.d);
    const Series1 w = (psi.a * t + constant_series(order, psi.b)) / den;
    const Series1 s = std::sqrt(psi.a * psi.d - psi.b * psi.c) * (constant_series(order, 1.0) / den);
    return compose(univariate_coeffs(f), w) * pow(s, lambda);
}

double intertwine_check_disc(const MobiusMap& phi, const SparsePolynomial& f, int lambda,
                             const std::vector<cd>& points) {
    if (lambda > 0) throw RejectedInput("lambda must be a non-positive integer");
    const int k = 1 - lambda;
    const Mobius1 psi = disc_map_inverse(phi);
    SparsePolynomial fk = f;
    for (int i = 0; i < k; ++i) fk = derivative(fk, 0);
    const cd sq = std::sqrt(psi.a * psi.d - psi.b * psi.c);
    double worst = 0.0;
    for (const cd& z0 : points) {
        const cd lhs = disc_transform_series(f, psi, lambda, z0, k).derivative_at_zero(k);
        const cd den = psi.c * z0 + psi.d;
        const cd w0 = (psi.a * z0 + psi.b) / den;
        const cd rhs = fk.eval(CVec::Constant(1, w0)) * std::pow(sq / den, double(2 - lambda));
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
    }
    return worst;
}

SparsePolynomial disc_transform_taylor(const MobiusMap& phi, const SparsePolynomial& f, double lambda, int order) {
    const Series1 s = disc_transform_series(f, disc_map_inverse(phi), lambda, 0.0, order);
    SparsePolynomial out(1);
    for (int k = 0; k <= order; ++k)
        if (s[k] != cd(0.0)) out.add_term(make_key({k}), s[k]);
    return out;
}

double intertwine_check_tube(const Domain& D, const SparsePolynomial& f, double lambda,
                             const std::vector<AffineMap>& maps, const std::vector<CVec>& points) {
    if (!D.is_tube()) throw Unsupported("intertwining of the box operator needs a tube domain");
    const StructureConstants c = constants_of(D.desc());
    const double kd = double(c.m) / c.r - lambda;
    const int k = static_cast<int>(std::lround(kd));
    if (k < 0 || std::abs(kd - k) > 1e-12) throw RejectedInput("m/r - lambda must be a non-negative integer");
    const Algebra& A = D.algebra();
    const int n = D.dim();
    const double g = D.genus();
    const SparsePolynomial bf = box_operator(D, f, k);
    double worst = 0.0;
    for (const AffineMap& m : maps) {
        const AffineMap minv = affine_inverse(D, m);
        CMat L(n, n);
        for (int i = 0; i < n; ++i) L.col(i) = t_action(A, minv.t, Vec(Vec::Unit(n, i))).cast<cd>();
        const CVec shift = minv.x0.cast<cd>();
        const SparsePolynomial lhs = box_operator(D, compose_affine(f, L, shift), k);
        const double J = affine_abs_jacobian(D, minv);
        const double cl = std::pow(J, lambda / g), cr = std::pow(J, (2.0 * c.m / c.r - lambda) / g);
        for (const CVec& z : points) {
            const cd l = lhs.eval(z) * cl;
            const cd r = bf.eval(L * z + shift) * cr;
            worst = std::max(worst, std::abs(l - r) / std::max(1.0, std::abs(r)));
        }
    }
    return worst;
}

}  // namespace symdom
