#include "symdom/fischer.hpp"

#include <cmath>

#include <omp.h>

namespace symdom {

namespace {

using PolyMat = std::vector<std::vector<SparsePolynomial>>;

PolyMat poly_matrix(int rows, int cols, int nvars) {
    return PolyMat(rows, std::vector<SparsePolynomial>(cols, SparsePolynomial(nvars)));
}

// Entries of the matrix picture as linear polynomials in the Z coordinates.
PolyMat linear_matrix(const Domain& D) {
    const int n = D.dim();
    const int rows = D.rows(), cols = D.cols();
    PolyMat M = poly_matrix(rows, cols, n);
    for (int k = 0; k < n; ++k) {
        const CMat B = D.to_matrix(CVec(CVec::Unit(n, k)));
        for (int a = 0; a < rows; ++a)
            for (int b = 0; b < cols; ++b)
                if (B(a, b) != cd(0.0)) M[a][b] += SparsePolynomial::variable(n, k, B(a, b));
    }
    return M;
}

PolyMat times_const(const PolyMat& M, const CMat& C, int nvars) {
    const int rows = static_cast<int>(M.size()), inner = static_cast<int>(C.rows()), cols = static_cast<int>(C.cols());
    PolyMat out = poly_matrix(rows, cols, nvars);
    for (int a = 0; a < rows; ++a)
        for (int b = 0; b < cols; ++b)
            for (int c = 0; c < inner; ++c)
                if (C(c, b) != cd(0.0)) out[a][b] += C(c, b) * M[a][c];
    return out;
}

PolyMat times(const PolyMat& A, const PolyMat& B, int nvars, int max_degree) {
    const int rows = static_cast<int>(A.size()), inner = static_cast<int>(B.size());
    const int cols = static_cast<int>(B[0].size());
    PolyMat out = poly_matrix(rows, cols, nvars);
    for (int a = 0; a < rows; ++a)
        for (int b = 0; b < cols; ++b)
            for (int c = 0; c < inner; ++c) out[a][b] += multiply(A[a][c], B[c][b], max_degree);
    return out;
}

PolyMat minor_of(const PolyMat& M, int drop_row, int drop_col) {
    PolyMat out;
    for (int a = 0; a < static_cast<int>(M.size()); ++a) {
        if (a == drop_row) continue;
        std::vector<SparsePolynomial> row;
        for (int b = 0; b < static_cast<int>(M[a].size()); ++b)
            if (b != drop_col) row.push_back(M[a][b]);
        out.push_back(row);
    }
    return out;
}

SparsePolynomial poly_det(const PolyMat& M, int nvars) {
    const int n = static_cast<int>(M.size());
    if (n == 0) return SparsePolynomial::constant(nvars, 1.0);
    if (n == 1) return M[0][0];
    SparsePolynomial acc(nvars);
    for (int b = 0; b < n; ++b) {
        if (M[0][b].is_zero()) continue;
        SparsePolynomial t = multiply(M[0][b], poly_det(minor_of(M, 0, b), nvars));
        if (b % 2) acc -= t;
        else acc += t;
    }
    return acc;
}

PolyMat drop_two(const PolyMat& M, int i, int j) {
    PolyMat out;
    const int n = static_cast<int>(M.size());
    for (int a = 0; a < n; ++a) {
        if (a == i || a == j) continue;
        std::vector<SparsePolynomial> row;
        for (int b = 0; b < n; ++b)
            if (b != i && b != j) row.push_back(M[a][b]);
        out.push_back(row);
    }
    return out;
}

SparsePolynomial poly_pfaffian(const PolyMat& M, int nvars) {
    const int n = static_cast<int>(M.size());
    if (n == 0) return SparsePolynomial::constant(nvars, 1.0);
    SparsePolynomial acc(nvars);
    for (int k = 1; k < n; ++k) {
        if (M[0][k].is_zero()) continue;
        SparsePolynomial t = multiply(M[0][k], poly_pfaffian(drop_two(M, 0, k), nvars));
        if (k % 2) acc += t;
        else acc -= t;
    }
    return acc;
}

PolyMat leading_block(const PolyMat& M, int n) {
    PolyMat out;
    for (int a = 0; a < n; ++a) out.emplace_back(M[a].begin(), M[a].begin() + n);
    return out;
}

SparsePolynomial compose_generator(const std::vector<GeneratorFactor>& gen, const CMat& L, int nvars) {
    SparsePolynomial out = SparsePolynomial::constant(nvars, 1.0);
    for (const auto& f : gen) out = multiply(out, power(compose_linear(f.poly, L), f.exponent));
    return out;
}

int generator_degree(const std::vector<GeneratorFactor>& gen) {
    int d = 0;
    for (const auto& f : gen) d += f.exponent * f.poly.degree();
    return d;
}

int generator_nvars(const std::vector<GeneratorFactor>& gen) {
    if (gen.empty()) throw RejectedInput("empty generator");
    return gen[0].poly.nvars();
}

// Adds the components of v orthogonal to Q; returns true if v was new.
bool gram_schmidt_add(std::vector<CVec>& Q, const CVec& v, double tol) {
    const double nv = v.norm();
    if (nv == 0.0) return false;
    CVec r = v;
    for (int pass = 0; pass < 2; ++pass)
        for (const CVec& q : Q) r -= q * q.dot(r);
    const double nr = r.norm();
    if (nr <= tol * nv) return false;
    Q.push_back(r / nr);
    return true;
}

CMat stack(const std::vector<CVec>& Q, int rows) {
    CMat out(rows, static_cast<int>(Q.size()));
    for (size_t i = 0; i < Q.size(); ++i) out.col(i) = Q[i];
    return out;
}

std::vector<CVec> sample_vectors(const std::vector<GeneratorFactor>& gen, const std::vector<KSample>& ks,
                                 const std::vector<MonoKey>& monos, int nvars, Exec exec) {
    std::vector<CVec> vs(ks.size());
    const int n = static_cast<int>(ks.size());
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
    for (int i = 0; i < n; ++i) vs[i] = to_fischer_vector(compose_generator(gen, ks[i].L, nvars), monos);
    return vs;
}

std::uint64_t signature_stream(const Signature& s) {
    std::uint64_t h = 0x5157u;
    for (int v : s) h = splitmix64(h ^ static_cast<std::uint64_t>(v));
    return h;
}

}  // namespace

KSample k_identity(const Domain& D) { return {CMat::Identity(D.dim(), D.dim())}; }

KSample haar_sample_K(const Domain& D, Rng& rng) {
    const Algebra& A = D.algebra();
    const int n = D.dim();
    CMat L(n, n);
    switch (A.family()) {
        case Family::HermComplex: {
            const CMat u = haar_unitary(D.rank(), rng);
            const CMat v = haar_unitary(D.desc().cols, rng);
            const int q = v.rows();
            for (int i = 0; i < u.rows(); ++i)
                for (int a = 0; a < u.cols(); ++a)
                    for (int j = 0; j < q; ++j)
                        for (int b = 0; b < q; ++b) L(i * q + j, a * q + b) = u(i, a) * std::conj(v(j, b));
            break;
        }
        case Family::SymReal: {
            const CMat u = haar_unitary(A.rank(), rng);
            for (int k = 0; k < n; ++k) L.col(k) = A.unembed(u * A.basis()[k] * u.transpose());
            break;
        }
        case Family::HermQuaternion: {
            const CMat u = haar_unitary(A.mat_size(), rng);
            const CMat J = quaternion_j(A.rank());
            const CMat Jinv = J.inverse();
            for (int k = 0; k < n; ++k) L.col(k) = A.unembed(u * A.basis()[k] * J * u.transpose() * Jinv);
            break;
        }
        case Family::SpinFactor: {
            std::uniform_real_distribution<double> ud(0.0, 2.0 * M_PI);
            const double theta = ud(rng);
            const Mat R = haar_special_orthogonal(n, rng);
            const CMat& M = D.spin_standard();
            L = M.inverse() * (std::exp(I1 * theta) * R.cast<cd>()) * M;
            break;
        }
    }
    return {L};
}

CVec apply_k(const KSample& k, const CVec& z) { return k.L * z; }

SparsePolynomial delta_poly(const Domain& D, int j) {
    const Algebra& A = D.algebra();
    const int n = D.dim();
    if (j < 1 || j > A.rank()) throw RejectedInput("minor index out of range");
    SparsePolynomial p(n);
    if (A.family() == Family::SpinFactor) {
        if (j == 1) return SparsePolynomial::variable(n, 0);
        p = multiply(SparsePolynomial::variable(n, 0), SparsePolynomial::variable(n, 1));
        for (int k = 2; k < n; ++k) {
            std::vector<int> a(n, 0);
            a[k] = 2;
            p.add_term(make_key(a), -0.5);
        }
        return p;
    }
    const PolyMat M = linear_matrix(D);
    if (A.family() == Family::HermQuaternion) {
        const CMat J = quaternion_j(A.rank()).topLeftCorner(2 * j, 2 * j);
        p = poly_pfaffian(times_const(leading_block(M, 2 * j), J, n), n);
    } else {
        p = poly_det(leading_block(M, j), n);
    }
    const cd at_e = p.eval(D.e_point());
    if (std::abs(at_e) < 1e-12) throw SingularElement("minor vanishes at e");
    p *= 1.0 / at_e;
    return p.pruned(1e-14);
}

SparsePolynomial generic_norm_poly(const Domain& D, const CVec& w) {
    const int n = D.dim();
    const int r = D.rank();
    if (w.size() != n) throw RejectedInput("point has the wrong dimension");
    if (!D.has_matrix_picture()) {
        SparsePolynomial h = SparsePolynomial::constant(n, 1.0);
        h -= SparsePolynomial::linear(w.conjugate());
        h += std::conj(delta_j(D.algebra(), w, 2)) * delta_poly(D, 2);
        return h;
    }
    // log h = -(1/d) sum_k tr(M^k)/k with M = Z W*; h has degree r.
    const PolyMat M = times_const(linear_matrix(D), D.to_matrix(w).adjoint(), n);
    SparsePolynomial L(n);
    PolyMat P = M;
    const double d = D.multiplicity();
    for (int k = 1; k <= r; ++k) {
        if (k > 1) P = times(P, M, n, r);
        SparsePolynomial tr(n);
        for (size_t a = 0; a < P.size(); ++a) tr += P[a][a];
        L -= (1.0 / (d * k)) * tr;
    }
    return exp_series(L, r).pruned(1e-15);
}

SparsePolynomial kernel_taylor(const Domain& D, double lambda, const CVec& w, int max_degree) {
    if (!in_bounded_domain(D, w)) throw DomainError("kernel_taylor needs a point of the domain");
    const int n = D.dim();
    SparsePolynomial u = SparsePolynomial::constant(n, 1.0) - generic_norm_poly(D, w);
    SparsePolynomial out = SparsePolynomial::constant(n, 1.0);
    SparsePolynomial up = out;
    double c = 1.0;
    for (int k = 1; k <= max_degree; ++k) {
        c *= (lambda + k - 1) / k;
        if (c == 0.0) break;
        up = multiply(up, u, max_degree);
        if (up.is_zero()) break;
        out += c * up;
    }
    return out;
}

std::vector<GeneratorFactor> delta_s_factors(const Domain& D, const Signature& s) {
    const int r = D.rank();
    if (static_cast<int>(s.size()) != r || !is_signature(s)) throw RejectedInput("not a signature of this rank");
    std::vector<GeneratorFactor> out;
    for (int j = 1; j <= r; ++j) {
        const int e = s[j - 1] - (j < r ? s[j] : 0);
        if (e > 0) out.push_back({delta_poly(D, j), e});
    }
    if (out.empty()) out.push_back({SparsePolynomial::constant(D.dim(), 1.0), 1});
    return out;
}

SparsePolynomial expand_factors(const std::vector<GeneratorFactor>& f, int nvars) {
    SparsePolynomial out = SparsePolynomial::constant(nvars, 1.0);
    for (const auto& g : f) out = multiply(out, power(g.poly, g.exponent));
    return out;
}

SparsePolynomial OrbitBasis::element(int i) const { return from_fischer_vector(Q.col(i), monos, nvars); }

OrbitBasis orbit_span(const std::vector<GeneratorFactor>& generator, const std::vector<KSample>& samples,
                      double tol, Exec exec) {
    if (samples.empty()) throw RejectedInput("orbit span needs at least one sample");
    OrbitBasis b;
    b.nvars = generator_nvars(generator);
    b.degree = std::max(0, generator_degree(generator));
    b.monos = homogeneous_monomials(b.nvars, b.degree);
    std::vector<CVec> Q;
    for (const CVec& v : sample_vectors(generator, samples, b.monos, b.nvars, exec)) gram_schmidt_add(Q, v, tol);
    b.Q = stack(Q, static_cast<int>(b.monos.size()));
    return b;
}

OrbitBasis orbit_span(const SparsePolynomial& generator, const std::vector<KSample>& samples, double tol,
                      Exec exec) {
    return orbit_span(std::vector<GeneratorFactor>{{generator, 1}}, samples, tol, exec);
}

OrbitBasis orbit_span_adaptive(const Domain& D, const std::vector<GeneratorFactor>& generator,
                               const OrbitSpanOptions& opt, std::uint64_t stream) {
    OrbitBasis b;
    b.nvars = D.dim();
    b.degree = std::max(0, generator_degree(generator));
    b.monos = homogeneous_monomials(b.nvars, b.degree);
    const int full = static_cast<int>(b.monos.size());
    std::vector<CVec> Q;
    std::vector<int> ranks;
    int stable = 0;
    for (int batch = 0; batch < opt.max_batches; ++batch) {
        std::vector<KSample> ks;
        for (int i = 0; i < opt.batch_size; ++i) {
            Rng rng = make_rng(opt.seed, stream, std::uint64_t(batch) * opt.batch_size + i);
            ks.push_back(haar_sample_K(D, rng));
        }
        for (const CVec& v : sample_vectors(generator, ks, b.monos, b.nvars, opt.exec))
            gram_schmidt_add(Q, v, opt.tol);
        const int rank = static_cast<int>(Q.size());
        stable = (!ranks.empty() && ranks.back() == rank) ? stable + 1 : 0;
        ranks.push_back(rank);
        if (rank == full || stable >= opt.plateau_batches) {
            b.Q = stack(Q, full);
            return b;
        }
    }
    const int n = static_cast<int>(ranks.size());
    throw RankNotStable(n >= 2 ? ranks[n - 2] : 0, n >= 1 ? ranks[n - 1] : 0);
}

SparsePolynomial project_onto(const SparsePolynomial& f, const OrbitBasis& b) {
    if (f.nvars() != b.nvars) throw RejectedInput("polynomial dimension mismatch");
    const CVec v = to_fischer_vector(f.homogeneous_part(b.degree), b.monos);
    const CVec w = b.Q * (b.Q.adjoint() * v);
    return from_fischer_vector(w, b.monos, b.nvars).pruned(1e-15);
}

SparsePolynomial project_Ps(const SparsePolynomial& f, const OrbitBasis& basis) { return project_onto(f, basis); }

int dim_Ps(const Domain& D, const Signature& s, const OrbitSpanOptions& opt) {
    return orbit_span_adaptive(D, delta_s_factors(D, s), opt, signature_stream(s)).rank();
}

ProjectionCache::ProjectionCache(const Domain& D, OrbitSpanOptions opt) : D_(D), opt_(opt) {}

OrbitBasis ProjectionCache::build(const Signature& s) const {
    if (D_.rank() == 1) {
        OrbitBasis b;
        b.nvars = D_.dim();
        b.degree = s.at(0);
        b.monos = homogeneous_monomials(b.nvars, b.degree);
        b.Q = CMat::Identity(b.monos.size(), b.monos.size());
        return b;
    }
    return orbit_span_adaptive(D_, delta_s_factors(D_, s), opt_, signature_stream(s));
}

const OrbitBasis& ProjectionCache::basis(const Signature& s) {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(s);
        if (it != cache_.end()) return it->second;
    }
    OrbitBasis b = build(s);
    std::lock_guard<std::mutex> lock(mu_);
    return cache_.emplace(s, std::move(b)).first->second;
}

void ProjectionCache::prebuild(int max_degree) {
    const std::vector<Signature> sigs = enumerate_signatures(D_.rank(), max_degree);
    std::vector<OrbitBasis> built(sigs.size());
    OrbitSpanOptions inner = opt_;
    inner.exec = Exec::Serial;
    ProjectionCache serial(D_, inner);
    const int n = static_cast<int>(sigs.size());
#pragma omp parallel for schedule(dynamic) if (opt_.exec == Exec::Parallel)
    for (int i = 0; i < n; ++i) built[i] = serial.build(sigs[i]);
    std::lock_guard<std::mutex> lock(mu_);
    for (int i = 0; i < n; ++i) cache_.emplace(sigs[i], std::move(built[i]));
}

SparsePolynomial ProjectionCache::project(const SparsePolynomial& f, const Signature& s) {
    return project_onto(f, basis(s));
}

SparsePolynomial box_operator(const Domain& D, const SparsePolynomial& f, int k) {
    if (!D.is_tube()) throw Unsupported("the box operator is defined on tube domains");
    if (k < 0) throw RejectedInput("negative power of the box operator");
    const SparsePolynomial delta = delta_poly(D, D.rank());
    SparsePolynomial cur = f;
    for (int it = 0; it < k; ++it) {
        SparsePolynomial next(f.nvars());
        for (const auto& [key, c] : delta.terms()) {
            SparsePolynomial t = cur;
            const std::vector<int> a = key_exponents(key, f.nvars());
            for (int i = 0; i < f.nvars(); ++i)
                for (int e = 0; e < a[i]; ++e) t = derivative(t, i);
            next += c * t;
        }
        cur = next;
    }
    return cur;
}

}  // namespace symdom
