#include "symdom/domains.hpp"

#include <cmath>

namespace symdom {

namespace {

const double kSqrt2 = std::sqrt(2.0);

CMat entries_to_matrix(const CVec& v, int rows, int cols) {
    CMat M(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) M(i, j) = v(i * cols + j);
    return M;
}

CVec matrix_to_entries(const CMat& M) {
    CVec v(M.rows() * M.cols());
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j) v(i * M.cols() + j) = M(i, j);
    return v;
}

cd inner(const CVec& a, const CVec& b) { return b.dot(a); }  // sum a_i conj(b_i)

double student_t_density(double x, double nu) {
    const double c = std::exp(std::lgamma(0.5 * (nu + 1)) - std::lgamma(0.5 * nu)) / std::sqrt(nu * M_PI);
    return c * std::pow(1.0 + x * x / nu, -0.5 * (nu + 1));
}

double gauss_density(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); }

}  // namespace

FamilySpec disc_spec() { return {Family::HermComplex, 1, 1}; }
FamilySpec ball_spec(int n) {
    if (n < 1) throw RejectedInput("ball dimension must be >= 1");
    return {Family::HermComplex, 1, n};
}

FamilySpec parse_family(const std::string& name, int size, int cols) {
    if (name == "disc") return disc_spec();
    if (name == "ball") return ball_spec(size);
    if (name == "sym") return {Family::SymReal, size, 0};
    if (name == "herm") return {Family::HermComplex, size, cols};
    if (name == "quat") return {Family::HermQuaternion, size, 0};
    if (name == "spin") return {Family::SpinFactor, size, 0};
    throw RejectedInput("unknown family '" + name + "'");
}

Domain::Domain(FamilySpec spec) : spec_(spec), A_(spec) {
    if (type_one()) {
        dim_ = A_.rank() * desc().cols;
    } else {
        dim_ = A_.dim();
    }
    if (A_.family() == Family::SpinFactor) {
        const int m = A_.dim();
        spin_m_ = CMat::Zero(m, m);
        spin_m_(0, 0) = spin_m_(0, 1) = 0.5;
        spin_m_(1, 0) = 0.5 * I1;
        spin_m_(1, 1) = -0.5 * I1;
        for (int k = 2; k < m; ++k) spin_m_(k, k) = I1 / kSqrt2;
    }
}

std::string Domain::name() const {
    const auto& d = desc();
    switch (d.family) {
        case Family::HermComplex:
            if (d.rank == 1) return d.cols == 1 ? "disc" : "ball(" + std::to_string(d.cols) + ")";
            return "herm(" + std::to_string(d.rank) + "," + std::to_string(d.cols) + ")";
        case Family::SymReal: return "sym(" + std::to_string(d.rank) + ")";
        case Family::HermQuaternion: return "quat(" + std::to_string(d.rank) + ")";
        case Family::SpinFactor: return "spin(" + std::to_string(d.size) + ")";
    }
    return "?";
}

int Domain::rows() const {
    if (!has_matrix_picture()) throw Unsupported("spin factor has no matrix picture");
    return type_one() ? rank() : A_.mat_size();
}

int Domain::cols() const {
    if (!has_matrix_picture()) throw Unsupported("spin factor has no matrix picture");
    return type_one() ? desc().cols : A_.mat_size();
}

CMat Domain::to_matrix(const CVec& z) const {
    if (z.size() != dim_) throw RejectedInput("point has the wrong dimension");
    if (type_one()) return entries_to_matrix(z, rank(), desc().cols);
    return A_.embed(z);
}

CVec Domain::from_matrix(const CMat& Z) const {
    if (type_one()) return matrix_to_entries(Z);
    return A_.unembed(Z);
}

CVec Domain::z1_part(const CVec& z) const {
    if (!type_one()) return z;
    return A_.unembed(to_matrix(z).leftCols(rank()));
}

CVec Domain::zeta_part(const CVec& z) const {
    if (!type_one() || is_tube()) return CVec(0);
    const int p = rank();
    return matrix_to_entries(to_matrix(z).rightCols(desc().cols - p));
}

CVec Domain::join(const CVec& z1, const CVec& zeta) const {
    if (!type_one()) return z1;
    const int p = rank(), q = desc().cols;
    CMat Z(p, q);
    Z.leftCols(p) = A_.embed(z1);
    if (q > p) Z.rightCols(q - p) = entries_to_matrix(zeta, p, q - p);
    return matrix_to_entries(Z);
}

CVec Domain::triple(const CVec& x, const CVec& y, const CVec& z) const {
    if (type_one()) {
        CMat X = to_matrix(x), Y = to_matrix(y), Z = to_matrix(z);
        return from_matrix(0.5 * (X * Y.adjoint() * Z + Z * Y.adjoint() * X));
    }
    return triple_product(A_, x, y, z);
}

CVec Domain::e_point() const {
    if (type_one()) {
        CMat E = CMat::Zero(rank(), desc().cols);
        E.leftCols(rank()).setIdentity();
        return matrix_to_entries(E);
    }
    return identity(A_).cast<cd>();
}

double spectral_norm(const Domain& D, const CVec& z) {
    if (D.has_matrix_picture()) {
        Eigen::JacobiSVD<CMat> svd(D.to_matrix(z));
        return svd.singularValues()(0);
    }
    // singular values s1 >= s2 with s1^2 + s2^2 = |c|^2, s1 s2 = |Delta(c)|
    const double n2 = z.squaredNorm();
    const double det = std::abs(delta_j(D.algebra(), z, 2));
    const double disc = std::max(0.0, n2 * n2 - 4.0 * det * det);
    return std::sqrt(0.5 * (n2 + std::sqrt(disc)));
}

bool in_bounded_domain(const Domain& D, const CVec& z, double tol) {
    return spectral_norm(D, z) < 1.0 - tol;
}

CVec phi_form(const Domain& D, const CVec& zeta, const CVec& zeta2) {
    if (zeta.size() != D.zeta_dim() || zeta2.size() != D.zeta_dim())
        throw RejectedInput("zeta has the wrong dimension");
    if (D.is_tube()) return CVec::Zero(D.algebra().dim());
    const int p = D.rank(), w = D.desc().cols - p;
    const CMat a = entries_to_matrix(zeta, p, w), b = entries_to_matrix(zeta2, p, w);
    return D.algebra().unembed(a * b.adjoint());
}

Vec siegel_height(const Domain& D, const SiegelPoint& p) {
    return Vec(p.z.imag()) - Vec(phi_form(D, p.zeta, p.zeta).real());
}

bool in_siegel_domain(const Domain& D, const SiegelPoint& p) {
    return in_cone(D.algebra(), siegel_height(D, p));
}

SiegelPoint siegel_base_point(const Domain& D) {
    return {CVec::Zero(D.zeta_dim()), CVec(I1 * identity(D.algebra()).cast<cd>())};
}

SiegelPoint cayley(const Domain& D, const CVec& z) {
    const Algebra& A = D.algebra();
    const CVec e = identity(A).cast<cd>();
    const CVec z1 = D.z1_part(z);
    CVec emz_inv;
    try {
        emz_inv = inverse(A, CVec(e - z1));
    } catch (const SingularElement&) {
        throw DomainError("e - z is singular");
    }
    SiegelPoint out;
    out.z = I1 * jordan_product(A, emz_inv, CVec(e + z1));
    if (D.is_tube()) {
        out.zeta = CVec(0);
        return out;
    }
    const int p = D.rank(), w = D.desc().cols - p;
    const CMat zeta = entries_to_matrix(D.zeta_part(z), p, w);
    out.zeta = matrix_to_entries(A.embed(emz_inv) * zeta);
    return out;
}

CVec inverse_cayley(const Domain& D, const SiegelPoint& p) {
    const Algebra& A = D.algebra();
    const CVec e = identity(A).cast<cd>();
    CVec zpi;
    // on the Siegel domain |(z + ie)^{-1}| <= 1, so only exact singularity is rejected
    try {
        zpi = inverse(A, CVec(p.z + I1 * e), 0.0);
    } catch (const SingularElement&) {
        throw DomainError("z + ie is singular");
    }
    const CVec z1 = jordan_product(A, zpi, CVec(p.z - I1 * e));
    if (D.is_tube()) return D.join(z1, CVec(0));
    const int r = D.rank(), w = D.desc().cols - r;
    const CMat zeta = A.embed(CVec(e - z1)) * entries_to_matrix(p.zeta, r, w);
    return D.join(z1, matrix_to_entries(zeta));
}

cd kernel_siegel(const Domain& D, double lambda, const SiegelPoint& p, const SiegelPoint& q) {
    const CVec arg = (p.z - q.z.conjugate()) / (2.0 * I1) - phi_form(D, p.zeta, q.zeta);
    return det_power(D.algebra(), arg, lambda);
}

cd cayley_factor(const Domain& D, double lambda, const SiegelPoint& p) {
    const CVec e = identity(D.algebra()).cast<cd>();
    return det_power(D.algebra(), CVec(0.5 * (e - I1 * p.z)), lambda);
}

cd log_generic_norm(const Domain& D, const CVec& z, const CVec& w) {
    if (D.has_matrix_picture()) {
        const CMat M = D.to_matrix(z) * D.to_matrix(w).adjoint();
        Eigen::ComplexEigenSolver<CMat> es(M, false);
        cd acc = 0.0;
        for (int k = 0; k < M.rows(); ++k) acc += std::log(1.0 - es.eigenvalues()(k));
        return acc / double(D.multiplicity());
    }
    const Algebra& A = D.algebra();
    const cd h = 1.0 - inner(z, w) + delta_j(A, z, 2) * std::conj(delta_j(A, w, 2));
    return std::log(h);
}

cd kernel_bounded(const Domain& D, double lambda, const CVec& z, const CVec& w) {
    if (!in_bounded_domain(D, z) || !in_bounded_domain(D, w))
        throw DomainError("kernel arguments must lie in the bounded domain");
    if (D.type_one()) return std::exp(-lambda * log_generic_norm(D, z, w));
    const SiegelPoint a = cayley(D, z), b = cayley(D, w);
    return kernel_siegel(D, lambda, a, b) /
           (cayley_factor(D, lambda, a) * std::conj(cayley_factor(D, lambda, b)));
}

MobiusMap mobius_identity(int n) { return {CVec::Zero(n), CMat::Identity(n, n)}; }

MobiusMap mobius_sample(const Domain& D, Rng& rng, double radius) {
    if (!D.is_rank_one_ball()) throw Unsupported("Mobius maps exist for the disc and balls only");
    const int n = D.dim();
    MobiusMap phi;
    phi.b = uniform_complex_ball(n, radius, rng);
    phi.U = haar_unitary(n, rng);
    return phi;
}

namespace {

// P_b v and the scalar s_b = sqrt(1 - |b|^2).
CVec proj_b(const CVec& b, const CVec& v) {
    const double nb = b.squaredNorm();
    if (nb == 0.0) return CVec::Zero(v.size());
    return b * (inner(v, b) / nb);
}

}  // namespace

CVec mobius_apply(const MobiusMap& phi, const CVec& z) {
    const double s = std::sqrt(1.0 - phi.b.squaredNorm());
    const CVec pz = proj_b(phi.b, z);
    const CVec num = pz - phi.b + s * (z - pz);
    return phi.U * num / (1.0 - inner(z, phi.b));
}

CVec mobius_apply_inverse(const MobiusMap& phi, const CVec& w) {
    const CVec v = phi.U.adjoint() * w;
    const double s = std::sqrt(1.0 - phi.b.squaredNorm());
    const CVec pv = proj_b(phi.b, v);
    return (phi.b + pv + s * (v - pv)) / (1.0 + inner(v, phi.b));
}

cd mobius_jacobian(const MobiusMap& phi, const CVec& z) {
    const int n = z.size();
    const double nb = phi.b.squaredNorm();
    return phi.U.determinant() * std::pow(1.0 - nb, 0.5 * (n + 1)) /
           std::pow(1.0 - inner(z, phi.b), double(n + 1));
}

cd mobius_jacobian_power(const MobiusMap& phi, const CVec& z, double lambda) {
    const int n = z.size();
    const double g = n + 1;
    const double nb = phi.b.squaredNorm();
    const cd log_u = cd(0.0, std::arg(phi.U.determinant()));
    const cd acc = (lambda / g) * log_u + 0.5 * lambda * std::log(1.0 - nb) -
                   lambda * std::log(1.0 - inner(z, phi.b));
    return std::exp(acc);
}

AffineMap affine_identity(const Domain& D) {
    return {CVec::Zero(D.zeta_dim()), Vec::Zero(D.algebra().dim()), triangular_identity(D.algebra())};
}

AffineMap affine_sample(const Domain& D, Rng& rng, double scale) {
    std::normal_distribution<double> nd(0.0, scale);
    AffineMap m;
    m.zeta0 = CVec(D.zeta_dim());
    for (int i = 0; i < m.zeta0.size(); ++i) m.zeta0(i) = cd(nd(rng), nd(rng));
    m.x0 = Vec(D.algebra().dim());
    for (int i = 0; i < m.x0.size(); ++i) m.x0(i) = nd(rng);
    m.t = random_triangular(D.algebra(), rng, scale);
    return m;
}

namespace {

CVec t_zeta(const Domain& D, const TriangularElement& t, const CVec& zeta) {
    if (D.is_tube()) return zeta;
    const int p = D.rank(), w = D.desc().cols - p;
    return matrix_to_entries(t.t * entries_to_matrix(zeta, p, w));
}

}  // namespace

std::pair<CVec, Vec> heisenberg_product(const Domain& D, const CVec& z1, const Vec& x1,
                                        const CVec& z2, const Vec& x2) {
    const Vec x = x1 + x2 + 2.0 * Vec(phi_form(D, z1, z2).imag());
    return {z1 + z2, x};
}

SiegelPoint affine_apply(const Domain& D, const AffineMap& m, const SiegelPoint& p) {
    const Algebra& A = D.algebra();
    const CVec zt = t_zeta(D, m.t, p.zeta);
    const CVec wt = t_action(A, m.t, p.z);
    SiegelPoint out;
    out.zeta = m.zeta0 + zt;
    out.z = wt + m.x0.cast<cd>() + I1 * phi_form(D, m.zeta0, m.zeta0) + 2.0 * I1 * phi_form(D, zt, m.zeta0);
    return out;
}

AffineMap affine_compose(const Domain& D, const AffineMap& a, const AffineMap& b) {
    const Algebra& A = D.algebra();
    const CVec zb = t_zeta(D, a.t, b.zeta0);
    const Vec xb = t_action(A, a.t, b.x0);
    auto [zeta, x] = heisenberg_product(D, a.zeta0, a.x0, zb, xb);
    return {zeta, x, compose(A, a.t, b.t)};
}

AffineMap affine_inverse(const Domain& D, const AffineMap& m) {
    const Algebra& A = D.algebra();
    const TriangularElement ti = inverse(A, m.t);
    return {CVec(-t_zeta(D, ti, m.zeta0)), Vec(-t_action(A, ti, m.x0)), ti};
}

double affine_abs_jacobian(const Domain& D, const AffineMap& m) {
    const Algebra& A = D.algebra();
    const int n = A.dim();
    CMat L(n, n);
    for (int k = 0; k < n; ++k) L.col(k) = t_action(A, m.t, CVec(CVec::Unit(n, k)));
    double out = std::abs(L.determinant());
    if (!D.is_tube()) {
        const int p = D.rank();
        out *= std::pow(std::abs(m.t.t.topLeftCorner(p, p).determinant()), D.desc().cols - p);
    }
    return out;
}

double invariant_measure_density(const Domain& D, const SiegelPoint& p) {
    const Vec h = siegel_height(D, p);
    if (!in_cone(D.algebra(), h)) throw DomainError("point is outside the Siegel domain");
    return std::pow(determinant(D.algebra(), h), -D.genus());
}

double bounded_proposal_volume(const Domain& D) {
    const int n = 2 * D.dim();
    if (D.is_rank_one_ball()) return std::pow(2.0, n);
    const double R = std::sqrt(double(D.rank()));
    return std::pow(M_PI, 0.5 * n) * std::pow(R, n) / std::tgamma(0.5 * n + 1.0);
}

CVec sample_bounded(const Domain& D, Rng& rng, long* attempts) {
    std::uniform_real_distribution<double> ud(-1.0, 1.0);
    long tries = 0;
    for (;;) {
        ++tries;
        CVec z(D.dim());
        if (D.is_rank_one_ball()) {
            for (int i = 0; i < z.size(); ++i) z(i) = cd(ud(rng), ud(rng));
        } else {
            z = uniform_complex_ball(D.dim(), std::sqrt(double(D.rank())), rng);
        }
        if (in_bounded_domain(D, z)) {
            if (attempts) *attempts = tries;
            return z;
        }
    }
}

namespace {

// Y = t.e for t with positive diagonal d and strictly lower parameters L.
Vec triangular_point(const Algebra& A, const Vec& d, const Vec& L) {
    const TriangularElement t = triangular_from_params(A, Vec(d.array().log()), L);
    return t_action(A, t, identity(A));
}

}  // namespace

SiegelSample sample_siegel(const Domain& D, Rng& rng, const SiegelSamplerParams& params) {
    const Algebra& A = D.algebra();
    const int r = A.rank(), m = A.dim(), nz = D.zeta_dim();
    const double nu = params.dof;
    std::student_t_distribution<double> td(nu);
    std::normal_distribution<double> nd(0.0, 1.0);
    std::exponential_distribution<double> ed(1.0);
    std::uniform_int_distribution<int> coin(0, 1);

    // standardized draw and its density
    auto draw = [&](double scale, double* log_dens) {
        const double u = params.heavy_tails ? td(rng) : nd(rng);
        const double dens = params.heavy_tails ? student_t_density(u, nu) : gauss_density(u);
        *log_dens += std::log(dens / scale);
        return u * scale;
    };

    double log_dens = 0.0;
    CVec zeta(nz);
    for (int i = 0; i < nz; ++i) {
        const double re = draw(params.zeta_scale, &log_dens);
        const double im = draw(params.zeta_scale, &log_dens);
        zeta(i) = cd(re, im);
    }
    Vec x(m);
    for (int i = 0; i < m; ++i) x(i) = draw(params.x_scale, &log_dens);

    Vec d(r), L(m - r);
    for (int j = 0; j < r; ++j) {
        double ld;
        const double b = params.log_diag_scale;
        if (params.heavy_tails) {
            ld = (coin(rng) ? 1.0 : -1.0) * ed(rng) * b;
            log_dens += std::log(0.5 / b) - std::abs(ld) / b;
        } else {
            ld = nd(rng) * b;
            log_dens += std::log(gauss_density(ld / b) / b);
        }
        d(j) = std::exp(ld);
        log_dens -= ld;  // density of d = density of log d / d
    }
    for (int k = 0; k < m - r; ++k) L(k) = draw(params.lower_scale, &log_dens);

    // Y is quadratic in (d, L), so central differences give the exact Jacobian.
    const Vec Y = triangular_point(A, d, L);
    Mat J(m, m);
    for (int j = 0; j < r; ++j) {
        const double h = 0.5 * d(j);
        Vec dp = d, dm = d;
        dp(j) += h;
        dm(j) -= h;
        J.col(j) = (triangular_point(A, dp, L) - triangular_point(A, dm, L)) / (2.0 * h);
    }
    for (int k = 0; k < m - r; ++k) {
        Vec lp = L, lm = L;
        lp(k) += 1.0;
        lm(k) -= 1.0;
        J.col(r + k) = (triangular_point(A, d, lp) - triangular_point(A, d, lm)) / 2.0;
    }
    log_dens -= std::log(std::abs(J.determinant()));

    SiegelSample out;
    out.p.zeta = zeta;
    out.p.z = x.cast<cd>() + I1 * (Y + Vec(phi_form(D, zeta, zeta).real())).cast<cd>();
    out.density = std::exp(log_dens);
    return out;
}

}  // namespace symdom
