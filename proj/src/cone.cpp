#include "symdom/cone.hpp"

#include <algorithm>
#include <cmath>

namespace symdom {

namespace {

const double kSqrt2 = std::sqrt(2.0);

void check_j(const Algebra& A, int j) {
    if (j < 1 || j > A.rank()) throw RejectedInput("minor index out of range");
}

// Product of one eigenvalue from each (numerically equal) pair.
cd paired_product(Eigen::VectorXcd ev) {
    std::vector<cd> v(ev.data(), ev.data() + ev.size());
    std::vector<bool> used(v.size(), false);
    cd prod = 1.0;
    for (size_t i = 0; i < v.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        size_t best = i;
        double bd = 1e300;
        for (size_t k = i + 1; k < v.size(); ++k) {
            if (!used[k] && std::abs(v[k] - v[i]) < bd) {
                bd = std::abs(v[k] - v[i]);
                best = k;
            }
        }
        used[best] = true;
        prod *= 0.5 * (v[i] + v[best]);
    }
    return prod;
}

cd block_minor(const Algebra& A, const CMat& X, int j, bool trailing) {
    const int blk = A.multiplicity();
    const int n = j * blk;
    const int off = trailing ? X.rows() - n : 0;
    CMat B = X.block(off, off, n, n);
    if (A.family() == Family::HermQuaternion) {
        Eigen::ComplexEigenSolver<CMat> es(B, false);
        return paired_product(es.eigenvalues());
    }
    return B.determinant();
}

struct Spin {
    cd x, y;
    CVec z;
};

Spin spin_of(const CVec& c) { return {c(0), c(1), c.tail(c.size() - 2) / kSqrt2}; }

cd bil(const CVec& a, const CVec& b) { return (a.array() * b.array()).sum(); }

}  // namespace

cd delta_j(const Algebra& A, const CVec& w, int j) {
    check_j(A, j);
    if (A.is_matrix()) return block_minor(A, A.embed(w), j, false);
    Spin s = spin_of(w);
    return j == 1 ? s.x : s.x * s.y - bil(s.z, s.z);
}

double delta_j(const Algebra& A, const Vec& x, int j) {
    check_j(A, j);
    if (A.family() == Family::HermQuaternion) {
        const int n = 2 * j;
        CMat B = A.embed(x.cast<cd>()).topLeftCorner(n, n);
        Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (B + B.adjoint()), Eigen::EigenvaluesOnly);
        double p = 1.0;
        for (int k = 0; k < n; k += 2) p *= 0.5 * (es.eigenvalues()(k) + es.eigenvalues()(k + 1));
        return p;
    }
    return delta_j(A, CVec(x.cast<cd>()), j).real();
}

double delta_j_star(const Algebra& A, const Vec& x, int j) {
    check_j(A, j);
    if (!A.is_matrix()) {
        Spin s = spin_of(x.cast<cd>());
        return j == 1 ? s.y.real() : (s.x * s.y - bil(s.z, s.z)).real();
    }
    if (A.family() == Family::HermQuaternion) {
        const int n = 2 * j;
        CMat X = A.embed(x.cast<cd>());
        CMat B = X.bottomRightCorner(n, n);
        Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (B + B.adjoint()), Eigen::EigenvaluesOnly);
        double p = 1.0;
        for (int k = 0; k < n; k += 2) p *= 0.5 * (es.eigenvalues()(k) + es.eigenvalues()(k + 1));
        return p;
    }
    return block_minor(A, A.embed(x.cast<cd>()), j, true).real();
}

double min_eigenvalue(const Algebra& A, const Vec& x) {
    return spectral_decomposition(A, x).eigenvalues.minCoeff();
}

bool in_cone(const Algebra& A, const Vec& x, double tol) { return min_eigenvalue(A, x) > tol; }

double delta_power(const Algebra& A, const Vec& x, const Vec& s) {
    const int r = A.rank();
    if (s.size() != r) throw RejectedInput("signature length must equal the rank");
    bool integral = true;
    for (int j = 0; j < r; ++j) integral = integral && s(j) == std::round(s(j));
    if (!integral && !in_cone(A, x)) throw DomainError("non-integer power outside the cone");
    double out = 1.0;
    for (int j = 1; j <= r; ++j) {
        const double e = s(j - 1) - (j < r ? s(j) : 0.0);
        if (e == 0.0) continue;
        out *= std::pow(delta_j(A, x, j), e);
    }
    return out;
}

cd log_delta_j(const Algebra& A, const CVec& w, int j) {
    check_j(A, j);
    const Vec u = w.real();
    if (!in_cone(A, u)) throw DomainError("real part is not in the cone");
    if (A.is_matrix()) {
        const int n = j * A.multiplicity();
        CMat B = A.embed(w).topLeftCorner(n, n);
        Eigen::ComplexEigenSolver<CMat> es(B, false);
        cd acc = 0.0;
        for (int k = 0; k < n; ++k) acc += std::log(es.eigenvalues()(k));
        return acc / double(A.multiplicity());
    }
    if (j == 1) return std::log(w(0));
    // Delta(u + i v) = Delta(u) Delta(e + i P(u^{-1/2}) v)
    const Vec v = w.imag();
    const Vec uh = spectral_apply(A, u, [](double t) { return 1.0 / std::sqrt(t); });
    const Vec vp = quadratic_rep(A, uh, v);
    const Vec mu = spectral_decomposition(A, vp).eigenvalues;
    cd acc = std::log(delta_j(A, u, 2));
    for (int k = 0; k < mu.size(); ++k) acc += std::log(cd(1.0, mu(k)));
    return acc;
}

cd delta_power_complex(const Algebra& A, const CVec& w, const CVec& s) {
    const int r = A.rank();
    if (s.size() != r) throw RejectedInput("signature length must equal the rank");
    if (!in_cone(A, Vec(w.real()))) throw DomainError("real part is not in the cone");
    cd acc = 0.0;
    for (int j = 1; j <= r; ++j) {
        const cd e = s(j - 1) - (j < r ? s(j) : cd(0.0));
        if (e == cd(0.0)) continue;
        acc += e * log_delta_j(A, w, j);
    }
    return std::exp(acc);
}

cd det_power(const Algebra& A, const CVec& w, double lambda) {
    return std::exp(-lambda * log_delta_j(A, w, A.rank()));
}

TriangularElement triangular_identity(const Algebra& A) {
    TriangularElement t;
    t.family = A.family();
    if (A.is_matrix()) {
        t.t = CMat::Identity(A.mat_size(), A.mat_size());
    } else {
        t.u = Vec::Zero(A.dim() - 2);
    }
    return t;
}

TriangularElement cholesky_t(const Algebra& A, const Vec& x) {
    if (!in_cone(A, x)) throw DomainError("cholesky_t needs a point of the cone");
    TriangularElement t;
    t.family = A.family();
    if (A.is_matrix()) {
        CMat X = A.embed(x.cast<cd>());
        X = 0.5 * (X + X.adjoint()).eval();
        Eigen::LLT<CMat> llt(X);
        t.t = llt.matrixL();
        return t;
    }
    Spin s = spin_of(x.cast<cd>());
    t.t11 = std::sqrt(s.x.real());
    t.u = s.z.real() / t.t11;
    t.t22 = std::sqrt(s.y.real() - t.u.squaredNorm());
    return t;
}

TriangularElement compose(const Algebra& A, const TriangularElement& a, const TriangularElement& b) {
    TriangularElement c;
    c.family = A.family();
    if (A.is_matrix()) {
        c.t = a.t * b.t;
        return c;
    }
    c.t11 = a.t11 * b.t11;
    c.t22 = a.t22 * b.t22;
    c.u = b.t11 * a.u + a.t22 * b.u;
    return c;
}

TriangularElement inverse(const Algebra& A, const TriangularElement& t) {
    TriangularElement c;
    c.family = A.family();
    if (A.is_matrix()) {
        const int n = t.t.rows();
        c.t = t.t.triangularView<Eigen::Lower>().solve(CMat::Identity(n, n));
        return c;
    }
    c.t11 = 1.0 / t.t11;
    c.t22 = 1.0 / t.t22;
    c.u = -t.u / (t.t11 * t.t22);
    return c;
}

CVec t_action(const Algebra& A, const TriangularElement& t, const CVec& x) {
    if (A.is_matrix()) return A.unembed(t.t * A.embed(x) * t.t.adjoint());
    Spin s = spin_of(x);
    const CVec u = t.u.cast<cd>();
    cd nx = t.t11 * t.t11 * s.x;
    CVec nz = t.t11 * (s.x * u + t.t22 * s.z);
    cd ny = s.x * bil(u, u) + 2.0 * t.t22 * bil(u, s.z) + t.t22 * t.t22 * s.y;
    return spin_element(A, nx, ny, nz);
}

Vec t_action(const Algebra& A, const TriangularElement& t, const Vec& x) {
    return t_action(A, t, CVec(x.cast<cd>())).real();
}

Vec triangular_diagonal(const Algebra& A, const TriangularElement& t) {
    Vec d(A.rank());
    if (!A.is_matrix()) {
        d << t.t11, t.t22;
        return d;
    }
    const int blk = A.multiplicity();
    for (int j = 0; j < A.rank(); ++j) d(j) = t.t(j * blk, j * blk).real();
    return d;
}

double character(const Algebra& A, const TriangularElement& t, const Vec& s) {
    const Vec d = triangular_diagonal(A, t);
    double out = 1.0;
    for (int j = 0; j < d.size(); ++j) out *= std::pow(d(j), 2.0 * s(j));
    return out;
}

TriangularElement triangular_from_params(const Algebra& A, const Vec& diag_log, const Vec& lower) {
    const int r = A.rank();
    if (diag_log.size() != r || lower.size() != A.dim() - r)
        throw RejectedInput("triangular parameter length mismatch");
    TriangularElement t = triangular_identity(A);
    if (!A.is_matrix()) {
        t.t11 = std::exp(diag_log(0));
        t.t22 = std::exp(diag_log(1));
        t.u = lower;
        return t;
    }
    const int blk = A.multiplicity();
    int k = 0;
    for (int i = 0; i < r; ++i) {
        t.t.block(i * blk, i * blk, blk, blk) *= std::exp(diag_log(i));
        for (int j = 0; j < i; ++j) {
            if (A.family() == Family::SymReal) {
                t.t(i, j) = lower(k++);
            } else if (A.family() == Family::HermComplex) {
                t.t(i, j) = cd(lower(k), lower(k + 1));
                k += 2;
            } else {
                Mat a(1, 1), b(1, 1), c(1, 1), d(1, 1);
                a << lower(k);
                b << lower(k + 1);
                c << lower(k + 2);
                d << lower(k + 3);
                k += 4;
                t.t.block(2 * i, 2 * j, 2, 2) = quaternion_embed(a, b, c, d);
            }
        }
    }
    return t;
}

TriangularElement random_triangular(const Algebra& A, std::mt19937_64& rng, double scale) {
    std::normal_distribution<double> nd(0.0, scale);
    Vec dl(A.rank()), lo(A.dim() - A.rank());
    for (int i = 0; i < dl.size(); ++i) dl(i) = nd(rng);
    for (int i = 0; i < lo.size(); ++i) lo(i) = nd(rng);
    return triangular_from_params(A, dl, lo);
}

}  // namespace symdom
