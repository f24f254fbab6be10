#include "symdom/eja.hpp"

#include <algorithm>
#include <cmath>

namespace symdom {

namespace {

const double kSqrt2 = std::sqrt(2.0);

CMat unit_quaternion(int unit) {
    Mat z = Mat::Zero(1, 1), o = Mat::Ones(1, 1);
    switch (unit) {
        case 0: return quaternion_embed(o, z, z, z);
        case 1: return quaternion_embed(z, o, z, z);
        case 2: return quaternion_embed(z, z, o, z);
        default: return quaternion_embed(z, z, z, o);
    }
}

std::vector<CMat> build_basis(Family f, int r) {
    std::vector<CMat> basis;
    if (f == Family::SpinFactor) return basis;
    const int blk = f == Family::HermQuaternion ? 2 : 1;
    const int n = r * blk;
    for (int i = 0; i < r; ++i) {
        for (int j = i; j < r; ++j) {
            if (i == j) {
                CMat b = CMat::Zero(n, n);
                b.block(i * blk, i * blk, blk, blk).setIdentity();
                basis.push_back(b);
                continue;
            }
            int units = f == Family::SymReal ? 1 : (f == Family::HermComplex ? 2 : 4);
            for (int u = 0; u < units; ++u) {
                CMat b = CMat::Zero(n, n);
                CMat q;
                if (f == Family::HermQuaternion) {
                    q = unit_quaternion(u);
                } else {
                    q = CMat::Constant(1, 1, u == 0 ? cd(1, 0) : I1);
                }
                b.block(i * blk, j * blk, blk, blk) = q / kSqrt2;
                b.block(j * blk, i * blk, blk, blk) = q.adjoint() / kSqrt2;
                basis.push_back(b);
            }
        }
    }
    return basis;
}

struct SpinParts {
    cd x, y;
    CVec z;
};

SpinParts spin_parts(const CVec& c) {
    return {c(0), c(1), c.tail(c.size() - 2) / kSqrt2};
}

CVec spin_coords(cd x, cd y, const CVec& z) {
    CVec c(z.size() + 2);
    c(0) = x;
    c(1) = y;
    c.tail(z.size()) = z * kSqrt2;
    return c;
}

cd bilinear(const CVec& a, const CVec& b) { return (a.array() * b.array()).sum(); }

}  // namespace

const char* family_name(Family f) {
    switch (f) {
        case Family::SymReal: return "sym";
        case Family::HermComplex: return "herm";
        case Family::HermQuaternion: return "quat";
        case Family::SpinFactor: return "spin";
    }
    return "?";
}

Algebra::Algebra(FamilySpec spec) {
    const int s = spec.size;
    AlgebraDescriptor d{};
    d.family = spec.family;
    d.size = s;
    d.cols = 0;
    switch (spec.family) {
        case Family::SymReal:
            if (s < 1) throw RejectedInput("SymReal needs rank >= 1");
            d.rank = s;
            d.peirce_a = 1;
            d.dim_m = s * (s + 1) / 2;
            d.siegel_n = 0;
            break;
        case Family::HermComplex: {
            if (s < 1) throw RejectedInput("HermComplex needs rank >= 1");
            const int q = spec.cols == 0 ? s : spec.cols;
            if (q < s) throw RejectedInput("HermComplex needs q >= p");
            d.cols = q;
            d.rank = s;
            d.peirce_a = s >= 2 ? 2 : 0;
            d.dim_m = s * s;
            d.siegel_n = s * (q - s);
            break;
        }
        case Family::HermQuaternion:
            if (s < 1) throw RejectedInput("HermQuaternion needs rank >= 1");
            d.rank = s;
            d.peirce_a = 4;
            d.dim_m = s * (2 * s - 1);
            d.siegel_n = 0;
            break;
        case Family::SpinFactor:
            if (s < 3) throw RejectedInput("SpinFactor needs m >= 3");
            d.rank = 2;
            d.peirce_a = s - 2;
            d.dim_m = s;
            d.siegel_n = 0;
            break;
    }
    d.genus_g = double(d.siegel_n + 2 * d.dim_m) / d.rank;
    d.trace_form_ratio = d.genus_g / 2.0;
    d_ = d;
    basis_ = build_basis(d.family, d.rank);
}

int Algebra::mat_size() const {
    return d_.family == Family::HermQuaternion ? 2 * d_.rank : d_.rank;
}

CMat Algebra::embed(const CVec& x) const {
    if (!is_matrix()) throw Unsupported("spin factor has no matrix embedding");
    if (x.size() != dim()) throw RejectedInput("coordinate length mismatch");
    const int n = mat_size();
    CMat X = CMat::Zero(n, n);
    for (int k = 0; k < dim(); ++k) X += x(k) * basis_[k];
    return X;
}

CVec Algebra::unembed(const CMat& X) const {
    if (!is_matrix()) throw Unsupported("spin factor has no matrix embedding");
    CVec c(dim());
    const double mult = multiplicity();
    for (int k = 0; k < dim(); ++k) c(k) = (basis_[k] * X).trace() / mult;
    return c;
}

bool Algebra::same_as(const Algebra& o) const {
    return d_.family == o.d_.family && d_.size == o.d_.size && d_.cols == o.d_.cols;
}

Algebra make_algebra(FamilySpec spec) { return Algebra(spec); }

CVec jordan_product(const Algebra& A, const CVec& x, const CVec& y) {
    if (x.size() != A.dim() || y.size() != A.dim())
        throw RejectedInput("element does not belong to the algebra");
    if (A.is_matrix()) {
        CMat X = A.embed(x), Y = A.embed(y);
        return A.unembed(0.5 * (X * Y + Y * X));
    }
    SpinParts a = spin_parts(x), b = spin_parts(y);
    cd zz = bilinear(a.z, b.z);
    return spin_coords(a.x * b.x + zz, a.y * b.y + zz,
                       0.5 * ((a.x + a.y) * b.z + (b.x + b.y) * a.z));
}

Vec jordan_product(const Algebra& A, const Vec& x, const Vec& y) {
    return jordan_product(A, CVec(x.cast<cd>()), CVec(y.cast<cd>())).real();
}

Vec identity(const Algebra& A) {
    if (A.is_matrix()) return A.unembed(CMat::Identity(A.mat_size(), A.mat_size())).real();
    Vec e = Vec::Zero(A.dim());
    e(0) = e(1) = 1.0;
    return e;
}

cd trace(const Algebra& A, const CVec& x) {
    if (A.is_matrix()) return A.embed(x).trace() / double(A.multiplicity());
    return x(0) + x(1);
}

double trace(const Algebra& A, const Vec& x) { return trace(A, CVec(x.cast<cd>())).real(); }

double trace_inner(const Algebra& A, const Vec& x, const Vec& y) {
    return trace(A, jordan_product(A, x, y));
}

namespace {

// Split a projector of rank k (in algebra units) into k primitive idempotents by
// pivoted Gram-Schmidt on its columns. Quaternionic lines are closed under
// v -> J conj(v).
std::vector<CMat> split_projector(const Algebra& A, const CMat& P, int k) {
    const int n = P.rows();
    const bool quat = A.family() == Family::HermQuaternion;
    const bool real = A.family() == Family::SymReal;
    CMat J = quat ? quaternion_j(A.rank()) : CMat();
    CMat Q(n, 0);
    std::vector<CMat> pieces;
    for (int piece = 0; piece < k; ++piece) {
        CMat R = P - Q * (Q.adjoint() * P);
        int best = 0;
        double bn = -1;
        for (int c = 0; c < n; ++c) {
            double nn = R.col(c).norm();
            if (nn > bn + 1e-14) {
                bn = nn;
                best = c;
            }
        }
        CVec v = R.col(best);
        if (real) v = v.real().cast<cd>();
        v -= Q * (Q.adjoint() * v);
        v.normalize();
        CMat proj = v * v.adjoint();
        Q.conservativeResize(n, Q.cols() + 1);
        Q.col(Q.cols() - 1) = v;
        if (quat) {
            CVec w = J * v.conjugate();
            w -= Q * (Q.adjoint() * w);
            w.normalize();
            proj += w * w.adjoint();
            Q.conservativeResize(n, Q.cols() + 1);
            Q.col(Q.cols() - 1) = w;
        }
        pieces.push_back(proj);
    }
    return pieces;
}

}  // namespace

SpectralDecomposition spectral_decomposition(const Algebra& A, const Vec& x) {
    if (x.size() != A.dim()) throw RejectedInput("element does not belong to the algebra");
    SpectralDecomposition sd;
    if (!A.is_matrix()) {
        CVec c = x.cast<cd>();
        SpinParts p = spin_parts(c);
        const double a = 0.5 * (p.x + p.y).real();
        const double v1 = 0.5 * (p.x - p.y).real();
        const Vec z = p.z.real();
        const double rho = std::sqrt(v1 * v1 + z.squaredNorm());
        sd.eigenvalues.resize(2);
        if (rho == 0.0) {
            sd.eigenvalues << a, a;
            sd.frame = standard_frame(A);
            return sd;
        }
        sd.eigenvalues << a + rho, a - rho;
        const double u1 = v1 / rho;
        const Vec uz = z / rho;
        sd.frame.push_back(spin_element(A, 0.5 * (1 + u1), 0.5 * (1 - u1), 0.5 * uz));
        sd.frame.push_back(spin_element(A, 0.5 * (1 - u1), 0.5 * (1 + u1), -0.5 * uz));
        return sd;
    }
    CMat H = A.embed(x.cast<cd>());
    H = 0.5 * (H + H.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<CMat> es(H);
    const Vec ev = es.eigenvalues();
    const CMat V = es.eigenvectors();
    const int n = ev.size();
    const int mult = A.multiplicity();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    std::vector<double> vals;
    int hi = n - 1;
    while (hi >= 0) {
        int lo = hi;
        while (lo > 0 && ev(hi) - ev(lo - 1) < 1e-8 * scale) --lo;
        const int count = hi - lo + 1;
        const int k = std::max(1, (count + mult - 1) / mult);
        CMat Vc = V.middleCols(lo, count);
        CMat P = Vc * Vc.adjoint();
        const double mean = ev.segment(lo, count).mean();
        if (k == 1) {
            sd.frame.push_back(A.unembed(P).real());
            vals.push_back(mean);
        } else {
            for (const CMat& piece : split_projector(A, P, k)) {
                Vec c = A.unembed(piece).real();
                sd.frame.push_back(c);
                vals.push_back(trace_inner(A, x, c));
            }
        }
        hi = lo - 1;
    }
    sd.eigenvalues = Eigen::Map<Vec>(vals.data(), vals.size());
    return sd;
}

double determinant(const Algebra& A, const Vec& x) {
    return spectral_decomposition(A, x).eigenvalues.prod();
}

Vec spectral_apply(const Algebra& A, const Vec& x, double (*f)(double)) {
    SpectralDecomposition sd = spectral_decomposition(A, x);
    Vec out = Vec::Zero(A.dim());
    for (size_t i = 0; i < sd.frame.size(); ++i) out += f(sd.eigenvalues(i)) * sd.frame[i];
    return out;
}

Vec inverse(const Algebra& A, const Vec& x, double tol) {
    SpectralDecomposition sd = spectral_decomposition(A, x);
    const double scale = std::max(1.0, sd.eigenvalues.cwiseAbs().maxCoeff());
    if (sd.eigenvalues.cwiseAbs().minCoeff() <= tol * scale)
        throw SingularElement("element is not invertible");
    Vec out = Vec::Zero(A.dim());
    for (size_t i = 0; i < sd.frame.size(); ++i) out += sd.frame[i] / sd.eigenvalues(i);
    return out;
}

CVec inverse(const Algebra& A, const CVec& x, double tol) {
    const double scale = std::max(1.0, x.norm());
    if (A.is_matrix()) {
        CMat X = A.embed(x);
        Eigen::PartialPivLU<CMat> lu(X);
        if (std::abs(lu.determinant()) <= tol * std::pow(scale, X.rows()))
            throw SingularElement("element is not invertible");
        return A.unembed(lu.inverse());
    }
    SpinParts p = spin_parts(x);
    cd det = p.x * p.y - bilinear(p.z, p.z);
    if (std::abs(det) <= tol * scale * scale) throw SingularElement("element is not invertible");
    cd tr = p.x + p.y;
    return (tr * identity(A).cast<cd>() - x) / det;
}

Vec quadratic_rep(const Algebra& A, const Vec& a, const Vec& b) {
    return 2.0 * jordan_product(A, a, jordan_product(A, a, b)) -
           jordan_product(A, jordan_product(A, a, a), b);
}

CVec triple_product(const Algebra& A, const CVec& x, const CVec& y, const CVec& z) {
    CVec yb = y.conjugate();
    return jordan_product(A, x, jordan_product(A, yb, z)) -
           jordan_product(A, jordan_product(A, x, z), yb) +
           jordan_product(A, z, jordan_product(A, yb, x));
}

CMat box_operator_matrix(const Algebra& A, const CVec& a, const CVec& b) {
    const int m = A.dim();
    CMat D(m, m);
    for (int k = 0; k < m; ++k) D.col(k) = triple_product(A, a, b, CVec::Unit(m, k));
    return D;
}

PeirceProjectors peirce_projectors(const Algebra& A, const Vec& c, double tol) {
    if ((jordan_product(A, c, c) - c).norm() > tol * std::max(1.0, c.norm()))
        throw RejectedInput("peirce_projectors needs an idempotent");
    const int m = A.dim();
    CVec cc = c.cast<cd>();
    Mat D = box_operator_matrix(A, cc, cc).real();
    D = 0.5 * (D + D.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Mat> es(D);
    PeirceProjectors pp{Mat::Zero(m, m), Mat::Zero(m, m), Mat::Zero(m, m)};
    for (int k = 0; k < m; ++k) {
        const double e = es.eigenvalues()(k);
        const Vec v = es.eigenvectors().col(k);
        Mat pr = v * v.transpose();
        if (e < 0.25) pp.p0 += pr;
        else if (e < 0.75) pp.p_half += pr;
        else pp.p1 += pr;
    }
    return pp;
}

std::vector<Vec> standard_frame(const Algebra& A) {
    std::vector<Vec> frame;
    if (!A.is_matrix()) {
        frame.push_back(spin_element(A, 1.0, 0.0, Vec::Zero(A.dim() - 2)));
        frame.push_back(spin_element(A, 0.0, 1.0, Vec::Zero(A.dim() - 2)));
        return frame;
    }
    const int blk = A.multiplicity();
    for (int j = 0; j < A.rank(); ++j) {
        CMat E = CMat::Zero(A.mat_size(), A.mat_size());
        E.block(j * blk, j * blk, blk, blk).setIdentity();
        frame.push_back(A.unembed(E).real());
    }
    return frame;
}

Vec element_from_matrix(const Algebra& A, const CMat& hermitian) {
    return A.unembed(hermitian).real();
}

Vec spin_element(const Algebra& A, double x, double y, const Vec& z) {
    if (A.is_matrix() || z.size() != A.dim() - 2) throw RejectedInput("not a spin factor element");
    return spin_coords(x, y, z.cast<cd>()).real();
}

CVec spin_element(const Algebra& A, cd x, cd y, const CVec& z) {
    if (A.is_matrix() || z.size() != A.dim() - 2) throw RejectedInput("not a spin factor element");
    return spin_coords(x, y, z);
}

CMat quaternion_embed(const Mat& a, const Mat& b, const Mat& c, const Mat& d) {
    const int r = a.rows();
    CMat E(2 * r, 2 * r);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            E(2 * i, 2 * j) = cd(a(i, j), d(i, j));
            E(2 * i, 2 * j + 1) = cd(b(i, j), c(i, j));
            E(2 * i + 1, 2 * j) = cd(-b(i, j), c(i, j));
            E(2 * i + 1, 2 * j + 1) = cd(a(i, j), -d(i, j));
        }
    }
    return E;
}

CMat quaternion_j(int r) {
    CMat J = CMat::Zero(2 * r, 2 * r);
    for (int i = 0; i < r; ++i) {
        J(2 * i, 2 * i + 1) = 1.0;
        J(2 * i + 1, 2 * i) = -1.0;
    }
    return J;
}

}  // namespace symdom
