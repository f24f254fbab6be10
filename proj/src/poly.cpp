#include "symdom/poly.hpp"

#include <algorithm>
#include <cmath>

namespace symdom {

namespace {

const int kBits = 6;
const MonoKey kMask = (MonoKey(1) << kBits) - 1;
const int kDegShift = kBits * kMaxVars;

int var_shift(int i) { return kBits * (kMaxVars - 1 - i); }

void check_vars(int n) {
    if (n < 0 || n > kMaxVars) throw Unsupported("polynomials support at most 9 variables");
}

void check_same(const SparsePolynomial& a, const SparsePolynomial& b) {
    if (a.nvars() != b.nvars()) throw RejectedInput("polynomial dimension mismatch");
}

MonoKey var_key(int i) { return (MonoKey(1) << kDegShift) | (MonoKey(1) << var_shift(i)); }

void enumerate(int nvars, int pos, int left, std::vector<int>& cur, std::vector<MonoKey>& out) {
    if (pos == nvars - 1) {
        cur[pos] = left;
        out.push_back(make_key(cur));
        return;
    }
    for (int v = left; v >= 0; --v) {
        cur[pos] = v;
        enumerate(nvars, pos + 1, left - v, cur, out);
    }
}

}  // namespace

MonoKey make_key(const std::vector<int>& alpha) {
    check_vars(static_cast<int>(alpha.size()));
    MonoKey k = 0;
    int deg = 0;
    for (size_t i = 0; i < alpha.size(); ++i) {
        if (alpha[i] < 0) throw RejectedInput("negative exponent");
        deg += alpha[i];
        k |= MonoKey(alpha[i]) << var_shift(static_cast<int>(i));
    }
    if (deg > kMaxDegree) throw Unsupported("total degree above 63");
    return k | (MonoKey(deg) << kDegShift);
}

std::vector<int> key_exponents(MonoKey k, int nvars) {
    std::vector<int> a(nvars);
    for (int i = 0; i < nvars; ++i) a[i] = static_cast<int>((k >> var_shift(i)) & kMask);
    return a;
}

int key_degree(MonoKey k) { return static_cast<int>(k >> kDegShift); }

double key_factorial(MonoKey k, int nvars) {
    double f = 1.0;
    for (int i = 0; i < nvars; ++i) f *= std::tgamma(double((k >> var_shift(i)) & kMask) + 1.0);
    return f;
}

SparsePolynomial::SparsePolynomial(int nvars) : n_(nvars) { check_vars(nvars); }

SparsePolynomial SparsePolynomial::constant(int nvars, cd c) {
    SparsePolynomial p(nvars);
    p.add_term(0, c);
    return p;
}

SparsePolynomial SparsePolynomial::variable(int nvars, int i, cd c) {
    if (i < 0 || i >= nvars) throw RejectedInput("variable index out of range");
    SparsePolynomial p(nvars);
    p.add_term(var_key(i), c);
    return p;
}

SparsePolynomial SparsePolynomial::monomial(int nvars, const std::vector<int>& alpha, cd c) {
    if (static_cast<int>(alpha.size()) != nvars) throw RejectedInput("multi-index length mismatch");
    SparsePolynomial p(nvars);
    p.add_term(make_key(alpha), c);
    return p;
}

SparsePolynomial SparsePolynomial::linear(const CVec& a) {
    SparsePolynomial p(static_cast<int>(a.size()));
    for (int i = 0; i < a.size(); ++i) p.add_term(var_key(i), a(i));
    return p;
}

int SparsePolynomial::degree() const {
    if (t_.empty()) return -1;
    return key_degree(t_.rbegin()->first);
}

void SparsePolynomial::add_term(MonoKey k, cd c) {
    if (c == cd(0.0)) return;
    auto [it, fresh] = t_.emplace(k, c);
    if (fresh) return;
    it->second += c;
    if (it->second == cd(0.0)) t_.erase(it);
}

cd SparsePolynomial::coeff(const std::vector<int>& alpha) const {
    if (static_cast<int>(alpha.size()) != n_) throw RejectedInput("multi-index length mismatch");
    auto it = t_.find(make_key(alpha));
    return it == t_.end() ? cd(0.0) : it->second;
}

cd SparsePolynomial::eval(const CVec& z) const {
    if (z.size() != n_) throw RejectedInput("evaluation point has the wrong dimension");
    if (t_.empty()) return 0.0;
    const int d = degree();
    std::vector<std::vector<cd>> pw(n_, std::vector<cd>(d + 1, 1.0));
    for (int i = 0; i < n_; ++i)
        for (int k = 1; k <= d; ++k) pw[i][k] = pw[i][k - 1] * z(i);
    cd acc = 0.0;
    for (const auto& [k, c] : t_) {
        cd m = c;
        for (int i = 0; i < n_; ++i) {
            const int e = static_cast<int>((k >> var_shift(i)) & kMask);
            if (e) m *= pw[i][e];
        }
        acc += m;
    }
    return acc;
}

SparsePolynomial SparsePolynomial::homogeneous_part(int k) const {
    SparsePolynomial p(n_);
    for (const auto& [key, c] : t_)
        if (key_degree(key) == k) p.t_.emplace_hint(p.t_.end(), key, c);
    return p;
}

SparsePolynomial SparsePolynomial::truncated(int max_degree) const {
    SparsePolynomial p(n_);
    for (const auto& [key, c] : t_) {
        if (key_degree(key) > max_degree) break;
        p.t_.emplace_hint(p.t_.end(), key, c);
    }
    return p;
}

SparsePolynomial SparsePolynomial::pruned(double tol) const {
    double mx = 0.0;
    for (const auto& kv : t_) mx = std::max(mx, std::abs(kv.second));
    SparsePolynomial p(n_);
    for (const auto& [key, c] : t_)
        if (std::abs(c) > tol * mx) p.t_.emplace_hint(p.t_.end(), key, c);
    return p;
}

SparsePolynomial& SparsePolynomial::operator+=(const SparsePolynomial& o) {
    check_same(*this, o);
    for (const auto& [k, c] : o.t_) add_term(k, c);
    return *this;
}

SparsePolynomial& SparsePolynomial::operator-=(const SparsePolynomial& o) {
    check_same(*this, o);
    for (const auto& [k, c] : o.t_) add_term(k, -c);
    return *this;
}

SparsePolynomial& SparsePolynomial::operator*=(cd c) {
    if (c == cd(0.0)) {
        t_.clear();
        return *this;
    }
    for (auto& kv : t_) kv.second *= c;
    return *this;
}

SparsePolynomial operator+(SparsePolynomial a, const SparsePolynomial& b) { return a += b; }
SparsePolynomial operator-(SparsePolynomial a, const SparsePolynomial& b) { return a -= b; }
SparsePolynomial operator*(cd c, SparsePolynomial a) { return a *= c; }
SparsePolynomial operator*(const SparsePolynomial& a, const SparsePolynomial& b) { return multiply(a, b); }

SparsePolynomial multiply(const SparsePolynomial& a, const SparsePolynomial& b, int max_degree) {
    check_same(a, b);
    max_degree = std::min(max_degree, kMaxDegree);
    SparsePolynomial out(a.nvars());
    std::map<MonoKey, cd> acc;
    for (const auto& [ka, ca] : a.terms()) {
        const int da = key_degree(ka);
        if (da > max_degree) break;
        for (const auto& [kb, cb] : b.terms()) {
            if (da + key_degree(kb) > max_degree) break;
            acc[ka + kb] += ca * cb;
        }
    }
    for (const auto& [k, c] : acc) out.add_term(k, c);
    return out;
}

SparsePolynomial power(const SparsePolynomial& p, int k, int max_degree) {
    if (k < 0) throw RejectedInput("negative polynomial power");
    SparsePolynomial out = SparsePolynomial::constant(p.nvars(), 1.0);
    SparsePolynomial base = p.truncated(max_degree);
    while (k > 0) {
        if (k & 1) out = multiply(out, base, max_degree);
        k >>= 1;
        if (k) base = multiply(base, base, max_degree);
    }
    return out;
}

SparsePolynomial compose_affine(const SparsePolynomial& p, const CMat& L, const CVec& c, int max_degree) {
    const int n = p.nvars();
    if (L.cols() != L.rows() || L.rows() != n || (c.size() != 0 && c.size() != n))
        throw RejectedInput("substitution has the wrong shape");
    const bool shifted = c.size() != 0 && c.norm() > 0.0;
    // Shifted substitutions raise degree-d terms into lower degrees, so keep all
    // of p; unshifted ones preserve degree.
    const int d = p.degree();
    const int cap = shifted ? kMaxDegree : max_degree;
    std::vector<std::vector<SparsePolynomial>> pw(n);
    for (int i = 0; i < n; ++i) {
        SparsePolynomial li = SparsePolynomial::linear(L.row(i).transpose());
        if (shifted) li += SparsePolynomial::constant(n, c(i));
        pw[i].push_back(SparsePolynomial::constant(n, 1.0));
        for (int k = 1; k <= std::max(d, 0); ++k) pw[i].push_back(multiply(pw[i].back(), li, cap));
    }
    SparsePolynomial out(n);
    for (const auto& [key, coef] : p.terms()) {
        if (!shifted && key_degree(key) > max_degree) break;
        SparsePolynomial m = SparsePolynomial::constant(n, coef);
        const std::vector<int> a = key_exponents(key, n);
        for (int i = 0; i < n; ++i)
            if (a[i]) m = multiply(m, pw[i][a[i]], cap);
        out += m;
    }
    return shifted ? out.truncated(max_degree) : out;
}

SparsePolynomial compose_linear(const SparsePolynomial& p, const CMat& L, int max_degree) {
    return compose_affine(p, L, CVec(0), max_degree);
}

SparsePolynomial dilate(const SparsePolynomial& p, cd R) {
    SparsePolynomial out(p.nvars());
    for (const auto& [k, c] : p.terms()) out.add_term(k, c * std::pow(R, key_degree(k)));
    return out;
}

SparsePolynomial derivative(const SparsePolynomial& p, int i) {
    if (i < 0 || i >= p.nvars()) throw RejectedInput("variable index out of range");
    SparsePolynomial out(p.nvars());
    const MonoKey vk = var_key(i);
    for (const auto& [k, c] : p.terms()) {
        const int e = static_cast<int>((k >> var_shift(i)) & kMask);
        if (e) out.add_term(k - vk, c * double(e));
    }
    return out;
}

SparsePolynomial exp_series(const SparsePolynomial& p, int max_degree) {
    const auto& t = p.terms();
    if (!t.empty() && t.begin()->first == 0) throw RejectedInput("exp_series needs a zero constant term");
    SparsePolynomial out = SparsePolynomial::constant(p.nvars(), 1.0);
    SparsePolynomial term = out;
    for (int k = 1; k <= max_degree; ++k) {
        term = multiply(term, p, max_degree);
        if (term.is_zero()) break;
        term *= 1.0 / k;
        out += term;
    }
    return out;
}

cd fischer_inner(const SparsePolynomial& p, const SparsePolynomial& q) {
    check_same(p, q);
    cd acc = 0.0;
    auto ia = p.terms().begin(), ib = q.terms().begin();
    while (ia != p.terms().end() && ib != q.terms().end()) {
        if (ia->first < ib->first) {
            ++ia;
        } else if (ib->first < ia->first) {
            ++ib;
        } else {
            acc += key_factorial(ia->first, p.nvars()) * ia->second * std::conj(ib->second);
            ++ia;
            ++ib;
        }
    }
    return acc;
}

double fischer_norm(const SparsePolynomial& p) { return std::sqrt(std::max(0.0, fischer_inner(p, p).real())); }

std::vector<MonoKey> homogeneous_monomials(int nvars, int k) {
    check_vars(nvars);
    std::vector<MonoKey> out;
    if (nvars == 0) {
        if (k == 0) out.push_back(0);
        return out;
    }
    std::vector<int> cur(nvars, 0);
    enumerate(nvars, 0, k, cur, out);
    std::sort(out.begin(), out.end());
    return out;
}

int homogeneous_dim(int nvars, int k) {
    // C(n + k - 1, k)
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * (nvars - 1 + i) / i;
    return static_cast<int>(std::lround(c));
}

CVec to_fischer_vector(const SparsePolynomial& p, const std::vector<MonoKey>& monos) {
    CVec v = CVec::Zero(monos.size());
    for (const auto& [k, c] : p.terms()) {
        auto it = std::lower_bound(monos.begin(), monos.end(), k);
        if (it == monos.end() || *it != k) continue;
        v(it - monos.begin()) = c * std::sqrt(key_factorial(k, p.nvars()));
    }
    return v;
}

SparsePolynomial from_fischer_vector(const CVec& v, const std::vector<MonoKey>& monos, int nvars) {
    SparsePolynomial p(nvars);
    for (size_t i = 0; i < monos.size(); ++i)
        p.add_term(monos[i], v(i) / std::sqrt(key_factorial(monos[i], nvars)));
    return p;
}

}  // namespace symdom
