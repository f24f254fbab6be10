#include "symdom/wallach.hpp"

#include <cmath>
#include <numeric>

namespace symdom {

namespace {

const double kSlack = 1e-12;

bool near_int(double x, long long* k) {
    const double rx = std::round(x);
    if (std::abs(x - rx) > kSlack * std::max(1.0, std::abs(x))) return false;
    *k = static_cast<long long>(rx);
    return true;
}

double shift(const StructureConstants& c, int j) { return 0.5 * c.a * (j - 1); }

void extend(std::vector<Signature>& out, Signature& cur, int pos, int maxpart, int left) {
    if (pos == static_cast<int>(cur.size())) {
        out.push_back(cur);
        return;
    }
    for (int v = 0; v <= std::min(maxpart, left); ++v) {
        cur[pos] = v;
        extend(out, cur, pos + 1, v, left - v);
    }
}

}  // namespace

StructureConstants constants_of(const AlgebraDescriptor& d) {
    return {d.rank, d.peirce_a, d.dim_m, d.siegel_n, d.genus_g};
}

bool is_signature(const Signature& s) {
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] < 0) return false;
        if (i > 0 && s[i] > s[i - 1]) return false;
    }
    return true;
}

int total_degree(const Signature& s) { return std::accumulate(s.begin(), s.end(), 0); }

cd pochhammer(cd lambda, const Signature& s, const StructureConstants& c) {
    cd out = 1.0;
    for (size_t j = 1; j <= s.size(); ++j) {
        for (int i = 0; i < s[j - 1]; ++i) out *= lambda - shift(c, j) + double(i);
    }
    return out;
}

double pochhammer(double lambda, const Signature& s, const StructureConstants& c) {
    double out = 1.0;
    for (size_t j = 1; j <= s.size(); ++j) {
        for (int i = 0; i < s[j - 1]; ++i) out *= lambda - shift(c, j) + double(i);
    }
    return out;
}

int q_order(const Signature& s, double lambda, const StructureConstants& c) {
    int q = 0;
    for (size_t j = 1; j <= s.size(); ++j) {
        long long k;
        if (near_int(shift(c, j) - lambda, &k) && k >= 0 && k < s[j - 1]) ++q;
    }
    return q;
}

int q_max(double lambda, const StructureConstants& c) {
    int q = 0;
    for (int j = 1; j <= c.r; ++j) {
        long long k;
        if (near_int(shift(c, j) - lambda, &k) && k >= 0) ++q;
    }
    return q;
}

bool wallach_contains(double lambda, const StructureConstants& c) {
    const double edge = shift(c, c.r);
    if (lambda > edge + kSlack) return true;
    for (int j = 0; j < c.r; ++j) {
        if (std::abs(lambda - 0.5 * c.a * j) <= kSlack * std::max(1.0, std::abs(lambda))) return true;
    }
    return false;
}

bool wallach_contains(Rational lambda, const StructureConstants& c) {
    if (lambda.den <= 0) throw RejectedInput("rational needs a positive denominator");
    // compare 2 num with a j den exactly
    const long long twice = 2 * lambda.num;
    if (twice > static_cast<long long>(c.a) * (c.r - 1) * lambda.den) return true;
    for (int j = 0; j < c.r; ++j) {
        if (twice == static_cast<long long>(c.a) * j * lambda.den) return true;
    }
    return false;
}

bool on_residual_lattice(double lambda, const StructureConstants& c) {
    long long k;
    return near_int(double(c.m) / c.r - 1.0 - lambda, &k) && k >= 0;
}

double residue_pochhammer(double lambda, const Signature& s, const StructureConstants& c) {
    if (q_order(s, lambda, c) != q_max(lambda, c))
        throw RejectedInput("residue needs q(s, lambda) = q(lambda)");
    double out = 1.0;
    for (size_t j = 1; j <= s.size(); ++j) {
        for (int i = 0; i < s[j - 1]; ++i) {
            const double f = lambda - shift(c, j) + double(i);
            long long k;
            if (near_int(f, &k) && k == 0) continue;
            out *= std::abs(f);
        }
    }
    return out;
}

std::vector<Signature> enumerate_signatures(int r, int max_total_degree) {
    if (r < 1 || max_total_degree < 0) throw RejectedInput("bad signature bounds");
    std::vector<Signature> out;
    Signature cur(r, 0);
    // first part ascending, then remaining parts ascending: lexicographic order
    for (int first = 0; first <= max_total_degree; ++first) {
        cur[0] = first;
        if (r == 1) {
            out.push_back(cur);
            continue;
        }
        extend(out, cur, 1, first, max_total_degree - first);
    }
    return out;
}

}  // namespace symdom
