#pragma once

// Generalized Pochhammer symbols, vanishing orders and the Wallach set.

#include <vector>

#include "symdom/eja.hpp"

namespace symdom {

struct StructureConstants {
    int r;
    int a;
    int m;
    int n;
    double g;
};

StructureConstants constants_of(const AlgebraDescriptor& d);

using Signature = std::vector<int>;

bool is_signature(const Signature& s);
int total_degree(const Signature& s);

// prod_j prod_{i < s_j} (lambda - a(j-1)/2 + i)
cd pochhammer(cd lambda, const Signature& s, const StructureConstants& c);
double pochhammer(double lambda, const Signature& s, const StructureConstants& c);

// #{j : a(j-1)/2 - lambda in {0, ..., s_j - 1}}, the order of vanishing at lambda.
int q_order(const Signature& s, double lambda, const StructureConstants& c);
// Supremum of q_order over all signatures.
int q_max(double lambda, const StructureConstants& c);

struct Rational {
    long long num;
    long long den;  // > 0
};

bool wallach_contains(double lambda, const StructureConstants& c);
bool wallach_contains(Rational lambda, const StructureConstants& c);
// lambda in m/r - 1 - N.
bool on_residual_lattice(double lambda, const StructureConstants& c);

// Product of the absolute values of the non-vanishing factors; requires
// q_order(s, lambda) == q_max(lambda).
double residue_pochhammer(double lambda, const Signature& s, const StructureConstants& c);

// Non-increasing non-negative r-vectors with total degree <= bound, lexicographic.
std::vector<Signature> enumerate_signatures(int r, int max_total_degree);

}  // namespace symdom
