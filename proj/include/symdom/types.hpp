#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace symdom {

using cd = std::complex<double>;
using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

inline constexpr cd I1{0.0, 1.0};

// Precondition violated by the caller (bad family size, non-idempotent input, ...).
struct RejectedInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Argument outside the region where a function is defined (cone, tube, domain).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct SingularElement : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Unsupported : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Orbit span never reached a rank plateau; carries the last two observed ranks.
struct RankNotStable : std::runtime_error {
    RankNotStable(int prev, int last)
        : std::runtime_error("orbit span rank did not stabilize (last ranks " +
                             std::to_string(prev) + ", " + std::to_string(last) + ")"),
          previous_rank(prev), last_rank(last) {}
    int previous_rank;
    int last_rank;
};

}  // namespace symdom
