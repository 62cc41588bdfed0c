#pragma once

#include "sodehelm/rational.hpp"

#include <vector>

namespace sodehelm::spencer {

// Dense exact-rational matrix; fiber dimensions here stay in the hundreds.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rational& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    const Rational& at(int r, int c) const {
        return data_[static_cast<std::size_t>(r) * cols_ + c];
    }

    void append_row(const std::vector<Rational>& row);
    int rank() const;  // exact Gaussian elimination over the rationals
    bool is_zero() const;
    // every entry in {0, +-1, +-1/2}
    bool entries_in_symbol_set() const;

    static RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b);

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Rational> data_;
};

int kernel_dim(const RationalMatrix& m);

// Fiber coordinates for T* (x) T_v* at a point: the frame index mu runs over
// 0..2n with 0 = S, 1..n = delta_i, n+1..2n = d/dy^i; the semi-basic index
// beta runs over 0..n. Plain (delta x) labels sort before vertical (delta y)
// ones, lexicographically within each block.
struct Fiber1Basis {
    int n;

    int dimension() const { return (2 * n + 1) * (n + 1); }
    int index(int mu, int beta) const { return mu * (n + 1) + beta; }
};

// Fiber coordinates for S^2 T* (x) T_v*: unordered frame pairs {mu, nu} in
// lexicographic order, then the semi-basic index.
struct Fiber2Basis {
    int n;

    int pair_count() const { return (2 * n + 1) * (2 * n + 2) / 2; }
    int dimension() const { return pair_count() * (n + 1); }
    int pair_index(int mu, int nu) const;
    int index(int mu, int nu, int beta) const { return pair_index(mu, nu) * (n + 1) + beta; }
};

// Index layout of Lambda^2 T_v*: dt^dx^i slots (i = 1..n) first, then
// dx^a^dx^b with a < b. Dimension n(n+1)/2.
int lambda2_dim(int n);
int lambda2_time_index(int n, int i);          // 1-based i
int lambda2_space_index(int n, int a, int b);  // 1-based a < b

// Symbol of P = (d_J, d_h): T* (x) T_v* -> Lambda^2 T_v* (+) Lambda^2 T_v*.
RationalMatrix sigma1(int n);

// Prolonged symbol: S^2 T* (x) T_v* -> T* (x) (Lambda^2 T_v* (+) Lambda^2 T_v*).
RationalMatrix sigma2(int n);

// Kernel-dimension chain of the quasi-regular basis e_0 = S + h_j + v_n,
// e_1 = h_1, e_i = h_i + v_{i-1}: returns (dim g^1, dim g^1_{e_0}, ...,
// dim g^1_{e_0..e_n}), of length n+2. Quasi-regularity: the entries sum to
// dim g^2.
std::vector<int> quasi_regular_chain(int n, int j = 1);

struct CokernelReport {
    long long closed_form = 0;  // (n-1) n (n+1) / 2
    int computed = 0;           // dim codomain(sigma2) - rank(sigma2)
    bool agree = false;
};

CokernelReport cokernel_dim(int n);

struct TauReport {
    RationalMatrix tau;
    bool tau_sigma2_zero = false;  // tau o sigma2 = 0 exactly
    int rank_sigma2 = 0;
    int ker_tau_dim = 0;
    bool middle_exact = false;  // rank sigma2 == dim ker tau
    bool tau_onto = false;      // rank tau == dim codomain (degenerate-true for n = 1)
};

// The alternating map tau = (tau_J o pr1, tau_h o pr2, tau_h o pr1 + tau_J o
// pr2) into three copies of Lambda^3 T_v*, and the exactness checks for the
// symbol sequence at the middle term.
TauReport tau_maps(int n);

long long g1_dim_closed(int n);        // (n+1)^2
long long g2_dim_closed(int n);        // (n+1)^2 (n+2) / 2
long long cokernel_dim_closed(int n);  // (n-1) n (n+1) / 2

}  // namespace sodehelm::spencer
