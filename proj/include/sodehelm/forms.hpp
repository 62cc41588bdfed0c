#pragma once

#include "sodehelm/expr.hpp"
#include "sodehelm/geometry.hpp"

#include <vector>

namespace sodehelm {

// Semi-basic 1-form theta = theta_0 dt + theta_i dx^i in the adapted coframe.
// No dy-components are representable, so semi-basicity holds by construction.
struct SemiBasicOneForm {
    Expr theta0;
    std::vector<Expr> theta;  // theta_1..theta_n

    int n() const { return static_cast<int>(theta.size()); }
};

// Storage convention for antisymmetric components, used throughout: the
// arrays hold the full coefficients on the strictly increasing ordered basis
// (all displayed 1/2 and 1/3! factors absorbed), kept antisymmetric in their
// spatial indices. A 2-form is sum_i c_time[i] dt^dx^i +
// sum_{a<b} c_space[a][b] dx^a^dx^b, and similarly in degree 3.
struct SemiBasicTwoForm {
    std::vector<Expr> c_time;                // n entries
    std::vector<std::vector<Expr>> c_space;  // n x n, antisymmetric

    int n() const { return static_cast<int>(c_time.size()); }
};

struct SemiBasicThreeForm {
    std::vector<std::vector<Expr>> c_time;                // dt^dx^a^dx^b, antisymmetric
    std::vector<std::vector<std::vector<Expr>>> c_space;  // dx^a^dx^b^dx^c, totally antisymmetric

    int n() const { return static_cast<int>(c_time.size()); }
    std::vector<Expr> components() const;  // independent ordered components
};

std::vector<Expr> components(const SemiBasicTwoForm& w);

// d_J theta:  c_time_i = theta_i - dtheta_0/dy^i,
//             c_space_ab = dtheta_b/dy^a - dtheta_a/dy^b.
SemiBasicTwoForm d_J(const SemiBasicOneForm& theta, const Semispray& S);

// d_h theta:  c_time_i = S(theta_i) - theta_j N^j_i - delta theta_0/delta x^i,
//             c_space_ab = delta theta_b/delta x^a - delta theta_a/delta x^b.
// The time coefficient uses S(theta_i): the coframe {dt, dx^i, dy^i} is dual
// to {S, delta/delta x^i, d/dy^i}, so the dt-slot derivative is along S.
SemiBasicTwoForm d_h(const SemiBasicOneForm& theta, const Semispray& S);

// d_Phi theta with a_ij = dtheta_i/dy^j:
//   c_time_i = R^j_i (theta_j - dtheta_0/dy^j),
//   c_space_ab = a_ak R^k_b - a_bk R^k_a.
SemiBasicTwoForm d_phi(const SemiBasicOneForm& theta, const Semispray& S);

// d_R theta (the obstruction form), valid on first-order solution candidates:
//   c_time_ab  = a_bk R^k_a - a_ak R^k_b,
//   c_space_abc = a_al R^l_bc + a_bl R^l_ca + a_cl R^l_ab.
// For n = 1 both families are empty; for n = 2 the space family is empty and
// the time family is the negated space family of d_Phi theta.
SemiBasicThreeForm d_R(const SemiBasicOneForm& theta, const Semispray& S);

// Poincare-Cartan form of a Lagrangian: theta_0 = L, theta_i = dL/dy^i.
SemiBasicOneForm poincare_cartan(const Expr& lagrangian, int n);

// Multiplier matrix of a candidate solution: a_ij = dtheta_i / dy^j.
using MultiplierMatrix = std::vector<std::vector<Expr>>;
MultiplierMatrix multiplier_matrix(const SemiBasicOneForm& theta);

enum class Regularity { Regular, Singular, Inconclusive };

struct MetricReport {
    std::vector<std::vector<Expr>> g;  // g_ij = d^2 L / dy^i dy^j
    Regularity verdict = Regularity::Inconclusive;
    int min_rank = 0;
    int max_rank = 0;
};

// Hessian metric of a Lagrangian plus a sampled regularity verdict: regular
// iff the numeric rank (pivot threshold 1e-8) equals n at every sample point.
MetricReport metric_tensor(const Expr& lagrangian, int n, const ZeroTestConfig& cfg);

// i_S theta = theta_0 (the dx^i all annihilate S).
Expr contract_S(const SemiBasicOneForm& theta);

enum class ReconstructionStatus { Holds, Fails, PreconditionViolated, Inconclusive };

// If d_J theta = 0 then theta = (i_S theta) dt + d_J(i_S theta); concretely
// theta_i = dtheta_0/dy^i componentwise. The precondition is checked first
// and its violation reported distinctly.
ReconstructionStatus reconstruction_identity(const SemiBasicOneForm& theta, const Semispray& S,
                                             const ZeroTestConfig& cfg);

// The full 2-form dtheta as a (2n+1)x(2n+1) antisymmetric matrix of
// coefficients in the adapted coframe, ordered (dt, dx^1..dx^n, dy^1..dy^n).
std::vector<std::vector<Expr>> dtheta_matrix(const SemiBasicOneForm& theta, const Semispray& S);

}  // namespace sodehelm
