#pragma once

#include "sodehelm/expr.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sodehelm {

// A time-dependent second-order system x''^i + 2 G^i(t, x, x') = 0, encoded by
// its coefficient functions G^1..G^n.
struct Semispray {
    int n = 0;
    std::vector<Expr> coefficient;  // G^i, i = 1..n
};

Semispray make_semispray(int n, const std::vector<std::string>& coefficient_texts);

// Nonlinear connection induced by a semispray:
//   N^i_j = dG^i/dy^j,  N^i_0 = 2 G^i - N^i_j y^j.
struct Connection {
    std::vector<std::vector<Expr>> spatial;  // N^i_j
    std::vector<Expr> time;                  // N^i_0
};

Connection connection(const Semispray& S);

// Action of the semispray vector field as a derivation:
//   S(e) = de/dt + y^j de/dx^j - 2 G^j de/dy^j.
Expr s_derivative(const Semispray& S, const Expr& e);

// Adapted horizontal derivative  de/dx^i - N^j_i de/dy^j  (1-based i).
Expr delta_derivative(const Semispray& S, const Expr& e, int i);
Expr delta_derivative(const Connection& N, const Expr& e, int i);

// Jacobi endomorphism components
//   R^i_j = 2 dG^i/dx^j - dG^i/dy^k dG^k/dy^j - S(dG^i/dy^j).
std::vector<std::vector<Expr>> jacobi(const Semispray& S);

// Curvature of the nonlinear connection: R^i_jk = delta N^i_j / delta x^k -
// delta N^i_k / delta x^j (antisymmetric in j,k) together with the Jacobi
// endomorphism R^i_j.
struct Curvature {
    std::vector<std::vector<std::vector<Expr>>> r3;  // R^i_jk
    std::vector<std::vector<Expr>> phi;              // R^i_j
};

Curvature curvature(const Semispray& S);

struct ClassificationReport {
    bool is_flat = false;
    bool is_isotropic = false;
    bool inconclusive = false;
    std::optional<Expr> lambda;               // isotropy factor, trace(Phi)/n
    std::optional<std::vector<Expr>> alpha;   // witness alpha_0, alpha_1..alpha_n
    std::vector<std::string> notes;
};

// Flat:  all Phi^i_j == 0.  Isotropic:  Phi == lambda * Id entrywise with
// lambda = trace(Phi)/n; on success emits the witness alpha = (1/3) d_J lambda
// + lambda dt and cross-checks R^k_ij == alpha_i delta^k_j - alpha_j delta^k_i.
ClassificationReport classify(const Semispray& S, const ZeroTestConfig& cfg);

struct IdentityCheck {
    std::string name;
    bool passed = false;
    double max_residual = 0.0;
};

// Structure identities of the induced geometry. J^2 = 0, h^2 = h, Gamma^2 =
// Id and F^3 + F = 0 are exact integer identities on the adapted-frame action
// matrices; [J,h] = 0, N_J = -J^dt and Phi = i_S R run through the numeric
// Frolicher-Nijenhuis bracket oracle at seeded sample points.
std::vector<IdentityCheck> structure_identities(const Semispray& S, const ZeroTestConfig& cfg);

}  // namespace sodehelm
