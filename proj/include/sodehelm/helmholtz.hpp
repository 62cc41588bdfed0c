#pragma once

#include "sodehelm/forms.hpp"
#include "sodehelm/geometry.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sodehelm {

enum class Verdict { LagrangianConfirmed, FormallyIntegrableClass, ObstructionFails, Inconclusive };

const char* to_string(Verdict v);

struct HelmholtzReport {
    bool dJ_zero = false;
    bool dh_zero = false;
    bool dR_zero = false;
    int rank_dtheta = 0;
    bool regular = false;  // rank == 2n at every sample point
    Verdict verdict = Verdict::Inconclusive;
    std::vector<std::string> details;
};

// P = (d_J, d_h) applied to a candidate semi-basic 1-form.
std::pair<SemiBasicTwoForm, SemiBasicTwoForm> apply_P(const SemiBasicOneForm& theta,
                                                      const Semispray& S);

// True iff every component of both halves of P theta passes the zero test.
ZeroVerdict is_first_order_solution(const SemiBasicOneForm& theta, const Semispray& S,
                                    const ZeroTestConfig& cfg);

// The obstruction form d_R theta together with its vanishing verdict.
std::pair<SemiBasicThreeForm, ZeroVerdict> obstruction(const SemiBasicOneForm& theta,
                                                       const Semispray& S,
                                                       const ZeroTestConfig& cfg);

struct ClassicalConditionsReport {
    ZeroVerdict symmetry = ZeroVerdict::Inconclusive;          // a_ij = a_ji
    ZeroVerdict phi_compatibility = ZeroVerdict::Inconclusive; // a_jk R^k_i = a_ik R^k_j
    ZeroVerdict bianchi = ZeroVerdict::Inconclusive;           // cyclic a_il R^l_jk sum

    bool all_passed() const {
        return symmetry == ZeroVerdict::IsZero && phi_compatibility == ZeroVerdict::IsZero &&
               bianchi == ZeroVerdict::IsZero;
    }
};

// Classical multiplier conditions for a candidate multiplier matrix a_ij:
// symmetry, the Helmholtz Phi-compatibility condition and the algebraic
// Bianchi-type condition against the curvature of S.
ClassicalConditionsReport classical_conditions(const MultiplierMatrix& a, const Semispray& S,
                                               const ZeroTestConfig& cfg);

class SingularMetricError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The unique semispray whose geodesics solve the Euler-Lagrange equations:
//   2 G^i = g^{ij} (d^2L/dt dy^j + y^k d^2L/dx^k dy^j - dL/dx^j).
// Symbolic inversion of g via the adjugate, limited to n <= 3; the metric
// must pass a nonzero-determinant sampling test. For larger n use
// lagrangian_geodesic_rhs, which solves the same linear system numerically
// per evaluation point.
Semispray semispray_from_lagrangian(const Expr& lagrangian, int n, const ZeroTestConfig& cfg);

// Numeric mode: the acceleration field y' = -2G(t,x,y) of the Euler-Lagrange
// semispray, for any dimension, usable with integrate_geodesic. Throws
// EvalError at points where the metric is numerically singular.
std::function<void(double, const std::vector<double>&, const std::vector<double>&,
                   std::vector<double>&)>
lagrangian_geodesic_rhs(const Expr& lagrangian, int n);

struct RankReport {
    int min_rank = 0;
    int max_rank = 0;   // the reported rank of dtheta
    int points_used = 0;  // 0 means every sample point failed to evaluate
};

// Numeric rank of the full (2n+1)x(2n+1) matrix of dtheta in the adapted
// coframe over the sample set (pivot threshold 1e-8).
RankReport rank_dtheta(const SemiBasicOneForm& theta, const Semispray& S,
                       const ZeroTestConfig& cfg);

// Full Helmholtz check of a Lagrangian against a semispray: d_J theta_L = 0,
// d_h theta_L = 0, i_S dtheta_L = 0, the obstruction, and rank(dtheta_L) = 2n.
HelmholtzReport verify_lagrangian(const Expr& lagrangian, const Semispray& S,
                                  const ZeroTestConfig& cfg);

// With a candidate theta: the whole pipeline (P, obstruction, rank), and on
// success the reconstruction L = i_S theta confirmed via verify_lagrangian.
// Without theta: class-based decision (flat, isotropic, or n = 1 semisprays
// are Lagrangian with no further data; anything else is Inconclusive).
HelmholtzReport variationality_verdict(const Semispray& S,
                                       const std::optional<SemiBasicOneForm>& theta,
                                       const ZeroTestConfig& cfg);

}  // namespace sodehelm
