#pragma once

#include "sodehelm/expr.hpp"
#include "sodehelm/forms.hpp"
#include "sodehelm/geometry.hpp"

#include <vector>

namespace sodehelm {

// Finite-difference oracles. Everything here evaluates honest exterior
// calculus in natural coordinates (t, x^i, y^i) and reports components in the
// adapted frame, independently of the closed-form coordinate expressions it
// is used to cross-check. Differentiation of fields is done by central
// differences; the only symbolic ingredient is plain expression evaluation.

struct BracketOracleReport {
    // 1/2 [h,h] on adapted pairs, vertical components: positions mirror the
    // symbolic curvature (hh_time ~ R^i_j, hh_space ~ R^i_jk).
    std::vector<std::vector<double>> hh_time;               // [i][j]
    std::vector<std::vector<std::vector<double>>> hh_space; // [i][j][k]
    double hh_nonvertical = 0.0;       // largest horizontal leak (should be ~0)
    double hh_max_deviation = 0.0;     // vs symbolic curvature at the point
    double jphi_max_deviation = 0.0;   // |[J,Phi] - (3R + Phi^dt)| over all pairs
    double jh_max_abs = 0.0;           // |[J,h]| over all pairs
    double nj_max_deviation = 0.0;     // |N_J + J^dt| over all pairs
};

BracketOracleReport fn_bracket_oracle(const Semispray& S, const Point& p, double fd_step = 1e-5);

struct TwoFormValues {
    std::vector<double> c_time;                // dt ^ dx^i slots
    std::vector<std::vector<double>> c_space;  // dx^a ^ dx^b slots (antisymmetric)
};

struct ThreeFormValues {
    std::vector<std::vector<double>> c_time;                // dt ^ dx^a ^ dx^b
    std::vector<std::vector<std::vector<double>>> c_space;  // dx^a ^ dx^b ^ dx^c
};

// d_J theta and d_h theta from the projector contractions
//   d_J theta (X,Y) = dtheta(JX, Y) + dtheta(X, JY)
//   d_h theta (X,Y) = dtheta(hX, Y) + dtheta(X, hY) - dtheta(X, Y)
// with dtheta computed by finite differences of theta's natural components.
TwoFormValues contraction_oracle_dJ(const SemiBasicOneForm& theta, const Semispray& S,
                                    const Point& p, double fd_step = 1e-5);
TwoFormValues contraction_oracle_dh(const SemiBasicOneForm& theta, const Semispray& S,
                                    const Point& p, double fd_step = 1e-5);

// d_R theta = i_R dtheta - d(theta o R); the algebraic part theta o R vanishes
// identically for semi-basic theta (R is vertical-valued), so this evaluates
// the alternated contraction of the finite-difference dtheta with R.
ThreeFormValues d_R_oracle(const SemiBasicOneForm& theta, const Semispray& S, const Point& p,
                           double fd_step = 1e-5);

// d_J applied to a semi-basic 2-form (i_J of its finite-difference exterior
// derivative), reported on adapted triples. Used to check d_J(d_J theta)
// against (d_J theta)^dt.
ThreeFormValues dJ_twoform_oracle(const SemiBasicTwoForm& w, const Semispray& S, const Point& p,
                                  double fd_step = 1e-5);

// Values of a symbolic semi-basic form on adapted frame arguments at p.
TwoFormValues evaluate_twoform(const SemiBasicTwoForm& w, const Point& p);
ThreeFormValues evaluate_threeform(const SemiBasicThreeForm& w, const Point& p);

// (w ^ dt) evaluated on adapted triples, for a semi-basic 2-form w.
ThreeFormValues wedge_dt_values(const SemiBasicTwoForm& w, const Point& p);

double max_abs_difference(const TwoFormValues& a, const TwoFormValues& b);
double max_abs_difference(const ThreeFormValues& a, const ThreeFormValues& b);

}  // namespace sodehelm
