#pragma once

#include "sodehelm/expr.hpp"
#include "sodehelm/geometry.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace sodehelm {

struct TrajectorySample {
    double t = 0.0;
    std::vector<double> x;
    std::vector<double> y;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    double step = 0.0;
    std::string method = "rk4";
    bool domain_error = false;  // integration aborted early; samples truncated
    int truncated_at_step = -1;
    // max_k |(x_{k+1}-x_k)/h - (y_k+y_{k+1})/2|, an O(h^2) consistency probe
    double consistency_residual = 0.0;
};

// Acceleration callback: fills ydot = -2 G(t, x, y).
using SodeRhs =
    std::function<void(double t, const std::vector<double>& x, const std::vector<double>& y,
                       std::vector<double>& ydot)>;

// Classical fixed-step RK4 on x' = y, y' = -2G(t,x,y).
Trajectory integrate_geodesic(int n, const SodeRhs& accel, const Point& start, double h, int steps);
Trajectory integrate_geodesic(const Semispray& S, const Point& start, double h, int steps);

// Max |d/dt(dL/dy^i) - dL/dx^i| along the trajectory, the time derivative
// taken by central differences on the sampled path (interior samples only).
double euler_lagrange_residual(const Expr& lagrangian, int n, const Trajectory& traj);

struct SamplePlan {
    std::uint64_t seed = 1;
    int count = 40;
    double box_lo = 0.1;
    double box_hi = 1.1;
};

struct FdCheckReport {
    double max_rel_error = 0.0;
    int points_used = 0;
    int resamples = 0;
};

// Compares diff() against central finite differences (default step 1e-6) at
// seeded points, over every variable. Error is |fd - exact| / max(1, |exact|).
// Points with evaluation domain errors are replaced from the same stream.
FdCheckReport fd_check(const Expr& e, int dimension, const SamplePlan& plan, double fd_step = 1e-6);

// Trajectory export: header lines start with '#'; one sample per line,
// tab-separated t, x^1..x^n, y^1..y^n with 17 significant digits.
std::string format_trajectory(const Trajectory& traj);

// Numeric rank by Gaussian elimination with partial pivoting; pivots below
// threshold * max(1, largest entry) count as zero.
int numeric_rank(std::vector<std::vector<double>> m, double threshold = 1e-8);

}  // namespace sodehelm
