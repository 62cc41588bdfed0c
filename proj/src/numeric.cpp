#include "sodehelm/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace sodehelm {

Trajectory integrate_geodesic(int n, const SodeRhs& accel, const Point& start, double h,
                              int steps) {
    if (h <= 0.0) throw std::invalid_argument("integrate_geodesic: step must be positive");
    if (static_cast<int>(start.x.size()) != n || static_cast<int>(start.y.size()) != n)
        throw std::invalid_argument("integrate_geodesic: start point dimension mismatch");

    Trajectory traj;
    traj.step = h;
    traj.samples.reserve(steps + 1);

    std::vector<double> x = start.x, y = start.y;
    std::vector<double> kx1(n), kx2(n), kx3(n), kx4(n);
    std::vector<double> ky1(n), ky2(n), ky3(n), ky4(n);
    std::vector<double> xt(n), yt(n);
    double t = start.t;
    traj.samples.push_back({t, x, y});

    for (int s = 0; s < steps; ++s) {
        bool ok = true;
        try {
            kx1 = y;
            accel(t, x, y, ky1);
            for (int i = 0; i < n; ++i) {
                xt[i] = x[i] + 0.5 * h * kx1[i];
                yt[i] = y[i] + 0.5 * h * ky1[i];
            }
            kx2 = yt;
            accel(t + 0.5 * h, xt, yt, ky2);
            for (int i = 0; i < n; ++i) {
                xt[i] = x[i] + 0.5 * h * kx2[i];
                yt[i] = y[i] + 0.5 * h * ky2[i];
            }
            kx3 = yt;
            accel(t + 0.5 * h, xt, yt, ky3);
            for (int i = 0; i < n; ++i) {
                xt[i] = x[i] + h * kx3[i];
                yt[i] = y[i] + h * ky3[i];
            }
            kx4 = yt;
            accel(t + h, xt, yt, ky4);
        } catch (const EvalError&) {
            ok = false;
        }
        if (ok) {
            for (int i = 0; i < n; ++i) {
                x[i] += h / 6.0 * (kx1[i] + 2 * kx2[i] + 2 * kx3[i] + kx4[i]);
                y[i] += h / 6.0 * (ky1[i] + 2 * ky2[i] + 2 * ky3[i] + ky4[i]);
                if (!std::isfinite(x[i]) || !std::isfinite(y[i])) ok = false;
            }
        }
        if (!ok) {
            traj.domain_error = true;
            traj.truncated_at_step = s;
            break;
        }
        t = start.t + (s + 1) * h;
        traj.samples.push_back({t, x, y});
    }

    for (std::size_t k = 0; k + 1 < traj.samples.size(); ++k) {
        const auto& a = traj.samples[k];
        const auto& b = traj.samples[k + 1];
        for (int i = 0; i < n; ++i) {
            double r = (b.x[i] - a.x[i]) / h - 0.5 * (a.y[i] + b.y[i]);
            traj.consistency_residual = std::max(traj.consistency_residual, std::abs(r));
        }
    }
    return traj;
}

Trajectory integrate_geodesic(const Semispray& S, const Point& start, double h, int steps) {
    SodeRhs accel = [&S](double t, const std::vector<double>& x, const std::vector<double>& y,
                         std::vector<double>& ydot) {
        Point p{t, x, y};
        ydot.resize(S.n);
        for (int i = 0; i < S.n; ++i) ydot[i] = -2.0 * eval(S.coefficient[i], p);
    };
    return integrate_geodesic(S.n, accel, start, h, steps);
}

double euler_lagrange_residual(const Expr& lagrangian, int n, const Trajectory& traj) {
    if (traj.samples.size() < 3) return 0.0;
    std::vector<Expr> momentum(n), force(n);
    for (int i = 0; i < n; ++i) {
        momentum[i] = diff(lagrangian, VarId::y(i + 1));
        force[i] = diff(lagrangian, VarId::x(i + 1));
    }
    auto at = [&](const TrajectorySample& s) { return Point{s.t, s.x, s.y}; };
    double h = traj.step;
    double residual = 0.0;
    for (std::size_t k = 1; k + 1 < traj.samples.size(); ++k) {
        Point prev = at(traj.samples[k - 1]);
        Point here = at(traj.samples[k]);
        Point next = at(traj.samples[k + 1]);
        for (int i = 0; i < n; ++i) {
            double dp = (eval(momentum[i], next) - eval(momentum[i], prev)) / (2 * h);
            double r = dp - eval(force[i], here);
            residual = std::max(residual, std::abs(r));
        }
    }
    return residual;
}

FdCheckReport fd_check(const Expr& e, int dimension, const SamplePlan& plan, double fd_step) {
    FdCheckReport rep;
    std::vector<VarId> vars = {VarId::t()};
    for (int i = 1; i <= dimension; ++i) vars.push_back(VarId::x(i));
    for (int i = 1; i <= dimension; ++i) vars.push_back(VarId::y(i));

    std::vector<Expr> grads;
    grads.reserve(vars.size());
    for (VarId v : vars) grads.push_back(diff(e, v));

    auto nudge = [](Point p, VarId v, double d) {
        switch (v.kind) {
            case VarKind::T: p.t += d; break;
            case VarKind::X: p.x[v.index - 1] += d; break;
            case VarKind::Y: p.y[v.index - 1] += d; break;
        }
        return p;
    };

    // extra draws cover resampling after domain errors
    auto pool = sample_points(plan.seed, plan.count * 2, plan.box_lo, plan.box_hi, dimension);
    for (const auto& p : pool) {
        if (rep.points_used >= plan.count) break;
        try {
            for (std::size_t k = 0; k < vars.size(); ++k) {
                double exact = eval(grads[k], p);
                double fd = (eval(e, nudge(p, vars[k], fd_step)) -
                             eval(e, nudge(p, vars[k], -fd_step))) /
                            (2 * fd_step);
                double err = std::abs(fd - exact) / std::max(1.0, std::abs(exact));
                rep.max_rel_error = std::max(rep.max_rel_error, err);
            }
        } catch (const EvalError&) {
            ++rep.resamples;
            continue;
        }
        ++rep.points_used;
    }
    return rep;
}

int numeric_rank(std::vector<std::vector<double>> m, double threshold) {
    if (m.empty()) return 0;
    int rows = static_cast<int>(m.size());
    int cols = static_cast<int>(m[0].size());
    double scale = 1.0;
    for (const auto& row : m)
        for (double v : row) scale = std::max(scale, std::abs(v));
    const double cutoff = threshold * scale;
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        double best = cutoff;
        for (int r = rank; r < rows; ++r)
            if (std::abs(m[r][col]) > best) {
                best = std::abs(m[r][col]);
                pivot = r;
            }
        if (pivot < 0) continue;
        std::swap(m[rank], m[pivot]);
        for (int r = rank + 1; r < rows; ++r) {
            double f = m[r][col] / m[rank][col];
            for (int c = col; c < cols; ++c) m[r][c] -= f * m[rank][c];
        }
        ++rank;
    }
    return rank;
}

std::string format_trajectory(const Trajectory& traj) {
    std::string out;
    out += "# method: " + traj.method + "\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", traj.step);
    out += "# step: " + std::string(buf) + "\n";
    out += "# status: ";
    if (traj.domain_error)
        out += "domain_error truncated_at_step=" + std::to_string(traj.truncated_at_step) + "\n";
    else
        out += "ok\n";
    for (const auto& s : traj.samples) {
        std::snprintf(buf, sizeof buf, "%.17g", s.t);
        out += buf;
        for (double v : s.x) {
            std::snprintf(buf, sizeof buf, "\t%.17g", v);
            out += buf;
        }
        for (double v : s.y) {
            std::snprintf(buf, sizeof buf, "\t%.17g", v);
            out += buf;
        }
        out += "\n";
    }
    return out;
}

}  // namespace sodehelm
