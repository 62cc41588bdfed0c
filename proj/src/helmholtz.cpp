#include "sodehelm/helmholtz.hpp"

#include "sodehelm/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace sodehelm {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::LagrangianConfirmed: return "LagrangianConfirmed";
        case Verdict::FormallyIntegrableClass: return "FormallyIntegrableClass";
        case Verdict::ObstructionFails: return "ObstructionFails";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

std::pair<SemiBasicTwoForm, SemiBasicTwoForm> apply_P(const SemiBasicOneForm& theta,
                                                      const Semispray& S) {
    return {d_J(theta, S), d_h(theta, S)};
}

ZeroVerdict is_first_order_solution(const SemiBasicOneForm& theta, const Semispray& S,
                                    const ZeroTestConfig& cfg) {
    auto [dj, dh] = apply_P(theta, S);
    std::vector<Expr> all = components(dj);
    for (auto& e : components(dh)) all.push_back(e);
    return zero_test_all(all, S.n, cfg);
}

std::pair<SemiBasicThreeForm, ZeroVerdict> obstruction(const SemiBasicOneForm& theta,
                                                       const Semispray& S,
                                                       const ZeroTestConfig& cfg) {
    SemiBasicThreeForm w = d_R(theta, S);
    ZeroVerdict v = zero_test_all(w.components(), S.n, cfg);
    return {std::move(w), v};
}

ClassicalConditionsReport classical_conditions(const MultiplierMatrix& a, const Semispray& S,
                                               const ZeroTestConfig& cfg) {
    const int n = S.n;
    Curvature R = curvature(S);
    ClassicalConditionsReport rep;

    std::vector<Expr> sym;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) sym.push_back(a[i][j] - a[j][i]);
    rep.symmetry = zero_test_all(sym, n, cfg);

    std::vector<Expr> compat;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            std::vector<Expr> terms;
            for (int k = 0; k < n; ++k) {
                terms.push_back(a[j][k] * R.phi[k][i]);
                terms.push_back(-(a[i][k] * R.phi[k][j]));
            }
            compat.push_back(Expr::sum(std::move(terms)));
        }
    rep.phi_compatibility = zero_test_all(compat, n, cfg);

    std::vector<Expr> bianchi;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                std::vector<Expr> terms;
                for (int l = 0; l < n; ++l) {
                    terms.push_back(a[i][l] * R.r3[l][j][k]);
                    terms.push_back(a[j][l] * R.r3[l][k][i]);
                    terms.push_back(a[k][l] * R.r3[l][i][j]);
                }
                bianchi.push_back(Expr::sum(std::move(terms)));
            }
    rep.bianchi = zero_test_all(bianchi, n, cfg);
    return rep;
}

namespace {

Expr det_expr(const std::vector<std::vector<Expr>>& g) {
    int n = static_cast<int>(g.size());
    if (n == 1) return g[0][0];
    if (n == 2) return g[0][0] * g[1][1] - g[0][1] * g[1][0];
    // n == 3, cofactor expansion
    Expr d;
    for (int j = 0; j < 3; ++j) {
        int a = (j + 1) % 3, b = (j + 2) % 3;
        Expr minor_ = g[1][a] * g[2][b] - g[1][b] * g[2][a];
        Expr term = g[0][j] * minor_;
        d = j == 0 ? term : d + term;
    }
    return d;
}

// adj(g)[i][j], so that g^{-1} = adj(g) / det(g)
std::vector<std::vector<Expr>> adjugate(const std::vector<std::vector<Expr>>& g) {
    int n = static_cast<int>(g.size());
    std::vector<std::vector<Expr>> adj(n, std::vector<Expr>(n));
    if (n == 1) {
        adj[0][0] = Expr::integer(1);
        return adj;
    }
    if (n == 2) {
        adj[0][0] = g[1][1];
        adj[0][1] = -g[0][1];
        adj[1][0] = -g[1][0];
        adj[1][1] = g[0][0];
        return adj;
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int r1 = (j + 1) % 3, r2 = (j + 2) % 3;
            int c1 = (i + 1) % 3, c2 = (i + 2) % 3;
            adj[i][j] = g[r1][c1] * g[r2][c2] - g[r1][c2] * g[r2][c1];
        }
    return adj;
}

}  // namespace

Semispray semispray_from_lagrangian(const Expr& lagrangian, int n, const ZeroTestConfig& cfg) {
    if (n > 3)
        throw SingularMetricError(
            "dimension too large for symbolic metric inversion (n <= 3); use the numeric path");
    MetricReport metric = metric_tensor(lagrangian, n, cfg);
    Expr det = det_expr(metric.g);
    switch (zero_test(det, n, cfg).verdict) {
        case ZeroVerdict::IsZero:
            throw SingularMetricError("metric tensor is singular (det g = 0)");
        case ZeroVerdict::Inconclusive:
            throw SingularMetricError("metric regularity test inconclusive");
        case ZeroVerdict::NonZero:
            break;
    }

    std::vector<Expr> rhs(n);
    for (int j = 0; j < n; ++j) {
        Expr pj = diff(lagrangian, VarId::y(j + 1));
        std::vector<Expr> terms = {diff(pj, VarId::t())};
        for (int k = 0; k < n; ++k)
            terms.push_back(Expr::variable(VarId::y(k + 1)) * diff(pj, VarId::x(k + 1)));
        terms.push_back(-diff(lagrangian, VarId::x(j + 1)));
        rhs[j] = Expr::sum(std::move(terms));
    }

    auto adj = adjugate(metric.g);
    Expr inv_det = Expr::pow(det, -1);
    Semispray S;
    S.n = n;
    S.coefficient.resize(n);
    for (int i = 0; i < n; ++i) {
        std::vector<Expr> terms;
        for (int j = 0; j < n; ++j)
            terms.push_back(Expr::number(Rational(1, 2)) * inv_det * adj[i][j] * rhs[j]);
        S.coefficient[i] = Expr::sum(std::move(terms));
    }
    return S;
}

std::function<void(double, const std::vector<double>&, const std::vector<double>&,
                   std::vector<double>&)>
lagrangian_geodesic_rhs(const Expr& lagrangian, int n) {
    // symbolic ingredients evaluated pointwise; the metric system
    // g * (2G) = rhs is solved numerically at each point
    auto g = std::make_shared<std::vector<std::vector<Expr>>>(n, std::vector<Expr>(n));
    auto rhs = std::make_shared<std::vector<Expr>>(n);
    for (int j = 0; j < n; ++j) {
        Expr pj = diff(lagrangian, VarId::y(j + 1));
        for (int i = 0; i < n; ++i) (*g)[i][j] = diff(pj, VarId::y(i + 1));
        std::vector<Expr> terms = {diff(pj, VarId::t())};
        for (int k = 0; k < n; ++k)
            terms.push_back(Expr::variable(VarId::y(k + 1)) * diff(pj, VarId::x(k + 1)));
        terms.push_back(-diff(lagrangian, VarId::x(j + 1)));
        (*rhs)[j] = Expr::sum(std::move(terms));
    }
    return [g, rhs, n](double t, const std::vector<double>& x, const std::vector<double>& y,
                       std::vector<double>& ydot) {
        Point p{t, x, y};
        std::vector<std::vector<double>> m(n, std::vector<double>(n + 1));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) m[i][j] = eval((*g)[i][j], p);
            m[i][n] = eval((*rhs)[i], p);
        }
        // Gaussian elimination with partial pivoting on the augmented system
        for (int col = 0; col < n; ++col) {
            int pivot = col;
            for (int r = col + 1; r < n; ++r)
                if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
            if (std::abs(m[pivot][col]) < 1e-12)
                throw EvalError("metric tensor numerically singular at " + to_string(p));
            std::swap(m[col], m[pivot]);
            for (int r = 0; r < n; ++r) {
                if (r == col) continue;
                double f = m[r][col] / m[col][col];
                for (int c = col; c <= n; ++c) m[r][c] -= f * m[col][c];
            }
        }
        ydot.resize(n);
        // ydot = -2G = -(solution of the system)
        for (int i = 0; i < n; ++i) ydot[i] = -m[i][n] / m[i][i];
    };
}

RankReport rank_dtheta(const SemiBasicOneForm& theta, const Semispray& S,
                       const ZeroTestConfig& cfg) {
    const int n = S.n;
    const int dim = 2 * n + 1;
    auto m = dtheta_matrix(theta, S);
    auto pts = sample_points(cfg.seed, cfg.sample_count, cfg.box_lo, cfg.box_hi, n);
    RankReport rep;
    rep.min_rank = dim;
    for (const auto& p : pts) {
        std::vector<std::vector<double>> vals(dim, std::vector<double>(dim));
        try {
            for (int r = 0; r < dim; ++r)
                for (int c = 0; c < dim; ++c) vals[r][c] = eval(m[r][c], p);
        } catch (const EvalError&) {
            continue;
        }
        int r = numeric_rank(std::move(vals));
        rep.min_rank = std::min(rep.min_rank, r);
        rep.max_rank = std::max(rep.max_rank, r);
        ++rep.points_used;
    }
    if (rep.points_used == 0) rep.min_rank = 0;
    return rep;
}

namespace {

void apply_zero_verdict(ZeroVerdict v, bool& flag, bool& failed, bool& inconclusive,
                        const std::string& what, std::vector<std::string>& details) {
    switch (v) {
        case ZeroVerdict::IsZero:
            flag = true;
            break;
        case ZeroVerdict::NonZero:
            failed = true;
            details.push_back(what + " fails (nonzero component)");
            break;
        case ZeroVerdict::Inconclusive:
            inconclusive = true;
            details.push_back(what + " inconclusive (domain errors while sampling)");
            break;
    }
}

}  // namespace

HelmholtzReport verify_lagrangian(const Expr& lagrangian, const Semispray& S,
                                  const ZeroTestConfig& cfg) {
    const int n = S.n;
    HelmholtzReport rep;
    bool failed = false, inconclusive = false;

    SemiBasicOneForm theta = poincare_cartan(lagrangian, n);
    auto [dj, dh] = apply_P(theta, S);
    apply_zero_verdict(zero_test_all(components(dj), n, cfg), rep.dJ_zero, failed, inconclusive,
                       "d_J theta_L = 0", rep.details);
    apply_zero_verdict(zero_test_all(components(dh), n, cfg), rep.dh_zero, failed, inconclusive,
                       "d_h theta_L = 0", rep.details);

    // i_S dtheta_L componentwise: dtheta_L(S, delta_i) and dtheta_L(S, d/dy^i).
    auto m = dtheta_matrix(theta, S);
    std::vector<Expr> is_components(m[0].begin() + 1, m[0].end());
    bool is_ok = false;
    apply_zero_verdict(zero_test_all(is_components, n, cfg), is_ok, failed, inconclusive,
                       "i_S dtheta_L = 0", rep.details);

    auto [dr, drv] = obstruction(theta, S, cfg);
    apply_zero_verdict(drv, rep.dR_zero, failed, inconclusive, "d_R theta_L = 0", rep.details);

    RankReport rank = rank_dtheta(theta, S, cfg);
    rep.rank_dtheta = rank.max_rank;
    if (rank.points_used == 0) {
        inconclusive = true;
        rep.details.push_back("rank(dtheta_L) inconclusive (no evaluable sample points)");
    } else {
        rep.regular = rank.min_rank == 2 * n;
        if (!rep.regular)
            rep.details.push_back("rank(dtheta_L) = " + std::to_string(rank.min_rank) +
                                  " < 2n = " + std::to_string(2 * n));
    }

    if (failed)
        rep.verdict = Verdict::ObstructionFails;
    else if (inconclusive || !rep.regular)
        rep.verdict = Verdict::Inconclusive;
    else
        rep.verdict = Verdict::LagrangianConfirmed;
    return rep;
}

HelmholtzReport variationality_verdict(const Semispray& S,
                                       const std::optional<SemiBasicOneForm>& theta,
                                       const ZeroTestConfig& cfg) {
    const int n = S.n;
    HelmholtzReport rep;

    if (!theta) {
        ClassificationReport cls = classify(S, cfg);
        if (cls.inconclusive) {
            rep.verdict = Verdict::Inconclusive;
            rep.details = cls.notes;
            return rep;
        }
        std::string cls_name;
        if (cls.is_flat)
            cls_name = "flat";
        else if (cls.is_isotropic)
            cls_name = "isotropic";
        else if (n == 1)
            cls_name = "n = 1";
        if (!cls_name.empty()) {
            rep.verdict = Verdict::FormallyIntegrableClass;
            rep.dR_zero = true;  // obstruction auto-satisfied for these classes
            rep.details.push_back("semispray class: " + cls_name +
                                  "; obstruction vanishes for every first-order solution and the "
                                  "symbol is involutive, so the operator is formally integrable");
            for (const auto& note : cls.notes) rep.details.push_back(note);
            return rep;
        }
        rep.verdict = Verdict::Inconclusive;
        rep.details.push_back(
            "semispray is neither flat nor isotropic and n > 1: supply a candidate theta; the "
            "obstruction d_R theta must be checked per candidate");
        for (const auto& note : cls.notes) rep.details.push_back(note);
        return rep;
    }

    bool failed = false, inconclusive = false;
    auto [dj, dh] = apply_P(*theta, S);
    apply_zero_verdict(zero_test_all(components(dj), n, cfg), rep.dJ_zero, failed, inconclusive,
                       "d_J theta = 0", rep.details);
    apply_zero_verdict(zero_test_all(components(dh), n, cfg), rep.dh_zero, failed, inconclusive,
                       "d_h theta = 0", rep.details);
    auto [dr, drv] = obstruction(*theta, S, cfg);
    apply_zero_verdict(drv, rep.dR_zero, failed, inconclusive, "d_R theta = 0", rep.details);

    RankReport rank = rank_dtheta(*theta, S, cfg);
    rep.rank_dtheta = rank.max_rank;
    if (rank.points_used == 0) {
        inconclusive = true;
        rep.details.push_back("rank(dtheta) inconclusive (no evaluable sample points)");
    } else {
        rep.regular = rank.min_rank == 2 * n;
    }

    if (failed) {
        rep.verdict = Verdict::ObstructionFails;
        return rep;
    }
    if (inconclusive) {
        rep.verdict = Verdict::Inconclusive;
        return rep;
    }
    if (!rep.regular) {
        rep.verdict = Verdict::Inconclusive;
        rep.details.push_back("candidate theta is degenerate: rank(dtheta) = " +
                              std::to_string(rank.min_rank) + " < 2n = " + std::to_string(2 * n));
        return rep;
    }

    // Reconstruct L = i_S theta and confirm the round trip.
    Expr L = contract_S(*theta);
    HelmholtzReport confirm = verify_lagrangian(L, S, cfg);
    rep.details.push_back("reconstructed Lagrangian L = i_S theta = " + to_string(L));
    if (confirm.verdict == Verdict::LagrangianConfirmed) {
        rep.verdict = Verdict::LagrangianConfirmed;
    } else {
        rep.verdict = confirm.verdict;
        for (const auto& d : confirm.details) rep.details.push_back("reconstruction: " + d);
    }
    return rep;
}

}  // namespace sodehelm
