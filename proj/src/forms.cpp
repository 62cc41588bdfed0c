#include "sodehelm/forms.hpp"

#include "sodehelm/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace sodehelm {

namespace {

std::vector<std::vector<Expr>> zero_matrix(int n) {
    return std::vector<std::vector<Expr>>(n, std::vector<Expr>(n, Expr()));
}

}  // namespace

MultiplierMatrix multiplier_matrix(const SemiBasicOneForm& theta) {
    int n = theta.n();
    auto a = zero_matrix(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = diff(theta.theta[i], VarId::y(j + 1));
    return a;
}

std::vector<Expr> components(const SemiBasicTwoForm& w) {
    std::vector<Expr> out;
    int n = w.n();
    for (int i = 0; i < n; ++i) out.push_back(w.c_time[i]);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) out.push_back(w.c_space[a][b]);
    return out;
}

std::vector<Expr> SemiBasicThreeForm::components() const {
    std::vector<Expr> out;
    int m = n();
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) out.push_back(c_time[a][b]);
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            for (int c = b + 1; c < m; ++c) out.push_back(c_space[a][b][c]);
    return out;
}

SemiBasicTwoForm d_J(const SemiBasicOneForm& theta, const Semispray& S) {
    int n = S.n;
    SemiBasicTwoForm w;
    w.c_time.resize(n);
    w.c_space = zero_matrix(n);
    for (int i = 0; i < n; ++i)
        w.c_time[i] = theta.theta[i] - diff(theta.theta0, VarId::y(i + 1));
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            w.c_space[a][b] =
                diff(theta.theta[b], VarId::y(a + 1)) - diff(theta.theta[a], VarId::y(b + 1));
            w.c_space[b][a] = -w.c_space[a][b];
        }
    return w;
}

SemiBasicTwoForm d_h(const SemiBasicOneForm& theta, const Semispray& S) {
    int n = S.n;
    Connection N = connection(S);
    SemiBasicTwoForm w;
    w.c_time.resize(n);
    w.c_space = zero_matrix(n);
    for (int i = 0; i < n; ++i) {
        std::vector<Expr> terms = {s_derivative(S, theta.theta[i])};
        for (int j = 0; j < n; ++j) terms.push_back(-(theta.theta[j] * N.spatial[j][i]));
        terms.push_back(-delta_derivative(N, theta.theta0, i + 1));
        w.c_time[i] = Expr::sum(std::move(terms));
    }
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            w.c_space[a][b] = delta_derivative(N, theta.theta[b], a + 1) -
                              delta_derivative(N, theta.theta[a], b + 1);
            w.c_space[b][a] = -w.c_space[a][b];
        }
    return w;
}

SemiBasicTwoForm d_phi(const SemiBasicOneForm& theta, const Semispray& S) {
    int n = S.n;
    auto phi = jacobi(S);
    auto a = multiplier_matrix(theta);
    SemiBasicTwoForm w;
    w.c_time.resize(n);
    w.c_space = zero_matrix(n);
    for (int i = 0; i < n; ++i) {
        std::vector<Expr> terms;
        for (int j = 0; j < n; ++j)
            terms.push_back(phi[j][i] * (theta.theta[j] - diff(theta.theta0, VarId::y(j + 1))));
        w.c_time[i] = Expr::sum(std::move(terms));
    }
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) {
            std::vector<Expr> terms;
            for (int k = 0; k < n; ++k) {
                terms.push_back(a[p][k] * phi[k][q]);
                terms.push_back(-(a[q][k] * phi[k][p]));
            }
            w.c_space[p][q] = Expr::sum(std::move(terms));
            w.c_space[q][p] = -w.c_space[p][q];
        }
    return w;
}

SemiBasicThreeForm d_R(const SemiBasicOneForm& theta, const Semispray& S) {
    int n = S.n;
    Curvature R = curvature(S);
    auto a = multiplier_matrix(theta);
    SemiBasicThreeForm w;
    w.c_time = zero_matrix(n);
    w.c_space.assign(n, zero_matrix(n));
    // independent ordered components only; the rest follow by antisymmetry
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) {
            std::vector<Expr> terms;
            for (int k = 0; k < n; ++k) {
                terms.push_back(a[q][k] * R.phi[k][p]);
                terms.push_back(-(a[p][k] * R.phi[k][q]));
            }
            w.c_time[p][q] = Expr::sum(std::move(terms));
            w.c_time[q][p] = -w.c_time[p][q];
        }
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q)
            for (int r = q + 1; r < n; ++r) {
                std::vector<Expr> terms;
                for (int l = 0; l < n; ++l) {
                    terms.push_back(a[p][l] * R.r3[l][q][r]);
                    terms.push_back(a[q][l] * R.r3[l][r][p]);
                    terms.push_back(a[r][l] * R.r3[l][p][q]);
                }
                Expr v = Expr::sum(std::move(terms));
                w.c_space[p][q][r] = v;
                w.c_space[q][r][p] = v;
                w.c_space[r][p][q] = v;
                w.c_space[q][p][r] = -v;
                w.c_space[p][r][q] = -v;
                w.c_space[r][q][p] = -v;
            }
    return w;
}

SemiBasicOneForm poincare_cartan(const Expr& lagrangian, int n) {
    SemiBasicOneForm theta;
    theta.theta0 = lagrangian;
    theta.theta.resize(n);
    for (int i = 0; i < n; ++i) theta.theta[i] = diff(lagrangian, VarId::y(i + 1));
    return theta;
}

MetricReport metric_tensor(const Expr& lagrangian, int n, const ZeroTestConfig& cfg) {
    MetricReport rep;
    rep.g = zero_matrix(n);
    for (int i = 0; i < n; ++i) {
        Expr dli = diff(lagrangian, VarId::y(i + 1));
        for (int j = 0; j < n; ++j) rep.g[i][j] = diff(dli, VarId::y(j + 1));
    }
    auto pts = sample_points(cfg.seed, cfg.sample_count, cfg.box_lo, cfg.box_hi, n);
    bool any = false;
    bool all_full = true;
    rep.min_rank = n;
    rep.max_rank = 0;
    for (const auto& p : pts) {
        std::vector<std::vector<double>> m(n, std::vector<double>(n));
        try {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) m[i][j] = eval(rep.g[i][j], p);
        } catch (const EvalError&) {
            continue;
        }
        any = true;
        int r = numeric_rank(m);
        rep.min_rank = std::min(rep.min_rank, r);
        rep.max_rank = std::max(rep.max_rank, r);
        if (r != n) all_full = false;
    }
    if (!any) {
        rep.verdict = Regularity::Inconclusive;
        rep.min_rank = rep.max_rank = 0;
    } else {
        rep.verdict = all_full ? Regularity::Regular : Regularity::Singular;
    }
    return rep;
}

Expr contract_S(const SemiBasicOneForm& theta) { return theta.theta0; }

ReconstructionStatus reconstruction_identity(const SemiBasicOneForm& theta, const Semispray& S,
                                             const ZeroTestConfig& cfg) {
    switch (zero_test_all(components(d_J(theta, S)), S.n, cfg)) {
        case ZeroVerdict::NonZero: return ReconstructionStatus::PreconditionViolated;
        case ZeroVerdict::Inconclusive: return ReconstructionStatus::Inconclusive;
        case ZeroVerdict::IsZero: break;
    }
    std::vector<Expr> residuals;
    for (int i = 0; i < S.n; ++i)
        residuals.push_back(theta.theta[i] - diff(theta.theta0, VarId::y(i + 1)));
    switch (zero_test_all(residuals, S.n, cfg)) {
        case ZeroVerdict::NonZero: return ReconstructionStatus::Fails;
        case ZeroVerdict::Inconclusive: return ReconstructionStatus::Inconclusive;
        case ZeroVerdict::IsZero: return ReconstructionStatus::Holds;
    }
    return ReconstructionStatus::Inconclusive;
}

std::vector<std::vector<Expr>> dtheta_matrix(const SemiBasicOneForm& theta, const Semispray& S) {
    int n = S.n;
    int dim = 2 * n + 1;
    SemiBasicTwoForm j = d_J(theta, S);
    SemiBasicTwoForm h = d_h(theta, S);
    auto a = multiplier_matrix(theta);
    auto m = std::vector<std::vector<Expr>>(dim, std::vector<Expr>(dim, Expr()));
    for (int i = 0; i < n; ++i) {
        m[0][1 + i] = h.c_time[i];           // dtheta(S, delta_i)
        m[0][1 + n + i] = j.c_time[i];       // dtheta(S, d/dy^i)
    }
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            m[1 + p][1 + q] = h.c_space[p][q];          // dtheta(delta_p, delta_q)
            m[1 + p][1 + n + q] = -a[p][q];             // dtheta(delta_p, d/dy^q)
        }
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < r; ++c) m[r][c] = -m[c][r];
    return m;
}

}  // namespace sodehelm
