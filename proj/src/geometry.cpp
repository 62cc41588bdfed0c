#include "sodehelm/geometry.hpp"

#include "sodehelm/oracles.hpp"

#include <algorithm>
#include <stdexcept>

namespace sodehelm {

Semispray make_semispray(int n, const std::vector<std::string>& coefficient_texts) {
    if (n < 1) throw std::invalid_argument("semispray: dimension must be >= 1");
    if (static_cast<int>(coefficient_texts.size()) != n)
        throw std::invalid_argument("semispray: expected " + std::to_string(n) +
                                    " coefficient expressions, got " +
                                    std::to_string(coefficient_texts.size()));
    Semispray S;
    S.n = n;
    S.coefficient.reserve(n);
    for (const auto& text : coefficient_texts) S.coefficient.push_back(parse(text, n));
    return S;
}

Connection connection(const Semispray& S) {
    Connection N;
    N.spatial.assign(S.n, std::vector<Expr>(S.n));
    N.time.assign(S.n, Expr());
    for (int i = 0; i < S.n; ++i) {
        for (int j = 0; j < S.n; ++j) N.spatial[i][j] = diff(S.coefficient[i], VarId::y(j + 1));
        std::vector<Expr> terms = {Expr::integer(2) * S.coefficient[i]};
        for (int j = 0; j < S.n; ++j)
            terms.push_back(-(N.spatial[i][j] * Expr::variable(VarId::y(j + 1))));
        N.time[i] = Expr::sum(std::move(terms));
    }
    return N;
}

Expr s_derivative(const Semispray& S, const Expr& e) {
    std::vector<Expr> terms = {diff(e, VarId::t())};
    for (int j = 0; j < S.n; ++j) {
        terms.push_back(Expr::variable(VarId::y(j + 1)) * diff(e, VarId::x(j + 1)));
        terms.push_back(Expr::integer(-2) * S.coefficient[j] * diff(e, VarId::y(j + 1)));
    }
    return Expr::sum(std::move(terms));
}

Expr delta_derivative(const Connection& N, const Expr& e, int i) {
    int n = static_cast<int>(N.time.size());
    if (i < 1 || i > n) throw std::out_of_range("delta_derivative: index out of range");
    std::vector<Expr> terms = {diff(e, VarId::x(i))};
    for (int j = 0; j < n; ++j)
        terms.push_back(-(N.spatial[j][i - 1] * diff(e, VarId::y(j + 1))));
    return Expr::sum(std::move(terms));
}

Expr delta_derivative(const Semispray& S, const Expr& e, int i) {
    return delta_derivative(connection(S), e, i);
}

std::vector<std::vector<Expr>> jacobi(const Semispray& S) {
    Connection N = connection(S);
    std::vector<std::vector<Expr>> phi(S.n, std::vector<Expr>(S.n));
    for (int i = 0; i < S.n; ++i) {
        for (int j = 0; j < S.n; ++j) {
            std::vector<Expr> terms = {Expr::integer(2) * diff(S.coefficient[i], VarId::x(j + 1))};
            for (int k = 0; k < S.n; ++k)
                terms.push_back(-(N.spatial[i][k] * N.spatial[k][j]));
            terms.push_back(-s_derivative(S, N.spatial[i][j]));
            phi[i][j] = Expr::sum(std::move(terms));
        }
    }
    return phi;
}

Curvature curvature(const Semispray& S) {
    Connection N = connection(S);
    Curvature R;
    R.r3.assign(S.n, std::vector<std::vector<Expr>>(S.n, std::vector<Expr>(S.n)));
    for (int i = 0; i < S.n; ++i)
        for (int j = 0; j < S.n; ++j)
            for (int k = 0; k < S.n; ++k)
                R.r3[i][j][k] = delta_derivative(N, N.spatial[i][j], k + 1) -
                                delta_derivative(N, N.spatial[i][k], j + 1);
    R.phi = jacobi(S);
    return R;
}

ClassificationReport classify(const Semispray& S, const ZeroTestConfig& cfg) {
    ClassificationReport rep;
    Curvature R = curvature(S);
    const int n = S.n;

    std::vector<Expr> phi_entries;
    for (const auto& row : R.phi)
        for (const auto& e : row) phi_entries.push_back(e);
    ZeroVerdict flat = zero_test_all(phi_entries, n, cfg);
    if (flat == ZeroVerdict::Inconclusive) {
        rep.inconclusive = true;
        rep.notes.push_back("flatness test inconclusive (domain errors while sampling)");
        return rep;
    }
    if (flat == ZeroVerdict::IsZero) {
        rep.is_flat = true;
        rep.is_isotropic = true;  // Phi = 0 = 0 * Id
        rep.lambda = Expr();
        rep.alpha = std::vector<Expr>(n + 1, Expr());
        return rep;
    }

    // lambda = trace(Phi)/n, then require Phi - lambda*Id == 0 entrywise.
    std::vector<Expr> trace_terms;
    for (int i = 0; i < n; ++i) trace_terms.push_back(R.phi[i][i]);
    Expr lambda = Expr::product({Expr::number(Rational(1, n)), Expr::sum(std::move(trace_terms))});

    std::vector<Expr> iso_residuals;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            iso_residuals.push_back(i == j ? R.phi[i][j] - lambda : R.phi[i][j]);
    ZeroVerdict iso = zero_test_all(iso_residuals, n, cfg);
    if (iso == ZeroVerdict::Inconclusive) {
        rep.inconclusive = true;
        rep.notes.push_back("isotropy test inconclusive (domain errors while sampling)");
        return rep;
    }

    if (iso == ZeroVerdict::IsZero) {
        rep.is_isotropic = true;
        rep.lambda = lambda;
        std::vector<Expr> alpha(n + 1);
        alpha[0] = lambda;
        for (int i = 1; i <= n; ++i)
            alpha[i] = Expr::product({Expr::number(Rational(1, 3)), diff(lambda, VarId::y(i))});
        rep.alpha = alpha;

        // Witness consistency: R^k_ij = alpha_i delta^k_j - alpha_j delta^k_i.
        std::vector<Expr> witness;
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    Expr expected = Expr();
                    if (k == j) expected = expected + alpha[i + 1];
                    if (k == i) expected = expected - alpha[j + 1];
                    witness.push_back(R.r3[k][i][j] - expected);
                }
        if (zero_test_all(witness, n, cfg) != ZeroVerdict::IsZero)
            rep.notes.push_back("isotropy witness mismatch: R != alpha ^ J for alpha = (1/3) d_J lambda + lambda dt");
        return rep;
    }

    // Not isotropic under the Phi = lambda*Id test. Flag the nilpotent case:
    // strictly triangular Phi matrices are displayed as scalar multiples of J
    // in the source examples, which this definition does not accept.
    std::vector<Expr> phi_squared;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<Expr> terms;
            for (int k = 0; k < n; ++k) terms.push_back(R.phi[i][k] * R.phi[k][j]);
            phi_squared.push_back(Expr::sum(std::move(terms)));
        }
    if (zero_test_all(phi_squared, n, cfg) == ZeroVerdict::IsZero)
        rep.notes.push_back(
            "Jacobi endomorphism is nilpotent (Phi^2 = 0) but not a multiple of the identity; "
            "not isotropic under the Phi = lambda*Id definition");
    return rep;
}

std::vector<IdentityCheck> structure_identities(const Semispray& S, const ZeroTestConfig& cfg) {
    const int n = S.n;
    const int dim = 2 * n + 1;
    std::vector<IdentityCheck> out;

    // Adapted-frame action matrices (rows/cols ordered S, delta_i, d/dy^i).
    // These are constant integer matrices; the identities are exact.
    auto zero = [&] { return std::vector<std::vector<int>>(dim, std::vector<int>(dim, 0)); };
    auto J = zero(), h = zero(), Gamma = zero(), F = zero(), Id = zero();
    for (int i = 0; i < dim; ++i) Id[i][i] = 1;
    h[0][0] = 1;
    Gamma[0][0] = 1;
    for (int i = 1; i <= n; ++i) {
        J[n + i][i] = 1;          // J delta_i = v_i
        h[i][i] = 1;              // h delta_i = delta_i
        Gamma[i][i] = 1;          // Gamma = 2h - Id
        Gamma[n + i][n + i] = -1;
        F[i][n + i] = 1;          // F v_i = delta_i
        F[n + i][i] = -1;         // F delta_i = -v_i
    }
    auto mul = [&](const auto& A, const auto& B) {
        auto C = zero();
        for (int i = 0; i < dim; ++i)
            for (int k = 0; k < dim; ++k)
                if (A[i][k] != 0)
                    for (int j = 0; j < dim; ++j) C[i][j] += A[i][k] * B[k][j];
        return C;
    };
    auto is_zero_mat = [&](const auto& A) {
        for (const auto& row : A)
            for (int v : row)
                if (v != 0) return false;
        return true;
    };
    auto sub = [&](auto A, const auto& B) {
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) A[i][j] -= B[i][j];
        return A;
    };
    auto add = [&](auto A, const auto& B) {
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) A[i][j] += B[i][j];
        return A;
    };

    out.push_back({"J^2 = 0", is_zero_mat(mul(J, J)), 0.0});
    out.push_back({"h^2 = h", is_zero_mat(sub(mul(h, h), h)), 0.0});
    out.push_back({"Gamma^2 = Id", is_zero_mat(sub(mul(Gamma, Gamma), Id)), 0.0});
    out.push_back({"F^3 + F = 0", is_zero_mat(add(mul(F, mul(F, F)), F)), 0.0});

    // Bracket identities via the numeric oracle at seeded sample points.
    const double tol = 1e-4;
    int points = std::min(cfg.sample_count, 5);
    auto pts = sample_points(cfg.seed, std::max(points, 1), cfg.box_lo, cfg.box_hi, n);
    double jh = 0.0, nj = 0.0, phi_vs_bracket = 0.0;
    bool ok = true;
    for (const auto& p : pts) {
        try {
            BracketOracleReport r = fn_bracket_oracle(S, p);
            jh = std::max(jh, r.jh_max_abs);
            nj = std::max(nj, r.nj_max_deviation);
            phi_vs_bracket = std::max(phi_vs_bracket, r.hh_max_deviation);
        } catch (const EvalError&) {
            ok = false;
        }
    }
    out.push_back({"[J,h] = 0", ok && jh <= tol, jh});
    out.push_back({"N_J = -J^dt", ok && nj <= tol, nj});
    out.push_back({"Phi = i_S R (bracket oracle)", ok && phi_vs_bracket <= tol, phi_vs_bracket});
    return out;
}

}  // namespace sodehelm
