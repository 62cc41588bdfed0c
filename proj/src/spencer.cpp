#include "sodehelm/spencer.hpp"

#include <stdexcept>
#include <utility>

namespace sodehelm::spencer {

void RationalMatrix::append_row(const std::vector<Rational>& row) {
    if (static_cast<int>(row.size()) != cols_)
        throw std::invalid_argument("append_row: width mismatch");
    data_.insert(data_.end(), row.begin(), row.end());
    ++rows_;
}

int RationalMatrix::rank() const {
    RationalMatrix m = *this;
    int rank = 0;
    for (int col = 0; col < m.cols_ && rank < m.rows_; ++col) {
        int pivot = -1;
        for (int r = rank; r < m.rows_; ++r)
            if (!m.at(r, col).is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != rank)
            for (int c = col; c < m.cols_; ++c) std::swap(m.at(rank, c), m.at(pivot, c));
        Rational inv = Rational(1) / m.at(rank, col);
        for (int c = col; c < m.cols_; ++c) m.at(rank, c) *= inv;
        for (int r = 0; r < m.rows_; ++r) {
            if (r == rank || m.at(r, col).is_zero()) continue;
            Rational f = m.at(r, col);
            for (int c = col; c < m.cols_; ++c) m.at(r, c) -= f * m.at(rank, c);
        }
        ++rank;
    }
    return rank;
}

bool RationalMatrix::is_zero() const {
    for (const auto& v : data_)
        if (!v.is_zero()) return false;
    return true;
}

bool RationalMatrix::entries_in_symbol_set() const {
    const Rational half(1, 2);
    for (const auto& v : data_) {
        if (v.is_zero() || v == Rational(1) || v == Rational(-1) || v == half || v == -half)
            continue;
        return false;
    }
    return true;
}

RationalMatrix RationalMatrix::multiply(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("multiply: shape mismatch");
    RationalMatrix c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int k = 0; k < a.cols_; ++k) {
            const Rational& v = a.at(i, k);
            if (v.is_zero()) continue;
            for (int j = 0; j < b.cols_; ++j) {
                const Rational& w = b.at(k, j);
                if (!w.is_zero()) c.at(i, j) += v * w;
            }
        }
    return c;
}

int kernel_dim(const RationalMatrix& m) { return m.cols() - m.rank(); }

int Fiber2Basis::pair_index(int mu, int nu) const {
    if (mu > nu) std::swap(mu, nu);
    const int dim = 2 * n + 1;
    // pairs (mu, nu) with mu <= nu in lexicographic order
    return mu * dim - mu * (mu - 1) / 2 + (nu - mu);
}

int lambda2_dim(int n) { return n * (n + 1) / 2; }

int lambda2_time_index(int, int i) { return i - 1; }

int lambda2_space_index(int n, int a, int b) {
    // slots after the n time slots; (a,b) with 1 <= a < b <= n, lexicographic
    return n + (a - 1) * n - (a - 1) * a / 2 + (b - a - 1);
}

RationalMatrix sigma1(int n) {
    Fiber1Basis fib{n};
    const int m2 = lambda2_dim(n);
    RationalMatrix m(2 * m2, fib.dimension());
    // copy 0: tau_J A; copy 1: tau_h A
    for (int i = 1; i <= n; ++i) {
        int r = lambda2_time_index(n, i);
        // (tau_J A)(S, delta_i) = -A(v_i, S)
        m.at(r, fib.index(n + i, 0)) -= Rational(1);
        // (tau_h A)(S, delta_i) = A(S, delta_i) - A(delta_i, S)
        m.at(m2 + r, fib.index(0, i)) += Rational(1);
        m.at(m2 + r, fib.index(i, 0)) -= Rational(1);
    }
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b) {
            int r = lambda2_space_index(n, a, b);
            // (tau_J A)(delta_a, delta_b) = A(v_a, delta_b) - A(v_b, delta_a)
            m.at(r, fib.index(n + a, b)) += Rational(1);
            m.at(r, fib.index(n + b, a)) -= Rational(1);
            // (tau_h A)(delta_a, delta_b) = A(delta_a, delta_b) - A(delta_b, delta_a)
            m.at(m2 + r, fib.index(a, b)) += Rational(1);
            m.at(m2 + r, fib.index(b, a)) -= Rational(1);
        }
    return m;
}

namespace {

// Row layout for T* (x) (Lambda^2 (+) Lambda^2): copy, then frame index mu,
// then the Lambda^2 slot.
int prolonged_row(int n, int copy, int mu, int slot) {
    const int m2 = lambda2_dim(n);
    const int dim = 2 * n + 1;
    return copy * dim * m2 + mu * m2 + slot;
}

}  // namespace

RationalMatrix sigma2(int n) {
    Fiber2Basis fib{n};
    const int m2 = lambda2_dim(n);
    const int dim = 2 * n + 1;
    RationalMatrix m(2 * dim * m2, fib.dimension());
    for (int mu = 0; mu < dim; ++mu) {
        for (int i = 1; i <= n; ++i) {
            int slot = lambda2_time_index(n, i);
            // (sigma2(d_J) B)(e_mu; S, delta_i) = -B(e_mu, v_i, S)
            m.at(prolonged_row(n, 0, mu, slot), fib.index(mu, n + i, 0)) -= Rational(1);
            // (sigma2(d_h) B)(e_mu; S, delta_i) = B(e_mu, S, delta_i) - B(e_mu, delta_i, S)
            m.at(prolonged_row(n, 1, mu, slot), fib.index(mu, 0, i)) += Rational(1);
            m.at(prolonged_row(n, 1, mu, slot), fib.index(mu, i, 0)) -= Rational(1);
        }
        for (int a = 1; a <= n; ++a)
            for (int b = a + 1; b <= n; ++b) {
                int slot = lambda2_space_index(n, a, b);
                m.at(prolonged_row(n, 0, mu, slot), fib.index(mu, n + a, b)) += Rational(1);
                m.at(prolonged_row(n, 0, mu, slot), fib.index(mu, n + b, a)) -= Rational(1);
                m.at(prolonged_row(n, 1, mu, slot), fib.index(mu, a, b)) += Rational(1);
                m.at(prolonged_row(n, 1, mu, slot), fib.index(mu, b, a)) -= Rational(1);
            }
    }
    return m;
}

std::vector<int> quasi_regular_chain(int n, int j) {
    if (j < 1 || j > n) throw std::invalid_argument("quasi_regular_chain: j out of range");
    Fiber1Basis fib{n};
    RationalMatrix m = sigma1(n);

    std::vector<int> chain;
    chain.push_back(kernel_dim(m));

    // quasi-regular basis vectors as frame-coordinate combinations
    std::vector<std::vector<std::pair<int, Rational>>> basis;
    basis.push_back({{0, Rational(1)}, {j, Rational(1)}, {2 * n, Rational(1)}});  // S + h_j + v_n
    basis.push_back({{1, Rational(1)}});                                          // h_1
    for (int i = 2; i <= n; ++i)
        basis.push_back({{i, Rational(1)}, {n + i - 1, Rational(1)}});  // h_i + v_{i-1}

    for (const auto& e : basis) {
        // i_e A = 0: one linear condition per semi-basic slot beta
        for (int beta = 0; beta <= n; ++beta) {
            std::vector<Rational> row(fib.dimension());
            for (const auto& [mu, c] : e) row[fib.index(mu, beta)] = c;
            m.append_row(row);
        }
        chain.push_back(kernel_dim(m));
    }
    return chain;
}

CokernelReport cokernel_dim(int n) {
    CokernelReport rep;
    rep.closed_form = cokernel_dim_closed(n);
    RationalMatrix s2 = sigma2(n);
    rep.computed = s2.rows() - s2.rank();
    rep.agree = rep.closed_form == rep.computed;
    return rep;
}

TauReport tau_maps(int n) {
    const int m2 = lambda2_dim(n);
    const int dim = 2 * n + 1;
    const int domain = 2 * dim * m2;
    const int time3 = n * (n - 1) / 2;
    const int space3 = n * (n - 1) * (n - 2) / 6;
    const int l3 = time3 + space3;

    TauReport rep;
    rep.tau = RationalMatrix(3 * l3, domain);

    auto col = [&](int copy, int mu, int slot) { return prolonged_row(n, copy, mu, slot); };
    auto mt = [&](int i) { return lambda2_time_index(n, i); };
    auto ms = [&](int a, int b) { return lambda2_space_index(n, a, b); };

    // (tau_J C)(S, delta_a, delta_b) = -C(v_a; S, delta_b) + C(v_b; S, delta_a)
    auto fill_J_time = [&](int row, int copy, int a, int b) {
        rep.tau.at(row, col(copy, n + a, mt(b))) -= Rational(1);
        rep.tau.at(row, col(copy, n + b, mt(a))) += Rational(1);
    };
    // (tau_h C)(S, delta_a, delta_b) = C(S; delta_a, delta_b) - C(delta_a; S, delta_b)
    //                                  + C(delta_b; S, delta_a)
    auto fill_h_time = [&](int row, int copy, int a, int b) {
        rep.tau.at(row, col(copy, 0, ms(a, b))) += Rational(1);
        rep.tau.at(row, col(copy, a, mt(b))) -= Rational(1);
        rep.tau.at(row, col(copy, b, mt(a))) += Rational(1);
    };
    // (tau_J C)(delta_a, delta_b, delta_c) = C(v_a; delta_b, delta_c)
    //     - C(v_b; delta_a, delta_c) + C(v_c; delta_a, delta_b)
    auto fill_J_space = [&](int row, int copy, int a, int b, int c) {
        rep.tau.at(row, col(copy, n + a, ms(b, c))) += Rational(1);
        rep.tau.at(row, col(copy, n + b, ms(a, c))) -= Rational(1);
        rep.tau.at(row, col(copy, n + c, ms(a, b))) += Rational(1);
    };
    auto fill_h_space = [&](int row, int copy, int a, int b, int c) {
        rep.tau.at(row, col(copy, a, ms(b, c))) += Rational(1);
        rep.tau.at(row, col(copy, b, ms(a, c))) -= Rational(1);
        rep.tau.at(row, col(copy, c, ms(a, b))) += Rational(1);
    };

    // tau_1 = tau_J o pr1, tau_2 = tau_h o pr2, tau_3 = tau_h o pr1 + tau_J o pr2
    int slot = 0;
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b, ++slot) {
            fill_J_time(0 * l3 + slot, 0, a, b);
            fill_h_time(1 * l3 + slot, 1, a, b);
            fill_h_time(2 * l3 + slot, 0, a, b);
            fill_J_time(2 * l3 + slot, 1, a, b);
        }
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
            for (int c = b + 1; c <= n; ++c, ++slot) {
                fill_J_space(0 * l3 + slot, 0, a, b, c);
                fill_h_space(1 * l3 + slot, 1, a, b, c);
                fill_h_space(2 * l3 + slot, 0, a, b, c);
                fill_J_space(2 * l3 + slot, 1, a, b, c);
            }

    RationalMatrix s2 = sigma2(n);
    rep.tau_sigma2_zero = RationalMatrix::multiply(rep.tau, s2).is_zero();
    rep.rank_sigma2 = s2.rank();
    int tau_rank = rep.tau.rank();
    rep.ker_tau_dim = domain - tau_rank;
    rep.middle_exact = rep.rank_sigma2 == rep.ker_tau_dim;
    rep.tau_onto = tau_rank == 3 * l3;
    return rep;
}

long long g1_dim_closed(int n) { return static_cast<long long>(n + 1) * (n + 1); }

long long g2_dim_closed(int n) {
    return static_cast<long long>(n + 1) * (n + 1) * (n + 2) / 2;
}

long long cokernel_dim_closed(int n) {
    return static_cast<long long>(n - 1) * n * (n + 1) / 2;
}

}  // namespace sodehelm::spencer
