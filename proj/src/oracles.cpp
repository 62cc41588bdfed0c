#include "sodehelm/oracles.hpp"

#include <cmath>
#include <functional>

namespace sodehelm {

namespace {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;
using Field = std::function<Vec(const Vec&)>;

// Natural coordinates are packed z = (t, x^1..x^n, y^1..y^n).
Point to_point(const Vec& z, int n) {
    Point p;
    p.t = z[0];
    p.x.assign(z.begin() + 1, z.begin() + 1 + n);
    p.y.assign(z.begin() + 1 + n, z.begin() + 1 + 2 * n);
    return p;
}

Vec to_vec(const Point& p) {
    Vec z;
    z.reserve(1 + p.x.size() + p.y.size());
    z.push_back(p.t);
    z.insert(z.end(), p.x.begin(), p.x.end());
    z.insert(z.end(), p.y.begin(), p.y.end());
    return z;
}

Vec matvec(const Mat& m, const Vec& v) {
    Vec out(m.size(), 0.0);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
    return out;
}

// Symbolic geometry evaluated pointwise; shared by all oracles below.
struct Geo {
    explicit Geo(const Semispray& s) : S(s), n(s.n), dim(2 * s.n + 1), N(connection(s)) {}

    const Semispray& S;
    int n;
    int dim;
    Connection N;

    double g_at(int i, const Vec& z) const { return eval(S.coefficient[i], to_point(z, n)); }
    double nsp_at(int i, int j, const Vec& z) const { return eval(N.spatial[i][j], to_point(z, n)); }
    double ntime_at(int i, const Vec& z) const { return eval(N.time[i], to_point(z, n)); }

    Vec spray(const Vec& z) const {
        Vec v(dim, 0.0);
        v[0] = 1.0;
        for (int i = 0; i < n; ++i) v[1 + i] = z[1 + n + i];
        for (int i = 0; i < n; ++i) v[1 + n + i] = -2.0 * g_at(i, z);
        return v;
    }

    Vec delta(int i, const Vec& z) const {
        Vec v(dim, 0.0);
        v[1 + i] = 1.0;
        for (int k = 0; k < n; ++k) v[1 + n + k] = -nsp_at(k, i, z);
        return v;
    }

    Vec vertical(int i) const {
        Vec v(dim, 0.0);
        v[1 + n + i] = 1.0;
        return v;
    }

    // J d/dt = -y^k d/dy^k, J d/dx^i = d/dy^i, J d/dy^i = 0.
    Mat j_mat(const Vec& z) const {
        Mat m(dim, Vec(dim, 0.0));
        for (int k = 0; k < n; ++k) {
            m[1 + n + k][0] = -z[1 + n + k];
            m[1 + n + k][1 + k] = 1.0;
        }
        return m;
    }

    // h d/dt = d/dt - N^k_0 d/dy^k, h d/dx^i = delta_i, h d/dy^i = 0.
    Mat h_mat(const Vec& z) const {
        Mat m(dim, Vec(dim, 0.0));
        m[0][0] = 1.0;
        for (int i = 0; i < n; ++i) m[1 + i][1 + i] = 1.0;
        for (int k = 0; k < n; ++k) {
            m[1 + n + k][0] = -ntime_at(k, z);
            for (int i = 0; i < n; ++i) m[1 + n + k][1 + i] = -nsp_at(k, i, z);
        }
        return m;
    }

    // Phi d/dt = -y^i R^k_i d/dy^k, Phi d/dx^i = R^k_i d/dy^k.
    Mat phi_mat(const std::vector<std::vector<Expr>>& phi, const Vec& z) const {
        Mat m(dim, Vec(dim, 0.0));
        Point p = to_point(z, n);
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i) {
                double r = eval(phi[k][i], p);
                m[1 + n + k][1 + i] = r;
                m[1 + n + k][0] -= z[1 + n + i] * r;
            }
        return m;
    }

    // Adapted components (dt, dx^i, dy^k slots) of a natural-coordinate vector.
    struct Adapted {
        double s;
        Vec dx;
        Vec dy;
    };

    Adapted decompose(const Vec& w, const Vec& z) const {
        Adapted a;
        a.s = w[0];
        a.dx.resize(n);
        a.dy.resize(n);
        for (int i = 0; i < n; ++i) a.dx[i] = w[1 + i] - z[1 + n + i] * w[0];
        for (int k = 0; k < n; ++k) {
            double v = w[1 + n + k] + ntime_at(k, z) * w[0];
            for (int i = 0; i < n; ++i) v += nsp_at(k, i, z) * w[1 + i];
            a.dy[k] = v;
        }
        return a;
    }
};

Vec lie_bracket(const Field& A, const Field& B, const Vec& z, double h) {
    std::size_t dim = z.size();
    Vec a = A(z), b = B(z);
    Vec out(dim, 0.0);
    Vec zp = z, zm = z;
    for (std::size_t mu = 0; mu < dim; ++mu) {
        zp[mu] = z[mu] + h;
        zm[mu] = z[mu] - h;
        Vec bp = B(zp), bm = B(zm), ap = A(zp), am = A(zm);
        for (std::size_t i = 0; i < dim; ++i)
            out[i] += (bp[i] - bm[i]) / (2 * h) * a[mu] - (ap[i] - am[i]) / (2 * h) * b[mu];
        zp[mu] = z[mu];
        zm[mu] = z[mu];
    }
    return out;
}

using MatFn = std::function<Mat(const Vec&)>;

Field compose(const MatFn& K, const Field& X) {
    return [K, X](const Vec& z) { return matvec(K(z), X(z)); };
}

// Frolicher-Nijenhuis bracket of two vector-valued 1-forms on a pair of
// vector fields:
//   [K,L](X,Y) = [KX,LY] - [KY,LX] - L[KX,Y] + L[KY,X] - K[LX,Y] + K[LY,X]
//                + L(K[X,Y]) + K(L[X,Y]).
// The normalization is pinned by 1/2 [h,h] reproducing the curvature
// components of the induced connection.
Vec fn_bracket(const MatFn& K, const MatFn& L, const Field& X, const Field& Y, const Vec& z,
               double h) {
    Field KX = compose(K, X), KY = compose(K, Y), LX = compose(L, X), LY = compose(L, Y);
    Mat Kz = K(z), Lz = L(z);
    Vec out = lie_bracket(KX, LY, z, h);
    Vec t = lie_bracket(KY, LX, z, h);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= t[i];
    t = matvec(Lz, lie_bracket(KX, Y, z, h));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= t[i];
    t = matvec(Lz, lie_bracket(KY, X, z, h));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += t[i];
    t = matvec(Kz, lie_bracket(LX, Y, z, h));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= t[i];
    t = matvec(Kz, lie_bracket(LY, X, z, h));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += t[i];
    Vec xy = lie_bracket(X, Y, z, h);
    t = matvec(Lz, matvec(Kz, xy));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += t[i];
    t = matvec(Kz, matvec(Lz, xy));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += t[i];
    return out;
}

// 1/2 [h,h](X,Y) = [hX,hY] - h[hX,Y] - h[X,hY] + h[X,Y].
Vec half_hh(const MatFn& H, const Field& X, const Field& Y, const Vec& z, double h) {
    Field HX = compose(H, X), HY = compose(H, Y);
    Mat Hz = H(z);
    Vec out = lie_bracket(HX, HY, z, h);
    Vec t = matvec(Hz, lie_bracket(HX, Y, z, h));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= t[i];
    t = matvec(Hz, lie_bracket(X, HY, z, h));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= t[i];
    t = matvec(Hz, lie_bracket(X, Y, z, h));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += t[i];
    return out;
}

double max_abs(const Vec& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

BracketOracleReport fn_bracket_oracle(const Semispray& S, const Point& p, double fd_step) {
    Geo geo(S);
    const int n = geo.n;
    Vec z = to_vec(p);
    Curvature R = curvature(S);

    MatFn H = [&geo](const Vec& w) { return geo.h_mat(w); };
    MatFn J = [&geo](const Vec& w) { return geo.j_mat(w); };
    MatFn Phi = [&geo, &R](const Vec& w) { return geo.phi_mat(R.phi, w); };

    std::vector<Field> frame;  // S, delta_1..delta_n, v_1..v_n
    frame.push_back([&geo](const Vec& w) { return geo.spray(w); });
    for (int i = 0; i < n; ++i)
        frame.push_back([&geo, i](const Vec& w) { return geo.delta(i, w); });
    for (int i = 0; i < n; ++i)
        frame.push_back([&geo, i](const Vec&) { return geo.vertical(i); });

    BracketOracleReport rep;
    rep.hh_time.assign(n, std::vector<double>(n, 0.0));
    rep.hh_space.assign(n, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)));

    Point pt = p;
    auto phi_at = [&](int k, int i) { return eval(R.phi[k][i], pt); };
    auto r3_at = [&](int k, int a, int b) { return eval(R.r3[k][a][b], pt); };

    const int dim = geo.dim;
    for (int a = 0; a < dim; ++a) {
        for (int b = a + 1; b < dim; ++b) {
            // 1/2 [h,h] vs the symbolic curvature.
            Vec w = half_hh(H, frame[a], frame[b], z, fd_step);
            Geo::Adapted ad = geo.decompose(w, z);
            rep.hh_nonvertical = std::max(rep.hh_nonvertical, std::abs(ad.s));
            rep.hh_nonvertical = std::max(rep.hh_nonvertical, max_abs(ad.dx));
            for (int k = 0; k < n; ++k) {
                double expected = 0.0;
                if (a == 0 && b >= 1 && b <= n) {
                    rep.hh_time[k][b - 1] = ad.dy[k];
                    expected = phi_at(k, b - 1);
                } else if (a >= 1 && a <= n && b >= 1 && b <= n) {
                    rep.hh_space[k][a - 1][b - 1] = ad.dy[k];
                    rep.hh_space[k][b - 1][a - 1] = -ad.dy[k];
                    expected = r3_at(k, a - 1, b - 1);
                }
                rep.hh_max_deviation = std::max(rep.hh_max_deviation, std::abs(ad.dy[k] - expected));
            }
            rep.hh_max_deviation = std::max(rep.hh_max_deviation, std::abs(ad.s));
            rep.hh_max_deviation = std::max(rep.hh_max_deviation, max_abs(ad.dx));

            // [J,Phi] vs 3R + Phi^dt on the same pair.
            Vec jp = fn_bracket(J, Phi, frame[a], frame[b], z, fd_step);
            Vec target(dim, 0.0);
            if (a == 0 && b >= 1 && b <= n) {
                for (int k = 0; k < n; ++k) target[1 + n + k] = 2.0 * phi_at(k, b - 1);
            } else if (a >= 1 && a <= n && b >= 1 && b <= n) {
                for (int k = 0; k < n; ++k) target[1 + n + k] = 3.0 * r3_at(k, a - 1, b - 1);
            }
            for (int i = 0; i < dim; ++i)
                rep.jphi_max_deviation = std::max(rep.jphi_max_deviation, std::abs(jp[i] - target[i]));

            // Weak torsion [J,h] = 0.
            Vec jh = fn_bracket(J, H, frame[a], frame[b], z, fd_step);
            rep.jh_max_abs = std::max(rep.jh_max_abs, max_abs(jh));

            // N_J = 1/2 [J,J] = -J^dt.
            Vec nj = fn_bracket(J, J, frame[a], frame[b], z, fd_step);
            for (double& v : nj) v *= 0.5;
            if (a == 0 && b >= 1 && b <= n) nj[1 + n + (b - 1)] -= 1.0;  // -(J^dt)(S,delta_b) = v_b
            rep.nj_max_deviation = std::max(rep.nj_max_deviation, max_abs(nj));
        }
    }
    return rep;
}

namespace {

// Natural components of a semi-basic 1-form: theta = (theta_0 - theta_i y^i) dt + theta_i dx^i.
struct ThetaField {
    const SemiBasicOneForm& theta;
    int n;

    double component(int mu, const Vec& z) const {
        Point p = to_point(z, n);
        if (mu == 0) {
            double v = eval(theta.theta0, p);
            for (int i = 0; i < n; ++i) v -= eval(theta.theta[i], p) * z[1 + n + i];
            return v;
        }
        if (mu <= n) return eval(theta.theta[mu - 1], p);
        return 0.0;
    }
};

// dtheta on natural basis pairs by central differences.
Mat numeric_dtheta(const ThetaField& tf, const Vec& z, double h) {
    int dim = static_cast<int>(z.size());
    Mat d(dim, Vec(dim, 0.0));
    Vec zp = z, zm = z;
    // derivative of each component along each direction
    Mat grad(dim, Vec(dim, 0.0));  // grad[mu][nu] = d w_nu / d z_mu
    for (int mu = 0; mu < dim; ++mu) {
        zp[mu] = z[mu] + h;
        zm[mu] = z[mu] - h;
        for (int nu = 0; nu < dim; ++nu)
            grad[mu][nu] = (tf.component(nu, zp) - tf.component(nu, zm)) / (2 * h);
        zp[mu] = z[mu];
        zm[mu] = z[mu];
    }
    for (int mu = 0; mu < dim; ++mu)
        for (int nu = 0; nu < dim; ++nu) d[mu][nu] = grad[mu][nu] - grad[nu][mu];
    return d;
}

double two_form_value(const Mat& d, const Vec& u, const Vec& v) {
    double out = 0.0;
    for (std::size_t mu = 0; mu < u.size(); ++mu)
        for (std::size_t nu = 0; nu < v.size(); ++nu) out += d[mu][nu] * u[mu] * v[nu];
    return out;
}

TwoFormValues contraction_values(const SemiBasicOneForm& theta, const Semispray& S, const Point& p,
                                 double fd_step, bool horizontal) {
    Geo geo(S);
    int n = geo.n;
    Vec z = to_vec(p);
    ThetaField tf{theta, n};
    Mat d = numeric_dtheta(tf, z, fd_step);
    Mat K = horizontal ? geo.h_mat(z) : geo.j_mat(z);

    auto value = [&](const Vec& X, const Vec& Y) {
        double v = two_form_value(d, matvec(K, X), Y) + two_form_value(d, X, matvec(K, Y));
        if (horizontal) v -= two_form_value(d, X, Y);
        return v;
    };

    Vec sp = geo.spray(z);
    std::vector<Vec> deltas;
    for (int i = 0; i < n; ++i) deltas.push_back(geo.delta(i, z));

    TwoFormValues out;
    out.c_time.resize(n);
    out.c_space.assign(n, Vec(n, 0.0));
    for (int i = 0; i < n; ++i) out.c_time[i] = value(sp, deltas[i]);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) out.c_space[a][b] = a == b ? 0.0 : value(deltas[a], deltas[b]);
    return out;
}

}  // namespace

TwoFormValues contraction_oracle_dJ(const SemiBasicOneForm& theta, const Semispray& S,
                                    const Point& p, double fd_step) {
    return contraction_values(theta, S, p, fd_step, false);
}

TwoFormValues contraction_oracle_dh(const SemiBasicOneForm& theta, const Semispray& S,
                                    const Point& p, double fd_step) {
    return contraction_values(theta, S, p, fd_step, true);
}

ThreeFormValues d_R_oracle(const SemiBasicOneForm& theta, const Semispray& S, const Point& p,
                           double fd_step) {
    Geo geo(S);
    int n = geo.n;
    Vec z = to_vec(p);
    ThetaField tf{theta, n};
    Mat d = numeric_dtheta(tf, z, fd_step);
    Curvature R = curvature(S);
    Point pt = p;

    Vec sp = geo.spray(z);
    std::vector<Vec> deltas;
    for (int i = 0; i < n; ++i) deltas.push_back(geo.delta(i, z));

    // R(u,v) as a (vertical) natural-coordinate vector from the symbolic
    // components; theta o R vanishes identically, so d_R theta = i_R dtheta.
    auto curv = [&](const Vec& u, const Vec& v) {
        Geo::Adapted au = geo.decompose(u, z), av = geo.decompose(v, z);
        Vec w(geo.dim, 0.0);
        for (int k = 0; k < n; ++k) {
            double c = 0.0;
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b)
                    c += eval(R.r3[k][a][b], pt) * (au.dx[a] * av.dx[b] - av.dx[a] * au.dx[b]);
            for (int a = 0; a < n; ++a)
                c += eval(R.phi[k][a], pt) * (au.s * av.dx[a] - av.s * au.dx[a]);
            w[1 + n + k] = c;
        }
        return w;
    };

    auto value = [&](const Vec& X, const Vec& Y, const Vec& Z) {
        return two_form_value(d, curv(X, Y), Z) - two_form_value(d, curv(X, Z), Y) +
               two_form_value(d, curv(Y, Z), X);
    };

    ThreeFormValues out;
    out.c_time.assign(n, Vec(n, 0.0));
    out.c_space.assign(n, Mat(n, Vec(n, 0.0)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b) out.c_time[a][b] = value(sp, deltas[a], deltas[b]);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (a != b && b != c && a != c)
                    out.c_space[a][b][c] = value(deltas[a], deltas[b], deltas[c]);
    return out;
}

namespace {

// Value of a symbolic semi-basic 2-form on two natural-coordinate vectors.
double semibasic_two_form_value(const SemiBasicTwoForm& w, const Geo& geo, const Vec& z,
                                const Vec& u, const Vec& v) {
    Geo::Adapted au = geo.decompose(u, z), av = geo.decompose(v, z);
    Point p = to_point(z, geo.n);
    double out = 0.0;
    for (int i = 0; i < geo.n; ++i)
        out += eval(w.c_time[i], p) * (au.s * av.dx[i] - av.s * au.dx[i]);
    for (int a = 0; a < geo.n; ++a)
        for (int b = a + 1; b < geo.n; ++b)
            out += eval(w.c_space[a][b], p) * (au.dx[a] * av.dx[b] - av.dx[a] * au.dx[b]);
    return out;
}

}  // namespace

ThreeFormValues dJ_twoform_oracle(const SemiBasicTwoForm& w, const Semispray& S, const Point& p,
                                  double fd_step) {
    Geo geo(S);
    const int n = geo.n;
    const int dim = geo.dim;
    Vec z = to_vec(p);

    // natural components of w as functions of z
    auto omega = [&](int mu, int nu, const Vec& at) {
        Vec emu(dim, 0.0), enu(dim, 0.0);
        emu[mu] = 1.0;
        enu[nu] = 1.0;
        return semibasic_two_form_value(w, geo, at, emu, enu);
    };

    // d(omega) on natural triples by central differences
    std::vector<std::vector<Vec>> d3(dim, std::vector<Vec>(dim, Vec(dim, 0.0)));
    Vec zp = z, zm = z;
    auto deriv = [&](int mu, int a, int b) {
        zp[mu] = z[mu] + fd_step;
        zm[mu] = z[mu] - fd_step;
        double v = (omega(a, b, zp) - omega(a, b, zm)) / (2 * fd_step);
        zp[mu] = z[mu];
        zm[mu] = z[mu];
        return v;
    };
    for (int a = 0; a < dim; ++a)
        for (int b = a + 1; b < dim; ++b)
            for (int c = b + 1; c < dim; ++c) {
                double v = deriv(a, b, c) - deriv(b, a, c) + deriv(c, a, b);
                d3[a][b][c] = v;
                d3[a][c][b] = -v;
                d3[b][a][c] = -v;
                d3[b][c][a] = v;
                d3[c][a][b] = v;
                d3[c][b][a] = -v;
            }

    auto three_value = [&](const Vec& u, const Vec& v, const Vec& t) {
        double out = 0.0;
        for (int a = 0; a < dim; ++a) {
            if (u[a] == 0.0) continue;
            for (int b = 0; b < dim; ++b) {
                if (v[b] == 0.0) continue;
                for (int c = 0; c < dim; ++c) out += d3[a][b][c] * u[a] * v[b] * t[c];
            }
        }
        return out;
    };

    Mat J = geo.j_mat(z);
    auto ij_value = [&](const Vec& X, const Vec& Y, const Vec& Z) {
        return three_value(matvec(J, X), Y, Z) + three_value(X, matvec(J, Y), Z) +
               three_value(X, Y, matvec(J, Z));
    };

    Vec sp = geo.spray(z);
    std::vector<Vec> deltas;
    for (int i = 0; i < n; ++i) deltas.push_back(geo.delta(i, z));

    ThreeFormValues out;
    out.c_time.assign(n, Vec(n, 0.0));
    out.c_space.assign(n, Mat(n, Vec(n, 0.0)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b) out.c_time[a][b] = ij_value(sp, deltas[a], deltas[b]);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (a != b && b != c && a != c)
                    out.c_space[a][b][c] = ij_value(deltas[a], deltas[b], deltas[c]);
    return out;
}

TwoFormValues evaluate_twoform(const SemiBasicTwoForm& w, const Point& p) {
    int n = w.n();
    TwoFormValues out;
    out.c_time.resize(n);
    out.c_space.assign(n, Vec(n, 0.0));
    for (int i = 0; i < n; ++i) out.c_time[i] = eval(w.c_time[i], p);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) out.c_space[a][b] = eval(w.c_space[a][b], p);
    return out;
}

ThreeFormValues evaluate_threeform(const SemiBasicThreeForm& w, const Point& p) {
    int n = w.n();
    ThreeFormValues out;
    out.c_time.assign(n, Vec(n, 0.0));
    out.c_space.assign(n, Mat(n, Vec(n, 0.0)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) out.c_time[a][b] = eval(w.c_time[a][b], p);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) out.c_space[a][b][c] = eval(w.c_space[a][b][c], p);
    return out;
}

ThreeFormValues wedge_dt_values(const SemiBasicTwoForm& w, const Point& p) {
    // (w ^ dt)(S, delta_a, delta_b) = w(delta_a, delta_b); the purely spatial
    // triples vanish because dt annihilates every delta_i.
    int n = w.n();
    ThreeFormValues out;
    out.c_time.assign(n, Vec(n, 0.0));
    out.c_space.assign(n, Mat(n, Vec(n, 0.0)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b) out.c_time[a][b] = eval(w.c_space[a][b], p);
    return out;
}

double max_abs_difference(const TwoFormValues& a, const TwoFormValues& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.c_time.size(); ++i)
        m = std::max(m, std::abs(a.c_time[i] - b.c_time[i]));
    for (std::size_t i = 0; i < a.c_space.size(); ++i)
        for (std::size_t j = 0; j < a.c_space[i].size(); ++j)
            m = std::max(m, std::abs(a.c_space[i][j] - b.c_space[i][j]));
    return m;
}

double max_abs_difference(const ThreeFormValues& a, const ThreeFormValues& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.c_time.size(); ++i)
        for (std::size_t j = 0; j < a.c_time[i].size(); ++j)
            m = std::max(m, std::abs(a.c_time[i][j] - b.c_time[i][j]));
    for (std::size_t i = 0; i < a.c_space.size(); ++i)
        for (std::size_t j = 0; j < a.c_space[i].size(); ++j)
            for (std::size_t k = 0; k < a.c_space[i][j].size(); ++k)
                m = std::max(m, std::abs(a.c_space[i][j][k] - b.c_space[i][j][k]));
    return m;
}

}  // namespace sodehelm
