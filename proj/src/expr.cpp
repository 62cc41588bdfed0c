#include "sodehelm/expr.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

namespace sodehelm {

namespace {

int rank_of(NodeKind k) {
    switch (k) {
        case NodeKind::Number: return 0;
        case NodeKind::Variable: return 1;
        case NodeKind::Call: return 2;
        case NodeKind::Power: return 3;
        case NodeKind::Product: return 4;
        case NodeKind::Sum: return 5;
    }
    return 6;
}

int var_rank(VarKind k) { return k == VarKind::T ? 0 : (k == VarKind::X ? 1 : 2); }

long long checked_mul_ll(long long a, long long b) {
    __int128 r = static_cast<__int128>(a) * b;
    if (r > INT64_MAX || r < INT64_MIN) throw std::overflow_error("exponent overflow");
    return static_cast<long long>(r);
}

long long checked_add_ll(long long a, long long b) {
    __int128 r = static_cast<__int128>(a) + b;
    if (r > INT64_MAX || r < INT64_MIN) throw std::overflow_error("exponent overflow");
    return static_cast<long long>(r);
}

}  // namespace

Expr make_node(Node&& n) { return Expr(std::make_shared<const Node>(std::move(n))); }

static const Expr kZero = Expr::number(Rational(0));
static const Expr kOne = Expr::number(Rational(1));

Expr::Expr() : node_(kZero.node_ ? kZero.node_ : std::make_shared<const Node>()) {}

NodeKind Expr::kind() const { return node_->kind; }

bool Expr::is_literal_zero() const {
    return node_->kind == NodeKind::Number && node_->value.is_zero();
}

bool Expr::is_literal_one() const {
    return node_->kind == NodeKind::Number && node_->value.is_one();
}

Expr Expr::number(const Rational& r) {
    Node n;
    n.kind = NodeKind::Number;
    n.value = r;
    return make_node(std::move(n));
}

Expr Expr::variable(VarId v) {
    Node n;
    n.kind = NodeKind::Variable;
    n.var = v;
    return make_node(std::move(n));
}

int compare(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return 0;
    const Node& x = *a.node_;
    const Node& y = *b.node_;
    if (x.kind != y.kind) return rank_of(x.kind) < rank_of(y.kind) ? -1 : 1;
    switch (x.kind) {
        case NodeKind::Number:
            if (x.value == y.value) return 0;
            return x.value < y.value ? -1 : 1;
        case NodeKind::Variable: {
            int ra = var_rank(x.var.kind), rb = var_rank(y.var.kind);
            if (ra != rb) return ra < rb ? -1 : 1;
            if (x.var.kind == VarKind::T) return 0;
            return x.var.index < y.var.index ? -1 : (x.var.index > y.var.index ? 1 : 0);
        }
        case NodeKind::Call: {
            if (x.func != y.func) return static_cast<int>(x.func) < static_cast<int>(y.func) ? -1 : 1;
            return compare(x.args[0], y.args[0]);
        }
        case NodeKind::Power: {
            int c = compare(x.args[0], y.args[0]);
            if (c != 0) return c;
            return x.exponent < y.exponent ? -1 : (x.exponent > y.exponent ? 1 : 0);
        }
        case NodeKind::Product:
        case NodeKind::Sum: {
            std::size_t m = std::min(x.args.size(), y.args.size());
            for (std::size_t i = 0; i < m; ++i) {
                int c = compare(x.args[i], y.args[i]);
                if (c != 0) return c;
            }
            if (x.args.size() != y.args.size()) return x.args.size() < y.args.size() ? -1 : 1;
            return 0;
        }
    }
    return 0;
}

bool operator==(const Expr& a, const Expr& b) { return compare(a, b) == 0; }

namespace {

struct ExprLess {
    bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

// Splits a normalized term into (rational coefficient, non-constant part).
// The second component is nullopt for pure constants.
std::pair<Rational, std::optional<Expr>> split_coefficient(const Expr& term) {
    const Node& n = term.node();
    if (n.kind == NodeKind::Number) return {n.value, std::nullopt};
    if (n.kind == NodeKind::Product && n.args[0].is_number()) {
        std::vector<Expr> rest(n.args.begin() + 1, n.args.end());
        if (rest.size() == 1) return {n.args[0].node().value, rest[0]};
        Node p;
        p.kind = NodeKind::Product;
        p.args = std::move(rest);
        return {n.args[0].node().value, make_node(std::move(p))};
    }
    return {Rational(1), term};
}

}  // namespace

Expr Expr::sum(std::vector<Expr> terms) {
    std::vector<Expr> flat;
    flat.reserve(terms.size());
    for (auto& t : terms) {
        if (t.kind() == NodeKind::Sum) {
            for (const auto& a : t.node().args) flat.push_back(a);
        } else {
            flat.push_back(std::move(t));
        }
    }

    Rational constant(0);
    std::map<Expr, Rational, ExprLess> collected;
    for (const auto& t : flat) {
        auto [coeff, rest] = split_coefficient(t);
        if (!rest) {
            constant += coeff;
        } else {
            auto [it, fresh] = collected.emplace(*rest, coeff);
            if (!fresh) it->second += coeff;
        }
    }

    std::vector<Expr> out;
    if (!constant.is_zero()) out.push_back(number(constant));
    for (const auto& [key, coeff] : collected) {
        if (coeff.is_zero()) continue;
        if (coeff.is_one()) {
            out.push_back(key);
        } else {
            out.push_back(product({number(coeff), key}));
        }
    }
    if (out.empty()) return kZero;
    if (out.size() == 1) return out[0];
    Node n;
    n.kind = NodeKind::Sum;
    n.args = std::move(out);
    return make_node(std::move(n));
}

Expr Expr::product(std::vector<Expr> factors) {
    std::vector<Expr> flat;
    flat.reserve(factors.size());
    for (auto& f : factors) {
        if (f.kind() == NodeKind::Product) {
            for (const auto& a : f.node().args) flat.push_back(a);
        } else {
            flat.push_back(std::move(f));
        }
    }

    Rational coeff(1);
    std::map<Expr, long long, ExprLess> bases;
    for (const auto& f : flat) {
        const Node& n = f.node();
        if (n.kind == NodeKind::Number) {
            if (n.value.is_zero()) return kZero;
            coeff *= n.value;
        } else if (n.kind == NodeKind::Power) {
            auto [it, fresh] = bases.emplace(n.args[0], n.exponent);
            if (!fresh) it->second = checked_add_ll(it->second, n.exponent);
        } else {
            auto [it, fresh] = bases.emplace(f, 1);
            if (!fresh) it->second = checked_add_ll(it->second, 1);
        }
    }

    std::vector<Expr> out;
    for (const auto& [base, e] : bases) {
        if (e == 0) continue;
        Expr p = pow(base, e);
        if (p.is_number()) {
            coeff *= p.node().value;  // folded power of a constant base
        } else {
            out.push_back(p);
        }
    }
    if (coeff.is_zero()) return kZero;
    if (out.empty()) return number(coeff);
    if (!coeff.is_one()) out.insert(out.begin(), number(coeff));
    if (out.size() == 1) return out[0];
    Node n;
    n.kind = NodeKind::Product;
    n.args = std::move(out);
    return make_node(std::move(n));
}

Expr Expr::pow(const Expr& base, long long exponent) {
    if (exponent == 0) return kOne;
    if (exponent == 1) return base;
    const Node& b = base.node();
    if (b.kind == NodeKind::Number) {
        bool foldable = !(b.value.is_zero() && exponent < 0) && std::llabs(exponent) <= 512;
        if (foldable) {
            try {
                return number(b.value.pow(exponent));
            } catch (const std::overflow_error&) {
                // keep symbolic
            }
        }
    }
    if (b.kind == NodeKind::Power) return pow(b.args[0], checked_mul_ll(b.exponent, exponent));
    if (b.kind == NodeKind::Product) {
        std::vector<Expr> parts;
        parts.reserve(b.args.size());
        for (const auto& f : b.args) parts.push_back(pow(f, exponent));
        return product(std::move(parts));
    }
    Node n;
    n.kind = NodeKind::Power;
    n.args = {base};
    n.exponent = exponent;
    return make_node(std::move(n));
}

Expr Expr::call(FuncId f, const Expr& arg) {
    if (arg.is_number()) {
        const Rational& r = arg.node().value;
        switch (f) {
            case FuncId::Sin:
                if (r.is_zero()) return kZero;
                break;
            case FuncId::Cos:
                if (r.is_zero()) return kOne;
                break;
            case FuncId::Exp:
                if (r.is_zero()) return kOne;
                break;
            case FuncId::Ln:
                if (r.is_one()) return kZero;
                break;
            case FuncId::Sqrt: {
                if (r.sign() >= 0) {
                    auto isqrt = [](long long v) -> std::optional<long long> {
                        long long s = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(v))));
                        for (long long c = std::max(0LL, s - 2); c <= s + 2; ++c)
                            if (c * c == v) return c;
                        return std::nullopt;
                    };
                    auto sn = isqrt(r.num()), sd = isqrt(r.den());
                    if (sn && sd) return number(Rational(*sn, *sd));
                }
                break;
            }
        }
    }
    Node n;
    n.kind = NodeKind::Call;
    n.func = f;
    n.args = {arg};
    return make_node(std::move(n));
}

Expr simplify(const Expr& e) {
    const Node& n = e.node();
    switch (n.kind) {
        case NodeKind::Number:
        case NodeKind::Variable:
            return e;
        case NodeKind::Sum: {
            std::vector<Expr> parts;
            parts.reserve(n.args.size());
            for (const auto& a : n.args) parts.push_back(simplify(a));
            return Expr::sum(std::move(parts));
        }
        case NodeKind::Product: {
            std::vector<Expr> parts;
            parts.reserve(n.args.size());
            for (const auto& a : n.args) parts.push_back(simplify(a));
            return Expr::product(std::move(parts));
        }
        case NodeKind::Power:
            return Expr::pow(simplify(n.args[0]), n.exponent);
        case NodeKind::Call:
            return Expr::call(n.func, simplify(n.args[0]));
    }
    return e;
}

Expr diff(const Expr& e, VarId v) {
    const Node& n = e.node();
    switch (n.kind) {
        case NodeKind::Number:
            return Expr::number(Rational(0));
        case NodeKind::Variable:
            return n.var == v ? Expr::number(Rational(1)) : Expr::number(Rational(0));
        case NodeKind::Sum: {
            std::vector<Expr> parts;
            parts.reserve(n.args.size());
            for (const auto& a : n.args) parts.push_back(diff(a, v));
            return Expr::sum(std::move(parts));
        }
        case NodeKind::Product: {
            std::vector<Expr> terms;
            for (std::size_t i = 0; i < n.args.size(); ++i) {
                if (n.args[i].is_number()) continue;
                std::vector<Expr> factors = n.args;
                factors[i] = diff(n.args[i], v);
                terms.push_back(Expr::product(std::move(factors)));
            }
            return Expr::sum(std::move(terms));
        }
        case NodeKind::Power: {
            const Expr& base = n.args[0];
            return Expr::product(
                {Expr::integer(n.exponent), Expr::pow(base, n.exponent - 1), diff(base, v)});
        }
        case NodeKind::Call: {
            const Expr& a = n.args[0];
            Expr da = diff(a, v);
            switch (n.func) {
                case FuncId::Sin:
                    return Expr::product({Expr::call(FuncId::Cos, a), da});
                case FuncId::Cos:
                    return Expr::product({Expr::integer(-1), Expr::call(FuncId::Sin, a), da});
                case FuncId::Exp:
                    return Expr::product({Expr::call(FuncId::Exp, a), da});
                case FuncId::Ln:
                    return Expr::product({da, Expr::pow(a, -1)});
                case FuncId::Sqrt:
                    return Expr::product(
                        {Expr::number(Rational(1, 2)), da, Expr::pow(Expr::call(FuncId::Sqrt, a), -1)});
            }
        }
    }
    return Expr::number(Rational(0));
}

std::string to_string(const Point& p) {
    std::ostringstream os;
    os << "(t=" << p.t << ", x=(";
    for (std::size_t i = 0; i < p.x.size(); ++i) os << (i ? "," : "") << p.x[i];
    os << "), y=(";
    for (std::size_t i = 0; i < p.y.size(); ++i) os << (i ? "," : "") << p.y[i];
    os << "))";
    return os.str();
}

namespace {

[[noreturn]] void eval_fail(const Expr& e, const Point& p, const std::string& why) {
    throw EvalError("domain error: " + why + " in `" + to_string(e) + "` at " + to_string(p));
}

double ipow(double v, long long e) {
    bool inv = e < 0;
    unsigned long long k = inv ? static_cast<unsigned long long>(-(e + 1)) + 1ULL
                               : static_cast<unsigned long long>(e);
    double acc = 1.0, base = v;
    while (k) {
        if (k & 1ULL) acc *= base;
        k >>= 1;
        if (k) base *= base;
    }
    return inv ? 1.0 / acc : acc;
}

}  // namespace

double eval(const Expr& e, const Point& p) {
    const Node& n = e.node();
    double r = 0.0;
    switch (n.kind) {
        case NodeKind::Number:
            r = n.value.to_double();
            break;
        case NodeKind::Variable:
            switch (n.var.kind) {
                case VarKind::T:
                    r = p.t;
                    break;
                case VarKind::X:
                    if (n.var.index < 1 || static_cast<std::size_t>(n.var.index) > p.x.size())
                        eval_fail(e, p, "x index exceeds point dimension");
                    r = p.x[n.var.index - 1];
                    break;
                case VarKind::Y:
                    if (n.var.index < 1 || static_cast<std::size_t>(n.var.index) > p.y.size())
                        eval_fail(e, p, "y index exceeds point dimension");
                    r = p.y[n.var.index - 1];
                    break;
            }
            break;
        case NodeKind::Sum:
            for (const auto& a : n.args) r += eval(a, p);
            break;
        case NodeKind::Product:
            r = 1.0;
            for (const auto& a : n.args) r *= eval(a, p);
            break;
        case NodeKind::Power: {
            double b = eval(n.args[0], p);
            if (b == 0.0 && n.exponent < 0) eval_fail(e, p, "division by zero");
            r = ipow(b, n.exponent);
            break;
        }
        case NodeKind::Call: {
            double a = eval(n.args[0], p);
            switch (n.func) {
                case FuncId::Sin: r = std::sin(a); break;
                case FuncId::Cos: r = std::cos(a); break;
                case FuncId::Exp: r = std::exp(a); break;
                case FuncId::Ln:
                    if (a <= 0.0) eval_fail(e, p, "ln of non-positive value");
                    r = std::log(a);
                    break;
                case FuncId::Sqrt:
                    if (a < 0.0) eval_fail(e, p, "sqrt of negative value");
                    r = std::sqrt(a);
                    break;
            }
            break;
        }
    }
    if (!std::isfinite(r)) eval_fail(e, p, "non-finite result");
    return r;
}

std::vector<Point> sample_points(std::uint64_t seed, int count, double lo, double hi, int dimension) {
    std::mt19937_64 rng(seed);
    auto draw = [&]() {
        // top 53 bits -> uniform double in [0,1); avoids the
        // implementation-defined std::uniform_real_distribution
        double u = static_cast<double>(rng() >> 11) * 0x1p-53;
        return lo + (hi - lo) * u;
    };
    std::vector<Point> pts;
    pts.reserve(count);
    for (int k = 0; k < count; ++k) {
        Point p;
        p.t = draw();
        p.x.resize(dimension);
        p.y.resize(dimension);
        for (int i = 0; i < dimension; ++i) p.x[i] = draw();
        for (int i = 0; i < dimension; ++i) p.y[i] = draw();
        pts.push_back(std::move(p));
    }
    return pts;
}

ZeroTestResult zero_test(const Expr& e, int dimension, const ZeroTestConfig& cfg) {
    ZeroTestResult res;
    if (e.is_literal_zero()) {
        res.verdict = ZeroVerdict::IsZero;
        return res;
    }
    const Node& n = e.node();
    std::vector<Expr> summands;
    if (n.kind == NodeKind::Sum) {
        summands = n.args;
    } else {
        summands = {e};
    }

    // Point set fixed up front so the outcome is independent of evaluation order.
    auto pool = sample_points(cfg.seed, cfg.sample_count + cfg.max_resamples, cfg.box_lo,
                              cfg.box_hi, dimension);
    int good = 0;
    for (const auto& p : pool) {
        if (good >= cfg.sample_count) break;
        double value = 0.0, scale = 0.0;
        try {
            for (const auto& s : summands) {
                double v = eval(s, p);
                value += v;
                scale = std::max(scale, std::abs(v));
            }
        } catch (const EvalError&) {
            ++res.resamples_used;
            continue;
        }
        double bound = cfg.tolerance * std::max(1.0, scale);
        double scaled = std::abs(value) / std::max(1.0, scale);
        res.max_residual = std::max(res.max_residual, scaled);
        if (std::abs(value) > bound) {
            res.verdict = ZeroVerdict::NonZero;
            res.witness = p;
            return res;
        }
        ++good;
    }
    res.verdict = good >= cfg.sample_count ? ZeroVerdict::IsZero : ZeroVerdict::Inconclusive;
    return res;
}

bool is_zero(const Expr& e, int dimension, const ZeroTestConfig& cfg) {
    return zero_test(e, dimension, cfg).verdict == ZeroVerdict::IsZero;
}

ZeroVerdict zero_test_all(const std::vector<Expr>& items, int dimension, const ZeroTestConfig& cfg) {
    bool inconclusive = false;
    for (const auto& e : items) {
        switch (zero_test(e, dimension, cfg).verdict) {
            case ZeroVerdict::NonZero: return ZeroVerdict::NonZero;
            case ZeroVerdict::Inconclusive: inconclusive = true; break;
            case ZeroVerdict::IsZero: break;
        }
    }
    return inconclusive ? ZeroVerdict::Inconclusive : ZeroVerdict::IsZero;
}

}  // namespace sodehelm
