#pragma once

#include "sodehelm/rational.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sodehelm {

// Coordinates on the first jet bundle: t, x^1..x^n, y^1..y^n.
enum class VarKind { T, X, Y };

struct VarId {
    VarKind kind = VarKind::T;
    int index = 0;  // 1-based for X/Y, unused for T

    static VarId t() { return {VarKind::T, 0}; }
    static VarId x(int i) { return {VarKind::X, i}; }
    static VarId y(int i) { return {VarKind::Y, i}; }

    friend bool operator==(const VarId& a, const VarId& b) {
        return a.kind == b.kind && (a.kind == VarKind::T || a.index == b.index);
    }
    friend bool operator!=(const VarId& a, const VarId& b) { return !(a == b); }
};

enum class NodeKind { Number, Variable, Sum, Product, Power, Call };
enum class FuncId { Sin, Cos, Exp, Ln, Sqrt };

struct Node;

// Immutable symbolic expression. Every construction path runs the same
// normalization (constant folding, flattening, like-term collection), so
// structural equality doubles as a cheap syntactic-identity test.
class Expr {
public:
    Expr();  // the zero expression

    static Expr number(const Rational& r);
    static Expr integer(long long v) { return number(Rational(v)); }
    static Expr variable(VarId v);
    static Expr sum(std::vector<Expr> terms);
    static Expr product(std::vector<Expr> factors);
    static Expr pow(const Expr& base, long long exponent);
    static Expr call(FuncId f, const Expr& arg);

    Expr operator+(const Expr& o) const { return sum({*this, o}); }
    Expr operator-(const Expr& o) const { return sum({*this, product({integer(-1), o})}); }
    Expr operator*(const Expr& o) const { return product({*this, o}); }
    Expr operator-() const { return product({integer(-1), *this}); }

    const Node& node() const { return *node_; }
    NodeKind kind() const;
    bool is_number() const { return kind() == NodeKind::Number; }
    bool is_literal_zero() const;
    bool is_literal_one() const;

    friend bool operator==(const Expr& a, const Expr& b);
    friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

private:
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
    friend int compare(const Expr&, const Expr&);
    friend Expr make_node(Node&&);
};

struct Node {
    NodeKind kind = NodeKind::Number;
    Rational value;               // Number
    VarId var;                    // Variable
    std::vector<Expr> args;       // Sum/Product (>=2), Call (1), Power (1: base)
    long long exponent = 0;       // Power
    FuncId func = FuncId::Sin;    // Call
};

// Deterministic total order used for canonical argument sorting.
int compare(const Expr& a, const Expr& b);

struct Point {
    double t = 0.0;
    std::vector<double> x;
    std::vector<double> y;
};

std::string to_string(const Point& p);

class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
    std::size_t position;
};

// Text DSL. Precedence, loosest binding first: `+ -`, `* /`, `^` (integer
// exponent, right-associative), unary minus. Identifiers: t, x1..xn, y1..yn;
// functions sin, cos, exp, ln, sqrt; decimal and rational literals.
Expr parse(const std::string& text, int dimension);
std::string to_string(const Expr& e);

Expr diff(const Expr& e, VarId v);
double eval(const Expr& e, const Point& p);
Expr simplify(const Expr& e);

struct ZeroTestConfig {
    int sample_count = 40;
    double box_lo = 0.1;
    double box_hi = 1.1;
    double tolerance = 1e-9;
    std::uint64_t seed = 1;
    int max_resamples = 10;
};

enum class ZeroVerdict { IsZero, NonZero, Inconclusive };

struct ZeroTestResult {
    ZeroVerdict verdict = ZeroVerdict::Inconclusive;
    double max_residual = 0.0;       // largest scaled residual seen
    std::optional<Point> witness;    // a point where the expression is nonzero
    int resamples_used = 0;
};

// Probabilistic zero test: |e(p)| <= tol * max(1, scale(e,p)) at every sample
// point, where scale is the largest summand magnitude. Deterministic for a
// fixed (seed, dimension). Points that hit evaluation domain errors are
// replaced, up to max_resamples; running out yields Inconclusive.
ZeroTestResult zero_test(const Expr& e, int dimension, const ZeroTestConfig& cfg);
bool is_zero(const Expr& e, int dimension, const ZeroTestConfig& cfg);

// Combined verdict over a family of expressions: any NonZero dominates,
// otherwise any Inconclusive, otherwise IsZero.
ZeroVerdict zero_test_all(const std::vector<Expr>& items, int dimension, const ZeroTestConfig& cfg);

// Seeded uniform samples from [lo, hi]^(2n+1), drawn in the order
// t, x^1..x^n, y^1..y^n. Bit-reproducible across platforms.
std::vector<Point> sample_points(std::uint64_t seed, int count, double lo, double hi, int dimension);

}  // namespace sodehelm
