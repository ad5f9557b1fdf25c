// Exact rational arithmetic, half-integer Gamma values, and sparse
// polynomials in the spectral symbols k, n and lambda.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace sobtrace {

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
class Rat {
public:
    Rat() = default;
    Rat(long long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
    Rat(const BigInt& num, const BigInt& den);
    Rat(long long num, long long den) : Rat(BigInt(num), BigInt(den)) {}

    /// Parses "p", "-p" or "p/q".
    static Rat parse(const std::string& text);

    BigInt num() const { return boost::multiprecision::numerator(v_); }
    BigInt den() const { return boost::multiprecision::denominator(v_); }

    bool is_zero() const { return v_ == 0; }
    bool is_integer() const { return den() == 1; }
    int sign() const { return v_.sign(); }
    double to_double() const { return v_.convert_to<double>(); }
    std::string str() const;

    Rat operator-() const { return Rat(-v_); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

private:
    explicit Rat(boost::multiprecision::cpp_rational v) : v_(std::move(v)) {}
    boost::multiprecision::cpp_rational v_;
};

Rat pow(const Rat& base, int exponent);
Rat factorial(unsigned m);

/// x (x+1) ... (x+m-1); 1 when m == 0.
Rat pochhammer(const Rat& x, unsigned m);

/// Exact q * sqrt(pi)^e.
struct HalfGamma {
    Rat rational_part;
    int sqrt_pi_exponent = 0;

    double to_double() const;
    friend HalfGamma operator*(const HalfGamma& a, const HalfGamma& b) {
        return {a.rational_part * b.rational_part, a.sqrt_pi_exponent + b.sqrt_pi_exponent};
    }
    friend HalfGamma operator/(const HalfGamma& a, const HalfGamma& b) {
        return {a.rational_part / b.rational_part, a.sqrt_pi_exponent - b.sqrt_pi_exponent};
    }
    friend bool operator==(const HalfGamma& a, const HalfGamma& b) {
        return a.rational_part == b.rational_part && a.sqrt_pi_exponent == b.sqrt_pi_exponent;
    }
};

/// Gamma(x) for x a positive integer or half-integer. Throws otherwise.
HalfGamma gamma_half(const Rat& x);

/// The symbols a RationalPoly may carry.
enum class Var : int { k = 0, n = 1, lambda = 2 };

/// Sparse multivariate polynomial over Q in (k, n, lambda). Terms are kept
/// in total-degree-then-lex order and zero coefficients are never stored,
/// so structural equality is mathematical equality.
class RationalPoly {
public:
    using Exponents = std::array<int, 3>;

    struct TermOrder {
        bool operator()(const Exponents& a, const Exponents& b) const;
    };
    using TermMap = std::map<Exponents, Rat, TermOrder>;

    RationalPoly() = default;
    RationalPoly(const Rat& c);  // NOLINT(google-explicit-constructor)
    RationalPoly(long long c) : RationalPoly(Rat(c)) {}  // NOLINT(google-explicit-constructor)

    static RationalPoly var(Var v);
    static RationalPoly monomial(const Rat& c, Exponents e);

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rat constant_term() const;
    int degree() const;
    int degree_in(Var v) const;

    /// Coefficient of v^e, as a polynomial in the remaining symbols.
    RationalPoly coeff_in(Var v, int e) const;

    /// Substitutes the given values; unspecified symbols must not occur.
    Rat eval(const Rat& k, const Rat& n, const Rat& lambda = Rat(0)) const;
    double eval_double(double k, double n, double lambda = 0.0) const;

    /// Substitutes a polynomial for one symbol.
    RationalPoly subst(Var v, const RationalPoly& value) const;

    RationalPoly operator-() const;
    RationalPoly& operator+=(const RationalPoly& o);
    RationalPoly& operator-=(const RationalPoly& o);
    RationalPoly& operator*=(const RationalPoly& o);
    RationalPoly& operator*=(const Rat& c);

    friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
    friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
    friend RationalPoly operator*(RationalPoly a, const RationalPoly& b) { return a *= b; }
    friend RationalPoly operator*(RationalPoly a, const Rat& c) { return a *= c; }
    friend RationalPoly operator*(const Rat& c, RationalPoly a) { return a *= c; }
    friend bool operator==(const RationalPoly& a, const RationalPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const RationalPoly& a, const RationalPoly& b) { return !(a == b); }

    std::string str() const;

private:
    void add_term(const Exponents& e, const Rat& c);
    TermMap terms_;
};

RationalPoly pow(const RationalPoly& base, unsigned exponent);
bool poly_equal(const RationalPoly& p, const RationalPoly& q);

/// Quotient and remainder of p by d viewed as polynomials in v. The leading
/// coefficient of d in v must be a nonzero constant, so the division is
/// exact over Q[other symbols] and the remainder has v-degree below d's.
struct PolyDivision {
    RationalPoly quotient;
    RationalPoly remainder;
};
PolyDivision divide_in(const RationalPoly& p, const RationalPoly& d, Var v);

/// Writes p = sum_j c_j * base^j with every c_j free of v. Throws if the
/// expansion leaves a remainder that still depends on v.
std::vector<RationalPoly> expand_in_powers(const RationalPoly& p, const RationalPoly& base, Var v);

/// lambda_k(gamma) = prod_{j=0}^{2gamma-1} (k + (n - 2gamma)/2 + j).
RationalPoly gamma_ratio_poly(unsigned two_gamma);

/// K = k(n - 1 + k), the eigenvalue of minus the sphere Laplacian on Y_k.
RationalPoly casimir_poly();

/// Univariate polynomial with coefficients in a ring C, lowest degree first.
template <class C>
struct UPoly {
    std::vector<C> c;

    int degree() const { return static_cast<int>(c.size()) - 1; }
    C at(std::size_t i) const { return i < c.size() ? c[i] : C(0); }

    UPoly derivative() const {
        UPoly d;
        for (std::size_t i = 1; i < c.size(); ++i) d.c.push_back(c[i] * C(static_cast<long long>(i)));
        return d;
    }
    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        UPoly s;
        for (std::size_t i = 0; i < std::max(a.c.size(), b.c.size()); ++i) s.c.push_back(a.at(i) + b.at(i));
        return s;
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) {
        UPoly s;
        for (std::size_t i = 0; i < std::max(a.c.size(), b.c.size()); ++i) s.c.push_back(a.at(i) - b.at(i));
        return s;
    }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        UPoly p;
        if (a.c.empty() || b.c.empty()) return p;
        p.c.assign(a.c.size() + b.c.size() - 1, C(0));
        for (std::size_t i = 0; i < a.c.size(); ++i)
            for (std::size_t j = 0; j < b.c.size(); ++j) p.c[i + j] += a.c[i] * b.c[j];
        return p;
    }
    friend UPoly operator*(const C& s, UPoly a) {
        for (auto& x : a.c) x = s * x;
        return a;
    }
};

/// int_0^inf p(y) e^{-rate y} dy = sum_j p_j j! / rate^{j+1}.
Rat exppoly_integral(const UPoly<Rat>& p, const Rat& rate);
RationalPoly exppoly_integral(const UPoly<RationalPoly>& p, const Rat& rate);

}  // namespace sobtrace
