#include "sobtrace/exact.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace sobtrace {

Rat::Rat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("Rat: zero denominator");
    // cpp_rational rejects negative denominators; carry the sign on the numerator.
    v_ = den < 0 ? boost::multiprecision::cpp_rational(-num, -den) : boost::multiprecision::cpp_rational(num, den);
}

Rat Rat::parse(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rat(BigInt(text), BigInt(1));
        return Rat(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
    } catch (const std::domain_error&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("not a rational number: '" + text + "'");
    }
}

std::string Rat::str() const {
    if (is_integer()) return num().str();
    return num().str() + "/" + den().str();
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw std::domain_error("Rat: division by zero");
    v_ /= o.v_;
    return *this;
}

Rat pow(const Rat& base, int exponent) {
    if (exponent < 0) return Rat(1) / pow(base, -exponent);
    Rat result(1);
    for (int i = 0; i < exponent; ++i) result *= base;
    return result;
}

Rat factorial(unsigned m) { return pochhammer(Rat(1), m); }

Rat pochhammer(const Rat& x, unsigned m) {
    Rat result(1);
    for (unsigned j = 0; j < m; ++j) result *= x + Rat(j);
    return result;
}

double HalfGamma::to_double() const {
    return rational_part.to_double() * std::pow(std::sqrt(std::numbers::pi), sqrt_pi_exponent);
}

HalfGamma gamma_half(const Rat& x) {
    Rat twice = x * Rat(2);
    if (x.sign() <= 0 || !twice.is_integer())
        throw std::domain_error("gamma_half: argument must be a positive integer or half-integer, got " + x.str());
    if (x.is_integer()) {
        // Gamma(x) = (x-1)!
        return {pochhammer(Rat(1), static_cast<unsigned>(x.num()) - 1), 0};
    }
    // Gamma(x) = (1/2)_(x-1/2) sqrt(pi)
    auto steps = static_cast<unsigned>((x - Rat(1, 2)).num());
    return {pochhammer(Rat(1, 2), steps), 1};
}

// ---------------------------------------------------------------------------
// RationalPoly

namespace {

int total_degree(const RationalPoly::Exponents& e) { return e[0] + e[1] + e[2]; }

}  // namespace

bool RationalPoly::TermOrder::operator()(const Exponents& a, const Exponents& b) const {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
}

RationalPoly::RationalPoly(const Rat& c) {
    if (!c.is_zero()) terms_.emplace(Exponents{0, 0, 0}, c);
}

RationalPoly RationalPoly::var(Var v) {
    Exponents e{0, 0, 0};
    e[static_cast<int>(v)] = 1;
    return monomial(Rat(1), e);
}

RationalPoly RationalPoly::monomial(const Rat& c, Exponents e) {
    RationalPoly p;
    p.add_term(e, c);
    return p;
}

void RationalPoly::add_term(const Exponents& e, const Rat& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

bool RationalPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

Rat RationalPoly::constant_term() const {
    auto it = terms_.find(Exponents{0, 0, 0});
    return it == terms_.end() ? Rat(0) : it->second;
}

int RationalPoly::degree() const { return terms_.empty() ? -1 : total_degree(terms_.begin()->first); }

int RationalPoly::degree_in(Var v) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<int>(v)]);
    return d;
}

RationalPoly RationalPoly::coeff_in(Var v, int power) const {
    RationalPoly out;
    int idx = static_cast<int>(v);
    for (const auto& [e, c] : terms_) {
        if (e[idx] != power) continue;
        Exponents f = e;
        f[idx] = 0;
        out.add_term(f, c);
    }
    return out;
}

Rat RationalPoly::eval(const Rat& k, const Rat& n, const Rat& lambda) const {
    const std::array<const Rat*, 3> vals{&k, &n, &lambda};
    Rat sum(0);
    for (const auto& [e, c] : terms_) {
        Rat term = c;
        for (int i = 0; i < 3; ++i)
            if (e[i] != 0) term *= pow(*vals[i], e[i]);
        sum += term;
    }
    return sum;
}

double RationalPoly::eval_double(double k, double n, double lambda) const {
    const std::array<double, 3> vals{k, n, lambda};
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
        double term = c.to_double();
        for (int i = 0; i < 3; ++i)
            if (e[i] != 0) term *= std::pow(vals[i], e[i]);
        sum += term;
    }
    return sum;
}

RationalPoly RationalPoly::subst(Var v, const RationalPoly& value) const {
    int idx = static_cast<int>(v);
    RationalPoly out;
    for (const auto& [e, c] : terms_) {
        Exponents rest = e;
        rest[idx] = 0;
        out += monomial(c, rest) * pow(value, static_cast<unsigned>(e[idx]));
    }
    return out;
}

RationalPoly RationalPoly::operator-() const {
    RationalPoly out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

RationalPoly& RationalPoly::operator*=(const RationalPoly& o) {
    RationalPoly out;
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_)
            out.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    terms_ = std::move(out.terms_);
    return *this;
}

RationalPoly& RationalPoly::operator*=(const Rat& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, coeff] : terms_) coeff *= c;
    return *this;
}

std::string RationalPoly::str() const {
    if (terms_.empty()) return "0";
    static const char* names[3] = {"k", "n", "lambda"};
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Rat mag = c.sign() < 0 ? -c : c;
        if (first) {
            if (c.sign() < 0) os << "-";
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        first = false;
        bool has_vars = total_degree(e) > 0;
        bool unit = mag == Rat(1);
        if (!unit || !has_vars) os << mag.str();
        bool need_star = !unit;
        for (int i = 0; i < 3; ++i) {
            if (e[i] == 0) continue;
            if (need_star) os << "*";
            os << names[i];
            if (e[i] > 1) os << "^" << e[i];
            need_star = true;
        }
    }
    return os.str();
}

RationalPoly pow(const RationalPoly& base, unsigned exponent) {
    RationalPoly result(1);
    for (unsigned i = 0; i < exponent; ++i) result *= base;
    return result;
}

bool poly_equal(const RationalPoly& p, const RationalPoly& q) { return p == q; }

PolyDivision divide_in(const RationalPoly& p, const RationalPoly& d, Var v) {
    int dd = d.degree_in(v);
    if (dd < 0) throw std::domain_error("divide_in: zero divisor");
    RationalPoly lead = d.coeff_in(v, dd);
    if (!lead.is_constant()) throw std::domain_error("divide_in: leading coefficient of divisor is not constant");
    Rat inv = Rat(1) / lead.constant_term();
    RationalPoly::Exponents shift{0, 0, 0};

    PolyDivision out{RationalPoly(), p};
    for (int dr = out.remainder.degree_in(v); dr >= dd; dr = out.remainder.degree_in(v)) {
        shift[static_cast<int>(v)] = dr - dd;
        RationalPoly step = out.remainder.coeff_in(v, dr) * RationalPoly::monomial(inv, shift);
        out.quotient += step;
        out.remainder -= step * d;
    }
    return out;
}

std::vector<RationalPoly> expand_in_powers(const RationalPoly& p, const RationalPoly& base, Var v) {
    std::vector<RationalPoly> digits;
    RationalPoly rest = p;
    while (!rest.is_zero()) {
        PolyDivision qr = divide_in(rest, base, v);
        if (qr.remainder.degree_in(v) > 0)
            throw std::domain_error("expand_in_powers: remainder depends on the expansion variable: " +
                                    qr.remainder.str());
        digits.push_back(qr.remainder);
        rest = qr.quotient;
    }
    return digits;
}

RationalPoly gamma_ratio_poly(unsigned two_gamma) {
    RationalPoly k = RationalPoly::var(Var::k);
    RationalPoly n = RationalPoly::var(Var::n);
    RationalPoly shift = n * Rat(1, 2) - RationalPoly(Rat(static_cast<long long>(two_gamma), 2));
    RationalPoly result(1);
    for (unsigned j = 0; j < two_gamma; ++j) result *= k + shift + RationalPoly(Rat(j));
    return result;
}

RationalPoly casimir_poly() {
    RationalPoly k = RationalPoly::var(Var::k);
    RationalPoly n = RationalPoly::var(Var::n);
    return k * (n - RationalPoly(1) + k);
}

Rat exppoly_integral(const UPoly<Rat>& p, const Rat& rate) {
    if (rate.sign() <= 0) throw std::domain_error("exppoly_integral: rate must be positive");
    Rat sum(0);
    Rat moment = Rat(1) / rate;  // j! / rate^{j+1}
    for (std::size_t j = 0; j < p.c.size(); ++j) {
        sum += p.c[j] * moment;
        moment *= Rat(static_cast<long long>(j + 1)) / rate;
    }
    return sum;
}

RationalPoly exppoly_integral(const UPoly<RationalPoly>& p, const Rat& rate) {
    if (rate.sign() <= 0) throw std::domain_error("exppoly_integral: rate must be positive");
    RationalPoly sum;
    Rat moment = Rat(1) / rate;
    for (std::size_t j = 0; j < p.c.size(); ++j) {
        sum += p.c[j] * moment;
        moment *= Rat(static_cast<long long>(j + 1)) / rate;
    }
    return sum;
}

}  // namespace sobtrace
