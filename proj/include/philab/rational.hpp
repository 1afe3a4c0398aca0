#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/rational_adaptor.hpp>
#include <optional>
#include <stdexcept>
#include <string>

namespace philab {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number, always in lowest terms with positive denominator.
/// All certification arithmetic in this library goes through this type;
/// floating point never touches a validity decision.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long long n) : v_(n) {}
    Rational(const BigInt& n) : v_(n) {}
    Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}
    Rational(const BigInt& num, const BigInt& den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        v_ = boost::multiprecision::cpp_rational(num);
        v_ /= boost::multiprecision::cpp_rational(den);
    }

    /// Parses "p/q" or a bare integer. Returns nullopt on malformed input
    /// (including decimals, which the file formats reject by design).
    static std::optional<Rational> parse(const std::string& text);

    BigInt num() const { return boost::multiprecision::numerator(v_); }
    BigInt den() const { return boost::multiprecision::denominator(v_); }

    bool is_zero() const { return v_ == 0; }
    bool is_negative() const { return v_ < 0; }
    bool is_integer() const { return den() == 1; }

    /// Renders as "p/q", or "p" when the denominator is 1.
    std::string str() const;

    /// Closest double; for display and heuristic parameter seeding only.
    double to_double() const { return v_.template convert_to<double>(); }

    BigInt floor() const;
    BigInt ceil() const;

    Rational operator-() const { Rational r; r.v_ = -v_; return r; }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.v_ == 0) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

private:
    boost::multiprecision::cpp_rational v_;
};

inline Rational abs(const Rational& r) { return r.is_negative() ? -r : r; }
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

BigInt gcd(BigInt a, BigInt b);
BigInt lcm(const BigInt& a, const BigInt& b);

/// x^k for integer k >= 0.
Rational pow(const Rational& x, unsigned k);

/// floor(sqrt(n)) for n >= 0, exact.
BigInt isqrt(const BigInt& n);

/// The simplest rational in [lo, hi]: minimal denominator, then minimal
/// numerator magnitude. Used to pick free construction parameters with
/// small denominators; the choice is then validated exactly downstream.
Rational simplest_in_interval(const Rational& lo, const Rational& hi);

/// The largest rational <= x with denominator <= max_den (Stern-Brocot walk).
Rational best_below_with_den(const Rational& x, const BigInt& max_den);

} // namespace philab
