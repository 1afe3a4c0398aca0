#include "philab/rational.hpp"

#include <boost/multiprecision/integer.hpp>

namespace philab {

std::optional<Rational> Rational::parse(const std::string& text) {
    if (text.empty()) return std::nullopt;
    auto parse_int = [](const std::string& s, BigInt& out) -> bool {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (std::size_t j = i; j < s.size(); ++j)
            if (s[j] < '0' || s[j] > '9') return false;
        out = BigInt(s);
        return true;
    };
    auto slash = text.find('/');
    BigInt num, den;
    if (slash == std::string::npos) {
        if (!parse_int(text, num)) return std::nullopt;
        return Rational(num, BigInt(1));
    }
    if (!parse_int(text.substr(0, slash), num)) return std::nullopt;
    if (!parse_int(text.substr(slash + 1), den)) return std::nullopt;
    if (den == 0) return std::nullopt;
    return Rational(num, den);
}

std::string Rational::str() const {
    std::string s = num().str();
    if (den() != 1) s += "/" + den().str();
    return s;
}

BigInt Rational::floor() const {
    BigInt q = num() / den();
    if (num() < 0 && q * den() != num()) --q;
    return q;
}

BigInt Rational::ceil() const {
    BigInt q = num() / den();
    if (num() > 0 && q * den() != num()) ++q;
    return q;
}

BigInt gcd(BigInt a, BigInt b) { return boost::multiprecision::gcd(a, b); }

BigInt lcm(const BigInt& a, const BigInt& b) {
    if (a == 0 || b == 0) return 0;
    BigInt g = gcd(a, b);
    BigInt r = (a / g) * b;
    return r < 0 ? BigInt(-r) : r;
}

Rational pow(const Rational& x, unsigned k) {
    Rational r(1);
    Rational base = x;
    while (k) {
        if (k & 1u) r *= base;
        base *= base;
        k >>= 1u;
    }
    return r;
}

BigInt isqrt(const BigInt& n) {
    if (n < 0) throw std::domain_error("isqrt of negative");
    return boost::multiprecision::sqrt(n);
}

Rational simplest_in_interval(const Rational& lo, const Rational& hi) {
    if (hi < lo) throw std::domain_error("simplest_in_interval: empty interval");
    // Stern-Brocot style recursion on non-negative endpoints.
    struct Rec {
        static Rational go(const Rational& a, const Rational& b) {
            BigInt fa = a.ceil();
            if (Rational(fa) <= b) return Rational(fa);
            BigInt fl = a.floor();
            Rational a2 = Rational(1) / (b - Rational(fl));
            Rational b2 = Rational(1) / (a - Rational(fl));
            Rational inner = go(a2, b2);
            return Rational(fl) + Rational(1) / inner;
        }
    };
    if (lo <= Rational(0) && Rational(0) <= hi) return Rational(0);
    if (hi < Rational(0)) return -Rec::go(-hi, -lo);
    return Rec::go(lo, hi);
}

Rational best_below_with_den(const Rational& x, const BigInt& max_den) {
    if (x.den() <= max_den) return x;
    // Walk the Stern-Brocot tree keeping the best lower approximation.
    BigInt pl = 0, ql = 1, pr = 1, qr = 0; // left <= x < right
    // Shift x into [0,1) first.
    BigInt whole = x.floor();
    Rational f = x - Rational(whole);
    Rational best(0);
    while (ql + qr <= max_den) {
        BigInt pm = pl + pr, qm = ql + qr;
        Rational mid(pm, qm);
        if (mid <= f) {
            best = mid;
            pl = pm;
            ql = qm;
        } else {
            pr = pm;
            qr = qm;
        }
    }
    return Rational(whole) + best;
}

} // namespace philab
