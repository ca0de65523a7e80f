#include "orbindex/cyclotomic.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <sstream>

namespace orbindex {

Rational rat_parse(const std::string& s) {
    if (s.empty()) throw parse_error("empty rational literal");
    size_t i = 0;
    bool neg = false;
    if (s[i] == '-' || s[i] == '+') {
        neg = (s[i] == '-');
        ++i;
    }
    std::string num, den;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) num += s[i++];
    if (num.empty()) throw parse_error("bad rational literal: " + s);
    if (i < s.size() && s[i] == '/') {
        ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) den += s[i++];
        if (den.empty()) throw parse_error("bad rational literal: " + s);
    }
    if (i != s.size()) throw parse_error("bad rational literal: " + s);
    Rational r(Integer(num), den.empty() ? Integer(1) : Integer(den));
    if (r.get_den() == 0) throw domain_error("rational with zero denominator: " + s);
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

long Cyclotomic::phi(long n) {
    long result = n;
    long m = n;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            result -= result / p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

namespace {

// poly arithmetic on dense rational coefficient vectors (lowest degree first)

void poly_trim(std::vector<Rational>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::vector<Rational> poly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Rational> c(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    poly_trim(c);
    return c;
}

// divides a by monic b, returns quotient, leaves remainder in a
std::vector<Rational> poly_divmod_monic(std::vector<Rational>& a, const std::vector<Rational>& b) {
    poly_trim(a);
    if (b.empty() || b.back() != 1) throw domain_error("division by non-monic polynomial");
    const size_t db = b.size() - 1;
    std::vector<Rational> q;
    if (a.size() > db) q.assign(a.size() - db, Rational(0));
    while (a.size() > db) {
        Rational lead = a.back();
        size_t shift = a.size() - 1 - db;
        q[shift] = lead;
        for (size_t j = 0; j < b.size(); ++j) a[shift + j] -= lead * b[j];
        poly_trim(a);
    }
    return q;
}

std::map<long, std::vector<Rational>> g_cyclo_cache;
std::mutex g_cyclo_mutex;

std::vector<Rational> compute_cyclotomic(long n);

const std::vector<Rational>& cyclo_cached(long n) {
    std::lock_guard<std::mutex> lock(g_cyclo_mutex);
    auto it = g_cyclo_cache.find(n);
    if (it == g_cyclo_cache.end()) {
        auto poly = compute_cyclotomic(n);
        it = g_cyclo_cache.emplace(n, std::move(poly)).first;
    }
    return it->second;
}

std::vector<Rational> compute_cyclotomic(long n) {
    // x^n - 1 divided by the product of Phi_d over proper divisors d of n
    std::vector<Rational> a(n + 1, Rational(0));
    a[0] = -1;
    a[n] = 1;
    for (long d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        std::vector<Rational> phi_d;
        {
            // cannot call cyclo_cached here (mutex already held); recurse directly
            auto it = g_cyclo_cache.find(d);
            if (it != g_cyclo_cache.end())
                phi_d = it->second;
            else {
                phi_d = compute_cyclotomic(d);
                g_cyclo_cache.emplace(d, phi_d);
            }
        }
        auto q = poly_divmod_monic(a, phi_d);
        if (!a.empty()) throw domain_error("cyclotomic polynomial division left a remainder");
        a = std::move(q);
    }
    return a;
}

}  // namespace

const std::vector<Rational>& Cyclotomic::cyclotomic_poly(long n) { return cyclo_cached(n); }

void Cyclotomic::reduce_mod_phi(std::vector<Rational>& poly) const {
    const auto& phi_l = cyclotomic_poly(level_);
    poly_divmod_monic(poly, phi_l);
}

Cyclotomic Cyclotomic::from_poly(long level, std::vector<Rational> poly) {
    Cyclotomic out;
    out.level_ = level;
    const auto& phi_l = cyclotomic_poly(level);
    poly_divmod_monic(poly, phi_l);
    poly.resize(static_cast<size_t>(phi(level)), Rational(0));
    out.c_ = std::move(poly);
    return out;
}

Cyclotomic Cyclotomic::root(long level, long e) {
    if (level < 1) throw domain_error("cyclotomic level must be positive");
    long r = ((e % level) + level) % level;
    std::vector<Rational> poly(static_cast<size_t>(r) + 1, Rational(0));
    poly[static_cast<size_t>(r)] = 1;
    return from_poly(level, std::move(poly));
}

bool Cyclotomic::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool Cyclotomic::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rational Cyclotomic::rational_value() const {
    if (!is_rational()) throw domain_error("cyclotomic value is not rational: " + str());
    return c_[0];
}

Cyclotomic Cyclotomic::lifted(long m) const {
    if (m == level_) return *this;
    if (m % level_ != 0) throw domain_error("cannot lift cyclotomic level: not a multiple");
    long step = m / level_;
    std::vector<Rational> poly(static_cast<size_t>(step) * (c_.size() - 1) + 1, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) poly[i * static_cast<size_t>(step)] = c_[i];
    return from_poly(m, std::move(poly));
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic out = *this;
    for (auto& x : out.c_) x = -x;
    return out;
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
    long m = lcm_long(level_, o.level_);
    Cyclotomic a = lifted(m), b = o.lifted(m);
    for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
    return a;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
    long m = lcm_long(level_, o.level_);
    Cyclotomic a = lifted(m), b = o.lifted(m);
    std::vector<Rational> pa(a.c_.begin(), a.c_.end()), pb(b.c_.begin(), b.c_.end());
    poly_trim(pa);
    poly_trim(pb);
    return from_poly(m, poly_mul(pa, pb));
}

Cyclotomic Cyclotomic::operator*(const Rational& r) const {
    Cyclotomic out = *this;
    for (auto& x : out.c_) x *= r;
    return out;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
    long m = lcm_long(level_, o.level_);
    return lifted(m).c_ == o.lifted(m).c_;
}

Cyclotomic Cyclotomic::inverse() const {
    if (is_zero()) throw domain_error("inverse of zero cyclotomic value");
    if (is_rational()) return Cyclotomic(rat(1) / c_[0]);
    // extended euclid: u * this + v * Phi_L = 1 in Q[x]
    std::vector<Rational> r0(cyclotomic_poly(level_));
    std::vector<Rational> r1(c_.begin(), c_.end());
    poly_trim(r1);
    std::vector<Rational> s0{}, s1{Rational(1)};  // coefficients of `this`
    while (true) {
        poly_trim(r1);
        if (r1.empty()) throw domain_error("cyclotomic inverse: unexpected common factor");
        if (r1.size() == 1) break;  // nonzero constant
        // make r1 monic for division, track the scale
        Rational lead = r1.back();
        std::vector<Rational> r1m = r1;
        for (auto& x : r1m) x /= lead;
        std::vector<Rational> rem = r0;
        auto q = poly_divmod_monic(rem, r1m);
        for (auto& x : q) x /= lead;  // quotient w.r.t. original r1
        // r0 - q*r1 = rem ; new pair (r1, rem), s-chain follows
        std::vector<Rational> qs = poly_mul(q, s1);
        std::vector<Rational> s2 = s0;
        s2.resize(std::max(s2.size(), qs.size()), Rational(0));
        for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
        poly_trim(s2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    Rational c = r1[0];
    for (auto& x : s1) x /= c;
    return from_poly(level_, std::move(s1));
}

Cyclotomic Cyclotomic::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Cyclotomic acc(rat(1));
    Cyclotomic b = *this;
    for (long k = e; k > 0; k >>= 1) {
        if (k & 1) acc *= b;
        b *= b;
    }
    return acc;
}

Cyclotomic Cyclotomic::conj() const {
    std::vector<Rational> poly(static_cast<size_t>(level_), Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        long e = (level_ - static_cast<long>(i)) % level_;
        poly[static_cast<size_t>(e)] += c_[i];
    }
    return from_poly(level_, std::move(poly));
}

long Cyclotomic::root_order() const {
    Cyclotomic acc = *this;
    const Cyclotomic one(rat(1));
    for (long k = 1; k <= 2 * level_ + 4; ++k) {
        if (acc == one) return k;
        acc *= *this;
    }
    return 0;
}

std::string Cyclotomic::str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        Rational v = c_[i];
        if (first) {
            if (v < 0) {
                os << "-";
                v = -v;
            }
            first = false;
        } else {
            if (v < 0) {
                os << " - ";
                v = -v;
            } else {
                os << " + ";
            }
        }
        bool unit = (v == 1) && i > 0;
        if (!unit) os << rat_str(v);
        if (i > 0) {
            if (!unit) os << "*";
            os << "z";
            if (i > 1) os << "^" << i;
        }
    }
    if (first) return "0";
    return os.str();
}

namespace {

// minimal recursive-descent parser for cyclotomic scalar expressions:
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' int)?
//   atom   := rational | 'zeta' '(' int ')' | '(' expr ')' | '-' atom
struct ScalarParser {
    const std::string& s;
    size_t pos = 0;

    explicit ScalarParser(const std::string& src) : s(src) {}

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    long integer() {
        skip();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw parse_error("expected integer at position " + std::to_string(start) + " in '" + s + "'");
        return std::stol(s.substr(start, pos - start));
    }

    Cyclotomic expr() {
        Cyclotomic v = term();
        while (true) {
            skip();
            if (eat('+'))
                v += term();
            else if (eat('-'))
                v -= term();
            else
                return v;
        }
    }
    Cyclotomic term() {
        Cyclotomic v = factor();
        while (true) {
            skip();
            if (eat('*'))
                v *= factor();
            else
                return v;
        }
    }
    Cyclotomic factor() {
        Cyclotomic v = atom();
        skip();
        if (eat('^')) {
            long e = integer();
            v = v.pow(e);
        }
        return v;
    }
    Cyclotomic atom() {
        skip();
        if (pos >= s.size()) throw parse_error("unexpected end of scalar expression: '" + s + "'");
        if (eat('-')) return -atom();
        if (eat('(')) {
            Cyclotomic v = expr();
            if (!eat(')')) throw parse_error("missing ')' in '" + s + "'");
            return v;
        }
        if (s.compare(pos, 4, "zeta") == 0) {
            pos += 4;
            if (!eat('(')) throw parse_error("expected '(' after zeta in '" + s + "'");
            long n = integer();
            if (!eat(')')) throw parse_error("missing ')' after zeta level in '" + s + "'");
            if (n < 1) throw domain_error("zeta level must be positive");
            long e = 1;
            skip();
            if (eat('^')) e = integer();
            return Cyclotomic::root(n, e);
        }
        // rational literal p or p/q
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw parse_error("unexpected character at position " + std::to_string(pos) + " in '" + s + "'");
        std::string lit = s.substr(start, pos - start);
        skip();
        if (pos < s.size() && s[pos] == '/') {
            // only treat as fraction if followed by digits
            size_t save = pos;
            ++pos;
            skip();
            size_t dstart = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (pos == dstart) {
                pos = save;
            } else {
                lit += "/" + s.substr(dstart, pos - dstart);
            }
        }
        return Cyclotomic(rat_parse(lit));
    }
};

}  // namespace

Cyclotomic cyclo_parse(const std::string& s) {
    ScalarParser p(s);
    Cyclotomic v = p.expr();
    p.skip();
    if (p.pos != s.size()) throw parse_error("trailing characters in scalar expression: '" + s + "'");
    return v;
}

}  // namespace orbindex
