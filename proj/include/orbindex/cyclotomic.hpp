#pragma once

#include <map>
#include <string>
#include <vector>

#include "orbindex/rational.hpp"

namespace orbindex {

// Element of the cyclotomic field Q(zeta_L), stored in the power basis
// zeta^0 .. zeta^{phi(L)-1} reduced modulo the L-th cyclotomic polynomial.
// Values are immutable after construction; all arithmetic is exact.
class Cyclotomic {
  public:
    Cyclotomic() : level_(1), c_(1, Rational(0)) {}
    explicit Cyclotomic(const Rational& r) : level_(1), c_(1, r) {}
    explicit Cyclotomic(long v) : level_(1), c_(1, rat(v)) {}

    // zeta_L^e, reduced. L >= 1, e any integer.
    static Cyclotomic root(long level, long e);

    long level() const { return level_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    // Requires is_rational().
    Rational rational_value() const;
    bool is_one() const { return is_rational() && c_[0] == 1; }

    // Re-express in Q(zeta_M); requires level() | M.
    Cyclotomic lifted(long m) const;

    Cyclotomic operator-() const;
    Cyclotomic operator+(const Cyclotomic& o) const;
    Cyclotomic operator-(const Cyclotomic& o) const;
    Cyclotomic operator*(const Cyclotomic& o) const;
    Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
    Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
    Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

    Cyclotomic operator*(const Rational& r) const;
    Cyclotomic operator/(const Rational& r) const { return *this * (rat(1) / r); }

    bool operator==(const Cyclotomic& o) const;
    bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

    // Multiplicative inverse; throws domain_error on zero.
    Cyclotomic inverse() const;
    Cyclotomic pow(long e) const;

    // Complex conjugation zeta -> zeta^{-1}. A ring automorphism.
    Cyclotomic conj() const;

    // Multiplicative order when the value is a root of unity, else 0.
    long root_order() const;

    // "a0 + a1*z + a2*z^2 + ..." with rational coefficients; bare rationals
    // print without z. Deterministic; this is the CLI output contract.
    std::string str() const;

    static long phi(long n);
    // Coefficients of the n-th cyclotomic polynomial (degree phi(n), monic).
    static const std::vector<Rational>& cyclotomic_poly(long n);

  private:
    long level_;
    std::vector<Rational> c_;  // size phi(level_)

    void reduce_mod_phi(std::vector<Rational>& poly) const;
    static Cyclotomic from_poly(long level, std::vector<Rational> poly);
    friend struct CycloOps;
};

inline Cyclotomic operator*(const Rational& r, const Cyclotomic& c) { return c * r; }

// i = zeta_4.
inline Cyclotomic cyclo_i() { return Cyclotomic::root(4, 1); }

// Parses the textual scalar grammar: rationals, zeta(N), zeta(N)^e, products,
// sums, parentheses. Used by model files and the CLI.
Cyclotomic cyclo_parse(const std::string& s);

}  // namespace orbindex
