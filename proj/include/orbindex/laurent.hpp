#pragma once

#include <map>
#include <optional>
#include <string>

#include "orbindex/cyclotomic.hpp"

namespace orbindex {

// Laurent polynomial in the formal deformation parameter h with cyclotomic
// coefficients. A value may carry a truncation order: terms above it are
// dropped and the value is marked truncated. Mixing a truncated value into
// any operation truncates the result.
class Laurent {
  public:
    Laurent() = default;
    explicit Laurent(const Cyclotomic& c) {
        if (!c.is_zero()) t_[0] = c;
    }
    explicit Laurent(const Rational& r) : Laurent(Cyclotomic(r)) {}
    explicit Laurent(long v) : Laurent(Cyclotomic(v)) {}

    static Laurent h_power(int k, const Cyclotomic& c = Cyclotomic(rat(1))) {
        Laurent out;
        if (!c.is_zero()) out.t_[k] = c;
        return out;
    }

    bool is_zero() const { return t_.empty(); }
    bool is_truncated() const { return trunc_.has_value(); }
    std::optional<int> truncation_order() const { return trunc_; }

    const std::map<int, Cyclotomic>& terms() const { return t_; }
    Cyclotomic coeff(int k) const {
        auto it = t_.find(k);
        return it == t_.end() ? Cyclotomic() : it->second;
    }
    Cyclotomic constant_term() const { return coeff(0); }
    bool is_scalar() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first == 0); }

    int lowest_exponent() const;
    int highest_exponent() const;

    Laurent truncated_to(int order) const;

    Laurent operator-() const;
    Laurent operator+(const Laurent& o) const;
    Laurent operator-(const Laurent& o) const;
    Laurent operator*(const Laurent& o) const;
    Laurent& operator+=(const Laurent& o) { return *this = *this + o; }
    Laurent& operator-=(const Laurent& o) { return *this = *this - o; }
    Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

    Laurent operator*(const Cyclotomic& c) const;
    Laurent operator*(const Rational& r) const { return *this * Cyclotomic(r); }

    bool operator==(const Laurent& o) const { return t_ == o.t_ ? true : equal_terms(o); }
    bool operator!=(const Laurent& o) const { return !(*this == o); }

    // Multiplicative inverse. Exact when the value is a single term; otherwise
    // the value (or the explicit `order` argument) must carry a truncation
    // order, and the result is a truncated geometric expansion.
    Laurent inverse(std::optional<int> order = std::nullopt) const;

    Laurent pow(long e) const;

    // Multiply by h^k.
    Laurent shifted(int k) const;

    // "c_k*h^k + ..." ordered by ascending exponent.
    std::string str() const;

  private:
    std::map<int, Cyclotomic> t_;
    std::optional<int> trunc_;

    void normalize();
    bool equal_terms(const Laurent& o) const;
};

inline Laurent operator*(const Cyclotomic& c, const Laurent& l) { return l * c; }

// Truncated power series in an auxiliary nilpotent parameter t with t^{O+1}=0,
// coefficients in the Laurent ring. Carrier for Taylor-expansion work.
class Jet {
  public:
    explicit Jet(int order) : order_(order), c_(static_cast<size_t>(order) + 1) {
        if (order < 1) throw domain_error("jet order must be >= 1");
    }
    static Jet constant(int order, const Laurent& v) {
        Jet j(order);
        j.c_[0] = v;
        return j;
    }
    static Jet variable(int order) {  // t itself
        Jet j(order);
        j.c_[1] = Laurent(1);
        return j;
    }

    int order() const { return order_; }
    const Laurent& coeff(int k) const { return c_.at(static_cast<size_t>(k)); }
    Laurent& coeff(int k) { return c_.at(static_cast<size_t>(k)); }

    bool is_zero() const;

    Jet operator-() const;
    Jet operator+(const Jet& o) const;
    Jet operator-(const Jet& o) const;
    Jet operator*(const Jet& o) const;
    Jet& operator+=(const Jet& o) { return *this = *this + o; }
    Jet& operator*=(const Jet& o) { return *this = *this * o; }
    Jet operator*(const Laurent& s) const;
    Jet operator*(const Rational& r) const { return *this * Laurent(r); }

    bool operator==(const Jet& o) const;

    // exp(x) for x with zero constant term (else transcendental; rejected).
    Jet exp() const;
    // 1/x for x with invertible constant term; rejects zero constant term.
    Jet inverse() const;
    // sqrt(x) for x with constant term 1.
    Jet sqrt1() const;
    // log(x) for x with constant term 1.
    Jet log1() const;

    std::string str() const;

  private:
    int order_;
    std::vector<Laurent> c_;

    void check_same_order(const Jet& o) const {
        if (order_ != o.order_) throw domain_error("jet order mismatch");
    }
};

}  // namespace orbindex
