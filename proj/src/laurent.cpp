#include "orbindex/laurent.hpp"

#include <sstream>

namespace orbindex {

void Laurent::normalize() {
    for (auto it = t_.begin(); it != t_.end();) {
        bool drop = it->second.is_zero() || (trunc_ && it->first > *trunc_);
        it = drop ? t_.erase(it) : std::next(it);
    }
}

bool Laurent::equal_terms(const Laurent& o) const {
    if (t_.size() != o.t_.size()) return false;
    auto a = t_.begin();
    auto b = o.t_.begin();
    for (; a != t_.end(); ++a, ++b) {
        if (a->first != b->first || a->second != b->second) return false;
    }
    return true;
}

int Laurent::lowest_exponent() const {
    if (t_.empty()) throw domain_error("lowest exponent of zero series");
    return t_.begin()->first;
}

int Laurent::highest_exponent() const {
    if (t_.empty()) throw domain_error("highest exponent of zero series");
    return t_.rbegin()->first;
}

Laurent Laurent::truncated_to(int order) const {
    Laurent out = *this;
    out.trunc_ = trunc_ ? std::min(*trunc_, order) : order;
    out.normalize();
    return out;
}

Laurent Laurent::operator-() const {
    Laurent out = *this;
    for (auto& [k, c] : out.t_) c = -c;
    return out;
}

Laurent Laurent::operator+(const Laurent& o) const {
    Laurent out = *this;
    if (o.trunc_) out.trunc_ = out.trunc_ ? std::min(*out.trunc_, *o.trunc_) : *o.trunc_;
    for (const auto& [k, c] : o.t_) {
        auto it = out.t_.find(k);
        if (it == out.t_.end())
            out.t_[k] = c;
        else
            it->second += c;
    }
    out.normalize();
    return out;
}

Laurent Laurent::operator-(const Laurent& o) const { return *this + (-o); }

Laurent Laurent::operator*(const Laurent& o) const {
    Laurent out;
    // a value known mod h^{T+1} times one whose lowest term is h^l is known
    // mod h^{T+l+1}
    if (trunc_) {
        int cap = *trunc_ + (o.t_.empty() ? 0 : o.lowest_exponent());
        out.trunc_ = cap;
    }
    if (o.trunc_) {
        int cap = *o.trunc_ + (t_.empty() ? 0 : lowest_exponent());
        out.trunc_ = out.trunc_ ? std::min(*out.trunc_, cap) : cap;
    }
    for (const auto& [ka, ca] : t_) {
        for (const auto& [kb, cb] : o.t_) {
            int k = ka + kb;
            if (out.trunc_ && k > *out.trunc_) continue;
            Cyclotomic prod = ca * cb;
            auto it = out.t_.find(k);
            if (it == out.t_.end())
                out.t_[k] = prod;
            else
                it->second += prod;
        }
    }
    out.normalize();
    return out;
}

Laurent Laurent::operator*(const Cyclotomic& c) const {
    Laurent out;
    out.trunc_ = trunc_;
    if (c.is_zero()) return out;
    for (const auto& [k, v] : t_) out.t_[k] = v * c;
    out.normalize();
    return out;
}

Laurent Laurent::inverse(std::optional<int> order) const {
    if (t_.empty()) throw domain_error("inverse of zero series");
    if (t_.size() == 1) {
        Laurent out;
        out.trunc_ = trunc_;
        out.t_[-t_.begin()->first] = t_.begin()->second.inverse();
        out.normalize();
        return out;
    }
    std::optional<int> cap = order ? order : trunc_;
    if (!cap)
        throw domain_error(
            "inverse of a multi-term Laurent value requires a truncation order");
    // a = c h^m (1 + r) with r of positive h-degree; geometric expansion
    int m = lowest_exponent();
    Cyclotomic lead = t_.begin()->second;
    Laurent r = (*this * lead.inverse()).shifted(-m) - Laurent(1);
    int steps = *cap + m;  // result exponents start at -m
    Laurent acc(1), power(1);
    for (int j = 1; j <= steps; ++j) {
        power *= r;
        power = power.truncated_to(steps);
        if (power.is_zero()) break;
        acc += (j % 2 == 1) ? -power : power;
    }
    Laurent out = (acc * lead.inverse()).shifted(-m).truncated_to(*cap);
    return out;
}

Laurent Laurent::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Laurent acc(1);
    acc.trunc_ = trunc_;
    Laurent b = *this;
    for (long k = e; k > 0; k >>= 1) {
        if (k & 1) acc *= b;
        b *= b;
    }
    return acc;
}

Laurent Laurent::shifted(int k) const {
    Laurent out;
    out.trunc_ = trunc_ ? std::optional<int>(*trunc_ + k) : std::nullopt;
    for (const auto& [e, c] : t_) out.t_[e + k] = c;
    return out;
}

std::string Laurent::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : t_) {
        std::string cs = c.str();
        bool negated = false;
        if (!c.is_zero() && cs.size() > 0 && cs[0] == '-' && cs.find(" + ") == std::string::npos &&
            cs.find(" - ") == std::string::npos) {
            negated = true;
            cs = cs.substr(1);
        }
        if (first) {
            if (negated) os << "-";
            first = false;
        } else {
            os << (negated ? " - " : " + ");
        }
        bool compound = cs.find(" + ") != std::string::npos || cs.find(" - ") != std::string::npos;
        if (k == 0) {
            os << (compound ? "(" + cs + ")" : cs);
        } else {
            if (cs != "1") os << (compound ? "(" + cs + ")" : cs) << "*";
            os << "h";
            if (k != 1) os << "^" << k;
        }
    }
    if (trunc_) os << " + O(h^" << (*trunc_ + 1) << ")";
    return os.str();
}

bool Jet::is_zero() const {
    for (const auto& c : c_)
        if (!c.is_zero()) return false;
    return true;
}

Jet Jet::operator-() const {
    Jet out = *this;
    for (auto& c : out.c_) c = -c;
    return out;
}

Jet Jet::operator+(const Jet& o) const {
    check_same_order(o);
    Jet out = *this;
    for (size_t i = 0; i < c_.size(); ++i) out.c_[i] += o.c_[i];
    return out;
}

Jet Jet::operator-(const Jet& o) const { return *this + (-o); }

Jet Jet::operator*(const Jet& o) const {
    check_same_order(o);
    Jet out(order_);
    for (int i = 0; i <= order_; ++i) {
        if (c_[static_cast<size_t>(i)].is_zero()) continue;
        for (int j = 0; i + j <= order_; ++j) {
            if (o.c_[static_cast<size_t>(j)].is_zero()) continue;
            out.c_[static_cast<size_t>(i + j)] += c_[static_cast<size_t>(i)] * o.c_[static_cast<size_t>(j)];
        }
    }
    return out;
}

Jet Jet::operator*(const Laurent& s) const {
    Jet out = *this;
    for (auto& c : out.c_) c *= s;
    return out;
}

bool Jet::operator==(const Jet& o) const {
    if (order_ != o.order_) return false;
    for (size_t i = 0; i < c_.size(); ++i)
        if (!(c_[i] == o.c_[i])) return false;
    return true;
}

Jet Jet::exp() const {
    if (!c_[0].is_zero())
        throw domain_error("jet exponential requires zero constant term");
    Jet acc = constant(order_, Laurent(1));
    Jet power = constant(order_, Laurent(1));
    Rational fact(1);
    for (int j = 1; j <= order_; ++j) {
        power = power * (*this);
        fact *= j;
        acc += power * (rat(1) / fact);
        if (power.is_zero()) break;
    }
    return acc;
}

Jet Jet::inverse() const {
    if (c_[0].is_zero()) throw domain_error("jet inverse requires invertible constant term");
    Laurent c0inv = c_[0].inverse();
    Jet r = (*this) * c0inv;
    r.c_[0] = Laurent();  // r = x/c0 - 1
    Jet acc = constant(order_, Laurent(1));
    Jet power = constant(order_, Laurent(1));
    for (int j = 1; j <= order_; ++j) {
        power = power * r;
        if (power.is_zero()) break;
        acc += (j % 2 == 1) ? -power : power;
    }
    return acc * c0inv;
}

Jet Jet::sqrt1() const {
    if (!(c_[0] == Laurent(1))) throw domain_error("jet sqrt requires constant term 1");
    Jet r = *this;
    r.c_[0] = Laurent();
    Jet acc = constant(order_, Laurent(1));
    Jet power = constant(order_, Laurent(1));
    Rational coeff(1);
    for (int j = 1; j <= order_; ++j) {
        power = power * r;
        if (power.is_zero()) break;
        // binomial(1/2, j) = binomial(1/2, j-1) * (1/2 - (j-1)) / j
        coeff *= (rat(1, 2) - rat(j - 1)) / rat(j);
        acc += power * coeff;
    }
    return acc;
}

Jet Jet::log1() const {
    if (!(c_[0] == Laurent(1))) throw domain_error("jet log requires constant term 1");
    Jet r = *this;
    r.c_[0] = Laurent();
    Jet acc(order_);
    Jet power = constant(order_, Laurent(1));
    for (int j = 1; j <= order_; ++j) {
        power = power * r;
        if (power.is_zero()) break;
        Jet term = power * (rat(1) / rat(j));
        acc += (j % 2 == 1) ? term : -term;
    }
    return acc;
}

std::string Jet::str() const {
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k <= order_; ++k) {
        const Laurent& c = c_[static_cast<size_t>(k)];
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        if (k >= 1) {
            os << "*t";
            if (k > 1) os << "^" << k;
        }
    }
    if (first) return "0";
    return os.str();
}

}  // namespace orbindex
