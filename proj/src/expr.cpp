#include "orbindex/expr.hpp"

#include <cctype>

namespace orbindex {

namespace {

struct GenRef {
    int pair;      // 0-based
    bool q_slot;   // q or zb
    bool complex_; // z/zb vs p/q
};

bool parse_generator_name(const std::string& s, size_t& pos, GenRef& out) {
    size_t start = pos;
    std::string head;
    while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) head += s[pos++];
    if (head != "p" && head != "q" && head != "z" && head != "zb") {
        pos = start;
        return false;
    }
    size_t d0 = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == d0) {
        pos = start;
        return false;
    }
    long idx = std::stol(s.substr(d0, pos - d0));
    if (idx < 1) throw parse_error("generator index must be >= 1 in '" + s + "'");
    out.pair = static_cast<int>(idx - 1);
    out.q_slot = (head == "q" || head == "zb");
    out.complex_ = (head == "z" || head == "zb");
    return true;
}

struct Scan {
    int n = 1;
    uint32_t complex_mask = 0;
    uint32_t real_mask = 0;
};

void scan_text(const std::string& s, Scan& scan) {
    size_t pos = 0;
    while (pos < s.size()) {
        if (std::isalpha(static_cast<unsigned char>(s[pos]))) {
            // skip keywords
            if (s.compare(pos, 4, "zeta") == 0) {
                pos += 4;
                continue;
            }
            if (s.compare(pos, 4, "star") == 0) {
                pos += 4;
                continue;
            }
            if (s[pos] == 'h' &&
                (pos + 1 >= s.size() || !std::isalnum(static_cast<unsigned char>(s[pos + 1])))) {
                ++pos;
                continue;
            }
            GenRef g;
            size_t save = pos;
            if (parse_generator_name(s, pos, g)) {
                scan.n = std::max(scan.n, g.pair + 1);
                if (g.complex_)
                    scan.complex_mask |= (1u << g.pair);
                else
                    scan.real_mask |= (1u << g.pair);
                continue;
            }
            pos = save + 1;
        } else {
            ++pos;
        }
    }
}

struct WeylParser {
    const std::string& s;
    int n;
    uint32_t mask;
    size_t pos = 0;

    WeylParser(const std::string& src, int n_, uint32_t mask_) : s(src), n(n_), mask(mask_) {}

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
    [[noreturn]] void fail(const std::string& msg) {
        throw parse_error(msg + " at position " + std::to_string(pos) + " in '" + s + "'");
    }
    long integer() {
        skip();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail("expected integer");
        return std::stol(s.substr(start, pos - start));
    }

    WeylElement expr() {
        WeylElement v = term();
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
    WeylElement term() {
        WeylElement v = factor();
        while (true) {
            skip();
            if (eat('*'))
                v = v.mul(factor());
            else
                return v;
        }
    }
    WeylElement factor() {
        WeylElement v = atom();
        skip();
        if (eat('^')) {
            long e = integer();
            if (e < 0) fail("negative powers are not supported");
            WeylElement acc = WeylElement::one(n, mask);
            for (long i = 0; i < e; ++i) acc = acc.mul(v);
            v = acc;
        }
        return v;
    }
    WeylElement atom() {
        skip();
        if (pos >= s.size()) fail("unexpected end of expression");
        if (eat('-')) return -atom();
        if (eat('(')) {
            WeylElement v = expr();
            if (!eat(')')) fail("missing ')'");
            return v;
        }
        if (s.compare(pos, 4, "star") == 0 &&
            (pos + 4 >= s.size() || !std::isalnum(static_cast<unsigned char>(s[pos + 4])))) {
            pos += 4;
            if (!eat('(')) fail("expected '(' after star");
            WeylElement a = expr();
            if (!eat(',')) fail("expected ',' in star(a, b)");
            WeylElement b = expr();
            if (!eat(')')) fail("missing ')' after star arguments");
            return star(a, b);
        }
        if (s.compare(pos, 4, "zeta") == 0 &&
            (pos + 4 >= s.size() || !std::isalnum(static_cast<unsigned char>(s[pos + 4])))) {
            pos += 4;
            if (!eat('(')) fail("expected '(' after zeta");
            long lvl = integer();
            if (lvl < 1) throw domain_error("zeta level must be positive");
            if (!eat(')')) fail("missing ')' after zeta level");
            long e = 1;
            skip();
            if (eat('^')) e = integer();
            return WeylElement::scalar(n, Laurent(Cyclotomic::root(lvl, e)), mask);
        }
        if (s[pos] == 'h' &&
            (pos + 1 >= s.size() || !std::isalnum(static_cast<unsigned char>(s[pos + 1])))) {
            ++pos;
            return WeylElement::scalar(n, Laurent::h_power(1), mask);
        }
        if (std::isalpha(static_cast<unsigned char>(s[pos]))) {
            GenRef g;
            if (!parse_generator_name(s, pos, g)) fail("unknown identifier");
            int index = g.pair + (g.q_slot ? n : 0);
            return WeylElement::generator(n, index, mask);
        }
        if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
            size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            std::string lit = s.substr(start, pos - start);
            skip();
            if (pos < s.size() && s[pos] == '/') {
                size_t save = pos;
                ++pos;
                skip();
                size_t d0 = pos;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                if (pos == d0)
                    pos = save;
                else
                    lit += "/" + s.substr(d0, pos - d0);
            }
            return WeylElement::scalar(n, Laurent(rat_parse(lit)), mask);
        }
        fail("unexpected character");
    }
};

}  // namespace

std::vector<WeylElement> parse_weyl_exprs(const std::vector<std::string>& texts) {
    Scan scan;
    for (const auto& t : texts) scan_text(t, scan);
    if ((scan.complex_mask & scan.real_mask) != 0)
        throw domain_error("a generator pair is used in both real and complex coordinates");
    std::vector<WeylElement> out;
    out.reserve(texts.size());
    for (const auto& t : texts) {
        WeylParser p(t, scan.n, scan.complex_mask);
        WeylElement v = p.expr();
        p.skip();
        if (p.pos != t.size())
            throw parse_error("trailing characters at position " + std::to_string(p.pos) +
                              " in '" + t + "'");
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace orbindex
