#include "orbindex/model_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace orbindex {

namespace {

using nlohmann::ordered_json;

struct ElementParser {
    const RingModelPtr& model;
    const std::string& s;
    size_t pos = 0;

    ElementParser(const RingModelPtr& m, const std::string& src) : model(m), s(src) {}

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
        if (pos == start) throw parse_error("expected integer in element '" + s + "'");
        return std::stol(s.substr(start, pos - start));
    }

    RingElement expr() {
        RingElement v = term();
        while (true) {
            skip();
            if (eat('+'))
                v += term();
            else if (eat('-'))
                v = v - term();
            else
                return v;
        }
    }
    RingElement term() {
        RingElement v = factor();
        while (true) {
            skip();
            if (eat('*'))
                v *= factor();
            else
                return v;
        }
    }
    RingElement factor() {
        RingElement v = atom();
        skip();
        if (eat('^')) {
            long e = integer();
            if (e < 0) throw parse_error("negative power in element '" + s + "'");
            RingElement acc = RingElement::scalar(model, Laurent(1));
            for (long i = 0; i < e; ++i) acc *= v;
            v = acc;
        }
        return v;
    }
    RingElement atom() {
        skip();
        if (pos >= s.size()) throw parse_error("unexpected end of element '" + s + "'");
        if (eat('-')) return -atom();
        if (eat('(')) {
            RingElement v = expr();
            if (!eat(')')) throw parse_error("missing ')' in element '" + s + "'");
            return v;
        }
        if (s.compare(pos, 4, "zeta") == 0 &&
            (pos + 4 >= s.size() || !std::isalnum(static_cast<unsigned char>(s[pos + 4])))) {
            pos += 4;
            if (!eat('(')) throw parse_error("expected '(' after zeta in '" + s + "'");
            long n = integer();
            if (!eat(')')) throw parse_error("missing ')' in '" + s + "'");
            long e = 1;
            skip();
            if (eat('^')) e = integer();
            return RingElement::scalar(model, Laurent(Cyclotomic::root(n, e)));
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
            return RingElement::scalar(model, Laurent(rat_parse(lit)));
        }
        // identifier: a generator name
        size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        if (pos == start)
            throw parse_error("unexpected character '" + std::string(1, s[pos]) +
                              "' in element '" + s + "'");
        std::string name = s.substr(start, pos - start);
        int g = model->generator_index(name);
        if (g < 0) throw parse_error("unknown generator '" + name + "' in element '" + s + "'");
        return RingElement::generator(model, g);
    }
};

Mono parse_monomial(const RingModelPtr& model, const std::string& text,
                    const std::string& path) {
    Mono m(static_cast<size_t>(model->generators()), 0);
    if (text == "1" || text.empty()) return m;
    size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && (text[pos] == '*' || std::isspace(static_cast<unsigned char>(text[pos])))) ++pos;
        if (pos >= text.size()) break;
        size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        if (pos == start) throw parse_error(path + ": bad monomial '" + text + "'");
        std::string name = text.substr(start, pos - start);
        int g = model->generator_index(name);
        if (g < 0) throw parse_error(path + ": unknown generator '" + name + "'");
        long e = 1;
        if (pos < text.size() && text[pos] == '^') {
            ++pos;
            size_t d0 = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos == d0) throw parse_error(path + ": bad exponent in '" + text + "'");
            e = std::stol(text.substr(d0, pos - d0));
        }
        m[static_cast<size_t>(g)] = static_cast<uint16_t>(m[static_cast<size_t>(g)] + e);
    }
    return m;
}

// Round-trippable scalar rendering: rationals stay rationals, roots of unity
// print as zeta(N)^e, everything else expands in the zeta(L) power basis.
std::string scalar_to_model_string(const Cyclotomic& c) {
    if (c.is_rational()) return rat_str(c.rational_value());
    long ord = c.root_order();
    if (ord > 0) {
        for (long e = 0; e < ord; ++e)
            if (Cyclotomic::root(ord, e) == c)
                return "zeta(" + std::to_string(ord) + ")^" + std::to_string(e);
    }
    std::string out;
    const auto& coeffs = c.coeffs();
    for (size_t e = 0; e < coeffs.size(); ++e) {
        if (coeffs[e] == 0) continue;
        if (!out.empty()) out += " + ";
        std::string cs = rat_str(coeffs[e]);
        if (e == 0) {
            out += cs;
        } else {
            if (cs != "1") out += cs + "*";
            out += "zeta(" + std::to_string(c.level()) + ")";
            if (e > 1) out += "^" + std::to_string(e);
        }
    }
    return out.empty() ? "0" : out;
}

std::string monomial_to_string(const RingModel& model, const Mono& m) {
    std::string out;
    for (size_t g = 0; g < m.size(); ++g) {
        if (m[g] == 0) continue;
        if (!out.empty()) out += "*";
        out += model.generator_names[g];
        if (m[g] > 1) out += "^" + std::to_string(m[g]);
    }
    return out.empty() ? "1" : out;
}

std::string element_to_string(const RingElement& e) {
    if (e.is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : e.terms()) {
        if (!out.empty()) out += " + ";
        if (!c.is_scalar()) throw domain_error("model element coefficients must be h-free");
        std::string cs = scalar_to_model_string(c.constant_term());
        bool compound = cs.find(" + ") != std::string::npos || cs.find(" - ") != std::string::npos;
        std::string mono = monomial_to_string(*e.model(), m);
        if (mono == "1")
            out += compound ? "(" + cs + ")" : cs;
        else if (cs == "1")
            out += mono;
        else
            out += (compound ? "(" + cs + ")" : cs) + "*" + mono;
    }
    return out;
}

const ordered_json& field(const ordered_json& j, const std::string& key,
                          const std::string& path) {
    if (!j.contains(key)) throw parse_error(path + "." + key + ": missing field");
    return j.at(key);
}

std::vector<BundleBlock> parse_blocks(const ordered_json& j, const RingModelPtr& ring,
                                      const std::string& path) {
    std::vector<BundleBlock> blocks;
    if (!j.is_array()) throw parse_error(path + ": expected an array of blocks");
    for (size_t b = 0; b < j.size(); ++b) {
        const auto& jb = j.at(b);
        std::string bp = path + "[" + std::to_string(b) + "]";
        BundleBlock block;
        block.mu = cyclo_parse(field(jb, "mu", bp).get<std::string>());
        if (block.mu.root_order() == 0) throw parse_error(bp + ".mu: must be a root of unity");
        for (const auto& r : field(jb, "roots", bp)) {
            ElementParser p(ring, r.get<std::string>());
            RingElement root = p.expr();
            p.skip();
            if (p.pos != p.s.size()) throw parse_error(bp + ".roots: trailing characters");
            block.roots.push_back(root);
        }
        blocks.push_back(std::move(block));
    }
    return blocks;
}

}  // namespace

RingElement parse_ring_element(const RingModelPtr& model, const std::string& text) {
    ElementParser p(model, text);
    RingElement v = p.expr();
    p.skip();
    if (p.pos != text.size())
        throw parse_error("trailing characters in element '" + text + "'");
    return v;
}

OrbifoldModel parse_model_json(const std::string& text, const std::string& origin) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw parse_error(origin + ": invalid JSON: " + e.what());
    }
    OrbifoldModel model;
    model.geometric = j.value("geometric", false);
    const auto& sectors = field(j, "sectors", origin);
    if (!sectors.is_array()) throw parse_error(origin + ".sectors: expected an array");
    for (size_t i = 0; i < sectors.size(); ++i) {
        const auto& js = sectors.at(i);
        std::string path = origin + ".sectors[" + std::to_string(i) + "]";
        Sector s;
        s.name = js.value("name", "sector " + std::to_string(i));
        s.k = field(js, "k", path).get<int>();
        s.m = field(js, "m", path).get<long>();
        if (s.m < 1) throw parse_error(path + ".m: must be a positive integer");
        RingModel ring;
        ring.top_degree = field(js, "top_degree", path).get<int>();
        if (js.contains("generators")) {
            for (const auto& jg : js.at("generators")) {
                ring.generator_names.push_back(field(jg, "name", path + ".generators").get<std::string>());
                int deg = field(jg, "degree", path + ".generators").get<int>();
                if (deg <= 0 || deg % 2 != 0)
                    throw parse_error(path + ".generators: degrees must be positive even");
                ring.generator_degrees.push_back(deg);
            }
        }
        auto ring_ptr = std::make_shared<RingModel>(std::move(ring));
        if (js.contains("integrals")) {
            for (const auto& [key, val] : js.at("integrals").items()) {
                Mono m = parse_monomial(ring_ptr, key, path + ".integrals");
                if (ring_ptr->monomial_degree(m) != ring_ptr->top_degree)
                    throw parse_error(path + ".integrals." + key + ": not top degree");
                const_cast<RingModel&>(*ring_ptr).integrals[m] =
                    cyclo_parse(val.get<std::string>());
            }
        }
        s.ring = ring_ptr;
        s.omega = RingElement(ring_ptr);
        if (js.contains("tangent_roots"))
            for (const auto& r : js.at("tangent_roots"))
                s.tangent_roots.push_back(parse_ring_element(ring_ptr, r.get<std::string>()));
        if (static_cast<int>(s.tangent_roots.size()) != s.k)
            throw parse_error(path + ".tangent_roots: expected k = " + std::to_string(s.k) +
                              " roots");
        if (js.contains("normal_blocks")) {
            for (const auto& jn : js.at("normal_blocks")) {
                Cyclotomic lam = cyclo_parse(field(jn, "lambda", path + ".normal_blocks").get<std::string>());
                if (lam == Cyclotomic(1))
                    throw domain_error(path + ".normal_blocks.lambda: eigenvalue 1 not allowed");
                if (lam.root_order() == 0)
                    throw parse_error(path + ".normal_blocks.lambda: must be a root of unity");
                RingElement root =
                    parse_ring_element(ring_ptr, field(jn, "root", path + ".normal_blocks").get<std::string>());
                s.normal.push_back({lam, root});
            }
        }
        if (js.contains("omega")) s.omega = parse_ring_element(ring_ptr, js.at("omega").get<std::string>());
        const auto& bundles = field(js, "bundles", path);
        s.bundle_e = parse_blocks(field(bundles, "E", path + ".bundles"), ring_ptr, path + ".bundles.E");
        if (bundles.contains("F"))
            s.bundle_f = parse_blocks(bundles.at("F"), ring_ptr, path + ".bundles.F");
        model.sectors.push_back(std::move(s));
    }
    if (j.contains("lefschetz")) {
        const auto& jl = j.at("lefschetz");
        OrbifoldModel::LefschetzData lf;
        lf.group_order = field(jl, "group_order", origin + ".lefschetz").get<long>();
        lf.identity_term =
            rat_parse(field(jl, "identity_term", origin + ".lefschetz").get<std::string>());
        if (jl.contains("elements")) {
            for (const auto& je : jl.at("elements")) {
                OrbifoldModel::LefschetzElement el;
                for (const auto& jf : field(je, "fixed_points", origin + ".lefschetz.elements")) {
                    Cyclotomic rot = cyclo_parse(field(jf, "rotation", origin + ".lefschetz").get<std::string>());
                    Cyclotomic num = cyclo_parse(field(jf, "numerator", origin + ".lefschetz").get<std::string>());
                    el.fixed_points.push_back({rot, num});
                }
                lf.elements.push_back(std::move(el));
            }
        }
        model.lefschetz = std::move(lf);
    }
    return model;
}

OrbifoldModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open model file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_model_json(ss.str(), path);
}

std::string model_to_json(const OrbifoldModel& model) {
    ordered_json j;
    j["geometric"] = model.geometric;
    j["sectors"] = ordered_json::array();
    for (const auto& s : model.sectors) {
        ordered_json js;
        js["name"] = s.name;
        js["k"] = s.k;
        js["m"] = s.m;
        js["top_degree"] = s.ring->top_degree;
        js["generators"] = ordered_json::array();
        for (int g = 0; g < s.ring->generators(); ++g) {
            js["generators"].push_back(
                {{"name", s.ring->generator_names[static_cast<size_t>(g)]},
                 {"degree", s.ring->generator_degrees[static_cast<size_t>(g)]}});
        }
        js["integrals"] = ordered_json::object();
        for (const auto& [m, v] : s.ring->integrals)
            js["integrals"][monomial_to_string(*s.ring, m)] = scalar_to_model_string(v);
        js["tangent_roots"] = ordered_json::array();
        for (const auto& r : s.tangent_roots) js["tangent_roots"].push_back(element_to_string(r));
        js["normal_blocks"] = ordered_json::array();
        for (const auto& [lam, root] : s.normal)
            js["normal_blocks"].push_back(
                {{"lambda", scalar_to_model_string(lam)}, {"root", element_to_string(root)}});
        if (!s.omega.is_zero()) js["omega"] = element_to_string(s.omega);
        ordered_json bundles;
        auto blocks_json = [&](const std::vector<BundleBlock>& blocks) {
            ordered_json arr = ordered_json::array();
            for (const auto& b : blocks) {
                ordered_json jb;
                jb["mu"] = scalar_to_model_string(b.mu);
                jb["roots"] = ordered_json::array();
                for (const auto& r : b.roots) jb["roots"].push_back(element_to_string(r));
                arr.push_back(jb);
            }
            return arr;
        };
        bundles["E"] = blocks_json(s.bundle_e);
        bundles["F"] = blocks_json(s.bundle_f);
        js["bundles"] = bundles;
        j["sectors"].push_back(js);
    }
    if (model.lefschetz) {
        ordered_json jl;
        jl["group_order"] = model.lefschetz->group_order;
        jl["identity_term"] = rat_str(model.lefschetz->identity_term);
        jl["elements"] = ordered_json::array();
        for (const auto& el : model.lefschetz->elements) {
            ordered_json je;
            je["fixed_points"] = ordered_json::array();
            for (const auto& [rot, num] : el.fixed_points)
                je["fixed_points"].push_back({{"rotation", scalar_to_model_string(rot)},
                                              {"numerator", scalar_to_model_string(num)}});
            jl["elements"].push_back(je);
        }
        j["lefschetz"] = jl;
    }
    return j.dump(2) + "\n";
}

}  // namespace orbindex
