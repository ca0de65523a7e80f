#include "orbindex/hochschild.hpp"

#include <algorithm>
#include <numeric>

namespace orbindex {

Chain Chain::single(const std::vector<WeylElement>& tuple, const Laurent& c) {
    Chain out;
    out.degree = static_cast<int>(tuple.size()) - 1;
    if (!c.is_zero()) out.summands.push_back({c, tuple});
    return out;
}

Chain Chain::operator+(const Chain& o) const {
    if (!summands.empty() && !o.summands.empty() && degree != o.degree)
        throw domain_error("chain degrees differ");
    Chain out = *this;
    if (out.summands.empty()) out.degree = o.degree;
    out.summands.insert(out.summands.end(), o.summands.begin(), o.summands.end());
    out.normalize();
    return out;
}

Chain Chain::operator*(const Laurent& c) const {
    Chain out = *this;
    if (c.is_zero()) {
        out.summands.clear();
        return out;
    }
    for (auto& [s, t] : out.summands) s *= c;
    return out;
}

void Chain::normalize() {
    // Canonical form over the scalar field: expand every slot into monic
    // monomials so scalars cannot hide inside tensor legs, then merge.
    std::map<std::vector<Mono>, Laurent> merged;
    int n = 0;
    uint32_t mask = 0;
    for (auto& [s, t] : summands) {
        if (s.is_zero()) continue;
        if (!t.empty()) {
            n = t[0].pairs();
            mask = t[0].complex_mask();
        }
        std::vector<std::pair<Laurent, std::vector<Mono>>> expanded = {{s, {}}};
        for (const auto& slot : t) {
            std::vector<std::pair<Laurent, std::vector<Mono>>> next;
            for (const auto& [coef, monos] : expanded) {
                for (const auto& [m, c] : slot.terms()) {
                    auto monos2 = monos;
                    monos2.push_back(m);
                    next.push_back({coef * c, std::move(monos2)});
                }
            }
            expanded = std::move(next);
        }
        for (auto& [coef, monos] : expanded) {
            auto it = merged.find(monos);
            if (it == merged.end())
                merged.emplace(std::move(monos), coef);
            else
                it->second += coef;
        }
    }
    summands.clear();
    for (auto& [monos, coef] : merged) {
        if (coef.is_zero()) continue;
        std::vector<WeylElement> tuple;
        tuple.reserve(monos.size());
        for (const auto& m : monos) tuple.push_back(WeylElement::monomial(n, m, Laurent(1), mask));
        summands.push_back({coef, std::move(tuple)});
    }
}

namespace {

// Canonical representative in the normalized complex A (x) (A/K)^p: inner
// slots carry no scalar part. Summands with a vanishing inner slot die.
Chain strip_inner_scalars(const Chain& c) {
    Chain out;
    out.degree = c.degree;
    for (const auto& [s, tuple] : c.summands) {
        std::vector<WeylElement> stripped = tuple;
        bool dead = false;
        for (size_t i = 1; i < stripped.size(); ++i) {
            Laurent ct = stripped[i].constant_term();
            if (!ct.is_zero())
                stripped[i] -= WeylElement::scalar(stripped[i].pairs(), ct,
                                                   stripped[i].complex_mask());
            if (stripped[i].is_zero()) {
                dead = true;
                break;
            }
        }
        if (!dead) out.summands.push_back({s, std::move(stripped)});
    }
    out.normalize();
    return out;
}

}  // namespace

Chain twisted_boundary(const Chain& chain_in, const Automorphism& gamma) {
    Chain c = strip_inner_scalars(chain_in);
    Chain out;
    out.degree = c.degree - 1;
    for (const auto& [s, tuple] : c.summands) {
        const int p = static_cast<int>(tuple.size()) - 1;
        for (int i = 0; i < p; ++i) {
            std::vector<WeylElement> face;
            face.reserve(tuple.size() - 1);
            for (int j = 0; j < i; ++j) face.push_back(tuple[static_cast<size_t>(j)]);
            face.push_back(star(tuple[static_cast<size_t>(i)], tuple[static_cast<size_t>(i + 1)]));
            for (int j = i + 2; j <= p; ++j) face.push_back(tuple[static_cast<size_t>(j)]);
            Laurent sc = (i % 2 == 0) ? s : -s;
            out.summands.push_back({sc, std::move(face)});
        }
        // wrap-around face with the twist
        std::vector<WeylElement> wrap;
        wrap.reserve(tuple.size() - 1);
        wrap.push_back(star(gamma(tuple[static_cast<size_t>(p)]), tuple[0]));
        for (int j = 1; j < p; ++j) wrap.push_back(tuple[static_cast<size_t>(j)]);
        Laurent sc = (p % 2 == 0) ? s : -s;
        out.summands.push_back({sc, std::move(wrap)});
    }
    return strip_inner_scalars(out);
}

Chain fundamental_cycle(int k, int n, uint32_t complex_mask) {
    if (k < 0 || k > n) throw domain_error("fundamental cycle needs 0 <= k <= n");
    // symplectic basis order: y = (p_1, q_1, p_2, q_2, ...)
    std::vector<int> ybasis;
    for (int i = 0; i < k; ++i) {
        ybasis.push_back(i);
        ybasis.push_back(n + i);
    }

    Chain out;
    out.degree = 2 * k;
    std::vector<int> perm(static_cast<size_t>(2 * k));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        // sign of perm
        int inv = 0;
        for (size_t a = 0; a < perm.size(); ++a)
            for (size_t b = a + 1; b < perm.size(); ++b)
                if (perm[a] > perm[b]) ++inv;
        std::vector<WeylElement> tuple;
        tuple.reserve(static_cast<size_t>(2 * k + 1));
        tuple.push_back(WeylElement::one(n, complex_mask));
        for (int s = 0; s < 2 * k; ++s)
            tuple.push_back(
                WeylElement::generator(n, ybasis[static_cast<size_t>(perm[static_cast<size_t>(s)])],
                                       complex_mask));
        out.summands.push_back({Laurent(inv % 2 == 0 ? 1 : -1), std::move(tuple)});
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

namespace {

// monomials of given total degree in v variables, lexicographic
void enum_monomials(int v, int degree, Mono& cur, int pos, std::vector<Mono>& out) {
    if (pos == v - 1) {
        cur[static_cast<size_t>(pos)] = static_cast<uint16_t>(degree);
        out.push_back(cur);
        return;
    }
    for (int d = degree; d >= 0; --d) {
        cur[static_cast<size_t>(pos)] = static_cast<uint16_t>(d);
        enum_monomials(v, degree - d, cur, pos + 1, out);
    }
    cur[static_cast<size_t>(pos)] = 0;
}

std::vector<Mono> monomials_of_degree(int v, int degree) {
    std::vector<Mono> out;
    if (v == 0) {
        if (degree == 0) out.push_back(Mono{});
        return out;
    }
    Mono cur(static_cast<size_t>(v), 0);
    enum_monomials(v, degree, cur, 0, out);
    return out;
}

std::vector<std::vector<int>> subsets_of_size(int v, int p) {
    std::vector<std::vector<int>> out;
    std::vector<int> idx;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(idx.size()) == p) {
            out.push_back(idx);
            return;
        }
        for (int i = start; i <= v - (p - static_cast<int>(idx.size())); ++i) {
            idx.push_back(i);
            rec(i + 1);
            idx.pop_back();
        }
    };
    rec(0);
    return out;
}

long count_monomials(int v, int degree) {
    if (degree < 0) return 0;
    if (v == 0) return degree == 0 ? 1 : 0;
    // binom(degree + v - 1, v - 1)
    Integer b = binomial(degree + v - 1, v - 1);
    return b.get_si();
}

}  // namespace

namespace {

// linear forms y_i - gamma(y_i) as coefficient vectors over the generators
std::vector<std::vector<Cyclotomic>> koszul_linear_forms(const SymplecticMap& g) {
    const int v = 2 * g.pairs();
    const CMatrix& m = g.matrix();
    std::vector<std::vector<Cyclotomic>> lin(static_cast<size_t>(v),
                                             std::vector<Cyclotomic>(static_cast<size_t>(v)));
    for (int b = 0; b < v; ++b)
        for (int a = 0; a < v; ++a) {
            Cyclotomic coef = (a == b) ? Cyclotomic(1) - m.at(a, b) : -m.at(a, b);
            lin[static_cast<size_t>(b)][static_cast<size_t>(a)] = coef;
        }
    return lin;
}

CMatrix koszul_slice(const std::vector<std::vector<Cyclotomic>>& lin, int v, int p, int total) {
    auto src_m = monomials_of_degree(v, total - p);
    auto src_e = subsets_of_size(v, p);
    auto dst_m = monomials_of_degree(v, total - p + 1);
    auto dst_e = subsets_of_size(v, p - 1);
    if (src_m.empty() || src_e.empty() || dst_m.empty())
        return CMatrix(static_cast<int>(dst_m.size() * dst_e.size()),
                       static_cast<int>(src_m.size() * src_e.size()));
    std::map<Mono, int> dst_m_index;
    for (size_t i = 0; i < dst_m.size(); ++i) dst_m_index[dst_m[i]] = static_cast<int>(i);
    std::map<std::vector<int>, int> dst_e_index;
    for (size_t i = 0; i < dst_e.size(); ++i) dst_e_index[dst_e[i]] = static_cast<int>(i);

    CMatrix mat(static_cast<int>(dst_m.size() * dst_e.size()),
                static_cast<int>(src_m.size() * src_e.size()));
    for (size_t cm = 0; cm < src_m.size(); ++cm) {
        for (size_t ce = 0; ce < src_e.size(); ++ce) {
            int col = static_cast<int>(cm * src_e.size() + ce);
            const auto& subset = src_e[ce];
            for (size_t j = 0; j < subset.size(); ++j) {
                int var = subset[j];
                std::vector<int> rest;
                for (size_t t = 0; t < subset.size(); ++t)
                    if (t != j) rest.push_back(subset[t]);
                int erow = dst_e_index.at(rest);
                int sign = (static_cast<int>(j) + 1) % 2 == 0 ? 1 : -1;
                for (int a = 0; a < v; ++a) {
                    const Cyclotomic& coef = lin[static_cast<size_t>(var)][static_cast<size_t>(a)];
                    if (coef.is_zero()) continue;
                    Mono m2 = src_m[cm];
                    ++m2[static_cast<size_t>(a)];
                    int mrow = dst_m_index.at(m2);
                    int row = mrow * static_cast<int>(dst_e.size()) + erow;
                    Cyclotomic val = (sign > 0) ? coef : -coef;
                    mat.at(row, col) += val;
                }
            }
        }
    }
    return mat;
}

}  // namespace

CMatrix koszul_slice_matrix(const SymplecticMap& g, int exterior_degree, int total_degree) {
    if (g.order() == 0) throw domain_error("koszul slices require a finite-order map");
    if (exterior_degree < 1) throw domain_error("slice needs exterior degree >= 1");
    return koszul_slice(koszul_linear_forms(g), 2 * g.pairs(), exterior_degree, total_degree);
}

std::map<std::pair<int, int>, long> koszul_homology_dims(const SymplecticMap& g, int degree_bound) {
    if (g.order() == 0) throw domain_error("koszul homology requires a finite-order map");
    const int n = g.pairs();
    const int v = 2 * n;
    auto lin = koszul_linear_forms(g);

    std::map<std::pair<int, int>, long> dims;
    for (int total = 0; total <= degree_bound; ++total) {
        // bases per exterior degree p at fixed total degree: monomial deg = total - p
        std::vector<std::vector<Mono>> monos(static_cast<size_t>(std::min(total, v)) + 1);
        std::vector<std::vector<std::vector<int>>> exts(static_cast<size_t>(std::min(total, v)) + 1);
        int pmax = std::min(total, v);
        for (int p = 0; p <= pmax; ++p) {
            monos[static_cast<size_t>(p)] = monomials_of_degree(v, total - p);
            exts[static_cast<size_t>(p)] = subsets_of_size(v, p);
        }
        // differential p -> p-1 at this total degree
        std::vector<long> ranks(static_cast<size_t>(pmax) + 2, 0);
        std::vector<long> ncols(static_cast<size_t>(pmax) + 1, 0);
        for (int p = 0; p <= pmax; ++p)
            ncols[static_cast<size_t>(p)] = static_cast<long>(monos[static_cast<size_t>(p)].size() *
                                                              exts[static_cast<size_t>(p)].size());
        for (int p = 1; p <= pmax; ++p) {
            if (monos[static_cast<size_t>(p)].empty() || exts[static_cast<size_t>(p)].empty())
                continue;
            ranks[static_cast<size_t>(p)] = koszul_slice(lin, v, p, total).rank();
        }
        for (int p = 0; p <= pmax; ++p) {
            long kerdim = ncols[static_cast<size_t>(p)] - ranks[static_cast<size_t>(p)];
            long imdim = (p + 1 <= pmax) ? ranks[static_cast<size_t>(p + 1)] : 0;
            long h = kerdim - imdim;
            if (h != 0) dims[{p, total}] = h;
        }
    }
    return dims;
}

std::map<std::pair<int, int>, long> hkr_dims(int k, int degree_bound) {
    std::map<std::pair<int, int>, long> dims;
    for (int total = 0; total <= degree_bound; ++total) {
        for (int p = 0; p <= std::min(total, 2 * k); ++p) {
            Integer b = binomial(2 * k, p);
            long cnt = count_monomials(2 * k, total - p);
            long d = b.get_si() * cnt;
            if (d != 0) dims[{p, total}] = d;
        }
    }
    return dims;
}

}  // namespace orbindex
