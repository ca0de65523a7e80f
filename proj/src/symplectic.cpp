#include "orbindex/symplectic.hpp"

namespace orbindex {

CMatrix symplectic_form(int n) {
    CMatrix j(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        j.at(i, n + i) = Cyclotomic(1);
        j.at(n + i, i) = Cyclotomic(-1);
    }
    return j;
}

SymplecticMap::SymplecticMap(int n, CMatrix m) : n_(n), m_(std::move(m)) {
    if (m_.rows() != 2 * n || m_.cols() != 2 * n)
        throw domain_error("symplectic matrix has wrong shape");
    CMatrix j = symplectic_form(n);
    if (!(m_.transpose() * j * m_ == j))
        throw domain_error("matrix does not preserve the symplectic form");
    // order stays 0 when the map is not of small finite order; operations
    // needing finiteness check via order()
    CMatrix acc = m_;
    CMatrix id = CMatrix::identity(2 * n);
    order_ = 0;
    for (long k = 1; k <= 1024; ++k) {
        if (acc == id) {
            order_ = k;
            break;
        }
        acc = acc * m_;
    }
}

SymplecticMap SymplecticMap::identity(int n) { return SymplecticMap(n, CMatrix::identity(2 * n)); }

SymplecticMap SymplecticMap::minus_one(int n) {
    return SymplecticMap(n, -CMatrix::identity(2 * n));
}

SymplecticMap SymplecticMap::rotation(int n, int pair, const Cyclotomic& lambda) {
    if (pair < 0 || pair >= n) throw domain_error("rotation pair index out of range");
    if (lambda.root_order() == 0) throw domain_error("rotation eigenvalue must be a root of unity");
    // gamma(z) = lambda z with z = q + ip forces, in real coordinates,
    //   gamma(p) = c p + s q,  gamma(q) = -s p + c q
    // with c = (lambda + conj lambda)/2 and s = (lambda - conj lambda)/(2i).
    Cyclotomic c = (lambda + lambda.conj()) * rat(1, 2);
    Cyclotomic s = (lambda - lambda.conj()) * (cyclo_i() * rat(1, 2));
    s = -s;  // 1/(2i) = -i/2
    CMatrix m = CMatrix::identity(2 * n);
    m.at(pair, pair) = c;
    m.at(n + pair, pair) = s;
    m.at(pair, n + pair) = -s;
    m.at(n + pair, n + pair) = c;
    return SymplecticMap(n, m);
}

SymplecticMap SymplecticMap::operator*(const SymplecticMap& o) const {
    if (n_ != o.n_) throw domain_error("symplectic maps of different dimensions");
    return SymplecticMap(n_, m_ * o.m_);
}

SymplecticMap SymplecticMap::inverse() const { return SymplecticMap(n_, m_.inverse()); }

WeylElement SymplecticMap::apply(const WeylElement& a) const {
    if (a.pairs() != n_) throw domain_error("symplectic map dimension mismatch");
    if (a.complex_mask() != 0)
        throw domain_error("matrix symplectomorphisms act on the real basis");
    std::vector<WeylElement> images;
    images.reserve(static_cast<size_t>(2 * n_));
    for (int b = 0; b < 2 * n_; ++b) {
        WeylElement img(n_, 0);
        for (int aRow = 0; aRow < 2 * n_; ++aRow) {
            const Cyclotomic& coef = m_.at(aRow, b);
            if (coef.is_zero()) continue;
            img += WeylElement::generator(n_, aRow, 0) * coef;
        }
        images.push_back(img);
    }
    return WeylElement::substitute(a, images);
}

FixedDecomposition fixed_decomposition(const SymplecticMap& g) {
    if (g.order() == 0) throw domain_error("fixed decomposition requires a finite-order map");
    const int n = g.pairs();
    const int dim = 2 * n;
    CMatrix id = CMatrix::identity(dim);
    CMatrix one_minus = id - g.matrix();
    FixedDecomposition out;
    out.n = n;
    out.fixed_basis = one_minus.kernel();
    if (out.fixed_basis.cols() % 2 != 0)
        throw domain_error("fixed space has odd dimension; map is not symplectic");
    out.k = out.fixed_basis.cols() / 2;

    const int m = n - out.k;  // normal complex dimension
    if (m == 0) {
        out.z_basis = CMatrix(dim, 0);
        out.zbar_basis = CMatrix(dim, 0);
        return out;
    }

    CMatrix j = symplectic_form(n);
    const long ord = g.order();
    const Cyclotomic two_i = cyclo_i() * rat(2);

    std::vector<std::vector<Cyclotomic>> zcols, wcols;
    std::vector<Cyclotomic> eigs;

    // -1 eigenspace: real, handled by choosing a symplectic basis (a_j, b_j)
    // and setting v = b + i a, w = b - i a.
    {
        CMatrix em = (g.matrix() + id).kernel();
        if (em.cols() % 2 != 0) throw domain_error("odd -1 eigenspace");
        // symplectic Gram-Schmidt on the columns
        std::vector<std::vector<Cyclotomic>> basis;
        for (int c = 0; c < em.cols(); ++c) {
            std::vector<Cyclotomic> v(static_cast<size_t>(dim));
            for (int r = 0; r < dim; ++r) v[static_cast<size_t>(r)] = em.at(r, c);
            basis.push_back(std::move(v));
        }
        auto pair_of = [&](const std::vector<Cyclotomic>& u, const std::vector<Cyclotomic>& v) {
            Cyclotomic acc;
            for (int a = 0; a < dim; ++a)
                for (int b = 0; b < dim; ++b) {
                    if (j.at(a, b).is_zero()) continue;
                    acc += u[static_cast<size_t>(a)] * j.at(a, b) * v[static_cast<size_t>(b)];
                }
            return acc;
        };
        while (!basis.empty()) {
            auto a_vec = basis.front();
            basis.erase(basis.begin());
            int partner = -1;
            for (size_t i = 0; i < basis.size(); ++i)
                if (!pair_of(a_vec, basis[i]).is_zero()) {
                    partner = static_cast<int>(i);
                    break;
                }
            if (partner < 0) {
                if (basis.empty()) break;
                throw domain_error("degenerate symplectic pairing on -1 eigenspace");
            }
            auto b_vec = basis[static_cast<size_t>(partner)];
            basis.erase(basis.begin() + partner);
            Cyclotomic w = pair_of(a_vec, b_vec);  // want <a, b> = 1
            Cyclotomic winv = w.inverse();
            for (auto& x : b_vec) x *= winv;
            // project remaining vectors onto the symplectic complement of (a, b)
            for (auto& u : basis) {
                Cyclotomic cb = pair_of(a_vec, u);
                Cyclotomic ca = pair_of(u, b_vec);
                for (int r = 0; r < dim; ++r) {
                    u[static_cast<size_t>(r)] -= cb * b_vec[static_cast<size_t>(r)];
                    u[static_cast<size_t>(r)] += -ca * a_vec[static_cast<size_t>(r)];
                }
            }
            // v = b + i a, w = b - i a gives <v, w> = 2i
            std::vector<Cyclotomic> v(static_cast<size_t>(dim)), wv(static_cast<size_t>(dim));
            for (int r = 0; r < dim; ++r) {
                v[static_cast<size_t>(r)] =
                    b_vec[static_cast<size_t>(r)] + cyclo_i() * a_vec[static_cast<size_t>(r)];
                wv[static_cast<size_t>(r)] =
                    b_vec[static_cast<size_t>(r)] - cyclo_i() * a_vec[static_cast<size_t>(r)];
            }
            zcols.push_back(std::move(v));
            wcols.push_back(std::move(wv));
            eigs.push_back(Cyclotomic(-1));
        }
    }

    // complex eigenvalue pairs {lambda, conj lambda}: pick per pair the
    // direction with <v, conj v>/(2i) a positive rational
    for (long e = 1; e < ord; ++e) {
        if (2 * e == ord) continue;  // the -1 case above
        if (e > ord - e) continue;   // one representative per conjugate pair
        long level = lcm_long(4, ord);
        Cyclotomic lambda = Cyclotomic::root(ord, e).lifted(level);
        CMatrix shifted = g.matrix() - CMatrix::identity(dim) * lambda;
        CMatrix eig = shifted.kernel();
        if (eig.cols() == 0) continue;
        // h-orthogonalize: h(u, v) = <u, conj v>/(2i), Hermitian
        std::vector<std::vector<Cyclotomic>> vs;
        for (int c = 0; c < eig.cols(); ++c) {
            std::vector<Cyclotomic> v(static_cast<size_t>(dim));
            for (int r = 0; r < dim; ++r) v[static_cast<size_t>(r)] = eig.at(r, c);
            vs.push_back(std::move(v));
        }
        auto hform = [&](const std::vector<Cyclotomic>& u, const std::vector<Cyclotomic>& v) {
            Cyclotomic acc;
            for (int a = 0; a < dim; ++a)
                for (int b = 0; b < dim; ++b) {
                    if (j.at(a, b).is_zero()) continue;
                    acc += u[static_cast<size_t>(a)] * j.at(a, b) * v[static_cast<size_t>(b)].conj();
                }
            return acc * two_i.inverse();
        };
        std::vector<std::vector<Cyclotomic>> ortho;
        for (auto& v : vs) {
            auto u = v;
            for (auto& prev : ortho) {
                Cyclotomic denom = hform(prev, prev);
                Cyclotomic coef = hform(u, prev) * denom.inverse();
                for (int r = 0; r < dim; ++r) u[static_cast<size_t>(r)] -= coef * prev[static_cast<size_t>(r)];
            }
            bool nonzero = false;
            for (auto& x : u)
                if (!x.is_zero()) nonzero = true;
            if (nonzero) ortho.push_back(std::move(u));
        }
        for (auto& v : ortho) {
            Cyclotomic h = hform(v, v);
            if (h.is_zero()) throw domain_error("isotropic eigenvector in normal decomposition");
            if (!h.is_rational())
                throw unsupported_error(
                    "normal eigen-pairing is irrational; raise the cyclotomic level");
            Rational r = h.rational_value();
            std::vector<Cyclotomic> zv, wv;
            Cyclotomic lam;
            if (r > 0) {
                zv = v;
                lam = lambda;
            } else {
                // conj(v) is the positive direction, eigenvalue conj(lambda)
                zv.resize(static_cast<size_t>(dim));
                for (int rr = 0; rr < dim; ++rr) zv[static_cast<size_t>(rr)] = v[static_cast<size_t>(rr)].conj();
                lam = lambda.conj();
                r = -r;
            }
            // w = conj(z)/r so that <z, w> = 2i
            wv.resize(static_cast<size_t>(dim));
            Rational rinv = Rational(1) / r;
            for (int rr = 0; rr < dim; ++rr)
                wv[static_cast<size_t>(rr)] = zv[static_cast<size_t>(rr)].conj() * rinv;
            zcols.push_back(std::move(zv));
            wcols.push_back(std::move(wv));
            eigs.push_back(lam);
        }
    }

    if (static_cast<int>(eigs.size()) != m)
        throw unsupported_error("could not split the normal part; raise the cyclotomic level");
    out.eigenvalues = std::move(eigs);
    out.z_basis = matvec_columns(zcols);
    out.zbar_basis = matvec_columns(wcols);
    return out;
}

CMatrix cayley_inverse(const SymplecticMap& g, const CMatrix& normal_basis) {
    // matrix of g^{-1} in the column basis: g^{-1} B = B A  =>  A = solve(B, g^{-1} B)
    CMatrix ginv = g.matrix().inverse();
    CMatrix image = ginv * normal_basis;
    CMatrix a = normal_basis.solve(image);
    int d = a.rows();
    CMatrix id = CMatrix::identity(d);
    CMatrix one_minus = id - a;
    if (one_minus.rank() < d)
        throw domain_error("normal part has eigenvalue 1; no Cayley data");
    return (id + a) * one_minus.inverse();
}

std::vector<Cyclotomic> cayley_diagonal(const std::vector<Cyclotomic>& eigenvalues) {
    std::vector<Cyclotomic> out;
    out.reserve(eigenvalues.size());
    for (const auto& lam : eigenvalues) {
        if (lam == Cyclotomic(1)) throw domain_error("normal eigenvalue 1 is not allowed");
        Cyclotomic lb = lam.conj();
        out.push_back((Cyclotomic(1) + lb) * (Cyclotomic(1) - lb).inverse());
    }
    return out;
}

FiniteSubgroup::FiniteSubgroup(const std::vector<SymplecticMap>& generators) {
    if (generators.empty()) throw domain_error("finite subgroup needs at least one generator");
    n_ = generators[0].pairs();
    for (const auto& g : generators) {
        if (g.pairs() != n_) throw domain_error("mixed dimensions in group generators");
        if (g.order() == 0) throw domain_error("group generator has infinite order");
    }

    elems_.push_back(SymplecticMap::identity(n_));
    // closure
    bool grew = true;
    while (grew) {
        grew = false;
        for (size_t i = 0; i < elems_.size(); ++i) {
            for (const auto& g : generators) {
                SymplecticMap prod = elems_[i] * g;
                bool found = false;
                for (const auto& e : elems_)
                    if (e == prod) {
                        found = true;
                        break;
                    }
                if (!found) {
                    if (elems_.size() > 512) throw unsupported_error("group closure too large");
                    elems_.push_back(prod);
                    grew = true;
                }
            }
        }
    }

    const int sz = static_cast<int>(elems_.size());
    mul_table_.assign(static_cast<size_t>(sz), std::vector<int>(static_cast<size_t>(sz), -1));
    inv_table_.assign(static_cast<size_t>(sz), -1);
    for (int a = 0; a < sz; ++a) {
        for (int b = 0; b < sz; ++b) {
            SymplecticMap prod = elems_[static_cast<size_t>(a)] * elems_[static_cast<size_t>(b)];
            int idx = index_of(prod);
            if (idx < 0) throw domain_error("group is not closed under products");
            mul_table_[static_cast<size_t>(a)][static_cast<size_t>(b)] = idx;
        }
    }
    for (int a = 0; a < sz; ++a) {
        for (int b = 0; b < sz; ++b)
            if (elems_[static_cast<size_t>(mul_table_[static_cast<size_t>(a)][static_cast<size_t>(b)])]
                    .is_identity()) {
                inv_table_[static_cast<size_t>(a)] = b;
                break;
            }
        if (inv_table_[static_cast<size_t>(a)] < 0) throw domain_error("group element has no inverse");
    }
    for (int a = 0; a < sz; ++a)
        if (elems_[static_cast<size_t>(a)].is_identity()) id_index_ = a;

    // conjugacy classes by brute force
    class_of_.assign(static_cast<size_t>(sz), -1);
    for (int a = 0; a < sz; ++a) {
        if (class_of_[static_cast<size_t>(a)] >= 0) continue;
        int cls = num_classes_++;
        for (int s = 0; s < sz; ++s) {
            int conj_elem = mul_table_[static_cast<size_t>(mul_table_[static_cast<size_t>(s)][static_cast<size_t>(a)])]
                                      [static_cast<size_t>(inv_table_[static_cast<size_t>(s)])];
            class_of_[static_cast<size_t>(conj_elem)] = cls;
        }
    }
}

int FiniteSubgroup::index_of(const SymplecticMap& g) const {
    for (size_t i = 0; i < elems_.size(); ++i)
        if (elems_[i] == g) return static_cast<int>(i);
    return -1;
}

std::map<int, long> fixed_dimension_census(const FiniteSubgroup& g) {
    std::map<int, long> census;
    std::vector<bool> seen(static_cast<size_t>(g.num_classes()), false);
    const auto& elems = g.elements();
    for (size_t i = 0; i < elems.size(); ++i) {
        int cls = g.class_of()[i];
        if (seen[static_cast<size_t>(cls)]) continue;
        seen[static_cast<size_t>(cls)] = true;
        CMatrix one_minus = CMatrix::identity(2 * g.pairs()) - elems[i].matrix();
        int p = 2 * g.pairs() - static_cast<int>(one_minus.rank());
        census[p] += 1;
    }
    return census;
}

}  // namespace orbindex
