// orbindex: exact Weyl-algebra calculator and orbifold index evaluator.
//
// Subcommands:
//   star EXPR1 EXPR2     Moyal product of two expressions, canonical output
//   verify SUITE ...     identity suites: cocycle | trace | local-rr | homology
//   index MODEL ...      index of a model file (--kawasaki or --hbar)
//
// Exit codes: 0 ok / all checks pass, 1 a verify check failed,
//             2 parse or schema error, 3 domain error, 4 unsupported range.

#include <future>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "orbindex/crossed_product.hpp"
#include "orbindex/expr.hpp"
#include "orbindex/lie_chern_weil.hpp"
#include "orbindex/model_io.hpp"

using namespace orbindex;

namespace {

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;
};

WeylElement random_weyl(std::mt19937_64& rng, int n, int max_deg, int terms, uint32_t mask) {
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<int> expd(0, max_deg);
    WeylElement w(n, mask);
    for (int t = 0; t < terms; ++t) {
        Mono m(static_cast<size_t>(2 * n), 0);
        int deg = expd(rng);
        std::uniform_int_distribution<int> pick(0, 2 * n - 1);
        for (int d = 0; d < deg; ++d) ++m[static_cast<size_t>(pick(rng))];
        int c = coef(rng);
        if (c == 0) c = 1;
        w += WeylElement::monomial(n, m, Laurent(c), mask);
    }
    return w;
}

// run items on `threads` workers, preserving input order of the results
std::vector<CheckResult> run_items(int threads,
                                   const std::vector<std::function<CheckResult()>>& items) {
    std::vector<CheckResult> results(items.size());
    if (threads <= 1) {
        for (size_t i = 0; i < items.size(); ++i) results[i] = items[i]();
        return results;
    }
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= items.size()) return;
            results[i] = items[i]();
        }
    };
    std::vector<std::future<void>> futs;
    for (int t = 0; t < threads; ++t) futs.push_back(std::async(std::launch::async, worker));
    for (auto& f : futs) f.get();
    return results;
}

int emit_results(const std::vector<CheckResult>& results, const std::string& suite,
                 const std::string& format) {
    bool all = true;
    for (const auto& r : results) all = all && r.pass;
    if (format == "structured") {
        nlohmann::ordered_json j;
        j["command"] = "verify";
        j["suite"] = suite;
        j["pass"] = all;
        j["checks"] = nlohmann::ordered_json::array();
        for (const auto& r : results) {
            nlohmann::ordered_json jc;
            jc["name"] = r.name;
            jc["pass"] = r.pass;
            if (!r.detail.empty()) jc["detail"] = r.detail;
            j["checks"].push_back(jc);
        }
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& r : results) {
            std::cout << (r.pass ? "PASS " : "FAIL ") << r.name;
            if (!r.detail.empty()) std::cout << "  [" << r.detail << "]";
            std::cout << "\n";
        }
        std::cout << (all ? "PASS" : "FAIL") << " " << suite << " suite ("
                  << results.size() << " checks)\n";
    }
    return all ? 0 : 1;
}

Cyclotomic parse_lambda(const std::string& text) {
    Cyclotomic lam = cyclo_parse(text);
    if (lam.root_order() == 0 || lam == Cyclotomic(1))
        throw domain_error("lambda must be a root of unity different from 1");
    return lam;
}

int cmd_star(const std::vector<std::string>& exprs, long level, std::optional<int> order,
             const std::string& format) {
    auto parsed = parse_weyl_exprs(exprs);
    WeylElement result = star(parsed[0], parsed[1]);
    if (order) {
        WeylElement capped(result.pairs(), result.complex_mask());
        for (const auto& [m, c] : result.terms())
            capped += WeylElement::monomial(result.pairs(), m, c.truncated_to(*order),
                                            result.complex_mask());
        result = capped;
    }
    if (level > 1) {
        // lift coefficients into the requested field level for rendering
        WeylElement lifted(result.pairs(), result.complex_mask());
        for (const auto& [m, c] : result.terms()) {
            Laurent lc;
            for (const auto& [e, v] : c.terms())
                lc += Laurent::h_power(e, v.lifted(lcm_long(v.level(), level)));
            lifted += WeylElement::monomial(result.pairs(), m, lc, result.complex_mask());
        }
        result = lifted;
    }
    if (format == "structured") {
        nlohmann::ordered_json j;
        j["command"] = "star";
        j["result"] = result.str();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << result.str() << "\n";
    }
    return 0;
}

int cmd_verify_cocycle(int k, const std::string& lambda_text, uint64_t seed, int count,
                       int threads, const std::string& format) {
    if (k != 1 && k != 2) throw unsupported_error("cocycle suite supports k = 1 and k = 2");
    std::vector<std::function<CheckResult()>> items;
    std::mt19937_64 rng(seed);
    std::vector<std::vector<WeylElement>> tuples;
    if (k == 1) {
        Cyclotomic lam = parse_lambda(lambda_text);
        TwistedCocycle probe(1, TwistedTraceData::from_eigenvalues({lam}));
        uint32_t mask = probe.complex_mask();
        for (int t = 0; t < count; ++t) {
            std::vector<WeylElement> tuple;
            for (int s = 0; s < 4; ++s) tuple.push_back(random_weyl(rng, 2, 3, 2, mask));
            tuples.push_back(std::move(tuple));
        }
        for (int t = 0; t < count; ++t) {
            items.push_back([t, lam, &tuples]() {
                TwistedCocycle tg(1, TwistedTraceData::from_eigenvalues({lam}));
                Automorphism gamma = [&tg](const WeylElement& x) { return tg.gamma(x); };
                auto f = [&tg](const std::vector<WeylElement>& tu) { return tg(tu); };
                Laurent v = cochain_coboundary(f, gamma, tuples[static_cast<size_t>(t)]);
                return CheckResult{"cocycle k=1 tuple " + std::to_string(t + 1), v.is_zero(),
                                   v.is_zero() ? "" : "coboundary = " + v.str()};
            });
        }
    } else {
        for (int t = 0; t < count; ++t) {
            std::vector<WeylElement> tuple;
            for (int s = 0; s < 6; ++s) tuple.push_back(random_weyl(rng, 2, 2, 2, 0));
            tuples.push_back(std::move(tuple));
        }
        for (int t = 0; t < count; ++t) {
            items.push_back([t, &tuples]() {
                CocycleEvaluator tau(2);
                Automorphism id = [](const WeylElement& x) { return x; };
                auto f = [&tau](const std::vector<WeylElement>& tu) { return tau(tu); };
                Laurent v = cochain_coboundary(f, id, tuples[static_cast<size_t>(t)]);
                return CheckResult{"cocycle k=2 tuple " + std::to_string(t + 1), v.is_zero(),
                                   v.is_zero() ? "" : "coboundary = " + v.str()};
            });
        }
    }
    return emit_results(run_items(threads, items), "cocycle", format);
}

int cmd_verify_trace(const std::string& lambda_text, uint64_t seed, int count, int threads,
                     const std::string& format) {
    Cyclotomic lam = parse_lambda(lambda_text);
    std::mt19937_64 rng(seed);
    std::vector<std::pair<WeylElement, WeylElement>> pairs;
    for (int t = 0; t < count; ++t)
        pairs.push_back({random_weyl(rng, 1, 4, 3, 1), random_weyl(rng, 1, 4, 3, 1)});
    std::vector<std::function<CheckResult()>> items;
    items.push_back([lam]() {
        auto d = TwistedTraceData::from_eigenvalues({lam});
        Laurent tr1 = twisted_trace(d, WeylElement::one(1, 1));
        Laurent expect((Cyclotomic(1) - lam.conj()).inverse());
        return CheckResult{"tr(1) = 1/(1 - conj(lambda))", tr1 == expect, tr1.str()};
    });
    for (int t = 0; t < count; ++t) {
        items.push_back([t, lam, &pairs]() {
            auto d = TwistedTraceData::from_eigenvalues({lam});
            const auto& [a, b] = pairs[static_cast<size_t>(t)];
            Laurent lhs = twisted_trace(d, star(a, b));
            Laurent rhs = twisted_trace(d, star(twisted_action(d, b), a));
            bool ok = (lhs == rhs);
            return CheckResult{"trace identity pair " + std::to_string(t + 1), ok,
                               ok ? "" : lhs.str() + " vs " + rhs.str()};
        });
    }
    return emit_results(run_items(threads, items), "trace", format);
}

int cmd_verify_local_rr(int k, const std::string& lambda_text, int nsize, int threads,
                        const std::string& format) {
    std::vector<Cyclotomic> lambdas;
    if (!lambda_text.empty()) lambdas.push_back(parse_lambda(lambda_text));
    auto report = verify_local_index(k, lambdas, nsize);  // throws unsupported_error on bad k, N
    std::vector<std::function<CheckResult()>> items;
    for (const auto& c : report.cases) {
        items.push_back([c]() {
            return CheckResult{"local-rr " + c.name, c.pass, "lhs = " + c.lhs + ", rhs = " + c.rhs};
        });
    }
    return emit_results(run_items(threads, items), "local-rr", format);
}

int cmd_verify_homology(const std::string& gamma, int n, int bound, int threads,
                        const std::string& format) {
    if (n < 1 || n > 2) throw unsupported_error("homology suite supports n <= 2");
    if (bound < 0 || bound > 6) throw unsupported_error("homology degree bound must be in [0, 6]");
    SymplecticMap g = SymplecticMap::identity(n);
    int fixed_k = n;
    if (gamma == "id") {
        // as constructed
    } else if (gamma == "minus1") {
        g = SymplecticMap::minus_one(n);
        fixed_k = 0;
    } else if (gamma == "zeta3") {
        g = SymplecticMap::rotation(n, 0, Cyclotomic::root(3, 1));
        fixed_k = n - 1;
    } else {
        throw parse_error("unknown gamma '" + gamma + "': use id, minus1 or zeta3");
    }
    std::vector<std::function<CheckResult()>> items;
    items.push_back([g, fixed_k, bound, gamma]() {
        auto dims = koszul_homology_dims(g, bound);
        auto oracle = hkr_dims(fixed_k, bound);
        bool ok = dims == oracle;
        std::ostringstream detail;
        detail << dims.size() << " nonzero bidegrees";
        return CheckResult{"homology gamma=" + gamma + " matches the form count", ok,
                           detail.str()};
    });
    return emit_results(run_items(threads, items), "homology", format);
}

int cmd_index(const std::string& path, bool kawasaki, bool hbar, bool oracle, long,
              std::optional<int> order, const std::string& format) {
    OrbifoldModel model = load_model(path);
    nlohmann::ordered_json j;
    j["command"] = "index";
    std::ostringstream text;
    bool oracle_ok = true;
    if (hbar && !kawasaki) {
        Laurent idx = algebraic_index(model);
        if (order) idx = idx.truncated_to(*order);
        j["value"] = idx.str();
        text << idx.str() << "\n";
    } else {
        Cyclotomic idx = kawasaki_index(model);
        j["value"] = idx.str();
        text << idx.str() << "\n";
        if (oracle) {
            if (!model.lefschetz)
                throw domain_error("model has no fixed-point oracle data");
            Cyclotomic expect = lefschetz_oracle(*model.lefschetz);
            oracle_ok = (expect == idx);
            j["oracle"] = expect.str();
            j["oracle_agrees"] = oracle_ok;
            text << (oracle_ok ? "oracle agrees: " : "ORACLE MISMATCH: ") << expect.str()
                 << "\n";
        }
    }
    if (format == "structured")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text.str();
    return oracle_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Weyl-algebra calculator and orbifold index evaluator"};
    app.require_subcommand(1);

    std::string format = "text";
    long level = 1;
    std::optional<int> order;
    uint64_t seed = 1;
    int threads = 1;

    app.add_option("--format", format, "output format: text or structured")
        ->check(CLI::IsMember({"text", "structured"}));
    app.add_option("--level", level, "minimum cyclotomic level for rendering");
    int order_value = 0;
    auto* order_opt = app.add_option("--order", order_value, "truncation order for series output");
    app.add_option("--seed", seed, "seed for randomized suites");
    app.add_option("--threads", threads, "worker threads for suites")->check(CLI::Range(1, 16));

    auto* star_cmd = app.add_subcommand("star", "Moyal product of two expressions");
    star_cmd->fallthrough();
    std::vector<std::string> exprs;
    star_cmd->add_option("exprs", exprs, "two expressions")->expected(2);

    auto* verify_cmd = app.add_subcommand("verify", "identity verification suites");
    verify_cmd->fallthrough();
    std::string suite;
    verify_cmd->add_option("suite", suite, "cocycle | trace | local-rr | homology")->required();
    int k = 1;
    verify_cmd->add_option("--k", k, "cocycle half-degree");
    std::string lambda_text;
    verify_cmd->add_option("--lambda", lambda_text, "twist eigenvalue, e.g. \"zeta(3)\" or \"-1\"");
    int nsize = 1;
    verify_cmd->add_option("--N", nsize, "matrix size for local-rr");
    int count = 0;
    verify_cmd->add_option("--count", count, "number of randomized checks");
    std::string gamma = "id";
    verify_cmd->add_option("--gamma", gamma, "homology twist: id | minus1 | zeta3");
    int npairs = 2;
    verify_cmd->add_option("--n", npairs, "number of symplectic pairs for homology");
    int bound = 4;
    verify_cmd->add_option("--bound", bound, "internal degree bound for homology");

    auto* index_cmd = app.add_subcommand("index", "evaluate a model file");
    index_cmd->fallthrough();
    std::string model_path;
    index_cmd->add_option("model", model_path, "model file path")->required();
    bool kawasaki = false, hbar = false, oracle = false;
    index_cmd->add_flag("--kawasaki", kawasaki, "integer index (no deformation class)");
    index_cmd->add_flag("--hbar", hbar, "deformed index as a Laurent series");
    index_cmd->add_flag("--oracle", oracle, "also evaluate the fixed-point oracle");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (*order_opt) order = order_value;

    try {
        if (star_cmd->parsed()) return cmd_star(exprs, level, order, format);
        if (verify_cmd->parsed()) {
            if (suite == "cocycle") {
                if (count == 0) count = (k == 1) ? 50 : 5;
                if (lambda_text.empty()) lambda_text = "zeta(4)";
                return cmd_verify_cocycle(k, lambda_text, seed, count, threads, format);
            }
            if (suite == "trace") {
                if (count == 0) count = 100;
                if (lambda_text.empty()) lambda_text = "zeta(4)";
                return cmd_verify_trace(lambda_text, seed, count, threads, format);
            }
            if (suite == "local-rr") {
                if (lambda_text.empty() && k == 1) lambda_text = "-1";
                return cmd_verify_local_rr(k, lambda_text, nsize, threads, format);
            }
            if (suite == "homology") return cmd_verify_homology(gamma, npairs, bound, threads, format);
            throw parse_error("unknown suite '" + suite + "'");
        }
        if (index_cmd->parsed()) {
            return cmd_index(model_path, kawasaki, hbar, oracle, level, order, format);
        }
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const unsupported_error& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return 4;
    } catch (const domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
