// Acceptance gate: one PASS/FAIL line per criterion, exit status 0 iff all pass.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "hyperloop/verify.hpp"
#include "oracles.hpp"

using namespace hyperloop;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

FoldingDatum folding(const char* type, const char* aut) {
    RootSystem rs = build_root_system(type);
    return fold(rs, parse_automorphism(rs, aut));
}

std::string first_failure(const VerificationReport& r) {
    for (const auto& a : r.assertions)
        if (a.status == "fail") return a.name;
    return "";
}

int lie_dim(const RootSystem& rs) { return 2 * rs.num_pos() + rs.rank; }

// 1. folding table, with the g_1 weight count as an independent cross-check
Outcome folding_table() {
    Outcome o;
    struct Row {
        const char* type;
        const char* aut;
        int m;
        const char* g0;
        bool doubled;  // +-R_0 u +-2R_s, else +-R_s
    };
    const std::vector<Row> rows = {{"A2", "flip", 2, "A1", true},  {"A4", "flip", 2, "B2", true},
                                   {"A6", "flip", 2, "B3", true},  {"A3", "flip", 2, "C2", false},
                                   {"A5", "flip", 2, "C3", false}, {"A7", "flip", 2, "C4", false},
                                   {"D4", "flip", 2, "B3", false}, {"D5", "flip", 2, "B4", false},
                                   {"E6", "flip", 2, "F4", false}, {"D4", "rot3", 3, "G2", false}};
    for (const auto& r : rows) {
        FoldingDatum fd = folding(r.type, r.aut);
        std::string id = std::string(r.type) + "/" + r.aut;
        o.require(fd.m == r.m, id + ": m");
        o.require(fd.folded.name() == r.g0, id + ": g_0 is " + fd.folded.name());
        o.require(fd.g1_pattern == (r.doubled ? "+-R_0 u +-2R_s" : "+-R_s"), id + ": pattern " + fd.g1_pattern);
        int n_short = 0;
        for (int mu = 0; mu < fd.folded.num_pos(); ++mu) n_short += fd.folded_short[mu];
        // dim g_1 = (dim g - dim g_0) / (m - 1), dim h_1 = (rank g - rank g_0) / (m - 1)
        int weights_g1 = (lie_dim(fd.base) - lie_dim(fd.folded) - (fd.base.rank - fd.folded.rank)) / (fd.m - 1);
        int want = r.doubled ? 2 * fd.folded.num_pos() + 2 * n_short : 2 * n_short;
        o.require(weights_g1 == want, id + ": |wt(g_1)\\{0}|");
    }
    o.detail = o.ok ? std::to_string(rows.size()) + " foldings" : o.detail;
    return o;
}

const std::vector<std::pair<const char*, const char*>> kFoldings = {
    {"A2", "flip"}, {"A3", "flip"}, {"A4", "flip"}, {"A5", "flip"}, {"D4", "rot3"}};

Outcome twisted_basis() {
    Outcome o;
    std::size_t n = 0;
    for (const auto& [t, a] : kFoldings) {
        auto r = check_twisted_basis(folding(t, a));
        o.require(r.passed() && r.count("pass") > 0, std::string(t) + ": " + first_failure(r));
        n += r.count("pass");
    }
    if (o.ok) o.detail = std::to_string(n) + " assertions";
    return o;
}

Outcome twisted_brackets() {
    Outcome o;
    std::size_t n = 0;
    long long f2 = 0, f3 = 0, d1 = 0;
    for (const auto& [t, a] : kFoldings) {
        auto r = check_twisted_brackets(folding(t, a));
        o.require(r.passed() && r.count("pass") > 0, std::string(t) + ": " + first_failure(r));
        n += r.count("pass");
        if (r.case_desc.contains("b_branches")) {
            f2 += r.case_desc["b_branches"]["factor_2"].get<long long>();
            d1 += r.case_desc["b_branches"]["delta_1"].get<long long>();
        }
        if (r.case_desc.contains("c_branches")) f3 += r.case_desc["c_branches"]["factor_3"].get<long long>();
    }
    o.require(f2 > 0 && f3 > 0 && d1 > 0, "A_{2n} branches not exercised");
    if (o.ok) o.detail = std::to_string(n) + " assertions";
    return o;
}

// 4. dim W_F(lambda) against Freudenthal, character field independent
Outcome weyl_dims() {
    Outcome o;
    int count = 0;
    for (const char* type : {"A1", "A2", "B2", "C2", "G2", "A3", "B3", "C3"}) {
        RootSystem rs = build_root_system(type);
        auto cb = chevalley_basis(rs);
        std::function<void(IVec&, int, int)> sweep = [&](IVec& lam, int i, int left) {
            if (i == rs.rank) {
                oracle::Freudenthal fr(rs, lam);
                auto want = fr.character();
                long long total = 0;
                for (const auto& [w, m] : want) total += m;
                o.require(Integer(static_cast<long>(total)) == rs.weyl_dimension(lam), std::string(type) + ": oracle");
                for (const Ring* f : {&Ring::char0(), &Ring::finite(2), &Ring::finite(5), &Ring::finite(7)}) {
                    auto w = build_weyl_module(cb, lam, *f);
                    o.require(static_cast<long long>(w->dim()) == total, std::string(type) + " over " + f->name());
                    o.require(character(*w) == Character(want.begin(), want.end()), std::string(type) + ": character");
                }
                ++count;
                return;
            }
            for (int c = 0; c <= left; ++c) {
                lam[i] = c;
                sweep(lam, i + 1, left - c);
            }
        };
        IVec lam(rs.rank, 0);
        sweep(lam, 0, 4);
    }
    if (o.ok) o.detail = std::to_string(count) + " weights x 4 fields";
    return o;
}

// 5. modular simple quotients and cyclicity from every vector
Outcome simple_quotients() {
    Outcome o;
    auto sl2 = chevalley_basis(build_root_system("A1"));
    auto gram_rank = [](int lambda, unsigned p) {
        std::size_t r = 0;
        for (int k = 0; k <= lambda; ++k)
            if (binomial(lambda, k) % p != 0) ++r;
        return r;
    };
    o.require(gram_rank(2, 2) == 2 && gram_rank(3, 3) == 2, "Gram-rank oracle");
    o.require(build_simple_module(sl2, {2}, Ring::finite(2))->dim() == 2, "dim V_F2(2)");
    o.require(build_simple_module(sl2, {3}, Ring::finite(3))->dim() == 2, "dim V_F3(3)");
    int modules = 0;
    struct Case {
        const char* type;
        IVec lambda;
        const Ring* f;
    };
    for (const auto& c : std::vector<Case>{{"A1", {2}, &Ring::finite(2)},
                                           {"A1", {6}, &Ring::finite(3)},
                                           {"A2", {1, 1}, &Ring::finite(3)},
                                           {"A2", {2, 1}, &Ring::finite(2)},
                                           {"A2", {3, 0}, &Ring::finite(5)},
                                           {"B2", {1, 1}, &Ring::finite(2)},
                                           {"B2", {0, 2}, &Ring::char0()},
                                           {"G2", {1, 0}, &Ring::finite(7)},
                                           {"G2", {0, 1}, &Ring::finite(3)},
                                           {"A3", {1, 0, 1}, &Ring::finite(2)},
                                           {"C3", {0, 1, 0}, &Ring::finite(3)},
                                           {"B3", {1, 0, 0}, &Ring::finite(2)}}) {
        auto v = build_simple_module(chevalley_basis(build_root_system(c.type)), c.lambda, *c.f);
        if (v->dim() > 50) continue;
        auto gens = full_generator_set(*v);
        for (std::size_t b = 0; b < v->dim(); ++b)
            o.require(cyclic_closure(v->field(), v->dim(), {v->unit(b)}, gens).dim() == v->dim(),
                      std::string(c.type) + " over " + c.f->name() + ": not cyclic");
        ++modules;
    }
    if (o.ok) o.detail = std::to_string(modules) + " simple modules";
    return o;
}

// 6. Lambda series on evaluation modules against the closed forms
Outcome evaluation_formulas() {
    Outcome o;
    const int N = 4;
    int checks = 0;
    for (const Ring* f : {&Ring::finite(5), &Ring::finite(7)}) {
        for (long long av : {2, 3}) {
            // untwisted: (1 - a u)^{lambda(h_i)}
            for (const char* type : {"A2", "A3", "B2"}) {
                RootSystem rs = build_root_system(type);
                IVec lam(rs.rank, 1);
                Scalar a = Scalar::from_int(*f, av);
                auto lm = evaluation_module(build_simple_module(chevalley_basis(rs), lam, *f), a);
                Vec hv = lm->unit(lm->hv());
                for (int i = 0; i < rs.rank; ++i) {
                    Poly s = lambda_series(*lm, hv, i, 1, N);
                    for (int r = 0; r <= N; ++r) {
                        o.require(s[r] == (-a).pow(r) * Scalar::from_integer(*f, binomial(lam[i], r)),
                                  std::string(type) + ": Lambda^+");
                        ++checks;
                    }
                }
            }
            for (const char* t : {"A2", "A3"}) {
                FoldingDatum fd = folding(t, "flip");
                const Ring& e = twisted_field(fd, *f);
                Scalar a = Scalar::from_int(e, av);
                for (int l0 = 1; l0 <= 2; ++l0) {
                    IVec lam0(fd.folded.rank, 0);
                    lam0[0] = l0;
                    lam0.back() = 1;
                    auto tm = restrict_module(sigma_evaluation_module(fd, lam0, a, *f), fd);
                    Vec hv = tm->base().unit(tm->hv());
                    IVec lam = fd.extend_weight(lam0);
                    for (int mu = 0; mu < fd.folded.num_pos(); ++mu)
                        for (int dir : {1, -1}) {
                            Poly s = lambda_sigma_series_mu(*tm, hv, mu, dir, N);
                            for (int r = 0; r <= N; ++r) {
                                o.require(s[r] == ev_sigma_lambda(fd, lam, a, tm->embedding(), mu, r, dir),
                                          std::string(t) + ": Lambda^sigma over " + f->name());
                                ++checks;
                            }
                        }
                }
            }
        }
    }
    if (o.ok) o.detail = std::to_string(checks) + " coefficients";
    return o;
}

// 7. Drinfeld polynomials of twisted evaluation modules
Outcome drinfeld_polys() {
    Outcome o;
    int n = 0;
    for (const Ring* f : {&Ring::finite(7), &Ring::char0()}) {
        for (const auto& [t, aut] : kFoldings) {
            FoldingDatum fd = folding(t, aut);
            const Ring& e = twisted_field(fd, *f);
            for (long long av : {2, 3})
                for (int i = 0; i < fd.folded.rank; ++i) {
                    IVec lam(fd.folded.rank, 0);
                    lam[i] = 1;
                    Scalar a = Scalar::from_int(e, av);
                    auto tm = restrict_module(sigma_evaluation_module(fd, lam, a, *f), fd);
                    o.require(extract_drinfeld(*tm) == fundamental(fd, i, a),
                              std::string(t) + " node " + std::to_string(i + 1) + " over " + f->name());
                    ++n;
                }
        }
    }
    if (o.ok) o.detail = std::to_string(n) + " modules";
    return o;
}

// 8. identity suite
Outcome identities() {
    Outcome o;
    auto h = check_heisenberg_identity(6);
    o.require(h.passed() && h.count("pass") == 6, "heisenberg: " + first_failure(h));
    std::size_t n = h.count("pass");
    std::vector<const Ring*> fields = {&Ring::char0(), &Ring::finite(5), &Ring::finite(7)};
    for (const Ring* f : fields) {
        auto d = check_divided_sums(6, *f);
        o.require(d.passed() && d.count("pass") > 0, "divided sums over " + f->name() + ": " + first_failure(d));
        n += d.count("pass");
    }
    auto g = run_garland_suite(6, fields);
    o.require(g.passed(), "garland: " + first_failure(g));
    n += g.count("pass");
    // every required part has passing instances
    for (const std::string part : {"garland ", "(a)", "(b)", "(c)(i)", "(c)(iii)"}) {
        bool seen = false;
        for (const auto& a : g.assertions)
            if (a.status == "pass" && a.name.find(part) != std::string::npos) seen = true;
        o.require(seen, "no passing instance of " + part);
    }
    if (o.ok) o.detail = std::to_string(n) + " assertions, " + std::to_string(g.count("skipped")) + " skipped";
    return o;
}

std::vector<LWeight> restriction_grid(const FoldingDatum& fd, const Ring& f) {
    long long p = f.p();
    std::vector<LWeight> out;
    for (auto& pi : lweight_grid(fd, f, {2, 3, p - 2}, 2))
        if (standard_decomposition(pi, fd).blocks.size() <= 2) out.push_back(pi);
    return out;
}

// 9 and 10 share the grid
struct GridResult {
    Outcome theorem, relations;
};

GridResult restriction_theorem() {
    GridResult g;
    int cases = 0;
    std::size_t hw_pass = 0;
    for (const char* t : {"A2", "A3"}) {
        FoldingDatum fd = folding(t, "flip");
        for (const Ring* f : {&Ring::finite(5), &Ring::finite(7)}) {
            for (const auto& pi : restriction_grid(fd, *f)) {
                auto r = check_restriction_theorem(pi, fd);
                ++cases;
                std::string id = std::string(t) + "/" + f->name() + " " + pi.str();
                bool core = true, rel = true;
                for (const auto& a : r.assertions) {
                    bool is_rel = false;
                    for (const char* pre : {"raising", "(a)", "(b)", "(c)", "(d)", "minus coefficients"})
                        if (a.name.rfind(pre, 0) == 0) is_rel = true;
                    if (a.status == "fail") (is_rel ? rel : core) = false;
                    if (is_rel && a.status == "pass") ++hw_pass;
                }
                g.theorem.require(core, id + ": " + first_failure(r));
                g.relations.require(rel, id + ": " + first_failure(r));
            }
        }
    }
    // d_mu = 2 on the A_2 short root: (x^-_{mu,0})^{(2)} v != 0 = (x^-_{mu,0})^{(3)} v
    FoldingDatum a2 = folding("A2", "flip");
    for (const Ring* f : {&Ring::finite(5), &Ring::finite(7)}) {
        const Ring& e = twisted_field(a2, *f);
        auto ev = sigma_evaluation_module(a2, {1}, Scalar::from_int(e, 2), *f);
        auto tm = restrict_module(ev, a2);
        Vec v = ev->unit(ev->hv());
        g.relations.require(!is_zero_vec(tm->x_mu(0, false, -1, 0, 2).apply(v)), "d_mu = 2 power vanishes");
        g.relations.require(is_zero_vec(tm->x_mu(0, false, -1, 0, 3).apply(v)), "power past d_mu survives");
        auto r = check_hw_relations(*tm);
        g.relations.require(r.passed(), "A2 short root: " + first_failure(r));
    }
    g.relations.require(hw_pass > 0, "no relation assertions in the grid");
    if (g.theorem.ok) g.theorem.detail = std::to_string(cases) + " l-weights";
    if (g.relations.ok) g.relations.detail = std::to_string(hw_pass) + " relation assertions";
    return g;
}

double since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool report(int n, const char* title, const Outcome& o, double secs) {
    std::printf("criterion %2d %s: %s (%s; %.2fs)\n", n, title, o.ok ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
    return o.ok;
}

template <class F>
bool run(int n, const char* title, F&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = fn();
    } catch (const std::exception& e) {
        o.ok = false;
        o.detail = std::string("exception: ") + e.what();
    }
    return report(n, title, o, since(t0));
}

}  // namespace

int main() {
    bool ok = true;
    ok &= run(1, "folding table", folding_table);
    ok &= run(2, "twisted basis", twisted_basis);
    ok &= run(3, "bracket formulas", twisted_brackets);
    ok &= run(4, "Weyl module dimensions", weyl_dims);
    ok &= run(5, "simple quotients", simple_quotients);
    ok &= run(6, "evaluation formulas", evaluation_formulas);
    ok &= run(7, "twisted Drinfeld polynomials", drinfeld_polys);
    ok &= run(8, "identity suite", identities);
    auto t0 = std::chrono::steady_clock::now();
    GridResult g;
    try {
        g = restriction_theorem();
    } catch (const std::exception& e) {
        g.theorem.ok = g.relations.ok = false;
        g.theorem.detail = g.relations.detail = std::string("exception: ") + e.what();
    }
    double secs = since(t0);
    ok &= report(9, "restriction theorem", g.theorem, secs);
    ok &= report(10, "highest-l-weight relations", g.relations, secs);
    return ok ? 0 : 1;
}
