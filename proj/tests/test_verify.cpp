#include "doctest.h"

#include "common.hpp"
#include "hyperloop/verify.hpp"

using namespace hyperloop;

namespace {

FoldingDatum folding(const char* type, const char* aut) {
    RootSystem rs = build_root_system(type);
    return fold(rs, parse_automorphism(rs, aut));
}

std::string failures(const VerificationReport& r) {
    std::string out;
    for (const auto& a : r.assertions)
        if (a.status == "fail") out += a.name + " " + a.witness.dump().substr(0, 400) + "\n";
    return out;
}

}  // namespace

TEST_CASE("report json shape") {
    VerificationReport r;
    r.suite = "s";
    r.case_desc = {{"id", "c"}};
    r.add("ok", true, {{"ignored", 1}});
    r.add("bad", false, {{"x", 1}});
    r.skip("later", "rank");
    auto j = r.to_json();
    CHECK(j["suite"] == "s");
    CHECK(j["timing"].is_null());
    CHECK(j["assertions"].size() == 3);
    CHECK_FALSE(j["assertions"][0].contains("witness"));
    CHECK(j["assertions"][1]["witness"]["x"] == 1);
    CHECK(j["assertions"][2]["status"] == "skipped: rank");
    CHECK_FALSE(r.passed());
    CHECK(r.to_json(true)["timing"].is_number());
    VerificationReport outer;
    outer.merge(r);
    CHECK(outer.assertions[0].name == "c: ok");
}

TEST_CASE("Heisenberg divided powers") {
    auto r = check_heisenberg_identity(6);
    CHECK_MESSAGE(r.passed(), failures(r));
    CHECK(r.count("pass") == 6);
    // byte-stable
    CHECK(check_heisenberg_identity(2).to_json() == check_heisenberg_identity(2).to_json());
}

TEST_CASE("divided-power sums and binomial addition") {
    for (const Ring* f : {&Ring::char0(), &Ring::finite(7), &Ring::finite(5), &Ring::finite(5, 2)}) {
        CAPTURE(f->name());
        auto r = check_divided_sums(6, *f, test_seed());
        CHECK_MESSAGE(r.passed(), failures(r));
        CHECK(r.count("fail") == 0);
    }
    // n! vanishes in F_5 for n = 5, 6
    CHECK(check_divided_sums(6, Ring::finite(5)).count("skipped") == 6);
}

TEST_CASE("nontwisted Garland identity on sl2") {
    const Ring& f = Ring::finite(7);
    auto cb = chevalley_basis(build_root_system("A1"));
    Scalar a = Scalar::from_int(f, 3);
    auto lm = evaluation_module(build_simple_module(cb, {1}, f), a);
    Vec v = lm->unit(lm->hv());
    // x^+ (x^- t) hv = a h hv = a hv
    Vec lhs = lm->x(0, 1, 0, 1).apply(lm->x(0, -1, 1, 1).apply(v));
    Vec want = v;
    for (auto& c : want) c *= a;
    CHECK(lhs == want);
    // and -Lambda_1 = a on V(1, a)
    CHECK(-lambda_series(*lm, v, 0, 1, 1)[1] == a);
    auto r = check_garland_nontwisted(*lm, 2, 3);
    CHECK_MESSAGE(r.passed(), failures(r));
}

TEST_CASE("twisted Garland identities") {
    struct Case {
        const char* type;
        const char* aut;
        IVec lambda;
        const Ring* field;
    };
    for (const auto& c : std::vector<Case>{{"A2", "flip", {2}, &Ring::finite(7)},
                                           {"A2", "flip", {1}, &Ring::char0()},
                                           {"A3", "flip", {1, 1}, &Ring::finite(5)},
                                           {"A4", "flip", {0, 1}, &Ring::finite(7)},
                                           {"D4", "rot3", {1, 0}, &Ring::finite(7)}}) {
        CAPTURE(c.type);
        FoldingDatum fd = folding(c.type, c.aut);
        const Ring& e = twisted_field(fd, *c.field);
        auto tm = restrict_module(sigma_evaluation_module(fd, c.lambda, Scalar::from_int(e, 2), *c.field), fd);
        auto r = check_garland_twisted(*tm, 1, 3);
        CHECK_MESSAGE(r.passed(), failures(r));
        CHECK(r.count("fail") == 0);
        CHECK(r.count("pass") > 0);
    }
}

TEST_CASE("Garland suite reports untriggerable parts") {
    auto r = run_garland_suite(2, {&Ring::finite(7)});
    CHECK_MESSAGE(r.passed(), failures(r));
    // A3 is above rank 2, so (a) and (b) have no family
    bool a = false, b = false;
    for (const auto& x : r.assertions) {
        if (x.name == "garland-tw (a)") a = x.status == "skipped: rank";
        if (x.name == "garland-tw (b)") b = x.status == "skipped: rank";
    }
    CHECK(a);
    CHECK(b);
    auto full = run_garland_suite(3, {&Ring::finite(7)});
    CHECK(full.passed());
    for (const auto& x : full.assertions) CHECK(x.name.find("garland-tw (") != 0);
}

TEST_CASE("highest-l-weight relations") {
    const Ring& f = Ring::finite(5);
    FoldingDatum a1 = folding("A2", "flip");
    const Ring& e = twisted_field(a1, f);
    auto ev = sigma_evaluation_module(a1, {1}, Scalar::from_int(e, 2), f);
    auto r = check_hw_relations(*restrict_module(ev, a1));
    CHECK_MESSAGE(r.passed(), failures(r));

    // d_mu = 2: (x^-_{mu,0})^{(2)} v != 0 although lambda(h_{mu,0}) = 1
    auto tm = restrict_module(ev, a1);
    CHECK(tm->highest_weight0() == IVec{1});
    Vec v = ev->unit(ev->hv());
    CHECK_FALSE(is_zero_vec(tm->x_mu(0, false, -1, 0, 2).apply(v)));
    CHECK(is_zero_vec(tm->x_mu(0, false, -1, 0, 3).apply(v)));

    // trivial module
    auto triv = restrict_module(sigma_evaluation_module(a1, {0}, Scalar::from_int(e, 2), f), a1);
    CHECK(check_hw_relations(*triv).passed());

    // tensor hv (x) hv
    FoldingDatum c2 = folding("A3", "flip");
    const Ring& f7 = Ring::finite(7);
    auto lm = loop_tensor(*sigma_evaluation_module(c2, {1, 0}, Scalar::from_int(f7, 2), f7),
                          *sigma_evaluation_module(c2, {0, 1}, Scalar::from_int(f7, 3), f7));
    auto tt = restrict_module(lm, c2);
    CHECK(tt->highest_weight0() == IVec{1, 1});
    auto rt = check_hw_relations(*tt);
    CHECK_MESSAGE(rt.passed(), failures(rt));
}

TEST_CASE("restriction theorem examples") {
    FoldingDatum a1 = folding("A2", "flip");
    const Ring& f5 = Ring::finite(5);
    auto r1 = check_restriction_theorem(fundamental(a1, 0, Scalar::from_int(f5, 2)), a1);
    CHECK_MESSAGE(r1.passed(), failures(r1));

    auto triv = check_restriction_theorem(lw_one(f5, 1, true), a1);
    CHECK(triv.passed());
    CHECK(triv.case_desc["dim"] == 1);

    FoldingDatum c2 = folding("A3", "flip");
    const Ring& f7 = Ring::finite(7);
    LWeight pi = lw_mul(fundamental(c2, 0, Scalar::from_int(f7, 2)), fundamental(c2, 0, Scalar::from_int(f7, 3)));
    auto r2 = check_restriction_theorem(pi, c2);
    CHECK_MESSAGE(r2.passed(), failures(r2));
    CHECK(r2.case_desc["factors"].size() == 2);
    CHECK(r2.case_desc["dim"] == 16);

    // same point twice: hv (x) hv generates only the symmetric square
    auto lm = loop_tensor(*sigma_evaluation_module(c2, {1, 0}, Scalar::from_int(f7, 2), f7),
                          *sigma_evaluation_module(c2, {1, 0}, Scalar::from_int(f7, 2), f7));
    auto tm = restrict_module(lm, c2);
    CHECK(twisted_closure_dim(*tm, lm->unit(lm->hv()), 8) == 10);

    // a^2 = b^2 with a != b lands in one block: V(omega_1 + omega_3) restricted
    LWeight same = lw_mul(fundamental(c2, 0, Scalar::from_int(f7, 2)), fundamental(c2, 0, Scalar::from_int(f7, 5)));
    auto r3 = check_restriction_theorem(same, c2);
    CHECK_MESSAGE(r3.passed(), failures(r3));
    CHECK(r3.case_desc["factors"].size() == 1);
}

TEST_CASE("restriction grid is deterministic") {
    FoldingDatum a1 = folding("A2", "flip");
    const Ring& f7 = Ring::finite(7);
    auto grid = lweight_grid(a1, f7, {2, 3, 5}, 2);
    CHECK(grid.size() == 10);  // 1 + 3 + 6
    for (const auto& pi : grid) {
        CAPTURE(pi.str());
        auto r = check_restriction_theorem(pi, a1);
        CHECK_MESSAGE(r.passed(), failures(r));
        CHECK(r.to_json().dump() == check_restriction_theorem(pi, a1).to_json().dump());
    }
}

TEST_CASE("restriction preconditions") {
    FoldingDatum c2 = folding("A3", "flip");
    const Ring& f7 = Ring::finite(7);
    LWeight bad = lw_one(f7, 2, true);
    lw_add_point(bad, 1, Scalar::from_int(f7, 3));  // 3 is not a square mod 7
    CHECK_THROWS_AS(check_restriction_theorem(bad, c2), Error);
}

TEST_CASE("twisted basis and bracket formulas") {
    struct Case {
        const char* type;
        const char* aut;
        int dim_fixed;  // dim of g^sigma: so3, sp4, so5, sp6, g2
    };
    for (const auto& c : std::vector<Case>{{"A2", "flip", 3}, {"A3", "flip", 10}, {"A4", "flip", 10},
                                           {"A5", "flip", 21}, {"D4", "rot3", 14}}) {
        CAPTURE(c.type);
        FoldingDatum fd = folding(c.type, c.aut);
        auto rb = check_twisted_basis(fd);
        CHECK_MESSAGE(rb.passed(), failures(rb));
        CHECK(rb.count("fail") == 0);
        auto rl = check_twisted_brackets(fd);
        CHECK_MESSAGE(rl.passed(), failures(rl));
        CHECK(rl.count("pass") > 0);

        TwistedBasis tb(fd);
        CHECK(static_cast<int>(tb.basis().size()) == tb.cb().dim());
        int fixed = 0;
        for (const auto& e : tb.basis()) fixed += e.eps == 0;
        CHECK(fixed == c.dim_fixed);
    }
}

TEST_CASE("doubled root vector in A2") {
    // x^+_{theta,1} = [x^+_1, x^+_2] and x^-_{theta,1} = -[x^-_1, x^-_2], theta = alpha_1 + alpha_2
    FoldingDatum fd = folding("A2", "flip");
    TwistedBasis tb(fd);
    const auto& cb = tb.cb();
    const Ring& r = tb.ring();
    int theta = -1;
    for (int a = 0; a < cb.num_pos(); ++a)
        if (cb.rs().pos[a] == IVec{1, 1}) theta = a;
    REQUIRE(theta >= 0);
    LieElem up = cb.bracket(cb.unit(cb.xp(0), r), cb.unit(cb.xp(1), r), r);
    LieElem dn = cb.bracket(cb.unit(cb.xm(0), r), cb.unit(cb.xm(1), r), r);
    CHECK(lie_equal(tb.x_alpha(theta, 1, 1), up));
    CHECK(lie_equal(tb.x_alpha(theta, 1, -1), lie_scaled(dn, Scalar::from_int(r, -1))));
    // theta is sigma-fixed, so its eps = 0 component vanishes
    CHECK(tb.index_x(theta, 0, 1) == -1);
}
