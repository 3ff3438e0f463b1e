#include "doctest.h"

#include "common.hpp"
#include "hyperloop/loopaction.hpp"

using namespace hyperloop;

namespace {

FoldingDatum folding(const char* type, const char* aut) {
    RootSystem rs = build_root_system(type);
    return fold(rs, parse_automorphism(rs, aut));
}

LoopModulePtr two_point_module(const FoldingDatum& fd, const IVec& l1, const IVec& l2, const Ring& base, long long a,
                               long long b) {
    const Ring& f = twisted_field(fd, base);
    auto m1 = sigma_evaluation_module(fd, l1, Scalar::from_int(f, a), base);
    auto m2 = sigma_evaluation_module(fd, l2, Scalar::from_int(f, b), base);
    return loop_tensor(*m1, *m2);
}

Scalar factorial(const Ring& f, int k) {
    Scalar s = Scalar::one(f);
    for (int i = 2; i <= k; ++i) s *= Scalar::from_int(f, i);
    return s;
}

}  // namespace

TEST_CASE("evaluation action on the highest weight vector") {
    const Ring& q = Ring::char0();
    auto cb = chevalley_basis(build_root_system("B2"));
    IVec lambda{2, 3};
    Scalar a = Scalar::from_int(q, 3);
    auto lm = evaluation_module(build_weyl_module(cb, lambda, q), a);
    Vec hv = lm->unit(lm->hv());
    for (int root = 0; root < cb->rs().num_pos(); ++root) {
        int n = cb->rs().weight_on_coroot(lambda, root);
        for (int dir : {1, -1}) {
            Poly lam = lambda_series(*lm, hv, root, dir, 6);
            for (int r = 0; r <= 6; ++r)
                CHECK(lam[r] == (-a.pow(dir)).pow(r) * Scalar::from_integer(q, binomial(n, r)));
        }
        // ev_a (x tensor t^r)^{(k)} = a^{rk} x^{(k)}
        for (int r : {-2, 1, 3})
            for (int k = 1; k <= 2; ++k) {
                Vec want = lm->factors()[0]->apply(root, -1, k, hv);
                for (auto& c : want) c *= a.pow(static_cast<long long>(r) * k);
                CHECK(eval_action(*lm, root, -1, r, k, hv) == want);
            }
    }
}

TEST_CASE("loop modules represent the loop algebra") {
    for (const Ring* f : {&Ring::char0(), &Ring::finite(7)}) {
        auto cb = chevalley_basis(build_root_system("A2"));
        auto v1 = evaluation_module(build_weyl_module(cb, {1, 0}, *f), Scalar::from_int(*f, 2));
        auto v2 = evaluation_module(build_weyl_module(cb, {0, 1}, *f), Scalar::from_int(*f, 5));
        auto lm = loop_tensor(*v1, *v2);
        CHECK(lm->dim() == 9);
        CHECK(lm->highest_weight() == IVec{1, 1});
        const int P = cb->rs().num_pos();
        Embedding emb = make_embedding(*f, 1, false);
        for (int root = 0; root < P; ++root)
            for (int r : {-1, 0, 2})
                for (int s : {-2, 1}) {
                    const SparseMatrix& x = lm->x(root, 1, r, 1);
                    const SparseMatrix& y = lm->x(root, -1, s, 1);
                    SparseMatrix lhs = x * y + (y * x).scaled(-Scalar::one(*f));
                    LieElem h;
                    IVec co = cb->rs().coroot(root);
                    for (int i = 0; i < 2; ++i)
                        if (co[i]) h[2 * P + i] = Scalar::from_int(Ring::char0(), co[i]);
                    SparseMatrix rhs(*f, lm->dim(), lm->dim());
                    for (std::size_t b = 0; b < lm->dim(); ++b) rhs.add(b, b, lm->h_value(h, emb, r + s, b));
                    CHECK(lhs == rhs);
                }
        // divided powers multiply as (x t^r)^{(k)} (x t^r)^{(l)} = binom(k+l, k) (x t^r)^{(k+l)}
        for (int root = 0; root < P; ++root) {
            SparseMatrix lhs = lm->x(root, -1, 3, 1) * lm->x(root, -1, 3, 1);
            CHECK(lhs == lm->x(root, -1, 3, 2).scaled(Scalar::from_int(*f, 2)));
        }
    }
}

TEST_CASE("twisted divided powers match powers of the degree one operator") {
    struct Case {
        const char* type;
        const char* aut;
        IVec l1, l2;
    };
    for (const auto& c : std::vector<Case>{{"A2", "flip", {1}, {1}},
                                           {"A3", "flip", {1, 0}, {0, 1}},
                                           {"A4", "flip", {0, 1}, {1, 0}},
                                           {"D4", "rot3", {1, 0}, {0, 1}}}) {
        CAPTURE(c.type);
        FoldingDatum fd = folding(c.type, c.aut);
        auto tm = restrict_module(two_point_module(fd, c.l1, c.l2, Ring::char0(), 2, -3), fd);
        const Ring& f = tm->field();
        const ChevalleyBasis& cb = tm->tb().cb();
        for (int root : fd.O)
            for (int sign : {1, -1})
                for (int r = -3; r <= 3; ++r) {
                    int eps = ((-r) % fd.m + fd.m) % fd.m;
                    SparseMatrix x1(f, tm->dim(), tm->dim());
                    for (const auto& [sym, co] : tm->tb().x_alpha(root, eps, sign))
                        x1 = x1 + tm->base().x(cb.root_of(sym), sign, r, 1).scaled(tm->reduce(co));
                    CHECK(tm->x(root, sign, r, 1) == x1);
                    SparseMatrix pw = x1;
                    for (int k = 2; k <= 4; ++k) {
                        pw = pw * x1;
                        CHECK(tm->x(root, sign, r, k).scaled(factorial(f, k)) == pw);
                    }
                }
    }
}

TEST_CASE("Heisenberg expansion is used for A2n short roots") {
    FoldingDatum fd = folding("A2", "flip");
    TwistedBasis tb(fd);
    auto terms = expand_twisted_op(tb, 0, -1, 1, 2);
    bool central = false;
    for (const auto& t : terms)
        for (const auto& op : t.ops)
            if (op.root == 2 && op.r == 2) central = true;
    CHECK(central);
    CHECK(expand_twisted_op(tb, 0, 1, 0, 0).size() == 1);
    // the fixed root x_theta sits in odd degree only
    CHECK(expand_twisted_op(tb, 2, 1, 0, 1).empty());
    CHECK(expand_twisted_op(tb, 2, 1, 1, 1).size() == 1);
}

TEST_CASE("twisted Lambda series: exponential, product form and closed form agree") {
    struct Case {
        const char* type;
        const char* aut;
        IVec lambda;
    };
    for (const auto& c : std::vector<Case>{{"A2", "flip", {2}},
                                           {"A3", "flip", {1, 1}},
                                           {"A4", "flip", {1, 1}},
                                           {"D4", "rot3", {1, 1}},
                                           {"E6", "flip", {1, 0, 0, 0}}}) {
        CAPTURE(c.type);
        FoldingDatum fd = folding(c.type, c.aut);
        const Ring& q = twisted_field(fd, Ring::char0());
        Scalar a = Scalar::from_int(q, 3);
        auto tm = restrict_module(sigma_evaluation_module(fd, c.lambda, a, Ring::char0()), fd);
        Vec hv = tm->base().unit(tm->hv());
        IVec lam = fd.extend_weight(c.lambda);
        for (int mu = 0; mu < fd.folded.num_pos(); ++mu)
            for (int dir : {1, -1}) {
                Poly s = lambda_sigma_series_mu(*tm, hv, mu, dir, 6);
                for (int r = 0; r <= 6; ++r) CHECK(s[r] == ev_sigma_lambda(fd, lam, a, tm->embedding(), mu, r, dir));
            }
        // Drinfeld polynomial shape on simple nodes
        for (int i = 0; i < fd.folded.rank; ++i) {
            Poly s = lambda_sigma_series(*tm, hv, i, 1, 8);
            bool long_node = !fd.a2n && fd.gamma[fd.o_map[i]] == 1;
            Scalar x = long_node ? a.pow(fd.m) : a;
            for (int r = 0; r <= 8; ++r)
                CHECK(s[r] == (-x).pow(r) * Scalar::from_integer(q, binomial(c.lambda[i], r)));
        }
    }
}

TEST_CASE("twisted Lambda series against the untwisted ones") {
    for (const char* t : {"A3", "D4"}) {
        FoldingDatum fd = folding(t, t[0] == 'D' ? "rot3" : "flip");
        const Ring& q = twisted_field(fd, Ring::char0());
        IVec l1(fd.folded.rank, 0), l2(fd.folded.rank, 0);
        l1[0] = 1;
        l2[fd.folded.rank - 1] = 1;
        auto tm = restrict_module(two_point_module(fd, l1, l2, Ring::char0(), 2, 5), fd);
        const LoopModule& lm = tm->base();
        Vec hv = lm.unit(lm.hv());
        const int N = 6;
        Scalar zeta = tm->embedding().zeta;
        for (int mu = 0; mu < fd.folded.num_pos(); ++mu) {
            int rep = fd.rep_of_folded(mu);
            for (int dir : {1, -1}) {
                Poly want;
                if (fd.gamma[rep] == fd.m) {
                    want = {Scalar::one(q)};
                    for (int j = 0; j < fd.m; ++j) {
                        Poly l = lambda_series(lm, hv, fd.sigma_root(rep, j), dir, N);
                        // u -> zeta^{-j dir} u
                        for (int r = 0; r <= N; ++r) l[r] *= zeta.pow(static_cast<long long>(-j * dir * r));
                        want = poly_mul(want, l);
                        want.resize(N + 1);
                    }
                } else {
                    want = lambda_series(lm, hv, rep, dir, N, fd.m);
                }
                CHECK(lambda_sigma_series_mu(*tm, hv, mu, dir, N) == want);
            }
        }
    }
}

TEST_CASE("product form in small characteristic matches reduction of the char 0 series") {
    FoldingDatum fd = folding("A2", "flip");
    auto tq = restrict_module(sigma_evaluation_module(fd, {3}, Scalar::from_int(Ring::char0(), 2), Ring::char0()), fd);
    auto t7 = restrict_module(sigma_evaluation_module(fd, {3}, Scalar::from_int(Ring::finite(7), 2), Ring::finite(7)), fd);
    CHECK(t7->field().size() == 7);  // 3^2 = 2 mod 7
    const int N = 10;
    for (int dir : {1, -1}) {
        Poly sq = lambda_sigma_series(*tq, tq->base().unit(tq->hv()), 0, dir, N);
        Poly s7 = lambda_sigma_series(*t7, t7->base().unit(t7->hv()), 0, dir, N);
        for (int r = 0; r <= N; ++r) CHECK(s7[r] == reduce(sq[r], t7->embedding()));
    }
}

TEST_CASE("loop action preconditions") {
    FoldingDatum a3 = folding("A3", "flip");
    FoldingDatum a2 = folding("A2", "flip");
    FoldingDatum d4 = folding("D4", "rot3");
    auto code = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::Internal;
    };
    CHECK(code([&] { twisted_field(a3, Ring::finite(2)); }) == ErrorCode::CharEqualsOrder);
    CHECK(code([&] { twisted_field(d4, Ring::finite(3)); }) == ErrorCode::CharEqualsOrder);
    CHECK(code([&] { twisted_field(a2, Ring::finite(2)); }) == ErrorCode::CharTwoA2n);
    CHECK(twisted_field(a2, Ring::finite(5)).size() == 25);
    CHECK(twisted_field(d4, Ring::finite(5)).size() == 25);
    CHECK(twisted_field(d4, Ring::finite(7)).size() == 7);
    auto cb = chevalley_basis(build_root_system("A1"));
    CHECK(code([&] { evaluation_module(build_weyl_module(cb, {1}, Ring::char0()), Scalar::zero(Ring::char0())); }) ==
          ErrorCode::ZeroEvaluationPoint);
    // a module over the wrong Chevalley basis or a field without sqrt 2
    auto plain = evaluation_module(build_weyl_module(chevalley_basis(a2.base), {1, 0}, Ring::char0()),
                                   Scalar::one(Ring::char0()));
    CHECK(code([&] { restrict_module(plain, a2); }) == ErrorCode::InvalidArgument);
    // a non-eigenvector is rejected
    auto lm = loop_tensor(*evaluation_module(build_weyl_module(cb, {1}, Ring::char0()), Scalar::from_int(Ring::char0(), 1)),
                          *evaluation_module(build_weyl_module(cb, {1}, Ring::char0()), Scalar::from_int(Ring::char0(), 2)));
    Vec v = zero_vec(Ring::char0(), 4);
    v[1] = v[2] = Scalar::one(Ring::char0());
    CHECK(code([&] { lambda_series(*lm, v, 0, 1, 3); }) == ErrorCode::NotHighestLWeight);
    CHECK(code([&] { lm->x(0, 1, 0, lm->kmax() + 1); }) == ErrorCode::DegreeOutOfRange);
}
