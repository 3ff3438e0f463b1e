#include "doctest.h"

#include <set>

#include "common.hpp"
#include "hyperloop/coeffring.hpp"

using namespace hyperloop;

TEST_CASE("reduce: small examples") {
    const Ring& q = Ring::char0();
    const Ring& f5 = Ring::finite(5);
    auto e5 = make_embedding(f5, 1, false);
    CHECK(reduce(Scalar::from_rational(q, Rational(1, 2)), e5).code() == 3);

    const Ring& qs = Ring::char0(1, true);
    const Ring& f7 = Ring::finite(7);
    auto e7 = make_embedding(f7, 1, true);
    Scalar s = reduce(Scalar::sqrt2(qs), e7);
    CHECK(s.code() == 3);
    CHECK((s * s).code() == 2);

    const Ring& qz = Ring::char0(3, false);
    auto e7z = make_embedding(f7, 3, false);
    Scalar z = reduce(Scalar::zeta(qz), e7z);
    CHECK(z.code() == 2);
    CHECK((z * z * z).is_one());
    CHECK((Scalar::one(f7) + z + z * z).is_zero());
}

TEST_CASE("reduce: error paths") {
    const Ring& q = Ring::char0();
    auto e5 = make_embedding(Ring::finite(5), 1, false);
    CHECK_THROWS_AS(reduce(Scalar::from_rational(q, Rational(1, 5)), e5), Error);
    try {
        make_embedding(Ring::finite(3), 3, false);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::CharEqualsOrder);
    }
    try {
        make_embedding(Ring::finite(5), 3, false);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoPrimitiveRoot);
    }
    CHECK_NOTHROW(make_embedding(Ring::finite(5, 2), 3, false));
}

TEST_CASE("ring axioms on random scalars") {
    auto rng = test_rng();
    std::vector<const Ring*> rings = {&Ring::char0(), &Ring::char0(3, false), &Ring::char0(1, true),
                                      &Ring::char0(3, true), &Ring::finite(7), &Ring::finite(5, 2),
                                      &Ring::finite(2, 3), &Ring::finite(3, 2)};
    for (const Ring* r : rings) {
        for (int t = 0; t < 60; ++t) {
            Scalar a = Scalar::random(*r, rng), b = Scalar::random(*r, rng), c = Scalar::random(*r, rng);
            CHECK((a + b) * c == a * c + b * c);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * b == b * a);
            CHECK((a - a).is_zero());
            if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
        }
    }
    const Ring& qz = Ring::char0(3, true);
    Scalar z = Scalar::zeta(qz), s = Scalar::sqrt2(qz);
    CHECK(z.pow(3).is_one());
    CHECK((Scalar::one(qz) + z + z * z).is_zero());
    CHECK(s * s == Scalar::from_int(qz, 2));
}

TEST_CASE("reduce is a ring homomorphism") {
    auto rng = test_rng();
    const Ring& src = Ring::char0(3, true);
    for (auto [p, k] : std::vector<std::pair<int, int>>{{7, 1}, {23, 1}, {5, 2}, {17, 2}}) {
        const Ring& f = Ring::finite(p, k);
        Embedding e;
        try {
            e = make_embedding(f, 3, true);
        } catch (const Error&) {
            continue;
        }
        for (int t = 0; t < 50; ++t) {
            Scalar a = Scalar::random(src, rng, 4), b = Scalar::random(src, rng, 4);
            Scalar ra, rb;
            try {
                ra = reduce(a, e);
                rb = reduce(b, e);
            } catch (const Error& err) {
                CHECK(err.code() == ErrorCode::DenominatorNotInvertible);
                continue;
            }
            CHECK(reduce(a + b, e) == ra + rb);
            CHECK(reduce(a * b, e) == ra * rb);
        }
        CHECK(reduce(Scalar::one(src), e).is_one());
    }
}

TEST_CASE("hermite normal form") {
    IntLattice l{2, {{2, 0}, {0, 2}, {1, 1}}};
    IntLattice h = hermite_normal_form(l);
    REQUIRE(h.rank() == 2);
    CHECK(h.rows[0] == std::vector<Integer>{1, 1});
    CHECK(h.rows[1] == std::vector<Integer>{0, 2});
    // brute-force oracle: same points in a box
    std::set<std::pair<long, long>> a, b;
    for (int x = -4; x <= 4; ++x)
        for (int y = -4; y <= 4; ++y)
            for (int z = -4; z <= 4; ++z) {
                long u = 2 * x + z, v = 2 * y + z;
                if (std::abs(u) <= 3 && std::abs(v) <= 3) a.insert({u, v});
            }
    for (int x = -8; x <= 8; ++x)
        for (int y = -8; y <= 8; ++y) {
            long u = x, v = x + 2 * y;
            if (std::abs(u) <= 3 && std::abs(v) <= 3) b.insert({u, v});
        }
    CHECK(a == b);

    IntLattice id = hermite_normal_form(IntLattice{2, {{1, 0}, {0, 1}}});
    CHECK(id.rows == std::vector<std::vector<Integer>>{{1, 0}, {0, 1}});
    CHECK(hermite_normal_form(IntLattice{3, {}}).rank() == 0);
}

TEST_CASE("hermite normal form spans the input lattice") {
    auto rng = test_rng();
    std::uniform_int_distribution<int> d(-6, 6);
    for (int t = 0; t < 40; ++t) {
        IntLattice l{4, {}};
        int rows = 1 + t % 5;
        for (int r = 0; r < rows; ++r) {
            std::vector<Integer> v(4);
            for (auto& x : v) x = d(rng);
            l.rows.push_back(v);
        }
        IntLattice h = hermite_normal_form(l);
        std::vector<Integer> c;
        for (const auto& v : l.rows) CHECK(lattice_coordinates(h, v, c));
        // each HNF row lies in the row span: re-reduce input + row yields same HNF
        for (const auto& v : h.rows) {
            IntLattice l2 = l;
            l2.rows.push_back(v);
            CHECK(hermite_normal_form(l2).rows == h.rows);
        }
    }
}

TEST_CASE("find_roots") {
    const Ring& f5 = Ring::finite(5);
    RootSet r = find_roots(parse_poly(f5, "1-u"), f5);
    REQUIRE(r.roots.size() == 1);
    CHECK(r.roots[0].first.is_one());
    CHECK(r.split);

    r = find_roots(parse_poly(f5, "1+u^2"), f5);
    REQUIRE(r.roots.size() == 2);
    CHECK(r.roots[0].first.code() == 2);
    CHECK(r.roots[1].first.code() == 3);

    const Ring& f7 = Ring::finite(7);
    r = find_roots(parse_poly(f7, "1+u^2"), f7);
    CHECK(r.roots.empty());
    CHECK(!r.split);
    const Ring& f49 = Ring::finite(7, 2);
    Poly g = parse_poly(f7, "1+u^2");
    Poly g49;
    for (auto& c : g) g49.push_back(embed(c, f49));
    r = find_roots(g49, f49);
    CHECK(r.roots.size() == 2);
    CHECK(r.split);
}

TEST_CASE("find_roots agrees with exhaustive evaluation") {
    auto rng = test_rng();
    for (auto [p, k] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}, {5, 1}, {13, 1}, {3, 3}, {7, 2}}) {
        const Ring& f = Ring::finite(p, k);
        for (int t = 0; t < 10; ++t) {
            Poly poly;
            int deg = 1 + t % 4;
            for (int i = 0; i <= deg; ++i) poly.push_back(Scalar::random(f, rng));
            if (poly[0].is_zero()) poly[0] = Scalar::one(f);
            if (poly[deg].is_zero()) poly[deg] = Scalar::one(f);
            RootSet r = find_roots(poly, f);
            std::set<std::uint32_t> got, want;
            for (auto& [x, mult] : r.roots) got.insert(x.code());
            for (std::uint32_t c = 0; c < f.size(); ++c)
                if (poly_eval(poly, Scalar::from_code(f, c)).is_zero()) want.insert(c);
            CHECK(got == want);
        }
    }
}

TEST_CASE("scalar strings round trip") {
    auto rng = test_rng();
    for (const Ring* r : {&Ring::char0(3, true), &Ring::finite(5, 2), &Ring::finite(11)}) {
        for (int t = 0; t < 30; ++t) {
            Scalar a = Scalar::random(*r, rng);
            CHECK(parse_scalar(*r, a.str()) == a);
        }
    }
    CHECK(binomial(-1, 3) == -1);
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(2, 5) == 0);
}

TEST_CASE("find_roots in characteristic 0") {
    const Ring& q = Ring::char0();
    RootSet r = find_roots(parse_poly(q, "1-5u+6u^2"), q);
    CHECK(r.split);
    REQUIRE(r.roots.size() == 2);
    CHECK(find_roots(parse_poly(q, "1+u^2"), q).roots.empty());
    const Ring& z = Ring::char0(3, true);
    Scalar zeta = Scalar::zeta(z), s2 = Scalar::sqrt2(z);
    Poly f = poly_mul(poly_mul(Poly{Scalar::one(z), -zeta * Scalar::from_int(z, 2)}, Poly{Scalar::one(z), -s2}),
                      Poly{Scalar::one(z), -zeta * Scalar::from_int(z, 2)});
    r = find_roots(f, z);
    CHECK(r.split);
    int total = 0;
    for (const auto& [x, mult] : r.roots) {
        total += mult;
        CHECK(poly_eval(f, x).is_zero());
    }
    CHECK(total == 3);
}
