#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hyperloop/errors.hpp"

namespace hyperloop {

using Integer = mpz_class;
using Rational = mpq_class;

/// Coefficient ring: either Q(zeta_m)[sqrt2 if flagged] or a finite field F_{p^k}.
/// Rings are interned: obtain them through char0()/finite() and compare by address.
class Ring {
public:
    enum class Kind { Char0, Finite };

    static const Ring& char0(int m = 1, bool with_sqrt2 = false);
    /// F_{p^k} = F_p[x]/(f) with f the least monic irreducible of degree k, where
    /// polynomials are ordered by their coefficient tuple (c_{k-1}, ..., c_0).
    static const Ring& finite(std::uint32_t p, int k = 1);
    /// Parses "Q", "Q(z3)", "Q(s)", "Q(z3,s)", "F7", "F25", "F5^2".
    static const Ring& parse(const std::string& spec);

    Kind kind() const { return kind_; }
    bool is_char0() const { return kind_ == Kind::Char0; }
    bool is_finite() const { return kind_ == Kind::Finite; }
    int m() const { return m_; }
    bool has_sqrt2() const { return sqrt2_; }
    std::uint32_t p() const { return p_; }
    int k() const { return k_; }
    std::uint32_t size() const { return q_; }
    std::uint32_t characteristic() const { return is_char0() ? 0 : p_; }
    /// Monic modulus, coefficients low to high (length k+1).
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }
    std::string name() const;

    // Finite-field arithmetic on element codes (code = sum c_i p^i).
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t neg(std::uint32_t a) const;
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t inv(std::uint32_t a) const;
    std::uint32_t from_int(long long n) const;
    std::uint32_t primitive_element() const { return generator_; }

    /// Smallest finite field F_{p^{k'}} with k | k' that contains this one and
    /// satisfies the requirements (primitive m-th root of unity, square root of 2).
    const Ring& extension_with(int m, bool need_sqrt2) const;

private:
    Ring() = default;
    void build_tables();

    Kind kind_ = Kind::Char0;
    int m_ = 1;
    bool sqrt2_ = false;
    std::uint32_t p_ = 0;
    int k_ = 0;
    std::uint32_t q_ = 0;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> log_;
    std::uint32_t generator_ = 0;

    friend struct RingRegistry;
};

/// Exact element of a Ring. Char0 coordinates are over the basis {1, z, s, z*s}
/// with z a primitive cube root of unity (only used when m = 3) and s = sqrt 2.
class Scalar {
public:
    using Coords = std::array<Rational, 4>;

    Scalar();  // zero of Q
    Scalar(const Scalar& other);
    Scalar(Scalar&& other) noexcept = default;
    Scalar& operator=(const Scalar& other);
    Scalar& operator=(Scalar&& other) noexcept = default;
    ~Scalar() = default;

    static Scalar zero(const Ring& r);
    static Scalar one(const Ring& r);
    static Scalar from_int(const Ring& r, long long n);
    static Scalar from_integer(const Ring& r, const Integer& n);
    static Scalar from_rational(const Ring& r, const Rational& q);
    static Scalar from_code(const Ring& r, std::uint32_t code);
    static Scalar from_coords(const Ring& r, Coords c);
    /// Primitive m-th root of unity of a char0 ring (m = 2 gives -1).
    static Scalar zeta(const Ring& r);
    static Scalar sqrt2(const Ring& r);
    static Scalar random(const Ring& r, std::mt19937_64& rng, int height = 5);

    const Ring& ring() const { return *ring_; }
    bool is_zero() const;
    bool is_one() const;
    std::uint32_t code() const { return code_; }
    const Coords& coords() const { return *c0_; }
    bool is_rational() const;
    Rational rational() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    Scalar inverse() const;
    Scalar pow(long long e) const;

    /// Canonical string: "a/b + (c/d)*z + (e/f)*s + (g/h)*z*s" (zero terms dropped)
    /// in char 0; "c" for prime fields and "(c0,c1,...)" for extension fields.
    std::string str() const;
    /// Total order used for canonical choices (codes in finite fields).
    bool canonical_less(const Scalar& o) const;

private:
    const Ring* ring_;
    std::uint32_t code_ = 0;
    std::unique_ptr<Coords> c0_;
};

Scalar parse_scalar(const Ring& r, const std::string& text);

/// Images of z and s used to reduce char0 scalars into a finite field.
struct Embedding {
    const Ring* target = nullptr;
    int m = 1;
    Scalar zeta;
    Scalar sqrt2;
    bool has_sqrt2 = false;
};

/// Canonical embedding data: least primitive m-th root of unity and least square root of 2.
/// Errors: CharEqualsOrder if char = m > 1; NoPrimitiveRoot / RingLacksRoots if absent.
Embedding make_embedding(const Ring& target, int m, bool need_sqrt2);

/// Ring homomorphism Z[1/n, z, s] -> target.
Scalar reduce(const Scalar& s, const Embedding& emb);

/// Image of an element of a finite field inside an extension field (prime-field elements map
/// to themselves; otherwise the least root of the subfield modulus is used).
Scalar embed(const Scalar& x, const Ring& super);

/// Polynomials are coefficient vectors, low degree first.
using Poly = std::vector<Scalar>;

Poly poly_trim(Poly f);
Poly poly_mul(const Poly& f, const Poly& g);
Scalar poly_eval(const Poly& f, const Scalar& x);
std::string poly_str(const Poly& f, const std::string& var = "u");
/// Parses e.g. "1-2u+3u^2" or "1+(1,2)u" over the given ring.
Poly parse_poly(const Ring& r, const std::string& text);

struct RootSet {
    std::vector<std::pair<Scalar, int>> roots;  // root, multiplicity; canonical order
    bool split = false;                         // total multiplicity == degree
};

/// All roots of f (nonzero constant term) in the search field, by exhaustive evaluation.
RootSet find_roots(const Poly& f, const Ring& search_field);

/// Integer lattice given by generator rows.
struct IntLattice {
    std::size_t ambient_dim = 0;
    std::vector<std::vector<Integer>> rows;
    std::size_t rank() const { return rows.size(); }
};

/// Row-style Hermite normal form: pivots positive and strictly increasing,
/// entries above each pivot reduced into [0, pivot).
IntLattice hermite_normal_form(const IntLattice& lattice);

/// Solves c * B = v for integer c when B is in Hermite normal form; false if v is not in the lattice.
bool lattice_coordinates(const IntLattice& hnf, const std::vector<Integer>& v, std::vector<Integer>& coeffs);

Integer binomial(long long n, long long k);  // generalized: n may be negative

}  // namespace hyperloop
