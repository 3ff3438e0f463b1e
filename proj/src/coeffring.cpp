#include "hyperloop/coeffring.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace hyperloop {

namespace {

bool is_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

using Digits = std::vector<std::uint32_t>;

Digits to_digits(std::uint32_t code, std::uint32_t p, int k) {
    Digits d(k, 0);
    for (int i = 0; i < k; ++i) {
        d[i] = code % p;
        code /= p;
    }
    return d;
}

std::uint32_t from_digits(const Digits& d, std::uint32_t p) {
    std::uint32_t code = 0;
    for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) code = code * p + d[i];
    return code;
}

// Remainder of a modulo the monic polynomial f over F_p; coefficients low to high.
Digits poly_rem(Digits a, const Digits& f, std::uint32_t p) {
    const int df = static_cast<int>(f.size()) - 1;
    for (int i = static_cast<int>(a.size()) - 1; i >= df; --i) {
        std::uint64_t c = a[i];
        if (c == 0) continue;
        for (int j = 0; j <= df; ++j) {
            std::uint64_t sub = (c * f[j]) % p;
            a[i - df + j] = static_cast<std::uint32_t>((a[i - df + j] + p - sub) % p);
        }
    }
    a.resize(std::max(df, 0));
    return a;
}

Digits poly_mulmod(const Digits& a, const Digits& b, const Digits& f, std::uint32_t p) {
    Digits prod(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t(a[i]) * b[j]) % p);
    return poly_rem(prod, f, p);
}

bool divides_monic(const Digits& g, const Digits& f, std::uint32_t p) {
    Digits r = poly_rem(f, g, p);
    return std::all_of(r.begin(), r.end(), [](std::uint32_t c) { return c == 0; });
}

bool irreducible(const Digits& f, std::uint32_t p) {
    const int k = static_cast<int>(f.size()) - 1;
    for (int d = 1; d <= k / 2; ++d) {
        std::uint32_t count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (std::uint32_t c = 0; c < count; ++c) {
            Digits g = to_digits(c, p, d);
            g.push_back(1);
            if (divides_monic(g, f, p)) return false;
        }
    }
    return true;
}

}  // namespace

struct RingRegistry {
    std::mutex mu;
    std::map<std::tuple<int, int, int, int>, std::unique_ptr<Ring>> rings;

    static RingRegistry& instance() {
        static RingRegistry reg;
        return reg;
    }

    const Ring& get_char0(int m, bool s) {
        std::lock_guard<std::mutex> lock(mu);
        auto key = std::make_tuple(0, m, s ? 1 : 0, 0);
        auto it = rings.find(key);
        if (it != rings.end()) return *it->second;
        std::unique_ptr<Ring> r(new Ring());
        r->kind_ = Ring::Kind::Char0;
        r->m_ = m;
        r->sqrt2_ = s;
        auto& ref = *r;
        rings.emplace(key, std::move(r));
        return ref;
    }

    const Ring& get_finite(std::uint32_t p, int k) {
        std::lock_guard<std::mutex> lock(mu);
        auto key = std::make_tuple(1, static_cast<int>(p), k, 0);
        auto it = rings.find(key);
        if (it != rings.end()) return *it->second;
        std::unique_ptr<Ring> r(new Ring());
        r->kind_ = Ring::Kind::Finite;
        r->p_ = p;
        r->k_ = k;
        std::uint64_t q = 1;
        for (int i = 0; i < k; ++i) q *= p;
        r->q_ = static_cast<std::uint32_t>(q);
        r->build_tables();
        auto& ref = *r;
        rings.emplace(key, std::move(r));
        return ref;
    }
};

const Ring& Ring::char0(int m, bool with_sqrt2) {
    if (m < 1 || m > 3) fail(ErrorCode::InvalidArgument, "char0 ring order must be 1, 2 or 3");
    return RingRegistry::instance().get_char0(m, with_sqrt2);
}

const Ring& Ring::finite(std::uint32_t p, int k) {
    if (!is_prime(p)) fail(ErrorCode::InvalidArgument, "field characteristic must be prime, got " + std::to_string(p));
    if (k < 1) fail(ErrorCode::InvalidArgument, "extension degree must be positive");
    std::uint64_t q = 1;
    for (int i = 0; i < k; ++i) {
        q *= p;
        if (q > (1u << 22)) fail(ErrorCode::InvalidArgument, "field too large for table arithmetic");
    }
    return RingRegistry::instance().get_finite(p, k);
}

const Ring& Ring::parse(const std::string& spec) {
    std::string s;
    for (char c : spec)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s == "Q") return char0(1, false);
    if (s == "Q(s)") return char0(1, true);
    if (s == "Q(z3)") return char0(3, false);
    if (s == "Q(z3,s)") return char0(3, true);
    if (s.size() >= 2 && s[0] == 'F') {
        std::string body = s.substr(1);
        try {
            auto caret = body.find('^');
            if (caret != std::string::npos) {
                std::uint32_t p = static_cast<std::uint32_t>(std::stoul(body.substr(0, caret)));
                int k = std::stoi(body.substr(caret + 1));
                return finite(p, k);
            }
            std::uint64_t q = std::stoull(body);
            for (std::uint32_t p = 2; p <= q; ++p) {
                if (q % p != 0) continue;
                int k = 0;
                std::uint64_t t = q;
                while (t % p == 0) {
                    t /= p;
                    ++k;
                }
                if (t != 1) break;
                return finite(p, k);
            }
        } catch (const std::logic_error&) {
        }
    }
    fail(ErrorCode::InvalidArgument, "cannot parse field spec '" + spec + "'");
}

std::string Ring::name() const {
    if (is_char0()) {
        if (m_ == 3) return sqrt2_ ? "Q(z3,s)" : "Q(z3)";
        return sqrt2_ ? "Q(s)" : "Q";
    }
    return "F" + std::to_string(q_);
}

void Ring::build_tables() {
    if (k_ == 1) {
        modulus_ = {0, 1};
    } else {
        for (std::uint32_t c = 0; c < q_; ++c) {
            Digits f = to_digits(c, p_, k_);
            f.push_back(1);
            if (f[0] == 0) continue;
            if (irreducible(f, p_)) {
                modulus_ = f;
                break;
            }
        }
    }
    exp_.assign(q_, 0);
    log_.assign(q_, 0);
    if (q_ == 2) {
        generator_ = 1;
        exp_[0] = 1;
        log_[1] = 0;
        return;
    }
    for (std::uint32_t g = 2; g < q_; ++g) {
        Digits gd = to_digits(g, p_, k_);
        Digits cur = to_digits(1, p_, k_);
        std::vector<std::uint32_t> powers;
        powers.reserve(q_ - 1);
        bool ok = true;
        for (std::uint32_t e = 0; e < q_ - 1; ++e) {
            std::uint32_t code = from_digits(cur, p_);
            if (e > 0 && code == 1) {
                ok = false;
                break;
            }
            powers.push_back(code);
            cur = poly_mulmod(cur, gd, modulus_, p_);
        }
        if (!ok) continue;
        generator_ = g;
        for (std::uint32_t e = 0; e < q_ - 1; ++e) {
            exp_[e] = powers[e];
            log_[powers[e]] = e;
        }
        return;
    }
    fail(ErrorCode::Internal, "no primitive element found");
}

std::uint32_t Ring::add(std::uint32_t a, std::uint32_t b) const {
    if (k_ == 1) {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint32_t result = 0, scale = 1;
    for (int i = 0; i < k_; ++i) {
        std::uint32_t d = a % p_ + b % p_;
        if (d >= p_) d -= p_;
        result += d * scale;
        scale *= p_;
        a /= p_;
        b /= p_;
    }
    return result;
}

std::uint32_t Ring::neg(std::uint32_t a) const {
    if (k_ == 1) return a == 0 ? 0 : p_ - a;
    std::uint32_t result = 0, scale = 1;
    for (int i = 0; i < k_; ++i) {
        std::uint32_t d = a % p_;
        result += (d == 0 ? 0 : p_ - d) * scale;
        scale *= p_;
        a /= p_;
    }
    return result;
}

std::uint32_t Ring::sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

std::uint32_t Ring::mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    if (k_ == 1) return static_cast<std::uint32_t>(std::uint64_t(a) * b % p_);
    std::uint32_t e = log_[a] + log_[b];
    if (e >= q_ - 1) e -= q_ - 1;
    return exp_[e];
}

std::uint32_t Ring::inv(std::uint32_t a) const {
    if (a == 0) fail(ErrorCode::InvalidArgument, "division by zero in " + name());
    std::uint32_t e = log_[a];
    return exp_[e == 0 ? 0 : q_ - 1 - e];
}

std::uint32_t Ring::from_int(long long n) const {
    long long r = n % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<std::uint32_t>(r);
}

const Ring& Ring::extension_with(int m, bool need_sqrt2) const {
    if (is_char0()) {
        int mm = std::max(m_, m);
        if (m == 3 || m_ == 3) mm = 3;
        return char0(mm == 2 ? 1 : mm, sqrt2_ || need_sqrt2);
    }
    if (m > 1 && p_ == static_cast<std::uint32_t>(m))
        fail(ErrorCode::CharEqualsOrder, "characteristic equals the automorphism order");
    if (need_sqrt2 && p_ == 2) fail(ErrorCode::CharTwoA2n, "square root of 2 needs odd characteristic");
    for (int mult = 1; mult <= 6; ++mult) {
        int kk = k_ * mult;
        std::uint64_t q = 1;
        for (int i = 0; i < kk; ++i) q *= p_;
        if (q > (1u << 22)) break;
        if (m > 1 && (q - 1) % m != 0) continue;
        const Ring& f = finite(p_, kk);
        if (need_sqrt2) {
            bool found = false;
            std::uint32_t two = f.from_int(2);
            for (std::uint32_t c = 1; c < f.size() && !found; ++c) found = f.mul(c, c) == two;
            if (!found) continue;
        }
        return f;
    }
    fail(ErrorCode::NoPrimitiveRoot, "no small extension of " + name() + " has the required roots");
}

// ---------------------------------------------------------------------------
// Scalar

namespace {

// (a0 + a1 z)(b0 + b1 z) with z^2 = -1 - z.
inline void zmul(const Rational& a0, const Rational& a1, const Rational& b0, const Rational& b1, Rational& r0,
                 Rational& r1) {
    Rational bd = a1 * b1;
    r0 = a0 * b0 - bd;
    r1 = a0 * b1 + a1 * b0 - bd;
}

const Ring& join(const Ring& a, const Ring& b) {
    if (&a == &b) return a;
    if (a.is_char0() && b.is_char0()) {
        int m = (a.m() == 3 || b.m() == 3) ? 3 : std::max(a.m(), b.m());
        return Ring::char0(m, a.has_sqrt2() || b.has_sqrt2());
    }
    fail(ErrorCode::InvalidArgument, "mixed arithmetic between " + a.name() + " and " + b.name());
}

std::string rat_str(const Rational& q) { return q.get_str(); }

}  // namespace

Scalar::Scalar() : ring_(&Ring::char0()), c0_(std::make_unique<Coords>()) {}

Scalar::Scalar(const Scalar& other)
    : ring_(other.ring_), code_(other.code_), c0_(other.c0_ ? std::make_unique<Coords>(*other.c0_) : nullptr) {}

Scalar& Scalar::operator=(const Scalar& other) {
    if (this == &other) return *this;
    ring_ = other.ring_;
    code_ = other.code_;
    if (other.c0_) {
        if (c0_)
            *c0_ = *other.c0_;
        else
            c0_ = std::make_unique<Coords>(*other.c0_);
    } else {
        c0_.reset();
    }
    return *this;
}

Scalar Scalar::zero(const Ring& r) {
    Scalar s;
    s.ring_ = &r;
    if (r.is_finite()) s.c0_.reset();
    return s;
}

Scalar Scalar::one(const Ring& r) { return from_int(r, 1); }

Scalar Scalar::from_int(const Ring& r, long long n) {
    Scalar s = zero(r);
    if (r.is_finite())
        s.code_ = r.from_int(n);
    else
        (*s.c0_)[0] = Rational(static_cast<long>(n));
    return s;
}

Scalar Scalar::from_integer(const Ring& r, const Integer& n) {
    Scalar s = zero(r);
    if (r.is_finite()) {
        Integer t = n % r.p();
        if (t < 0) t += r.p();
        s.code_ = static_cast<std::uint32_t>(t.get_ui());
    } else {
        (*s.c0_)[0] = Rational(n);
    }
    return s;
}

Scalar Scalar::from_rational(const Ring& r, const Rational& q) {
    if (r.is_char0()) {
        Scalar s = zero(r);
        (*s.c0_)[0] = q;
        return s;
    }
    Integer den = q.get_den();
    if (den % r.p() == 0) fail(ErrorCode::DenominatorNotInvertible, q.get_str() + " in " + r.name());
    return from_integer(r, q.get_num()) / from_integer(r, den);
}

Scalar Scalar::from_code(const Ring& r, std::uint32_t code) {
    if (!r.is_finite() || code >= r.size()) fail(ErrorCode::InvalidArgument, "bad element code");
    Scalar s = zero(r);
    s.code_ = code;
    return s;
}

Scalar Scalar::from_coords(const Ring& r, Coords c) {
    if (!r.is_char0()) fail(ErrorCode::InvalidArgument, "coordinates need a char0 ring");
    Scalar s = zero(r);
    *s.c0_ = std::move(c);
    return s;
}

Scalar Scalar::zeta(const Ring& r) {
    if (!r.is_char0()) fail(ErrorCode::InvalidArgument, "zeta of a finite field needs an Embedding");
    Scalar s = zero(r);
    if (r.m() == 3)
        (*s.c0_)[1] = 1;
    else if (r.m() == 2)
        (*s.c0_)[0] = -1;
    else
        (*s.c0_)[0] = 1;
    return s;
}

Scalar Scalar::sqrt2(const Ring& r) {
    if (!r.is_char0() || !r.has_sqrt2()) fail(ErrorCode::RingLacksRoots, "sqrt 2 not available in " + r.name());
    Scalar s = zero(r);
    (*s.c0_)[2] = 1;
    return s;
}

Scalar Scalar::random(const Ring& r, std::mt19937_64& rng, int height) {
    if (r.is_finite()) {
        std::uniform_int_distribution<std::uint32_t> d(0, r.size() - 1);
        return from_code(r, d(rng));
    }
    std::uniform_int_distribution<int> num(-height, height), den(1, height);
    Coords c;
    for (int i = 0; i < 4; ++i) {
        bool allowed = (i == 0) || (i == 1 && r.m() == 3) || (i == 2 && r.has_sqrt2()) ||
                       (i == 3 && r.m() == 3 && r.has_sqrt2());
        c[i] = allowed ? Rational(num(rng), den(rng)) : Rational(0);
        c[i].canonicalize();
    }
    return from_coords(r, c);
}

bool Scalar::is_zero() const {
    if (ring_->is_finite()) return code_ == 0;
    for (const auto& c : *c0_)
        if (c != 0) return false;
    return true;
}

bool Scalar::is_one() const {
    if (ring_->is_finite()) return code_ == 1;
    const auto& c = *c0_;
    return c[0] == 1 && c[1] == 0 && c[2] == 0 && c[3] == 0;
}

bool Scalar::is_rational() const {
    if (ring_->is_finite()) return false;
    const auto& c = *c0_;
    return c[1] == 0 && c[2] == 0 && c[3] == 0;
}

Rational Scalar::rational() const {
    if (!is_rational()) fail(ErrorCode::InvalidArgument, "scalar is not rational");
    return (*c0_)[0];
}

Scalar Scalar::operator+(const Scalar& o) const {
    Scalar r(*this);
    r += o;
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
    Scalar r(*this);
    r -= o;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    const Ring& rg = join(*ring_, *o.ring_);
    ring_ = &rg;
    if (rg.is_finite()) {
        code_ = rg.add(code_, o.code_);
    } else {
        for (int i = 0; i < 4; ++i) (*c0_)[i] += (*o.c0_)[i];
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    const Ring& rg = join(*ring_, *o.ring_);
    ring_ = &rg;
    if (rg.is_finite()) {
        code_ = rg.sub(code_, o.code_);
    } else {
        for (int i = 0; i < 4; ++i) (*c0_)[i] -= (*o.c0_)[i];
    }
    return *this;
}

Scalar Scalar::operator-() const {
    Scalar r(*this);
    if (ring_->is_finite())
        r.code_ = ring_->neg(code_);
    else
        for (auto& c : *r.c0_) c = -c;
    return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
    const Ring& rg = join(*ring_, *o.ring_);
    Scalar r = zero(rg);
    if (rg.is_finite()) {
        r.code_ = rg.mul(code_, o.code_);
        return r;
    }
    const auto& a = *c0_;
    const auto& b = *o.c0_;
    auto& c = *r.c0_;
    // x = A + A' s, y = B + B' s; xy = (AB + 2A'B') + (AB' + A'B) s.
    Rational t0, t1, u0, u1;
    zmul(a[0], a[1], b[0], b[1], c[0], c[1]);
    zmul(a[2], a[3], b[2], b[3], t0, t1);
    c[0] += 2 * t0;
    c[1] += 2 * t1;
    zmul(a[0], a[1], b[2], b[3], t0, t1);
    zmul(a[2], a[3], b[0], b[1], u0, u1);
    c[2] = t0 + u0;
    c[3] = t1 + u1;
    return r;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    *this = *this * o;
    return *this;
}

Scalar Scalar::inverse() const {
    if (is_zero()) fail(ErrorCode::InvalidArgument, "division by zero");
    if (ring_->is_finite()) {
        Scalar r = zero(*ring_);
        r.code_ = ring_->inv(code_);
        return r;
    }
    const auto& a = *c0_;
    // N = A^2 - 2 A'^2 in Q(z)
    Rational n0, n1, t0, t1;
    zmul(a[0], a[1], a[0], a[1], n0, n1);
    zmul(a[2], a[3], a[2], a[3], t0, t1);
    n0 -= 2 * t0;
    n1 -= 2 * t1;
    // N^{-1} = conj(N) / norm(N), conj(a + bz) = (a - b) - bz, norm = a^2 - ab + b^2
    Rational norm = n0 * n0 - n0 * n1 + n1 * n1;
    Rational i0 = (n0 - n1) / norm, i1 = -n1 / norm;
    Scalar r = zero(*ring_);
    auto& c = *r.c0_;
    zmul(a[0], a[1], i0, i1, c[0], c[1]);
    Rational na2 = -a[2], na3 = -a[3];
    zmul(na2, na3, i0, i1, c[2], c[3]);
    return r;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

bool Scalar::operator==(const Scalar& o) const {
    if (ring_->is_finite() || o.ring_->is_finite()) return ring_ == o.ring_ && code_ == o.code_;
    return *c0_ == *o.c0_;
}

Scalar Scalar::pow(long long e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar result = one(*ring_), base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

std::string Scalar::str() const {
    if (ring_->is_finite()) {
        if (ring_->k() == 1) return std::to_string(code_);
        Digits d = to_digits(code_, ring_->p(), ring_->k());
        std::string s = "(";
        for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
        return s + ")";
    }
    static const char* names[4] = {"", "z", "s", "z*s"};
    std::string out;
    for (int i = 0; i < 4; ++i) {
        const Rational& c = (*c0_)[i];
        if (c == 0) continue;
        bool neg = c < 0;
        Rational a = neg ? Rational(-c) : c;
        std::string term;
        if (i == 0) {
            term = rat_str(a);
        } else if (a == 1) {
            term = names[i];
        } else if (a.get_den() == 1) {
            term = rat_str(a) + "*" + names[i];
        } else {
            term = "(" + rat_str(a) + ")*" + names[i];
        }
        if (out.empty())
            out = (neg ? "-" : "") + term;
        else
            out += (neg ? " - " : " + ") + term;
    }
    return out.empty() ? "0" : out;
}

bool Scalar::canonical_less(const Scalar& o) const {
    if (ring_->is_finite()) return code_ < o.code_;
    for (int i = 0; i < 4; ++i) {
        if ((*c0_)[i] != (*o.c0_)[i]) return (*c0_)[i] < (*o.c0_)[i];
    }
    return false;
}

Scalar parse_scalar(const Ring& r, const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) fail(ErrorCode::InvalidArgument, "empty scalar");
    try {
        if (r.is_finite()) {
            if (t.front() == '(') {
                if (t.back() != ')') fail(ErrorCode::InvalidArgument, "bad tuple '" + text + "'");
                std::vector<long long> d;
                std::stringstream ss(t.substr(1, t.size() - 2));
                std::string item;
                while (std::getline(ss, item, ',')) d.push_back(std::stoll(item));
                if (static_cast<int>(d.size()) > r.k()) fail(ErrorCode::InvalidArgument, "tuple too long");
                Digits dig(r.k(), 0);
                for (std::size_t i = 0; i < d.size(); ++i) dig[i] = r.from_int(d[i]);
                return Scalar::from_code(r, from_digits(dig, r.p()));
            }
            auto slash = t.find('/');
            if (slash != std::string::npos)
                return Scalar::from_int(r, std::stoll(t.substr(0, slash))) /
                       Scalar::from_int(r, std::stoll(t.substr(slash + 1)));
            return Scalar::from_int(r, std::stoll(t));
        }
        // char0: sum of terms c, c*z, c*s, c*z*s
        Scalar::Coords c;
        std::size_t pos = 0;
        while (pos < t.size()) {
            int sign = 1;
            if (t[pos] == '+' || t[pos] == '-') {
                sign = t[pos] == '-' ? -1 : 1;
                ++pos;
            }
            std::size_t end = pos;
            int depth = 0;
            while (end < t.size() && (depth > 0 || (t[end] != '+' && t[end] != '-'))) {
                if (t[end] == '(') ++depth;
                if (t[end] == ')') --depth;
                ++end;
            }
            std::string term = t.substr(pos, end - pos);
            pos = end;
            int basis = 0;
            auto strip = [&](const std::string& suffix, int b) {
                if (term.size() >= suffix.size() && term.compare(term.size() - suffix.size(), suffix.size(), suffix) == 0) {
                    term = term.substr(0, term.size() - suffix.size());
                    basis = b;
                    return true;
                }
                return false;
            };
            if (!strip("z*s", 3) && !strip("s", 2)) strip("z", 1);
            if (!term.empty() && term.back() == '*') term.pop_back();
            if (!term.empty() && term.front() == '(' && term.back() == ')') term = term.substr(1, term.size() - 2);
            Rational q = term.empty() ? Rational(1) : Rational(term);
            q.canonicalize();
            c[basis] += sign * q;
        }
        if ((c[1] != 0 || c[3] != 0) && r.m() != 3) fail(ErrorCode::RingLacksRoots, "z not in " + r.name());
        if ((c[2] != 0 || c[3] != 0) && !r.has_sqrt2()) fail(ErrorCode::RingLacksRoots, "s not in " + r.name());
        return Scalar::from_coords(r, c);
    } catch (const std::invalid_argument&) {
        fail(ErrorCode::InvalidArgument, "cannot parse scalar '" + text + "'");
    } catch (const std::out_of_range&) {
        fail(ErrorCode::InvalidArgument, "scalar out of range '" + text + "'");
    }
}

// ---------------------------------------------------------------------------
// Embeddings and reduction

Embedding make_embedding(const Ring& target, int m, bool need_sqrt2) {
    Embedding e;
    e.target = &target;
    e.m = m;
    e.has_sqrt2 = need_sqrt2;
    if (target.is_char0()) {
        if (m == 3 && target.m() != 3) fail(ErrorCode::RingLacksRoots, "zeta_3 not in " + target.name());
        if (need_sqrt2 && !target.has_sqrt2()) fail(ErrorCode::RingLacksRoots, "sqrt 2 not in " + target.name());
        e.zeta = Scalar::zeta(Ring::char0(m == 2 ? 2 : m, false));
        if (m == 2) e.zeta = Scalar::from_int(target, -1);
        if (m == 3) e.zeta = Scalar::zeta(target);
        if (m == 1) e.zeta = Scalar::one(target);
        e.sqrt2 = need_sqrt2 ? Scalar::sqrt2(target) : Scalar::zero(target);
        return e;
    }
    if (m > 1 && target.p() == static_cast<std::uint32_t>(m))
        fail(ErrorCode::CharEqualsOrder, "char " + std::to_string(target.p()) + " equals automorphism order");
    if (m == 1) {
        e.zeta = Scalar::one(target);
    } else if (m == 2) {
        e.zeta = Scalar::from_int(target, -1);
    } else {
        bool found = false;
        for (std::uint32_t c = 2; c < target.size() && !found; ++c) {
            std::uint32_t c3 = target.mul(target.mul(c, c), c);
            if (c3 == 1 && c != 1) {
                e.zeta = Scalar::from_code(target, c);
                found = true;
            }
        }
        if (!found) fail(ErrorCode::NoPrimitiveRoot, target.name() + " lacks a primitive cube root of unity");
    }
    if (need_sqrt2) {
        if (target.p() == 2) fail(ErrorCode::CharTwoA2n, "sqrt 2 requested in characteristic 2");
        std::uint32_t two = target.from_int(2);
        bool found = false;
        for (std::uint32_t c = 1; c < target.size() && !found; ++c) {
            if (target.mul(c, c) == two) {
                e.sqrt2 = Scalar::from_code(target, c);
                found = true;
            }
        }
        if (!found) fail(ErrorCode::RingLacksRoots, target.name() + " lacks a square root of 2");
    } else {
        e.sqrt2 = Scalar::zero(target);
    }
    return e;
}

Scalar reduce(const Scalar& s, const Embedding& emb) {
    const Ring& t = *emb.target;
    if (s.ring().is_finite()) {
        if (&s.ring() == &t) return s;
        return embed(s, t);
    }
    const auto& c = s.coords();
    if ((c[1] != 0 || c[3] != 0) && emb.m != 3) fail(ErrorCode::RingLacksRoots, "zeta_3 coordinate without m = 3");
    if ((c[2] != 0 || c[3] != 0) && !emb.has_sqrt2) fail(ErrorCode::RingLacksRoots, "sqrt 2 coordinate without embedding");
    if (t.is_char0()) {
        Scalar r = Scalar::from_coords(t, c);
        return r;
    }
    auto red = [&](const Rational& q) {
        if (q.get_den() % t.p() == 0)
            fail(ErrorCode::DenominatorNotInvertible, q.get_str() + " modulo " + std::to_string(t.p()));
        return Scalar::from_rational(t, q);
    };
    Scalar r = red(c[0]);
    if (c[1] != 0) r += red(c[1]) * emb.zeta;
    if (c[2] != 0) r += red(c[2]) * emb.sqrt2;
    if (c[3] != 0) r += red(c[3]) * emb.zeta * emb.sqrt2;
    return r;
}

Scalar embed(const Scalar& x, const Ring& super) {
    const Ring& sub = x.ring();
    if (&sub == &super) return x;
    if (!sub.is_finite() || !super.is_finite() || sub.p() != super.p() || super.k() % sub.k() != 0)
        fail(ErrorCode::InvalidArgument, "cannot embed " + sub.name() + " into " + super.name());
    if (sub.k() == 1) return Scalar::from_code(super, x.code());
    static std::mutex mu;
    static std::map<std::pair<const Ring*, const Ring*>, std::uint32_t> cache;
    std::uint32_t root = 0;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({&sub, &super});
        if (it != cache.end()) {
            root = it->second;
        } else {
            const auto& f = sub.modulus();
            bool found = false;
            for (std::uint32_t c = 0; c < super.size() && !found; ++c) {
                std::uint32_t v = 0;
                for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) v = super.add(super.mul(v, c), f[i]);
                if (v == 0) {
                    root = c;
                    found = true;
                }
            }
            if (!found) fail(ErrorCode::Internal, "subfield modulus has no root in extension");
            cache[{&sub, &super}] = root;
        }
    }
    Digits d = to_digits(x.code(), sub.p(), sub.k());
    std::uint32_t v = 0;
    for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) v = super.add(super.mul(v, root), d[i]);
    return Scalar::from_code(super, v);
}

// ---------------------------------------------------------------------------
// Polynomials

Poly poly_trim(Poly f) {
    while (!f.empty() && f.back().is_zero()) f.pop_back();
    return f;
}

Poly poly_mul(const Poly& f, const Poly& g) {
    if (f.empty() || g.empty()) return {};
    Poly h(f.size() + g.size() - 1, Scalar::zero(f[0].ring()));
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i].is_zero()) continue;
        for (std::size_t j = 0; j < g.size(); ++j) h[i + j] += f[i] * g[j];
    }
    return poly_trim(h);
}

Scalar poly_eval(const Poly& f, const Scalar& x) {
    Scalar v = Scalar::zero(x.ring());
    for (auto it = f.rbegin(); it != f.rend(); ++it) v = v * x + *it;
    return v;
}

std::string poly_str(const Poly& f, const std::string& var) {
    std::string out;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i].is_zero()) continue;
        std::string c = f[i].str();
        bool neg = false;
        if (f[i].ring().is_char0() && f[i].is_rational() && f[i].rational() < 0) {
            neg = true;
            c = (-f[i]).str();
        }
        bool compound = c.find_first_of("+ ") != std::string::npos || c.find(" - ") != std::string::npos;
        std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
        std::string term;
        if (i == 0)
            term = compound ? "(" + c + ")" : c;
        else if (c == "1")
            term = mono;
        else
            term = (compound ? "(" + c + ")" : c) + mono;
        if (out.empty())
            out = (neg ? "-" : "") + term;
        else
            out += (neg ? "-" : "+") + term;
    }
    return out.empty() ? "0" : out;
}

Poly parse_poly(const Ring& r, const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) fail(ErrorCode::InvalidArgument, "empty polynomial");
    Poly f;
    std::size_t pos = 0;
    while (pos < t.size()) {
        int sign = 1;
        if (t[pos] == '+' || t[pos] == '-') {
            sign = t[pos] == '-' ? -1 : 1;
            ++pos;
        }
        std::string coef;
        if (pos < t.size() && t[pos] == '(') {
            auto close = t.find(')', pos);
            if (close == std::string::npos) fail(ErrorCode::InvalidArgument, "unbalanced '(' in '" + text + "'");
            coef = t.substr(pos, close - pos + 1);
            if (r.is_char0()) coef = coef.substr(1, coef.size() - 2);
            pos = close + 1;
        } else {
            while (pos < t.size() && (std::isdigit(static_cast<unsigned char>(t[pos])) || t[pos] == '/')) coef += t[pos++];
        }
        if (pos < t.size() && t[pos] == '*') ++pos;
        int deg = 0;
        if (pos < t.size() && t[pos] == 'u') {
            ++pos;
            deg = 1;
            if (pos < t.size() && t[pos] == '^') {
                ++pos;
                std::string e;
                while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) e += t[pos++];
                if (e.empty()) fail(ErrorCode::InvalidArgument, "missing exponent in '" + text + "'");
                deg = std::stoi(e);
            }
        }
        if (coef.empty() && deg == 0) fail(ErrorCode::InvalidArgument, "cannot parse polynomial '" + text + "'");
        Scalar c = coef.empty() ? Scalar::one(r) : parse_scalar(r, coef);
        if (sign < 0) c = -c;
        if (static_cast<int>(f.size()) <= deg) f.resize(deg + 1, Scalar::zero(r));
        f[deg] += c;
        if (pos < t.size() && t[pos] != '+' && t[pos] != '-')
            fail(ErrorCode::InvalidArgument, "unexpected character in '" + text + "'");
    }
    return poly_trim(f);
}

namespace {

// multiplicity of x as a root of g; g is deflated in place
int deflate(Poly& g, const Scalar& x) {
    const Ring& r = x.ring();
    int mult = 0;
    while (g.size() > 1 && poly_eval(g, x).is_zero()) {
        Poly q(g.size() - 1, Scalar::zero(r));
        Scalar carry = Scalar::zero(r);
        for (int i = static_cast<int>(g.size()) - 1; i >= 1; --i) {
            carry = g[i] + carry * x;
            q[i - 1] = carry;
        }
        g = q;
        ++mult;
    }
    return mult;
}

std::vector<Integer> positive_divisors(Integer n) {
    n = abs(n);
    std::vector<Integer> small, large;
    for (Integer d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            small.push_back(d);
            if (d * d != n) large.push_back(n / d);
        }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

// nonzero rational roots of a polynomial with rational coefficients
std::vector<Rational> rational_roots(std::vector<Rational> c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
    std::size_t lo = 0;
    while (lo < c.size() && c[lo] == 0) ++lo;
    c.erase(c.begin(), c.begin() + lo);
    std::vector<Rational> out;
    if (c.size() <= 1) return out;
    Integer l = 1;
    for (const auto& q : c) l = lcm(l, Integer(q.get_den()));
    std::vector<Integer> z;
    for (const auto& q : c) z.push_back(Integer(q * l));
    for (const Integer& p : positive_divisors(z.front()))
        for (const Integer& q : positive_divisors(z.back()))
            for (int sgn : {1, -1}) {
                Rational x(sgn * p, q);
                x.canonicalize();
                Rational v = 0;
                for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
                if (v == 0 && std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
            }
    return out;
}

}  // namespace

RootSet find_roots(const Poly& f0, const Ring& field) {
    Poly f;
    for (const auto& c : f0) {
        if (c.ring().is_finite()) {
            if (!field.is_finite()) fail(ErrorCode::InvalidArgument, "finite-field polynomial searched in char 0");
            f.push_back(embed(c, field));
        } else {
            f.push_back(reduce(c, make_embedding(field, field.is_char0() ? field.m() : 1, field.is_char0() && field.has_sqrt2())));
        }
    }
    f = poly_trim(f);
    if (f.empty() || f[0].is_zero()) fail(ErrorCode::InvalidArgument, "polynomial must have nonzero constant term");
    RootSet out;
    int total = 0;
    const int degree = static_cast<int>(f.size()) - 1;
    if (field.is_finite()) {
        for (std::uint32_t c = 1; c < field.size(); ++c) {
            Scalar x = Scalar::from_code(field, c);
            Poly g = f;
            int mult = deflate(g, x);
            if (mult > 0) {
                out.roots.emplace_back(x, mult);
                total += mult;
            }
        }
        out.split = total == degree;
        return out;
    }
    // char 0: roots of the form c r with r rational and c in {zeta^j, zeta^j sqrt2}
    std::vector<Scalar> mults;
    Scalar z = field.m() == 3 ? Scalar::zeta(field) : Scalar::one(field);
    for (int j = 0; j < (field.m() == 3 ? 3 : 1); ++j) {
        mults.push_back(z.pow(j));
        if (field.has_sqrt2()) mults.push_back(z.pow(j) * Scalar::sqrt2(field));
    }
    Poly g = f;
    for (const Scalar& c : mults) {
        std::array<std::vector<Rational>, 4> coord;
        Scalar cp = Scalar::one(field);
        for (const auto& a : f) {
            Scalar t = a * cp;
            for (int b = 0; b < 4; ++b) coord[b].push_back(t.coords()[b]);
            cp *= c;
        }
        std::vector<Rational> cand;
        for (int b = 0; b < 4 && cand.empty(); ++b) {
            bool nz = false;
            for (const auto& q : coord[b]) nz = nz || q != 0;
            if (nz) cand = rational_roots(coord[b]);
        }
        for (const Rational& r : cand) {
            Scalar x = c * Scalar::from_rational(field, r);
            int mult = deflate(g, x);
            if (mult > 0) {
                out.roots.emplace_back(x, mult);
                total += mult;
            }
        }
    }
    std::sort(out.roots.begin(), out.roots.end(), [](const auto& a, const auto& b) { return a.first.canonical_less(b.first); });
    out.split = total == degree;
    return out;
}

// ---------------------------------------------------------------------------
// Lattices

IntLattice hermite_normal_form(const IntLattice& lattice) {
    std::vector<std::vector<Integer>> a = lattice.rows;
    const std::size_t n = lattice.ambient_dim;
    std::size_t r = 0;
    for (std::size_t col = 0; col < n && r < a.size(); ++col) {
        while (true) {
            std::size_t best = a.size();
            for (std::size_t i = r; i < a.size(); ++i) {
                if (a[i][col] == 0) continue;
                if (best == a.size() || abs(a[i][col]) < abs(a[best][col])) best = i;
            }
            if (best == a.size()) break;
            std::swap(a[r], a[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < a.size(); ++i) {
                if (a[i][col] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][col].get_mpz_t(), a[r][col].get_mpz_t());
                for (std::size_t j = col; j < n; ++j) a[i][j] -= q * a[r][j];
                if (a[i][col] != 0) done = false;
            }
            if (done) break;
        }
        if (r >= a.size() || a[r][col] == 0) continue;
        if (a[r][col] < 0)
            for (std::size_t j = col; j < n; ++j) a[r][j] = -a[r][j];
        for (std::size_t i = 0; i < r; ++i) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), a[i][col].get_mpz_t(), a[r][col].get_mpz_t());
            if (q != 0)
                for (std::size_t j = col; j < n; ++j) a[i][j] -= q * a[r][j];
        }
        ++r;
    }
    IntLattice out;
    out.ambient_dim = n;
    a.resize(r);
    out.rows = std::move(a);
    return out;
}

bool lattice_coordinates(const IntLattice& hnf, const std::vector<Integer>& v0, std::vector<Integer>& coeffs) {
    std::vector<Integer> v = v0;
    coeffs.assign(hnf.rows.size(), 0);
    for (std::size_t i = 0; i < hnf.rows.size(); ++i) {
        const auto& row = hnf.rows[i];
        std::size_t piv = 0;
        while (piv < row.size() && row[piv] == 0) ++piv;
        if (piv == row.size()) continue;
        if (v[piv] % row[piv] != 0) return false;
        Integer c = v[piv] / row[piv];
        coeffs[i] = c;
        if (c != 0)
            for (std::size_t j = piv; j < row.size(); ++j) v[j] -= c * row[j];
    }
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

Integer binomial(long long n, long long k) {
    if (k < 0) return 0;
    Integer num = 1, den = 1;
    for (long long i = 0; i < k; ++i) {
        num *= Integer(static_cast<long>(n - i));
        den *= Integer(static_cast<long>(i + 1));
    }
    return num / den;
}

}  // namespace hyperloop
