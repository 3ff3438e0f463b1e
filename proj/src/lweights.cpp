#include "hyperloop/lweights.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace hyperloop {

namespace {

void normalize(std::vector<std::pair<Scalar, int>>& pts) {
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first.canonical_less(b.first); });
    std::vector<std::pair<Scalar, int>> out;
    for (auto& p : pts) {
        if (!out.empty() && out.back().first == p.first)
            out.back().second += p.second;
        else
            out.push_back(p);
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const auto& p) { return p.second == 0; }), out.end());
    pts = std::move(out);
}

bool long_node(const FoldingDatum& fd, int i) { return !fd.a2n && fd.m > 1 && fd.gamma[fd.o_map[i]] == 1; }

Scalar in_field(const Scalar& a, const Ring& f) {
    if (&a.ring() == &f) return a;
    if (a.ring().is_finite()) return embed(a, f);
    return reduce(a, make_embedding(f, 1, false));
}

// least m-th root of y in the field, if any
bool mth_root(const Scalar& y, int m, Scalar& out) {
    const Ring& f = y.ring();
    if (f.is_finite()) {
        for (std::uint32_t c = 1; c < f.size(); ++c) {
            Scalar x = Scalar::from_code(f, c);
            if (x.pow(m) == y) {
                out = x;
                return true;
            }
        }
        return false;
    }
    if (!y.is_rational()) return false;
    Rational q = y.rational();
    if (q < 0 && m % 2 == 0) return false;
    mpz_class n = abs(q.get_num()), d = q.get_den(), rn, rd;
    if (!mpz_root(rn.get_mpz_t(), n.get_mpz_t(), m) || !mpz_root(rd.get_mpz_t(), d.get_mpz_t(), m)) return false;
    Rational r(rn, rd);
    if (q < 0) r = -r;
    // least in canonical order between r and -r for even m
    out = Scalar::from_rational(f, r);
    if (m % 2 == 0) {
        Scalar neg = -out;
        if (neg.canonical_less(out)) out = neg;
    }
    return true;
}

}  // namespace

Poly LWeight::poly(std::size_t i) const {
    Poly f{Scalar::one(*field)};
    for (const auto& [x, mult] : points[i])
        for (int k = 0; k < mult; ++k) f = poly_mul(f, Poly{Scalar::one(*field), -x});
    return f;
}

int LWeight::degree(std::size_t i) const {
    int d = 0;
    for (const auto& p : points[i]) d += p.second;
    return d;
}

IVec LWeight::degrees() const {
    IVec d(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) d[i] = degree(i);
    return d;
}

bool LWeight::is_one() const {
    for (const auto& p : points)
        if (!p.empty()) return false;
    return true;
}

std::string LWeight::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i) os << ", ";
        os << (i + 1) << ":(" << poly_str(poly(i)) << ")";
    }
    return os.str();
}

bool operator==(const LWeight& a, const LWeight& b) {
    if (a.field != b.field || a.points.size() != b.points.size()) return false;
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        if (a.points[i].size() != b.points[i].size()) return false;
        for (std::size_t j = 0; j < a.points[i].size(); ++j)
            if (a.points[i][j].first != b.points[i][j].first || a.points[i][j].second != b.points[i][j].second) return false;
    }
    return true;
}

LWeight lw_one(const Ring& field, int n, bool twisted) {
    LWeight w;
    w.field = &field;
    w.twisted = twisted;
    w.points.assign(n, {});
    return w;
}

void lw_add_point(LWeight& w, int i, const Scalar& x, int mult) {
    if (i < 0 || i >= static_cast<int>(w.points.size())) fail(ErrorCode::InvalidArgument, "l-weight index out of range");
    Scalar y = in_field(x, *w.field);
    if (y.is_zero()) fail(ErrorCode::ZeroEvaluationPoint, "l-weight point must be nonzero");
    w.points[i].emplace_back(y, mult);
    normalize(w.points[i]);
}

LWeight lw_mul(const LWeight& a, const LWeight& b) {
    if (a.field != b.field || a.points.size() != b.points.size() || a.twisted != b.twisted)
        fail(ErrorCode::InvalidArgument, "incompatible l-weights");
    LWeight w = a;
    for (std::size_t i = 0; i < w.points.size(); ++i) {
        w.points[i].insert(w.points[i].end(), b.points[i].begin(), b.points[i].end());
        normalize(w.points[i]);
    }
    return w;
}

LWeight lw_from_polys(const Ring& field, const std::vector<Poly>& polys, bool twisted) {
    LWeight w = lw_one(field, static_cast<int>(polys.size()), twisted);
    for (std::size_t i = 0; i < polys.size(); ++i) {
        Poly f = poly_trim(polys[i]);
        if (f.empty() || !f[0].is_one()) fail(ErrorCode::InvalidArgument, "Drinfeld polynomial needs constant term 1");
        if (f.size() == 1) continue;
        RootSet rs = find_roots(f, field);
        if (!rs.split) fail(ErrorCode::NotSplit, "polynomial " + poly_str(f) + " does not split over " + field.name());
        for (const auto& [root, mult] : rs.roots) w.points[i].emplace_back(root.inverse(), mult);
        normalize(w.points[i]);
    }
    return w;
}

LWeight lw_embed(const LWeight& w, const Ring& super) {
    LWeight out = lw_one(super, static_cast<int>(w.size()), w.twisted);
    for (std::size_t i = 0; i < w.size(); ++i)
        for (const auto& [x, mult] : w.points[i]) out.points[i].emplace_back(in_field(x, super), mult);
    for (auto& p : out.points) normalize(p);
    return out;
}

LWeight lw_invert(const LWeight& w) {
    LWeight out = w;
    for (auto& p : out.points) {
        for (auto& [x, mult] : p) x = x.inverse();
        normalize(p);
    }
    return out;
}

LWeight fundamental(const RootSystem& rs, int i, const Scalar& a) {
    if (i < 0 || i >= rs.rank) fail(ErrorCode::InvalidArgument, "node index out of range");
    LWeight w = lw_one(a.ring(), rs.rank, false);
    lw_add_point(w, i, a);
    return w;
}

LWeight fundamental(const FoldingDatum& fd, int i, const Scalar& a) {
    if (i < 0 || i >= fd.folded.rank) fail(ErrorCode::InvalidArgument, "node index out of range");
    LWeight w = lw_one(a.ring(), fd.folded.rank, true);
    if (a.is_zero()) fail(ErrorCode::ZeroEvaluationPoint, "l-weight point must be nonzero");
    lw_add_point(w, i, long_node(fd, i) ? a.pow(fd.m) : a);
    return w;
}

LWeight evaluation_lweight(const RootSystem& rs, const IVec& lambda, const Scalar& a) {
    LWeight w = lw_one(a.ring(), rs.rank, false);
    for (int i = 0; i < rs.rank; ++i)
        if (lambda[i] > 0) lw_add_point(w, i, a, lambda[i]);
    return w;
}

LWeight evaluation_lweight(const FoldingDatum& fd, const IVec& lambda0, const Scalar& a) {
    LWeight w = lw_one(a.ring(), fd.folded.rank, true);
    for (int i = 0; i < fd.folded.rank; ++i)
        if (lambda0[i] > 0) lw_add_point(w, i, long_node(fd, i) ? a.pow(fd.m) : a, lambda0[i]);
    return w;
}

IVec weight_of(const LWeight& w, const FoldingDatum* fd) {
    IVec d = w.degrees();
    if (w.twisted && fd)
        for (int i = 0; i < static_cast<int>(d.size()); ++i)
            if (fd->a2n_short_node(i)) d[i] *= 2;
    return d;
}

StandardDecomposition standard_decomposition(const LWeight& pi, const FoldingDatum& fd) {
    if (!pi.twisted || static_cast<int>(pi.size()) != fd.folded.rank)
        fail(ErrorCode::InvalidArgument, "standard decomposition needs a twisted l-weight over I_0");
    const Ring& f = *pi.field;
    const int m = fd.m;
    StandardDecomposition sd;
    sd.m = m;
    sd.field = &f;
    sd.zeta = make_embedding(f, m, false).zeta;
    struct Raw {
        Scalar key;
        std::vector<std::tuple<int, Scalar, int>> shrt, lng;  // node, point, multiplicity
    };
    std::vector<Raw> raw;
    for (int i = 0; i < fd.folded.rank; ++i)
        for (const auto& [x, mult] : pi.points[i]) {
            bool lg = long_node(fd, i);
            Scalar key = lg ? x : x.pow(m);
            auto it = std::find_if(raw.begin(), raw.end(), [&](const Raw& r) { return r.key == key; });
            if (it == raw.end()) {
                raw.push_back({key, {}, {}});
                it = raw.end() - 1;
            }
            (lg ? it->lng : it->shrt).emplace_back(i, x, mult);
        }
    std::sort(raw.begin(), raw.end(), [](const Raw& a, const Raw& b) { return a.key.canonical_less(b.key); });
    for (const Raw& r : raw) {
        StandardBlock b;
        if (!r.shrt.empty()) {
            b.a = std::get<1>(r.shrt.front());
            for (const auto& t : r.shrt)
                if (std::get<1>(t).canonical_less(b.a)) b.a = std::get<1>(t);
        } else if (!mth_root(r.key, m, b.a)) {
            fail(ErrorCode::NotSplit, "no " + std::to_string(m) + "-th root of " + r.key.str() + " in " + f.name());
        }
        b.lambda.assign(m, IVec(fd.folded.rank, 0));
        for (const auto& [i, x, mult] : r.shrt) {
            int eps = -1;
            for (int e = 0; e < m && eps < 0; ++e)
                if (sd.zeta.pow(m - e) * b.a == x) eps = e;
            if (eps < 0) fail(ErrorCode::Internal, "point outside its block");
            b.lambda[eps][i] += mult;
        }
        for (const auto& [i, x, mult] : r.lng) b.lambda[0][i] += mult;
        sd.blocks.push_back(std::move(b));
    }
    return sd;
}

LWeight reassemble(const StandardDecomposition& sd, const FoldingDatum& fd) {
    LWeight w = lw_one(*sd.field, fd.folded.rank, true);
    for (const auto& b : sd.blocks)
        for (int e = 0; e < sd.m; ++e)
            for (int i = 0; i < fd.folded.rank; ++i) {
                int mult = b.lambda[e][i];
                if (mult == 0) continue;
                lw_add_point(w, i, long_node(fd, i) ? b.a.pow(sd.m) : sd.zeta.pow(sd.m - e) * b.a, mult);
            }
    return w;
}

std::vector<IVec> block_weights(const StandardDecomposition& sd, const FoldingDatum& fd) {
    std::vector<IVec> out;
    const IVec& perm = fd.sigma.perm;
    for (const auto& b : sd.blocks) {
        IVec mu(fd.base.rank, 0);
        for (int e = 0; e < sd.m; ++e)
            for (int i = 0; i < fd.folded.rank; ++i) {
                int j = fd.o_map[i];
                for (int t = 0; t < e; ++t) j = perm[j];
                mu[j] += b.lambda[e][i];
            }
        out.push_back(mu);
    }
    return out;
}

LWeight omega_from_pi(const StandardDecomposition& sd, const FoldingDatum& fd) {
    LWeight w = lw_one(*sd.field, fd.base.rank, false);
    auto mus = block_weights(sd, fd);
    for (std::size_t k = 0; k < sd.blocks.size(); ++k)
        for (int j = 0; j < fd.base.rank; ++j)
            if (mus[k][j] > 0) lw_add_point(w, j, sd.blocks[k].a, mus[k][j]);
    return w;
}

namespace {

LWeight polys_to_lweight(const Ring& field, const std::vector<Poly>& series, const IVec& lambda, bool twisted) {
    std::vector<Poly> polys;
    for (std::size_t i = 0; i < series.size(); ++i) {
        Poly s = series[i];
        if (!s[lambda[i] + 1].is_zero()) fail(ErrorCode::NotHighestLWeight, "Lambda series is not a polynomial of degree lambda(h_i)");
        s.resize(lambda[i] + 1);
        polys.push_back(s);
    }
    return lw_from_polys(field, polys, twisted);
}

}  // namespace

LWeight extract_drinfeld(const TwistedLoopModule& tm, int r_window, int dir) {
    const FoldingDatum& fd = tm.fd();
    Vec hv = tm.base().unit(tm.hv());
    for (int root : fd.O)
        for (int r = -r_window; r <= r_window; ++r)
            for (int k = 1; k <= tm.kmax(); ++k)
                if (!is_zero_vec(tm.x(root, 1, r, k).apply(hv)))
                    fail(ErrorCode::NotHighestLWeight, "a raising operator does not kill the highest vector");
    IVec lambda = tm.highest_weight0();
    for (int l : lambda)
        if (l < 0) fail(ErrorCode::NotHighestLWeight, "highest weight is not dominant");
    std::vector<Poly> series;
    for (int i = 0; i < fd.folded.rank; ++i) series.push_back(lambda_sigma_series(tm, hv, i, dir, lambda[i] + 1));
    return polys_to_lweight(tm.field(), series, lambda, true);
}

LWeight extract_drinfeld(const LoopModule& lm, int r_window, int dir) {
    const RootSystem& rs = lm.rs();
    Vec hv = lm.unit(lm.hv());
    for (int root = 0; root < rs.num_pos(); ++root)
        for (int r = -r_window; r <= r_window; ++r)
            for (int k = 1; k <= lm.kmax(); ++k)
                if (!is_zero_vec(lm.x(root, 1, r, k).apply(hv)))
                    fail(ErrorCode::NotHighestLWeight, "a raising operator does not kill the highest vector");
    const IVec& lambda = lm.highest_weight();
    for (int l : lambda)
        if (l < 0) fail(ErrorCode::NotHighestLWeight, "highest weight is not dominant");
    std::vector<Poly> series;
    for (int i = 0; i < rs.rank; ++i) series.push_back(lambda_series(lm, hv, i, dir, lambda[i] + 1));
    return polys_to_lweight(lm.field(), series, lambda, false);
}

int splitting_degree(const std::vector<Poly>& polys, const Ring& field, int cap) {
    if (!field.is_finite()) return 0;
    for (int k = field.k(); k <= cap; k += field.k()) {
        double size = 1;
        for (int t = 0; t < k; ++t) size *= field.p();
        if (size > 1 << 20) break;
        const Ring& ext = Ring::finite(field.p(), k);
        bool ok = true;
        for (const Poly& f : polys) {
            Poly g = poly_trim(f);
            if (g.size() <= 1) continue;
            if (!find_roots(g, ext).split) ok = false;
        }
        if (ok) return k;
    }
    return 0;
}

LWeight parse_lweight(const Ring& field, const std::string& text, const FoldingDatum* fd, const RootSystem* rs) {
    if (!fd && !rs) fail(ErrorCode::InvalidArgument, "parse_lweight needs a root system");
    int n = fd ? fd->folded.rank : rs->rank;
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    std::vector<std::string> tokens;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (depth < 0) fail(ErrorCode::InvalidArgument, "unbalanced parentheses in " + text);
        if (c == ',' && depth == 0) {
            tokens.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (depth != 0) fail(ErrorCode::InvalidArgument, "unbalanced parentheses in " + text);
    tokens.push_back(cur);

    auto node = [&](const std::string& t) {
        int i = 0;
        try {
            std::size_t used = 0;
            i = std::stoi(t, &used);
            if (used != t.size()) i = 0;
        } catch (const std::logic_error&) {
        }
        if (i < 1 || i > n) fail(ErrorCode::InvalidArgument, "node index '" + t + "' out of range 1.." + std::to_string(n));
        return i - 1;
    };

    LWeight w = lw_one(field, n, fd != nullptr);
    std::vector<Poly> polys(n, Poly{Scalar::one(field)});
    for (const auto& t : tokens) {
        if (t.empty() || t == "1") continue;
        if (t[0] == 'w') {
            auto at = t.find('@');
            if (at == std::string::npos) fail(ErrorCode::InvalidArgument, "expected wi@a, got " + t);
            int i = node(t.substr(1, at - 1));
            Scalar a = parse_scalar(field, t.substr(at + 1));
            w = lw_mul(w, fd ? fundamental(*fd, i, a) : fundamental(*rs, i, a));
            continue;
        }
        auto colon = t.find(':');
        if (colon == std::string::npos || t.size() < colon + 3 || t[colon + 1] != '(' || t.back() != ')')
            fail(ErrorCode::InvalidArgument, "expected i:(poly), got " + t);
        int i = node(t.substr(0, colon));
        polys[i] = poly_mul(polys[i], parse_poly(field, t.substr(colon + 2, t.size() - colon - 3)));
    }
    try {
        return lw_mul(w, lw_from_polys(field, polys, fd != nullptr));
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NotSplit) throw;
        int k = splitting_degree(polys, field);
        std::string msg = "l-weight " + text + " does not split over " + field.name();
        if (k) msg += "; suggested extension degree " + std::to_string(k) + " (F" + std::to_string(field.p()) + "^" + std::to_string(k) + ")";
        fail(ErrorCode::NotSplit, msg);
    }
}

}  // namespace hyperloop
