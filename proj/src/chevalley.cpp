#include "hyperloop/chevalley.hpp"

#include <mutex>
#include <sstream>

namespace hyperloop {

void lie_add(LieElem& a, const LieElem& b, const Scalar& c) {
    if (c.is_zero()) return;
    for (const auto& [k, v] : b) {
        auto it = a.find(k);
        if (it == a.end()) {
            a.emplace(k, v * c);
        } else {
            it->second += v * c;
            if (it->second.is_zero()) a.erase(it);
        }
    }
}

LieElem lie_scaled(const LieElem& a, const Scalar& c) {
    LieElem out;
    if (c.is_zero()) return out;
    for (const auto& [k, v] : a) out.emplace(k, v * c);
    return out;
}

bool lie_is_zero(const LieElem& a) {
    for (const auto& [k, v] : a)
        if (!v.is_zero()) return false;
    return true;
}

bool lie_equal(const LieElem& a, const LieElem& b) {
    LieElem d = a;
    lie_add(d, b, -Scalar::one(b.empty() ? (a.empty() ? Ring::char0() : a.begin()->second.ring()) : b.begin()->second.ring()));
    return lie_is_zero(d);
}

// ---------------------------------------------------------------------------

ChevalleyBasis::ChevalleyBasis(const RootSystem& rs, const IVec& perm) : rs_(rs), perm_(perm), P_(rs.num_pos()) {
    if (perm_.empty()) {
        perm_.resize(rs.rank);
        for (int i = 0; i < rs.rank; ++i) perm_[i] = i;
    }
    signs_.assign(P_, 1);
    N_.assign(2 * P_, std::vector<int>(2 * P_, 0));
    tgt_.assign(2 * P_, std::vector<int>(2 * P_, -1));
    if (rs_.is_simply_laced()) build_simply_laced();
    else build_by_folding();
}

std::string ChevalleyBasis::symbol(int idx) const {
    std::ostringstream s;
    if (idx < 2 * P_) {
        s << (idx < P_ ? "x+" : "x-") << "[";
        const IVec& c = rs_.pos[idx % P_];
        for (std::size_t i = 0; i < c.size(); ++i) s << (i ? "," : "") << c[i];
        s << "]";
    } else {
        s << "h" << (idx - 2 * P_ + 1);
    }
    return s.str();
}

IVec ChevalleyBasis::weight(int idx) const {
    IVec w(rs_.rank, 0);
    if (idx >= 2 * P_) return w;
    w = rs_.pos[idx % P_];
    if (idx >= P_)
        for (int& x : w) x = -x;
    return w;
}

int ChevalleyBasis::signed_index(const IVec& c) const {
    bool nonneg = true, nonpos = true, zero = true;
    for (int x : c) {
        if (x < 0) nonneg = false;
        if (x > 0) nonpos = false;
        if (x != 0) zero = false;
    }
    if (zero) return -1;
    if (nonneg) {
        int r = rs_.find(c);
        return r < 0 ? -1 : r;
    }
    if (nonpos) {
        IVec n = c;
        for (int& x : n) x = -x;
        int r = rs_.find(n);
        return r < 0 ? -1 : P_ + r;
    }
    return -1;
}

void ChevalleyBasis::build_simply_laced() {
    signs_ = sigma_adapted_signs(rs_, perm_);
    for (int g = 0; g < 2 * P_; ++g)
        for (int d = 0; d < 2 * P_; ++d) {
            IVec wg = weight(g), wd = weight(d), s(rs_.rank);
            for (int i = 0; i < rs_.rank; ++i) s[i] = wg[i] + wd[i];
            int t = signed_index(s);
            if (t < 0) continue;
            int sign = sign_of(g) * sign_of(d) * sign_of(t) * epsilon_sign(rs_, wg, wd) * signs_[root_of(g)] *
                       signs_[root_of(d)] * signs_[root_of(t)];
            N_[g][d] = sign;
            tgt_[g][d] = t;
        }
}

void ChevalleyBasis::build_by_folding() {
    // images of our symbols inside a source Lie algebra
    std::shared_ptr<const ChevalleyBasis> src;
    std::vector<LieElem> img(2 * P_);
    const Ring& q = Ring::char0();
    const int n = rs_.rank;
    if (rs_.series == 'B' && n == 2) {
        src = chevalley_basis(build_root_system('C', 2));
        for (int s = 0; s < 2 * P_; ++s) {
            IVec c = rs_.pos[s % P_];
            IVec swapped{c[1], c[0]};
            int r = src->rs().find(swapped);
            img[s][src->symbol_of(r, sign_of(s))] = Scalar::one(q);
        }
    } else {
        RootSystem base;
        std::string autom = "flip";
        switch (rs_.series) {
            case 'B': base = build_root_system('D', n + 1); break;
            case 'C': base = build_root_system('A', 2 * n - 1); break;
            case 'F': base = build_root_system('E', 6); break;
            case 'G':
                base = build_root_system('D', 4);
                autom = "rot3";
                break;
            default: fail(ErrorCode::Internal, "unexpected series");
        }
        FoldingDatum fd = fold(base, parse_automorphism(base, autom));
        if (fd.folded.cartan != rs_.cartan) fail(ErrorCode::Internal, "folded Cartan matrix mismatch");
        src = chevalley_basis(base, fd.sigma.perm);
        for (int s = 0; s < 2 * P_; ++s) {
            int mu = s % P_;
            int rep = fd.rep_of_folded(mu);
            for (int j = 0; j < fd.gamma[rep]; ++j)
                img[s][src->symbol_of(fd.sigma_root(rep, j), sign_of(s))] = Scalar::one(q);
        }
    }
    for (int g = 0; g < 2 * P_; ++g)
        for (int d = 0; d < 2 * P_; ++d) {
            IVec wg = weight(g), wd = weight(d), s(n);
            for (int i = 0; i < n; ++i) s[i] = wg[i] + wd[i];
            int t = signed_index(s);
            if (t < 0) continue;
            LieElem br = src->bracket(img[g], img[d], q);
            const Scalar& c = br.count(img[t].begin()->first) ? br.at(img[t].begin()->first) : Scalar::zero(q);
            if (!lie_equal(br, lie_scaled(img[t], c)) || !c.is_rational())
                fail(ErrorCode::Internal, "folded bracket is not a multiple of a root vector");
            N_[g][d] = static_cast<int>(Integer(c.rational().get_num()).get_si());
            tgt_[g][d] = t;
        }
}

int ChevalleyBasis::structure_constant(int g, int d) const { return N_[g][d]; }

std::vector<std::pair<int, int>> ChevalleyBasis::bracket_basis(int a, int b) const {
    std::vector<std::pair<int, int>> out;
    const int H = 2 * P_;
    if (a >= H && b >= H) return out;
    if (a >= H || b >= H) {
        bool swapped = a < H;
        int hi = swapped ? b - H : a - H;
        int x = swapped ? a : b;
        int v = sign_of(x) * rs_.pair_coroot(rs_.pos[root_of(x)], hi);
        if (v != 0) out.emplace_back(x, swapped ? -v : v);
        return out;
    }
    if (root_of(a) == root_of(b) && a != b) {
        // [x+, x-] = h_alpha
        int s = a < P_ ? 1 : -1;
        IVec h = rs_.coroot(root_of(a));
        for (int i = 0; i < rs_.rank; ++i)
            if (h[i] != 0) out.emplace_back(H + i, s * h[i]);
        return out;
    }
    if (tgt_[a][b] >= 0 && N_[a][b] != 0) out.emplace_back(tgt_[a][b], N_[a][b]);
    return out;
}

LieElem ChevalleyBasis::bracket(const LieElem& a, const LieElem& b, const Ring& r) const {
    LieElem out;
    for (const auto& [i, ca] : a)
        for (const auto& [j, cb] : b) {
            if (ca.is_zero() || cb.is_zero()) continue;
            Scalar c = ca * cb;
            for (auto [k, n] : bracket_basis(i, j)) {
                Scalar v = c * Scalar::from_int(r, n);
                auto it = out.find(k);
                if (it == out.end()) out.emplace(k, v);
                else {
                    it->second += v;
                    if (it->second.is_zero()) out.erase(it);
                }
            }
        }
    return out;
}

LieElem ChevalleyBasis::unit(int idx, const Ring& r) const { return LieElem{{idx, Scalar::one(r)}}; }

std::shared_ptr<const ChevalleyBasis> chevalley_basis(const RootSystem& rs, const IVec& perm) {
    static std::mutex mu;
    static std::map<std::pair<std::string, IVec>, std::shared_ptr<const ChevalleyBasis>> cache;
    IVec p = perm;
    if (p.empty())
        for (int i = 0; i < rs.rank; ++i) p.push_back(i);
    auto key = std::make_pair(rs.name(), p);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto cb = std::make_shared<const ChevalleyBasis>(rs, p);
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, cb).first->second;
}

// ---------------------------------------------------------------------------

TwistedBasis::TwistedBasis(const FoldingDatum& fd)
    : cb_(chevalley_basis(fd.base, fd.sigma.perm)), fd_(fd) {
    const int m = fd_.m;
    ring_ = &Ring::char0(m == 3 ? 3 : 1, fd_.a2n);
    if (m == 3) zeta_ = Scalar::zeta(*ring_);
    else if (m == 2) zeta_ = Scalar::from_int(*ring_, -1);
    else zeta_ = Scalar::one(*ring_);

    const int n0 = fd_.folded.rank;
    for (int eps = 0; eps < m; ++eps) {
        for (int sign : {1, -1})
            for (int a : fd_.O) {
                if (!fd_.grade_nonzero(a, eps)) continue;
                TwistedElem e;
                e.kind = sign > 0 ? TwistedElem::Kind::XPlus : TwistedElem::Kind::XMinus;
                e.eps = eps;
                e.root = a;
                e.mu = fd_.restriction[a];
                e.value = x_alpha(a, eps, sign);
                std::ostringstream s;
                s << (sign > 0 ? "x+" : "x-") << "[";
                for (std::size_t i = 0; i < e.mu.size(); ++i) s << (i ? "," : "") << e.mu[i];
                s << ";" << eps << "]";
                e.label = s.str();
                add_elem(std::move(e));
            }
        for (int i = 0; i < n0; ++i) {
            LieElem v = h_node(i, eps);
            if (lie_is_zero(v)) continue;
            TwistedElem e;
            e.kind = TwistedElem::Kind::H;
            e.eps = eps;
            e.node = i;
            e.value = v;
            e.label = "h[" + std::to_string(i + 1) + ";" + std::to_string(eps) + "]";
            add_elem(std::move(e));
        }
    }
    if (static_cast<int>(basis_.size()) != cb_->dim()) fail(ErrorCode::Internal, "twisted basis has wrong size");

    // change-of-basis groups
    const int P = cb_->num_pos();
    group_of_symbol_.assign(cb_->dim(), -1);
    for (int sign : {1, -1})
        for (int a : fd_.O) {
            Group g;
            for (int j = 0; j < fd_.gamma[a]; ++j) g.symbols.push_back(cb_->symbol_of(fd_.sigma_root(a, j), sign));
            for (int eps = 0; eps < m; ++eps) {
                int idx = index_x(a, eps, sign);
                if (idx >= 0) g.elems.push_back(idx);
            }
            groups_.push_back(std::move(g));
        }
    for (int i = 0; i < n0; ++i) {
        Group g;
        for (int k : fd_.node_orbits[i]) g.symbols.push_back(cb_->h(k));
        for (int eps = 0; eps < m; ++eps) {
            int idx = index_h(i, eps);
            if (idx >= 0) g.elems.push_back(idx);
        }
        groups_.push_back(std::move(g));
    }
    (void)P;
    for (std::size_t gi = 0; gi < groups_.size(); ++gi) {
        Group& g = groups_[gi];
        if (g.symbols.size() != g.elems.size()) fail(ErrorCode::Internal, "twisted basis group is not square");
        const std::size_t k = g.symbols.size();
        Mat M = zero_mat(*ring_, k, k);
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < k; ++c) {
                const LieElem& v = basis_[g.elems[c]].value;
                auto it = v.find(g.symbols[r]);
                if (it != v.end()) M[r][c] = it->second;
            }
        g.inv = inverse(M);
        for (int s : g.symbols) group_of_symbol_[s] = static_cast<int>(gi);
    }
}

void TwistedBasis::add_elem(TwistedElem e) {
    int idx = static_cast<int>(basis_.size());
    if (e.kind == TwistedElem::Kind::H) h_index_[{e.node, e.eps}] = idx;
    else x_index_[{e.root, e.eps, e.kind == TwistedElem::Kind::XPlus ? 1 : -1}] = idx;
    basis_.push_back(std::move(e));
}

int TwistedBasis::index_x(int rep, int eps, int sign) const {
    auto it = x_index_.find({rep, eps, sign});
    return it == x_index_.end() ? -1 : it->second;
}

int TwistedBasis::index_h(int node, int eps) const {
    auto it = h_index_.find({node, eps});
    return it == h_index_.end() ? -1 : it->second;
}

LieElem TwistedBasis::x_alpha(int root, int eps, int sign) const {
    const Ring& r = *ring_;
    const int m = fd_.m;
    LieElem out;
    if (!fd_.grade_nonzero(root, eps)) return out;
    if (fd_.gamma[root] == 1) return cb_->unit(cb_->symbol_of(root, sign), r);
    if (fd_.a2n) {
        bool shrt = fd_.folded_short[fd_.restricted_root[root]];
        Scalar c = shrt ? Scalar::sqrt2(r) : Scalar::one(r);
        out[cb_->symbol_of(root, sign)] = c;
        out[cb_->symbol_of(fd_.perm_root[root], sign)] = (eps % 2 == 0) ? c : -c;
        return out;
    }
    for (int j = 0; j < m; ++j) out[cb_->symbol_of(fd_.sigma_root(root, j), sign)] = zeta_.pow(static_cast<long long>(j) * eps);
    return out;
}

LieElem TwistedBasis::hbar(int root, int eps) const {
    const Ring& r = *ring_;
    const int m = fd_.m;
    LieElem out;
    auto add_h = [&](int rt, const Scalar& c) {
        IVec h = cb_->rs().coroot(rt);
        for (int i = 0; i < cb_->rs().rank; ++i)
            if (h[i] != 0) lie_add(out, cb_->unit(cb_->h(i), r), c * Scalar::from_int(r, h[i]));
    };
    if (fd_.gamma[root] == 1) {
        if (eps == 0) add_h(root, Scalar::one(r));
        return out;
    }
    if (fd_.a2n) {
        bool shrt = fd_.folded_short[fd_.restricted_root[root]];
        Scalar c = Scalar::from_int(r, shrt ? 2 : 1);
        add_h(root, c);
        add_h(fd_.perm_root[root], (eps % 2 == 0) ? c : -c);
        return out;
    }
    for (int j = 0; j < m; ++j) add_h(fd_.sigma_root(root, j), zeta_.pow(static_cast<long long>(j) * eps));
    return out;
}

LieElem TwistedBasis::h_node(int i, int eps) const {
    int root = fd_.o_map[i];  // simple roots come first in the root order
    LieElem v = hbar(root, eps);
    if (fd_.a2n_short_node(i)) v = lie_scaled(v, Scalar::from_rational(*ring_, Rational(1, 2)));
    return v;
}

LieElem TwistedBasis::h_mu(int rep, int eps) const {
    LieElem v = hbar(rep, eps);
    if (fd_.a2n && fd_.gamma[rep] == 2 && fd_.folded_short[fd_.restricted_root[rep]])
        v = lie_scaled(v, Scalar::from_rational(*ring_, Rational(1, 2)));
    return v;
}

LieElem TwistedBasis::x_mu(int mu, bool doubled, int eps, int sign) const {
    return x_alpha(fd_.rep_of_folded(mu, doubled), eps, sign);
}

Scalar TwistedBasis::reconstruction_factor(int root) const {
    if (fd_.a2n && fd_.gamma[root] == 2 && fd_.folded_short[fd_.restricted_root[root]]) return Scalar::sqrt2(*ring_);
    return Scalar::one(*ring_);
}

Scalar TwistedBasis::hbar_reconstruction_factor(int root) const {
    if (fd_.a2n && fd_.gamma[root] == 2 && fd_.folded_short[fd_.restricted_root[root]])
        return Scalar::from_int(*ring_, 2);
    return Scalar::one(*ring_);
}

std::map<int, Scalar> TwistedBasis::decompose(const LieElem& x) const {
    std::map<int, Scalar> out;
    std::map<int, bool> touched;
    for (const auto& [s, v] : x)
        if (!v.is_zero()) touched[group_of_symbol_[s]] = true;
    for (const auto& [gi, flag] : touched) {
        const Group& g = groups_[gi];
        const std::size_t k = g.symbols.size();
        Vec coords = zero_vec(*ring_, k);
        for (std::size_t r = 0; r < k; ++r) {
            auto it = x.find(g.symbols[r]);
            if (it != x.end()) coords[r] = it->second;
        }
        Vec c = mat_vec(g.inv, coords);
        for (std::size_t e = 0; e < k; ++e)
            if (!c[e].is_zero()) out[g.elems[e]] = c[e];
    }
    return out;
}

LieElem TwistedBasis::compose(const std::map<int, Scalar>& c) const {
    LieElem out;
    for (const auto& [i, v] : c) lie_add(out, basis_[i].value, v);
    return out;
}

std::map<int, Scalar> TwistedBasis::bracket(int i, int j) const {
    return decompose(cb_->bracket(basis_[i].value, basis_[j].value, *ring_));
}

// ---------------------------------------------------------------------------

Sl2Triple sl2_triple(const TwistedBasis& tb, int mu, bool doubled, int eps) {
    const FoldingDatum& fd = tb.fd();
    const Ring& r = tb.ring();
    if (mu < 0 || mu >= fd.folded.num_pos()) fail(ErrorCode::InvalidArgument, "folded root out of range");
    if (doubled && !(fd.a2n && fd.folded_short[mu])) fail(ErrorCode::NotSl2, "2mu is not a weight");
    const int m = fd.m;
    int eps_f = (m - eps % m) % m;
    Sl2Triple t;
    t.e = tb.x_mu(mu, doubled, eps, 1);
    t.f = tb.x_mu(mu, doubled, eps_f, -1);
    if (lie_is_zero(t.e) || lie_is_zero(t.f)) fail(ErrorCode::NotSl2, "twisted basis pair vanishes at this grade");
    const ChevalleyBasis& cb = tb.cb();
    t.h = cb.bracket(t.e, t.f, r);
    LieElem he = cb.bracket(t.h, t.e, r), hf = cb.bracket(t.h, t.f, r);
    if (!lie_equal(he, lie_scaled(t.e, Scalar::from_int(r, 2))) || !lie_equal(hf, lie_scaled(t.f, Scalar::from_int(r, -2))))
        fail(ErrorCode::NotSl2, "pair does not close to an sl2 triple");
    LieElem h0 = tb.h_mu(fd.rep_of_folded(mu, false), 0);
    // h = c h_{mu,0}
    const auto& [k0, v0] = *h0.begin();
    Scalar c = t.h.count(k0) ? t.h.at(k0) / v0 : Scalar::zero(r);
    t.h_scale = lie_equal(t.h, lie_scaled(h0, c)) ? c : Scalar::zero(r);
    t.description = "e = x+_{mu," + std::to_string(eps) + "}, f = x-_{mu," + std::to_string(eps_f) +
                    "}, h = (" + t.h_scale.str() + ") h_{mu,0}";
    return t;
}

}  // namespace hyperloop
