#include "hyperloop/loopaction.hpp"

#include <algorithm>
#include <functional>

namespace hyperloop {

namespace {

// compositions of k into n nonnegative parts
void compositions(int k, int n, std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& fn) {
    if (static_cast<int>(cur.size()) == n - 1) {
        cur.push_back(k);
        fn(cur);
        cur.pop_back();
        return;
    }
    for (int l = 0; l <= k; ++l) {
        cur.push_back(l);
        compositions(k - l, n, cur, fn);
        cur.pop_back();
    }
}

int mod(int a, int m) { return ((a % m) + m) % m; }

// x in the ring of the module; char-0 scalars of a smaller char-0 ring are carried over by coordinates
Scalar to_field(const Scalar& a, const Ring& f) {
    if (&a.ring() == &f) return a;
    if (a.ring().is_finite()) return embed(a, f);
    return reduce(a, make_embedding(f, 1, false));
}

}  // namespace

LoopModule::LoopModule(std::vector<ModulePtr> factors, std::vector<Scalar> points)
    : factors_(std::move(factors)), points_(std::move(points)) {
    if (factors_.empty() || factors_.size() != points_.size())
        fail(ErrorCode::InvalidArgument, "loop module needs one point per factor");
    field_ = &factors_.front()->field();
    for (const auto& f : factors_) {
        if (&f->field() != field_) fail(ErrorCode::InvalidArgument, "loop module factors over different fields");
        if (&f->cb() != &factors_.front()->cb()) fail(ErrorCode::InvalidArgument, "loop module factors for different algebras");
    }
    for (auto& a : points_) {
        a = to_field(a, *field_);
        if (a.is_zero()) fail(ErrorCode::ZeroEvaluationPoint, "evaluation point must be nonzero");
    }
    const std::size_t n = factors_.size();
    stride_.assign(n, 1);
    for (std::size_t f = n - 1; f-- > 0;) stride_[f] = stride_[f + 1] * factors_[f + 1]->dim();
    std::size_t total = stride_[0] * factors_[0]->dim();
    const int rank = rs().rank;
    weights_.assign(total, IVec(rank, 0));
    for (std::size_t b = 0; b < total; ++b)
        for (std::size_t f = 0; f < n; ++f) {
            const IVec& w = factors_[f]->weights()[(b / stride_[f]) % factors_[f]->dim()];
            for (int i = 0; i < rank; ++i) weights_[b][i] += w[i];
        }
    hw_.assign(rank, 0);
    for (std::size_t f = 0; f < n; ++f) {
        for (int i = 0; i < rank; ++i) hw_[i] += factors_[f]->highest_weight()[i];
        hv_ += factors_[f]->hv() * stride_[f];
        kmax_ += factors_[f]->kmax();
    }
    identity_ = SparseMatrix::identity(*field_, total);
}

Vec LoopModule::unit(std::size_t i) const {
    Vec v = zero_vec(*field_, dim());
    v[i] = Scalar::one(*field_);
    return v;
}

const IVec& LoopModule::factor_weight(std::size_t b, std::size_t f) const {
    return factors_[f]->weights()[(b / stride_[f]) % factors_[f]->dim()];
}

const SparseMatrix& LoopModule::x(int root, int sign, int r, int k) const {
    if (k == 0) return identity_;
    if (k < 0 || k > kmax_) fail(ErrorCode::DegreeOutOfRange, "divided power degree " + std::to_string(k));
    if (root < 0 || root >= rs().num_pos()) fail(ErrorCode::InvalidArgument, "root index out of range");
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_tuple(root, sign, r, k);
    auto it = cache_.find(key);
    if (it != cache_.end()) return *it->second;
    const std::size_t n = factors_.size();
    // suffix[l] = sum over compositions of l of the tensor product of the remaining factors
    std::vector<SparseMatrix> suffix;
    for (std::size_t f = n; f-- > 0;) {
        const Module& m = *factors_[f];
        std::vector<SparseMatrix> scaled(k + 1);
        Scalar ar = points_[f].pow(r);
        for (int l = 0; l <= k; ++l) {
            if (l > m.kmax())
                scaled[l] = SparseMatrix(*field_, m.dim(), m.dim());
            else
                scaled[l] = m.op(root, sign, l).scaled(ar.pow(l));
        }
        if (f == n - 1) {
            suffix = std::move(scaled);
            continue;
        }
        std::size_t rest = stride_[f];
        std::vector<SparseMatrix> next(k + 1);
        for (int l = 0; l <= k; ++l) {
            SparseMatrix acc(*field_, m.dim() * rest, m.dim() * rest);
            for (int j = 0; j <= l; ++j) {
                if (scaled[j].nnz() == 0 || suffix[l - j].nnz() == 0) continue;
                acc = acc + scaled[j].kron(suffix[l - j]);
            }
            next[l] = std::move(acc);
        }
        suffix = std::move(next);
    }
    auto res = cache_.emplace(key, std::make_unique<SparseMatrix>(std::move(suffix[k])));
    return *res.first->second;
}

Scalar LoopModule::h_value(const LieElem& h, const Embedding& emb, int s, std::size_t b) const {
    const int P = rs().num_pos();
    Scalar out = Scalar::zero(*field_);
    for (std::size_t f = 0; f < factors_.size(); ++f) {
        const IVec& w = factor_weight(b, f);
        Scalar acc = Scalar::zero(*field_);
        for (const auto& [sym, c] : h) {
            if (sym < 2 * P) fail(ErrorCode::InvalidArgument, "h_value expects a Cartan element");
            int i = sym - 2 * P;
            if (w[i] != 0) acc += reduce(c, emb) * Scalar::from_int(*field_, w[i]);
        }
        out += acc * points_[f].pow(s);
    }
    return out;
}

LoopModulePtr evaluation_module(ModulePtr m, const Scalar& a) {
    return std::make_shared<const LoopModule>(std::vector<ModulePtr>{std::move(m)}, std::vector<Scalar>{a});
}

LoopModulePtr loop_tensor(const LoopModule& a, const LoopModule& b) {
    auto f = a.factors();
    auto p = a.points();
    f.insert(f.end(), b.factors().begin(), b.factors().end());
    p.insert(p.end(), b.points().begin(), b.points().end());
    return std::make_shared<const LoopModule>(std::move(f), std::move(p));
}

Vec eval_action(const LoopModule& lm, int root, int sign, int r, int k, const Vec& v) {
    return lm.x(root, sign, r, k).apply(v);
}

std::vector<LoopTerm> expand_twisted_op(const TwistedBasis& tb, int root, int sign, int r, int k) {
    const FoldingDatum& fd = tb.fd();
    const ChevalleyBasis& cb = tb.cb();
    const Ring& q = tb.ring();
    const int eps = mod(-r, fd.m);
    std::vector<LoopTerm> out;
    if (k == 0) {
        out.push_back({Scalar::one(q), {}});
        return out;
    }
    LieElem x = tb.x_alpha(root, eps, sign);
    std::vector<std::pair<int, Scalar>> parts;  // (root, coefficient)
    for (const auto& [sym, c] : x)
        if (!c.is_zero()) parts.emplace_back(cb.root_of(sym), c);
    if (parts.empty()) return out;
    if (parts.size() == 1) {
        out.push_back({parts[0].second.pow(k), {{parts[0].first, sign, r, k}}});
        return out;
    }
    const RootSystem& rs = cb.rs();
    auto sum_root = [&](int a, int b) {
        IVec s = rs.pos[a];
        for (std::size_t i = 0; i < s.size(); ++i) s[i] += rs.pos[b][i];
        return rs.find(s);
    };
    bool heis = parts.size() == 2 && sum_root(parts[0].first, parts[1].first) >= 0;
    if (!heis) {
        std::vector<int> cur;
        compositions(k, static_cast<int>(parts.size()), cur, [&](const std::vector<int>& ks) {
            LoopTerm t{Scalar::one(q), {}};
            for (std::size_t j = 0; j < ks.size(); ++j) {
                if (ks[j] == 0) continue;
                t.coeff *= parts[j].second.pow(ks[j]);
                t.ops.push_back({parts[j].first, sign, r, ks[j]});
            }
            out.push_back(std::move(t));
        });
        return out;
    }
    // X = c1 x_b1 t^r, Y = c2 x_b2 t^r, [X, Y] = Z central:
    // (X + Y)^{(k)} = sum_{a + b + 2j = k} X^{(a)} Y^{(b)} (-Z/2)^{(j)}
    const auto& [b1, c1] = parts[0];
    const auto& [b2, c2] = parts[1];
    int n12 = cb.structure_constant(cb.symbol_of(b1, sign), cb.symbol_of(b2, sign));
    int b12 = sum_root(b1, b2);
    Scalar zc = -(c1 * c2 * Scalar::from_int(q, n12)) / Scalar::from_int(q, 2);
    for (int j = 0; 2 * j <= k; ++j)
        for (int a = 0; a + 2 * j <= k; ++a) {
            int b = k - 2 * j - a;
            LoopTerm t{c1.pow(a) * c2.pow(b) * zc.pow(j), {}};
            if (a > 0) t.ops.push_back({b1, sign, r, a});
            if (b > 0) t.ops.push_back({b2, sign, r, b});
            if (j > 0) t.ops.push_back({b12, sign, 2 * r, j});
            out.push_back(std::move(t));
        }
    return out;
}

const Ring& twisted_field(const FoldingDatum& fd, const Ring& base) {
    if (fd.a2n && base.characteristic() == 2) fail(ErrorCode::CharTwoA2n, "A_{2n} folding in characteristic 2");
    if (fd.m > 1 && base.characteristic() == static_cast<std::uint32_t>(fd.m))
        fail(ErrorCode::CharEqualsOrder, "characteristic equals the automorphism order");
    if (base.is_char0()) {
        int m = std::max(base.m(), fd.m == 3 ? 3 : 1);
        return Ring::char0(m, base.has_sqrt2() || fd.a2n);
    }
    return base.extension_with(fd.m, fd.a2n);
}

TwistedLoopModule::TwistedLoopModule(LoopModulePtr lm, const FoldingDatum& fd) : lm_(std::move(lm)) {
    const Ring& f = lm_->field();
    if (fd.a2n && f.characteristic() == 2) fail(ErrorCode::CharTwoA2n, "A_{2n} folding in characteristic 2");
    if (fd.m > 1 && f.characteristic() == static_cast<std::uint32_t>(fd.m))
        fail(ErrorCode::CharEqualsOrder, "characteristic equals the automorphism order");
    tb_ = std::make_shared<const TwistedBasis>(fd);
    if (&tb_->cb() != &lm_->cb())
        fail(ErrorCode::InvalidArgument, "loop module must use the Chevalley basis adapted to the automorphism");
    emb_ = make_embedding(f, fd.m, fd.a2n);
}

int TwistedLoopModule::kmax() const { return fd().m * lm_->kmax(); }

const SparseMatrix& TwistedLoopModule::x(int root, int sign, int r, int k) const {
    if (k < 0 || k > kmax()) fail(ErrorCode::DegreeOutOfRange, "divided power degree " + std::to_string(k));
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_tuple(root, sign, r, k);
    auto it = cache_.find(key);
    if (it != cache_.end()) return *it->second;
    const Ring& f = field();
    SparseMatrix out(f, dim(), dim());
    for (const LoopTerm& t : expand_twisted_op(*tb_, root, sign, r, k)) {
        bool zero = false;
        for (const auto& op : t.ops)
            if (op.k > lm_->kmax()) zero = true;
        if (zero) continue;
        SparseMatrix prod = SparseMatrix::identity(f, dim());
        for (const auto& op : t.ops) prod = prod * lm_->x(op.root, op.sign, op.r, op.k);
        out = out + prod.scaled(reduce(t.coeff));
    }
    auto res = cache_.emplace(key, std::make_unique<SparseMatrix>(std::move(out)));
    return *res.first->second;
}

const SparseMatrix& TwistedLoopModule::x_mu(int mu, bool doubled, int sign, int r, int k) const {
    return x(fd().rep_of_folded(mu, doubled), sign, r, k);
}

Scalar TwistedLoopModule::h_value(int rep, int s, std::size_t b) const {
    return lm_->h_value(tb_->h_mu(rep, mod(-s, fd().m)), emb_, s, b);
}

TwistedLoopModulePtr restrict_module(LoopModulePtr lm, const FoldingDatum& fd) {
    return std::make_shared<const TwistedLoopModule>(std::move(lm), fd);
}

LoopModulePtr sigma_evaluation_module(const FoldingDatum& fd, const IVec& lambda0, const Scalar& a, const Ring& base,
                                      bool simple) {
    if (static_cast<int>(lambda0.size()) != fd.folded.rank) fail(ErrorCode::InvalidArgument, "weight has wrong rank");
    const Ring& f = twisted_field(fd, base);
    auto cb = chevalley_basis(fd.base, fd.sigma.perm);
    IVec lam = fd.extend_weight(lambda0);
    ModulePtr m = simple ? build_simple_module(cb, lam, f) : build_weyl_module(cb, lam, f);
    return evaluation_module(std::move(m), a);
}

Poly exp_series(const std::vector<Scalar>& p, int N) {
    if (p.empty()) fail(ErrorCode::InvalidArgument, "empty power sums");
    const Ring& f = p[0].ring();
    // p[s-1] = p_s; c_r = -(1/r) sum_{j=1}^r p_j c_{r-j}
    Poly c(N + 1, Scalar::zero(f));
    c[0] = Scalar::one(f);
    for (int r = 1; r <= N; ++r) {
        Scalar acc = Scalar::zero(f);
        for (int j = 1; j <= r && j <= static_cast<int>(p.size()); ++j) acc += p[j - 1] * c[r - j];
        Scalar rr = Scalar::from_int(f, r);
        if (rr.is_zero()) fail(ErrorCode::DenominatorNotInvertible, "exponential series past the characteristic");
        c[r] = -(acc / rr);
    }
    return c;
}

namespace {

// prod (1 - x u)^kappa truncated at N
Poly product_series(const Ring& f, const std::vector<std::pair<Scalar, int>>& factors, int N) {
    Poly out{Scalar::one(f)};
    for (const auto& [x, kappa] : factors) {
        Poly g(N + 1, Scalar::zero(f));
        for (int r = 0; r <= N; ++r) g[r] = Scalar::from_integer(f, binomial(kappa, r)) * (-x).pow(r);
        out = poly_mul(out, g);
        out.resize(N + 1, Scalar::zero(f));
    }
    out.resize(N + 1, Scalar::zero(f));
    return out;
}

std::vector<std::size_t> support(const Vec& v) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) s.push_back(i);
    if (s.empty()) fail(ErrorCode::NotHighestLWeight, "zero vector");
    return s;
}

bool newton_ok(const Ring& f, int N) { return f.is_char0() || static_cast<std::uint32_t>(N) < f.characteristic(); }

// Joint eigenvalues over the support; product form per basis vector when Newton's identities are unavailable.
Poly eigen_series(const Ring& f, const Vec& v, int N, const std::function<Scalar(int s, std::size_t b)>& p,
                  const std::function<std::vector<std::pair<Scalar, int>>(std::size_t b)>& factors) {
    auto supp = support(v);
    if (newton_ok(f, N)) {
        std::vector<Scalar> ps;
        for (int s = 1; s <= N; ++s) {
            Scalar val = p(s, supp[0]);
            for (std::size_t b : supp)
                if (p(s, b) != val) fail(ErrorCode::NotHighestLWeight, "vector is not a joint eigenvector");
            ps.push_back(val);
        }
        if (N == 0) return Poly{Scalar::one(f)};
        return exp_series(ps, N);
    }
    Poly out = product_series(f, factors(supp[0]), N);
    for (std::size_t b : supp)
        if (product_series(f, factors(b), N) != out) fail(ErrorCode::NotHighestLWeight, "vector is not a joint eigenvector");
    return out;
}

}  // namespace

Poly lambda_series(const LoopModule& lm, const Vec& v, int root, int dir, int N, int stretch) {
    if (dir != 1 && dir != -1) fail(ErrorCode::InvalidArgument, "direction must be +1 or -1");
    const RootSystem& rs = lm.rs();
    const int P = rs.num_pos();
    IVec co = rs.coroot(root);
    LieElem h;
    for (int i = 0; i < rs.rank; ++i)
        if (co[i] != 0) h[2 * P + i] = Scalar::from_int(Ring::char0(), co[i]);
    Embedding emb = make_embedding(lm.field(), 1, false);
    auto p = [&](int s, std::size_t b) { return lm.h_value(h, emb, dir * stretch * s, b); };
    auto factors = [&](std::size_t b) {
        std::vector<std::pair<Scalar, int>> out;
        for (std::size_t f = 0; f < lm.factors().size(); ++f)
            out.emplace_back(lm.points()[f].pow(dir * stretch), rs.weight_on_coroot(lm.factor_weight(b, f), root));
        return out;
    };
    return eigen_series(lm.field(), v, N, p, factors);
}

Poly lambda_sigma_series_mu(const TwistedLoopModule& tm, const Vec& v, int mu, int dir, int N) {
    if (dir != 1 && dir != -1) fail(ErrorCode::InvalidArgument, "direction must be +1 or -1");
    const FoldingDatum& fd = tm.fd();
    const LoopModule& lm = tm.base();
    const int m = fd.m;
    int rep = fd.rep_of_folded(mu, false);
    bool full = fd.a2n || fd.gamma[rep] == m;
    const Embedding& emb = tm.embedding();
    std::function<Scalar(int, std::size_t)> p;
    std::function<std::vector<std::pair<Scalar, int>>(std::size_t)> factors;
    if (full) {
        p = [&](int s, std::size_t b) { return tm.h_value(rep, dir * s, b); };
        // prod_j (1 - zeta^{-j dir} a^dir u)^{nu(h_{sigma^j alpha})}
        factors = [&](std::size_t b) {
            std::vector<std::pair<Scalar, int>> out;
            for (std::size_t f = 0; f < lm.factors().size(); ++f)
                for (int j = 0; j < fd.gamma[rep]; ++j) {
                    Scalar z = emb.zeta.pow(mod(-j * dir, m));
                    out.emplace_back(z * lm.points()[f].pow(dir),
                                     lm.rs().weight_on_coroot(lm.factor_weight(b, f), fd.sigma_root(rep, j)));
                }
            return out;
        };
    } else {
        p = [&](int k, std::size_t b) { return tm.h_value(rep, dir * m * k, b); };
        factors = [&](std::size_t b) {
            std::vector<std::pair<Scalar, int>> out;
            for (std::size_t f = 0; f < lm.factors().size(); ++f)
                out.emplace_back(lm.points()[f].pow(dir * m), lm.rs().weight_on_coroot(lm.factor_weight(b, f), rep));
            return out;
        };
    }
    return eigen_series(lm.field(), v, N, p, factors);
}

Poly lambda_sigma_series(const TwistedLoopModule& tm, const Vec& v, int i, int dir, int N) {
    if (i < 0 || i >= tm.fd().folded.rank) fail(ErrorCode::InvalidArgument, "node index out of range");
    return lambda_sigma_series_mu(tm, v, i, dir, N);
}

Scalar ev_sigma_lambda(const FoldingDatum& fd, const IVec& lambda, const Scalar& a, const Embedding& emb, int mu,
                       int r, int dir) {
    const Ring& f = *emb.target;
    const int m = fd.m;
    int rep = fd.rep_of_folded(mu, false);
    Scalar x = to_field(a, f);
    if (x.is_zero()) fail(ErrorCode::ZeroEvaluationPoint, "evaluation point must be nonzero");
    if (!(fd.a2n || fd.gamma[rep] == m)) {
        int n = fd.base.weight_on_coroot(lambda, rep);
        return (-x.pow(dir * m)).pow(r) * Scalar::from_integer(f, binomial(n, r));
    }
    const int g = fd.gamma[rep];
    IVec n(g);
    for (int j = 0; j < g; ++j) n[j] = fd.base.weight_on_coroot(lambda, fd.sigma_root(rep, j));
    Scalar sum = Scalar::zero(f);
    std::vector<int> cur;
    compositions(r, g, cur, [&](const std::vector<int>& rj) {
        Scalar t = Scalar::one(f);
        for (int j = 0; j < g; ++j)
            t *= emb.zeta.pow(mod(-dir * j * rj[j], m)) * Scalar::from_integer(f, binomial(n[j], rj[j]));
        sum += t;
    });
    return (-x.pow(dir)).pow(r) * sum;
}

}  // namespace hyperloop
