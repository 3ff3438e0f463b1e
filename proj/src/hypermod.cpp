#include "hyperloop/hypermod.hpp"

#include <algorithm>
#include <set>

namespace hyperloop {

struct IntegralForm::QSparse {
    std::size_t n = 0;
    std::vector<std::vector<std::pair<std::uint32_t, Rational>>> col;
};

namespace {

using QS = std::vector<std::vector<std::pair<std::uint32_t, Rational>>>;

QS q_mul(const QS& a, const QS& b) {
    QS out(b.size());
    std::map<std::uint32_t, Rational> acc;
    for (std::size_t c = 0; c < b.size(); ++c) {
        acc.clear();
        for (const auto& [r, v] : b[c])
            for (const auto& [r2, w] : a[r]) acc[r2] += v * w;
        for (auto& [r, v] : acc)
            if (v != 0) out[c].emplace_back(r, v);
    }
    return out;
}

QS q_lincomb(const QS& a, const Rational& ca, const QS& b, const Rational& cb) {
    QS out(a.size());
    std::map<std::uint32_t, Rational> acc;
    for (std::size_t c = 0; c < a.size(); ++c) {
        acc.clear();
        for (const auto& [r, v] : a[c]) acc[r] += ca * v;
        for (const auto& [r, v] : b[c]) acc[r] += cb * v;
        for (auto& [r, v] : acc)
            if (v != 0) out[c].emplace_back(r, v);
    }
    return out;
}

IVec minus_root(const RootSystem& rs, const IVec& mu, int i, int k = 1) {
    IVec out = mu;
    for (int j = 0; j < rs.rank; ++j) out[j] -= k * rs.cartan[j][i];
    return out;
}

IVec plus_root(const RootSystem& rs, const IVec& mu, int i, int k = 1) { return minus_root(rs, mu, i, -k); }

// sum of root coordinates of lambda - mu
Rational depth_below(const RootSystem& rs, const IVec& lambda, const IVec& mu) {
    const int n = rs.rank;
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) a[j][i] = rs.cartan[j][i];
        a[j][n] = lambda[j] - mu[j];
    }
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (a[p][c] == 0) ++p;
        std::swap(a[p], a[c]);
        for (int r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            Rational f = a[r][c] / a[c][c];
            for (int k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    Rational s = 0;
    for (int c = 0; c < n; ++c) s += a[c][n] / a[c][c];
    return s;
}

}  // namespace

IntegralForm::IntegralForm(std::shared_ptr<const ChevalleyBasis> cb, const IVec& lambda)
    : cb_(std::move(cb)), lambda_(lambda) {
    const RootSystem& rs = cb_->rs();
    if (static_cast<int>(lambda.size()) != rs.rank) fail(ErrorCode::InvalidArgument, "weight has wrong length");
    for (int x : lambda)
        if (x < 0) fail(ErrorCode::InvalidArgument, "highest weight must be dominant");
    for (int a = 0; a < rs.num_pos(); ++a) kmax_ = std::max(kmax_, rs.weight_on_coroot(lambda, a) + 1);
    build();
}

int IntegralForm::weight_index(const IVec& mu) const {
    auto it = widx_.find(mu);
    return it == widx_.end() ? -1 : it->second;
}

void IntegralForm::build() {
    const RootSystem& rs = cb_->rs();
    const int n = rs.rank;
    wts_.push_back(lambda_);
    widx_[lambda_] = 0;
    wdim_.push_back(1);
    std::vector<int> level{0};
    while (!level.empty()) {
        std::set<IVec> cand;
        for (int w : level)
            for (int i = 0; i < n; ++i) cand.insert(minus_root(rs, wts_[w], i));
        std::vector<int> next;
        for (const IVec& mu : cand) {
            // columns of the signature: blocks e_j for weights mu + alpha_j
            std::vector<int> up(n, -1);
            std::vector<std::size_t> boff(n + 1, 0);
            for (int j = 0; j < n; ++j) {
                up[j] = weight_index(plus_root(rs, mu, j));
                boff[j + 1] = boff[j] + (up[j] >= 0 ? wdim_[up[j]] : 0);
            }
            const std::size_t S = boff[n];
            struct Gen {
                int i, k, src;
                std::size_t b;
            };
            std::vector<Gen> gens;
            IntLattice lat;
            lat.ambient_dim = S;
            for (int i = 0; i < n; ++i) {
                for (int k = 1;; ++k) {
                    int src = weight_index(plus_root(rs, mu, i, k));
                    if (src < 0) break;
                    const IVec& nu = wts_[src];
                    for (std::size_t b = 0; b < wdim_[src]; ++b) {
                        std::vector<Integer> sig(S, 0);
                        for (int j = 0; j < n; ++j) {
                            if (up[j] < 0) continue;
                            auto add_col = [&](const IntMat& m, std::size_t col, const Integer& c) {
                                for (std::size_t r = 0; r < m.size(); ++r) sig[boff[j] + r] += c * m[r][col];
                            };
                            // f_i^{(k)} e_j b
                            int top = weight_index(plus_root(rs, nu, j));
                            if (top >= 0) {
                                const IntMat& ej = e_.at({src, j});
                                auto it = f_.find({top, i, k});
                                if (it != f_.end()) {
                                    const IntMat& fk = it->second;
                                    for (std::size_t r = 0; r < fk.size(); ++r) {
                                        Integer acc = 0;
                                        for (std::size_t t = 0; t < ej.size(); ++t) acc += fk[r][t] * ej[t][b];
                                        sig[boff[j] + r] += acc;
                                    }
                                }
                            }
                            if (j == i) {
                                Integer c = nu[i] - k + 1;
                                if (c == 0) continue;
                                if (k == 1) {
                                    sig[boff[j] + b] += c;
                                } else {
                                    auto it = f_.find({src, i, k - 1});
                                    if (it != f_.end()) add_col(it->second, b, c);
                                }
                            }
                        }
                        gens.push_back({i, k, src, b});
                        lat.rows.push_back(std::move(sig));
                    }
                }
            }
            if (S == 0) continue;
            std::vector<std::vector<Integer>> sigs = lat.rows;
            IntLattice hnf = hermite_normal_form(lat);
            if (hnf.rank() == 0) continue;
            const int w = static_cast<int>(wts_.size());
            const std::size_t r = hnf.rank();
            wts_.push_back(mu);
            widx_[mu] = w;
            wdim_.push_back(r);
            next.push_back(w);
            for (int j = 0; j < n; ++j) {
                if (up[j] < 0) continue;
                IntMat ej(wdim_[up[j]], std::vector<Integer>(r, 0));
                for (std::size_t c = 0; c < r; ++c)
                    for (std::size_t t = 0; t < wdim_[up[j]]; ++t) ej[t][c] = hnf.rows[c][boff[j] + t];
                e_[{w, j}] = std::move(ej);
            }
            std::vector<Integer> coeffs;
            for (std::size_t g = 0; g < gens.size(); ++g) {
                const Gen& G = gens[g];
                if (!lattice_coordinates(hnf, sigs[g], coeffs)) fail(ErrorCode::Internal, "generator outside its own lattice");
                auto& fm = f_[{G.src, G.i, G.k}];
                if (fm.empty()) fm.assign(r, std::vector<Integer>(wdim_[G.src], 0));
                for (std::size_t c = 0; c < r; ++c) fm[c][G.b] = coeffs[c];
            }
        }
        level = std::move(next);
    }
    off_.assign(wts_.size(), 0);
    for (std::size_t w = 0; w < wts_.size(); ++w) {
        off_[w] = dim_;
        dim_ += wdim_[w];
        for (std::size_t b = 0; b < wdim_[w]; ++b) basis_wt_.push_back(wts_[w]);
    }
}

const IntegralForm::QSparse& IntegralForm::qpower(int root, int sign, int k) const {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto key = std::make_tuple(root, sign, k);
    auto it = qpow_.find(key);
    if (it != qpow_.end()) return *it->second;
    const RootSystem& rs = cb_->rs();
    auto out = std::make_shared<QSparse>();
    out->n = dim_;
    out->col.resize(dim_);
    if (k == 0) {
        for (std::size_t c = 0; c < dim_; ++c) out->col[c].emplace_back(c, Rational(1));
    } else if (k > 1) {
        const QSparse& x = qpower(root, sign, 1);
        const QSparse& prev = qpower(root, sign, k - 1);
        out->col = q_mul(x.col, prev.col);
        for (auto& col : out->col)
            for (auto& e : col) e.second /= k;
    } else if (root < rs.rank) {
        const int i = root;
        for (std::size_t w = 0; w < wts_.size(); ++w) {
            if (sign > 0) {
                auto e = e_.find({static_cast<int>(w), i});
                if (e == e_.end()) continue;
                int t = weight_index(plus_root(rs, wts_[w], i));
                for (std::size_t c = 0; c < wdim_[w]; ++c)
                    for (std::size_t r = 0; r < e->second.size(); ++r)
                        if (e->second[r][c] != 0) out->col[off_[w] + c].emplace_back(off_[t] + r, Rational(e->second[r][c]));
            } else {
                auto f = f_.find({static_cast<int>(w), i, 1});
                if (f == f_.end()) continue;
                int t = weight_index(minus_root(rs, wts_[w], i));
                for (std::size_t c = 0; c < wdim_[w]; ++c)
                    for (std::size_t r = 0; r < f->second.size(); ++r)
                        if (f->second[r][c] != 0) out->col[off_[w] + c].emplace_back(off_[t] + r, Rational(f->second[r][c]));
            }
        }
        for (auto& col : out->col) std::sort(col.begin(), col.end(), [](auto& a, auto& b) { return a.first < b.first; });
    } else {
        // x_alpha = [x_beta, x_i] / N with alpha = beta + alpha_i
        const IVec& a = rs.pos[root];
        int i = 0, beta = -1;
        for (; i < rs.rank; ++i) {
            if (a[i] == 0) continue;
            IVec b = a;
            --b[i];
            beta = rs.find(b);
            if (beta >= 0) break;
        }
        if (beta < 0) fail(ErrorCode::Internal, "root without a simple predecessor");
        auto br = cb_->bracket_basis(cb_->symbol_of(beta, sign), cb_->symbol_of(i, sign));
        if (br.size() != 1 || br[0].first != cb_->symbol_of(root, sign))
            fail(ErrorCode::Internal, "unexpected bracket of root vectors");
        const QSparse& xb = qpower(beta, sign, 1);
        const QSparse& xi = qpower(i, sign, 1);
        Rational inv = Rational(1, br[0].second);
        inv.canonicalize();
        out->col = q_lincomb(q_mul(xb.col, xi.col), inv, q_mul(xi.col, xb.col), -inv);
    }
    return *qpow_.emplace(key, out).first->second;
}

const IntSparse& IntegralForm::divided_power(int root, int sign, int k) const {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto key = std::make_tuple(root, sign, k);
    auto it = dp_.find(key);
    if (it != dp_.end()) return *it->second;
    if (root < 0 || root >= cb_->num_pos()) fail(ErrorCode::InvalidArgument, "root index out of range");
    if (k < 0) fail(ErrorCode::DegreeOutOfRange, "negative divided power");
    const QSparse& q = qpower(root, sign, k);
    auto out = std::make_unique<IntSparse>();
    out->rows = out->cols = dim_;
    out->col.resize(dim_);
    for (std::size_t c = 0; c < dim_; ++c)
        for (const auto& [r, v] : q.col[c]) {
            if (v.get_den() != 1)
                fail(ErrorCode::LatticeDenominator, "divided power " + cb_->symbol(cb_->symbol_of(root, sign)) + "^(" +
                                                        std::to_string(k) + ") is not integral on the lattice");
            out->col[c].emplace_back(r, Integer(v.get_num()));
        }
    return *dp_.emplace(key, std::move(out)).first->second;
}

std::shared_ptr<const IntegralForm> integral_form(std::shared_ptr<const ChevalleyBasis> cb, const IVec& lambda) {
    static std::mutex mu;
    static std::map<std::pair<const ChevalleyBasis*, IVec>, std::shared_ptr<const IntegralForm>> cache;
    auto key = std::make_pair(cb.get(), lambda);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto f = std::make_shared<const IntegralForm>(cb, lambda);
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, f).first->second;
}

// ---------------------------------------------------------------------------

Module::Module(const Ring& field, std::shared_ptr<const ChevalleyBasis> cb, IVec hw, std::vector<IVec> weights,
               std::size_t hv, int kmax, Provider provider, std::string kind)
    : field_(&field),
      cb_(std::move(cb)),
      hw_(std::move(hw)),
      weights_(std::move(weights)),
      hv_(hv),
      kmax_(kmax),
      provider_(std::move(provider)),
      kind_(std::move(kind)),
      identity_(SparseMatrix::identity(field, weights_.size())) {}

const SparseMatrix& Module::op(int root, int sign, int k) const {
    if (root < 0 || root >= cb_->num_pos() || (sign != 1 && sign != -1))
        fail(ErrorCode::InvalidArgument, "no such root vector");
    if (k < 0 || k > kmax_)
        fail(ErrorCode::DegreeOutOfRange, "divided power " + std::to_string(k) + " exceeds K_max = " + std::to_string(kmax_));
    if (k == 0) return identity_;
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_tuple(root, sign, k);
    auto it = cache_.find(key);
    if (it != cache_.end()) return *it->second;
    auto m = std::make_unique<SparseMatrix>(provider_(root, sign, k));
    return *cache_.emplace(key, std::move(m)).first->second;
}

Vec Module::apply(int root, int sign, int k, const Vec& v) const { return op(root, sign, k).apply(v); }

Vec Module::apply_hbinom(int i, int k, const Vec& v) const {
    Vec out = v;
    for (std::size_t b = 0; b < v.size(); ++b)
        if (!v[b].is_zero()) out[b] = v[b] * Scalar::from_integer(*field_, binomial(weights_[b][i], k));
    return out;
}

Vec Module::unit(std::size_t i) const {
    Vec v = zero_vec(*field_, dim());
    v[i] = Scalar::one(*field_);
    return v;
}

Vec apply_divided_power(const Module& m, int root, int sign, int k, const Vec& v) { return m.apply(root, sign, k, v); }

ModulePtr build_weyl_module(std::shared_ptr<const ChevalleyBasis> cb, const IVec& lambda, const Ring& field) {
    auto form = integral_form(cb, lambda);
    const Ring* f = &field;
    auto provider = [form, f](int root, int sign, int k) {
        const IntSparse& z = form->divided_power(root, sign, k);
        SparseMatrix out(*f, z.rows, z.cols);
        for (std::size_t c = 0; c < z.cols; ++c)
            for (const auto& [r, v] : z.col[c]) out.add(r, c, Scalar::from_integer(*f, v));
        return out;
    };
    return std::make_shared<const Module>(field, cb, lambda, form->basis_weights(), 0, form->kmax(), provider, "weyl");
}

ModulePtr build_weyl_module(const FoldingDatum& fd, const IVec& lambda0, const Ring& field) {
    if (fd.a2n && field.characteristic() == 2)
        fail(ErrorCode::CharTwoA2n, "g_0 of an A_{2n} folding is not treated in characteristic 2");
    return build_weyl_module(chevalley_basis(fd.folded), lambda0, field);
}

// ---------------------------------------------------------------------------

namespace {

struct WeightBlocks {
    std::vector<IVec> wts;                     // by depth
    std::map<IVec, int> idx;
    std::vector<std::vector<std::size_t>> members;  // global indices
    std::vector<std::size_t> local;            // global -> local index
    std::vector<int> block;                    // global -> block
};

WeightBlocks weight_blocks(const Module& m) {
    WeightBlocks wb;
    std::map<IVec, std::vector<std::size_t>> by;
    for (std::size_t g = 0; g < m.dim(); ++g) by[m.weights()[g]].push_back(g);
    std::vector<std::pair<Rational, IVec>> order;
    for (const auto& [w, _] : by) order.emplace_back(depth_below(m.rs(), m.highest_weight(), w), w);
    std::sort(order.begin(), order.end());
    wb.local.assign(m.dim(), 0);
    wb.block.assign(m.dim(), -1);
    for (const auto& [_, w] : order) {
        int b = static_cast<int>(wb.wts.size());
        wb.wts.push_back(w);
        wb.idx[w] = b;
        wb.members.push_back(by[w]);
        for (std::size_t l = 0; l < by[w].size(); ++l) {
            wb.local[by[w][l]] = l;
            wb.block[by[w][l]] = b;
        }
    }
    return wb;
}

// radical of each weight space, in local coordinates
std::vector<Subspace> radical_blocks(const Module& m, const WeightBlocks& wb) {
    const Ring& F = m.field();
    const RootSystem& rs = m.rs();
    std::vector<Subspace> rad;
    for (std::size_t b = 0; b < wb.wts.size(); ++b) {
        const std::size_t d = wb.members[b].size();
        rad.emplace_back(F, d);
        if (wb.wts[b] == m.highest_weight()) continue;
        Mat rows;
        for (int j = 0; j < rs.rank; ++j)
            for (int k = 1; k <= m.kmax(); ++k) {
                auto t = wb.idx.find(plus_root(rs, wb.wts[b], j, k));
                if (t == wb.idx.end()) break;
                const int tb = t->second;
                const Subspace& tr = rad[tb];
                const std::size_t td = wb.members[tb].size();
                const SparseMatrix& op = m.op(j, 1, k);
                // images of local basis vectors, reduced modulo the target radical
                std::vector<Vec> img;
                for (std::size_t c = 0; c < d; ++c) {
                    Vec v = zero_vec(F, td);
                    for (const auto& [r, x] : op.column(wb.members[b][c])) v[wb.local[r]] += x;
                    img.push_back(tr.reduce(std::move(v)));
                }
                for (std::size_t r = 0; r < td; ++r) {
                    Vec row(d);
                    bool nz = false;
                    for (std::size_t c = 0; c < d; ++c) {
                        row[c] = img[c][r];
                        nz = nz || !row[c].is_zero();
                    }
                    if (nz) rows.push_back(std::move(row));
                }
            }
        if (rows.empty()) {
            for (std::size_t c = 0; c < d; ++c) {
                Vec u = zero_vec(F, d);
                u[c] = Scalar::one(F);
                rad[b].add(u);
            }
        } else {
            for (const Vec& v : nullspace(rows, d)) rad[b].add(v);
        }
    }
    return rad;
}

}  // namespace

Radical contravariant_radical(const Module& m) {
    WeightBlocks wb = weight_blocks(m);
    auto rad = radical_blocks(m, wb);
    Radical out;
    for (std::size_t b = 0; b < rad.size(); ++b)
        for (const Vec& v : rad[b].basis()) {
            Vec g = zero_vec(m.field(), m.dim());
            for (std::size_t l = 0; l < v.size(); ++l) g[wb.members[b][l]] = v[l];
            out.basis.push_back(std::move(g));
        }
    out.dim = out.basis.size();
    return out;
}

ModulePtr simple_quotient(ModulePtr w) {
    auto wb = std::make_shared<WeightBlocks>(weight_blocks(*w));
    auto rad = std::make_shared<std::vector<Subspace>>(radical_blocks(*w, *wb));
    const Ring& F = w->field();
    // quotient basis: non-pivot local coordinates of each weight space
    auto qidx = std::make_shared<std::vector<std::vector<long>>>();  // block -> local -> quotient index or -1
    auto lift = std::make_shared<std::vector<std::size_t>>();        // quotient index -> global index
    std::vector<IVec> weights;
    std::size_t hv = 0;
    for (std::size_t b = 0; b < wb->wts.size(); ++b) {
        const std::size_t d = wb->members[b].size();
        std::vector<bool> piv(d, false);
        for (const Vec& row : (*rad)[b].basis()) {
            std::size_t p = 0;
            while (row[p].is_zero()) ++p;
            piv[p] = true;
        }
        qidx->emplace_back(d, -1);
        for (std::size_t l = 0; l < d; ++l) {
            if (piv[l]) continue;
            (*qidx)[b][l] = static_cast<long>(lift->size());
            if (wb->wts[b] == w->highest_weight()) hv = lift->size();
            lift->push_back(wb->members[b][l]);
            weights.push_back(wb->wts[b]);
        }
    }
    if (lift->size() == w->dim()) return w;
    const Ring* f = &F;
    auto provider = [w, wb, rad, qidx, lift, f](int root, int sign, int k) {
        const SparseMatrix& op = w->op(root, sign, k);
        SparseMatrix out(*f, lift->size(), lift->size());
        for (std::size_t q = 0; q < lift->size(); ++q) {
            const auto& col = op.column((*lift)[q]);
            if (col.empty()) continue;
            const int tb = wb->block[col.front().first];
            Vec v = zero_vec(*f, wb->members[tb].size());
            for (const auto& [r, x] : col) v[wb->local[r]] += x;
            v = (*rad)[tb].reduce(std::move(v));
            for (std::size_t l = 0; l < v.size(); ++l)
                if (!v[l].is_zero()) out.add((*qidx)[tb][l], q, v[l]);
        }
        return out;
    };
    return std::make_shared<const Module>(F, w->cb_ptr(), w->highest_weight(), weights, hv, w->kmax(), provider, "simple");
}

ModulePtr build_simple_module(std::shared_ptr<const ChevalleyBasis> cb, const IVec& lambda, const Ring& field) {
    return simple_quotient(build_weyl_module(std::move(cb), lambda, field));
}

Character character(const Module& m) {
    Character ch;
    for (const IVec& w : m.weights()) ++ch[w];
    return ch;
}

Character character_product(const Character& a, const Character& b) {
    Character out;
    for (const auto& [wa, ma] : a)
        for (const auto& [wb, mb] : b) {
            IVec w = wa;
            for (std::size_t i = 0; i < w.size(); ++i) w[i] += wb[i];
            out[w] += ma * mb;
        }
    return out;
}

ModulePtr tensor(ModulePtr a, ModulePtr b) {
    if (&a->field() != &b->field()) fail(ErrorCode::InvalidArgument, "tensor factors over different fields");
    if (&a->cb() != &b->cb()) fail(ErrorCode::InvalidArgument, "tensor factors for different algebras");
    std::vector<IVec> weights;
    weights.reserve(a->dim() * b->dim());
    for (const IVec& wa : a->weights())
        for (const IVec& wb : b->weights()) {
            IVec w = wa;
            for (std::size_t i = 0; i < w.size(); ++i) w[i] += wb[i];
            weights.push_back(std::move(w));
        }
    IVec hw = a->highest_weight();
    for (std::size_t i = 0; i < hw.size(); ++i) hw[i] += b->highest_weight()[i];
    int kmax = 1;
    const RootSystem& rs = a->rs();
    for (int r = 0; r < rs.num_pos(); ++r) kmax = std::max(kmax, rs.weight_on_coroot(hw, r) + 1);
    auto provider = [a, b](int root, int sign, int k) {
        SparseMatrix out(a->field(), a->dim() * b->dim(), a->dim() * b->dim());
        for (int l = 0; l <= k; ++l) {
            if (l > a->kmax() || k - l > b->kmax()) continue;
            out = out + a->op(root, sign, l).kron(b->op(root, sign, k - l));
        }
        return out;
    };
    return std::make_shared<const Module>(a->field(), a->cb_ptr(), hw, weights, a->hv() * b->dim() + b->hv(), kmax,
                                          provider, "tensor");
}

Subspace cyclic_closure(const Ring& field, std::size_t n, const std::vector<Vec>& seeds,
                        const std::vector<const SparseMatrix*>& generators) {
    Subspace s(field, n);
    std::vector<Vec> frontier;
    for (const Vec& v : seeds)
        if (s.add(v)) frontier.push_back(v);
    while (!frontier.empty() && s.dim() < n) {
        std::vector<Vec> next;
        for (const Vec& v : frontier)
            for (const SparseMatrix* g : generators) {
                Vec w = g->apply(v);
                if (is_zero_vec(w)) continue;
                if (s.add(w)) next.push_back(std::move(w));
            }
        frontier = std::move(next);
    }
    return s;
}

std::vector<const SparseMatrix*> full_generator_set(const Module& m) {
    std::vector<const SparseMatrix*> out;
    for (int r = 0; r < m.cb().num_pos(); ++r)
        for (int sign : {1, -1})
            for (int k = 1; k <= m.kmax(); ++k) {
                const SparseMatrix& op = m.op(r, sign, k);
                if (op.nnz() == 0) continue;
                out.push_back(&op);
            }
    return out;
}

}  // namespace hyperloop
