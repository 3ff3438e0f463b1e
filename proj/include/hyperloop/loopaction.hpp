#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "hyperloop/hypermod.hpp"

namespace hyperloop {

/// Tensor product of evaluation modules V_1(a_1) ⊗ ... ⊗ V_n(a_n) over one field.
class LoopModule {
public:
    LoopModule(std::vector<ModulePtr> factors, std::vector<Scalar> points);

    const Ring& field() const { return *field_; }
    const ChevalleyBasis& cb() const { return factors_.front()->cb(); }
    const RootSystem& rs() const { return cb().rs(); }
    const std::vector<ModulePtr>& factors() const { return factors_; }
    const std::vector<Scalar>& points() const { return points_; }
    std::size_t dim() const { return weights_.size(); }
    const std::vector<IVec>& weights() const { return weights_; }
    const IVec& highest_weight() const { return hw_; }
    std::size_t hv() const { return hv_; }
    int kmax() const { return kmax_; }
    Vec unit(std::size_t i) const;

    /// (x^{sign}_alpha ⊗ t^r)^{(k)}; k = 0 is the identity.
    const SparseMatrix& x(int root, int sign, int r, int k) const;
    /// Eigenvalue of h ⊗ t^s on basis vector b (h a combination of the h_i symbols).
    Scalar h_value(const LieElem& h, const Embedding& emb, int s, std::size_t b) const;
    /// Weight of tensor factor f in basis vector b.
    const IVec& factor_weight(std::size_t b, std::size_t f) const;

private:
    const Ring* field_;
    std::vector<ModulePtr> factors_;
    std::vector<Scalar> points_;
    std::vector<IVec> weights_;
    IVec hw_;
    std::size_t hv_ = 0;
    int kmax_ = 0;
    std::vector<std::size_t> stride_;
    SparseMatrix identity_;
    mutable std::mutex mu_;
    mutable std::map<std::tuple<int, int, int, int>, std::unique_ptr<SparseMatrix>> cache_;
};

using LoopModulePtr = std::shared_ptr<const LoopModule>;

LoopModulePtr evaluation_module(ModulePtr m, const Scalar& a);
LoopModulePtr loop_tensor(const LoopModule& a, const LoopModule& b);

/// Evaluation map on the nontwisted generators.
Vec eval_action(const LoopModule& lm, int root, int sign, int r, int k, const Vec& v);

/// One factor (x^{sign}_root ⊗ t^r)^{(k)} of a product of nontwisted loop operators.
struct LoopOpFactor {
    int root, sign, r, k;
};
/// coeff * ops[0] ops[1] ... (rightmost applied first).
struct LoopTerm {
    Scalar coeff;
    std::vector<LoopOpFactor> ops;
};

/// (x^{sign}_{alpha,eps} ⊗ t^r)^{(k)} with eps = -r mod m expanded through nontwisted operators:
/// multinomial expansion for commuting orbits, the Heisenberg formula when alpha + sigma(alpha) is a root.
std::vector<LoopTerm> expand_twisted_op(const TwistedBasis& tb, int root, int sign, int r, int k);

/// Field containing zeta_m and (for A_{2n}) sqrt 2 over which twisted actions are realized.
const Ring& twisted_field(const FoldingDatum& fd, const Ring& base);

/// Restriction V -> V^sigma of a loop module to the twisted loop algebra.
class TwistedLoopModule {
public:
    TwistedLoopModule(LoopModulePtr lm, const FoldingDatum& fd);

    const LoopModule& base() const { return *lm_; }
    LoopModulePtr base_ptr() const { return lm_; }
    const FoldingDatum& fd() const { return tb_->fd(); }
    const TwistedBasis& tb() const { return *tb_; }
    const Embedding& embedding() const { return emb_; }
    const Ring& field() const { return lm_->field(); }
    std::size_t dim() const { return lm_->dim(); }
    std::size_t hv() const { return lm_->hv(); }
    /// Highest weight restricted to h_0, as lambda(h_{i,0}).
    IVec highest_weight0() const { return fd().restrict_weight(lm_->highest_weight()); }
    /// Upper bound for nonzero divided powers of twisted generators.
    int kmax() const;

    Scalar reduce(const Scalar& c) const { return hyperloop::reduce(c, emb_); }
    /// (x^{sign}_{alpha,-r} ⊗ t^r)^{(k)} for any positive root alpha (zero off-grade).
    const SparseMatrix& x(int root, int sign, int r, int k) const;
    /// Same, addressed by folded positive root mu (or 2 mu in 2R_s).
    const SparseMatrix& x_mu(int mu, bool doubled, int sign, int r, int k) const;
    /// Eigenvalue of h_{mu,eps} ⊗ t^s (eps = -s mod m) on basis vector b, mu = rep|_{h_0}.
    Scalar h_value(int rep, int s, std::size_t b) const;

private:
    LoopModulePtr lm_;
    std::shared_ptr<const TwistedBasis> tb_;
    Embedding emb_;
    mutable std::mutex mu_;
    mutable std::map<std::tuple<int, int, int, int>, std::unique_ptr<SparseMatrix>> cache_;
};

using TwistedLoopModulePtr = std::shared_ptr<const TwistedLoopModule>;

TwistedLoopModulePtr restrict_module(LoopModulePtr lm, const FoldingDatum& fd);

/// V(extend(lambda0), a) over twisted_field(fd, base): the simple (or Weyl) g-module with the
/// sigma-adapted basis, ready for restriction.
LoopModulePtr sigma_evaluation_module(const FoldingDatum& fd, const IVec& lambda0, const Scalar& a, const Ring& base,
                                      bool simple = true);

/// Formal exponential exp(-sum_{s>=1} p_s u^s / s) truncated at degree N.
Poly exp_series(const std::vector<Scalar>& p, int N);

/// Lambda^{pm}_alpha(u) v (or its tau_m image when `stretch` = m) for an eigenvector v, truncated at N.
Poly lambda_series(const LoopModule& lm, const Vec& v, int root, int dir, int N, int stretch = 1);
/// Lambda^{sigma,pm}_i(u) v for i in I_0, truncated at N; throws NotHighestLWeight if v is not
/// a joint eigenvector.
Poly lambda_sigma_series(const TwistedLoopModule& tm, const Vec& v, int i, int dir, int N);
/// Same for an arbitrary folded positive root mu.
Poly lambda_sigma_series_mu(const TwistedLoopModule& tm, const Vec& v, int mu, int dir, int N);
/// Closed form of ev^sigma_a(Lambda^sigma_{mu, pm r}) on the highest weight vector of weight
/// lambda (extended g-weight labels).
Scalar ev_sigma_lambda(const FoldingDatum& fd, const IVec& lambda, const Scalar& a, const Embedding& emb, int mu,
                       int r, int dir);

}  // namespace hyperloop
