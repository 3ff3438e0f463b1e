#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "hyperloop/chevalley.hpp"
#include "hyperloop/linalg.hpp"

namespace hyperloop {

using IntMat = std::vector<std::vector<Integer>>;  // row-major

/// Sparse integer matrix stored by columns.
struct IntSparse {
    std::size_t rows = 0, cols = 0;
    std::vector<std::vector<std::pair<std::uint32_t, Integer>>> col;
};

/// Kostant lattice U_Z(n^-) v inside the simple char-0 module of highest weight lambda.
/// Weight spaces carry Z-bases; every divided power of a root vector acts by an integer matrix.
class IntegralForm {
public:
    IntegralForm(std::shared_ptr<const ChevalleyBasis> cb, const IVec& lambda);

    const ChevalleyBasis& cb() const { return *cb_; }
    const IVec& highest_weight() const { return lambda_; }
    std::size_t dim() const { return dim_; }
    /// Distinct weights in construction order (by depth below lambda).
    const std::vector<IVec>& weight_list() const { return wts_; }
    std::size_t offset(int w) const { return off_[w]; }
    std::size_t weight_dim(int w) const { return wdim_[w]; }
    int weight_index(const IVec& mu) const;
    /// Weight of each basis vector.
    const std::vector<IVec>& basis_weights() const { return basis_wt_; }
    int kmax() const { return kmax_; }

    /// (x^{sign}_alpha)^{(k)} in lattice coordinates; throws LatticeDenominator if not integral.
    const IntSparse& divided_power(int root, int sign, int k) const;

private:
    struct QSparse;
    void build();
    const QSparse& qpower(int root, int sign, int k) const;

    std::shared_ptr<const ChevalleyBasis> cb_;
    IVec lambda_;
    std::vector<IVec> wts_;
    std::map<IVec, int> widx_;
    std::vector<std::size_t> off_, wdim_;
    std::vector<IVec> basis_wt_;
    std::size_t dim_ = 0;
    int kmax_ = 1;
    // e_j from weight w to w + alpha_j, and f_i^{(k)} from w to w - k alpha_i
    std::map<std::pair<int, int>, IntMat> e_;
    std::map<std::tuple<int, int, int>, IntMat> f_;

    mutable std::recursive_mutex mu_;
    mutable std::map<std::tuple<int, int, int>, std::shared_ptr<QSparse>> qpow_;
    mutable std::map<std::tuple<int, int, int>, std::unique_ptr<IntSparse>> dp_;
};

/// Cached per (Chevalley basis, lambda).
std::shared_ptr<const IntegralForm> integral_form(std::shared_ptr<const ChevalleyBasis> cb, const IVec& lambda);

/// Finite-dimensional module over a field with divided-power actions of all root vectors.
class Module {
public:
    using Provider = std::function<SparseMatrix(int root, int sign, int k)>;

    Module(const Ring& field, std::shared_ptr<const ChevalleyBasis> cb, IVec hw, std::vector<IVec> weights,
           std::size_t hv, int kmax, Provider provider, std::string kind);

    const Ring& field() const { return *field_; }
    const ChevalleyBasis& cb() const { return *cb_; }
    std::shared_ptr<const ChevalleyBasis> cb_ptr() const { return cb_; }
    const RootSystem& rs() const { return cb_->rs(); }
    const IVec& highest_weight() const { return hw_; }
    std::size_t dim() const { return weights_.size(); }
    const std::vector<IVec>& weights() const { return weights_; }
    std::size_t hv() const { return hv_; }
    int kmax() const { return kmax_; }
    const std::string& kind() const { return kind_; }

    /// (x^{sign}_alpha)^{(k)}; k = 0 is the identity. Throws DegreeOutOfRange for k > kmax.
    const SparseMatrix& op(int root, int sign, int k) const;
    Vec apply(int root, int sign, int k, const Vec& v) const;
    /// binom(h_i; k) acting diagonally.
    Vec apply_hbinom(int i, int k, const Vec& v) const;
    Vec unit(std::size_t i) const;

private:
    const Ring* field_;
    std::shared_ptr<const ChevalleyBasis> cb_;
    IVec hw_;
    std::vector<IVec> weights_;
    std::size_t hv_;
    int kmax_;
    Provider provider_;
    std::string kind_;
    mutable std::mutex mu_;
    mutable std::map<std::tuple<int, int, int>, std::unique_ptr<SparseMatrix>> cache_;
    SparseMatrix identity_;
};

using ModulePtr = std::shared_ptr<const Module>;

/// W_F(lambda) for g with the given Chevalley basis.
ModulePtr build_weyl_module(std::shared_ptr<const ChevalleyBasis> cb, const IVec& lambda, const Ring& field);
/// W_F(lambda) for g_0 of a folding; rejects characteristic 2 for A_{2n}.
ModulePtr build_weyl_module(const FoldingDatum& fd, const IVec& lambda0, const Ring& field);

/// Maximal proper submodule of a highest-weight module (radical of the contravariant form),
/// as a subspace of each weight space.
struct Radical {
    std::size_t dim = 0;
    std::vector<Vec> basis;  // vectors in the ambient module
};
Radical contravariant_radical(const Module& m);
/// V_F(lambda) = W / radical.
ModulePtr simple_quotient(ModulePtr w);
ModulePtr build_simple_module(std::shared_ptr<const ChevalleyBasis> cb, const IVec& lambda, const Ring& field);

Vec apply_divided_power(const Module& m, int root, int sign, int k, const Vec& v);

using Character = std::map<IVec, long long>;
Character character(const Module& m);
/// Character of a tensor product from the factors.
Character character_product(const Character& a, const Character& b);

ModulePtr tensor(ModulePtr a, ModulePtr b);

/// Smallest subspace containing the seeds and stable under the operators.
Subspace cyclic_closure(const Ring& field, std::size_t n, const std::vector<Vec>& seeds,
                        const std::vector<const SparseMatrix*>& generators);
/// All (x^pm_alpha)^{(k)}, k <= kmax.
std::vector<const SparseMatrix*> full_generator_set(const Module& m);

}  // namespace hyperloop
