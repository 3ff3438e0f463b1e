#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hyperloop/coeffring.hpp"
#include "hyperloop/linalg.hpp"
#include "hyperloop/rootfold.hpp"

namespace hyperloop {

/// Sparse element of g over a ring, indexed by Chevalley symbols:
/// [0, P) x^+_alpha, [P, 2P) x^-_alpha, [2P, 2P + n) h_i.
using LieElem = std::map<int, Scalar>;

void lie_add(LieElem& a, const LieElem& b, const Scalar& c);
LieElem lie_scaled(const LieElem& a, const Scalar& c);
bool lie_is_zero(const LieElem& a);
bool lie_equal(const LieElem& a, const LieElem& b);

class ChevalleyBasis {
public:
    /// For simply-laced types the basis is adapted to the diagram automorphism `perm`
    /// (sigma(x_alpha) = x_{sigma alpha}); other types are obtained by folding.
    explicit ChevalleyBasis(const RootSystem& rs, const IVec& perm = {});

    const RootSystem& rs() const { return rs_; }
    const IVec& perm() const { return perm_; }
    const IVec& signs() const { return signs_; }
    int num_pos() const { return P_; }
    int dim() const { return 2 * P_ + rs_.rank; }
    int xp(int a) const { return a; }
    int xm(int a) const { return P_ + a; }
    int h(int i) const { return 2 * P_ + i; }
    std::string symbol(int idx) const;

    /// Signed root of a root-vector symbol: root index and sign.
    bool is_root_vector(int idx) const { return idx < 2 * P_; }
    int root_of(int idx) const { return idx % P_; }
    int sign_of(int idx) const { return idx < P_ ? 1 : -1; }
    int symbol_of(int root, int sign) const { return sign > 0 ? root : P_ + root; }

    /// N_{gamma,delta} for signed roots given as symbols; 0 if gamma + delta is not a root.
    int structure_constant(int g, int d) const;
    /// [e_a, e_b] as integer combination of symbols.
    std::vector<std::pair<int, int>> bracket_basis(int a, int b) const;
    LieElem bracket(const LieElem& a, const LieElem& b, const Ring& r) const;
    /// Basis element as LieElem.
    LieElem unit(int idx, const Ring& r) const;
    /// Weight (root coordinates) of a symbol; zero for h.
    IVec weight(int idx) const;

private:
    void build_simply_laced();
    void build_by_folding();
    int signed_index(const IVec& coords) const;  // symbol for a signed root, -1 if none

    RootSystem rs_;
    IVec perm_;
    IVec signs_;
    int P_;
    // N_[g][d] for symbols g, d < 2P with target symbol tgt_[g][d]
    std::vector<std::vector<int>> N_;
    std::vector<std::vector<int>> tgt_;
};

/// Cached per (type, automorphism); an empty perm means the identity.
std::shared_ptr<const ChevalleyBasis> chevalley_basis(const RootSystem& rs, const IVec& perm = {});

/// Element of the twisted basis C^sigma(O).
struct TwistedElem {
    enum class Kind { XPlus, XMinus, H } kind;
    int eps = 0;
    int root = -1;      // representative in O (x kinds)
    int node = -1;      // I_0 index (h kind)
    IVec mu;            // restricted weight coordinates (x kinds)
    LieElem value;      // expansion over Chevalley symbols
    std::string label;
};

class TwistedBasis {
public:
    explicit TwistedBasis(const FoldingDatum& fd);

    const FoldingDatum& fd() const { return fd_; }
    const ChevalleyBasis& cb() const { return *cb_; }
    const Ring& ring() const { return *ring_; }
    const Scalar& zeta() const { return zeta_; }

    /// x^{+-}_{alpha,eps} for any positive root alpha.
    LieElem x_alpha(int root, int eps, int sign) const;
    /// hbar_{alpha,eps}.
    LieElem hbar(int root, int eps) const;
    /// h_{i,eps} for i in I_0.
    LieElem h_node(int i, int eps) const;
    /// h_{mu,eps} = sum_j zeta^{j eps} h_{sigma^j alpha} for alpha in O restricting to mu
    /// (equals h_{i,eps} on simple roots, including the 1/2 in the A_{2n} short case).
    LieElem h_mu(int rep, int eps) const;
    /// x^{+-}_{mu,eps} with mu a folded positive root (doubled selects 2 mu in 2R_s).
    LieElem x_mu(int mu, bool doubled, int eps, int sign) const;
    /// Normalizing factor c with (1/Gamma) sum_eps x_{alpha,eps} = c x_alpha.
    Scalar reconstruction_factor(int root) const;
    Scalar hbar_reconstruction_factor(int root) const;

    const std::vector<TwistedElem>& basis() const { return basis_; }
    /// Coordinates of an element of g over the twisted basis.
    std::map<int, Scalar> decompose(const LieElem& x) const;
    LieElem compose(const std::map<int, Scalar>& c) const;
    /// Bracket of two twisted basis elements, expanded over the twisted basis.
    std::map<int, Scalar> bracket(int i, int j) const;
    /// Index of x^{+-}_{mu,eps} (by representative root) or -1.
    int index_x(int rep, int eps, int sign) const;
    int index_h(int node, int eps) const;

private:
    void add_elem(TwistedElem e);

    std::shared_ptr<const ChevalleyBasis> cb_;
    FoldingDatum fd_;
    const Ring* ring_;
    Scalar zeta_;
    std::vector<TwistedElem> basis_;
    std::map<std::tuple<int, int, int>, int> x_index_;
    std::map<std::pair<int, int>, int> h_index_;
    // per group of Chevalley symbols: member symbols, basis elements, inverse change of basis
    struct Group {
        std::vector<int> symbols;
        std::vector<int> elems;
        Mat inv;  // coords over elems = inv * coords over symbols
    };
    std::vector<Group> groups_;
    std::vector<int> group_of_symbol_;
};

struct Sl2Triple {
    LieElem e, f, h;
    /// h = h_scale * h_{mu,0} (h_scale = 2 in the A_{2n} short case)
    Scalar h_scale;
    std::string description;
};

/// e = x^+_{mu,eps}, f = x^-_{mu,-eps}; throws NotSl2 when the pair does not close.
Sl2Triple sl2_triple(const TwistedBasis& tb, int mu, bool doubled, int eps);

}  // namespace hyperloop
