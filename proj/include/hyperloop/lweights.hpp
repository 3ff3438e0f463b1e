#pragma once

#include <string>
#include <vector>

#include "hyperloop/loopaction.hpp"

namespace hyperloop {

/// Dominant l-weight: per index i a polynomial prod (1 - x u) stored as a multiset of points x
/// (reciprocal roots) in the declared field, canonically ordered.
struct LWeight {
    const Ring* field = nullptr;
    bool twisted = false;
    std::vector<std::vector<std::pair<Scalar, int>>> points;

    std::size_t size() const { return points.size(); }
    Poly poly(std::size_t i) const;
    int degree(std::size_t i) const;
    /// lambda(h_i) (or lambda(h_{i,0})) labels: the degrees.
    IVec degrees() const;
    bool is_one() const;
    std::string str() const;
};

bool operator==(const LWeight& a, const LWeight& b);
inline bool operator!=(const LWeight& a, const LWeight& b) { return !(a == b); }

LWeight lw_one(const Ring& field, int n, bool twisted);
LWeight lw_mul(const LWeight& a, const LWeight& b);
/// Adds (1 - x u)^mult at index i.
void lw_add_point(LWeight& w, int i, const Scalar& x, int mult = 1);
/// From polynomials with constant term 1; throws NotSplit when some factor has no root in the field.
LWeight lw_from_polys(const Ring& field, const std::vector<Poly>& polys, bool twisted);
/// Same field, points carried into a larger field.
LWeight lw_embed(const LWeight& w, const Ring& super);
/// x -> x^{-1} on every point (the plus/minus involution).
LWeight lw_invert(const LWeight& w);

/// omega_{i,a} (nontwisted).
LWeight fundamental(const RootSystem& rs, int i, const Scalar& a);
/// omega^sigma_{i,a}: (1 - a u) at i for A_{2n} or alpha_i short, (1 - a^m u) for alpha_i long.
LWeight fundamental(const FoldingDatum& fd, int i, const Scalar& a);
/// omega_{lambda,a} and omega^sigma_{lambda,a} (lambda as lambda(h_i), resp. lambda(h_{i,0}), labels).
LWeight evaluation_lweight(const RootSystem& rs, const IVec& lambda, const Scalar& a);
LWeight evaluation_lweight(const FoldingDatum& fd, const IVec& lambda0, const Scalar& a);

/// wt as Dynkin labels of g (nontwisted) or g_0 (twisted); the A_{2n} short node counts twice.
IVec weight_of(const LWeight& w, const FoldingDatum* fd = nullptr);

struct StandardBlock {
    Scalar a;
    std::vector<IVec> lambda;  // per eps, lambda(h_{i,0}) labels
};

struct StandardDecomposition {
    int m = 1;
    const Ring* field = nullptr;
    Scalar zeta;
    std::vector<StandardBlock> blocks;
};

/// Blocks by classes of a^m, sorted canonically on a^m; a_k is the canonical-least point of the block
/// (or the least m-th root of the key for blocks with long nodes only). Throws NoPrimitiveRoot when
/// the field lacks zeta_m and NotSplit when a needed m-th root is missing.
StandardDecomposition standard_decomposition(const LWeight& pi, const FoldingDatum& fd);
/// prod_k prod_eps omega^sigma_{lambda_{k,eps}, zeta^{m-eps} a_k}.
LWeight reassemble(const StandardDecomposition& sd, const FoldingDatum& fd);
/// mu_k = sum_eps sum_i e_{k,eps,i} sigma^eps(omega_{o(i)}) as g-weight labels.
std::vector<IVec> block_weights(const StandardDecomposition& sd, const FoldingDatum& fd);
/// omega = prod_k omega_{mu_k, a_k}.
LWeight omega_from_pi(const StandardDecomposition& sd, const FoldingDatum& fd);

/// Drinfeld polynomials of the highest vector of a twisted loop module. Raising operators are
/// tested on the window |r| <= r_window. Throws NotHighestLWeight.
LWeight extract_drinfeld(const TwistedLoopModule& tm, int r_window = 2, int dir = 1);
/// Same for a nontwisted loop module.
LWeight extract_drinfeld(const LoopModule& lm, int r_window = 2, int dir = 1);

/// Smallest k' (multiple of the field degree) with all polynomials split over F_{p^{k'}}; 0 if none up to the cap.
int splitting_degree(const std::vector<Poly>& polys, const Ring& field, int cap = 12);

/// Parses comma-separated tokens "i:(poly)" and "wi@a" (1-based i) into a dominant l-weight; fd selects twisted fundamentals, rs untwisted ones. A non-split polynomial throws
/// NotSplit whose message names the degree of a splitting extension.
LWeight parse_lweight(const Ring& field, const std::string& text, const FoldingDatum* fd, const RootSystem* rs = nullptr);


}  // namespace hyperloop
