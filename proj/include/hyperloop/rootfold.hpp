#pragma once

#include <map>
#include <string>
#include <vector>

#include "hyperloop/coeffring.hpp"

namespace hyperloop {

using IVec = std::vector<int>;

/// Finite root system with Bourbaki numbering. Cartan convention a_ij = alpha_j(h_i).
/// Weights are integer Dynkin labels (lambda(h_i))_i; roots are coordinates over simple roots.
struct RootSystem {
    char series = 'A';
    int rank = 0;
    std::vector<IVec> cartan;
    IVec d;                   // (alpha_i, alpha_i) / 2 with short roots 1
    std::vector<IVec> pos;    // positive roots: height, then coordinates descending
    IVec theta;
    std::map<IVec, int> index;

    std::string name() const { return std::string(1, series) + std::to_string(rank); }
    int num_pos() const { return static_cast<int>(pos.size()); }
    int find(const IVec& coords) const;  // -1 when absent
    int height(int root) const;
    /// alpha(h_i) for alpha given by coordinates.
    int pair_coroot(const IVec& coords, int i) const;
    /// Dynkin labels of a root lattice element.
    IVec labels(const IVec& coords) const;
    /// h_alpha = sum_j coroot[j] h_j.
    IVec coroot(int root) const;
    /// lambda(h_alpha) for a weight given by labels.
    int weight_on_coroot(const IVec& labels, int root) const;
    int root_length2(int root) const;  // (alpha, alpha) / 2 in units of short
    bool is_long(int root) const;
    bool is_simply_laced() const;
    /// Fundamental weight omega_i in simple-root coordinates.
    std::vector<Rational> fundamental_weight(int i) const;
    /// Weyl dimension formula.
    Integer weyl_dimension(const IVec& labels) const;
    /// Simple reflection of a weight.
    IVec reflect(const IVec& labels, int i) const;
};

RootSystem build_root_system(char series, int rank);
/// Sign function on the root lattice of a simply-laced system: (-1)^{sum a_i b_j s_ij}.
int epsilon_sign(const RootSystem& rs, const IVec& a, const IVec& b);
/// Signs s_alpha (simply-laced) such that x_alpha = s_alpha E_alpha, with E the sign-function
/// basis, satisfies sigma(x_alpha) = x_{sigma alpha} off the sigma-fixed roots. Fixed roots get
/// s = 1 and their eigenvalue is returned in `fixed_eigen` (+1 or -1).
IVec sigma_adapted_signs(const RootSystem& rs, const IVec& perm, IVec* fixed_eigen = nullptr);
/// "A3", "G2", ...
RootSystem build_root_system(const std::string& name);

std::vector<IVec> weyl_orbit(const RootSystem& rs, const IVec& labels);
/// Dominant representative of the Weyl orbit.
IVec dominant_conjugate(const RootSystem& rs, IVec labels);

struct DiagramAutomorphism {
    IVec perm;  // 0-based
    int order = 1;
};

/// Validates a permutation; throws NotAnAutomorphism.
DiagramAutomorphism make_automorphism(const RootSystem& rs, const IVec& perm);
/// "id", "flip", "rot3", or an explicit 1-based list "1,3,2".
DiagramAutomorphism parse_automorphism(const RootSystem& rs, const std::string& spec);

struct FoldingDatum {
    RootSystem base;
    DiagramAutomorphism sigma;
    int m = 1;
    bool a2n = false;
    RootSystem folded;
    IVec o_map;                 // I_0 -> I
    std::vector<IVec> node_orbits;  // per I_0 node, its sigma-orbit in I
    IVec perm_root;             // sigma on positive roots
    IVec gamma;                 // orbit sizes
    IVec rep;                   // chosen representative in O for each root
    IVec basis_signs;           // sigma_adapted_signs for a simply-laced base
    std::vector<int> O;         // sorted representatives
    /// Restriction of each positive root: coordinates over I_0 (may lie in 2R_s for A_{2n}).
    std::vector<IVec> restriction;
    IVec restricted_root;       // index in folded.pos, or -1 when in 2R_s
    IVec restricted_half;       // for 2R_s restrictions: index of mu with restriction = 2 mu, else -1
    /// Nonzero positive weights of g_eps as (folded coordinates), for each eps.
    std::vector<std::vector<IVec>> eps_weights;
    std::string g1_pattern;     // derived classification of wt(g_1)\{0}

    int sigma_root(int root, int j = 1) const;
    bool is_fixed(int root) const { return gamma[root] == 1; }
    /// x_{alpha,eps} nonzero?
    bool grade_nonzero(int root, int eps) const;
    /// Representative in O restricting to the folded positive root mu (or 2mu if doubled).
    int rep_of_folded(int mu, bool doubled = false) const;
    std::vector<bool> folded_short;  // R_s membership (for A_2 the single root is short)
    /// lambda(h_{i,0}) labels -> extended g-weight labels (supported on o(I_0)).
    IVec extend_weight(const IVec& labels0) const;
    /// Restriction of a g-weight to h_0, as lambda(h_{i,0}) labels.
    IVec restrict_weight(const IVec& labels) const;
    /// True if the I_0 node is the A_{2n} short node.
    bool a2n_short_node(int i) const;
    /// Positive roots of g_0 as restricted coordinates.
    const IVec& folded_coords(int mu) const { return folded.pos[mu]; }
};

FoldingDatum fold(const RootSystem& rs, const DiagramAutomorphism& sigma);
int orbit_size(const FoldingDatum& fd, int root);

}  // namespace hyperloop
