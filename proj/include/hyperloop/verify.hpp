#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hyperloop/lweights.hpp"

namespace hyperloop {

struct Assertion {
    std::string name;
    std::string status;  // "pass", "fail", "skipped: ..."
    nlohmann::json witness;
};

struct VerificationReport {
    std::string suite;
    nlohmann::json case_desc;
    std::vector<Assertion> assertions;
    double seconds = 0;

    void add(const std::string& name, bool ok, nlohmann::json witness = nullptr);
    void skip(const std::string& name, const std::string& reason);
    void merge(const VerificationReport& other);
    bool passed() const;
    std::size_t count(const std::string& status_prefix) const;
    /// {suite, case, assertions, timing}; timing is null unless requested.
    nlohmann::json to_json(bool with_timing = false) const;
};

/// (x+y)^{(n)} in U(H), [x,y] = z central, against the normal-ordering oracle, n = 1..n_max.
VerificationReport check_heisenberg_identity(int n_max);
/// Multinomial divided-power identity and the binomial addition identity on commuting diagonal
/// operators over the field, n <= n_max.
VerificationReport check_divided_sums(int n_max, const Ring& field, std::uint64_t seed = 1);

/// Twisted-basis algebra: sigma is an automorphism, the basis relations (sigma acting on elements, and the
/// reconstruction of x_alpha, h_alpha with their A_{2n} factors), the doubled-root relation with s = 1, grading and the full
/// Jacobi sweep over the twisted basis.
VerificationReport check_twisted_basis(const FoldingDatum& fd);
/// The three bracket formulas for twisted basis elements, exhaustively.
VerificationReport check_twisted_brackets(const FoldingDatum& fd);

/// Garland-type identities on the highest vector of a nontwisted loop module:
/// all positive roots, s in [0, s_max], both directions, 0 <= l <= k <= k_max.
VerificationReport check_garland_nontwisted(const LoopModule& lm, int s_max = 1, int k_max = 3);
/// Twisted versions (parts a, b, c(i)-(iv)) on the highest vector of a twisted loop module.
VerificationReport check_garland_twisted(const TwistedLoopModule& tm, int s_max = 1, int k_max = 3);

/// Default case families; foldings with base rank above rank_max are reported as skipped.
VerificationReport run_garland_suite(int rank_max, const std::vector<const Ring*>& fields);

/// Relations (a)-(d) of the highest-l-weight proposition on the highest vector.
VerificationReport check_hw_relations(const TwistedLoopModule& tm, int s_window = 2);

struct RestrictionOptions {
    int r_window_cap = 32;
    bool check_every_vector = true;
};

/// Standard decomposition -> omega -> tensor of simple evaluation modules -> restriction; checks
/// simplicity (window-stabilized cyclicity), Drinfeld polynomial and the relations on hv.
VerificationReport check_restriction_theorem(const LWeight& pi, const FoldingDatum& fd,
                                             const RestrictionOptions& opt = {});

/// All products of at most `height` twisted fundamentals with points in `points`.
std::vector<LWeight> lweight_grid(const FoldingDatum& fd, const Ring& field, const std::vector<long long>& points,
                                  int height);

/// Subspace generated by v under the twisted generating set on the window |r| <= r_window.
std::size_t twisted_closure_dim(const TwistedLoopModule& tm, const Vec& v, int r_window);

}  // namespace hyperloop
