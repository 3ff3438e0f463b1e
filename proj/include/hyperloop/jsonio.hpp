#pragma once

#include <json.hpp>

#include "hyperloop/lweights.hpp"

namespace hyperloop {

nlohmann::json root_system_json(const RootSystem& rs);
/// Folding datum: table row, node and root orbit maps, representatives, restrictions.
nlohmann::json folding_json(const FoldingDatum& fd);
/// Dimension and character of a module; the Weyl/simple split is filled in by the caller.
nlohmann::json module_json(const Module& m);
nlohmann::json lweight_json(const LWeight& w);
/// Standard decomposition of pi with the substituted l-weight omega and the block weights.
nlohmann::json decomposition_json(const LWeight& pi, const FoldingDatum& fd);

}  // namespace hyperloop
