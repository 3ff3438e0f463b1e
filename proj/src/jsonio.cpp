#include "hyperloop/jsonio.hpp"

namespace hyperloop {

namespace {

using nlohmann::json;

IVec one_based(const IVec& v) {
    IVec out = v;
    for (auto& x : out) ++x;
    return out;
}

}  // namespace

json root_system_json(const RootSystem& rs) {
    return {{"type", rs.name()},
            {"rank", rs.rank},
            {"cartan", rs.cartan},
            {"positive_roots", rs.pos},
            {"num_positive", rs.num_pos()},
            {"highest_root", rs.theta}};
}

json folding_json(const FoldingDatum& fd) {
    json roots = json::array();
    for (int a = 0; a < fd.base.num_pos(); ++a) {
        json r = {{"root", fd.base.pos[a]},
                  {"sigma", fd.base.pos[fd.perm_root[a]]},
                  {"orbit_size", fd.gamma[a]},
                  {"representative", fd.base.pos[fd.rep[a]]},
                  {"restriction", fd.restriction[a]}};
        if (fd.restricted_root[a] < 0) r["in_2Rs"] = true;
        roots.push_back(std::move(r));
    }
    json reps = json::array();
    for (int a : fd.O) reps.push_back(fd.base.pos[a]);
    json orbits = json::array();
    for (const auto& o : fd.node_orbits) orbits.push_back(one_based(o));
    json short_roots = json::array();
    for (int mu = 0; mu < fd.folded.num_pos(); ++mu)
        if (fd.folded_short[mu]) short_roots.push_back(fd.folded.pos[mu]);
    return {{"type", fd.base.name()},
            {"automorphism", one_based(fd.sigma.perm)},
            {"m", fd.m},
            {"a2n", fd.a2n},
            {"folded_type", fd.folded.name()},
            {"table_row", {{"m", fd.m}, {"g0", fd.folded.name()}, {"g1_weights", fd.g1_pattern}}},
            {"node_map", one_based(fd.o_map)},
            {"node_orbits", orbits},
            {"representatives", reps},
            {"short_roots", short_roots},
            {"eps_weights", fd.eps_weights},
            {"roots", roots},
            {"base", root_system_json(fd.base)},
            {"folded", root_system_json(fd.folded)}};
}

json module_json(const Module& m) {
    json ch = json::array();
    for (const auto& [w, mult] : character(m)) ch.push_back({{"weight", w}, {"mult", mult}});
    return {{"type", m.rs().name()},
            {"hw", m.highest_weight()},
            {"field", m.field().name()},
            {"kind", m.kind()},
            {"dim", m.dim()},
            {"character", ch}};
}

json lweight_json(const LWeight& w) {
    json polys = json::array();
    for (std::size_t i = 0; i < w.size(); ++i) polys.push_back(poly_str(w.poly(i)));
    return {{"field", w.field->name()}, {"twisted", w.twisted}, {"text", w.str()}, {"polys", polys}};
}

json decomposition_json(const LWeight& pi, const FoldingDatum& fd) {
    StandardDecomposition sd = standard_decomposition(pi, fd);
    json blocks = json::array();
    auto mus = block_weights(sd, fd);
    for (std::size_t k = 0; k < sd.blocks.size(); ++k)
        blocks.push_back({{"a", sd.blocks[k].a.str()}, {"lambda", sd.blocks[k].lambda}, {"mu", mus[k]}});
    return {{"folding", fd.base.name() + "->" + fd.folded.name()},
            {"field", sd.field->name()},
            {"m", sd.m},
            {"pi", lweight_json(pi)},
            {"blocks", blocks},
            {"omega", lweight_json(omega_from_pi(sd, fd))}};
}

}  // namespace hyperloop
