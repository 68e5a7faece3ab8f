#include "entcost/conic/dump.hpp"

#include <json.hpp>

namespace entcost::conic {

std::string dump_json(const LoweredProblem& lp) {
    nlohmann::json j;
    j["form"] = "min b.y  s.t.  f0_k + sum_i y_i F_{k,i} >= 0 (psd), G y = h";
    j["num_params"] = lp.m;
    j["objective"] = {{"b", std::vector<double>(lp.b.data(), lp.b.data() + lp.b.size())},
                      {"scale", lp.obj_scale},
                      {"sign", lp.obj_sign},
                      {"constant", lp.obj_const}};
    nlohmann::json cones = nlohmann::json::array();
    for (const auto& blk : lp.blocks) {
        nlohmann::json cb;
        cb["size"] = blk.size;
        cb["name"] = blk.name;
        cb["scale"] = blk.scale;
        nlohmann::json f0 = nlohmann::json::array();
        for (int r = 0; r < blk.size; ++r)
            for (int c = r; c < blk.size; ++c)
                if (blk.f0(r, c) != 0.0) f0.push_back({r, c, blk.f0(r, c)});
        cb["f0"] = f0;
        nlohmann::json coeffs = nlohmann::json::array();
        for (size_t t = 0; t < blk.touch.size(); ++t) {
            nlohmann::json entries = nlohmann::json::array();
            for (int e = blk.touch_start[t]; e < blk.touch_start[t + 1]; ++e)
                entries.push_back({blk.ent_r[e], blk.ent_c[e], blk.ent_v[e]});
            coeffs.push_back({{"param", blk.touch[t]}, {"entries", entries}});
        }
        cb["coefficients"] = coeffs;
        cones.push_back(cb);
    }
    j["cones"] = cones;
    if (lp.eq_g.rows() > 0) {
        nlohmann::json eq = nlohmann::json::array();
        for (int i = 0; i < lp.eq_g.rows(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (int c = 0; c < lp.eq_g.cols(); ++c)
                if (lp.eq_g(i, c) != 0.0) row.push_back({c, lp.eq_g(i, c)});
            eq.push_back({{"coeffs", row}, {"rhs", lp.eq_h(i)}});
        }
        j["equalities"] = eq;
    }
    return j.dump(2);
}

} // namespace entcost::conic
