#pragma once

#include "entcost/conic/program.hpp"

#include <string>
#include <vector>

namespace entcost::conic {

/// One real symmetric PSD block of the lowered problem. Coefficient entries
/// are stored upper-triangular (r <= c), grouped contiguously by parameter:
/// entries for touch[t] occupy [touch_start[t], touch_start[t+1]).
struct LoweredBlock {
    int size = 0;
    RMat f0;
    std::vector<int> ent_r, ent_c;
    std::vector<double> ent_v;
    std::vector<int> touch;
    std::vector<int> touch_start;
    double scale = 1.0;
    std::string name;

    /// <F_p, S> for symmetric S, where p = touch[t].
    double inner(int t, const RMat& s) const;
    /// S += w * F_{touch[t]}.
    void scatter(int t, double w, RMat& s) const;
    /// Dense F(y) = f0 + sum_i y_i F_i.
    RMat assemble(const RVec& y) const;
};

struct LoweredProblem {
    int m = 0;
    RVec b;                // internal objective: minimize b.y
    double obj_scale = 1.0;
    double obj_const = 0.0;
    double obj_sign = -1.0; // -1 for user Maximize, +1 for user Minimize
    std::vector<LoweredBlock> blocks;
    RMat eq_g; // k x m
    RVec eq_h;
    bool presolve_infeasible = false;

    double user_value_from_internal(double internal_obj) const {
        return obj_sign * obj_scale * internal_obj + obj_const;
    }
};

/// Lower a complex program to the real symmetric form. Throws on
/// non-Hermitian PSD blocks. Equality rows are rank-filtered; an
/// inconsistent equality system sets `presolve_infeasible`.
LoweredProblem lower(const ConicProgram& p);

/// Real symmetric embedding of a complex matrix, [[A, -B], [B, A]].
RMat embed_real(const CMat& x);
/// Inverse of embed_real on embedding-structured matrices: averages the
/// redundant copies, so it is exact on exact embeddings.
CMat unembed_complex(const RMat& s);

} // namespace entcost::conic
