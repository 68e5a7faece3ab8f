#pragma once

#include "entcost/qcore/types.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace entcost::conic {

enum class VarKind { Hermitian, ComplexGeneral };

struct VarRef {
    int id = -1;
    int rows = 0;
    int cols = 0; // rows == cols for Hermitian variables
    VarKind kind = VarKind::Hermitian;
    int param_offset = 0;
    int param_count = 0;
    std::vector<int> layout; // subsystem dims, product == rows (square vars)
};

/// Real-affine functional of the scalar parameters behind the matrix variables.
struct ScalarExpr {
    double constant = 0.0;
    std::vector<std::pair<int, double>> lin; // (param index, coefficient)

    ScalarExpr() = default;
    explicit ScalarExpr(double c) : constant(c) {}

    ScalarExpr& operator+=(const ScalarExpr& o);
    ScalarExpr& operator-=(const ScalarExpr& o);
    ScalarExpr& operator*=(double s);
    friend ScalarExpr operator+(ScalarExpr a, const ScalarExpr& b) { return a += b; }
    friend ScalarExpr operator-(ScalarExpr a, const ScalarExpr& b) { return a -= b; }
    friend ScalarExpr operator*(double s, ScalarExpr a) { return a *= s; }
    void compress();
};

/// One occurrence of a variable inside an affine matrix expression, in the
/// normal form  coeff * dagger?( V^{T_mask} )  placed at (row_off, col_off).
struct MatTerm {
    VarRef var;
    uint32_t pt_mask = 0;
    bool dagger = false;
    double coeff = 1.0;
    int row_off = 0;
    int col_off = 0;
};

/// Affine complex matrix expression: constant + variable terms + scalar-weighted
/// constant matrices (for bounds like tr(Q rho) * I inside a block).
struct MatExpr {
    int rows = 0;
    int cols = 0; // rows != cols only for intermediate rectangular expressions
    std::vector<int> layout; // ambient subsystem dims (square expressions)
    CMat constant;
    std::vector<MatTerm> terms;
    std::vector<std::pair<ScalarExpr, CMat>> scalar_terms;

    static MatExpr constant_of(CMat c, std::vector<int> layout = {});

    MatExpr& operator+=(const MatExpr& o);
    MatExpr& operator-=(const MatExpr& o);
    MatExpr& operator*=(double s);
    friend MatExpr operator+(MatExpr a, const MatExpr& b) { return a += b; }
    friend MatExpr operator-(MatExpr a, const MatExpr& b) { return a -= b; }
    friend MatExpr operator*(double s, MatExpr a) { return a *= s; }
    MatExpr operator-() const;
};

/// Partial transpose over the subsystems of `e.layout` selected by `mask`.
MatExpr partial_transpose(const MatExpr& e, uint32_t mask);
MatExpr dagger(const MatExpr& e);

/// [[A, X], [X^dag, D]] with the mirror of X inserted automatically.
MatExpr block_2x2(const MatExpr& a, const MatExpr& x, const MatExpr& d);

/// Re tr(C^dag E) as a functional of the parameters.
ScalarExpr re_inner(const CMat& c, const MatExpr& e);
ScalarExpr trace_re(const MatExpr& e);
/// s * M as a matrix expression.
MatExpr scaled_matrix(const ScalarExpr& s, const CMat& m, std::vector<int> layout = {});

/// Partial transpose of a plain matrix over an explicit dims list.
CMat apply_partial_transpose(const CMat& m, const std::vector<int>& dims, uint32_t mask);

/// Sparse parameter basis: writes at most two entries, returns their count.
struct BasisEntry {
    int r, c;
    Cplx v;
};
int variable_basis(const VarRef& v, int local, BasisEntry out[2]);

enum class Sense { Maximize, Minimize };

struct PsdConstraint {
    MatExpr expr;
    std::string name;
};

class ConicProgram {
public:
    /// `subsystem_dims` is required when the variable gets partially transposed.
    VarRef add_hermitian(const std::string& name, int dim, std::vector<int> subsystem_dims = {});
    VarRef add_complex(const std::string& name, int rows, int cols = 0);

    MatExpr var(const VarRef& v) const;

    void add_psd(MatExpr e, const std::string& name = "");
    void add_eq_zero(const MatExpr& e);
    void add_eq_zero(const ScalarExpr& s);
    /// s <= ub, lowered as a 1x1 PSD block.
    void add_scalar_le(const ScalarExpr& s, double ub);

    /// ||X||_1 <= bound via X = P - N, tr(P + N) <= bound, P,N >= 0.
    std::pair<VarRef, VarRef> trace_norm_constraint(const MatExpr& x, const ScalarExpr& bound);
    std::pair<VarRef, VarRef> trace_norm_constraint(const MatExpr& x, double bound);

    void maximize(ScalarExpr s);
    void minimize(ScalarExpr s);

    int param_count() const { return n_params_; }
    const std::vector<VarRef>& variables() const { return vars_; }
    const std::vector<std::string>& variable_names() const { return var_names_; }
    const std::vector<PsdConstraint>& psd_constraints() const { return psd_; }
    const std::vector<MatExpr>& matrix_equalities() const { return mat_eq_; }
    const std::vector<ScalarExpr>& scalar_equalities() const { return scalar_eq_; }
    const ScalarExpr& objective() const { return objective_; }
    Sense sense() const { return sense_; }

    static double eval(const ScalarExpr& s, const RVec& params);
    static CMat eval(const MatExpr& e, const RVec& params);
    static CMat value_of(const VarRef& v, const RVec& params);

private:
    int n_params_ = 0;
    std::vector<VarRef> vars_;
    std::vector<std::string> var_names_;
    std::vector<PsdConstraint> psd_;
    std::vector<MatExpr> mat_eq_;
    std::vector<ScalarExpr> scalar_eq_;
    ScalarExpr objective_;
    Sense sense_ = Sense::Maximize;
};

} // namespace entcost::conic
