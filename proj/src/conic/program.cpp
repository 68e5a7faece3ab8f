#include "entcost/conic/program.hpp"

#include <algorithm>
#include <stdexcept>

namespace entcost::conic {

ScalarExpr& ScalarExpr::operator+=(const ScalarExpr& o) {
    constant += o.constant;
    lin.insert(lin.end(), o.lin.begin(), o.lin.end());
    return *this;
}

ScalarExpr& ScalarExpr::operator-=(const ScalarExpr& o) {
    constant -= o.constant;
    for (const auto& [p, c] : o.lin) lin.emplace_back(p, -c);
    return *this;
}

ScalarExpr& ScalarExpr::operator*=(double s) {
    constant *= s;
    for (auto& [p, c] : lin) c *= s;
    return *this;
}

void ScalarExpr::compress() {
    std::sort(lin.begin(), lin.end());
    std::vector<std::pair<int, double>> out;
    for (const auto& [p, c] : lin) {
        if (!out.empty() && out.back().first == p)
            out.back().second += c;
        else
            out.emplace_back(p, c);
    }
    std::erase_if(out, [](const auto& pc) { return pc.second == 0.0; });
    lin = std::move(out);
}

CMat apply_partial_transpose(const CMat& m, const std::vector<int>& dims, uint32_t mask) {
    const int k = static_cast<int>(dims.size());
    int n = 1;
    for (int v : dims) n *= v;
    if (m.rows() != n || m.cols() != n)
        throw std::invalid_argument("apply_partial_transpose: dimension mismatch");
    std::vector<int> ri(k), ci(k);
    auto unflat = [&](int idx, int* out) {
        for (int s = k - 1; s >= 0; --s) {
            out[s] = idx % dims[s];
            idx /= dims[s];
        }
    };
    auto flat = [&](const int* d) {
        int idx = 0;
        for (int s = 0; s < k; ++s) idx = idx * dims[s] + d[s];
        return idx;
    };
    CMat outm(n, n);
    std::vector<int> rr(k), cc(k);
    for (int i = 0; i < n; ++i) {
        unflat(i, ri.data());
        for (int j = 0; j < n; ++j) {
            unflat(j, ci.data());
            rr = ri;
            cc = ci;
            for (int s = 0; s < k; ++s)
                if (mask & (1u << s)) std::swap(rr[s], cc[s]);
            outm(flat(rr.data()), flat(cc.data())) = m(i, j);
        }
    }
    return outm;
}

MatExpr MatExpr::constant_of(CMat c, std::vector<int> layout) {
    MatExpr e;
    e.rows = static_cast<int>(c.rows());
    e.cols = static_cast<int>(c.cols());
    if (layout.empty()) layout = {e.rows};
    e.layout = std::move(layout);
    e.constant = std::move(c);
    return e;
}

MatExpr& MatExpr::operator+=(const MatExpr& o) {
    if (rows == 0) {
        *this = o;
        return *this;
    }
    if (o.rows != rows || o.cols != cols)
        throw std::invalid_argument("expr: dimension mismatch in +");
    constant += o.constant;
    terms.insert(terms.end(), o.terms.begin(), o.terms.end());
    scalar_terms.insert(scalar_terms.end(), o.scalar_terms.begin(), o.scalar_terms.end());
    return *this;
}

MatExpr& MatExpr::operator-=(const MatExpr& o) { return *this += (-o); }

MatExpr& MatExpr::operator*=(double s) {
    constant *= s;
    for (auto& t : terms) t.coeff *= s;
    for (auto& [se, m] : scalar_terms) m *= s;
    return *this;
}

MatExpr MatExpr::operator-() const {
    MatExpr e = *this;
    e *= -1.0;
    return e;
}

MatExpr partial_transpose(const MatExpr& e, uint32_t mask) {
    if (e.rows != e.cols)
        throw std::invalid_argument("partial_transpose: expression must be square");
    MatExpr out = e;
    out.constant = apply_partial_transpose(e.constant, e.layout, mask);
    for (auto& t : out.terms) {
        if (t.row_off != 0 || t.col_off != 0)
            throw std::invalid_argument("partial_transpose: expression already placed");
        if (t.var.layout != e.layout)
            throw std::invalid_argument(
                "partial_transpose: variable layout differs from expression layout");
        t.pt_mask ^= mask;
    }
    for (auto& [s, m] : out.scalar_terms) m = apply_partial_transpose(m, e.layout, mask);
    return out;
}

MatExpr dagger(const MatExpr& e) {
    MatExpr out = e;
    std::swap(out.rows, out.cols);
    out.constant = e.constant.adjoint();
    for (auto& t : out.terms) {
        if (t.row_off != 0 || t.col_off != 0)
            throw std::invalid_argument("dagger: expression already placed");
        t.dagger = !t.dagger;
    }
    for (auto& [s, m] : out.scalar_terms) m = m.adjoint().eval();
    return out;
}

MatExpr block_2x2(const MatExpr& a, const MatExpr& x, const MatExpr& d) {
    if (a.rows != a.cols || d.rows != d.cols)
        throw std::invalid_argument("block_2x2: diagonal sub-blocks must be square");
    if (x.rows != a.rows || x.cols != d.rows)
        throw std::invalid_argument("block_2x2: off-diagonal shape mismatch");
    const int na = a.rows, nd = d.rows, n = na + nd;
    MatExpr out;
    out.rows = out.cols = n;
    out.layout = {n};
    out.constant = CMat::Zero(n, n);
    out.constant.topLeftCorner(na, na) = a.constant;
    out.constant.bottomRightCorner(nd, nd) = d.constant;
    out.constant.topRightCorner(na, nd) = x.constant;
    out.constant.bottomLeftCorner(nd, na) = x.constant.adjoint();

    auto place = [&out, n](const MatExpr& src, int r0, int c0, bool with_mirror) {
        for (MatTerm t : src.terms) {
            if (t.row_off != 0 || t.col_off != 0)
                throw std::invalid_argument("block_2x2: nested placement");
            t.row_off = r0;
            t.col_off = c0;
            out.terms.push_back(t);
            if (with_mirror) {
                MatTerm m = t;
                m.row_off = c0;
                m.col_off = r0;
                m.dagger = !m.dagger;
                out.terms.push_back(m);
            }
        }
        for (const auto& [s, mat] : src.scalar_terms) {
            CMat big = CMat::Zero(n, n);
            big.block(r0, c0, src.rows, src.cols) = mat;
            if (with_mirror) big.block(c0, r0, src.cols, src.rows) = mat.adjoint();
            out.scalar_terms.emplace_back(s, big);
        }
    };
    place(a, 0, 0, false);
    place(d, na, na, false);
    place(x, 0, na, true);
    return out;
}

namespace {

int hermitian_param_count(int n) { return n * n; }

} // namespace

int variable_basis(const VarRef& v, int local, BasisEntry out[2]) {
    const int n = v.rows;
    if (v.kind == VarKind::Hermitian) {
        if (local < n) {
            out[0] = {local, local, Cplx(1, 0)};
            return 1;
        }
        int k = local - n;
        int pair = k / 2;
        bool imag = k % 2;
        int i = 0, j = 1, left = pair;
        for (i = 0; i < n; ++i) {
            int row_count = n - 1 - i;
            if (left < row_count) {
                j = i + 1 + left;
                break;
            }
            left -= row_count;
        }
        if (!imag) {
            out[0] = {i, j, Cplx(1, 0)};
            out[1] = {j, i, Cplx(1, 0)};
        } else {
            out[0] = {i, j, Cplx(0, 1)};
            out[1] = {j, i, Cplx(0, -1)};
        }
        return 2;
    }
    int cell = local / 2;
    bool imag = local % 2;
    out[0] = {cell / v.cols, cell % v.cols, imag ? Cplx(0, 1) : Cplx(1, 0)};
    return 1;
}

namespace {

// Entries of coeff * dagger?(H^{T_mask}) for one parameter basis H.
int term_basis_entries(const MatTerm& t, int local, BasisEntry out[2]) {
    int cnt = variable_basis(t.var, local, out);
    for (int e = 0; e < cnt; ++e) {
        if (t.pt_mask) {
            // position remap of a single entry under partial transpose
            const auto& dims = t.var.layout;
            const int k = static_cast<int>(dims.size());
            std::vector<int> ri(k), ci(k);
            int idx = out[e].r;
            for (int s = k - 1; s >= 0; --s) {
                ri[s] = idx % dims[s];
                idx /= dims[s];
            }
            idx = out[e].c;
            for (int s = k - 1; s >= 0; --s) {
                ci[s] = idx % dims[s];
                idx /= dims[s];
            }
            for (int s = 0; s < k; ++s)
                if (t.pt_mask & (1u << s)) std::swap(ri[s], ci[s]);
            int rr = 0, cc = 0;
            for (int s = 0; s < k; ++s) {
                rr = rr * dims[s] + ri[s];
                cc = cc * dims[s] + ci[s];
            }
            out[e].r = rr;
            out[e].c = cc;
        }
        if (t.dagger) {
            std::swap(out[e].r, out[e].c);
            out[e].v = std::conj(out[e].v);
        }
        out[e].v *= t.coeff;
    }
    return cnt;
}

} // namespace

ScalarExpr re_inner(const CMat& c, const MatExpr& e) {
    if (c.rows() != e.rows || c.cols() != e.cols)
        throw std::invalid_argument("re_inner: dimension mismatch");
    ScalarExpr s;
    s.constant = (c.adjoint() * e.constant).trace().real();
    for (const auto& [se, m] : e.scalar_terms) {
        double w = (c.adjoint() * m).trace().real();
        ScalarExpr t = se;
        t *= w;
        s += t;
    }
    BasisEntry be[2];
    for (const auto& t : e.terms) {
        for (int local = 0; local < t.var.param_count; ++local) {
            int cnt = term_basis_entries(t, local, be);
            double coeff = 0.0;
            for (int k = 0; k < cnt; ++k) {
                // tr(C^dag K) over sparse K placed at the term offset
                int r = be[k].r + t.row_off;
                int col = be[k].c + t.col_off;
                coeff += (std::conj(c(r, col)) * be[k].v).real();
            }
            if (coeff != 0.0) s.lin.emplace_back(t.var.param_offset + local, coeff);
        }
    }
    s.compress();
    return s;
}

ScalarExpr trace_re(const MatExpr& e) {
    if (e.rows != e.cols) throw std::invalid_argument("trace_re: expression must be square");
    return re_inner(CMat::Identity(e.rows, e.rows), e);
}

MatExpr scaled_matrix(const ScalarExpr& s, const CMat& m, std::vector<int> layout) {
    MatExpr e;
    e.rows = static_cast<int>(m.rows());
    e.cols = static_cast<int>(m.cols());
    if (layout.empty()) layout = {e.rows};
    e.layout = std::move(layout);
    e.constant = CMat::Zero(e.rows, e.cols);
    e.scalar_terms.emplace_back(s, m);
    return e;
}

VarRef ConicProgram::add_hermitian(const std::string& name, int dim,
                                   std::vector<int> subsystem_dims) {
    VarRef v;
    v.id = static_cast<int>(vars_.size());
    v.rows = v.cols = dim;
    v.kind = VarKind::Hermitian;
    v.param_offset = n_params_;
    v.param_count = hermitian_param_count(dim);
    if (subsystem_dims.empty()) subsystem_dims = {dim};
    int prod = 1;
    for (int d : subsystem_dims) prod *= d;
    if (prod != dim) throw std::invalid_argument("variable layout does not match dimension");
    v.layout = std::move(subsystem_dims);
    n_params_ += v.param_count;
    vars_.push_back(v);
    var_names_.push_back(name);
    return v;
}

VarRef ConicProgram::add_complex(const std::string& name, int rows, int cols) {
    if (cols == 0) cols = rows;
    VarRef v;
    v.id = static_cast<int>(vars_.size());
    v.rows = rows;
    v.cols = cols;
    v.kind = VarKind::ComplexGeneral;
    v.param_offset = n_params_;
    v.param_count = 2 * rows * cols;
    v.layout = {rows};
    n_params_ += v.param_count;
    vars_.push_back(v);
    var_names_.push_back(name);
    return v;
}

MatExpr ConicProgram::var(const VarRef& v) const {
    MatExpr e;
    e.rows = v.rows;
    e.cols = v.cols;
    e.layout = v.layout;
    e.constant = CMat::Zero(v.rows, v.cols);
    MatTerm t;
    t.var = v;
    e.terms.push_back(t);
    return e;
}

void ConicProgram::add_psd(MatExpr e, const std::string& name) {
    psd_.push_back({std::move(e), name});
}

void ConicProgram::add_eq_zero(const MatExpr& e) { mat_eq_.push_back(e); }

void ConicProgram::add_eq_zero(const ScalarExpr& s) { scalar_eq_.push_back(s); }

void ConicProgram::add_scalar_le(const ScalarExpr& s, double ub) {
    ScalarExpr slack(ub);
    slack -= s;
    add_psd(scaled_matrix(slack, CMat::Identity(1, 1)), "scalar_le");
}

std::pair<VarRef, VarRef> ConicProgram::trace_norm_constraint(const MatExpr& x,
                                                              const ScalarExpr& bound) {
    const int n = x.rows;
    VarRef p = add_hermitian("tn_pos_" + std::to_string(vars_.size()), n);
    VarRef q = add_hermitian("tn_neg_" + std::to_string(vars_.size()), n);
    add_psd(var(p), "tn_pos");
    add_psd(var(q), "tn_neg");
    add_eq_zero(x - var(p) + var(q));
    ScalarExpr slack = bound;
    slack -= trace_re(var(p)) + trace_re(var(q));
    add_psd(scaled_matrix(slack, CMat::Identity(1, 1)), "tn_bound");
    return {p, q};
}

std::pair<VarRef, VarRef> ConicProgram::trace_norm_constraint(const MatExpr& x, double bound) {
    if (bound < 0) throw std::invalid_argument("trace_norm_constraint: negative bound");
    return trace_norm_constraint(x, ScalarExpr(bound));
}

void ConicProgram::maximize(ScalarExpr s) {
    objective_ = std::move(s);
    objective_.compress();
    sense_ = Sense::Maximize;
}

void ConicProgram::minimize(ScalarExpr s) {
    objective_ = std::move(s);
    objective_.compress();
    sense_ = Sense::Minimize;
}

double ConicProgram::eval(const ScalarExpr& s, const RVec& params) {
    double v = s.constant;
    for (const auto& [p, c] : s.lin) v += c * params(p);
    return v;
}

CMat ConicProgram::value_of(const VarRef& v, const RVec& params) {
    CMat m = CMat::Zero(v.rows, v.cols);
    BasisEntry be[2];
    for (int local = 0; local < v.param_count; ++local) {
        int cnt = variable_basis(v, local, be);
        double x = params(v.param_offset + local);
        for (int e = 0; e < cnt; ++e) m(be[e].r, be[e].c) += x * be[e].v;
    }
    return m;
}

CMat ConicProgram::eval(const MatExpr& e, const RVec& params) {
    CMat m = e.constant;
    for (const auto& t : e.terms) {
        CMat v = value_of(t.var, params);
        if (t.pt_mask) v = apply_partial_transpose(v, t.var.layout, t.pt_mask);
        if (t.dagger) v = v.adjoint().eval();
        int vr = t.dagger ? t.var.cols : t.var.rows;
        int vc = t.dagger ? t.var.rows : t.var.cols;
        m.block(t.row_off, t.col_off, vr, vc) += t.coeff * v;
    }
    for (const auto& [s, mat] : e.scalar_terms) m += eval(s, params) * mat;
    return m;
}

} // namespace entcost::conic
