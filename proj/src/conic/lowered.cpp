#include "entcost/conic/lowered.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace entcost::conic {

double LoweredBlock::inner(int t, const RMat& s) const {
    double acc = 0.0;
    for (int e = touch_start[t]; e < touch_start[t + 1]; ++e) {
        int r = ent_r[e], c = ent_c[e];
        acc += (r == c) ? ent_v[e] * s(r, r) : 2.0 * ent_v[e] * s(r, c);
    }
    return acc;
}

void LoweredBlock::scatter(int t, double w, RMat& s) const {
    for (int e = touch_start[t]; e < touch_start[t + 1]; ++e) {
        int r = ent_r[e], c = ent_c[e];
        s(r, c) += w * ent_v[e];
        if (r != c) s(c, r) += w * ent_v[e];
    }
}

RMat LoweredBlock::assemble(const RVec& y) const {
    RMat s = f0;
    for (size_t t = 0; t < touch.size(); ++t) scatter(static_cast<int>(t), y(touch[t]), s);
    return s;
}

RMat embed_real(const CMat& x) {
    const int n = static_cast<int>(x.rows());
    RMat s(2 * n, 2 * n);
    RMat a = x.real();
    RMat b = x.imag();
    s.topLeftCorner(n, n) = a;
    s.bottomRightCorner(n, n) = a;
    s.topRightCorner(n, n) = -b;
    s.bottomLeftCorner(n, n) = b;
    return s;
}

CMat unembed_complex(const RMat& s) {
    const int n = static_cast<int>(s.rows()) / 2;
    RMat a = 0.5 * (s.topLeftCorner(n, n) + s.bottomRightCorner(n, n));
    RMat b = 0.5 * (s.bottomLeftCorner(n, n) - s.topRightCorner(n, n));
    CMat out(n, n);
    out.real() = a;
    out.imag() = b;
    return out;
}

namespace {

struct EntryMap {
    // key = r * dim + c over the complex matrix
    std::unordered_map<long long, Cplx> m;
    void add(int r, int c, int dim, Cplx v) { m[static_cast<long long>(r) * dim + c] += v; }
};

int term_entries(const MatTerm& t, int local, BasisEntry out[2]) {
    int cnt = variable_basis(t.var, local, out);
    for (int e = 0; e < cnt; ++e) {
        if (t.pt_mask) {
            const auto& dims = t.var.layout;
            const int k = static_cast<int>(dims.size());
            int ri[16], ci[16];
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

// Per-parameter complex coefficient matrices of an expression, as entry maps.
void collect_coefficients(const MatExpr& e, std::unordered_map<int, EntryMap>& per_param,
                          CMat& constant) {
    constant = e.constant;
    BasisEntry be[2];
    for (const auto& t : e.terms) {
        for (int local = 0; local < t.var.param_count; ++local) {
            int cnt = term_entries(t, local, be);
            auto& em = per_param[t.var.param_offset + local];
            for (int k = 0; k < cnt; ++k)
                em.add(be[k].r + t.row_off, be[k].c + t.col_off, e.rows, be[k].v);
        }
    }
    for (const auto& [s, mat] : e.scalar_terms) {
        constant += s.constant * mat;
        for (const auto& [p, c] : s.lin) {
            auto& em = per_param[p];
            for (int r = 0; r < e.rows; ++r)
                for (int col = 0; col < e.cols; ++col) {
                    Cplx v = c * mat(r, col);
                    if (v != Cplx(0, 0)) em.add(r, col, e.rows, v);
                }
        }
    }
}

void check_hermitian_coeffs(const std::unordered_map<int, EntryMap>& per_param,
                            const CMat& constant, int dim, const std::string& where) {
    double cerr = (constant - constant.adjoint()).cwiseAbs().maxCoeff();
    if (cerr > 1e-11)
        throw std::invalid_argument("lower: non-Hermitian constant in psd block '" + where + "'");
    for (const auto& [p, em] : per_param) {
        for (const auto& [key, v] : em.m) {
            int r = static_cast<int>(key / dim), c = static_cast<int>(key % dim);
            auto it = em.m.find(static_cast<long long>(c) * dim + r);
            Cplx mirror = (it == em.m.end()) ? Cplx(0, 0) : it->second;
            if (std::abs(v - std::conj(mirror)) > 1e-11)
                throw std::invalid_argument("lower: non-Hermitian coefficient (param " +
                                            std::to_string(p) + ") in psd block '" + where + "'");
        }
    }
}

} // namespace

LoweredProblem lower(const ConicProgram& p) {
    LoweredProblem lp;
    lp.m = p.param_count();

    // objective: minimize b.y internally, user value = obj_sign*obj_scale*(b.y) + obj_const
    lp.b = RVec::Zero(lp.m);
    for (const auto& [idx, c] : p.objective().lin) lp.b(idx) += c;
    lp.obj_const = p.objective().constant;
    lp.obj_sign = (p.sense() == Sense::Maximize) ? -1.0 : 1.0;
    if (p.sense() == Sense::Maximize) lp.b = -lp.b;
    double bmax = lp.b.size() ? lp.b.cwiseAbs().maxCoeff() : 0.0;
    lp.obj_scale = std::max(1.0, bmax);
    lp.b /= lp.obj_scale;

    // psd blocks
    for (const auto& pc : p.psd_constraints()) {
        std::unordered_map<int, EntryMap> per_param;
        CMat constant;
        collect_coefficients(pc.expr, per_param, constant);
        if (pc.expr.rows != pc.expr.cols)
            throw std::invalid_argument("lower: psd block must be square");
        check_hermitian_coeffs(per_param, constant, pc.expr.rows, pc.name);

        LoweredBlock blk;
        blk.name = pc.name;
        const int n = pc.expr.rows;
        blk.size = 2 * n;
        blk.f0 = embed_real(0.5 * (constant + constant.adjoint()));
        blk.scale = std::max(1.0, blk.f0.cwiseAbs().maxCoeff());
        blk.f0 /= blk.scale;

        std::vector<int> params;
        params.reserve(per_param.size());
        for (const auto& [idx, em] : per_param) params.push_back(idx);
        std::sort(params.begin(), params.end());

        blk.touch_start.push_back(0);
        for (int idx : params) {
            const auto& em = per_param.at(idx);
            // upper-triangular complex entries -> real upper-triangular entries
            std::unordered_map<long long, double> real_entries;
            auto addr = [&](int r, int c, double v) {
                if (v == 0.0) return;
                if (r > c) std::swap(r, c);
                real_entries[static_cast<long long>(r) * blk.size + c] += v;
            };
            for (const auto& [key, v] : em.m) {
                int r = static_cast<int>(key / n), c = static_cast<int>(key % n);
                if (r > c) continue; // mirror handled via Hermiticity
                double x = v.real(), y = v.imag();
                if (r == c) {
                    addr(r, r, x);
                    addr(n + r, n + r, x);
                } else {
                    addr(r, c, x);
                    addr(n + r, n + c, x);
                    addr(r, n + c, -y);
                    addr(c, n + r, y);
                }
            }
            if (real_entries.empty()) continue;
            blk.touch.push_back(idx);
            std::vector<long long> keys;
            keys.reserve(real_entries.size());
            for (const auto& [k, v] : real_entries) keys.push_back(k);
            std::sort(keys.begin(), keys.end());
            for (long long k : keys) {
                blk.ent_r.push_back(static_cast<int>(k / blk.size));
                blk.ent_c.push_back(static_cast<int>(k % blk.size));
                blk.ent_v.push_back(real_entries.at(k) / blk.scale);
            }
            blk.touch_start.push_back(static_cast<int>(blk.ent_v.size()));
        }
        lp.blocks.push_back(std::move(blk));
    }

    // equality rows
    std::vector<RVec> rows;
    std::vector<double> rhs;
    for (const auto& me : p.matrix_equalities()) {
        std::unordered_map<int, EntryMap> per_param;
        CMat constant;
        collect_coefficients(me, per_param, constant);
        const int n = me.rows;
        for (int r = 0; r < n; ++r)
            for (int c = r; c < n; ++c) {
                RVec re_row = RVec::Zero(lp.m), im_row = RVec::Zero(lp.m);
                for (const auto& [idx, em] : per_param) {
                    auto it = em.m.find(static_cast<long long>(r) * n + c);
                    if (it == em.m.end()) continue;
                    re_row(idx) += it->second.real();
                    im_row(idx) += it->second.imag();
                }
                rows.push_back(re_row);
                rhs.push_back(-constant(r, c).real());
                if (r != c) {
                    rows.push_back(im_row);
                    rhs.push_back(-constant(r, c).imag());
                }
                if (r != c) {
                    // lower entry rows (independent for non-Hermitian expressions)
                    RVec re2 = RVec::Zero(lp.m), im2 = RVec::Zero(lp.m);
                    bool nonzero = false;
                    for (const auto& [idx, em] : per_param) {
                        auto it = em.m.find(static_cast<long long>(c) * n + r);
                        if (it == em.m.end()) continue;
                        re2(idx) += it->second.real();
                        im2(idx) += it->second.imag();
                        nonzero = true;
                    }
                    if (nonzero || constant(c, r) != Cplx(0, 0)) {
                        rows.push_back(re2);
                        rhs.push_back(-constant(c, r).real());
                        rows.push_back(im2);
                        rhs.push_back(-constant(c, r).imag());
                    }
                }
            }
    }
    for (const auto& se : p.scalar_equalities()) {
        RVec row = RVec::Zero(lp.m);
        for (const auto& [idx, c] : se.lin) row(idx) += c;
        rows.push_back(row);
        rhs.push_back(-se.constant);
    }

    if (!rows.empty()) {
        RMat g(rows.size(), lp.m);
        RVec h(rows.size());
        for (size_t i = 0; i < rows.size(); ++i) {
            g.row(i) = rows[i];
            h(i) = rhs[i];
        }
        // rank-filter rows
        Eigen::ColPivHouseholderQR<RMat> qr(g.transpose());
        qr.setThreshold(1e-11);
        int rank = static_cast<int>(qr.rank());
        RMat aug(g.rows(), lp.m + 1);
        aug.leftCols(lp.m) = g;
        aug.col(lp.m) = h;
        Eigen::ColPivHouseholderQR<RMat> qr_aug(aug.transpose());
        qr_aug.setThreshold(1e-11);
        if (static_cast<int>(qr_aug.rank()) > rank) {
            lp.presolve_infeasible = true;
        }
        auto perm = qr.colsPermutation().indices();
        lp.eq_g = RMat(rank, lp.m);
        lp.eq_h = RVec(rank);
        for (int i = 0; i < rank; ++i) {
            lp.eq_g.row(i) = g.row(perm(i));
            lp.eq_h(i) = h(perm(i));
        }
    } else {
        lp.eq_g = RMat(0, lp.m);
        lp.eq_h = RVec(0);
    }
    return lp;
}

} // namespace entcost::conic
