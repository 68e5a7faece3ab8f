#include "entcost/qcore/ops.hpp"

#include <cmath>
#include <numeric>

namespace entcost::qcore {

namespace {

// Decompose a flat index into per-subsystem digits, first subsystem most significant.
void unflatten(int idx, const std::vector<int>& dims, int* out) {
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
        out[k] = idx % dims[k];
        idx /= dims[k];
    }
}

int flatten(const int* digits, const std::vector<int>& dims) {
    int idx = 0;
    for (size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + digits[k];
    return idx;
}

} // namespace

CMat tensor(const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
    return HermitianOperator(tensor(a.mat(), b.mat()));
}

CVec tensor(const CVec& a, const CVec& b) {
    CVec out(a.size() * b.size());
    for (int i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

CMat partial_transpose(const CMat& m, const SubsystemLayout& layout, uint32_t mask) {
    const auto& dims = layout.dims;
    const int n = layout.total_dim();
    if (m.rows() != n) throw std::invalid_argument("partial_transpose: dimension mismatch");
    const int k = static_cast<int>(dims.size());
    std::vector<int> ri(k), ci(k);
    CMat out(n, n);
    for (int i = 0; i < n; ++i) {
        unflatten(i, dims, ri.data());
        for (int j = 0; j < n; ++j) {
            unflatten(j, dims, ci.data());
            std::vector<int> rr = ri, cc = ci;
            for (int s = 0; s < k; ++s)
                if (mask & (1u << s)) std::swap(rr[s], cc[s]);
            out(flatten(rr.data(), dims), flatten(cc.data(), dims)) = m(i, j);
        }
    }
    return out;
}

HermitianOperator partial_transpose(const HermitianOperator& m, const SubsystemLayout& layout,
                                    const std::string& subsystem) {
    uint32_t mask = 1u << layout.index_of(subsystem);
    return HermitianOperator(partial_transpose(m.mat(), layout, mask));
}

CMat partial_trace(const CMat& m, const SubsystemLayout& layout, int subsystem_index) {
    const auto& dims = layout.dims;
    const int n = layout.total_dim();
    if (m.rows() != n) throw std::invalid_argument("partial_trace: dimension mismatch");
    const int k = static_cast<int>(dims.size());
    if (subsystem_index < 0 || subsystem_index >= k)
        throw std::invalid_argument("partial_trace: bad subsystem index");
    std::vector<int> odims;
    for (int s = 0; s < k; ++s)
        if (s != subsystem_index) odims.push_back(dims[s]);
    int on = 1;
    for (int v : odims) on *= v;
    CMat out = CMat::Zero(on, on);
    std::vector<int> ri(k), ci(k), ro(k > 1 ? k - 1 : 1), co(k > 1 ? k - 1 : 1);
    for (int i = 0; i < n; ++i) {
        unflatten(i, dims, ri.data());
        for (int j = 0; j < n; ++j) {
            unflatten(j, dims, ci.data());
            if (ri[subsystem_index] != ci[subsystem_index]) continue;
            int t = 0;
            for (int s = 0; s < k; ++s) {
                if (s == subsystem_index) continue;
                ro[t] = ri[s];
                co[t] = ci[s];
                ++t;
            }
            if (odims.empty())
                out(0, 0) += m(i, j);
            else
                out(flatten(ro.data(), odims), flatten(co.data(), odims)) += m(i, j);
        }
    }
    return out;
}

HermitianOperator partial_trace(const HermitianOperator& m, const SubsystemLayout& layout,
                                const std::string& subsystem) {
    return HermitianOperator(partial_trace(m.mat(), layout, layout.index_of(subsystem)));
}

CMat permute_systems(const CMat& m, const SubsystemLayout& layout, const std::vector<int>& order) {
    const auto& dims = layout.dims;
    const int k = static_cast<int>(dims.size());
    if (static_cast<int>(order.size()) != k)
        throw std::invalid_argument("permute_systems: order length mismatch");
    std::vector<bool> seen(k, false);
    for (int v : order) {
        if (v < 0 || v >= k || seen[v])
            throw std::invalid_argument("permute_systems: not a permutation");
        seen[v] = true;
    }
    std::vector<int> ndims(k);
    for (int s = 0; s < k; ++s) ndims[s] = dims[order[s]];
    const int n = layout.total_dim();
    if (m.rows() != n) throw std::invalid_argument("permute_systems: dimension mismatch");
    // flat index map old -> new
    std::vector<int> map(n);
    std::vector<int> digits(k), nd(k);
    for (int i = 0; i < n; ++i) {
        unflatten(i, dims, digits.data());
        for (int s = 0; s < k; ++s) nd[s] = digits[order[s]];
        map[i] = flatten(nd.data(), ndims);
    }
    CMat out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(map[i], map[j]) = m(i, j);
    return out;
}

HermitianOperator permute_systems(const HermitianOperator& m, const SubsystemLayout& layout,
                                  const std::vector<std::string>& order) {
    std::vector<int> idx;
    idx.reserve(order.size());
    for (const auto& l : order) idx.push_back(layout.index_of(l));
    return HermitianOperator(permute_systems(m.mat(), layout, idx));
}

double trace_norm(const CMat& m) {
    Eigen::JacobiSVD<CMat> svd(m);
    return svd.singularValues().sum();
}

double trace_norm(const HermitianOperator& m) {
    Eigen::SelfAdjointEigenSolver<CMat> es(m.mat(), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
}

double fidelity(const CMat& rho, const CMat& sigma) {
    Eigen::SelfAdjointEigenSolver<CMat> es(sigma);
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw std::invalid_argument("fidelity: sigma is not positive semidefinite");
    RVec ev = es.eigenvalues().cwiseMax(0.0);
    CMat sq = es.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
    CMat inner = sq * rho * sq;
    inner = 0.5 * (inner + inner.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es2(inner, Eigen::EigenvaluesOnly);
    double root = es2.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    return root * root;
}

double fidelity(const BipartiteState& rho, const HermitianOperator& sigma) {
    return fidelity(rho.mat(), sigma.mat());
}

bool is_ppt(const BipartiteState& rho, double tol) {
    if (tol < 0) throw std::invalid_argument("is_ppt: negative tolerance");
    CMat pt = partial_transpose(rho.mat(), rho.layout(), 2u);
    return min_eigenvalue(pt) >= -tol;
}

BipartiteState max_entangled(int d) {
    if (d < 1) throw std::invalid_argument("max_entangled: d < 1");
    CMat m = CMat::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i * d + i, j * d + j) = 1.0 / d;
    return BipartiteState(HermitianOperator(m), d, d);
}

BipartiteState choi_state(const KrausChannel& n) {
    const int di = n.dim_in();
    const int dout = n.dim_out();
    CMat j = CMat::Zero(di * dout, di * dout);
    for (const CMat& k : n.kraus()) {
        // v = (I (x) K) |Omega>,  v[(i,a)] = K[a,i]
        CVec v(di * dout);
        for (int i = 0; i < di; ++i)
            for (int a = 0; a < dout; ++a) v(i * dout + a) = k(a, i);
        j += v * v.adjoint();
    }
    j /= static_cast<double>(di);
    return BipartiteState(HermitianOperator(j), di, dout);
}

BipartiteState choi_state_bipartite(const KrausChannel& n, int dim_a, int dim_b, int dim_ap,
                                    int dim_bp) {
    if (n.dim_in() != dim_a * dim_b || n.dim_out() != dim_ap * dim_bp)
        throw std::invalid_argument("choi_state_bipartite: dims inconsistent with channel");
    const int dref = dim_a * dim_b;
    const int dout = dim_ap * dim_bp;
    // Reference order (Ahat, Bhat); input leg order (A, B) matches the channel.
    // w[(i,j),(i,j)] amplitudes of Phi+_{Ahat A} (x) Phi+_{Bhat B} after regrouping
    // to (Ahat, Bhat, A, B).
    CMat j = CMat::Zero(dref * dout, dref * dout);
    const double norm = 1.0 / std::sqrt(static_cast<double>(dref));
    for (const CMat& k : n.kraus()) {
        CVec v = CVec::Zero(dref * dout);
        for (int ia = 0; ia < dim_a; ++ia)
            for (int jb = 0; jb < dim_b; ++jb) {
                int ref = ia * dim_b + jb; // (Ahat=ia, Bhat=jb)
                int in = ia * dim_b + jb;  // (A=ia, B=jb)
                for (int o = 0; o < dout; ++o) v(ref * dout + o) += norm * k(o, in);
            }
        j += v * v.adjoint();
    }
    // Current order (Ahat, Bhat, A', B') -> regroup to (Ahat, A', Bhat, B').
    SubsystemLayout lay({dim_a, dim_b, dim_ap, dim_bp}, {"Ahat", "Bhat", "Ap", "Bp"});
    CMat regrouped = permute_systems(j, lay, {0, 2, 1, 3});
    return BipartiteState(HermitianOperator(regrouped), dim_a * dim_ap, dim_b * dim_bp);
}

CMat evolve(const HermitianOperator& h, double t) {
    Eigen::SelfAdjointEigenSolver<CMat> es(h.mat());
    CVec phases(h.dim());
    for (int i = 0; i < h.dim(); ++i)
        phases(i) = std::exp(Cplx(0.0, -es.eigenvalues()(i) * t));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

RVec hermitian_eigenvalues(const CMat& m) {
    Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

double min_eigenvalue(const CMat& m) {
    return hermitian_eigenvalues(m).minCoeff();
}

CMat support_projector(const HermitianOperator& m, double rel_cutoff) {
    Eigen::SelfAdjointEigenSolver<CMat> es(m.mat());
    double lmax = es.eigenvalues().cwiseAbs().maxCoeff();
    double cut = rel_cutoff * std::max(lmax, 1e-300);
    CMat p = CMat::Zero(m.dim(), m.dim());
    for (int i = 0; i < m.dim(); ++i)
        if (es.eigenvalues()(i) > cut)
            p += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
    return p;
}

int matrix_rank(const HermitianOperator& m, double rel_cutoff) {
    RVec ev = hermitian_eigenvalues(m.mat());
    double cut = rel_cutoff * std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
    int r = 0;
    for (int i = 0; i < ev.size(); ++i)
        if (std::abs(ev(i)) > cut) ++r;
    return r;
}

} // namespace entcost::qcore
