#include "entcost/qcore/types.hpp"

#include <algorithm>
#include <set>

namespace entcost::qcore {

SubsystemLayout::SubsystemLayout(std::vector<int> d, std::vector<std::string> l)
    : dims(std::move(d)), labels(std::move(l)) {
    if (dims.size() != labels.size())
        throw std::invalid_argument("layout: dims and labels must have equal length");
    if (dims.empty()) throw std::invalid_argument("layout: empty");
    for (int v : dims)
        if (v < 1) throw std::invalid_argument("layout: subsystem dimension < 1");
    std::set<std::string> uniq(labels.begin(), labels.end());
    if (uniq.size() != labels.size())
        throw std::invalid_argument("layout: labels must be distinct");
}

int SubsystemLayout::total_dim() const {
    int d = 1;
    for (int v : dims) d *= v;
    return d;
}

int SubsystemLayout::index_of(const std::string& label) const {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end())
        throw std::invalid_argument("layout: unknown subsystem label '" + label + "'");
    return static_cast<int>(it - labels.begin());
}

SubsystemLayout SubsystemLayout::bipartite(int dim_a, int dim_b) {
    return SubsystemLayout({dim_a, dim_b}, {"A", "B"});
}

HermitianOperator::HermitianOperator(CMat m, double tol) {
    if (m.rows() != m.cols() || m.rows() < 1)
        throw std::invalid_argument("hermitian: matrix must be square and nonempty");
    CMat sym = 0.5 * (m + m.adjoint());
    double err = (m - sym).cwiseAbs().maxCoeff();
    if (err > tol)
        throw std::invalid_argument("hermitian: ||M - M^dag||_max = " + std::to_string(err) +
                                    " exceeds tolerance");
    mat_ = std::move(sym);
}

HermitianOperator HermitianOperator::identity(int d) {
    return HermitianOperator(CMat::Identity(d, d));
}

HermitianOperator HermitianOperator::zero(int d) {
    return HermitianOperator(CMat::Zero(d, d));
}

BipartiteState::BipartiteState(HermitianOperator op, int dim_a, int dim_b)
    : op_(std::move(op)), dim_a_(dim_a), dim_b_(dim_b) {
    if (dim_a_ < 1 || dim_b_ < 1 || dim_a_ * dim_b_ != op_.dim())
        throw std::invalid_argument("state: dimA*dimB must equal the operator dimension");
    Eigen::SelfAdjointEigenSolver<CMat> es(op_.mat(), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw std::invalid_argument("state: not positive semidefinite (min eigenvalue " +
                                    std::to_string(es.eigenvalues().minCoeff()) + ")");
    if (std::abs(op_.trace() - 1.0) > 1e-10)
        throw std::invalid_argument("state: trace " + std::to_string(op_.trace()) +
                                    " differs from 1");
}

KrausChannel::KrausChannel(std::vector<CMat> kraus, int dim_in, int dim_out)
    : kraus_(std::move(kraus)), dim_in_(dim_in), dim_out_(dim_out) {
    if (kraus_.empty()) throw std::invalid_argument("channel: empty Kraus list");
    CMat acc = CMat::Zero(dim_in_, dim_in_);
    for (const CMat& k : kraus_) {
        if (k.rows() != dim_out_ || k.cols() != dim_in_)
            throw std::invalid_argument("channel: Kraus operator has wrong shape");
        acc += k.adjoint() * k;
    }
    double err = (acc - CMat::Identity(dim_in_, dim_in_)).cwiseAbs().maxCoeff();
    if (err > 1e-10)
        throw std::invalid_argument("channel: sum K^dag K deviates from identity by " +
                                    std::to_string(err));
}

CMat KrausChannel::apply(const CMat& rho) const {
    CMat out = CMat::Zero(dim_out_, dim_out_);
    for (const CMat& k : kraus_) out += k * rho * k.adjoint();
    return out;
}

KrausChannel KrausChannel::embed(int d_left, int d_right) const {
    std::vector<CMat> ops;
    ops.reserve(kraus_.size());
    CMat il = CMat::Identity(d_left, d_left);
    CMat ir = CMat::Identity(d_right, d_right);
    for (const CMat& k : kraus_) {
        CMat m = k;
        if (d_left > 1) {
            CMat t(d_left * m.rows(), d_left * m.cols());
            for (int i = 0; i < d_left; ++i)
                for (int j = 0; j < d_left; ++j)
                    t.block(i * m.rows(), j * m.cols(), m.rows(), m.cols()) = il(i, j) * m;
            m = t;
        }
        if (d_right > 1) {
            CMat t(m.rows() * d_right, m.cols() * d_right);
            for (int i = 0; i < m.rows(); ++i)
                for (int j = 0; j < m.cols(); ++j)
                    t.block(i * d_right, j * d_right, d_right, d_right) = m(i, j) * ir;
            m = t;
        }
        ops.push_back(m);
    }
    return KrausChannel(ops, d_left * dim_in_ * d_right, d_left * dim_out_ * d_right);
}

KrausChannel KrausChannel::compose_after(const KrausChannel& first) const {
    if (first.dim_out_ != dim_in_)
        throw std::invalid_argument("channel: composition dimension mismatch");
    std::vector<CMat> ops;
    ops.reserve(kraus_.size() * first.kraus_.size());
    for (const CMat& k2 : kraus_)
        for (const CMat& k1 : first.kraus_) ops.push_back(k2 * k1);
    return KrausChannel(ops, first.dim_in_, dim_out_);
}

KrausChannel KrausChannel::identity(int d) {
    return KrausChannel({CMat::Identity(d, d)}, d, d);
}

} // namespace entcost::qcore
