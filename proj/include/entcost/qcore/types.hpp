#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace entcost {

using Cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

namespace qcore {

/// Ordered list of subsystem dimensions with distinct labels. All indexing is
/// row-major over the listed order, first label most significant.
struct SubsystemLayout {
    std::vector<int> dims;
    std::vector<std::string> labels;

    SubsystemLayout() = default;
    SubsystemLayout(std::vector<int> d, std::vector<std::string> l);

    int total_dim() const;
    int index_of(const std::string& label) const;
    static SubsystemLayout bipartite(int dim_a, int dim_b);
};

/// d x d complex matrix kept exactly Hermitian. The constructor symmetrizes
/// M <- (M + M^dag)/2 and rejects inputs whose correction exceeds `tol`.
class HermitianOperator {
public:
    explicit HermitianOperator(CMat m, double tol = 1e-10);

    int dim() const { return static_cast<int>(mat_.rows()); }
    const CMat& mat() const { return mat_; }
    double trace() const { return mat_.trace().real(); }

    static HermitianOperator identity(int d);
    static HermitianOperator zero(int d);

private:
    CMat mat_;
};

/// Density operator together with its bipartite split dimA x dimB.
class BipartiteState {
public:
    BipartiteState(HermitianOperator op, int dim_a, int dim_b);

    const HermitianOperator& op() const { return op_; }
    const CMat& mat() const { return op_.mat(); }
    int dim() const { return op_.dim(); }
    int dim_a() const { return dim_a_; }
    int dim_b() const { return dim_b_; }
    SubsystemLayout layout() const { return SubsystemLayout::bipartite(dim_a_, dim_b_); }

private:
    HermitianOperator op_;
    int dim_a_;
    int dim_b_;
};

/// CPTP map given by Kraus operators (dimOut x dimIn each).
class KrausChannel {
public:
    KrausChannel(std::vector<CMat> kraus, int dim_in, int dim_out);

    const std::vector<CMat>& kraus() const { return kraus_; }
    int dim_in() const { return dim_in_; }
    int dim_out() const { return dim_out_; }

    CMat apply(const CMat& rho) const;

    /// Kraus set of  id_{d_left} (x) K (x) id_{d_right}.
    KrausChannel embed(int d_left, int d_right) const;

    /// Sequential composition: (*this) after `first`.
    KrausChannel compose_after(const KrausChannel& first) const;

    static KrausChannel identity(int d);

private:
    std::vector<CMat> kraus_;
    int dim_in_;
    int dim_out_;
};

} // namespace qcore
} // namespace entcost
