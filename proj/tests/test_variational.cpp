#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "entcost/channels/cost.hpp"
#include "entcost/channels/named.hpp"
#include "entcost/qcore/ops.hpp"
#include "entcost/variational/optimize.hpp"

using namespace entcost;
namespace q = entcost::qcore;
namespace v = entcost::variational;

TEST_CASE("ansatz statevector") {
    v::AnsatzParams zero(1, 3);
    CVec psi = v::ansatz_state(zero);
    CHECK(std::abs(psi(0) - Cplx(1, 0)) < 1e-14); // rings fix |00>

    // one pi rotation lands on a computational basis state
    v::AnsatzParams flip(1, 2);
    flip.angles(0, 0) = M_PI;
    CVec basis = v::ansatz_state(flip);
    int hits = 0;
    for (int i = 0; i < basis.size(); ++i)
        if (std::abs(basis(i)) > 1e-12) ++hits;
    CHECK(hits == 1);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0, 2 * M_PI);
    for (int t = 0; t < 100; ++t) {
        v::AnsatzParams p(2, 4);
        for (int r = 0; r < p.angles.rows(); ++r)
            for (int c = 0; c < p.angles.cols(); ++c) p.angles(r, c) = u(rng);
        CHECK(v::ansatz_state(p).norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
    v::AnsatzParams bad(1, 2);
    bad.angles = RMat::Zero(2, 2);
    CHECK_THROWS(v::ansatz_state(bad));
}

TEST_CASE("mes configuration is maximally entangled") {
    for (int n : {1, 2, 3}) {
        for (int depth : {1, 4, 10}) {
            v::AnsatzParams p(n, depth);
            p.angles = v::mes_angles(n, depth);
            CVec psi = v::ansatz_state(p);
            CMat rho = psi * psi.adjoint();
            int half = 1 << n;
            q::SubsystemLayout lay = q::SubsystemLayout::bipartite(half, half);
            CMat marg = q::partial_trace(rho, lay, 1);
            CHECK((marg - CMat::Identity(half, half) / half).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
    CHECK_THROWS(v::mes_angles(1, 0));
}

TEST_CASE("loss") {
    // identity channel with a maximally entangled input is worth one ebit
    v::AnsatzParams mes(1, 4);
    mes.angles = v::mes_angles(1, 4);
    CHECK(v::loss(q::KrausChannel::identity(2), mes) == doctest::Approx(1.0).epsilon(1e-5));

    // PPT channels score zero on every input
    auto depol = channels::depolarizing(0.0, 2).realized;
    CMat k0 = CMat::Zero(2, 2), k1 = CMat::Zero(2, 2);
    k0(0, 0) = 1;
    k1(1, 1) = 1;
    q::KrausChannel dephase({k0, k1}, 2, 2);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0, 2 * M_PI);
    for (int t = 0; t < 3; ++t) {
        v::AnsatzParams p(1, 4);
        for (int r = 0; r < p.angles.rows(); ++r)
            for (int c = 0; c < p.angles.cols(); ++c) p.angles(r, c) = u(rng);
        CHECK(v::loss(depol, p) <= 1e-6);
        CHECK(v::loss(dephase, p) <= 1e-6);
    }
}

TEST_CASE("loss is a function of the state only (global phase)") {
    v::AnsatzParams a(1, 3);
    a.angles = v::mes_angles(1, 3);
    a.angles(0, 0) = 0.37;
    v::AnsatzParams b = a;
    b.angles(0, 0) = 0.37 + 2 * M_PI; // Ry picks up a global -1

    CVec pa = v::ansatz_state(a), pb = v::ansatz_state(b);
    CMat ra = pa * pa.adjoint(), rb = pb * pb.adjoint();
    CHECK((ra - rb).cwiseAbs().maxCoeff() < 1e-13);

    auto nc = channels::sample_mixed_unitary({0.6, 0.4}, 2, 17);
    CHECK(std::abs(v::loss(nc.realized, a) - v::loss(nc.realized, b)) < 1e-8);
}

TEST_CASE("optimize") {
    // identity qubit channel: the optimum is any maximally entangled input
    v::OptimizerConfig cfg;
    cfg.steps = 18;
    cfg.depth = 3;
    cfg.seed = 5;
    auto r = v::optimize(q::KrausChannel::identity(2), cfg);
    CHECK(r.value_bits == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(r.evaluations <= cfg.steps + 1);

    // steps = 0 with the MES candidate reproduces the Choi bound exactly
    v::OptimizerConfig zero;
    zero.steps = 0;
    zero.depth = 3;
    auto nc = channels::sample_mixed_unitary({0.4, 0.4, 0.1, 0.1}, 2, 23);
    auto rz = v::optimize(nc.realized, zero);
    auto choi = channels::channel_cost_lb(nc.realized);
    CHECK(rz.evaluations == 1);
    CHECK(rz.value_bits == doctest::Approx(choi.value_bits).epsilon(1e-6));

    // with the MES candidate the result never drops below the Choi bound
    v::OptimizerConfig small;
    small.steps = 10;
    small.depth = 3;
    small.seed = 31;
    auto ropt = v::optimize(nc.realized, small);
    CHECK(ropt.value_bits >= choi.value_bits - 1e-6);
    CHECK_FALSE(ropt.trace.empty());

    v::OptimizerConfig bad;
    bad.depth = 0;
    CHECK_THROWS(v::optimize(q::KrausChannel::identity(2), bad));
}

TEST_CASE("sampled mixed-unitary channels") {
    auto a = channels::sample_mixed_unitary({0.4, 0.4, 0.1, 0.1}, 4, 99);
    auto b = channels::sample_mixed_unitary({0.4, 0.4, 0.1, 0.1}, 4, 99);
    for (size_t i = 0; i < a.realized.kraus().size(); ++i)
        CHECK((a.realized.kraus()[i] - b.realized.kraus()[i]).cwiseAbs().maxCoeff() == 0.0);

    auto single = channels::sample_mixed_unitary({1.0}, 3, 7);
    CHECK(single.realized.kraus().size() == 1);
    CMat u = single.realized.kraus()[0];
    CHECK((u.adjoint() * u - CMat::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);

    CHECK_THROWS(channels::sample_mixed_unitary({0.5, 0.4}, 2, 1));
}
