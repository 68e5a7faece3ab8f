#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "entcost/bounds/binegativity.hpp"
#include "entcost/channels/cost.hpp"
#include "entcost/channels/named.hpp"
#include "entcost/qcore/ops.hpp"
#include "entcost/qcore/random.hpp"

using namespace entcost;
namespace q = entcost::qcore;
namespace ch = entcost::channels;

namespace {

CMat swap_gate() {
    CMat s = CMat::Zero(4, 4);
    s(0, 0) = s(3, 3) = 1;
    s(1, 2) = s(2, 1) = 1;
    return s;
}

bool is_cptp(const q::KrausChannel& n) {
    CMat acc = CMat::Zero(n.dim_in(), n.dim_in());
    for (const auto& k : n.kraus()) acc += k.adjoint() * k;
    return (acc - CMat::Identity(n.dim_in(), n.dim_in())).cwiseAbs().maxCoeff() < 1e-10;
}

} // namespace

TEST_CASE("werner-holevo channel") {
    for (int d : {2, 3}) {
        auto nc = ch::werner_holevo(d);
        CHECK(is_cptp(nc.realized));
        auto j = q::choi_state(nc.realized);
        CHECK(j.mat().trace().real() == doctest::Approx(1.0));
        CMat phi = q::max_entangled(d).mat();
        CMat expected =
            (CMat::Identity(d * d, d * d) -
             d * q::partial_transpose(phi, q::SubsystemLayout::bipartite(d, d), 2u)) /
            (d * (d - 1));
        CHECK((j.mat() - expected).cwiseAbs().maxCoeff() < 1e-10);
        CHECK_FALSE(q::is_ppt(j, 1e-9));
        // the map itself: W(rho) = (I - rho^T)/(d-1)
        std::mt19937_64 rng(d);
        auto st = q::random_state(1, d, d, rng());
        CMat got = nc.realized.apply(st.mat());
        CMat want = (CMat::Identity(d, d) - st.mat().transpose()) / (d - 1);
        CHECK((got - want).cwiseAbs().maxCoeff() < 1e-10);
    }
    CHECK_THROWS(ch::werner_holevo(1));
}

TEST_CASE("depolarizing channel") {
    auto nc = ch::depolarizing(0.0, 2); // completely depolarizing qubit
    auto j = q::choi_state(nc.realized);
    CHECK((j.mat() - CMat::Identity(4, 4) / 4.0).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(q::is_ppt(j, 1e-9));

    auto nc3 = ch::depolarizing(0.3, 3);
    CHECK(is_cptp(nc3.realized));
    std::mt19937_64 rng(7);
    auto st = q::random_state(1, 3, 3, rng());
    CMat got = nc3.realized.apply(st.mat());
    CMat want = 0.3 * st.mat() + 0.7 * CMat::Identity(3, 3) / 3.0;
    CHECK((got - want).cwiseAbs().maxCoeff() < 1e-10);
    CHECK_THROWS(ch::depolarizing(1.5, 2));
}

TEST_CASE("damping channels") {
    auto ad = ch::amplitude_damping(0.3);
    CHECK(is_cptp(ad.realized));
    CMat one = CMat::Zero(2, 2);
    one(1, 1) = 1;
    CMat out = ad.realized.apply(one);
    CHECK(out(0, 0).real() == doctest::Approx(0.3)); // leaks toward |0>

    auto th = ch::thermal_damping_to_one(0.3);
    CHECK(is_cptp(th.realized));
    CMat zero = CMat::Zero(2, 2);
    zero(0, 0) = 1;
    CMat out2 = th.realized.apply(zero);
    CHECK(out2(1, 1).real() == doctest::Approx(0.3)); // leaks toward |1>
    // |1> is the fixed point
    CHECK((th.realized.apply(one) - one).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("collective dephased swap") {
    auto pure = ch::collective_dephased_swap(1.0, 0.7);
    CMat s = swap_gate();
    std::mt19937_64 rng(9);
    auto st = q::random_state(2, 2, 4, rng());
    CHECK((pure.realized.apply(st.mat()) - s * st.mat() * s).cwiseAbs().maxCoeff() < 1e-12);

    // phi = 0 collapses both branches to the plain swap
    auto nophase = ch::collective_dephased_swap(0.35, 0.0);
    CHECK((nophase.realized.apply(st.mat()) - s * st.mat() * s).cwiseAbs().maxCoeff() < 1e-12);
    CHECK_THROWS(ch::collective_dephased_swap(-0.1, 0.0));
}

TEST_CASE("xxz noisy step") {
    auto id = ch::xxz_noisy_step(0.0, 0.0);
    std::mt19937_64 rng(10);
    auto st = q::random_state(2, 2, 4, rng());
    CHECK((id.realized.apply(st.mat()) - st.mat()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(is_cptp(ch::xxz_noisy_step(1.57, 0.1).realized));

    // the Hamiltonian has the stated coupling structure
    CMat h = ch::xxz_hamiltonian().mat();
    CHECK(h(0, 0).real() == doctest::Approx(-1.0));  // ZZ on |00>
    CHECK(h(1, 2).real() == doctest::Approx(-1.0));  // XX+YY flip-flop
    CHECK(h(0, 3).real() == doctest::Approx(0.0));
}

TEST_CASE("noisy bell states") {
    auto clean = ch::noisy_bell(0.0, 1.0);
    CHECK((clean.mat() - q::max_entangled(2).mat()).cwiseAbs().maxCoeff() < 1e-12);

    auto dead = ch::noisy_bell(1.0, 1.0); // full damping destroys entanglement
    CHECK(q::is_ppt(dead, 1e-9));
    CHECK(bounds::e_nb2_half(dead).value_bits <= 1e-6);

    auto noisy = ch::noisy_bell(0.1, 0.5);
    CHECK(noisy.mat().trace().real() == doctest::Approx(1.0));
    CHECK(q::matrix_rank(noisy.op()) == 4);
}

TEST_CASE("point-to-point cost bound") {
    auto idq = channels::channel_cost_lb(q::KrausChannel::identity(2));
    CHECK(idq.optimal());
    CHECK(idq.value_bits == doctest::Approx(1.0).epsilon(1e-5));

    auto id3 = channels::channel_cost_lb(q::KrausChannel::identity(3));
    CHECK(id3.value_bits == doctest::Approx(std::log2(3.0)).epsilon(1e-5));

    CHECK(channels::channel_cost_lb(ch::depolarizing(0.0, 2).realized).value_bits <= 1e-6);
}

TEST_CASE("bipartite cost bound") {
    // ideal swap costs two ebits across AA':BB'
    q::KrausChannel swap({swap_gate()}, 4, 4);
    auto r = channels::bipartite_channel_cost_lb(swap, 2, 2, 2, 2);
    CHECK(r.optimal());
    CHECK(r.value_bits == doctest::Approx(2.0).epsilon(1e-4));

    // a product of local unitaries is PPT across the cut
    std::mt19937_64 rng(12);
    CMat ua = q::haar_unitary(2, rng), ub = q::haar_unitary(2, rng);
    q::KrausChannel local({q::tensor(ua, ub)}, 4, 4);
    CHECK(channels::bipartite_channel_cost_lb(local, 2, 2, 2, 2).value_bits <= 1e-6);

    // relabeling A<->B together with A'<->B' leaves the value unchanged
    auto nc = ch::collective_dephased_swap(0.3, M_PI / 10);
    CMat s = swap_gate();
    std::vector<CMat> flipped;
    for (const auto& k : nc.realized.kraus()) flipped.push_back(s * k * s);
    q::KrausChannel relabeled(flipped, 4, 4);
    auto v1 = channels::bipartite_channel_cost_lb(nc.realized, 2, 2, 2, 2);
    auto v2 = channels::bipartite_channel_cost_lb(relabeled, 2, 2, 2, 2);
    CHECK(v1.value_bits == doctest::Approx(v2.value_bits).epsilon(1e-6));

    // p in {0, 1} reduce to a single unitary branch: the ideal-swap value
    auto p0 = ch::collective_dephased_swap(0.0, M_PI / 10);
    CHECK(channels::bipartite_channel_cost_lb(p0.realized, 2, 2, 2, 2).value_bits ==
          doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("choi marginals") {
    for (const auto& nc :
         {ch::werner_holevo(3), ch::depolarizing(0.4, 2), ch::amplitude_damping(0.25)}) {
        auto j = q::choi_state(nc.realized);
        CMat marg = q::partial_trace(j.mat(), j.layout(), 1);
        int din = nc.realized.dim_in();
        CHECK((marg - CMat::Identity(din, din) / din).cwiseAbs().maxCoeff() < 1e-10);
    }
}
