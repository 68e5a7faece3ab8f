#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "entcost/bounds/binegativity.hpp"
#include "entcost/bounds/comparison.hpp"
#include "entcost/bounds/hash.hpp"
#include "entcost/bounds/rains.hpp"
#include "entcost/channels/named.hpp"
#include "entcost/qcore/ops.hpp"
#include "entcost/qcore/random.hpp"

using namespace entcost;
namespace q = entcost::qcore;
namespace b = entcost::bounds;

namespace {

q::BipartiteState rho_v_noisy(double p) {
    CVec v1 = CVec::Zero(9), v2 = CVec::Zero(9);
    v1(1) = 1 / std::sqrt(2.0);
    v1(3) = -1 / std::sqrt(2.0);
    v2(2) = 1 / std::sqrt(2.0);
    v2(6) = -1 / std::sqrt(2.0);
    CMat rho = 0.5 * (v1 * v1.adjoint() + v2 * v2.adjoint());
    CMat noisy = (1.0 - p) * rho + p * CMat::Identity(9, 9) / 9.0;
    return q::BipartiteState(q::HermitianOperator(noisy), 3, 3);
}

q::BipartiteState maximally_mixed(int da, int db) {
    int d = da * db;
    return q::BipartiteState(q::HermitianOperator(CMat::Identity(d, d) / d), da, db);
}

// a PPT two-qutrit state found by seeded rejection
q::BipartiteState sample_ppt_state() {
    for (std::uint64_t s = 0;; ++s) {
        auto st = q::random_state(3, 3, 9, q::split_seed(404, s));
        if (q::is_ppt(st, 1e-9)) return st;
    }
}

} // namespace

TEST_CASE("fidelity_sdp reproduces the closed form") {
    auto rho = q::random_state(2, 2, 4, 1);
    CHECK(b::fidelity_sdp(rho, rho.op()) == doctest::Approx(1.0).epsilon(1e-7));

    // orthogonal pure states
    CMat e0 = CMat::Zero(4, 4), e1 = CMat::Zero(4, 4);
    e0(0, 0) = 1;
    e1(3, 3) = 1;
    CHECK(b::fidelity_sdp(q::BipartiteState(q::HermitianOperator(e0), 2, 2),
                          q::HermitianOperator(e1)) == doctest::Approx(0.0).epsilon(1e-7));

    std::mt19937_64 rng(6);
    for (int t = 0; t < 5; ++t) {
        auto r1 = q::random_state(3, 3, 9, rng());
        auto r2 = q::random_state(3, 3, 4 + t % 6, rng());
        double closed = std::sqrt(q::fidelity(r1.mat(), r2.mat()));
        CHECK(b::fidelity_sdp(r1, r2.op()) == doctest::Approx(closed).epsilon(1e-6));
    }
}

TEST_CASE("e_nb2_half on reference states") {
    auto r2 = b::e_nb2_half(q::max_entangled(2));
    CHECK(r2.optimal());
    CHECK(r2.value_bits == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(r2.root_fidelity == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));
    // reported value and root fidelity stay consistent
    CHECK(std::abs(r2.raw_value_bits + 2.0 * std::log2(r2.root_fidelity)) < 1e-9);

    auto r3 = b::e_nb2_half(q::max_entangled(3));
    CHECK(r3.value_bits == doctest::Approx(std::log2(3.0)).epsilon(1e-5));

    CHECK(b::e_nb2_half(maximally_mixed(2, 2)).value_bits <= 1e-6);
    auto ppt = sample_ppt_state();
    CHECK(b::e_nb2_half(ppt).value_bits <= 1e-6);

    auto rv = b::e_nb2_half(rho_v_noisy(0.0));
    CHECK(rv.optimal());
    CHECK(rv.value_bits > 0.1);
    CHECK(rv.gap < 1e-6);

    // witnesses certify membership of sigma* in PPT_2 and the fidelity value
    const auto& sigma = rv.witnesses.at("sigma");
    const auto& omega = rv.witnesses.at("omega");
    auto lay = q::SubsystemLayout::bipartite(3, 3);
    CMat sig_tb = q::partial_transpose(q::HermitianOperator(sigma), lay, "B").mat();
    CHECK(q::min_eigenvalue(omega - sig_tb) > -1e-7);
    CHECK(q::min_eigenvalue(omega + sig_tb) > -1e-7);
    CMat om_tb = q::partial_transpose(q::HermitianOperator(omega), lay, "B").mat();
    CHECK(q::trace_norm(q::HermitianOperator(om_tb)) <= 1.0 + 1e-6);
    double f = q::fidelity(rho_v_noisy(0.0).mat(), sigma);
    CHECK(std::sqrt(std::max(0.0, f)) == doctest::Approx(rv.root_fidelity).epsilon(1e-5));
}

TEST_CASE("dual program agrees with the primal") {
    auto d2 = b::e_nb2_half_dual(q::max_entangled(2));
    CHECK(d2.optimal());
    CHECK(d2.primal_value == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));
    CHECK(d2.value_bits == doctest::Approx(1.0).epsilon(1e-5));

    CHECK(b::e_nb2_half_dual(maximally_mixed(2, 2)).primal_value ==
          doctest::Approx(1.0).epsilon(1e-6));

    std::mt19937_64 rng(8);
    for (int t = 0; t < 4; ++t) {
        auto st = q::random_state(2, 3, 6, rng());
        auto pr = b::e_nb2_half(st);
        auto du = b::e_nb2_half_dual(st);
        CHECK(pr.value_bits == doctest::Approx(du.value_bits).epsilon(1e-6));
        // any feasible dual Q certifies: tr(Q rho) upper-bounds the root fidelity
        CHECK((du.witnesses.at("Q") * st.mat()).trace().real() ==
              doctest::Approx(pr.root_fidelity).epsilon(1e-5));
    }
}

TEST_CASE("hierarchy in k") {
    std::mt19937_64 rng(14);
    auto st = q::random_state(2, 2, 2, 99); // rank-2 two-qubit states are typically NPT
    REQUIRE_FALSE(q::is_ppt(st, 1e-9));
    auto k1 = b::e_nb_k_half(st, 1);
    auto k2 = b::e_nb_k_half(st, 2);
    auto k3 = b::e_nb_k_half(st, 3);
    CHECK(k1.optimal());
    CHECK(k2.optimal());
    CHECK(k3.optimal());
    CHECK(k1.value_bits <= k2.value_bits + 1e-7);
    CHECK(k2.value_bits <= k3.value_bits + 1e-7);

    auto same = b::e_nb2_half(st);
    CHECK(k2.value_bits == doctest::Approx(same.value_bits).epsilon(1e-9));

    auto ppt = sample_ppt_state();
    for (int k = 1; k <= 3; ++k) CHECK(b::e_nb_k_half(ppt, k).value_bits <= 1e-6);
    CHECK_THROWS(b::e_nb_k_half(st, 0));
}

TEST_CASE("ppt_k membership") {
    auto lay = q::SubsystemLayout::bipartite(3, 3);
    auto ppt = sample_ppt_state();
    CHECK(b::ppt_k_membership(ppt.op(), lay, 2));
    CHECK(b::ppt_k_membership(ppt.op(), lay, 3));

    CHECK_FALSE(b::ppt_k_membership(q::max_entangled(3).op(), lay, 2));
    CHECK_FALSE(b::ppt_k_membership(rho_v_noisy(0.0).op(), lay, 2));

    // the halved Bell state is a sub-state member of PPT_2
    auto lay2 = q::SubsystemLayout::bipartite(2, 2);
    q::HermitianOperator half_bell(0.5 * q::max_entangled(2).mat());
    CHECK(b::ppt_k_membership(half_bell, lay2, 2));
    CHECK_FALSE(b::ppt_k_membership(q::max_entangled(2).op(), lay2, 2));
}

TEST_CASE("e_eta") {
    // full-rank NPT states sit at exactly zero
    auto noisy = channels::noisy_bell(0.1, 0.8);
    REQUIRE_FALSE(q::is_ppt(noisy, 1e-9));
    REQUIRE(q::matrix_rank(noisy.op()) == 4);
    auto r = b::e_eta(noisy);
    CHECK(r.optimal());
    CHECK(r.value_bits <= 1e-6);

    CHECK(b::e_eta(q::max_entangled(2)).value_bits == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(b::e_eta(sample_ppt_state()).value_bits <= 1e-6);
}

TEST_CASE("tempered negativity") {
    CHECK(b::tempered_negativity(q::max_entangled(2)).value_bits ==
          doctest::Approx(1.0).epsilon(1e-5));
    auto noisy = channels::noisy_bell(0.2, 0.8);
    REQUIRE(q::matrix_rank(noisy.op()) == 4);
    CHECK(b::tempered_negativity(noisy).value_bits <= 1e-6);
    CHECK(b::tempered_negativity(sample_ppt_state()).value_bits <= 1e-6);
}

TEST_CASE("relative entropy minimization") {
    auto ppt = sample_ppt_state();
    b::FWParams fp;
    fp.gap_tol = 1e-4;
    auto r = b::rel_entropy_to_set(ppt, b::FreeSet::PPT, fp);
    CHECK(r.status == conic::SolveStatus::Optimal);
    CHECK(r.value_bits <= 2e-4);

    for (int d : {2, 3}) {
        b::FWParams fr;
        fr.gap_tol = 5e-4;
        auto rb = b::rel_entropy_to_set(q::max_entangled(d), b::FreeSet::Rains, fr);
        CHECK(rb.status == conic::SolveStatus::Optimal);
        CHECK(rb.value_bits == doctest::Approx(std::log2(double(d))).epsilon(1e-3));
    }
}

TEST_CASE("hash bound") {
    auto ppt = sample_ppt_state();
    CHECK(b::e_hash2_lower(ppt).value_bits <= 1e-6);

    auto bell = b::e_hash2_lower(q::max_entangled(2));
    CHECK(bell.optimal());
    CHECK(bell.value_bits > 0.0);
    CHECK(bell.value_bits <= 1.0 + 1e-6);

    std::mt19937_64 rng(20);
    for (int t = 0; t < 3; ++t) {
        auto st = q::random_state(2, 2, 2 + t, rng());
        auto pr = b::e_hash2_lower(st);
        auto du = b::e_hash2_dual(st);
        CHECK(pr.optimal());
        CHECK(pr.primal_value == doctest::Approx(du.primal_value).epsilon(1e-6));
        CHECK(pr.value_bits >= -1e-9);
    }
}

TEST_CASE("additivity on a product pair") {
    auto r0 = q::random_state(2, 2, 2, 300);
    auto r1 = q::random_state(2, 2, 3, 301);
    auto joint = q::BipartiteState(q::tensor(r0.op(), r1.op()), 4, 4);
    // regroup (A1 B1 A2 B2) -> (A1 A2 B1 B2) so the cut matches
    q::SubsystemLayout four({2, 2, 2, 2}, {"A1", "B1", "A2", "B2"});
    auto grouped = q::permute_systems(joint.op(), four, {"A1", "A2", "B1", "B2"});
    auto big = q::BipartiteState(grouped, 4, 4);
    double lhs = b::e_nb2_half(big).value_bits;
    double rhs = b::e_nb2_half(r0).value_bits + b::e_nb2_half(r1).value_bits;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-4));
}

TEST_CASE("two-qubit entanglement of formation") {
    CHECK(b::eof_two_qubit(q::max_entangled(2)) == doctest::Approx(1.0));
    auto prod = q::BipartiteState(q::HermitianOperator(CMat::Identity(4, 4) / 4.0), 2, 2);
    CHECK(b::eof_two_qubit(prod) == doctest::Approx(0.0));
    CMat mix = 0.9 * q::max_entangled(2).mat() + 0.1 * CMat::Identity(4, 4) / 4.0;
    double got = b::eof_two_qubit(q::BipartiteState(q::HermitianOperator(mix), 2, 2));
    // isotropic two-qubit state: C = max(0, (3p-1)/2) with p = 0.9 -> 0.85
    double conc = (3 * 0.9 - 1) / 2;
    double x = 0.5 * (1 + std::sqrt(1 - conc * conc));
    double expected = -x * std::log2(x) - (1 - x) * std::log2(1 - x);
    CHECK(got == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("dominance of the theorem chain on an NPT sample") {
    auto st = rho_v_noisy(0.01);
    double enb = b::e_nb2_half(st).value_bits;
    b::FWParams fp;
    fp.gap_tol = 1e-3;
    auto er = b::rel_entropy_to_set(st, b::FreeSet::PPT, fp);
    CHECK(enb <= er.value_bits + fp.gap_tol);
    // the hash relaxation also stays below the PPT relative entropy
    double ehash = b::e_hash2_lower(st).value_bits;
    CHECK(ehash <= er.value_bits + fp.gap_tol);
}
