#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "entcost/conic/dump.hpp"
#include "entcost/conic/solve.hpp"
#include "entcost/qcore/ops.hpp"
#include "entcost/qcore/random.hpp"

#include <json.hpp>

using namespace entcost;
using namespace entcost::conic;
namespace q = entcost::qcore;

namespace {

CMat random_hermitian(int d, std::mt19937_64& rng) {
    CMat g = q::ginibre(d, d, rng);
    return 0.5 * (g + g.adjoint());
}

} // namespace

TEST_CASE("real embedding") {
    // real input: block-diagonal duplication
    CMat x = CMat::Zero(2, 2);
    x << 2, 1, 1, 3;
    RMat e = embed_real(x);
    CHECK((e.topLeftCorner(2, 2) - x.real()).norm() == doctest::Approx(0.0));
    CHECK((e.bottomRightCorner(2, 2) - x.real()).norm() == doctest::Approx(0.0));
    CHECK(e.topRightCorner(2, 2).norm() == doctest::Approx(0.0));

    // [[0, -i], [i, 0]] has eigenvalues {1, -1}; embedding doubles them
    CMat y(2, 2);
    y << Cplx(0, 0), Cplx(0, -1), Cplx(0, 1), Cplx(0, 0);
    Eigen::SelfAdjointEigenSolver<RMat> es(embed_real(y));
    RVec ev = es.eigenvalues();
    CHECK(ev(0) == doctest::Approx(-1.0));
    CHECK(ev(1) == doctest::Approx(-1.0));
    CHECK(ev(2) == doctest::Approx(1.0));
    CHECK(ev(3) == doctest::Approx(1.0));

    // PSD is preserved, eigenvalues come in pairs, round trip is exact
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 100; ++trial) {
        int d = 2 + static_cast<int>(rng() % 4);
        CMat g = q::ginibre(d, d, rng);
        CMat psd = g * g.adjoint();
        RMat emb = embed_real(psd);
        Eigen::SelfAdjointEigenSolver<RMat> se(emb, Eigen::EigenvaluesOnly);
        CHECK(se.eigenvalues().minCoeff() >= -1e-10);
        CHECK(emb.trace() == doctest::Approx(2.0 * psd.trace().real()));
        CHECK((unembed_complex(emb) - psd).cwiseAbs().maxCoeff() ==
              doctest::Approx(0.0).epsilon(1e-14));
        if (trial < 10) {
            RVec evs = se.eigenvalues();
            for (int i = 0; i + 1 < evs.size(); i += 2)
                CHECK(evs(i) == doctest::Approx(evs(i + 1)).epsilon(1e-9));
        }
    }
}

TEST_CASE("basic solves") {
    SUBCASE("max trace under a trace cap") {
        ConicProgram p;
        auto x = p.add_hermitian("X", 3);
        p.add_psd(p.var(x), "psd");
        p.add_scalar_le(trace_re(p.var(x)), 1.0);
        p.maximize(trace_re(p.var(x)));
        auto r = solve(p);
        CHECK(r.status == SolveStatus::Optimal);
        CHECK(r.primal_value == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(r.dual_value == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(r.max_residual <= 1e-8);
    }
    SUBCASE("infeasible program is reported") {
        ConicProgram p;
        auto x = p.add_hermitian("X", 3);
        p.add_psd(p.var(x) - MatExpr::constant_of(CMat::Identity(3, 3)), "xgei");
        p.add_scalar_le(trace_re(p.var(x)), 0.0);
        p.maximize(ScalarExpr(0.0));
        CHECK(solve(p).status == SolveStatus::Infeasible);
    }
    SUBCASE("unbounded program is reported") {
        ConicProgram p;
        auto x = p.add_hermitian("X", 2);
        p.add_psd(p.var(x), "psd");
        p.maximize(trace_re(p.var(x)));
        CHECK(solve(p).status == SolveStatus::Unbounded);
    }
    SUBCASE("largest eigenvalue via a scalar equality") {
        std::mt19937_64 rng(9);
        CMat c = random_hermitian(4, rng);
        ConicProgram p;
        auto s = p.add_hermitian("sigma", 4);
        p.add_psd(p.var(s), "psd");
        ScalarExpr tr = trace_re(p.var(s));
        tr -= ScalarExpr(1.0);
        p.add_eq_zero(tr);
        p.maximize(re_inner(c, p.var(s)));
        auto r = solve(p);
        CHECK(r.status == SolveStatus::Optimal);
        CHECK(r.primal_value ==
              doctest::Approx(q::hermitian_eigenvalues(c).maxCoeff()).epsilon(1e-7));
    }
}

TEST_CASE("fidelity block program matches the closed form") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 6; ++trial) {
        int da = 2 + static_cast<int>(rng() % 2);
        int db = 2 + static_cast<int>(rng() % 2);
        auto rho = q::random_state(da, db, da * db, rng());
        auto sig = q::random_state(da, db, da * db, rng());
        ConicProgram p;
        auto x = p.add_complex("X", da * db);
        p.add_psd(block_2x2(MatExpr::constant_of(rho.mat()), p.var(x),
                            MatExpr::constant_of(sig.mat())),
                  "fb");
        p.maximize(trace_re(p.var(x)));
        auto r = solve(p);
        CHECK(r.status == SolveStatus::Optimal);
        double closed = std::sqrt(q::fidelity(rho.mat(), sig.mat()));
        CHECK(r.primal_value == doctest::Approx(closed).epsilon(1e-6));
        // weak duality on a maximization: primal below dual up to tolerance
        CHECK(r.primal_value <= r.dual_value + 1e-6);
        // reconstructed dual certificates stay Hermitian
        for (const auto& yb : r.dual_blocks)
            CHECK((yb - yb.adjoint()).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("trace norm constraint") {
    SUBCASE("feasibility matches the trace norm") {
        CMat x1 = CMat::Zero(2, 2);
        x1(0, 0) = 0.5;
        x1(1, 1) = -0.4; // ||X||_1 = 0.9
        ConicProgram p;
        p.trace_norm_constraint(MatExpr::constant_of(x1), 1.0);
        p.maximize(ScalarExpr(0.0));
        CHECK(solve(p).status == SolveStatus::Optimal);

        CMat x2 = CMat::Zero(2, 2);
        x2(0, 0) = 1;
        x2(1, 1) = -1; // ||X||_1 = 2
        ConicProgram p2;
        p2.trace_norm_constraint(MatExpr::constant_of(x2), 1.0);
        p2.maximize(ScalarExpr(0.0));
        CHECK(solve(p2).status == SolveStatus::Infeasible);
    }
    SUBCASE("minimizing the budget recovers the trace norm") {
        std::mt19937_64 rng(12);
        for (int trial = 0; trial < 4; ++trial) {
            int d = 2 + static_cast<int>(rng() % 3);
            CMat x = random_hermitian(d, rng);
            ConicProgram p;
            auto c = p.add_hermitian("c", 1);
            p.add_psd(p.var(c), "c_nonneg");
            p.trace_norm_constraint(MatExpr::constant_of(x), trace_re(p.var(c)));
            p.minimize(trace_re(p.var(c)));
            auto r = solve(p);
            CHECK(r.status == SolveStatus::Optimal);
            CHECK(r.primal_value ==
                  doctest::Approx(q::trace_norm(q::HermitianOperator(x))).epsilon(1e-6));
        }
    }
}

TEST_CASE("non-hermitian block expressions are rejected") {
    ConicProgram p;
    auto x = p.add_complex("X", 2);
    p.add_psd(p.var(x), "bad"); // a general complex variable is not Hermitian
    p.maximize(ScalarExpr(0.0));
    CHECK_THROWS_AS(solve(p), std::invalid_argument);
}

TEST_CASE("lowered dump is self-describing JSON") {
    ConicProgram p;
    auto x = p.add_hermitian("X", 2);
    p.add_psd(p.var(x), "psd");
    p.add_scalar_le(trace_re(p.var(x)), 1.0);
    p.maximize(trace_re(p.var(x)));
    auto text = dump_json(lower(p));
    auto j = nlohmann::json::parse(text);
    CHECK(j["num_params"] == 4);
    CHECK(j["cones"].size() == 2);
    CHECK(j["cones"][0]["size"] == 4); // embedded 2x2 complex block
    CHECK(j.contains("objective"));
}

TEST_CASE("solver backends are pluggable") {
    auto names = backend_names();
    CHECK(std::find(names.begin(), names.end(), "ipm") != names.end());

    // a counting wrapper around the reference backend
    static int calls = 0;
    register_backend("counting", [](const LoweredProblem& lp, const IpmOptions& o) {
        ++calls;
        return solve_ipm(lp, o);
    });
    ConicProgram p;
    auto x = p.add_hermitian("X", 2);
    p.add_psd(p.var(x), "psd");
    p.add_scalar_le(trace_re(p.var(x)), 1.0);
    p.maximize(trace_re(p.var(x)));
    SolveOptions o;
    o.backend = "counting";
    auto r = solve(p, o);
    CHECK(r.status == SolveStatus::Optimal);
    CHECK(calls == 1);

    o.backend = "does_not_exist";
    CHECK_THROWS_WITH_AS(solve(p, o), doctest::Contains("available"), std::invalid_argument);
}
