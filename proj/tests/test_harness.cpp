#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "entcost/harness/experiments.hpp"
#include "entcost/harness/io.hpp"
#include "entcost/harness/svg.hpp"
#include "entcost/qcore/ops.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace entcost;
namespace q = entcost::qcore;
namespace h = entcost::harness;
namespace fs = std::filesystem;

namespace {

std::string temp_dir() {
    auto dir = fs::temp_directory_path() / "entcost_test";
    fs::create_directories(dir);
    return dir.string();
}

// drop the wall-clock column before comparing CSV bodies
std::string strip_runtime(const std::string& csv) {
    std::stringstream in(csv);
    std::string line, out;
    while (std::getline(in, line)) {
        auto pos = line.rfind(',');
        out += line.substr(0, pos) + "\n";
    }
    return out;
}

} // namespace

TEST_CASE("state round trip") {
    auto bell = q::max_entangled(2);
    std::string path = temp_dir() + "/bell2.json";
    h::write_state(bell, path);
    auto back = h::read_state(path);
    CHECK((back.mat() - bell.mat()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(back.dim_a() == 2);
}

TEST_CASE("validation errors name the failing invariant") {
    std::string dir = temp_dir();
    {
        std::ofstream f(dir + "/bad_trace.json");
        f << R"({"dims":[1,2],"matrix":[[0.5,0],[0,0],[0,0],[0.4,0]]})";
    }
    CHECK_THROWS_WITH_AS(h::read_state(dir + "/bad_trace.json"), doctest::Contains("trace"),
                         std::invalid_argument);
    {
        std::ofstream f(dir + "/bad_dims.json");
        f << R"({"dims":[2,2],"matrix":[[1,0]]})";
    }
    CHECK_THROWS_WITH_AS(h::read_state(dir + "/bad_dims.json"), doctest::Contains("pairs"),
                         std::invalid_argument);
    {
        std::ofstream f(dir + "/bad_kraus.json");
        f << R"({"dim_in":2,"dim_out":2,"kraus":[[[1,0],[0,0],[0,0]]]})";
    }
    CHECK_THROWS_WITH_AS(h::read_channel(dir + "/bad_kraus.json"), doctest::Contains("pairs"),
                         std::invalid_argument);
    {
        std::ofstream f(dir + "/not_tp.json");
        f << R"({"dim_in":2,"dim_out":2,"kraus":[[[0.5,0],[0,0],[0,0],[0.5,0]]]})";
    }
    CHECK_THROWS_WITH_AS(h::read_channel(dir + "/not_tp.json"), doctest::Contains("identity"),
                         std::invalid_argument);
}

TEST_CASE("channel round trip and named shorthand") {
    auto wh = channels::werner_holevo(3).realized;
    std::string path = temp_dir() + "/wh3.json";
    h::write_channel(wh, path);
    auto back = h::read_channel(path);
    CHECK(back.dim_in() == 3);
    CHECK(back.kraus().size() == wh.kraus().size());

    std::string named = temp_dir() + "/wh3n.json";
    {
        std::ofstream f(named);
        f << R"({"name":"werner_holevo","params":{"d":3}})";
    }
    auto nb = h::read_channel(named);
    auto j1 = q::choi_state(nb).mat();
    auto j2 = q::choi_state(wh).mat();
    CHECK((j1 - j2).cwiseAbs().maxCoeff() < 1e-12);

    std::string unknown = temp_dir() + "/unk.json";
    {
        std::ofstream f(unknown);
        f << R"({"name":"teleporter"})";
    }
    CHECK_THROWS_WITH_AS(h::read_channel(unknown), doctest::Contains("unknown named channel"),
                         std::invalid_argument);
}

TEST_CASE("bound result serialization") {
    auto r = bounds::e_nb2_half(q::max_entangled(2));
    std::string text = h::bound_result_to_json(r, true);
    CHECK(text.find("\"bound\"") != std::string::npos);
    CHECK(text.find("e_nb2_half") != std::string::npos);
    CHECK(text.find("root_fidelity") != std::string::npos);
    CHECK(text.find("witnesses") != std::string::npos);
    std::string no_wit = h::bound_result_to_json(r, false);
    CHECK(no_wit.find("witnesses") == std::string::npos);
}

TEST_CASE("experiments are deterministic under the seed") {
    h::ExperimentSpec spec;
    spec.name = "noisy_bell";
    spec.seed = 42;
    spec.out_dir = temp_dir() + "/run1";
    spec.params["lo"] = 0.3;
    spec.params["hi"] = 0.3; // single grid point keeps the test quick
    auto rows1 = h::run(spec);
    spec.out_dir = temp_dir() + "/run2";
    auto rows2 = h::run(spec);
    CHECK(strip_runtime(h::rows_to_csv(rows1)) == strip_runtime(h::rows_to_csv(rows2)));
    CHECK(fs::exists(fs::path(temp_dir() + "/run1") / "noisy_bell.csv"));

    // five bounds per grid point, all solved
    CHECK(rows1.size() == 5);
    for (const auto& r : rows1) CHECK(r.status == "optimal");
}

TEST_CASE("unknown experiment lists the available names") {
    h::ExperimentSpec spec;
    spec.name = "does_not_exist";
    CHECK_THROWS_WITH_AS(h::run(spec), doctest::Contains("scatter_compare"),
                         std::invalid_argument);
}

TEST_CASE("werner-holevo experiment row") {
    h::ExperimentSpec spec;
    spec.name = "werner_holevo";
    spec.params["d"] = 2;
    spec.out_dir = temp_dir() + "/wh";
    spec.plot = true;
    auto rows = h::run(spec);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].bound == "channel_cost_lb");
    CHECK(rows[0].status == "optimal");
    CHECK(rows[0].value > 0.0);
    auto svg_path = fs::path(spec.out_dir) / "werner_holevo.svg";
    REQUIRE(fs::exists(svg_path));
    std::ifstream svg(svg_path);
    std::string first;
    std::getline(svg, first);
    CHECK(first.find("<svg") != std::string::npos);
}

TEST_CASE("svg renderer") {
    h::Series s1{"a", {0, 1, 2}, {0.0, 0.5, 0.2}, false};
    h::Series s2{"b", {0, 1, 2}, {0.1, 0.4, 0.3}, true};
    std::string svg = h::render_svg({s1, s2}, "title", "x", "y");
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find("<circle") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
}
