#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
    std::string cmd = std::string(PARACALC_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() /
                     ("paracalc_cli_" + std::to_string(::getpid()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream is(p);
    std::string s((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    return s;
}

}  // namespace

TEST_CASE("partition-check exit codes") {
    TempDir tmp;
    CHECK(run("partition-check --grid d=1,n=512,L=32pi --out " + tmp.path.string()) == 0);
    CHECK(fs::exists(tmp.path / "partition_check.json"));
    CHECK(run("partition-check --grid d=1,n=100,L=32pi") == 2);   // not a power of two
    CHECK(run("partition-check --grid d=7,n=128,L=32pi") == 2);
}

TEST_CASE("decompose subcommand") {
    TempDir tmp;
    fs::path cfg = tmp.path / "cfg.json";
    std::ofstream(cfg) << R"({
      "schema": "paracalc-config-v1",
      "grid": {"d": 1, "n": 256, "L": "32pi"},
      "decompose": {"symbol": {"id": "dn", "amplitude": 0.1}, "N": 4,
                    "k_sweep": [2, 4]}
    })";
    CHECK(run("decompose --config " + cfg.string() + " --out " + tmp.path.string()) == 0);
    auto j = nlohmann::json::parse(slurp(tmp.path / "decompose.json"));
    CHECK(j["reconstruction_rel_sup_error"].get<double>() <= 1e-10);
    CHECK(j["support_pass"].get<bool>());
    auto sweep = j["elementary_sweep"];
    REQUIRE(sweep.size() == 2);
    CHECK(sweep[1]["rel_sup_error"].get<double>() < sweep[0]["rel_sup_error"].get<double>());

    // multiplier symbol: II component seminorms all zero
    fs::path cfg2 = tmp.path / "cfg2.json";
    std::ofstream(cfg2) << R"({
      "schema": "paracalc-config-v1",
      "grid": {"d": 1, "n": 256, "L": "32pi"},
      "decompose": {"symbol": {"id": "angxi", "m": 1.0}, "N": 4}
    })";
    CHECK(run("decompose --config " + cfg2.string() + " --out " + tmp.path.string()) == 0);
    auto j2 = nlohmann::json::parse(slurp(tmp.path / "decompose.json"));
    CHECK(j2["component_seminorms"]["II"]["M_d"].get<double>() <= 1e-12);

    // archive emission
    fs::path cfg3 = tmp.path / "cfg3.json";
    std::ofstream(cfg3) << R"({
      "schema": "paracalc-config-v1",
      "grid": {"d": 1, "n": 128, "L": "32pi"},
      "decompose": {"symbol": {"id": "dn", "amplitude": 0.1}, "N": 4, "K": 3,
                    "archive": true}
    })";
    CHECK(run("decompose --config " + cfg3.string() + " --out " + tmp.path.string()) == 0);
    CHECK(fs::exists(tmp.path / "elementary.pces"));

    // malformed config
    fs::path bad = tmp.path / "bad.json";
    std::ofstream(bad) << R"({"schema": "paracalc-config-v1", "unknown_key": 1})";
    CHECK(run("decompose --config " + bad.string()) == 2);
}

TEST_CASE("seminorms and apply subcommands") {
    TempDir tmp;
    fs::path cfg = tmp.path / "cfg.json";
    std::ofstream(cfg) << R"({
      "schema": "paracalc-config-v1",
      "grid": {"d": 1, "n": 256, "L": "32pi"},
      "seminorms": {"symbol": {"id": "dn", "amplitude": 0.1}, "s": 2.0},
      "apply": {"symbol": {"id": "dn", "amplitude": 0.1}}
    })";
    CHECK(run("seminorms --config " + cfg.string() + " --out " + tmp.path.string()) == 0);
    CHECK(fs::exists(tmp.path / "seminorms.json"));
    CHECK(run("apply --config " + cfg.string() + " --mode dense --stats --out " +
              tmp.path.string()) == 0);
    auto j = nlohmann::json::parse(slurp(tmp.path / "apply.json"));
    CHECK(j.contains("flops_estimate"));
    CHECK(run("apply --config " + cfg.string() + " --mode elementary --K 4 --out " +
              tmp.path.string()) == 0);
}

TEST_CASE("commutator subcommand") {
    TempDir tmp;
    CHECK(run("commutator --sigma1 angxi:1 --sigma2 func:0.3 --grid d=1,n=256,L=32pi --out " +
              tmp.path.string()) == 0);
    auto j = nlohmann::json::parse(slurp(tmp.path / "commutator.json"));
    CHECK(j["commutator_l2"].get<double>() > 0.0);
}

TEST_CASE("experiment subcommand: pass, gate, reports") {
    TempDir tmp;
    std::string base = " --grid d=1,n=512,L=8pi --probes 8 --out " + tmp.path.string();

    CHECK(run("experiment th-III3 --variant i --sigma1 angxi:2.5 --m1 2.5 "
              "--sigma2 func:0.3 --n 1 --s 1" + base) == 0);
    CHECK(fs::exists(tmp.path / "th-III3-i.json"));
    CHECK(fs::exists(tmp.path / "th-III3-i.csv"));
    CHECK(fs::exists(tmp.path / "th-III3-i.dat"));

    // hypothesis gate: m1 <= n
    CHECK(run("experiment th-III3 --sigma1 angxi:0.5 --m1 0.5 --sigma2 func:0.3 --n 1" +
              base) == 4);
    // hypothesis gate: th-IV1.iii with m1 <= 0
    CHECK(run("experiment th-IV1 --variant iii --sigma1 angxi:-0.5 --m1 -0.5 "
              "--sigma2 func:0.3 --s 0.5" + base) == 4);

    // verify accepts the emitted report and rejects corruption
    CHECK(run("verify " + (tmp.path / "th-III3-i.json").string()) == 0);
    {
        auto j = nlohmann::json::parse(slurp(tmp.path / "th-III3-i.json"));
        j["c_emp"] = 999.0;
        std::ofstream(tmp.path / "tampered.json") << j.dump(2);
    }
    CHECK(run("verify " + (tmp.path / "tampered.json").string()) == 3);
}

TEST_CASE("experiment via config file and determinism") {
    TempDir tmp;
    fs::path cfg = tmp.path / "exp.json";
    std::ofstream(cfg) << R"({
      "schema": "paracalc-config-v1",
      "experiments": [{
        "id": "det", "theorem": "th-III3", "variant": "i",
        "grid": {"d": 1, "n": 256, "L": "8pi"},
        "sigma1": {"id": "angxi", "m": 1.5},
        "sigma2": {"id": "func", "amplitude": 0.3},
        "s": 1.0, "n": 0, "probes": 6, "seed": 9
      }]
    })";
    fs::path out1 = tmp.path / "o1", out2 = tmp.path / "o2";
    CHECK(run("experiment th-III3 --config " + cfg.string() + " --out " + out1.string()) == 0);
    CHECK(run("experiment th-III3 --config " + cfg.string() + " --out " + out2.string()) == 0);
    CHECK(slurp(out1 / "det.json") == slurp(out2 / "det.json"));
    CHECK(!slurp(out1 / "det.json").empty());
}

TEST_CASE("sweep subcommand") {
    TempDir tmp;
    fs::path cfg = tmp.path / "sweep.json";
    std::ofstream(cfg) << R"({
      "schema": "paracalc-config-v1",
      "sweep": {
        "experiment": {
          "id": "sw", "theorem": "th-II1", "variant": "low",
          "grid": {"d": 1, "n": 256, "L": "32pi"},
          "sigma1": {"id": "dn", "amplitude": 0.1},
          "s": 0.0, "t0": 1.0, "probes": 4, "seed": 3
        },
        "n_pts": [128, 256]
      }
    })";
    CHECK(run("sweep --config " + cfg.string() + " --out " + tmp.path.string()) == 0);
    CHECK(fs::exists(tmp.path / "sw_sweep.json"));
    CHECK(run("verify " + (tmp.path / "sw_sweep.json").string()) == 0);
}
