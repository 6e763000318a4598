#include "vqdgap/experiments.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <unistd.h>

using namespace vqdgap;

namespace {

std::string run_command(void (*command)(const ExperimentConfig&,
                                        std::ostream&),
                        const ExperimentConfig& config) {
    std::ostringstream out;
    command(config, out);
    return out.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        lines.push_back(line);
    }
    return lines;
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& contents) {
        char name[] = "/tmp/vqdgap-test-XXXXXX";
        const int fd = mkstemp(name);
        REQUIRE(fd >= 0);
        close(fd);
        path = name;
        std::ofstream out(path);
        out << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_SUITE("experiments") {

TEST_CASE("config files parse keys, comments and lists") {
    const TempFile file(
        "# system\n"
        "epsilons = 3, 3, 3, 4, 3\n"
        "v_grid = 0.2, 0.6   # inline comment\n"
        "depth = 2\n"
        "optimizer = spsa\n"
        "shots = 5000\n"
        "seed = 99\n");
    const ExperimentConfig config = load_config(file.path);
    CHECK(config.epsilons == std::vector<double>{3, 3, 3, 4, 3});
    CHECK(config.v_grid == std::vector<double>{0.2, 0.6});
    CHECK(config.depth_grid == std::vector<int>{2});
    CHECK(config.optimizer == "spsa");
    CHECK(config.shots == 5000);
    CHECK(config.seed == 99);
}

TEST_CASE("bad config input raises ConfigError") {
    CHECK_THROWS_AS(load_config("/nonexistent/path.cfg"), ConfigError);
    const TempFile file("epsilons 3,3\n");
    CHECK_THROWS_AS(load_config(file.path), ConfigError);
    ExperimentConfig config;
    CHECK_THROWS_AS(apply_override(config, "unknown_key", "1"), ConfigError);
    CHECK_THROWS_AS(apply_override(config, "shots", "ten"), ConfigError);
    CHECK_THROWS_AS(apply_override(config, "v_grid", ""), ConfigError);
    config.runs = 0;
    CHECK_THROWS_AS(validate_config(config), ConfigError);
    config.runs = 2;
    config.depth_grid = {0};
    CHECK_THROWS_AS(validate_config(config), ConfigError);
}

TEST_CASE("overrides mirror the file keys") {
    ExperimentConfig config;
    apply_override(config, "v", "0.7");
    CHECK(config.v_grid == std::vector<double>{0.7});
    apply_override(config, "depth_grid", "1,2,3");
    CHECK(config.depth_grid == std::vector<int>{1, 2, 3});
    apply_override(config, "backend", "noisy");
    apply_override(config, "t1", "40e-6");
    CHECK(config.t1 == doctest::Approx(40e-6));
    apply_override(config, "overlap", "dswap");
    CHECK(config.overlap == "dswap");
}

TEST_CASE("config hash is stable and value-sensitive") {
    ExperimentConfig a;
    ExperimentConfig b;
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a).size() == 16);
    b.seed = 4321;
    CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("exact command emits the documented schema") {
    ExperimentConfig config;
    config.epsilons = {3.0, 3.0};
    config.v_grid = {0.5, 1.0};
    config.gap_index = 1;
    const auto lines = lines_of(run_command(cmd_exact, config));
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "# config_hash=" + config_hash(config));
    CHECK(lines[1] == "v,level0,level1,level2,level3,level4,level5,gap");
    // Analytic spectrum (-3, -V, V, 3): missing levels stay blank.
    CHECK(lines[2] == "0.5,-3,-0.5,0.5,3,,,1");
    CHECK(lines[3] == "1,-3,-1,1,3,,,2");
}

TEST_CASE("exact command covers degenerate and five-level cases") {
    ExperimentConfig config;
    config.epsilons = {3.0, 3.0};
    config.v_grid = {0.0};
    config.gap_index = 1;
    const auto zero = lines_of(run_command(cmd_exact, config));
    CHECK(zero[2] == "0,-3,0,0,3,,,0");

    config.epsilons = {3, 3, 3, 4, 3};
    config.v_grid = {0.5};
    config.gap_index = 0;
    const auto five = lines_of(run_command(cmd_exact, config));
    REQUIRE(five.size() == 3);
    // Row must agree with the library oracle.
    const auto spectrum =
        eigenspectrum(build_qubit_hamiltonian({config.epsilons, 0.5}));
    std::ostringstream expected;
    expected << "0.5";
    for (int level = 0; level < 6; ++level) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.12g",
                      spectrum[static_cast<std::size_t>(level)]);
        expected << ',' << buf;
    }
    char gap_buf[40];
    std::snprintf(gap_buf, sizeof(gap_buf), "%.12g", spectrum[1] - spectrum[0]);
    expected << ',' << gap_buf;
    CHECK(five[2] == expected.str());
}

TEST_CASE("spectrum command emits one row per run and level") {
    ExperimentConfig config;
    config.epsilons = {3.0, 3.0};
    config.v_grid = {1.0};
    config.depth_grid = {2};
    config.runs = 2;
    config.shots = 0;
    config.gap_index = 1;  // 3 levels
    config.threads = 1;
    const auto lines = lines_of(run_command(cmd_spectrum, config));
    REQUIRE(lines.size() == 2 + 6);
    CHECK(lines[1] == "seed,level,energy,evals");
    // Levels are sorted per run.
    for (std::size_t run = 0; run < 2; ++run) {
        double previous = -1e9;
        for (std::size_t level = 0; level < 3; ++level) {
            const auto& line = lines[2 + run * 3 + level];
            std::stringstream ss(line);
            std::string field;
            std::getline(ss, field, ',');
            CHECK(field == std::to_string(config.seed + run));
            std::getline(ss, field, ',');
            CHECK(field == std::to_string(level));
            std::getline(ss, field, ',');
            const double energy = std::stod(field);
            CHECK(energy >= previous);
            previous = energy;
        }
    }
}

TEST_CASE("command output is byte-identical across reruns") {
    ExperimentConfig config;
    config.epsilons = {3.0, 3.0};
    config.v_grid = {1.0};
    config.depth_grid = {2};
    config.runs = 3;
    config.shots = 800;
    config.seed = 5;
    config.threads = 2;  // parallel execution must not affect output
    const auto a = run_command(cmd_spectrum, config);
    const auto b = run_command(cmd_spectrum, config);
    CHECK(a == b);

    config.runs = 2;
    const auto c = run_command(cmd_v_sweep, config);
    const auto d = run_command(cmd_v_sweep, config);
    CHECK(c == d);
}

TEST_CASE("v-sweep emits the documented header and exact column") {
    ExperimentConfig config;
    config.epsilons = {3.0, 3.0};
    config.v_grid = {1.0};
    config.depth_grid = {2};
    config.runs = 2;
    config.shots = 0;
    config.seed = 3;
    const auto lines = lines_of(run_command(cmd_v_sweep, config));
    REQUIRE(lines.size() == 3);
    CHECK(lines[1] == "v,optimizer,gap_mean,gap_std,gap_exact,z_score");
    CHECK(lines[2].find("1,cobyla,") == 0);
    CHECK(lines[2].find(",2,") != std::string::npos);  // exact gap 2V
}

TEST_CASE("depth-scan emits the documented header") {
    ExperimentConfig config;
    config.epsilons = {3.0, 3.0};
    config.v_grid = {1.0};
    config.depth_grid = {1, 2};
    config.runs = 2;
    config.shots = 0;
    const auto lines = lines_of(run_command(cmd_depth_scan, config));
    REQUIRE(lines.size() == 4);
    CHECK(lines[1] == "depth,optimizer,gap_mean,gap_std,runs,gap_exact");
    CHECK(lines[2].find("1,cobyla,") == 0);
    CHECK(lines[3].find("2,cobyla,") == 0);
}

TEST_CASE("noisy offset shifts reported energies, never gaps") {
    ExperimentConfig config;
    config.epsilons = {3.0, 3.0};
    config.v_grid = {1.0};
    config.depth_grid = {2};
    config.runs = 1;
    config.shots = 0;
    config.backend = "noisy";
    config.threads = 1;
    const auto base = lines_of(run_command(cmd_spectrum, config));
    config.offset = 5.0;
    const auto shifted = lines_of(run_command(cmd_spectrum, config));
    REQUIRE(base.size() == shifted.size());
    for (std::size_t row = 2; row < base.size(); ++row) {
        std::stringstream a(base[row]);
        std::stringstream b(shifted[row]);
        std::string fa;
        std::string fb;
        std::getline(a, fa, ',');
        std::getline(b, fb, ',');
        std::getline(a, fa, ',');
        std::getline(b, fb, ',');
        std::getline(a, fa, ',');
        std::getline(b, fb, ',');
        CHECK(std::stod(fb) - std::stod(fa) == doctest::Approx(5.0));
    }

    // The ideal backend ignores the knob entirely.
    config.backend = "ideal";
    config.offset = 0.0;
    const auto ideal = run_command(cmd_v_sweep, [&] {
        auto c = config;
        c.runs = 2;
        return c;
    }());
    config.offset = 5.0;
    const auto ideal_shifted = run_command(cmd_v_sweep, [&] {
        auto c = config;
        c.runs = 2;
        return c;
    }());
    CHECK(lines_of(ideal)[2] == lines_of(ideal_shifted)[2]);
}

TEST_CASE("grid shape misuse is a config error") {
    ExperimentConfig config;
    config.v_grid = {0.5, 1.0};
    CHECK_THROWS_AS(run_command(cmd_depth_scan, config), ConfigError);
    CHECK_THROWS_AS(run_command(cmd_spectrum, config), ConfigError);
    config.v_grid = {1.0};
    config.depth_grid = {1, 2};
    CHECK_THROWS_AS(run_command(cmd_v_sweep, config), ConfigError);
}

} // TEST_SUITE
