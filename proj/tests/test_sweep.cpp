#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oqsinfo/sweep.hpp"

using namespace oqsinfo;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string line;
    std::istringstream stream(text);
    while (std::getline(stream, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

struct TempFile {
    std::string path;
    TempFile(const std::string& name, const std::string& content) : path(name) {
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("model and regime names round-trip") {
    REQUIRE(parse_model("ho") == Model::HarmonicOscillator);
    REQUIRE(parse_model("harmonic-oscillator") == Model::HarmonicOscillator);
    REQUIRE(parse_model("moshinsky") == Model::Moshinsky);
    REQUIRE(parse_regime("dephasing") == Regime::PureDephasing);
    REQUIRE(parse_regime("pure-dephasing") == Regime::PureDephasing);
    REQUIRE(parse_regime("relaxation") == Regime::Relaxation);
    REQUIRE(model_name(Model::Moshinsky) == "moshinsky");
    REQUIRE(regime_name(Regime::Relaxation) == "relaxation");
    REQUIRE_THROWS_AS(parse_model("hydrogen"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_regime("unitary"), std::invalid_argument);
}

TEST_CASE("number parsing is strict") {
    REQUIRE(parse_double("1.5") == 1.5);
    REQUIRE(parse_double("-2e-3") == -2e-3);
    REQUIRE_THROWS_AS(parse_double("1.5x"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_double(""), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_double("nope"), std::invalid_argument);

    const std::vector<double> list = parse_double_list("0.1,0.2,0.3");
    REQUIRE(list == std::vector<double>{0.1, 0.2, 0.3});
    REQUIRE_THROWS_AS(parse_double_list(""), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_double_list("0.1,,0.3"), std::invalid_argument);
}

TEST_CASE("config entries populate every field") {
    RunConfig config;
    apply_config_entry(config, "model", "moshinsky");
    apply_config_entry(config, "regime", "relaxation");
    apply_config_entry(config, "omega", "2.0");
    apply_config_entry(config, "gamma", "0.1,0.2");
    apply_config_entry(config, "lambda", "0.0,0.25");
    apply_config_entry(config, "t_start", "0.5");
    apply_config_entry(config, "t_stop", "3");
    apply_config_entry(config, "t_step", "0.25");
    apply_config_entry(config, "grid_half_width", "7");
    apply_config_entry(config, "grid_points", "201");
    apply_config_entry(config, "out", "run.csv");

    REQUIRE(config.model == Model::Moshinsky);
    REQUIRE(config.regime == Regime::Relaxation);
    REQUIRE(config.omega == 2.0);
    REQUIRE(config.gammas == std::vector<double>{0.1, 0.2});
    REQUIRE(*config.lambdas == std::vector<double>{0.0, 0.25});
    REQUIRE(*config.t_start == 0.5);
    REQUIRE(*config.t_stop == 3.0);
    REQUIRE(*config.t_step == 0.25);
    REQUIRE(config.grid_half_width == 7.0);
    REQUIRE(*config.grid_points == 201);
    REQUIRE(config.out == "run.csv");

    REQUIRE_THROWS_AS(apply_config_entry(config, "grid_points", "200.5"),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(apply_config_entry(config, "colour", "blue"), std::invalid_argument);
}

TEST_CASE("config files accept comments and report bad lines") {
    const TempFile good("sweep_good_config.tmp",
                        "# batch run\n"
                        "model = moshinsky\n"
                        "regime = relaxation  # thermal bath\n"
                        "\n"
                        "gamma = 0.1,0.2\n"
                        "lambda = 0.25\n"
                        "grid_points = 201\n"
                        "out = run.csv\n");
    const RunConfig config = load_config_file(good.path);
    REQUIRE(config.model == Model::Moshinsky);
    REQUIRE(config.regime == Regime::Relaxation);
    REQUIRE(config.gammas == std::vector<double>{0.1, 0.2});
    REQUIRE(*config.lambdas == std::vector<double>{0.25});
    REQUIRE(*config.grid_points == 201);
    REQUIRE(config.out == "run.csv");

    const TempFile bad("sweep_bad_config.tmp", "# header\ngamma 0.3\n");
    REQUIRE_THROWS_WITH(load_config_file(bad.path),
                        Catch::Matchers::ContainsSubstring("line 2"));

    const TempFile bad_value("sweep_bad_value.tmp", "omega = fast\n");
    REQUIRE_THROWS_WITH(load_config_file(bad_value.path),
                        Catch::Matchers::ContainsSubstring("line 1"));

    REQUIRE_THROWS_AS(load_config_file("no_such_config.tmp"), std::invalid_argument);
}

TEST_CASE("validation rejects inconsistent runs") {
    RunConfig config;
    config.model = Model::HarmonicOscillator;
    config.lambdas = std::vector<double>{0.3};
    REQUIRE_THROWS_AS(validate_config(config), std::invalid_argument);
    config.lambdas = std::vector<double>{0.0};
    REQUIRE_NOTHROW(validate_config(config));

    config = RunConfig{};
    config.model = Model::Moshinsky;
    config.lambdas = std::vector<double>{0.5};
    REQUIRE_THROWS_AS(validate_config(config), std::invalid_argument);
    config.lambdas = std::vector<double>{-0.1};
    REQUIRE_THROWS_AS(validate_config(config), std::invalid_argument);
    config.lambdas = std::vector<double>{0.45};
    REQUIRE_NOTHROW(validate_config(config));

    config = RunConfig{};
    config.omega = 0.0;
    REQUIRE_THROWS_AS(validate_config(config), std::invalid_argument);

    config = RunConfig{};
    config.gammas = {-0.1};
    REQUIRE_THROWS_AS(validate_config(config), std::invalid_argument);
    config.gammas = {};
    REQUIRE_THROWS_AS(validate_config(config), std::invalid_argument);

    config = RunConfig{};
    config.t_step = 0.0;
    REQUIRE_THROWS_AS(validate_config(config), std::invalid_argument);

    config = RunConfig{};
    config.t_start = 2.0;
    config.t_stop = 1.0;
    REQUIRE_THROWS_AS(validate_config(config), std::invalid_argument);

    config = RunConfig{};
    config.grid_points = 400;
    REQUIRE_THROWS_AS(validate_config(config), std::invalid_argument);
    config.grid_points = 1;
    REQUIRE_THROWS_AS(validate_config(config), std::invalid_argument);

    config = RunConfig{};
    config.grid_half_width = -1.0;
    REQUIRE_THROWS_AS(validate_config(config), std::invalid_argument);
}

TEST_CASE("grids, couplings and times resolve to their defaults") {
    RunConfig config;
    REQUIRE(resolve_grid(config).points == 2001);
    config.model = Model::Moshinsky;
    REQUIRE(resolve_grid(config).points == 401);
    config.grid_points = 801;
    REQUIRE(resolve_grid(config).points == 801);
    REQUIRE(resolve_grid(config).half_width == 8.0);

    REQUIRE(resolve_lambdas(config) == std::vector<double>{0.0});
    config.lambdas = std::vector<double>{0.1, 0.2};
    REQUIRE(resolve_lambdas(config) == std::vector<double>{0.1, 0.2});

    const std::vector<double> grid = default_lambda_grid(1.0);
    REQUIRE(grid.size() == 19);
    REQUIRE(grid.front() == 0.0);
    REQUIRE(std::abs(grid.back() - 0.45) < 1e-15);
    for (size_t k = 1; k < grid.size(); ++k) REQUIRE(grid[k] > grid[k - 1]);

    const std::vector<double> times = time_grid_from_range(0.0, 4.0 * kPi, kPi / 50.0);
    REQUIRE(times.size() == 201);
    REQUIRE(times.front() == 0.0);
    REQUIRE(std::abs(times.back() - 4.0 * kPi) < 1e-12);

    const std::vector<double> ragged = time_grid_from_range(0.0, 1.0, 0.3);
    REQUIRE(ragged.size() == 4);
    REQUIRE(std::abs(ragged.back() - 0.9) < 1e-15);

    RunConfig sparse;
    REQUIRE(resolve_times(sparse, {1.0, 2.0}) == std::vector<double>{1.0, 2.0});
    sparse.t_step = 2.0 * kPi;
    const std::vector<double> stepped = resolve_times(sparse, {1.0, 2.0});
    REQUIRE(stepped.size() == 3);
    REQUIRE(stepped[0] == 0.0);
    REQUIRE(std::abs(stepped[2] - 4.0 * kPi) < 1e-12);
}

TEST_CASE("csv numbers carry full double precision") {
    REQUIRE(csv_number(0.5) == "0.5");
    REQUIRE(csv_number(0.0) == "0");
    REQUIRE(csv_number(kPi) == "3.14159265358979");
    REQUIRE(csv_number(1e-300) == "1e-300");
    REQUIRE(csv_number(-2.25) == "-2.25");
}

TEST_CASE("oscillator time sweep emits one-particle columns only") {
    RunConfig config;
    config.model = Model::HarmonicOscillator;
    config.regime = Regime::PureDephasing;
    config.gammas = {0.0, 0.3};
    config.t_start = 0.0;
    config.t_stop = kPi;
    config.t_step = 0.5 * kPi;

    std::ostringstream out;
    REQUIRE(run_time_sweep(config, out) == 0);
    const std::vector<std::string> lines = split_lines(out.str());

    REQUIRE(lines.size() == 2 + 3 * 2);
    REQUIRE(lines[0] == "# schema=oqsinfo.time-sweep.v1 model=ho regime=dephasing");
    REQUIRE(lines[1] ==
            "t[au],gamma[au],lambda[au],s_x[nats],s_p[nats],s_t[nats],s_x2[nats],s_p2[nats],"
            "s_T[nats],I_x[nats],I_p[nats],I_t[nats],margin_1p[nats],margin_2p[nats],bound_ok");

    for (size_t k = 2; k < lines.size(); ++k) {
        const std::vector<std::string> f = split_fields(lines[k]);
        REQUIRE(f.size() == 15);
        REQUIRE(f[2].empty());   // lambda
        REQUIRE(f[6].empty());   // two-particle block
        REQUIRE(f[13].empty());  // two-particle margin
        REQUIRE(f[14] == "1");
        const double s_x = parse_double(f[3]);
        const double s_p = parse_double(f[4]);
        const double s_t = parse_double(f[5]);
        REQUIRE(std::abs(s_t - (s_x + s_p)) < 1e-12);
        REQUIRE(std::abs(parse_double(f[12]) - (s_t - kBoundOneParticle)) < 1e-12);
    }

    // gamma ordering inside one instant
    REQUIRE(split_fields(lines[2])[1] == "0");
    REQUIRE(split_fields(lines[3])[1] == "0.3");
}

TEST_CASE("pair time sweep fills every column and keeps internal identities") {
    RunConfig config;
    config.model = Model::Moshinsky;
    config.regime = Regime::Relaxation;
    config.gammas = {0.15};
    config.lambdas = std::vector<double>{0.0, 0.3};
    config.grid_points = 101;
    config.t_start = 0.0;
    config.t_stop = kPi;
    config.t_step = 0.5 * kPi;

    std::ostringstream out;
    REQUIRE(run_time_sweep(config, out) == 0);
    const std::vector<std::string> lines = split_lines(out.str());
    REQUIRE(lines.size() == 2 + 3 * 2);
    REQUIRE(lines[0] == "# schema=oqsinfo.time-sweep.v1 model=moshinsky regime=relaxation");

    for (size_t k = 2; k < lines.size(); ++k) {
        const std::vector<std::string> f = split_fields(lines[k]);
        REQUIRE(f.size() == 15);
        for (const std::string& cell : f) REQUIRE(!cell.empty());
        const double s_x2 = parse_double(f[6]);
        const double s_p2 = parse_double(f[7]);
        const double s_T = parse_double(f[8]);
        REQUIRE(std::abs(s_T - (s_x2 + s_p2)) < 1e-12);
        const double I_x = parse_double(f[9]);
        const double I_p = parse_double(f[10]);
        REQUIRE(std::abs(parse_double(f[11]) - (I_x + I_p)) < 1e-12);
        REQUIRE(std::abs(parse_double(f[13]) - (s_T - kBoundTwoParticle)) < 1e-12);
        REQUIRE(f[14] == "1");
    }
}

TEST_CASE("repeated sweeps are byte-identical") {
    RunConfig config;
    config.model = Model::Moshinsky;
    config.regime = Regime::PureDephasing;
    config.gammas = {0.15};
    config.lambdas = std::vector<double>{0.0, 0.3};
    config.grid_points = 101;
    config.t_start = 0.0;
    config.t_stop = 2.0 * kPi;
    config.t_step = 0.5 * kPi;

    std::ostringstream first;
    std::ostringstream second;
    REQUIRE(run_time_sweep(config, first) == 0);
    REQUIRE(run_time_sweep(config, second) == 0);
    REQUIRE(first.str() == second.str());

    std::ostringstream third;
    std::ostringstream fourth;
    REQUIRE(run_lambda_sweep(config, third) == 0);
    REQUIRE(run_lambda_sweep(config, fourth) == 0);
    REQUIRE(third.str() == fourth.str());
}

TEST_CASE("lambda sweep demands the pair model and one bath strength") {
    RunConfig config;
    config.model = Model::HarmonicOscillator;
    std::ostringstream out;
    REQUIRE_THROWS_AS(run_lambda_sweep(config, out), std::invalid_argument);

    config.model = Model::Moshinsky;
    config.gammas = {0.1, 0.2};
    REQUIRE_THROWS_AS(run_lambda_sweep(config, out), std::invalid_argument);
}

TEST_CASE("lambda sweep covers the default coupling grid") {
    RunConfig config;
    config.model = Model::Moshinsky;
    config.regime = Regime::PureDephasing;
    config.gammas = {0.15};
    config.grid_points = 61;

    std::ostringstream out;
    REQUIRE(run_lambda_sweep(config, out) == 0);
    const std::vector<std::string> lines = split_lines(out.str());
    REQUIRE(lines[0] ==
            "# schema=oqsinfo.lambda-sweep.v1 model=moshinsky regime=dephasing gamma=0.15");
    REQUIRE(lines[1] == "t[au],lambda[au],s_t[nats],s_T[nats]");
    REQUIRE(lines.size() == 2 + 3 * 19);

    // rows grouped by instant, coupling increasing inside each group
    const std::vector<std::string> first = split_fields(lines[2]);
    const std::vector<std::string> last = split_fields(lines[2 + 18]);
    REQUIRE(parse_double(first[1]) == 0.0);
    REQUIRE(std::abs(parse_double(last[1]) - 0.45) < 1e-12);
    REQUIRE(parse_double(first[0]) == parse_double(last[0]));
}

TEST_CASE("density snapshots round-trip through the csv") {
    RunConfig config;
    config.model = Model::HarmonicOscillator;
    config.regime = Regime::PureDephasing;
    config.gammas = {0.15, 0.5};
    config.grid_points = 401;
    const std::vector<double> times = {0.0, 0.5 * kPi};
    config.t_start = 0.0;
    config.t_stop = 0.5 * kPi;
    config.t_step = 0.5 * kPi;

    std::ostringstream out;
    REQUIRE(emit_density_snapshots(config, out) == 0);
    const std::vector<std::string> lines = split_lines(out.str());
    REQUIRE(lines[0] == "# schema=oqsinfo.density.v1 model=ho regime=dephasing");
    REQUIRE(lines[1] == "gamma[au],lambda[au],x[au],n[t=0][1/au],n[t=1.5707963267949][1/au]");
    REQUIRE(lines.size() == 2 + 2 * 401);

    const Grid1D grid(8.0, 401);
    std::vector<double> weak(401);
    std::vector<double> strong(401);
    for (int i = 0; i < 401; ++i) {
        const std::vector<std::string> a = split_fields(lines[2 + i]);
        const std::vector<std::string> b = split_fields(lines[2 + 401 + i]);
        REQUIRE(a.size() == 5);
        REQUIRE(a[1].empty());
        REQUIRE(std::abs(parse_double(a[2]) - grid.point(i)) < 1e-12);
        weak[i] = parse_double(a[4]);
        strong[i] = parse_double(b[4]);
    }

    // quarter-period position density is bath-independent under dephasing
    double max_diff = 0.0;
    for (int i = 0; i < 401; ++i) max_diff = std::max(max_diff, std::abs(weak[i] - strong[i]));
    REQUIRE(max_diff < 1e-10);
    REQUIRE(std::abs(trapezoid_norm(grid, weak) - 1.0) < 1e-6);

    // under relaxation the same comparison must fail
    config.regime = Regime::Relaxation;
    std::ostringstream relax;
    REQUIRE(emit_density_snapshots(config, relax) == 0);
    const std::vector<std::string> rlines = split_lines(relax.str());
    double relax_diff = 0.0;
    for (int i = 0; i < 401; ++i) {
        const double wa = parse_double(split_fields(rlines[2 + i])[4]);
        const double wb = parse_double(split_fields(rlines[2 + 401 + i])[4]);
        relax_diff = std::max(relax_diff, std::abs(wa - wb));
    }
    REQUIRE(relax_diff > 1e-4);
}
