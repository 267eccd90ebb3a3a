#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "oqsinfo/ho_model.hpp"
#include "oqsinfo/info.hpp"
#include "oqsinfo/moshinsky.hpp"

namespace oqsinfo {

enum class Model { HarmonicOscillator, Moshinsky };

// Batch run description.  Fields left unset fall back to per-command
// defaults: time-sweep uses t in [0, 4 pi] with step pi/100, lambda-sweep
// and density default to a few representative instants, the grid size
// follows the model (2001 points for the oscillator, 401 per axis for the
// pair), and lambda-sweep spans 19 couplings on [0, 0.9 omega^2/2].
struct RunConfig {
    Model model = Model::HarmonicOscillator;
    Regime regime = Regime::PureDephasing;
    double omega = 1.0;
    std::vector<double> gammas = {0.15};
    std::optional<std::vector<double>> lambdas;
    std::optional<double> t_start;
    std::optional<double> t_stop;
    std::optional<double> t_step;
    double grid_half_width = 8.0;
    std::optional<int> grid_points;
    std::string out;  // output path; empty writes to stdout
};

inline Model parse_model(const std::string& name) {
    if (name == "ho" || name == "harmonic-oscillator") return Model::HarmonicOscillator;
    if (name == "moshinsky") return Model::Moshinsky;
    throw std::invalid_argument("unknown model '" + name + "' (use ho or moshinsky)");
}

inline Regime parse_regime(const std::string& name) {
    if (name == "dephasing" || name == "pure-dephasing") return Regime::PureDephasing;
    if (name == "relaxation") return Regime::Relaxation;
    throw std::invalid_argument("unknown regime '" + name + "' (use dephasing or relaxation)");
}

inline std::string model_name(Model model) {
    return model == Model::HarmonicOscillator ? "ho" : "moshinsky";
}

inline std::string regime_name(Regime regime) {
    return regime == Regime::PureDephasing ? "dephasing" : "relaxation";
}

inline double parse_double(const std::string& text) {
    size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: '" + text + "'");
    }
    if (used != text.size()) {
        throw std::invalid_argument("not a number: '" + text + "'");
    }
    return v;
}

inline std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> values;
    std::string item;
    std::istringstream stream(text);
    while (std::getline(stream, item, ',')) {
        values.push_back(parse_double(item));
    }
    if (values.empty()) {
        throw std::invalid_argument("empty number list");
    }
    return values;
}

// Applies one key=value setting; shared by the config-file parser and the
// CLI flag overrides so both accept identical syntax.
inline void apply_config_entry(RunConfig& config, const std::string& key,
                               const std::string& value) {
    if (key == "model") {
        config.model = parse_model(value);
    } else if (key == "regime") {
        config.regime = parse_regime(value);
    } else if (key == "omega") {
        config.omega = parse_double(value);
    } else if (key == "gamma") {
        config.gammas = parse_double_list(value);
    } else if (key == "lambda") {
        config.lambdas = parse_double_list(value);
    } else if (key == "t_start") {
        config.t_start = parse_double(value);
    } else if (key == "t_stop") {
        config.t_stop = parse_double(value);
    } else if (key == "t_step") {
        config.t_step = parse_double(value);
    } else if (key == "grid_half_width") {
        config.grid_half_width = parse_double(value);
    } else if (key == "grid_points") {
        const double v = parse_double(value);
        config.grid_points = static_cast<int>(v);
        if (static_cast<double>(*config.grid_points) != v) {
            throw std::invalid_argument("grid_points must be an integer");
        }
    } else if (key == "out") {
        config.out = value;
    } else {
        throw std::invalid_argument("unknown config key '" + key + "'");
    }
}

inline std::string trim(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = text.find_last_not_of(" \t\r");
    return text.substr(begin, end - begin + 1);
}

// Flat key = value file; '#' starts a comment, blank lines are skipped.
inline RunConfig load_config_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) {
        throw std::invalid_argument("cannot open config file '" + path + "'");
    }
    RunConfig config;
    std::string line;
    int line_no = 0;
    while (std::getline(file, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        " is not key = value");
        }
        try {
            apply_config_entry(config, trim(stripped.substr(0, eq)),
                               trim(stripped.substr(eq + 1)));
        } catch (const std::invalid_argument& err) {
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": " +
                                        err.what());
        }
    }
    return config;
}

inline void validate_config(const RunConfig& config) {
    if (!(config.omega > 0.0)) {
        throw std::invalid_argument("omega must be positive");
    }
    if (config.gammas.empty()) {
        throw std::invalid_argument("gamma list must not be empty");
    }
    for (double g : config.gammas) {
        if (!(g >= 0.0)) throw std::invalid_argument("gamma values must be nonnegative");
    }
    const double threshold = 0.5 * config.omega * config.omega;
    if (config.lambdas) {
        if (config.lambdas->empty()) {
            throw std::invalid_argument("lambda list must not be empty");
        }
        for (double l : *config.lambdas) {
            if (config.model == Model::HarmonicOscillator && l != 0.0) {
                throw std::invalid_argument("lambda applies to the moshinsky model only");
            }
            if (!(l >= 0.0) || l >= threshold) {
                throw std::invalid_argument("lambda values must satisfy 0 <= lambda < omega^2/2");
            }
        }
    }
    if (config.t_step && !(*config.t_step > 0.0)) {
        throw std::invalid_argument("t_step must be positive");
    }
    if (config.t_start && !(*config.t_start >= 0.0)) {
        throw std::invalid_argument("t_start must be nonnegative");
    }
    if (config.t_start && config.t_stop && !(*config.t_stop >= *config.t_start)) {
        throw std::invalid_argument("t_stop must not precede t_start");
    }
    if (!(config.grid_half_width > 0.0)) {
        throw std::invalid_argument("grid_half_width must be positive");
    }
    if (config.grid_points && (*config.grid_points < 3 || *config.grid_points % 2 == 0)) {
        throw std::invalid_argument("grid_points must be odd and at least 3");
    }
}

inline Grid1D resolve_grid(const RunConfig& config) {
    const int fallback = config.model == Model::HarmonicOscillator ? 2001 : 401;
    return Grid1D(config.grid_half_width, config.grid_points.value_or(fallback));
}

inline std::vector<double> resolve_lambdas(const RunConfig& config) {
    if (config.lambdas) return *config.lambdas;
    return {0.0};
}

// Default sweep over 19 couplings on [0, 0.9 omega^2/2], clear of the
// threshold where the relative motion unbinds.
inline std::vector<double> default_lambda_grid(double omega) {
    std::vector<double> lambdas(19);
    const double hi = 0.9 * 0.5 * omega * omega;
    for (int k = 0; k < 19; ++k) lambdas[k] = hi * k / 18.0;
    return lambdas;
}

inline std::vector<double> time_grid_from_range(double start, double stop, double step) {
    const auto count = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> times(count);
    for (int i = 0; i < count; ++i) times[i] = start + i * step;
    return times;
}

// Times for a run: an explicit range wins; otherwise time-sweep gets the
// dense default grid and the other commands a few representative instants.
inline std::vector<double> resolve_times(const RunConfig& config,
                                         const std::vector<double>& sparse_default) {
    const double pi = std::numbers::pi;
    if (config.t_start || config.t_stop || config.t_step) {
        return time_grid_from_range(config.t_start.value_or(0.0),
                                    config.t_stop.value_or(4.0 * pi),
                                    config.t_step.value_or(pi / 100.0));
    }
    return sparse_default;
}

inline std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

inline DensityMatrix2 sweep_coefficients(double t, double gamma, double lambda,
                                         const RunConfig& config) {
    const BathParams bath{gamma, config.regime};
    if (config.model == Model::HarmonicOscillator) {
        return coefficients_at(t, config.omega, bath);
    }
    return moshinsky_coefficients(t, MoshinskyParams{config.omega, lambda, bath});
}

// One row per (t, gamma, lambda) with every information measure.  Columns
// that do not apply to the one-particle model stay empty.  Returns 0, or 2
// if any row dips below an uncertainty bound.
inline int run_time_sweep(const RunConfig& config, std::ostream& os) {
    validate_config(config);
    const Grid1D grid = resolve_grid(config);
    const std::vector<double> lambdas = resolve_lambdas(config);
    const std::vector<double> times =
        resolve_times(config, time_grid_from_range(0.0, 4.0 * std::numbers::pi,
                                                   std::numbers::pi / 100.0));

    os << "# schema=oqsinfo.time-sweep.v1 model=" << model_name(config.model)
       << " regime=" << regime_name(config.regime) << "\n";
    os << "t[au],gamma[au],lambda[au],s_x[nats],s_p[nats],s_t[nats],s_x2[nats],s_p2[nats],"
          "s_T[nats],I_x[nats],I_p[nats],I_t[nats],margin_1p[nats],margin_2p[nats],bound_ok\n";

    bool violation = false;
    if (config.model == Model::HarmonicOscillator) {
        std::vector<HOWorkspace> workspaces;
        workspaces.reserve(config.gammas.size());
        for (double gamma : config.gammas) {
            workspaces.emplace_back(HOModel{{config.omega}, {gamma, config.regime}}, grid);
        }
        for (double t : times) {
            size_t w = 0;
            for (double gamma : config.gammas) {
                const InfoRecord rec = workspaces[w++].record(t);
                const BoundReport report = check_bounds(rec);
                violation = violation || !report.ok;
                os << csv_number(t) << ',' << csv_number(gamma) << ",,";
                os << csv_number(rec.s_x) << ',' << csv_number(rec.s_p) << ','
                   << csv_number(rec.s_t) << ",,,,,,,";
                os << csv_number(report.margin_one_particle) << ",,"
                   << (report.ok ? '1' : '0') << "\n";
            }
        }
    } else {
        std::vector<MoshinskyWorkspace> workspaces;
        workspaces.reserve(config.gammas.size() * lambdas.size());
        for (double gamma : config.gammas) {
            for (double lambda : lambdas) {
                workspaces.emplace_back(
                    MoshinskyParams{config.omega, lambda, {gamma, config.regime}}, grid);
            }
        }
        for (double t : times) {
            size_t w = 0;
            for (double gamma : config.gammas) {
                for (double lambda : lambdas) {
                    const InfoRecord rec = workspaces[w++].record(t);
                    const BoundReport report = check_bounds(rec);
                    violation = violation || !report.ok;
                    os << csv_number(t) << ',' << csv_number(gamma) << ','
                       << csv_number(lambda) << ',';
                    os << csv_number(rec.s_x) << ',' << csv_number(rec.s_p) << ','
                       << csv_number(rec.s_t) << ',';
                    os << csv_number(*rec.s_x2) << ',' << csv_number(*rec.s_p2) << ','
                       << csv_number(*rec.s_T) << ',';
                    os << csv_number(*rec.I_x) << ',' << csv_number(*rec.I_p) << ','
                       << csv_number(*rec.I_t) << ',';
                    os << csv_number(report.margin_one_particle) << ','
                       << csv_number(*report.margin_two_particle) << ','
                       << (report.ok ? '1' : '0') << "\n";
                }
            }
        }
    }
    return violation ? 2 : 0;
}

// Entropy sums against the coupling at a few instants; pair model only.
inline int run_lambda_sweep(const RunConfig& config, std::ostream& os) {
    validate_config(config);
    if (config.model != Model::Moshinsky) {
        throw std::invalid_argument("lambda-sweep needs the moshinsky model");
    }
    if (config.gammas.size() != 1) {
        throw std::invalid_argument("lambda-sweep uses a single gamma value");
    }
    const double gamma = config.gammas.front();
    const Grid1D grid = resolve_grid(config);
    const std::vector<double> lambdas =
        config.lambdas ? *config.lambdas : default_lambda_grid(config.omega);
    const double pi = std::numbers::pi;
    const std::vector<double> times = resolve_times(config, {0.5 * pi, pi, 2.0 * pi});

    os << "# schema=oqsinfo.lambda-sweep.v1 model=moshinsky regime="
       << regime_name(config.regime) << " gamma=" << csv_number(gamma) << "\n";
    os << "t[au],lambda[au],s_t[nats],s_T[nats]\n";

    std::vector<MoshinskyWorkspace> workspaces;
    workspaces.reserve(lambdas.size());
    for (double lambda : lambdas) {
        workspaces.emplace_back(MoshinskyParams{config.omega, lambda, {gamma, config.regime}},
                                grid);
    }
    bool violation = false;
    for (double t : times) {
        for (size_t k = 0; k < lambdas.size(); ++k) {
            const InfoRecord rec = workspaces[k].record(t);
            violation = violation || !check_bounds(rec).ok;
            os << csv_number(t) << ',' << csv_number(lambdas[k]) << ','
               << csv_number(rec.s_t) << ',' << csv_number(*rec.s_T) << "\n";
        }
    }
    return violation ? 2 : 0;
}

// Sampled one-particle position densities, one column per requested
// instant, stacked by (gamma, lambda).
inline int emit_density_snapshots(const RunConfig& config, std::ostream& os) {
    validate_config(config);
    const Grid1D grid = resolve_grid(config);
    const std::vector<double> lambdas = resolve_lambdas(config);
    const double pi = std::numbers::pi;
    const std::vector<double> times = resolve_times(config, {0.0, 0.5 * pi, pi, 2.0 * pi});

    os << "# schema=oqsinfo.density.v1 model=" << model_name(config.model)
       << " regime=" << regime_name(config.regime) << "\n";
    os << "gamma[au],lambda[au],x[au]";
    for (double t : times) {
        os << ",n[t=" << csv_number(t) << "][1/au]";
    }
    os << "\n";

    for (double gamma : config.gammas) {
        for (double lambda : lambdas) {
            std::vector<std::vector<double>> columns;
            columns.reserve(times.size());
            if (config.model == Model::HarmonicOscillator) {
                const HOWorkspace ws(HOModel{{config.omega}, {gamma, config.regime}}, grid);
                for (double t : times) columns.push_back(ws.density_x(t).values);
            } else {
                const MoshinskyWorkspace ws(
                    MoshinskyParams{config.omega, lambda, {gamma, config.regime}}, grid);
                for (double t : times) columns.push_back(ws.reduced_x(t).values);
            }
            for (int i = 0; i < grid.points; ++i) {
                os << csv_number(gamma) << ',';
                if (config.model == Model::Moshinsky) os << csv_number(lambda);
                os << ',' << csv_number(grid.point(i));
                for (const auto& column : columns) os << ',' << csv_number(column[i]);
                os << "\n";
            }
        }
    }
    return 0;
}

}  // namespace oqsinfo
