#include "svie/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "svie/experiment.hpp"
#include "svie/io.hpp"
#include "svie/noise.hpp"
#include "svie/problem.hpp"
#include "svie/scheme.hpp"

namespace svie {

namespace {

std::ofstream open_output(const std::string& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    return file;
}

std::string join_levels(const std::vector<std::int64_t>& levels) {
    std::ostringstream out;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (i) out << ',';
        out << levels[i];
    }
    return out.str();
}

void echo_settings(std::ostream& out, const ConvergenceSettings& s,
                   int threads) {
    out << "problem = " << s.problem << '\n'
        << "alpha = " << s.alpha << '\n'
        << "beta = " << s.beta << '\n'
        << "levels = " << join_levels(s.levels) << '\n'
        << "ref = " << s.ref << '\n'
        << "paths = " << s.paths << '\n'
        << "seed = " << s.seed << '\n'
        << "scheme = " << s.scheme << '\n'
        << "out = " << s.out << '\n'
        << "plot = " << (s.plot.empty() ? "(none)" : s.plot) << '\n'
        << "threads = " << threads << '\n';
}

int run_simulate(const std::string& problem_name, double alpha, double beta,
                 std::int64_t n, std::int64_t refine, std::uint64_t seed,
                 std::int64_t path_index, const std::string& scheme_str,
                 const std::string& out_path, std::ostream& out) {
    const SvieProblem problem = problem_by_name(problem_name, alpha, beta);
    const GridSpec grid(problem.horizon, n, refine);
    const FineNoise noise = generate_fine_noise(seed, path_index, grid, {n});
    const Trajectory trajectory =
        simulate(problem, grid, noise, scheme_from_name(scheme_str));

    auto file = open_output(out_path);
    write_trajectory_csv(file, trajectory, grid);
    out << "wrote " << out_path << " (" << trajectory.values.size()
        << " nodes)\n";
    return 0;
}

int run_convergence(const ConvergenceSettings& s, int threads,
                    std::ostream& out) {
    const SvieProblem problem = problem_by_name(s.problem, s.alpha, s.beta);

    echo_settings(out, s, threads);

    StrongErrorOptions options;
    options.scheme = scheme_from_name(s.scheme);
    options.threads = threads;
    const ErrorTable table =
        strong_error(problem, s.levels, s.ref, s.paths, s.seed, options);
    const RateEstimate rate =
        estimate_rate(table, problem.alpha, problem.beta);

    {
        auto file = open_output(s.out);
        write_error_table_csv(file, table);
    }
    out << "wrote " << s.out << '\n';

    if (!s.plot.empty()) {
        auto file = open_output(s.plot);
        write_convergence_svg(file, table, rate, s.scheme);
        out << "wrote " << s.plot << '\n';
    }

    out << "empirical slope = " << format_decimal(rate.slope)
        << " (theoretical " << format_decimal(rate.theoretical) << ", r^2 "
        << format_decimal(rate.r_squared) << ")\n";
    return 0;
}

int run_rate(const std::string& in_path, double alpha, double beta,
             std::ostream& out) {
    if (!(alpha > 0.0) || !(alpha < 0.5)) {
        throw std::invalid_argument("alpha must lie in (0, 0.5)");
    }
    if (!(beta > 0.0) || !(beta < 0.5)) {
        throw std::invalid_argument("beta must lie in (0, 0.5)");
    }
    std::ifstream file(in_path);
    if (!file) {
        throw std::runtime_error("cannot open input file: " + in_path);
    }
    const ErrorTable table = read_error_table_csv(file);
    const RateEstimate rate =
        estimate_rate(table, KernelExponent(alpha), KernelExponent(beta));
    out << "slope = " << format_decimal(rate.slope) << '\n'
        << "intercept = " << format_decimal(rate.intercept) << '\n'
        << "r_squared = " << format_decimal(rate.r_squared) << '\n'
        << "theoretical = " << format_decimal(rate.theoretical) << '\n';
    return 0;
}

} // namespace

ConvergenceSettings load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config file: " + path);
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error("malformed JSON in " + path + ": " + e.what());
    }
    if (!doc.is_object()) {
        throw std::runtime_error("config must be a JSON object");
    }

    ConvergenceSettings settings;
    try {
        for (const auto& [key, value] : doc.items()) {
            if (key == "problem") {
                settings.problem = value.get<std::string>();
            } else if (key == "alpha") {
                settings.alpha = value.get<double>();
                settings.has_alpha = true;
            } else if (key == "beta") {
                settings.beta = value.get<double>();
                settings.has_beta = true;
            } else if (key == "levels") {
                settings.levels = value.get<std::vector<std::int64_t>>();
            } else if (key == "ref") {
                settings.ref = value.get<std::int64_t>();
            } else if (key == "paths") {
                settings.paths = value.get<std::int64_t>();
            } else if (key == "seed") {
                settings.seed = value.get<std::uint64_t>();
            } else if (key == "scheme") {
                settings.scheme = value.get<std::string>();
            } else if (key == "out") {
                settings.out = value.get<std::string>();
            } else if (key == "plot") {
                settings.plot = value.get<std::string>();
            } else {
                throw std::runtime_error("unknown config key: " + key);
            }
        }
    } catch (const nlohmann::json::type_error& e) {
        throw std::runtime_error("bad value type in " + path + ": " + e.what());
    }
    return settings;
}

int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"strong approximation of singular-kernel stochastic Volterra "
                 "equations"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "run one path of one scheme");
    std::string sim_problem = "paper-sin-cos";
    double sim_alpha = 0.0, sim_beta = 0.0;
    std::int64_t sim_n = 256, sim_refine = 1, sim_path = 0;
    std::uint64_t sim_seed = 1;
    std::string sim_scheme = "rmilstein", sim_out = "traj.csv";
    sim->add_option("--problem", sim_problem, "builtin problem name");
    sim->add_option("--alpha", sim_alpha, "drift kernel exponent")->required();
    sim->add_option("--beta", sim_beta, "diffusion kernel exponent")->required();
    sim->add_option("--n", sim_n, "coarse step count");
    sim->add_option("--refine", sim_refine, "fine cells per coarse cell");
    sim->add_option("--seed", sim_seed, "master seed");
    sim->add_option("--path-index", sim_path, "path index within the seed");
    sim->add_option("--scheme", sim_scheme, "rmilstein | rem | em");
    sim->add_option("--out", sim_out, "trajectory CSV path");

    // convergence
    auto* conv = app.add_subcommand(
        "convergence", "coupled-path strong-error study across step sizes");
    ConvergenceSettings settings;
    std::string config_path;
    int threads = 1;
    conv->add_option("--config", config_path, "JSON config file");
    auto* conv_problem = conv->add_option("--problem", settings.problem);
    auto* conv_alpha = conv->add_option("--alpha", settings.alpha);
    auto* conv_beta = conv->add_option("--beta", settings.beta);
    auto* conv_levels =
        conv->add_option("--levels", settings.levels, "comma-separated coarse step counts")
            ->delimiter(',');
    auto* conv_ref = conv->add_option("--ref", settings.ref);
    auto* conv_paths = conv->add_option("--paths", settings.paths);
    auto* conv_seed = conv->add_option("--seed", settings.seed);
    auto* conv_scheme = conv->add_option("--scheme", settings.scheme);
    auto* conv_out = conv->add_option("--out", settings.out);
    auto* conv_plot = conv->add_option("--plot", settings.plot, "SVG log-log plot path");
    conv->add_option("--threads", threads, "worker threads over paths");

    // rate
    auto* rate = app.add_subcommand("rate", "log-log rate fit of an error CSV");
    std::string rate_in;
    double rate_alpha = 0.0, rate_beta = 0.0;
    rate->add_option("--in", rate_in, "error CSV path")->required();
    rate->add_option("--alpha", rate_alpha)->required();
    rate->add_option("--beta", rate_beta)->required();

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (sim->parsed()) {
            return run_simulate(sim_problem, sim_alpha, sim_beta, sim_n,
                                sim_refine, sim_seed, sim_path, sim_scheme,
                                sim_out, out);
        }
        if (conv->parsed()) {
            // Config file first, flags on top.
            if (!config_path.empty()) {
                ConvergenceSettings file_settings = load_config(config_path);
                if (conv_problem->count() == 0) settings.problem = file_settings.problem;
                if (conv_alpha->count() == 0 && file_settings.has_alpha) {
                    settings.alpha = file_settings.alpha;
                    settings.has_alpha = true;
                }
                if (conv_beta->count() == 0 && file_settings.has_beta) {
                    settings.beta = file_settings.beta;
                    settings.has_beta = true;
                }
                if (conv_levels->count() == 0) settings.levels = file_settings.levels;
                if (conv_ref->count() == 0) settings.ref = file_settings.ref;
                if (conv_paths->count() == 0) settings.paths = file_settings.paths;
                if (conv_seed->count() == 0) settings.seed = file_settings.seed;
                if (conv_scheme->count() == 0) settings.scheme = file_settings.scheme;
                if (conv_out->count() == 0) settings.out = file_settings.out;
                if (conv_plot->count() == 0) settings.plot = file_settings.plot;
            }
            if (conv_alpha->count() > 0) settings.has_alpha = true;
            if (conv_beta->count() > 0) settings.has_beta = true;
            if (!settings.has_alpha || !settings.has_beta) {
                err << "error: alpha and beta are required (flag or config)\n";
                return 2;
            }
            return run_convergence(settings, threads, out);
        }
        return run_rate(rate_in, rate_alpha, rate_beta, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    }
}

} // namespace svie
