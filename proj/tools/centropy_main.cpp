// centropy_main.cpp
// Command line front end: cluster-entropy analysis of time series.
//
// Exit codes: 0 success, 1 usage errors, 2 malformed input data,
// 3 numerical failures.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "centropy/csv.hpp"
#include "centropy/entropy.hpp"
#include "centropy/errors.hpp"
#include "centropy/fbm.hpp"
#include "centropy/market.hpp"
#include "centropy/pipeline.hpp"
#include "centropy/portfolio.hpp"
#include "centropy/weights.hpp"

namespace {

struct GlobalOptions {
    std::uint64_t seed = 42;
    bool seed_set = false;
    std::string out_dir;
    std::string config_path;
};

std::string resolve_path(const GlobalOptions& global, const std::string& path) {
    if (global.out_dir.empty() || path.empty()) {
        return path;
    }
    if (path.front() == '/') {
        return path;
    }
    return global.out_dir + "/" + path;
}

// ----------------------------------------------------------------------------
// fbm
// ----------------------------------------------------------------------------

struct FbmArgs {
    double hurst = 0.5;
    std::size_t length = 0;
    std::string out;
};

void run_fbm(const GlobalOptions& global, const FbmArgs& args) {
    centropy::FbmSpec spec;
    spec.hurst = args.hurst;
    spec.length = args.length;
    spec.seed = global.seed;
    const centropy::RegularSeries path = centropy::generate_fbm(spec);
    centropy::write_text_file(resolve_path(global, args.out),
                              centropy::render_series_csv(path));
    std::cout << "fbm: wrote " << path.size() << " samples (hurst "
              << centropy::format_brief(args.hurst) << ", seed " << global.seed
              << ") to " << args.out << "\n";
}

// ----------------------------------------------------------------------------
// volatility
// ----------------------------------------------------------------------------

struct VolatilityArgs {
    std::string in;
    std::int64_t delta = 1;
    std::int64_t window = 180;
    std::string out;
};

void run_volatility(const GlobalOptions& global, const VolatilityArgs& args) {
    if (args.window % args.delta != 0 || args.window / args.delta < 2) {
        throw CLI::ValidationError(
            "--window must be a multiple of --delta covering at least 2 "
            "samples");
    }
    const centropy::TickSeries ticks = centropy::load_ticks(args.in);
    const centropy::RegularSeries prices =
        centropy::resample(ticks, args.delta);
    const centropy::RegularSeries returns = centropy::log_returns(prices);
    const centropy::RegularSeries volatility = centropy::realized_volatility(
        returns, static_cast<std::size_t>(args.window / args.delta));
    centropy::write_text_file(resolve_path(global, args.out),
                              centropy::render_series_csv(volatility));
    std::cout << "volatility: " << volatility.size() << " samples (window "
              << args.window << " s) to " << args.out << "\n";
}

// ----------------------------------------------------------------------------
// clusters
// ----------------------------------------------------------------------------

struct ClustersArgs {
    std::string in;
    std::vector<std::size_t> windows{50, 100, 150, 200};
    std::string out;
    bool per_window = false;
};

void run_clusters(const GlobalOptions& global, const ClustersArgs& args) {
    const centropy::RegularSeries series = centropy::parse_series_csv(
        centropy::read_text_file(args.in), args.in);
    std::vector<centropy::ClusterPartition> partitions;
    for (std::size_t window : args.windows) {
        partitions.push_back(
            centropy::segment_clusters(series.values, window));
    }
    const centropy::DurationDistribution dist =
        centropy::duration_distribution(
            partitions, args.per_window
                            ? centropy::Normalization::per_window
                            : centropy::Normalization::joint);
    centropy::write_text_file(resolve_path(global, args.out),
                              centropy::render_distribution_csv(dist));
    std::cout << "clusters: " << dist.total_clusters << " clusters over "
              << args.windows.size() << " windows to " << args.out << "\n";
}

// ----------------------------------------------------------------------------
// entropy
// ----------------------------------------------------------------------------

struct EntropyArgs {
    std::string kind = "kl";
    std::string p_path;
    std::string q_path;
    std::string out;
    double max_dropped_mass = 0.01;
};

void run_entropy(const GlobalOptions& global, const EntropyArgs& args) {
    const centropy::DurationDistribution p = centropy::parse_distribution_csv(
        centropy::read_text_file(args.p_path), args.p_path);
    centropy::EntropyProfile profile;
    if (args.kind == "kl") {
        if (args.q_path.empty()) {
            throw CLI::ValidationError("--q is required for --kind kl");
        }
        const centropy::DurationDistribution q =
            centropy::parse_distribution_csv(
                centropy::read_text_file(args.q_path), args.q_path);
        centropy::KlOptions opts;
        opts.max_dropped_mass = args.max_dropped_mass;
        profile = centropy::kl_cluster_entropy(p, q, opts);
    } else if (args.kind == "shannon") {
        profile = centropy::shannon_cluster_entropy(p);
    } else {
        throw CLI::ValidationError("--kind must be 'kl' or 'shannon'");
    }
    centropy::write_text_file(resolve_path(global, args.out),
                              centropy::render_profile_csv(profile));
    std::cout << "entropy: " << args.kind << " aggregate "
              << centropy::format_brief(profile.aggregate) << " over "
              << profile.components.size() << " cells to " << args.out
              << "\n";
}

// ----------------------------------------------------------------------------
// weights
// ----------------------------------------------------------------------------

struct WeightsArgs {
    std::string scheme = "kl";
    std::string indices_path;
    std::string out;
    std::optional<double> epsilon_floor;
};

void run_weights(const GlobalOptions& global, const WeightsArgs& args) {
    std::vector<std::string> assets;
    std::vector<double> indices;
    centropy::parse_indices_csv(centropy::read_text_file(args.indices_path),
                                args.indices_path, assets, indices);
    centropy::WeightVector weights;
    if (args.scheme == "kl") {
        centropy::WeightOptions opts;
        if (args.epsilon_floor) {
            opts.epsilon_floor = *args.epsilon_floor;
        }
        weights = centropy::kl_weights(assets, indices, opts);
    } else if (args.scheme == "shannon") {
        weights = centropy::shannon_weights(assets, indices);
    } else if (args.scheme == "uniform") {
        weights = centropy::uniform_weights(assets);
    } else {
        throw CLI::ValidationError(
            "--scheme must be 'kl', 'shannon', or 'uniform'");
    }
    centropy::write_text_file(resolve_path(global, args.out),
                              centropy::render_weights_csv(weights));
    std::cout << "weights: " << args.scheme << " over " << assets.size()
              << " assets to " << args.out << "\n";
}

// ----------------------------------------------------------------------------
// portfolio
// ----------------------------------------------------------------------------

struct PortfolioArgs {
    std::string panel_path;
    std::string weights_path;
    std::string strategy = "lazy";
    double wealth = 500000.0;
    std::string out;
    std::string profit_out;
};

void run_portfolio(const GlobalOptions& global, const PortfolioArgs& args) {
    const centropy::PricePanel panel = centropy::parse_panel_csv(
        centropy::read_text_file(args.panel_path), args.panel_path);
    const centropy::Strategy strategy =
        centropy::strategy_from_string(args.strategy);

    centropy::WealthTrajectory trajectory;
    const std::string weight_text =
        centropy::read_text_file(args.weights_path);
    if (strategy == centropy::Strategy::lazy) {
        const centropy::WeightVector weights = centropy::parse_weights_csv(
            weight_text, args.weights_path, centropy::WeightScheme::uniform);
        trajectory = centropy::simulate_lazy(panel, weights, args.wealth);
    } else {
        const std::vector<centropy::WeightVector> monthly =
            centropy::parse_weights_by_month_csv(
                weight_text, args.weights_path,
                centropy::WeightScheme::uniform);
        trajectory = centropy::simulate_active(panel, monthly, args.wealth);
    }
    centropy::write_text_file(resolve_path(global, args.out),
                              centropy::render_trajectory_csv(trajectory));
    if (!args.profit_out.empty()) {
        centropy::write_text_file(
            resolve_path(global, args.profit_out),
            centropy::render_profit_csv(
                centropy::profit_report(trajectory, args.wealth)));
    }
    std::cout << "portfolio: " << args.strategy << " over "
              << trajectory.months() << " months, final total "
              << centropy::format_brief(trajectory.totals.back()) << " to "
              << args.out << "\n";
}

// ----------------------------------------------------------------------------
// run
// ----------------------------------------------------------------------------

void run_pipeline_command(const GlobalOptions& global) {
    if (global.config_path.empty()) {
        throw CLI::ValidationError("run requires --config");
    }
    centropy::RunConfig cfg = centropy::load_run_config(global.config_path);
    if (global.seed_set) {
        cfg.seed = global.seed;
    }
    if (!global.out_dir.empty()) {
        cfg.out_dir = global.out_dir;
    }
    const centropy::RunResult result = centropy::run_pipeline(cfg);
    std::cout << "run: wrote " << result.files.size()
              << " artifacts and manifest " << result.manifest_path << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cluster-entropy analysis of time series"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions global;
    app.add_option("--seed", global.seed, "Seed for stochastic stages")
        ->each([&global](const std::string&) { global.seed_set = true; });
    app.add_option("--out-dir", global.out_dir,
                   "Directory that relative output paths resolve against");
    app.add_option("--config", global.config_path,
                   "key=value configuration file (run subcommand)");

    FbmArgs fbm_args;
    CLI::App* fbm = app.add_subcommand(
        "fbm", "Generate a fractional Brownian motion path");
    fbm->add_option("--hurst", fbm_args.hurst, "Hurst exponent in (0, 1)")
        ->required();
    fbm->add_option("--length", fbm_args.length, "Number of samples")
        ->required();
    fbm->add_option("--out", fbm_args.out, "Output series CSV")->required();

    VolatilityArgs volatility_args;
    CLI::App* volatility = app.add_subcommand(
        "volatility", "Rolling volatility of a tick file");
    volatility->add_option("--in", volatility_args.in, "Tick CSV input")
        ->required();
    volatility->add_option("--delta", volatility_args.delta,
                           "Resampling grid step, seconds");
    volatility->add_option("--window", volatility_args.window,
                           "Rolling window, seconds");
    volatility->add_option("--out", volatility_args.out, "Output series CSV")
        ->required();

    ClustersArgs clusters_args;
    CLI::App* clusters = app.add_subcommand(
        "clusters", "Cluster-duration distribution of a series");
    clusters->add_option("--in", clusters_args.in, "Series CSV input")
        ->required();
    clusters->add_option("--windows", clusters_args.windows,
                         "Moving-average windows")
        ->delimiter(',');
    clusters->add_option("--out", clusters_args.out,
                         "Output distribution CSV")
        ->required();
    clusters->add_flag("--per-window", clusters_args.per_window,
                       "Normalize within each window instead of jointly");

    EntropyArgs entropy_args;
    CLI::App* entropy = app.add_subcommand(
        "entropy", "Entropy profile of a duration distribution");
    entropy->add_option("--kind", entropy_args.kind, "'kl' or 'shannon'");
    entropy->add_option("--p", entropy_args.p_path,
                        "Input distribution CSV")
        ->required();
    entropy->add_option("--q", entropy_args.q_path,
                        "Reference distribution CSV (kl only)");
    entropy->add_option("--max-dropped-mass", entropy_args.max_dropped_mass,
                        "Largest tolerated off-support input mass");
    entropy->add_option("--out", entropy_args.out, "Output profile CSV")
        ->required();

    WeightsArgs weights_args;
    CLI::App* weights = app.add_subcommand(
        "weights", "Portfolio weights from diversity indices");
    weights->add_option("--scheme", weights_args.scheme,
                        "'kl', 'shannon', or 'uniform'");
    weights->add_option("--indices", weights_args.indices_path,
                        "Index CSV input")
        ->required();
    weights->add_option("--out", weights_args.out, "Output weights CSV")
        ->required();
    double epsilon_floor_value = 1e-12;
    CLI::Option* floor_option = weights->add_option(
        "--epsilon-floor", epsilon_floor_value,
        "Floor for zero indices (reciprocal scheme)")
        ->expected(0, 1);
    weights->callback([&] {
        if (floor_option->count() > 0) {
            weights_args.epsilon_floor = epsilon_floor_value;
        }
    });

    PortfolioArgs portfolio_args;
    CLI::App* portfolio = app.add_subcommand(
        "portfolio", "Simulate a monthly portfolio on a price panel");
    portfolio->add_option("--panel", portfolio_args.panel_path,
                          "Price panel CSV")
        ->required();
    portfolio->add_option("--weights", portfolio_args.weights_path,
                          "Weights CSV (per-month layout for --strategy "
                          "active)")
        ->required();
    portfolio->add_option("--strategy", portfolio_args.strategy,
                          "'lazy' or 'active'");
    portfolio->add_option("--wealth", portfolio_args.wealth,
                          "Initial wealth");
    portfolio->add_option("--out", portfolio_args.out,
                          "Output trajectory CSV")
        ->required();
    portfolio->add_option("--profit-out", portfolio_args.profit_out,
                          "Optional profit report CSV");

    CLI::App* run = app.add_subcommand(
        "run", "Execute the full pipeline from a configuration file");

    try {
        app.parse(argc, argv);
        if (fbm->parsed()) {
            run_fbm(global, fbm_args);
        } else if (volatility->parsed()) {
            run_volatility(global, volatility_args);
        } else if (clusters->parsed()) {
            run_clusters(global, clusters_args);
        } else if (entropy->parsed()) {
            run_entropy(global, entropy_args);
        } else if (weights->parsed()) {
            run_weights(global, weights_args);
        } else if (portfolio->parsed()) {
            run_portfolio(global, portfolio_args);
        } else if (run->parsed()) {
            run_pipeline_command(global);
        }
        return 0;
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::CallForAllHelp& help) {
        return app.exit(help);
    } catch (const CLI::CallForVersion& version) {
        return app.exit(version);
    } catch (const CLI::ParseError& error) {
        app.exit(error);
        return 1;
    } catch (const std::invalid_argument& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 1;
    } catch (const centropy::data_error& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 2;
    } catch (const centropy::numeric_error& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 3;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 3;
    }
}
