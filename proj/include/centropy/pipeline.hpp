// pipeline.hpp
// End-to-end analysis run: market data (or prepared series) in, cluster
// statistics, entropy profiles, diversity weights, and portfolio
// simulations out, plus a deterministic run manifest.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "centropy/clusters.hpp"

namespace centropy {

// One input series for a run.  Tick inputs go through the full chain
// (resample -> returns -> rolling volatility -> clusters); series inputs
// are treated as ready-made level series and enter at the clustering step.
struct AssetInput {
    std::string name;
    std::string path;
    bool is_ticks = true;
};

// Flat key=value run configuration.  Unknown keys are rejected; CLI flags
// override file values.
struct RunConfig {
    std::uint64_t seed = 42;
    std::string out_dir = ".";

    // Reference model for the relative-entropy stage.
    double hurst = 0.5;
    std::size_t ensemble = 10;

    // Cluster segmentation.
    WindowSet windows{50, 100, 150, 200};
    Normalization normalization = Normalization::joint;

    // Market-data processing.
    std::int64_t delta_seconds = 1;
    std::vector<std::int64_t> volatility_windows{180, 360, 720};

    // Analysis horizons, in periods of `period_seconds` from the start of
    // each series (defaults to 30-day months).
    std::vector<std::size_t> horizons{1};
    std::int64_t period_seconds = 2592000;

    // Entropy and weight options.
    double max_dropped_mass = 0.01;
    double epsilon_floor = 0.0;

    // Portfolio stage (runs when a price panel is configured).
    double initial_wealth = 500000.0;
    std::string panel_path;

    std::vector<AssetInput> assets;
};

// Parses the key=value configuration format ('#' comments, blank lines
// allowed; `asset.<name>.ticks` / `asset.<name>.series` declare inputs).
// Raises data_error with line numbers on malformed content.
RunConfig parse_run_config(const std::string& text, const std::string& origin);

RunConfig load_run_config(const std::string& path);

// Paths (relative to out_dir) of everything a run produced.
struct RunResult {
    std::vector<std::string> files;
    std::string manifest_path;
};

// Executes the full pipeline.  Outputs are written under cfg.out_dir; the
// manifest (sorted key=value lines with a config echo and a content digest
// per file) is written last.  Any stage error removes the files written so
// far and is rethrown with the stage name; reruns with identical inputs
// and configuration produce byte-identical artifacts.
RunResult run_pipeline(const RunConfig& cfg);

// FNV-1a 64-bit digest, printed as 16 hex characters in manifests.
std::uint64_t fnv1a64(const std::string& bytes);

} // namespace centropy
