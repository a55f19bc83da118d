// pipeline.cpp

#include "centropy/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "centropy/csv.hpp"
#include "centropy/entropy.hpp"
#include "centropy/errors.hpp"
#include "centropy/fbm.hpp"
#include "centropy/market.hpp"
#include "centropy/portfolio.hpp"
#include "centropy/weights.hpp"

namespace fs = std::filesystem;

namespace centropy {

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t hash = 14695981039346656037ULL;
    for (unsigned char byte : bytes) {
        hash ^= static_cast<std::uint64_t>(byte);
        hash *= 1099511628211ULL;
    }
    return hash;
}

// ============================================================================
// Configuration parsing
// ============================================================================

namespace {

std::string trim(const std::string& text) {
    std::size_t begin = text.find_first_not_of(" \t");
    if (begin == std::string::npos) {
        return "";
    }
    std::size_t end = text.find_last_not_of(" \t");
    return text.substr(begin, end - begin + 1);
}

[[noreturn]] void config_fail(const std::string& origin, std::size_t line,
                              const std::string& message) {
    throw data_error(origin + ", line " + std::to_string(line) + ": " +
                     message);
}

template <typename T>
T parse_number(const std::string& origin, std::size_t line,
               const std::string& key, const std::string& value) {
    T out{};
    const char* first = value.data();
    const char* last = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (value.empty() || ec != std::errc() || ptr != last) {
        config_fail(origin, line, "malformed value for " + key + ": '" +
                                      value + "'");
    }
    return out;
}

template <typename T>
std::vector<T> parse_number_list(const std::string& origin, std::size_t line,
                                 const std::string& key,
                                 const std::string& value) {
    std::vector<T> out;
    std::size_t begin = 0;
    while (begin <= value.size()) {
        std::size_t comma = value.find(',', begin);
        if (comma == std::string::npos) {
            comma = value.size();
        }
        out.push_back(parse_number<T>(origin, line, key,
                                      trim(value.substr(begin, comma - begin))));
        begin = comma + 1;
    }
    return out;
}

template <typename T>
std::string join_list(const std::vector<T>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += std::to_string(values[i]);
    }
    return out;
}

} // namespace

RunConfig parse_run_config(const std::string& text, const std::string& origin) {
    RunConfig cfg;
    std::istringstream stream(text);
    std::string raw;
    std::size_t line_number = 0;
    std::set<std::string> asset_names;

    while (std::getline(stream, raw)) {
        ++line_number;
        if (!raw.empty() && raw.back() == '\r') {
            raw.pop_back();
        }
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) {
            raw.erase(hash);
        }
        const std::string line = trim(raw);
        if (line.empty()) {
            continue;
        }
        const std::size_t equals = line.find('=');
        if (equals == std::string::npos) {
            config_fail(origin, line_number, "expected key=value");
        }
        const std::string key = trim(line.substr(0, equals));
        const std::string value = trim(line.substr(equals + 1));
        if (key.empty()) {
            config_fail(origin, line_number, "empty key");
        }

        if (key == "seed") {
            cfg.seed = parse_number<std::uint64_t>(origin, line_number, key, value);
        } else if (key == "out_dir") {
            cfg.out_dir = value;
        } else if (key == "hurst") {
            cfg.hurst = parse_number<double>(origin, line_number, key, value);
        } else if (key == "ensemble") {
            cfg.ensemble = parse_number<std::size_t>(origin, line_number, key, value);
        } else if (key == "windows") {
            cfg.windows = parse_number_list<std::size_t>(origin, line_number, key, value);
        } else if (key == "normalization") {
            if (value == "joint") {
                cfg.normalization = Normalization::joint;
            } else if (value == "per_window") {
                cfg.normalization = Normalization::per_window;
            } else {
                config_fail(origin, line_number,
                            "normalization must be 'joint' or 'per_window'");
            }
        } else if (key == "delta_seconds") {
            cfg.delta_seconds = parse_number<std::int64_t>(origin, line_number, key, value);
        } else if (key == "volatility_windows") {
            cfg.volatility_windows =
                parse_number_list<std::int64_t>(origin, line_number, key, value);
        } else if (key == "horizons") {
            cfg.horizons = parse_number_list<std::size_t>(origin, line_number, key, value);
        } else if (key == "period_seconds") {
            cfg.period_seconds = parse_number<std::int64_t>(origin, line_number, key, value);
        } else if (key == "max_dropped_mass") {
            cfg.max_dropped_mass = parse_number<double>(origin, line_number, key, value);
        } else if (key == "epsilon_floor") {
            cfg.epsilon_floor = parse_number<double>(origin, line_number, key, value);
        } else if (key == "initial_wealth") {
            cfg.initial_wealth = parse_number<double>(origin, line_number, key, value);
        } else if (key == "panel") {
            cfg.panel_path = value;
        } else if (key.rfind("asset.", 0) == 0) {
            const std::size_t dot = key.rfind('.');
            const std::string name = key.substr(6, dot - 6);
            const std::string kind = key.substr(dot + 1);
            if (name.empty() || dot <= 6) {
                config_fail(origin, line_number, "malformed asset key: " + key);
            }
            if (kind != "ticks" && kind != "series") {
                config_fail(origin, line_number,
                            "asset kind must be 'ticks' or 'series': " + key);
            }
            if (value.empty()) {
                config_fail(origin, line_number, "empty path for " + key);
            }
            if (!asset_names.insert(name).second) {
                config_fail(origin, line_number, "duplicate asset: " + name);
            }
            cfg.assets.push_back(AssetInput{name, value, kind == "ticks"});
        } else {
            config_fail(origin, line_number, "unknown key: " + key);
        }
    }
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    return parse_run_config(read_text_file(path), path);
}

// ============================================================================
// Pipeline execution
// ============================================================================

namespace {

void validate_config(const RunConfig& cfg) {
    if (cfg.out_dir.empty()) {
        throw std::invalid_argument("run: out_dir must be set");
    }
    if (cfg.assets.empty() && cfg.panel_path.empty()) {
        throw std::invalid_argument("run: no assets and no panel configured");
    }
    if (!(cfg.hurst > 0.0) || !(cfg.hurst < 1.0)) {
        throw std::invalid_argument("run: hurst must lie inside (0, 1)");
    }
    if (cfg.ensemble < 1) {
        throw std::invalid_argument("run: ensemble must be >= 1");
    }
    if (cfg.windows.empty()) {
        throw std::invalid_argument("run: windows must be non-empty");
    }
    for (std::size_t i = 0; i < cfg.windows.size(); ++i) {
        if (cfg.windows[i] < 2) {
            throw std::invalid_argument("run: windows must be >= 2");
        }
        if (i > 0 && cfg.windows[i] <= cfg.windows[i - 1]) {
            throw std::invalid_argument(
                "run: windows must be strictly increasing");
        }
    }
    if (cfg.delta_seconds < 1) {
        throw std::invalid_argument("run: delta_seconds must be >= 1");
    }
    for (std::int64_t window : cfg.volatility_windows) {
        if (window % cfg.delta_seconds != 0 ||
            window / cfg.delta_seconds < 2) {
            throw std::invalid_argument(
                "run: volatility window " + std::to_string(window) +
                " must be a multiple of delta_seconds covering >= 2 samples");
        }
    }
    if (cfg.horizons.empty()) {
        throw std::invalid_argument("run: horizons must be non-empty");
    }
    for (std::size_t i = 0; i < cfg.horizons.size(); ++i) {
        if (cfg.horizons[i] < 1) {
            throw std::invalid_argument("run: horizons must be >= 1");
        }
        if (i > 0 && cfg.horizons[i] <= cfg.horizons[i - 1]) {
            throw std::invalid_argument(
                "run: horizons must be strictly increasing");
        }
    }
    if (cfg.period_seconds < 1) {
        throw std::invalid_argument("run: period_seconds must be >= 1");
    }
    if (!(cfg.max_dropped_mass >= 0.0) || !(cfg.max_dropped_mass <= 1.0)) {
        throw std::invalid_argument("run: max_dropped_mass must lie in [0, 1]");
    }
    if (cfg.epsilon_floor < 0.0) {
        throw std::invalid_argument("run: epsilon_floor must be >= 0");
    }
    if (!(cfg.initial_wealth > 0.0)) {
        throw std::invalid_argument("run: initial_wealth must be positive");
    }
    for (const AssetInput& asset : cfg.assets) {
        if (asset.name.find(',') != std::string::npos ||
            asset.name.find('\n') != std::string::npos) {
            throw std::invalid_argument("run: asset name must not contain "
                                        "commas or newlines: " + asset.name);
        }
    }
}

// Rethrows any stage failure with the stage name attached, preserving the
// exception type the CLI maps to an exit code.
template <typename Fn>
auto run_stage(const std::string& stage, Fn&& fn) {
    try {
        return fn();
    } catch (const support_error& error) {
        throw support_error("stage " + stage + ": " + error.what(),
                            error.uncovered_mass());
    } catch (const numeric_error& error) {
        throw numeric_error("stage " + stage + ": " + error.what());
    } catch (const data_error& error) {
        throw data_error("stage " + stage + ": " + error.what());
    } catch (const std::invalid_argument& error) {
        throw std::invalid_argument("stage " + stage + ": " + error.what());
    }
}

// Prefix of a regular series strictly before `limit_time`.
RegularSeries slice_before(const RegularSeries& series,
                           std::int64_t limit_time) {
    RegularSeries out;
    out.step = series.step;
    out.origin = series.origin;
    if (limit_time <= series.origin) {
        return out;
    }
    const std::int64_t span = limit_time - series.origin;
    std::size_t count =
        static_cast<std::size_t>((span + series.step - 1) / series.step);
    count = std::min(count, series.size());
    out.values.assign(series.values.begin(),
                      series.values.begin() +
                          static_cast<std::ptrdiff_t>(count));
    return out;
}

struct GroupKey {
    std::int64_t volatility_window = 0; // 0 for prepared series inputs
    std::size_t horizon = 0;

    friend auto operator<=>(const GroupKey&, const GroupKey&) = default;
};

struct GroupEntry {
    std::string asset;
    double kl = 0.0;
    double shannon = 0.0;
};

std::string group_suffix(const GroupKey& key) {
    std::string out;
    if (key.volatility_window > 0) {
        out += "_T" + std::to_string(key.volatility_window);
    }
    out += "_M" + std::to_string(key.horizon);
    return out;
}

class PipelineRun {
public:
    explicit PipelineRun(const RunConfig& cfg) : cfg_(cfg) {}

    RunResult execute() {
        validate_config(cfg_);
        fs::create_directories(cfg_.out_dir);
        try {
            process_assets();
            weights_stage();
            portfolio_stage();
            write_manifest();
        } catch (...) {
            remove_written_files();
            throw;
        }
        RunResult result;
        result.files = relative_paths_;
        std::sort(result.files.begin(), result.files.end());
        result.manifest_path =
            (fs::path(cfg_.out_dir) / "manifest.txt").string();
        return result;
    }

private:
    // ------------------------------------------------------------------
    // Output bookkeeping
    // ------------------------------------------------------------------

    void emit(const std::string& name, const std::string& content) {
        const fs::path path = fs::path(cfg_.out_dir) / name;
        write_text_file(path.string(), content);
        written_paths_.push_back(path);
        relative_paths_.push_back(name);
        digests_.emplace_back(name, content);
    }

    void note(const std::string& text) { notes_.push_back(text); }

    void remove_written_files() {
        for (const fs::path& path : written_paths_) {
            std::error_code ignored;
            fs::remove(path, ignored);
        }
    }

    // ------------------------------------------------------------------
    // Analysis shared by both input kinds
    // ------------------------------------------------------------------

    WindowSet windows_for(std::size_t length) const {
        WindowSet usable;
        for (std::size_t window : cfg_.windows) {
            if (window + 2 <= length && length - window + 1 >= 3) {
                usable.push_back(window);
            }
        }
        return usable;
    }

    const DurationDistribution& reference_for(std::size_t length) {
        auto it = reference_cache_.find(length);
        if (it != reference_cache_.end()) {
            return it->second;
        }
        FbmSpec spec;
        spec.hurst = cfg_.hurst;
        spec.length = length;
        spec.seed = cfg_.seed;
        spec.ensemble = cfg_.ensemble;
        DurationDistribution dist = model_duration_distribution(
            spec, windows_for(length), cfg_.normalization);
        return reference_cache_.emplace(length, std::move(dist)).first->second;
    }

    void analyze_slice(const std::string& asset, const GroupKey& key,
                       const std::vector<double>& values) {
        const std::string label = asset + group_suffix(key);
        const WindowSet windows = windows_for(values.size());
        if (windows.empty() || values.size() < 16) {
            note("skipped " + label + ": series of length " +
                 std::to_string(values.size()) + " is too short");
            return;
        }

        const DurationDistribution empirical = run_stage(
            "clusters(" + label + ")", [&] {
                std::vector<ClusterPartition> partitions;
                partitions.reserve(windows.size());
                for (std::size_t window : windows) {
                    partitions.push_back(segment_clusters(values, window));
                }
                return duration_distribution(partitions, cfg_.normalization);
            });
        emit(label + "_clusters.csv", render_distribution_csv(empirical));

        const EntropyProfile kl_profile = run_stage(
            "entropy(" + label + ")", [&]() -> EntropyProfile {
                KlOptions opts;
                opts.max_dropped_mass = cfg_.max_dropped_mass;
                return kl_cluster_entropy(empirical,
                                          reference_for(values.size()), opts);
            });
        const EntropyProfile shannon_profile = run_stage(
            "entropy(" + label + ")",
            [&] { return shannon_cluster_entropy(empirical); });
        emit(label + "_kl_profile.csv", render_profile_csv(kl_profile));
        emit(label + "_shannon_profile.csv",
             render_profile_csv(shannon_profile));

        GroupEntry entry;
        entry.asset = asset;
        entry.kl = diversity_index(kl_profile).value;
        entry.shannon = diversity_index(shannon_profile).value;
        groups_[key].push_back(entry);
    }

    // ------------------------------------------------------------------
    // Stages
    // ------------------------------------------------------------------

    void process_assets() {
        for (const AssetInput& asset : cfg_.assets) {
            if (asset.is_ticks) {
                process_tick_asset(asset);
            } else {
                process_series_asset(asset);
            }
        }
    }

    void process_tick_asset(const AssetInput& asset) {
        const TickSeries ticks = run_stage(
            "load(" + asset.name + ")", [&] { return load_ticks(asset.path); });
        const RegularSeries prices = run_stage(
            "resample(" + asset.name + ")",
            [&] { return resample(ticks, cfg_.delta_seconds); });
        emit(asset.name + "_prices.csv", render_series_csv(prices));
        const RegularSeries returns =
            run_stage("returns(" + asset.name + ")",
                      [&] { return log_returns(prices); });
        emit(asset.name + "_returns.csv", render_series_csv(returns));
        tick_returns_.emplace(asset.name, returns);

        for (std::int64_t window_seconds : cfg_.volatility_windows) {
            const std::size_t window_samples = static_cast<std::size_t>(
                window_seconds / cfg_.delta_seconds);
            const std::string stage_label =
                asset.name + "_T" + std::to_string(window_seconds);
            if (returns.size() < window_samples) {
                note("skipped " + stage_label +
                     ": not enough returns for the volatility window");
                continue;
            }
            const RegularSeries volatility = run_stage(
                "volatility(" + stage_label + ")",
                [&] { return realized_volatility(returns, window_samples); });
            emit(stage_label + "_volatility.csv",
                 render_series_csv(volatility));

            for (std::size_t horizon : cfg_.horizons) {
                const std::int64_t limit =
                    prices.origin + static_cast<std::int64_t>(horizon) *
                                        cfg_.period_seconds;
                const RegularSeries sliced = slice_before(volatility, limit);
                analyze_slice(asset.name,
                              GroupKey{window_seconds, horizon},
                              sliced.values);
            }
        }
    }

    void process_series_asset(const AssetInput& asset) {
        const RegularSeries series = run_stage(
            "load(" + asset.name + ")", [&] {
                return parse_series_csv(read_text_file(asset.path),
                                        asset.path);
            });
        for (std::size_t horizon : cfg_.horizons) {
            const std::int64_t limit =
                series.origin +
                static_cast<std::int64_t>(horizon) * cfg_.period_seconds;
            const RegularSeries sliced = slice_before(series, limit);
            analyze_slice(asset.name, GroupKey{0, horizon}, sliced.values);
        }
    }

    void weights_stage() {
        for (const auto& [key, entries] : groups_) {
            const std::string suffix = group_suffix(key);
            std::vector<std::string> assets;
            std::vector<double> kl_values;
            std::vector<double> shannon_values;
            for (const GroupEntry& entry : entries) {
                assets.push_back(entry.asset);
                kl_values.push_back(entry.kl);
                shannon_values.push_back(entry.shannon);
            }
            emit("indices_kl" + suffix + ".csv",
                 render_indices_csv(assets, kl_values));
            emit("indices_shannon" + suffix + ".csv",
                 render_indices_csv(assets, shannon_values));
            if (assets.size() < 2) {
                note("no entropy weights for" + suffix +
                     ": needs at least two assets");
                continue;
            }
            const WeightVector kl = run_stage("weights(kl" + suffix + ")", [&] {
                WeightOptions opts;
                opts.epsilon_floor = cfg_.epsilon_floor;
                return kl_weights(assets, kl_values, opts);
            });
            emit("weights_kl" + suffix + ".csv", render_weights_csv(kl));
            const WeightVector shannon =
                run_stage("weights(shannon" + suffix + ")",
                          [&] { return shannon_weights(assets, shannon_values); });
            emit("weights_shannon" + suffix + ".csv",
                 render_weights_csv(shannon));
        }

        if (!cfg_.assets.empty()) {
            std::vector<std::string> names;
            for (const AssetInput& asset : cfg_.assets) {
                names.push_back(asset.name);
            }
            emit("weights_uniform.csv",
                 render_weights_csv(uniform_weights(names)));
        }

        sharpe_stage();
    }

    void sharpe_stage() {
        if (tick_returns_.size() < 2) {
            if (!tick_returns_.empty()) {
                note("no sharpe weights: needs at least two tick assets");
            }
            return;
        }
        for (std::size_t horizon : cfg_.horizons) {
            ReturnPanel panel;
            std::size_t min_length = SIZE_MAX;
            for (const AssetInput& asset : cfg_.assets) {
                auto it = tick_returns_.find(asset.name);
                if (it == tick_returns_.end()) {
                    continue;
                }
                const RegularSeries& returns = it->second;
                const std::int64_t limit =
                    returns.origin - returns.step +
                    static_cast<std::int64_t>(horizon) * cfg_.period_seconds;
                RegularSeries sliced = slice_before(returns, limit);
                min_length = std::min(min_length, sliced.size());
                panel.assets.push_back(asset.name);
                panel.returns.push_back(std::move(sliced.values));
            }
            if (min_length < 2) {
                note("no sharpe weights for _M" + std::to_string(horizon) +
                     ": not enough returns in the horizon");
                continue;
            }
            for (std::vector<double>& row : panel.returns) {
                row.resize(min_length);
            }
            const WeightVector sharpe = run_stage(
                "weights(sharpe_M" + std::to_string(horizon) + ")",
                [&] { return maximize_sharpe(panel); });
            emit("weights_sharpe_M" + std::to_string(horizon) + ".csv",
                 render_weights_csv(sharpe));
            sharpe_by_horizon_.emplace(horizon, sharpe);
        }
    }

    // Entropy weight vector for a scheme at (first volatility window,
    // given horizon) when it exists and covers exactly the panel's assets.
    std::optional<WeightVector> find_group_weights(WeightScheme scheme,
                                                   std::size_t horizon,
                                                   const PricePanel& panel) {
        for (const auto& [key, entries] : groups_) {
            if (key.horizon != horizon) {
                continue;
            }
            std::vector<std::string> assets;
            std::vector<double> values;
            for (const GroupEntry& entry : entries) {
                assets.push_back(entry.asset);
                values.push_back(scheme == WeightScheme::kl ? entry.kl
                                                            : entry.shannon);
            }
            if (assets.size() < 2 || !same_assets(assets, panel.assets)) {
                continue;
            }
            WeightOptions opts;
            opts.epsilon_floor = cfg_.epsilon_floor;
            return scheme == WeightScheme::kl
                       ? kl_weights(assets, values, opts)
                       : shannon_weights(assets, values);
        }
        return std::nullopt;
    }

    void portfolio_stage() {
        if (cfg_.panel_path.empty()) {
            return;
        }
        const PricePanel panel = run_stage("portfolio(load)", [&] {
            return parse_panel_csv(read_text_file(cfg_.panel_path),
                                   cfg_.panel_path);
        });
        const std::size_t months = panel.months();

        const auto simulate_and_emit = [&](const std::string& scheme_name,
                                           Strategy strategy,
                                           const WealthTrajectory& trajectory) {
            const std::string base =
                "portfolio_" + scheme_name + "_" + to_string(strategy);
            emit(base + ".csv", render_trajectory_csv(trajectory));
            emit("profit_" + scheme_name + "_" + to_string(strategy) + ".csv",
                 render_profit_csv(
                     profit_report(trajectory, cfg_.initial_wealth)));
        };

        // Uniform runs unconditionally.
        const WeightVector uniform = uniform_weights(panel.assets);
        run_stage("portfolio(uniform)", [&] {
            simulate_and_emit(
                "uniform", Strategy::lazy,
                simulate_lazy(panel, uniform, cfg_.initial_wealth));
            simulate_and_emit(
                "uniform", Strategy::active,
                simulate_active(panel,
                                std::vector<WeightVector>(months, uniform),
                                cfg_.initial_wealth));
            return 0;
        });

        // Entropy schemes use the computed group weights when available.
        for (WeightScheme scheme :
             {WeightScheme::kl, WeightScheme::shannon}) {
            const std::string name = to_string(scheme);
            const std::optional<WeightVector> lazy =
                find_group_weights(scheme, cfg_.horizons.front(), panel);
            if (!lazy) {
                note("no " + name +
                     " portfolio: no matching weights for the panel");
                continue;
            }
            run_stage("portfolio(" + name + ")", [&] {
                simulate_and_emit(
                    name, Strategy::lazy,
                    simulate_lazy(panel, *lazy, cfg_.initial_wealth));
                return 0;
            });
            std::vector<WeightVector> monthly;
            bool complete = true;
            for (std::size_t m = 1; m <= months; ++m) {
                std::optional<WeightVector> month_weights =
                    find_group_weights(scheme, m, panel);
                if (!month_weights) {
                    complete = false;
                    break;
                }
                monthly.push_back(std::move(*month_weights));
            }
            if (!complete) {
                note("no active " + name +
                     " portfolio: weights missing for some months");
                continue;
            }
            run_stage("portfolio(" + name + ")", [&] {
                simulate_and_emit(
                    name, Strategy::active,
                    simulate_active(panel, monthly, cfg_.initial_wealth));
                return 0;
            });
        }

        // Sharpe scheme from the return-panel optimizer.
        {
            auto lazy_it = sharpe_by_horizon_.find(cfg_.horizons.front());
            const bool lazy_ok =
                lazy_it != sharpe_by_horizon_.end() &&
                same_assets(lazy_it->second.assets, panel.assets);
            if (lazy_ok) {
                run_stage("portfolio(sharpe)", [&] {
                    simulate_and_emit("sharpe", Strategy::lazy,
                                      simulate_lazy(panel, lazy_it->second,
                                                    cfg_.initial_wealth));
                    return 0;
                });
                std::vector<WeightVector> monthly;
                bool complete = true;
                for (std::size_t m = 1; m <= months; ++m) {
                    auto it = sharpe_by_horizon_.find(m);
                    if (it == sharpe_by_horizon_.end() ||
                        !same_assets(it->second.assets, panel.assets)) {
                        complete = false;
                        break;
                    }
                    monthly.push_back(it->second);
                }
                if (complete) {
                    run_stage("portfolio(sharpe)", [&] {
                        simulate_and_emit(
                            "sharpe", Strategy::active,
                            simulate_active(panel, monthly,
                                            cfg_.initial_wealth));
                        return 0;
                    });
                } else {
                    note("no active sharpe portfolio: weights missing for "
                         "some months");
                }
            } else if (!sharpe_by_horizon_.empty()) {
                note("no sharpe portfolio: weights do not match the panel");
            }
        }
    }

    static bool same_assets(std::vector<std::string> a,
                            std::vector<std::string> b) {
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return a == b;
    }

    // ------------------------------------------------------------------
    // Manifest
    // ------------------------------------------------------------------

    void write_manifest() {
        std::vector<std::string> lines;
        const auto add = [&lines](const std::string& key,
                                  const std::string& value) {
            lines.push_back(key + "=" + value);
        };

        // Effective configuration (locations such as out_dir excluded so a
        // rerun elsewhere with the same inputs digests identically).
        add("config.seed", std::to_string(cfg_.seed));
        add("config.hurst", format_full(cfg_.hurst));
        add("config.ensemble", std::to_string(cfg_.ensemble));
        add("config.windows", join_list(cfg_.windows));
        add("config.normalization",
            cfg_.normalization == Normalization::joint ? "joint"
                                                       : "per_window");
        add("config.delta_seconds", std::to_string(cfg_.delta_seconds));
        add("config.volatility_windows", join_list(cfg_.volatility_windows));
        add("config.horizons", join_list(cfg_.horizons));
        add("config.period_seconds", std::to_string(cfg_.period_seconds));
        add("config.max_dropped_mass", format_full(cfg_.max_dropped_mass));
        add("config.epsilon_floor", format_full(cfg_.epsilon_floor));
        add("config.initial_wealth", format_full(cfg_.initial_wealth));
        add("config.panel", cfg_.panel_path);
        for (const AssetInput& asset : cfg_.assets) {
            add("config.asset." + asset.name + ".kind",
                asset.is_ticks ? "ticks" : "series");
            add("config.asset." + asset.name + ".path", asset.path);
        }
        for (std::size_t i = 0; i < notes_.size(); ++i) {
            add("note." + std::to_string(i), notes_[i]);
        }
        for (const auto& [name, content] : digests_) {
            char hex[17];
            std::snprintf(hex, sizeof(hex), "%016llx",
                          static_cast<unsigned long long>(fnv1a64(content)));
            add("file." + name + ".bytes", std::to_string(content.size()));
            add("file." + name + ".fnv1a64", hex);
        }

        std::sort(lines.begin(), lines.end());
        std::string manifest;
        for (const std::string& line : lines) {
            manifest += line;
            manifest += '\n';
        }
        const fs::path path = fs::path(cfg_.out_dir) / "manifest.txt";
        write_text_file(path.string(), manifest);
        written_paths_.push_back(path);
    }

    // ------------------------------------------------------------------

    RunConfig cfg_;
    std::vector<fs::path> written_paths_;
    std::vector<std::string> relative_paths_;
    std::vector<std::pair<std::string, std::string>> digests_;
    std::vector<std::string> notes_;
    std::map<std::size_t, DurationDistribution> reference_cache_;
    std::map<std::string, RegularSeries> tick_returns_;
    std::map<GroupKey, std::vector<GroupEntry>> groups_;
    std::map<std::size_t, WeightVector> sharpe_by_horizon_;
};

} // namespace

RunResult run_pipeline(const RunConfig& cfg) {
    PipelineRun run(cfg);
    return run.execute();
}

} // namespace centropy
