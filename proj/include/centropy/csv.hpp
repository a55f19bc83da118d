// csv.hpp
// CSV renderers and parsers for every artifact the library reads or
// writes.  All files use LF endings and a fixed header row.  Floating
// point values are written with 17 significant digits (shortest exact
// round trip) except weight files, which use 10 significant digits.
//
// Every parser raises data_error naming the line number of the first
// offending row.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "centropy/clusters.hpp"
#include "centropy/entropy.hpp"
#include "centropy/portfolio.hpp"
#include "centropy/series.hpp"
#include "centropy/weights.hpp"

namespace centropy {

// ============================================================================
// Formatting primitives
// ============================================================================

// %.17g -- value round-trips to the identical double.
std::string format_full(double value);

// %.10g -- weight files.
std::string format_weight(double value);

// %.4g -- human-oriented console summaries.
std::string format_brief(double value);

// Writes `text` to `path` byte-for-byte (LF endings preserved).
void write_text_file(const std::string& path, const std::string& text);

// Reads a whole file; data_error if it cannot be opened.
std::string read_text_file(const std::string& path);

// ============================================================================
// Renderers (file image as a string, trailing newline included)
// ============================================================================

// Header `index,value`; index is the 0-based sample number.
std::string render_series_csv(const RegularSeries& series);

// Header `timestamp,price`.
std::string render_ticks_csv(const TickSeries& ticks);

// Header `n,tau,count,probability`, rows in (n, tau) order.
std::string render_distribution_csv(const DurationDistribution& dist);

// Header `n,tau,component`, rows in (n, tau) order, then a final
// `aggregate,<value>` row.
std::string render_profile_csv(const EntropyProfile& profile);

// Header `asset,weight`, weights at 10 significant digits.
std::string render_weights_csv(const WeightVector& weights);

// Header `asset,index`.
std::string render_indices_csv(const std::vector<std::string>& assets,
                               const std::vector<double>& indices);

// Header `asset,m1,...,m<K>` for K+1 price boundaries per asset.
std::string render_panel_csv(const PricePanel& panel);

// Header `asset,M1,...,M<K>`: column j holds month j's weight vector.
std::string render_weights_by_month_csv(const std::vector<WeightVector>& months);

// Header `month,<asset...>,total`.
std::string render_trajectory_csv(const WealthTrajectory& trajectory);

// Header `month,profit`, then a final `year,<value>` row.
std::string render_profit_csv(const ProfitReport& report);

// ============================================================================
// Parsers (string image -> structure; `origin` labels error messages)
// ============================================================================

RegularSeries parse_series_csv(const std::string& text,
                               const std::string& origin,
                               std::int64_t step = 1,
                               std::int64_t origin_time = 0);

DurationDistribution parse_distribution_csv(const std::string& text,
                                            const std::string& origin);

EntropyProfile parse_profile_csv(const std::string& text,
                                 const std::string& origin,
                                 EntropyKind kind);

WeightVector parse_weights_csv(const std::string& text,
                               const std::string& origin,
                               WeightScheme scheme);

void parse_indices_csv(const std::string& text, const std::string& origin,
                       std::vector<std::string>& assets_out,
                       std::vector<double>& indices_out);

PricePanel parse_panel_csv(const std::string& text, const std::string& origin);

std::vector<WeightVector> parse_weights_by_month_csv(const std::string& text,
                                                     const std::string& origin,
                                                     WeightScheme scheme);

WealthTrajectory parse_trajectory_csv(const std::string& text,
                                      const std::string& origin);

ProfitReport parse_profit_csv(const std::string& text,
                              const std::string& origin);

} // namespace centropy
