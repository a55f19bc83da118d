// market.hpp
// Market data handling: tick loading, resampling to a regular grid,
// logarithmic returns, and rolling return/volatility statistics.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "centropy/series.hpp"

namespace centropy {

// Parses a tick CSV file (header `timestamp,price`, UNIX-second integer
// timestamps, LF endings).  Raises data_error with the offending line
// number on malformed rows, on non-positive or non-finite prices, on a
// decreasing timestamp (naming both timestamps involved), and on files
// with no data rows.  Equal consecutive timestamps are allowed; the later
// row wins during resampling.
TickSeries load_ticks(const std::string& path);

// Same parser over an already-loaded buffer; `origin_name` labels errors.
TickSeries parse_ticks(const std::string& text, const std::string& origin_name);

// Last-observation-carried-forward resampling of a tick stream onto the
// grid t0, t0+delta, ..., up to the last tick timestamp (grid points never
// exceed it).  Preconditions: non-empty ticks, delta >= 1.
RegularSeries resample(const TickSeries& ticks, std::int64_t delta_seconds);

// Logarithmic returns ln(p_t / p_{t-1}); output is one shorter and keeps
// the grid with origin advanced by one step.  Preconditions: at least two
// samples, all prices positive.
RegularSeries log_returns(const RegularSeries& prices);

// Rolling mean of returns over windows of exactly `window` samples; output
// element k covers returns[k .. k+window-1] and is stamped at that
// window's final grid time.  Preconditions: window >= 2 and at least
// `window` samples.
RegularSeries expected_return(const RegularSeries& returns, std::size_t window);

// Rolling sample standard deviation (divisor window-1) of returns, same
// alignment and preconditions as expected_return.  Values are clamped at 0
// against negative rounding residue.
RegularSeries realized_volatility(const RegularSeries& returns,
                                  std::size_t window);

} // namespace centropy
