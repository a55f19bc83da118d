// series.hpp
// Basic time-series containers: a regularly sampled series and a raw
// (irregular) tick stream.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace centropy {

// A series sampled on the regular grid  t_k = origin + k * step.
// `step` is expressed in seconds for market data and is 1 for synthetic
// sample-indexed series.
struct RegularSeries {
    std::vector<double> values;
    std::int64_t step = 1;
    std::int64_t origin = 0;

    std::size_t size() const noexcept { return values.size(); }

    std::int64_t time_at(std::size_t k) const noexcept {
        return origin + static_cast<std::int64_t>(k) * step;
    }
};

// One observation of an irregular price stream.
struct Tick {
    std::int64_t timestamp = 0; // UNIX seconds
    double price = 0.0;
};

using TickSeries = std::vector<Tick>;

} // namespace centropy
