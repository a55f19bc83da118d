// csv.cpp

#include "centropy/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "centropy/errors.hpp"

namespace centropy {

// ============================================================================
// Formatting primitives
// ============================================================================

namespace {

std::string format_with(const char* spec, double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), spec, value);
    return buffer;
}

} // namespace

std::string format_full(double value) { return format_with("%.17g", value); }
std::string format_weight(double value) { return format_with("%.10g", value); }
std::string format_brief(double value) { return format_with("%.4g", value); }

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw data_error("cannot open for writing: " + path);
    }
    file.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!file) {
        throw data_error("write failed: " + path);
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw data_error("cannot open: " + path);
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

// ============================================================================
// Shared parsing machinery
// ============================================================================

namespace {

void check_asset_id(const std::string& asset) {
    if (asset.empty() || asset.find(',') != std::string::npos ||
        asset.find('\n') != std::string::npos) {
        throw std::invalid_argument(
            "csv: asset id must be non-empty and free of commas/newlines: '" +
            asset + "'");
    }
}

// Iterates the lines of a CSV image, tracking line numbers for messages.
class LineReader {
public:
    LineReader(const std::string& text, const std::string& origin)
        : stream_(text), origin_(origin) {}

    bool next(std::string& line) {
        while (std::getline(stream_, line)) {
            ++number_;
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            if (line.empty()) {
                continue;
            }
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw data_error(origin_ + ", line " + std::to_string(number_) + ": " +
                         message);
    }

    [[noreturn]] void fail_file(const std::string& message) const {
        throw data_error(origin_ + ": " + message);
    }

    void expect_header(const std::string& header) {
        std::string line;
        if (!next(line)) {
            fail_file("empty file");
        }
        if (line != header) {
            fail("expected header '" + header + "'");
        }
    }

private:
    std::istringstream stream_;
    std::string origin_;
    std::size_t number_ = 0;
};

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t begin = 0;
    while (true) {
        const std::size_t comma = line.find(',', begin);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(begin));
            return fields;
        }
        fields.push_back(line.substr(begin, comma - begin));
        begin = comma + 1;
    }
}

double field_double(const LineReader& reader, const std::string& field,
                    const char* what) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (field.empty() || ec != std::errc() || ptr != last) {
        reader.fail(std::string("malformed ") + what + ": '" + field + "'");
    }
    return value;
}

std::size_t field_size(const LineReader& reader, const std::string& field,
                       const char* what) {
    std::size_t value = 0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (field.empty() || ec != std::errc() || ptr != last) {
        reader.fail(std::string("malformed ") + what + ": '" + field + "'");
    }
    return value;
}

void require_fields(const LineReader& reader,
                    const std::vector<std::string>& fields,
                    std::size_t expected) {
    if (fields.size() != expected) {
        reader.fail("expected " + std::to_string(expected) +
                    " comma-separated fields, got " +
                    std::to_string(fields.size()));
    }
}

} // namespace

// ============================================================================
// Renderers
// ============================================================================

std::string render_series_csv(const RegularSeries& series) {
    std::string out = "index,value\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
        out += std::to_string(k);
        out += ',';
        out += format_full(series.values[k]);
        out += '\n';
    }
    return out;
}

std::string render_ticks_csv(const TickSeries& ticks) {
    std::string out = "timestamp,price\n";
    for (const Tick& tick : ticks) {
        out += std::to_string(tick.timestamp);
        out += ',';
        out += format_full(tick.price);
        out += '\n';
    }
    return out;
}

std::string render_distribution_csv(const DurationDistribution& dist) {
    std::string out = "n,tau,count,probability\n";
    for (const auto& [cell, mass] : dist.masses) {
        out += std::to_string(cell.window);
        out += ',';
        out += std::to_string(cell.duration);
        out += ',';
        const auto count = dist.counts.find(cell);
        out += std::to_string(count == dist.counts.end() ? 0 : count->second);
        out += ',';
        out += format_full(mass);
        out += '\n';
    }
    return out;
}

std::string render_profile_csv(const EntropyProfile& profile) {
    std::string out = "n,tau,component\n";
    for (const auto& [cell, component] : profile.components) {
        out += std::to_string(cell.window);
        out += ',';
        out += std::to_string(cell.duration);
        out += ',';
        out += format_full(component);
        out += '\n';
    }
    out += "aggregate,";
    out += format_full(profile.aggregate);
    out += '\n';
    return out;
}

std::string render_weights_csv(const WeightVector& weights) {
    if (weights.assets.size() != weights.values.size()) {
        throw std::invalid_argument("render_weights_csv: size mismatch");
    }
    std::string out = "asset,weight\n";
    for (std::size_t i = 0; i < weights.assets.size(); ++i) {
        check_asset_id(weights.assets[i]);
        out += weights.assets[i];
        out += ',';
        out += format_weight(weights.values[i]);
        out += '\n';
    }
    return out;
}

std::string render_indices_csv(const std::vector<std::string>& assets,
                               const std::vector<double>& indices) {
    if (assets.size() != indices.size()) {
        throw std::invalid_argument("render_indices_csv: size mismatch");
    }
    std::string out = "asset,index\n";
    for (std::size_t i = 0; i < assets.size(); ++i) {
        check_asset_id(assets[i]);
        out += assets[i];
        out += ',';
        out += format_full(indices[i]);
        out += '\n';
    }
    return out;
}

std::string render_panel_csv(const PricePanel& panel) {
    if (panel.prices.size() != panel.assets.size() || panel.assets.empty()) {
        throw std::invalid_argument("render_panel_csv: malformed panel");
    }
    const std::size_t marks = panel.prices.front().size();
    std::string out = "asset";
    for (std::size_t m = 1; m <= marks; ++m) {
        out += ",m" + std::to_string(m);
    }
    out += '\n';
    for (std::size_t i = 0; i < panel.assets.size(); ++i) {
        check_asset_id(panel.assets[i]);
        if (panel.prices[i].size() != marks) {
            throw std::invalid_argument("render_panel_csv: ragged rows");
        }
        out += panel.assets[i];
        for (double price : panel.prices[i]) {
            out += ',';
            out += format_full(price);
        }
        out += '\n';
    }
    return out;
}

std::string render_weights_by_month_csv(
    const std::vector<WeightVector>& months) {
    if (months.empty()) {
        throw std::invalid_argument("render_weights_by_month_csv: no months");
    }
    const std::vector<std::string>& assets = months.front().assets;
    for (const WeightVector& month : months) {
        if (month.assets != assets || month.values.size() != assets.size()) {
            throw std::invalid_argument(
                "render_weights_by_month_csv: months disagree on assets");
        }
    }
    std::string out = "asset";
    for (std::size_t m = 1; m <= months.size(); ++m) {
        out += ",M" + std::to_string(m);
    }
    out += '\n';
    for (std::size_t i = 0; i < assets.size(); ++i) {
        check_asset_id(assets[i]);
        out += assets[i];
        for (const WeightVector& month : months) {
            out += ',';
            out += format_weight(month.values[i]);
        }
        out += '\n';
    }
    return out;
}

std::string render_trajectory_csv(const WealthTrajectory& trajectory) {
    std::string out = "month";
    for (const std::string& asset : trajectory.assets) {
        check_asset_id(asset);
        out += ',';
        out += asset;
    }
    out += ",total\n";
    for (std::size_t m = 0; m < trajectory.totals.size(); ++m) {
        out += std::to_string(m + 1);
        for (double value : trajectory.wealth[m]) {
            out += ',';
            out += format_full(value);
        }
        out += ',';
        out += format_full(trajectory.totals[m]);
        out += '\n';
    }
    return out;
}

std::string render_profit_csv(const ProfitReport& report) {
    std::string out = "month,profit\n";
    for (std::size_t m = 0; m < report.monthly.size(); ++m) {
        out += std::to_string(m + 1);
        out += ',';
        out += format_full(report.monthly[m]);
        out += '\n';
    }
    out += "year,";
    out += format_full(report.year);
    out += '\n';
    return out;
}

// ============================================================================
// Parsers
// ============================================================================

RegularSeries parse_series_csv(const std::string& text,
                               const std::string& origin, std::int64_t step,
                               std::int64_t origin_time) {
    LineReader reader(text, origin);
    reader.expect_header("index,value");
    RegularSeries series;
    series.step = step;
    series.origin = origin_time;
    std::string line;
    while (reader.next(line)) {
        const std::vector<std::string> fields = split_fields(line);
        require_fields(reader, fields, 2);
        const std::size_t index = field_size(reader, fields[0], "index");
        if (index != series.values.size()) {
            reader.fail("index " + fields[0] + " out of order (expected " +
                        std::to_string(series.values.size()) + ")");
        }
        series.values.push_back(field_double(reader, fields[1], "value"));
    }
    if (series.values.empty()) {
        reader.fail_file("no data rows");
    }
    return series;
}

DurationDistribution parse_distribution_csv(const std::string& text,
                                            const std::string& origin) {
    LineReader reader(text, origin);
    reader.expect_header("n,tau,count,probability");
    // The file format does not carry the normalization mode; callers that
    // need a per-window reading must know it from context.
    DurationDistribution dist;
    std::string line;
    while (reader.next(line)) {
        const std::vector<std::string> fields = split_fields(line);
        require_fields(reader, fields, 4);
        DurationCell cell;
        cell.window = field_size(reader, fields[0], "window");
        cell.duration = field_size(reader, fields[1], "duration");
        const std::size_t count = field_size(reader, fields[2], "count");
        const double mass = field_double(reader, fields[3], "probability");
        if (!(mass >= 0.0) || !(mass <= 1.0)) {
            reader.fail("probability out of [0, 1]");
        }
        if (!dist.masses.emplace(cell, mass).second) {
            reader.fail("duplicate (n, tau) cell");
        }
        dist.counts.emplace(cell, count);
        dist.total_clusters += count;
    }
    if (dist.masses.empty()) {
        reader.fail_file("no data rows");
    }
    return dist;
}

EntropyProfile parse_profile_csv(const std::string& text,
                                 const std::string& origin, EntropyKind kind) {
    LineReader reader(text, origin);
    reader.expect_header("n,tau,component");
    EntropyProfile profile;
    profile.kind = kind;
    bool have_aggregate = false;
    std::string line;
    while (reader.next(line)) {
        const std::vector<std::string> fields = split_fields(line);
        if (fields.size() == 2 && fields[0] == "aggregate") {
            profile.aggregate = field_double(reader, fields[1], "aggregate");
            have_aggregate = true;
            continue;
        }
        if (have_aggregate) {
            reader.fail("rows after the aggregate line");
        }
        require_fields(reader, fields, 3);
        DurationCell cell;
        cell.window = field_size(reader, fields[0], "window");
        cell.duration = field_size(reader, fields[1], "duration");
        const double component = field_double(reader, fields[2], "component");
        if (!profile.components.emplace(cell, component).second) {
            reader.fail("duplicate (n, tau) cell");
        }
    }
    if (!have_aggregate) {
        reader.fail_file("missing aggregate row");
    }
    return profile;
}

WeightVector parse_weights_csv(const std::string& text,
                               const std::string& origin, WeightScheme scheme) {
    LineReader reader(text, origin);
    reader.expect_header("asset,weight");
    WeightVector weights;
    weights.scheme = scheme;
    std::string line;
    while (reader.next(line)) {
        const std::vector<std::string> fields = split_fields(line);
        require_fields(reader, fields, 2);
        if (fields[0].empty()) {
            reader.fail("empty asset id");
        }
        weights.assets.push_back(fields[0]);
        weights.values.push_back(field_double(reader, fields[1], "weight"));
    }
    if (weights.assets.empty()) {
        reader.fail_file("no data rows");
    }
    return weights;
}

void parse_indices_csv(const std::string& text, const std::string& origin,
                       std::vector<std::string>& assets_out,
                       std::vector<double>& indices_out) {
    LineReader reader(text, origin);
    reader.expect_header("asset,index");
    assets_out.clear();
    indices_out.clear();
    std::string line;
    while (reader.next(line)) {
        const std::vector<std::string> fields = split_fields(line);
        require_fields(reader, fields, 2);
        if (fields[0].empty()) {
            reader.fail("empty asset id");
        }
        assets_out.push_back(fields[0]);
        indices_out.push_back(field_double(reader, fields[1], "index"));
    }
    if (assets_out.empty()) {
        reader.fail_file("no data rows");
    }
}

PricePanel parse_panel_csv(const std::string& text, const std::string& origin) {
    LineReader reader(text, origin);
    std::string line;
    if (!reader.next(line)) {
        reader.fail_file("empty file");
    }
    const std::vector<std::string> header = split_fields(line);
    if (header.size() < 3 || header[0] != "asset") {
        reader.fail("expected header 'asset,m1,...'");
    }
    for (std::size_t m = 1; m < header.size(); ++m) {
        if (header[m] != "m" + std::to_string(m)) {
            reader.fail("expected column 'm" + std::to_string(m) + "'");
        }
    }
    const std::size_t marks = header.size() - 1;

    PricePanel panel;
    while (reader.next(line)) {
        const std::vector<std::string> fields = split_fields(line);
        require_fields(reader, fields, marks + 1);
        if (fields[0].empty()) {
            reader.fail("empty asset id");
        }
        std::vector<double> prices(marks);
        for (std::size_t m = 0; m < marks; ++m) {
            prices[m] = field_double(reader, fields[m + 1], "price");
            if (!(prices[m] > 0.0)) {
                reader.fail("price must be positive");
            }
        }
        panel.assets.push_back(fields[0]);
        panel.prices.push_back(std::move(prices));
    }
    if (panel.assets.empty()) {
        reader.fail_file("no data rows");
    }
    return panel;
}

std::vector<WeightVector> parse_weights_by_month_csv(const std::string& text,
                                                     const std::string& origin,
                                                     WeightScheme scheme) {
    LineReader reader(text, origin);
    std::string line;
    if (!reader.next(line)) {
        reader.fail_file("empty file");
    }
    const std::vector<std::string> header = split_fields(line);
    if (header.size() < 2 || header[0] != "asset") {
        reader.fail("expected header 'asset,M1,...'");
    }
    for (std::size_t m = 1; m < header.size(); ++m) {
        if (header[m] != "M" + std::to_string(m)) {
            reader.fail("expected column 'M" + std::to_string(m) + "'");
        }
    }
    const std::size_t month_count = header.size() - 1;

    std::vector<WeightVector> months(month_count);
    for (WeightVector& month : months) {
        month.scheme = scheme;
    }
    while (reader.next(line)) {
        const std::vector<std::string> fields = split_fields(line);
        require_fields(reader, fields, month_count + 1);
        if (fields[0].empty()) {
            reader.fail("empty asset id");
        }
        for (std::size_t m = 0; m < month_count; ++m) {
            months[m].assets.push_back(fields[0]);
            months[m].values.push_back(
                field_double(reader, fields[m + 1], "weight"));
        }
    }
    if (months.front().assets.empty()) {
        reader.fail_file("no data rows");
    }
    return months;
}

WealthTrajectory parse_trajectory_csv(const std::string& text,
                                      const std::string& origin) {
    LineReader reader(text, origin);
    std::string line;
    if (!reader.next(line)) {
        reader.fail_file("empty file");
    }
    const std::vector<std::string> header = split_fields(line);
    if (header.size() < 3 || header.front() != "month" ||
        header.back() != "total") {
        reader.fail("expected header 'month,<asset...>,total'");
    }

    WealthTrajectory trajectory;
    trajectory.assets.assign(header.begin() + 1, header.end() - 1);
    const std::size_t assets = trajectory.assets.size();
    while (reader.next(line)) {
        const std::vector<std::string> fields = split_fields(line);
        require_fields(reader, fields, assets + 2);
        const std::size_t month = field_size(reader, fields[0], "month");
        if (month != trajectory.totals.size() + 1) {
            reader.fail("month out of order");
        }
        std::vector<double> row(assets);
        for (std::size_t i = 0; i < assets; ++i) {
            row[i] = field_double(reader, fields[i + 1], "wealth");
        }
        trajectory.wealth.push_back(std::move(row));
        trajectory.totals.push_back(
            field_double(reader, fields[assets + 1], "total"));
    }
    if (trajectory.totals.empty()) {
        reader.fail_file("no data rows");
    }
    return trajectory;
}

ProfitReport parse_profit_csv(const std::string& text,
                              const std::string& origin) {
    LineReader reader(text, origin);
    reader.expect_header("month,profit");
    ProfitReport report;
    bool have_year = false;
    std::string line;
    while (reader.next(line)) {
        const std::vector<std::string> fields = split_fields(line);
        require_fields(reader, fields, 2);
        if (fields[0] == "year") {
            report.year = field_double(reader, fields[1], "year");
            have_year = true;
            continue;
        }
        if (have_year) {
            reader.fail("rows after the year line");
        }
        const std::size_t month = field_size(reader, fields[0], "month");
        if (month != report.monthly.size() + 1) {
            reader.fail("month out of order");
        }
        report.monthly.push_back(field_double(reader, fields[1], "profit"));
    }
    if (!have_year) {
        reader.fail_file("missing year row");
    }
    return report;
}

} // namespace centropy
