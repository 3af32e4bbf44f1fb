#include "speccl/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "speccl/errors.hpp"

namespace speccl {

double missing_value() { return std::numeric_limits<double>::quiet_NaN(); }

const Column* IndicatorTable::find_column(const std::string& name) const {
    for (const Column& c : columns) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

std::size_t IndicatorTable::missing_cells() const {
    std::size_t count = 0;
    for (const Column& c : columns) {
        for (double v : c.values) {
            if (is_missing(v)) ++count;
        }
    }
    return count;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream iss(line);
    while (std::getline(iss, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_cell(const std::string& cell) {
    if (cell.empty() || cell == "NA") return missing_value();
    const char* first = cell.data();
    const char* last = first + cell.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) return missing_value();
    return value;
}

double column_median(std::vector<double> observed) {
    std::sort(observed.begin(), observed.end());
    const std::size_t n = observed.size();
    if (n % 2 == 1) return observed[n / 2];
    return 0.5 * (observed[n / 2 - 1] + observed[n / 2]);
}

std::string now_utc_iso8601() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[80];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

std::string annotate_rate_adjusted(const std::string& unit) {
    if (unit.empty()) return "rate-adjusted";
    if (unit.find("rate-adjusted") != std::string::npos) return unit;
    return unit + ", rate-adjusted";
}

std::string format_number(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

}  // namespace

IndicatorTable load_csv(const std::filesystem::path& path,
                        const std::vector<std::string>& schema) {
    if (schema.empty()) throw MissingColumnError("schema must name at least one column");
    std::ifstream in(path);
    if (!in) throw MissingFileError("cannot open input file: " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw CsvFormatError("empty file, header row required: " + path.string());
    const std::vector<std::string> header = split_csv_line(line);
    if (header.empty() || header[0] != "entity_id") {
        throw CsvFormatError("first header column must be 'entity_id': " + path.string());
    }

    std::vector<std::size_t> field_of_column;
    for (const std::string& want : schema) {
        const auto it = std::find(header.begin(), header.end(), want);
        if (it == header.end()) throw MissingColumnError("column not found in header: " + want);
        field_of_column.push_back(static_cast<std::size_t>(it - header.begin()));
    }

    IndicatorTable table;
    table.provenance = {path.string(), now_utc_iso8601()};
    table.columns.reserve(schema.size());
    for (const std::string& name : schema) table.columns.push_back({name, "", {}});

    std::unordered_set<std::string> seen;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw CsvFormatError("line " + std::to_string(line_no) + " has " +
                                 std::to_string(fields.size()) + " fields, expected " +
                                 std::to_string(header.size()));
        }
        const std::string& id = fields[0];
        if (id.empty()) throw CsvFormatError("empty entity_id at line " + std::to_string(line_no));
        if (!seen.insert(id).second) throw DuplicateEntityIdError(id);
        table.entity_ids.push_back(id);
        for (std::size_t c = 0; c < schema.size(); ++c) {
            table.columns[c].values.push_back(parse_cell(fields[field_of_column[c]]));
        }
    }
    return table;
}

IndicatorTable adjust_for_rate(const IndicatorTable& table, double rate) {
    if (!(rate > 0.0)) {
        throw NonPositiveRateError("rate must be positive, got " + format_number(rate));
    }
    IndicatorTable out = table;
    for (Column& c : out.columns) {
        for (double& v : c.values) {
            if (!is_missing(v)) v /= rate;
        }
        c.unit = annotate_rate_adjusted(c.unit);
    }
    return out;
}

IndicatorTable adjust_for_rate(const IndicatorTable& table, const std::string& rate_column) {
    const Column* rates = table.find_column(rate_column);
    if (rates == nullptr) throw MissingColumnError("rate column not found: " + rate_column);
    for (std::size_t i = 0; i < rates->values.size(); ++i) {
        const double r = rates->values[i];
        if (is_missing(r) || !(r > 0.0)) {
            throw NonPositiveRateError("rate for entity '" + table.entity_ids[i] +
                                       "' is not a positive number");
        }
    }
    IndicatorTable out = table;
    for (Column& c : out.columns) {
        if (c.name == rate_column) continue;
        for (std::size_t i = 0; i < c.values.size(); ++i) {
            if (!is_missing(c.values[i])) c.values[i] /= rates->values[i];
        }
        c.unit = annotate_rate_adjusted(c.unit);
    }
    return out;
}

ImputeResult impute_missing(const IndicatorTable& table) {
    ImputeResult result;
    result.table = table;
    for (Column& c : result.table.columns) {
        std::vector<double> observed;
        observed.reserve(c.values.size());
        for (double v : c.values) {
            if (!is_missing(v)) observed.push_back(v);
        }
        if (observed.empty() && !c.values.empty()) {
            throw AllMissingColumnError("column has no observed values: " + c.name);
        }
        if (observed.size() == c.values.size()) continue;
        const double median = column_median(std::move(observed));
        for (double& v : c.values) {
            if (is_missing(v)) {
                v = median;
                ++result.imputed_cells;
            }
        }
    }
    return result;
}

FeatureMatrix standardize(const IndicatorTable& table) {
    const std::size_t n = table.n_entities();
    const std::size_t d = table.columns.size();
    FeatureMatrix features;
    features.X = Matrix(n, d);
    features.feature_names.reserve(d);
    features.standardization.reserve(d);

    for (std::size_t c = 0; c < d; ++c) {
        const Column& col = table.columns[c];
        features.feature_names.push_back(col.name);
        double mean = 0.0;
        for (double v : col.values) mean += v;
        if (n > 0) mean /= static_cast<double>(n);
        double var = 0.0;
        for (double v : col.values) {
            const double dv = v - mean;
            var += dv * dv;
        }
        if (n > 0) var /= static_cast<double>(n);
        double sd = std::sqrt(var);
        if (sd == 0.0) sd = 1.0;  // constant column maps to all zeros
        features.standardization.push_back({mean, sd});
        for (std::size_t i = 0; i < n; ++i) {
            features.X(i, c) = (col.values[i] - mean) / sd;
        }
    }
    return features;
}

Matrix destandardize(const FeatureMatrix& features) {
    Matrix out(features.X.rows(), features.X.cols());
    for (std::size_t c = 0; c < features.X.cols(); ++c) {
        const ColumnScale& scale = features.standardization[c];
        for (std::size_t i = 0; i < features.X.rows(); ++i) {
            out(i, c) = features.X(i, c) * scale.sd + scale.mean;
        }
    }
    return out;
}

DescriptiveStats describe(const std::vector<double>& column) {
    std::vector<double> observed;
    observed.reserve(column.size());
    for (double v : column) {
        if (!is_missing(v)) observed.push_back(v);
    }
    if (observed.empty()) throw EmptyColumnError("describe requires at least one observed value");

    // summing in sorted order makes the result independent of input order
    std::sort(observed.begin(), observed.end());

    DescriptiveStats stats;
    const std::size_t n = observed.size();
    double sum = 0.0;
    for (double v : observed) sum += v;
    stats.mean = sum / static_cast<double>(n);
    double var = 0.0;
    for (double v : observed) {
        const double d = v - stats.mean;
        var += d * d;
    }
    stats.sd = std::sqrt(var / static_cast<double>(n));
    stats.median = (n % 2 == 1) ? observed[n / 2]
                                : 0.5 * (observed[n / 2 - 1] + observed[n / 2]);
    stats.min = observed.front();
    stats.max = observed.back();
    return stats;
}

std::string descriptive_stats_csv(const IndicatorTable& table) {
    std::string out = "variable,mean,median,sd,min,max\n";
    for (const Column& c : table.columns) {
        const DescriptiveStats s = describe(c.values);
        out += c.name;
        out += ',';
        out += format_number(s.mean);
        out += ',';
        out += format_number(s.median);
        out += ',';
        out += format_number(s.sd);
        out += ',';
        out += format_number(s.min);
        out += ',';
        out += format_number(s.max);
        out += '\n';
    }
    return out;
}

}  // namespace speccl
