#pragma once

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "speccl/matrix.hpp"

namespace speccl {

inline bool is_missing(double v) { return std::isnan(v); }
double missing_value();

struct Column {
    std::string name;
    std::string unit;             // free text, e.g. "thousand USD"
    std::vector<double> values;   // NaN marks a missing cell
};

struct Provenance {
    std::string source_path;
    std::string loaded_at;  // ISO-8601 UTC; informational only, never emitted
};

/// One row per entity, one named numeric column per indicator.
struct IndicatorTable {
    std::vector<std::string> entity_ids;
    std::vector<Column> columns;
    Provenance provenance;

    std::size_t n_entities() const { return entity_ids.size(); }
    const Column* find_column(const std::string& name) const;
    std::size_t missing_cells() const;
};

struct ColumnScale {
    double mean = 0.0;
    double sd = 1.0;
};

/// Z-scored feature matrix with the per-column (mean, sd) used, so the
/// original values can be recovered exactly.
struct FeatureMatrix {
    Matrix X;
    std::vector<std::string> feature_names;
    std::vector<ColumnScale> standardization;
};

struct DescriptiveStats {
    double mean = 0.0;
    double median = 0.0;
    double sd = 0.0;
    double min = 0.0;
    double max = 0.0;
};

/// Loads a UTF-8 comma-separated file. First header cell must be `entity_id`;
/// `schema` names the numeric columns to keep (all must exist). Empty cells,
/// the literal `NA`, and any non-numeric text are recorded as missing.
IndicatorTable load_csv(const std::filesystem::path& path,
                        const std::vector<std::string>& schema);

/// Divides every numeric column by a positive scalar rate.
IndicatorTable adjust_for_rate(const IndicatorTable& table, double rate);

/// Divides every numeric column except `rate_column` by that column's
/// per-entity value, which must be strictly positive everywhere.
IndicatorTable adjust_for_rate(const IndicatorTable& table, const std::string& rate_column);

struct ImputeResult {
    IndicatorTable table;
    std::size_t imputed_cells = 0;
};

/// Replaces each missing cell by the median of its column's observed values.
ImputeResult impute_missing(const IndicatorTable& table);

/// Per-column z-score with population sd. Constant columns map to all zeros
/// and record sd = 1 so the inverse stays well defined.
FeatureMatrix standardize(const IndicatorTable& table);

/// Undoes standardize: X * sd + mean per column.
Matrix destandardize(const FeatureMatrix& features);

/// Mean, median (average of the two middle order statistics for even n),
/// population sd, min, max. Missing values are skipped.
DescriptiveStats describe(const std::vector<double>& column);

/// CSV with header variable,mean,median,sd,min,max — one row per column.
std::string descriptive_stats_csv(const IndicatorTable& table);

}  // namespace speccl
