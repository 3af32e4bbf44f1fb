#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "speccl/dataset.hpp"
#include "speccl/kmeans.hpp"
#include "speccl/selection.hpp"
#include "speccl/spectral.hpp"

namespace speccl {

/// Clusters ranked by the mean of a reference indicator and named in rank
/// order (e.g. Low / Medium / High).
struct CategoryAssignment {
    std::vector<std::string> category_order;       // ascending by cluster mean
    std::vector<std::string> category_by_cluster;  // cluster label -> category
    std::vector<int> labels;                       // per entity
    std::vector<double> reference_values;          // per entity

    const std::string& category_of(std::size_t entity) const {
        return category_by_cluster[static_cast<std::size_t>(labels[entity])];
    }
};

struct CategoryShare {
    std::string category;
    std::size_t count = 0;
    int percent = 0;  // round(100 * count / total), half away from zero
};

struct ShareSummary {
    std::vector<CategoryShare> shares;  // in category order
    std::size_t total_entities = 0;
};

/// Ranks clusters by the mean of `reference` and assigns names[rank]; the
/// number of distinct labels must equal names.size(). Mean ties break toward
/// the smaller cluster label.
CategoryAssignment label_categories(const std::vector<int>& labels,
                                    const std::vector<double>& reference,
                                    const std::vector<std::string>& names);

ShareSummary category_shares(const CategoryAssignment& assignment);

/// Ordered performance-tier names for k clusters; {Low, Medium, High} at k=3.
std::vector<std::string> default_category_names(std::size_t k);

struct PipelineConfig {
    std::filesystem::path input;
    std::vector<std::string> columns;

    // exchange-rate adjustment: at most one of the two
    std::optional<double> adjust_rate;
    std::optional<std::string> adjust_rate_column;

    std::optional<double> sigma;     // nullopt: median pairwise-distance heuristic
    std::optional<std::size_t> knn;  // nullopt: full Gaussian affinity

    LaplacianVariant variant = LaplacianVariant::kSymmetricNormalized;
    std::optional<bool> row_normalize;  // nullopt: on for sym, off for unnorm

    std::optional<std::size_t> fixed_k;  // nullopt: eigen-gap choice
    std::size_t k_min = 2;
    std::optional<std::size_t> k_max;  // nullopt: min(10, n - 1)

    std::uint64_t seed = 1;
    std::size_t restarts = 20;
    std::size_t max_iter = 300;
    double tol = 1e-9;

    SilhouetteSpace silhouette_space = SilhouetteSpace::kEmbedding;
    std::optional<std::string> reference;       // default: first clustered column
    std::vector<std::string> category_names;    // empty: default_category_names(k)

    std::filesystem::path out_dir;  // empty: compute only, write nothing
    bool plots = false;
    bool dump_matrices = false;
};

/// Everything a finished run produced; emit_* serialize pieces of it.
struct PipelineRun {
    PipelineConfig config;
    IndicatorTable table;  // selected columns after impute + adjust
    std::size_t imputed_cells = 0;
    FeatureMatrix features;
    double sigma = 0.0;
    bool sigma_was_auto = false;
    SimilarityMatrix similarity;
    std::vector<double> degrees;
    bool row_normalized = false;
    EigenSystem eigen;
    SelectionReport selection;
    std::size_t k_min_effective = 2;
    std::size_t k_max_effective = 2;
    bool k_was_auto = false;
    std::size_t final_k = 0;
    SpectralEmbedding embedding;
    ClusteringResult clustering;
    std::string reference_column;
    CategoryAssignment assignment;
    ShareSummary shares;
};

/// load -> impute -> adjust -> standardize -> affinity -> Laplacian ->
/// eigendecompose -> choose k -> embed -> k-means -> silhouette sweep ->
/// label -> emit (when out_dir is set).
PipelineRun run_pipeline(const PipelineConfig& config);

/// Deterministic serializations; identical runs produce identical bytes.
std::string summary_json(const PipelineRun& run);
std::string entities_csv(const PipelineRun& run);

/// Writes entities.csv, summary.json, stats.csv (atomic rename per file).
void emit_report(const PipelineRun& run, const std::filesystem::path& out_dir);

/// Writes scree.svg, eigen_gaps.svg, silhouette.svg.
void emit_plots(const PipelineRun& run, const std::filesystem::path& out_dir);

}  // namespace speccl
