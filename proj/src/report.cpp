#include "speccl/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <string>
#include <system_error>

#include <json.hpp>

#include "speccl/errors.hpp"
#include "svg.hpp"

namespace speccl {

namespace {

constexpr std::size_t kDefaultKMax = 10;

std::string format_number(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + path.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw IoError("cannot write " + path.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot write " + path.string() + ": " + ec.message());
}

}  // namespace

std::vector<std::string> default_category_names(std::size_t k) {
    switch (k) {
        case 1: return {"All"};
        case 2: return {"Low", "High"};
        case 3: return {"Low", "Medium", "High"};
        case 4: return {"Low", "Medium-Low", "Medium-High", "High"};
        case 5: return {"Low", "Medium-Low", "Medium", "Medium-High", "High"};
        default: {
            std::vector<std::string> names;
            names.reserve(k);
            for (std::size_t i = 1; i <= k; ++i) names.push_back("Tier " + std::to_string(i));
            return names;
        }
    }
}

CategoryAssignment label_categories(const std::vector<int>& labels,
                                    const std::vector<double>& reference,
                                    const std::vector<std::string>& names) {
    std::set<int> distinct(labels.begin(), labels.end());
    if (!distinct.empty() && *distinct.begin() < 0) {
        throw KOutOfRangeError("cluster labels must be nonnegative");
    }
    if (distinct.size() != names.size()) {
        throw CountMismatchError(std::to_string(distinct.size()) + " clusters vs " +
                                 std::to_string(names.size()) + " category names");
    }

    struct ClusterMean {
        int label;
        double mean;
    };
    std::vector<ClusterMean> means;
    means.reserve(distinct.size());
    for (int label : distinct) {
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] == label) {
                sum += reference[i];
                ++count;
            }
        }
        means.push_back({label, sum / static_cast<double>(count)});
    }
    std::sort(means.begin(), means.end(), [](const ClusterMean& a, const ClusterMean& b) {
        if (a.mean != b.mean) return a.mean < b.mean;
        return a.label < b.label;  // tie: smaller cluster label ranks lower
    });

    CategoryAssignment assignment;
    assignment.category_order = names;
    assignment.labels = labels;
    assignment.reference_values = reference;
    const int max_label = *std::max_element(distinct.begin(), distinct.end());
    assignment.category_by_cluster.assign(static_cast<std::size_t>(max_label) + 1, "");
    for (std::size_t rank = 0; rank < means.size(); ++rank) {
        assignment.category_by_cluster[static_cast<std::size_t>(means[rank].label)] = names[rank];
    }
    return assignment;
}

ShareSummary category_shares(const CategoryAssignment& assignment) {
    if (assignment.labels.empty()) throw EmptyAssignmentError("no entities assigned");

    ShareSummary summary;
    summary.total_entities = assignment.labels.size();
    for (const std::string& name : assignment.category_order) {
        std::size_t count = 0;
        for (std::size_t i = 0; i < assignment.labels.size(); ++i) {
            if (assignment.category_of(i) == name) ++count;
        }
        const double pct = 100.0 * static_cast<double>(count) /
                           static_cast<double>(summary.total_entities);
        summary.shares.push_back({name, count, static_cast<int>(std::llround(pct))});
    }
    return summary;
}

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json config_echo(const PipelineRun& run) {
    const PipelineConfig& config = run.config;
    ordered_json j;
    j["columns"] = config.columns;
    if (config.adjust_rate) {
        j["adjust_rate"] = *config.adjust_rate;
    } else if (config.adjust_rate_column) {
        j["adjust_rate"] = *config.adjust_rate_column;
    } else {
        j["adjust_rate"] = nullptr;
    }
    j["sigma"] = run.sigma;
    j["sigma_mode"] = run.sigma_was_auto ? "auto" : "fixed";
    if (config.knn) {
        j["knn"] = *config.knn;
    } else {
        j["knn"] = nullptr;
    }
    j["laplacian"] = to_string(config.variant);
    j["row_normalize"] = run.row_normalized;
    j["k"] = run.final_k;
    j["k_mode"] = run.k_was_auto ? "auto" : "fixed";
    j["k_range"] = {run.k_min_effective, run.k_max_effective};
    j["seed"] = config.seed;
    j["restarts"] = config.restarts;
    j["max_iter"] = config.max_iter;
    j["tol"] = config.tol;
    j["silhouette_space"] = to_string(config.silhouette_space);
    j["reference"] = run.reference_column;
    return j;
}

}  // namespace

std::string summary_json(const PipelineRun& run) {
    ordered_json j;
    j["schema"] = 1;

    ordered_json input;
    input["path"] = run.config.input.string();
    input["entities"] = run.table.n_entities();
    input["columns"] = run.config.columns;
    input["imputed_cells"] = run.imputed_cells;
    j["input"] = input;

    j["config"] = config_echo(run);

    ordered_json stats = ordered_json::array();
    for (const Column& c : run.table.columns) {
        const DescriptiveStats s = describe(c.values);
        ordered_json row;
        row["variable"] = c.name;
        row["unit"] = c.unit;
        row["mean"] = s.mean;
        row["median"] = s.median;
        row["sd"] = s.sd;
        row["min"] = s.min;
        row["max"] = s.max;
        stats.push_back(row);
    }
    j["descriptive_stats"] = stats;

    ordered_json selection;
    selection["eigenvalues"] = run.selection.eigenvalues;
    selection["gaps"] = run.selection.gaps;
    selection["chosen_k"] = run.selection.chosen_k;
    ordered_json by_k = ordered_json::object();
    for (const auto& [k, value] : run.selection.silhouette_by_k) {
        by_k[std::to_string(k)] = value;
    }
    selection["silhouette_by_k"] = by_k;
    selection["silhouette_space"] = to_string(run.selection.silhouette_space);
    j["selection"] = selection;

    ordered_json clustering;
    clustering["k"] = run.final_k;
    clustering["inertia"] = run.clustering.inertia;
    clustering["iterations"] = run.clustering.iterations;
    clustering["restarts"] = run.clustering.restarts_used;
    clustering["seed"] = run.clustering.seed;
    ordered_json centroids = ordered_json::array();
    for (std::size_t c = 0; c < run.clustering.centroids.rows(); ++c) {
        ordered_json row = ordered_json::array();
        for (std::size_t d = 0; d < run.clustering.centroids.cols(); ++d) {
            row.push_back(run.clustering.centroids(c, d));
        }
        centroids.push_back(row);
    }
    clustering["centroids"] = centroids;
    j["clustering"] = clustering;

    ordered_json categories;
    categories["order"] = run.assignment.category_order;
    ordered_json by_cluster = ordered_json::object();
    for (std::size_t c = 0; c < run.assignment.category_by_cluster.size(); ++c) {
        by_cluster[std::to_string(c)] = run.assignment.category_by_cluster[c];
    }
    categories["by_cluster"] = by_cluster;
    categories["reference"] = run.reference_column;
    ordered_json shares = ordered_json::array();
    for (const CategoryShare& share : run.shares.shares) {
        ordered_json row;
        row["category"] = share.category;
        row["count"] = share.count;
        row["percent"] = share.percent;
        shares.push_back(row);
    }
    categories["shares"] = shares;
    categories["total_entities"] = run.shares.total_entities;
    j["categories"] = categories;

    return j.dump(2) + "\n";
}

std::string entities_csv(const PipelineRun& run) {
    std::string out = "entity_id";
    for (const Column& c : run.table.columns) {
        out += ',';
        out += c.name;
    }
    out += ",cluster,category\n";
    for (std::size_t i = 0; i < run.table.n_entities(); ++i) {
        out += run.table.entity_ids[i];
        for (const Column& c : run.table.columns) {
            out += ',';
            out += format_number(c.values[i]);
        }
        out += ',';
        out += std::to_string(run.clustering.labels[i]);
        out += ',';
        out += run.assignment.category_of(i);
        out += '\n';
    }
    return out;
}

void emit_report(const PipelineRun& run, const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir.string() + ": " + ec.message());
    write_file_atomic(out_dir / "entities.csv", entities_csv(run));
    write_file_atomic(out_dir / "summary.json", summary_json(run));
    write_file_atomic(out_dir / "stats.csv", descriptive_stats_csv(run.table));
}

void emit_plots(const PipelineRun& run, const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir.string() + ": " + ec.message());

    svgplot::ChartSpec scree;
    scree.title = "Eigenvalues (ascending)";
    scree.x_label = "index";
    scree.y_label = "eigenvalue";
    for (std::size_t i = 0; i < run.selection.eigenvalues.size(); ++i) {
        scree.x.push_back(static_cast<double>(i + 1));
        scree.y.push_back(run.selection.eigenvalues[i]);
    }
    scree.marked_x = static_cast<double>(run.selection.chosen_k);
    scree.marked_name = "chosen_k";
    write_file_atomic(out_dir / "scree.svg", svgplot::line_chart(scree));

    svgplot::ChartSpec gaps;
    gaps.title = "Eigenvalue gaps";
    gaps.x_label = "index";
    gaps.y_label = "gap";
    for (std::size_t i = 0; i < run.selection.gaps.size(); ++i) {
        gaps.x.push_back(static_cast<double>(i + 1));
        gaps.y.push_back(run.selection.gaps[i]);
    }
    gaps.marked_x = static_cast<double>(run.selection.chosen_k);
    gaps.marked_name = "chosen_k";
    write_file_atomic(out_dir / "eigen_gaps.svg", svgplot::bar_chart(gaps));

    svgplot::ChartSpec sil;
    sil.title = "Mean silhouette by cluster count";
    sil.x_label = "clusters";
    sil.y_label = "mean silhouette";
    for (const auto& [k, value] : run.selection.silhouette_by_k) {
        sil.x.push_back(static_cast<double>(k));
        sil.y.push_back(value);
    }
    write_file_atomic(out_dir / "silhouette.svg", svgplot::line_chart(sil));
}

namespace {

std::string similarity_csv(const PipelineRun& run) {
    std::string out = "entity_id";
    for (const std::string& id : run.table.entity_ids) {
        out += ',';
        out += id;
    }
    out += '\n';
    const Matrix& S = run.similarity.S;
    for (std::size_t i = 0; i < S.rows(); ++i) {
        out += run.table.entity_ids[i];
        for (std::size_t j = 0; j < S.cols(); ++j) {
            out += ',';
            out += format_number(S(i, j));
        }
        out += '\n';
    }
    return out;
}

std::string eigenvalues_csv(const PipelineRun& run) {
    std::string out = "index,eigenvalue\n";
    for (std::size_t i = 0; i < run.selection.eigenvalues.size(); ++i) {
        out += std::to_string(i + 1);
        out += ',';
        out += format_number(run.selection.eigenvalues[i]);
        out += '\n';
    }
    return out;
}

IndicatorTable select_columns(const IndicatorTable& table, const std::vector<std::string>& names) {
    IndicatorTable out;
    out.entity_ids = table.entity_ids;
    out.provenance = table.provenance;
    for (const std::string& name : names) {
        const Column* c = table.find_column(name);
        if (c == nullptr) throw MissingColumnError("column not found: " + name);
        out.columns.push_back(*c);
    }
    return out;
}

}  // namespace

PipelineRun run_pipeline(const PipelineConfig& config) {
    if (config.columns.empty()) throw ConfigError("at least one column must be selected");
    if (config.adjust_rate && config.adjust_rate_column) {
        throw ConfigError("adjust-rate accepts a scalar or a column name, not both");
    }
    if (config.k_min < 2) throw RangeInvalidError("k range must start at 2 or above");
    if (config.k_max && *config.k_max < config.k_min) {
        throw RangeInvalidError("k range is empty");
    }

    PipelineRun run;
    run.config = config;

    // load + impute + adjust, then keep the clustered columns only
    std::vector<std::string> schema = config.columns;
    if (config.adjust_rate_column &&
        std::find(schema.begin(), schema.end(), *config.adjust_rate_column) == schema.end()) {
        schema.push_back(*config.adjust_rate_column);
    }
    IndicatorTable loaded = load_csv(config.input, schema);
    ImputeResult imputed = impute_missing(loaded);
    run.imputed_cells = imputed.imputed_cells;
    IndicatorTable adjusted = std::move(imputed.table);
    if (config.adjust_rate) {
        adjusted = adjust_for_rate(adjusted, *config.adjust_rate);
    } else if (config.adjust_rate_column) {
        adjusted = adjust_for_rate(adjusted, *config.adjust_rate_column);
    }
    run.table = select_columns(adjusted, config.columns);

    run.features = standardize(run.table);
    const std::size_t n = run.table.n_entities();

    run.sigma_was_auto = !config.sigma.has_value();
    run.sigma = config.sigma ? *config.sigma : median_heuristic_sigma(run.features.X);
    run.similarity = gaussian_similarity(run.features.X, run.sigma);
    if (config.knn) run.similarity = knn_sparsify(run.similarity, *config.knn);

    run.row_normalized =
        config.row_normalize.value_or(config.variant == LaplacianVariant::kSymmetricNormalized);
    const LaplacianMatrix lap = laplacian(run.similarity, config.variant);
    run.degrees = lap.degrees;
    run.eigen = eigendecompose_symmetric(lap.L);

    // silhouette sweep; degenerate n can leave no valid candidate range
    run.k_min_effective = config.k_min;
    run.k_max_effective = std::min(config.k_max.value_or(kDefaultKMax), n >= 1 ? n - 1 : 0);
    if (run.k_max_effective >= run.k_min_effective) {
        SweepConfig sweep;
        sweep.variant = config.variant;
        sweep.row_normalize = run.row_normalized;
        sweep.k_min = run.k_min_effective;
        sweep.k_max = run.k_max_effective;
        sweep.kmeans.seed = config.seed;
        sweep.kmeans.restarts = config.restarts;
        sweep.kmeans.max_iter = config.max_iter;
        sweep.kmeans.tol = config.tol;
        sweep.space = config.silhouette_space;
        sweep.features = &run.features.X;
        run.selection = sweep_k(run.eigen, sweep);
    } else {
        // too few entities to sweep: report the spectrum and pick within the gaps
        run.selection.eigenvalues = run.eigen.eigenvalues;
        run.selection.gaps = eigen_gaps(run.eigen.eigenvalues);
        const std::size_t hi = run.selection.gaps.size();
        const std::size_t lo = std::min(config.k_min, hi);
        run.selection.chosen_k = optimal_k_eigengap(run.selection.gaps, lo, hi);
        run.selection.silhouette_space = config.silhouette_space;
    }

    run.k_was_auto = !config.fixed_k.has_value();
    run.final_k = config.fixed_k ? *config.fixed_k : run.selection.chosen_k;
    if (run.final_k < 1 || run.final_k > n) {
        throw KOutOfRangeError("cluster count must be in [1, n], got " +
                               std::to_string(run.final_k));
    }

    run.embedding = embed(run.eigen, run.final_k, run.row_normalized);
    KMeansParams params;
    params.k = run.final_k;
    params.seed = config.seed;
    params.restarts = config.restarts;
    params.max_iter = config.max_iter;
    params.tol = config.tol;
    run.clustering = kmeans(run.embedding.U, params);

    run.reference_column = config.reference.value_or(config.columns.front());
    const Column* reference = run.table.find_column(run.reference_column);
    if (reference == nullptr) {
        throw MissingColumnError("reference column not found: " + run.reference_column);
    }
    const std::vector<std::string> names = config.category_names.empty()
                                               ? default_category_names(run.final_k)
                                               : config.category_names;
    run.assignment = label_categories(run.clustering.labels, reference->values, names);
    run.shares = category_shares(run.assignment);

    if (!config.out_dir.empty()) {
        emit_report(run, config.out_dir);
        if (config.plots) emit_plots(run, config.out_dir);
        if (config.dump_matrices) {
            write_file_atomic(config.out_dir / "similarity.csv", similarity_csv(run));
            write_file_atomic(config.out_dir / "eigenvalues.csv", eigenvalues_csv(run));
        }
    }
    return run;
}

}  // namespace speccl
