#include <charconv>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "speccl/errors.hpp"
#include "speccl/report.hpp"

namespace {

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::string item;
    for (char ch : csv) {
        if (ch == ',') {
            if (!item.empty()) out.push_back(item);
            item.clear();
        } else {
            item += ch;
        }
    }
    if (!item.empty()) out.push_back(item);
    return out;
}

std::optional<double> parse_double(const std::string& s) {
    double value = 0.0;
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), last, value);
    if (ec != std::errc() || ptr != last) return std::nullopt;
    return value;
}

std::optional<std::uint64_t> parse_u64(const std::string& s) {
    std::uint64_t value = 0;
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), last, value);
    if (ec != std::errc() || ptr != last) return std::nullopt;
    return value;
}

struct CliOptions {
    std::string input;
    std::string columns;
    std::string adjust_rate;
    std::string sigma = "auto";
    std::string knn = "off";
    std::string laplacian = "sym";
    std::string k = "auto";
    std::string k_range;
    std::uint64_t seed = 1;
    std::size_t restarts = 20;
    std::string silhouette_space = "embedding";
    std::string reference;
    std::string row_normalize = "auto";
    std::string out;
    bool plots = false;
    bool dump_matrices = false;
};

void add_common_flags(CLI::App& app, CliOptions& opt) {
    app.add_option("--adjust-rate", opt.adjust_rate,
                   "Divide indicators by a positive scalar or a per-entity column");
    app.add_option("--sigma", opt.sigma, "Kernel bandwidth, or 'auto' for the median heuristic");
    app.add_option("--knn", opt.knn, "Keep only k-nearest-neighbor edges, or 'off'");
    app.add_option("--laplacian", opt.laplacian, "Laplacian variant: sym or unnorm")
        ->check(CLI::IsMember({"sym", "unnorm"}));
    app.add_option("--k-range", opt.k_range, "Candidate cluster counts as 'min,max'");
    app.add_option("--seed", opt.seed, "RNG seed (CLUSTER_SEED env var overrides)");
    app.add_option("--restarts", opt.restarts, "k-means restarts");
    app.add_option("--silhouette-space", opt.silhouette_space,
                   "Space for silhouette scores: embedding or features")
        ->check(CLI::IsMember({"embedding", "features"}));
    app.add_option("--row-normalize", opt.row_normalize,
                   "Row-normalize the embedding: auto, on or off")
        ->check(CLI::IsMember({"auto", "on", "off"}));
    app.add_flag("--plots", opt.plots, "Write scree, gap and silhouette SVG charts");
    app.add_flag("--dump-matrices", opt.dump_matrices,
                 "Write similarity.csv and eigenvalues.csv for debugging");
}

speccl::PipelineConfig build_config(const CliOptions& opt) {
    speccl::PipelineConfig config;
    config.input = opt.input;
    config.columns = split_list(opt.columns);
    config.out_dir = opt.out;
    config.plots = opt.plots;
    config.dump_matrices = opt.dump_matrices;

    if (!opt.adjust_rate.empty()) {
        if (const auto rate = parse_double(opt.adjust_rate)) {
            config.adjust_rate = *rate;
        } else {
            config.adjust_rate_column = opt.adjust_rate;
        }
    }
    if (opt.sigma != "auto") {
        const auto sigma = parse_double(opt.sigma);
        if (!sigma) throw speccl::ConfigError("--sigma must be a number or 'auto'");
        config.sigma = *sigma;
    }
    if (opt.knn != "off") {
        const auto knn = parse_u64(opt.knn);
        if (!knn) throw speccl::ConfigError("--knn must be an integer or 'off'");
        config.knn = static_cast<std::size_t>(*knn);
    }
    config.variant = opt.laplacian == "unnorm" ? speccl::LaplacianVariant::kUnnormalized
                                               : speccl::LaplacianVariant::kSymmetricNormalized;
    if (opt.row_normalize != "auto") config.row_normalize = (opt.row_normalize == "on");
    if (opt.k != "auto") {
        const auto k = parse_u64(opt.k);
        if (!k) throw speccl::ConfigError("--k must be an integer or 'auto'");
        config.fixed_k = static_cast<std::size_t>(*k);
    }
    if (!opt.k_range.empty()) {
        const std::vector<std::string> parts = split_list(opt.k_range);
        const auto lo = parts.size() == 2 ? parse_u64(parts[0]) : std::nullopt;
        const auto hi = parts.size() == 2 ? parse_u64(parts[1]) : std::nullopt;
        if (!lo || !hi) throw speccl::ConfigError("--k-range must be 'min,max'");
        config.k_min = static_cast<std::size_t>(*lo);
        config.k_max = static_cast<std::size_t>(*hi);
    }
    config.seed = opt.seed;
    if (const char* env = std::getenv("CLUSTER_SEED")) {
        const auto seed = parse_u64(env);
        if (!seed) throw speccl::ConfigError("CLUSTER_SEED must be an unsigned integer");
        config.seed = *seed;
    }
    config.restarts = opt.restarts;
    config.silhouette_space = opt.silhouette_space == "features"
                                  ? speccl::SilhouetteSpace::kFeatures
                                  : speccl::SilhouetteSpace::kEmbedding;
    if (!opt.reference.empty()) config.reference = opt.reference;
    return config;
}

void print_run_summary(const speccl::PipelineRun& run) {
    std::cout << "entities: " << run.table.n_entities() << "\n";
    std::cout << "sigma: " << run.sigma << (run.sigma_was_auto ? " (auto)" : "") << "\n";
    std::cout << "chosen k: " << run.final_k << (run.k_was_auto ? " (eigen-gap)" : " (fixed)")
              << "\n";
    for (const auto& [k, s] : run.selection.silhouette_by_k) {
        std::cout << "silhouette k=" << k << ": " << s << "\n";
    }
    for (const speccl::CategoryShare& share : run.shares.shares) {
        std::cout << share.category << ": " << share.count << " (" << share.percent << "%)\n";
    }
    if (!run.config.out_dir.empty()) {
        std::cout << "report written to " << run.config.out_dir.string() << "\n";
    }
}

int run_reproduce_paper(const CliOptions& opt) {
    // One analysis per trade indicator, each clustered on its own column with
    // automatic bandwidth and cluster count. Requires columns export, import
    // and net_export; --adjust-rate adds a rate-adjusted run per indicator.
    const std::vector<std::string> indicators = {"export", "import", "net_export"};
    for (const std::string& indicator : indicators) {
        CliOptions single = opt;
        single.columns = indicator;
        single.adjust_rate.clear();
        speccl::PipelineConfig config = build_config(single);
        config.out_dir = std::filesystem::path(opt.out) / indicator;
        speccl::PipelineRun run = speccl::run_pipeline(config);
        std::cout << "[" << indicator << "] k=" << run.final_k << "\n";
        print_run_summary(run);

        if (!opt.adjust_rate.empty()) {
            CliOptions adjusted = single;
            adjusted.adjust_rate = opt.adjust_rate;
            speccl::PipelineConfig adj_config = build_config(adjusted);
            adj_config.out_dir = std::filesystem::path(opt.out) / (indicator + "_adjusted");
            speccl::PipelineRun adj_run = speccl::run_pipeline(adj_config);
            std::cout << "[" << indicator << "_adjusted] k=" << adj_run.final_k << "\n";
            print_run_summary(adj_run);
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral clustering of entities by tabular indicators"};
    app.require_subcommand(0, 1);

    CliOptions opt;
    app.add_option("--input", opt.input, "Input CSV (entity_id + numeric columns)");
    app.add_option("--columns", opt.columns, "Comma-separated indicator columns to cluster");
    app.add_option("--k", opt.k, "Cluster count, or 'auto' for the eigen-gap choice");
    app.add_option("--reference", opt.reference,
                   "Column that orders the categories (default: first clustered column)");
    app.add_option("--out", opt.out, "Output directory");
    add_common_flags(app, opt);

    CliOptions rp = opt;
    CLI::App* reproduce = app.add_subcommand(
        "reproduce-paper",
        "Run one analysis per trade indicator (export, import, net_export) and write a report "
        "directory for each");
    reproduce->add_option("--input", rp.input, "Input CSV with export,import,net_export columns")
        ->required();
    reproduce->add_option("--out", rp.out, "Output directory")->required();
    add_common_flags(*reproduce, rp);

    CLI11_PARSE(app, argc, argv);

    try {
        if (reproduce->parsed()) {
            rp.plots = true;
            return run_reproduce_paper(rp);
        }
        if (opt.input.empty() || opt.columns.empty() || opt.out.empty()) {
            throw speccl::ConfigError("--input, --columns and --out are required");
        }
        const speccl::PipelineRun run = speccl::run_pipeline(build_config(opt));
        print_run_summary(run);
        return 0;
    } catch (const speccl::Error& e) {
        std::cerr << "error: " << e.kind() << ": " << e.what() << std::endl;
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: Internal: " << e.what() << std::endl;
        return 2;
    }
}
