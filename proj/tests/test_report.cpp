#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "speccl/errors.hpp"
#include "speccl/report.hpp"
#include "test_support.hpp"

using namespace speccl;
using testsupport::make_matrix;
using testsupport::read_file;
using testsupport::TempDir;

namespace {

std::size_t count_occurrences(const std::string& haystack, const std::string& needle) {
    std::size_t count = 0;
    std::size_t pos = 0;
    while ((pos = haystack.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

/// labels + per-entity reference values with the given per-cluster sizes and
/// per-cluster means (cluster c holds sizes[c] entities all at means[c]).
std::pair<std::vector<int>, std::vector<double>> sized_clusters(
    const std::vector<std::size_t>& sizes, const std::vector<double>& means) {
    std::vector<int> labels;
    std::vector<double> reference;
    for (std::size_t c = 0; c < sizes.size(); ++c) {
        for (std::size_t i = 0; i < sizes[c]; ++i) {
            labels.push_back(static_cast<int>(c));
            reference.push_back(means[c]);
        }
    }
    return {labels, reference};
}

PipelineConfig blob_config(const std::filesystem::path& csv) {
    PipelineConfig config;
    config.input = csv;
    config.columns = {"x", "y", "z"};
    config.seed = 11;
    return config;
}

}  // namespace

TEST_CASE("label_categories ranks clusters by reference mean") {
    const auto [labels, reference] = sized_clusters({2, 2, 2}, {5.0, 100.0, 1.0});
    const CategoryAssignment assignment =
        label_categories(labels, reference, {"Low", "Medium", "High"});
    CHECK(assignment.category_by_cluster[2] == "Low");
    CHECK(assignment.category_by_cluster[0] == "Medium");
    CHECK(assignment.category_by_cluster[1] == "High");
    CHECK(assignment.category_of(0) == "Medium");
}

TEST_CASE("label_categories: single cluster, mismatch, ties") {
    const auto [labels, reference] = sized_clusters({3}, {4.0});
    const CategoryAssignment only = label_categories(labels, reference, {"Only"});
    for (std::size_t i = 0; i < 3; ++i) CHECK(only.category_of(i) == "Only");

    const auto [labels2, reference2] = sized_clusters({2, 2}, {1.0, 2.0});
    CHECK_THROWS_AS(label_categories(labels2, reference2, {"Low", "Medium", "High"}),
                    CountMismatchError);

    // equal means: the smaller cluster label takes the lower category
    const auto [labels3, reference3] = sized_clusters({2, 2}, {7.0, 7.0});
    const CategoryAssignment tied = label_categories(labels3, reference3, {"Low", "High"});
    CHECK(tied.category_by_cluster[0] == "Low");
    CHECK(tied.category_by_cluster[1] == "High");
}

TEST_CASE("category order respects increasing cluster means") {
    SplitMix64 rng(21);
    for (int round = 0; round < 10; ++round) {
        const std::size_t k = 2 + rng.next_index(4);
        std::vector<std::size_t> sizes(k);
        std::vector<double> means(k);
        for (std::size_t c = 0; c < k; ++c) {
            sizes[c] = 1 + rng.next_index(5);
            means[c] = 100.0 * rng.next_double();
        }
        const auto [labels, reference] = sized_clusters(sizes, means);
        const CategoryAssignment assignment =
            label_categories(labels, reference, default_category_names(k));

        // category ranks follow sorted means
        std::vector<double> sorted_means = means;
        std::sort(sorted_means.begin(), sorted_means.end());
        for (std::size_t c = 0; c < k; ++c) {
            const auto& name = assignment.category_by_cluster[c];
            const auto rank = static_cast<std::size_t>(
                std::find(assignment.category_order.begin(), assignment.category_order.end(),
                          name) -
                assignment.category_order.begin());
            CHECK(means[c] == doctest::Approx(sorted_means[rank]));
        }
    }
}

TEST_CASE("category_shares reproduces both rounding regimes") {
    const auto [labels1, ref1] = sized_clusters({34, 27, 20}, {1.0, 2.0, 3.0});
    const ShareSummary s1 =
        category_shares(label_categories(labels1, ref1, {"Low", "Medium", "High"}));
    CHECK(s1.total_entities == 81);
    CHECK(s1.shares[0].percent == 42);
    CHECK(s1.shares[1].percent == 33);
    CHECK(s1.shares[2].percent == 25);

    const auto [labels2, ref2] = sized_clusters({18, 36, 27}, {1.0, 2.0, 3.0});
    const ShareSummary s2 =
        category_shares(label_categories(labels2, ref2, {"Low", "Medium", "High"}));
    CHECK(s2.shares[0].percent == 22);
    CHECK(s2.shares[1].percent == 44);
    CHECK(s2.shares[2].percent == 33);
    CHECK(s2.shares[0].percent + s2.shares[1].percent + s2.shares[2].percent == 99);

    const auto [labels3, ref3] = sized_clusters({81}, {1.0});
    const ShareSummary s3 = category_shares(label_categories(labels3, ref3, {"Only"}));
    CHECK(s3.shares[0].percent == 100);

    CHECK_THROWS_AS(category_shares(CategoryAssignment{}), EmptyAssignmentError);
}

TEST_CASE("share counts always sum to the entity total") {
    SplitMix64 rng(22);
    for (int round = 0; round < 10; ++round) {
        const std::size_t k = 1 + rng.next_index(5);
        std::vector<std::size_t> sizes(k);
        std::vector<double> means(k);
        for (std::size_t c = 0; c < k; ++c) {
            sizes[c] = 1 + rng.next_index(40);
            means[c] = static_cast<double>(c);
        }
        const auto [labels, reference] = sized_clusters(sizes, means);
        const ShareSummary summary =
            category_shares(label_categories(labels, reference, default_category_names(k)));
        std::size_t total = 0;
        for (const CategoryShare& share : summary.shares) {
            total += share.count;
            const double pct = 100.0 * static_cast<double>(share.count) /
                               static_cast<double>(summary.total_entities);
            CHECK(share.percent == static_cast<int>(std::llround(pct)));
        }
        CHECK(total == summary.total_entities);
    }
}

TEST_CASE("pipeline on planted blobs: exact recovery and 3 categories") {
    TempDir dir;
    const Matrix centers = make_matrix(3, 3, {0, 0, 0, 14, 0, 0, 5, 14, 7});
    const auto csv = dir.path() / "blobs.csv";
    const std::vector<int> planted = testsupport::write_blob_csv(csv, centers, 9, 0.1, 77);

    PipelineConfig config = blob_config(csv);
    config.fixed_k = 3;
    config.out_dir = dir.path() / "out";
    const PipelineRun run = run_pipeline(config);

    CHECK(testsupport::adjusted_rand_index(run.clustering.labels, planted) == doctest::Approx(1.0));

    const std::string entities = read_file(dir.path() / "out" / "entities.csv");
    CHECK(count_occurrences(entities, ",Low") == 9);
    CHECK(count_occurrences(entities, ",Medium") == 9);
    CHECK(count_occurrences(entities, ",High") == 9);
    CHECK(entities.rfind("entity_id,x,y,z,cluster,category\n", 0) == 0);
}

TEST_CASE("pipeline determinism: identical config, byte-identical outputs") {
    TempDir dir;
    const Matrix centers = make_matrix(3, 3, {0, 0, 0, 14, 0, 0, 5, 14, 7});
    const auto csv = dir.path() / "blobs.csv";
    testsupport::write_blob_csv(csv, centers, 7, 0.1, 31);

    PipelineConfig config = blob_config(csv);
    config.out_dir = dir.path() / "a";
    run_pipeline(config);
    config.out_dir = dir.path() / "b";
    run_pipeline(config);

    CHECK(read_file(dir.path() / "a" / "summary.json") ==
          read_file(dir.path() / "b" / "summary.json"));
    CHECK(read_file(dir.path() / "a" / "entities.csv") ==
          read_file(dir.path() / "b" / "entities.csv"));
    CHECK(!read_file(dir.path() / "a" / "summary.json").empty());
}

TEST_CASE("summary.json is self-describing and schema-versioned") {
    TempDir dir;
    const Matrix centers = make_matrix(3, 3, {0, 0, 0, 14, 0, 0, 5, 14, 7});
    const auto csv = dir.path() / "blobs.csv";
    testsupport::write_blob_csv(csv, centers, 7, 0.1, 32);

    PipelineConfig config = blob_config(csv);
    const PipelineRun run = run_pipeline(config);
    const nlohmann::json j = nlohmann::json::parse(summary_json(run));

    CHECK(j.at("schema") == 1);
    const auto& cfg = j.at("config");
    for (const char* key : {"sigma", "sigma_mode", "laplacian", "row_normalize", "k", "k_mode",
                            "k_range", "seed", "restarts", "max_iter", "tol", "silhouette_space",
                            "reference", "knn", "adjust_rate", "columns"}) {
        CHECK(cfg.contains(key));
    }
    CHECK(j.at("selection").contains("eigenvalues"));
    CHECK(j.at("selection").contains("gaps"));
    CHECK(j.at("selection").contains("chosen_k"));
    CHECK(j.at("selection").contains("silhouette_by_k"));
    CHECK(j.at("categories").at("shares").size() == 3);
    CHECK(j.at("input").at("entities") == 21);
}

TEST_CASE("emit_report fails with IoError naming an unwritable path") {
    TempDir dir;
    const Matrix centers = make_matrix(2, 2, {0, 0, 20, 0});
    const auto csv = dir.path() / "blobs.csv";
    testsupport::write_blob_csv(csv, centers, 5, 0.1, 33);

    PipelineConfig config;
    config.input = csv;
    config.columns = {"x", "y"};
    const PipelineRun run = run_pipeline(config);

    const auto blocker = dir.path() / "file";
    testsupport::write_file(blocker, "not a directory");
    const auto bad = blocker / "nested";
    try {
        emit_report(run, bad);
        FAIL("expected IoError");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find(bad.string()) != std::string::npos);
    }
}

TEST_CASE("emit_plots marks the chosen k and counts sweep points") {
    TempDir dir;
    const Matrix centers = make_matrix(3, 3, {0, 0, 0, 14, 0, 0, 5, 14, 7});
    const auto csv = dir.path() / "blobs.csv";
    testsupport::write_blob_csv(csv, centers, 9, 0.1, 34);

    PipelineConfig config = blob_config(csv);
    config.k_min = 2;
    config.k_max = 5;
    config.plots = true;
    config.out_dir = dir.path() / "out";
    run_pipeline(config);

    const std::string gaps = read_file(dir.path() / "out" / "eigen_gaps.svg");
    CHECK(gaps.find("<!-- chosen_k=3 -->") != std::string::npos);
    CHECK(gaps.find("stroke-dasharray") != std::string::npos);

    const std::string sil = read_file(dir.path() / "out" / "silhouette.svg");
    CHECK(count_occurrences(sil, "<circle class=\"pt\"") == 4);  // k = 2..5
}

TEST_CASE("emit_plots survives a two-entity run") {
    TempDir dir;
    const auto csv = dir.path() / "two.csv";
    testsupport::write_file(csv, "entity_id,x\na,0\nb,5\n");

    PipelineConfig config;
    config.input = csv;
    config.columns = {"x"};
    config.plots = true;
    config.out_dir = dir.path() / "out";
    const PipelineRun run = run_pipeline(config);
    CHECK(run.final_k == 1);  // only gap index 1 exists

    const std::string scree = read_file(dir.path() / "out" / "scree.svg");
    CHECK(count_occurrences(scree, "<circle class=\"pt\"") == 2);
}

TEST_CASE("pipeline propagates input errors") {
    PipelineConfig config;
    config.input = "/nonexistent/input.csv";
    config.columns = {"x"};
    CHECK_THROWS_AS(run_pipeline(config), MissingFileError);

    config.columns = {};
    CHECK_THROWS_AS(run_pipeline(config), ConfigError);
}

TEST_CASE("pipeline echoes imputation and adjustment") {
    TempDir dir;
    const auto csv = dir.path() / "data.csv";
    testsupport::write_file(csv,
                            "entity_id,v,w,rate\n"
                            "a,10,1,2\n"
                            "b,NA,2,2\n"
                            "c,30,3,2\n"
                            "d,40,4,2\n"
                            "e,50,5,2\n");

    PipelineConfig config;
    config.input = csv;
    config.columns = {"v", "w"};
    config.adjust_rate_column = "rate";
    config.k_min = 2;
    config.k_max = 3;
    const PipelineRun run = run_pipeline(config);

    CHECK(run.imputed_cells == 1);
    // v imputed to median(10,30,40,50) = 35, then divided by rate 2
    CHECK(run.table.columns[0].values[1] == doctest::Approx(17.5));
    CHECK(run.table.columns[0].unit == "rate-adjusted");
    CHECK(run.table.columns.size() == 2);  // the rate column is not clustered
}
