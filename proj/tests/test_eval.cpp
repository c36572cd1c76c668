#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <ncr/data.hpp>
#include <ncr/eval.hpp>
#include <ncr/models.hpp>
#include <ncr/rng.hpp>

using namespace ncr;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

RunRecord sample_run(const std::string& dataset, const std::string& model,
                     bool augmented, double test_r2) {
    RunRecord r;
    r.dataset_id = dataset;
    r.model = model;
    r.augmented = augmented;
    if (augmented) {
        r.q = 0.21;
        r.eps_stim = 0.05;
    }
    r.cv_score = 0.5;
    r.objective = "r2";
    r.train_metrics = Metrics{0.9, 1.0, 0.8, 80};
    r.test_metrics = Metrics{test_r2, 2.0, 1.1, 20};
    return r;
}

}  // namespace

TEST_CASE("compute_metrics hand arithmetic") {
    const Vector y = {1.0, 2.0, 3.0};
    const Metrics perfect = compute_metrics(y, y);
    CHECK(perfect.r2 == 1.0);
    CHECK(perfect.mse == 0.0);
    CHECK(perfect.mae == 0.0);
    CHECK(perfect.n == 3);

    const Metrics at_mean = compute_metrics(y, Vector(3, 2.0));
    CHECK(at_mean.r2 == 0.0);

    const Metrics hand = compute_metrics({0.0, 2.0}, {1.0, 1.0});
    CHECK(hand.mse == 1.0);
    CHECK(hand.mae == 1.0);
    CHECK(hand.r2 == 0.0);

    // zero-variance target convention
    const Metrics flat = compute_metrics(Vector(4, 5.0), {5.0, 5.1, 4.9, 5.0});
    CHECK(flat.r2 == 0.0);

    CHECK_THROWS(compute_metrics({}, {}));
    CHECK_THROWS(compute_metrics({1.0}, {1.0, 2.0}));
}

TEST_CASE("metric inequality mae^2 <= mse") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        Vector y(30), p(30);
        for (std::size_t i = 0; i < 30; ++i) {
            y[i] = rng.uniform(-5.0, 5.0);
            p[i] = y[i] + rng.uniform(-2.0, 2.0);
        }
        const Metrics m = compute_metrics(y, p);
        CHECK(m.mae * m.mae <= m.mse + 1e-12);
        CHECK(m.mse >= 0.0);
        CHECK(m.mae >= 0.0);
    }
}

TEST_CASE("mmse on noiseless data is zero") {
    Dataset d;
    d.x = Matrix(8, 1);
    d.y.resize(8);
    for (std::size_t i = 0; i < 8; ++i) {
        d.x(i, 0) = static_cast<double>(i);
        d.y[i] = 2.0 * d.x(i, 0);
    }
    CHECK(mmse(d) < 1e-10);
}

TEST_CASE("mmse equals the OLS training MSE through the other code path") {
    SynthSpec sp;
    sp.n = 200;
    sp.seed = 17;
    const Dataset d = generate_synthetic(sp);
    const FittedModel ols = fit_ols(d.x, d.y);
    const Metrics train = compute_metrics(d.y, predict(ols, d.x));
    CHECK(mmse(d) == Catch::Approx(train.mse).margin(1e-8));
}

TEST_CASE("mmse magnitude for the default synthetic spec") {
    const Dataset d = generate_synthetic(SynthSpec{});  // n=1000 variance 5
    const double v = mmse(d);
    CHECK(v > 4.0);
    CHECK(v < 5.6);
}

TEST_CASE("no unaugmented linear-feature model beats mmse in sample") {
    SynthSpec sp;
    sp.n = 60;
    sp.seed = 29;
    sp.noise_variance = 1.0;
    const Dataset d = generate_synthetic(sp);
    const double floor = mmse(d);
    for (ModelKind kind : {ModelKind::Ols, ModelKind::Ridge, ModelKind::Lasso,
                           ModelKind::Svr}) {
        ModelSpec spec;
        spec.kind = kind;
        spec.alpha = 0.1;
        spec.c = 100.0;
        spec.kernel = Kernel::Linear;
        const FittedModel m = fit_pipeline(d, spec, false);
        const Metrics train =
            compute_metrics(d.y, pipeline_predict(m, d.x));
        CHECK(train.mse >= floor - 1e-8);
    }
}

TEST_CASE("boost arithmetic") {
    CHECK(boost(0.442, 0.430) == Catch::Approx(0.0279).margin(2e-4));
    CHECK(boost(0.7, 0.7) == 0.0);
    CHECK(boost(0.5, 0.4) == Catch::Approx(0.25).margin(1e-12));
    CHECK(boost(0.3, 0.4) < 0.0);
    CHECK_THROWS_AS(boost(0.5, 0.0), std::invalid_argument);
}

TEST_CASE("summarize_boosts counting and averaging") {
    const BoostSummary equal = summarize_boosts(
        {{"a", 0.5, 0.5}, {"b", 0.3, 0.3}});
    CHECK(equal.improved_count == 0);
    CHECK_FALSE(equal.average_boost_over_improved.has_value());

    const BoostSummary mixed = summarize_boosts(
        {{"a", 0.5, 0.4}, {"b", 0.3, 0.4}});
    CHECK(mixed.improved_count == 1);
    REQUIRE(mixed.average_boost_over_improved.has_value());
    CHECK(*mixed.average_boost_over_improved ==
          Catch::Approx(0.25).margin(1e-12));
    REQUIRE(mixed.entries.size() == 2);
    CHECK(*mixed.entries[0].value > 0.0);
    CHECK(*mixed.entries[1].value < 0.0);

    // non-positive traditional R2 carries no defined boost
    const BoostSummary skip = summarize_boosts(
        {{"a", 0.5, -0.1}, {"b", 0.6, 0.5}});
    CHECK_FALSE(skip.entries[0].value.has_value());
    CHECK(skip.improved_count == 1);

    CHECK_THROWS(summarize_boosts({}));
}

TEST_CASE("boost sign follows the R2 ordering") {
    Rng rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const double trad = rng.uniform(0.05, 0.95);
        const double aug = rng.uniform(0.05, 0.95);
        const double b = boost(aug, trad);
        if (aug > trad) CHECK(b > 0.0);
        if (aug < trad) CHECK(b < 0.0);
    }
}

TEST_CASE("build_report pairs augmented runs with their baselines") {
    std::vector<RunRecord> runs;
    runs.push_back(sample_run("d1", "ridge", false, 0.430));
    runs.push_back(sample_run("d1", "ridge", true, 0.442));
    runs.push_back(sample_run("d2", "ridge", false, 0.5));
    runs.push_back(sample_run("d2", "ridge", true, 0.4));
    runs.push_back(sample_run("d3", "ols", true, 0.9));  // unpaired

    RunRecord failed = sample_run("d4", "ridge", true, 0.0);
    failed.error = "solver diverged";
    runs.push_back(failed);
    runs.push_back(sample_run("d4", "ridge", false, 0.3));

    const ExperimentReport rep = build_report(runs, {{"command", "test"}});
    REQUIRE(rep.boost_by_model.count("ridge") == 1);
    const BoostSummary& s = rep.boost_by_model.at("ridge");
    CHECK(s.entries.size() == 2);  // d4 dropped (errored), d3 wrong model
    CHECK(s.improved_count == 1);
    CHECK(rep.boost_by_model.count("ols") == 0);  // no baseline to pair

    CHECK_THROWS(build_report({}, {}));
}

TEST_CASE("report JSON carries schema, runs and boosts deterministically") {
    std::vector<RunRecord> runs;
    runs.push_back(sample_run("d1", "svr", false, 0.5));
    runs.back().kernel = "rbf";
    runs.back().c = 10.0;
    RunRecord aug = sample_run("d1", "svr", true, 0.6);
    aug.kernel = "rbf";
    aug.c = 50.0;
    aug.mmse_value = 4.9;
    runs.push_back(aug);

    const ExperimentReport rep = build_report(runs, {{"seed", "42"}});
    const nlohmann::json j = report_to_json(rep);
    CHECK(j.at("schema_version") == 1);
    CHECK(j.at("meta").at("seed") == "42");
    REQUIRE(j.at("runs").size() == 2);
    CHECK(j.at("runs")[0].at("hyperparams").at("C") == 10.0);
    CHECK(j.at("runs")[0].contains("mmse") == false);
    CHECK(j.at("runs")[1].at("mmse") == 4.9);
    CHECK(j.at("boost_summary").contains("svr"));

    // rebuilding from the same inputs yields identical bytes
    const std::string once = report_to_json(rep).dump(2);
    const std::string twice =
        report_to_json(build_report(runs, {{"seed", "42"}})).dump(2);
    CHECK(once == twice);
}

TEST_CASE("report CSV mirror has the fixed column layout") {
    std::vector<RunRecord> runs;
    runs.push_back(sample_run("d1", "ols", false, 0.5));
    runs.push_back(sample_run("d1", "ols", true, 0.6));
    const ExperimentReport rep = build_report(runs, {});
    const std::string csv = report_csv(rep);
    CHECK(csv.rfind("dataset_id,model,augmented,q,eps_stim,alpha,C,kernel,"
                    "cv_score,train_r2,train_mse,train_mae,test_r2,test_mse,"
                    "test_mae,mmse\n",
                    0) == 0);
    std::size_t newlines = 0;
    for (char ch : csv) newlines += ch == '\n' ? 1 : 0;
    CHECK(newlines == 3);  // header + two rows
    const std::string aug_row =
        "d1,ols,true," + format_double(0.21) + ',' + format_double(0.05);
    CHECK(csv.find(aug_row) != std::string::npos);
}

TEST_CASE("write_report writes both artifacts atomically") {
    const std::string json_path = "/tmp/ncr_eval_test_report.json";
    const std::string csv_path = "/tmp/ncr_eval_test_report.csv";
    std::remove(json_path.c_str());
    std::remove(csv_path.c_str());

    std::vector<RunRecord> runs;
    runs.push_back(sample_run("d1", "lasso", false, 0.4));
    const ExperimentReport rep = build_report(runs, {{"command", "test"}});
    write_report(rep, json_path, csv_path);

    const std::string body = slurp(json_path);
    CHECK(body.back() == '\n');
    const nlohmann::json parsed = nlohmann::json::parse(body);
    CHECK(parsed.at("runs").size() == 1);
    CHECK(slurp(csv_path).rfind("dataset_id,", 0) == 0);

    // no stray temp files left behind
    std::ifstream tmp(json_path + ".tmp");
    CHECK_FALSE(tmp.good());

    std::remove(json_path.c_str());
    std::remove(csv_path.c_str());
}
