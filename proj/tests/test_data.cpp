#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <ncr/data.hpp>
#include <ncr/linalg.hpp>

using namespace ncr;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& body = "")
        : path("/tmp/ncr_data_test_" + name) {
        if (!body.empty()) {
            std::ofstream f(path);
            f << body;
        }
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("fit_normalizer records per-column ranges") {
    const NormStats s = fit_normalizer(Matrix::from_rows({{0}, {5}, {10}}));
    CHECK(s.col_min[0] == 0.0);
    CHECK(s.col_max[0] == 10.0);

    const NormStats c = fit_normalizer(Matrix::from_rows({{3}, {3}}));
    CHECK(c.col_min[0] == 3.0);
    CHECK(c.col_max[0] == 3.0);

    const NormStats two =
        fit_normalizer(Matrix::from_rows({{0, 100}, {10, 200}}));
    CHECK(two.col_min[1] == 100.0);
    CHECK(two.col_max[1] == 200.0);
    CHECK(two.col_max[0] == 10.0);
}

TEST_CASE("apply_normalizer maps to [0,1] with clipping") {
    const Matrix x = Matrix::from_rows({{0}, {5}, {10}});
    const NormStats s = fit_normalizer(x);
    const Matrix z = apply_normalizer(x, s);
    CHECK(z(0, 0) == 0.0);
    CHECK(z(1, 0) == 0.5);
    CHECK(z(2, 0) == 1.0);

    // out-of-range test values clip to the unit interval
    const Matrix t = apply_normalizer(Matrix::from_rows({{12}, {-3}}), s);
    CHECK(t(0, 0) == 1.0);
    CHECK(t(1, 0) == 0.0);

    // constant columns collapse to zero
    const Matrix cz = apply_normalizer(Matrix::from_rows({{3}, {3}}),
                                       fit_normalizer(Matrix(2, 1, 3.0)));
    CHECK(cz(0, 0) == 0.0);
    CHECK(cz(1, 0) == 0.0);

    // idempotent on already-normalized data with unit stats
    NormStats unit;
    unit.col_min = {0.0};
    unit.col_max = {1.0};
    const Matrix u = Matrix::from_rows({{0.0}, {0.25}, {1.0}});
    const Matrix uu = apply_normalizer(u, unit);
    for (std::size_t i = 0; i < u.rows(); ++i) CHECK(uu(i, 0) == u(i, 0));

    CHECK_THROWS(apply_normalizer(Matrix(2, 2, 0.5), s));  // column mismatch
}

TEST_CASE("train columns normalize to full span") {
    Matrix x(7, 2);
    for (std::size_t i = 0; i < 7; ++i) {
        x(i, 0) = static_cast<double>(i) * 3.5 - 2.0;
        x(i, 1) = 40.0 - static_cast<double>(i * i);
    }
    const Matrix z = apply_normalizer(x, fit_normalizer(x));
    for (std::size_t j = 0; j < 2; ++j) {
        double lo = 1e300, hi = -1e300;
        for (std::size_t i = 0; i < 7; ++i) {
            lo = std::min(lo, z(i, j));
            hi = std::max(hi, z(i, j));
        }
        CHECK(lo == 0.0);
        CHECK(hi == 1.0);
    }
}

TEST_CASE("make_split partitions deterministically") {
    const SplitPlan p = make_split(10, 0.2, 42, 5);
    CHECK(p.test_indices.size() == 2);
    CHECK(p.train_indices.size() == 8);

    // disjoint and exhaustive
    std::set<std::size_t> seen(p.train_indices.begin(),
                               p.train_indices.end());
    seen.insert(p.test_indices.begin(), p.test_indices.end());
    CHECK(seen.size() == 10);

    // positional fold ids give sizes {2,2,2,1,1}
    std::vector<int> counts(5, 0);
    for (int f : p.fold_of_train) counts[static_cast<std::size_t>(f)]++;
    CHECK(counts == std::vector<int>{2, 2, 2, 1, 1});

    const SplitPlan q = make_split(10, 0.2, 42, 5);
    CHECK(q.train_indices == p.train_indices);
    CHECK(q.test_indices == p.test_indices);
    CHECK(q.fold_of_train == p.fold_of_train);

    const SplitPlan r = make_split(10, 0.2, 43, 5);
    CHECK(r.train_indices != p.train_indices);

    CHECK_THROWS(make_split(4, 0.2, 42, 5));  // m < k
    CHECK_THROWS(make_split(10, 0.0, 42, 5));
    CHECK_THROWS(make_split(10, 1.0, 42, 5));
}

TEST_CASE("subset gathers rows in the given order") {
    Dataset d;
    d.x = Matrix::from_rows({{1, 10}, {2, 20}, {3, 30}, {4, 40}});
    d.y = {100, 200, 300, 400};
    d.feature_names = {"a", "b"};
    d.id = "demo";

    const std::vector<std::size_t> idx = {3, 0, 2};
    const Dataset s = subset(d, idx);
    REQUIRE(s.size() == 3);
    CHECK(s.x(0, 0) == 4.0);
    CHECK(s.x(1, 1) == 10.0);
    CHECK(s.y[0] == 400.0);
    CHECK(s.y[2] == 300.0);
    CHECK(s.id == "demo");
    CHECK(s.feature_names == d.feature_names);
}

TEST_CASE("generate_synthetic is deterministic and follows the line") {
    SynthSpec spec;
    spec.n = 10;
    spec.seed = 42;
    const Dataset a = generate_synthetic(spec);
    const Dataset b = generate_synthetic(spec);
    REQUIRE(a.size() == 10);
    CHECK(a.y == b.y);
    for (std::size_t i = 0; i < 10; ++i) {
        CHECK(a.x(i, 0) == b.x(i, 0));
        CHECK(a.x(i, 0) > -10.0);
        CHECK(a.x(i, 0) < 10.0);
    }
    CHECK(a.id == "synth_n10_m2_v5");

    SynthSpec neg;
    neg.n = 10;
    neg.slope = -2.0;
    neg.noise_variance = 0.1;
    CHECK(generate_synthetic(neg).id == "synth_n10_m-2_v0.1");

    // near-noiseless limit recovers the line pointwise
    SynthSpec quiet;
    quiet.n = 100;
    quiet.noise_variance = 1e-12;
    quiet.intercept = 1.5;
    const Dataset q = generate_synthetic(quiet);
    for (std::size_t i = 0; i < q.size(); ++i) {
        CHECK(std::abs(q.y[i] - (2.0 * q.x(i, 0) + 1.5)) < 1e-4);
    }
}

TEST_CASE("synthetic noise variance and slope estimate at n=1000") {
    SynthSpec spec;  // n=1000, slope 2, variance 5, seed 42
    const Dataset d = generate_synthetic(spec);
    REQUIRE(d.size() == 1000);

    // sample variance of y - 2x inside the 99% chi-squared band
    double mean = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        mean += d.y[i] - 2.0 * d.x(i, 0);
    }
    mean /= 1000.0;
    double var = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double r = d.y[i] - 2.0 * d.x(i, 0) - mean;
        var += r * r;
    }
    var /= 999.0;
    CHECK(var > 4.2);
    CHECK(var < 5.8);

    // OLS slope within 3 standard errors of the true slope
    Matrix design(d.size(), 2, 1.0);
    for (std::size_t i = 0; i < d.size(); ++i) design(i, 1) = d.x(i, 0);
    const Vector beta = solve_least_squares(design, d.y);
    double rss = 0.0, sxx = 0.0, xbar = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) xbar += d.x(i, 0);
    xbar /= 1000.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double fit = beta[0] + beta[1] * d.x(i, 0);
        rss += (d.y[i] - fit) * (d.y[i] - fit);
        sxx += (d.x(i, 0) - xbar) * (d.x(i, 0) - xbar);
    }
    const double se = std::sqrt(rss / 998.0 / sxx);
    CHECK(std::abs(beta[1] - 2.0) < 3.0 * se);
}

TEST_CASE("load_csv parses a plain numeric table") {
    TempFile f("plain.csv", "x,y\n1,2\n2,4\n3,6\n");
    CsvReport rep;
    const Dataset d = load_csv(f.path, "y", &rep);
    REQUIRE(d.size() == 3);
    REQUIRE(d.x.cols() == 1);
    CHECK(d.x(0, 0) == 1.0);
    CHECK(d.x(2, 0) == 3.0);
    CHECK(d.y == Vector{2.0, 4.0, 6.0});
    CHECK(d.feature_names == std::vector<std::string>{"x"});
    CHECK(rep.rows_total == 3);
    CHECK(rep.rows_dropped == 0);
    CHECK(rep.excluded_columns.empty());
}

TEST_CASE("load_csv drops bad rows and reports the count") {
    TempFile f("dropped.csv", "x,y\n1,2\noops,4\n3,6\n");
    CsvReport rep;
    const Dataset d = load_csv(f.path, "y", &rep);
    REQUIRE(d.size() == 2);
    CHECK(d.x(1, 0) == 3.0);
    CHECK(rep.rows_dropped == 1);
}

TEST_CASE("load_csv excludes columns that never parse as numbers") {
    TempFile f("labels.csv",
               "name,x1,x2,y\nred,1,5,2\ngreen,2,6,4\nblue,3,7,6\n");
    CsvReport rep;
    const Dataset d = load_csv(f.path, "y", &rep);
    REQUIRE(d.size() == 3);
    CHECK(d.x.cols() == 2);
    CHECK(d.feature_names == std::vector<std::string>{"x1", "x2"});
    CHECK(rep.excluded_columns == std::vector<std::string>{"name"});
    CHECK(rep.rows_dropped == 0);
}

TEST_CASE("load_csv handles quoted fields") {
    TempFile f("quoted.csv",
               "\"label, full\",x,y\n\"a, b\",1,2\n\"c\",2,4\n");
    const Dataset d = load_csv(f.path, "y", nullptr);
    REQUIRE(d.size() == 2);
    CHECK(d.x.cols() == 1);
    CHECK(d.y == Vector{2.0, 4.0});
}

TEST_CASE("load_csv error cases") {
    CHECK_THROWS(load_csv("/tmp/ncr_data_test_no_such_file.csv", "y"));

    TempFile no_target("no_target.csv", "a,b\n1,2\n");
    CHECK_THROWS(load_csv(no_target.path, "y"));

    TempFile empty("empty.csv", "x,y\n");
    CHECK_THROWS(load_csv(empty.path, "y"));

    TempFile all_bad("all_bad.csv", "x,y\na,b\nc,d\n");
    CHECK_THROWS(load_csv(all_bad.path, "y"));
}

TEST_CASE("write_csv round-trips doubles exactly") {
    SynthSpec spec;
    spec.n = 25;
    spec.seed = 7;
    const Dataset d = generate_synthetic(spec);
    TempFile f("roundtrip.csv");
    write_csv(d, f.path);
    const Dataset back = load_csv(f.path, "y", nullptr);
    REQUIRE(back.size() == d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        CHECK(back.x(i, 0) == d.x(i, 0));
        CHECK(back.y[i] == d.y[i]);
    }
}
