#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "invopt/demand.hpp"

using namespace invopt;
using testutil::expect_error;

TEST_SUITE("demand") {

TEST_CASE("zero variance returns the rounded mean every day") {
    DemandStream s{42, 0, 0, 648.55, 0.0};
    for (int d = 0; d < 50; ++d) CHECK(sample_day(s, d) == 649);

    DemandStream half{42, 0, 0, 10.5, 0.0};
    CHECK(sample_day(half, 0) == 11);  // .5 rounds up

    DemandStream zero{42, 0, 0, 0.0, 0.0};
    CHECK(sample_day(zero, 0) == 0);
}

TEST_CASE("samples are never negative") {
    DemandStream s{7, 0, 0, 5.0, 50.0};  // mean far below the noise scale
    long zeros = 0;
    for (int d = 0; d < 10000; ++d) {
        const int v = sample_day(s, d);
        CHECK(v >= 0);
        if (v == 0) ++zeros;
    }
    CHECK(zeros > 1000);  // clamping must actually engage
}

TEST_CASE("sample mean tracks the configured mean") {
    DemandStream s{42, 0, 0, 103.5, 37.32};
    double sum = 0.0;
    const int n = 100000;
    for (int d = 0; d < n; ++d) sum += sample_day(s, d);
    const double mean = sum / n;
    // Clamping at zero biases a 103.5/37.32 normal upward by well under 0.1;
    // the Monte Carlo band below is ~8 standard errors wide.
    CHECK(mean > 102.5);
    CHECK(mean < 104.8);
}

TEST_CASE("draws are a pure function of (seed, replication, product, day)") {
    DemandStream s{123, 2, 5, 100.0, 25.0};
    std::vector<int> first, second;
    for (int d = 0; d < 200; ++d) first.push_back(sample_day(s, d));
    for (int d = 199; d >= 0; --d) second.push_back(sample_day(s, d));
    std::reverse(second.begin(), second.end());
    CHECK(first == second);

    // Any coordinate change moves the whole stream.
    DemandStream other_rep = s;
    other_rep.replication = 6;
    DemandStream other_prod = s;
    other_prod.product_index = 3;
    DemandStream other_seed = s;
    other_seed.seed = 124;
    int diff_rep = 0, diff_prod = 0, diff_seed = 0;
    for (int d = 0; d < 200; ++d) {
        if (sample_day(other_rep, d) != first[d]) ++diff_rep;
        if (sample_day(other_prod, d) != first[d]) ++diff_prod;
        if (sample_day(other_seed, d) != first[d]) ++diff_seed;
    }
    CHECK(diff_rep > 150);
    CHECK(diff_prod > 150);
    CHECK(diff_seed > 150);
}

TEST_CASE("histogram frequencies always sum to the day count") {
    DemandStream s{9, 0, 0, 103.5, 37.32};
    const auto bins = demand_histogram(s, 365, 20);
    REQUIRE(bins.size() == 20);
    long total = 0;
    for (const auto& b : bins) {
        CHECK(b.count >= 0);
        total += b.count;
    }
    CHECK(total == 365);

    // Bin edges tile [min, max] without gaps.
    for (std::size_t i = 1; i < bins.size(); ++i)
        CHECK(bins[i].lo == doctest::Approx(bins[i - 1].hi).epsilon(1e-12));
    const double width0 = bins[0].hi - bins[0].lo;
    for (const auto& b : bins)
        CHECK(b.hi - b.lo == doctest::Approx(width0).epsilon(1e-9));
}

TEST_CASE("histogram of a constant stream is a single spike") {
    DemandStream s{1, 0, 0, 42.0, 0.0};
    const auto bins = demand_histogram(s, 100, 1);
    REQUIRE(bins.size() == 1);
    CHECK(bins[0].count == 100);
    CHECK(bins[0].lo <= 42.0);
    CHECK(bins[0].hi >= 42.0);
}

TEST_CASE("the modal region covers the configured mean") {
    DemandStream s{9, 0, 0, 103.5, 37.32};
    const auto bins = demand_histogram(s, 365, 20);
    std::size_t mode = 0;
    for (std::size_t i = 1; i < bins.size(); ++i)
        if (bins[i].count > bins[mode].count) mode = i;
    // With 365 draws the tallest bin sits near the mean; allow one bin of
    // sampling slack on either side.
    const std::size_t lo_bin = mode == 0 ? 0 : mode - 1;
    const std::size_t hi_bin = std::min(mode + 1, bins.size() - 1);
    CHECK(bins[lo_bin].lo <= 103.5);
    CHECK(bins[hi_bin].hi >= 103.5);
}

TEST_CASE("histogram rejects non-positive sizes") {
    DemandStream s{1, 0, 0, 10.0, 1.0};
    expect_error<std::invalid_argument>([&] { demand_histogram(s, 0, 5); }, "days");
    expect_error<std::invalid_argument>([&] { demand_histogram(s, -3, 5); }, "days");
    expect_error<std::invalid_argument>([&] { demand_histogram(s, 10, 0); }, "bins");
}

TEST_CASE("histogram is deterministic for a given stream") {
    DemandStream s{77, 1, 0, 50.0, 10.0};
    const auto a = demand_histogram(s, 500, 12);
    const auto b = demand_histogram(s, 500, 12);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].lo == b[i].lo);
        CHECK(a[i].hi == b[i].hi);
        CHECK(a[i].count == b[i].count);
    }
}

}  // TEST_SUITE
