#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "dimcal/rng.hpp"

using dimcal::Rng;

TEST_CASE("uniform stays in [0,1) and is reproducible") {
    Rng a(42), b(42);
    for (int i = 0; i < 10000; ++i) {
        const double u = a.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        CHECK(u == b.uniform());
    }
}

TEST_CASE("uniform matches the top-53-bit mapping of mt19937_64") {
    std::mt19937_64 engine(7);
    Rng rng(7);
    for (int i = 0; i < 100; ++i) {
        const double expected = static_cast<double>(engine() >> 11) * 0x1.0p-53;
        CHECK(rng.uniform() == expected);
    }
}

TEST_CASE("normal draws have plausible moments and are reproducible") {
    Rng a(123), b(123);
    const int n = 50000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = a.normal();
        CHECK(z == b.normal());
        sum += z;
        sum_sq += z * z;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    CHECK(std::abs(mean) < 0.02);
    CHECK(std::abs(var - 1.0) < 0.03);
}

TEST_CASE("normal returns the cosine branch first, then the cached sine") {
    Rng raw(9);
    const double u1 = raw.uniform();
    const double u2 = raw.uniform();
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    Rng rng(9);
    CHECK(rng.normal() == r * std::cos(2.0 * M_PI * u2));
    CHECK(rng.normal() == r * std::sin(2.0 * M_PI * u2));
}

TEST_CASE("uniform_below respects bounds and covers small ranges") {
    Rng rng(5);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 2000; ++i) {
        const std::uint64_t v = rng.uniform_below(7);
        CHECK(v < 7);
        seen.insert(v);
    }
    CHECK(seen.size() == 7);
    CHECK(Rng(1).uniform_below(1) == 0);
}

TEST_CASE("splitmix64 matches the published reference sequence for seed 0") {
    CHECK(dimcal::splitmix64(0) == 0xE220A8397B1DCDAFULL);
    CHECK(dimcal::splitmix64(0x9E3779B97F4A7C15ULL) == 0x6E789E6AA1B965F4ULL);
}

TEST_CASE("cell_seed applies the documented hash and separates cells") {
    const std::uint64_t base = 99;
    CHECK(dimcal::cell_seed(base, 3, 7) ==
          (base ^ dimcal::splitmix64((3ULL << 32) | 7ULL)));

    std::set<std::uint64_t> seeds;
    for (std::uint64_t i = 0; i < 20; ++i)
        for (std::uint64_t j = 0; j < 40; ++j) seeds.insert(dimcal::cell_seed(base, i, j));
    CHECK(seeds.size() == 20u * 40u);
}

TEST_CASE("sample_without_replacement: full draw is a permutation") {
    Rng rng(11);
    auto s = dimcal::sample_without_replacement(30, 30, rng);
    REQUIRE(s.size() == 30);
    auto sorted = s;
    std::sort(sorted.begin(), sorted.end());
    for (std::ptrdiff_t i = 0; i < 30; ++i) CHECK(sorted[static_cast<std::size_t>(i)] == i);
}

TEST_CASE("sample_without_replacement: partial draw has distinct in-range entries") {
    Rng rng(17);
    auto s = dimcal::sample_without_replacement(100, 12, rng);
    REQUIRE(s.size() == 12);
    std::set<std::ptrdiff_t> unique(s.begin(), s.end());
    CHECK(unique.size() == 12);
    for (auto v : s) {
        CHECK(v >= 0);
        CHECK(v < 100);
    }
}

TEST_CASE("sample_without_replacement: prefix property of Fisher-Yates") {
    Rng a(23), b(23);
    auto partial = dimcal::sample_without_replacement(50, 8, a);
    auto full = dimcal::sample_without_replacement(50, 50, b);
    for (std::size_t i = 0; i < 8; ++i) CHECK(partial[i] == full[i]);
}
