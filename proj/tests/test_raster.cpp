#include <doctest.h>

#include <random>

#include "eff/raster.hpp"
#include "oracles.hpp"

using namespace eff;

namespace {

BinaryMask random_mask(std::mt19937_64& rng, int w, int h, int density_pct) {
    BinaryMask mask(w, h);
    for (auto& bit : mask.bits) bit = (rng() % 100) < static_cast<std::uint64_t>(density_pct);
    return mask;
}

} // namespace

TEST_CASE("pad_mask with pad 0 is the identity") {
    std::mt19937_64 rng(7);
    const BinaryMask mask = random_mask(rng, 17, 9, 30);
    CHECK(pad_mask(mask, 0.0) == mask);
}

TEST_CASE("single pixel padded by 1 becomes a plus shape") {
    BinaryMask mask(5, 5);
    mask.set(2, 2);
    const BinaryMask padded = pad_mask(mask, 1.0);
    CHECK(padded.count() == 5); // diagonals are sqrt(2) > 1 away
    CHECK(padded.get(2, 2));
    CHECK(padded.get(1, 2));
    CHECK(padded.get(3, 2));
    CHECK(padded.get(2, 1));
    CHECK(padded.get(2, 3));
}

TEST_CASE("single pixel padded by 1.5 becomes a 3x3 square") {
    BinaryMask mask(5, 5);
    mask.set(2, 2);
    const BinaryMask padded = pad_mask(mask, 1.5);
    CHECK(padded.count() == 9); // sqrt(2) ~ 1.414 <= 1.5 includes diagonals
    for (int y = 1; y <= 3; ++y)
        for (int x = 1; x <= 3; ++x) CHECK(padded.get(x, y));
}

TEST_CASE("padding an empty mask stays empty") {
    const BinaryMask mask(6, 4);
    CHECK(pad_mask(mask, 3.0).count() == 0);
}

TEST_CASE("pad_mask matches brute-force dilation and is monotone") {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 25; ++iter) {
        const int w = 4 + static_cast<int>(rng() % 28);
        const int h = 4 + static_cast<int>(rng() % 28);
        const BinaryMask mask = random_mask(rng, w, h, 10);
        const double pad_a = static_cast<double>(rng() % 40) / 10.0;
        const double pad_b = pad_a + static_cast<double>(rng() % 30) / 10.0;

        const BinaryMask got_a = pad_mask(mask, pad_a);
        CHECK(got_a == oracle::pad_brute(mask, pad_a));

        const BinaryMask got_b = pad_mask(mask, pad_b);
        for (std::size_t i = 0; i < mask.bits.size(); ++i) {
            if (mask.bits[i]) CHECK(got_a.bits[i]); // output contains the input
            if (got_a.bits[i]) CHECK(got_b.bits[i]); // larger pad contains smaller
        }
    }
}

TEST_CASE("squared distances are exact integers matching brute force") {
    std::mt19937_64 rng(1234);
    for (int iter = 0; iter < 20; ++iter) {
        const int w = 3 + static_cast<int>(rng() % 30);
        const int h = 3 + static_cast<int>(rng() % 30);
        BinaryMask mask = random_mask(rng, w, h, 8);
        if (!mask.any()) mask.set(static_cast<int>(rng() % w), static_cast<int>(rng() % h));
        const std::vector<double> sq = squared_distance_grid(mask);
        const std::vector<double> ref = oracle::distance_brute(mask);
        for (std::size_t i = 0; i < sq.size(); ++i) {
            CHECK(std::sqrt(sq[i]) == doctest::Approx(ref[i]).epsilon(1e-12));
            CHECK(sq[i] == static_cast<double>(static_cast<long long>(sq[i])));
        }
    }
}
