#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "chromadec/chromadec.hpp"
#include "oracles.hpp"

using namespace chromadec;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v)
        x = dist(rng);
    return v;
}

} // namespace

TEST_CASE("channel vector validation") {
    const ChannelVector ok({0.2, 0.5, 0.9});
    CHECK(ok.size() == 3);
    CHECK(ok[0] == 0.2);
    CHECK(ok[2] == 0.9);

    CHECK_NOTHROW(ChannelVector({0.0, 0.0, 0.0}));
    CHECK_NOTHROW(ChannelVector({1.0}));
    CHECK_THROWS_AS(ChannelVector({}), DimensionError);
    CHECK_THROWS_AS(ChannelVector({0.2, 1.5, 0.9}), DomainError);
    CHECK_THROWS_AS(ChannelVector({-0.1}), DomainError);
    CHECK_THROWS_AS(ChannelVector({0.5, std::nan("")}), DomainError);

    try {
        ChannelVector({0.2, 1.5, 0.9});
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("1") != std::string::npos);
        CHECK(std::string(e.what()).find("1.5") != std::string::npos);
    }
}

TEST_CASE("code words") {
    const CodeWord yellow = CodeWord::from_string("011");
    CHECK(yellow.mask() == 6);
    CHECK(yellow.size() == 3);
    CHECK_FALSE(yellow.bit(0));
    CHECK(yellow.bit(1));
    CHECK(yellow.bit(2));
    CHECK(yellow.to_string() == "011");
    CHECK(yellow.unit_vector() == std::vector<double>{0.0, 1.0, 1.0});

    CHECK(CodeWord(0, 3).all_zeros());
    CHECK(CodeWord(7, 3).all_ones());
    CHECK_FALSE(CodeWord(6, 3).all_zeros());
    CHECK_FALSE(CodeWord(6, 3).all_ones());

    CHECK_THROWS_AS(CodeWord(8, 3), DomainError);
    CHECK_THROWS_AS(CodeWord(0, 0), DimensionError);
    CHECK_THROWS_AS(CodeWord(0, 9), DimensionError);
    CHECK_THROWS_AS(CodeWord::from_string("01x"), ParseError);
    CHECK_THROWS_AS(CodeWord::from_string(""), DimensionError);
}

TEST_CASE("median of three") {
    CHECK(med(1, 3, 5) == 3);
    CHECK(med(1, 2, 5) == 2);
    CHECK(med(1, 5, 5) == 5);
    CHECK(med(1, 1, 5) == 1);
    CHECK(med(0.25, 0.25, 0.25) == 0.25);
    CHECK(med(-2.0, 7.0, 100.0) == 7.0);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    for (int i = 0; i < 2000; ++i) {
        const double a = dist(rng), b = dist(rng), c = dist(rng);
        const double m = med(a, b, c);
        CHECK(m == oracles::median3_sort(a, b, c));
        CHECK(m == med(c, a, b));
        CHECK(m == med(b, a, c));
        CHECK(m >= std::min({a, b, c}));
        CHECK(m <= std::max({a, b, c}));
    }
}

TEST_CASE("decode3 at the binary corners") {
    for (unsigned corner = 0; corner < 8; ++corner) {
        const ChannelVector c({corner & 1 ? 1.0 : 0.0, corner & 2 ? 1.0 : 0.0,
                               corner & 4 ? 1.0 : 0.0});
        const DecoderOutput out = decode3(c);
        for (unsigned mask = 0; mask < 8; ++mask)
            CHECK(out.activation(mask) == (mask == corner ? 1.0 : 0.0));
    }
}

TEST_CASE("decode3 named accessors and a mixed input") {
    const DecoderOutput out = decode3(ChannelVector::bgr(0.2, 0.5, 0.9));
    CHECK_THAT(out.blackness(), WithinAbs(0.1, 1e-12));
    CHECK_THAT(out.redness(), WithinAbs(0.4, 1e-12));
    CHECK_THAT(out.yellowness(), WithinAbs(0.3, 1e-12));
    CHECK_THAT(out.whiteness(), WithinAbs(0.2, 1e-12));
    CHECK(out.blueness() == 0.0);
    CHECK(out.greenness() == 0.0);
    CHECK(out.cyanness() == 0.0);
    CHECK(out.magentaness() == 0.0);
    CHECK(out.nonzero_count() == 4);

    CHECK_THROWS_AS(decode3(ChannelVector({0.5, 0.5})), DimensionError);
}

TEST_CASE("decode_n small-n examples") {
    const DecoderOutput one = decode_n(ChannelVector({0.7}));
    CHECK_THAT(one.activation(0u), WithinAbs(0.3, 1e-12));
    CHECK(one.activation(1u) == 0.7);

    // Code strings read in channel order: "01" means channel 0 off, 1 on.
    const DecoderOutput two = decode_n(ChannelVector({0.3, 0.8}));
    CHECK_THAT(two.activation(CodeWord::from_string("00")), WithinAbs(0.2, 1e-12));
    CHECK_THAT(two.activation(CodeWord::from_string("01")), WithinAbs(0.5, 1e-12));
    CHECK_THAT(two.activation(CodeWord::from_string("11")), WithinAbs(0.3, 1e-12));
    CHECK(two.activation(CodeWord::from_string("10")) == 0.0);

    const DecoderOutput four = decode_n(ChannelVector({1.0, 1.0, 1.0, 1.0}));
    CHECK(four.activation(15u) == 1.0);
    for (unsigned mask = 0; mask < 15; ++mask)
        CHECK(four.activation(mask) == 0.0);
}

TEST_CASE("decode_n at all binary corners, n up to 4") {
    for (std::size_t n = 1; n <= 4; ++n) {
        const unsigned codes = 1u << n;
        for (unsigned corner = 0; corner < codes; ++corner) {
            std::vector<double> v(n);
            for (std::size_t i = 0; i < n; ++i)
                v[i] = (corner >> i) & 1u ? 1.0 : 0.0;
            const DecoderOutput out = decode_n(ChannelVector(v));
            for (unsigned mask = 0; mask < codes; ++mask)
                CHECK(out.activation(mask) == (mask == corner ? 1.0 : 0.0));
        }
    }
}

TEST_CASE("decode3 equals decode_n on three channels") {
    std::mt19937_64 rng(22);
    for (int i = 0; i < 5000; ++i) {
        const std::vector<double> v = random_vector(rng, 3);
        const DecoderOutput a = decode3(ChannelVector(v));
        const DecoderOutput b = decode_n(ChannelVector(v));
        REQUIRE(a.activations() == b.activations());
    }
}

TEST_CASE("decode_n matches the sorting oracle bit for bit") {
    std::mt19937_64 rng(33);
    for (std::size_t n = 1; n <= 4; ++n) {
        for (int i = 0; i < 3000; ++i) {
            std::vector<double> v = random_vector(rng, n);
            if (i % 7 == 0 && n >= 2)
                v[1] = v[0];  // exercise ties
            const DecoderOutput out = decode_n(ChannelVector(v));
            const std::vector<double> ref = oracles::decode_by_sorting(v);
            REQUIRE(out.activations() == ref);
        }
    }
}

TEST_CASE("partition of unity and sparsity") {
    std::mt19937_64 rng(44);
    for (std::size_t n = 1; n <= 4; ++n) {
        for (int i = 0; i < 5000; ++i) {
            const DecoderOutput out = decode_n(ChannelVector(random_vector(rng, n)));
            REQUIRE_THAT(out.sum(), WithinAbs(1.0, 1e-12));
            REQUIRE(out.nonzero_count() <= n + 1);
        }
    }
}

TEST_CASE("permutation equivariance") {
    std::mt19937_64 rng(55);
    for (int i = 0; i < 1000; ++i) {
        const std::vector<double> v = random_vector(rng, 4);
        std::array<std::size_t, 4> perm{0, 1, 2, 3};
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<double> pv(4);
        for (std::size_t k = 0; k < 4; ++k)
            pv[perm[k]] = v[k];
        const DecoderOutput base = decode_n(ChannelVector(v));
        const DecoderOutput permuted = decode_n(ChannelVector(pv));
        for (unsigned mask = 0; mask < 16; ++mask) {
            unsigned pmask = 0;
            for (std::size_t k = 0; k < 4; ++k)
                if ((mask >> k) & 1u)
                    pmask |= 1u << perm[k];
            REQUIRE(base.activation(mask) == permuted.activation(pmask));
        }
    }
}

TEST_CASE("decoder output invariants are enforced") {
    CHECK_THROWS_AS(DecoderOutput(3, std::vector<double>(8, 0.0)), InconsistencyError);
    CHECK_THROWS_AS(DecoderOutput(3, std::vector<double>(4, 0.25)), DimensionError);
    CHECK_THROWS_AS(DecoderOutput(0, {}), DimensionError);
    std::vector<double> bad(8, 0.0);
    bad[0] = 1.5;
    bad[1] = -0.5;
    CHECK_THROWS_AS(DecoderOutput(3, bad), DomainError);
    std::vector<double> dense(8, 0.125);  // sums to 1 but 8 > n+1 nonzeros
    CHECK_THROWS_AS(DecoderOutput(3, dense), InconsistencyError);
    CHECK_THROWS_AS(decode_n(ChannelVector(std::vector<double>(9, 0.5))), DimensionError);
}

TEST_CASE("unique color enumeration") {
    CHECK(enumerate_unique_colors(3).size() == 6);
    CHECK(enumerate_unique_colors(4).size() == 14);
    CHECK(enumerate_unique_colors(1).empty());
    for (std::size_t n = 1; n <= 8; ++n) {
        const auto words = enumerate_unique_colors(n);
        CHECK(words.size() == (std::size_t{1} << n) - 2);
        for (const auto& w : words) {
            CHECK_FALSE(w.all_zeros());
            CHECK_FALSE(w.all_ones());
            CHECK(w.size() == n);
        }
    }
    CHECK_THROWS_AS(enumerate_unique_colors(0), DimensionError);
    CHECK_THROWS_AS(enumerate_unique_colors(9), DimensionError);
}

TEST_CASE("code labels") {
    CHECK(code_label3(0) == "blackness");
    CHECK(code_label3(4) == "redness");
    CHECK(code_label3(6) == "yellowness");
    CHECK(code_label3(3) == "cyanness");
    CHECK(code_label3(7) == "whiteness");
    CHECK_THROWS_AS(code_label3(8), DomainError);
}
