#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstddef>
#include <vector>

#include "chromadec/chromadec.hpp"

using namespace chromadec;
using Catch::Matchers::WithinAbs;

TEST_CASE("default curve set shape") {
    const CurveSet set = default_curves();
    REQUIRE(set.size() == 3);
    CHECK(set.curve(0).name() == "B");
    CHECK(set.curve(1).name() == "G");
    CHECK(set.curve(2).name() == "R");

    const auto& grid = set.grid();
    REQUIRE(grid.size() == 301);
    CHECK(grid.front() == 400.0);
    CHECK(grid.back() == 700.0);
    CHECK(set.curve(0).step() == 1.0);
    for (std::size_t k = 0; k < grid.size(); ++k)
        REQUIRE(grid[k] == 400.0 + double(k));

    for (const auto& c : set.curves())
        for (double r : c.responses()) {
            REQUIRE(r > 0.0);
            REQUIRE(r <= 1.0);
        }
}

TEST_CASE("default curves peak at 1 and are symmetric around their peaks") {
    const CurveSet set = default_curves();
    const double peaks[3] = {440.0, 540.0, 570.0};
    for (std::size_t c = 0; c < 3; ++c) {
        const auto& resp = set.curve(c).responses();
        const std::size_t pk = std::size_t(peaks[c] - 400.0);
        REQUIRE(resp[pk] == 1.0);
        for (double r : resp)
            REQUIRE(r <= resp[pk]);
        for (int d = 1; d <= 30; ++d) {
            if (pk >= std::size_t(d) && pk + std::size_t(d) < resp.size())
                REQUIRE(resp[pk - std::size_t(d)] == resp[pk + std::size_t(d)]);
        }
    }
}

TEST_CASE("default curves cross exactly at peak midpoints") {
    const CurveSet set = default_curves();
    const auto& b = set.curve(0).responses();
    const auto& g = set.curve(1).responses();
    const auto& r = set.curve(2).responses();
    auto at = [](double nm) { return std::size_t(nm - 400.0); };
    // Equidistant wavelengths see identical responses, bitwise.
    CHECK(b[at(490)] == g[at(490)]);
    CHECK(b[at(505)] == r[at(505)]);
    CHECK(g[at(555)] == r[at(555)]);
    CHECK(b[at(489)] > g[at(489)]);
    CHECK(b[at(491)] < g[at(491)]);
}

TEST_CASE("sensitivity curve validation") {
    const std::vector<double> g3{400, 410, 420};
    CHECK_NOTHROW(SensitivityCurve("x", g3, {0.0, 0.5, 1.0}));
    CHECK_THROWS_AS(SensitivityCurve("x", {400}, {0.5}), DimensionError);
    CHECK_THROWS_AS(SensitivityCurve("x", g3, {0.5, 0.5}), DimensionError);
    CHECK_THROWS_AS(SensitivityCurve("x", {400, 420, 410}, {0, 0, 0}), DomainError);
    CHECK_THROWS_AS(SensitivityCurve("x", {400, 410, 425}, {0, 0, 0}), DomainError);
    CHECK_THROWS_AS(SensitivityCurve("x", {420, 410, 400}, {0, 0, 0}), DomainError);
    CHECK_THROWS_AS(SensitivityCurve("x", g3, {0.0, 1.5, 0.0}), DomainError);
    CHECK_THROWS_AS(SensitivityCurve("x", g3, {0.0, -0.1, 0.0}), DomainError);
    CHECK_THROWS_AS(SensitivityCurve("x", g3, {0.0, std::nan(""), 0.0}), DomainError);
}

TEST_CASE("curve set validation") {
    const std::vector<double> g3{400, 410, 420};
    const SensitivityCurve a("a", g3, {0, 0, 0});
    const SensitivityCurve b("b", {400, 405, 410}, {0, 0, 0});
    CHECK_THROWS_AS(CurveSet({}), DimensionError);
    CHECK_THROWS_AS(CurveSet({a, a, a, a, a}), DimensionError);
    CHECK_THROWS_AS(CurveSet({a, b}), InconsistencyError);
    const CurveSet ok({a, a});
    CHECK(ok.size() == 2);
    CHECK_THROWS_AS(ok.curve(2), DimensionError);
}

TEST_CASE("merge argument validation") {
    const CurveSet set = default_curves();
    CHECK_THROWS_AS(merge(set, 0, 0, 0.5, ""), DimensionError);
    CHECK_THROWS_AS(merge(set, 0, 3, 0.5, ""), DimensionError);
    CHECK_THROWS_AS(merge(set, 7, 1, 0.5, ""), DimensionError);
    CHECK_THROWS_AS(merge(set, 0, 1, -0.1, ""), DomainError);
    CHECK_THROWS_AS(merge(set, 0, 1, 1.5, ""), DomainError);
    CHECK_THROWS_AS(merge(set, 0, 1, std::nan(""), ""), DomainError);
}

TEST_CASE("merge at t=0 is the identity") {
    const CurveSet set = default_curves();
    const CurveSet out = merge(set, 0, 2, 0.0, "ignored");
    for (std::size_t c = 0; c < 3; ++c) {
        CHECK(out.curve(c).name() == set.curve(c).name());
        REQUIRE(out.curve(c).responses() == set.curve(c).responses());
    }
}

TEST_CASE("merge at t=1 lands both curves on their pointwise mean") {
    const CurveSet set = default_curves();
    const CurveSet out = merge(set, 1, 2, 1.0, "Y");
    CHECK(out.curve(1).name() == "Y");
    CHECK(out.curve(2).name() == "Y");
    CHECK(out.curve(0).name() == "B");
    REQUIRE(out.curve(1).responses() == out.curve(2).responses());
    const auto& g = set.curve(1).responses();
    const auto& r = set.curve(2).responses();
    const auto& y = out.curve(1).responses();
    for (std::size_t k = 0; k < y.size(); ++k)
        REQUIRE(y[k] == (g[k] + r[k]) / 2.0);
    // Untouched curve passes through bitwise.
    REQUIRE(out.curve(0).responses() == set.curve(0).responses());
}

TEST_CASE("merge keeps names unless the merge is complete") {
    const CurveSet set = default_curves();
    const CurveSet halfway = merge(set, 1, 2, 0.5, "Y");
    CHECK(halfway.curve(1).name() == "G");
    CHECK(halfway.curve(2).name() == "R");
    const CurveSet unnamed = merge(set, 1, 2, 1.0, "");
    CHECK(unnamed.curve(1).name() == "G");
    CHECK(unnamed.curve(2).name() == "R");
}

TEST_CASE("partial merge interpolates and preserves the pair mean") {
    const std::vector<double> g2{500, 510};
    const CurveSet set({SensitivityCurve("lo", g2, {0.2, 0.0}),
                        SensitivityCurve("hi", g2, {0.8, 1.0})});
    const CurveSet out = merge(set, 0, 1, 0.5, "");
    CHECK_THAT(out.curve(0).responses()[0], WithinAbs(0.35, 1e-12));
    CHECK_THAT(out.curve(1).responses()[0], WithinAbs(0.65, 1e-12));
    CHECK_THAT(out.curve(0).responses()[1], WithinAbs(0.25, 1e-12));
    CHECK_THAT(out.curve(1).responses()[1], WithinAbs(0.75, 1e-12));

    const CurveSet dflt = default_curves();
    const CurveSet deep = merge(dflt, 1, 2, 0.37, "");
    const auto& g = dflt.curve(1).responses();
    const auto& r = dflt.curve(2).responses();
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double before = (g[k] + r[k]) / 2.0;
        const double after =
            (deep.curve(1).responses()[k] + deep.curve(2).responses()[k]) / 2.0;
        REQUIRE_THAT(after, WithinAbs(before, 1e-12));
        // The gap shrinks by exactly the factor (1 - t).
        REQUIRE_THAT(deep.curve(2).responses()[k] - deep.curve(1).responses()[k],
                     WithinAbs(0.63 * (r[k] - g[k]), 1e-12));
    }
}

TEST_CASE("collapse removes a duplicate curve") {
    const CurveSet merged = merge(default_curves(), 1, 2, 1.0, "Y");
    const CurveSet out = collapse(merged, 1, 2);
    REQUIRE(out.size() == 2);
    CHECK(out.curve(0).name() == "B");
    CHECK(out.curve(1).name() == "Y");
    REQUIRE(out.curve(1).responses() == merged.curve(1).responses());

    CHECK_THROWS_AS(collapse(default_curves(), 1, 2), InconsistencyError);
    CHECK_THROWS_AS(collapse(merged, 1, 1), DimensionError);
    CHECK_THROWS_AS(collapse(merged, 1, 5), DimensionError);
}

TEST_CASE("evolution stages") {
    const CurveSet tri = evolution_stage(EvolutionStage::trichromat);
    const CurveSet dflt = default_curves();
    REQUIRE(tri.size() == 3);
    for (std::size_t c = 0; c < 3; ++c) {
        CHECK(tri.curve(c).name() == dflt.curve(c).name());
        REQUIRE(tri.curve(c).responses() == dflt.curve(c).responses());
    }

    const CurveSet by = evolution_stage(EvolutionStage::dichromat_by);
    REQUIRE(by.size() == 2);
    CHECK(by.curve(0).name() == "B");
    CHECK(by.curve(1).name() == "Y");
    const auto& g = dflt.curve(1).responses();
    const auto& r = dflt.curve(2).responses();
    for (std::size_t k = 0; k < g.size(); ++k)
        REQUIRE(by.curve(1).responses()[k] == (g[k] + r[k]) / 2.0);
    REQUIRE(by.curve(0).responses() == dflt.curve(0).responses());

    const CurveSet mono = evolution_stage(EvolutionStage::monochromat);
    REQUIRE(mono.size() == 1);
    CHECK(mono.curve(0).name() == "W");
    const auto& b = dflt.curve(0).responses();
    for (std::size_t k = 0; k < b.size(); ++k)
        REQUIRE(mono.curve(0).responses()[k] == (b[k] + (g[k] + r[k]) / 2.0) / 2.0);

    const CurveSet rc = evolution_stage(EvolutionStage::alt_dichromat_rc);
    REQUIRE(rc.size() == 2);
    CHECK(rc.curve(0).name() == "R");
    CHECK(rc.curve(1).name() == "C");
    REQUIRE(rc.curve(0).responses() == dflt.curve(2).responses());
    for (std::size_t k = 0; k < b.size(); ++k)
        REQUIRE(rc.curve(1).responses()[k] == (b[k] + g[k]) / 2.0);
}

TEST_CASE("expanding reduced sets back to three channel slots") {
    const CurveSet dflt = default_curves();

    const CurveSet mono = expand_to_trichromat(evolution_stage(EvolutionStage::monochromat));
    REQUIRE(mono.size() == 3);
    for (std::size_t c = 0; c < 3; ++c) {
        CHECK(mono.curve(c).name() == "W");
        REQUIRE(mono.curve(c).responses() == mono.curve(0).responses());
    }

    const CurveSet by = expand_to_trichromat(evolution_stage(EvolutionStage::dichromat_by));
    REQUIRE(by.size() == 3);
    CHECK(by.curve(0).name() == "B");
    CHECK(by.curve(1).name() == "Y");
    CHECK(by.curve(2).name() == "Y");
    REQUIRE(by.curve(1).responses() == by.curve(2).responses());
    REQUIRE(by.curve(0).responses() == dflt.curve(0).responses());

    const CurveSet rc = expand_to_trichromat(evolution_stage(EvolutionStage::alt_dichromat_rc));
    REQUIRE(rc.size() == 3);
    CHECK(rc.curve(0).name() == "C");
    CHECK(rc.curve(1).name() == "C");
    CHECK(rc.curve(2).name() == "R");
    REQUIRE(rc.curve(2).responses() == dflt.curve(2).responses());

    // A full named set is reordered into B, G, R slot order.
    const CurveSet shuffled({dflt.curve(2), dflt.curve(0), dflt.curve(1)});
    const CurveSet fixed = expand_to_trichromat(shuffled);
    CHECK(fixed.curve(0).name() == "B");
    CHECK(fixed.curve(1).name() == "G");
    CHECK(fixed.curve(2).name() == "R");

    // Three arbitrary names pass through positionally.
    const std::vector<double> g2{500, 510};
    const CurveSet odd({SensitivityCurve("s", g2, {0.1, 0.2}),
                        SensitivityCurve("m", g2, {0.3, 0.4}),
                        SensitivityCurve("l", g2, {0.5, 0.6})});
    const CurveSet kept = expand_to_trichromat(odd);
    CHECK(kept.curve(0).name() == "s");
    CHECK(kept.curve(1).name() == "m");
    CHECK(kept.curve(2).name() == "l");

    // A single curve fills every slot regardless of its name.
    const CurveSet lone({SensitivityCurve("lum", g2, {0.1, 0.2})});
    REQUIRE(expand_to_trichromat(lone).size() == 3);
}

TEST_CASE("expansion errors") {
    const std::vector<double> g2{500, 510};
    const SensitivityCurve b("B", g2, {0.1, 0.2});
    const SensitivityCurve gcurve("G", g2, {0.3, 0.4});
    const SensitivityCurve y("Y", g2, {0.5, 0.6});
    const SensitivityCurve r("R", g2, {0.7, 0.8});
    const SensitivityCurve x("X", g2, {0.0, 0.0});

    CHECK_THROWS_AS(expand_to_trichromat(CurveSet({b, x})), InconsistencyError);
    CHECK_THROWS_AS(expand_to_trichromat(CurveSet({y, r})), InconsistencyError);
    CHECK_THROWS_AS(expand_to_trichromat(CurveSet({b, gcurve})), InconsistencyError);
    CHECK_THROWS_AS(expand_to_trichromat(CurveSet({b, gcurve, y, r})), DimensionError);
    CHECK_NOTHROW(expand_to_trichromat(CurveSet({b, y})));
}

TEST_CASE("sweep walks the grid and derives per-wavelength outputs") {
    const CurveSet set = default_curves();
    const auto rows = sweep(set);
    REQUIRE(rows.size() == 301);
    const auto& b = set.curve(0).responses();
    const auto& g = set.curve(1).responses();
    const auto& r = set.curve(2).responses();
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto& row = rows[k];
        REQUIRE(row.wavelength == 400.0 + double(k));
        REQUIRE(row.channels[0] == b[k]);
        REQUIRE(row.channels[1] == g[k]);
        REQUIRE(row.channels[2] == r[k]);
        const DecoderOutput expect = decode3(row.channels);
        for (unsigned mask = 0; mask < 8; ++mask)
            REQUIRE(row.codes.activation(mask) == expect.activation(mask));
        const OpponentTriple t = opponent(row.channels);
        REQUIRE(row.opponent.m == t.m);
        REQUIRE(row.opponent.m_by == t.m_by);
        REQUIRE(row.opponent.m_gm == t.m_gm);
        REQUIRE(row.opponent.m_rc == t.m_rc);
    }

    CHECK_THROWS_AS(sweep(evolution_stage(EvolutionStage::dichromat_by)), DimensionError);
    CHECK_THROWS_AS(sweep(evolution_stage(EvolutionStage::monochromat)), DimensionError);
}

TEST_CASE("opponent channels hold exact-zero bands across the sweep") {
    const auto rows = sweep(default_curves());
    auto opp_at = [&](double nm) { return rows[std::size_t(nm - 400.0)].opponent; };

    // R-C rests while the red response is the median, between the B/R and
    // G/R crossings.
    for (double nm = 505; nm <= 555; ++nm)
        REQUIRE(opp_at(nm).m_rc == 0.0);
    CHECK(opp_at(504).m_rc != 0.0);
    CHECK(opp_at(556).m_rc != 0.0);

    // B-Y rests between the B/G and B/R crossings.
    for (double nm = 490; nm <= 505; ++nm)
        REQUIRE(opp_at(nm).m_by == 0.0);
    CHECK(opp_at(489).m_by != 0.0);
    CHECK(opp_at(506).m_by != 0.0);

    // G-M rests on both flanks, outside the B/G and G/R crossings.
    for (double nm = 400; nm <= 490; ++nm)
        REQUIRE(opp_at(nm).m_gm == 0.0);
    for (double nm = 555; nm <= 700; ++nm)
        REQUIRE(opp_at(nm).m_gm == 0.0);
    CHECK(opp_at(491).m_gm != 0.0);
    CHECK(opp_at(554).m_gm != 0.0);
}

TEST_CASE("identical curves silence a sweep's chromatic channels") {
    // With one shared curve in every slot each wavelength decodes as pure
    // gray: all chromatic activations exactly zero.
    const CurveSet dflt = default_curves();
    std::vector<double> mean(dflt.grid().size());
    for (std::size_t k = 0; k < mean.size(); ++k)
        mean[k] = (dflt.curve(0).responses()[k] + dflt.curve(1).responses()[k] +
                   dflt.curve(2).responses()[k]) / 3.0;
    const SensitivityCurve w("W", dflt.grid(), mean);
    for (const auto& row : sweep(CurveSet({w, w, w}))) {
        for (unsigned mask = 1; mask <= 6; ++mask)
            REQUIRE(row.codes.activation(mask) == 0.0);
        REQUIRE(row.opponent.m_by == 0.0);
        REQUIRE(row.opponent.m_gm == 0.0);
        REQUIRE(row.opponent.m_rc == 0.0);
    }
}
