#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chromadec/decoder.hpp"
#include "chromadec/errors.hpp"
#include "chromadec/opponent.hpp"

namespace chromadec {

/// A sampled wavelength-to-response function on a uniform grid,
/// responses in [0, 1].
class SensitivityCurve {
public:
    SensitivityCurve(std::string name, std::vector<double> wavelengths,
                     std::vector<double> responses)
        : name_(std::move(name)),
          wavelengths_(std::move(wavelengths)),
          responses_(std::move(responses)) {
        if (wavelengths_.size() < 2)
            throw DimensionError("SensitivityCurve: need at least two samples");
        if (wavelengths_.size() != responses_.size())
            throw DimensionError("SensitivityCurve: wavelength/response size mismatch");
        const double step = wavelengths_[1] - wavelengths_[0];
        if (!(step > 0.0))
            throw DomainError("SensitivityCurve: wavelengths must strictly increase");
        const double tol = 1e-9 * std::max(1.0, std::abs(step));
        for (std::size_t i = 1; i < wavelengths_.size(); ++i) {
            const double d = wavelengths_[i] - wavelengths_[i - 1];
            if (!(d > 0.0) || std::abs(d - step) > tol)
                throw DomainError("SensitivityCurve: non-uniform wavelength grid");
        }
        for (double r : responses_)
            if (!(r >= 0.0 && r <= 1.0))
                throw DomainError("SensitivityCurve: response outside [0, 1]");
    }

    const std::string& name() const { return name_; }
    const std::vector<double>& wavelengths() const { return wavelengths_; }
    const std::vector<double>& responses() const { return responses_; }
    std::size_t size() const { return wavelengths_.size(); }
    double step() const { return wavelengths_[1] - wavelengths_[0]; }

private:
    std::string name_;
    std::vector<double> wavelengths_;
    std::vector<double> responses_;
};

/// One to four sensitivity curves sharing a single wavelength grid.
class CurveSet {
public:
    explicit CurveSet(std::vector<SensitivityCurve> curves)
        : curves_(std::move(curves)) {
        if (curves_.empty() || curves_.size() > 4)
            throw DimensionError("CurveSet: need 1 to 4 curves");
        const auto& grid = curves_.front().wavelengths();
        for (const auto& c : curves_)
            if (c.wavelengths() != grid)
                throw InconsistencyError("CurveSet: curves do not share one grid");
    }

    std::size_t size() const { return curves_.size(); }
    const SensitivityCurve& curve(std::size_t i) const {
        if (i >= curves_.size())
            throw DimensionError("CurveSet: curve index out of range");
        return curves_[i];
    }
    const std::vector<SensitivityCurve>& curves() const { return curves_; }
    const std::vector<double>& grid() const { return curves_.front().wavelengths(); }

private:
    std::vector<SensitivityCurve> curves_;
};

/// Three overlapping unimodal bumps named B, G, R on a 400-700 nm grid
/// (1 nm step): Gaussians peaking at 440, 540 and 570 nm, sigma 45 nm,
/// peak response exactly 1.
inline CurveSet default_curves() {
    constexpr int kLo = 400, kHi = 700;
    constexpr double kSigma = 45.0;
    const std::array<std::pair<const char*, double>, 3> spec_peaks{
        {{"B", 440.0}, {"G", 540.0}, {"R", 570.0}}};
    std::vector<double> grid;
    grid.reserve(kHi - kLo + 1);
    for (int w = kLo; w <= kHi; ++w)
        grid.push_back(static_cast<double>(w));
    std::vector<SensitivityCurve> curves;
    for (const auto& [name, peak] : spec_peaks) {
        std::vector<double> resp;
        resp.reserve(grid.size());
        for (double w : grid) {
            const double d = w - peak;
            resp.push_back(std::exp(-(d * d) / (2.0 * kSigma * kSigma)));
        }
        curves.emplace_back(name, grid, std::move(resp));
    }
    return CurveSet(std::move(curves));
}

/// Move curves i and j toward their pointwise mean: each becomes
/// (1-t)*own + t*mean. t=0 is the identity; at t=1 both equal the mean
/// exactly and take the given name (a later collapse can drop the duplicate).
inline CurveSet merge(const CurveSet& set, std::size_t i, std::size_t j,
                      double t, const std::string& name) {
    if (i >= set.size() || j >= set.size() || i == j)
        throw DimensionError("merge: need two distinct valid curve indices");
    if (!(t >= 0.0 && t <= 1.0))
        throw DomainError("merge: t must be in [0, 1]");
    const auto& ci = set.curve(i).responses();
    const auto& cj = set.curve(j).responses();
    std::vector<double> ri(ci.size()), rj(cj.size());
    for (std::size_t k = 0; k < ci.size(); ++k) {
        const double mean = (ci[k] + cj[k]) / 2.0;
        ri[k] = std::min(1.0, (1.0 - t) * ci[k] + t * mean);
        rj[k] = std::min(1.0, (1.0 - t) * cj[k] + t * mean);
    }
    const bool rename = (t == 1.0) && !name.empty();
    std::vector<SensitivityCurve> out;
    for (std::size_t k = 0; k < set.size(); ++k) {
        if (k == i)
            out.emplace_back(rename ? name : set.curve(i).name(), set.grid(), std::move(ri));
        else if (k == j)
            out.emplace_back(rename ? name : set.curve(j).name(), set.grid(), std::move(rj));
        else
            out.push_back(set.curve(k));
    }
    return CurveSet(std::move(out));
}

/// Drop curve j, which must be pointwise equal to curve i.
inline CurveSet collapse(const CurveSet& set, std::size_t i, std::size_t j) {
    if (i >= set.size() || j >= set.size() || i == j)
        throw DimensionError("collapse: need two distinct valid curve indices");
    if (set.curve(i).responses() != set.curve(j).responses())
        throw InconsistencyError("collapse: curves are not pointwise equal");
    std::vector<SensitivityCurve> out;
    for (std::size_t k = 0; k < set.size(); ++k)
        if (k != j)
            out.push_back(set.curve(k));
    return CurveSet(std::move(out));
}

/// Stages of the curve-splitting story, from a single achromatic curve to
/// the three-cone set, plus the alternate two-curve branch.
enum class EvolutionStage { monochromat, dichromat_by, trichromat, alt_dichromat_rc };

/// Build a stage's curve set from the defaults by full merges:
/// monochromat -> {W}, dichromat_by -> {B, Y}, trichromat -> {B, G, R},
/// alt_dichromat_rc -> {R, C}, with Y = mean(R, G), W = mean(B, Y) and
/// C = mean(B, G).
inline CurveSet evolution_stage(EvolutionStage stage) {
    CurveSet tri = default_curves();
    switch (stage) {
        case EvolutionStage::trichromat:
            return tri;
        case EvolutionStage::dichromat_by:
            return collapse(merge(tri, 1, 2, 1.0, "Y"), 1, 2);
        case EvolutionStage::monochromat: {
            CurveSet by = collapse(merge(tri, 1, 2, 1.0, "Y"), 1, 2);
            return collapse(merge(by, 0, 1, 1.0, "W"), 0, 1);
        }
        case EvolutionStage::alt_dichromat_rc: {
            CurveSet cr = collapse(merge(tri, 0, 1, 1.0, "C"), 0, 1);
            return CurveSet({cr.curve(1), cr.curve(0)});
        }
    }
    throw DomainError("evolution_stage: unknown stage");
}

/// Pad a reduced curve set back to three channel slots by duplicating each
/// curve into the slots it stands for: B -> slot 0, G -> 1, R -> 2,
/// Y -> {1,2}, C -> {0,1}, W -> all three. A single unnamed curve also fills
/// all three slots; a full 3-set passes through (reordered by name when the
/// names are exactly B, G, R).
inline CurveSet expand_to_trichromat(const CurveSet& set) {
    auto slots_for = [](std::string_view name) -> std::vector<int> {
        if (name == "B") return {0};
        if (name == "G") return {1};
        if (name == "R") return {2};
        if (name == "Y") return {1, 2};
        if (name == "C") return {0, 1};
        if (name == "W") return {0, 1, 2};
        return {};
    };
    if (set.size() == 1) {
        const auto& c = set.curve(0);
        return CurveSet({c, c, c});
    }
    if (set.size() == 3) {
        std::array<int, 3> perm{-1, -1, -1};
        bool named = true;
        for (std::size_t k = 0; k < 3; ++k) {
            const auto s = slots_for(set.curve(k).name());
            if (s.size() == 1 && perm[static_cast<std::size_t>(s[0])] < 0)
                perm[static_cast<std::size_t>(s[0])] = static_cast<int>(k);
            else
                named = false;
        }
        if (named)
            return CurveSet({set.curve(static_cast<std::size_t>(perm[0])),
                             set.curve(static_cast<std::size_t>(perm[1])),
                             set.curve(static_cast<std::size_t>(perm[2]))});
        return set;
    }
    if (set.size() == 2) {
        std::array<const SensitivityCurve*, 3> slot{nullptr, nullptr, nullptr};
        for (std::size_t k = 0; k < 2; ++k) {
            const auto s = slots_for(set.curve(k).name());
            if (s.empty())
                throw InconsistencyError(
                    "expand_to_trichromat: cannot infer channel slots for curve '" +
                    set.curve(k).name() + "'");
            for (int idx : s) {
                if (slot[static_cast<std::size_t>(idx)])
                    throw InconsistencyError("expand_to_trichromat: overlapping channel slots");
                slot[static_cast<std::size_t>(idx)] = &set.curve(k);
            }
        }
        if (!slot[0] || !slot[1] || !slot[2])
            throw InconsistencyError("expand_to_trichromat: channel slots not covered");
        return CurveSet({*slot[0], *slot[1], *slot[2]});
    }
    throw DimensionError("expand_to_trichromat: need 1 to 3 curves");
}

/// One wavelength of a sweep: sampled channels plus everything derived
/// from them.
struct SweepRow {
    double wavelength;
    ChannelVector channels;
    DecoderOutput codes;
    OpponentTriple opponent;
};

/// Evaluate a 3-curve set at every grid wavelength: channels in (B, G, R)
/// slot order, decoded codes, opponent triple. Rows are grid-ordered.
inline std::vector<SweepRow> sweep(const CurveSet& set) {
    if (set.size() != 3)
        throw DimensionError("sweep: need exactly 3 curves");
    const auto& grid = set.grid();
    const auto& b = set.curve(0).responses();
    const auto& g = set.curve(1).responses();
    const auto& r = set.curve(2).responses();
    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        ChannelVector cv = ChannelVector::bgr(b[k], g[k], r[k]);
        DecoderOutput codes = decode3(cv);
        OpponentTriple opp = opponent(cv);
        rows.push_back(SweepRow{grid[k], std::move(cv), std::move(codes), opp});
    }
    return rows;
}

} // namespace chromadec
