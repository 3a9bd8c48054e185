#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "chromadec/decoder.hpp"
#include "chromadec/errors.hpp"

namespace chromadec {

enum class CvdKind {
    monochromatism,
    protanopia,
    deuteranopia_1,
    deuteranopia_2,
    tritanopia,
    tetartanopia,
    anomalous,
};

inline std::string_view to_string(CvdKind k) {
    switch (k) {
        case CvdKind::monochromatism: return "monochromatism";
        case CvdKind::protanopia:     return "protanopia";
        case CvdKind::deuteranopia_1: return "deuteranopia_1";
        case CvdKind::deuteranopia_2: return "deuteranopia_2";
        case CvdKind::tritanopia:     return "tritanopia";
        case CvdKind::tetartanopia:   return "tetartanopia";
        case CvdKind::anomalous:      return "anomalous";
    }
    return "?";
}

/// A channel-merge configuration: which channels converge, how far along the
/// merge is (t, the severity), and an informational peak-shift tag telling
/// the curve-level variants apart. Full merges (t = 1) keep the named -opia
/// kind; partial merges are reported as anomalous.
class CvdProfile {
public:
    static CvdProfile mono() {
        return CvdProfile(CvdKind::monochromatism, std::nullopt, 1.0, 0.0);
    }
    static CvdProfile protan(double severity = 1.0) {
        return pair_profile(CvdKind::protanopia, {1, 2}, severity, -10.0);
    }
    static CvdProfile deutan1(double severity = 1.0) {
        return pair_profile(CvdKind::deuteranopia_1, {1, 2}, severity, +10.0);
    }
    static CvdProfile deutan2(double severity = 1.0) {
        return pair_profile(CvdKind::deuteranopia_2, {1, 2}, severity, +10.0);
    }
    static CvdProfile tritan(double severity = 1.0) {
        return pair_profile(CvdKind::tritanopia, {0, 1}, severity, 0.0);
    }
    static CvdProfile tetartan(double severity = 1.0) {
        return pair_profile(CvdKind::tetartanopia, {0, 2}, severity, 0.0);
    }

    CvdKind kind() const { return kind_; }
    bool merges_all() const { return !pair_.has_value(); }
    std::optional<std::pair<int, int>> merged_pair() const { return pair_; }
    double t() const { return t_; }
    double peak_shift_nm() const { return peak_shift_nm_; }

private:
    CvdProfile(CvdKind kind, std::optional<std::pair<int, int>> pair, double t,
               double shift)
        : kind_(kind), pair_(pair), t_(t), peak_shift_nm_(shift) {}

    static CvdProfile pair_profile(CvdKind full_kind, std::pair<int, int> pair,
                                   double severity, double shift) {
        if (!(severity >= 0.0 && severity <= 1.0))
            throw DomainError("CvdProfile: severity must be in [0, 1]");
        const CvdKind kind = severity == 1.0 ? full_kind : CvdKind::anomalous;
        return CvdProfile(kind, pair, severity, shift);
    }

    CvdKind kind_;
    std::optional<std::pair<int, int>> pair_;
    double t_;
    double peak_shift_nm_;
};

/// Move the profile's channels toward their mean: each merged channel
/// becomes (1-t)*own + t*mean. Monochromatism averages all three.
/// Idempotent at t = 1; channels outside the merged set pass through.
inline ChannelVector simulate_cvd(const ChannelVector& c, const CvdProfile& p) {
    c.require_size(3);
    std::array<double, 3> v{c[0], c[1], c[2]};
    if (p.merges_all()) {
        if (v[0] == v[1] && v[1] == v[2])
            return c;
        const double mean = std::min(1.0, (v[0] + v[1] + v[2]) / 3.0);
        return ChannelVector::bgr(mean, mean, mean);
    }
    const auto [i, j] = *p.merged_pair();
    const double t = p.t();
    const double mean = (v[static_cast<std::size_t>(i)] + v[static_cast<std::size_t>(j)]) / 2.0;
    for (int idx : {i, j}) {
        auto& x = v[static_cast<std::size_t>(idx)];
        x = std::min(1.0, (1.0 - t) * x + t * mean);
    }
    return ChannelVector::bgr(v[0], v[1], v[2]);
}

/// Chromatic codes a fully merged profile can still activate, by mask order:
/// none for monochromatism, {blue, yellow} for a G/R merge, {red, cyan} for
/// B/G, {green, magenta} for B/R.
inline std::vector<CodeWord> perceivable_chromatic_codes(const CvdProfile& p) {
    if (p.t() != 1.0)
        throw DomainError("perceivable_chromatic_codes: profile must have t = 1");
    if (p.merges_all())
        return {};
    const auto pair = *p.merged_pair();
    std::vector<unsigned> masks;
    if (pair == std::pair<int, int>{1, 2})
        masks = {1u, 6u};
    else if (pair == std::pair<int, int>{0, 1})
        masks = {3u, 4u};
    else if (pair == std::pair<int, int>{0, 2})
        masks = {2u, 5u};
    else
        throw InconsistencyError("perceivable_chromatic_codes: unknown merged pair");
    std::vector<CodeWord> out;
    for (unsigned m : masks)
        out.emplace_back(m, 3);
    return out;
}

/// Per-channel attenuation factors in [0, 1].
struct GainVector {
    GainVector(double b_, double g_, double r_) : b(b_), g(g_), r(r_) {
        for (double x : {b, g, r})
            if (!(x >= 0.0 && x <= 1.0))
                throw DomainError("GainVector: gain outside [0, 1]");
    }
    double b, g, r;
};

/// Component-wise product of channels and gains; never increases a channel.
inline ChannelVector adapt(const ChannelVector& c, const GainVector& g) {
    c.require_size(3);
    return ChannelVector::bgr(c[0] * g.b, c[1] * g.g, c[2] * g.r);
}

} // namespace chromadec
