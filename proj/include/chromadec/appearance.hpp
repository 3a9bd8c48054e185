#pragma once

#include <array>
#include <optional>
#include <vector>

#include "chromadec/decoder.hpp"
#include "chromadec/errors.hpp"

namespace chromadec {

/// Unit hue angle of a chromatic n = 3 code on the hue hexagon:
/// red 0, yellow 60, green 120, cyan 180, blue 240, magenta 300 degrees.
inline double hue_angle(const CodeWord& w) {
    if (w.size() != 3)
        throw DimensionError("hue_angle: need an n = 3 code word");
    switch (w.mask()) {
        case 4: return 0.0;
        case 6: return 60.0;
        case 2: return 120.0;
        case 3: return 180.0;
        case 1: return 240.0;
        case 5: return 300.0;
        default:
            throw DomainError("hue_angle: achromatic code has no hue");
    }
}

/// One coefficient-weighted unit color vector.
struct DecompositionTerm {
    double coefficient = 0.0;
    CodeWord unit;
};

/// A 3-channel color written as a weighted sum of unit color vectors: the
/// six chromatic 0/1 vectors plus white (1,1,1). Blackness rides along
/// separately because the black vector is all zeros and carries no mass.
struct Decomposition {
    std::vector<DecompositionTerm> terms;
    double blackness = 0.0;
};

/// Split a color into white plus at most two adjacent chromatic units.
/// Coefficients are exactly the nonzero decode3 activations.
inline Decomposition decompose(const ChannelVector& c) {
    c.require_size(3);
    const auto a = decode3_activations(c[0], c[1], c[2]);
    Decomposition d;
    d.blackness = a[0];
    for (unsigned mask = 1; mask <= 7; ++mask)
        if (a[mask] != 0.0)
            d.terms.push_back({a[mask], CodeWord(mask, 3)});
    return d;
}

/// Coefficient-weighted vector sum of the terms, in (B, G, R) order.
/// Reproduces the decomposed input to within accumulated rounding.
inline std::array<double, 3> recombine(const Decomposition& d) {
    std::array<double, 3> acc{0.0, 0.0, 0.0};
    for (const auto& term : d.terms)
        for (std::size_t i = 0; i < 3; ++i)
            if (term.unit.bit(i))
                acc[i] += term.coefficient;
    return acc;
}

/// Hue/chroma/value/saturation plus whiteness and blackness.
/// hue is absent exactly when chroma is 0.
struct AppearanceDescriptor {
    std::optional<double> hue;  // degrees in [0, 360)
    double chroma = 0.0;
    double value = 0.0;
    double saturation = 0.0;
    double whiteness = 0.0;
    double blackness = 0.0;
};

/// Brightness/colorfulness/whiteness/blackness of a 3-channel color.
struct Attributes {
    double brightness = 0.0;
    double colorfulness = 0.0;
    double whiteness = 0.0;
    double blackness = 0.0;
};

namespace detail {

inline double unit_hue_angle3(unsigned mask) {
    switch (mask) {
        case 4: return 0.0;
        case 6: return 60.0;
        case 2: return 120.0;
        case 3: return 180.0;
        case 1: return 240.0;
        default: return 300.0;  // mask 5
    }
}

/// Weighted mean of the active unit angles. At most two chromatic codes are
/// ever active and they sit on adjacent hexagon vertices, so the mean stays
/// inside one 60-degree sector; the magenta+red pair counts red as 360 and
/// reduces the result modulo 360.
inline std::optional<double> hue_from_activations(const std::array<double, 8>& a) {
    unsigned active[2] = {0, 0};
    double coeff[2] = {0.0, 0.0};
    int k = 0;
    for (unsigned mask = 1; mask <= 6; ++mask) {
        if (a[mask] != 0.0) {
            active[k] = mask;
            coeff[k] = a[mask];
            ++k;
        }
    }
    if (k == 0)
        return std::nullopt;
    if (k == 1)
        return unit_hue_angle3(active[0]);
    double th0 = unit_hue_angle3(active[0]);
    const double th1 = unit_hue_angle3(active[1]);
    if (active[0] == 4 && active[1] == 5)
        th0 = 360.0;
    double h = (coeff[0] * th0 + coeff[1] * th1) / (coeff[0] + coeff[1]);
    if (h >= 360.0)
        h -= 360.0;
    return h;
}

} // namespace detail

/// Full appearance description of a 3-channel color:
/// value = max, whiteness = min, blackness = 1 - max, chroma = max - min,
/// saturation = chroma / value (0 at black), hue as the weighted mean of the
/// active unit angles. Matches the standard hexcone transform.
inline AppearanceDescriptor to_appearance(const ChannelVector& c) {
    c.require_size(3);
    const double b = c[0], g = c[1], r = c[2];
    const double vmax = std::max({b, g, r});
    const double vmin = std::min({b, g, r});
    AppearanceDescriptor d;
    d.value = vmax;
    d.whiteness = vmin;
    d.blackness = 1.0 - vmax;
    d.chroma = vmax - vmin;
    d.saturation = vmax > 0.0 ? d.chroma / vmax : 0.0;
    if (d.chroma > 0.0)
        d.hue = detail::hue_from_activations(decode3_activations(b, g, r));
    return d;
}

/// The four achromatic-plus-colorfulness attributes of a 3-channel color.
inline Attributes attributes(const ChannelVector& c) {
    c.require_size(3);
    const double b = c[0], g = c[1], r = c[2];
    const double vmax = std::max({b, g, r});
    const double vmin = std::min({b, g, r});
    return Attributes{vmax, vmax - vmin, vmin, 1.0 - vmax};
}

} // namespace chromadec
