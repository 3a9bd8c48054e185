#pragma once

#include <array>

#include "chromadec/decoder.hpp"
#include "chromadec/errors.hpp"

namespace chromadec {

/// The median signal plus the three signed opponent channels.
///
/// Exactly one channel is 0 when the three inputs are distinct (the one whose
/// input equals the median); at most one channel is strictly positive and at
/// most one strictly negative. The positive part of each channel equals one
/// chromatic decoder activation and the negative magnitude its complement:
/// m_by -> blueness/yellowness, m_gm -> greenness/magentaness,
/// m_rc -> redness/cyanness.
struct OpponentTriple {
    double m = 0.0;
    double m_by = 0.0;
    double m_gm = 0.0;
    double m_rc = 0.0;
};

/// m = med(B, G, R); each opponent channel is its cone response minus m.
inline OpponentTriple opponent(const ChannelVector& c) {
    c.require_size(3);
    const double b = c[0], g = c[1], r = c[2];
    const double m = med(b, g, r);
    return OpponentTriple{m, b - m, g - m, r - m};
}

/// Recover the six chromatic activations from the signed channels, indexed by
/// code mask (entries 0 and 7 stay 0; achromatic codes need m as well).
/// Rejects triples with two positive or two negative channels.
inline std::array<double, 8> opponent_to_codes(const OpponentTriple& t) {
    int positives = 0, negatives = 0;
    for (double v : {t.m_by, t.m_gm, t.m_rc}) {
        if (v > 0.0) ++positives;
        if (v < 0.0) ++negatives;
    }
    if (positives > 1)
        throw InconsistencyError("opponent_to_codes: more than one positive channel");
    if (negatives > 1)
        throw InconsistencyError("opponent_to_codes: more than one negative channel");
    std::array<double, 8> a{};
    a[1] = std::max(0.0, t.m_by);   // blueness
    a[6] = std::max(0.0, -t.m_by);  // yellowness
    a[2] = std::max(0.0, t.m_gm);   // greenness
    a[5] = std::max(0.0, -t.m_gm);  // magentaness
    a[4] = std::max(0.0, t.m_rc);   // redness
    a[3] = std::max(0.0, -t.m_rc);  // cyanness
    return a;
}

} // namespace chromadec
