// Sweep the default curves across the spectrum and report, for each signed
// opponent channel, the wavelength band where it sits at exactly zero: a
// whole interval of monochromatic lights, not a single neutral point.

#include <iostream>
#include <vector>

#include "chromadec/chromadec.hpp"

using namespace chromadec;

namespace {

void report_zero_runs(const char* channel, const std::vector<SweepRow>& rows,
                      double OpponentTriple::* member) {
    std::cout << channel << " == 0 at: ";
    bool any = false;
    std::size_t i = 0;
    while (i < rows.size()) {
        if (rows[i].opponent.*member == 0.0) {
            std::size_t j = i;
            while (j + 1 < rows.size() && rows[j + 1].opponent.*member == 0.0)
                ++j;
            if (any)
                std::cout << ", ";
            std::cout << rows[i].wavelength << "-" << rows[j].wavelength << " nm ("
                      << (j - i + 1) << " samples)";
            any = true;
            i = j + 1;
        } else {
            ++i;
        }
    }
    std::cout << (any ? "" : "never") << '\n';
}

} // namespace

int main() {
    const auto rows = sweep(default_curves());
    report_zero_runs("M_BY", rows, &OpponentTriple::m_by);
    report_zero_runs("M_GM", rows, &OpponentTriple::m_gm);
    report_zero_runs("M_RC", rows, &OpponentTriple::m_rc);
    return 0;
}
