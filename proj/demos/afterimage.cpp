// Stare at a saturated patch long enough and the drained channel leaves a
// complementary cast on a white surface. Model that with per-channel gains
// and decode what the white looks like afterwards.

#include <iomanip>
#include <iostream>

#include "chromadec/chromadec.hpp"

using namespace chromadec;

int main() {
    const ChannelVector white = ChannelVector::bgr(1.0, 1.0, 1.0);
    const struct {
        const char* stared_at;
        GainVector gains;
    } cases[] = {
        {"red", GainVector(1.0, 1.0, 0.6)},
        {"green", GainVector(1.0, 0.6, 1.0)},
        {"blue", GainVector(0.6, 1.0, 1.0)},
        {"yellow", GainVector(1.0, 0.7, 0.7)},
    };
    std::cout << std::left << std::setw(10) << "stared at" << std::setw(13)
              << "white looks" << "activation\n";
    for (const auto& c : cases) {
        const DecoderOutput out = decode3(adapt(white, c.gains));
        unsigned best = 1;
        for (unsigned mask = 2; mask <= 6; ++mask)
            if (out.activation(mask) > out.activation(best))
                best = mask;
        std::cout << std::setw(10) << c.stared_at << std::setw(13)
                  << code_label3(best) << std::fixed << std::setprecision(3)
                  << out.activation(best) << '\n';
    }
    return 0;
}
