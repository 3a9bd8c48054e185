#pragma once

// Umbrella header: the full library surface.

#include "chromadec/errors.hpp"      // IWYU pragma: export
#include "chromadec/decoder.hpp"     // IWYU pragma: export
#include "chromadec/appearance.hpp"  // IWYU pragma: export
#include "chromadec/opponent.hpp"    // IWYU pragma: export
#include "chromadec/spectra.hpp"     // IWYU pragma: export
#include "chromadec/cvd.hpp"         // IWYU pragma: export
#include "chromadec/csv.hpp"         // IWYU pragma: export
#include "chromadec/image.hpp"       // IWYU pragma: export
#include "chromadec/pipeline.hpp"    // IWYU pragma: export
