#include <cmath>
#include <numbers>

#include "specgame/error.hpp"
#include "specgame/random.hpp"

namespace specgame {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::structural: return "structural";
        case ErrorCode::config: return "config";
        case ErrorCode::no_usable_spectrum: return "no usable spectrum";
        case ErrorCode::oracle_scale_exceeded: return "oracle scale exceeded";
        case ErrorCode::degenerate: return "degenerate";
        case ErrorCode::no_pure_nash_reached: return "no pure NE reached";
        case ErrorCode::ensemble_unstable: return "ensemble unstable";
        case ErrorCode::empty_window: return "empty window";
        case ErrorCode::internal: return "internal";
    }
    return "unknown";
}

double Rng::normal() {
    // 1 - u keeps the log argument in (0, 1].
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace specgame
