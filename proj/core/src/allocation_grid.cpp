#include "specgame/allocation_grid.hpp"

#include "specgame/error.hpp"

namespace specgame {

double simplex_grid_size(std::size_t bins, unsigned levels, bool allow_partial) {
    // C(levels + bins - 1, bins - 1) exact splits; one more slack bin when partial.
    const std::size_t slots = allow_partial ? bins + 1 : bins;
    double count = 1.0;
    for (std::size_t i = 1; i < slots; ++i) {
        count = count * static_cast<double>(levels + i) / static_cast<double>(i);
    }
    return count;
}

std::vector<UnitSplit> simplex_grid(std::size_t bins, unsigned levels, bool allow_partial) {
    require(bins >= 1, "simplex grid needs at least one bin");
    require(simplex_grid_size(bins, levels, allow_partial) <= 5e7, "simplex grid too large",
            ErrorCode::oracle_scale_exceeded);

    std::vector<UnitSplit> out;
    UnitSplit current(bins, 0);
    // Depth-first in lexicographic order of the unit vector.
    auto recurse = [&](auto&& self, std::size_t bin, unsigned remaining) -> void {
        if (bin + 1 == bins) {
            if (allow_partial) {
                for (unsigned u = 0; u <= remaining; ++u) {
                    current[bin] = u;
                    out.push_back(current);
                }
            } else {
                current[bin] = remaining;
                out.push_back(current);
            }
            return;
        }
        for (unsigned u = 0; u <= remaining; ++u) {
            current[bin] = u;
            self(self, bin + 1, remaining - u);
        }
    };
    recurse(recurse, 0, levels);
    return out;
}

std::vector<double> split_to_psd(const UnitSplit& split, double budget, unsigned levels,
                                 const FrequencyGrid& grid) {
    require(split.size() == grid.bins(), "unit split does not match the grid");
    require(levels >= 1, "levels must be positive");
    const double unit = budget / static_cast<double>(levels) / grid.bin_width();
    std::vector<double> psd(split.size());
    for (std::size_t k = 0; k < split.size(); ++k) psd[k] = unit * static_cast<double>(split[k]);
    return psd;
}

}  // namespace specgame
