#pragma once

// Discrete power allocations: a budget split into `levels` equal units and
// distributed over the bins of a grid.

#include <cstddef>
#include <span>
#include <vector>

#include "specgame/spectrum.hpp"

namespace specgame {

using UnitSplit = std::vector<unsigned>;

/// Number of ways to place `levels` units (exactly, or at most when
/// allow_partial) into `bins` bins, as a double to survive overflow.
double simplex_grid_size(std::size_t bins, unsigned levels, bool allow_partial);

/// Every split of `levels` units over `bins` bins in lexicographic order.
/// With allow_partial the units may sum to anything in [0, levels].
std::vector<UnitSplit> simplex_grid(std::size_t bins, unsigned levels, bool allow_partial);

/// PSD row for a unit split: each unit carries budget / levels power.
std::vector<double> split_to_psd(const UnitSplit& split, double budget, unsigned levels,
                                 const FrequencyGrid& grid);

}  // namespace specgame
