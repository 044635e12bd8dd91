#include "specgame/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "specgame/error.hpp"
#include "specgame/random.hpp"

namespace specgame {

namespace {

void require_finite_nonnegative(const std::vector<double>& values, const char* what) {
    for (double v : values) {
        require(std::isfinite(v) && v >= 0.0,
                std::string(what) + " entries must be finite and nonnegative");
    }
}

void check_dimensions(std::size_t user, const PowerAllocation& alloc, const ChannelSet& channels,
                      const NoiseProfile& noise) {
    require(alloc.users() == channels.users() && alloc.users() == noise.users(),
            "user count mismatch between allocation, channels and noise");
    require(alloc.bins() == channels.bins() && alloc.bins() == noise.bins(),
            "bin count mismatch between allocation, channels and noise");
    require(user < alloc.users(), "user index out of range");
}

}  // namespace

FrequencyGrid::FrequencyGrid(std::size_t bin_count, double total_band)
    : bins_(bin_count), total_band_(total_band) {
    require(bin_count >= 1, "frequency grid needs at least one bin");
    require(std::isfinite(total_band) && total_band > 0.0, "total band must be positive");
    bin_width_ = total_band / static_cast<double>(bin_count);
}

ChannelSet::ChannelSet(std::size_t users, std::size_t bins)
    : ChannelSet(users, bins, std::vector<double>(users * users * bins, 0.0)) {}

ChannelSet::ChannelSet(std::size_t users, std::size_t bins, std::vector<double> gains)
    : users_(users), bins_(bins), gains_(std::move(gains)) {
    require(users >= 1 && bins >= 1, "channel set needs at least one user and one bin");
    require(gains_.size() == users * users * bins, "channel gain table has wrong size");
    require_finite_nonnegative(gains_, "channel gain");
}

void ChannelSet::set_gain(std::size_t from, std::size_t to, std::size_t bin, double value) {
    require(from < users_ && to < users_ && bin < bins_, "channel index out of range");
    require(std::isfinite(value) && value >= 0.0, "channel gain must be finite and nonnegative");
    gains_[index(from, to, bin)] = value;
}

void ChannelSet::set_gains(std::size_t from, std::size_t to, std::span<const double> values) {
    require(values.size() == bins_, "channel gain row has wrong length");
    for (std::size_t k = 0; k < bins_; ++k) set_gain(from, to, k, values[k]);
}

NoiseProfile::NoiseProfile(std::size_t users, std::size_t bins, double level)
    : NoiseProfile(users, bins, std::vector<double>(users * bins, level)) {}

NoiseProfile::NoiseProfile(std::size_t users, std::size_t bins, std::vector<double> psd)
    : users_(users), bins_(bins), psd_(std::move(psd)) {
    require(users >= 1 && bins >= 1, "noise profile needs at least one user and one bin");
    require(psd_.size() == users * bins, "noise table has wrong size");
    for (double v : psd_) {
        require(std::isfinite(v) && v > 0.0, "noise PSD entries must be strictly positive");
    }
}

PowerBudget::PowerBudget(std::vector<double> budgets) : budgets_(std::move(budgets)) {
    require(!budgets_.empty(), "power budget needs at least one user");
    for (double b : budgets_) {
        require(std::isfinite(b) && b > 0.0, "power budgets must be positive");
    }
}

PowerAllocation::PowerAllocation(std::size_t users, std::size_t bins)
    : PowerAllocation(users, bins, std::vector<double>(users * bins, 0.0)) {}

PowerAllocation::PowerAllocation(std::size_t users, std::size_t bins, std::vector<double> psd)
    : users_(users), bins_(bins), psd_(std::move(psd)) {
    require(users >= 1 && bins >= 1, "allocation needs at least one user and one bin");
    require(psd_.size() == users * bins, "allocation table has wrong size");
    require_finite_nonnegative(psd_, "transmit PSD");
}

void PowerAllocation::set_row(std::size_t user, std::span<const double> values) {
    require(user < users_, "user index out of range");
    require(values.size() == bins_, "allocation row has wrong length");
    for (double v : values) {
        require(std::isfinite(v) && v >= 0.0, "transmit PSD must be finite and nonnegative");
    }
    std::copy(values.begin(), values.end(), psd_.begin() + static_cast<std::ptrdiff_t>(user * bins_));
}

double PowerAllocation::total_power(std::size_t user, const FrequencyGrid& grid) const {
    require(grid.bins() == bins_, "grid does not match allocation");
    double sum = 0.0;
    for (double p : row(user)) sum += p;
    return sum * grid.bin_width();
}

bool PowerAllocation::feasible(const PowerBudget& budgets, const FrequencyGrid& grid) const {
    if (budgets.users() != users_ || grid.bins() != bins_) return false;
    for (std::size_t n = 0; n < users_; ++n) {
        if (total_power(n, grid) > budgets[n] * (1.0 + 1e-9)) return false;
    }
    return true;
}

std::vector<double> effective_noise(std::size_t user, const PowerAllocation& alloc,
                                    const ChannelSet& channels, const NoiseProfile& noise) {
    check_dimensions(user, alloc, channels, noise);
    auto sigma = noise.psd(user);
    std::vector<double> out(sigma.begin(), sigma.end());
    for (std::size_t j = 0; j < alloc.users(); ++j) {
        if (j == user) continue;
        auto psd = alloc.row(j);
        auto cross = channels.gains(j, user);
        for (std::size_t k = 0; k < out.size(); ++k) out[k] += psd[k] * cross[k];
    }
    return out;
}

double single_user_rate(std::span<const double> psd, std::span<const double> gain,
                        std::span<const double> noise_psd, const FrequencyGrid& grid) {
    require(psd.size() == grid.bins() && gain.size() == grid.bins() &&
                noise_psd.size() == grid.bins(),
            "rate arguments do not match the grid");
    double rate = 0.0;
    for (std::size_t k = 0; k < psd.size(); ++k) {
        if (psd[k] > 0.0 && gain[k] > 0.0) rate += std::log2(1.0 + psd[k] * gain[k] / noise_psd[k]);
    }
    return rate * grid.bin_width();
}

double achievable_rate(std::size_t user, const PowerAllocation& alloc, const ChannelSet& channels,
                       const NoiseProfile& noise, const FrequencyGrid& grid) {
    require(grid.bins() == alloc.bins(), "grid does not match allocation");
    auto interference = effective_noise(user, alloc, channels, noise);
    return single_user_rate(alloc.row(user), channels.gains(user, user), interference, grid);
}

std::vector<double> achievable_rates(const PowerAllocation& alloc, const ChannelSet& channels,
                                     const NoiseProfile& noise, const FrequencyGrid& grid) {
    std::vector<double> rates(alloc.users());
    for (std::size_t n = 0; n < rates.size(); ++n) {
        rates[n] = achievable_rate(n, alloc, channels, noise, grid);
    }
    return rates;
}

WaterFillResult water_fill(std::span<const double> gain, std::span<const double> noise_psd,
                           double budget, const FrequencyGrid& grid) {
    const std::size_t bins = grid.bins();
    require(gain.size() == bins && noise_psd.size() == bins, "water-fill arguments do not match the grid");
    require(std::isfinite(budget) && budget > 0.0, "water-fill budget must be positive");

    // Inverse-SNR floor per usable bin.
    std::vector<double> floor(bins, 0.0);
    std::vector<std::size_t> usable;
    for (std::size_t k = 0; k < bins; ++k) {
        require(std::isfinite(gain[k]) && gain[k] >= 0.0, "gains must be finite and nonnegative");
        require(std::isfinite(noise_psd[k]) && noise_psd[k] > 0.0, "noise PSD must be positive");
        if (gain[k] > 0.0) {
            floor[k] = noise_psd[k] / gain[k];
            usable.push_back(k);
        }
    }
    if (usable.empty()) throw Error(ErrorCode::no_usable_spectrum, "no usable spectrum: all gains are zero");

    const double df = grid.bin_width();
    double min_floor = floor[usable.front()];
    double max_floor = min_floor;
    for (std::size_t k : usable) {
        min_floor = std::min(min_floor, floor[k]);
        max_floor = std::max(max_floor, floor[k]);
    }
    auto poured = [&](double level) {
        double sum = 0.0;
        for (std::size_t k : usable) sum += std::max(0.0, level - floor[k]);
        return sum * df;
    };

    double lo = min_floor;
    double hi = min_floor + budget / (df * static_cast<double>(usable.size())) + max_floor;
    double level = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        level = 0.5 * (lo + hi);
        const double residual = poured(level) - budget;
        if (std::abs(residual) <= 1e-12) break;
        (residual > 0.0 ? hi : lo) = level;
    }

    // Closed-form level on the active set found by bisection, so the budget is
    // met to rounding error rather than to the bisection tolerance.
    for (int pass = 0; pass < static_cast<int>(usable.size()) + 1; ++pass) {
        double floor_sum = 0.0;
        std::size_t active = 0;
        for (std::size_t k : usable) {
            if (floor[k] < level) {
                floor_sum += floor[k];
                ++active;
            }
        }
        if (active == 0) break;
        const double exact = (budget / df + floor_sum) / static_cast<double>(active);
        bool consistent = true;
        for (std::size_t k : usable) {
            if ((floor[k] < level) != (floor[k] < exact)) consistent = false;
        }
        level = exact;
        if (consistent) break;
    }

    WaterFillResult result;
    result.water_level = level;
    result.psd.assign(bins, 0.0);
    for (std::size_t k : usable) result.psd[k] = std::max(0.0, level - floor[k]);
    return result;
}

MultipathTaps generate_multipath_taps(std::uint64_t seed, std::size_t users, std::size_t tap_count,
                                      double direct_power, double cross_power) {
    require(users >= 1, "need at least one user");
    require(tap_count >= 1, "tap_count must be at least 1");
    require(std::isfinite(direct_power) && direct_power >= 0.0, "direct power must be nonnegative");
    require(std::isfinite(cross_power) && cross_power >= 0.0, "cross power must be nonnegative");

    Rng rng(seed);
    MultipathTaps out;
    out.users = users;
    out.tap_count = tap_count;
    out.taps.resize(users * users * tap_count);
    for (std::size_t i = 0; i < users; ++i) {
        for (std::size_t j = 0; j < users; ++j) {
            auto* pair = out.taps.data() + (i * users + j) * tap_count;
            double energy = 0.0;
            for (std::size_t l = 0; l < tap_count; ++l) {
                const double re = rng.normal();
                const double im = rng.normal();
                pair[l] = {re, im};
                energy += re * re + im * im;
            }
            const double target = (i == j) ? direct_power : cross_power;
            const double scale = energy > 0.0 ? std::sqrt(target / energy) : 0.0;
            for (std::size_t l = 0; l < tap_count; ++l) pair[l] *= scale;
        }
    }
    return out;
}

ChannelSet channels_from_taps(const MultipathTaps& taps, const FrequencyGrid& grid) {
    const std::size_t bins = grid.bins();
    ChannelSet channels(taps.users, bins);
    std::vector<double> row(bins);
    for (std::size_t i = 0; i < taps.users; ++i) {
        for (std::size_t j = 0; j < taps.users; ++j) {
            auto h = taps.pair(i, j);
            for (std::size_t k = 0; k < bins; ++k) {
                std::complex<double> response{0.0, 0.0};
                for (std::size_t l = 0; l < h.size(); ++l) {
                    const double phase = -2.0 * std::numbers::pi * static_cast<double>((l * k) % bins) /
                                         static_cast<double>(bins);
                    response += h[l] * std::polar(1.0, phase);
                }
                row[k] = std::norm(response);
            }
            channels.set_gains(i, j, row);
        }
    }
    return channels;
}

ChannelSet generate_multipath_channels(std::uint64_t seed, std::size_t users,
                                       const FrequencyGrid& grid, std::size_t tap_count,
                                       double direct_power, double cross_power) {
    return channels_from_taps(generate_multipath_taps(seed, users, tap_count, direct_power, cross_power),
                              grid);
}

}  // namespace specgame
