#pragma once

// Discretized frequency-selective interference channel: N transmitter/receiver
// pairs sharing K uniform frequency bins.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace specgame {

/// K uniform bins covering a band of total_band Hz.
class FrequencyGrid {
  public:
    FrequencyGrid(std::size_t bin_count, double total_band);

    std::size_t bins() const noexcept { return bins_; }
    double total_band() const noexcept { return total_band_; }
    double bin_width() const noexcept { return bin_width_; }

    friend bool operator==(const FrequencyGrid&, const FrequencyGrid&) = default;

  private:
    std::size_t bins_;
    double total_band_;
    double bin_width_;
};

/// Squared channel magnitudes |H_ij(f_k)|^2 for every transmitter i,
/// receiver j and bin k.
class ChannelSet {
  public:
    ChannelSet(std::size_t users, std::size_t bins);
    /// gains laid out as [from][to][bin].
    ChannelSet(std::size_t users, std::size_t bins, std::vector<double> gains);

    std::size_t users() const noexcept { return users_; }
    std::size_t bins() const noexcept { return bins_; }

    double gain(std::size_t from, std::size_t to, std::size_t bin) const {
        return gains_[index(from, to, bin)];
    }
    std::span<const double> gains(std::size_t from, std::size_t to) const {
        return {gains_.data() + index(from, to, 0), bins_};
    }
    void set_gain(std::size_t from, std::size_t to, std::size_t bin, double value);
    void set_gains(std::size_t from, std::size_t to, std::span<const double> values);

    const std::vector<double>& raw() const noexcept { return gains_; }

    friend bool operator==(const ChannelSet&, const ChannelSet&) = default;

  private:
    std::size_t index(std::size_t from, std::size_t to, std::size_t bin) const {
        return (from * users_ + to) * bins_ + bin;
    }

    std::size_t users_;
    std::size_t bins_;
    std::vector<double> gains_;
};

/// Receiver noise PSD sigma_n(f_k), strictly positive.
class NoiseProfile {
  public:
    NoiseProfile(std::size_t users, std::size_t bins, double level);
    NoiseProfile(std::size_t users, std::size_t bins, std::vector<double> psd);

    std::size_t users() const noexcept { return users_; }
    std::size_t bins() const noexcept { return bins_; }
    std::span<const double> psd(std::size_t user) const {
        return {psd_.data() + user * bins_, bins_};
    }
    const std::vector<double>& raw() const noexcept { return psd_; }

    friend bool operator==(const NoiseProfile&, const NoiseProfile&) = default;

  private:
    std::size_t users_;
    std::size_t bins_;
    std::vector<double> psd_;
};

/// Per-user total transmit power P_n.
class PowerBudget {
  public:
    explicit PowerBudget(std::vector<double> budgets);

    std::size_t users() const noexcept { return budgets_.size(); }
    double operator[](std::size_t user) const { return budgets_[user]; }
    const std::vector<double>& values() const noexcept { return budgets_; }

    friend bool operator==(const PowerBudget&, const PowerBudget&) = default;

  private:
    std::vector<double> budgets_;
};

/// Transmit PSD P_n(f_k) for every user, laid out row-major by user.
class PowerAllocation {
  public:
    PowerAllocation(std::size_t users, std::size_t bins);
    PowerAllocation(std::size_t users, std::size_t bins, std::vector<double> psd);

    std::size_t users() const noexcept { return users_; }
    std::size_t bins() const noexcept { return bins_; }

    std::span<const double> row(std::size_t user) const {
        return {psd_.data() + user * bins_, bins_};
    }
    std::span<double> row(std::size_t user) { return {psd_.data() + user * bins_, bins_}; }
    void set_row(std::size_t user, std::span<const double> values);

    double total_power(std::size_t user, const FrequencyGrid& grid) const;
    /// True when every row is nonnegative and within its budget (1e-9 relative).
    bool feasible(const PowerBudget& budgets, const FrequencyGrid& grid) const;

    const std::vector<double>& raw() const noexcept { return psd_; }

    friend bool operator==(const PowerAllocation&, const PowerAllocation&) = default;

  private:
    std::size_t users_;
    std::size_t bins_;
    std::vector<double> psd_;
};

/// Noise plus interference seen by receiver `user`, per bin.
std::vector<double> effective_noise(std::size_t user, const PowerAllocation& alloc,
                                    const ChannelSet& channels, const NoiseProfile& noise);

/// Shannon rate of `user` in bits/s (log base 2, Riemann sum over bins).
double achievable_rate(std::size_t user, const PowerAllocation& alloc,
                       const ChannelSet& channels, const NoiseProfile& noise,
                       const FrequencyGrid& grid);

std::vector<double> achievable_rates(const PowerAllocation& alloc, const ChannelSet& channels,
                                     const NoiseProfile& noise, const FrequencyGrid& grid);

/// Single-user rate objective sum_k df * log2(1 + psd*gain/noise).
double single_user_rate(std::span<const double> psd, std::span<const double> gain,
                        std::span<const double> noise_psd, const FrequencyGrid& grid);

struct WaterFillResult {
    std::vector<double> psd;
    double water_level = 0.0;
};

/// Rate-maximizing PSD for one user under a total power budget against a
/// fixed noise-plus-interference PSD. Bins with zero gain receive nothing.
WaterFillResult water_fill(std::span<const double> gain, std::span<const double> noise_psd,
                           double budget, const FrequencyGrid& grid);

/// Random multipath taps for every (from, to) pair, normalized so that the
/// tap powers sum to direct_power on the diagonal and cross_power elsewhere.
struct MultipathTaps {
    std::size_t users = 0;
    std::size_t tap_count = 0;
    std::vector<std::complex<double>> taps;  // [from][to][tap]

    std::span<const std::complex<double>> pair(std::size_t from, std::size_t to) const {
        return {taps.data() + (from * users + to) * tap_count, tap_count};
    }
};

MultipathTaps generate_multipath_taps(std::uint64_t seed, std::size_t users,
                                      std::size_t tap_count, double direct_power = 1.0,
                                      double cross_power = 0.5);

/// Squared magnitude of the K-point DFT of each tap set.
ChannelSet channels_from_taps(const MultipathTaps& taps, const FrequencyGrid& grid);

ChannelSet generate_multipath_channels(std::uint64_t seed, std::size_t users,
                                       const FrequencyGrid& grid, std::size_t tap_count,
                                       double direct_power = 1.0, double cross_power = 0.5);

}  // namespace specgame
