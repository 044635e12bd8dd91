#pragma once

// JSON scenario documents (version 1) and the library objects built from them.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <specgame/continuous_games.hpp>
#include <specgame/experiments.hpp>
#include <specgame/learning.hpp>
#include <specgame/normal_form.hpp>
#include <specgame/power_games.hpp>

#include "json.hpp"

namespace specgame::cli {

struct GridSpec {
    std::size_t bins = 0;
    double total_band = 0.0;
    bool operator==(const GridSpec&) const = default;
};

/// Multipath channel draw; the tap seed is the document seed.
struct GeneratorSpec {
    std::size_t tap_count = 4;
    double direct_power = 1.0;
    double cross_power = 0.5;
    bool operator==(const GeneratorSpec&) const = default;
};

struct PayoffEntry {
    std::vector<std::string> profile;
    std::vector<double> utilities;
    bool operator==(const PayoffEntry&) const = default;
};

struct LearnerEntry {
    std::string kind;
    std::optional<std::string> action;
    bool operator==(const LearnerEntry&) const = default;
};

struct DistributionEntry {
    std::vector<std::string> profile;
    double prob = 0.0;
    bool operator==(const DistributionEntry&) const = default;
};

struct SweepSpec {
    std::vector<std::vector<double>> budget_pairs;
    std::vector<std::vector<double>> weights;
    bool operator==(const SweepSpec&) const = default;
};

struct IwSpec {
    double tol = 1e-8;
    std::size_t max_iter = 500;
    bool operator==(const IwSpec&) const = default;
};

struct StackelbergSpec {
    /// User number, counted from 1.
    std::size_t leader = 1;
    std::size_t levels = 10;
    std::size_t refine_rounds = 20;
    std::size_t enumerate_max_bins = 4;
    bool operator==(const StackelbergSpec&) const = default;
};

struct ParetoSpec {
    std::size_t levels = 10;
    double max_evaluations = 1.2e8;
    bool operator==(const ParetoSpec&) const = default;
};

struct EnsembleSpec {
    std::size_t realizations = 100;
    std::size_t histogram_bins = 20;
    bool operator==(const EnsembleSpec&) const = default;
};

struct OutputSpec {
    std::string dir;
    std::string format = "csv";
    bool operator==(const OutputSpec&) const = default;
};

struct ScenarioDocument {
    int version = 1;
    std::string kind;  // "power_game" or "matrix_game"
    std::uint64_t seed = 0;

    // power_game
    GridSpec grid;
    /// Explicit gains [from][to][bin]; exclusive with `generator`.
    std::optional<std::vector<std::vector<std::vector<double>>>> channels;
    std::optional<GeneratorSpec> generator;
    /// Flat noise level, or a [user][bin] table.
    std::optional<double> noise_level;
    std::optional<std::vector<std::vector<double>>> noise_table;
    std::vector<double> budgets;
    std::string action_model = "continuous";  // continuous | concentrate_spread | discretized
    std::size_t levels = 10;
    IwSpec iw;
    StackelbergSpec stackelberg;
    ParetoSpec pareto;
    EnsembleSpec ensemble;
    std::optional<SweepSpec> sweeps;

    // matrix_game
    std::vector<std::vector<std::string>> players;
    std::vector<PayoffEntry> payoffs;

    // any finite game
    std::vector<LearnerEntry> learners;
    std::size_t rounds = 1000;
    std::vector<std::string> knowledge;
    std::vector<std::string> start;
    std::vector<double> welfare_weights;
    std::vector<DistributionEntry> distribution;

    std::optional<OutputSpec> output;

    bool operator==(const ScenarioDocument&) const = default;

    bool is_power() const { return kind == "power_game"; }
    std::size_t users() const { return is_power() ? budgets.size() : players.size(); }
};

/// Parse and validate. Every failure is ErrorCode::config with the field path
/// (or the JSON parser's line and column) in the message.
ScenarioDocument parse_scenario(const nlohmann::json& doc);
ScenarioDocument parse_scenario_text(const std::string& text);
ScenarioDocument load_scenario(const std::string& path);

/// Canonical form: every field of the document's kind, defaults included.
nlohmann::json to_json(const ScenarioDocument& doc);

PowerScenario power_scenario(const ScenarioDocument& doc);
ContinuousScenario continuous_scenario(const ScenarioDocument& doc);
IwOptions iw_options(const ScenarioDocument& doc);
StackelbergOptions stackelberg_options(const ScenarioDocument& doc);
ParetoOptions pareto_options(const ScenarioDocument& doc);
EnsembleConfig ensemble_config(const ScenarioDocument& doc);

/// Finite game of a matrix_game, or of a power_game with a finite action model.
NormalFormGame finite_game(const ScenarioDocument& doc);
bool has_finite_game(const ScenarioDocument& doc);

Profile start_profile(const ScenarioDocument& doc, const NormalFormGame& game);
std::vector<LearnerSpec> learner_specs(const std::vector<LearnerEntry>& entries, const NormalFormGame& game);
KnowledgeProfile knowledge_profile(const std::vector<std::string>& names);
JointDistribution joint_distribution(const ScenarioDocument& doc, const NormalFormGame& game);

}  // namespace specgame::cli
