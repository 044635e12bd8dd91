#include "scenario.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <set>
#include <sstream>

#include <specgame/error.hpp>

namespace specgame::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw Error(ErrorCode::config, "config " + path + ": " + message);
}

void check(bool condition, const std::string& path, const std::string& message) {
    if (!condition) fail(path, message);
}

std::string child(const std::string& path, const std::string& key) { return path + "." + key; }
std::string child(const std::string& path, std::size_t index) { return path + "[" + std::to_string(index) + "]"; }

void only_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    check(j.is_object(), path, "expected an object");
    for (const auto& [key, value] : j.items()) {
        const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
        check(known, child(path, key), "unknown key");
    }
}

double read_number(const json& j, const std::string& path) {
    check(j.is_number(), path, "expected a number");
    return j.get<double>();
}

std::uint64_t read_u64(const json& j, const std::string& path) {
    check(j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0), path,
          "expected a nonnegative integer");
    return j.get<std::uint64_t>();
}

std::size_t read_size(const json& j, const std::string& path) {
    return static_cast<std::size_t>(read_u64(j, path));
}

std::string read_string(const json& j, const std::string& path) {
    check(j.is_string(), path, "expected a string");
    return j.get<std::string>();
}

template <class F>
auto read_array(const json& j, const std::string& path, F element) {
    check(j.is_array(), path, "expected an array");
    std::vector<decltype(element(j, path))> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(element(j[i], child(path, i)));
    return out;
}

std::vector<double> read_numbers(const json& j, const std::string& path) {
    return read_array(j, path, read_number);
}

std::vector<std::string> read_strings(const json& j, const std::string& path) {
    return read_array(j, path, read_string);
}

std::vector<std::vector<double>> read_matrix(const json& j, const std::string& path) {
    return read_array(j, path, read_numbers);
}

// Reads `key` into `out` when present.
template <class T, class F>
void optional_field(const json& j, const char* key, const std::string& path, T& out, F reader) {
    if (auto it = j.find(key); it != j.end()) out = reader(*it, child(path, key));
}

GridSpec read_grid(const json& j, const std::string& path) {
    only_keys(j, path, {"bins", "total_band"});
    check(j.contains("bins") && j.contains("total_band"), path, "needs bins and total_band");
    GridSpec g{read_size(j["bins"], child(path, "bins")), read_number(j["total_band"], child(path, "total_band"))};
    check(g.bins >= 1, child(path, "bins"), "must be at least 1");
    check(g.total_band > 0.0, child(path, "total_band"), "must be positive");
    return g;
}

GeneratorSpec read_generator(const json& j, const std::string& path) {
    only_keys(j, path, {"tap_count", "direct_power", "cross_power"});
    GeneratorSpec g;
    optional_field(j, "tap_count", path, g.tap_count, read_size);
    optional_field(j, "direct_power", path, g.direct_power, read_number);
    optional_field(j, "cross_power", path, g.cross_power, read_number);
    check(g.tap_count >= 1, child(path, "tap_count"), "must be at least 1");
    check(g.direct_power > 0.0, child(path, "direct_power"), "must be positive");
    check(g.cross_power >= 0.0, child(path, "cross_power"), "must be nonnegative");
    return g;
}

IwSpec read_iw(const json& j, const std::string& path) {
    only_keys(j, path, {"tol", "max_iter"});
    IwSpec s;
    optional_field(j, "tol", path, s.tol, read_number);
    optional_field(j, "max_iter", path, s.max_iter, read_size);
    check(s.tol > 0.0, child(path, "tol"), "must be positive");
    return s;
}

StackelbergSpec read_stackelberg(const json& j, const std::string& path) {
    only_keys(j, path, {"leader", "levels", "refine_rounds", "enumerate_max_bins"});
    StackelbergSpec s;
    optional_field(j, "leader", path, s.leader, read_size);
    optional_field(j, "levels", path, s.levels, read_size);
    optional_field(j, "refine_rounds", path, s.refine_rounds, read_size);
    optional_field(j, "enumerate_max_bins", path, s.enumerate_max_bins, read_size);
    check(s.levels >= 1, child(path, "levels"), "must be at least 1");
    return s;
}

ParetoSpec read_pareto(const json& j, const std::string& path) {
    only_keys(j, path, {"levels", "max_evaluations"});
    ParetoSpec s;
    optional_field(j, "levels", path, s.levels, read_size);
    optional_field(j, "max_evaluations", path, s.max_evaluations, read_number);
    check(s.levels >= 1, child(path, "levels"), "must be at least 1");
    return s;
}

EnsembleSpec read_ensemble(const json& j, const std::string& path) {
    only_keys(j, path, {"realizations", "histogram_bins"});
    EnsembleSpec s;
    optional_field(j, "realizations", path, s.realizations, read_size);
    optional_field(j, "histogram_bins", path, s.histogram_bins, read_size);
    check(s.realizations >= 1, child(path, "realizations"), "must be at least 1");
    check(s.histogram_bins >= 1, child(path, "histogram_bins"), "must be at least 1");
    return s;
}

SweepSpec read_sweeps(const json& j, const std::string& path) {
    only_keys(j, path, {"budget_pairs", "weights"});
    SweepSpec s;
    optional_field(j, "budget_pairs", path, s.budget_pairs, read_matrix);
    optional_field(j, "weights", path, s.weights, read_matrix);
    return s;
}

OutputSpec read_output(const json& j, const std::string& path) {
    only_keys(j, path, {"dir", "format"});
    OutputSpec s;
    optional_field(j, "dir", path, s.dir, read_string);
    optional_field(j, "format", path, s.format, read_string);
    check(s.format == "csv" || s.format == "json", child(path, "format"), "must be csv or json");
    return s;
}

PayoffEntry read_payoff(const json& j, const std::string& path) {
    only_keys(j, path, {"profile", "utilities"});
    check(j.contains("profile") && j.contains("utilities"), path, "needs profile and utilities");
    return {read_strings(j["profile"], child(path, "profile")), read_numbers(j["utilities"], child(path, "utilities"))};
}

LearnerEntry read_learner(const json& j, const std::string& path) {
    if (j.is_string()) return {j.get<std::string>(), std::nullopt};
    only_keys(j, path, {"kind", "action"});
    check(j.contains("kind"), path, "needs kind");
    LearnerEntry e{read_string(j["kind"], child(path, "kind")), std::nullopt};
    if (j.contains("action")) e.action = read_string(j["action"], child(path, "action"));
    return e;
}

DistributionEntry read_distribution_entry(const json& j, const std::string& path) {
    only_keys(j, path, {"profile", "prob"});
    check(j.contains("profile") && j.contains("prob"), path, "needs profile and prob");
    return {read_strings(j["profile"], child(path, "profile")), read_number(j["prob"], child(path, "prob"))};
}

void read_channels(const json& j, const std::string& path, ScenarioDocument& doc) {
    only_keys(j, path, {"explicit", "generator"});
    check(j.size() == 1, path, "needs exactly one of explicit or generator");
    if (j.contains("explicit")) {
        const auto p = child(path, "explicit");
        doc.channels = read_array(j["explicit"], p, read_matrix);
    } else {
        doc.generator = read_generator(j["generator"], child(path, "generator"));
    }
}

void validate_power(const ScenarioDocument& doc) {
    const std::size_t n = doc.budgets.size();
    const std::size_t k = doc.grid.bins;
    check(n >= 1, "$.budgets", "needs one budget per user");
    for (std::size_t i = 0; i < n; ++i) check(doc.budgets[i] > 0.0, child("$.budgets", i), "must be positive");
    if (doc.channels) {
        const auto& c = *doc.channels;
        check(c.size() == n, "$.channels.explicit", "expected " + std::to_string(n) + " transmitters");
        for (std::size_t i = 0; i < n; ++i) {
            const auto pi = child("$.channels.explicit", i);
            check(c[i].size() == n, pi, "expected " + std::to_string(n) + " receivers");
            for (std::size_t r = 0; r < n; ++r) {
                const auto pr = child(pi, r);
                check(c[i][r].size() == k, pr, "expected " + std::to_string(k) + " bins");
                for (std::size_t b = 0; b < k; ++b) check(c[i][r][b] >= 0.0, child(pr, b), "gain must be nonnegative");
            }
        }
    }
    if (doc.noise_level) check(*doc.noise_level > 0.0, "$.noise", "must be positive");
    if (doc.noise_table) {
        const auto& t = *doc.noise_table;
        check(t.size() == n, "$.noise", "expected " + std::to_string(n) + " rows");
        for (std::size_t i = 0; i < n; ++i) {
            check(t[i].size() == k, child("$.noise", i), "expected " + std::to_string(k) + " bins");
            for (std::size_t b = 0; b < k; ++b) check(t[i][b] > 0.0, child(child("$.noise", i), b), "must be positive");
        }
    }
    check(doc.action_model == "continuous" || doc.action_model == "concentrate_spread" ||
              doc.action_model == "discretized",
          "$.action_model", "must be continuous, concentrate_spread or discretized");
    if (doc.action_model == "concentrate_spread") {
        check(n == 2 && k == 2, "$.action_model", "concentrate_spread needs two users and two bins");
    }
    check(doc.levels >= 1, "$.levels", "must be at least 1");
    check(doc.stackelberg.leader >= 1 && doc.stackelberg.leader <= n, "$.stackelberg.leader", "must be a user number from 1 to " + std::to_string(n));
    if (doc.sweeps) {
        for (std::size_t i = 0; i < doc.sweeps->budget_pairs.size(); ++i) {
            check(doc.sweeps->budget_pairs[i].size() == n, child("$.sweeps.budget_pairs", i),
                  "expected " + std::to_string(n) + " budgets");
        }
        for (std::size_t i = 0; i < doc.sweeps->weights.size(); ++i) {
            check(doc.sweeps->weights[i].size() == n, child("$.sweeps.weights", i),
                  "expected " + std::to_string(n) + " weights");
        }
    }
}

void validate_matrix(const ScenarioDocument& doc) {
    const std::size_t n = doc.players.size();
    check(n >= 1, "$.players", "needs at least one player");
    std::size_t profiles = 1;
    for (std::size_t p = 0; p < n; ++p) {
        const auto& names = doc.players[p];
        check(!names.empty(), child("$.players", p), "needs at least one action");
        check(std::set<std::string>(names.begin(), names.end()).size() == names.size(), child("$.players", p),
              "action names must be distinct");
        profiles *= names.size();
    }
    std::set<std::vector<std::string>> seen;
    for (std::size_t i = 0; i < doc.payoffs.size(); ++i) {
        const auto& e = doc.payoffs[i];
        const auto path = child("$.payoffs", i);
        check(e.profile.size() == n, child(path, "profile"), "expected " + std::to_string(n) + " actions");
        check(e.utilities.size() == n, child(path, "utilities"), "expected " + std::to_string(n) + " utilities");
        for (std::size_t p = 0; p < n; ++p) {
            const auto& names = doc.players[p];
            check(std::find(names.begin(), names.end(), e.profile[p]) != names.end(), child(child(path, "profile"), p),
                  "unknown action '" + e.profile[p] + "'");
        }
        check(seen.insert(e.profile).second, child(path, "profile"), "duplicate profile");
    }
    check(doc.payoffs.size() == profiles, "$.payoffs", "expected " + std::to_string(profiles) + " profiles");
}

void validate_common(const ScenarioDocument& doc) {
    const std::size_t n = doc.users();
    if (!doc.learners.empty()) check(doc.learners.size() == n, "$.learners", "expected one learner per user");
    if (!doc.knowledge.empty()) check(doc.knowledge.size() == n, "$.knowledge", "expected one level per user");
    if (!doc.start.empty()) check(doc.start.size() == n, "$.start", "expected one action per user");
    if (!doc.welfare_weights.empty()) {
        check(doc.welfare_weights.size() == n, "$.welfare_weights", "expected one weight per user");
    }
    for (std::size_t i = 0; i < doc.distribution.size(); ++i) {
        check(doc.distribution[i].profile.size() == n, child(child("$.distribution", i), "profile"),
              "expected " + std::to_string(n) + " actions");
        check(doc.distribution[i].prob >= 0.0, child(child("$.distribution", i), "prob"), "must be nonnegative");
    }
    for (std::size_t i = 0; i < doc.learners.size(); ++i) {
        try {
            learner_kind_from_string(doc.learners[i].kind);
        } catch (const Error& e) {
            fail(child(child("$.learners", i), "kind"), e.what());
        }
    }
    for (std::size_t i = 0; i < doc.knowledge.size(); ++i) {
        try {
            knowledge_level_from_string(doc.knowledge[i]);
        } catch (const Error& e) {
            fail(child("$.knowledge", i), e.what());
        }
    }
}

json matrix_json(const std::vector<std::vector<double>>& m) {
    json out = json::array();
    for (const auto& row : m) out.push_back(row);
    return out;
}

std::size_t action_by_name(const NormalFormGame& game, std::size_t player, const std::string& name,
                           const std::string& path) {
    try {
        return game.action_index(player, name);
    } catch (const Error&) {
        fail(path, "unknown action '" + name + "' for player " + std::to_string(player + 1));
    }
}

}  // namespace

ScenarioDocument parse_scenario(const json& j) {
    const std::string root = "$";
    check(j.is_object(), root, "expected an object");
    check(j.contains("version"), root, "missing version");
    check(j["version"] == 1, child(root, "version"), "unsupported version (expected 1)");
    check(j.contains("kind"), root, "missing kind");

    ScenarioDocument doc;
    doc.kind = read_string(j["kind"], "$.kind");
    optional_field(j, "seed", root, doc.seed, read_u64);
    optional_field(j, "learners", root, doc.learners,
                   [](const json& a, const std::string& p) { return read_array(a, p, read_learner); });
    optional_field(j, "rounds", root, doc.rounds, read_size);
    optional_field(j, "knowledge", root, doc.knowledge, read_strings);
    optional_field(j, "start", root, doc.start, read_strings);
    optional_field(j, "welfare_weights", root, doc.welfare_weights, read_numbers);
    optional_field(j, "distribution", root, doc.distribution,
                   [](const json& a, const std::string& p) { return read_array(a, p, read_distribution_entry); });
    if (j.contains("output")) doc.output = read_output(j["output"], "$.output");

    if (doc.kind == "power_game") {
        only_keys(j, root,
                  {"version", "kind", "seed", "grid", "channels", "noise", "budgets", "action_model", "levels", "iw",
                   "stackelberg", "pareto", "ensemble", "sweeps", "learners", "rounds", "knowledge", "start",
                   "welfare_weights", "distribution", "output"});
        for (const char* key : {"grid", "channels", "noise", "budgets"}) check(j.contains(key), root, std::string("missing ") + key);
        doc.grid = read_grid(j["grid"], "$.grid");
        read_channels(j["channels"], "$.channels", doc);
        if (j["noise"].is_number()) {
            doc.noise_level = read_number(j["noise"], "$.noise");
        } else {
            doc.noise_table = read_matrix(j["noise"], "$.noise");
        }
        doc.budgets = read_numbers(j["budgets"], "$.budgets");
        optional_field(j, "action_model", root, doc.action_model, read_string);
        optional_field(j, "levels", root, doc.levels, read_size);
        optional_field(j, "iw", root, doc.iw, read_iw);
        optional_field(j, "stackelberg", root, doc.stackelberg, read_stackelberg);
        optional_field(j, "pareto", root, doc.pareto, read_pareto);
        optional_field(j, "ensemble", root, doc.ensemble, read_ensemble);
        if (j.contains("sweeps")) doc.sweeps = read_sweeps(j["sweeps"], "$.sweeps");
        validate_power(doc);
    } else if (doc.kind == "matrix_game") {
        only_keys(j, root,
                  {"version", "kind", "seed", "players", "payoffs", "learners", "rounds", "knowledge", "start",
                   "welfare_weights", "distribution", "output"});
        check(j.contains("players") && j.contains("payoffs"), root, "matrix_game needs players and payoffs");
        doc.players = read_array(j["players"], "$.players", read_strings);
        doc.payoffs = read_array(j["payoffs"], "$.payoffs", read_payoff);
        validate_matrix(doc);
    } else {
        fail("$.kind", "must be power_game or matrix_game");
    }
    validate_common(doc);
    return doc;
}

ScenarioDocument parse_scenario_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::config, std::string("config: ") + e.what());
    }
    return parse_scenario(j);
}

ScenarioDocument load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::config, "config: cannot open '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_scenario_text(text.str());
}

json to_json(const ScenarioDocument& doc) {
    json j;
    j["version"] = doc.version;
    j["kind"] = doc.kind;
    j["seed"] = doc.seed;
    if (doc.is_power()) {
        j["grid"] = {{"bins", doc.grid.bins}, {"total_band", doc.grid.total_band}};
        if (doc.channels) {
            json gains = json::array();
            for (const auto& m : *doc.channels) gains.push_back(matrix_json(m));
            j["channels"] = {{"explicit", gains}};
        } else if (doc.generator) {
            j["channels"] = {{"generator",
                              {{"tap_count", doc.generator->tap_count},
                               {"direct_power", doc.generator->direct_power},
                               {"cross_power", doc.generator->cross_power}}}};
        }
        if (doc.noise_level) j["noise"] = *doc.noise_level;
        if (doc.noise_table) j["noise"] = matrix_json(*doc.noise_table);
        j["budgets"] = doc.budgets;
        j["action_model"] = doc.action_model;
        j["levels"] = doc.levels;
        j["iw"] = {{"tol", doc.iw.tol}, {"max_iter", doc.iw.max_iter}};
        j["stackelberg"] = {{"leader", doc.stackelberg.leader},
                            {"levels", doc.stackelberg.levels},
                            {"refine_rounds", doc.stackelberg.refine_rounds},
                            {"enumerate_max_bins", doc.stackelberg.enumerate_max_bins}};
        j["pareto"] = {{"levels", doc.pareto.levels}, {"max_evaluations", doc.pareto.max_evaluations}};
        j["ensemble"] = {{"realizations", doc.ensemble.realizations},
                         {"histogram_bins", doc.ensemble.histogram_bins}};
        if (doc.sweeps) {
            j["sweeps"] = {{"budget_pairs", matrix_json(doc.sweeps->budget_pairs)},
                           {"weights", matrix_json(doc.sweeps->weights)}};
        }
    } else {
        j["players"] = doc.players;
        json payoffs = json::array();
        for (const auto& e : doc.payoffs) payoffs.push_back({{"profile", e.profile}, {"utilities", e.utilities}});
        j["payoffs"] = payoffs;
    }
    json learners = json::array();
    for (const auto& l : doc.learners) {
        json e = {{"kind", l.kind}};
        if (l.action) e["action"] = *l.action;
        learners.push_back(e);
    }
    j["learners"] = learners;
    j["rounds"] = doc.rounds;
    j["knowledge"] = doc.knowledge;
    j["start"] = doc.start;
    j["welfare_weights"] = doc.welfare_weights;
    json dist = json::array();
    for (const auto& e : doc.distribution) dist.push_back({{"profile", e.profile}, {"prob", e.prob}});
    j["distribution"] = dist;
    if (doc.output) j["output"] = {{"dir", doc.output->dir}, {"format", doc.output->format}};
    return j;
}

PowerScenario power_scenario(const ScenarioDocument& doc) {
    check(doc.is_power(), "$.kind", "this command needs a power_game");
    const std::size_t n = doc.budgets.size();
    const std::size_t k = doc.grid.bins;
    const FrequencyGrid grid(k, doc.grid.total_band);
    ChannelSet channels(n, k);
    if (doc.channels) {
        std::vector<double> flat;
        for (const auto& to : *doc.channels) {
            for (const auto& bins : to) flat.insert(flat.end(), bins.begin(), bins.end());
        }
        channels = ChannelSet(n, k, std::move(flat));
    } else {
        const auto& g = *doc.generator;
        channels = generate_multipath_channels(doc.seed, n, grid, g.tap_count, g.direct_power, g.cross_power);
    }
    std::vector<double> noise;
    if (doc.noise_table) {
        for (const auto& row : *doc.noise_table) noise.insert(noise.end(), row.begin(), row.end());
    } else {
        noise.assign(n * k, *doc.noise_level);
    }
    return {std::move(channels), NoiseProfile(n, k, std::move(noise)), PowerBudget(doc.budgets), grid};
}

IwOptions iw_options(const ScenarioDocument& doc) { return {doc.iw.tol, doc.iw.max_iter}; }

StackelbergOptions stackelberg_options(const ScenarioDocument& doc) {
    StackelbergOptions o;
    o.levels = doc.stackelberg.levels;
    o.refine_rounds = doc.stackelberg.refine_rounds;
    o.enumerate_max_bins = doc.stackelberg.enumerate_max_bins;
    o.iw = iw_options(doc);
    return o;
}

ParetoOptions pareto_options(const ScenarioDocument& doc) { return {doc.pareto.levels, doc.pareto.max_evaluations}; }

ContinuousScenario continuous_scenario(const ScenarioDocument& doc) {
    return {power_scenario(doc), iw_options(doc), stackelberg_options(doc), pareto_options(doc), doc.welfare_weights};
}

EnsembleConfig ensemble_config(const ScenarioDocument& doc) {
    check(doc.is_power(), "$.kind", "ensemble needs a power_game");
    check(doc.generator.has_value(), "$.channels", "ensemble needs a channel generator");
    check(doc.noise_level.has_value(), "$.noise", "ensemble needs a flat noise level");
    check(doc.budgets.size() == 2, "$.budgets", "ensemble needs two users");
    EnsembleConfig c;
    c.realizations = doc.ensemble.realizations;
    c.seed = doc.seed;
    c.grid = FrequencyGrid(doc.grid.bins, doc.grid.total_band);
    c.budgets = doc.budgets;
    c.noise = *doc.noise_level;
    c.tap_count = doc.generator->tap_count;
    c.direct_power = doc.generator->direct_power;
    c.cross_power = doc.generator->cross_power;
    c.leader = doc.stackelberg.leader - 1;
    c.histogram_bins = doc.ensemble.histogram_bins;
    c.iw = iw_options(doc);
    c.stackelberg = stackelberg_options(doc);
    return c;
}

bool has_finite_game(const ScenarioDocument& doc) {
    return !doc.is_power() || doc.action_model != "continuous";
}

NormalFormGame finite_game(const ScenarioDocument& doc) {
    if (doc.is_power()) {
        check(doc.action_model != "continuous", "$.action_model", "this command needs a finite action model");
        const auto scenario = power_scenario(doc);
        if (doc.action_model == "concentrate_spread") return build_power_game_2x2(scenario);
        return build_discretized_power_game(scenario, static_cast<unsigned>(doc.levels)).game;
    }
    std::vector<std::size_t> counts;
    for (const auto& names : doc.players) counts.push_back(names.size());
    NormalFormGame shape(counts, std::vector<double>(doc.payoffs.size() * counts.size(), 0.0), doc.players);
    std::vector<double> payoffs(shape.raw_payoffs().size(), 0.0);
    for (std::size_t i = 0; i < doc.payoffs.size(); ++i) {
        Profile profile;
        for (std::size_t p = 0; p < counts.size(); ++p) {
            profile.push_back(action_by_name(shape, p, doc.payoffs[i].profile[p], child("$.payoffs", i)));
        }
        const std::size_t index = shape.index_of(profile);
        std::copy(doc.payoffs[i].utilities.begin(), doc.payoffs[i].utilities.end(),
                  payoffs.begin() + static_cast<std::ptrdiff_t>(index * counts.size()));
    }
    return NormalFormGame(counts, std::move(payoffs), doc.players);
}

Profile start_profile(const ScenarioDocument& doc, const NormalFormGame& game) {
    Profile profile;
    for (std::size_t p = 0; p < doc.start.size(); ++p) {
        profile.push_back(action_by_name(game, p, doc.start[p], child("$.start", p)));
    }
    return profile;
}

std::vector<LearnerSpec> learner_specs(const std::vector<LearnerEntry>& entries, const NormalFormGame& game) {
    std::vector<LearnerSpec> specs;
    if (entries.empty()) return std::vector<LearnerSpec>(game.players());
    check(entries.size() == game.players(), "$.learners", "expected one learner per player");
    for (std::size_t p = 0; p < entries.size(); ++p) {
        LearnerSpec spec;
        try {
            spec.kind = learner_kind_from_string(entries[p].kind);
        } catch (const Error& e) {
            fail(child(child("$.learners", p), "kind"), e.what());
        }
        if (entries[p].action) spec.action = action_by_name(game, p, *entries[p].action, child(child("$.learners", p), "action"));
        specs.push_back(spec);
    }
    return specs;
}

KnowledgeProfile knowledge_profile(const std::vector<std::string>& names) {
    KnowledgeProfile profile;
    for (std::size_t i = 0; i < names.size(); ++i) {
        try {
            profile.push_back(knowledge_level_from_string(names[i]));
        } catch (const Error& e) {
            fail(child("$.knowledge", i), e.what());
        }
    }
    return profile;
}

JointDistribution joint_distribution(const ScenarioDocument& doc, const NormalFormGame& game) {
    check(!doc.distribution.empty(), "$.distribution", "missing");
    std::vector<double> mass(game.profile_count(), 0.0);
    for (std::size_t i = 0; i < doc.distribution.size(); ++i) {
        const auto& e = doc.distribution[i];
        const auto path = child(child("$.distribution", i), "profile");
        check(e.profile.size() == game.players(), path, "wrong number of actions");
        Profile profile;
        for (std::size_t p = 0; p < e.profile.size(); ++p) profile.push_back(action_by_name(game, p, e.profile[p], path));
        mass[game.index_of(profile)] += e.prob;
    }
    try {
        return JointDistribution(std::move(mass));
    } catch (const Error& e) {
        fail("$.distribution", e.what());
    }
}

}  // namespace specgame::cli
