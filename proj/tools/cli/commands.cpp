#include "commands.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <span>

#include <specgame/continuous_games.hpp>
#include <specgame/error.hpp>
#include <specgame/experiments.hpp>
#include <specgame/learning.hpp>
#include <specgame/matrix_games.hpp>
#include <specgame/spectrum.hpp>

#include "CLI11.hpp"
#include "report.hpp"
#include "scenario.hpp"

namespace specgame::cli {

namespace {

struct Args {
    std::string config;
    std::uint64_t seed = 0;
    std::string out;
    std::string format;

    std::size_t user = 1;
    std::size_t leader = 0;  // 0: take it from the document
    std::vector<double> gains;
    std::vector<double> noise;
    double budget = 0.0;
    double band = 0.0;
    std::vector<double> weights;
    bool frontier = false;
    double tol = 1e-9;
    std::vector<std::string> learners;
    std::size_t rounds = 0;
    std::size_t stride = 1;
    std::vector<std::string> profile;
    std::size_t realizations = 0;
};

std::int64_t num(std::size_t v) { return static_cast<std::int64_t>(v); }
std::string flag(bool b) { return b ? "true" : "false"; }

std::vector<std::string> numbered(const std::string& prefix, std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i) names.push_back(prefix + std::to_string(i));
    return names;
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

void append(std::vector<Cell>& row, std::span<const double> values) {
    for (double v : values) row.emplace_back(v);
}

ScenarioDocument require_config(const std::optional<ScenarioDocument>& doc) {
    if (!doc) throw Error(ErrorCode::config, "this command needs --config");
    return *doc;
}

std::size_t leader_index(const Args& a, const ScenarioDocument& doc) {
    const std::size_t leader = a.leader ? a.leader : doc.stackelberg.leader;
    require(leader >= 1 && leader <= doc.users(), "--leader must be a user number from 1 to " + std::to_string(doc.users()),
            ErrorCode::config);
    return leader - 1;
}

void allocation_table(Report& report, const PowerAllocation& alloc) {
    auto& t = report.table("allocation", {"user", "bin", "psd"});
    for (std::size_t n = 0; n < alloc.users(); ++n) {
        for (std::size_t k = 0; k < alloc.bins(); ++k) t.add({num(n + 1), num(k), alloc.row(n)[k]});
    }
}

void region_table(Report& report, const std::vector<RegionSample>& samples, std::size_t users) {
    auto& t = report.table("region", concat(concat({"method"}, numbered("p", users)), numbered("R_", users)));
    for (const auto& s : samples) {
        std::vector<Cell> row{std::string(to_string(s.method))};
        append(row, s.params);
        append(row, s.rates);
        t.add(std::move(row));
    }
}

void distribution_table(Report& report, const NormalFormGame& game, const JointDistribution& dist) {
    auto& t = report.table("distribution", {"profile", "prob"});
    for (std::size_t i = 0; i < game.profile_count(); ++i) t.add({game.profile_label(game.profile_at(i)), dist[i]});
}

Report waterfill(const std::optional<ScenarioDocument>& doc, const Args& a) {
    std::vector<double> gain = a.gains;
    std::vector<double> noise = a.noise;
    double budget = a.budget;
    double band = a.band;
    if (doc) {
        const auto s = power_scenario(*doc);
        require(a.user >= 1 && a.user <= s.channels.users(), "--user out of range", ErrorCode::config);
        const std::size_t u = a.user - 1;
        if (gain.empty()) gain.assign(s.channels.gains(u, u).begin(), s.channels.gains(u, u).end());
        if (noise.empty()) noise.assign(s.noise.psd(u).begin(), s.noise.psd(u).end());
        if (budget <= 0.0) budget = s.budgets[u];
        if (band <= 0.0) band = s.grid.total_band();
    }
    require(!gain.empty(), "waterfill needs --gains or --config", ErrorCode::config);
    require(budget > 0.0, "waterfill needs a positive --budget", ErrorCode::config);
    if (noise.empty()) noise.assign(gain.size(), 1.0);
    if (noise.size() == 1) noise.assign(gain.size(), noise.front());
    require(noise.size() == gain.size(), "--noise needs one value per bin", ErrorCode::config);
    if (band <= 0.0) band = static_cast<double>(gain.size());
    const FrequencyGrid grid(gain.size(), band);

    const auto result = water_fill(gain, noise, budget, grid);
    Report report{"waterfill", {}};
    auto& bins = report.table("waterfill", {"bin", "gain", "noise", "psd"});
    double power = 0.0;
    for (std::size_t k = 0; k < gain.size(); ++k) {
        bins.add({num(k), gain[k], noise[k], result.psd[k]});
        power += result.psd[k] * grid.bin_width();
    }
    report.table("summary", {"water_level", "power", "rate"})
        .add({result.water_level, power, single_user_rate(result.psd, gain, noise, grid)});
    return report;
}

Report iw(const ScenarioDocument& doc) {
    const auto s = power_scenario(doc);
    const auto r = iterative_water_filling(s.channels, s.noise, s.budgets, s.grid, iw_options(doc));
    Report report{"iw", {}};
    std::vector<Cell> row{num(r.iterations), flag(r.converged), r.residual};
    append(row, r.rates);
    report.table("summary", concat({"iterations", "converged", "residual"}, numbered("R_", r.rates.size())))
        .add(std::move(row));
    allocation_table(report, r.allocation);
    return report;
}

Report stackelberg(const ScenarioDocument& doc, const Args& a) {
    const auto s = power_scenario(doc);
    const std::size_t leader = leader_index(a, doc);
    const auto r = stackelberg_leader_search(leader, s.channels, s.noise, s.budgets, s.grid, stackelberg_options(doc));
    Report report{"stackelberg", {}};
    std::vector<Cell> row{num(leader + 1)};
    append(row, r.rates);
    append(row, r.nash_rates);
    row.emplace_back(flag(r.nash_converged));
    row.emplace_back(num(r.candidates_evaluated));
    report
        .table("summary", concat(concat(concat({"leader"}, numbered("R_", 2)), numbered("nash_R_", 2)),
                                 {"nash_converged", "candidates"}))
        .add(std::move(row));
    PowerAllocation alloc(2, s.grid.bins());
    alloc.set_row(leader, r.leader_psd);
    alloc.set_row(1 - leader, r.follower_psd);
    allocation_table(report, alloc);
    return report;
}

std::vector<std::vector<double>> pareto_weights(const ScenarioDocument& doc, const Args& a) {
    if (!a.weights.empty()) return {a.weights};
    if (doc.sweeps && !doc.sweeps->weights.empty()) return doc.sweeps->weights;
    return {std::vector<double>(doc.users(), 1.0)};
}

Report pareto(const ScenarioDocument& doc, const Args& a) {
    const auto s = power_scenario(doc);
    const auto weights = pareto_weights(doc, a);
    RegionOptions options{iw_options(doc), 0, stackelberg_options(doc), pareto_options(doc)};
    Report report{"pareto", {}};
    region_table(report,
                 rate_region_sweep(RegionMethod::pareto, s.channels, s.noise, s.grid, weights, s.budgets, options),
                 doc.users());
    if (a.frontier) {
        auto& t = report.table("frontier", numbered("R_", 2));
        for (const auto& p : grid_pareto_frontier(s.channels, s.noise, s.budgets, s.grid, pareto_options(doc))) {
            t.add({p.rates[0], p.rates[1]});
        }
    }
    return report;
}

Report region(const ScenarioDocument& doc, const Args& a) {
    require(doc.users() == 2, "region needs a two-user power_game", ErrorCode::config);
    std::vector<std::vector<double>> pairs{doc.budgets};
    std::vector<std::vector<double>> weights{{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}};
    if (doc.sweeps && !doc.sweeps->budget_pairs.empty()) pairs = doc.sweeps->budget_pairs;
    if (doc.sweeps && !doc.sweeps->weights.empty()) weights = doc.sweeps->weights;
    if (!a.weights.empty()) weights = {a.weights};
    Report report{"region", {}};
    region_table(report, region_comparison(continuous_scenario(doc), pairs, weights, leader_index(a, doc)), 2);
    return report;
}

Report matrix_solve(const ScenarioDocument& doc) {
    const auto game = finite_game(doc);
    const std::size_t n = game.players();
    Report report{"matrix solve", {}};

    auto& ne = report.table("pure_nash", concat({"profile"}, numbered("u_", n)));
    for (const auto& p : pure_nash(game)) {
        std::vector<Cell> row{game.profile_label(p)};
        append(row, game.payoff(p));
        ne.add(std::move(row));
    }

    auto& dom = report.table("dominant", {"player", "action"});
    for (std::size_t p = 0; p < n; ++p) {
        const auto d = strictly_dominant_action(game, p);
        dom.add({num(p + 1), d ? game.action_name(p, *d) : std::string("none")});
    }

    if (n == 2 && game.actions(0) == 2 && game.actions(1) == 2) {
        auto& mixed = report.table("mixed_nash", {"player", "action", "prob", "utility"});
        try {
            const auto m = mixed_nash_2x2(game);
            for (std::size_t p = 0; p < 2; ++p) {
                for (std::size_t x = 0; x < 2; ++x) {
                    mixed.add({num(p + 1), game.action_name(p, x), m.strategy.probabilities[p][x], m.utilities[p]});
                }
            }
        } catch (const Error& e) {
            if (e.code() != ErrorCode::degenerate) throw;
        }
    }

    if (n == 2) {
        auto& st = report.table("stackelberg", concat({"leader", "profile"}, numbered("u_", 2)));
        for (std::size_t leader = 0; leader < 2; ++leader) {
            const auto s = stackelberg_finite(game, leader);
            std::vector<Cell> row{num(leader + 1), game.profile_label(s.profile)};
            append(row, s.utilities);
            st.add(std::move(row));
        }
    }
    return report;
}

Report ce_check(const ScenarioDocument& doc, const Args& a) {
    const auto game = finite_game(doc);
    const auto dist = joint_distribution(doc, game);
    const auto c = is_correlated_equilibrium(game, dist, a.tol);
    Report report{"ce check", {}};
    std::vector<Cell> row{flag(c.is_equilibrium), c.max_violation};
    append(row, dist.expected_utilities(game));
    report.table("ce_check", concat({"is_equilibrium", "max_violation"}, numbered("u_", game.players())))
        .add(std::move(row));
    return report;
}

Report ce_optimize(const ScenarioDocument& doc, const Args& a) {
    const auto game = finite_game(doc);
    std::vector<double> weights = a.weights.empty() ? doc.welfare_weights : a.weights;
    if (weights.empty()) weights.assign(game.players(), 1.0);
    const auto opt = optimize_ce(game, weights);
    Report report{"ce optimize", {}};
    distribution_table(report, game, opt.distribution);
    std::vector<Cell> row{opt.value};
    append(row, opt.distribution.expected_utilities(game));
    report.table("summary", concat({"value"}, numbered("u_", game.players()))).add(std::move(row));
    return report;
}

std::vector<LearnerEntry> learner_entries(const std::vector<std::string>& args) {
    std::vector<LearnerEntry> entries;
    for (const auto& a : args) {
        const auto colon = a.find(':');
        if (colon == std::string::npos) {
            entries.push_back({a, std::nullopt});
        } else {
            entries.push_back({a.substr(0, colon), a.substr(colon + 1)});
        }
    }
    return entries;
}

Report learn(const ScenarioDocument& doc, const Args& a) {
    const auto game = finite_game(doc);
    const auto specs = learner_specs(a.learners.empty() ? doc.learners : learner_entries(a.learners), game);
    RunConfig config;
    config.rounds = a.rounds ? a.rounds : doc.rounds;
    config.seed = doc.seed;
    config.record_regrets = false;
    require(config.rounds >= 1, "learn needs at least one round", ErrorCode::config);
    require(a.stride >= 1, "--stride must be at least 1", ErrorCode::config);
    const auto run = run_repeated_game(game, specs, config);
    const auto& trace = run.trace;
    const std::size_t n = game.players();

    Report report{"learn", {}};
    auto& t = report.table("trace", concat(concat({"t"}, numbered("a_", n)), numbered("u_", n)));
    for (std::size_t r = 0; r < trace.rounds(); r += a.stride) {
        std::vector<Cell> row{num(r + 1)};
        for (std::size_t p = 0; p < n; ++p) row.emplace_back(game.action_name(p, trace.joint_action(r)[p]));
        append(row, trace.utilities(r));
        t.add(std::move(row));
    }
    const auto average = value_of_learning(trace, 0, trace.rounds());
    auto& summary = report.table("summary", {"player", "learner", "average_utility", "max_regret"});
    for (std::size_t p = 0; p < n; ++p) {
        const auto regrets = regret_vector(trace, game, p, trace.rounds());
        double worst = 0.0;
        for (double r : regrets) worst = std::max(worst, r);
        summary.add({num(p + 1), std::string(to_string(specs[p].kind)), average[p], worst});
    }
    distribution_table(report, game, empirical_joint_distribution(trace, game));
    return report;
}

Report vok(const ScenarioDocument& doc, const Args& a) {
    const auto names = a.profile.empty() ? doc.knowledge : a.profile;
    require(!names.empty(), "vok needs --profile or a knowledge entry", ErrorCode::config);
    const auto profile = knowledge_profile(names);
    std::vector<double> value;
    if (has_finite_game(doc)) {
        auto game = finite_game(doc);
        auto start = start_profile(doc, game);
        value = value_of_knowledge(FiniteScenario{std::move(game), std::move(start), doc.welfare_weights}, profile);
    } else {
        value = value_of_knowledge(continuous_scenario(doc), profile);
    }
    Report report{"vok", {}};
    auto& t = report.table("value", {"user", "knowledge", "utility"});
    for (std::size_t n = 0; n < value.size(); ++n) t.add({num(n + 1), std::string(to_string(profile[n])), value[n]});
    return report;
}

Report ensemble(const ScenarioDocument& doc, const Args& a) {
    auto config = ensemble_config(doc);
    if (a.realizations) config.realizations = a.realizations;
    const auto r = channel_ensemble_study(config);
    Report report{"ensemble", {}};
    auto& t = report.table("ensemble", {"idx", "ratio_1", "ratio_2"});
    for (const auto& s : r.samples) t.add({num(s.index), s.ratios[0], s.ratios[1]});
    t.add({std::string("mean"), r.mean_ratio[0], r.mean_ratio[1]});
    auto& h = report.table("histogram", {"user", "bin", "lower", "upper", "count"});
    for (std::size_t u = 0; u < 2; ++u) {
        const auto& hist = r.histograms[u];
        for (std::size_t b = 0; b < hist.counts.size(); ++b) {
            h.add({num(u + 1), num(b), hist.edges[b], hist.edges[b + 1], num(hist.counts[b])});
        }
    }
    report.table("summary", {"realizations", "skipped", "mean_ratio_1", "mean_ratio_2"})
        .add({num(r.realizations), num(r.skipped), r.mean_ratio[0], r.mean_ratio[1]});
    return report;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Args a;
    CLI::App app{"Game-theoretic spectrum sharing: power control equilibria, finite games and learning"};
    app.name("specgame");
    app.require_subcommand(1);
    app.add_option("--config", a.config, "Scenario document (JSON)");
    auto* seed = app.add_option("--seed", a.seed, "Seed for every random draw");
    app.add_option("--out", a.out, "Write output files into this directory");
    app.add_option("--format", a.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

    auto sub = [&](CLI::App* parent, const char* name, const char* help) {
        auto* c = parent->add_subcommand(name, help);
        c->fallthrough();
        return c;
    };
    auto* cmd_waterfill = sub(&app, "waterfill", "Single-user water-filling");
    cmd_waterfill->add_option("--user", a.user, "User whose direct channel is used (from 1)");
    cmd_waterfill->add_option("--gains", a.gains, "Per-bin power gains")->delimiter(',');
    cmd_waterfill->add_option("--noise", a.noise, "Per-bin noise PSD (or one flat level)")->delimiter(',');
    cmd_waterfill->add_option("--budget", a.budget, "Total power budget");
    cmd_waterfill->add_option("--band", a.band, "Total bandwidth (defaults to the bin count)");

    auto* cmd_iw = sub(&app, "iw", "Iterative water-filling equilibrium");
    auto* cmd_stackelberg = sub(&app, "stackelberg", "Leader/follower power allocation");
    cmd_stackelberg->add_option("--leader", a.leader, "Leader user number (from 1)");
    auto* cmd_pareto = sub(&app, "pareto", "Weighted rate-sum maximization on the allocation grid");
    cmd_pareto->add_option("--weights", a.weights, "User weights")->delimiter(',');
    cmd_pareto->add_flag("--frontier", a.frontier, "Also list the nondominated grid rate pairs");
    auto* cmd_region = sub(&app, "region", "Rate-region table of IW, Stackelberg and Pareto points");
    cmd_region->add_option("--leader", a.leader, "Leader user number (from 1)");
    cmd_region->add_option("--weights", a.weights, "Single Pareto weight vector")->delimiter(',');

    auto* cmd_matrix = sub(&app, "matrix", "Finite-game analysis");
    cmd_matrix->require_subcommand(1);
    auto* cmd_solve = sub(cmd_matrix, "solve", "Pure and mixed NE, dominance and Stackelberg outcomes");

    auto* cmd_ce = sub(&app, "ce", "Correlated equilibria");
    cmd_ce->require_subcommand(1);
    auto* cmd_ce_check = sub(cmd_ce, "check", "Check the document's distribution");
    cmd_ce_check->add_option("--tol", a.tol, "Largest allowed deviation gain");
    auto* cmd_ce_optimize = sub(cmd_ce, "optimize", "Welfare-maximizing correlated equilibrium");
    cmd_ce_optimize->add_option("--weights", a.weights, "Welfare weights")->delimiter(',');

    auto* cmd_learn = sub(&app, "learn", "Repeated play by adaptive learners");
    cmd_learn->add_option("--learners", a.learners, "Learner per player, kind[:action]")->delimiter(',');
    cmd_learn->add_option("--rounds", a.rounds, "Number of rounds");
    cmd_learn->add_option("--stride", a.stride, "Print every n-th round of the trace");

    auto* cmd_vok = sub(&app, "vok", "Outcome induced by a knowledge profile");
    cmd_vok->add_option("--profile", a.profile, "Knowledge level per user: priv, heter or comp")->delimiter(',');

    auto* cmd_ensemble = sub(&app, "ensemble", "Random-channel study of leader/follower gains over IW");
    cmd_ensemble->add_option("--realizations", a.realizations, "Number of channel realizations");

    auto* cmd_validate = sub(&app, "validate", "Parse a scenario document and print its canonical form");

    std::vector<const char*> argv{"specgame"};
    for (const auto& s : args) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        std::optional<ScenarioDocument> doc;
        if (!a.config.empty()) doc = load_scenario(a.config);
        if (doc && *seed) doc->seed = a.seed;
        std::string format = a.format;
        std::string dir = a.out;
        if (doc && doc->output) {
            if (format.empty()) format = doc->output->format;
            if (dir.empty()) dir = doc->output->dir;
        }
        if (format.empty()) format = "csv";

        if (cmd_validate->parsed()) {
            out << to_json(require_config(doc)).dump(2) << '\n';
            return 0;
        }
        Report report;
        if (cmd_waterfill->parsed()) {
            report = waterfill(doc, a);
        } else if (cmd_iw->parsed()) {
            report = iw(require_config(doc));
        } else if (cmd_stackelberg->parsed()) {
            report = stackelberg(require_config(doc), a);
        } else if (cmd_pareto->parsed()) {
            report = pareto(require_config(doc), a);
        } else if (cmd_region->parsed()) {
            report = region(require_config(doc), a);
        } else if (cmd_solve->parsed()) {
            report = matrix_solve(require_config(doc));
        } else if (cmd_ce_check->parsed()) {
            report = ce_check(require_config(doc), a);
        } else if (cmd_ce_optimize->parsed()) {
            report = ce_optimize(require_config(doc), a);
        } else if (cmd_learn->parsed()) {
            report = learn(require_config(doc), a);
        } else if (cmd_vok->parsed()) {
            report = vok(require_config(doc), a);
        } else if (cmd_ensemble->parsed()) {
            report = ensemble(require_config(doc), a);
        }
        emit(report, format, dir, out);
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.is_validation() ? 1 : 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace specgame::cli
