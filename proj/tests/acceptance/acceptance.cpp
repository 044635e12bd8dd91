// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <specgame/continuous_games.hpp>
#include <specgame/error.hpp>
#include <specgame/experiments.hpp>
#include <specgame/learning.hpp>
#include <specgame/matrix_games.hpp>
#include <specgame/power_games.hpp>
#include <specgame/random.hpp>
#include <specgame/spectrum.hpp>

#include "commands.hpp"

using namespace specgame;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) detail = what;
        ok = ok && cond;
    }
};

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

constexpr std::size_t A = 0, B = 1;

// 1
Check two_channel_payoffs() {
    Check c;
    const auto g = build_power_game_2x2();
    const std::map<Profile, std::vector<double>> expected{
        {{kConcentrate, kSpread}, {2.12, 3.22}},
        {{kConcentrate, kConcentrate}, {3.46, 3.46}},
        {{kSpread, kSpread}, {2.83, 2.42}},
        {{kSpread, kConcentrate}, {3.59, 2.12}},
    };
    for (const auto& [profile, values] : expected) {
        for (std::size_t n = 0; n < 2; ++n) {
            c.expect(near(g.payoff(profile)[n], values[n], 0.01),
                     "payoff " + fmt(g.payoff(profile)[n]) + " vs " + fmt(values[n]));
        }
    }
    return c;
}

// 2
Check two_channel_analysis() {
    Check c;
    const auto g = build_power_game_2x2();
    const auto dominant = strictly_dominant_action(g, 0);
    c.expect(dominant && *dominant == kSpread, "user 1 has no strictly dominant Spread");
    const auto ne = pure_nash(g);
    c.expect(ne.size() == 1 && ne[0] == Profile{kSpread, kSpread}, "pure NE set is not {(S,S)}");
    if (ne.size() == 1) {
        c.expect(near(g.payoff(ne[0])[0], 2.83, 0.01) && near(g.payoff(ne[0])[1], 2.42, 0.01), "NE value");
    }
    const auto st = stackelberg_finite(g, 0);
    c.expect(st.profile == Profile{kConcentrate, kConcentrate}, "Stackelberg profile is not (C,C)");
    c.expect(near(st.utilities[0], 3.46, 0.01) && near(st.utilities[1], 3.46, 0.01), "Stackelberg value");
    return c;
}

// 3
Check contention() {
    Check c;
    const auto g = build_contention_game();
    auto ne = pure_nash(g);
    std::sort(ne.begin(), ne.end());
    c.expect(ne == std::vector<Profile>{{A, B}, {B, A}}, "pure NE set");
    const auto mixed = mixed_nash_2x2(g);
    for (std::size_t n = 0; n < 2; ++n) {
        c.expect(near(mixed.strategy.probabilities[n][A], 1.0 / 3.0, 1e-9), "mixed probability");
        c.expect(near(mixed.utilities[n], 14.0 / 3.0, 1e-9), "mixed value " + fmt(mixed.utilities[n]));
    }
    const JointDistribution third({0.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
    c.expect(is_correlated_equilibrium(g, third, 1e-9).is_equilibrium, "uniform third is not a CE");
    const auto u = third.expected_utilities(g);
    c.expect(near(u[0], 5.0, 1e-12) && near(u[1], 5.0, 1e-12), "CE value");
    return c;
}

// 4
Check ce_lp() {
    Check c;
    const auto g = build_contention_game();
    const std::vector<double> w{1.0, 1.0};
    const auto opt = optimize_ce(g, w);
    c.expect(near(opt.value, 10.5, 1e-6), "LP value " + fmt(opt.value));
    c.expect(is_correlated_equilibrium(g, opt.distribution, 1e-9).is_equilibrium, "LP optimum is not a CE");

    double best = -1.0;
    for (int i = 0; i <= 100; ++i) {
        for (int j = 0; i + j <= 100; ++j) {
            for (int k = 0; i + j + k <= 100; ++k) {
                const int l = 100 - i - j - k;
                const JointDistribution d({i / 100.0, j / 100.0, k / 100.0, l / 100.0});
                if (!is_correlated_equilibrium(g, d, 1e-9).is_equilibrium) continue;
                const auto u = d.expected_utilities(g);
                best = std::max(best, u[0] + u[1]);
            }
        }
    }
    c.expect(near(best, 10.5, 0.05), "grid oracle best " + fmt(best));
    c.expect(best <= opt.value + 1e-9, "grid oracle beats the LP");
    return c;
}

// 5
Check water_filling() {
    Check c;
    Rng rng(20240501);
    const std::size_t sizes[3] = {2, 8, 64};
    for (int inst = 0; inst < 200; ++inst) {
        const std::size_t k = sizes[inst % 3];
        const FrequencyGrid grid(k, static_cast<double>(k) * (0.5 + rng.uniform()));
        std::vector<double> gain(k), noise(k);
        for (std::size_t i = 0; i < k; ++i) {
            gain[i] = 0.01 + 2.0 * rng.uniform();
            noise[i] = 0.1 + rng.uniform();
        }
        const double budget = 0.1 + 20.0 * rng.uniform();
        const auto wf = water_fill(gain, noise, budget, grid);
        double power = 0.0;
        for (double p : wf.psd) power += p * grid.bin_width();
        c.expect(std::abs(power - budget) <= 1e-9 * budget, "budget on instance " + std::to_string(inst));
        for (std::size_t i = 0; i < k; ++i) {
            const double floor = noise[i] / gain[i];
            if (wf.psd[i] > 0.0) {
                c.expect(near(wf.psd[i] + floor, wf.water_level, 1e-6), "active bin off the water level");
            } else {
                c.expect(floor >= wf.water_level - 1e-6, "idle bin below the water level");
            }
        }
        const double rate = single_user_rate(wf.psd, gain, noise, grid);
        for (int s = 0; s < 1000; ++s) {
            std::vector<double> psd(k);
            double total = 0.0;
            for (auto& p : psd) total += (p = -std::log(1.0 - rng.uniform()));
            const double used = budget * rng.uniform();
            for (auto& p : psd) p *= used / (total * grid.bin_width());
            c.expect(single_user_rate(psd, gain, noise, grid) <= rate + 1e-9, "random allocation beats water-fill");
        }
    }
    return c;
}

EnsembleConfig ensemble_defaults() { return EnsembleConfig{}; }

struct Realization {
    ChannelSet channels;
    IwResult iw;
};

std::vector<Realization> seeded_ensembles(std::size_t count) {
    const auto cfg = ensemble_defaults();
    std::vector<Realization> out;
    const NoiseProfile noise(2, cfg.grid.bins(), cfg.noise);
    const PowerBudget budgets(cfg.budgets);
    for (std::size_t i = 0; i < count; ++i) {
        auto ch = ensemble_channels(cfg, i);
        auto iw = iterative_water_filling(ch, noise, budgets, cfg.grid, cfg.iw);
        out.push_back({std::move(ch), std::move(iw)});
    }
    return out;
}

// 6
Check iw_fixed_point(const std::vector<Realization>& ens) {
    Check c;
    const auto cfg = ensemble_defaults();
    const NoiseProfile noise(2, cfg.grid.bins(), cfg.noise);
    const PowerBudget budgets(cfg.budgets);
    std::size_t converged = 0;
    for (const auto& r : ens) {
        if (!r.iw.converged) continue;
        ++converged;
        for (std::size_t n = 0; n < 2; ++n) {
            const auto br = best_response_psd(n, r.iw.allocation, r.channels, noise, budgets, cfg.grid);
            const auto row = r.iw.allocation.row(n);
            double gap = 0.0;
            for (std::size_t k = 0; k < br.size(); ++k) gap = std::max(gap, std::abs(br[k] - row[k]));
            c.expect(gap <= 1e-6, "best-response gap " + fmt(gap));
        }
    }
    c.expect(converged > 0, "no realization converged");
    if (c.ok) c.detail = std::to_string(converged) + "/" + std::to_string(ens.size()) + " converged";
    return c;
}

// 7
Check leader_advantage(const std::vector<Realization>& ens) {
    Check c;
    const auto cfg = ensemble_defaults();
    const NoiseProfile noise(2, cfg.grid.bins(), cfg.noise);
    const PowerBudget budgets(cfg.budgets);
    for (const auto& r : ens) {
        if (!r.iw.converged) continue;
        const auto st = stackelberg_leader_search(0, r.channels, noise, budgets, cfg.grid, cfg.stackelberg);
        c.expect(st.rates[0] >= r.iw.rates[0] - 1e-9, "leader below its Nash rate");
    }
    const auto report = channel_ensemble_study(cfg);
    c.expect(report.samples.size() == 100, "ensemble size");
    c.expect(report.mean_ratio[0] > 1.0, "mean leader ratio " + fmt(report.mean_ratio[0]));
    c.expect(report.mean_ratio[1] > 1.0, "mean follower ratio " + fmt(report.mean_ratio[1]));
    if (c.ok) c.detail = "mean ratios " + fmt(report.mean_ratio[0]) + ", " + fmt(report.mean_ratio[1]);
    return c;
}

// 8
Check pareto_dominance() {
    Check c;
    const struct {
        std::size_t bins;
        std::size_t levels;
    } cases[2] = {{2, 20}, {4, 8}};
    for (const auto& cs : cases) {
        const FrequencyGrid grid(cs.bins, static_cast<double>(cs.bins));
        const auto cfg = ensemble_defaults();
        const NoiseProfile noise(2, cs.bins, cfg.noise);
        const PowerBudget budgets(cfg.budgets);
        ParetoOptions opts;
        opts.levels = cs.levels;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const auto ch = generate_multipath_channels(seed, 2, grid, cfg.tap_count, cfg.direct_power, cfg.cross_power);
            const auto iw = iterative_water_filling(ch, noise, budgets, grid);
            c.expect(iw.converged, "IW did not converge");
            const auto frontier = grid_pareto_frontier(ch, noise, budgets, grid, opts);
            const bool dominated = std::any_of(frontier.begin(), frontier.end(), [&](const RegionSample& p) {
                return weakly_dominates(p.rates, iw.rates, 1e-9);
            });
            c.expect(dominated, "K=" + std::to_string(cs.bins) + " seed " + std::to_string(seed) +
                                    ": no frontier point dominates IW");
        }
    }
    return c;
}

// 9
Check regret_matching() {
    Check c;
    const auto g = build_contention_game();
    const std::vector<LearnerSpec> rm(2, LearnerSpec{LearnerKind::regret_matching, 0});
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        RunConfig cfg;
        cfg.rounds = 200000;
        cfg.seed = seed;
        cfg.record_regrets = false;
        const auto run = run_repeated_game(g, rm, cfg);
        const double r = max_regret(run.trace, g);
        worst = std::max(worst, r);
        c.expect(r <= 0.05, "seed " + std::to_string(seed) + " regret " + fmt(r));
        const auto mu = empirical_joint_distribution(run.trace, g);
        c.expect(is_correlated_equilibrium(g, mu, 0.05).is_equilibrium, "empirical play is not a 0.05-CE");
    }

    const auto scenario = two_channel_scenario();
    const auto disc = build_discretized_power_game(scenario, 10);
    const auto iw = iterative_water_filling(scenario.channels, scenario.noise, scenario.budgets, scenario.grid);
    RunConfig cfg;
    cfg.rounds = 200000;
    cfg.seed = 7;
    cfg.record_regrets = false;
    const auto run = run_repeated_game(disc.game, rm, cfg);
    const auto avg = value_of_learning(run.trace, 0, run.trace.rounds());
    for (std::size_t n = 0; n < 2; ++n) {
        c.expect(avg[n] >= iw.rates[n] - 0.05, "power game average " + fmt(avg[n]) + " vs IW " + fmt(iw.rates[n]));
    }
    if (c.ok) {
        c.detail = "max regret " + fmt(worst) + "; power game averages " + fmt(avg[0]) + ", " + fmt(avg[1]) +
                   " vs IW " + fmt(iw.rates[0]) + ", " + fmt(iw.rates[1]);
    }
    return c;
}

// 10
Check knowledge() {
    Check c;
    const FiniteScenario s{build_power_game_2x2(), {}, {}};
    using K = KnowledgeLevel;
    const auto priv = value_of_knowledge(s, {K::private_knowledge, K::private_knowledge});
    const auto heter = value_of_knowledge(s, {K::heterogeneous_leader, K::private_knowledge});
    c.expect(near(priv[0], 2.83, 0.01) && near(priv[1], 2.42, 0.01), "private value");
    c.expect(near(heter[0], 3.46, 0.01) && near(heter[1], 3.46, 0.01), "heterogeneous value");
    c.expect(heter[0] > priv[0] && heter[1] > priv[1], "no componentwise gain");
    return c;
}

// 11
std::string read_tree(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    if (!std::filesystem::exists(dir)) return {};
    for (const auto& e : std::filesystem::recursive_directory_iterator(dir)) {
        if (e.is_regular_file()) files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    std::string all;
    for (const auto& f : files) {
        std::ifstream in(f, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        all += f.filename().string() + "\n" + s.str();
    }
    return all;
}

Check cli_determinism() {
    Check c;
    const std::string dir = SPECGAME_SCENARIO_DIR;
    const std::string two_channel = dir + "/two_channel.json", cont = dir + "/contention.json",
                      ens = dir + "/ensemble_default.json";
    const std::vector<std::vector<std::string>> commands{
        {"waterfill", "--gains", "1,0.5,0.25", "--noise", "1", "--budget", "3"},
        {"--config", two_channel, "waterfill", "--user", "2"},
        {"--config", two_channel, "iw"},
        {"--config", two_channel, "stackelberg"},
        {"--config", two_channel, "pareto", "--frontier"},
        {"--config", two_channel, "region"},
        {"--config", cont, "matrix", "solve"},
        {"--config", two_channel, "matrix", "solve"},
        {"--config", cont, "ce", "check"},
        {"--config", cont, "ce", "optimize"},
        {"--config", cont, "learn", "--rounds", "2000"},
        {"--config", two_channel, "learn", "--rounds", "2000", "--learners", "reinforcement,fictitious_play"},
        {"--config", two_channel, "vok", "--profile", "heter,priv"},
        {"--config", ens, "vok", "--profile", "priv,priv"},
        {"--config", ens, "ensemble", "--realizations", "8"},
        {"--config", cont, "validate"},
    };
    const auto tmp = std::filesystem::temp_directory_path() / "specgame_acceptance";
    for (const auto& base : commands) {
        for (const char* format : {"csv", "json"}) {
            std::string outputs[2];
            for (int rep = 0; rep < 2; ++rep) {
                std::filesystem::remove_all(tmp);
                std::vector<std::string> args{"--seed", "11", "--format", format};
                args.insert(args.end(), base.begin(), base.end());
                std::ostringstream out, err;
                const int code = cli::run(args, out, err);
                c.expect(code == 0, "exit " + std::to_string(code) + " for " + base.back() + ": " + err.str());
                auto with_dir = args;
                with_dir.insert(with_dir.begin(), {"--out", tmp.string()});
                std::ostringstream out2, err2;
                c.expect(cli::run(with_dir, out2, err2) == 0, "exit with --out: " + err2.str());
                outputs[rep] = out.str() + "\n--\n" + out2.str() + read_tree(tmp);
            }
            c.expect(outputs[0] == outputs[1], "outputs differ for " + base.back());
        }
    }
    std::filesystem::remove_all(tmp);
    if (c.ok) c.detail = std::to_string(commands.size()) + " invocations x 2 formats";
    return c;
}

}  // namespace

int main() {
    int failures = 0;
    std::vector<Realization> ensembles;
    auto report = [&](int id, const char* name, const std::function<Check()>& fn) {
        const auto start = std::chrono::steady_clock::now();
        Check c;
        try {
            c = fn();
        } catch (const std::exception& e) {
            c.ok = false;
            c.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!c.ok) ++failures;
        std::printf("%s %2d %s (%.1fs)%s%s\n", c.ok ? "PASS" : "FAIL", id, name, secs, c.detail.empty() ? "" : ": ",
                    c.detail.c_str());
        std::fflush(stdout);
    };
    report(1, "two-channel payoff matrix", two_channel_payoffs);
    report(2, "two-channel dominance, Nash and Stackelberg", two_channel_analysis);
    report(3, "contention game equilibria", contention);
    report(4, "correlated equilibrium LP", ce_lp);
    report(5, "water-filling properties", water_filling);
    ensembles = seeded_ensembles(50);
    report(6, "iterative water-filling fixed point", [&] { return iw_fixed_point(ensembles); });
    report(7, "Stackelberg leader advantage", [&] { return leader_advantage(ensembles); });
    report(8, "grid frontier dominates IW", pareto_dominance);
    report(9, "regret matching convergence", regret_matching);
    report(10, "value of knowledge", knowledge);
    report(11, "CLI determinism", cli_determinism);
    std::printf("%d of 11 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
