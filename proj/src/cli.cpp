#include "gaincons/cli.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "gaincons/io.hpp"

namespace gaincons::cli {

namespace fs = std::filesystem;

void RunConfig::validate() const {
    if (p && *p < 1) throw std::invalid_argument("--p must be >= 1");
    if (p_max && *p_max < 1) throw std::invalid_argument("--p-max must be >= 1");
    if (trials < 1) throw std::invalid_argument("--trials must be >= 1");
    for (double tol : {tolerances.zero_tol, tolerances.cons_tol, tolerances.sep_tol}) {
        if (!(tol > 0.0)) throw std::invalid_argument("tolerances must be positive");
    }
    if (tolerances.rate_floor < 0.0) throw std::invalid_argument("--rate-floor must be >= 0");
}

namespace {

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << content;
}

std::optional<fs::path> prepare_out(const RunConfig& cfg) {
    if (!cfg.out_dir) return std::nullopt;
    fs::create_directories(*cfg.out_dir);
    return cfg.out_dir;
}

std::string exponent_list(const ClusteringVector& b) {
    std::ostringstream s;
    s << '[';
    for (std::size_t i = 0; i < b.exponents().size(); ++i) s << (i ? "," : "") << b.exponents()[i];
    s << ']';
    return s.str();
}

std::string set_list(const std::vector<std::vector<Vertex>>& sets) {
    std::ostringstream s;
    for (std::size_t k = 0; k < sets.size(); ++k) {
        s << (k ? " " : "") << '{';
        for (std::size_t i = 0; i < sets[k].size(); ++i) s << (i ? "," : "") << sets[k][i];
        s << '}';
    }
    return s.str();
}

}  // namespace

int cmd_check_balance(const RunConfig& cfg, std::ostream& out) {
    const GainGraph g = read_graph_file(cfg.input);
    const BalanceVerdict v = check_balance(g);
    if (const auto* bal = std::get_if<Balanced>(&v)) {
        out << "balanced, b = " << exponent_list(bal->b) << ", " << format_partition(bal->b) << '\n';
    } else {
        const auto& unb = std::get<Unbalanced>(v);
        out << "unbalanced, witness semi-cycle from vertex " << unb.witness.start << ":";
        for (const Step& s : unb.witness.steps) {
            const Arc& a = g.arc(s.arc);
            out << " (" << a.tail << ',' << a.head << ',' << a.gain.value() << ")"
                << (s.direction == Direction::Forward ? "+" : "-");
        }
        out << ", gain exponent " << unb.gain.value() << '\n';
    }
    if (auto dir = prepare_out(cfg)) write_file(*dir / "balance.json", to_json(g, v).dump(2) + "\n");
    return is_balanced(v) ? exit_code::kBalanced : exit_code::kUnbalanced;
}

int cmd_lift(const RunConfig& cfg, std::ostream& out) {
    const GainGraph g = read_graph_file(cfg.input, true);
    const int n = g.n();
    const int m = g.order().value();
    const LiftedMatrix gbar = lift_matrix(g);
    const LiftedGraph lg = lift_graph(g);
    const auto sccs = scc_partition(lg);

    bool block_diagonal = true;
    for (int br = 0; br < m; ++br) {
        for (int bc = 0; bc < m; ++bc) {
            if (br == bc) continue;
            const auto blk = gbar.block(br, bc);
            block_diagonal = block_diagonal && std::all_of(blk.begin(), blk.end(),
                                                           [](const Rational& r) { return r.is_zero(); });
        }
    }

    nlohmann::json report;
    report["n"] = n;
    report["m"] = m;
    report["row_stochastic"] = gbar.is_row_stochastic();
    report["block_circulant"] = gbar.is_block_circulant();
    report["block_diagonal"] = block_diagonal;
    report["strongly_connected"] = is_strongly_connected(g);

    out << "lifted " << gbar.size() << "x" << gbar.size() << " matrix, row-stochastic="
        << (gbar.is_row_stochastic() ? "yes" : "no")
        << ", block-circulant=" << (gbar.is_block_circulant() ? "yes" : "no")
        << (block_diagonal ? ", block-diagonal (m identical diagonal blocks)" : "") << '\n';
    out << "sccs: " << set_list(sccs) << '\n';

    int code = exit_code::kOk;
    if (is_strongly_connected(g)) {
        const ComponentReport r = classify(g);
        report["classification"] = to_json(r, n, m);
        if (r.b) {
            out << "balanced structure: b = " << exponent_list(*r.b) << ", predicted "
                << set_list(r.predicted) << ", match=" << (r.matches_prediction ? "yes" : "no") << '\n';
        } else {
            out << "unbalanced structure: " << r.component_count << " components (bound " << m / 2
                << "), min size " << r.min_size << " (bound " << 2 * n
                << "), within bounds=" << (r.within_unbalanced_bounds ? "yes" : "no") << '\n';
        }
        if (r.is_counterexample()) {
            out << "counterexample recorded\n";
            code = exit_code::kCounterexample;
        }
    } else {
        out << "base graph not strongly connected; classification skipped\n";
    }

    if (auto dir = prepare_out(cfg)) {
        std::ostringstream csv, complex_csv, scc_txt;
        write_fraction_csv(csv, gbar);
        write_complex_csv(complex_csv, gain_matrix(g));
        for (const auto& c : sccs) {
            for (std::size_t i = 0; i < c.size(); ++i) scc_txt << (i ? " " : "") << c[i];
            scc_txt << '\n';
        }
        write_file(*dir / "lifted_matrix.csv", csv.str());
        write_file(*dir / "gain_matrix_complex.csv", complex_csv.str());
        write_file(*dir / "sccs.txt", scc_txt.str());
        write_file(*dir / "lift_report.json", report.dump(2) + "\n");
    }
    return code;
}

namespace {

void print_windows(const SequenceVerdict& v, std::ostream& out) {
    for (const WindowReport& w : v.windows) {
        out << "  window k=" << w.k << " t=" << w.first_time << ": "
            << (w.strongly_connected ? "strongly connected" : "not strongly connected") << ", "
            << (w.b ? "balanced b = " + exponent_list(*w.b) : std::string("unbalanced")) << '\n';
    }
}

int sequence_exit(SequenceClass c) {
    switch (c) {
        case SequenceClass::RepeatedlyJointlyBalancedWrt: return exit_code::kBalanced;
        case SequenceClass::RepeatedlyJointlyUnbalanced: return exit_code::kUnbalanced;
        case SequenceClass::Mixed: return exit_code::kMixed;
        case SequenceClass::NotJointlyStronglyConnected: return exit_code::kNotConnected;
    }
    return exit_code::kError;
}

// Window chosen by --q/--p, else the smallest decisive window, else (0, period).
std::pair<WindowSpec, SequenceVerdict> choose_window(const GraphSequence& seq, const RunConfig& cfg) {
    if (cfg.p || cfg.q) {
        const WindowSpec w{cfg.q.value_or(0), cfg.p.value_or(seq.period())};
        return {w, classify_sequence(seq, w)};
    }
    if (auto found = search_window(seq, cfg.p_max.value_or(seq.period()))) return std::move(*found);
    const WindowSpec w{0, seq.period()};
    return {w, classify_sequence(seq, w)};
}

}  // namespace

int cmd_classify_sequence(const RunConfig& cfg, std::ostream& out) {
    const GraphSequence seq = read_sequence_file(cfg.input);
    if (!seq.is_periodic()) {
        throw std::invalid_argument("classify-sequence needs a periodic schedule (period > 0)");
    }
    const auto [w, v] = choose_window(seq, cfg);
    out << to_string(v.kind);
    if (v.b) out << ' ' << exponent_list(*v.b);
    out << " (q=" << w.q << ", p=" << w.p << ", " << v.windows.size() << " windows)\n";
    print_windows(v, out);
    if (auto dir = prepare_out(cfg)) {
        nlohmann::json j = to_json(v);
        j["q"] = w.q;
        j["p"] = w.p;
        write_file(*dir / "sequence_report.json", j.dump(2) + "\n");
    }
    return sequence_exit(v.kind);
}

StateVector random_initial_state(int n, std::uint64_t seed, std::size_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    StateVector x(n);
    for (auto& v : x) {
        const double re = normal(rng);
        const double im = normal(rng);
        v = Complex(re, im);
    }
    return x;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
    const GraphSequence seq = read_sequence_file(cfg.input);

    nlohmann::json summary;
    std::optional<ClusteringVector> b;
    std::size_t window_p = seq.period();
    if (seq.is_periodic()) {
        const auto [w, v] = choose_window(seq, cfg);
        window_p = w.p;
        b = v.b;
        summary["sequence"] = {{"verdict", to_string(v.kind)}, {"q", w.q}, {"p", w.p}};
        if (v.b) summary["sequence"]["b"] = to_json(*v.b);
    }
    const std::size_t steps = cfg.steps.value_or(seq.is_periodic() ? 1000 * window_p : seq.graphs().size());
    if (!seq.is_periodic() && steps > seq.graphs().size()) {
        throw std::invalid_argument("--T exceeds the length of a finite schedule");
    }

    const auto dir = prepare_out(cfg);
    std::vector<LimitVerdict> results(cfg.trials, Undecided{});
    std::vector<std::string> errors(cfg.trials);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < cfg.trials; k = next++) {
            try {
                const SimulationTrace trace =
                    simulate(seq, random_initial_state(seq.n(), cfg.seed, k), steps, b);
                results[k] = detect_limit(trace, seq.order(), cfg.tolerances);
                if (dir && cfg.write_traces) {
                    std::ostringstream csv;
                    write_trace_csv(csv, trace);
                    write_file(*dir / ("trace_" + std::to_string(k) + ".csv"), csv.str());
                }
            } catch (const std::exception& e) {
                errors[k] = e.what();
            }
        }
    };
    std::size_t threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, cfg.trials);
    std::vector<std::jthread> pool;
    for (std::size_t i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
    pool.clear();
    for (const std::string& e : errors) {
        if (!e.empty()) throw std::runtime_error(e);
    }

    summary["seed"] = cfg.seed;
    summary["T"] = steps;
    summary["trials"] = cfg.trials;
    summary["tolerances"] = {{"zero_tol", cfg.tolerances.zero_tol},
                             {"cons_tol", cfg.tolerances.cons_tol},
                             {"sep_tol", cfg.tolerances.sep_tol},
                             {"rate_floor", cfg.tolerances.rate_floor}};
    std::size_t consensus = 0, zero = 0;
    nlohmann::json per_trial = nlohmann::json::array();
    for (std::size_t k = 0; k < cfg.trials; ++k) {
        nlohmann::json rec = to_json(results[k]);
        rec["trial"] = k;
        per_trial.push_back(std::move(rec));
        consensus += std::holds_alternative<MModulusConsensus>(results[k]);
        zero += std::holds_alternative<ZeroLimit>(results[k]);
        out << "trial " << k << ": " << verdict_name(results[k]);
        if (const auto* mc = std::get_if<MModulusConsensus>(&results[k])) {
            out << ", b_hat = " << exponent_list(mc->b_hat) << ", rate " << format_double(mc->rate.slope)
                << ", R^2 " << format_double(mc->rate.r_squared);
        } else if (const auto* z = std::get_if<ZeroLimit>(&results[k])) {
            out << ", rate " << (z->rate.hit_zero ? "-inf" : format_double(z->rate.slope));
        }
        out << '\n';
    }
    int code = exit_code::kOtherOutcome;
    std::string aggregate = "mixed";
    if (consensus == cfg.trials) {
        code = exit_code::kAllConsensus;
        aggregate = "m-modulus-consensus";
    } else if (zero == cfg.trials) {
        code = exit_code::kAllZero;
        aggregate = "zero";
    }
    summary["aggregate"] = aggregate;
    summary["results"] = std::move(per_trial);
    out << "aggregate: " << aggregate << " (" << consensus << " consensus, " << zero << " zero, "
        << cfg.trials - consensus - zero << " other)\n";
    if (dir) write_file(*dir / "summary.json", summary.dump(2) + "\n");
    return code;
}

int run(int argc, char** argv) {
    CLI::App app{"Cyclic-group gain graph analysis and modulus-consensus simulation"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string out_dir;
    constexpr const char* kEnv = "GAINCONS_";
    auto env = [&](const char* name) { return std::string(kEnv) + name; };

    auto add_out = [&](CLI::App* sub) {
        sub->add_option("--out", out_dir, "Output directory")->envname(env("OUT"));
    };
    auto add_window = [&](CLI::App* sub) {
        sub->add_option("--q", cfg.q, "Window offset q")->envname(env("Q"));
        sub->add_option("--p", cfg.p, "Window length p")->envname(env("P"));
        sub->add_option("--p-max", cfg.p_max, "Largest window length searched")->envname(env("P_MAX"));
    };

    auto* balance = app.add_subcommand("check-balance", "Structural m-balance of a gain graph");
    balance->add_option("graph", cfg.input, "Graph file")->required();
    add_out(balance);

    auto* lift = app.add_subcommand("lift", "Lifted mn-dimensional system and its components");
    lift->add_option("graph", cfg.input, "Neighbor graph file")->required();
    add_out(lift);

    auto* classify_cmd = app.add_subcommand("classify-sequence", "Repeatedly-jointly classification");
    classify_cmd->add_option("sequence", cfg.input, "Sequence file")->required();
    add_window(classify_cmd);
    add_out(classify_cmd);

    auto* sim = app.add_subcommand("simulate", "Simulate trials from random initial states");
    sim->add_option("sequence", cfg.input, "Sequence file")->required();
    add_window(sim);
    sim->add_option("--T", cfg.steps, "Steps per trial (default 1000 * p)")->envname(env("T"));
    sim->add_option("--trials", cfg.trials, "Number of trials")->envname(env("TRIALS"));
    sim->add_option("--seed", cfg.seed, "Base seed")->envname(env("SEED"));
    sim->add_option("--zero-tol", cfg.tolerances.zero_tol)->envname(env("ZERO_TOL"));
    sim->add_option("--cons-tol", cfg.tolerances.cons_tol)->envname(env("CONS_TOL"));
    sim->add_option("--sep-tol", cfg.tolerances.sep_tol)->envname(env("SEP_TOL"));
    sim->add_option("--rate-floor", cfg.tolerances.rate_floor)->envname(env("RATE_FLOOR"));
    sim->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)")->envname(env("THREADS"));
    sim->add_flag("!--no-traces", cfg.write_traces, "Skip per-trial trace CSVs");
    add_out(sim);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_code::kError;
    }
    if (!out_dir.empty()) cfg.out_dir = out_dir;

    try {
        cfg.validate();
        if (*balance) return cmd_check_balance(cfg, std::cout);
        if (*lift) return cmd_lift(cfg, std::cout);
        if (*classify_cmd) return cmd_classify_sequence(cfg, std::cout);
        return cmd_simulate(cfg, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code::kError;
    }
}

}  // namespace gaincons::cli
