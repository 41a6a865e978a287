// Copyright 2026 The qfridge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include "CLI11.hpp"

#include "qfridge/cli.h"
#include "qfridge/cswap.h"
#include "qfridge/demon.h"
#include "qfridge/fridge.h"
#include "qfridge/nswitch.h"
#include "qfridge/trajectories.h"

namespace qfridge::cli {

namespace {

using Row = std::vector<std::string>;
using Rows = std::vector<Row>;
using Defaults = std::vector<std::pair<std::string, std::string>>;

std::string num(double v) {
    return format_number(v);
}

std::string num(size_t v) {
    return std::to_string(v);
}

std::vector<Scheme> schemes(const Config &cfg) {
    std::vector<Scheme> out;
    for (const auto &w : parse_word_list(cfg.get("scheme"))) {
        out.push_back(parse_scheme(w));
    }
    return out;
}

Scheme single_scheme(const Config &cfg) {
    auto s = schemes(cfg);
    if (s.size() != 1) {
        throw UsageError("this command takes exactly one scheme");
    }
    return s[0];
}

size_t single_count(const Config &cfg, const std::string &key) {
    auto v = parse_count_grid(cfg.get(key));
    if (v.size() != 1) {
        throw UsageError("'" + key + "' must be a single value for this command");
    }
    return v[0];
}

double single_real(const Config &cfg, const std::string &key) {
    auto v = parse_real_grid(cfg.get(key));
    if (v.size() != 1) {
        throw UsageError("'" + key + "' must be a single value for this command");
    }
    return v[0];
}

Rows flatten(std::vector<Rows> chunks) {
    Rows out;
    for (auto &c : chunks) {
        for (auto &r : c) {
            out.push_back(std::move(r));
        }
    }
    return out;
}

struct GridPoint {
    size_t n;
    size_t dim;
    double r;
};

std::vector<GridPoint> ndr_grid(const Config &cfg) {
    std::vector<GridPoint> pts;
    for (size_t n : parse_count_grid(cfg.get("N"))) {
        for (size_t d : parse_count_grid(cfg.get("D"))) {
            for (double r : parse_real_grid(cfg.get("r"))) {
                pts.push_back({n, d, r});
            }
        }
    }
    return pts;
}

Table cmd_branches(const Config &cfg, unsigned threads) {
    Table t{{"N", "D", "r", "p_c", "p_H", "dE_h", "dE_c", "weighted_dE_h"}, {}, {}};
    const auto pts = ndr_grid(cfg);
    t.rows = parallel_map<Row>(pts.size(), threads, [&](size_t i) {
        const auto &p = pts[i];
        const auto spec = ThermalSpec::Degenerate(p.dim, p.r);
        const auto h = Hamiltonian::from_spec(spec);
        const auto s = branch_stats(p.n, spec);
        const double e_t = mean_energy(gibbs_state(spec), h);
        const double dh = mean_energy(s.rho_h, h) - e_t;
        const double dc = mean_energy(s.rho_c, h) - e_t;
        return Row{num(p.n), num(p.dim), num(p.r), num(s.p_c), num(s.p_H), num(dh), num(dc), num(s.p_H * dh)};
    });
    return t;
}

Table cmd_cop(const Config &cfg, unsigned threads) {
    Table t{{"scheme", "N", "D", "r", "r_hot", "p_c", "p_H", "entropy", "work", "cop", "cop_normalized",
             "ratio_to_ico"},
            {},
            {}};
    const double beta = cfg.get_double("beta_R");
    const double s = cfg.get_double("traj_scale");
    const auto hot_tokens = parse_word_list(cfg.get("r_hot"));
    struct Point {
        Scheme scheme;
        GridPoint p;
        std::string hot;
    };
    std::vector<Point> pts;
    for (Scheme sc : schemes(cfg)) {
        for (const auto &p : ndr_grid(cfg)) {
            for (const auto &tok : hot_tokens) {
                pts.push_back({sc, p, tok});
            }
        }
    }
    auto resolve_hot = [&](const Point &pt) -> std::vector<double> {
        if (pt.hot == "r") {
            return {pt.p.r};
        }
        if (pt.hot == "stop") {
            return {heating_effective_r(pt.scheme, pt.p.n, pt.p.dim, pt.p.r, s)};
        }
        return parse_real_grid(pt.hot);
    };
    auto chunks = parallel_map<Rows>(pts.size(), threads, [&](size_t i) {
        const auto &pt = pts[i];
        Rows rows;
        for (double r_hot : resolve_hot(pt)) {
            const auto &p = pt.p;
            const auto e = branch_energetics(pt.scheme, p.n, p.dim, p.r, s);
            const double entropy = register_entropy(p.n, ThermalSpec::Degenerate(p.dim, p.r), pt.scheme, s);
            const double norm = cop_normalized(p.n, p.dim, p.r, r_hot, pt.scheme, s);
            const double ico = cop_normalized(p.n, p.dim, p.r, r_hot, Scheme::ico, s);
            rows.push_back({to_string(pt.scheme), num(p.n), num(p.dim), num(p.r), num(r_hot), num(e.p_c),
                            num(e.p_H), num(entropy), num(work_cost(entropy, beta)), num(norm * beta), num(norm),
                            ico != 0 ? num(norm / ico) : "nan"});
        }
        return rows;
    });
    t.rows = flatten(std::move(chunks));
    return t;
}

Table cmd_limits(const Config &cfg, unsigned threads) {
    Table t{{"scheme", "k", "r_start", "r_closed_form", "r_fixed_point_unit_scale", "r_fixed_point"}, {}, {}};
    const double s = cfg.get_double("traj_scale");
    struct Point {
        Scheme scheme;
        double k;
        double r;
    };
    std::vector<Point> pts;
    for (Scheme sc : schemes(cfg)) {
        if (sc == Scheme::cswap) {
            throw UsageError("limits supports the ico and traj schemes");
        }
        for (double k : parse_real_grid(cfg.get("k"))) {
            for (double r : parse_real_grid(cfg.get("r"))) {
                pts.push_back({sc, k, r});
            }
        }
    }
    t.rows = parallel_map<Row>(pts.size(), threads, [&](size_t i) {
        const auto &p = pts[i];
        return Row{to_string(p.scheme), num(p.k), num(p.r), num(lowest_r(p.scheme, p.r, p.k)),
                   num(lowest_r_fixed_point(p.scheme, p.r, p.k, 2, 1.0)),
                   num(lowest_r_fixed_point(p.scheme, p.r, p.k, 2, s))};
    });
    return t;
}

Table cmd_cycle(const Config &cfg, unsigned) {
    const Scheme scheme = single_scheme(cfg);
    const size_t n = single_count(cfg, "N");
    const size_t dim = single_count(cfg, "D");
    const double r = single_real(cfg, "r");
    const double r_hot = cfg.get("r_hot") == "r" ? r : single_real(cfg, "r_hot");
    const double k = single_real(cfg, "k");
    const double n_c = cfg.get_double("n_c");
    CycleOptions opt;
    opt.max_cycles = cfg.get_u64("max_cycles");
    opt.batch_fraction = cfg.get_double("batch_fraction");
    opt.record_every = cfg.get_u64("record_every");
    opt.r_floor = cfg.get_double("r_floor");
    opt.beta_r = cfg.get_double("beta_R");
    opt.traj_scale = cfg.get_double("traj_scale");
    opt.tolerance = cfg.get_double("tolerance");
    const auto trace = run_cycles(scheme, {n_c, k * n_c, r, r_hot}, n, dim, cfg.get_u64("seed"), opt);

    Table t{{"cycle", "branch", "r_cold", "r_hot", "heat_cold", "heat_hot", "work", "entropy"}, {}, {}};
    for (const auto &rec : trace.records) {
        t.rows.push_back({std::to_string(rec.cycle), rec.branch, num(rec.r_cold), num(rec.r_hot), num(rec.heat_cold),
                          num(rec.heat_hot), num(rec.work), num(rec.entropy)});
    }
    t.summary = {
        {"stop", to_string(trace.stop)},
        {"cycles", std::to_string(trace.cycles)},
        {"final_r_cold", num(trace.final_state.r_cold)},
        {"final_r_hot", num(trace.final_state.r_hot)},
        {"fixed_point_r", num(lowest_r_fixed_point(scheme, r, k, dim, opt.traj_scale))},
    };
    return t;
}

Table cmd_cswap(const Config &cfg, unsigned threads) {
    Table t{{"N", "r", "qubit", "role", "p_c", "p_excited", "p_excited_closed_form", "weighted_shift"}, {}, {}};
    std::vector<std::pair<size_t, double>> pts;
    for (size_t n : parse_count_grid(cfg.get("N"))) {
        for (double r : parse_real_grid(cfg.get("r"))) {
            pts.push_back({n, r});
        }
    }
    auto chunks = parallel_map<Rows>(pts.size(), threads, [&](size_t i) {
        const auto [n, r] = pts[i];
        const auto br = cswap_branches(cswap_evolve(n, r), build_basis(n));
        const double t1 = ThermalSpec::Qubit(r).populations()[1];
        const double target_cf = target_cooling_marginal_closed_form(n, r)(1, 1).real() / br.p_c;
        const double res_cf = reservoir_cooling_marginal_closed_form(n, r)(1, 1).real() / br.p_c;
        Rows rows;
        for (size_t q = 0; q <= n; q++) {
            const double p = qubit_marginal(br.cooling, q)(1, 1).real();
            rows.push_back({num(n), num(r), num(q), q == 0 ? "target" : "reservoir", num(br.p_c), num(p),
                            num(q == 0 ? target_cf : res_cf), num(br.p_c * (p - t1))});
        }
        return rows;
    });
    t.rows = flatten(std::move(chunks));
    return t;
}

Table cmd_traj(const Config &cfg, unsigned threads) {
    Table t{{"N", "r", "constraint_value", "obtainable", "p_c", "p_H", "dE_h", "weighted_dE_h", "entropy",
             "cop_normalized", "ico_cop_normalized", "cop_ratio"},
            {},
            {}};
    const double s = cfg.get_double("traj_scale");
    if (!(s >= 0)) {
        throw UsageError("traj_scale must be nonnegative");
    }
    std::vector<std::pair<size_t, double>> pts;
    for (size_t n : parse_count_grid(cfg.get("N"))) {
        for (double r : parse_real_grid(cfg.get("r"))) {
            pts.push_back({n, r});
        }
    }
    t.rows = parallel_map<Row>(pts.size(), threads, [&](size_t i) {
        const auto [n, r] = pts[i];
        const auto spec = ThermalSpec::Qubit(r);
        KrausSet k = thermalizing_kraus(spec);
        std::vector<Complex> overlap(k.operators.size(), 0.0);
        // M = sqrt(2 s) K_0 = sqrt(s) A; s = 1/2 is the canonical environment |0>.
        overlap[0] = std::sqrt(2 * s);
        const auto traj = TrajectoryConfig::uniform(n, std::move(k), overlap);
        const auto b = traj_branches(traj, spec);
        const auto h = Hamiltonian::from_spec(spec);
        const double dh = mean_energy(b.rho_h, h) - mean_energy(gibbs_state(spec), h);
        const double entropy = register_entropy(n, spec, Scheme::traj, s);
        const double cn = cop_normalized(n, 2, r, r, Scheme::traj, s);
        const double ico = cop_normalized(n, 2, r, r, Scheme::ico);
        return Row{num(n),
                   num(r),
                   num(traj.m_list[0].constraint_value),
                   traj.m_list[0].obtainable ? "true" : "false",
                   num(b.p_c),
                   num(b.p_H),
                   num(dh),
                   num(b.p_H * dh),
                   num(entropy),
                   num(cn),
                   num(ico),
                   ico != 0 ? num(cn / ico) : "nan"};
    });
    return t;
}

Table cmd_demon(const Config &cfg, unsigned threads) {
    DemonConfig d;
    d.particles = cfg.get_u64("particles");
    d.n = single_count(cfg, "N");
    d.dim = single_count(cfg, "D");
    d.r = single_real(cfg, "r");
    d.scheme = single_scheme(cfg);
    d.rounds = static_cast<uint32_t>(cfg.get_u64("rounds"));
    d.seed = cfg.get_u64("seed");
    d.traj_scale = cfg.get_double("traj_scale");
    d.threads = threads;
    const auto rep = run_demon(d);
    Table t{{"bin_left", "bin_right", "count_boxC", "count_boxD"}, {}, {}};
    for (const auto &b : rep.histogram) {
        t.rows.push_back({num(b.left), num(b.right), std::to_string(b.count_box_c), std::to_string(b.count_box_d)});
    }
    const auto summary = rep.summary_json();
    for (const auto &[k, v] : summary.items()) {
        if (v.is_number_float()) {
            t.summary.emplace_back(k, num(v.get<double>()));
        } else {
            t.summary.emplace_back(k, v.is_string() ? v.get<std::string>() : v.dump());
        }
    }
    return t;
}

const std::map<std::string, Defaults> &defaults_table() {
    static const std::map<std::string, Defaults> table = {
        {"branches", {{"N", "2"}, {"D", "2"}, {"r", "0.1"}}},
        {"cop",
         {{"N", "2"},
          {"D", "2"},
          {"r", "0.1"},
          {"r_hot", "r"},
          {"beta_R", "1"},
          {"scheme", "ico,cswap,traj"},
          {"traj_scale", "0.5"}}},
        {"limits", {{"scheme", "ico,traj"}, {"k", "1"}, {"r", "0.2"}, {"traj_scale", "0.5"}}},
        {"cycle",
         {{"scheme", "ico"},
          {"N", "2"},
          {"D", "2"},
          {"r", "0.2"},
          {"r_hot", "r"},
          {"k", "1"},
          {"n_c", "1e10"},
          {"max_cycles", "1e18"},
          {"batch_fraction", "0.001"},
          {"record_every", "1"},
          {"r_floor", "0"},
          {"beta_R", "1"},
          {"traj_scale", "0.5"},
          {"tolerance", "1e-6"},
          {"seed", "1"}}},
        {"cswap", {{"N", "2:4"}, {"r", "0.3"}}},
        {"traj", {{"N", "2"}, {"r", "0.1:0.9:0.1"}, {"traj_scale", "0.5"}}},
        {"demon",
         {{"particles", "10000"},
          {"N", "100"},
          {"D", "2"},
          {"r", "0.1"},
          {"scheme", "ico"},
          {"rounds", "1"},
          {"seed", "1"},
          {"traj_scale", "0.5"}}},
    };
    return table;
}

}  // namespace

const std::vector<std::pair<std::string, std::string>> &command_defaults(const std::string &command) {
    const auto &table = defaults_table();
    auto it = table.find(command);
    if (it == table.end()) {
        throw UsageError("unknown command '" + command + "'");
    }
    return it->second;
}

const std::vector<std::string> &command_names() {
    static const std::vector<std::string> names = {"branches", "cop", "limits", "cycle", "cswap", "traj", "demon"};
    return names;
}

Table run_command(const std::string &command, const Config &cfg, unsigned threads) {
    try {
        if (command == "branches") {
            return cmd_branches(cfg, threads);
        }
        if (command == "cop") {
            return cmd_cop(cfg, threads);
        }
        if (command == "limits") {
            return cmd_limits(cfg, threads);
        }
        if (command == "cycle") {
            return cmd_cycle(cfg, threads);
        }
        if (command == "cswap") {
            return cmd_cswap(cfg, threads);
        }
        if (command == "traj") {
            return cmd_traj(cfg, threads);
        }
        if (command == "demon") {
            return cmd_demon(cfg, threads);
        }
    } catch (const UsageError &) {
        throw;
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    throw UsageError("unknown command '" + command + "'");
}


namespace {

struct CommonFlags {
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    std::optional<uint64_t> seed;
};

void add_common(CLI::App *sub, CommonFlags &f) {
    sub->add_option("--config", f.config_path, "key = value file; a CSV written by this tool also works");
    sub->add_option("--out", f.out_path, "write output here instead of stdout");
    sub->add_option("--format", f.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", f.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--seed", f.seed, "random seed");
}

void emit(const std::string &text, const std::string &path) {
    if (path.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out << text;
    if (!out) {
        throw IoError("failed writing '" + path + "'");
    }
}

Config resolve(const std::string &command, const CommonFlags &f, const std::map<std::string, std::string> &flags) {
    Config cfg;
    cfg.set("command", command);
    for (const auto &[k, v] : command_defaults(command)) {
        cfg.set(k, v);
    }
    if (!f.config_path.empty()) {
        const Config file = Config::load(f.config_path);
        for (const auto &[k, v] : file.entries()) {
            if (k == "command") {
                if (v != command) {
                    throw UsageError("config was written for '" + v + "', not '" + command + "'");
                }
                continue;
            }
            if (!cfg.has(k)) {
                throw UsageError("unknown key '" + k + "' for " + command);
            }
            cfg.set(k, v);
        }
    }
    for (const auto &[k, v] : flags) {
        cfg.set(k, v);
    }
    if (f.seed) {
        cfg.set("seed", std::to_string(*f.seed));
    }
    return cfg;
}

std::string verify_line(const VerifyCheck &c) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " (%.2f s)", c.seconds);
    return std::string(c.pass ? "PASS " : "FAIL ") + c.name + ": " + c.detail + buf + "\n";
}

}  // namespace

int main_entry(int argc, char **argv) {
    CLI::App app{"Quantum refrigeration with indefinite causal order and its coherent alternatives"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    CommonFlags common;
    std::map<std::string, std::map<std::string, std::string>> flag_values;
    std::map<std::string, CLI::App *> subs;
    for (const auto &name : command_names()) {
        auto *sub = app.add_subcommand(name);
        add_common(sub, common);
        for (const auto &[key, def] : command_defaults(name)) {
            if (key == "seed") {
                continue;
            }
            sub->add_option_function<std::string>(
                "--" + key, [&flag_values, name, key](const std::string &v) { flag_values[name][key] = v; },
                "default " + def);
        }
        subs[name] = sub;
    }
    subs["branches"]->description("cooling/heating probabilities and energy shifts over an (N, D, r) grid");
    subs["cop"]->description("coefficient of performance for each scheme");
    subs["limits"]->description("lowest reachable cold-reservoir ratio");
    subs["cycle"]->description("repeated fridge cycles against finite reservoirs");
    subs["cswap"]->description("coherent-swap marginals, simulated and closed form");
    subs["traj"]->description("superposed-trajectory implementations of the thermalizing channel");
    subs["demon"]->description("Maxwell-demon gas sorting by measured branch");
    auto *verify = app.add_subcommand("verify", "run every cross-module consistency check");
    std::string verify_out;
    unsigned verify_threads = common.threads;
    verify->add_option("--out", verify_out, "also write the report here");
    verify->add_option("--threads", verify_threads, "worker threads")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (verify->parsed()) {
            std::string report;
            bool ok = true;
            run_verify(verify_threads, [&](const VerifyCheck &c) {
                const auto line = verify_line(c);
                std::cout << line << std::flush;
                report += line;
                ok = ok && c.pass;
            });
            if (!verify_out.empty()) {
                emit(report, verify_out);
            }
            return ok ? kExitOk : kExitVerifyFailed;
        }
        for (const auto &[name, sub] : subs) {
            if (!sub->parsed()) {
                continue;
            }
            const Config cfg = resolve(name, common, flag_values[name]);
            const Table table = run_command(name, cfg, common.threads);
            emit(common.format == "json" ? format_json(cfg, table) : format_csv(cfg, table), common.out_path);
            return kExitOk;
        }
    } catch (const IoError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const BudgetError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace qfridge::cli
