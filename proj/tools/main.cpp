// stefanfront command-line interface. Talks to the solver library strictly
// through the public C API in stefanfront.h.
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "stefanfront.h"

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void die(int code, const std::string& msg) {
    std::cerr << "stefanfront: " << msg << "\n";
    std::exit(code);
}

void check(stf_status s, const std::string& what) {
    if (s != STF_OK) die(2, what + ": " + stf_last_error());
}

// Fixed 12-significant-digit, locale-independent formatting.
std::string fmt12(double v) {
    if (std::isnan(v)) return "";
    char buf[48];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void write_csv(std::ostream& os) const {
        for (size_t i = 0; i < header.size(); ++i) {
            os << header[i] << (i + 1 < header.size() ? "," : "\n");
        }
        for (const auto& row : rows) {
            for (size_t i = 0; i < row.size(); ++i) {
                os << row[i] << (i + 1 < row.size() ? "," : "\n");
            }
        }
    }

    void write_json(std::ostream& os) const {
        ordered_json arr = ordered_json::array();
        for (const auto& row : rows) {
            ordered_json obj;
            for (size_t i = 0; i < header.size(); ++i) {
                if (row[i].empty()) {
                    obj[header[i]] = nullptr;
                } else {
                    obj[header[i]] = std::stod(row[i]);
                }
            }
            arr.push_back(std::move(obj));
        }
        os << arr.dump(2) << "\n";
    }

    void write(const std::string& path, const std::string& format) const {
        std::ofstream file;
        std::ostream* os = &std::cout;
        if (!path.empty()) {
            file.open(path);
            if (!file) die(1, "cannot open output file " + path);
            os = &file;
        }
        if (format == "json") {
            write_json(*os);
        } else {
            write_csv(*os);
        }
    }
};

struct ReactionOpts {
    std::string name;
    std::vector<std::string> params;
    std::string config;
};

void add_reaction_opts(CLI::App* cmd, ReactionOpts& opts) {
    cmd->add_option("--reaction", opts.name,
                    "builtin reaction (fisher, mkpp, combustion, bistable_cubic)");
    cmd->add_option("--params", opts.params, "builtin parameters as key=value");
    cmd->add_option("--config", opts.config, "JSON reaction description file");
}

stf_reaction* make_reaction(const ReactionOpts& opts) {
    if (opts.name.empty() == opts.config.empty()) {
        die(1, "exactly one reaction source required (--reaction or --config)");
    }
    stf_reaction* r = nullptr;
    if (!opts.config.empty()) {
        std::ifstream in(opts.config);
        if (!in) die(1, "cannot read config file " + opts.config);
        std::stringstream ss;
        ss << in.rdbuf();
        check(stf_reaction_from_json(ss.str().c_str(), &r), "reaction config");
        return r;
    }
    std::vector<std::string> keys;
    std::vector<double> values;
    for (const auto& kv : opts.params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) die(1, "--params expects key=value, got " + kv);
        keys.push_back(kv.substr(0, eq));
        try {
            values.push_back(std::stod(kv.substr(eq + 1)));
        } catch (const std::exception&) {
            die(1, "--params: cannot parse value in " + kv);
        }
    }
    std::vector<const char*> key_ptrs;
    for (const auto& k : keys) key_ptrs.push_back(k.c_str());
    check(stf_reaction_builtin(opts.name.c_str(), key_ptrs.data(), values.data(),
                               static_cast<int>(keys.size()), &r),
          "reaction " + opts.name);
    return r;
}

struct Grid {
    std::vector<double> points;
};

// lo:hi:n[:log|lin]
Grid parse_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() < 3 || parts.size() > 4) {
        die(1, "grid must be lo:hi:n[:log|lin], got " + text);
    }
    double lo = 0, hi = 0;
    long n = 0;
    bool logspace = false;
    try {
        lo = std::stod(parts[0]);
        hi = std::stod(parts[1]);
        n = std::stol(parts[2]);
    } catch (const std::exception&) {
        die(1, "cannot parse grid " + text);
    }
    if (parts.size() == 4) {
        if (parts[3] == "log") {
            logspace = true;
        } else if (parts[3] != "lin") {
            die(1, "grid scale must be log or lin");
        }
    }
    if (!(lo > 0.0) || !(hi > lo) || n < 2) {
        die(1, "grid requires 0 < lo < hi and n >= 2");
    }
    Grid g;
    for (long i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / (n - 1);
        g.points.push_back(logspace ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t);
    }
    return g;
}

void parallel_for(long n, int jobs, const std::function<void(long)>& fn) {
    std::atomic<long> next{0};
    std::mutex err_mutex;
    std::string first_error;
    auto worker = [&] {
        for (;;) {
            const long i = next.fetch_add(1);
            if (i >= n) break;
            try {
                fn(i);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (first_error.empty()) first_error = e.what();
            }
        }
    };
    const int j = std::max(1, jobs);
    std::vector<std::thread> threads;
    for (int t = 0; t + 1 < j; ++t) threads.emplace_back(worker);
    worker();
    for (auto& th : threads) th.join();
    if (!first_error.empty()) die(2, first_error);
}

std::vector<std::string> bound_row(double kappa, const stf_bound_result& b) {
    std::string theta;
    for (int i = 0; i < b.n_theta; ++i) {
        if (i) theta += ";";
        theta += fmt12(b.theta[i]);
    }
    return {fmt12(kappa),        b.trial_id,           theta,
            fmt12(b.numerator),  fmt12(b.denominator), fmt12(b.c_lower),
            fmt12(b.closed_form_c), fmt12(b.paper_c1)};
}

const std::vector<std::string> kBoundHeader = {
    "kappa", "trial", "theta", "numerator", "denominator", "c_lower", "closed_form_c",
    "paper_c1"};

stf_bound_result compute_bound(stf_reaction* r, const std::string& reaction_name, double kappa,
                               const std::string& trial, const std::vector<double>& theta,
                               bool optimize, double tol) {
    stf_bound_result b{};
    if (trial == "zfk-closed") {
        check(stf_zfk_bound(r, kappa, &b), "zfk bound");
        return b;
    }
    if (trial == "fisher-simple" || trial == "fisher-hyper") {
        if (reaction_name != "fisher") {
            die(1, "--trial " + trial + " applies to --reaction fisher");
        }
        if (trial == "fisher-simple") {
            check(stf_fisher_bound_simple(kappa, theta.empty() ? 0.22 : theta[0], &b),
                  "fisher simple bound");
        } else {
            check(stf_fisher_bound_hyper(kappa, &b), "fisher hypergeometric bound");
        }
        return b;
    }
    if (trial == "ghat") {
        stf_speed_result sr{};
        stf_profile* prof = nullptr;
        check(stf_stefan_speed(r, kappa, tol, &sr, &prof), "stefan speed");
        stf_trial* t = nullptr;
        check(stf_optimal_g(prof, &t), "optimal trial");
        check(stf_bound_value(r, kappa, t, &b), "bound value");
        stf_trial_free(t);
        stf_profile_free(prof);
        return b;
    }
    if (optimize) {
        double lo = 0, hi = 0;
        if (theta.size() == 2) {
            lo = theta[0];
            hi = theta[1];
        } else if (trial == "linear") {
            lo = 0.01, hi = 0.99;
        } else if (trial == "power_pair") {
            lo = 0.02, hi = 0.98;
        } else if (trial == "exp") {
            lo = 0.05, hi = 20.0;
        } else if (trial == "rational") {
            lo = 0.05, hi = 200.0;
        } else {
            die(1, "--optimize needs a parametric family (linear, exp, rational, power_pair)");
        }
        check(stf_optimize_bound(r, kappa, trial.c_str(), lo, hi, &b), "optimize bound");
        return b;
    }
    stf_trial* t = nullptr;
    check(stf_trial_make(trial.c_str(), theta.data(), static_cast<int>(theta.size()), kappa,
                         &t),
          "trial " + trial);
    check(stf_bound_value(r, kappa, t, &b), "bound value");
    stf_trial_free(t);
    return b;
}

void write_profile_csv(stf_profile* prof, const std::string& path) {
    stf_profile_info info{};
    check(stf_profile_info_get(prof, &info), "profile info");
    std::vector<double> q(info.n), p(info.n);
    check(stf_profile_copy(prof, q.data(), p.data()), "profile copy");
    Table t;
    t.header = {"q", "p"};
    for (long i = 0; i < info.n; ++i) {
        t.rows.push_back({fmt12(q[i]), fmt12(p[i])});
    }
    t.write(path, "csv");
}

void write_gnuplot_script(const std::string& csv_path, const std::string& gp_path) {
    std::ofstream gp(gp_path);
    if (!gp) die(1, "cannot open " + gp_path);
    gp << "# Plot the speed comparison table produced by `stefanfront compare`.\n"
       << "set datafile separator ','\n"
       << "set key left top\n"
       << "set logscale x\n"
       << "set xlabel 'kappa'\n"
       << "set ylabel 'speed'\n"
       << "plot '" << csv_path << "' using 1:2 with lines  title 'shooting c*', \\\n"
       << "     '' using 1:3 with lines title 'linear trial (direct)', \\\n"
       << "     '' using 1:4 with lines dashtype 2 title 'linear trial (published)', \\\n"
       << "     '' using 1:5 with lines title 'hypergeometric trial', \\\n"
       << "     '' using 1:6 with lines title 'generalized ZFK'\n"
       << "pause -1\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spreading speeds for reaction-diffusion fronts with Stefan boundary "
                 "conditions: exact shooting, variational bounds, PDE verification"};
    app.require_subcommand(1);

    std::string out_path, format = "csv";
    double tol = 1e-8;
    int jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs <= 0) jobs = 1;
    app.add_option("--out", out_path, "output file (default: stdout)");
    app.add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--tol", tol, "solver tolerance (default 1e-8)");
    app.add_option("--jobs", jobs, "worker threads for sweeps");

    // speed
    auto* speed_cmd = app.add_subcommand("speed", "Stefan front speed by phase-plane shooting");
    ReactionOpts speed_react;
    add_reaction_opts(speed_cmd, speed_react);
    double speed_kappa = 0.0;
    std::string profile_out;
    speed_cmd->add_option("--kappa", speed_kappa, "Stefan constant")->required();
    speed_cmd->add_option("--profile-out", profile_out, "write the phase profile (q,p) CSV");

    // bound
    auto* bound_cmd = app.add_subcommand("bound", "variational lower bound on the speed");
    ReactionOpts bound_react;
    add_reaction_opts(bound_cmd, bound_react);
    double bound_kappa = 0.0;
    std::string bound_trial = "linear";
    std::vector<double> bound_theta;
    bool bound_optimize = false;
    bound_cmd->add_option("--kappa", bound_kappa, "Stefan constant")->required();
    bound_cmd->add_option("--trial", bound_trial,
                          "trial function: linear, exp, rational, zfk, power_pair, ghat, "
                          "zfk-closed, fisher-simple, fisher-hyper");
    bound_cmd->add_option("--theta", bound_theta,
                          "trial parameter(s); with --optimize: search box lo hi");
    bound_cmd->add_flag("--optimize", bound_optimize, "maximize the bound over theta");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "speed (and optional bound) over grids");
    ReactionOpts sweep_react;
    add_reaction_opts(sweep_cmd, sweep_react);
    std::string kappa_grid_text, m_grid_text, sweep_trial;
    std::vector<double> sweep_theta;
    bool sweep_optimize = false;
    sweep_cmd->add_option("--kappa-grid", kappa_grid_text, "kappa grid lo:hi:n[:log|lin]");
    sweep_cmd->add_option("--m-grid", m_grid_text,
                          "m grid lo:hi:n[:log|lin] (mkpp reaction family)");
    sweep_cmd->add_option("--trial", sweep_trial, "also evaluate this trial's bound");
    sweep_cmd->add_option("--theta", sweep_theta, "trial parameter(s)");
    sweep_cmd->add_flag("--optimize", sweep_optimize, "maximize the bound over theta");

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "free-boundary PDE run (front-fixing)");
    ReactionOpts sim_react;
    add_reaction_opts(sim_cmd, sim_react);
    stf_sim_params sim{};
    sim.kappa = 1.0;
    sim.L0 = 20.0;
    sim.amplitude = 1.0;
    sim.n_xi = 401;
    sim.dt = 0.0;
    sim.t_end = 50.0;
    sim.L_min_floor = 0.0;
    double sim_window = 0.25;
    std::string final_out;
    sim_cmd->add_option("--kappa", sim.kappa, "Stefan constant")->required();
    sim_cmd->add_option("--L0", sim.L0, "initial domain length");
    sim_cmd->add_option("--amplitude", sim.amplitude, "cosine initial-data amplitude");
    sim_cmd->add_option("--n-xi", sim.n_xi, "spatial nodes (>= 201)");
    sim_cmd->add_option("--dt", sim.dt, "time step (default: stability bound)");
    sim_cmd->add_option("--t-end", sim.t_end, "time horizon");
    sim_cmd->add_option("--window", sim_window, "speed-measurement window fraction");
    sim_cmd->add_option("--final-out", final_out, "write the final profile (xi,u) CSV");

    // compare
    auto* cmp_cmd = app.add_subcommand(
        "compare", "fisher: shooting speed vs all bounds over a log kappa grid");

    // selftest
    auto* self_cmd = app.add_subcommand("selftest", "run the acceptance suite");

    CLI11_PARSE(app, argc, argv);

    if (speed_cmd->parsed()) {
        stf_reaction* r = make_reaction(speed_react);
        stf_speed_result sr{};
        stf_profile* prof = nullptr;
        check(stf_stefan_speed(r, speed_kappa, tol, &sr, &prof), "stefan speed");
        Table t;
        t.header = {"kappa", "c_star", "c_lo", "c_hi", "residual", "c_rd_reference"};
        t.rows.push_back({fmt12(speed_kappa), fmt12(sr.c_star), fmt12(sr.c_lo), fmt12(sr.c_hi),
                          fmt12(sr.residual), fmt12(sr.c_rd_reference)});
        t.write(out_path, format);
        if (!profile_out.empty()) write_profile_csv(prof, profile_out);
        stf_profile_free(prof);
        stf_reaction_free(r);
        return 0;
    }

    if (bound_cmd->parsed()) {
        stf_reaction* r = make_reaction(bound_react);
        const stf_bound_result b = compute_bound(r, bound_react.name, bound_kappa, bound_trial,
                                                 bound_theta, bound_optimize, tol);
        Table t;
        t.header = kBoundHeader;
        t.rows.push_back(bound_row(bound_kappa, b));
        t.write(out_path, format);
        stf_reaction_free(r);
        return 0;
    }

    if (sweep_cmd->parsed()) {
        if (kappa_grid_text.empty() && m_grid_text.empty()) {
            die(1, "sweep needs --kappa-grid and/or --m-grid");
        }
        std::vector<double> kappas = {1.0};
        if (!kappa_grid_text.empty()) kappas = parse_grid(kappa_grid_text).points;
        std::vector<double> ms;
        if (!m_grid_text.empty()) {
            if (sweep_react.name != "mkpp") die(1, "--m-grid applies to --reaction mkpp");
            ms = parse_grid(m_grid_text).points;
            for (double m : ms) {
                if (m < 1.0) die(1, "--m-grid values must be >= 1");
            }
        } else {
            ms = {-1.0};  // sentinel: single reaction from the flags
        }

        const bool with_bound = !sweep_trial.empty() || sweep_optimize;
        const std::string trial = sweep_trial.empty() ? "linear" : sweep_trial;
        const long n = static_cast<long>(kappas.size() * ms.size());
        std::vector<std::vector<std::string>> rows(n);
        parallel_for(n, jobs, [&](long idx) {
            const double kappa = kappas[idx % kappas.size()];
            const double m = ms[idx / kappas.size()];
            ReactionOpts local = sweep_react;
            if (m > 0) local.params.push_back("m=" + fmt12(m));
            stf_reaction* r = make_reaction(local);
            stf_speed_result sr{};
            check(stf_stefan_speed(r, kappa, tol, &sr, nullptr), "stefan speed");
            std::vector<std::string> row;
            row.push_back(fmt12(kappa));
            if (m > 0) row.push_back(fmt12(m));
            row.push_back(fmt12(sr.c_star));
            row.push_back(fmt12(sr.residual));
            row.push_back(fmt12(sr.c_rd_reference));
            if (with_bound) {
                const stf_bound_result b =
                    compute_bound(r, local.name, kappa, trial, sweep_theta, sweep_optimize, tol);
                row.push_back(fmt12(b.c_lower));
            }
            rows[idx] = std::move(row);
            stf_reaction_free(r);
        });
        Table t;
        t.header = {"kappa"};
        if (!m_grid_text.empty()) t.header.push_back("m");
        t.header.insert(t.header.end(), {"c_star", "residual", "c_rd_reference"});
        if (with_bound) t.header.push_back("c_lower");
        t.rows = std::move(rows);
        t.write(out_path, format);
        return 0;
    }

    if (sim_cmd->parsed()) {
        if (out_path.empty()) die(1, "simulate requires --out for the trajectory file");
        stf_reaction* r = make_reaction(sim_react);
        stf_trajectory* traj = nullptr;
        check(stf_simulate(r, &sim, nullptr, nullptr, &traj), "simulate");
        const long n = stf_trajectory_size(traj);
        std::vector<double> ts(n), Ls(n), Ldots(n);
        check(stf_trajectory_copy(traj, ts.data(), Ls.data(), Ldots.data()), "trajectory");
        Table t;
        t.header = {"t", "L", "Ldot"};
        for (long i = 0; i < n; ++i) {
            t.rows.push_back({fmt12(ts[i]), fmt12(Ls[i]), fmt12(Ldots[i])});
        }
        t.write(out_path, format);
        if (!final_out.empty()) {
            const long np = stf_trajectory_profile_size(traj);
            std::vector<double> xi(np), u(np);
            check(stf_trajectory_profile_copy(traj, xi.data(), u.data()), "final profile");
            Table tp;
            tp.header = {"xi", "u"};
            for (long i = 0; i < np; ++i) {
                tp.rows.push_back({fmt12(xi[i]), fmt12(u[i])});
            }
            tp.write(final_out, "csv");
        }
        int outcome = STF_OUTCOME_UNDECIDED;
        check(stf_trajectory_outcome(traj, &outcome), "outcome");
        const char* names[] = {"spreading", "vanishing", "undecided"};
        std::string speed_text;
        if (outcome == STF_OUTCOME_SPREADING) {
            double speed = 0.0;
            check(stf_measure_speed(traj, sim_window, &speed), "measure speed");
            speed_text = fmt12(speed);
        }
        std::cout << "outcome=" << names[outcome] << " L_end=" << fmt12(Ls[n - 1])
                  << " speed=" << speed_text << "\n";
        stf_trajectory_free(traj);
        stf_reaction_free(r);
        return 0;
    }

    if (cmp_cmd->parsed()) {
        if (out_path.empty()) out_path = "compare.csv";
        const Grid grid = parse_grid("0.05:50:40:log");
        stf_reaction* fisher = nullptr;
        check(stf_reaction_builtin("fisher", nullptr, nullptr, 0, &fisher), "fisher");
        const long n = static_cast<long>(grid.points.size());
        std::vector<std::vector<std::string>> rows(n);
        parallel_for(n, jobs, [&](long i) {
            const double kappa = grid.points[i];
            stf_speed_result sr{};
            check(stf_stefan_speed(fisher, kappa, tol, &sr, nullptr), "stefan speed");
            stf_bound_result simple{}, hyper{}, zfk{};
            check(stf_fisher_bound_simple(kappa, 0.22, &simple), "simple bound");
            check(stf_fisher_bound_hyper(kappa, &hyper), "hyper bound");
            check(stf_zfk_bound(fisher, kappa, &zfk), "zfk bound");
            rows[i] = {fmt12(kappa),          fmt12(sr.c_star), fmt12(simple.c_lower),
                       fmt12(simple.paper_c1), fmt12(hyper.c_lower), fmt12(zfk.c_lower)};
        });
        Table t;
        t.header = {"kappa",        "c_shoot",       "c_bound_simple_direct",
                    "c_bound_simple_paper", "c_bound_hyper", "c_zfk"};
        t.rows = std::move(rows);
        t.write(out_path, format);
        std::string gp_path = out_path;
        const auto dot = gp_path.rfind('.');
        gp_path = (dot == std::string::npos ? gp_path : gp_path.substr(0, dot)) + ".gp";
        write_gnuplot_script(out_path, gp_path);
        stf_reaction_free(fisher);
        return 0;
    }

    if (self_cmd->parsed()) {
        int failed = 0;
        check(stf_selftest(&failed), "selftest");
        return failed > 0 ? 1 : 0;
    }

    return 0;
}
