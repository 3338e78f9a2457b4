// omniso: command-line front end. Subcommands cover time-domain dynamics of
// the driven block (dynamics ...), rotating-frame scattering and design
// sweeps (scatter ...), and the beyond-rotating-wave network (full ...).
// Exit codes: 0 success, 1 invalid input, 2 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "omniso/classical.hpp"
#include "omniso/config.hpp"
#include "omniso/csv.hpp"
#include "omniso/full.hpp"
#include "omniso/optimize.hpp"
#include "omniso/rwa.hpp"
#include "omniso/sweep.hpp"

namespace {

using namespace omniso;

struct OutputOpts {
    std::string config_path;
    std::string output = "-";
    std::string format = "csv";
};

void add_common(CLI::App* cmd, OutputOpts& o) {
    cmd->add_option("-c,--config", o.config_path, "config file (key = value lines, # comments)");
    cmd->add_option("-o,--output", o.output, "output path, - for stdout");
    cmd->add_option("--format", o.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

ConfigFile load_cfg(const OutputOpts& o) {
    return o.config_path.empty() ? ConfigFile::parse("") : ConfigFile::load(o.config_path);
}

void emit(const OutputOpts& o, const Table& t) {
    std::string payload;
    if (o.format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& row : t.rows) {
            nlohmann::ordered_json obj;
            for (size_t i = 0; i < row.size(); ++i) {
                if (const double* d = std::get_if<double>(&row[i]))
                    obj[t.header[i]] = *d;
                else if (const int* n = std::get_if<int>(&row[i]))
                    obj[t.header[i]] = *n;
                else
                    obj[t.header[i]] = std::get<std::string>(row[i]);
            }
            arr.push_back(std::move(obj));
        }
        payload = arr.dump(2) + "\n";
    } else {
        std::ostringstream ss;
        write_csv(ss, t);
        payload = ss.str();
    }
    if (o.output == "-") {
        std::cout << payload;
    } else {
        std::ofstream f(o.output, std::ios::binary);
        if (!f) throw ValidationError("output", "cannot open `" + o.output + "` for writing");
        f << payload;
    }
}

double pos(ConfigFile& cfg, const std::string& key, double fallback) {
    const double v = cfg.get_double(key, fallback);
    if (!(v > 0.0)) throw ValidationError(key, "must be positive");
    return v;
}

double nonneg(ConfigFile& cfg, const std::string& key, double fallback) {
    const double v = cfg.get_double(key, fallback);
    if (!(v >= 0.0)) throw ValidationError(key, "must be nonnegative");
    return v;
}

int posint(ConfigFile& cfg, const std::string& key, int fallback) {
    const int v = cfg.get_int(key, fallback);
    if (v < 2) throw ValidationError(key, "must be an integer >= 2");
    return v;
}

Direction get_direction(ConfigFile& cfg) {
    const std::string s = cfg.get_string("direction", "forward");
    if (s == "forward") return Direction::Forward;
    if (s == "backward") return Direction::Backward;
    throw ValidationError("direction", "must be `forward` or `backward`");
}

const char* direction_name(Direction d) {
    return d == Direction::Forward ? "forward" : "backward";
}

const char* branch_name(Branch b) {
    switch (b) {
        case Branch::X0: return "X0";
        case Branch::XPlus: return "XPlus";
        default: return "XMinus";
    }
}

const char* stability_name(Stability s) {
    switch (s) {
        case Stability::StableSpiral: return "StableSpiral";
        case Stability::Saddle: return "Saddle";
        case Stability::UnstableSpiral: return "UnstableSpiral";
        default: return "Marginal";
    }
}

const char* region_name(Region r) {
    switch (r) {
        case Region::I: return "I";
        case Region::II: return "II";
        default: return "III";
    }
}

ClassicalParams classical_from(ConfigFile& cfg) {
    ClassicalParams p;
    p.P = nonneg(cfg, "P", 0.005);
    p.Delta = cfg.get_double("Delta", 0.5);
    p.kappa = pos(cfg, "kappa", 0.05);
    p.gamma = nonneg(cfg, "gamma", 1e-3);
    p.direction = get_direction(cfg);
    return p;
}

void run_dynamics_run(const OutputOpts& o) {
    ConfigFile cfg = load_cfg(o);
    const ClassicalParams p = classical_from(cfg);
    const double t_end = pos(cfg, "t_end", 5e4);
    IntegrateOptions opt;
    opt.dt_out = pos(cfg, "dt_out", t_end / 1e4);
    opt.rtol = pos(cfg, "rtol", 1e-9);
    opt.atol = pos(cfg, "atol", 1e-12);
    opt.bound = pos(cfg, "bound", 1e6);
    ForcingProtocol forcing;
    forcing.T = pos(cfg, "forcing_T", 1e3);
    forcing.f = cfg.get_double_opt("forcing_f");
    cfg.require_all_consumed();

    const std::vector<Sample> series = integrate(p, forcing, t_end, opt);
    Table t;
    t.header = {"t", "re_a1", "im_a1", "re_a2", "im_a2", "X", "V", "T_fwd", "T_bwd_applicable"};
    const double k4 = 4.0 * p.kappa * p.kappa;
    for (const Sample& s : series) {
        const double tf =
            p.direction == Direction::Forward ? k4 * std::norm(s.y.a2) : 0.0;
        const double tb =
            p.direction == Direction::Backward ? k4 * std::norm(s.y.a1) : 0.0;
        t.rows.push_back({s.t, s.y.a1.real(), s.y.a1.imag(), s.y.a2.real(), s.y.a2.imag(), s.y.X,
                          s.y.V, tf, tb});
    }
    emit(o, t);
}

void run_fixed_points(const OutputOpts& o) {
    ConfigFile cfg = load_cfg(o);
    const ClassicalParams p = classical_from(cfg);
    cfg.require_all_consumed();

    Table t;
    t.header = {"branch", "X", "re_a1", "im_a1", "re_a2", "im_a2", "stability", "degenerate"};
    for (int i = 1; i <= 6; ++i) {
        t.header.push_back("re_ev" + std::to_string(i));
        t.header.push_back("im_ev" + std::to_string(i));
    }
    for (const FixedPoint& fp : fixed_points(p)) {
        std::vector<Field> row{std::string(branch_name(fp.branch)), fp.X,           fp.a1.real(),
                               fp.a1.imag(),                        fp.a2.real(),   fp.a2.imag(),
                               std::string(stability_name(fp.stability)), int(fp.degenerate)};
        for (const cplx& ev : fp.eigenvalues) {
            row.push_back(ev.real());
            row.push_back(ev.imag());
        }
        t.rows.push_back(std::move(row));
    }
    emit(o, t);
}

void run_regions(const OutputOpts& o) {
    ConfigFile cfg = load_cfg(o);
    RegionMapSpec spec;
    spec.kappa = pos(cfg, "kappa", 0.05);
    spec.gamma = nonneg(cfg, "gamma", 1e-3);
    spec.direction = get_direction(cfg);
    spec.Delta_min = pos(cfg, "Delta_min", 0.05);
    spec.Delta_max = pos(cfg, "Delta_max", 1.1);
    spec.Delta_points = posint(cfg, "Delta_points", 200);
    spec.P_min = pos(cfg, "P_min", 1e-3);
    spec.P_max = pos(cfg, "P_max", 10.0);
    spec.P_points = posint(cfg, "P_points", 200);
    const std::string scale = cfg.get_string("P_scale", "log");
    if (scale != "log" && scale != "linear")
        throw ValidationError("P_scale", "must be `log` or `linear`");
    spec.P_log = scale == "log";
    cfg.require_all_consumed();

    Table t;
    t.header = {"Delta", "P", "region", "hopf_crossed", "status"};
    for (const RegionCell& c : region_map(spec))
        t.rows.push_back(
            {c.Delta, c.P, std::string(region_name(c.region)), int(c.hopf_crossed), c.status});
    emit(o, t);
}

void run_hopf(const OutputOpts& o) {
    ConfigFile cfg = load_cfg(o);
    const double Delta = cfg.get_double("Delta", 0.5);
    const double kappa = pos(cfg, "kappa", 0.05);
    const double gamma = nonneg(cfg, "gamma", 1e-3);
    const Direction dir = get_direction(cfg);

    const ThresholdPowers th = threshold_powers(Delta, kappa);
    double onset = th.forward;
    if (dir == Direction::Backward) {
        if (!th.backward)
            throw BackwardThresholdUndefined("no backward onset at Delta = " +
                                             std::to_string(Delta));
        onset = *th.backward;
    }
    const double P_lo = pos(cfg, "P_min", onset * (1.0 + 1e-6));
    const double P_hi = pos(cfg, "P_max", onset * 100.0);
    cfg.require_all_consumed();

    const double P_hopf = hopf_trace(Delta, kappa, gamma, dir, P_lo, P_hi);

    ClassicalParams p;
    p.P = P_hopf;
    p.Delta = Delta;
    p.kappa = kappa;
    p.gamma = gamma;
    p.direction = dir;
    double max_re = 0.0;
    for (const FixedPoint& fp : fixed_points(p))
        if (fp.branch == Branch::XPlus)
            for (const cplx& ev : fp.eigenvalues) max_re = std::max(max_re, ev.real());

    Table t;
    t.header = {"Delta", "kappa", "gamma", "direction", "P_hopf", "max_re_eigenvalue"};
    t.rows.push_back({Delta, kappa, gamma, std::string(direction_name(dir)), P_hopf, max_re});
    emit(o, t);
}

// Shared scattering-network construction: effective damping targets realized
// by an auxiliary cooling drive, couplings defaulted from the
// interference-design formulas at the mean damping.
NetworkParams network_from(ConfigFile& cfg, double kappa, double kappad_default,
                           double Gamma_default) {
    const double Gam = pos(cfg, "Gamma", Gamma_default);
    const double Gamma1 = pos(cfg, "Gamma1", Gam);
    const double Gamma2 = pos(cfg, "Gamma2", Gam);
    const double kappad = pos(cfg, "kappa_d", kappad_default);
    NetworkParams p = from_Gamma_pumped(Gamma1, Gamma2, kappa, kappad);
    p.theta = cfg.get_theta("theta", M_PI / 2.0);

    const double Gmean = 0.5 * (Gamma1 + Gamma2);
    const double Jm = cfg.has("Jm") ? pos(cfg, "Jm", 0.0) : optimal_Jm(Gmean, kappa);
    const Design d = optimal_design(Gmean, kappa, Jm);
    p.Jm = Jm;
    p.G1 = pos(cfg, "G1", d.G);
    p.G2 = pos(cfg, "G2", d.G);
    p.J0 = pos(cfg, "J0", d.J0);
    return p;
}

void run_scatter_spectrum(const OutputOpts& o) {
    ConfigFile cfg = load_cfg(o);
    const double kappa = pos(cfg, "kappa", 1.0);
    const NetworkParams p = network_from(cfg, kappa, 5.0 * kappa, 0.1 * kappa);
    const double wmin = cfg.get_double("omega_min", -2.0 * kappa);
    const double wmax = cfg.get_double("omega_max", 2.0 * kappa);
    if (!(wmax > wmin)) throw ValidationError("omega_max", "must exceed omega_min");
    const int points = posint(cfg, "points", 4096);
    cfg.require_all_consumed();

    std::vector<double> grid = linspace(wmin, wmax, points);
    const double Gmax = std::max(p.Gamma1(), p.Gamma2());
    const double w0 = -std::sqrt(p.Jm * p.Jm + p.Gamma1() * p.Gamma2() / 4.0);
    for (double c : {w0, -w0}) {
        for (double s : logspace(std::log10(1e-9 * Gmax), std::log10(5.0 * Gmax), 600)) {
            grid.push_back(c + s);
            grid.push_back(c - s);
        }
        grid.push_back(c);
    }
    grid.erase(std::remove_if(grid.begin(), grid.end(),
                              [&](double w) { return w < wmin || w > wmax; }),
               grid.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    const auto pts = parallel_table<ScatterResult>(
        grid.size(), [&](size_t i) { return scattering_matrix(p, grid[i]); });
    Table t;
    t.header = {"omega", "T_plus", "T_minus", "contrast"};
    for (const ScatterResult& r : pts)
        t.rows.push_back({r.omega, r.Tplus, r.Tminus, r.Tplus - r.Tminus});
    emit(o, t);
}

void run_scatter_optimize(const OutputOpts& o) {
    ConfigFile cfg = load_cfg(o);
    const double kappa = pos(cfg, "kappa", 1.0);
    const double Gamma = pos(cfg, "Gamma", 0.1 * kappa);
    cfg.require_all_consumed();

    const double Jm = optimal_Jm(Gamma, kappa);
    const Design d = optimal_design(Gamma, kappa, Jm);
    NetworkParams p = from_Gamma_intrinsic(Gamma, Gamma, kappa);
    p.Jm = Jm;
    p.J0 = d.J0;
    p.G1 = p.G2 = d.G;
    const Metrics m = metrics(p);

    Table t;
    t.header = {"Gamma",      "Jm_opt",            "omega_opt",    "G",
                "J0",         "omega_star",        "insertion_loss_dB",
                "isolation_dB", "bandwidth"};
    t.rows.push_back({Gamma, Jm, d.omega_opt, d.G, d.J0, m.omega_star, m.insertion_loss_dB,
                      m.isolation_dB, m.bandwidth});
    emit(o, t);
}

void run_gamma_sweep(const OutputOpts& o) {
    ConfigFile cfg = load_cfg(o);
    const double kappa = pos(cfg, "kappa", 1.0);
    const double Gmin = pos(cfg, "Gamma_min", kappa / 500.0);
    const double Gmax = pos(cfg, "Gamma_max", kappa / 2.0);
    if (Gmax > kappa / 2.0 || Gmin > Gmax)
        throw ValidationError("Gamma_max", "range must lie within (0, kappa/2]");
    const int points = posint(cfg, "points", 64);
    const std::string scale = cfg.get_string("scale", "log");
    if (scale != "log" && scale != "linear")
        throw ValidationError("scale", "must be `log` or `linear`");
    cfg.require_all_consumed();

    const std::vector<double> Gammas =
        scale == "log" ? logspace(std::log10(Gmin), std::log10(Gmax), points)
                       : linspace(Gmin, Gmax, points);
    Table t;
    t.header = {"Gamma", "Jm_opt", "bandwidth", "insertion_loss_dB", "status"};
    for (const GammaSweepRow& r : gamma_sweep(Gammas, kappa))
        t.rows.push_back({r.Gamma, r.Jm_opt, r.bandwidth, r.insertion_loss_dB, r.status});
    emit(o, t);
}

void run_asym_map(const OutputOpts& o) {
    ConfigFile cfg = load_cfg(o);
    const double kappa = pos(cfg, "kappa", 1.0);
    const double g1min = pos(cfg, "Gamma1_min", 0.01 * kappa);
    const double g1max = pos(cfg, "Gamma1_max", 0.3 * kappa);
    const int n1 = posint(cfg, "Gamma1_points", 16);
    const double g2min = pos(cfg, "Gamma2_min", 0.01 * kappa);
    const double g2max = pos(cfg, "Gamma2_max", 0.3 * kappa);
    const int n2 = posint(cfg, "Gamma2_points", 16);
    if (g1max > 0.5 * kappa || g2max > 0.5 * kappa)
        throw ValidationError("Gamma1_max", "damping ranges must lie within (0, 0.5 kappa]");
    cfg.require_all_consumed();

    Table t;
    t.header = {"Gamma1", "Gamma2", "bandwidth", "insertion_loss_dB", "status"};
    for (const AsymCell& c :
         asym_map(linspace(g1min, g1max, n1), linspace(g2min, g2max, n2), kappa))
        t.rows.push_back({c.Gamma1, c.Gamma2, c.bandwidth, c.insertion_loss_dB, c.status});
    emit(o, t);
}

void run_full_spectrum(const OutputOpts& o) {
    ConfigFile cfg = load_cfg(o);
    const double kappa = pos(cfg, "kappa", 1.0);
    const double ratio = pos(cfg, "ratio", 20.0);
    if (ratio < 1.0) throw ValidationError("ratio", "sideband ratio must be >= 1");
    FullNetworkParams p;
    p.net = network_from(cfg, kappa, 10.0 * kappa, kappa / 25.0);
    p.omega_m = ratio * kappa;
    cfg.require_all_consumed();

    const std::vector<double> grid = full_spectrum_grid(p);
    const auto pts = parallel_table<NoiseSpectrumPoint>(
        grid.size(), [&](size_t i) { return full_scattering(p, grid[i]); });
    Table t;
    t.header = {"omega", "T_fwd", "T_bwd", "S_c1_vac", "S_c2_vac"};
    for (const NoiseSpectrumPoint& r : pts)
        t.rows.push_back({r.omega, r.T_forward, r.T_backward, r.S_c1_vac, r.S_c2_vac});
    emit(o, t);
}

void run_sideband_sweep(const OutputOpts& o) {
    ConfigFile cfg = load_cfg(o);
    const double Gamma = pos(cfg, "Gamma", 0.04);       // units of kappa
    const double kappad = pos(cfg, "kappa_d", 10.0);    // units of kappa
    std::vector<double> ratios;
    if (cfg.has("ratios")) {
        ratios = cfg.get_double_list("ratios", {});
    } else {
        const double rmin = pos(cfg, "ratio_min", 10.0);
        const double rmax = pos(cfg, "ratio_max", 200.0);
        const int n = posint(cfg, "ratio_points", 24);
        ratios = logspace(std::log10(rmin), std::log10(rmax), n);
    }
    for (double r : ratios)
        if (r < 1.0) throw ValidationError("ratios", "each sideband ratio must be >= 1");
    cfg.require_all_consumed();

    struct Cell {
        SidebandRow row;
        std::string status = "ok";
    };
    const auto cells = parallel_table<Cell>(ratios.size(), [&](size_t i) {
        Cell c;
        c.row.ratio = ratios[i];
        try {
            c.row = sideband_sweep({ratios[i]}, Gamma, kappad).front();
        } catch (const Error& e) {
            c.status = e.what();
        }
        return c;
    });
    Table t;
    t.header = {"ratio", "isolation_dB", "S_vac", "P2_over_P3", "status"};
    for (const Cell& c : cells)
        t.rows.push_back({c.row.ratio, c.row.isolation_dB, c.row.S_vac, c.row.P2_over_P3,
                          c.status});
    emit(o, t);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"three-mode optomechanical nonreciprocity toolkit"};
    app.require_subcommand(1);

    OutputOpts opts[10];
    int which = -1;

    CLI::App* dynamics = app.add_subcommand("dynamics", "mean-field dynamics of one block");
    dynamics->require_subcommand(1);
    CLI::App* scatter = app.add_subcommand("scatter", "rotating-frame network scattering");
    scatter->require_subcommand(1);
    CLI::App* full = app.add_subcommand("full", "beyond-rotating-wave network");
    full->require_subcommand(1);

    const struct {
        CLI::App* parent;
        const char* name;
        const char* help;
    } leaves[10] = {
        {dynamics, "run", "integrate a forced trajectory"},
        {dynamics, "fixed-points", "analytic steady branches with stability"},
        {dynamics, "regions", "fixed-point count map over (Delta, P)"},
        {dynamics, "hopf", "locate the oscillation threshold along a P ray"},
        {scatter, "spectrum", "T+-(omega) over a frequency grid"},
        {scatter, "optimize", "optimal phonon hopping and design metrics"},
        {scatter, "gamma-sweep", "metrics vs effective mechanical damping"},
        {scatter, "asym-map", "metrics over asymmetric damping pairs"},
        {full, "spectrum", "12-mode transmission and vacuum noise"},
        {full, "sideband-sweep", "isolation and noise vs omega_m/kappa"},
    };
    for (int i = 0; i < 10; ++i) {
        CLI::App* leaf = leaves[i].parent->add_subcommand(leaves[i].name, leaves[i].help);
        add_common(leaf, opts[i]);
        leaf->callback([&which, i] { which = i; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        switch (which) {
            case 0: run_dynamics_run(opts[0]); break;
            case 1: run_fixed_points(opts[1]); break;
            case 2: run_regions(opts[2]); break;
            case 3: run_hopf(opts[3]); break;
            case 4: run_scatter_spectrum(opts[4]); break;
            case 5: run_scatter_optimize(opts[5]); break;
            case 6: run_gamma_sweep(opts[6]); break;
            case 7: run_asym_map(opts[7]); break;
            case 8: run_full_spectrum(opts[8]); break;
            case 9: run_sideband_sweep(opts[9]); break;
            default: return 1;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const UnitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
