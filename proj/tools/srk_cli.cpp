// srk_cli: run cases, refinement sweeps and tableau reports.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "srk/cases.hpp"
#include "srk/registry.hpp"
#include "srk/stability.hpp"

namespace fs = std::filesystem;

namespace {

// key=value lines; '#' starts a comment
std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config " + path);
    std::map<std::string, std::string> kv;
    for (std::string line; std::getline(f, line);) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const char* ws = " \t\r";
            s.erase(0, s.find_first_not_of(ws));
            s.erase(s.find_last_not_of(ws) + 1);
            return s;
        };
        std::string k = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
        if (!k.empty()) kv[k] = v;
    }
    return kv;
}

void apply_config(const std::map<std::string, std::string>& kv, srk::RunConfig& rc, std::string& schemes,
                  std::string& dts) {
    for (const auto& [k, v] : kv) {
        if (k == "case") rc.case_id = v;
        else if (k == "scheme") rc.scheme = schemes = v;
        else if (k == "form") rc.form = std::stoi(v);
        else if (k == "mode") rc.mode = v;
        else if (k == "rsigma") rc.rsigma = std::stoi(v);
        else if (k == "alpha-factor") rc.alpha_factor = std::stod(v);
        else if (k == "alpha-tau") rc.alpha_tau = std::stod(v);
        else if (k == "n") rc.n = std::stoi(v);
        else if (k == "dt") rc.dt = std::stod(v), dts = v;
        else if (k == "tmax") rc.tmax = std::stod(v);
        else if (k == "out") rc.out = v;
        else if (k == "m") rc.m = std::stoi(v);
        else throw std::runtime_error("unknown config key: " + k);
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> r;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, sep);)
        if (!item.empty()) r.push_back(item);
    return r;
}

std::ofstream open_out(const std::string& dir, const std::string& name) {
    fs::create_directories(dir);
    std::ofstream f(fs::path(dir) / name);
    if (!f) throw std::runtime_error("cannot write " + (fs::path(dir) / name).string());
    return f;
}

std::string echo(const srk::RunConfig& rc) {
    std::ostringstream os;
    os << "case=" << rc.case_id << " scheme=" << rc.scheme << " form=" << rc.form << " mode=" << rc.mode
       << " rsigma=" << rc.rsigma << " alpha-factor=" << rc.alpha_factor << " alpha-tau=" << rc.alpha_tau
       << " n=" << rc.n << " dt=" << rc.dt << " tmax=" << rc.tmax << " m=" << rc.m;
    return os.str();
}

int cmd_run(const srk::RunConfig& rc) {
    srk::RunReport r = srk::run_case(rc);
    std::printf("# %s\n", echo(rc).c_str());
    std::printf("tableau   %s\n", r.tableau.c_str());
    std::printf("tau       %.6e  steps %d  alpha %.6e\n", r.tau, r.steps, r.alpha);
    std::printf("e_u       %s\ne_p       %s\ne_k       %s\n", srk::fmt(r.e_u).c_str(), srk::fmt(r.e_p).c_str(),
                srk::fmt(r.e_k).c_str());
    double xi = 0.0, r0 = 0.0;
    for (const auto& h : r.history) xi = std::max(xi, h.Xi), r0 = std::max(r0, h.R0);
    std::printf("max|Xi|   %s\nmax|R0|   %s\n", srk::fmt(xi).c_str(), srk::fmt(r0).c_str());
    std::printf("wall      %.2f s\n", r.wall_seconds);
    if (!rc.out.empty()) {
        auto f = open_out(rc.out, "history.csv");
        srk::write_history_csv(f, r);
    }
    return 0;
}

int cmd_converge(srk::RunConfig rc, const std::string& schemes, const std::string& dts, int levels) {
    std::vector<double> taus;
    if (!dts.empty() && dts.find(',') != std::string::npos) {
        for (const auto& s : split(dts, ',')) taus.push_back(std::stod(s));
    } else {
        const double t0 = rc.dt > 0 ? rc.dt : 0.1;
        for (int i = 0; i < levels; ++i) taus.push_back(t0 * std::ldexp(1.0, -i));
    }
    auto list = split(schemes.empty() ? rc.scheme : schemes, ';');
    auto res = srk::convergence_study(rc, list, taus);
    srk::write_summary_csv(std::cout, res.rows);
    std::printf("\nscheme,slope_e_u,slope_e_p,slope_e_k,excluded_u,excluded_p,excluded_k\n");
    for (const auto& [s, sl] : res.slopes) {
        const auto& x = res.skipped[s];
        std::printf("%s,%.3f,%.3f,%.3f,%d,%d,%d\n", s.c_str(), sl[0], sl[1], sl[2], x[0], x[1], x[2]);
    }
    if (!rc.out.empty()) {
        auto f = open_out(rc.out, "summary.csv");
        srk::write_summary_csv(f, res.rows);
    }
    return 0;
}

int cmd_cfl() {
    std::printf("%-20s %-5s %2s %8s %3s %10s\n", "method", "class", "s", "CFL_max", "sp", "CFL_max/sp");
    for (const auto& t : srk::registry()) {
        const int sp = srk::sigma_p(t);
        const double c = srk::cfl_max(t);
        std::printf("%-20s %-5s %2d %8.2f %3d %10.2f\n", t.name.c_str(), srk::to_string(srk::classify(t)), t.s, c,
                    sp, std::floor(c / sp * 100.0 + 1e-9) / 100.0);
    }
    return 0;
}

int cmd_stability() {
    auto cell = [](double v) -> std::string {
        if (v < 0.02) return "unstable";
        char b[16];
        std::snprintf(b, sizeof b, "%.2f", v);
        return b;
    };
    std::printf("%-20s %4s %10s %10s\n", "method", "form", "rsigma=0", "rsigma=1");
    for (const auto& t : srk::registry()) {
        const double r0 = srk::alpha_tau_max(t, t.form, 0), r1 = srk::alpha_tau_max(t, t.form, 1);
        std::printf("%-20s %4d %10s %10s\n", t.name.c_str(), t.form, cell(r0).c_str(), cell(r1).c_str());
    }
    return 0;
}

int cmd_tableau(const std::string& scheme, const std::string& export_dir) {
    std::vector<srk::DoubleButcher> list;
    if (scheme.empty() || scheme == "all") list = srk::registry();
    else list.push_back(srk::resolve_tableau(scheme));
    int bad = 0;
    for (const auto& t : list) {
        auto o = srk::order_conditions(t);
        const auto cls = srk::classify(t);
        std::printf("%s\n", t.name.c_str());
        std::printf("  class %s  s %d  order %d  form %d  sigma_p %d\n", srk::to_string(cls), t.s, t.order, t.form,
                    srk::sigma_p(t));
        std::printf("  stiffly accurate %s  b == bhat %s\n", t.stiffly_accurate() ? "yes" : "no",
                    o.b_equals_bhat ? "yes" : "no");
        std::printf("  order residuals imp % .1e % .1e % .1e % .1e\n", o.imp[0], o.imp[1], o.imp[2], o.imp[3]);
        std::printf("                  exp % .1e % .1e % .1e % .1e  %s\n", o.exp[0], o.exp[1], o.exp[2], o.exp[3],
                    o.passed() ? "ok" : "FAILED");
        if (cls != srk::MethodClass::A) {
            auto d = srk::kernel_vector(t);
            std::printf("  d_s %.3e\n", d.back());
        }
        if (!o.passed()) ++bad;
        if (!export_dir.empty()) {
            auto f = open_out(export_dir, srk::file_stem(t.name) + ".txt");
            srk::write_tableau(f, t);
        }
    }
    return bad ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Segregated Runge-Kutta solver for incompressible flow"};
    app.require_subcommand(1);

    srk::RunConfig rc;
    std::string config, schemes, dts, export_dir;
    int levels = 5;
    auto add_common = [&](CLI::App* sc) {
        sc->add_option("--config", config, "key=value file; command line wins");
        sc->add_option("--case", rc.case_id, "manufactured|tg2d_viscous|tg2d_inviscid|tg3d_inviscid|tg3d_re800");
        sc->add_option("--scheme", rc.scheme, "method name or tableau file");
        sc->add_option("--form", rc.form, "SRK form")->check(CLI::IsMember({1, 2}));
        sc->add_option("--mode", rc.mode, "term partition")->check(CLI::IsMember({"explicit", "imex", "implicit"}));
        sc->add_option("--rsigma", rc.rsigma, "stabilization type")->check(CLI::IsMember({0, 1}));
        sc->add_option("--alpha-factor", rc.alpha_factor, "alpha tau as a fraction of its maximum");
        sc->add_option("--alpha-tau", rc.alpha_tau, "fixed alpha*tau, overrides --alpha-factor");
        sc->add_option("--n", rc.n, "grid size (0 = case default)");
        sc->add_option("--dt", dts, "timestep; comma list for converge");
        sc->add_option("--tmax", rc.tmax, "final time");
        sc->add_option("--m", rc.m, "periodic stencil half-width")->check(CLI::Range(1, 4));
        sc->add_option("--out", rc.out, "output directory for CSV");
    };
    auto* run = app.add_subcommand("run", "run one case");
    add_common(run);
    auto* conv = app.add_subcommand("converge", "timestep refinement sweep");
    add_common(conv);
    conv->add_option("--schemes", schemes, "';'-separated method list");
    conv->add_option("--levels", levels, "halvings of --dt")->check(CLI::Range(3, 12));
    app.add_subcommand("stability", "(alpha tau)_max table");
    app.add_subcommand("cfl", "CFL_max table");
    auto* tab = app.add_subcommand("tableau", "tableau validation report");
    tab->add_option("--scheme", schemes, "method name, file, or 'all'");
    tab->add_option("--export", export_dir, "write tableau files to this directory");

    CLI11_PARSE(app, argc, argv);
    try {
        if (run->parsed() || conv->parsed()) {
            srk::RunConfig cli = rc;
            std::string cli_dts = dts, cli_schemes = schemes;
            if (!config.empty()) {
                rc = srk::RunConfig{};
                std::string fs_schemes, fs_dts;
                apply_config(read_config(config), rc, fs_schemes, fs_dts);
                auto* sc = run->parsed() ? run : conv;
                auto given = [&](const char* o) { return sc->count(o) > 0; };
                if (given("--case")) rc.case_id = cli.case_id;
                if (given("--scheme")) rc.scheme = cli.scheme;
                if (given("--form")) rc.form = cli.form;
                if (given("--mode")) rc.mode = cli.mode;
                if (given("--rsigma")) rc.rsigma = cli.rsigma;
                if (given("--alpha-factor")) rc.alpha_factor = cli.alpha_factor;
                if (given("--alpha-tau")) rc.alpha_tau = cli.alpha_tau;
                if (given("--n")) rc.n = cli.n;
                if (given("--tmax")) rc.tmax = cli.tmax;
                if (given("--m")) rc.m = cli.m;
                if (given("--out")) rc.out = cli.out;
                dts = given("--dt") ? cli_dts : fs_dts;
                if (!given("--schemes") && schemes.empty()) schemes = fs_schemes;
            }
            if (!dts.empty()) rc.dt = std::stod(split(dts, ',').front());
            if (run->parsed()) return cmd_run(rc);
            return cmd_converge(rc, schemes, dts, levels);
        }
        if (app.got_subcommand("stability")) return cmd_stability();
        if (app.got_subcommand("cfl")) return cmd_cfl();
        if (tab->parsed()) return cmd_tableau(schemes, export_dir);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
