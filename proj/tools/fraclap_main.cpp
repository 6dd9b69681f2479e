#include "fraclap/experiments.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

using namespace fraclap;
using nlohmann::json;

namespace {

OperatorSpec make_spec(const std::string& kind, double s, double s2, int k) {
    try {
        if (kind == "rfl") return rfl(s);
        if (kind == "sfl") return sfl(s);
        if (kind == "cfl") return cfl(s);
        if (kind == "rflsum") return rfl_sum(s, s2);
        if (kind == "spectral-of-rfl") return spectral_of_rfl(s, s2);
        if (kind == "composed-rfl") return composed_rfl(s, k);
    } catch (const std::invalid_argument& e) {
        throw cli::ConfigError(e.what());
    }
    throw cli::ConfigError("unknown operator kind: " + kind);
}

// file values override defaults; CLI flags override file values
void apply_config_file(cli::ExperimentConfig& cfg, std::string& kind, double& s, double& s2,
                       int& k, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw cli::ConfigError("cannot read config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw cli::ConfigError(std::string("config parse error: ") + e.what());
    }
    if (j.contains("experiment")) cfg.experiment = j["experiment"].get<std::string>();
    if (j.contains("operator")) {
        const json& op = j["operator"];
        if (op.contains("kind")) kind = op["kind"].get<std::string>();
        if (op.contains("s")) s = op["s"].get<double>();
        if (op.contains("s2")) s2 = op["s2"].get<double>();
        if (op.contains("k")) k = op["k"].get<int>();
    }
    if (j.contains("grid")) {
        const json& g = j["grid"];
        if (g.contains("a")) cfg.a = g["a"].get<double>();
        if (g.contains("b")) cfg.b = g["b"].get<double>();
        if (g.contains("n")) cfg.n = g["n"].get<int>();
    }
    if (j.contains("beta")) cfg.betas = j["beta"].get<std::vector<double>>();
    if (j.contains("cap_level") && !j["cap_level"].is_null())
        cfg.cap_level = j["cap_level"].get<double>();
    if (j.contains("j")) cfg.js = j["j"].get<std::vector<int>>();
    if (j.contains("eta")) cfg.etas = j["eta"].get<std::vector<double>>();
    if (j.contains("quad_tol")) cfg.quad_tol = j["quad_tol"].get<double>();
    if (j.contains("fit")) {
        const json& f = j["fit"];
        if (f.contains("exclude_nearest")) cfg.fit_exclude = f["exclude_nearest"].get<int>();
        if (f.contains("delta_max")) cfg.fit_delta_max = f["delta_max"].get<double>();
    }
    if (j.contains("seed")) cfg.seed = j["seed"].get<unsigned long long>();
    if (j.contains("out")) cfg.output_dir = j["out"].get<std::string>();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fraclap: nonlocal Dirichlet problems on an interval"};
    app.require_subcommand(1);

    cli::ExperimentConfig cfg;
    std::string config_path;
    std::string kind = "rfl";
    double s = 0.5, s2 = 0.5;
    int k = 2;

    const std::vector<std::string> experiments{"solve",  "sweep-beta",      "martin-limit",
                                               "verify-kernel", "eigen",   "harmonic-checks",
                                               "oracle", "traces"};
    std::vector<CLI::App*> subs;
    for (const auto& name : experiments) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON config file");
        sub->add_option("--operator", kind, "rfl|sfl|cfl|rflsum|spectral-of-rfl|composed-rfl");
        sub->add_option("--s", s, "order parameter (s, s1, or sigma1)");
        sub->add_option("--s2", s2, "second order parameter (s2 or sigma2)");
        sub->add_option("--k", k, "composition depth");
        sub->add_option("--a", cfg.a, "left endpoint");
        sub->add_option("--b", cfg.b, "right endpoint");
        sub->add_option("--n", cfg.n, "number of interior nodes");
        sub->add_option("--beta", cfg.betas, "data exponents");
        sub->add_option("--j", cfg.js, "concentration indices");
        sub->add_option("--eta", cfg.etas, "strip widths");
        sub->add_option("--quad-tol", cfg.quad_tol, "quadrature relative tolerance");
        sub->add_option("--seed", cfg.seed, "seed for randomized checks");
        sub->add_option("--out", cfg.output_dir, "output directory");
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    }

    try {
        for (size_t i = 0; i < subs.size(); ++i)
            if (subs[i]->parsed()) cfg.experiment = experiments[i];

        // precedence: defaults < config file < command line
        if (!config_path.empty()) {
            cli::ExperimentConfig file_cfg;
            std::string fkind = kind;
            double fs = s, fs2 = s2;
            int fk = k;
            apply_config_file(file_cfg, fkind, fs, fs2, fk, config_path);
            CLI::App* sub = nullptr;
            for (size_t i = 0; i < subs.size(); ++i)
                if (subs[i]->parsed()) sub = subs[i];
            auto overridden = [&](const std::string& flag) {
                return sub && sub->count(flag) > 0;
            };
            if (!overridden("--operator")) kind = fkind;
            if (!overridden("--s")) s = fs;
            if (!overridden("--s2")) s2 = fs2;
            if (!overridden("--k")) k = fk;
            if (!overridden("--a")) cfg.a = file_cfg.a;
            if (!overridden("--b")) cfg.b = file_cfg.b;
            if (!overridden("--n")) cfg.n = file_cfg.n;
            if (!overridden("--beta")) cfg.betas = file_cfg.betas;
            if (!overridden("--j")) cfg.js = file_cfg.js;
            if (!overridden("--eta")) cfg.etas = file_cfg.etas;
            if (!overridden("--quad-tol")) cfg.quad_tol = file_cfg.quad_tol;
            if (!overridden("--seed")) cfg.seed = file_cfg.seed;
            if (!overridden("--out")) cfg.output_dir = file_cfg.output_dir;
            cfg.cap_level = file_cfg.cap_level;
            cfg.fit_exclude = file_cfg.fit_exclude;
            cfg.fit_delta_max = file_cfg.fit_delta_max;
        }

        cfg.spec = make_spec(kind, s, s2, k);
        const cli::RunResult res = cli::run(cfg);

        for (const auto& c : res.checks) {
            std::cout << "[" << c.status << "] " << c.name << " = "
                      << cli::format_double(c.value);
            if (c.expected)
                std::cout << " (expected " << cli::format_double(*c.expected) << " +/- "
                          << cli::format_double(c.tolerance.value_or(0)) << ")";
            std::cout << "\n";
        }
        std::cout << "wrote " << res.files_written.size() << " files to " << cfg.output_dir
                  << " in " << res.wall_seconds << "s\n";
        return res.exit_code;
    } catch (const cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}
