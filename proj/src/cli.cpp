#include "semilin/cli.hpp"

#include <chrono>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "semilin/oracle.hpp"
#include "semilin/pipeline.hpp"
#include "semilin/spectrum.hpp"

namespace semilin {
namespace {

struct Args {
    std::string config;
    std::string out;
    std::optional<std::size_t> n;
    std::optional<std::string> preset;
};

RunConfig resolve(const Args& a) {
    RunConfig cfg;
    if (!a.config.empty())
        cfg = load_config(a.config, a.preset);
    else if (a.preset)
        cfg = preset_config(*a.preset);
    else
        throw ConfigError("either --config or --preset is required");
    if (a.n) override_resolution(cfg, *a.n);
    if (!a.out.empty()) cfg.output_dir = a.out;
    return cfg;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
    if (cfg.output_dir.empty()) throw ConfigError("solve needs --out or output.dir");
    const auto t0 = std::chrono::steady_clock::now();
    const SolveReport rep = run_solve(cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_solve(rep, cfg.output_dir, current_meta(secs));

    out << rep.preset << ": " << rep.spec.describe() << "\n";
    for (const auto& p : rep.points) {
        out << "  " << p.name << "  energy " << p.point.energy << "  residual " << p.point.residual
            << "  index " << (p.point.morse_index ? std::to_string(*p.point.morse_index) : "-") << "\n";
    }
    for (const auto& f : rep.flags)
        out << "  [" << (f.passed ? "pass" : "FAIL") << "] " << f.name
            << (f.note.empty() ? "" : "  (" + f.note + ")") << "\n";
    out << "wrote " << (cfg.output_dir / "report.json").string() << "\n";
    return rep.all_passed() ? kExitOk : kExitFailedCheck;
}

void emit(const Json& j, const RunConfig& cfg, const char* file, std::ostream& out) {
    out << j.dump(2) << "\n";
    if (!cfg.output_dir.empty()) {
        std::filesystem::create_directories(cfg.output_dir);
        write_text(cfg.output_dir / file, j.dump(2) + "\n");
    }
}

int cmd_eigen(const RunConfig& cfg, std::ostream& out) {
    const DomainSpec spec = build_problem(cfg).spec;
    emit(eigen_json(spec, eigenpairs(spec, cfg.eigen_count)), cfg, "eigen.json", out);
    return kExitOk;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
    const Problem pb = build_problem(cfg);
    const ValidationReport v = validate_condition_g(pb.nl, pb.spec, cfg.validate_samples);
    emit(validation_json(v, pb.nl), cfg, "validate.json", out);
    return v.passed ? kExitOk : kExitFailedCheck;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
    const Problem pb = build_problem(cfg);
    if (pb.spec.dim() != 1) throw ConfigError("oracle runs on interval domains only");
    const double length = pb.spec.length(0);
    const std::size_t n = pb.spec.count(0);
    const auto& o = cfg.oracle;
    const SweepResult s = sweep(pb.nl, length, o.slope_min, o.slope_max, o.resolution,
                                aligned_steps(o.steps, n), n);
    emit(oracle_json(s, pb.nl, length), cfg, "oracle.json", out);
    if (!cfg.output_dir.empty())
        for (std::size_t i = 0; i < s.branches.size(); ++i)
            write_text(cfg.output_dir / ("branch_" + std::to_string(i) + ".csv"),
                       trajectory_csv(s.branches[i].trajectory, length));
    bool ok = !s.branches.empty();
    for (const auto& b : s.branches) ok = ok && b.converged;
    return ok ? kExitOk : kExitFailedCheck;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Three nontrivial solutions of -Lap u = g(u) with Dirichlet data", "semilin"};
    app.require_subcommand(1);
    Args a;
    std::string chosen;
    for (const char* name : {"solve", "eigen", "validate", "oracle"}) {
        static const std::map<std::string, std::string> help{
            {"solve", "minimizers, mountain pass and analysis; writes report.json and CSVs"},
            {"eigen", "closed-form Dirichlet eigenvalues"},
            {"validate", "check condition (g) for the configured nonlinearity"},
            {"oracle", "1D shooting sweep over initial slopes"}};
        CLI::App* sub = app.add_subcommand(name, help.at(name));
        sub->add_option("--config", a.config, "key = value configuration file");
        sub->add_option("--out", a.out, "output directory");
        sub->add_option("--n", a.n, "interior nodes per axis")->check(CLI::PositiveNumber);
        sub->add_option("--preset", a.preset, "p1-interval or p2-square");
        sub->callback([&chosen, name] { chosen = name; });
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "semilin: " << e.what() << "\n";
        return kExitConfigError;
    }

    try {
        const RunConfig cfg = resolve(a);
        if (chosen == "solve") return cmd_solve(cfg, out);
        if (chosen == "eigen") return cmd_eigen(cfg, out);
        if (chosen == "validate") return cmd_validate(cfg, out);
        return cmd_oracle(cfg, out);
    } catch (const ConfigError& e) {
        err << "semilin: config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        err << "semilin: " << e.what() << "\n";
        return kExitFailedCheck;
    }
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_cli(args, std::cout, std::cerr);
}

}  // namespace semilin
