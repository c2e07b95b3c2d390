#include "semilin/pipeline.hpp"

#include "semilin/descent.hpp"
#include "semilin/mountain_pass.hpp"
#include "semilin/spectrum.hpp"

namespace semilin {
namespace {

CriticalPoint failed_point(const DomainSpec& spec, Classification c, std::string why) {
    CriticalPoint cp{Field(spec)};
    cp.classification = c;
    cp.status = std::move(why);
    return cp;
}

CriticalPoint run_minimizer(const EnergyModel& model, const Eigenpair& phi1, const DescentOptions& opts) {
    const Classification c = model.mode() == TruncationMode::Plus ? Classification::PositiveMin
                                                                  : Classification::NegativeMin;
    try {
        return minimize(model, initial_guess(model, phi1), opts);
    } catch (const InitialGuessError& e) {
        return failed_point(model.spec(), c, e.what());
    }
}

}  // namespace

Problem build_problem(const RunConfig& cfg) {
    try {
        DomainSpec spec = cfg.domain();
        Nonlinearity nl = cfg.nonlinearity(spec);
        return {std::move(spec), std::move(nl)};
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
}

SolveReport run_solve(const RunConfig& cfg) {
    const Problem pb = build_problem(cfg);
    const ValidationReport cg = validate_condition_g(pb.nl, pb.spec, cfg.validate_samples);

    const EnergyModel full(pb.spec, pb.nl, TruncationMode::Full);
    const Eigenpair phi1 = eigenpairs(pb.spec, 1).front();
    const CriticalPoint u_plus = run_minimizer(full.with_mode(TruncationMode::Plus), phi1, cfg.descent);
    const CriticalPoint u_minus = run_minimizer(full.with_mode(TruncationMode::Minus), phi1, cfg.descent);

    CriticalPoint u_star = failed_point(pb.spec, Classification::MountainPass, "not attempted");
    try {
        u_star = find_mountain_pass(full, u_minus, u_plus, cfg.mountain_pass);
    } catch (const std::exception& e) {
        // Includes the precondition failures when a minimizer did not converge.
        u_star.status = e.what();
    }

    SolveReport rep = assemble_report(full, u_minus, u_plus, u_star, cg, cfg.analysis, cfg.preset);
    for (auto& p : rep.points)
        if (p.name != "zero") p.file = p.name + ".csv";
    return rep;
}

void write_solve(const SolveReport& report, const std::filesystem::path& dir, const RunMeta& meta) {
    std::filesystem::create_directories(dir);
    for (const auto& p : report.points)
        if (!p.file.empty()) write_field_csv(dir / p.file, p.point.u);
    write_text(dir / "report.json", report_json(report, meta).dump(2) + "\n");
}

}  // namespace semilin
