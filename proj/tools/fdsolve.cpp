// fdsolve: batch driver for the FD-method eigenvalue solver.
//
//   fdsolve solve --alpha 1/2 --beta 0 --s 3/4 --poly 0,0,0,1/4 --n 0,1,2 --rank 20
//   fdsolve diagnostics --config job.cfg
//   fdsolve preset example1 --format json --out table1.json
//
// Exit status: 0 on success, 2 for configuration or input errors, 3 for
// numerical failures (including any row that failed).

#include "fdm/errors.hpp"
#include "fdm/job.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct FlagValues {
    fdm::Settings values;
    bool step = false;
    bool step_closed_form = false;
    bool verify = false;
    bool timing = false;
    std::string config_path;
};

void add_job_flags(CLI::App& cmd, FlagValues& flags, bool with_config)
{
    auto text = [&](const std::string& key, const std::string& help) {
        cmd.add_option_function<std::string>(
            "--" + key, [&flags, key](const std::string& v) { flags.values[key] = v; }, help);
    };
    text("alpha", "exponent alpha (decimal or p/q)");
    text("beta", "exponent beta");
    text("s", "fractional order s in (0, 1)");
    text("poly", "polynomial potential coefficients c0,c1,...,cr");
    cmd.add_flag("--step", flags.step, "step potential (sgn x + 1)/2, exact overlaps");
    cmd.add_flag("--step-closed-form", flags.step_closed_form, "step potential, gamma-ratio closed-form overlaps");
    text("overlap", "file of overlap integrals 's t value'");
    text("n", "comma-separated eigenpair indices, ascending");
    text("rank", "rank m of the approximation");
    text("trunc", "truncation size N for general potentials");
    text("digits", "working precision in significant digits");
    text("verify-digits", "precision of the verification rerun");
    text("workers", "number of worker threads");
    text("normalization", "normalized | leading-one");
    text("format", "csv | json");
    text("out", "output path (default: standard output)");
    cmd.add_flag("--verify", flags.verify, "rerun at verify-digits and report stability");
    cmd.add_flag("--timing", flags.timing, "include per-row wall time");
    if (with_config)
        cmd.add_option("--config", flags.config_path, "key=value configuration file");
}

fdm::Settings collect(const FlagValues& flags)
{
    fdm::Settings s = flags.values;
    if (flags.step)
        s["step"] = "true";
    if (flags.step_closed_form)
        s["step-closed-form"] = "true";
    if (flags.verify)
        s["verify"] = "true";
    if (flags.timing)
        s["timing"] = "true";
    return s;
}

int report_rows(const std::vector<fdm::ResultRow>& rows)
{
    int failed = 0;
    for (const auto& r : rows) {
        for (const auto& w : r.warnings)
            std::cerr << "warning: " << w << "\n";
        if (r.error) {
            std::cerr << "error: n = " << r.n << ": " << *r.error << "\n";
            ++failed;
        }
    }
    std::cerr << "fdsolve: " << rows.size() - failed << " of " << rows.size() << " rows computed\n";
    return failed == 0 ? 0 : kExitNumeric;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"FD-method eigenpair solver for fractional Jacobi-type operators"};
    app.require_subcommand(1);
    app.set_version_flag("--version", fdm::kVersion);

    FlagValues solve_flags;
    CLI::App* solve = app.add_subcommand("solve", "compute eigenpair approximations");
    add_job_flags(*solve, solve_flags, true);

    FlagValues diag_flags;
    CLI::App* diag = app.add_subcommand("diagnostics", "tabulate M_n, r_n and a-priori bounds");
    add_job_flags(*diag, diag_flags, true);

    FlagValues preset_flags;
    std::string preset_name;
    CLI::App* preset = app.add_subcommand("preset", "reproduce a built-in example (flags override it)");
    preset->add_option("name", preset_name, "example1 | example2 | example3")->required();
    add_job_flags(*preset, preset_flags, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*preset) {
            const fdm::Settings settings = fdm::merge_settings(fdm::preset_settings(preset_name), collect(preset_flags));
            const fdm::JobConfig cfg = fdm::config_from_settings(settings);
            const auto rows = fdm::run_job(cfg);
            fdm::write_output(fdm::emit(rows, cfg), cfg);
            return report_rows(rows);
        }
        const bool is_solve = static_cast<bool>(*solve);
        const FlagValues& flags = is_solve ? solve_flags : diag_flags;
        fdm::Settings base;
        if (!flags.config_path.empty())
            base = fdm::read_settings_file(flags.config_path);
        const fdm::JobConfig cfg = fdm::config_from_settings(fdm::merge_settings(base, collect(flags)));
        if (is_solve) {
            const auto rows = fdm::run_job(cfg);
            fdm::write_output(fdm::emit(rows, cfg), cfg);
            return report_rows(rows);
        }
        fdm::write_output(fdm::emit(fdm::run_diagnostics(cfg), cfg), cfg);
        return 0;
    } catch (const fdm::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const fdm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}
