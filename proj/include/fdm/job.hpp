#pragma once

// Batch jobs: configuration, parallel sweeps over eigenpair indices and
// table output.

#include "fdm/diagnostics.hpp"
#include "fdm/fd_polynomial.hpp"
#include "fdm/fd_stepwise.hpp"
#include "fdm/numerics.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fdm {

inline constexpr const char* kVersion = "1.0.0";

enum class PotentialKind { polynomial, step, step_closed_form, overlap_file };

enum class OutputFormat { csv, json };

/// Numbers are kept as the text they were given in ("3/4", "-0.125") so a
/// configuration can be written back out exactly.
struct JobConfig {
    std::string alpha = "0";
    std::string beta = "0";
    std::string s = "1/2";
    PotentialKind potential = PotentialKind::polynomial;
    std::vector<std::string> poly{"0"};
    std::string overlap_path;
    std::vector<std::size_t> n_set{0};
    std::size_t rank = 20;
    std::size_t trunc = 0; // stepwise only; 0 means unset
    PrecisionContext precision;
    Normalization normalization = Normalization::normalized;
    unsigned workers = 1;
    OutputFormat format = OutputFormat::csv;
    std::string out; // empty: standard output
    bool verify = false;
    bool timing = false;

    bool stepwise() const { return potential != PotentialKind::polynomial; }

    /// Throws ConfigError naming the offending field.
    void validate() const;

    /// Parsed at the calling thread's working precision.
    OperatorParams params() const;
    PolynomialPotential polynomial() const;
    OverlapSource overlap_source() const;

    bool operator==(const JobConfig&) const = default;
};

/// Flat key=value settings; keys equal the long flag names.
using Settings = std::map<std::string, std::string>;

/// Reads "key = value" lines; '#' starts a comment. Throws ConfigError or IoError.
Settings parse_settings(const std::string& text);
Settings read_settings_file(const std::string& path);

/// `overrides` wins; a potential given there replaces any potential in `base`.
Settings merge_settings(Settings base, const Settings& overrides);

/// Builds and validates a configuration. Throws ConfigError.
JobConfig config_from_settings(const Settings& settings);

/// Canonical settings text; config_from_settings(parse_settings(emit_config(c))) == c.
std::string emit_config(const JobConfig& cfg);
Settings config_settings(const JobConfig& cfg);

/// Settings for "example1", "example2" or "example3". Throws ConfigError otherwise.
Settings preset_settings(const std::string& name);

struct ResultRow {
    std::size_t n = 0;
    Real M_n;
    Real r_n;
    bool converges = false;
    Real lambda_sum;
    std::vector<Real> lambdas; // λ_n^(j), j = 0..m
    std::vector<Real> norms;   // ‖u_n^(j)‖
    std::optional<Real> eig_bound;
    std::optional<Real> fun_bound;
    std::optional<Real> sensitivity; // stepwise: |λ̄(N) - λ̄(N/2)|
    std::optional<bool> stable;      // set when verification ran
    std::optional<double> wall_seconds;
    std::optional<std::string> error;
    std::vector<std::string> warnings; // not serialized
};

/// One row per n in ascending order, computed by up to cfg.workers threads.
/// Numeric failures are recorded per row; the job itself only throws for
/// setup problems (unreadable overlap file and the like).
std::vector<ResultRow> run_job(const JobConfig& cfg);

struct DiagnosticsRow {
    std::size_t n = 0;
    Real M_n;
    Real q_inf;
    Real r_n;
    bool converges = false;
    std::optional<Real> eig_bound;
    std::optional<Real> fun_bound;
};

std::vector<DiagnosticsRow> run_diagnostics(const JobConfig& cfg);

/// Serializes at cfg.precision.digits significant digits, ending in one newline.
std::string emit(const std::vector<ResultRow>& rows, const JobConfig& cfg);
std::string emit(const std::vector<DiagnosticsRow>& rows, const JobConfig& cfg);

/// Inverse of the JSON form of emit for result rows. Throws FormatError.
std::vector<ResultRow> parse_json_rows(const std::string& text);

/// Writes to cfg.out, or standard output when it is empty. Throws IoError.
void write_output(const std::string& text, const JobConfig& cfg);

} // namespace fdm
