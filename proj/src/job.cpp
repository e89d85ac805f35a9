#include "fdm/job.hpp"

#include "fdm/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace fdm {

namespace {

using ordered_json = nlohmann::ordered_json;

const std::vector<std::string> kPotentialKeys{"poly", "step", "step-closed-form", "overlap"};

const std::vector<std::string> kKnownKeys{"alpha",  "beta",          "s",         "poly",          "step",
                                          "step-closed-form", "overlap", "n",    "rank",          "trunc",
                                          "digits", "verify-digits", "workers",   "normalization", "format",
                                          "out",    "verify",        "timing"};

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> items;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ','))
        items.push_back(trim(item));
    if (!text.empty() && text.back() == ',')
        items.emplace_back();
    return items;
}

std::string join(const std::vector<std::string>& items)
{
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0)
            out += ',';
        out += items[i];
    }
    return out;
}

unsigned long parse_count(const std::string& key, const std::string& text)
{
    unsigned long v = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (text.empty() || ec != std::errc{} || ptr != last)
        throw ConfigError(key + ": expected a non-negative integer, got '" + text + "'");
    return v;
}

bool parse_bool(const std::string& key, const std::string& text)
{
    if (text == "true" || text == "1" || text == "yes" || text == "on")
        return true;
    if (text == "false" || text == "0" || text == "no" || text == "off")
        return false;
    throw ConfigError(key + ": expected true or false, got '" + text + "'");
}

Real parse_field(const std::string& key, const std::string& text)
{
    try {
        return Real::parse(text);
    } catch (const FormatError&) {
        throw ConfigError(key + ": malformed number '" + text + "'");
    }
}

std::string sci(const Real& x, unsigned digits) { return x.to_scientific(digits); }

std::string opt_sci(const std::optional<Real>& x, unsigned digits) { return x ? sci(*x, digits) : std::string(); }

std::string seconds_text(double s)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", s);
    return buf;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

ordered_json opt_json(const std::optional<Real>& x, unsigned digits)
{
    return x ? ordered_json(sci(*x, digits)) : ordered_json(nullptr);
}

} // namespace

// ---------------------------------------------------------------------------
// Configuration

void JobConfig::validate() const
{
    precision.validate();
    try {
        (void)params();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("parameters: ") + e.what());
    }
    if (n_set.empty())
        throw ConfigError("n: at least one index is required");
    for (std::size_t i = 1; i < n_set.size(); ++i)
        if (n_set[i] <= n_set[i - 1])
            throw ConfigError("n: indices must be strictly increasing");
    if (workers == 0)
        throw ConfigError("workers: must be positive");
    if (potential == PotentialKind::polynomial) {
        if (poly.empty())
            throw ConfigError("poly: no coefficients");
        for (const auto& c : poly)
            (void)parse_field("poly", c);
    }
    if (potential == PotentialKind::overlap_file && overlap_path.empty())
        throw ConfigError("overlap: file path is empty");
    if (stepwise()) {
        const Real a = parse_field("alpha", alpha);
        const Real b = parse_field("beta", beta);
        if (!a.is_zero() || !b.is_zero())
            throw ConfigError("alpha, beta: general potentials require alpha = beta = 0");
        if (trunc < n_set.back() + 1)
            throw ConfigError("trunc: must be at least max(n) + 1 = " + std::to_string(n_set.back() + 1));
    }
}

OperatorParams JobConfig::params() const
{
    return OperatorParams::make(parse_field("alpha", alpha), parse_field("beta", beta), parse_field("s", s));
}

PolynomialPotential JobConfig::polynomial() const
{
    std::vector<Real> c;
    for (const auto& t : poly)
        c.push_back(parse_field("poly", t));
    return PolynomialPotential(std::move(c));
}

OverlapSource JobConfig::overlap_source() const
{
    switch (potential) {
    case PotentialKind::step:
        return StepPotential{};
    case PotentialKind::step_closed_form:
        return ClosedFormStep{};
    case PotentialKind::overlap_file:
        return OverlapFile{overlap_path};
    case PotentialKind::polynomial:
        break;
    }
    throw ConfigError("potential: not a general potential");
}

Settings parse_settings(const std::string& text)
{
    Settings out;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end())
            throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        if (out.count(key))
            throw ConfigError("config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

Settings read_settings_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_settings(buf.str());
}

Settings merge_settings(Settings base, const Settings& overrides)
{
    const bool new_potential = std::any_of(kPotentialKeys.begin(), kPotentialKeys.end(),
                                           [&](const std::string& k) { return overrides.count(k) > 0; });
    if (new_potential)
        for (const auto& k : kPotentialKeys)
            base.erase(k);
    for (const auto& [k, v] : overrides)
        base[k] = v;
    return base;
}

JobConfig config_from_settings(const Settings& settings)
{
    for (const auto& [key, value] : settings)
        if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end())
            throw ConfigError("unknown key '" + key + "'");

    JobConfig cfg;
    auto get = [&](const std::string& key) -> const std::string* {
        const auto it = settings.find(key);
        return it == settings.end() ? nullptr : &it->second;
    };

    if (auto v = get("alpha"))
        cfg.alpha = *v;
    if (auto v = get("beta"))
        cfg.beta = *v;
    if (auto v = get("s"))
        cfg.s = *v;

    std::vector<std::string> chosen;
    if (auto v = get("poly")) {
        chosen.push_back("poly");
        cfg.potential = PotentialKind::polynomial;
        cfg.poly = split_list(*v);
    }
    if (auto v = get("step"); v && parse_bool("step", *v)) {
        chosen.push_back("step");
        cfg.potential = PotentialKind::step;
    }
    if (auto v = get("step-closed-form"); v && parse_bool("step-closed-form", *v)) {
        chosen.push_back("step-closed-form");
        cfg.potential = PotentialKind::step_closed_form;
    }
    if (auto v = get("overlap")) {
        chosen.push_back("overlap");
        cfg.potential = PotentialKind::overlap_file;
        cfg.overlap_path = *v;
    }
    if (chosen.empty())
        throw ConfigError("potential: one of poly, step, step-closed-form or overlap is required");
    if (chosen.size() > 1)
        throw ConfigError("potential: conflicting choices " + join(chosen));

    if (auto v = get("n")) {
        cfg.n_set.clear();
        for (const auto& item : split_list(*v))
            cfg.n_set.push_back(parse_count("n", item));
    }
    if (auto v = get("rank"))
        cfg.rank = parse_count("rank", *v);
    if (auto v = get("trunc"))
        cfg.trunc = parse_count("trunc", *v);
    else if (cfg.stepwise())
        cfg.trunc = 64;
    if (auto v = get("digits")) {
        cfg.precision.digits = static_cast<unsigned>(parse_count("digits", *v));
        cfg.precision.verify_digits = 2 * cfg.precision.digits;
    }
    if (auto v = get("verify-digits"))
        cfg.precision.verify_digits = static_cast<unsigned>(parse_count("verify-digits", *v));
    if (auto v = get("workers"))
        cfg.workers = static_cast<unsigned>(parse_count("workers", *v));
    if (auto v = get("normalization")) {
        if (*v == "normalized")
            cfg.normalization = Normalization::normalized;
        else if (*v == "leading-one")
            cfg.normalization = Normalization::leading_one;
        else
            throw ConfigError("normalization: expected normalized or leading-one, got '" + *v + "'");
    }
    if (auto v = get("format")) {
        if (*v == "csv")
            cfg.format = OutputFormat::csv;
        else if (*v == "json")
            cfg.format = OutputFormat::json;
        else
            throw ConfigError("format: expected csv or json, got '" + *v + "'");
    }
    if (auto v = get("out"))
        cfg.out = *v;
    if (auto v = get("verify"))
        cfg.verify = parse_bool("verify", *v);
    if (auto v = get("timing"))
        cfg.timing = parse_bool("timing", *v);

    PrecisionScope scope(std::max(cfg.precision.digits, 20u));
    cfg.validate();
    return cfg;
}

Settings config_settings(const JobConfig& cfg)
{
    Settings s;
    s["alpha"] = cfg.alpha;
    s["beta"] = cfg.beta;
    s["s"] = cfg.s;
    switch (cfg.potential) {
    case PotentialKind::polynomial:
        s["poly"] = join(cfg.poly);
        break;
    case PotentialKind::step:
        s["step"] = "true";
        break;
    case PotentialKind::step_closed_form:
        s["step-closed-form"] = "true";
        break;
    case PotentialKind::overlap_file:
        s["overlap"] = cfg.overlap_path;
        break;
    }
    std::vector<std::string> ns;
    for (auto n : cfg.n_set)
        ns.push_back(std::to_string(n));
    s["n"] = join(ns);
    s["rank"] = std::to_string(cfg.rank);
    if (cfg.stepwise())
        s["trunc"] = std::to_string(cfg.trunc);
    s["digits"] = std::to_string(cfg.precision.digits);
    s["verify-digits"] = std::to_string(cfg.precision.verify_digits);
    s["workers"] = std::to_string(cfg.workers);
    s["normalization"] = cfg.normalization == Normalization::normalized ? "normalized" : "leading-one";
    s["format"] = cfg.format == OutputFormat::csv ? "csv" : "json";
    if (!cfg.out.empty())
        s["out"] = cfg.out;
    s["verify"] = cfg.verify ? "true" : "false";
    s["timing"] = cfg.timing ? "true" : "false";
    return s;
}

std::string emit_config(const JobConfig& cfg)
{
    const Settings s = config_settings(cfg);
    std::string out;
    for (const auto& key : kKnownKeys) {
        const auto it = s.find(key);
        if (it != s.end())
            out += key + "=" + it->second + "\n";
    }
    return out;
}

Settings preset_settings(const std::string& name)
{
    if (name == "example1")
        return {{"alpha", "1/2"}, {"beta", "0"},   {"s", "3/4"},     {"poly", "0,0,0,1/4"},
                {"n", "0,1,2,3,4,10"}, {"rank", "20"}, {"digits", "50"}};
    if (name == "example2")
        return {{"alpha", "-1/8"}, {"beta", "-1/2"}, {"s", "3/4"},     {"poly", "1/12,1/12,1/12,1/12"},
                {"n", "0,1,2,3,4,10"}, {"rank", "30"},   {"digits", "50"}};
    if (name == "example3")
        return {{"alpha", "0"}, {"beta", "0"},   {"s", "3/4"},     {"step-closed-form", "true"},
                {"n", "0"},     {"rank", "16"}, {"trunc", "64"}, {"digits", "32"},
                {"normalization", "leading-one"}};
    throw ConfigError("preset: unknown name '" + name + "' (expected example1, example2 or example3)");
}

// ---------------------------------------------------------------------------
// Running

namespace {

template <typename Row, typename Fn>
std::vector<Row> parallel_rows(const JobConfig& cfg, unsigned digits, Fn&& compute)
{
    std::vector<Row> rows(cfg.n_set.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        PrecisionScope scope(digits);
        for (std::size_t i = next++; i < rows.size(); i = next++)
            rows[i] = compute(cfg.n_set[i]);
    };
    const unsigned count = std::min<unsigned>(cfg.workers, static_cast<unsigned>(rows.size()));
    if (count <= 1) {
        worker();
        return rows;
    }
    std::vector<std::thread> pool;
    pool.reserve(count);
    for (unsigned w = 0; w < count; ++w)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    return rows;
}

void fill_convergence(ResultRow& row, const ConvergenceReport& rep, std::size_t m)
{
    row.M_n = rep.M_n;
    row.r_n = rep.r_n;
    row.converges = rep.converges;
    if (rep.converges) {
        const AprioriBounds b = apriori_bounds(m, rep.r_n, rep.q_inf);
        row.eig_bound = b.eig_bound;
        row.fun_bound = b.fun_bound;
    } else {
        row.warnings.push_back("n = " + std::to_string(rep.n) + ": r_n = " + rep.r_n.to_scientific(4) +
                               " >= 1, convergence is not guaranteed");
    }
}

void fill_run(ResultRow& row, const EigenpairApproximation& approx)
{
    row.lambda_sum = approx.lambda_sum;
    row.lambdas = approx.lambdas;
    row.norms = approx.correction_norms;
}

std::vector<ResultRow> compute_rows(const JobConfig& cfg, unsigned digits, bool timing)
{
    PrecisionScope scope(digits);
    const OperatorParams params = cfg.params();

    if (!cfg.stepwise()) {
        const PolynomialPotential q = cfg.polynomial();
        const Real q_inf = potential_sup_norm(q);
        return parallel_rows<ResultRow>(cfg, digits, [&](std::size_t n) {
            const auto start = std::chrono::steady_clock::now();
            ResultRow row;
            row.n = n;
            try {
                fill_convergence(row, convergence_report(n, params, q_inf), cfg.rank);
                fill_run(row, run(n, cfg.rank, params, q, cfg.normalization));
            } catch (const NumericError& e) {
                row.error = e.what();
            }
            if (timing)
                row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            return row;
        });
    }

    const OverlapMatrix B = build_overlap_matrix(cfg.overlap_source(), cfg.trunc);
    // The step function has sup norm 1; for tabulated overlaps it is unknown.
    const bool known_sup = cfg.potential != PotentialKind::overlap_file;
    return parallel_rows<ResultRow>(cfg, digits, [&](std::size_t n) {
        const auto start = std::chrono::steady_clock::now();
        ResultRow row;
        row.n = n;
        try {
            if (known_sup) {
                fill_convergence(row, convergence_report(n, params, Real(1L)), cfg.rank);
            } else {
                row.M_n = spectral_gap_M(n, params);
            }
            const GeneralApproximation g = run_general(n, cfg.rank, cfg.trunc, B, params, cfg.normalization);
            fill_run(row, g.approx);
            row.sensitivity = g.truncation_sensitivity;
        } catch (const NumericError& e) {
            row.error = e.what();
        }
        if (timing)
            row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return row;
    });
}

} // namespace

std::vector<ResultRow> run_job(const JobConfig& cfg)
{
    {
        PrecisionScope scope(cfg.precision.digits);
        cfg.validate();
    }
    std::vector<ResultRow> rows = compute_rows(cfg, cfg.precision.digits, cfg.timing);
    if (cfg.verify) {
        const std::vector<ResultRow> check = compute_rows(cfg, cfg.precision.verify_digits, false);
        PrecisionScope scope(cfg.precision.verify_digits);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].error || check[i].error)
                continue;
            rows[i].stable = stable(rows[i].lambda_sum, check[i].lambda_sum, cfg.precision);
        }
    }
    return rows;
}

std::vector<DiagnosticsRow> run_diagnostics(const JobConfig& cfg)
{
    PrecisionScope scope(cfg.precision.digits);
    cfg.validate();
    const OperatorParams params = cfg.params();
    Real q_inf;
    if (!cfg.stepwise())
        q_inf = potential_sup_norm(cfg.polynomial());
    else if (cfg.potential == PotentialKind::overlap_file)
        throw ConfigError("diagnostics: the sup norm of a tabulated potential is unknown");
    else
        q_inf = Real(1L);
    return parallel_rows<DiagnosticsRow>(cfg, cfg.precision.digits, [&](std::size_t n) {
        const ConvergenceReport rep = convergence_report(n, params, q_inf);
        DiagnosticsRow row;
        row.n = n;
        row.M_n = rep.M_n;
        row.q_inf = rep.q_inf;
        row.r_n = rep.r_n;
        row.converges = rep.converges;
        if (rep.converges) {
            row.eig_bound = rep.eig_bound(cfg.rank);
            row.fun_bound = rep.fun_bound(cfg.rank);
        }
        return row;
    });
}

// ---------------------------------------------------------------------------
// Output

namespace {

ordered_json meta_json(const JobConfig& cfg)
{
    // Worker count and output path do not affect results and stay out of the file.
    Settings s = config_settings(cfg);
    s.erase("workers");
    s.erase("out");
    ordered_json config = ordered_json::object();
    for (const auto& key : kKnownKeys) {
        const auto it = s.find(key);
        if (it != s.end())
            config[key] = it->second;
    }
    ordered_json meta;
    meta["config"] = config;
    meta["version"] = kVersion;
    meta["digits"] = cfg.precision.digits;
    return meta;
}

std::string finish_json(const ordered_json& doc) { return doc.dump(2) + "\n"; }

} // namespace

std::string emit(const std::vector<ResultRow>& rows, const JobConfig& cfg)
{
    const unsigned d = cfg.precision.digits;
    const std::size_t m = cfg.rank;

    if (cfg.format == OutputFormat::json) {
        ordered_json doc;
        doc["meta"] = meta_json(cfg);
        ordered_json list = ordered_json::array();
        for (const auto& r : rows) {
            ordered_json o;
            o["n"] = r.n;
            const bool ok = !r.error;
            const bool has_r = ok && cfg.potential != PotentialKind::overlap_file;
            o["M_n"] = ok ? ordered_json(sci(r.M_n, d)) : ordered_json(nullptr);
            o["r_n"] = has_r ? ordered_json(sci(r.r_n, d)) : ordered_json(nullptr);
            o["converges"] = r.converges;
            o["lambda_rank_m"] = ok ? ordered_json(sci(r.lambda_sum, d)) : ordered_json(nullptr);
            o["eig_bound"] = opt_json(r.eig_bound, d);
            o["fun_bound"] = opt_json(r.fun_bound, d);
            ordered_json lambdas = ordered_json::array();
            for (const auto& l : r.lambdas)
                lambdas.push_back(sci(l, d));
            ordered_json norms = ordered_json::array();
            for (const auto& v : r.norms)
                norms.push_back(sci(v, d));
            o["lambdas"] = lambdas;
            o["norms"] = norms;
            if (cfg.stepwise())
                o["sensitivity"] = opt_json(r.sensitivity, d);
            if (cfg.verify)
                o["stable"] = r.stable ? ordered_json(*r.stable) : ordered_json(nullptr);
            if (cfg.timing)
                o["wall_seconds"] = r.wall_seconds ? ordered_json(seconds_text(*r.wall_seconds)) : ordered_json(nullptr);
            o["error"] = r.error ? ordered_json(*r.error) : ordered_json(nullptr);
            list.push_back(o);
        }
        doc["rows"] = list;
        return finish_json(doc);
    }

    std::vector<std::string> header{"n", "M_n", "r_n", "converges", "lambda_rank_m", "eig_bound", "fun_bound"};
    for (std::size_t j = 0; j <= m; ++j)
        header.push_back("lambda_" + std::to_string(j));
    for (std::size_t j = 0; j <= m; ++j)
        header.push_back("norm_" + std::to_string(j));
    if (cfg.stepwise())
        header.push_back("sensitivity");
    if (cfg.verify)
        header.push_back("stable");
    if (cfg.timing)
        header.push_back("wall_seconds");
    header.push_back("error");

    std::string out = join(header) + "\n";
    for (const auto& r : rows) {
        const bool ok = !r.error;
        const bool has_r = ok && cfg.potential != PotentialKind::overlap_file;
        std::vector<std::string> f;
        f.push_back(std::to_string(r.n));
        f.push_back(ok ? sci(r.M_n, d) : "");
        f.push_back(has_r ? sci(r.r_n, d) : "");
        f.push_back(r.converges ? "true" : "false");
        f.push_back(ok ? sci(r.lambda_sum, d) : "");
        f.push_back(opt_sci(r.eig_bound, d));
        f.push_back(opt_sci(r.fun_bound, d));
        for (std::size_t j = 0; j <= m; ++j)
            f.push_back(j < r.lambdas.size() ? sci(r.lambdas[j], d) : "");
        for (std::size_t j = 0; j <= m; ++j)
            f.push_back(j < r.norms.size() ? sci(r.norms[j], d) : "");
        if (cfg.stepwise())
            f.push_back(opt_sci(r.sensitivity, d));
        if (cfg.verify)
            f.push_back(r.stable ? (*r.stable ? "true" : "false") : "");
        if (cfg.timing)
            f.push_back(r.wall_seconds ? seconds_text(*r.wall_seconds) : "");
        f.push_back(csv_field(r.error.value_or("")));
        out += join(f) + "\n";
    }
    return out;
}

std::string emit(const std::vector<DiagnosticsRow>& rows, const JobConfig& cfg)
{
    const unsigned d = cfg.precision.digits;
    if (cfg.format == OutputFormat::json) {
        ordered_json doc;
        doc["meta"] = meta_json(cfg);
        ordered_json list = ordered_json::array();
        for (const auto& r : rows) {
            ordered_json o;
            o["n"] = r.n;
            o["M_n"] = sci(r.M_n, d);
            o["q_inf"] = sci(r.q_inf, d);
            o["r_n"] = sci(r.r_n, d);
            o["converges"] = r.converges;
            o["eig_bound"] = opt_json(r.eig_bound, d);
            o["fun_bound"] = opt_json(r.fun_bound, d);
            list.push_back(o);
        }
        doc["rows"] = list;
        return finish_json(doc);
    }
    std::string out = "n,M_n,q_inf,r_n,converges,eig_bound,fun_bound\n";
    for (const auto& r : rows) {
        out += join({std::to_string(r.n), sci(r.M_n, d), sci(r.q_inf, d), sci(r.r_n, d),
                     r.converges ? "true" : "false", opt_sci(r.eig_bound, d), opt_sci(r.fun_bound, d)}) +
               "\n";
    }
    return out;
}

std::vector<ResultRow> parse_json_rows(const std::string& text)
{
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("result json: ") + e.what());
    }
    auto real_or_empty = [](const ordered_json& v) -> std::optional<Real> {
        if (v.is_null())
            return std::nullopt;
        return Real::parse(v.get<std::string>());
    };
    std::vector<ResultRow> rows;
    try {
        for (const auto& o : doc.at("rows")) {
            ResultRow r;
            r.n = o.at("n").get<std::size_t>();
            if (auto v = real_or_empty(o.at("M_n")))
                r.M_n = *v;
            if (auto v = real_or_empty(o.at("r_n")))
                r.r_n = *v;
            r.converges = o.at("converges").get<bool>();
            if (auto v = real_or_empty(o.at("lambda_rank_m")))
                r.lambda_sum = *v;
            r.eig_bound = real_or_empty(o.at("eig_bound"));
            r.fun_bound = real_or_empty(o.at("fun_bound"));
            for (const auto& l : o.at("lambdas"))
                r.lambdas.push_back(Real::parse(l.get<std::string>()));
            for (const auto& v : o.at("norms"))
                r.norms.push_back(Real::parse(v.get<std::string>()));
            if (o.contains("sensitivity"))
                r.sensitivity = real_or_empty(o.at("sensitivity"));
            if (o.contains("stable") && !o.at("stable").is_null())
                r.stable = o.at("stable").get<bool>();
            if (o.contains("wall_seconds") && !o.at("wall_seconds").is_null())
                r.wall_seconds = std::stod(o.at("wall_seconds").get<std::string>());
            if (!o.at("error").is_null())
                r.error = o.at("error").get<std::string>();
            rows.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("result json: ") + e.what());
    }
    return rows;
}

void write_output(const std::string& text, const JobConfig& cfg)
{
    if (cfg.out.empty()) {
        std::cout << text;
        std::cout.flush();
        if (!std::cout)
            throw IoError("output: write to standard output failed");
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary | std::ios::trunc);
    if (!f)
        throw IoError("output: cannot open '" + cfg.out + "'");
    f << text;
    f.close();
    if (!f)
        throw IoError("output: write to '" + cfg.out + "' failed");
}

} // namespace fdm
