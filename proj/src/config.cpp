// SPDX-License-Identifier: Apache-2.0
//
// risd2d - RIS-assisted D2D underlay simulator and optimizer
// ------------------------------------------------------------------------

#include "risd2d/config.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "risd2d/units.hpp"

namespace risd2d {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::string fmt_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(std::string_view key, std::string_view text)
{
    const std::string s(trim(text));
    char *end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v))
        throw ConfigError("config key '" + std::string(key) + "': expected a number, got '" + s +
                          "'");
    return v;
}

long long parse_integer(std::string_view key, std::string_view text)
{
    const std::string_view s = trim(text);
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw ConfigError("config key '" + std::string(key) + "': expected an integer, got '" +
                          std::string(s) + "'");
    return v;
}

int parse_int(std::string_view key, std::string_view text)
{
    const long long v = parse_integer(key, text);
    if (v < -2147483647LL || v > 2147483647LL)
        throw ConfigError("config key '" + std::string(key) + "': value out of range");
    return static_cast<int>(v);
}

std::uint64_t parse_u64(std::string_view key, std::string_view text)
{
    const std::string_view s = trim(text);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw ConfigError("config key '" + std::string(key) + "': expected an unsigned integer");
    return v;
}

bool parse_bool(std::string_view key, std::string_view text)
{
    const std::string_view s = trim(text);
    if (s == "true" || s == "1" || s == "yes")
        return true;
    if (s == "false" || s == "0" || s == "no")
        return false;
    throw ConfigError("config key '" + std::string(key) + "': expected true/false");
}

std::vector<std::string_view> split_list(std::string_view text)
{
    std::vector<std::string_view> items;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto item = trim(text.substr(start, comma == std::string_view::npos
                                                      ? std::string_view::npos
                                                      : comma - start));
        if (!item.empty())
            items.push_back(item);
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return items;
}

std::vector<double> parse_double_list(std::string_view key, std::string_view text)
{
    std::vector<double> out;
    for (auto item : split_list(text))
        out.push_back(parse_double(key, item));
    return out;
}

std::string join_doubles(const std::vector<double> &v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ',';
        s += fmt_double(v[i]);
    }
    return s;
}

std::vector<double> range(double first, double last, double step)
{
    std::vector<double> v;
    for (double x = first; x <= last + 1e-9; x += step)
        v.push_back(x);
    return v;
}

bool is_integral(double v)
{
    return std::floor(v) == v;
}

} // namespace

std::string_view kind_name(ExperimentKind k)
{
    switch (k) {
    case ExperimentKind::Single:
        return "single";
    case ExperimentKind::SweepD2d:
        return "sweep_d2d";
    case ExperimentKind::SweepElements:
        return "sweep_elements";
    case ExperimentKind::SweepBits:
        return "sweep_bits";
    case ExperimentKind::SweepSinr:
        return "sweep_sinr";
    case ExperimentKind::SweepPos:
        return "sweep_pos";
    case ExperimentKind::Cdf:
        return "cdf";
    case ExperimentKind::Convergence:
        return "convergence";
    }
    return "unknown";
}

std::optional<ExperimentKind> parse_kind(std::string_view name)
{
    for (auto k : {ExperimentKind::Single, ExperimentKind::SweepD2d, ExperimentKind::SweepElements,
                   ExperimentKind::SweepBits, ExperimentKind::SweepSinr, ExperimentKind::SweepPos,
                   ExperimentKind::Cdf, ExperimentKind::Convergence})
        if (kind_name(k) == name)
            return k;
    return std::nullopt;
}

ExperimentConfig defaults_for(ExperimentKind kind)
{
    ExperimentConfig c;
    c.kind = kind;
    switch (kind) {
    case ExperimentKind::Single:
        break;
    case ExperimentKind::SweepD2d:
        c.values = range(1, 6, 1);
        c.n_per_side = 4;
        c.bits = 3;
        c.out = "sweep_d2d.csv";
        break;
    case ExperimentKind::SweepElements:
        c.values = range(2, 8, 1);
        c.d2d = 3;
        c.bits = 3;
        c.out = "sweep_elements.csv";
        break;
    case ExperimentKind::SweepBits:
        c.values = range(1, 6, 1);
        c.d2d = 3;
        c.n_per_side = 3;
        c.out = "sweep_bits.csv";
        break;
    case ExperimentKind::SweepSinr:
        c.values = range(2, 14, 2);
        c.d2d = 3;
        c.n_per_side = 4;
        c.bits = 3;
        c.out = "sweep_sinr.csv";
        break;
    case ExperimentKind::SweepPos:
        c.values = range(-100, 100, 25);
        c.d2d = 3;
        c.n_per_side = 3;
        c.bits = 3;
        c.schemes = {SchemeId::Proposed, SchemeId::WithoutRis};
        c.out = "sweep_pos.csv";
        break;
    case ExperimentKind::Cdf:
        c.d2d = 4;
        c.n_per_side = 4;
        c.bits = 3;
        c.out = "cdf.csv";
        break;
    case ExperimentKind::Convergence:
        c.d2d = 4;
        c.n_per_side = 4;
        c.bits = 3;
        c.trials = 50;
        c.schemes = {SchemeId::Proposed};
        c.out = "convergence.csv";
        break;
    }
    return c;
}

void apply_setting(ExperimentConfig &cfg, std::string_view key_in, std::string_view value)
{
    const std::string_view key = trim(key_in);
    const std::string k(key);
    if (key.starts_with("manifest."))
        return;

    if (key == "experiment") {
        const auto kind = parse_kind(trim(value));
        if (!kind)
            throw ConfigError("config key 'experiment': unknown kind '" +
                              std::string(trim(value)) + "'");
        cfg.kind = *kind;
    } else if (key == "values") {
        cfg.values = parse_double_list(key, value);
    } else if (key == "epsilons") {
        cfg.epsilons = parse_double_list(key, value);
    } else if (key == "D") {
        cfg.d2d = parse_int(key, value);
    } else if (key == "N") {
        cfg.n_per_side = parse_int(key, value);
    } else if (key == "e") {
        cfg.bits = parse_int(key, value);
    } else if (key == "gamma_min_db") {
        cfg.gamma_min_db = parse_double(key, value);
    } else if (key == "pos") {
        cfg.pos = parse_double(key, value);
    } else if (key == "fc_ghz") {
        cfg.fc_ghz = parse_double(key, value);
    } else if (key == "alpha") {
        cfg.alpha = parse_double(key, value);
    } else if (key == "beta") {
        cfg.beta = parse_double(key, value);
    } else if (key == "nakagami_m") {
        cfg.nakagami_m = parse_double(key, value);
    } else if (key == "nakagami_omega") {
        cfg.nakagami_omega = parse_double(key, value);
    } else if (key == "p_max_dbm") {
        cfg.p_max_dbm = parse_double(key, value);
    } else if (key == "bandwidth_mhz") {
        cfg.bandwidth_mhz = parse_double(key, value);
    } else if (key == "noise_psd_dbm_per_mhz") {
        cfg.noise_psd_dbm_per_mhz = parse_double(key, value);
    } else if (key == "d_ye") {
        cfg.d_ye = parse_double(key, value);
    } else if (key == "d_ze") {
        cfg.d_ze = parse_double(key, value);
    } else if (key == "max_pair_distance") {
        cfg.max_pair_distance = parse_double(key, value);
    } else if (key == "cell_distance") {
        cfg.cell_distance = parse_double(key, value);
    } else if (key == "epsilon") {
        cfg.epsilon = parse_double(key, value);
    } else if (key == "power_epsilon") {
        cfg.power_epsilon = parse_double(key, value);
    } else if (key == "max_outer") {
        cfg.max_outer = parse_int(key, value);
    } else if (key == "max_inner") {
        cfg.max_inner = parse_int(key, value);
    } else if (key == "max_passes") {
        cfg.max_passes = parse_int(key, value);
    } else if (key == "until_fixpoint") {
        cfg.until_fixpoint = parse_bool(key, value);
    } else if (key == "quantizer") {
        const auto v = trim(value);
        if (v == "literal")
            cfg.quantizer = Quantizer::Literal;
        else if (v == "uniform")
            cfg.quantizer = Quantizer::Uniform;
        else
            throw ConfigError("config key 'quantizer': expected literal or uniform");
    } else if (key == "dual_update") {
        const auto v = trim(value);
        if (v == "ascent")
            cfg.dual_update = DualUpdate::Ascent;
        else if (v == "literal")
            cfg.dual_update = DualUpdate::Literal;
        else
            throw ConfigError("config key 'dual_update': expected ascent or literal");
    } else if (key == "strict_paper") {
        cfg.strict_paper = parse_bool(key, value);
    } else if (key == "trials") {
        cfg.trials = parse_int(key, value);
    } else if (key == "base_seed") {
        cfg.base_seed = parse_u64(key, value);
    } else if (key == "schemes") {
        std::vector<SchemeId> schemes;
        for (auto item : split_list(value)) {
            const auto s = parse_scheme(item);
            if (!s)
                throw ConfigError("config key 'schemes': unknown scheme '" + std::string(item) +
                                  "'");
            schemes.push_back(*s);
        }
        cfg.schemes = schemes;
    } else if (key == "out") {
        cfg.out = std::string(trim(value));
    } else if (key == "include_infeasible") {
        cfg.include_infeasible = parse_bool(key, value);
    } else if (key == "record_timing") {
        cfg.record_timing = parse_bool(key, value);
    } else if (key == "trace") {
        cfg.trace = parse_bool(key, value);
    } else if (key == "threads") {
        cfg.threads = parse_int(key, value);
    } else {
        throw ConfigError("unknown config key '" + k + "'");
    }
}

void apply_text(ExperimentConfig &cfg, std::string_view text)
{
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        auto nl = text.find('\n', start);
        if (nl == std::string_view::npos)
            nl = text.size();
        std::string_view line = text.substr(start, nl - start);
        start = nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
    }
}

ExperimentConfig load_config_file(const std::string &path, ExperimentKind fallback)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();

    // first pass only to learn the experiment kind
    ExperimentConfig probe = defaults_for(fallback);
    apply_text(probe, text);
    ExperimentConfig cfg = defaults_for(probe.kind);
    apply_text(cfg, text);
    return cfg;
}

std::string to_text(const ExperimentConfig &c)
{
    std::string schemes;
    for (std::size_t i = 0; i < c.schemes.size(); ++i) {
        if (i)
            schemes += ',';
        schemes += scheme_name(c.schemes[i]);
    }
    std::ostringstream o;
    o << "experiment = " << kind_name(c.kind) << '\n'
      << "values = " << join_doubles(c.values) << '\n'
      << "epsilons = " << join_doubles(c.epsilons) << '\n'
      << "D = " << c.d2d << '\n'
      << "N = " << c.n_per_side << '\n'
      << "e = " << c.bits << '\n'
      << "gamma_min_db = " << fmt_double(c.gamma_min_db) << '\n'
      << "pos = " << fmt_double(c.pos) << '\n'
      << "fc_ghz = " << fmt_double(c.fc_ghz) << '\n'
      << "alpha = " << fmt_double(c.alpha) << '\n'
      << "beta = " << fmt_double(c.beta) << '\n'
      << "nakagami_m = " << fmt_double(c.nakagami_m) << '\n'
      << "nakagami_omega = " << fmt_double(c.nakagami_omega) << '\n'
      << "p_max_dbm = " << fmt_double(c.p_max_dbm) << '\n'
      << "bandwidth_mhz = " << fmt_double(c.bandwidth_mhz) << '\n'
      << "noise_psd_dbm_per_mhz = " << fmt_double(c.noise_psd_dbm_per_mhz) << '\n'
      << "d_ye = " << fmt_double(c.d_ye) << '\n'
      << "d_ze = " << fmt_double(c.d_ze) << '\n'
      << "max_pair_distance = " << fmt_double(c.max_pair_distance) << '\n'
      << "cell_distance = " << fmt_double(c.cell_distance) << '\n'
      << "epsilon = " << fmt_double(c.epsilon) << '\n'
      << "power_epsilon = " << fmt_double(c.power_epsilon) << '\n'
      << "max_outer = " << c.max_outer << '\n'
      << "max_inner = " << c.max_inner << '\n'
      << "max_passes = " << c.max_passes << '\n'
      << "until_fixpoint = " << (c.until_fixpoint ? "true" : "false") << '\n'
      << "quantizer = " << (c.quantizer == Quantizer::Literal ? "literal" : "uniform") << '\n'
      << "dual_update = " << (c.dual_update == DualUpdate::Ascent ? "ascent" : "literal") << '\n'
      << "strict_paper = " << (c.strict_paper ? "true" : "false") << '\n'
      << "trials = " << c.trials << '\n'
      << "base_seed = " << c.base_seed << '\n'
      << "schemes = " << schemes << '\n'
      << "include_infeasible = " << (c.include_infeasible ? "true" : "false") << '\n'
      << "record_timing = " << (c.record_timing ? "true" : "false") << '\n'
      << "trace = " << (c.trace ? "true" : "false") << '\n'
      << "threads = " << c.threads << '\n'
      << "out = " << c.out << '\n';
    return o.str();
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h)
{
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t config_hash(const ExperimentConfig &cfg)
{
    ExperimentConfig c = cfg;
    c.out.clear();
    c.threads = 0; // does not affect output bytes
    return fnv1a(to_text(c));
}

void ExperimentConfig::validate() const
{
    auto fail = [](const std::string &field, const std::string &why) {
        throw ConfigError("invalid config field '" + field + "': " + why);
    };
    const bool sweep = kind == ExperimentKind::SweepD2d || kind == ExperimentKind::SweepElements ||
                       kind == ExperimentKind::SweepBits || kind == ExperimentKind::SweepSinr ||
                       kind == ExperimentKind::SweepPos;
    if (sweep && values.empty())
        fail("values", "a sweep needs at least one value");
    if (!sweep && !values.empty())
        fail("values", std::string(kind_name(kind)) + " takes no swept values");
    for (double v : values) {
        switch (kind) {
        case ExperimentKind::SweepD2d:
            if (!is_integral(v) || v < 0 || v > 64)
                fail("values", "D must be an integer in 0..64");
            break;
        case ExperimentKind::SweepElements:
            if (!is_integral(v) || v < 1 || v > 64)
                fail("values", "N must be an integer in 1..64");
            break;
        case ExperimentKind::SweepBits:
            if (!is_integral(v) || v < 1 || v > 16)
                fail("values", "e must be an integer in 1..16");
            break;
        default:
            break;
        }
    }
    if (kind == ExperimentKind::Convergence) {
        if (epsilons.empty())
            fail("epsilons", "need at least one threshold");
        for (double e : epsilons)
            if (!(e > 0.0))
                fail("epsilons", "thresholds must be positive");
    }
    if (d2d < 0 || d2d > 64)
        fail("D", "must be in 0..64");
    if (n_per_side < 1 || n_per_side > 64)
        fail("N", "must be in 1..64");
    if (bits < 1 || bits > 16)
        fail("e", "must be in 1..16");
    if (!(fc_ghz > 0.0))
        fail("fc_ghz", "must be positive");
    if (!(alpha > 0.0))
        fail("alpha", "must be positive");
    if (!(beta >= 0.0))
        fail("beta", "must be >= 0");
    if (!(nakagami_m >= 0.5))
        fail("nakagami_m", "must be >= 0.5");
    if (!(nakagami_omega > 0.0))
        fail("nakagami_omega", "must be positive");
    if (!(bandwidth_mhz > 0.0))
        fail("bandwidth_mhz", "must be positive");
    if (!(d_ye > 0.0))
        fail("d_ye", "must be positive");
    if (!(d_ze > 0.0))
        fail("d_ze", "must be positive");
    if (!(max_pair_distance > 0.0))
        fail("max_pair_distance", "must be positive");
    if (!(cell_distance > 0.0))
        fail("cell_distance", "must be positive");
    if (!(epsilon > 0.0))
        fail("epsilon", "must be positive");
    if (!(power_epsilon > 0.0))
        fail("power_epsilon", "must be positive");
    if (max_outer < 1)
        fail("max_outer", "must be >= 1");
    if (max_inner < 1)
        fail("max_inner", "must be >= 1");
    if (max_passes < 1)
        fail("max_passes", "must be >= 1");
    if (trials < 1)
        fail("trials", "must be >= 1");
    if (schemes.empty())
        fail("schemes", "need at least one scheme");
    if (out.empty())
        fail("out", "output path is empty");
    if (threads < 0)
        fail("threads", "must be >= 0");
}

OptimizerSettings optimizer_settings(const ExperimentConfig &cfg)
{
    OptimizerSettings s;
    s.power.epsilon = cfg.power_epsilon;
    s.power.max_iters = cfg.max_inner;
    s.power.gamma_min_linear = db_to_linear(cfg.gamma_min_db);
    s.power.p_max_w = dbm_to_watt(cfg.p_max_dbm);
    s.power.dual_update = cfg.dual_update;
    s.bits = cfg.bits;
    s.quantizer = cfg.quantizer;
    s.until_fixpoint = cfg.until_fixpoint;
    s.max_passes = cfg.max_passes;
    s.epsilon = cfg.epsilon;
    s.max_outer = cfg.max_outer;
    if (cfg.strict_paper) {
        s.power.dual_update = DualUpdate::Literal;
        s.until_fixpoint = false;
        s.quantizer = Quantizer::Literal;
    }
    return s;
}

} // namespace risd2d
