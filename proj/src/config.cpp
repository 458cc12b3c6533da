#include "sihdr/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <string>

#include "sihdr/error.hpp"

namespace sihdr {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::string canonical_key(std::string_view key)
{
    std::string out;
    for (char c : trim(key))
        out.push_back(c == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    return out;
}

double parse_real(std::string_view key, std::string_view text)
{
    const std::string s(trim(text));
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size() || !std::isfinite(v))
        throw InvalidParameter("config: '" + std::string(key) + "' expects a number, got '" + s + "'");
    return v;
}

long parse_integer(std::string_view key, std::string_view text)
{
    text = trim(text);
    long v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw InvalidParameter("config: '" + std::string(key) + "' expects an integer, got '" + std::string(text)
                               + "'");
    return v;
}

bool parse_flag(std::string_view key, std::string_view text)
{
    std::string s = canonical_key(text);
    if (s == "1" || s == "true" || s == "yes" || s == "on")
        return true;
    if (s == "0" || s == "false" || s == "no" || s == "off")
        return false;
    throw InvalidParameter("config: '" + std::string(key) + "' expects a boolean, got '" + std::string(text) + "'");
}

} // namespace

WeightInverse parse_weight_inverse(std::string_view text)
{
    const std::string s = canonical_key(text);
    if (s == "complement")
        return WeightInverse::complement;
    if (s == "reciprocal_eps" || s == "reciprocal")
        return WeightInverse::reciprocal_eps;
    throw InvalidParameter("unknown weight-inverse mode '" + std::string(text) + "'");
}

std::string_view to_string(WeightInverse mode)
{
    return mode == WeightInverse::complement ? "complement" : "reciprocal-eps";
}

void PipelineConfig::validate() const
{
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw InvalidParameter(std::string("config: ") + name + " must be positive");
    };
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw InvalidParameter("config: lambda must be nonnegative");
    positive(alpha, "alpha");
    positive(eps, "eps");
    positive(sigma_s, "sigma_s");
    positive(solver_tol, "solver_tol");
    positive(display_min_nits, "display_min_nits");
    if (!(gamma_r > 0.0 && gamma_r <= 1.0))
        throw InvalidParameter("config: gamma_r must lie in (0,1]");
    if (!(gamma_t > 0.0 && gamma_t <= 1.0))
        throw InvalidParameter("config: gamma_t must lie in (0,1]");
    if (levels < 3)
        throw InvalidParameter("config: levels must be at least 3");
    if (solver_max_iter <= 0)
        throw InvalidParameter("config: solver_max_iter must be positive");
    if (!(gate_low >= 0.0 && gate_low < gate_high && gate_high <= 1.0))
        throw InvalidParameter("config: gates must satisfy 0 <= gate_low < gate_high <= 1");
    if (!(display_max_nits > display_min_nits))
        throw InvalidParameter("config: display_max_nits must exceed display_min_nits");
    if (!(stretch_percentile >= 0.0 && stretch_percentile < 50.0))
        throw InvalidParameter("config: stretch_percentile must lie in [0,50)");
}

void apply_setting(PipelineConfig& config, std::string_view raw_key, std::string_view value)
{
    const std::string key = canonical_key(raw_key);
    if (key == "lambda")
        config.lambda = parse_real(key, value);
    else if (key == "alpha")
        config.alpha = parse_real(key, value);
    else if (key == "eps" || key == "epsilon")
        config.eps = parse_real(key, value);
    else if (key == "gamma_r")
        config.gamma_r = parse_real(key, value);
    else if (key == "gamma_t")
        config.gamma_t = parse_real(key, value);
    else if (key == "sigma_s")
        config.sigma_s = parse_real(key, value);
    else if (key == "levels" || key == "n") {
        const long n = parse_integer(key, value);
        if (n < 0)
            throw InvalidParameter("config: levels must be nonnegative");
        config.levels = static_cast<std::size_t>(n);
    } else if (key == "solver_tol")
        config.solver_tol = parse_real(key, value);
    else if (key == "solver_max_iter")
        config.solver_max_iter = static_cast<int>(parse_integer(key, value));
    else if (key == "gate_low")
        config.gate_low = parse_real(key, value);
    else if (key == "gate_high")
        config.gate_high = parse_real(key, value);
    else if (key == "weight_inverse")
        config.weight_inverse = parse_weight_inverse(value);
    else if (key == "dump_intermediates")
        config.dump_intermediates = parse_flag(key, value);
    else if (key == "dump_level_luminance")
        config.dump_level_luminance = parse_flag(key, value);
    else if (key == "hdr_export")
        config.hdr_export = parse_flag(key, value);
    else if (key == "display_min_nits")
        config.display_min_nits = parse_real(key, value);
    else if (key == "display_max_nits")
        config.display_max_nits = parse_real(key, value);
    else if (key == "stretch_percentile")
        config.stretch_percentile = parse_real(key, value);
    else
        throw InvalidParameter("config: unknown key '" + std::string(raw_key) + "'");
}

void load_config_file(PipelineConfig& config, const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config file " + path.string());

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view text = trim(line);
        if (text.empty() || text.front() == '#')
            continue;
        const auto eq = text.find('=');
        if (eq == std::string_view::npos)
            throw InvalidParameter(path.string() + ":" + std::to_string(line_no) + ": expected 'key = value'");
        apply_setting(config, text.substr(0, eq), text.substr(eq + 1));
    }
}

} // namespace sihdr
