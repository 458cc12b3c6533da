#include "sihdr/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

#include "sihdr/config.hpp"
#include "sihdr/error.hpp"
#include "sihdr/image_io.hpp"
#include "sihdr/metrics.hpp"
#include "sihdr/pipeline.hpp"
#include "sihdr/report.hpp"
#include "sihdr/rgbe.hpp"
#include "sihdr/wls.hpp"

namespace sihdr {

namespace {

namespace fs = std::filesystem;

struct TuningFlags {
    std::optional<double> lambda;
    std::optional<double> alpha;
    std::optional<double> gamma_r;
    std::optional<double> gamma_t;
    std::optional<double> sigma_s;
    std::optional<std::size_t> levels;
    std::optional<std::string> weight_inverse;
    std::string config_file;
};

void add_wls_flags(CLI::App& cmd, TuningFlags& flags)
{
    cmd.add_option("--lambda", flags.lambda, "WLS smoothing strength");
    cmd.add_option("--alpha", flags.alpha, "WLS gradient sensitivity exponent");
    cmd.add_option("--config", flags.config_file, "key = value file applied before command-line flags");
}

/// defaults < config file < flags
PipelineConfig resolve_config(const TuningFlags& flags)
{
    PipelineConfig config;
    if (!flags.config_file.empty())
        load_config_file(config, flags.config_file);
    if (flags.lambda)
        config.lambda = *flags.lambda;
    if (flags.alpha)
        config.alpha = *flags.alpha;
    if (flags.gamma_r)
        config.gamma_r = *flags.gamma_r;
    if (flags.gamma_t)
        config.gamma_t = *flags.gamma_t;
    if (flags.sigma_s)
        config.sigma_s = *flags.sigma_s;
    if (flags.levels)
        config.levels = *flags.levels;
    if (flags.weight_inverse)
        config.weight_inverse = parse_weight_inverse(*flags.weight_inverse);
    config.validate();
    return config;
}

// Reflectance is log-domain and signed, so it is stretched min..max for
// viewing; other planes are written as-is unless they exceed 1.
Plane displayable(const std::string& name, const Plane& p)
{
    const double lo = plane_min(p);
    const double hi = plane_max(p);
    Plane out = p;
    const bool signed_plane = name == "R" || name == "R_prime";
    if (signed_plane) {
        for (double& v : out.values())
            v = hi > lo ? (v - lo) / (hi - lo) : 0.5;
    } else if (hi > 1.0) {
        for (double& v : out.values())
            v /= hi;
    }
    return out;
}

void dump_planes(const std::map<std::string, Plane>& planes, const fs::path& dir)
{
    fs::create_directories(dir);
    for (const auto& [name, plane] : planes)
        write_gray_png(displayable(name, plane), dir / (name + ".png"));
}

void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream f(path, std::ios::trunc);
    if (!f)
        throw IoError("cannot open " + path.string() + " for writing");
    f << text << '\n';
}

int run_enhance(const std::string& in, const std::string& out_path, const TuningFlags& flags,
                const std::string& dump_dir, const std::string& hdr_out, const std::string& report_json,
                bool level_luminance, std::ostream& out, std::ostream& err)
{
    PipelineConfig config = resolve_config(flags);
    if (!dump_dir.empty())
        config.dump_intermediates = true;
    if (level_luminance)
        config.dump_level_luminance = true;
    if (!hdr_out.empty())
        config.hdr_export = true;

    const DecodedImage decoded = decode_image_file(in);
    const PipelineResult result = run_pipeline(decoded.image, config);

    write_image(result.output, out_path, decoded.bit_depth);
    if (config.dump_intermediates)
        dump_planes(result.intermediates, dump_dir);
    if (!report_json.empty())
        write_text(report_json, report_to_json(result));

    out << format_report(result.report);
    if (result.declined) {
        err << "enhancement declined: " << result.decline_reason << "; input copied to " << out_path << '\n';
        return kExitDeclined;
    }
    if (config.hdr_export && !hdr_out.empty())
        write_rgbe(result.luminance_final, decoded.image, hdr_out, config);
    return kExitSuccess;
}

int run_metrics(const std::string& ref_path, const std::string& test_path, const std::string& report_json,
                std::ostream& out)
{
    const RgbImage ref = read_image(ref_path);
    const RgbImage test = read_image(test_path);
    if (ref.width() != test.width() || ref.height() != test.height())
        throw InvalidInput("metrics: images differ in size");
    const Plane lref = extract_luminance(ref);
    const Plane ltest = extract_luminance(test);

    MetricReport report;
    report.gmsd = gmsd(lref, ltest);
    report.de_input = discrete_entropy(lref);
    report.de_output = discrete_entropy(ltest);
    report.accepted = true;

    char line[128];
    std::snprintf(line, sizeof line, "gmsd=%.6f\nde_ref=%.6f\nde_test=%.6f\n", report.gmsd, report.de_input,
                  report.de_output);
    out << line;
    if (!report_json.empty())
        write_text(report_json, report_to_json(report));
    return kExitSuccess;
}

int run_decompose(const std::string& in, const TuningFlags& flags, const std::string& dump_dir, std::ostream& out)
{
    const PipelineConfig config = resolve_config(flags);
    const RgbImage image = read_image(in);
    const Plane luminance = extract_luminance(image);
    const SolveResult solved =
        wls_filter(luminance, config.lambda, config.alpha, config.eps, config.solver_tol, config.solver_max_iter);
    const Decomposition parts = retinex_decompose(luminance, solved.solution);

    const std::map<std::string, Plane> planes{
        {"I", parts.illumination}, {"R", parts.reflectance}, {"BM", parts.brightness}, {"DM", parts.darkness}};
    dump_planes(planes, dump_dir);

    char line[160];
    std::snprintf(line, sizeof line, "m_i=%.6f\nmax_illumination=%.6f\nsolver_residual=%.6g\nsolver_iterations=%d\n",
                  parts.stats.mean, parts.stats.max, solved.relative_residual, solved.iterations);
    out << line;
    return kExitSuccess;
}

} // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Single-image HDR enhancement: Retinex decomposition, virtual exposures, fusion", "sihdr"};
    app.failure_message(CLI::FailureMessage::help);
    app.require_subcommand(1);

    TuningFlags enhance_flags;
    std::string enhance_in, enhance_out, dump_dir, hdr_out, enhance_json;
    bool level_luminance = false;
    CLI::App* enhance = app.add_subcommand("enhance", "Enhance an image (PNG or PPM)");
    enhance->add_option("input", enhance_in, "Input image")->required();
    enhance->add_option("output", enhance_out, "Output image (.png or .ppm)")->required();
    add_wls_flags(*enhance, enhance_flags);
    enhance->add_option("--gamma-r", enhance_flags.gamma_r, "Reflectance scaling exponent");
    enhance->add_option("--gamma-t", enhance_flags.gamma_t, "Tone reproduction exponent");
    enhance->add_option("--sigma-s", enhance_flags.sigma_s, "Sigmoid smoothness");
    enhance->add_option("--levels", enhance_flags.levels, "Number of virtual exposures (>= 3)");
    enhance->add_option("--weight-inverse", enhance_flags.weight_inverse, "complement | reciprocal-eps");
    enhance->add_option("--dump-dir", dump_dir, "Write intermediate planes as PNGs here");
    enhance->add_flag("--dump-level-luminance", level_luminance, "Also dump per-level luminances L_k");
    enhance->add_option("--hdr-out", hdr_out, "Write the enhanced luminance as Radiance RGBE");
    enhance->add_option("--report-json", enhance_json, "Write the metric report as JSON");

    std::string ref_path, test_path, metrics_json;
    CLI::App* metrics = app.add_subcommand("metrics", "GMSD and discrete entropy of two images");
    metrics->add_option("reference", ref_path, "Reference image")->required();
    metrics->add_option("test", test_path, "Test image")->required();
    metrics->add_option("--report-json", metrics_json, "Write the metric report as JSON");

    TuningFlags decompose_flags;
    std::string decompose_in, decompose_dir;
    CLI::App* decompose = app.add_subcommand("decompose", "Dump illumination, reflectance, BM and DM");
    decompose->add_option("input", decompose_in, "Input image")->required();
    decompose->add_option("--dump-dir", decompose_dir, "Output directory")->required();
    add_wls_flags(*decompose, decompose_flags);

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitSuccess : kExitError;
    }

    try {
        if (*enhance)
            return run_enhance(enhance_in, enhance_out, enhance_flags, dump_dir, hdr_out, enhance_json,
                               level_luminance, out, err);
        if (*metrics)
            return run_metrics(ref_path, test_path, metrics_json, out);
        if (*decompose)
            return run_decompose(decompose_in, decompose_flags, decompose_dir, out);
    } catch (const SolverFailure& e) {
        err << "error: " << e.what() << " (residual " << e.residual() << " after " << e.iterations()
            << " iterations)\n";
        return kExitError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}

} // namespace sihdr
