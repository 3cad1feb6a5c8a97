#pragma once
// Command-line front end. Kept in a header so tests can drive it in-process.
//
// Exit codes: 0 success, 1 validation error, 2 numerical failure
// (non-convergence or a failed verify), 3 I/O error. Every failure also
// writes one JSON object on a single line to the error stream.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rpfif/config.hpp"
#include "rpfif/engine.hpp"
#include "rpfif/errors.hpp"
#include "rpfif/export.hpp"
#include "rpfif/rpifs.hpp"
#include "rpfif/verify.hpp"

namespace rpfif {

namespace cli {

using nlohmann::json;

struct Overrides {
    std::vector<double> scales;
    std::optional<double> theta;
    std::optional<std::uint64_t> seed;
};

inline JobSpec load_job(const std::string& path, const Overrides& o) {
    JobSpec spec = parse_config(read_file(path));
    if (o.scales.empty() && !o.theta && !o.seed) return spec;
    // Re-run the full validation on the patched document.
    json j = to_json(spec);
    if (!o.scales.empty()) j["scales"] = o.scales;
    if (o.theta) j["theta"] = *o.theta;
    if (o.seed) j["chaos"]["seed"] = *o.seed;
    return parse_config(j.dump());
}

inline Rpifs make_ifs(const JobSpec& spec) {
    const auto data = validate_data(std::span<const Triple>(spec.points));
    return build_ifs(data, spec.scales, {.allow_zero_scales = spec.allow_zero_scales});
}

inline json artifact_json(const FigureArtifact& a) {
    return {{"kind", to_string(a.kind)}, {"path", a.path}, {"metadata", a.metadata}};
}

inline json trace_json(const IterationTrace& t) {
    return {{"iterations", t.iterations},
            {"converged", t.converged},
            {"final_delta", t.deltas.empty() ? 0.0 : t.deltas.back()},
            {"deltas", t.deltas}};
}

inline json certificate_json(const ContractionCertificate& c) {
    return {{"theta_max", c.theta_max}, {"theta_used", c.theta_used}, {"a_bound", c.a_bound},
            {"d_bound", c.d_bound},     {"c_bound", c.c_bound},       {"sufficient", c.sufficient}};
}

inline void warn(const Rpifs& ifs, std::ostream& err) {
    for (const auto& w : ifs.warnings()) err << json{{"warning", w}}.dump() << '\n';
}

inline int fail(std::ostream& err, const char* kind, const std::string& message, int code,
                const std::string& field = {}) {
    json j{{"error", kind}, {"message", message}, {"exit_code", code}};
    if (!field.empty()) j["field"] = field;
    err << j.dump() << '\n';
    return code;
}

inline FixedPointResult solve(const Rpifs& ifs, const JobSpec& spec) {
    return rb_fixed_point(ifs, spec.grid_m, spec.tolerance, spec.max_iter);
}

}  // namespace cli

inline int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    using cli::json;
    CLI::App app{"Real projective fractal interpolation"};
    app.require_subcommand(1);

    std::string config;
    cli::Overrides ov;
    std::string out_path;
    double x = 0.0;
    double z = 1.0;
    std::optional<std::size_t> depth;
    std::string method;
    std::optional<std::size_t> steps;
    std::string raster_path;
    std::string vector_path;
    std::vector<double> slices;

    auto common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", config, "job config (JSON)")->required();
        sub->add_option("--scales", ov.scales, "override scale factors, comma separated")->delimiter(',');
        sub->add_option("--theta", ov.theta, "override theta for the contraction certificate");
        sub->add_option("--seed", ov.seed, "override the chaos-game seed");
    };

    auto* build = app.add_subcommand("build", "print the coefficient table");
    common(build);
    auto* certificate = app.add_subcommand("certificate", "report the d_theta contraction certificate");
    common(certificate);
    certificate->add_option("-o,--out", out_path, "also write the report here");
    auto* fixed = app.add_subcommand("fixed-point", "iterate the Read-Bajraktarevic operator to its fixed point");
    common(fixed);
    fixed->add_option("-o,--out", out_path, "graph CSV (default: outputs.graph)");
    auto* attract = app.add_subcommand("attract", "sample the attractor");
    common(attract);
    attract->add_option("-o,--out", out_path, "cloud CSV (default: outputs.cloud)");
    attract->add_option("--method", method, "chaos | deterministic")->check(CLI::IsMember({"chaos", "deterministic"}));
    attract->add_option("--steps", steps, "Hutchinson steps for the deterministic method");
    auto* evaluate = app.add_subcommand("evaluate", "evaluate the RPFIF at one abscissa without a grid");
    common(evaluate);
    evaluate->add_option("--x", x, "abscissa x of (x:0:z)")->required();
    evaluate->add_option("--z", z, "homogeneous coordinate z of (x:0:z)");
    evaluate->add_option("--depth", depth, "address depth");
    auto* verify = app.add_subcommand("verify", "run join-up, Lipschitz, contraction and oracle checks");
    common(verify);
    verify->add_option("-o,--out", out_path, "also write the report here");
    auto* render = app.add_subcommand("render", "write raster, vector and slice figures");
    common(render);
    render->add_option("--raster", raster_path, "PBM output (default: outputs.raster)");
    render->add_option("--vector", vector_path, "SVG output (default: outputs.vector)");
    render->add_option("--slice", slices, "export the graph at level z0 (repeatable; default: config slices)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        return cli::fail(err, "usage", e.what(), 1);
    }

    try {
        const JobSpec spec = cli::load_job(config, ov);
        const Rpifs ifs = cli::make_ifs(spec);
        cli::warn(ifs, err);

        if (build->parsed()) {
            out << "n,a,b,c,d,f\n";
            for (std::size_t n = 1; n <= ifs.size(); ++n) {
                const auto& m = ifs.map(n);
                out << n << ',' << format_number(m.a) << ',' << format_number(m.b) << ',' << format_number(m.c) << ','
                    << format_number(m.d) << ',' << format_number(m.f) << '\n';
            }
            return 0;
        }

        if (certificate->parsed()) {
            const auto cert = contraction_certificate(ifs, spec.theta);
            json report = cli::certificate_json(cert);
            report["kind"] = to_string(ArtifactKind::certificate_report);
            const std::string text = report.dump(2) + "\n";
            if (!out_path.empty()) atomic_write(out_path, text);
            out << text;
            return 0;
        }

        if (fixed->parsed()) {
            const auto result = cli::solve(ifs, spec);
            const std::string path = out_path.empty() ? spec.outputs.graph : out_path;
            auto artifact = write_point_cloud_csv(graph_cloud(result.graph), path);
            artifact.metadata["iterations"] = std::to_string(result.trace.iterations);
            artifact.metadata["converged"] = result.trace.converged ? "true" : "false";
            out << json{{"artifacts", {cli::artifact_json(artifact)}},
                        {"trace", cli::trace_json(result.trace)},
                        {"config", to_json(spec)}}
                       .dump(2)
                << '\n';
            if (!result.trace.converged) return cli::fail(err, "numerical", "fixed-point iteration did not converge", 2);
            return 0;
        }

        if (attract->parsed()) {
            const std::string how = method.empty() ? spec.attractor.method : method;
            const std::size_t k = steps.value_or(spec.attractor.steps);
            std::optional<PointCloud> cloud;
            if (how == "chaos") {
                cloud = chaos_game(ifs, spec.chaos.n_points, spec.chaos.burn_in, spec.chaos.seed);
            } else {
                const auto& data = ifs.data();
                cloud = deterministic_attractor(ifs, PointCloud{data[0], data[data.intervals()]}, k,
                                                {.snap_eps = spec.attractor.snap_eps,
                                                 .max_points = spec.attractor.max_points});
            }
            const std::string path = out_path.empty() ? spec.outputs.cloud : out_path;
            auto artifact = write_point_cloud_csv(*cloud, path);
            artifact.metadata["method"] = how;
            if (how == "chaos") {
                artifact.metadata["seed"] = std::to_string(spec.chaos.seed);
                artifact.metadata["burn_in"] = std::to_string(spec.chaos.burn_in);
            } else {
                artifact.metadata["steps"] = std::to_string(k);
            }
            out << json{{"artifacts", {cli::artifact_json(artifact)}}, {"config", to_json(spec)}}.dump(2) << '\n';
            return 0;
        }

        if (evaluate->parsed()) {
            const std::size_t d = depth.value_or(spec.depth);
            const AxisPoint01 value = evaluate_rpfif(ifs, AxisPoint10{x, z}, d);
            out << json{{"x", x}, {"z", z}, {"u", x / z}, {"v", value.v()}, {"depth", d}}.dump() << '\n';
            return 0;
        }

        if (verify->parsed()) {
            VerifyOptions opt;
            opt.seed = spec.chaos.seed;
            opt.oracle_grid_m = spec.grid_m;
            const auto report = run_verification(ifs, opt);
            json j{{"kind", to_string(ArtifactKind::verify_report)}, {"passed", report.passed()}, {"checks", json::array()}};
            for (const auto& c : report.checks) {
                j["checks"].push_back({{"name", c.name}, {"value", c.value}, {"threshold", c.threshold}, {"passed", c.passed}});
            }
            const std::string text = j.dump(2) + "\n";
            if (!out_path.empty()) atomic_write(out_path, text);
            out << text;
            if (!report.passed()) return cli::fail(err, "numerical", "verification failed", 2);
            return 0;
        }

        if (render->parsed()) {
            const auto result = cli::solve(ifs, spec);
            if (!result.trace.converged) return cli::fail(err, "numerical", "fixed-point iteration did not converge", 2);
            std::vector<ProjectivePoint> pts;
            for (std::size_t i = 0; i < result.graph.size(); ++i) pts.push_back(result.graph.node(i));
            if (spec.chaos.n_points > 0) {
                const auto cloud = chaos_game(ifs, spec.chaos.n_points, spec.chaos.burn_in, spec.chaos.seed);
                pts.insert(pts.end(), cloud.begin(), cloud.end());
            }
            const PointCloud all(std::move(pts));
            json artifacts = json::array();
            auto raster = write_raster(rasterize(all, spec.viewport, spec.raster_width, spec.raster_height),
                                       raster_path.empty() ? spec.outputs.raster : raster_path);
            raster.metadata["seed"] = std::to_string(spec.chaos.seed);
            raster.metadata["iterations"] = std::to_string(result.trace.iterations);
            artifacts.push_back(cli::artifact_json(raster));
            artifacts.push_back(cli::artifact_json(
                write_vector_polyline(result.graph, spec.viewport, vector_path.empty() ? spec.outputs.vector : vector_path)));
            const auto& levels = slices.empty() ? spec.slices : slices;
            const PointCloud graph = graph_cloud(result.graph);
            for (std::size_t i = 0; i < levels.size(); ++i) {
                const auto sliced = slice_at_level(graph, levels[i]);
                artifacts.push_back(cli::artifact_json(
                    write_slice_csv(sliced, levels[i], spec.outputs.slice_prefix + "_" + std::to_string(i) + ".csv")));
            }
            out << json{{"artifacts", artifacts}, {"trace", cli::trace_json(result.trace)}, {"config", to_json(spec)}}
                       .dump(2)
                << '\n';
            return 0;
        }
    } catch (const ConfigError& e) {
        return cli::fail(err, "validation", e.what(), 1, e.field);
    } catch (const Error& e) {
        switch (e.kind()) {
            case ErrorKind::validation: return cli::fail(err, "validation", e.what(), 1);
            case ErrorKind::numerical: return cli::fail(err, "numerical", e.what(), 2);
            case ErrorKind::io: return cli::fail(err, "io", e.what(), 3);
        }
    }
    return 1;
}

}  // namespace rpfif
