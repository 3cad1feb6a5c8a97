#pragma once
// Job configuration: a JSON document describing data, scales and every knob
// of the computation and rendering. Unknown keys are rejected; all defaults
// are resolved at parse time so that emit_config writes a complete spec.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rpfif/errors.hpp"
#include "rpfif/projective.hpp"
#include "rpfif/rpifs.hpp"

namespace rpfif {

struct Viewport {
    double u_min = 0.0;
    double u_max = 1.0;
    double v_min = 0.0;
    double v_max = 1.0;

    bool operator==(const Viewport&) const = default;
};

struct ChaosSettings {
    std::size_t n_points = 100'000;
    std::size_t burn_in = 50;
    std::uint64_t seed = 1;

    bool operator==(const ChaosSettings&) const = default;
};

struct AttractorSettings {
    std::string method = "chaos";  // "chaos" | "deterministic"
    std::size_t steps = 6;
    double snap_eps = 0.0;
    std::size_t max_points = 20'000'000;

    bool operator==(const AttractorSettings&) const = default;
};

struct OutputPaths {
    std::string graph = "graph.csv";
    std::string cloud = "cloud.csv";
    std::string raster = "graph.pbm";
    std::string vector = "graph.svg";
    std::string slice_prefix = "slice";

    bool operator==(const OutputPaths&) const = default;
};

struct JobSpec {
    std::vector<Triple> points;
    std::vector<double> scales;
    bool allow_zero_scales = false;
    std::optional<double> theta;
    std::size_t grid_m = 0;
    double tolerance = 1e-10;
    std::size_t max_iter = 200;
    std::size_t depth = 40;
    ChaosSettings chaos;
    AttractorSettings attractor;
    Viewport viewport;
    std::size_t raster_width = 512;
    std::size_t raster_height = 512;
    OutputPaths outputs;
    std::vector<double> slices;

    bool operator==(const JobSpec&) const = default;
};

namespace detail {

using nlohmann::json;

inline void position_of(const std::string& text, std::size_t byte, std::size_t& line, std::size_t& column) {
    line = 1;
    column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
}

class Reader {
  public:
    Reader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
        if (!obj_.is_object()) fail(path_, "expected an object");
    }

    [[noreturn]] static void fail(const std::string& field, const std::string& msg) {
        throw ConfigError(field + ": " + msg, field);
    }

    std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    bool has(const std::string& key) const { return obj_.contains(key); }
    const json& at(const std::string& key) const { return obj_.at(key); }

    void reject_unknown(std::initializer_list<const char*> known) const {
        for (const auto& item : obj_.items()) {
            if (std::find_if(known.begin(), known.end(), [&](const char* k) { return item.key() == k; }) ==
                known.end()) {
                fail(field(item.key()), "unknown key");
            }
        }
    }

    double number(const std::string& key, double fallback) const {
        if (!has(key)) return fallback;
        return number_value(at(key), field(key));
    }
    std::size_t count(const std::string& key, std::size_t fallback) const {
        if (!has(key)) return fallback;
        const auto& v = at(key);
        if (!v.is_number_unsigned()) fail(field(key), "expected a nonnegative integer");
        return v.get<std::size_t>();
    }
    bool flag(const std::string& key, bool fallback) const {
        if (!has(key)) return fallback;
        if (!at(key).is_boolean()) fail(field(key), "expected true or false");
        return at(key).get<bool>();
    }
    std::string text(const std::string& key, const std::string& fallback) const {
        if (!has(key)) return fallback;
        if (!at(key).is_string()) fail(field(key), "expected a string");
        return at(key).get<std::string>();
    }
    std::vector<double> numbers(const std::string& key) const {
        const auto& v = at(key);
        if (!v.is_array()) fail(field(key), "expected a list of numbers");
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            out.push_back(number_value(v[i], field(key) + "[" + std::to_string(i) + "]"));
        }
        return out;
    }

    static double number_value(const json& v, const std::string& field) {
        if (!v.is_number()) fail(field, "expected a number");
        const double d = v.get<double>();
        if (!std::isfinite(d)) fail(field, "expected a finite number");
        return d;
    }

  private:
    const json& obj_;
    std::string path_;
};

inline std::pair<double, double> range(const Reader& r, const std::string& key) {
    const auto vals = r.numbers(key);
    if (vals.size() != 2) Reader::fail(r.field(key), "expected [min, max]");
    if (!(vals[0] < vals[1])) Reader::fail(r.field(key), "empty range, min must be below max");
    return {vals[0], vals[1]};
}

/// Viewport used when the config gives none: the data interval and ordinate
/// range, each widened by 5% and 50% of its span respectively.
inline Viewport default_viewport(const InterpolationData& data) {
    const double u0 = data.X(0);
    const double u1 = data.X(data.intervals());
    double v0 = data.Y(0);
    double v1 = v0;
    for (std::size_t k = 0; k < data.size(); ++k) {
        v0 = std::min(v0, data.Y(k));
        v1 = std::max(v1, data.Y(k));
    }
    const double du = 0.05 * (u1 - u0);
    const double dv = v1 > v0 ? 0.5 * (v1 - v0) : 1.0;
    return {u0 - du, u1 + du, v0 - dv, v1 + dv};
}

}  // namespace detail

/// Parses and validates a job config. Syntax errors carry line and column;
/// semantic errors name the offending field.
inline JobSpec parse_config(const std::string& text) {
    using detail::json;
    using detail::Reader;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 0;
        std::size_t column = 0;
        detail::position_of(text, e.byte == 0 ? 0 : e.byte - 1, line, column);
        throw ConfigError("syntax error at line " + std::to_string(line) + ", column " + std::to_string(column) +
                              ": " + e.what(),
                          "", line, column);
    }
    const Reader root(doc, "");
    root.reject_unknown({"points", "scales", "allow_zero_scales", "theta", "grid_m", "tolerance", "max_iter", "depth",
                         "chaos", "attractor", "viewport", "raster", "outputs", "slices"});

    JobSpec spec;
    if (!root.has("points")) Reader::fail("points", "missing required field");
    const auto& pts = root.at("points");
    if (!pts.is_array()) Reader::fail("points", "expected a list of [x, y, z] triples");
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const std::string f = "points[" + std::to_string(i) + "]";
        if (!pts[i].is_array() || pts[i].size() != 3) Reader::fail(f, "expected [x, y, z]");
        Triple t{};
        for (std::size_t k = 0; k < 3; ++k) t[k] = Reader::number_value(pts[i][k], f + "[" + std::to_string(k) + "]");
        spec.points.push_back(t);
    }
    if (!root.has("scales")) Reader::fail("scales", "missing required field");
    spec.scales = root.numbers("scales");

    std::optional<InterpolationData> data;
    try {
        data.emplace(validate_data(std::span<const Triple>(spec.points)));
    } catch (const ValidationError& e) {
        Reader::fail("points", e.what());
    }
    const std::size_t N = data->intervals();
    if (spec.scales.size() != N) {
        Reader::fail("scales", "expected " + std::to_string(N) + " scale factors for " +
                                   std::to_string(spec.points.size()) + " points, got " +
                                   std::to_string(spec.scales.size()));
    }
    spec.allow_zero_scales = root.flag("allow_zero_scales", false);
    for (std::size_t n = 0; n < N; ++n) {
        const double d = spec.scales[n];
        const std::string f = "scales[" + std::to_string(n) + "]";
        if (!(std::abs(d) < 1.0)) Reader::fail(f, "scale factor must satisfy |d| < 1");
        if (d == 0.0 && !spec.allow_zero_scales) Reader::fail(f, "zero scale factor needs allow_zero_scales = true");
    }

    if (root.has("theta") && !root.at("theta").is_null()) {
        const double theta = root.number("theta", 0.0);
        if (!(theta > 0.0)) Reader::fail("theta", "must be positive");
        spec.theta = theta;
    }
    spec.grid_m = root.count("grid_m", 256 * N + 1);
    if (spec.grid_m < N + 1 || (spec.grid_m - 1) % N != 0) {
        Reader::fail("grid_m", "must be k*" + std::to_string(N) + "+1 so that every data abscissa is a node");
    }
    spec.tolerance = root.number("tolerance", spec.tolerance);
    if (!(spec.tolerance > 0.0)) Reader::fail("tolerance", "must be positive");
    spec.max_iter = root.count("max_iter", spec.max_iter);
    if (spec.max_iter < 1) Reader::fail("max_iter", "must be at least 1");
    spec.depth = root.count("depth", spec.depth);
    if (spec.depth < 1) Reader::fail("depth", "must be at least 1");

    if (root.has("chaos")) {
        const Reader r(root.at("chaos"), "chaos");
        r.reject_unknown({"n_points", "burn_in", "seed"});
        spec.chaos.n_points = r.count("n_points", spec.chaos.n_points);
        spec.chaos.burn_in = r.count("burn_in", spec.chaos.burn_in);
        if (r.has("seed")) {
            if (!r.at("seed").is_number_unsigned()) Reader::fail("chaos.seed", "expected a nonnegative integer");
            spec.chaos.seed = r.at("seed").get<std::uint64_t>();
        }
    }
    if (root.has("attractor")) {
        const Reader r(root.at("attractor"), "attractor");
        r.reject_unknown({"method", "steps", "snap_eps", "max_points"});
        spec.attractor.method = r.text("method", spec.attractor.method);
        if (spec.attractor.method != "chaos" && spec.attractor.method != "deterministic") {
            Reader::fail("attractor.method", "expected \"chaos\" or \"deterministic\"");
        }
        spec.attractor.steps = r.count("steps", spec.attractor.steps);
        spec.attractor.snap_eps = r.number("snap_eps", spec.attractor.snap_eps);
        if (spec.attractor.snap_eps < 0.0) Reader::fail("attractor.snap_eps", "must be nonnegative");
        spec.attractor.max_points = r.count("max_points", spec.attractor.max_points);
    }

    spec.viewport = detail::default_viewport(*data);
    if (root.has("viewport")) {
        const Reader r(root.at("viewport"), "viewport");
        r.reject_unknown({"u", "v"});
        if (r.has("u")) std::tie(spec.viewport.u_min, spec.viewport.u_max) = detail::range(r, "u");
        if (r.has("v")) std::tie(spec.viewport.v_min, spec.viewport.v_max) = detail::range(r, "v");
    }
    if (spec.viewport.u_min > data->X(0) || spec.viewport.u_max < data->X(N)) {
        Reader::fail("viewport.u", "must cover the data interval");
    }
    if (root.has("raster")) {
        const Reader r(root.at("raster"), "raster");
        r.reject_unknown({"width", "height"});
        spec.raster_width = r.count("width", spec.raster_width);
        spec.raster_height = r.count("height", spec.raster_height);
    }
    if (spec.raster_width < 16) Reader::fail("raster.width", "must be at least 16");
    if (spec.raster_height < 16) Reader::fail("raster.height", "must be at least 16");

    if (root.has("outputs")) {
        const Reader r(root.at("outputs"), "outputs");
        r.reject_unknown({"graph", "cloud", "raster", "vector", "slice_prefix"});
        spec.outputs.graph = r.text("graph", spec.outputs.graph);
        spec.outputs.cloud = r.text("cloud", spec.outputs.cloud);
        spec.outputs.raster = r.text("raster", spec.outputs.raster);
        spec.outputs.vector = r.text("vector", spec.outputs.vector);
        spec.outputs.slice_prefix = r.text("slice_prefix", spec.outputs.slice_prefix);
    }
    if (root.has("slices")) {
        spec.slices = root.numbers("slices");
        for (std::size_t i = 0; i < spec.slices.size(); ++i) {
            if (spec.slices[i] == 0.0) Reader::fail("slices[" + std::to_string(i) + "]", "level must be nonzero");
        }
    }
    return spec;
}

inline nlohmann::json to_json(const JobSpec& spec) {
    using nlohmann::json;
    json j;
    j["points"] = json::array();
    for (const auto& t : spec.points) j["points"].push_back({t[0], t[1], t[2]});
    j["scales"] = spec.scales;
    j["allow_zero_scales"] = spec.allow_zero_scales;
    j["theta"] = spec.theta ? json(*spec.theta) : json(nullptr);
    j["grid_m"] = spec.grid_m;
    j["tolerance"] = spec.tolerance;
    j["max_iter"] = spec.max_iter;
    j["depth"] = spec.depth;
    j["chaos"] = {{"n_points", spec.chaos.n_points}, {"burn_in", spec.chaos.burn_in}, {"seed", spec.chaos.seed}};
    j["attractor"] = {{"method", spec.attractor.method},
                      {"steps", spec.attractor.steps},
                      {"snap_eps", spec.attractor.snap_eps},
                      {"max_points", spec.attractor.max_points}};
    j["viewport"] = {{"u", {spec.viewport.u_min, spec.viewport.u_max}},
                     {"v", {spec.viewport.v_min, spec.viewport.v_max}}};
    j["raster"] = {{"width", spec.raster_width}, {"height", spec.raster_height}};
    j["outputs"] = {{"graph", spec.outputs.graph},
                    {"cloud", spec.outputs.cloud},
                    {"raster", spec.outputs.raster},
                    {"vector", spec.outputs.vector},
                    {"slice_prefix", spec.outputs.slice_prefix}};
    j["slices"] = spec.slices;
    return j;
}

/// Writes every field, defaults included; parse_config(emit_config(s)) == s.
inline std::string emit_config(const JobSpec& spec) { return to_json(spec).dump(2) + "\n"; }

}  // namespace rpfif
