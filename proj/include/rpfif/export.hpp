#pragma once
// File artifacts: point-cloud CSV, plain PBM rasters, SVG polylines. Output is
// byte-stable for identical inputs and every file is written atomically.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rpfif/config.hpp"
#include "rpfif/engine.hpp"
#include "rpfif/errors.hpp"
#include "rpfif/geometry.hpp"

namespace rpfif {

enum class ArtifactKind { cloud_csv, raster, vector_polyline, certificate_report, verify_report };

inline const char* to_string(ArtifactKind k) {
    switch (k) {
        case ArtifactKind::cloud_csv: return "cloud-csv";
        case ArtifactKind::raster: return "raster";
        case ArtifactKind::vector_polyline: return "vector-polyline";
        case ArtifactKind::certificate_report: return "certificate-report";
        case ArtifactKind::verify_report: return "verify-report";
    }
    return "unknown";
}

struct FigureArtifact {
    ArtifactKind kind;
    std::string path;
    std::map<std::string, std::string> metadata;
};

/// Shortest-round-trip-safe decimal rendering used for every number we write.
inline std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);  // no "-0"
    return buf;
}

/// Write to a sibling temp file, then rename over the destination.
inline void atomic_write(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) throw IoError("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move " + tmp.string() + " to " + path);
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Header `u,v,x,y,z`; rows sorted by canonical u, then v.
inline std::string point_cloud_csv(const PointCloud& cloud) {
    std::vector<ProjectivePoint> pts(cloud.begin(), cloud.end());
    std::stable_sort(pts.begin(), pts.end(), [](const ProjectivePoint& a, const ProjectivePoint& b) {
        if (a.u() != b.u()) return a.u() < b.u();
        return a.v() < b.v();
    });
    std::string out = "u,v,x,y,z\n";
    for (const auto& p : pts) {
        out += format_number(p.u()) + ',' + format_number(p.v()) + ',' + format_number(p.x()) + ',' +
               format_number(p.y()) + ',' + format_number(p.z()) + '\n';
    }
    return out;
}

inline FigureArtifact write_point_cloud_csv(const PointCloud& cloud, const std::string& path) {
    atomic_write(path, point_cloud_csv(cloud));
    return {ArtifactKind::cloud_csv, path, {{"points", std::to_string(cloud.size())}}};
}

/// Slice points (x, y, z) at a fixed level, one row each, header `x,y,z`.
inline FigureArtifact write_slice_csv(std::span<const Triple> points, double z0, const std::string& path) {
    std::string out = "x,y,z\n";
    for (const auto& t : points) {
        out += format_number(t[0]) + ',' + format_number(t[1]) + ',' + format_number(t[2]) + '\n';
    }
    atomic_write(path, out);
    return {ArtifactKind::cloud_csv, path, {{"points", std::to_string(points.size())}, {"z0", format_number(z0)}}};
}

/// Binary occupancy image, row-major, row 0 at the top.
struct Raster {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> bits;

    bool at(std::size_t col, std::size_t row) const { return bits[row * width + col] != 0; }
    std::size_t lit() const { return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), 1)); }
    bool operator==(const Raster&) const = default;
};

/// Pixel column of canonical u: floor((u - u_min) / (u_max - u_min) * w), u_max mapped to w - 1.
inline std::size_t pixel_column(const Viewport& vp, std::size_t w, double u) {
    const double t = (u - vp.u_min) / (vp.u_max - vp.u_min) * static_cast<double>(w);
    return std::min(static_cast<std::size_t>(std::floor(t)), w - 1);
}
/// Pixel row of canonical v, counted down from v_max.
inline std::size_t pixel_row(const Viewport& vp, std::size_t h, double v) {
    const double t = (vp.v_max - v) / (vp.v_max - vp.v_min) * static_cast<double>(h);
    return std::min(static_cast<std::size_t>(std::floor(t)), h - 1);
}

/// Points outside the viewport are dropped.
inline Raster rasterize(const PointCloud& cloud, const Viewport& vp, std::size_t w, std::size_t h) {
    if (!(vp.u_min < vp.u_max) || !(vp.v_min < vp.v_max)) throw ValidationError("rasterize: degenerate viewport");
    if (w == 0 || h == 0) throw ValidationError("rasterize: empty raster");
    Raster r{w, h, std::vector<std::uint8_t>(w * h, 0)};
    for (const auto& p : cloud) {
        const double u = p.u();
        const double v = p.v();
        if (u < vp.u_min || u > vp.u_max || v < vp.v_min || v > vp.v_max) continue;
        r.bits[pixel_row(vp, h, v) * w + pixel_column(vp, w, u)] = 1;
    }
    return r;
}

/// Plain PBM: "P1", then "width height", then one text row per pixel row.
inline std::string pbm_text(const Raster& r) {
    std::string out = "P1\n" + std::to_string(r.width) + ' ' + std::to_string(r.height) + '\n';
    out.reserve(out.size() + r.bits.size() * 2);
    for (std::size_t row = 0; row < r.height; ++row) {
        for (std::size_t col = 0; col < r.width; ++col) {
            if (col) out += ' ';
            out += r.bits[row * r.width + col] ? '1' : '0';
        }
        out += '\n';
    }
    return out;
}

inline Raster parse_pbm(const std::string& text) {
    std::size_t pos = 0;
    auto token = [&]() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        const std::size_t start = pos;
        while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        return text.substr(start, pos - start);
    };
    if (token() != "P1") throw ValidationError("parse_pbm: missing P1 header");
    Raster r;
    r.width = std::stoul(token());
    r.height = std::stoul(token());
    r.bits.reserve(r.width * r.height);
    while (r.bits.size() < r.width * r.height) {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos >= text.size()) throw ValidationError("parse_pbm: truncated pixel data");
        const char c = text[pos++];
        if (c != '0' && c != '1') throw ValidationError("parse_pbm: bad pixel value");
        r.bits.push_back(c == '1' ? 1 : 0);
    }
    return r;
}

inline FigureArtifact write_raster(const Raster& r, const std::string& path) {
    atomic_write(path, pbm_text(r));
    return {ArtifactKind::raster,
            path,
            {{"width", std::to_string(r.width)}, {"height", std::to_string(r.height)}, {"lit", std::to_string(r.lit())}}};
}

/// SVG with one polyline through the canonical nodes. SVG's y axis points
/// down, so points are written as (u, -v) and the viewBox is flipped to match.
inline std::string svg_text(const SampledGraph& graph, const Viewport& vp) {
    const double w = vp.u_max - vp.u_min;
    const double h = vp.v_max - vp.v_min;
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + format_number(vp.u_min) + ' ' +
           format_number(-vp.v_max) + ' ' + format_number(w) + ' ' + format_number(h) + "\">\n";
    out += "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"" + format_number(w / 1000.0) + "\" points=\"";
    const auto u = graph.u();
    const auto v = graph.v();
    for (std::size_t i = 0; i < graph.size(); ++i) {
        if (i) out += ' ';
        out += format_number(u[i]) + ',' + format_number(-v[i]);
    }
    out += "\"/>\n</svg>\n";
    return out;
}

inline FigureArtifact write_vector_polyline(const SampledGraph& graph, const Viewport& vp, const std::string& path) {
    atomic_write(path, svg_text(graph, vp));
    return {ArtifactKind::vector_polyline, path, {{"nodes", std::to_string(graph.size())}}};
}

}  // namespace rpfif
