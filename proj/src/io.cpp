#include "fscan/io.hpp"

#include <png.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fscan {

namespace {

constexpr char kMagic[4] = {'F', 'S', 'C', 'N'};

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::runtime_error(path + ": " + what);
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& s, const std::string& context) {
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw std::invalid_argument(context + ": bad number '" + s + "'");
    return v;
}

long parse_long(const std::string& s, const std::string& context) {
    long v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw std::invalid_argument(context + ": bad integer '" + s + "'");
    return v;
}

bool parse_bool(const std::string& s, const std::string& context) {
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw std::invalid_argument(context + ": bad boolean '" + s + "'");
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Split "key rest-of-line", comments and blanks already removed.
bool next_kv(std::istream& in, std::string& key, std::string& value) {
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto sp = line.find_first_of(" \t");
        if (sp == std::string::npos) {
            key = line;
            value = "";
        } else {
            key = line.substr(0, sp);
            value = trim(line.substr(sp + 1));
        }
        return true;
    }
    return false;
}

}  // namespace

void write_scan(const std::string& path, const ScanGrid& scan) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(path, "cannot open for writing");
    const std::uint32_t n = static_cast<std::uint32_t>(scan.spec.n);
    const float delta = static_cast<float>(scan.spec.delta);
    const std::uint32_t reserved = 0;
    out.write(kMagic, 4);
    out.write(reinterpret_cast<const char*>(&n), 4);
    out.write(reinterpret_cast<const char*>(&delta), 4);
    out.write(reinterpret_cast<const char*>(&reserved), 4);
    std::vector<float> row(scan.spec.n);
    for (std::size_t r = 0; r < scan.values.rows(); ++r) {
        for (std::size_t c = 0; c < scan.values.cols(); ++c)
            row[c] = static_cast<float>(scan.values(r, c));
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(row.size() * sizeof(float)));
    }
    if (!out) fail(path, "write failed");
}

ScanGrid read_scan(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open");
    char magic[4];
    std::uint32_t n = 0, reserved = 0;
    float delta = 0.0f;
    in.read(magic, 4);
    in.read(reinterpret_cast<char*>(&n), 4);
    in.read(reinterpret_cast<char*>(&delta), 4);
    in.read(reinterpret_cast<char*>(&reserved), 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        fail(path, "not a scan file (bad magic)");
    if (n == 0 || n > 1u << 15) fail(path, "implausible grid size in header");
    GridSpec spec{static_cast<int>(n), static_cast<double>(delta)};
    try {
        validate(spec);
    } catch (const std::exception& e) {
        fail(path, e.what());
    }
    Array2D values(n, n);
    std::vector<float> row(n);
    for (std::uint32_t r = 0; r < n; ++r) {
        in.read(reinterpret_cast<char*>(row.data()),
                static_cast<std::streamsize>(row.size() * sizeof(float)));
        if (!in) fail(path, "truncated scan data");
        for (std::uint32_t c = 0; c < n; ++c) values(r, c) = row[c];
    }
    return ScanGrid(spec, std::move(values));
}

ScanGrid read_png16(const std::string& path, double delta) {
    FILE* fp = std::fopen(path.c_str(), "rb");
    if (!fp) fail(path, "cannot open");
    png_structp png =
        png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
        std::fclose(fp);
        fail(path, "libpng initialisation failed");
    }

    // Buffers live outside the setjmp region; a longjmp lands below and we
    // leave through a normal throw, so destructors still run.
    std::vector<std::uint16_t> pixels;
    std::vector<png_bytep> rows;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(fp);
        fail(path, "png decode error");
    }
    png_init_io(png, fp);
    png_read_info(png, info);
    const png_uint_32 width = png_get_image_width(png, info);
    const png_uint_32 height = png_get_image_height(png, info);
    const int depth = png_get_bit_depth(png, info);
    const int color = png_get_color_type(png, info);
    if (depth != 16 || color != PNG_COLOR_TYPE_GRAY || width != height ||
        width % 2 == 0) {
        png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(fp);
        fail(path, "expected square odd-sided 16-bit grayscale");
    }
    png_set_swap(png);  // file is big-endian; host order wanted
    png_read_update_info(png, info);
    const std::size_t n = width;
    pixels.resize(n * n);
    rows.resize(n);
    for (std::size_t r = 0; r < n; ++r)
        rows[r] = reinterpret_cast<png_bytep>(&pixels[r * n]);
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);

    GridSpec spec{static_cast<int>(n), delta};
    validate(spec);
    Array2D values(n, n);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = pixels[i] / 65535.0;
    return ScanGrid(spec, std::move(values));
}

void write_png16(const std::string& path, const ScanGrid& scan) {
    const std::size_t n = static_cast<std::size_t>(scan.spec.n);
    std::vector<std::uint16_t> pixels(n * n);
    for (std::size_t i = 0; i < pixels.size(); ++i) {
        const double v = std::min(1.0, std::max(0.0, scan.values[i]));
        pixels[i] = static_cast<std::uint16_t>(std::lround(v * 65535.0));
    }
    std::vector<png_bytep> rows(n);
    for (std::size_t r = 0; r < n; ++r)
        rows[r] = reinterpret_cast<png_bytep>(&pixels[r * n]);

    FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) fail(path, "cannot open for writing");
    png_structp png =
        png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
        std::fclose(fp);
        fail(path, "libpng initialisation failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        std::fclose(fp);
        fail(path, "png encode error");
    }
    png_init_io(png, fp);
    png_set_IHDR(png, info, static_cast<png_uint_32>(n),
                 static_cast<png_uint_32>(n), 16, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_set_swap(png);
    png_write_image(png, rows.data());
    png_write_end(png, info);
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
}

MatchConfig parse_match_config(const std::string& text) {
    MatchConfig cfg;
    bool saw_radius = false, saw_pad = false;
    std::istringstream in(text);
    std::string key, value;
    while (next_kv(in, key, value)) {
        const std::string ctx = "config key " + key;
        if (key == "n_theta") cfg.n_theta = static_cast<int>(parse_long(value, ctx));
        else if (key == "delta_theta") cfg.delta_theta = parse_double(value, ctx);
        else if (key == "t_theta") cfg.t_theta = parse_double(value, ctx);
        else if (key == "n_xy") cfg.n_xy = static_cast<int>(parse_long(value, ctx));
        else if (key == "delta_xy") cfg.delta_xy = parse_double(value, ctx);
        else if (key == "t_xy") cfg.t_xy = parse_double(value, ctx);
        else if (key == "band_lo") cfg.band_lo = parse_double(value, ctx);
        else if (key == "band_hi") cfg.band_hi = parse_double(value, ctx);
        else if (key == "n_radius") { cfg.n_radius = static_cast<int>(parse_long(value, ctx)); saw_radius = true; }
        else if (key == "pad_angle") { cfg.pad_angle = static_cast<int>(parse_long(value, ctx)); saw_pad = true; }
        else if (key == "softargmax_window") cfg.softargmax_window = static_cast<int>(parse_long(value, ctx));
        else if (key == "normalize_scores") cfg.normalize_scores = parse_bool(value, ctx);
        else throw std::invalid_argument("config: unknown key '" + key + "'");
    }
    if (!saw_radius) cfg.n_radius = 0;
    if (!saw_pad) cfg.pad_angle = -1;
    finalize(cfg);
    validate(cfg);
    return cfg;
}

std::string serialize_match_config(const MatchConfig& cfg) {
    std::ostringstream out;
    out << "n_theta " << cfg.n_theta << "\n";
    out << "delta_theta " << fmt(cfg.delta_theta) << "\n";
    out << "t_theta " << fmt(cfg.t_theta) << "\n";
    out << "n_xy " << cfg.n_xy << "\n";
    out << "delta_xy " << fmt(cfg.delta_xy) << "\n";
    out << "t_xy " << fmt(cfg.t_xy) << "\n";
    out << "band_lo " << fmt(cfg.band_lo) << "\n";
    out << "band_hi " << fmt(cfg.band_hi) << "\n";
    out << "n_radius " << cfg.n_radius << "\n";
    out << "pad_angle " << cfg.pad_angle << "\n";
    out << "softargmax_window " << cfg.softargmax_window << "\n";
    out << "normalize_scores " << (cfg.normalize_scores ? "true" : "false") << "\n";
    return out.str();
}

MatchConfig read_match_config(const std::string& path) {
    return parse_match_config(read_text_file(path));
}

void write_match_config(const std::string& path, const MatchConfig& cfg) {
    write_text_file(path, serialize_match_config(cfg));
}

Scene parse_scene(const std::string& text) {
    Scene scene;
    std::istringstream in(text);
    std::string key, value;
    while (next_kv(in, key, value)) {
        const std::string ctx = "scene key " + key;
        if (key == "seed") {
            scene.rng_seed = static_cast<std::uint64_t>(parse_long(value, ctx));
        } else if (key == "speckle_sigma") {
            scene.noise.speckle_sigma = parse_double(value, ctx);
        } else if (key == "ring_amplitude") {
            scene.noise.ring_amplitude = parse_double(value, ctx);
        } else if (key == "dropout_prob") {
            scene.noise.dropout_prob = parse_double(value, ctx);
        } else if (key == "landmark") {
            std::istringstream fields(value);
            std::string sx, sy, si, sr, extra;
            if (!(fields >> sx >> sy >> si >> sr) || (fields >> extra))
                throw std::invalid_argument("scene: bad landmark line '" + value + "'");
            Landmark lm;
            lm.position = Vec2{parse_double(sx, ctx), parse_double(sy, ctx)};
            lm.intensity = parse_double(si, ctx);
            lm.radius = parse_double(sr, ctx);
            scene.landmarks.push_back(lm);
        } else {
            throw std::invalid_argument("scene: unknown key '" + key + "'");
        }
    }
    validate(scene);
    return scene;
}

std::string serialize_scene(const Scene& scene) {
    std::ostringstream out;
    out << "seed " << scene.rng_seed << "\n";
    out << "speckle_sigma " << fmt(scene.noise.speckle_sigma) << "\n";
    out << "ring_amplitude " << fmt(scene.noise.ring_amplitude) << "\n";
    out << "dropout_prob " << fmt(scene.noise.dropout_prob) << "\n";
    for (const auto& lm : scene.landmarks)
        out << "landmark " << fmt(lm.position.x) << " " << fmt(lm.position.y)
            << " " << fmt(lm.intensity) << " " << fmt(lm.radius) << "\n";
    return out.str();
}

Scene read_scene(const std::string& path) {
    try {
        return parse_scene(read_text_file(path));
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
}

void write_scene(const std::string& path, const Scene& scene) {
    write_text_file(path, serialize_scene(scene));
}

void write_trajectory_csv(const std::string& path,
                          const std::vector<Pose2D>& poses) {
    std::ostringstream out;
    out << "frame,theta,tx,ty\n";
    for (std::size_t k = 0; k < poses.size(); ++k)
        out << k << "," << format_pose_csv(poses[k]) << "\n";
    write_text_file(path, out.str());
}

std::vector<Pose2D> read_trajectory_csv(const std::string& path) {
    std::istringstream in(read_text_file(path));
    std::vector<Pose2D> poses;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) continue;
        if (first && line.rfind("frame", 0) == 0) {
            first = false;
            continue;
        }
        first = false;
        const auto comma = line.find(',');
        if (comma == std::string::npos) fail(path, "bad trajectory row '" + line + "'");
        long frame = 0;
        try {
            frame = parse_long(line.substr(0, comma), "trajectory frame");
            poses.push_back(parse_pose_csv(line.substr(comma + 1)));
        } catch (const std::invalid_argument& e) {
            fail(path, e.what());
        }
        if (frame != static_cast<long>(poses.size()) - 1)
            fail(path, "non-sequential frame index " + std::to_string(frame));
    }
    return poses;
}

void write_surface_csv(const std::string& path, const CorrelationSurface& s) {
    std::ostringstream out;
    for (double c : s.col_coords) out << "," << fmt(c);
    out << "\n";
    for (std::size_t r = 0; r < s.scores.rows(); ++r) {
        out << fmt(s.row_coords[r]);
        for (std::size_t c = 0; c < s.scores.cols(); ++c)
            out << "," << fmt(s.scores(r, c));
        out << "\n";
    }
    write_text_file(path, out.str());
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open");
    std::ostringstream out;
    out << in.rdbuf();
    if (!in && !in.eof()) fail(path, "read failed");
    return out.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(path, "cannot open for writing");
    out << text;
    if (!out) fail(path, "write failed");
}

}  // namespace fscan
