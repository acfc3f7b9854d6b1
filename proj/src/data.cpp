#include "klt/data.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "klt/errors.hpp"
#include "klt/rng.hpp"

namespace klt::data {

Matrix ImageStack::as_matrix() const {
    if (images.empty()) return {};
    std::size_t pixels = images.front().pixels.size();
    Matrix out(pixels, images.size());
    for (std::size_t j = 0; j < images.size(); ++j)
        out.set_col(j, images[j].pixels);
    return out;
}

LabeledCloud gen_shell_ball(std::size_t n_shell, std::size_t n_ball, std::uint64_t seed) {
    if (n_shell < 1 || n_ball < 1)
        throw InvalidInput("gen_shell_ball: counts must be >= 1");

    Xoshiro256pp gen(seed);
    auto draw = [&gen]() { return 2.0 * gen.uniform01() - 1.0; };

    LabeledCloud out;
    out.seed = seed;
    out.points = Matrix(3, n_shell + n_ball);
    out.labels.reserve(n_shell + n_ball);

    std::size_t placed = 0;
    auto fill = [&](std::size_t count, double lo2, double hi2, int label) {
        for (std::size_t k = 0; k < count;) {
            double x = draw(), y = draw(), z = draw();
            double r2 = x * x + y * y + z * z;
            if (r2 <= lo2 || r2 >= hi2) continue;
            out.points(0, placed) = x;
            out.points(1, placed) = y;
            out.points(2, placed) = z;
            out.labels.push_back(label);
            ++placed;
            ++k;
        }
    };
    fill(n_shell, 0.6, 1.0, 0);
    fill(n_ball, -1.0, 0.2, 1);
    return out;
}

ImageStack gen_rotated_ellipses(std::size_t n_images, std::size_t resolution,
                                double semi_major, double semi_minor) {
    if (n_images < 4) throw InvalidInput("gen_rotated_ellipses: need n_images >= 4");
    if (resolution < 16) throw InvalidInput("gen_rotated_ellipses: need resolution >= 16");
    if (!(semi_major > semi_minor))
        throw InvalidInput("gen_rotated_ellipses: need a > b (a circle has no angle)");

    const double pi = 3.14159265358979323846;
    const double cx = 0.5 * static_cast<double>(resolution);
    const double cy = 0.5 * static_cast<double>(resolution);

    ImageStack out;
    out.images.reserve(n_images);
    out.angles.reserve(n_images);
    for (std::size_t k = 0; k < n_images; ++k) {
        double theta = pi * static_cast<double>(k) / static_cast<double>(n_images);
        double c = std::cos(theta), s = std::sin(theta);
        GrayImage img(resolution, resolution);
        for (std::size_t r = 0; r < resolution; ++r) {
            for (std::size_t col = 0; col < resolution; ++col) {
                // 2x2 supersampling at pixel-quarter offsets
                double acc = 0.0;
                for (int sr = 0; sr < 2; ++sr) {
                    for (int sc = 0; sc < 2; ++sc) {
                        double x = static_cast<double>(col) + 0.25 + 0.5 * sc - cx;
                        double y = static_cast<double>(r) + 0.25 + 0.5 * sr - cy;
                        // rotate sample back into the ellipse frame
                        double xr = c * x + s * y;
                        double yr = -s * x + c * y;
                        double q = (xr / semi_major) * (xr / semi_major) +
                                   (yr / semi_minor) * (yr / semi_minor);
                        if (q <= 1.0) acc += 1.0;
                    }
                }
                img.at(r, col) = acc / 4.0;
            }
        }
        out.images.push_back(std::move(img));
        out.angles.push_back(theta);
    }
    return out;
}

ImageStack gen_rotated_ellipses(std::size_t n_images, std::size_t resolution) {
    double res = static_cast<double>(resolution);
    return gen_rotated_ellipses(n_images, resolution, 0.35 * res, 0.15 * res);
}

namespace {

bool parse_row(const std::string& line, Vector& row) {
    row.clear();
    std::size_t pos = 0;
    while (pos <= line.size()) {
        std::size_t comma = line.find(',', pos);
        std::string cell = line.substr(pos, comma == std::string::npos ? std::string::npos
                                                                       : comma - pos);
        const char* begin = cell.c_str();
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        while (end && *end != '\0' && std::isspace(static_cast<unsigned char>(*end))) ++end;
        if (end == begin || (end && *end != '\0')) return false;
        row.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return !row.empty();
}

} // namespace

Matrix read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("read_csv: cannot open " + path);

    std::vector<Vector> rows;
    std::string line;
    std::size_t lineno = 0;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        Vector row;
        if (!parse_row(line, row)) {
            if (lineno == 1) continue; // header line
            throw ParseError("read_csv: " + path + ":" + std::to_string(lineno) +
                             ": not a numeric row");
        }
        if (width == 0) width = row.size();
        if (row.size() != width)
            throw ParseError("read_csv: " + path + ":" + std::to_string(lineno) +
                             ": expected " + std::to_string(width) + " columns, got " +
                             std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("read_csv: " + path + ": no data rows");

    Matrix out(rows.size(), width);
    for (std::size_t i = 0; i < rows.size(); ++i) out.set_row(i, rows[i]);
    return out;
}

void write_csv(const std::string& path, const Matrix& m,
               const std::vector<std::string>& header) {
    std::ofstream out(path);
    if (!out) throw ParseError("write_csv: cannot open " + path);
    if (!header.empty()) {
        if (header.size() != m.cols())
            throw InvalidInput("write_csv: header width mismatch");
        for (std::size_t j = 0; j < header.size(); ++j)
            out << (j ? "," : "") << header[j];
        out << "\n";
    }
    char buf[64];
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
            out << (j ? "," : "") << buf;
        }
        out << "\n";
    }
    if (!out) throw ParseError("write_csv: write failed on " + path);
}

namespace {

// next whitespace-delimited token, skipping '#' comment lines
std::string pgm_token(std::istream& in, const std::string& path) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {}
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) return tok;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    if (tok.empty())
        throw ParseError("read_pgm: " + path + ": unexpected end of file at byte " +
                         std::to_string(in.tellg() == -1 ? 0 : static_cast<long>(in.tellg())));
    return tok;
}

std::size_t pgm_number(std::istream& in, const std::string& path) {
    std::string tok = pgm_token(in, path);
    for (char ch : tok)
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw ParseError("read_pgm: " + path + ": expected number, got '" + tok + "'");
    return static_cast<std::size_t>(std::stoull(tok));
}

} // namespace

GrayImage read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("read_pgm: cannot open " + path);

    std::string magic = pgm_token(in, path);
    if (magic != "P2" && magic != "P5")
        throw ParseError("read_pgm: " + path + ": magic '" + magic + "' is not P2/P5");
    std::size_t w = pgm_number(in, path);
    std::size_t h = pgm_number(in, path);
    std::size_t maxval = pgm_number(in, path);
    if (w == 0 || h == 0 || maxval == 0 || maxval > 255)
        throw ParseError("read_pgm: " + path + ": bad header");

    GrayImage img(w, h);
    if (magic == "P2") {
        for (std::size_t k = 0; k < w * h; ++k) {
            std::size_t p = pgm_number(in, path);
            if (p > maxval)
                throw ParseError("read_pgm: " + path + ": pixel exceeds maxval");
            img.pixels[k] = static_cast<double>(p) / static_cast<double>(maxval);
        }
    } else {
        // the token reader already consumed the single whitespace after maxval
        std::vector<unsigned char> raw(w * h);
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
        if (static_cast<std::size_t>(in.gcount()) != raw.size())
            throw ParseError("read_pgm: " + path + ": truncated pixel data at byte " +
                             std::to_string(static_cast<long>(in.gcount())));
        for (std::size_t k = 0; k < w * h; ++k)
            img.pixels[k] = static_cast<double>(raw[k]) / static_cast<double>(maxval);
    }
    return img;
}

void write_pgm(const std::string& path, const GrayImage& img, bool binary) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("write_pgm: cannot open " + path);
    out << (binary ? "P5" : "P2") << "\n"
        << img.width << " " << img.height << "\n255\n";
    auto quantize = [](double v) {
        double c = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
        return static_cast<unsigned>(std::lround(c * 255.0));
    };
    if (binary) {
        std::vector<unsigned char> raw(img.pixels.size());
        for (std::size_t k = 0; k < raw.size(); ++k)
            raw[k] = static_cast<unsigned char>(quantize(img.pixels[k]));
        out.write(reinterpret_cast<const char*>(raw.data()),
                  static_cast<std::streamsize>(raw.size()));
    } else {
        for (std::size_t r = 0; r < img.height; ++r) {
            for (std::size_t c = 0; c < img.width; ++c)
                out << (c ? " " : "") << quantize(img.at(r, c));
            out << "\n";
        }
    }
    if (!out) throw ParseError("write_pgm: write failed on " + path);
}

} // namespace klt::data
