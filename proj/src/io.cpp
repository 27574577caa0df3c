#include "potts/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace potts {

namespace {

constexpr char kGridMagic[8] = {'P', 'G', 'R', 'I', 'D', 'F', '6', '4'};

[[noreturn]] void io_fail(const std::string& what, const std::string& path) {
    throw std::runtime_error(what + ": " + path);
}

int next_pgm_token(std::istream& in) {
    // skip whitespace and '#' comments between header tokens
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
        } else if (!std::isspace(c)) {
            in.unget();
            int value;
            if (!(in >> value)) break;
            return value;
        }
    }
    throw std::runtime_error("pgm: truncated header");
}

void put_u32_le(std::ostream& out, std::uint32_t v) {
    const unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                                static_cast<unsigned char>(v >> 16),
                                static_cast<unsigned char>(v >> 24)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32_le(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace

Image read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) io_fail("cannot open", path);
    char m0 = 0, m1 = 0;
    in.get(m0);
    in.get(m1);
    if (m0 != 'P' || m1 != '5') io_fail("not a binary PGM", path);
    const int width = next_pgm_token(in);
    const int height = next_pgm_token(in);
    const int maxval = next_pgm_token(in);
    if (width <= 0 || height <= 0 || maxval <= 0 || maxval > 65535)
        io_fail("bad PGM header", path);
    in.get();  // single whitespace before the raster

    Image img(width, height);
    const std::size_t n = img.size();
    if (maxval < 256) {
        std::vector<unsigned char> buf(n);
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(n));
        if (!in) io_fail("truncated PGM raster", path);
        for (std::size_t i = 0; i < n; ++i) img.values[i] = buf[i] / static_cast<double>(maxval);
    } else {
        std::vector<unsigned char> buf(2 * n);
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(2 * n));
        if (!in) io_fail("truncated PGM raster", path);
        for (std::size_t i = 0; i < n; ++i) {
            const unsigned v = (static_cast<unsigned>(buf[2 * i]) << 8) | buf[2 * i + 1];
            img.values[i] = v / static_cast<double>(maxval);
        }
    }
    return img;
}

void write_pgm(const std::string& path, const Image& img, int bits) {
    if (bits != 8 && bits != 16) throw std::invalid_argument("write_pgm: bits must be 8 or 16");
    std::ofstream out(path, std::ios::binary);
    if (!out) io_fail("cannot open for writing", path);
    const unsigned maxval = bits == 8 ? 255u : 65535u;
    out << "P5\n" << img.width << " " << img.height << "\n" << maxval << "\n";
    for (double v : img.values) {
        const unsigned q = static_cast<unsigned>(
            std::lround(std::clamp(v, 0.0, 1.0) * static_cast<double>(maxval)));
        if (bits == 8) {
            out.put(static_cast<char>(q));
        } else {
            out.put(static_cast<char>(q >> 8));
            out.put(static_cast<char>(q & 0xff));
        }
    }
    if (!out) io_fail("write failed", path);
}

void write_label_pgm(const std::string& path, const std::vector<int>& labels, int width,
                     int height) {
    if (labels.size() != static_cast<std::size_t>(width) * height)
        throw std::invalid_argument("write_label_pgm: label count mismatch");
    const int maxl = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end());
    if (maxl > 65535) throw std::invalid_argument("write_label_pgm: more than 65536 labels");
    std::ofstream out(path, std::ios::binary);
    if (!out) io_fail("cannot open for writing", path);
    const int maxval = std::max(1, maxl);
    out << "P5\n" << width << " " << height << "\n" << maxval << "\n";
    for (int l : labels) {
        if (maxval < 256) {
            out.put(static_cast<char>(l));
        } else {
            out.put(static_cast<char>(l >> 8));
            out.put(static_cast<char>(l & 0xff));
        }
    }
    if (!out) io_fail("write failed", path);
}

Image read_grid(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) io_fail("cannot open", path);
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kGridMagic, 8) != 0) io_fail("bad grid magic", path);
    const std::uint32_t width = get_u32_le(in);
    const std::uint32_t height = get_u32_le(in);
    if (!in || width == 0 || height == 0) io_fail("bad grid header", path);
    Image img(static_cast<int>(width), static_cast<int>(height));
    in.read(reinterpret_cast<char*>(img.values.data()),
            static_cast<std::streamsize>(img.size() * sizeof(double)));
    if (!in) io_fail("truncated grid data", path);
    return img;
}

void write_grid(const std::string& path, const Image& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) io_fail("cannot open for writing", path);
    out.write(kGridMagic, 8);
    put_u32_le(out, static_cast<std::uint32_t>(img.width));
    put_u32_le(out, static_cast<std::uint32_t>(img.height));
    out.write(reinterpret_cast<const char*>(img.values.data()),
              static_cast<std::streamsize>(img.size() * sizeof(double)));
    if (!out) io_fail("write failed", path);
}

std::vector<double> read_csv_signal(const std::string& path) {
    std::ifstream in(path);
    if (!in) io_fail("cannot open", path);
    std::vector<double> out;
    std::string token;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        while (std::getline(ls, token, ',')) {
            const auto first = token.find_first_not_of(" \t\r");
            if (first == std::string::npos) continue;
            std::size_t used = 0;
            const double v = std::stod(token.substr(first), &used);
            out.push_back(v);
        }
    }
    if (out.empty()) throw std::runtime_error("empty signal: " + path);
    return out;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) io_fail("cannot open for writing", path);
    for (std::size_t i = 0; i < header.size(); ++i)
        out << header[i] << (i + 1 < header.size() ? "," : "\n");
    out.precision(17);
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i)
            out << row[i] << (i + 1 < row.size() ? "," : "\n");
    if (!out) io_fail("write failed", path);
}

}  // namespace potts
