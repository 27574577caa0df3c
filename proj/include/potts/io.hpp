#pragma once

#include <string>
#include <vector>

#include "potts/image.hpp"

namespace potts {

/// Binary PGM (P5), 8- or 16-bit. Values map to [0,1] on read and are
/// rescaled and rounded on write.
Image read_pgm(const std::string& path);
void write_pgm(const std::string& path, const Image& img, int bits = 16);

/// Integer label image as PGM (labels written verbatim, maxval = max label).
void write_label_pgm(const std::string& path, const std::vector<int>& labels, int width,
                     int height);

/// Raw little-endian float64 grid with a 16-byte header:
/// 8-byte magic "PGRIDF64", uint32 width, uint32 height, then row-major data.
Image read_grid(const std::string& path);
void write_grid(const std::string& path, const Image& img);

/// One-line (or one-per-line) CSV of reals.
std::vector<double> read_csv_signal(const std::string& path);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace potts
