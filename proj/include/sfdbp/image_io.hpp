#pragma once

#include <string>

#include "sfdbp/image.hpp"

namespace sfdbp {

/// Binary PGM (P5), 8- or 16-bit. Samples are scaled by 1/maxval into [0, 1].
GrayImage read_pgm(const std::string& path);

/// Writes values clamped to [0, 1] and quantized to maxval (255 or 65535).
void write_pgm(const std::string& path, const GrayImage& image, int maxval = 255);

/// Raw integer samples of a P5 file (no scaling); used for label maps.
LabelMap read_pgm_labels(const std::string& path);
/// Stores labels verbatim in a 16-bit P5 file. Labels must lie in [0, 65535].
void write_pgm_labels(const std::string& path, const LabelMap& labels);

/// Grayscale PFM ("Pf"). Rows are stored bottom-to-top; negative scale means little-endian.
Raster<double> read_pfm(const std::string& path);
/// Writes little-endian float32. Values representable as float round-trip exactly.
void write_pfm(const std::string& path, const Raster<double>& image);

/// Dispatch on extension: .pfm or .pgm.
GrayImage read_image(const std::string& path);

}  // namespace sfdbp
