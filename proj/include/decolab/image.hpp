#pragma once
// Raster image carrier plus deterministic PNG/PPM/raw-count writers.

#include <cstdint>
#include <string>
#include <vector>

#include "decolab/hp.hpp"

namespace decolab {

constexpr std::uint32_t kInterior = 0xFFFFFFFFu;

struct Image {
  int w = 0, h = 0;
  std::vector<std::uint32_t> iters;  // escape iteration, kInterior inside
  std::vector<float> dist;           // exterior distance estimate, <0 interior
  std::vector<std::uint8_t> rgb;     // 3 bytes per pixel

  Image() = default;
  Image(int width, int height)
      : w(width),
        h(height),
        iters(static_cast<std::size_t>(width) * height, 0),
        rgb(static_cast<std::size_t>(width) * height * 3, 0) {}

  std::size_t idx(int x, int y) const {
    return static_cast<std::size_t>(y) * w + x;
  }
};

// PNG: 8-bit RGB, zlib-compressed, no ancillary chunks (byte-deterministic).
void write_png(const Image& img, const std::string& path);
// PPM: binary P6.
void write_ppm(const Image& img, const std::string& path);
// Raw little-endian u32 grid of iteration counts, row-major, no header.
void write_iter_dump(const Image& img, const std::string& path);
std::vector<std::uint32_t> read_iter_dump(const std::string& path);

}  // namespace decolab
