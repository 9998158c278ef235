#include "decolab/image.hpp"

#include <zlib.h>

#include <cstdio>
#include <cstring>

namespace decolab {

namespace {
void put_u32_be(std::vector<std::uint8_t>& v, std::uint32_t x) {
  v.push_back((x >> 24) & 0xFF);
  v.push_back((x >> 16) & 0xFF);
  v.push_back((x >> 8) & 0xFF);
  v.push_back(x & 0xFF);
}

void write_chunk(std::FILE* f, const char type[4],
                 const std::vector<std::uint8_t>& data) {
  std::vector<std::uint8_t> head;
  put_u32_be(head, static_cast<std::uint32_t>(data.size()));
  std::fwrite(head.data(), 1, head.size(), f);
  std::fwrite(type, 1, 4, f);
  if (!data.empty()) std::fwrite(data.data(), 1, data.size(), f);
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, reinterpret_cast<const Bytef*>(type), 4);
  if (!data.empty()) crc = crc32(crc, data.data(), data.size());
  std::vector<std::uint8_t> tail;
  put_u32_be(tail, static_cast<std::uint32_t>(crc));
  std::fwrite(tail.data(), 1, tail.size(), f);
}
}  // namespace

void write_png(const Image& img, const std::string& path) {
  if (img.w <= 0 || img.h <= 0 || img.rgb.size() !=
      static_cast<std::size_t>(img.w) * img.h * 3)
    throw error("image buffer inconsistent");
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw error("cannot open for writing: " + path);
  static const std::uint8_t sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A,
                                      '\n'};
  std::fwrite(sig, 1, 8, f);

  std::vector<std::uint8_t> ihdr;
  put_u32_be(ihdr, static_cast<std::uint32_t>(img.w));
  put_u32_be(ihdr, static_cast<std::uint32_t>(img.h));
  ihdr.push_back(8);   // bit depth
  ihdr.push_back(2);   // truecolor
  ihdr.push_back(0);   // deflate
  ihdr.push_back(0);   // filtering
  ihdr.push_back(0);   // no interlace
  write_chunk(f, "IHDR", ihdr);

  // Raw scanlines with filter byte 0.
  std::vector<std::uint8_t> raw;
  raw.reserve((static_cast<std::size_t>(img.w) * 3 + 1) * img.h);
  for (int y = 0; y < img.h; ++y) {
    raw.push_back(0);
    const std::uint8_t* row = &img.rgb[img.idx(0, y) * 3];
    raw.insert(raw.end(), row, row + static_cast<std::size_t>(img.w) * 3);
  }
  uLongf bound = compressBound(static_cast<uLong>(raw.size()));
  std::vector<std::uint8_t> comp(bound);
  if (compress2(comp.data(), &bound, raw.data(),
                static_cast<uLong>(raw.size()), 6) != Z_OK) {
    std::fclose(f);
    throw error("zlib compression failed");
  }
  comp.resize(bound);
  write_chunk(f, "IDAT", comp);
  write_chunk(f, "IEND", {});
  std::fclose(f);
}

void write_ppm(const Image& img, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw error("cannot open for writing: " + path);
  std::fprintf(f, "P6\n%d %d\n255\n", img.w, img.h);
  std::fwrite(img.rgb.data(), 1, img.rgb.size(), f);
  std::fclose(f);
}

void write_iter_dump(const Image& img, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw error("cannot open for writing: " + path);
  for (std::uint32_t v : img.iters) {
    std::uint8_t b[4] = {static_cast<std::uint8_t>(v & 0xFF),
                         static_cast<std::uint8_t>((v >> 8) & 0xFF),
                         static_cast<std::uint8_t>((v >> 16) & 0xFF),
                         static_cast<std::uint8_t>((v >> 24) & 0xFF)};
    std::fwrite(b, 1, 4, f);
  }
  std::fclose(f);
}

std::vector<std::uint32_t> read_iter_dump(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw error("cannot open: " + path);
  std::vector<std::uint32_t> out;
  std::uint8_t b[4];
  while (std::fread(b, 1, 4, f) == 4)
    out.push_back(static_cast<std::uint32_t>(b[0]) |
                  (static_cast<std::uint32_t>(b[1]) << 8) |
                  (static_cast<std::uint32_t>(b[2]) << 16) |
                  (static_cast<std::uint32_t>(b[3]) << 24));
  std::fclose(f);
  return out;
}

}  // namespace decolab
