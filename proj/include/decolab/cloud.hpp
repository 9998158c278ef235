#pragma once
// Point clouds: the carrier for Julia samples, decoration levels, model sets
// and extracted boundaries, with CSV and binary persistence.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "decolab/hp.hpp"

namespace decolab {

struct PointCloud {
  std::vector<std::complex<double>> points;
  // One level label per point when decorations are present, else empty.
  std::vector<int> levels;
  std::string label;
  double dedup_resolution = 0.0;  // grid pitch used for deduplication, 0 = none

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  bool has_levels() const { return !levels.empty(); }

  void append(std::complex<double> p) { points.push_back(p); }
  void append(std::complex<double> p, int level) {
    points.push_back(p);
    levels.push_back(level);
  }

  std::complex<double> centroid() const;
  double diameter() const;  // exact max pairwise distance via hull rotation
};

// CSV: "re,im" or "re,im,level" rows after a "# re,im[,level]" header,
// doubles at full round-trip precision.
void write_cloud_csv(const PointCloud& cloud, const std::string& path);
PointCloud read_cloud_csv(const std::string& path);

// Length-prefixed little-endian binary: u64 count, u8 has_levels, then per
// point two f64 (and one i32 level when present).
void write_cloud_bin(const PointCloud& cloud, const std::string& path);
PointCloud read_cloud_bin(const std::string& path);

}  // namespace decolab
