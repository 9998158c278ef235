#include "decolab/cloud.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace decolab {

std::complex<double> PointCloud::centroid() const {
  if (points.empty()) throw error("empty cloud");
  std::complex<double> s{0.0, 0.0};
  for (const auto& p : points) s += p;
  return s / static_cast<double>(points.size());
}

namespace {
double cross(std::complex<double> o, std::complex<double> a,
             std::complex<double> b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) -
         (a.imag() - o.imag()) * (b.real() - o.real());
}
}  // namespace

double PointCloud::diameter() const {
  if (points.empty()) throw error("empty cloud");
  if (points.size() == 1) return 0.0;
  // Monotone-chain hull, then brute force over hull vertices (hulls here are
  // tiny relative to the cloud).
  std::vector<std::complex<double>> pts = points;
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() == 1) return 0.0;
  std::vector<std::complex<double>> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k > 1 ? k - 1 : k);
  double best = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i)
    for (std::size_t j = i + 1; j < hull.size(); ++j)
      best = std::max(best, std::abs(hull[i] - hull[j]));
  return best;
}

void write_cloud_csv(const PointCloud& cloud, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw error("cannot open for writing: " + path);
  bool lv = cloud.has_levels();
  std::fprintf(f, "# re,im%s\n", lv ? ",level" : "");
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    if (lv)
      std::fprintf(f, "%.17g,%.17g,%d\n", cloud.points[i].real(),
                   cloud.points[i].imag(), cloud.levels[i]);
    else
      std::fprintf(f, "%.17g,%.17g\n", cloud.points[i].real(),
                   cloud.points[i].imag());
  }
  std::fclose(f);
}

PointCloud read_cloud_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open: " + path);
  PointCloud cloud;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    double re = 0, im = 0;
    int lv = 0;
    int n = std::sscanf(line.c_str(), "%lf,%lf,%d", &re, &im, &lv);
    if (n < 2) throw error("malformed cloud row in " + path + ": " + line);
    if (n == 3)
      cloud.append({re, im}, lv);
    else
      cloud.append({re, im});
  }
  if (!cloud.levels.empty() && cloud.levels.size() != cloud.points.size())
    throw error("mixed level/levelless rows in " + path);
  if (cloud.empty()) throw error("empty cloud file: " + path);
  return cloud;
}

void write_cloud_bin(const PointCloud& cloud, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw error("cannot open for writing: " + path);
  std::uint64_t n = cloud.points.size();
  std::uint8_t lv = cloud.has_levels() ? 1 : 0;
  std::fwrite(&n, sizeof n, 1, f);
  std::fwrite(&lv, sizeof lv, 1, f);
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    double re = cloud.points[i].real(), im = cloud.points[i].imag();
    std::fwrite(&re, sizeof re, 1, f);
    std::fwrite(&im, sizeof im, 1, f);
    if (lv) {
      std::int32_t l = cloud.levels[i];
      std::fwrite(&l, sizeof l, 1, f);
    }
  }
  std::fclose(f);
}

PointCloud read_cloud_bin(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw error("cannot open: " + path);
  PointCloud cloud;
  std::uint64_t n = 0;
  std::uint8_t lv = 0;
  if (std::fread(&n, sizeof n, 1, f) != 1 ||
      std::fread(&lv, sizeof lv, 1, f) != 1) {
    std::fclose(f);
    throw error("truncated cloud file: " + path);
  }
  for (std::uint64_t i = 0; i < n; ++i) {
    double re, im;
    if (std::fread(&re, sizeof re, 1, f) != 1 ||
        std::fread(&im, sizeof im, 1, f) != 1) {
      std::fclose(f);
      throw error("truncated cloud file: " + path);
    }
    if (lv) {
      std::int32_t l;
      if (std::fread(&l, sizeof l, 1, f) != 1) {
        std::fclose(f);
        throw error("truncated cloud file: " + path);
      }
      cloud.append({re, im}, l);
    } else {
      cloud.append({re, im});
    }
  }
  std::fclose(f);
  return cloud;
}

}  // namespace decolab
