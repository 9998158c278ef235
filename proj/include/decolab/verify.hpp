#pragma once
// Desk-scale verification: boundary clouds from distance-estimator renders,
// exact Hausdorff distances, complex-affine alignment of model clouds onto
// extracted boundaries, decoration-level classification, and a finite-orbit
// semihyperbolicity heuristic.

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "decolab/cloud.hpp"
#include "decolab/hp.hpp"
#include "decolab/render.hpp"

namespace decolab {

struct VerificationReport {
  std::string test_name;
  std::map<std::string, double> metrics;
  // Keys are "min:<metric>" (lower bound) or "max:<metric>" (upper bound).
  std::map<std::string, double> thresholds;
  bool passed = false;
  std::vector<std::string> artifacts;
  std::string classification;  // set by semihyperbolic_test
  std::string notes;

  void evaluate();  // recompute passed from metrics against thresholds
  std::string to_json() const;
  void write_json(const std::string& path) const;
};

// Renders the frame in distance mode and returns the pixel centers whose
// exterior distance estimate is below de_threshold_px * pitch.
// Throws "no boundary in frame" on an empty extraction.
PointCloud extract_boundary(const FrameSpec& frame,
                            double de_threshold_px = 0.75);

// Symmetric Hausdorff distance, exact over the finite clouds.
double hausdorff(const PointCloud& a, const PointCloud& b);

// One-sided variant: sup over `from` of the distance to `to`. This is the
// faithful reading of an embedding claim (every model feature has a nearby
// counterpart; the target may contain more).
double hausdorff_directed(const PointCloud& from, const PointCloud& to);

struct AffineMap {
  std::complex<double> a{1.0, 0.0};
  std::complex<double> b{0.0, 0.0};
  std::complex<double> operator()(std::complex<double> z) const {
    return a * z + b;
  }
  AffineMap inverse() const;
};

struct AlignResult {
  AffineMap map;
  double residual = 0.0;  // hausdorff(map(model), target) / diameter(target)
  double rms = 0.0;       // rms matched-pair distance, same normalization
  int iterations = 0;
};

// Alternating nearest-neighbor / least-squares fit of target ~ a*model + b,
// seeded from diameter ratio and principal-direction phases (both signs of
// the half-angle ambiguity are tried). Orientation-preserving maps only.
AlignResult align_similarity(const PointCloud& model, const PointCloud& target,
                             int iterations = 32);

// Pulls c back through window_map and reports the level of the nearest model
// point when it lies within tol (tol <= 0: three median nearest-neighbor
// spacings of the cloud). nullopt is a valid "not on a decoration" outcome.
std::optional<int> classify_decoration_level(std::complex<double> c,
                                             const AffineMap& window_map,
                                             const PointCloud& model_cloud,
                                             double tol = 0.0);

// Finite-orbit heuristic for non-recurrence of the critical point.
// classification is one of "superattracting-like", "heuristically
// semihyperbolic", "recurrent-suspect". delta <= 0 selects 1e-3 of the
// critical-orbit diameter (floored at 1e-12).
VerificationReport semihyperbolic_test(const HPComplex& c, long n_iter,
                                       double delta, long transient = 100);

}  // namespace decolab
