#pragma once
#include <complex>

#include "decolab/hp.hpp"

namespace tu {

using cd = std::complex<double>;

inline double dist(const decolab::HPComplex& a, cd b) {
  return std::abs(a.to_std() - b);
}

inline double dist(const decolab::HPComplex& a, const decolab::HPComplex& b) {
  return abs(a - b).to_double();
}

}  // namespace tu
