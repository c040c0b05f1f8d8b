#pragma once

#include <complex>
#include <vector>

#include "ultrashort/interval.hpp"
#include "ultrashort/poly.hpp"

namespace ultrashort {

inline constexpr int kDefaultPrecisionCap = 1 << 20;

/// Disc {z : |z - center| <= radius} isolating exactly one root.
struct RootBox {
  BigFloat re;
  BigFloat im;
  BigFloat radius;

  /// Axis-aligned rectangle containing the disc.
  CBox box() const;
  std::complex<double> approx() const { return {re.to_double(), im.to_double()}; }
};

/// Certified isolating discs for all complex roots of g, ordered
/// lexicographically by (real, imaginary) center. Real parts that agree to
/// within the certified radii plus 2^{-precision/2} count as equal, so that
/// conjugate pairs order by imaginary part.
class CertifiedBoxList {
 public:
  CertifiedBoxList(IntPoly poly, int precision_bits, std::vector<RootBox> boxes)
      : poly_(std::move(poly)), precision_bits_(precision_bits), boxes_(std::move(boxes)) {}

  const IntPoly& poly() const { return poly_; }
  int precision_bits() const { return precision_bits_; }
  const std::vector<RootBox>& boxes() const { return boxes_; }
  int degree() const { return static_cast<int>(boxes_.size()); }

  std::vector<CBox> cboxes() const;
  std::vector<std::complex<double>> approximations() const;

  /// Same roots, same order, at a higher precision.
  CertifiedBoxList refined(int precision_bits, int precision_cap = kDefaultPrecisionCap) const;

 private:
  IntPoly poly_;
  int precision_bits_;
  std::vector<RootBox> boxes_;
};

/// Throws PrecisionExhausted if isolation fails below precision_cap bits.
/// Each radius is at most 2^{-precision_bits/2}.
CertifiedBoxList certified_complex_roots(const IntPoly& g, int precision_bits,
                                         int precision_cap = kDefaultPrecisionCap);

}  // namespace ultrashort
