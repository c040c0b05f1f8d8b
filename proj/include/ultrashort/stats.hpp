#pragma once

// Distances and reports comparing finite-level sums with their limit laws.

#include <complex>
#include <span>
#include <vector>

#include "ultrashort/relations.hpp"
#include "ultrashort/sums.hpp"

namespace ultrashort {

/// Average of S^m conj(S)^n over the values.
cplx empirical_mixed_moment(std::span<const cplx> values, int m, int n);
inline cplx empirical_mixed_moment(const SumGrid& grid, int m, int n) {
  return empirical_mixed_moment(grid.values, m, n);
}

struct StationarityEntry {
  u64 q = 0;
  std::vector<long> alpha;
  int weyl = 0;
  bool in_relations = false;
  bool disagreement() const { return (weyl == 1) != in_relations; }
};

struct StationarityReport {
  std::vector<StationarityEntry> entries;
  std::size_t disagreements() const;
};

/// Exact full-grid Weyl sums against membership in R.
StationarityReport stationarity_report(const IntPoly& g, std::span<const u64> primes,
                                       const std::vector<std::vector<long>>& alphas, const RelationModule& R);

/// Two-sample Kolmogorov-Smirnov statistic.
double ks_distance(std::span<const double> a, std::span<const double> b);

/// Half the L1 distance between normalized bins x bins histograms on
/// [-extent, extent]^2; points outside are clamped into the border bins.
double binned_l1_2d(std::span<const cplx> a, std::span<const cplx> b, int bins, double extent);

struct ConditioningWeyl {
  std::vector<long> alpha;
  cplx value;
  bool in_relations = false;
};

struct ConditioningReport {
  u64 q = 0;
  unsigned n = 1;
  std::string descriptor;
  std::size_t set_size = 0;
  double uniformity = 0.0;
  std::vector<ConditioningWeyl> weyl;
  /// Mean of S(a) and of |S(a)|^2 over a in A for the additive family v = X.
  cplx first_moment;
  double second_moment = 0.0;
};

ConditioningReport conditioning_experiment(const IntPoly& g, u64 q, unsigned n, const ConditionSet& A,
                                           const std::vector<std::vector<long>>& alphas, const RelationModule& R);

}  // namespace ultrashort
