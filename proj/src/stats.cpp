#include "ultrashort/stats.hpp"

#include <algorithm>
#include <cmath>

#include "ultrashort/error.hpp"

namespace ultrashort {

cplx empirical_mixed_moment(std::span<const cplx> values, int m, int n) {
  if (values.empty()) throw Error(ErrorKind::InvalidArgument, "no values");
  if (m < 0 || n < 0) throw Error(ErrorKind::InvalidArgument, "moment orders must be nonnegative");
  std::complex<long double> acc = 0.0L;
  for (const cplx& s : values) {
    std::complex<long double> z(s.real(), s.imag());
    std::complex<long double> term = 1.0L;
    for (int k = 0; k < m; ++k) term *= z;
    for (int k = 0; k < n; ++k) term *= std::conj(z);
    acc += term;
  }
  acc /= static_cast<long double>(values.size());
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

std::size_t StationarityReport::disagreements() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const StationarityEntry& e) { return e.disagreement(); }));
}

StationarityReport stationarity_report(const IntPoly& g, std::span<const u64> primes,
                                       const std::vector<std::vector<long>>& alphas, const RelationModule& R) {
  StationarityReport report;
  for (u64 q : primes) {
    const RootList roots = aligned_roots(g, q, 1, R);
    for (const auto& alpha : alphas) {
      const int weyl = weyl_residue(roots, alpha) == 0 ? 1 : 0;
      report.entries.push_back({q, alpha, weyl, R.contains(std::span<const long>(alpha))});
    }
  }
  return report;
}

double ks_distance(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error(ErrorKind::InvalidArgument, "samples must be nonempty");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size()), ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double best = 0.0;
  while (i < x.size() && j < y.size()) {
    // Step past every copy of the smallest value so ties are handled jointly.
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    best = std::max(best, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return best;
}

double binned_l1_2d(std::span<const cplx> a, std::span<const cplx> b, int bins, double extent) {
  if (bins < 4) throw Error(ErrorKind::InvalidArgument, "bins must be at least 4");
  if (a.empty() || b.empty()) throw Error(ErrorKind::InvalidArgument, "samples must be nonempty");
  if (!(extent > 0.0)) throw Error(ErrorKind::InvalidArgument, "extent must be positive");
  auto histogram = [&](std::span<const cplx> s) {
    std::vector<double> h(static_cast<std::size_t>(bins) * bins, 0.0);
    auto index = [&](double t) {
      const int k = static_cast<int>(std::floor((t + extent) / (2.0 * extent) * bins));
      return std::clamp(k, 0, bins - 1);
    };
    for (const cplx& z : s) h[static_cast<std::size_t>(index(z.real())) * bins + index(z.imag())] += 1.0;
    for (double& v : h) v /= static_cast<double>(s.size());
    return h;
  };
  const auto ha = histogram(a), hb = histogram(b);
  double l1 = 0.0;
  for (std::size_t k = 0; k < ha.size(); ++k) l1 += std::abs(ha[k] - hb[k]);
  return 0.5 * l1;
}

ConditioningReport conditioning_experiment(const IntPoly& g, u64 q, unsigned n, const ConditionSet& A,
                                           const std::vector<std::vector<long>>& alphas, const RelationModule& R) {
  ConditioningReport report;
  report.q = q;
  report.n = n;
  report.descriptor = A.descriptor.to_string();
  report.set_size = A.members.size();
  report.uniformity = uniformity_metric(A);
  const RootList roots = aligned_roots(g, q, n, R);
  for (const auto& alpha : alphas) {
    report.weyl.push_back({alpha, weyl_sum(roots, alpha, A), R.contains(std::span<const long>(alpha))});
  }
  const std::vector<u64> c = value_residues(g, q, n, LaurentPoly::monomial(1));
  const u64 m = A.modulus.value();
  cplx first = 0.0;
  double second = 0.0;
  for (u64 a : A.members) {
    cplx s = 0.0;
    for (u64 ci : c) s += unit_root(mul_mod(a, ci, m), m);
    first += s;
    second += std::norm(s);
  }
  report.first_moment = first / static_cast<double>(A.members.size());
  report.second_moment = second / static_cast<double>(A.members.size());
  return report;
}

}  // namespace ultrashort
