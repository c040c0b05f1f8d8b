#include "ultrashort/limitlaw.hpp"

#include <cmath>
#include <numbers>

#include "ultrashort/error.hpp"
#include "ultrashort/parallel.hpp"
#include "ultrashort/rng.hpp"

namespace ultrashort {
namespace {

using cplx = std::complex<double>;

double frac(double x) { return x - std::floor(x); }

cplx e(double t) {
  const double a = 2.0 * std::numbers::pi * t;
  return {std::cos(a), std::sin(a)};
}

// Haar SU(r) trace: Gram-Schmidt on a complex Gaussian matrix gives Haar
// U(r) (R has positive diagonal); scaling by det^{-1/r} lands in SU(r), and
// the branch ambiguity is a central r-th root of unity, which preserves Haar.
cplx su_trace(CounterRng& rng, int r) {
  std::vector<std::vector<cplx>> cols(r, std::vector<cplx>(r));
  for (auto& c : cols) {
    for (auto& z : c) z = {rng.normal(), rng.normal()};
  }
  for (int j = 0; j < r; ++j) {
    // Two passes of modified Gram-Schmidt for orthogonality to rounding level.
    for (int pass = 0; pass < 2; ++pass) {
      for (int k = 0; k < j; ++k) {
        cplx dot = 0.0;
        for (int i = 0; i < r; ++i) dot += std::conj(cols[k][i]) * cols[j][i];
        for (int i = 0; i < r; ++i) cols[j][i] -= cols[k][i] * dot;
      }
    }
    double norm = 0.0;
    for (const auto& z : cols[j]) norm += std::norm(z);
    norm = std::sqrt(norm);
    for (auto& z : cols[j]) z /= norm;
  }
  // Determinant by Gaussian elimination with partial pivoting (row-major copy).
  std::vector<std::vector<cplx>> a(r, std::vector<cplx>(r));
  cplx trace = 0.0;
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) a[i][j] = cols[j][i];
    trace += a[i][i];
  }
  cplx det = 1.0;
  for (int k = 0; k < r; ++k) {
    int pivot = k;
    for (int i = k + 1; i < r; ++i) {
      if (std::abs(a[i][k]) > std::abs(a[pivot][k])) pivot = i;
    }
    if (pivot != k) {
      std::swap(a[pivot], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (int i = k + 1; i < r; ++i) {
      const cplx f = a[i][k] / a[k][k];
      for (int j = k; j < r; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return trace * std::polar(1.0, -std::arg(det) / r);
}

struct Quat {
  double w = 0, x = 0, y = 0, z = 0;
};

Quat operator*(const Quat& a, const Quat& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z, a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x, a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}
Quat conj(const Quat& a) { return {a.w, -a.x, -a.y, -a.z}; }
Quat operator+(const Quat& a, const Quat& b) { return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z}; }
Quat operator-(const Quat& a, const Quat& b) { return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z}; }
double norm2(const Quat& a) { return a.w * a.w + a.x * a.x + a.y * a.y + a.z * a.z; }

// Haar USp(2n) trace: quaternionic Gram-Schmidt on a quaternionic Gaussian
// matrix (left-invariant law, and Gram-Schmidt commutes with left
// multiplication). The quaternion w + xi + yj + zk acts as a 2x2 complex block
// of trace 2w.
double usp_trace(CounterRng& rng, int n) {
  std::vector<std::vector<Quat>> cols(n, std::vector<Quat>(n));
  for (auto& c : cols) {
    for (auto& q : c) q = {rng.normal(), rng.normal(), rng.normal(), rng.normal()};
  }
  for (int j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (int k = 0; k < j; ++k) {
        Quat dot;
        for (int i = 0; i < n; ++i) dot = dot + conj(cols[k][i]) * cols[j][i];
        for (int i = 0; i < n; ++i) cols[j][i] = cols[j][i] - cols[k][i] * dot;
      }
    }
    double norm = 0.0;
    for (const auto& q : cols[j]) norm += norm2(q);
    norm = std::sqrt(norm);
    for (auto& q : cols[j]) q = {q.w / norm, q.x / norm, q.y / norm, q.z / norm};
  }
  double trace = 0.0;
  for (int i = 0; i < n; ++i) trace += 2.0 * cols[i][i].w;
  return trace;
}

std::uint64_t multinomial(const std::vector<int>& c) {
  std::uint64_t out = 1;
  int total = 0;
  for (int k : c) {
    for (int i = 1; i <= k; ++i) {
      ++total;
      out = out * static_cast<std::uint64_t>(total) / static_cast<std::uint64_t>(i);
    }
  }
  return out;
}

// All count vectors in N^d with entries summing to m.
void compositions(int d, int m, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == d - 1) {
    cur.push_back(m);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int k = 0; k <= m; ++k) {
    cur.push_back(k);
    compositions(d, m - k, cur, out);
    cur.pop_back();
  }
}

}  // namespace

TorusSubgroup torus_subgroup(const RelationModule& R) {
  TorusSubgroup H;
  H.d = R.ambient_rank;
  H.relations = R;
  if (R.basis.rows() == 0) {
    H.snf.V = IntMatrix::identity(H.d);
    H.snf.U = IntMatrix(0, 0);
    H.snf.S = IntMatrix(0, H.d);
    H.free_count = H.d;
    return H;
  }
  H.snf = smith_normal_form(R.basis);
  for (std::size_t i = 0; i < H.snf.rank; ++i) {
    const mpz_class s = abs(H.snf.S(i, i));
    if (!s.fits_ulong_p()) throw Error(ErrorKind::TooLarge, "invariant factor exceeds 64 bits");
    H.torsion.push_back(s);
  }
  H.free_count = H.d - H.snf.rank;
  return H;
}

std::vector<double> torus_angles(const TorusSubgroup& H, std::uint64_t seed, std::uint64_t index) {
  CounterRng rng(seed, Stream::Torus, index);
  const std::size_t k = H.torsion.size();
  std::vector<std::uint64_t> j(k);
  for (std::size_t i = 0; i < k; ++i) j[i] = rng.below(H.torsion[i].get_ui());
  std::vector<double> u(H.free_count);
  for (auto& x : u) x = rng.uniform();
  std::vector<double> theta(H.d, 0.0);
  for (std::size_t l = 0; l < H.d; ++l) {
    double t = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      // V_li j_i / s_i reduced exactly before conversion.
      const mpz_class s = H.torsion[i];
      mpz_class num = H.snf.V(l, i) * mpz_class(static_cast<unsigned long>(j[i]));
      mpz_fdiv_r(num.get_mpz_t(), num.get_mpz_t(), s.get_mpz_t());
      t += num.get_d() / s.get_d();
    }
    for (std::size_t i = 0; i < H.free_count; ++i) t += frac(H.snf.V(l, k + i).get_d() * u[i]);
    theta[l] = frac(t);
  }
  return theta;
}

SampleBatch sigma_samples(const TorusSubgroup& H, std::size_t count, std::uint64_t seed, unsigned threads) {
  if (count == 0) throw Error(ErrorKind::InvalidArgument, "count must be positive");
  SampleBatch batch{std::vector<cplx>(count), seed, "sigma"};
  parallel_for(count, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      cplx sum = 0.0;
      for (double t : torus_angles(H, seed, s)) sum += e(t);
      batch.samples[s] = sum;
    }
  });
  return batch;
}

std::uint64_t exact_mixed_moment(const RelationModule& R, int m, int n) {
  if (m < 0 || n < 0) throw Error(ErrorKind::InvalidArgument, "moment orders must be nonnegative");
  const int d = static_cast<int>(R.ambient_rank);
  if (std::pow(static_cast<double>(d), m + n) > 1e8) {
    throw Error(ErrorKind::TooLarge, "d^(m+n) exceeds 10^8");
  }
  // Group tuples by their count vectors; a tuple with counts c contributes
  // the vector c and there are multinomial(c) of them.
  std::vector<std::vector<int>> left, right;
  std::vector<int> cur;
  compositions(d, m, cur, left);
  compositions(d, n, cur, right);
  std::uint64_t total = 0;
  std::vector<mpz_class> diff(static_cast<std::size_t>(d));
  for (const auto& c : left) {
    const std::uint64_t wc = multinomial(c);
    for (const auto& c2 : right) {
      for (int i = 0; i < d; ++i) diff[i] = c[i] - c2[i];
      if (lattice_contains(R.basis, diff)) total += wc * multinomial(c2);
    }
  }
  return total;
}

std::vector<double> sato_tate_samples(std::size_t count, std::uint64_t seed, unsigned threads) {
  if (count == 0) throw Error(ErrorKind::InvalidArgument, "count must be positive");
  std::vector<double> out(count);
  parallel_for(count, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      CounterRng rng(seed, Stream::SatoTate, s);
      const double u = rng.uniform();
      // F(theta) = (theta - sin theta cos theta) / pi is increasing on [0, pi].
      double lo = 0.0, hi = std::numbers::pi;
      while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        const double f = (mid - std::sin(mid) * std::cos(mid)) / std::numbers::pi;
        (f < u ? lo : hi) = mid;
      }
      out[s] = 2.0 * std::cos(0.5 * (lo + hi));
    }
  });
  return out;
}

SampleBatch haar_trace_samples(CompactGroup group, int r, std::size_t count, std::uint64_t seed, unsigned threads) {
  if (r < 1 || r > 8) throw Error(ErrorKind::OutOfRangeParameter, "matrix size must lie in [1, 8]");
  if (group == CompactGroup::USp && r % 2 != 0) throw Error(ErrorKind::OutOfRangeParameter, "USp(r) needs r even");
  if (count == 0) throw Error(ErrorKind::InvalidArgument, "count must be positive");
  SampleBatch batch{std::vector<cplx>(count), seed,
                    (group == CompactGroup::SU ? "SU(" : "USp(") + std::to_string(r) + ")"};
  parallel_for(count, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      CounterRng rng(seed, Stream::Haar, s);
      batch.samples[s] = group == CompactGroup::SU ? su_trace(rng, r) : cplx(usp_trace(rng, r / 2), 0.0);
    }
  });
  return batch;
}

SampleBatch involution_sum_samples(const std::vector<int>& partner, int r, std::size_t count, std::uint64_t seed,
                                   unsigned threads) {
  const int d = static_cast<int>(partner.size());
  if (d == 0) throw Error(ErrorKind::InvalidPairing, "empty pairing");
  for (int i = 0; i < d; ++i) {
    const int j = partner[i];
    if (j == -1) continue;
    if (j < 0 || j >= d || j == i || partner[j] != i) {
      throw Error(ErrorKind::InvalidPairing, "partner list is not a fixed-point-free involution");
    }
  }
  if (r < 1 || r > 8 || r % 2 == 0) throw Error(ErrorKind::OutOfRangeParameter, "r must be odd and at most 7");
  if (count == 0) throw Error(ErrorKind::InvalidArgument, "count must be positive");
  SampleBatch batch{std::vector<cplx>(count), seed, "involution SU(" + std::to_string(r) + ")"};
  parallel_for(count, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      CounterRng rng(seed, Stream::Involution, s);
      cplx sum = 0.0;
      for (int i = 0; i < d; ++i) {
        if (partner[i] == -1) {
          sum += su_trace(rng, r);
        } else if (partner[i] > i) {
          const cplx t = su_trace(rng, r);
          sum += t + std::conj(t);
        }
      }
      batch.samples[s] = sum;
    }
  });
  return batch;
}

std::vector<int> involution_pairing(const CertifiedBoxList& roots) {
  const auto x = roots.approximations();
  const auto& boxes = roots.boxes();
  const int d = roots.degree();
  std::vector<int> partner(d, -1);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const double tol = boxes[i].radius.to_double() + boxes[j].radius.to_double() + 1e-12 * std::max(1.0, std::abs(x[i]));
      if (std::abs(x[i] + x[j]) <= tol && partner[i] == -1 && partner[j] == -1) {
        partner[i] = j;
        partner[j] = i;
      }
    }
  }
  return partner;
}

}  // namespace ultrashort
