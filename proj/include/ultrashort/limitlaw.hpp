#pragma once

// Samplers for the limiting laws and the exact moment oracle.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "ultrashort/intmatrix.hpp"
#include "ultrashort/relations.hpp"

namespace ultrashort {

/// Closed subgroup of (S^1)^d on which every character z^alpha, alpha in R,
/// is trivial. With U A V = S (A the relation basis) the constraint
/// A theta in Z^r becomes s_i psi_i in Z for psi = V^{-1} theta.
struct TorusSubgroup {
  std::size_t d = 0;
  RelationModule relations;
  SnfDecomposition snf;
  /// s_1 | ... | s_k for the first k = rank coordinates of psi.
  std::vector<mpz_class> torsion;
  std::size_t free_count = 0;
};

TorusSubgroup torus_subgroup(const RelationModule& R);

/// Angles theta in [0, 1)^d of draw `index` (z_j = e(theta_j)).
std::vector<double> torus_angles(const TorusSubgroup& H, std::uint64_t seed, std::uint64_t index);

struct SampleBatch {
  std::vector<std::complex<double>> samples;
  std::uint64_t seed = 0;
  std::string law;
};

/// Draws of sum_j z_j for z Haar on H.
SampleBatch sigma_samples(const TorusSubgroup& H, std::size_t count, std::uint64_t seed, unsigned threads = 1);

/// #{(i, j) in [d]^m x [d]^n : sum e_{i_a} - sum e_{j_b} in R}, which equals
/// E[sigma^m conj(sigma)^n] for Haar measure on the orthogonal of R.
/// Throws TooLarge when d^{m+n} > 10^8.
std::uint64_t exact_mixed_moment(const RelationModule& R, int m, int n);

/// 2 cos(theta) with density (2/pi) sin^2(theta) on [0, pi].
std::vector<double> sato_tate_samples(std::size_t count, std::uint64_t seed, unsigned threads = 1);

enum class CompactGroup { SU, USp };

/// Traces of Haar-random matrices in SU(r) or USp(r) (r even), r <= 8.
SampleBatch haar_trace_samples(CompactGroup group, int r, std::size_t count, std::uint64_t seed,
                               unsigned threads = 1);

/// partner[i] = j pairs roots i and j (x_j = -x_i); partner[i] = -1 leaves i unpaired.
/// Each pair receives Tr(M) + conj(Tr(M)) for one Haar SU(r) matrix M; each
/// unpaired root an independent Tr(M).
SampleBatch involution_sum_samples(const std::vector<int>& partner, int r, std::size_t count, std::uint64_t seed,
                                   unsigned threads = 1);

/// Pairs roots x, -x among certified roots (an approximate match is confirmed
/// by disc overlap).
std::vector<int> involution_pairing(const CertifiedBoxList& roots);

}  // namespace ultrashort
