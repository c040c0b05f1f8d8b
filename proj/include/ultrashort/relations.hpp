#pragma once

// Lattices of integer relations among the complex roots of g (or among values
// v(x) at those roots). Candidates come from LLL; every basis row is then
// certified with interval arithmetic against a norm-based lower bound.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ultrashort/complex_roots.hpp"
#include "ultrashort/intmatrix.hpp"
#include "ultrashort/poly.hpp"

namespace ultrashort {

enum class RelationKind { Additive, Value, Joint, Multiplicative };

std::string_view relation_kind_name(RelationKind kind);
RelationKind parse_relation_kind(std::string_view name);

struct RelationCertificate {
  /// Largest root precision (bits) used while searching and certifying.
  int precision_bits = 0;
  /// Upper bound for [K_g : Q] used in the lower bounds.
  long degree_bound = 0;
  /// Smallest log2 of the lower bound that some basis row was certified against.
  double log2_lower_bound = 0.0;
  /// Relations with a coefficient larger than this were not searched.
  long coefficient_cap = 0;
  /// Number of consecutive precision doublings with an unchanged lattice.
  int stable_escalations = 0;
};

struct RelationModule {
  std::size_t ambient_rank = 0;
  /// Rows in Hermite normal form.
  IntMatrix basis;
  RelationKind kind = RelationKind::Additive;
  RelationCertificate certificate;

  std::size_t rank() const { return basis.rows(); }
  bool contains(std::span<const mpz_class> alpha) const;
  bool contains(std::span<const long> alpha) const;
};

struct RelationOptions {
  long coefficient_cap = 64;
  /// Defaults to d!.
  std::optional<long> degree_bound;
  int precision_cap = kDefaultPrecisionCap;
  int stable_escalations = 2;
  /// Starting lattice scale 2^B; 0 picks a value from the dimension.
  int initial_bits = 0;
};

long factorial_bound(int d);

/// Certified test of sum alpha_i x_i == 0 over the roots in list order.
/// Refines the roots internally as needed.
bool gamma_is_zero(std::span<const long> alpha, const CertifiedBoxList& roots, long degree_bound,
                   int precision_cap = kDefaultPrecisionCap);

/// Certified test of sum alpha_i v(x_i) == 0.
bool value_relation_holds(std::span<const long> alpha, const CertifiedBoxList& roots, const LaurentPoly& v,
                          long degree_bound, int precision_cap = kDefaultPrecisionCap);

/// Certified test of prod v(x_i)^alpha_i == 1.
bool multiplicative_relation_holds(std::span<const long> alpha, const CertifiedBoxList& roots,
                                   const LaurentPoly& v, long degree_bound,
                                   int precision_cap = kDefaultPrecisionCap);

RelationModule additive_relations(const IntPoly& g, const RelationOptions& options = {});
RelationModule value_relations(const IntPoly& g, const LaurentPoly& v, const RelationOptions& options = {});
RelationModule joint_power_relations(const IntPoly& g, std::span<const int> exponents,
                                     const RelationOptions& options = {});
RelationModule multiplicative_relations(const IntPoly& g, const LaurentPoly& v,
                                        const RelationOptions& options = {});

/// Nonnegative generator of (image of alpha -> sum alpha_i x_i) intersected with Z.
long index_ind(const IntPoly& g, const RelationOptions& options = {});

/// Some root strictly dominates the sum of the moduli of all the others.
bool dominant_root_holds(const IntPoly& g, int precision_cap = kDefaultPrecisionCap);

}  // namespace ultrashort
