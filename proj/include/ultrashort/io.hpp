#pragma once

// CSV / JSON / SVG persistence and the on-disk relation cache.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ultrashort/limitlaw.hpp"
#include "ultrashort/relations.hpp"
#include "ultrashort/stats.hpp"
#include "ultrashort/sums.hpp"

namespace ultrashort {

using json = nlohmann::json;

/// {"d", "basis", "precision_bits", "kind"}.
json relation_module_to_json(const RelationModule& module);
RelationModule relation_module_from_json(const json& j);

/// Header "a,re,im"; excluded parameters are omitted.
void write_sum_grid_csv(std::ostream& out, const SumGrid& grid);
json sum_grid_to_json(const SumGrid& grid);

/// Header "re,im".
void write_samples_csv(std::ostream& out, std::span<const cplx> samples);

/// Reads complex values from a CSV whose header contains "re" (and
/// optionally "im") columns.
std::vector<cplx> read_values_csv(std::istream& in);

using MomentTable = std::map<std::pair<int, int>, json>;
/// {"(m,n)": value}.
json moment_table_to_json(const MomentTable& table);

json stationarity_to_json(const StationarityReport& report);
/// {inputs, uniformity_metric, weyl: [{alpha, value_re, value_im, in_Rg}], moments}.
json conditioning_to_json(const ConditioningReport& report, const std::string& poly);

/// 800x800 scatter of complex values on [-d-0.5, d+0.5]^2.
std::string scatter_svg(std::span<const cplx> values, double d, const std::string& title);
/// 800x800 histogram of real values on [-d-0.5, d+0.5].
std::string histogram_svg(std::span<const double> values, double d, const std::string& title, int bins = 80);

/// Relation modules stored as <dir>/<fnv1a(key)>.json.
class RelationCache {
 public:
  explicit RelationCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  /// Default ./.ultrashort-cache, overridden by ULTRASHORT_CACHE_DIR.
  static std::filesystem::path default_directory();
  static std::string make_key(const IntPoly& g, std::string_view family, std::string_view detail,
                              const RelationOptions& options);

  /// nullopt on a miss; a corrupt entry prints a warning and counts as a miss.
  std::optional<RelationModule> get(const std::string& key) const;
  void put(const std::string& key, const RelationModule& module) const;
  std::filesystem::path path_for(const std::string& key) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace ultrashort
