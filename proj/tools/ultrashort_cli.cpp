// ultrashort: command-line driver over the library.
//
// Every subcommand prints CSV or JSON to --out (stdout by default). A JSON
// file given with --config supplies defaults: top-level keys are global
// flags, an object keyed by a subcommand name holds that subcommand's flags
// and selects it. Flags on the command line win.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ultrashort/arith.hpp"
#include "ultrashort/complex_roots.hpp"
#include "ultrashort/error.hpp"
#include "ultrashort/io.hpp"
#include "ultrashort/limitlaw.hpp"
#include "ultrashort/relations.hpp"
#include "ultrashort/stats.hpp"
#include "ultrashort/sums.hpp"

namespace {

using namespace ultrashort;
using nlohmann::json;

constexpr int kUsageExit = 2;
constexpr int kDomainExit = 1;

// Flattens a JSON object into CLI11 config items. Keys inside a subcommand
// section that the subcommand does not define fall back to the root, so
// global flags like "out" may sit next to the flags they belong with.
class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(const CLI::App* root) : root_(root) {}

  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
    json j = json::object();
    for (const CLI::Option* opt : app->get_options()) {
      if (!opt->get_configurable() || opt->get_single_name().empty()) continue;
      if (opt->count() > 0) {
        j[opt->get_single_name()] = opt->results().size() == 1 ? json(opt->results()[0]) : json(opt->results());
      } else if (default_also && !opt->get_default_str().empty()) {
        j[opt->get_single_name()] = opt->get_default_str();
      }
    }
    return j.dump(2) + "\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json j;
    try {
      j = json::parse(input);
    } catch (const json::parse_error& e) {
      throw CLI::ConversionError("--config", std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("--config", "top level must be a JSON object");
    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : j.items()) {
      const CLI::App* sub = value.is_object() ? find_subcommand(key) : nullptr;
      if (value.is_object() && sub == nullptr) throw CLI::ConversionError("--config", "unknown section '" + key + "'");
      if (sub == nullptr) {
        items.push_back({{}, key, inputs_of(value)});
        continue;
      }
      items.push_back({{key}, "++", {}});
      for (const auto& [name, inner] : value.items()) {
        const bool local = sub->get_option_no_throw("--" + name) != nullptr;
        items.push_back({local ? std::vector<std::string>{key} : std::vector<std::string>{}, name, inputs_of(inner)});
      }
      items.push_back({{key}, "--", {}});
    }
    return items;
  }

 private:
  const CLI::App* find_subcommand(const std::string& name) const {
    for (const CLI::App* sub : root_->get_subcommands([](const CLI::App*) { return true; })) {
      if (sub->get_name() == name) return sub;
    }
    return nullptr;
  }

  static std::string scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
      std::string s;
      for (const auto& e : v) s += (s.empty() ? "" : ",") + scalar(e);
      return s;
    }
    return v.dump();
  }

  // Arrays become one input per element; nested arrays (lists of vectors)
  // become comma-joined strings, the command-line spelling of a vector.
  static std::vector<std::string> inputs_of(const json& v) {
    std::vector<std::string> out;
    if (v.is_array()) {
      for (const auto& e : v) out.push_back(scalar(e));
    } else {
      out.push_back(scalar(v));
    }
    return out;
  }

  const CLI::App* root_;
};

struct Globals {
  unsigned threads = 1;
  std::string out;
  std::string cache_dir;
  bool no_cache = false;
  std::uint64_t seed = 1;
  long coefficient_cap = 64;
  long degree_bound = 0;
  int precision_cap = kDefaultPrecisionCap;
};

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + g.out);
  f << text;
}

void emit_json(const Globals& g, const json& j) { emit(g, j.dump(2) + "\n"); }

std::vector<long> parse_vector(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stol(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::ParseError, "bad integer vector '" + text + "'");
    }
  }
  if (out.empty()) throw Error(ErrorKind::ParseError, "empty integer vector");
  return out;
}

std::vector<std::vector<long>> parse_vectors(const std::vector<std::string>& texts) {
  std::vector<std::vector<long>> out;
  for (const auto& t : texts) out.push_back(parse_vector(t));
  return out;
}

std::vector<std::vector<long>> basis_rows(const RelationModule& R) {
  std::vector<std::vector<long>> rows;
  for (std::size_t i = 0; i < R.rank(); ++i) {
    std::vector<long> row;
    for (std::size_t c = 0; c < R.ambient_rank; ++c) row.push_back(R.basis(i, c).get_si());
    rows.push_back(std::move(row));
  }
  return rows;
}

RelationOptions relation_options(const Globals& g) {
  RelationOptions o;
  o.coefficient_cap = g.coefficient_cap;
  if (g.degree_bound > 0) o.degree_bound = g.degree_bound;
  o.precision_cap = g.precision_cap;
  return o;
}

struct RelationRequest {
  std::string family = "additive";
  std::string v = "X";
  std::vector<int> exponents;
};

RelationModule compute_relations(const Globals& glob, const IntPoly& g, const RelationRequest& req) {
  const RelationOptions options = relation_options(glob);
  const RelationKind kind = parse_relation_kind(req.family);
  std::string detail;
  if (kind == RelationKind::Value || kind == RelationKind::Multiplicative) detail = LaurentPoly::parse(req.v).to_string();
  if (kind == RelationKind::Joint) {
    for (int e : req.exponents) detail += std::to_string(e) + ",";
  }

  std::optional<RelationCache> cache;
  std::string key;
  if (!glob.no_cache) {
    cache.emplace(glob.cache_dir.empty() ? RelationCache::default_directory() : std::filesystem::path(glob.cache_dir));
    key = RelationCache::make_key(g, relation_kind_name(kind), detail, options);
    if (auto hit = cache->get(key)) {
      std::cerr << "relations: cache hit " << cache->path_for(key).string() << "\n";
      return *hit;
    }
  }

  RelationModule R;
  switch (kind) {
    case RelationKind::Additive: R = additive_relations(g, options); break;
    case RelationKind::Value: R = value_relations(g, LaurentPoly::parse(req.v), options); break;
    case RelationKind::Joint:
      if (req.exponents.empty()) throw Error(ErrorKind::InvalidArgument, "joint relations need --exponents");
      R = joint_power_relations(g, req.exponents, options);
      break;
    case RelationKind::Multiplicative: R = multiplicative_relations(g, LaurentPoly::parse(req.v), options); break;
  }
  if (cache) {
    cache->put(key, R);
    std::cerr << "relations: cache miss, stored " << cache->path_for(key).string() << "\n";
  }
  return R;
}

std::string grid_csv(const SumGrid& grid) {
  std::ostringstream os;
  write_sum_grid_csv(os, grid);
  return os.str();
}

std::string samples_csv(std::span<const cplx> values) {
  std::ostringstream os;
  write_samples_csv(os, values);
  return os.str();
}

bool wants_json(const Globals& g, const std::string& format) {
  if (format == "json") return true;
  if (format == "csv") return false;
  return g.out.size() >= 5 && g.out.compare(g.out.size() - 5, 5, ".json") == 0;
}

void emit_grid(const Globals& g, const SumGrid& grid, const std::string& format) {
  if (wants_json(g, format)) {
    emit_json(g, sum_grid_to_json(grid));
  } else {
    emit(g, grid_csv(grid));
  }
}

void restrict_grid(SumGrid& grid, const ConditionSet& A) {
  std::vector<u64> params;
  std::vector<cplx> values;
  for (std::size_t i = 0; i < grid.params.size(); ++i) {
    if (std::binary_search(A.members.begin(), A.members.end(), grid.params[i])) {
      params.push_back(grid.params[i]);
      values.push_back(grid.values[i]);
    }
  }
  grid.params = std::move(params);
  grid.values = std::move(values);
}

// Flags shared by the subcommands that take a polynomial and a prime power.
struct PolyFlags {
  std::string poly;
  u64 prime = 0;
  unsigned exponent = 1;
};

void add_poly(CLI::App* sub, PolyFlags& f, bool with_prime, bool with_exponent) {
  sub->add_option("--poly,-g", f.poly, "monic separable integer polynomial, e.g. \"X^3+X+3\"")->required();
  if (with_prime) sub->add_option("--prime,-q", f.prime, "split prime q")->required();
  if (with_exponent) {
    sub->add_option("--exponent,-n", f.exponent, "work modulo q^n")->capture_default_str()->check(CLI::Range(1u, 64u));
  }
}

void add_relation_request(CLI::App* sub, RelationRequest& r) {
  sub->add_option("--family", r.family, "additive | value | joint | multiplicative")
      ->capture_default_str()
      ->check(CLI::IsMember({"additive", "value", "joint", "multiplicative"}));
  sub->add_option("--v", r.v, "Laurent polynomial v for value and multiplicative relations")->capture_default_str();
  sub->add_option("--exponents", r.exponents, "distinct exponents for joint relations")->delimiter(',');
}

std::string default_svg_path(const std::string& input) {
  std::filesystem::path p(input);
  p.replace_extension(".svg");
  return p.string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ultra-short sums over roots of integer polynomials modulo primes"};
  app.fallthrough();
  app.require_subcommand(1);
  app.allow_config_extras(CLI::config_extras_mode::error);

  Globals glob;
  app.set_config("--config", "", "JSON file with default flag values");
  app.config_formatter(std::make_shared<JsonConfig>(&app));
  app.add_option("--threads,-j", glob.threads, "worker threads; results do not depend on it")
      ->capture_default_str()
      ->check(CLI::Range(1u, 256u));
  app.add_option("--out,-o", glob.out, "output file (stdout when omitted)");
  app.add_option("--cache-dir", glob.cache_dir, "relation cache directory (default $ULTRASHORT_CACHE_DIR or ./.ultrashort-cache)");
  app.add_flag("--no-cache", glob.no_cache, "bypass the relation cache");
  app.add_option("--seed", glob.seed, "random seed")->capture_default_str();
  app.add_option("--coefficient-cap", glob.coefficient_cap, "largest relation coefficient searched")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--degree-bound", glob.degree_bound, "asserted bound on the splitting field degree (default d!)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--precision-cap", glob.precision_cap, "largest working precision in bits")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  PolyFlags pf;
  RelationRequest rel;
  std::string format = "auto";
  u64 lo = 1000, hi = 100000;
  std::size_t count = 0;

  auto* primes = app.add_subcommand("primes", "split primes of g in [lo, hi]");
  add_poly(primes, pf, false, false);
  primes->add_option("--lo", lo)->capture_default_str();
  primes->add_option("--hi", hi)->capture_default_str();
  primes->add_option("--count", count, "keep only the first count primes (0 = all)");

  int precision = 64;
  auto* roots = app.add_subcommand("roots", "roots modulo q^n, or certified complex roots without --prime");
  roots->add_option("--poly,-g", pf.poly)->required();
  roots->add_option("--prime,-q", pf.prime, "split prime q");
  roots->add_option("--exponent,-n", pf.exponent)->capture_default_str()->check(CLI::Range(1u, 64u));
  roots->add_option("--precision", precision, "bits for the complex roots")->capture_default_str();

  auto* relations = app.add_subcommand("relations", "certified relation module");
  add_poly(relations, pf, false, false);
  add_relation_request(relations, rel);

  bool dominant = false;
  auto* index = app.add_subcommand("index", "ind(g), the generator of Im(gamma) meet Z");
  add_poly(index, pf, false, false);
  index->add_flag("--dominant", dominant, "also decide the dominant-root criterion");

  std::string v = "X";
  std::string family = "additive";
  std::string descriptor = "full";
  std::vector<int> exponents;
  auto* sums = app.add_subcommand("sums", "additive sum grid a -> sum_r e(a v(r) / q^n)");
  add_poly(sums, pf, true, true);
  sums->add_option("--v", v, "Laurent polynomial v")->capture_default_str();
  sums->add_option("--family", family, "additive | multi")->capture_default_str()->check(CLI::IsMember({"additive", "multi"}));
  sums->add_option("--exponents", exponents, "exponents m_1..m_k of the multi-parameter family")->delimiter(',');
  sums->add_option("--samples", count, "multi family: draw this many random tuples instead of the full grid");
  sums->add_option("--set", descriptor, "additive family: keep only a in this condition set")->capture_default_str();
  sums->add_option("--format", format, "auto | csv | json")->capture_default_str();

  int r = 2;
  std::string mode = "dilate";
  auto* klsums = app.add_subcommand("klsums", "sums of hyper-Kloosterman sums over the roots");
  add_poly(klsums, pf, true, false);
  klsums->add_option("--rank,-r", r, "Kl_r")->capture_default_str()->check(CLI::Range(2, 8));
  klsums->add_option("--mode", mode, "dilate | translate")->capture_default_str()->check(CLI::IsMember({"dilate", "translate"}));
  klsums->add_option("--format", format)->capture_default_str();

  auto* mults = app.add_subcommand("mults", "multiplicative character sums t -> sum_r chi_t(v(r))");
  add_poly(mults, pf, true, false);
  mults->add_option("--v", v)->capture_default_str();
  mults->add_option("--format", format)->capture_default_str();

  std::string law = "sigma";
  std::size_t samples = 100000;
  auto* limit = app.add_subcommand("limit", "samples from a limit law");
  limit->add_option("--law", law, "sigma | sato-tate | su | usp | involution")
      ->capture_default_str()
      ->check(CLI::IsMember({"sigma", "sato-tate", "su", "usp", "involution"}));
  limit->add_option("--poly,-g", pf.poly, "polynomial (sigma, involution)");
  limit->add_option("--rank,-r", r, "matrix size for su, usp, involution")->capture_default_str();
  limit->add_option("--samples", samples)->capture_default_str();
  add_relation_request(limit, rel);

  int max_order = 4;
  auto* moments = app.add_subcommand("moments", "empirical against exact mixed moments on the full grid");
  add_poly(moments, pf, true, true);
  moments->add_option("--max-order", max_order, "all (m, n) with m + n up to this")->capture_default_str()->check(CLI::Range(1, 8));

  std::vector<std::string> alphas;
  std::vector<u64> prime_list;
  auto* weylcheck = app.add_subcommand("weylcheck", "exact full-grid Weyl sums against relation membership");
  add_poly(weylcheck, pf, false, true);
  weylcheck->add_option("--alpha", alphas, "comma-separated integer vectors (default: relation basis)");
  weylcheck->add_option("--primes", prime_list, "split primes to test")->delimiter(',');
  weylcheck->add_option("--lo", lo, "without --primes: search split primes from here")->capture_default_str();
  weylcheck->add_option("--hi", hi)->capture_default_str();
  weylcheck->add_option("--count", count, "without --primes: number of primes (default 25)");

  auto* condition = app.add_subcommand("condition", "Weyl sums and moments restricted to a condition set");
  add_poly(condition, pf, true, true);
  condition->add_option("--set", descriptor, "full | interval:RATIO | image:POLY | subgroup:ORDER")->capture_default_str();
  condition->add_option("--alpha", alphas, "vectors to test (default: basis plus small vectors)");

  u64 bound = 10000, a_param = 1;
  auto* sweep = app.add_subcommand("prime-sweep", "sigma(U_p(a)) over split primes p up to a bound");
  add_poly(sweep, pf, false, false);
  sweep->add_option("--bound,-T", bound)->capture_default_str();
  sweep->add_option("--a", a_param, "fixed parameter a")->capture_default_str();
  sweep->add_option("--v", v)->capture_default_str();

  std::string input, kind = "auto", title;
  double d_range = 3.0;
  int bins = 80;
  auto* figure = app.add_subcommand("figure", "800x800 SVG scatter or histogram of a CSV with re[,im] columns");
  figure->add_option("input", input, "CSV file")->required()->check(CLI::ExistingFile);
  figure->add_option("--d", d_range, "axis range is [-d-0.5, d+0.5]")->capture_default_str();
  figure->add_option("--kind", kind, "auto | scatter | histogram")
      ->capture_default_str()
      ->check(CLI::IsMember({"auto", "scatter", "histogram"}));
  figure->add_option("--bins", bins, "histogram bins")->capture_default_str()->check(CLI::Range(1, 1000));
  figure->add_option("--title", title);

  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) sub->configurable();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageExit;
  }

  const std::vector<CLI::App*> chosen = app.get_subcommands();
  CLI::App* cmd = chosen.front();
  for (CLI::App* other : chosen) {
    if (other != cmd) {
      std::cerr << "ultrashort: exactly one subcommand expected\n";
      return kUsageExit;
    }
  }

  try {
    if (cmd == primes) {
      const IntPoly g = IntPoly::parse(pf.poly);
      auto ps = find_split_primes(g, lo, hi);
      if (count > 0 && ps.size() > count) ps.resize(count);
      emit_json(glob, json{{"g", g.to_string()}, {"lo", lo}, {"hi", hi}, {"primes", ps}});
    } else if (cmd == roots) {
      const IntPoly g = IntPoly::parse(pf.poly);
      if (pf.prime != 0) {
        const RootList rl = hensel_roots(g, pf.prime, pf.exponent);
        emit_json(glob, json{{"g", g.to_string()},
                             {"q", rl.modulus.prime()},
                             {"n", rl.modulus.exponent()},
                             {"roots", rl.roots}});
      } else {
        const CertifiedBoxList boxes = certified_complex_roots(g, precision, glob.precision_cap);
        json list = json::array();
        for (const RootBox& b : boxes.boxes()) {
          list.push_back(json{{"re", b.re.to_double()}, {"im", b.im.to_double()}, {"radius", b.radius.to_double()}});
        }
        emit_json(glob, json{{"g", g.to_string()}, {"precision_bits", boxes.precision_bits()}, {"roots", list}});
      }
    } else if (cmd == relations) {
      const IntPoly g = IntPoly::parse(pf.poly);
      emit_json(glob, relation_module_to_json(compute_relations(glob, g, rel)));
    } else if (cmd == index) {
      const IntPoly g = IntPoly::parse(pf.poly);
      json j{{"g", g.to_string()}, {"ind", index_ind(g, relation_options(glob))}};
      if (dominant) j["dominant_root"] = dominant_root_holds(g, glob.precision_cap);
      emit_json(glob, j);
    } else if (cmd == sums) {
      const IntPoly g = IntPoly::parse(pf.poly);
      if (family == "additive") {
        SumGrid grid = additive_sum_grid(g, pf.prime, pf.exponent, LaurentPoly::parse(v), glob.threads);
        const ConditionDescriptor desc = ConditionDescriptor::parse(descriptor);
        if (desc.kind != ConditionDescriptor::Kind::Full) restrict_grid(grid, make_condition_set(pf.prime, pf.exponent, desc));
        emit_grid(glob, grid, format);
      } else {
        if (exponents.empty()) throw Error(ErrorKind::InvalidArgument, "multi family needs --exponents");
        const auto values = count > 0
                                ? multi_param_sum_samples(g, pf.prime, exponents, count, glob.seed, glob.threads)
                                : multi_param_sum_grid(g, pf.prime, exponents, glob.threads);
        emit(glob, samples_csv(values));
      }
    } else if (cmd == klsums) {
      const IntPoly g = IntPoly::parse(pf.poly);
      emit_grid(glob, trace_sum_grid(g, pf.prime, r, parse_trace_mode(mode), glob.threads), format);
    } else if (cmd == mults) {
      const IntPoly g = IntPoly::parse(pf.poly);
      emit_grid(glob, mult_char_sum_grid(g, pf.prime, LaurentPoly::parse(v), glob.threads), format);
    } else if (cmd == limit) {
      std::vector<cplx> values;
      if (law == "sato-tate") {
        for (double t : sato_tate_samples(samples, glob.seed, glob.threads)) values.emplace_back(t, 0.0);
      } else if (law == "su" || law == "usp") {
        values = haar_trace_samples(law == "su" ? CompactGroup::SU : CompactGroup::USp, r, samples, glob.seed,
                                    glob.threads)
                     .samples;
      } else {
        if (pf.poly.empty()) throw CLI::RequiredError("--poly");
        const IntPoly g = IntPoly::parse(pf.poly);
        if (law == "sigma") {
          values = sigma_samples(torus_subgroup(compute_relations(glob, g, rel)), samples, glob.seed, glob.threads).samples;
        } else {
          const auto pairing = involution_pairing(certified_complex_roots(g, 128, glob.precision_cap));
          values = involution_sum_samples(pairing, r, samples, glob.seed, glob.threads).samples;
        }
      }
      emit(glob, samples_csv(values));
    } else if (cmd == moments) {
      const IntPoly g = IntPoly::parse(pf.poly);
      const RelationModule R = compute_relations(glob, g, {});
      const SumGrid grid = additive_sum_grid(g, pf.prime, pf.exponent, LaurentPoly::parse("X"), glob.threads);
      const double size = static_cast<double>(grid.modulus.value());
      MomentTable table;
      for (int m = 0; m <= max_order; ++m) {
        for (int n = 0; m + n <= max_order; ++n) {
          if (m + n == 0) continue;
          const cplx emp = empirical_mixed_moment(grid, m, n);
          table[{m, n}] = json{{"exact", exact_mixed_moment(R, m, n)},
                               {"empirical_re", emp.real()},
                               {"empirical_im", emp.imag()},
                               {"scaled_count", emp.real() * size}};
        }
      }
      emit_json(glob, json{{"g", g.to_string()},
                           {"q", pf.prime},
                           {"n", pf.exponent},
                           {"moments", moment_table_to_json(table)}});
    } else if (cmd == weylcheck) {
      const IntPoly g = IntPoly::parse(pf.poly);
      const RelationModule R = compute_relations(glob, g, {});
      const auto tests = alphas.empty() ? basis_rows(R) : parse_vectors(alphas);
      if (tests.empty()) throw Error(ErrorKind::InvalidArgument, "no relations to test; pass --alpha");
      if (prime_list.empty()) {
        prime_list = find_split_primes(g, lo, hi);
        const std::size_t keep = count > 0 ? count : 25;
        if (prime_list.size() > keep) prime_list.resize(keep);
      }
      StationarityReport report;
      if (pf.exponent == 1) {
        report = stationarity_report(g, prime_list, tests, R);
      } else {
        for (u64 q : prime_list) {
          const RootList aligned = aligned_roots(g, q, pf.exponent, R);
          for (const auto& alpha : tests) {
            StationarityEntry e;
            e.q = q;
            e.alpha = alpha;
            e.weyl = weyl_residue(aligned, alpha) == 0 ? 1 : 0;
            e.in_relations = R.contains(std::span<const long>(alpha));
            report.entries.push_back(std::move(e));
          }
        }
      }
      json j = stationarity_to_json(report);
      bool all_ones = true;
      for (const auto& e : report.entries) all_ones = all_ones && e.weyl == 1;
      j["g"] = g.to_string();
      j["n"] = pf.exponent;
      j["all_ones"] = all_ones;
      emit_json(glob, j);
    } else if (cmd == condition) {
      const IntPoly g = IntPoly::parse(pf.poly);
      const RelationModule R = compute_relations(glob, g, {});
      std::vector<std::vector<long>> tests;
      if (!alphas.empty()) {
        tests = parse_vectors(alphas);
      } else {
        tests = basis_rows(R);
        const std::size_t d = R.ambient_rank;
        for (std::size_t i = 0; i < d; ++i) {
          std::vector<long> e(d, 0);
          e[i] = 1;
          tests.push_back(e);
          for (std::size_t k = i + 1; k < d; ++k) {
            std::vector<long> diff(d, 0);
            diff[i] = 1;
            diff[k] = -1;
            tests.push_back(diff);
          }
        }
      }
      const ConditionSet A = make_condition_set(pf.prime, pf.exponent, ConditionDescriptor::parse(descriptor));
      emit_json(glob, conditioning_to_json(conditioning_experiment(g, pf.prime, pf.exponent, A, tests, R), g.to_string()));
    } else if (cmd == sweep) {
      const IntPoly g = IntPoly::parse(pf.poly);
      const LaurentPoly vv = LaurentPoly::parse(v);
      std::ostringstream os;
      os << "p,re,im\n" << std::setprecision(17);
      for (u64 p : find_split_primes(g, 2, bound)) {
        const auto residues = value_residues(g, p, 1, vv);
        cplx s = 0;
        for (u64 x : residues) s += unit_root(mul_mod(a_param % p, x, p), p);
        os << p << "," << s.real() << "," << s.imag() << "\n";
      }
      emit(glob, os.str());
    } else if (cmd == figure) {
      std::ifstream in(input);
      const std::vector<cplx> values = read_values_csv(in);
      bool real = true;
      for (const cplx& z : values) real = real && std::abs(z.imag()) < 1e-12;
      const bool histogram = kind == "histogram" || (kind == "auto" && real);
      const std::string label = title.empty() ? std::filesystem::path(input).filename().string() : title;
      std::string svg;
      if (histogram) {
        std::vector<double> xs;
        xs.reserve(values.size());
        for (const cplx& z : values) xs.push_back(z.real());
        svg = histogram_svg(xs, d_range, label, bins);
      } else {
        svg = scatter_svg(values, d_range, label);
      }
      Globals to_file = glob;
      if (to_file.out.empty()) to_file.out = default_svg_path(input);
      emit(to_file, svg);
      std::cerr << "figure: wrote " << to_file.out << " (" << values.size() << " points)\n";
    }
  } catch (const Error& e) {
    std::cerr << "ultrashort: " << e.what() << "\n";
    return kDomainExit;
  } catch (const CLI::Error& e) {
    std::cerr << "ultrashort: " << e.what() << "\n";
    return kUsageExit;
  } catch (const std::exception& e) {
    std::cerr << "ultrashort: " << e.what() << "\n";
    return kDomainExit;
  }
  return 0;
}
