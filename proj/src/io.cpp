#include "ultrashort/io.hpp"

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "ultrashort/error.hpp"

namespace ultrashort {
namespace {

constexpr int kCanvas = 800;

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

json basis_json(const IntMatrix& basis) {
  json rows = json::array();
  for (std::size_t r = 0; r < basis.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < basis.cols(); ++c) {
      const mpz_class& x = basis(r, c);
      if (!x.fits_slong_p()) throw Error(ErrorKind::TooLarge, "basis entry does not fit in 64 bits");
      row.push_back(x.get_si());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string svg_header(std::size_t samples, const std::string& title) {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kCanvas << "\" height=\"" << kCanvas
     << "\" viewBox=\"0 0 " << kCanvas << ' ' << kCanvas << "\">\n"
     << "<!-- samples: " << samples << " -->\n"
     << "<title>";
  for (char c : title) {
    switch (c) {
      case '<': os << "&lt;"; break;
      case '>': os << "&gt;"; break;
      case '&': os << "&amp;"; break;
      default: os << c;
    }
  }
  os << "</title>\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  return os.str();
}

}  // namespace

json relation_module_to_json(const RelationModule& module) {
  return json{{"d", module.ambient_rank},
              {"basis", basis_json(module.basis)},
              {"precision_bits", module.certificate.precision_bits},
              {"kind", std::string(relation_kind_name(module.kind))}};
}

RelationModule relation_module_from_json(const json& j) {
  try {
    if (!j.is_object() || j.size() != 4) throw Error(ErrorKind::ParseError, "relation module needs exactly 4 fields");
    RelationModule m;
    m.ambient_rank = j.at("d").get<std::size_t>();
    m.kind = parse_relation_kind(j.at("kind").get<std::string>());
    m.certificate.precision_bits = j.at("precision_bits").get<int>();
    std::vector<std::vector<long>> rows = j.at("basis").get<std::vector<std::vector<long>>>();
    for (const auto& row : rows) {
      if (row.size() != m.ambient_rank) throw Error(ErrorKind::ParseError, "basis row has the wrong length");
    }
    m.basis = IntMatrix::from_rows(rows, m.ambient_rank);
    if (!(hermite_normal_form(m.basis) == m.basis)) throw Error(ErrorKind::ParseError, "basis is not in HNF");
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

void write_sum_grid_csv(std::ostream& out, const SumGrid& grid) {
  out << "a,re,im\n";
  for (std::size_t k = 0; k < grid.values.size(); ++k) {
    out << grid.params[k] << ',' << fmt(grid.values[k].real()) << ',' << fmt(grid.values[k].imag()) << '\n';
  }
}

json sum_grid_to_json(const SumGrid& grid) {
  json meta{{"g", grid.meta.g},
            {"q", grid.modulus.prime()},
            {"n", grid.modulus.exponent()},
            {"family", grid.meta.family},
            {"excluded", grid.excluded}};
  if (grid.meta.v) meta["v"] = *grid.meta.v;
  if (grid.meta.r) meta["r"] = *grid.meta.r;
  if (grid.meta.mode) meta["mode"] = std::string(trace_mode_name(*grid.meta.mode));
  json values = json::array();
  for (std::size_t k = 0; k < grid.values.size(); ++k) {
    values.push_back(json::array({grid.params[k], grid.values[k].real(), grid.values[k].imag()}));
  }
  return json{{"meta", meta}, {"values", values}};
}

void write_samples_csv(std::ostream& out, std::span<const cplx> samples) {
  out << "re,im\n";
  for (const cplx& z : samples) out << fmt(z.real()) << ',' << fmt(z.imag()) << '\n';
}

std::vector<cplx> read_values_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::ParseError, "empty CSV");
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  int re_col = -1, im_col = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "re") re_col = static_cast<int>(i);
    if (header[i] == "im") im_col = static_cast<int>(i);
  }
  if (re_col < 0) throw Error(ErrorKind::ParseError, "CSV header lacks a 're' column");
  std::vector<cplx> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != header.size()) throw Error(ErrorKind::ParseError, "ragged CSV row: " + line);
    try {
      out.emplace_back(std::stod(cells[re_col]), im_col >= 0 ? std::stod(cells[im_col]) : 0.0);
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::ParseError, "non-numeric CSV cell in: " + line);
    }
  }
  return out;
}

json moment_table_to_json(const MomentTable& table) {
  json out = json::object();
  for (const auto& [key, value] : table) {
    out["(" + std::to_string(key.first) + "," + std::to_string(key.second) + ")"] = value;
  }
  return out;
}

json stationarity_to_json(const StationarityReport& report) {
  json rows = json::array();
  for (const auto& e : report.entries) {
    rows.push_back(json{{"q", e.q},
                        {"alpha", e.alpha},
                        {"weyl", e.weyl},
                        {"in_Rg", e.in_relations},
                        {"disagreement", e.disagreement()}});
  }
  return json{{"entries", rows}, {"disagreements", report.disagreements()}};
}

json conditioning_to_json(const ConditioningReport& report, const std::string& poly) {
  json weyl = json::array();
  for (const auto& w : report.weyl) {
    weyl.push_back(
        json{{"alpha", w.alpha}, {"value_re", w.value.real()}, {"value_im", w.value.imag()}, {"in_Rg", w.in_relations}});
  }
  return json{{"inputs",
               {{"g", poly}, {"q", report.q}, {"n", report.n}, {"set", report.descriptor}, {"size", report.set_size}}},
              {"uniformity_metric", report.uniformity},
              {"weyl", weyl},
              {"moments",
               {{"first_re", report.first_moment.real()},
                {"first_im", report.first_moment.imag()},
                {"second", report.second_moment}}}};
}

std::string scatter_svg(std::span<const cplx> values, double d, const std::string& title) {
  const double lim = d + 0.5;
  auto px = [&](double x) { return (x + lim) / (2.0 * lim) * kCanvas; };
  auto py = [&](double y) { return (lim - y) / (2.0 * lim) * kCanvas; };
  std::ostringstream os;
  os << svg_header(values.size(), title);
  os << "<line x1=\"0\" y1=\"" << py(0) << "\" x2=\"" << kCanvas << "\" y2=\"" << py(0)
     << "\" stroke=\"#bbb\" stroke-width=\"1\"/>\n";
  os << "<line x1=\"" << px(0) << "\" y1=\"0\" x2=\"" << px(0) << "\" y2=\"" << kCanvas
     << "\" stroke=\"#bbb\" stroke-width=\"1\"/>\n";
  os << "<g fill=\"black\" fill-opacity=\"0.3\">\n";
  os << std::fixed << std::setprecision(2);
  for (const cplx& z : values) os << "<circle cx=\"" << px(z.real()) << "\" cy=\"" << py(z.imag()) << "\" r=\"1\"/>\n";
  os << "</g>\n</svg>\n";
  return os.str();
}

std::string histogram_svg(std::span<const double> values, double d, const std::string& title, int bins) {
  const double lim = d + 0.5;
  std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
  for (double x : values) {
    int k = static_cast<int>(std::floor((x + lim) / (2.0 * lim) * bins));
    counts[static_cast<std::size_t>(std::clamp(k, 0, bins - 1))]++;
  }
  const std::size_t peak = std::max<std::size_t>(1, *std::max_element(counts.begin(), counts.end()));
  const double width = static_cast<double>(kCanvas) / bins;
  std::ostringstream os;
  os << svg_header(values.size(), title);
  os << "<g fill=\"steelblue\" fill-opacity=\"0.8\">\n";
  os << std::fixed << std::setprecision(2);
  for (int k = 0; k < bins; ++k) {
    const double h = 0.95 * kCanvas * static_cast<double>(counts[k]) / static_cast<double>(peak);
    os << "<rect x=\"" << k * width << "\" y=\"" << kCanvas - h << "\" width=\"" << width << "\" height=\"" << h
       << "\"/>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

std::filesystem::path RelationCache::default_directory() {
  if (const char* env = std::getenv("ULTRASHORT_CACHE_DIR"); env && *env) return env;
  return ".ultrashort-cache";
}

std::string RelationCache::make_key(const IntPoly& g, std::string_view family, std::string_view detail,
                                    const RelationOptions& options) {
  std::ostringstream os;
  os << "g=" << g.coefficient_string() << ";family=" << family << ";detail=" << detail
     << ";cap=" << options.coefficient_cap << ";degree_bound=" << options.degree_bound.value_or(0)
     << ";precision_cap=" << options.precision_cap << ";stable=" << options.stable_escalations
     << ";bits=" << options.initial_bits;
  return os.str();
}

std::filesystem::path RelationCache::path_for(const std::string& key) const {
  std::ostringstream name;
  name << std::hex << std::setw(16) << std::setfill('0') << fnv1a(key) << ".json";
  return dir_ / name.str();
}

std::optional<RelationModule> RelationCache::get(const std::string& key) const {
  const auto path = path_for(key);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    const json j = json::parse(in);
    if (j.at("key").get<std::string>() != key) return std::nullopt;
    return relation_module_from_json(j.at("module"));
  } catch (const std::exception& e) {
    std::cerr << "warning: ignoring corrupt cache entry " << path.string() << " (" << e.what() << ")\n";
    return std::nullopt;
  }
}

void RelationCache::put(const std::string& key, const RelationModule& module) const {
  std::filesystem::create_directories(dir_);
  const auto path = path_for(key);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    out << json{{"key", key}, {"module", relation_module_to_json(module)}}.dump() << '\n';
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace ultrashort
