#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "ultrashort/arith.hpp"
#include "ultrashort/complex_roots.hpp"
#include "ultrashort/error.hpp"
#include "ultrashort/intmatrix.hpp"
#include "ultrashort/io.hpp"
#include "ultrashort/limitlaw.hpp"
#include "ultrashort/relations.hpp"
#include "ultrashort/stats.hpp"
#include "ultrashort/sums.hpp"

namespace py = pybind11;
using namespace ultrashort;

namespace {

py::int_ to_py(const mpz_class& z) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(z.get_str().c_str(), nullptr, 10));
}

mpz_class from_py(const py::handle& h) { return mpz_class(py::str(h).cast<std::string>()); }

py::list matrix_to_py(const IntMatrix& m) {
  py::list rows;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    py::list row;
    for (std::size_t c = 0; c < m.cols(); ++c) row.append(to_py(m(r, c)));
    rows.append(row);
  }
  return rows;
}

IntMatrix matrix_from_py(const py::sequence& rows) {
  std::vector<std::vector<mpz_class>> out;
  std::size_t cols = 0;
  for (const auto& row : rows) {
    std::vector<mpz_class> r;
    for (const auto& x : row.cast<py::sequence>()) r.push_back(from_py(x));
    cols = r.size();
    out.push_back(std::move(r));
  }
  return IntMatrix::from_rows(out, cols);
}

template <class T>
py::array_t<T> to_array(const std::vector<T>& v) {
  py::array_t<T> a(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), a.mutable_data());
  return a;
}

RelationOptions options(long cap, long degree_bound, int precision_cap) {
  RelationOptions o;
  o.coefficient_cap = cap;
  if (degree_bound > 0) o.degree_bound = degree_bound;
  o.precision_cap = precision_cap;
  return o;
}

py::tuple grid_to_py(const SumGrid& g) {
  std::vector<std::uint64_t> params(g.params.begin(), g.params.end());
  return py::make_tuple(to_array(params), to_array(g.values));
}

IntPoly P(const std::string& s) { return IntPoly::parse(s); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Ultra-short sums over roots of integer polynomials modulo primes";

  // The message starts with the error kind; the package exposes it as .kind.
  py::register_exception<Error>(m, "UltrashortError", PyExc_ValueError);

  // arith
  m.def("discriminant", [](const std::string& g) { return to_py(discriminant(P(g))); }, py::arg("poly"));
  m.def("find_split_primes", [](const std::string& g, u64 lo, u64 hi) { return find_split_primes(P(g), lo, hi); },
        py::arg("poly"), py::arg("lo"), py::arg("hi"));
  m.def("roots_mod_prime", [](const std::string& g, u64 q) { return roots_mod_prime(P(g), q).roots; }, py::arg("poly"),
        py::arg("q"));
  m.def("hensel_roots", [](const std::string& g, u64 q, unsigned n) { return hensel_roots(P(g), q, n).roots; },
        py::arg("poly"), py::arg("q"), py::arg("n"));
  m.def("multiplicative_generator", &multiplicative_generator, py::arg("q"));
  m.def(
      "smith_normal_form",
      [](const py::sequence& a) {
        const SnfDecomposition s = smith_normal_form(matrix_from_py(a));
        return py::make_tuple(matrix_to_py(s.U), matrix_to_py(s.S), matrix_to_py(s.V));
      },
      py::arg("matrix"), "Returns (U, S, V) with U A V = S.");

  // relations
  m.def(
      "certified_complex_roots",
      [](const std::string& g, int bits) { return certified_complex_roots(P(g), bits).approximations(); },
      py::arg("poly"), py::arg("precision_bits") = 64, "Centers of the certified isolating discs, in canonical order.");

  py::class_<RelationModule>(m, "RelationModule")
      .def_readonly("d", &RelationModule::ambient_rank)
      .def_property_readonly("rank", &RelationModule::rank)
      .def_property_readonly("basis", [](const RelationModule& r) { return matrix_to_py(r.basis); })
      .def_property_readonly("kind", [](const RelationModule& r) { return std::string(relation_kind_name(r.kind)); })
      .def_property_readonly("precision_bits", [](const RelationModule& r) { return r.certificate.precision_bits; })
      .def("contains", [](const RelationModule& r, const std::vector<long>& alpha) { return r.contains(std::span<const long>(alpha)); })
      .def("to_json", [](const RelationModule& r) { return relation_module_to_json(r).dump(); })
      .def_static("from_json", [](const std::string& s) { return relation_module_from_json(json::parse(s)); })
      .def("__repr__", [](const RelationModule& r) {
        return "<RelationModule " + std::string(relation_kind_name(r.kind)) + " d=" + std::to_string(r.ambient_rank) +
               " rank=" + std::to_string(r.rank()) + ">";
      });

#define RELATION_ARGS py::arg("coefficient_cap") = 64, py::arg("degree_bound") = 0, \
                      py::arg("precision_cap") = kDefaultPrecisionCap

  m.def("additive_relations",
        [](const std::string& g, long cap, long db, int pc) { return additive_relations(P(g), options(cap, db, pc)); },
        py::arg("poly"), RELATION_ARGS);
  m.def(
      "value_relations",
      [](const std::string& g, const std::string& v, long cap, long db, int pc) {
        return value_relations(P(g), LaurentPoly::parse(v), options(cap, db, pc));
      },
      py::arg("poly"), py::arg("v"), RELATION_ARGS);
  m.def(
      "joint_power_relations",
      [](const std::string& g, const std::vector<int>& e, long cap, long db, int pc) {
        return joint_power_relations(P(g), e, options(cap, db, pc));
      },
      py::arg("poly"), py::arg("exponents"), RELATION_ARGS);
  m.def(
      "multiplicative_relations",
      [](const std::string& g, const std::string& v, long cap, long db, int pc) {
        return multiplicative_relations(P(g), LaurentPoly::parse(v), options(cap, db, pc));
      },
      py::arg("poly"), py::arg("v") = "X", RELATION_ARGS);
  m.def("index_ind", [](const std::string& g) { return index_ind(P(g)); }, py::arg("poly"));
  m.def("dominant_root_holds", [](const std::string& g) { return dominant_root_holds(P(g)); }, py::arg("poly"));

#undef RELATION_ARGS

  // sums; grids come back as (params, values) numpy arrays
  m.def(
      "additive_sum_grid",
      [](const std::string& g, u64 q, unsigned n, const std::string& v, unsigned threads) {
        return grid_to_py(additive_sum_grid(P(g), q, n, LaurentPoly::parse(v), threads));
      },
      py::arg("poly"), py::arg("q"), py::arg("n") = 1, py::arg("v") = "X", py::arg("threads") = 1);
  m.def(
      "mult_char_sum_grid",
      [](const std::string& g, u64 q, const std::string& v, unsigned threads) {
        return grid_to_py(mult_char_sum_grid(P(g), q, LaurentPoly::parse(v), threads));
      },
      py::arg("poly"), py::arg("q"), py::arg("v") = "X", py::arg("threads") = 1);
  m.def(
      "trace_sum_grid",
      [](const std::string& g, u64 q, int r, const std::string& mode, unsigned threads) {
        return grid_to_py(trace_sum_grid(P(g), q, r, parse_trace_mode(mode), threads));
      },
      py::arg("poly"), py::arg("q"), py::arg("r") = 2, py::arg("mode") = "dilate", py::arg("threads") = 1);
  m.def(
      "multi_param_sum_samples",
      [](const std::string& g, u64 q, const std::vector<int>& e, std::size_t count, u64 seed, unsigned threads) {
        return to_array(multi_param_sum_samples(P(g), q, e, count, seed, threads));
      },
      py::arg("poly"), py::arg("q"), py::arg("exponents"), py::arg("count"), py::arg("seed") = 1,
      py::arg("threads") = 1);
  m.def("hyper_kloosterman", &hyper_kloosterman, py::arg("r"), py::arg("a"), py::arg("q"));
  m.def(
      "weyl_sum_full",
      [](const std::string& g, u64 q, unsigned n, const std::vector<long>& alpha) {
        return weyl_sum_full(P(g), q, n, alpha);
      },
      py::arg("poly"), py::arg("q"), py::arg("n"), py::arg("alpha"));
  m.def(
      "weyl_sum",
      [](const std::string& g, u64 q, unsigned n, const std::vector<long>& alpha, const std::string& set) {
        return weyl_sum(P(g), q, n, alpha, make_condition_set(q, n, ConditionDescriptor::parse(set)));
      },
      py::arg("poly"), py::arg("q"), py::arg("n"), py::arg("alpha"), py::arg("condition") = "full");
  m.def(
      "uniformity_metric",
      [](u64 q, unsigned n, const std::string& set) {
        return uniformity_metric(make_condition_set(q, n, ConditionDescriptor::parse(set)));
      },
      py::arg("q"), py::arg("n"), py::arg("condition"));

  // limit laws
  m.def(
      "sigma_samples",
      [](const RelationModule& R, std::size_t count, u64 seed, unsigned threads) {
        return to_array(sigma_samples(torus_subgroup(R), count, seed, threads).samples);
      },
      py::arg("relations"), py::arg("count"), py::arg("seed") = 1, py::arg("threads") = 1);
  m.def("exact_mixed_moment", &exact_mixed_moment, py::arg("relations"), py::arg("m"), py::arg("n"));
  m.def(
      "sato_tate_samples",
      [](std::size_t count, u64 seed, unsigned threads) { return to_array(sato_tate_samples(count, seed, threads)); },
      py::arg("count"), py::arg("seed") = 1, py::arg("threads") = 1);
  m.def(
      "haar_trace_samples",
      [](const std::string& group, int r, std::size_t count, u64 seed, unsigned threads) {
        if (group != "SU" && group != "USp") throw Error(ErrorKind::InvalidArgument, "group must be 'SU' or 'USp'");
        const CompactGroup grp = group == "SU" ? CompactGroup::SU : CompactGroup::USp;
        return to_array(haar_trace_samples(grp, r, count, seed, threads).samples);
      },
      py::arg("group"), py::arg("r"), py::arg("count"), py::arg("seed") = 1, py::arg("threads") = 1);

  // statistics
  m.def(
      "empirical_mixed_moment",
      [](const std::vector<cplx>& values, int mm, int n) { return empirical_mixed_moment(values, mm, n); },
      py::arg("values"), py::arg("m"), py::arg("n"));
  m.def(
      "ks_distance", [](const std::vector<double>& a, const std::vector<double>& b) { return ks_distance(a, b); },
      py::arg("a"), py::arg("b"));
  m.def(
      "binned_l1_2d",
      [](const std::vector<cplx>& a, const std::vector<cplx>& b, int bins, double extent) {
        return binned_l1_2d(a, b, bins, extent);
      },
      py::arg("a"), py::arg("b"), py::arg("bins"), py::arg("extent"));
}
