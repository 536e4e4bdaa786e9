#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "klcalc/cells.hpp"
#include "klcalc/hecke.hpp"
#include "klcalc/homology.hpp"
#include "klcalc/klpoly.hpp"
#include "klcalc/poset.hpp"
#include "klcalc/rsk.hpp"

namespace py = pybind11;

using coxeter::CoxeterSystem;
using coxeter::ElementIndex;
using coxeter::GeneratorSet;
using coxeter::Word;

namespace {

Word to_internal(const CoxeterSystem& W, const std::vector<int>& labels) {
  Word w;
  w.reserve(labels.size());
  for (int label : labels) {
    if (label < 1 || label > W.rank())
      throw std::invalid_argument("generator label out of range: " + std::to_string(label));
    w.push_back(label - 1);
  }
  return w;
}

std::vector<int> to_labels(const Word& w) {
  std::vector<int> out;
  out.reserve(w.size());
  for (auto s : w) out.push_back(s + 1);
  return out;
}

GeneratorSet to_mask(const CoxeterSystem& W, const std::vector<int>& labels) {
  return coxeter::generator_set(labels, W.rank());
}

std::vector<std::int64_t> poly_coeffs(const polynomials::IntPolynomial& p) {
  std::vector<std::int64_t> out;
  for (int k = 0; k <= p.degree(); ++k) {
    const auto& c = p.coeff(k);
    if (c > std::numeric_limits<std::int64_t>::max() ||
        c < std::numeric_limits<std::int64_t>::min())
      throw std::overflow_error("coefficient does not fit in int64");
    out.push_back(static_cast<std::int64_t>(c));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_klcalc, m) {
  m.doc() = "Kazhdan-Lusztig combinatorics and homological dimension tables for finite "
            "Weyl groups";

  py::class_<CoxeterSystem, std::shared_ptr<CoxeterSystem>>(m, "CoxeterSystem")
      .def_static(
          "build",
          [](const std::string& type, int rank) {
            if (type.size() != 1) throw std::invalid_argument("type must be A, B or D");
            return std::make_shared<CoxeterSystem>(CoxeterSystem::build(type[0], rank));
          },
          py::arg("type"), py::arg("rank"))
      .def_static(
          "from_coxeter_matrix",
          [](const std::vector<std::vector<int>>& mat) {
            return std::make_shared<CoxeterSystem>(CoxeterSystem::from_coxeter_matrix(mat));
          },
          py::arg("matrix"))
      .def_property_readonly("rank", &CoxeterSystem::rank)
      .def_property_readonly("order", &CoxeterSystem::size)
      .def_property_readonly("name", &CoxeterSystem::name)
      .def_property_readonly("identity", &CoxeterSystem::identity)
      .def_property_readonly("longest_element", &CoxeterSystem::longest_element)
      .def("length", &CoxeterSystem::length, py::arg("w"))
      .def("word", [](const CoxeterSystem& W, ElementIndex w) {
        return to_labels(W.word_vector(w));
      })
      .def("word_string",
           [](const CoxeterSystem& W, ElementIndex w) {
             return coxeter::word_to_string(W.word_vector(w));
           })
      .def("from_word",
           [](const CoxeterSystem& W, const std::vector<int>& labels) {
             return W.from_word(to_internal(W, labels));
           })
      .def("multiply", &CoxeterSystem::multiply, py::arg("x"), py::arg("y"))
      .def("inverse", &CoxeterSystem::inverse, py::arg("w"))
      .def("bruhat_leq", &CoxeterSystem::bruhat_leq, py::arg("x"), py::arg("y"))
      .def("support",
           [](const CoxeterSystem& W, ElementIndex w) {
             return coxeter::generator_labels(W.support(w));
           })
      .def("support_size", &CoxeterSystem::support_size, py::arg("w"))
      .def("left_descents",
           [](const CoxeterSystem& W, ElementIndex w) {
             return coxeter::generator_labels(W.left_descents(w));
           })
      .def("right_descents",
           [](const CoxeterSystem& W, ElementIndex w) {
             return coxeter::generator_labels(W.right_descents(w));
           })
      .def("parabolic_longest",
           [](const CoxeterSystem& W, const std::vector<int>& S) {
             return W.parabolic_longest(to_mask(W, S));
           })
      .def("min_coset_reps",
           [](const CoxeterSystem& W, const std::vector<int>& S) {
             return W.min_coset_reps(to_mask(W, S));
           })
      .def("reflections", &CoxeterSystem::reflections)
      .def("positive_roots", &CoxeterSystem::positive_roots)
      .def("__len__", &CoxeterSystem::size)
      .def("__repr__", [](const CoxeterSystem& W) {
        return "<CoxeterSystem " + W.name() + ", order " + std::to_string(W.size()) + ">";
      });

  py::class_<klpoly::KLTable>(m, "KLTable")
      .def(py::init([](std::shared_ptr<CoxeterSystem> W, int threads) {
             klpoly::KLTable t(*W);
             t.build(threads);
             return t;
           }),
           py::arg("system"), py::arg("threads") = 1, py::keep_alive<1, 2>())
      .def("polynomial",
           [](const klpoly::KLTable& t, ElementIndex y, ElementIndex w) {
             return poly_coeffs(t.polynomial(y, w));
           })
      .def("polynomial_string",
           [](const klpoly::KLTable& t, ElementIndex y, ElementIndex w) {
             return t.polynomial(y, w).to_string();
           })
      .def("mu", &klpoly::KLTable::mu, py::arg("y"), py::arg("w"))
      .def("delta", &klpoly::KLTable::delta, py::arg("w"));

  m.def(
      "kl_via_bar_invariance",
      [](std::shared_ptr<CoxeterSystem> W, ElementIndex y, ElementIndex w, std::size_t cap) {
        return poly_coeffs(klpoly::BarOracle(*W, cap).kl_polynomial(y, w));
      },
      py::arg("system"), py::arg("y"), py::arg("w"),
      py::arg("cap") = klpoly::kDefaultOracleCap);

  py::class_<cells::CellDecomposition>(m, "CellDecomposition")
      .def_property_readonly("cell_count", &cells::CellDecomposition::cell_count)
      .def("cell_of", &cells::CellDecomposition::cell_of, py::arg("w"))
      .def("members", &cells::CellDecomposition::members, py::arg("cell"))
      .def("preorder_leq", &cells::CellDecomposition::preorder_leq, py::arg("c"),
           py::arg("d"))
      .def("a_value", &cells::CellDecomposition::a_value, py::arg("cell"))
      .def("a_function", &cells::CellDecomposition::a_function, py::arg("w"));

  m.def(
      "cell_decomposition",
      [](const klpoly::KLTable& table, const std::string& side) {
        cells::Side s = cells::Side::TwoSided;
        if (side == "left")
          s = cells::Side::Left;
        else if (side == "right")
          s = cells::Side::Right;
        else if (side != "twosided")
          throw std::invalid_argument("side must be left, right or twosided");
        return cells::CellDecomposition::build(table, s);
      },
      py::arg("table"), py::arg("side") = "twosided", py::keep_alive<0, 1>());

  m.def("theta_composition_right", &hecke::theta_composition_right, py::arg("table"),
        py::arg("w"), py::arg("s"));
  m.def("theta_composition_left", &hecke::theta_composition_left, py::arg("table"),
        py::arg("w"), py::arg("s"));

  m.def("one_line", &rsk::one_line, py::arg("system"), py::arg("w"));
  m.def("element_of_one_line", &rsk::element_of_one_line, py::arg("system"),
        py::arg("perm"));
  m.def(
      "rs_pair",
      [](const CoxeterSystem& W, ElementIndex w) {
        const auto pair = rsk::rs_pair(W, w);
        return py::make_tuple(pair.p.rows, pair.q.rows, pair.shape);
      },
      py::arg("system"), py::arg("w"));
  m.def("rs_shape", &rsk::rs_shape, py::arg("system"), py::arg("w"));
  m.def("conjugate_partition", &rsk::conjugate, py::arg("partition"));
  m.def(
      "check_w0S_shape",
      [](const CoxeterSystem& W, const std::vector<int>& S) {
        return rsk::check_w0S_shape(W, to_mask(W, S));
      },
      py::arg("system"), py::arg("generators"));

  m.def(
      "mobius",
      [](const CoxeterSystem& W, ElementIndex x, ElementIndex y) {
        return poset::MobiusTable(W).mobius(x, y);
      },
      py::arg("system"), py::arg("x"), py::arg("y"));
  m.def("verify_verma_mobius", &poset::verify_verma_mobius, py::arg("system"));
  m.def("incidence_dimension", &poset::incidence_dimension, py::arg("system"));
  m.def("end_delta_quiver", &poset::end_delta_quiver, py::arg("system"));

  m.def("pd_standard", &homology::pd_standard, py::arg("system"), py::arg("w"));
  m.def("pd_simple", &homology::pd_simple, py::arg("system"), py::arg("w"));
  m.def("pd_costandard", &homology::pd_costandard, py::arg("system"), py::arg("w"));
  m.def("global_dimension", &homology::global_dimension, py::arg("system"));
  m.def("pd_shuffled", &homology::pd_shuffled, py::arg("system"), py::arg("x"),
        py::arg("y"));
  m.def(
      "pd_tilting",
      [](const cells::CellDecomposition& d, ElementIndex w) {
        const auto r = homology::pd_tilting(d, w);
        return py::make_tuple(r.value, homology::status_name(r.status));
      },
      py::arg("two_sided"), py::arg("w"));
  m.def(
      "pd_injective",
      [](const cells::CellDecomposition& d, ElementIndex w) {
        const auto r = homology::pd_injective(d, w);
        return py::make_tuple(r.value, homology::status_name(r.status));
      },
      py::arg("two_sided"), py::arg("w"));
  m.def("linear_ext_dim", &homology::linear_ext_dim, py::arg("system"), py::arg("x"),
        py::arg("y"), py::arg("i"));
  m.def(
      "ungraded_ext_dim",
      [](const CoxeterSystem& W, ElementIndex x, ElementIndex y) {
        const auto r = homology::ungraded_ext_dim(W, x, y);
        return py::make_tuple(r.dim, r.degree);
      },
      py::arg("system"), py::arg("x"), py::arg("y"));
  m.def("ext1_to_dominant", &homology::ext1_to_dominant, py::arg("system"), py::arg("x"),
        py::arg("j"));
  m.def(
      "duality_image",
      [](const CoxeterSystem& W, ElementIndex x, ElementIndex y, int i, int j) {
        const auto r = homology::duality_image(W, {x, y, i, j});
        return py::make_tuple(r.x, r.y, r.i, r.j);
      },
      py::arg("system"), py::arg("x"), py::arg("y"), py::arg("i"), py::arg("j"));
  m.def("ext_std_simple_dim", &homology::ext_std_simple_dim, py::arg("table"), py::arg("x"),
        py::arg("y"), py::arg("i"));

  py::class_<homology::SimpleSimpleOracle>(m, "SimpleSimpleOracle")
      .def(py::init([](const klpoly::KLTable& t) { return homology::SimpleSimpleOracle(t); }),
           py::arg("table"), py::keep_alive<1, 2>())
      .def_property_readonly("validated", &homology::SimpleSimpleOracle::validated)
      .def("dim", &homology::SimpleSimpleOracle::dim, py::arg("x"), py::arg("y"),
           py::arg("n"));

  m.attr("__version__") = "0.1.0";
}
