#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "fkdet/approx_harness.hpp"
#include "fkdet/cli.hpp"
#include "fkdet/errors.hpp"
#include "fkdet/fk_finite.hpp"
#include "fkdet/fk_zd.hpp"
#include "fkdet/lehmer_search.hpp"
#include "fkdet/mahler.hpp"

namespace py = pybind11;
using namespace fkdet;

namespace {

using TextMatrix = std::vector<std::vector<std::string>>;

py::dict radical_dict(const ExactRadical& r) {
  py::dict d;
  d["base"] = to_string(r.base());
  d["exponent"] = to_string(r.exponent());
  d["text"] = r.to_string();
  d["value"] = r.value();
  return d;
}

py::dict value_dict(const FKValue& v) {
  py::dict d;
  d["value"] = v.value;
  d["log_value"] = v.log_value;
  d["method"] = v.method;
  d["error_estimate"] = v.error_estimate;
  d["exact"] = v.exact ? py::object(radical_dict(*v.exact)) : py::object(py::none());
  return d;
}

/// Parses every entry with the largest rank seen among them.
LaurentMatrix laurent_matrix(const TextMatrix& rows, std::size_t rank) {
  if (rows.empty() || rows.front().empty()) throw DomainError("empty matrix");
  if (rank == 0) {
    rank = 1;
    for (const auto& r : rows)
      for (const auto& x : r) rank = std::max(rank, parse_polynomial(x).rank());
  }
  std::vector<std::vector<LaurentPolynomial>> out;
  for (const auto& r : rows) {
    out.emplace_back();
    for (const auto& x : r) out.back().push_back(parse_polynomial(x, rank));
  }
  return LaurentMatrix::from_rows(rank, out);
}

/// An int selects a cyclic group, a sequence of ints a product of cyclic groups.
GroupPtr group_from(const py::object& g) {
  if (py::isinstance<py::int_>(g)) return make_cyclic(g.cast<std::size_t>());
  const auto moduli = g.cast<std::vector<std::size_t>>();
  return make_abelian(moduli);
}

GroupRingMatrix group_matrix(const TextMatrix& rows, const GroupPtr& g) {
  if (rows.empty() || rows.front().empty()) throw DomainError("empty matrix");
  std::vector<std::vector<GroupRingElement>> out;
  for (const auto& r : rows) {
    out.emplace_back();
    for (const auto& x : r) out.back().push_back(parse_group_element(x, g));
  }
  return GroupRingMatrix::from_rows(g, out);
}

ZdOptions zd_options(const std::string& method, std::size_t grid) {
  ZdOptions o;
  o.method = parse_measure_method(method);
  if (o.method == MeasureMethod::jensen) o.method = MeasureMethod::boyd_lawton;
  o.grid = grid;
  return o;
}

py::dict mahler(const std::string& poly, std::size_t rank, const std::string& method,
                std::size_t grid) {
  const LaurentPolynomial p = parse_polynomial(poly, rank);
  MahlerValue v;
  if (p.rank() == 1 && (method == "auto" || method == "jensen")) {
    v = mahler_jensen(p);
  } else {
    const MeasureMethod m = method == "auto" ? MeasureMethod::boyd_lawton : parse_measure_method(method);
    if (m == MeasureMethod::quadrature) {
      v = log_mahler_quadrature(p, grid);
    } else if (m == MeasureMethod::boyd_lawton) {
      const auto schedule = default_boyd_lawton_schedule(p.rank());
      v = mahler_boyd_lawton(p, schedule);
    } else {
      v = mahler_jensen(p);
    }
  }
  py::dict d;
  d["polynomial"] = p.to_string();
  d["value"] = v.value;
  d["log_value"] = v.log_value;
  d["method"] = to_string(v.method);
  d["error_estimate"] = v.error_estimate;
  return d;
}

py::dict det_finite(const TextMatrix& rows, const py::object& group) {
  const GroupPtr g = group_from(group);
  const GroupRingMatrix a = group_matrix(rows, g);
  py::dict d = value_dict(fk_det_finite(a));
  d["vn_dim_kernel"] = to_string(vn_dim_kernel_finite(a));
  d["group_order"] = g->order();
  return d;
}

py::dict det_zd(const TextMatrix& rows, std::size_t rank, const std::string& method,
                std::size_t grid) {
  const LaurentMatrix a = laurent_matrix(rows, rank);
  const PipelineTrace t = fk_det_zd(a, zd_options(method, grid));
  py::dict d = value_dict(t.value);
  d["q"] = t.q;
  d["det_d1"] = t.det_d1.to_string();
  d["det_d2"] = t.det_d2.to_string();
  d["vn_dim_kernel"] = vn_dim_kernel_zd(a);
  return d;
}

py::dict lehmer_scan(const py::object& group, const std::vector<std::int64_t>& box,
                     const std::string& variant, std::int64_t coeff_bound, std::size_t rows,
                     std::size_t cols, std::uint64_t budget, std::size_t support_limit) {
  SearchSpace s;
  if (!box.empty()) {
    if (!group.is_none()) throw ConfigError("give either group or box, not both");
    s.kind = SearchGroup::zd;
    s.box = box;
  } else {
    s.group = group.is_none() ? make_cyclic(1) : group_from(group);
  }
  s.coeff_bound = coeff_bound;
  s.rows = rows;
  s.cols = cols;
  s.budget = budget;
  s.support_limit = support_limit;
  ScanReport r;
  {
    py::gil_scoped_release release;
    r = scan(s, parse_lehmer_variant(variant));
  }
  py::dict d;
  d["space"] = s.description();
  d["variant"] = to_string(r.variant);
  d["infimum"] = r.infimum ? py::object(value_dict(*r.infimum)) : py::object(py::none());
  d["witness"] = r.witness;
  d["count_enumerated"] = r.count_enumerated;
  d["count_examined"] = r.count_examined;
  d["count_det_one"] = r.count_det_one;
  d["count_non_injective"] = r.count_non_injective;
  d["budget_exceeded"] = r.budget_exceeded;
  return d;
}

py::dict approx_chain(const TextMatrix& rows, const std::string& chain, std::size_t rank) {
  const LaurentMatrix a = laurent_matrix(rows, rank);
  DetSequence s;
  {
    py::gil_scoped_release release;
    s = det_sequence(a, parse_chain(chain));
  }
  py::list stages;
  for (const StageValue& st : s.stages) {
    py::dict e = value_dict(st.value);
    e["moduli"] = st.moduli;
    e["vn_dim_kernel"] = to_string(st.vn_dim_kernel);
    stages.append(e);
  }
  py::dict d;
  d["stages"] = stages;
  d["limit_reference"] = value_dict(s.limit_reference);
  d["limsup_estimate"] = s.limsup_estimate;
  d["limsup_ok"] = s.limsup_ok;
  d["max_stage_value"] = s.max_stage_value;
  d["final_gap"] = s.final_gap;
  d["convergence"] = s.convergence;
  d["divisibility_chain"] = s.chain.is_divisibility_chain();
  d["csv"] = to_csv(s);
  return d;
}

py::list constants(const py::object& group) {
  py::list out;
  for (const ConstantEntry& e : exact_constants(*group_from(group))) {
    py::dict d;
    d["name"] = e.name;
    d["exact"] = e.exact;
    d["lower"] = radical_dict(e.lower);
    d["upper"] = radical_dict(e.upper);
    out.append(d);
  }
  return out;
}

py::tuple run_config(const py::dict& options) {
  RunConfig c;
  for (const auto& [key, value] : options) {
    const std::string k = key.cast<std::string>();
    if (k == "subcommand") c.subcommand = value.cast<std::string>();
    else if (k == "poly") c.poly = value.cast<std::string>();
    else if (k == "matrix") c.matrix = value.cast<std::string>();
    else if (k == "matrix_file") c.matrix_file = value.cast<std::string>();
    else if (k == "elem") c.elem = value.cast<std::string>();
    else if (k == "rank") c.rank = value.cast<std::size_t>();
    else if (k == "trivial") c.trivial = value.cast<bool>();
    else if (k == "cyclic") c.cyclic = value.cast<std::size_t>();
    else if (k == "abelian") c.abelian = value.cast<std::string>();
    else if (k == "group_file") c.group_file = value.cast<std::string>();
    else if (k == "method") c.method = value.cast<std::string>();
    else if (k == "grid") c.grid = value.cast<std::size_t>();
    else if (k == "schedule_count") c.schedule_count = value.cast<std::size_t>();
    else if (k == "min_k2") c.min_k2 = value.cast<std::int64_t>();
    else if (k == "via_specialization") c.via_specialization = value.cast<bool>();
    else if (k == "variant") c.variant = value.cast<std::string>();
    else if (k == "zd_box") c.zd_box = value.cast<std::string>();
    else if (k == "rows") c.rows = value.cast<std::size_t>();
    else if (k == "cols") c.cols = value.cast<std::size_t>();
    else if (k == "coeff_bound") c.coeff_bound = value.cast<std::int64_t>();
    else if (k == "support_limit") c.support_limit = value.cast<std::size_t>();
    else if (k == "budget") c.budget = value.cast<std::uint64_t>();
    else if (k == "one_threshold") c.one_threshold = value.cast<double>();
    else if (k == "survey") c.survey = value.cast<bool>();
    else if (k == "chain") c.chain = value.cast<std::string>();
    else if (k == "moduli") c.moduli = value.cast<std::string>();
    else if (k == "degree") c.degree = value.cast<std::size_t>();
    else if (k == "tolerance") c.tolerance = value.cast<double>();
    else if (k == "torsion") c.torsion = value.cast<std::int64_t>();
    else if (k == "format") c.format = value.cast<std::string>();
    else throw ConfigError("unknown option '" + k + "'");
  }
  RunResult r;
  {
    py::gil_scoped_release release;
    r = run(c);
  }
  return py::make_tuple(r.exit_code, r.output, r.error);
}

}  // namespace

PYBIND11_MODULE(_fkdet, m) {
  m.doc() = "Mahler measures and Fuglede-Kadison determinants over integral group rings.";
  m.attr("__version__") = FKDET_VERSION;

  auto domain = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", domain.ptr());
  py::register_exception<BudgetError>(m, "BudgetError", domain.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);

  m.def("canonical_polynomial",
        [](const std::string& text, std::size_t rank) { return parse_polynomial(text, rank).to_string(); },
        py::arg("text"), py::arg("rank") = 0, "Canonical printed form of a Laurent polynomial.");
  m.def("mahler", &mahler, py::arg("poly"), py::arg("rank") = 0, py::arg("method") = "auto",
        py::arg("grid") = 2048,
        "Mahler measure: Jensen in one variable, Boyd-Lawton or quadrature otherwise.");
  m.def("fk_det_finite", &det_finite, py::arg("matrix"), py::arg("group"),
        "Determinant over Z[G] for a cyclic group (int) or a product of cyclic groups (list).");
  m.def("fk_det_zd", &det_zd, py::arg("matrix"), py::arg("rank") = 0,
        py::arg("method") = "boyd_lawton", py::arg("grid") = 2048,
        "Determinant over Z[Z^d] by kernel reduction.");
  m.def("lehmer_scan", &lehmer_scan, py::arg("group") = py::none(),
        py::arg("box") = std::vector<std::int64_t>{}, py::arg("variant") = "Lambda^w_1",
        py::arg("coeff_bound") = 1, py::arg("rows") = 1, py::arg("cols") = 1,
        py::arg("budget") = 10'000'000, py::arg("support_limit") = 0,
        "Exhaustive search for the least determinant above 1.");
  m.def("approx_chain", &approx_chain, py::arg("matrix"), py::arg("chain"), py::arg("rank") = 0,
        "Stage determinants along a chain of finite quotients of Z^d.");
  m.def("exact_constants", &constants, py::arg("group"),
        "Known values and bounds of the Lehmer constants of a finite group.");
  m.def("torsion_bound", [](std::int64_t k) { return radical_dict(torsion_bound_check(k)); },
        py::arg("m"), "(m - 1)^(1/m) as an exact radical.");
  m.def("run", &run_config, py::arg("options"),
        "Runs a tool subcommand; returns (exit_code, report, error).");
}
