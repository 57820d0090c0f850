#include "report.hpp"

#include <cstdio>
#include <cstdlib>

namespace fkdet::report {

std::string format_double(double x) {
  char buf[64];
  for (int precision = 6; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

Json to_json(const ExactRadical& r) {
  return Json{{"base", to_string(r.base())},
              {"exponent", to_string(r.exponent())},
              {"text", r.to_string()}};
}

Json to_json(const FKValue& v) {
  Json j{{"value", v.value}, {"log_value", v.log_value}, {"method", v.method},
         {"error_estimate", v.error_estimate}};
  j["exact"] = v.exact ? to_json(*v.exact) : Json(nullptr);
  return j;
}

Json to_json(const MahlerValue& v) {
  return Json{{"value", v.value},
              {"log_value", v.log_value},
              {"method", to_string(v.method)},
              {"error_estimate", v.error_estimate}};
}

Json to_json(const LaurentMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
    rows.push_back(row);
  }
  return Json{{"rank", m.rank()}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

Json to_json(const PipelineTrace& t) {
  return Json{{"q", t.q},
              {"B", to_json(t.b)},
              {"D1", to_json(t.d1)},
              {"D2", to_json(t.d2)},
              {"det_D1", t.det_d1.to_string()},
              {"det_D2", t.det_d2.to_string()},
              {"measure_D1", to_json(t.measure_d1)},
              {"measure_D2", to_json(t.measure_d2)},
              {"value", to_json(t.value)}};
}

Json to_json(const SpecSchedule& s) {
  return Json{{"b", s.b}, {"c", s.c}, {"tuples", s.tuples}};
}

Json to_json(const SearchSpace& s) {
  Json j;
  if (s.kind == SearchGroup::finite) {
    j["group"] = s.group->description();
    j["group_order"] = s.group->order();
  } else {
    j["group"] = "Z^" + std::to_string(s.box.size());
    j["box"] = s.box;
  }
  j["rows"] = s.rows;
  j["cols"] = s.cols;
  j["coeff_bound"] = s.coeff_bound;
  j["support_limit"] = s.support_limit;
  j["budget"] = s.budget;
  return j;
}

Json to_json(const ScanReport& r) {
  Json j{{"space", to_json(r.space)}, {"variant", to_string(r.variant)}};
  j["infimum"] = r.infimum ? to_json(*r.infimum) : Json(nullptr);
  j["witness"] = r.infimum ? Json(r.witness) : Json(nullptr);
  j["count_enumerated"] = r.count_enumerated;
  j["count_examined"] = r.count_examined;
  j["count_det_one"] = r.count_det_one;
  j["count_non_injective"] = r.count_non_injective;
  j["one_threshold"] = r.one_threshold;
  j["budget_exceeded"] = r.budget_exceeded;
  return j;
}

Json to_json(const TraceMatch& t) {
  Json zd = Json::array(), q = Json::array();
  for (const auto& x : t.traces_zd) zd.push_back(to_string(x));
  for (const auto& x : t.traces_quotient) q.push_back(to_string(x));
  return Json{{"traces_zd", zd},
              {"traces_quotient", q},
              {"match", t.match},
              {"least_uniform_modulus", t.least_uniform_modulus},
              {"certified_moduli", t.certified_moduli}};
}

Json to_json(const DetSequence& s) {
  Json stages = Json::array();
  for (const StageValue& st : s.stages) {
    stages.push_back(Json{{"moduli", st.moduli},
                          {"value", to_json(st.value)},
                          {"vn_dim_kernel", to_string(st.vn_dim_kernel)}});
  }
  return Json{{"chain", s.chain.stages},
              {"divisibility_chain", s.chain.is_divisibility_chain()},
              {"stages", stages},
              {"limit_reference", to_json(s.limit_reference)},
              {"max_stage_value", s.max_stage_value},
              {"limsup_estimate", s.limsup_estimate},
              {"limsup_ok", s.limsup_ok},
              {"final_gap", s.final_gap},
              {"convergence", s.convergence}};
}

Json to_json(const ConstantEntry& c) {
  return Json{{"name", c.name},
              {"exact", c.exact},
              {"lower", to_json(c.lower)},
              {"upper", to_json(c.upper)},
              {"lower_value", c.lower.value()},
              {"upper_value", c.upper.value()}};
}

}  // namespace fkdet::report
