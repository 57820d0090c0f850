#include "fkdet/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "fkdet/approx_harness.hpp"
#include "fkdet/errors.hpp"
#include "fkdet/fk_finite.hpp"
#include "fkdet/fk_zd.hpp"
#include "fkdet/lehmer_search.hpp"
#include "fkdet/mahler.hpp"
#include "report.hpp"

#ifndef FKDET_VERSION
#define FKDET_VERSION "0.0.0"
#endif

namespace fkdet {
namespace {

using report::Json;

const std::map<std::string, std::set<std::string>>& allowed_inputs() {
  static const std::map<std::string, std::set<std::string>> table{
      {"mahler", {"poly"}},
      {"fkdet-zd", {"poly", "matrix", "matrix_file"}},
      {"fkdet-finite", {"elem", "matrix", "matrix_file", "group"}},
      {"lehmer-scan", {"group", "zd_box"}},
      {"approx-chain", {"poly", "matrix", "matrix_file", "chain"}},
      {"exact-constants", {"group", "torsion"}},
      {"trace-check", {"poly", "matrix", "matrix_file", "moduli"}},
  };
  return table;
}

std::set<std::string> present_inputs(const RunConfig& c) {
  std::set<std::string> s;
  if (c.poly) s.insert("poly");
  if (c.matrix) s.insert("matrix");
  if (c.matrix_file) s.insert("matrix_file");
  if (c.elem) s.insert("elem");
  if (c.trivial || c.cyclic || c.abelian || c.group_file) s.insert("group");
  if (c.zd_box) s.insert("zd_box");
  if (c.chain) s.insert("chain");
  if (c.moduli) s.insert("moduli");
  if (c.torsion) s.insert("torsion");
  return s;
}

void validate(const RunConfig& c) {
  const auto it = allowed_inputs().find(c.subcommand);
  if (it == allowed_inputs().end()) throw ConfigError("unknown subcommand '" + c.subcommand + "'");
  for (const std::string& name : present_inputs(c)) {
    if (!it->second.count(name)) {
      throw ConfigError("option '" + name + "' is not valid for " + c.subcommand);
    }
  }
  const int matrix_sources = (c.poly ? 1 : 0) + (c.matrix ? 1 : 0) + (c.matrix_file ? 1 : 0) +
                             (c.elem ? 1 : 0);
  if (matrix_sources > 1) throw ConfigError("inline expressions and input files are mutually exclusive");
  const int group_sources = (c.trivial ? 1 : 0) + (c.cyclic ? 1 : 0) + (c.abelian ? 1 : 0) +
                            (c.group_file ? 1 : 0);
  if (group_sources > 1) throw ConfigError("give exactly one group");
  if (c.format != "json" && c.format != "text" && c.format != "csv") {
    throw ConfigError("format must be json, text or csv");
  }
  if (c.format == "csv" && c.subcommand != "approx-chain" && c.subcommand != "lehmer-scan") {
    throw ConfigError("csv output is available for approx-chain and lehmer-scan only");
  }
  if (c.method) {
    try {
      (void)parse_measure_method(*c.method);
    } catch (const std::exception&) {
      throw ConfigError("unknown method '" + *c.method + "'");
    }
  }
  if (c.grid < 2) throw ConfigError("grid must be >= 2");
  if (c.schedule_count == 0) throw ConfigError("schedule count must be >= 1");
  if (c.min_k2 < 1) throw ConfigError("min-k2 must be >= 1");
  if (c.rows == 0 || c.cols == 0) throw ConfigError("rows and cols must be >= 1");
  if (c.coeff_bound < 1) throw ConfigError("coefficient bound must be >= 1");
  if (c.degree == 0) throw ConfigError("degree must be >= 1");
  if (!(c.one_threshold > 0) || !(c.tolerance >= 0)) throw ConfigError("tolerances must be positive");
  if (c.budget && *c.budget == 0) throw ConfigError("budget must be >= 1");
  if (c.cyclic && *c.cyclic == 0) throw ConfigError("cyclic order must be >= 1");

  const std::string& s = c.subcommand;
  if (s == "mahler" && !c.poly) throw ConfigError("mahler needs --poly");
  if ((s == "fkdet-zd" || s == "approx-chain" || s == "trace-check") && matrix_sources == 0) {
    throw ConfigError(s + " needs --poly, --matrix or --matrix-file");
  }
  if (s == "fkdet-finite" && matrix_sources == 0) {
    throw ConfigError("fkdet-finite needs --elem, --matrix or --matrix-file");
  }
  if (s == "fkdet-finite" && group_sources == 0) throw ConfigError("fkdet-finite needs a group");
  if (s == "lehmer-scan" && group_sources + (c.zd_box ? 1 : 0) != 1) {
    throw ConfigError("lehmer-scan needs exactly one of a finite group or --zd-box");
  }
  if (s == "approx-chain" && !c.chain) throw ConfigError("approx-chain needs --chain");
  if (s == "trace-check" && !c.moduli) throw ConfigError("trace-check needs --moduli");
  if (s == "exact-constants" && group_sources + (c.torsion ? 1 : 0) != 1) {
    throw ConfigError("exact-constants needs exactly one of a finite group or --torsion");
  }
}

Json config_json(const RunConfig& c) {
  Json j;
  j["subcommand"] = c.subcommand;
  auto opt = [&](const char* key, const auto& v) {
    if (v) j[key] = *v;
  };
  opt("poly", c.poly);
  opt("matrix", c.matrix);
  opt("matrix_file", c.matrix_file);
  opt("elem", c.elem);
  if (c.rank) j["rank"] = c.rank;
  if (c.trivial) j["trivial"] = true;
  opt("cyclic", c.cyclic);
  opt("abelian", c.abelian);
  opt("group_file", c.group_file);
  opt("method", c.method);
  j["grid"] = c.grid;
  j["schedule_count"] = c.schedule_count;
  j["min_k2"] = c.min_k2;
  j["via_specialization"] = c.via_specialization;
  if (c.subcommand == "lehmer-scan") {
    j["variant"] = c.variant;
    opt("zd_box", c.zd_box);
    j["rows"] = c.rows;
    j["cols"] = c.cols;
    j["coeff_bound"] = c.coeff_bound;
    j["support_limit"] = c.support_limit;
    opt("budget", c.budget);
    j["survey"] = c.survey;
  }
  opt("chain", c.chain);
  opt("moduli", c.moduli);
  if (c.subcommand == "trace-check") j["degree"] = c.degree;
  opt("torsion", c.torsion);
  j["format"] = c.format;
  return j;
}

Json tolerances_json(const RunConfig& c) {
  return Json{{"unit_circle", kUnitCircleTolerance},
              {"quadrature_zero_cutoff", kQuadratureZeroCutoff},
              {"one_threshold", c.one_threshold},
              {"sub_approximation", c.tolerance},
              {"convergence", ApproxOptions{}.convergence_tolerance}};
}

// ---- input helpers

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw ConfigError("malformed JSON in '" + path + "': " + e.what());
  }
}

// "[[a, b], [c, d]]" into cells; entries contain neither brackets nor commas.
std::vector<std::vector<std::string>> split_matrix_literal(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::size_t pos = text.find('[');
  if (pos == std::string::npos) throw ParseError("matrix literal must start with '['", 0);
  ++pos;
  while (true) {
    while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ',')) ++pos;
    if (pos >= text.size()) throw ParseError("unterminated matrix literal", pos);
    if (text[pos] == ']') break;
    if (text[pos] != '[') throw ParseError("expected '[' to open a row", pos);
    const std::size_t close = text.find(']', pos);
    if (close == std::string::npos) throw ParseError("unterminated matrix row", pos);
    std::vector<std::string> row;
    std::string cell;
    for (std::size_t k = pos + 1; k < close; ++k) {
      if (text[k] == ',') {
        row.push_back(cell);
        cell.clear();
      } else {
        cell += text[k];
      }
    }
    row.push_back(cell);
    rows.push_back(row);
    pos = close + 1;
  }
  if (rows.empty()) throw ParseError("empty matrix literal", 0);
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) throw ParseError("ragged matrix literal", 0);
  return rows;
}

std::vector<std::vector<std::string>> cells_from_file(const Json& j, std::size_t& rank) {
  if (!j.is_object() || !j.contains("entries") || !j.contains("rows") || !j.contains("cols")) {
    throw ConfigError("matrix file needs rows, cols and entries");
  }
  const auto rows = j["rows"].get<std::size_t>();
  const auto cols = j["cols"].get<std::size_t>();
  if (j.contains("rank") && rank == 0) rank = j["rank"].get<std::size_t>();
  std::vector<std::string> flat;
  for (const auto& e : j["entries"]) {
    if (e.is_array()) {
      for (const auto& x : e) flat.push_back(x.get<std::string>());
    } else {
      flat.push_back(e.get<std::string>());
    }
  }
  if (rows == 0 || cols == 0 || flat.size() != rows * cols) {
    throw ConfigError("matrix file entries do not match rows x cols");
  }
  std::vector<std::vector<std::string>> cells(rows);
  for (std::size_t i = 0; i < rows; ++i)
    cells[i].assign(flat.begin() + static_cast<long>(i * cols),
                    flat.begin() + static_cast<long>((i + 1) * cols));
  return cells;
}

std::vector<std::vector<std::string>> input_cells(const RunConfig& c, std::size_t& rank) {
  if (c.poly) return {{*c.poly}};
  if (c.elem) return {{*c.elem}};
  if (c.matrix) return split_matrix_literal(*c.matrix);
  return cells_from_file(read_json_file(*c.matrix_file), rank);
}

LaurentMatrix laurent_input(const RunConfig& c) {
  std::size_t rank = c.rank;
  const auto cells = input_cells(c, rank);
  if (rank == 0) {
    for (const auto& r : cells)
      for (const auto& x : r) rank = std::max(rank, parse_polynomial(x).rank());
  }
  std::vector<std::vector<LaurentPolynomial>> rows;
  for (const auto& r : cells) {
    rows.emplace_back();
    for (const auto& x : r) rows.back().push_back(parse_polynomial(x, rank));
  }
  return LaurentMatrix::from_rows(rank, rows);
}

GroupPtr group_input(const RunConfig& c) {
  if (c.trivial) return make_cyclic(1);
  if (c.cyclic) return make_cyclic(*c.cyclic);
  if (c.abelian) {
    std::vector<std::size_t> moduli;
    std::stringstream ss(*c.abelian);
    std::string part;
    while (std::getline(ss, part, 'x')) {
      try {
        moduli.push_back(std::stoul(part));
      } catch (const std::exception&) {
        throw ConfigError("abelian group must look like 2x3");
      }
    }
    return make_abelian(moduli);
  }
  if (c.group_file) {
    const Json j = read_json_file(*c.group_file);
    if (!j.contains("order") || !j.contains("identity") || !j.contains("table")) {
      throw ConfigError("group file needs order, identity and table");
    }
    const auto n = j["order"].get<std::size_t>();
    std::vector<std::size_t> table;
    for (const auto& row : j["table"]) {
      if (row.size() != n) throw DomainError("group table rows must have length order");
      for (const auto& x : row) table.push_back(x.get<std::size_t>());
    }
    return std::make_shared<const FiniteGroup>(n, j["identity"].get<std::size_t>(), std::move(table));
  }
  throw ConfigError("no group given");
}

GroupRingMatrix finite_input(const RunConfig& c, const GroupPtr& g) {
  std::size_t rank = 0;
  const auto cells = input_cells(c, rank);
  std::vector<std::vector<GroupRingElement>> rows;
  for (const auto& r : cells) {
    rows.emplace_back();
    for (const auto& x : r) rows.back().push_back(parse_group_element(x, g));
  }
  return GroupRingMatrix::from_rows(g, rows);
}

ZdOptions zd_options(const RunConfig& c) {
  ZdOptions o;
  if (c.method) o.method = parse_measure_method(*c.method);
  if (o.method == MeasureMethod::jensen) o.method = MeasureMethod::boyd_lawton;
  o.grid = c.grid;
  o.schedule_count = c.schedule_count;
  o.min_k2 = c.min_k2;
  return o;
}

std::vector<std::size_t> parse_moduli(const std::string& text) {
  const QuotientChain chain = parse_chain(text);
  if (chain.stages.size() != 1) throw ConfigError("--moduli takes a single tuple such as 5 or 5x5");
  return chain.stages.front();
}

// ---- subcommands

struct Output {
  Json result;
  std::optional<std::string> csv;
};

Output run_mahler(const RunConfig& c) {
  const LaurentPolynomial p = parse_polynomial(*c.poly, c.rank);
  MeasureMethod method = p.rank() == 1 ? MeasureMethod::jensen : MeasureMethod::boyd_lawton;
  if (c.method) method = parse_measure_method(*c.method);
  Json r{{"polynomial", p.to_string()}, {"rank", p.rank()}};
  MahlerValue v;
  switch (method) {
    case MeasureMethod::jensen: {
      if (p.rank() != 1) throw ConfigError("jensen needs a one-variable polynomial");
      v = mahler_jensen(p);
      const RootList roots = roots_one_var(p);
      std::size_t outside = 0;
      for (const auto& z : roots.roots) outside += std::abs(z) > 1 + kUnitCircleTolerance;
      r["degree"] = roots.roots.size();
      r["roots_outside_unit_circle"] = outside;
      break;
    }
    case MeasureMethod::quadrature:
      v = log_mahler_quadrature(p, c.grid);
      break;
    case MeasureMethod::boyd_lawton: {
      if (p.rank() < 2) throw ConfigError("boyd_lawton needs at least two variables");
      std::vector<SpecTuple> schedule;
      for (std::size_t j = 0; j < c.schedule_count; ++j) {
        SpecTuple t{c.min_k2 << j};
        while (t.size() + 1 < p.rank()) t.push_back(t.back() * t.back() + 1);
        schedule.push_back(t);
      }
      r["schedule"] = schedule;
      v = mahler_boyd_lawton(p, schedule);
      break;
    }
  }
  r["measure"] = report::to_json(v);
  return {r, std::nullopt};
}

Output run_fkdet_zd(const RunConfig& c) {
  const LaurentMatrix a = laurent_input(c);
  const ZdOptions o = zd_options(c);
  const PipelineTrace t = fk_det_zd(a, o);
  Json r{{"matrix", report::to_json(a)},
         {"vn_dim_kernel", vn_dim_kernel_zd(a)},
         {"trace", report::to_json(t)},
         {"value", report::to_json(t.value)}};
  if (c.via_specialization) {
    if (a.rank() < 2) throw ConfigError("--via-specialization needs rank >= 2");
    const SpecSchedule s = build_schedule(t, c.schedule_count, c.min_k2);
    r["specialization"] = Json{{"schedule", report::to_json(s)},
                               {"value", report::to_json(fk_det_zd_via_specialization(a, s))}};
  }
  return {r, std::nullopt};
}

Output run_fkdet_finite(const RunConfig& c) {
  const GroupPtr g = group_input(c);
  const GroupRingMatrix a = finite_input(c, g);
  const FKValue v = fk_det_finite(a);
  Json r{{"group", g->description()},
         {"group_order", g->order()},
         {"matrix", a.to_string()},
         {"vn_dim_kernel", to_string(vn_dim_kernel_finite(a))},
         {"value", report::to_json(v)}};
  return {r, std::nullopt};
}

Output run_lehmer_scan(const RunConfig& c) {
  SearchSpace s;
  if (c.zd_box) {
    s.kind = SearchGroup::zd;
    std::stringstream ss(*c.zd_box);
    std::string part;
    while (std::getline(ss, part, ',')) {
      try {
        s.box.push_back(std::stoll(part));
      } catch (const std::exception&) {
        throw ConfigError("--zd-box must look like 10 or 3,1");
      }
    }
  } else {
    s.kind = SearchGroup::finite;
    s.group = group_input(c);
  }
  s.rows = c.rows;
  s.cols = c.cols;
  s.coeff_bound = c.coeff_bound;
  s.support_limit = c.support_limit;
  s.budget = c.budget ? *c.budget : (c.rows == 1 && c.cols == 1 ? 10'000'000 : 100'000);
  LehmerVariant variant;
  try {
    variant = parse_lehmer_variant(c.variant);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  ScanOptions o;
  o.one_threshold = c.one_threshold;
  o.collect_survey = c.survey || c.format == "csv";
  o.zd = zd_options(c);
  if (!c.method) o.zd = ScanOptions{}.zd;
  const ScanReport rep = scan(s, variant, o);
  Json r = report::to_json(rep);
  if (rep.infimum) {
    r["witness_reevaluated"] = report::to_json(evaluate_witness(s, rep.witness, o));
  }
  std::optional<std::string> csv;
  if (o.collect_survey) {
    Json survey = Json::array();
    std::string text = "witness,value\n";
    for (const SurveyEntry& e : rep.survey) {
      survey.push_back(Json{{"witness", e.witness}, {"value", e.value}});
      text += "\"" + e.witness + "\"," + report::format_double(e.value) + "\n";
    }
    r["survey"] = survey;
    csv = text;
  }
  return {r, csv};
}

Output run_approx_chain(const RunConfig& c) {
  const LaurentMatrix a = laurent_input(c);
  QuotientChain chain = parse_chain(*c.chain);
  if (chain.rank == 1 && a.rank() > 1) {
    // A scalar chain applies the same modulus on every axis.
    for (Moduli& m : chain.stages) m.assign(a.rank(), m.front());
    chain.rank = a.rank();
  }
  ApproxOptions o;
  o.zd = zd_options(c);
  o.tolerance = c.tolerance;
  const DetSequence seq = det_sequence(a, chain, o);
  Json r{{"matrix", report::to_json(a)},
         {"norm_bound", norm_bound(a)},
         {"sequence", report::to_json(seq)}};
  return {r, to_csv(seq)};
}

Output run_exact_constants(const RunConfig& c) {
  Json r;
  if (c.torsion) {
    const ExactRadical b = torsion_bound_check(*c.torsion);
    r["torsion_order"] = *c.torsion;
    r["bound"] = report::to_json(b);
    r["bound_value"] = b.value();
    return {r, std::nullopt};
  }
  const GroupPtr g = group_input(c);
  r["group"] = g->description();
  r["group_order"] = g->order();
  Json entries = Json::array();
  for (const ConstantEntry& e : exact_constants(*g)) entries.push_back(report::to_json(e));
  r["constants"] = entries;
  return {r, std::nullopt};
}

Output run_trace_check(const RunConfig& c) {
  const LaurentMatrix a = laurent_input(c);
  const auto moduli = parse_moduli(*c.moduli);
  if (moduli.size() != a.rank()) throw ConfigError("--moduli needs one modulus per variable");
  const TraceMatch t = trace_match_check(a, c.degree, moduli);
  Json r{{"matrix", report::to_json(a)}, {"degree", c.degree}, {"moduli", moduli},
         {"check", report::to_json(t)}};
  return {r, std::nullopt};
}

void flatten_text(const Json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten_text(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t k = 0; k < j.size(); ++k) flatten_text(j[k], prefix + "[" + std::to_string(k) + "]", out);
  } else if (j.is_number_float()) {
    out += prefix + ": " + report::format_double(j.get<double>()) + "\n";
  } else if (j.is_string()) {
    out += prefix + ": " + j.get<std::string>() + "\n";
  } else {
    out += prefix + ": " + j.dump() + "\n";
  }
}

}  // namespace

std::string error_json(const std::string& kind, const std::string& message, int exit_code) {
  return Json{{"error", Json{{"kind", kind}, {"message", message}}}, {"exit_code", exit_code}}.dump();
}

RunResult run(const RunConfig& c) {
  RunResult res;
  try {
    validate(c);
    static const std::map<std::string, std::function<Output(const RunConfig&)>> dispatch{
        {"mahler", run_mahler},
        {"fkdet-zd", run_fkdet_zd},
        {"fkdet-finite", run_fkdet_finite},
        {"lehmer-scan", run_lehmer_scan},
        {"approx-chain", run_approx_chain},
        {"exact-constants", run_exact_constants},
        {"trace-check", run_trace_check},
    };
    const Output o = dispatch.at(c.subcommand)(c);
    if (c.format == "csv") {
      res.output = o.csv.value_or("");
    } else {
      Json doc{{"schema_version", kSchemaVersion},
               {"tool", "fkdet"},
               {"version", FKDET_VERSION},
               {"subcommand", c.subcommand},
               {"config", config_json(c)},
               {"tolerances", tolerances_json(c)},
               {"result", o.result}};
      if (c.format == "json") {
        res.output = doc.dump(2) + "\n";
      } else {
        flatten_text(doc, "", res.output);
      }
    }
  } catch (const ConfigError& e) {
    res = {2, "", error_json("config", e.what(), 2)};
  } catch (const ParseError& e) {
    res = {2, "", error_json("parse", e.what(), 2)};
  } catch (const BudgetError& e) {
    res = {1, "", error_json("budget", e.what(), 1)};
  } catch (const DomainError& e) {
    res = {1, "", error_json("domain", e.what(), 1)};
  } catch (const InternalError& e) {
    res = {1, "", error_json("internal", e.what(), 1)};
  } catch (const Json::exception& e) {
    res = {2, "", error_json("config", e.what(), 2)};
  } catch (const std::invalid_argument& e) {
    res = {1, "", error_json("domain", e.what(), 1)};
  } catch (const std::exception& e) {
    res = {1, "", error_json("runtime", e.what(), 1)};
  }
  return res;
}

int run_and_write(const RunConfig& config, std::ostream& out, std::ostream& err) {
  RunResult r = run(config);
  if (r.exit_code == 0 && config.output) {
    std::ofstream f(*config.output, std::ios::binary);
    if (!f) {
      err << error_json("config", "cannot write '" + *config.output + "'", 2) << "\n";
      return 2;
    }
    f << r.output;
  } else {
    out << r.output;
  }
  if (!r.error.empty()) err << r.error << "\n";
  return r.exit_code;
}

}  // namespace fkdet
