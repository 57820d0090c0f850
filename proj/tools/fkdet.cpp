// fkdet command-line tool: argv parsing only; the work happens in fkdet::run.

#include <CLI11.hpp>
#include <iostream>

#include "fkdet/cli.hpp"

namespace {

void add_matrix_inputs(CLI::App* sub, fkdet::RunConfig& c, bool poly, bool elem) {
  if (poly) sub->add_option("--poly", c.poly, "Laurent polynomial, e.g. \"z^2 - z - 1\"");
  if (elem) sub->add_option("--elem", c.elem, "group ring element, e.g. \"t + 2\"");
  sub->add_option("--matrix", c.matrix, "matrix literal \"[[a, b], [c, d]]\"");
  sub->add_option("--matrix-file", c.matrix_file, "JSON file {rank, rows, cols, entries}");
  if (poly) sub->add_option("--rank", c.rank, "number of variables (0 infers)");
}

void add_group(CLI::App* sub, fkdet::RunConfig& c) {
  sub->add_flag("--trivial", c.trivial, "trivial group");
  sub->add_option("--cyclic", c.cyclic, "cyclic group Z/n");
  sub->add_option("--abelian", c.abelian, "finite abelian group, e.g. 2x3");
  sub->add_option("--group-file", c.group_file, "JSON file {order, identity, table}");
}

void add_measure(CLI::App* sub, fkdet::RunConfig& c) {
  sub->add_option("--method", c.method, "jensen | quadrature | boyd_lawton");
  sub->add_option("--grid", c.grid, "quadrature points per axis");
  sub->add_option("--schedule-count", c.schedule_count, "number of specialization tuples");
  sub->add_option("--min-k2", c.min_k2, "smallest first specialization exponent");
}

}  // namespace

int main(int argc, char** argv) {
  fkdet::RunConfig c;
  CLI::App app{"Mahler measures and Fuglede-Kadison determinants"};
  app.set_version_flag("--version", FKDET_VERSION);
  app.require_subcommand(1, 1);
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", c.format, "json | text | csv");
    sub->add_option("-o,--output", c.output, "write the report to this path");
  };

  auto* mahler = app.add_subcommand("mahler", "Mahler measure of a Laurent polynomial");
  mahler->add_option("--poly", c.poly, "Laurent polynomial");
  mahler->add_option("--rank", c.rank, "number of variables (0 infers)");
  add_measure(mahler, c);
  common(mahler);

  auto* zd = app.add_subcommand("fkdet-zd", "determinant of a matrix over Z[Z^d]");
  add_matrix_inputs(zd, c, true, false);
  add_measure(zd, c);
  zd->add_flag("--via-specialization", c.via_specialization, "also evaluate by specialization");
  common(zd);

  auto* finite = app.add_subcommand("fkdet-finite", "determinant over a finite group ring");
  add_matrix_inputs(finite, c, false, true);
  add_group(finite, c);
  common(finite);

  auto* scan = app.add_subcommand("lehmer-scan", "exhaustive search for Lehmer constants");
  add_group(scan, c);
  scan->add_option("--zd-box", c.zd_box, "exponent box for Z^d, e.g. 10 or 3,1");
  scan->add_option("--variant", c.variant, "Lambda | Lambda_1 | Lambda^w | Lambda^w_1");
  scan->add_option("--rows", c.rows, "matrix rows");
  scan->add_option("--cols", c.cols, "matrix columns");
  scan->add_option("--coeff-bound", c.coeff_bound, "coefficients range over [-C, C]");
  scan->add_option("--support-limit", c.support_limit, "maximum support size (0 is unlimited)");
  scan->add_option("--budget", c.budget, "maximum number of evaluations");
  scan->add_option("--one-threshold", c.one_threshold, "values within this of 1 count as 1");
  scan->add_flag("--survey", c.survey, "record every value up to 1.5");
  add_measure(scan, c);
  common(scan);

  auto* chain = app.add_subcommand("approx-chain", "determinants along a finite quotient chain");
  add_matrix_inputs(chain, c, true, false);
  chain->add_option("--chain", c.chain, "2..40, 2,4,8 or 2x2,4x4");
  chain->add_option("--tolerance", c.tolerance, "slack for the limsup inequality");
  add_measure(chain, c);
  common(chain);

  auto* constants = app.add_subcommand("exact-constants", "closed forms for finite groups");
  add_group(constants, c);
  constants->add_option("--torsion", c.torsion, "bound (m-1)^(1/m) for an element of order m");
  common(constants);

  auto* trace = app.add_subcommand("trace-check", "trace matching against a finite quotient");
  add_matrix_inputs(trace, c, true, false);
  trace->add_option("--moduli", c.moduli, "quotient moduli, e.g. 5 or 5x5");
  trace->add_option("--degree", c.degree, "highest power compared");
  common(trace);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << fkdet::error_json("config", e.what(), 2) << "\n";
    return 2;
  }
  c.subcommand = app.get_subcommands().front()->get_name();
  return fkdet::run_and_write(c, std::cout, std::cerr);
}
