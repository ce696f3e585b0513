#include "causal_sep/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "causal_sep/configuration.hpp"
#include "causal_sep/criterion.hpp"
#include "causal_sep/ec_family.hpp"
#include "causal_sep/errors.hpp"
#include "causal_sep/matrix_io.hpp"
#include "causal_sep/ppt.hpp"
#include "causal_sep/report.hpp"

namespace causal_sep::cli {

namespace {

struct Flags {
  std::string format;
  std::string out;
};

void add_shape(CLI::App* sub, Parameters& p, bool with_n = true) {
  sub->add_option("--D", p.dim, "local dimension D")->required();
  if (with_n) sub->add_option("--N", p.parties, "number of parties N")->required();
}

void add_coupling(CLI::App* sub, Parameters& p) {
  sub->add_option("--coupling", p.coupling, "free|coupled")
      ->check(CLI::IsMember({"free", "coupled"}))
      ->capture_default_str();
}

void add_variant(CLI::App* sub, Parameters& p) {
  sub->add_option("--class", p.ec_class, "a|b")->check(CLI::IsMember({"a", "b"}))->capture_default_str();
  sub->add_option("--mixing", p.mixing, "weak|strong")
      ->check(CLI::IsMember({"weak", "strong"}))
      ->capture_default_str();
  add_coupling(sub, p);
  sub->add_option("--m-abs", p.m_abs, "class b |m|, 1..N-1");
  sub->add_option("--b-sites", p.b_sites, "class b per-site exponents, e.g. 1,0,1")
      ->delimiter(',');
}

void add_grid(CLI::App* sub, Parameters& p) {
  sub->add_option("--steps", p.steps, "number of grid points")->capture_default_str();
  sub->add_option("--p-start", p.p_start, "first grid point")->capture_default_str();
  sub->add_option("--p-end", p.p_end, "last grid point")->capture_default_str();
  sub->add_option("--p-phase", p.p_phase, "class a phase of p in radians")->capture_default_str();
}

void add_output(CLI::App* sub, Flags& f) {
  sub->add_option("--format", f.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", f.out, "write the payload to this path");
}

void build_app(CLI::App& app, RunConfig& cfg, Flags& flags) {
  Parameters& p = cfg.parameters;
  app.require_subcommand(1);
  auto on = [&cfg](Command c) { return [&cfg, c] { cfg.command = c; }; };

  auto* count = app.add_subcommand("config-count", "distinct and completely orthogonal configuration counts");
  add_shape(count, p);
  add_coupling(count, p);
  add_output(count, flags);
  count->callback(on(Command::ConfigCount));

  auto* ec = app.add_subcommand("ec", "equally connected matrix family");
  ec->require_subcommand(1);

  auto* build = ec->add_subcommand("build", "write an EC density matrix as JSON");
  add_shape(build, p);
  add_variant(build, p);
  build->add_option("--p", p.p, "entanglement parameter |p|")->required();
  build->add_option("--p-phase", p.p_phase, "class a phase of p in radians");
  add_output(build, flags);
  build->callback(on(Command::EcBuild));

  auto* th = ec->add_subcommand("threshold", "closed-form separability thresholds");
  add_shape(th, p);
  add_variant(th, p);
  add_output(th, flags);
  th->callback(on(Command::EcThreshold));

  auto* sw = ec->add_subcommand("sweep", "closed-form and matrix-level W over a p grid");
  add_shape(sw, p);
  add_variant(sw, p);
  add_grid(sw, p);
  add_output(sw, flags);
  sw->callback(on(Command::EcSweep));

  auto* cls = app.add_subcommand("classify", "causal criterion on a matrix file");
  cls->add_option("--input", p.input, "matrix JSON")->required();
  add_coupling(cls, p);
  add_output(cls, flags);
  cls->callback(on(Command::Classify));

  auto* ppt = app.add_subcommand("ppt", "partial-transpose eigenvalue test on a matrix file");
  ppt->add_option("--input", p.input, "matrix JSON")->required();
  ppt->add_option("--subset", p.subset, "transposed parties, e.g. 0,2")->delimiter(',');
  add_output(ppt, flags);
  ppt->callback(on(Command::Ppt));

  auto* cmp = app.add_subcommand("compare", "causal verdicts against PPT on EC matrices");
  add_shape(cmp, p);
  add_variant(cmp, p);
  add_grid(cmp, p);
  add_output(cmp, flags);
  cmp->callback(on(Command::Compare));

  auto* dual = app.add_subcommand("duality", "free/coupled threshold duality residuals");
  add_shape(dual, p);
  add_output(dual, flags);
  dual->callback(on(Command::Duality));

  auto* cross = app.add_subcommand("crossover", "ensemble-size crossover ln(D-1)");
  add_shape(cross, p, false);
  add_output(cross, flags);
  cross->callback(on(Command::Crossover));
}

void finish(RunConfig& cfg, const Flags& flags) {
  if (flags.format == "json") cfg.output_format = Format::Json;
  if (flags.format == "csv") cfg.output_format = Format::Csv;
  if (!flags.out.empty()) cfg.output_path = flags.out;
}

Variant variant_of(const Parameters& p) {
  return {parse_class(p.ec_class), parse_mixing(p.mixing), parse_coupling(p.coupling)};
}

SweepOptions sweep_options(const Parameters& p) {
  SweepOptions o;
  o.m_abs = p.m_abs.value_or(1);
  o.phase = p.p_phase;
  o.b_sites = p.b_sites;
  return o;
}

void require_json(Format f, std::string_view command) {
  if (f != Format::Json) throw DomainError("csv output is not available for " + std::string(command));
}

std::string execute(const RunConfig& cfg, std::ostream& err) {
  const Parameters& p = cfg.parameters;
  const bool csv_default = cfg.command == Command::EcSweep || cfg.command == Command::Compare;
  const Format format = cfg.output_format.value_or(csv_default ? Format::Csv : Format::Json);

  switch (cfg.command) {
    case Command::ConfigCount: {
      require_json(format, "config-count");
      const CouplingMode mode = parse_coupling(p.coupling);
      const auto census = count_configurations(p.dim, p.parties, mode);
      std::optional<std::uint64_t> greedy;
      if (mode == CouplingMode::Free && checked_power(p.dim, p.parties) <= kDefaultEnumerationBudget) {
        greedy = partition_distinct(p.dim, p.parties).distinct.size();
        if (*greedy != census.distinct) {
          err << "note: greedy cover has " << *greedy << " distinct configurations, count formula gives "
              << census.distinct << "\n";
        }
      }
      return census_json(census, mode, greedy);
    }
    case Command::EcBuild: {
      require_json(format, "ec build");
      const Variant v = variant_of(p);
      ECParams params{.variant = v, .dim = p.dim, .parties = p.parties, .b_sites = p.b_sites};
      params.p = v.ec_class == EcClass::A ? std::polar(p.p, p.p_phase) : std::complex<double>(p.p);
      const auto rho = build_ec_matrix(params);
      const auto diag = psd_diagnostic(rho);
      if (diag.evaluated && !diag.psd) {
        err << "note: matrix is not positive semidefinite (min eigenvalue "
            << format_double(diag.min_eigenvalue) << ")\n";
      }
      return matrix_to_json(rho);
    }
    case Command::EcThreshold: {
      const Variant v = variant_of(p);
      std::vector<ThresholdResult> results;
      if (v.ec_class == EcClass::A) {
        results.push_back(threshold(v, p.dim, p.parties));
      } else if (p.m_abs) {
        results.push_back(threshold(v, p.dim, p.parties, *p.m_abs));
      } else {
        for (int m = 1; m <= p.parties - 1; ++m) results.push_back(threshold(v, p.dim, p.parties, m));
      }
      return format == Format::Csv ? threshold_csv(v, p.dim, p.parties, results)
                                   : threshold_json(v, p.dim, p.parties, results);
    }
    case Command::EcSweep: {
      const auto rows = sweep(variant_of(p), p.dim, p.parties, p_grid(p.p_start, p.p_end, p.steps),
                              sweep_options(p));
      return format == Format::Csv ? sweep_csv(rows) : sweep_json(rows);
    }
    case Command::Classify: {
      require_json(format, "classify");
      return report_json(classify(load_matrix(p.input), parse_coupling(p.coupling)));
    }
    case Command::Ppt: {
      require_json(format, "ppt");
      const auto rho = load_matrix(p.input);
      if (p.subset.empty()) return ppt_json(ppt_check_all(rho));
      return ppt_json({ppt_check(rho, PartySubset(rho.parties(), p.subset))});
    }
    case Command::Compare: {
      const Variant v = variant_of(p);
      const auto rows = compare(v, p.dim, p.parties, p_grid(p.p_start, p.p_end, p.steps),
                                sweep_options(p));
      std::size_t disagreements = 0;
      for (const auto& r : rows) disagreements += r.agree ? 0 : 1;
      if (disagreements) err << "note: " << disagreements << " verdict disagreements\n";
      return format == Format::Csv ? compare_csv(v, p.dim, p.parties, rows)
                                   : compare_json(v, p.dim, p.parties, rows);
    }
    case Command::Duality:
      require_json(format, "duality");
      return duality_json(p.dim, p.parties, duality_residuals(p.dim, p.parties));
    case Command::Crossover:
      require_json(format, "crossover");
      return crossover_json(p.dim, crossover_n(p.dim));
  }
  throw DomainError("unknown command");
}

}  // namespace

RunConfig parse_args(int argc, const char* const* argv) {
  RunConfig cfg;
  Flags flags;
  CLI::App app{"causal separability toolkit", "causal-sep"};
  build_app(app, cfg, flags);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    throw ParseError(e.what());
  }
  finish(cfg, flags);
  return cfg;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const std::string payload = execute(config, err);
    if (config.output_path) {
      std::ofstream file(*config.output_path, std::ios::binary);
      if (!file) throw IoError("cannot open " + *config.output_path + " for writing");
      file << payload;
      if (!file) throw IoError("write failed for " + *config.output_path);
    } else {
      out << payload;
    }
    return kExitOk;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  Flags flags;
  CLI::App app{"causal separability toolkit", "causal-sep"};
  build_app(app, cfg, flags);
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitIo;
  }
  finish(cfg, flags);
  return run(cfg, out, err);
}

}  // namespace causal_sep::cli
