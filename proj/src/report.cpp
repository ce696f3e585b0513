#include "causal_sep/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "causal_sep/matrix_io.hpp"

namespace causal_sep {

namespace {

using json = nlohmann::ordered_json;

json base_doc() { return json{{"schema", kSchema}}; }

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

json configuration_json(const Configuration& c) {
  return json(std::vector<int>(c.labels().begin(), c.labels().end()));
}

json subset_json(const PartySubset& s) {
  return json(std::vector<int>(s.members().begin(), s.members().end()));
}

ECParams make_params(const Variant& v, int dim, int parties, double p, const SweepOptions& o) {
  ECParams params{.variant = v, .dim = dim, .parties = parties, .b_sites = o.b_sites};
  params.p = v.ec_class == EcClass::A ? std::polar(p, o.phase) : std::complex<double>(p);
  return params;
}

std::optional<int> m_for(const Variant& v, const SweepOptions& o) {
  return v.ec_class == EcClass::B ? std::optional<int>(o.m_abs) : std::nullopt;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<double> p_grid(double start, double end, int steps) {
  if (steps < 0) throw DomainError("steps must be >= 0");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps));
  if (steps == 1) {
    out.push_back(start);
    return out;
  }
  for (int k = 0; k < steps; ++k) {
    out.push_back(k == steps - 1 ? end : start + (end - start) * k / (steps - 1));
  }
  return out;
}

std::vector<SweepRow> sweep(const Variant& variant, int dim, int parties,
                            const std::vector<double>& grid, const SweepOptions& options) {
  const auto th = threshold(variant, dim, parties, m_for(variant, options));
  const bool with_matrix = checked_power(dim, parties) <= options.matrix_cap;
  const Configuration origin(dim, std::vector<int>(static_cast<std::size_t>(parties), 0));
  const auto subsets = canonical_subsets(parties);

  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (double p : grid) {
    const ECParams params = make_params(variant, dim, parties, p, options);
    SweepRow row{.variant = variant, .dim = dim, .parties = parties, .p = p,
                 .p_th1 = th.p_th1, .p_th2 = th.p_th2};
    if (variant.ec_class == EcClass::A) {
      row.w_closed = closed_form_w(params);
    } else {
      row.w_closed = std::min(closed_form_w(params, parties, options.m_abs),
                              closed_form_w(params, parties, -options.m_abs));
    }
    if (with_matrix) {
      const auto rho = build_ec_matrix(params, options.matrix_cap);
      double w = std::numeric_limits<double>::infinity();
      for (const auto& s : subsets) w = std::min(w, causal_w(rho, origin, s, variant.coupling).w);
      row.w_matrix = w;
    }
    row.verdict = classify_ec(params, m_for(variant, options));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<CompareRow> compare(const Variant& variant, int dim, int parties,
                                const std::vector<double>& grid, const SweepOptions& options) {
  std::vector<CompareRow> rows;
  rows.reserve(grid.size());
  for (double p : grid) {
    const auto rho = build_ec_matrix(make_params(variant, dim, parties, p, options), options.matrix_cap);
    const auto report = classify(rho, variant.coupling);
    const auto ppt = ppt_check_all(rho);
    CompareRow row{.p = p, .causal = report.overall, .ppt = overall(ppt)};
    row.w_min = std::numeric_limits<double>::infinity();
    for (const auto& s : report.scores) row.w_min = std::min(row.w_min, s.w);
    row.ppt_min_eigenvalue = std::numeric_limits<double>::infinity();
    for (const auto& v : ppt) row.ppt_min_eigenvalue = std::min(row.ppt_min_eigenvalue, v.min_eigenvalue);
    row.agree = (row.causal == OverallVerdict::Entangled) == (row.ppt == PptOutcome::NptEntangled);
    rows.push_back(row);
  }
  return rows;
}

std::string census_json(const ConfigCensus& census, CouplingMode mode,
                        std::optional<std::uint64_t> greedy_distinct) {
  json doc = base_doc();
  doc["D"] = census.dim;
  doc["N"] = census.parties;
  doc["coupling"] = to_string(mode);
  doc["K"] = census.distinct;
  doc["K_bar"] = census.orthogonal;
  if (greedy_distinct) {
    doc["greedy_distinct"] = *greedy_distinct;
    doc["greedy_mismatch"] = *greedy_distinct != census.distinct;
  }
  return dump(doc);
}

std::string report_json(const CriterionReport& report) {
  json doc = base_doc();
  doc["mode"] = to_string(report.mode);
  doc["overall"] = to_string(report.overall);
  json scores = json::array();
  for (const auto& s : report.scores) {
    json row{{"config", configuration_json(s.config)},
             {"subset", subset_json(s.subset)},
             {"P_ignorance", number(s.p_ignorance)},
             {"P_transition", number(s.p_transition)},
             {"W", number(s.w)},
             {"verdict", to_string(s.verdict)}};
    if (s.p_reversed) row["P_reversed"] = number(*s.p_reversed);
    if (s.p_anti_ignorance) row["P_anti_ignorance"] = number(*s.p_anti_ignorance);
    scores.push_back(std::move(row));
  }
  doc["scores"] = std::move(scores);
  return dump(doc);
}

std::string ppt_json(const std::vector<PptVerdict>& verdicts) {
  json doc = base_doc();
  json rows = json::array();
  for (const auto& v : verdicts) {
    rows.push_back({{"subset", subset_json(v.subset)},
                    {"min_eigenvalue", number(v.min_eigenvalue)},
                    {"verdict", to_string(v.verdict)},
                    {"exact", v.exact}});
  }
  doc["overall"] = to_string(overall(verdicts));
  doc["results"] = std::move(rows);
  return dump(doc);
}

std::string threshold_json(const Variant& v, int dim, int parties,
                           const std::vector<ThresholdResult>& results) {
  json doc = base_doc();
  doc["variant"] = to_string(v);
  doc["D"] = dim;
  doc["N"] = parties;
  json rows = json::array();
  for (const auto& r : results) {
    json row{{"kind", r.kind == ThresholdKind::Single ? "single" : "window"},
             {"separable_region", r.separable_region}};
    if (r.kind == ThresholdKind::Single) {
      row["p_th"] = number(r.p_th());
    } else {
      row["m_abs"] = *r.m_abs;
      row["p_th1"] = number(r.p_th1);
      row["p_th2"] = number(r.p_th2);
      row["empty"] = r.empty();
    }
    rows.push_back(std::move(row));
  }
  doc["thresholds"] = std::move(rows);
  return dump(doc);
}

std::string threshold_csv(const Variant& v, int dim, int parties,
                          const std::vector<ThresholdResult>& results) {
  std::ostringstream out;
  out << "variant,D,N,m_abs,p_th1,p_th2\n";
  for (const auto& r : results) {
    out << to_string(v) << ',' << dim << ',' << parties << ','
        << (r.m_abs ? std::to_string(*r.m_abs) : std::string()) << ',' << format_double(r.p_th1)
        << ',' << format_double(r.p_th2) << '\n';
  }
  return out.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "variant,D,N,p,W_closed,W_matrix,p_th1,p_th2,verdict\n";
  for (const auto& r : rows) {
    out << to_string(r.variant) << ',' << r.dim << ',' << r.parties << ',' << format_double(r.p)
        << ',' << format_double(r.w_closed) << ','
        << (r.w_matrix ? format_double(*r.w_matrix) : std::string()) << ','
        << format_double(r.p_th1) << ',' << format_double(r.p_th2) << ',' << to_string(r.verdict)
        << '\n';
  }
  return out.str();
}

std::string sweep_json(const std::vector<SweepRow>& rows) {
  json doc = base_doc();
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"variant", to_string(r.variant)},
                   {"D", r.dim},
                   {"N", r.parties},
                   {"p", number(r.p)},
                   {"W_closed", number(r.w_closed)},
                   {"W_matrix", r.w_matrix ? number(*r.w_matrix) : json(nullptr)},
                   {"p_th1", number(r.p_th1)},
                   {"p_th2", number(r.p_th2)},
                   {"verdict", to_string(r.verdict)}});
  }
  doc["rows"] = std::move(out);
  return dump(doc);
}

std::string compare_csv(const Variant& v, int dim, int parties, const std::vector<CompareRow>& rows) {
  std::ostringstream out;
  out << "variant,D,N,p,W_min,ppt_min_eigenvalue,causal,ppt,agree\n";
  for (const auto& r : rows) {
    out << to_string(v) << ',' << dim << ',' << parties << ',' << format_double(r.p) << ','
        << format_double(r.w_min) << ',' << format_double(r.ppt_min_eigenvalue) << ','
        << to_string(r.causal) << ',' << to_string(r.ppt) << ',' << (r.agree ? "true" : "false")
        << '\n';
  }
  return out.str();
}

std::string compare_json(const Variant& v, int dim, int parties, const std::vector<CompareRow>& rows) {
  json doc = base_doc();
  doc["variant"] = to_string(v);
  doc["D"] = dim;
  doc["N"] = parties;
  std::size_t disagreements = 0;
  json out = json::array();
  for (const auto& r : rows) {
    if (!r.agree) ++disagreements;
    out.push_back({{"p", number(r.p)},
                   {"W_min", number(r.w_min)},
                   {"ppt_min_eigenvalue", number(r.ppt_min_eigenvalue)},
                   {"causal", to_string(r.causal)},
                   {"ppt", to_string(r.ppt)},
                   {"agree", r.agree}});
  }
  doc["disagreements"] = disagreements;
  doc["rows"] = std::move(out);
  return dump(doc);
}

std::string duality_json(int dim, int parties, const DualityResiduals& r) {
  json doc = base_doc();
  doc["D"] = dim;
  doc["N"] = parties;
  doc["r_a"] = number(r.r_a);
  doc["r_b"] = number(r.r_b);
  return dump(doc);
}

std::string crossover_json(int dim, double n_cr) {
  json doc = base_doc();
  doc["D"] = dim;
  doc["N_cr"] = number(n_cr);
  return dump(doc);
}

}  // namespace causal_sep
