#pragma once

#include <string>
#include <vector>

#include "plf/antipode.hpp"
#include "plf/coproduct.hpp"
#include "plf/hopf_spec.hpp"

namespace plf {

struct Finding {
  std::string check;
  std::string subject;
  std::string detail;
};

struct VerifyReport {
  std::vector<Finding> findings;
  std::vector<std::string> passed; // names of checks that ran clean
  bool ok() const { return findings.empty(); }
};

namespace detail {

inline void record(VerifyReport &report, const std::string &name, const std::vector<CheckFailure> &failures) {
  if (failures.empty())
    report.passed.push_back(name);
  for (const auto &f : failures)
    report.findings.push_back({f.check, to_string(f.subject), f.detail});
}

} // namespace detail

/// Structural validation, coassociativity, counit, S∗I = ηε for every
/// antipode method and method agreement, all up to max_degree.
/// Structural violations end the run since nothing downstream is defined.
inline VerifyReport verify_spec(const CoproductSpec &spec, int max_degree) {
  if (max_degree < 0)
    throw InputError("max degree must be >= 0");
  VerifyReport report;
  auto structural = validate_spec(spec);
  for (const auto &v : structural)
    report.findings.push_back({"structure", v.entry ? "entry " + std::to_string(*v.entry) : spec.name, v.message});
  if (!structural.empty())
    return report;
  report.passed.push_back("structure");

  AntipodeCalculator calc(spec);
  const auto &engine = calc.engine();
  detail::record(report, "coassociativity", check_coassociativity(engine, max_degree));
  detail::record(report, "counit", check_counit(engine, max_degree));
  for (Method m : all_methods) {
    auto failures = convolution_check(engine, max_degree, calc.endomap(m));
    for (auto &f : failures)
      f.check += " (" + std::string(to_string(m)) + ")";
    detail::record(report, "convolution (" + std::string(to_string(m)) + ")", failures);
  }

  std::vector<CheckFailure> disagreements;
  for (const auto &g : spec.generators) {
    if (g.degree > max_degree)
      continue;
    Polynomial reference = calc.generator(g.id, Method::forest);
    for (Method m : {Method::dyson_salam, Method::bogoliubov}) {
      Polynomial other = calc.generator(g.id, m);
      if (!(other == reference))
        disagreements.push_back({"agreement", Monomial::generator(g.id),
                                 std::string(to_string(m)) + " - forest = " + to_string(other - reference)});
    }
  }
  detail::record(report, "agreement", disagreements);
  return report;
}

struct CompareRow {
  GenId id = 0;
  int degree = 0;
  bool agree = false;
  TermStats stats;
  std::size_t antipode_terms = 0; // monomials in S(b_i)
};

struct CompareReport {
  std::vector<CompareRow> rows;
  bool ok() const {
    for (const auto &r : rows)
      if (!r.agree)
        return false;
    return true;
  }
};

/// Method agreement and term statistics for every generator up to max_degree.
inline CompareReport compare_methods(const CoproductSpec &spec, int max_degree) {
  AntipodeCalculator calc(spec);
  CompareReport report;
  for (const auto &g : spec.generators) {
    if (g.degree > max_degree)
      continue;
    CompareRow row{g.id, g.degree, true, calc.term_stats(g.id), 0};
    Polynomial reference = calc.generator(g.id, Method::forest);
    row.antipode_terms = reference.size();
    for (Method m : {Method::dyson_salam, Method::bogoliubov})
      row.agree = row.agree && calc.generator(g.id, m) == reference;
    report.rows.push_back(row);
  }
  return report;
}

} // namespace plf
