#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "plf/antipode.hpp"
#include "plf/linearization.hpp"
#include "plf/prelie.hpp"
#include "plf/spec_io.hpp"
#include "plf/verify.hpp"

namespace plf::cli {

enum Exit : int { ok = 0, check_failed = 1, bad_input = 2 };

namespace detail {

using ojson = nlohmann::ordered_json;

inline std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw InputError("cannot read file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void require_element(const CoproductSpec &spec, GenId id) {
  if (!spec.declares(id))
    throw InputError("unknown element id " + std::to_string(id) + " in spec \"" + spec.name + "\"");
}

inline ojson terms_json(const Polynomial &p) {
  ojson terms = ojson::array();
  for (const auto &[m, c] : p)
    terms.push_back({{"monomial", m.indices()}, {"coeff", c.str()}});
  return terms;
}

inline ojson terms_json(const Tensor &t) {
  ojson terms = ojson::array();
  for (const auto &[key, c] : t) {
    ojson legs = ojson::array();
    for (const auto &m : key)
      legs.push_back(m.indices());
    terms.push_back({{"legs", legs}, {"coeff", c.str()}});
  }
  return terms;
}

inline ojson findings_json(const std::vector<Finding> &findings) {
  ojson out = ojson::array();
  for (const auto &f : findings)
    out.push_back({{"check", f.check}, {"subject", f.subject}, {"detail", f.detail}});
  return out;
}

inline ojson findings_json(const std::vector<PreLieFinding> &findings) {
  ojson out = ojson::array();
  for (const auto &f : findings)
    out.push_back({{"check", f.check}, {"subject", f.subject}, {"detail", f.detail}});
  return out;
}

struct Options {
  std::string spec_path, prelie_path, format = "text", method = "forest", pairing = "symmetric";
  GenId element = 0;
  std::size_t iterate = 0, k = 0;
  int max_degree = 0;
};

inline int antipode(const Options &o, std::ostream &out) {
  CoproductSpec spec = load_spec(read_file(o.spec_path));
  require_element(spec, o.element);
  auto method = parse_method(o.method);
  if (!method)
    throw InputError("unknown method \"" + o.method + "\"");
  Polynomial s = AntipodeCalculator(spec).generator(o.element, *method);
  if (o.format == "json")
    out << ojson{{"element", o.element}, {"method", o.method}, {"terms", terms_json(s)}}.dump(2) << "\n";
  else
    out << to_string(s) << "\n";
  return ok;
}

inline int coproduct(const Options &o, std::ostream &out) {
  CoproductSpec spec = load_spec(read_file(o.spec_path));
  require_element(spec, o.element);
  std::size_t k = o.iterate ? o.iterate : 2;
  Tensor t = CoproductEngine(spec).iterated_reduced(o.element, k);
  if (o.format == "json")
    out << ojson{{"element", o.element}, {"iterate", k}, {"terms", terms_json(t)}}.dump(2) << "\n";
  else
    out << to_string(t) << "\n";
  return ok;
}

inline int trees(const Options &o, std::ostream &out) {
  CoproductSpec spec = load_spec(read_file(o.spec_path));
  require_element(spec, o.element);
  TreeCatalog catalog(spec);
  const auto &all = catalog.trees(o.element);
  ojson rows = ojson::array();
  for (const auto &t : all) {
    TreeStats s = tree_stats(t, spec);
    int sign = s.length % 2 ? -1 : 1;
    if (o.format == "json")
      rows.push_back({{"tree", to_string(t)},
                      {"l", s.length},
                      {"h", s.height},
                      {"sign", sign},
                      {"lambda", s.lambda.str()},
                      {"multiplicity", multiplicity(t).str()},
                      {"v", s.value.indices()}});
    else
      out << to_string(t) << "  l=" << s.length << " h=" << s.height << " sign=" << sign << " lambda=" << s.lambda
          << " multiplicity=" << multiplicity(t) << " v=" << s.value << "\n";
  }
  if (o.format == "json")
    out << ojson{{"element", o.element}, {"count", all.size()}, {"trees", rows}}.dump(2) << "\n";
  else
    out << all.size() << " trees\n";
  return ok;
}

inline int linearizations(const Options &o, std::ostream &out) {
  CoproductSpec spec = load_spec(read_file(o.spec_path));
  require_element(spec, o.element);
  if (o.k < 1)
    throw InputError("--k must be >= 1");
  TreeCatalog catalog(spec);
  Tensor total(o.k);
  ojson rows = ojson::array();
  for (const auto &t : catalog.trees(o.element)) {
    Poset p = flatten(t);
    Rational w = weight(t, spec);
    for (const auto &f : k_linearizations(p, o.k)) {
      Tensor chain = chain_of(p, f);
      total.add_scaled(chain, w);
      if (o.format == "json")
        rows.push_back({{"tree", to_string(t)}, {"levels", f.level}, {"weight", w.str()}, {"chain", terms_json(chain)}});
      else {
        out << to_string(t) << "  levels=";
        for (std::size_t v = 0; v < f.level.size(); ++v)
          out << (v ? "," : "") << f.level[v];
        out << "  weight=" << w << "  chain=" << chain << "\n";
      }
    }
  }
  if (o.format == "json")
    out << ojson{{"element", o.element}, {"k", o.k}, {"linearizations", rows}, {"sum", terms_json(total)}}.dump(2)
        << "\n";
  else
    out << "sum: " << total << "\n";
  return ok;
}

inline int verify(const Options &o, std::ostream &out) {
  CoproductSpec spec = parse_spec(read_file(o.spec_path));
  VerifyReport report = verify_spec(spec, o.max_degree);
  if (o.format == "json") {
    out << ojson{{"spec", spec.name},
                 {"max_degree", o.max_degree},
                 {"ok", report.ok()},
                 {"passed", report.passed},
                 {"violations", findings_json(report.findings)}}
               .dump(2)
        << "\n";
  } else {
    for (const auto &name : report.passed)
      out << "PASS " << name << "\n";
    for (const auto &f : report.findings)
      out << "FAIL " << f.check << " at " << f.subject << ": " << f.detail << "\n";
    out << (report.ok() ? "verify: ok" : "verify: " + std::to_string(report.findings.size()) + " violations") << "\n";
  }
  return report.ok() ? ok : check_failed;
}

inline int compare(const Options &o, std::ostream &out) {
  CoproductSpec spec = load_spec(read_file(o.spec_path));
  CompareReport report = compare_methods(spec, o.max_degree);
  if (o.format == "json") {
    ojson rows = ojson::array();
    for (const auto &r : report.rows) {
      ojson lengths = ojson::object();
      for (const auto &[l, n] : r.stats.trees_by_length)
        lengths[std::to_string(l)] = n;
      rows.push_back({{"element", r.id},
                      {"degree", r.degree},
                      {"dyson-salam", r.stats.dyson_salam_terms},
                      {"forest", r.stats.forest_terms},
                      {"antipode-terms", r.antipode_terms},
                      {"trees-by-length", lengths},
                      {"agree", r.agree}});
    }
    out << ojson{{"spec", spec.name}, {"ok", report.ok()}, {"rows", rows}}.dump(2) << "\n";
  } else {
    for (const auto &r : report.rows) {
      out << "b" << r.id << " degree=" << r.degree << " dyson-salam=" << r.stats.dyson_salam_terms
          << " forest=" << r.stats.forest_terms << " antipode-terms=" << r.antipode_terms
          << " agree=" << (r.agree ? "yes" : "no") << " by-length=";
      bool first = true;
      for (const auto &[l, n] : r.stats.trees_by_length) {
        out << (first ? "" : ",") << l << ":" << n;
        first = false;
      }
      out << "\n";
    }
  }
  return report.ok() ? ok : check_failed;
}

inline int dualize(const Options &o, std::ostream &out) {
  PreLieSpec spec = load_prelie(read_file(o.prelie_path));
  Pairing pairing = Pairing::symmetric;
  if (o.pairing == "naive")
    pairing = Pairing::naive;
  else if (o.pairing != "symmetric")
    throw InputError("unknown pairing \"" + o.pairing + "\"");
  out << save_spec(plf::dualize(spec, o.max_degree, pairing));
  return ok;
}

inline int prelie_verify(const Options &o, std::ostream &out) {
  PreLieSpec spec = load_prelie(read_file(o.prelie_path));
  PreLieAlgebra alg(spec);
  int degree = o.max_degree > 0 ? o.max_degree : alg.truncation();
  struct Part {
    std::string name;
    PreLieReport report;
  };
  std::vector<Part> parts{{"prelie-identity", prelie_check(alg)},
                          {"star-associativity", check_star_associativity(alg, degree)},
                          {"filtration", check_filtration(alg, degree)},
                          {"hopf-compatibility", check_hopf_compatibility(alg, degree)}};
  bool all_ok = true;
  ojson checks = ojson::array();
  for (const auto &p : parts) {
    all_ok = all_ok && p.report.ok();
    if (o.format == "json") {
      checks.push_back({{"check", p.name},
                        {"ok", p.report.ok()},
                        {"instances", p.report.instances},
                        {"skipped", p.report.skipped},
                        {"violations", findings_json(p.report.findings)}});
      continue;
    }
    out << (p.report.ok() ? "PASS " : "FAIL ") << p.name << " (" << p.report.instances << " instances, "
        << p.report.skipped << " truncated)\n";
    for (const auto &f : p.report.findings)
      out << "  " << f.subject << ": " << f.detail << "\n";
  }
  if (o.format == "json")
    out << ojson{{"prelie", spec.name}, {"ok", all_ok}, {"checks", checks}}.dump(2) << "\n";
  else
    out << (all_ok ? "prelie-verify: ok" : "prelie-verify: failed") << "\n";
  return all_ok ? ok : check_failed;
}

} // namespace detail

/// Runs one command; `args` excludes the program name.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  detail::Options o;
  int (*action)(const detail::Options &, std::ostream &) = nullptr;

  CLI::App app{"Antipodes of right-handed polynomial Hopf algebras", "plf"};
  app.require_subcommand(1);
  auto format = [&](CLI::App *sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };
  auto spec_element = [&](CLI::App *sub) {
    sub->add_option("--spec", o.spec_path, "Coproduct spec document")->required();
    sub->add_option("--element", o.element, "Generator id")->required();
  };

  auto *anti = app.add_subcommand("antipode", "S(b_i) by one of the three methods");
  spec_element(anti);
  anti->add_option("--method", o.method, "forest, dyson-salam or bogoliubov")->required();
  format(anti);
  anti->callback([&] { action = detail::antipode; });

  auto *cop = app.add_subcommand("coproduct", "Reduced coproduct, or its k-fold iterate");
  spec_element(cop);
  cop->add_option("--iterate", o.iterate, "Number of tensor legs (default 2)")->check(CLI::PositiveNumber);
  format(cop);
  cop->callback([&] { action = detail::coproduct; });

  auto *trees = app.add_subcommand("trees", "Decorated trees of a generator with their statistics");
  spec_element(trees);
  format(trees);
  trees->callback([&] { action = detail::trees; });

  auto *lin = app.add_subcommand("linearizations", "k-linearizations of every tree of a generator");
  spec_element(lin);
  lin->add_option("--k", o.k, "Number of levels")->required()->check(CLI::PositiveNumber);
  format(lin);
  lin->callback([&] { action = detail::linearizations; });

  auto *ver = app.add_subcommand("verify", "Hopf axioms and antipode checks up to a degree");
  ver->add_option("--spec", o.spec_path, "Coproduct spec document")->required();
  ver->add_option("--max-degree", o.max_degree, "Degree bound")->required()->check(CLI::NonNegativeNumber);
  format(ver);
  ver->callback([&] { action = detail::verify; });

  auto *cmp = app.add_subcommand("compare", "Method agreement and term counts per generator");
  cmp->add_option("--spec", o.spec_path, "Coproduct spec document")->required();
  cmp->add_option("--max-degree", o.max_degree, "Degree bound")->required()->check(CLI::NonNegativeNumber);
  format(cmp);
  cmp->callback([&] { action = detail::compare; });

  auto *gen = app.add_subcommand("gen", "Emit a built-in spec document");
  gen->require_subcommand(1);
  auto *fdb = gen->add_subcommand("fdb", "Faa di Bruno Hopf algebra");
  fdb->add_option("--max-degree", o.max_degree, "Highest generator degree")->required()->check(CLI::PositiveNumber);
  fdb->callback([&] {
    action = [](const detail::Options &opt, std::ostream &os) {
      os << save_spec(faa_di_bruno_spec(opt.max_degree));
      return static_cast<int>(ok);
    };
  });
  auto *graft = gen->add_subcommand("grafting", "Free preLie algebra of rooted trees");
  graft->add_option("--max-degree", o.max_degree, "Vertex bound")->required()->check(CLI::PositiveNumber);
  graft->callback([&] {
    action = [](const detail::Options &opt, std::ostream &os) {
      os << save_prelie(grafting_instance(opt.max_degree));
      return static_cast<int>(ok);
    };
  });

  auto *dual = app.add_subcommand("dualize", "Coproduct spec dual to a preLie algebra");
  dual->add_option("--prelie", o.prelie_path, "PreLie document")->required();
  dual->add_option("--max-degree", o.max_degree, "Degree bound")->required()->check(CLI::PositiveNumber);
  dual->add_option("--pairing", o.pairing, "symmetric or naive")->check(CLI::IsMember({"symmetric", "naive"}));
  dual->callback([&] { action = detail::dualize; });

  auto *plv = app.add_subcommand("prelie-verify", "PreLie identity, associativity of *, filtration");
  plv->add_option("--prelie", o.prelie_path, "PreLie document")->required();
  plv->add_option("--max-degree", o.max_degree, "Degree bound (default: truncation)")->check(CLI::PositiveNumber);
  format(plv);
  plv->callback([&] { action = detail::prelie_verify; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &e) {
    app.exit(e, out, err);
    return ok;
  } catch (const CLI::CallForAllHelp &e) {
    app.exit(e, out, err);
    return ok;
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return bad_input;
  }

  try {
    return action(o, out);
  } catch (const ConstructionError &e) {
    err << "error: " << e.what() << "\n";
    return check_failed;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return bad_input;
  }
}

} // namespace plf::cli
