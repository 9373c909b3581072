#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ordergrowth/cone.hpp"
#include "ordergrowth/gamma.hpp"
#include "ordergrowth/lifted.hpp"
#include "ordergrowth/order_space.hpp"
#include "ordergrowth/quasimorphism.hpp"
#include "ordergrowth/root_datum.hpp"

namespace og::cli {

namespace detail {

enum class CellKind { integer, number, text, boolean };

struct Cell {
  std::string text;
  CellKind kind = CellKind::text;
};

inline std::string fmt9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline Cell num_cell(double v) {
  if (!std::isfinite(v)) return {fmt9(v), CellKind::text};
  return {fmt9(v), CellKind::number};
}

inline Cell int_cell(long long v) { return {std::to_string(v), CellKind::integer}; }
inline Cell text_cell(std::string s) { return {std::move(s), CellKind::text}; }
inline Cell bool_cell(bool b) { return {b ? "true" : "false", CellKind::boolean}; }

struct Table {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

inline std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (static_cast<unsigned char>(c) < 0x20) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\u%04x", c);
      out += buf;
    } else {
      out += c;
    }
  }
  return out;
}

inline std::string render_csv(const Table& t) {
  std::string s;
  for (size_t i = 0; i < t.columns.size(); ++i) {
    if (i) s += ',';
    s += t.columns[i];
  }
  s += '\n';
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) s += ',';
      s += row[i].text;
    }
    s += '\n';
  }
  return s;
}

inline std::string render_json(const Table& t) {
  std::string s = "{\n  \"command\": \"" + json_escape(t.command) + "\",\n  \"columns\": [";
  for (size_t i = 0; i < t.columns.size(); ++i) {
    if (i) s += ", ";
    s += '"' + json_escape(t.columns[i]) + '"';
  }
  s += "],\n  \"rows\": [\n";
  for (size_t r = 0; r < t.rows.size(); ++r) {
    s += "    [";
    for (size_t i = 0; i < t.rows[r].size(); ++i) {
      if (i) s += ", ";
      const Cell& c = t.rows[r][i];
      if (c.kind == CellKind::text)
        s += '"' + json_escape(c.text) + '"';
      else
        s += c.text;
    }
    s += r + 1 < t.rows.size() ? "],\n" : "]\n";
  }
  s += "  ]\n}\n";
  return s;
}

// Writes to `out` unless a path was given; relative paths are joined onto
// ORDERGROWTH_OUT_DIR when that is set.
inline void emit(const Table& t, const std::string& format, const std::string& out_path,
                 std::ostream& out) {
  const std::string rendered = format == "json" ? render_json(t) : render_csv(t);
  if (out_path.empty()) {
    out << rendered;
    return;
  }
  std::string path = out_path;
  if (path[0] != '/') {
    if (const char* dir = std::getenv("ORDERGROWTH_OUT_DIR")) {
      std::string d = dir;
      if (!d.empty()) path = d + "/" + path;
    }
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open output file: " + path);
  f << rendered;
}

template <class Element>
Table gamma_table(const GroupModel<Element>& model, const Element& g, const Element& h,
                  long long n_max) {
  const GrowthTrace tr = relative_growth(model, g, h, n_max);
  Table t{"gamma", {"n", "gamma", "quotient", "lower", "upper"}, {}};
  for (const GrowthRow& r : tr.rows)
    t.rows.push_back({int_cell(r.n), int_cell(r.gamma), num_cell(r.quotient), num_cell(r.lower),
                      num_cell(r.upper)});
  return t;
}

template <class Element>
Table distance_table(const GroupModel<Element>& model, const Element& g, const Element& h,
                     long long n_max) {
  const GrowthEstimate d = order_distance(model, g, h, n_max);
  Table t{"distance", {"value", "lower", "upper", "n_max", "certified"}, {}};
  t.rows.push_back(
      {num_cell(d.value), num_cell(d.lower), num_cell(d.upper), int_cell(n_max), bool_cell(d.certified)});
  return t;
}

template <class Element>
Table convergence_table(const GroupModel<Element>& model, const Element& g, const Element& h,
                        long long n_max) {
  if (!model.certificate)
    throw DomainError("convergence requires a model with a quasimorphism certificate");
  const auto& cert = *model.certificate;
  std::vector<long long> schedule;
  for (long long n = 1; n < n_max; n <<= 1) schedule.push_back(n);
  schedule.push_back(n_max);
  Table t{"convergence", {"n", "quotient", "lower", "upper"}, {}};
  for (const long long n : schedule) {
    const long long gam = gamma_n(model, g, h, n);
    const Bracket b = gamma_bounds(cert.f, cert.c1, g, h, n);
    t.rows.push_back({int_cell(n), num_cell(static_cast<double>(gam) / static_cast<double>(n)),
                      num_cell(b.lower), num_cell(b.upper)});
  }
  return t;
}

inline Sampler<long long> make_sampler(const GroupModel<long long>&) {
  return [](std::mt19937_64& rng) {
    std::uniform_int_distribution<long long> d(-1000, 1000);
    return d(rng);
  };
}

inline Sampler<og::sl2::LiftedElement> make_sampler(const GroupModel<og::sl2::LiftedElement>&) {
  return [](std::mt19937_64& rng) { return og::sl2::random_element_wide(rng); };
}

inline Sampler<Eigen::VectorXd> make_sampler(const GroupModel<Eigen::VectorXd>&) {
  throw DomainError("sandwich requires a model with a quasimorphism certificate");
}

template <class Element>
Table sandwich_table(const GroupModel<Element>& model, double c1, bool c1_given, double c2,
                     long long trials, unsigned long long seed) {
  if (!model.certificate)
    throw DomainError("sandwich requires a model with a quasimorphism certificate");
  const auto& cert = *model.certificate;
  const Sampler<Element> sampler = make_sampler(model);
  const SandwichReport rep =
      sandwich_check(model, cert.f, c1_given ? c1 : cert.c1, c2, sampler, trials, seed);
  Table t{"sandwich", {"trials", "uncertain", "counterexamples", "verdict"}, {}};
  t.rows.push_back({int_cell(rep.trials), int_cell(rep.uncertain),
                    int_cell(static_cast<long long>(rep.counterexamples.size())),
                    text_cell(rep.ok() ? "no counterexamples" : "counterexamples found")});
  return t;
}

// Runs fn with the resolved model and an element parser for its element type.
template <class F>
Table with_model(const std::string& selector, double margin, F&& fn) {
  if (selector == "int") {
    const GroupModel<long long> m = integers_model();
    auto parse = [](const std::string& s) -> long long {
      try {
        size_t used = 0;
        const long long v = std::stoll(s, &used);
        if (used != s.size()) throw ParseError("");
        return v;
      } catch (const std::exception&) {
        throw ParseError("bad integer element: '" + s + "'");
      }
    };
    return fn(m, parse);
  }
  if (selector.rfind("cone:", 0) == 0) {
    const ConeOrder<double> cone = to_double(load_cone_file(selector.substr(5)), margin);
    const GroupModel<Eigen::VectorXd> m = cone_model(cone);
    auto parse = [](const std::string& s) { return to_double(parse_rational_vector(s)); };
    return fn(m, parse);
  }
  if (selector == "sl2") {
    const GroupModel<og::sl2::LiftedElement> m = og::sl2::sl2_model();
    auto parse = [](const std::string& s) { return og::sl2::parse_lifted_literal(s); };
    return fn(m, parse);
  }
  throw ParseError("unknown model: '" + selector + "' (expected int, cone:<file>, or sl2)");
}

inline Table mu_table(const std::string& family, int rank, int p, int q, const std::string& x_text) {
  const HermitianRootDatum d = family == "sp" ? build(family, rank) : build(family, p, q);
  const RationalVector x = x_text == "J" ? d.j_coords : parse_rational_vector(x_text);
  const Rational value = mu_on_cartan(d, x);
  const DatumReport rep = validate(d);
  const WeylReport weyl = weyl_invariance_check(d);
  const bool jmin = j_in_minimal_cone(d);
  const std::string params = family == "sp" ? "n=" + std::to_string(rank)
                                            : "p=" + std::to_string(p) + ",q=" + std::to_string(q);
  Table t{"mu", {"field", "value"}, {}};
  t.rows.push_back({text_cell("family"), text_cell(family)});
  t.rows.push_back({text_cell("params"), text_cell(params)});
  t.rows.push_back({text_cell("mu"), text_cell(value.str())});
  t.rows.push_back({text_cell("datum_ok"), bool_cell(rep.ok())});
  t.rows.push_back({text_cell("normalization_ok"), bool_cell(rep.normalization_ok)});
  t.rows.push_back({text_cell("strongly_orthogonal_ok"), bool_cell(rep.strongly_orthogonal_ok)});
  t.rows.push_back({text_cell("integrality_ok"), bool_cell(rep.integrality_ok)});
  t.rows.push_back({text_cell("reflection_closure_ok"), bool_cell(rep.reflection_closure_ok)});
  t.rows.push_back({text_cell("coroot_pairing_ok"), bool_cell(rep.coroot_pairing_ok)});
  t.rows.push_back({text_cell("weyl_order"), int_cell(weyl.order)});
  t.rows.push_back({text_cell("fixed_dim"), int_cell(static_cast<long long>(weyl.fixed_dim))});
  t.rows.push_back({text_cell("mu_invariant"), bool_cell(weyl.mu_invariant)});
  t.rows.push_back({text_cell("j_in_minimal_cone"), bool_cell(jmin)});
  return t;
}

}  // namespace detail

// Entry point shared by the binary and the tests. Returns the process exit
// code: 0 success, 2 usage or domain errors, 3 exhausted budgets or refused
// order decisions. All table output goes to `out`, diagnostics to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"relative growth, order distances and quasimorphism checks"};
  app.name("ordergrowth");
  // long-form help only: the default -h short flag would shadow the --h option
  app.set_help_flag("--help", "print help and exit");
  app.require_subcommand(1);

  struct Common {
    std::string model = "int";
    std::string g, h;
    long long n_max = 256;
    std::string format = "csv";
    std::string out_path;
    double tol = 1e-9;
    unsigned long long seed = 12345;
  };

  auto add_common = [](CLI::App* sub, Common& c, bool with_elements) {
    sub->set_help_flag("--help", "print help and exit");
    if (with_elements) {
      sub->add_option("--model", c.model, "model: int, cone:<file>, or sl2");
      sub->add_option("--g", c.g, "base element literal")->required();
      sub->add_option("--h", c.h, "measured element literal")->required();
    }
    sub->add_option("--format", c.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", c.out_path, "output file (relative paths join ORDERGROWTH_OUT_DIR)");
    sub->add_option("--tol", c.tol, "floating-point comparison margin");
    sub->add_option("--seed", c.seed, "random seed");
  };

  Common gamma_cfg, dist_cfg, conv_cfg, mu_cfg, sand_cfg;
  dist_cfg.n_max = 512;

  CLI::App* cmd_gamma = app.add_subcommand("gamma", "relative growth table along the doubling schedule");
  add_common(cmd_gamma, gamma_cfg, true);
  cmd_gamma->add_option("--n", gamma_cfg.n_max, "largest power n");

  CLI::App* cmd_distance = app.add_subcommand("distance", "order-space distance between two dominants");
  add_common(cmd_distance, dist_cfg, true);
  cmd_distance->add_option("--n", dist_cfg.n_max, "growth estimation depth");

  CLI::App* cmd_convergence =
      app.add_subcommand("convergence", "measured quotients against the certified envelope");
  add_common(cmd_convergence, conv_cfg, true);
  cmd_convergence->add_option("--n", conv_cfg.n_max, "largest power n");

  CLI::App* cmd_mu = app.add_subcommand("mu", "root-datum mu value and exact datum checks");
  std::string family = "sp", x_text = "J";
  int rank = 0, p = 0, q = 0;
  cmd_mu->add_option("--family", family, "root-datum family: sp or su");
  cmd_mu->add_option("--rank", rank, "sp rank n");
  cmd_mu->add_option("--p", p, "su first block size");
  cmd_mu->add_option("--q", q, "su second block size");
  cmd_mu->add_option("--x", x_text, "Cartan vector: J or comma-separated rationals");
  add_common(cmd_mu, mu_cfg, false);

  CLI::App* cmd_sandwich = app.add_subcommand("sandwich", "sampled two-sided quasimorphism bound check");
  double c1 = 0.0, c2 = 0.0;
  long long trials = 500;
  cmd_sandwich->add_option("--model", sand_cfg.model, "model: int or sl2");
  CLI::Option* c1_opt = cmd_sandwich->add_option("--c1", c1, "upper threshold (default: certificate)");
  cmd_sandwich->add_option("--c2", c2, "lower threshold");
  cmd_sandwich->add_option("--trials", trials, "sample count");
  add_common(cmd_sandwich, sand_cfg, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    detail::Table table;
    if (*cmd_gamma) {
      table = detail::with_model(gamma_cfg.model, gamma_cfg.tol, [&](const auto& m, auto parse) {
        return detail::gamma_table(m, parse(gamma_cfg.g), parse(gamma_cfg.h), gamma_cfg.n_max);
      });
      detail::emit(table, gamma_cfg.format, gamma_cfg.out_path, out);
    } else if (*cmd_distance) {
      table = detail::with_model(dist_cfg.model, dist_cfg.tol, [&](const auto& m, auto parse) {
        return detail::distance_table(m, parse(dist_cfg.g), parse(dist_cfg.h), dist_cfg.n_max);
      });
      detail::emit(table, dist_cfg.format, dist_cfg.out_path, out);
    } else if (*cmd_convergence) {
      table = detail::with_model(conv_cfg.model, conv_cfg.tol, [&](const auto& m, auto parse) {
        return detail::convergence_table(m, parse(conv_cfg.g), parse(conv_cfg.h), conv_cfg.n_max);
      });
      detail::emit(table, conv_cfg.format, conv_cfg.out_path, out);
    } else if (*cmd_mu) {
      table = detail::mu_table(family, rank, p, q, x_text);
      detail::emit(table, mu_cfg.format, mu_cfg.out_path, out);
    } else if (*cmd_sandwich) {
      table = detail::with_model(sand_cfg.model, sand_cfg.tol, [&](const auto& m, auto) {
        return detail::sandwich_table(m, c1, c1_opt->count() > 0, c2, trials, sand_cfg.seed);
      });
      detail::emit(table, sand_cfg.format, sand_cfg.out_path, out);
    }
    return 0;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const OracleError& e) {  // includes refused order decisions
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace og::cli
