#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "mflag/catalog.hpp"
#include "mflag/classify.hpp"
#include "mflag/connection.hpp"
#include "mflag/curvature_pairings.hpp"
#include "mflag/matsumoto.hpp"
#include "mflag/space_file.hpp"

namespace mflag::cli {

namespace {

// Human text or key=value records, in emission order.
class Emitter {
 public:
  Emitter(std::ostream& out, bool records) : out_(out), records_(records) {}

  bool records() const { return records_; }

  void section(std::string_view title) {
    if (!records_) out_ << "== " << title << " ==\n";
  }
  void field(std::string_view key, std::string_view value) {
    if (records_) {
      out_ << key << '=' << value << '\n';
    } else {
      out_ << "  " << key << ": " << value << '\n';
    }
  }
  void number(std::string_view key, double v) { field(key, num(v)); }
  void boolean(std::string_view key, bool v) { field(key, v ? "true" : "false"); }
  void maybe(std::string_view key, const std::optional<double>& v) {
    field(key, v ? num(*v) : std::string("none"));
  }
  void tri(std::string_view key, const std::optional<bool>& v) {
    field(key, v ? (*v ? "true" : "false") : "undetermined");
  }
  void vector(std::string_view key, const Vec& v) {
    std::string s;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (i > 0) s += ',';
      s += num(v[i]);
    }
    field(key, s);
  }

  std::string num(double v) const {
    if (v == 0.0) v = 0.0;  // drop the sign of -0
    return records_ ? fmt::format("{:.17g}", v) : fmt::format("{:.10g}", v);
  }

 private:
  std::ostream& out_;
  bool records_;
};

struct Loaded {
  MatsumotoSpace space;
  Tolerances tol;
};

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

std::string indices_text(const std::vector<int>& idx) {
  std::vector<std::string> parts;
  for (int i : idx) parts.push_back(std::to_string(i + 1));
  return join(parts, ",");
}

int report_error(const GeometryError& e, Emitter& em, std::ostream& err, int code) {
  em.field("status", "fail");
  em.field("error", e.name());
  if (!e.indices().empty()) em.field("worst_indices", indices_text(e.indices()));
  em.field("message", e.what());
  err << "error: " << e.what() << '\n';
  return code;
}

int command_error(const GeometryError& e, Emitter& em, std::ostream& err) {
  return report_error(e, em, err,
                      e.code() == ErrorCode::ParseError ? kExitParse : kExitPrecondition);
}

Tolerances resolve_tolerances(const CommonOptions& opts, const SpaceFile& file) {
  Tolerances tol = apply_overrides(Tolerances{}, file);
  if (opts.tol_structural) tol.structural = *opts.tol_structural;
  if (opts.tol_agree) tol.agree = *opts.tol_agree;
  if (opts.fd_step) tol.fd_step = *opts.fd_step;
  return tol;
}

// Returns nullopt after reporting; `code` carries the exit status.
std::optional<Loaded> load(const CommonOptions& opts, Emitter& em, std::ostream& err,
                           int& code) {
  SpaceFile file;
  try {
    file = read_space_file(opts.path);
  } catch (const GeometryError& e) {
    code = report_error(e, em, err, kExitParse);
    return std::nullopt;
  }
  const Tolerances tol = resolve_tolerances(opts, file);
  try {
    return Loaded{build_space(file, tol), tol};
  } catch (const GeometryError& e) {
    code = report_error(e, em, err, kExitValidation);
    return std::nullopt;
  }
}

std::vector<std::string> m_names(const MatsumotoSpace& space) {
  std::vector<std::string> names;
  if (space.split.trivial_isotropy()) return space.algebra.basis_names();
  for (int i = 0; i < space.split.m_dim(); ++i) names.push_back("m" + std::to_string(i + 1));
  return names;
}

Vec parse_vector(const std::string& text, const MatsumotoSpace& space, const char* what) {
  const auto& names = space.algebra.basis_names();
  const auto it = std::find(names.begin(), names.end(), text);
  if (it != names.end()) return space.algebra.basis_vector(static_cast<int>(it - names.begin()));

  std::string cleaned = text;
  std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
  std::istringstream in(cleaned);
  std::vector<double> values;
  std::string token;
  while (in >> token) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw GeometryError(ErrorCode::ParseError,
                          std::string(what) + ": cannot read '" + token + "' as a number");
    }
  }
  if (static_cast<int>(values.size()) != space.dim()) {
    throw GeometryError(ErrorCode::ParseError,
                        std::string(what) + ": expected " + std::to_string(space.dim()) +
                            " coordinates or a basis name");
  }
  return Eigen::Map<const Vec>(values.data(), static_cast<Eigen::Index>(values.size()));
}

RouteOptions parse_routes(const std::string& text, const CommonOptions& opts,
                          const Tolerances& tol) {
  RouteOptions ro;
  ro.force = opts.force;
  ro.tol = tol;
  if (text.empty() || text == "all") return ro;
  ro.routes = 0;
  ro.explicit_routes = true;
  std::string cleaned = text;
  std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
  std::istringstream in(cleaned);
  std::string token;
  while (in >> token) {
    if (token == "direct") {
      ro.routes |= kRouteDirect;
    } else if (token == "closed") {
      ro.routes |= kRouteClosed;
    } else if (token == "bi-invariant") {
      ro.routes |= kRouteBiInvariant;
    } else if (token == "all") {
      ro.routes = kRouteAll;
    } else {
      throw GeometryError(ErrorCode::ParseError, "unknown route '" + token + "'");
    }
  }
  return ro;
}

std::string_view status_text(RouteStatus s) {
  switch (s) {
    case RouteStatus::Ok: return "ok";
    case RouteStatus::Formal: return "formal";
    case RouteStatus::NotApplicable: return "not_applicable";
    case RouteStatus::Refused: return "refused";
  }
  return "unknown";
}

void emit_outcome(Emitter& em, const std::string& route, const RouteOutcome& o) {
  em.field("route." + route, status_text(o.status));
  if (o.error) em.field("route." + route + ".error", error_name(*o.error));
  if (!o.note.empty()) em.field("route." + route + ".note", o.note);
}

void emit_pairing_table(Emitter& em, const MatsumotoSpace& space,
                        const std::function<Vec(const Vec&, const Vec&)>& ruyy,
                        const std::function<double(const Vec&, const Vec&, const Vec&)>& pair) {
  const auto& g = space.g();
  const auto names = m_names(space);
  const Mat& b = space.split.m_basis;
  const int m = space.split.m_dim();
  double yyy = 0.0;
  double sym = 0.0;
  std::vector<double> sectional(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      const Vec U = b.col(i);
      const Vec Y = b.col(j);
      if (ruyy) em.vector(fmt::format("R({},{}){}", names[i], names[j], names[j]), ruyy(U, Y));
      for (int k = 0; k < m; ++k) {
        const double p = pair(U, Y, b.col(k));
        em.number(fmt::format("pairing({},{},{})", names[i], names[j], names[k]), p);
        if (k == j) yyy = std::max(yyy, std::abs(p));
      }
      const double B = pair(U, Y, U);
      const double gram = g.norm_sq(U) * g.norm_sq(Y) - std::pow(g.dot(U, Y), 2);
      sectional[i * m + j] = B / gram;
      em.number(fmt::format("sectional({},{})", names[i], names[j]), B / gram);
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      sym = std::max(sym, std::abs(sectional[i * m + j] - sectional[j * m + i]));
    }
  }
  em.number("yyy_residual", yyy);
  em.number("sectional_symmetry_residual", sym);
}

}  // namespace

int cmd_validate(const CommonOptions& opts, std::ostream& out, std::ostream& err) {
  Emitter em(out, opts.records);
  em.section("validate");
  int code = kExitOk;
  auto loaded = load(opts, em, err, code);
  if (!loaded) return code;
  const auto& s = loaded->space;
  const auto& tol = loaded->tol;

  em.field("status", s.admissible ? "ok" : "fail");
  if (!s.admissible) em.field("error", "Inadmissible");
  em.field("name", s.name);
  em.number("dim", s.dim());
  em.number("jacobi_residual", s.algebra.jacobi_residual());
  em.boolean("g0_bi_invariant", s.metrics.g0_bi_invariant);
  em.number("g0_bi_invariance_residual", s.metrics.g0_bi_invariance_residual);
  const auto gbi = check_bi_invariance(s.g(), s.algebra, tol.structural);
  em.boolean("g_bi_invariant", gbi.bi_invariant);
  em.number("phi_residual", phi_residual(s.metrics));
  em.number("h_dim", s.split.h_dim());
  em.number("m_dim", s.split.m_dim());
  em.field("ad_h_invariance", s.split.trivial_isotropy() ? "not_applicable" : "assumed");
  em.number("extension_residual", extension_residual(s.g(), s.split, s.metrics.g0));
  const auto nr = naturally_reductive_check(s.split, s.g(), s.algebra, tol.structural);
  em.boolean("naturally_reductive", nr.naturally_reductive);
  em.number("drift_norm", s.drift_norm);
  em.boolean("admissible", s.admissible);
  if (!s.admissible) {
    err << "error: Inadmissible: drift norm " << em.num(s.drift_norm) << " is not below 1/2\n";
    return kExitValidation;
  }
  return kExitOk;
}

int cmd_connection(const CommonOptions& opts, std::ostream& out, std::ostream& err) {
  Emitter em(out, opts.records);
  em.section("connection");
  int code = kExitOk;
  auto loaded = load(opts, em, err, code);
  if (!loaded) return code;
  const auto& s = loaded->space;
  try {
    const auto conn = koszul_connection(s.algebra, s.g(), s.split);
    const auto& names = s.algebra.basis_names();
    em.field("backend", "koszul");
    for (int i = 0; i < s.dim(); ++i) {
      for (int j = 0; j < s.dim(); ++j) {
        em.vector(fmt::format("nabla({},{})", names[i], names[j]), conn.along(i).col(j));
      }
    }
    em.number("torsion_residual", torsion_residual(conn, s.algebra));
    em.number("metric_compatibility_residual", metric_compatibility_residual(conn));
  } catch (const GeometryError& e) {
    return command_error(e, em, err);
  }
  return kExitOk;
}

int cmd_curvature(const CommonOptions& opts, const std::string& backend, std::ostream& out,
                  std::ostream& err) {
  Emitter em(out, opts.records);
  em.section("curvature");
  int code = kExitOk;
  auto loaded = load(opts, em, err, code);
  if (!loaded) return code;
  const auto& s = loaded->space;
  const auto& tol = loaded->tol;
  const auto& g = s.g();

  try {
    std::string chosen = backend;
    if (chosen == "auto") {
      if (s.split.trivial_isotropy()) {
        chosen = "koszul";
      } else if (naturally_reductive_check(s.split, g, s.algebra, tol.structural)
                     .naturally_reductive) {
        chosen = "nat-red";
      } else if (s.metrics.g0_bi_invariant) {
        chosen = "puttmann";
      } else {
        throw GeometryError(ErrorCode::NonTrivialIsotropy,
                            "no curvature backend applies to this space");
      }
    }
    em.field("backend", chosen);

    if (chosen == "koszul") {
      const auto conn = koszul_connection(s.algebra, g, s.split);
      const auto R = curvature_tensor(conn, s.algebra);
      const auto& names = s.algebra.basis_names();
      for (int i = 0; i < s.dim(); ++i) {
        for (int j = i + 1; j < s.dim(); ++j) {
          for (int k = 0; k < s.dim(); ++k) {
            const Vec v = R.block(i, j).col(k);
            if (v.cwiseAbs().maxCoeff() > 1e-14) {
              em.vector(fmt::format("R({},{}){}", names[i], names[j], names[k]), v);
            }
          }
        }
      }
      double yyy = 0.0;
      for (int i = 0; i < s.dim(); ++i) {
        for (int j = 0; j < s.dim(); ++j) {
          const Vec y = Vec::Unit(s.dim(), j);
          yyy = std::max(yyy, std::abs(g.dot(R.block(i, j).col(j), y)));
        }
      }
      em.number("max_abs", R.max_abs());
      em.number("antisymmetry_residual", antisymmetry_residual(R));
      em.number("pairing_antisymmetry_residual", pairing_antisymmetry_residual(R, g));
      em.number("bianchi_residual", bianchi_residual(R));
      em.number("yyy_residual", yyy);
    } else if (chosen == "puttmann") {
      emit_pairing_table(em, s, nullptr, [&](const Vec& U, const Vec& Y, const Vec& X) {
        return A_term(U, Y, X, s.metrics, s.split, s.algebra, MixedPairing::AsPrinted,
                      tol.structural);
      });
    } else if (chosen == "nat-red") {
      const auto ruyy = [&](const Vec& U, const Vec& Y) {
        return nat_red_curvature(U, Y, s.split, g, s.algebra, tol.structural);
      };
      emit_pairing_table(em, s, ruyy, [&](const Vec& U, const Vec& Y, const Vec& X) {
        return g.dot(ruyy(U, Y), X);
      });
    } else if (chosen == "bi-invariant") {
      if (!s.split.trivial_isotropy()) {
        throw GeometryError(ErrorCode::NonTrivialIsotropy, "bi-invariant backend is for groups");
      }
      if (!check_bi_invariance(g, s.algebra, tol.structural).bi_invariant) {
        throw GeometryError(ErrorCode::MetricNotBiInvariant, "g is not ad-invariant");
      }
      const auto ruyy = [&](const Vec& U, const Vec& Y) {
        return bi_invariant_curvature(U, Y, s.algebra);
      };
      emit_pairing_table(em, s, ruyy, [&](const Vec& U, const Vec& Y, const Vec& X) {
        return g.dot(ruyy(U, Y), X);
      });
    } else {
      throw GeometryError(ErrorCode::ParseError, "unknown backend '" + backend + "'");
    }
  } catch (const GeometryError& e) {
    return command_error(e, em, err);
  }
  return kExitOk;
}

int cmd_parallel(const CommonOptions& opts, std::ostream& out, std::ostream& err) {
  Emitter em(out, opts.records);
  em.section("parallel");
  int code = kExitOk;
  auto loaded = load(opts, em, err, code);
  if (!loaded) return code;
  const auto& s = loaded->space;
  const auto& tol = loaded->tol;
  try {
    const auto conn = koszul_connection(s.algebra, s.g(), s.split);
    const Mat basis = parallel_fields(conn, tol.nullspace_rel);
    em.number("parallel_dim", static_cast<double>(basis.cols()));
    for (Eigen::Index c = 0; c < basis.cols(); ++c) {
      const Vec v = basis.col(c);
      Eigen::Index at = 0;
      v.cwiseAbs().maxCoeff(&at);
      const Vec generator = v / v[at];
      em.vector(fmt::format("parallel[{}]", c + 1), v);
      em.vector(fmt::format("generator[{}]", c + 1), generator);
      em.number(fmt::format("coefficient_bound[{}]", c + 1), coefficient_bound(generator, s.g()));
    }
    const double res = parallel_residual(conn, s.drift);
    em.number("drift_parallel_residual", res);
    em.boolean("drift_parallel",
               res <= tol.structural * std::max(1.0, s.drift.cwiseAbs().maxCoeff()));
    em.number("drift_norm", s.drift_norm);
    em.boolean("admissible", s.admissible);
  } catch (const GeometryError& e) {
    return command_error(e, em, err);
  }
  return kExitOk;
}

int cmd_flag(const CommonOptions& opts, const std::string& Y, const std::string& U,
             const std::string& routes, std::ostream& out, std::ostream& err) {
  Emitter em(out, opts.records);
  em.section("flag");
  int code = kExitOk;
  auto loaded = load(opts, em, err, code);
  if (!loaded) return code;
  const auto& s = loaded->space;
  try {
    const Vec y = parse_vector(Y, s, "Y");
    const Vec u = parse_vector(U, s, "U");
    const RouteOptions ro = parse_routes(routes, opts, loaded->tol);
    const auto analysis = analyze_space(s, loaded->tol);
    const KReport rep = flag_report(s, analysis, y, u, ro);

    em.vector("flag.Y", rep.flag.Y);
    em.vector("flag.U", rep.flag.U);
    em.number("tY", rep.tY);
    em.number("tU", rep.tU);
    em.maybe("A", rep.A);
    em.maybe("B", rep.B);
    em.maybe("yyy", rep.yyy);
    if (!rep.ab_source.empty()) em.field("ab_source", rep.ab_source);
    em.maybe("k_direct", rep.k_direct);
    em.maybe("k_closed", rep.k_closed);
    em.maybe("k_closed_expanded", rep.k_closed_expanded);
    em.maybe("k_bi_invariant", rep.k_bi_invariant);
    emit_outcome(em, "direct", rep.direct);
    emit_outcome(em, "closed", rep.closed);
    emit_outcome(em, "bi-invariant", rep.bi_invariant);
    em.number("max_pairwise_delta", rep.max_pairwise_delta);
    em.boolean("agreement_within_tol", rep.max_pairwise_delta <= loaded->tol.agree);
    if (rep.any_refused()) {
      err << "error: a requested route was refused\n";
      return kExitPrecondition;
    }
  } catch (const GeometryError& e) {
    return command_error(e, em, err);
  }
  return kExitOk;
}

int cmd_sweep(const CommonOptions& opts, int samples, std::uint64_t seed,
              const std::string& routes, std::ostream& out, std::ostream& err) {
  Emitter em(out, opts.records);
  em.section("sweep");
  int code = kExitOk;
  auto loaded = load(opts, em, err, code);
  if (!loaded) return code;
  const auto& s = loaded->space;
  try {
    if (samples < 1) throw GeometryError(ErrorCode::ParseError, "--samples must be positive");
    const RouteOptions ro = parse_routes(routes, opts, loaded->tol);
    const auto analysis = analyze_space(s, loaded->tol);
    const SweepResult res = sweep_flags(s, analysis, samples, seed, ro);

    em.number("samples", res.samples);
    em.field("seed", std::to_string(res.seed));
    const auto stats = [&](const std::string& route, const RouteStats& st,
                           const RouteOutcome& o) {
      emit_outcome(em, route, o);
      em.number("k." + route + ".count", st.count);
      if (st.count > 0) {
        em.number("k." + route + ".min", st.min);
        em.number("k." + route + ".max", st.max);
        em.number("k." + route + ".mean", st.mean);
      }
    };
    stats("direct", res.direct, res.direct_outcome);
    stats("closed", res.closed, res.closed_outcome);
    stats("bi-invariant", res.bi_invariant, res.bi_invariant_outcome);
    em.number("max_pairwise_delta", res.max_pairwise_delta);
    em.boolean("agreement_within_tol", res.max_pairwise_delta <= loaded->tol.agree);
    for (const auto* o : {&res.direct_outcome, &res.closed_outcome, &res.bi_invariant_outcome}) {
      if (o->status == RouteStatus::Refused) {
        err << "error: a requested route was refused\n";
        return kExitPrecondition;
      }
    }
  } catch (const GeometryError& e) {
    return command_error(e, em, err);
  }
  return kExitOk;
}

int cmd_report(const CommonOptions& opts, std::ostream& out, std::ostream& err) {
  Emitter em(out, opts.records);
  em.section("report");
  int code = kExitOk;
  auto loaded = load(opts, em, err, code);
  if (!loaded) return code;
  const auto& s = loaded->space;
  try {
    const auto analysis = analyze_space(s, loaded->tol);
    const auto c = classify_space(s, analysis, loaded->tol.structural);
    em.field("name", s.name);
    em.boolean("admissible", c.admissible);
    em.number("drift_norm", s.drift_norm);
    em.tri("berwald", c.berwald);
    em.tri("geodesically_complete", c.geodesically_complete);
    em.tri("flat", c.flat);
    em.tri("locally_minkowskian", c.locally_minkowskian);
    em.maybe("curvature_max_abs", c.curvature_max_abs);
    em.field("labels", join(c.label_names(), ","));
    for (const auto& l : c.labels) em.field("reason." + l.name, l.reason);
    if (!s.split.trivial_isotropy()) em.field("ad_h_invariance", "assumed");
  } catch (const GeometryError& e) {
    return command_error(e, em, err);
  }
  return kExitOk;
}

int cmd_catalog_list(bool records, std::ostream& out) {
  Emitter em(out, records);
  em.section("catalog");
  for (const auto& name : catalog_names()) {
    const auto e = catalog_entry(name);
    em.field(name, e.description);
  }
  return kExitOk;
}

int cmd_catalog_emit(const std::string& name, const std::string& output_path, std::ostream& out,
                     std::ostream& err) {
  try {
    const auto text = emit_space_file(space_file_from(catalog_entry(name).space));
    if (output_path.empty()) {
      out << text;
    } else {
      std::ofstream f(output_path);
      if (!f) {
        err << "error: cannot write " << output_path << '\n';
        return kExitParse;
      }
      f << text;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  }
  return kExitOk;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Invariant Matsumoto metrics: fundamental tensors and flag curvature"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::string backend = "auto";
  std::string Y;
  std::string U;
  std::string routes = "all";
  int samples = 200;
  std::uint64_t seed = 1;
  std::string catalog_name;
  std::string output_path;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("path", opts.path, "space description (JSON)")->required();
    sub->add_flag("--records", opts.records, "machine-readable key=value output");
    sub->add_option("--tol-structural", opts.tol_structural, "structural tolerance (1e-9)");
    sub->add_option("--tol-agree", opts.tol_agree, "route agreement tolerance (1e-6)");
    sub->add_option("--fd-step", opts.fd_step, "finite-difference step (1e-4)");
  };

  auto* validate = app.add_subcommand("validate", "check the structural preconditions");
  add_common(validate);
  auto* connection = app.add_subcommand("connection", "Levi-Civita connection table");
  add_common(connection);
  auto* curvature = app.add_subcommand("curvature", "curvature components and residuals");
  add_common(curvature);
  curvature->add_option("--backend", backend, "koszul|puttmann|nat-red|bi-invariant|auto")
      ->check(CLI::IsMember({"koszul", "puttmann", "nat-red", "bi-invariant", "auto"}));
  auto* parallel = app.add_subcommand("parallel", "parallel invariant vector fields");
  add_common(parallel);
  auto* flag = app.add_subcommand("flag", "flag curvature along each route");
  add_common(flag);
  flag->add_option("--Y", Y, "flagpole (coordinates or basis name)")->required();
  flag->add_option("--U", U, "transverse edge (coordinates or basis name)")->required();
  flag->add_option("--routes", routes, "all or a comma list of direct,closed,bi-invariant");
  flag->add_flag("--force", opts.force, "evaluate routes even when the drift is not parallel");
  auto* sweep = app.add_subcommand("sweep", "random-flag statistics per route");
  add_common(sweep);
  sweep->add_option("--samples", samples, "number of random flags");
  sweep->add_option("--seed", seed, "base seed");
  sweep->add_option("--routes", routes, "all or a comma list of direct,closed,bi-invariant");
  sweep->add_flag("--force", opts.force, "evaluate routes even when the drift is not parallel");
  auto* report = app.add_subcommand("report", "classification labels");
  add_common(report);

  auto* catalog = app.add_subcommand("catalog", "built-in example spaces");
  catalog->require_subcommand(1);
  auto* list = catalog->add_subcommand("list", "list entries");
  list->add_flag("--records", opts.records, "machine-readable key=value output");
  auto* emit = catalog->add_subcommand("emit", "write an entry as a space file");
  emit->add_option("name", catalog_name, "entry name")->required();
  emit->add_option("-o,--output", output_path, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitParse;
  }

  if (*validate) return cmd_validate(opts, out, err);
  if (*connection) return cmd_connection(opts, out, err);
  if (*curvature) return cmd_curvature(opts, backend, out, err);
  if (*parallel) return cmd_parallel(opts, out, err);
  if (*flag) return cmd_flag(opts, Y, U, routes, out, err);
  if (*sweep) return cmd_sweep(opts, samples, seed, routes, out, err);
  if (*report) return cmd_report(opts, out, err);
  if (*list) return cmd_catalog_list(opts.records, out);
  if (*emit) return cmd_catalog_emit(catalog_name, output_path, out, err);
  return kExitParse;
}

}  // namespace mflag::cli
