// hkforge command-line front end. Every subcommand prints JSON on stdout.
#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "hkforge/coherent.hpp"
#include "hkforge/contour.hpp"
#include "hkforge/elliptic.hpp"
#include "hkforge/invariants.hpp"
#include "hkforge/json_io.hpp"
#include "hkforge/swann.hpp"
#include "hkforge/verify.hpp"

using namespace hkforge;

namespace {

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

SpherePoint parse_point(const std::string& s) {
  if (s == "inf") return SpherePoint::infinity();
  std::istringstream in(s);
  double re = 0, im = 0;
  char comma = 0;
  in >> re;
  if (in.fail()) throw Error(ErrorKind::usage, "point must be 're,im' or 'inf': " + s);
  if (in >> comma) {
    if (comma != ',' || !(in >> im)) throw Error(ErrorKind::usage, "point must be 're,im' or 'inf': " + s);
  }
  return SpherePoint::at({re, im});
}

Json labels_o2(const Multiplet& m2) {
  auto l = o2_labels(coefficients_to_roots(m2));
  auto v = o2_to_vector(m2);
  return {{"sigma", l.sigma}, {"gamma", sphere_point_to_json(l.gamma)}, {"vector", {v.x, v.y, v.z}},
          {"g_sigma2", g_sigma2(m2)}};
}

Json weierstrass_json(const WeierstrassData& w) {
  return {{"g2", w.g2},       {"g3", w.g3},       {"delta", w.delta},
          {"e1", w.e1},       {"e2", w.e2},       {"e3", w.e3},
          {"omega", w.omega}, {"omega_prime", complex_to_json(w.omega_prime)},
          {"eta", w.eta},     {"eta_prime", complex_to_json(w.eta_prime)},
          {"q", w.q},         {"q_prime", w.q_prime},
          {"r2", w.r2},       {"r2_prime", w.r2_prime},
          {"rho", w.rho},     {"k", w.k},         {"k_prime", w.kprime}};
}

Json labels_o4(const Multiplet& m4) {
  auto l = o4_labels(coefficients_to_roots(m4));
  auto b = o4_basic_invariants(m4);
  return {{"rho", l.rho}, {"alpha", sphere_point_to_json(l.alpha)}, {"beta", sphere_point_to_json(l.beta)},
          {"k", l.k}, {"k_prime", l.kprime}, {"g_rho2", b.g_rho2}, {"g_rho3", b.g_rho3}};
}

Json invariant_set_json(const InvariantSet& s) {
  return {{"g_sigma2", s.g_sigma2}, {"g_rho2", s.g_rho2},   {"g_rho3", s.g_rho3},
          {"g_rho_sigma2", s.g_rho_sigma2}, {"g_rho2_sigma2", s.g_rho2_sigma2},
          {"A", s.A},               {"B", s.B},             {"Q0sq", s.Q0sq},
          {"Qplussq", s.Qplussq},   {"Qminussq", s.Qminussq}};
}

Json series_json(const SeriesReport& r) {
  auto terms = [](const std::vector<SeriesTerm>& ts) {
    Json a = Json::array();
    for (auto& t : ts) a.push_back({{"power", t.power}, {"coeff", t.coeff}, {"form", t.form}});
    return a;
  };
  return {{"regime", to_string(r.regime)}, {"order", r.order}, {"r1", r.r1}, {"r2", r.r2}, {"r2_prime", r.r2p},
          {"A", r.A}, {"expansion_variable", r.small}, {"B_over_A", terms(r.ba)}, {"B_over_A_sum", r.ba_sum},
          {"K", terms(r.k)}, {"K_sum", r.k_sum}};
}

Json o2o4_json(const O2O4State& s) {
  auto f2 = o2_fields(s.m2);
  auto f4 = o4_fields(s.m4);
  Json j = {{"fields", {{"z1", complex_to_json(f2.z1)}, {"x1", f2.x1}, {"z2", complex_to_json(f4.z2)},
                        {"v2", complex_to_json(f4.v2)}, {"x2", f4.x2}}},
            {"invariants", invariant_set_json(s.inv)},
            {"weierstrass", weierstrass_json(s.w)},
            {"dual", {{"eta_star", s.dual.eta_star}, {"omega_star", s.dual.omega_star}}},
            {"aux", {{"x_plus", s.aux.x_plus}, {"x_minus", s.aux.x_minus}, {"v_plus", s.aux.v_plus},
                     {"v_minus", s.aux.v_minus}, {"pi_plus", complex_to_json(s.aux.pi_plus)},
                     {"pi_minus", complex_to_json(s.aux.pi_minus)}, {"M_plus", s.aux.M_plus},
                     {"M_minus", s.aux.M_minus}, {"N_plus", s.aux.N_plus}, {"N_minus", s.aux.N_minus}}},
            {"F", s.F},
            {"gradients", {{"dF_dx1", s.grad.dF_dx1}, {"dF_dv2", complex_to_json(s.grad.dF_dv2)},
                           {"dF_dx2", s.grad.dF_dx2}, {"finite_difference_fallback", s.grad.fallback}}},
            {"u1", complex_to_json(s.u1)},
            {"u2", complex_to_json(s.u2)},
            {"K_legendre", s.K},
            {"K_mixed", o2o4_potential_mixed(s.inv, s.dual, s.aux.x_plus + s.aux.x_minus)},
            {"solved", s.solved},
            {"constraint_residual", s.residual}};
  if (s.solved) j["K"] = o2o4_potential(s);
  return j;
}

// ---- subcommands ----

struct InvariantsArgs {
  std::string o2, o4, diagram;
  std::optional<double> lambda;
};

int cmd_invariants(const InvariantsArgs& a) {
  if (a.o2.empty() && a.o4.empty()) throw Error(ErrorKind::usage, "invariants needs --o2 and/or --o4");
  Json out;
  std::optional<Multiplet> m2, m4;
  if (!a.o2.empty()) m2 = load_multiplet(a.o2);
  if (!a.o4.empty()) m4 = load_multiplet(a.o4);
  if (m2) {
    if (m2->two_j != 2) throw Error(ErrorKind::domain, "--o2 must hold a j = 1 multiplet");
    out["o2"] = labels_o2(*m2);
    out["o2"]["constellation"] = constellation_to_json(coefficients_to_roots(*m2));
  }
  if (m4) {
    if (m4->two_j != 4) throw Error(ErrorKind::domain, "--o4 must hold a j = 2 multiplet");
    out["o4"] = labels_o4(*m4);
    out["o4"]["constellation"] = constellation_to_json(coefficients_to_roots(*m4));
    out["weierstrass"] = weierstrass_json(from_multiplet(*m4));
  }
  if (m2 && m4) {
    out["invariants"] = invariant_set_json(invariant_set(*m2, *m4));
    auto cr = critical_relations(*m2, *m4);
    Json crit = Json::array();
    for (int i = 0; i < 3; ++i) crit.push_back({{"lambda", cr.lambda[i]}, {"g3", cr.g3_at[i]}, {"rhs", cr.rhs[i]}});
    out["critical_couplings"] = crit;
    if (a.lambda) {
      auto l = lambda_family(*m2, *m4, *a.lambda);
      out["lambda_family"] = {{"lambda", *a.lambda}, {"g2", l.g2}, {"g3", l.g3}};
    }
  } else if (a.lambda) {
    throw Error(ErrorKind::usage, "--lambda needs both --o2 and --o4");
  }
  if (!a.diagram.empty()) {
    auto d = diagram_from_json(load_json_file(a.diagram));
    TensorMap t;
    if (m2) {
      t["o2"] = tensor_of(*m2);
      t["o2sq"] = tensor_of(product(*m2, *m2));
    }
    if (m4) t["o4"] = tensor_of(*m4);
    for (auto& v : d.vertices)
      if (!t.count(v.tensor))
        throw Error(ErrorKind::usage, "diagram vertex '" + v.id + "' needs tensor '" + v.tensor + "'");
    out["diagram"] = {{"value", complex_to_json(contract_diagram(d, t))}};
  }
  emit(out);
  return 0;
}

int cmd_periods(const std::string& o4, bool series, int order, int nodes) {
  auto m4 = load_multiplet(o4);
  if (m4.two_j != 4) throw Error(ErrorKind::domain, "--o4 must hold a j = 2 multiplet");
  auto w = from_multiplet(m4);
  ContourOptions opt;
  opt.nodes = nodes;
  auto P = o4_periods(m4, opt);
  Json out = {{"weierstrass", weierstrass_json(w)},
              {"periods", {{"contour", {{"Ia", complex_to_json(P.Ia)}, {"Ib", complex_to_json(P.Ib)}}},
                           {"closed_form",
                            {{"Ia", complex_to_json(2 * w.K / std::sqrt(w.rho))},
                             {"Ib", complex_to_json(cplx(0, 2 * w.Kp / std::sqrt(w.rho)))}}}}}};
  if (series) {
    for (bool prime : {false, true}) {
      auto s = lambert_g2_g3_eta(w, prime, order);
      out[prime ? "series_qprime" : "series_q"] = {
          {"order", order}, {"g2", s.g2}, {"g3", s.g3}, {"eta", s.eta}, {"last_term", s.last_term}};
    }
  }
  emit(out);
  return 0;
}

int cmd_contour(const std::string& kind_s, const std::string& o4, const std::string& o2, int nodes) {
  auto kind = contour_kind_from_string(kind_s);
  std::optional<Multiplet> m2, m4;
  if (!o4.empty()) m4 = load_multiplet(o4);
  if (!o2.empty()) m2 = load_multiplet(o2);
  if (kind != ContourKind::gamma && !m4) throw Error(ErrorKind::usage, std::string(to_string(kind)) + " needs --o4");
  ContourOptions opt;
  opt.nodes = nodes;
  std::optional<RootConstellation> c2, c4;
  if (m2) c2 = coefficients_to_roots(*m2);
  if (m4) c4 = coefficients_to_roots(*m4);
  auto con = build_contour(kind, c2, c4, opt);
  Json loops = Json::array();
  for (auto& l : con.loops) {
    Json j = {{"shape", l.ellipse ? "ellipse" : "circle"}, {"center", complex_to_json(l.center)}, {"weight", l.weight},
              {"focus1", sphere_point_to_json(l.focus1)}};
    if (l.ellipse) {
      j["focus2"] = sphere_point_to_json(l.focus2);
      j["half_focal"] = complex_to_json(l.half_focal);
      j["mu"] = l.mu;
    } else {
      j["radius"] = l.radius;
    }
    loops.push_back(j);
  }
  Json out = {{"kind", to_string(kind)}, {"loops", loops}};
  Json val;
  switch (kind) {
    case ContourKind::gamma:
      if (!m2) throw Error(ErrorKind::usage, "gamma needs --o2");
      val["o2_integral"] = integrate_o2_invariant(*m2, opt);
      val["closed_form"] = 2 / o2_labels(*c2).sigma;
      break;
    case ContourKind::gamma_a:
    case ContourKind::gamma_b: {
      auto P = o4_periods(*m4, opt);
      val["period"] = complex_to_json(kind == ContourKind::gamma_a ? P.Ia : P.Ib);
      auto f = i1_family(*m4, opt);
      if (kind == ContourKind::gamma_a) {
        val["I0"] = complex_to_json(f.I0);
        if (f.chart_ok) {
          val["I1"] = complex_to_json(f.I1);
          val["I2"] = complex_to_json(f.I2);
        }
      }
      break;
    }
    default: {
      if (!m2) throw Error(ErrorKind::usage, "mixed contours need --o2");
      auto M = mixed_integrals(*m2, *m4, opt);
      cplx v = kind == ContourKind::gamma_0 ? M.I0 : kind == ContourKind::gamma_plus ? M.Iplus : M.Iminus;
      val["integral"] = complex_to_json(v);
      auto Q = q_factors(*c2, *c4);
      val["Q_factors"] = {{"Q0sq", Q.Q0sq}, {"Qplussq", Q.Qplussq}, {"Qminussq", Q.Qminussq}};
    }
  }
  out["values"] = val;
  emit(out);
  return 0;
}

int cmd_potential(const std::string& model, const std::string& o2, const std::string& o2b, const std::string& o4,
                  bool solve) {
  auto m2 = load_multiplet(o2);
  if (model == "o2o2") {
    if (o2b.empty()) throw Error(ErrorKind::usage, "o2o2 needs --o2b");
    auto mb = load_multiplet(o2b);
    auto s = o2o2_state(m2, mb);
    auto d = o2o2_x_derivatives(s.z1, s.x1, s.z2, s.x2);
    auto h = o2o2_higgs(s.r1, s.r2);
    emit({{"model", "o2o2"},
          {"r1", {s.r1.x, s.r1.y, s.r1.z}},
          {"r2", {s.r2.x, s.r2.y, s.r2.z}},
          {"F", s.F},
          {"dF_dx1", d.dF_dx1},
          {"dF_dx2", d.dF_dx2},
          {"u1", complex_to_json(s.u1)},
          {"u2", complex_to_json(s.u2)},
          {"K", s.K},
          {"K_closed_form", o2o2_potential(s.r1, s.r2)},
          {"higgs", {{h.phi[0][0], h.phi[0][1]}, {h.phi[1][0], h.phi[1][1]}}}});
    return 0;
  }
  if (model != "o2o4") throw Error(ErrorKind::usage, "--model must be o2o2 or o2o4");
  if (o4.empty()) throw Error(ErrorKind::usage, "o2o4 needs --o4");
  auto m4 = load_multiplet(o4);
  Json out = {{"model", "o2o4"}};
  if (solve) {
    auto f = o4_fields(m4);
    auto s = solve_constraint(m2, f.z2, f.v2, f.x2);
    out["state"] = o2o4_json(s);
  } else {
    out["state"] = o2o4_json(o2o4_state(m2, m4));
  }
  emit(out);
  return 0;
}

int cmd_expand(const std::string& regime_s, int order, bool fit, std::optional<double> nome) {
  auto regime = regime_from_string(regime_s);
  double n = nome ? *nome : (regime == Regime::q ? 2e-3 : 1e-5);
  auto p = solved_point(regime, n);
  double r1 = std::sqrt(p.state.inv.g_sigma2);
  auto rep = asymptotic_expansion(regime, order, r1, p.state.w.r2, p.state.w.r2_prime, p.state.inv.A);
  Json out = {{"series", series_json(rep)},
              {"solved_state",
               {{"nome", p.nome}, {"B_over_A", p.ba}, {"K", o2o4_potential(p.state)},
                {"residual", p.state.residual}}}};
  if (fit) {
    auto f = fit_asymptotics(regime, default_nomes(regime));
    out["fit"] = {{"nomes", f.nomes}, {"B_over_A", f.ba}, {"basis", f.basis}, {"fitted", f.fitted},
                  {"expected", f.expected}, {"rel_error", f.rel_error}};
  }
  emit(out);
  return 0;
}

struct VerifyArgs {
  std::string suite = "all", config, format, out;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
};

int cmd_verify(const VerifyArgs& a) {
  RunConfig cfg = a.config.empty() ? RunConfig{} : load_run_config(a.config);
  apply_environment(cfg);
  if (a.seed) cfg.seed = *a.seed;
  if (a.tol) cfg.tolerance_all = *a.tol;
  if (!a.format.empty()) cfg.format = a.format;
  validate_run_config(cfg);
  auto rep = run_verification(a.suite, cfg);
  auto text = format_report(rep, cfg.format);
  if (a.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(a.out);
    if (!f) throw Error(ErrorKind::usage, "cannot write " + a.out);
    f << text;
  }
  std::cerr << rep.passed << " passed, " << rep.failed << " failed\n";
  return rep.all_pass() ? 0 : 1;
}

struct PlotArgs {
  std::string kind, regime, out;
  double from = 0, to = 0;
  int points = 32;
};

int cmd_plot(const PlotArgs& a) {
  if (a.kind != "expansion" && a.kind != "potential-sweep")
    throw Error(ErrorKind::usage, "--kind must be expansion or potential-sweep");
  auto regime = regime_from_string(a.regime);
  if (!(a.from > 0 && a.to < 1 && a.from < a.to) || a.points < 1)
    throw Error(ErrorKind::usage, "empty or invalid sweep range: need 0 < from < to < 1 and points >= 1");
  const int n = a.points;
  std::vector<std::string> rows(n);
  // sweep points are independent solves
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < n; ++i) {
    double nome = n == 1 ? a.from : a.from * std::pow(a.to / a.from, double(i) / (n - 1));
    std::ostringstream row;
    row << std::setprecision(12) << nome;
    try {
      auto p = solved_point(regime, nome);
      double r1 = std::sqrt(p.state.inv.g_sigma2);
      auto rep = asymptotic_expansion(regime, 2, r1, p.state.w.r2, p.state.w.r2_prime, p.state.inv.A);
      if (a.kind == "expansion")
        row << "," << p.ba << "," << rep.ba_sum << ",";
      else
        row << "," << o2o4_potential(p.state) << "," << rep.k_sum << ",";
    } catch (const Error& e) {
      row << ",nan,nan," << to_string(e.kind());
    }
    rows[i] = row.str();
  }
  std::ofstream f(a.out);
  if (!f) throw Error(ErrorKind::usage, "cannot write " + a.out);
  f << "nome," << (a.kind == "expansion" ? "B_over_A,B_over_A_series" : "K,K_series") << ",status\n";
  for (auto& r : rows) f << r << "\n";
  emit({{"kind", a.kind}, {"regime", a.regime}, {"points", n}, {"out", a.out}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hkforge: O(2j) multiplets, rotational invariants, elliptic data and hyperkahler potentials"};
  app.require_subcommand(1);

  InvariantsArgs inv;
  auto* c_inv = app.add_subcommand("invariants", "invariants of an O(2) and/or O(4) multiplet");
  c_inv->add_option("--o2", inv.o2, "O(2) multiplet JSON");
  c_inv->add_option("--o4", inv.o4, "O(4) multiplet JSON");
  c_inv->add_option("--lambda", inv.lambda, "evaluate g2, g3 of eta4 - lambda eta2^2");
  c_inv->add_option("--diagram", inv.diagram, "diagram JSON to contract");

  std::string per_o4;
  bool per_series = false;
  int per_order = 12, per_nodes = 4096;
  auto* c_per = app.add_subcommand("periods", "Weierstrass data and periods of an O(4) multiplet");
  c_per->add_option("--o4", per_o4, "O(4) multiplet JSON")->required();
  c_per->add_flag("--series", per_series, "include Lambert series in q and q'");
  c_per->add_option("--order", per_order, "series order")->check(CLI::Range(1, 200));
  c_per->add_option("--nodes", per_nodes, "initial trapezoid nodes")->check(CLI::Range(16, 1 << 20));

  std::string con_kind, con_o4, con_o2;
  int con_nodes = 4096;
  auto* c_con = app.add_subcommand("contour", "build a contour and integrate over it");
  c_con->add_option("--kind", con_kind, "gamma | gamma_a | gamma_b | gamma_0 | gamma_plus | gamma_minus")->required();
  c_con->add_option("--o4", con_o4, "O(4) multiplet JSON");
  c_con->add_option("--o2", con_o2, "O(2) multiplet JSON");
  c_con->add_option("--nodes", con_nodes, "initial trapezoid nodes")->check(CLI::Range(16, 1 << 20));

  auto* c_coh = app.add_subcommand("coherent", "spin coherent states");
  c_coh->require_subcommand(1);
  std::string ov_a, ov_b;
  int ov_tj = 1;
  auto* c_ov = c_coh->add_subcommand("overlap", "overlap <a|b> for spin j");
  c_ov->add_option("--a", ov_a, "point 're,im' or 'inf'")->required();
  c_ov->add_option("--b", ov_b, "point 're,im' or 'inf'")->required();
  c_ov->add_option("--two-j", ov_tj, "twice the spin")->check(CLI::Range(1, 64));
  std::vector<std::string> ph_points;
  auto* c_ph = c_coh->add_subcommand("phase", "cyclic phase of a polygon of coherent states");
  c_ph->add_option("--points", ph_points, "three or more points")->required();
  std::string fz_m;
  auto* c_fz = c_coh->add_subcommand("factorize", "principal directions of a multiplet");
  c_fz->add_option("--multiplet", fz_m, "multiplet JSON")->required();

  std::string pot_model, pot_o2, pot_o2b, pot_o4;
  bool pot_solve = false;
  auto* c_pot = app.add_subcommand("potential", "F and hyperkahler potential K");
  c_pot->add_option("--model", pot_model, "o2o2 | o2o4")->required();
  c_pot->add_option("--o2", pot_o2, "O(2) multiplet JSON")->required();
  c_pot->add_option("--o2b", pot_o2b, "second O(2) multiplet JSON");
  c_pot->add_option("--o4", pot_o4, "O(4) multiplet JSON");
  c_pot->add_flag("--solve-x2", pot_solve, "solve dF/dx2 = 0 for x2 before evaluating K");

  std::string ex_regime;
  int ex_order = 2;
  bool ex_fit = false;
  std::optional<double> ex_nome;
  auto* c_ex = app.add_subcommand("expand", "asymptotic expansions of B/A and K");
  c_ex->add_option("--regime", ex_regime, "q | qprime")->required();
  c_ex->add_option("--order", ex_order, "0, 1 or 2")->check(CLI::Range(0, 2));
  c_ex->add_option("--nome", ex_nome, "nome of the solved comparison state");
  c_ex->add_flag("--fit", ex_fit, "extract coefficients from solved states");

  VerifyArgs ver;
  auto* c_ver = app.add_subcommand("verify", "run the identity and property checks");
  c_ver->add_option("--suite", ver.suite, "all or a module name");
  c_ver->add_option("--seed", ver.seed, "random seed (overrides config and HKFORGE_SEED)");
  c_ver->add_option("--config", ver.config, "RunConfig JSON");
  c_ver->add_option("--tol", ver.tol, "replace every tolerance");
  c_ver->add_option("--format", ver.format, "json | table");
  c_ver->add_option("--out", ver.out, "write the report to a file");

  PlotArgs plt;
  auto* c_plt = app.add_subcommand("plot", "CSV sweeps of solved states against the series");
  c_plt->add_option("--kind", plt.kind, "expansion | potential-sweep")->required();
  c_plt->add_option("--regime", plt.regime, "q | qprime")->required();
  c_plt->add_option("--from", plt.from, "smallest nome")->required();
  c_plt->add_option("--to", plt.to, "largest nome")->required();
  c_plt->add_option("--points", plt.points, "number of nomes");
  c_plt->add_option("--out", plt.out, "CSV file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*c_inv) return cmd_invariants(inv);
    if (*c_per) return cmd_periods(per_o4, per_series, per_order, per_nodes);
    if (*c_con) return cmd_contour(con_kind, con_o4, con_o2, con_nodes);
    if (*c_ov) {
      auto o = coherent_overlap(parse_point(ov_a), parse_point(ov_b), ov_tj);
      auto f = fubini_study_both(parse_point(ov_a), parse_point(ov_b));
      emit({{"value", complex_to_json(o.value)}, {"modulus", o.modulus}, {"phase", o.phase},
            {"k", overlap_k(parse_point(ov_a), parse_point(ov_b))},
            {"k_prime", overlap_kprime(parse_point(ov_a), parse_point(ov_b))}, {"fubini_study", f.from_kprime}});
      return 0;
    }
    if (*c_ph) {
      std::vector<SpherePoint> pts;
      for (auto& s : ph_points) pts.push_back(parse_point(s));
      auto p = cyclic_phase(pts);
      emit({{"phase", p.phase}, {"modulus_product", p.modulus_product}, {"area", spherical_polygon_area(pts)}});
      return 0;
    }
    if (*c_fz) {
      auto m = load_multiplet(fz_m);
      Json dirs = Json::array();
      for (auto& d : penrose_factorize(m))
        dirs.push_back({{"point", sphere_point_to_json(d.point)}, {"multiplicity", d.multiplicity}});
      emit({{"two_j", m.two_j}, {"directions", dirs}});
      return 0;
    }
    if (*c_pot) return cmd_potential(pot_model, pot_o2, pot_o2b, pot_o4, pot_solve);
    if (*c_ex) return cmd_expand(ex_regime, ex_order, ex_fit, ex_nome);
    if (*c_ver) return cmd_verify(ver);
    if (*c_plt) return cmd_plot(plt);
  } catch (const Error& e) {
    std::cerr << "hkforge: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "hkforge: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
