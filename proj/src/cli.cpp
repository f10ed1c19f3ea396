#include "nhres/cli.hpp"

#include "nhres/suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace nhres::cli {

namespace {

using Json = nlohmann::ordered_json;

struct ModelArgs {
  std::string model = "boundary";
  int n = 1;
  double alpha = 1.0;
  std::string z = "0,1";
  bool model_given = false;  // --model passed on the active subcommand
};

struct Config {
  ModelArgs m;
  std::string out;
  double tol = 0.0;
  // verify
  std::vector<std::string> suites{"all"};
  bool mutate = false;
  // sweep
  std::string scheme, testfn = "gaussian";
  std::vector<double> eps_grid{0.4, 0.2, 0.1, 0.05};
  double x_prime = 0.3, coupling_c = 50.0;
  // susy
  std::string chain = "growing";
  int chain_m = 0;
  // green
  double x = 0.7;
  std::string energy = "1,0";
  bool with_pole_order = false;
};

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

cplx parse_pair(const std::string& s, const char* what) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw UsageError(std::string(what) + ": expected re,im");
  try {
    std::size_t p1 = 0, p2 = 0;
    const std::string a = s.substr(0, comma), b = s.substr(comma + 1);
    const double re = std::stod(a, &p1), im = std::stod(b, &p2);
    if (p1 != a.size() || p2 != b.size()) throw std::invalid_argument("");
    return {re, im};
  } catch (const std::exception&) {
    throw UsageError(std::string(what) + ": cannot parse '" + s + "'");
  }
}

AnyModel make_model(const ModelArgs& a) {
  const cplx z = parse_pair(a.z, "--z");
  if (a.model == "boundary") return BoundaryModel{a.n, z};
  return InteriorModel(a.alpha, z);
}

void add_model_options(CLI::App* app, ModelArgs& a) {
  app->add_option("--model", a.model, "boundary or interior")
      ->check(CLI::IsMember({"boundary", "interior"}))
      ->capture_default_str();
  app->add_option("--n", a.n, "boundary model order")->check(CLI::Range(0, kMaxBoundaryOrder))->capture_default_str();
  app->add_option("--alpha", a.alpha, "interior model alpha")->check(CLI::PositiveNumber)->capture_default_str();
  app->add_option("--z", a.z, "complex z as re,im")->capture_default_str();
}

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);  // shortest round-trip form
  return std::string(buf, r.ptr);
}

Json model_json(const AnyModel& model) {
  Json j;
  if (const auto* b = std::get_if<BoundaryModel>(&model)) {
    j["model"] = "boundary";
    j["n"] = b->n;
    j["z"] = {b->z.real(), b->z.imag()};
  } else {
    const auto& m = std::get<InteriorModel>(model);
    j["model"] = "interior";
    j["alpha"] = m.alpha;
    j["z"] = {m.z.real(), m.z.imag()};
  }
  return j;
}

Json num(double v) { return std::isfinite(v) ? Json(v) : Json(fmt(v)); }

Json report_json(const VerificationReport& r) {
  Json j;
  j["id"] = r.id;
  j["relation"] = r.relation;
  j["mode"] = r.mode == CheckMode::ExactSymbolic ? "exact" : "numeric";
  j["residual"] = num(r.residual);
  j["tolerance"] = num(r.tolerance);
  j["pass"] = r.pass;
  Json t = Json::object();
  for (const auto& [k, v] : r.trace) t[k] = v;
  j["trace"] = t;
  return j;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << text;
}

Json envelope(const char* command) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

int cmd_verify(const Config& c, std::ostream& out) {
  const AnyModel model = make_model(c.m);
  SuiteOptions opt{c.mutate, c.tol};
  std::vector<VerificationReport> reports;
  for (const auto& s : c.suites) {
    auto v = run_suite(s, model, opt);
    reports.insert(reports.end(), v.begin(), v.end());
  }
  Json j = envelope("verify");
  j["config"] = model_json(model);
  j["config"]["suites"] = c.suites;
  j["config"]["mutate"] = c.mutate;
  j["config"]["tol"] = c.tol;
  bool all = true;
  Json recs = Json::array();
  for (const auto& r : reports) {
    all = all && r.pass;
    recs.push_back(report_json(r));
  }
  j["all_pass"] = all;
  j["records"] = recs;
  emit(j.dump(2) + "\n", c.out, out);
  return all ? kExitPass : kExitFail;
}

int cmd_sweep(const Config& c, std::ostream& out) {
  const SchemeId s = scheme_from_string(c.scheme);
  ModelArgs ma = c.m;
  const std::string want = scheme_model(s) == ModelKind::Boundary ? "boundary" : "interior";
  if (ma.model_given && ma.model != want)
    throw UsageError("scheme " + std::string(to_string(s)) + " belongs to the " + want + " model");
  ma.model = want;
  const AnyModel model = make_model(ma);
  const auto* bm = std::get_if<BoundaryModel>(&model);
  const auto* im = std::get_if<InteriorModel>(&model);
  const TestFunction f = parse_test_function(c.testfn, bm, im);
  for (double e : c.eps_grid)
    if (!(e > 0.0)) throw UsageError("--eps-grid: epsilon must be positive");
  ApplyOptions opt;
  opt.coupling_c = c.coupling_c;
  if (c.tol > 0.0) opt.tol = c.tol;
  const auto pts = sweep_scheme(s, model, c.eps_grid, f, c.x_prime, opt);
  std::ostringstream csv;
  csv << "scheme,epsilon,A,x_prime,value_re,value_im,target_re,target_im,abs_error\r\n";
  for (const auto& p : pts) {
    const auto& r = p.result;
    csv << to_string(s) << ',' << fmt(p.eps) << ",inf," << fmt(c.x_prime) << ',' << fmt(r.value.real()) << ','
        << fmt(r.value.imag()) << ',' << fmt(r.target.real()) << ',' << fmt(r.target.imag()) << ',' << fmt(r.error)
        << "\r\n";
  }
  emit(csv.str(), c.out, out);
  return kExitPass;
}

int cmd_indexes(const Config& c, std::ostream& out) {
  const AnyModel model = make_model(c.m);
  const IndexTriple t = indexes(model);
  Json j = envelope("indexes");
  j["config"] = model_json(model);
  j["n1"] = t.n1;
  j["n2"] = t.n2;
  j["n3"] = t.n3;
  // boundary: order in k at 0; interior n3 is already the pole order in E
  if (std::holds_alternative<BoundaryModel>(model)) j["k_plane_pole_order"] = t.k_plane_order;
  else j["k_plane_pole_order"] = nullptr;
  emit(j.dump(2) + "\n", c.out, out);
  return kExitPass;
}

int cmd_susy(const Config& c, std::ostream& out) {
  if (c.m.model_given && c.m.model != "boundary")
    throw UsageError("susy: transformations are defined for the boundary model only");
  const TransformationChain chain =
      c.chain == "growing" ? growing_chain(c.m.n, c.chain_m) : normalizable_chain(c.m.n, c.chain_m);
  const MultiplicityDelta d = multiplicity_delta(chain);
  if (d.target_n > kMaxBoundaryOrder)
    throw UsageError("susy: target order " + std::to_string(d.target_n) + " above supported maximum");
  std::vector<VerificationReport> reports;
  if (c.m.n >= 1) reports.push_back(verify_intertwining(c.m.n, c.mutate ? 1 : 0));
  reports.push_back(verify_darboux_endpoint(chain));
  reports.push_back(verify_multiplicity_delta(chain));

  Json j = envelope("susy");
  j["config"] = {{"n", c.m.n}, {"chain", c.chain}, {"m", c.chain_m}, {"mutate", c.mutate}};
  j["wronskian"] = wronskian(chain).str();
  j["potential_before"] = bm_potential_exact(c.m.n).str();
  j["potential_after"] = darboux_potential(bm_potential_exact(c.m.n), chain).str();
  j["target_n"] = d.target_n;
  j["delta"] = {{"n1", d.delta[0]}, {"n2", d.delta[1]}, {"n3", d.delta[2]}};
  j["caveat"] = d.caveat;
  bool all = true;
  Json recs = Json::array();
  for (const auto& r : reports) {
    all = all && r.pass;
    recs.push_back(report_json(r));
  }
  j["all_pass"] = all;
  j["records"] = recs;
  emit(j.dump(2) + "\n", c.out, out);
  return all ? kExitPass : kExitFail;
}

int cmd_green(const Config& c, std::ostream& out) {
  const AnyModel model = make_model(c.m);
  const cplx E = parse_pair(c.energy, "--E");
  const cplx k = green_k(E);
  const cplx g = green(model, c.x, c.x_prime, E);
  Json j = envelope("green");
  j["config"] = model_json(model);
  j["config"]["x"] = c.x;
  j["config"]["x_prime"] = c.x_prime;
  j["config"]["E"] = {E.real(), E.imag()};
  j["k"] = {k.real(), k.imag()};
  j["value_re"] = g.real();
  j["value_im"] = g.imag();
  if (c.with_pole_order) {
    const bool boundary = std::holds_alternative<BoundaryModel>(model);
    const double alpha = boundary ? 0.0 : std::get<InteriorModel>(model).alpha;
    const auto po = pole_order(model, boundary ? cplx(0.0) : cplx(alpha), boundary ? 0.5 : alpha / 4);
    j["pole_order"] = po.order;
  }
  emit(j.dump(2) + "\n", c.out, out);
  return kExitPass;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, out, err);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Spectral identities for two non-Hermitian Hamiltonians: verification suites and sweeps", "nhres"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "run identity suites, JSON report");
  add_model_options(verify, c.m);
  verify->add_option("--suite", c.suites, "algebra, biortho, susy, greens or all")
      ->delimiter(',')
      ->check(CLI::IsMember(suite_names()))
      ->capture_default_str();
  verify->add_flag("--mutate", c.mutate, "inject a 1e-3 coefficient error; checks are expected to fail");
  verify->add_option("--tol", c.tol, "override numeric tolerances")->check(CLI::NonNegativeNumber);
  verify->add_option("--out", c.out, "output file (default stdout)");

  auto* sweep = app.add_subcommand("sweep", "apply a resolution scheme over an epsilon grid, CSV");
  add_model_options(sweep, c.m);
  sweep->add_option("--scheme", c.scheme, "scheme id, e.g. RES3, RES12")->required();
  sweep->add_option("--testfn", c.testfn, "test function spec")->capture_default_str();
  sweep->add_option("--eps-grid", c.eps_grid, "comma separated epsilons")->delimiter(',')->capture_default_str();
  sweep->add_option("--x-prime", c.x_prime, "reconstruction point")->capture_default_str();
  sweep->add_option("--coupling-c", c.coupling_c, "window coupling L0 = c/eps")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep->add_option("--tol", c.tol, "absolute quadrature tolerance")->check(CLI::NonNegativeNumber);
  sweep->add_option("--out", c.out, "output file (default stdout)");

  auto* idx = app.add_subcommand("indexes", "index triple n1, n2, n3, JSON");
  add_model_options(idx, c.m);
  idx->add_option("--out", c.out, "output file (default stdout)");

  auto* susy = app.add_subcommand("susy", "Darboux transformation by a chain, JSON");
  add_model_options(susy, c.m);
  susy->add_option("--chain", c.chain, "growing or normalizable")
      ->check(CLI::IsMember({"growing", "normalizable"}))
      ->capture_default_str();
  susy->add_option("--m", c.chain_m, "chain length minus one")->check(CLI::NonNegativeNumber)->capture_default_str();
  susy->add_flag("--mutate", c.mutate, "perturb the q coefficient in the intertwining check");
  susy->add_option("--out", c.out, "output file (default stdout)");

  auto* green_cmd = app.add_subcommand("green", "evaluate the Green function, JSON");
  add_model_options(green_cmd, c.m);
  green_cmd->add_option("--x", c.x, "first argument")->capture_default_str();
  green_cmd->add_option("--x-prime", c.x_prime, "second argument")->capture_default_str();
  green_cmd->add_option("--E", c.energy, "energy as re,im")->capture_default_str();
  green_cmd->add_flag("--pole-order", c.with_pole_order, "also report the pole order at the exceptional point");
  green_cmd->add_option("--out", c.out, "output file (default stdout)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  for (auto* sub : app.get_subcommands()) c.m.model_given = sub->count("--model") > 0;
  try {
    if (*verify) return cmd_verify(c, out);
    if (*sweep) return cmd_sweep(c, out);
    if (*idx) return cmd_indexes(c, out);
    if (*susy) return cmd_susy(c, out);
    return cmd_green(c, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  }
}

}  // namespace nhres::cli
