// shapebern CLI: approximate, certify, check hypotheses, tabulate
// corrections, evaluate envelopes, hunt for counterexamples and reproduce
// the bundled reference examples.
//
// Exit codes: 0 success/verified, 1 mismatch (hypothesis violated, search
// empty-handed, verification or cross-check failure), 2 usage/input error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "shapebern/json_io.hpp"
#include "shapebern/quadrature.hpp"
#include "shapebern/search.hpp"

using namespace shapebern;

namespace {

unsigned precision_cap() {
  if (const char* env = std::getenv("SHAPEBERN_PRECISION_BITS")) {
    char* end = nullptr;
    long bits = std::strtol(env, &end, 10);
    if (end && *end == '\0' && bits > 0) return static_cast<unsigned>(bits);
    throw std::invalid_argument("SHAPEBERN_PRECISION_BITS must be a positive integer");
  }
  return kDefaultPrecisionCap;
}

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

// "@file.json" loads a sample grid; anything else is a built-in selector
FunctionSpec load_function(const std::string& spec) {
  if (!spec.empty() && spec.front() == '@') {
    Json doc = Json::parse(read_file(spec.substr(1)));
    return FunctionSpec::grid(samples_from_json(doc));
  }
  return FunctionSpec::parse(spec);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string decimal_midpoint(const Enclosure& e, unsigned digits = 25) {
  Real mid = to_real((e.lower + e.upper) / 2);
  return mid.str(static_cast<std::streamsize>(digits));
}

struct ApproxOptions {
  std::string function;
  int n = 1;
  std::string op = "floor";
  std::string tie = "half-up";
  std::string basis = "bernstein";
  std::string out = "-";
};

int run_approx(const ApproxOptions& opt) {
  FunctionSpec f = load_function(opt.function);
  OperatorKind kind = operator_kind_from_strings(opt.op, opt.tie);
  OperatorOutput result = apply(f, opt.n, kind, precision_cap());
  Json doc;
  if (opt.basis == "power") {
    if (const auto* poly = std::get_if<BernsteinPoly>(&result)) {
      doc = power_to_json(to_power_basis(*poly));
    } else {
      std::vector<Integer> power = to_power_basis(std::get<IntegerBernsteinPoly>(result));
      doc = power_to_json(std::vector<Rational>(power.begin(), power.end()));
    }
  } else if (const auto* poly = std::get_if<BernsteinPoly>(&result)) {
    doc = to_json(*poly);
  } else {
    doc = to_json(std::get<IntegerBernsteinPoly>(result));
  }
  write_output(opt.out, doc.dump(2));
  return 0;
}

struct CertifyOptions {
  std::string poly;
  std::string query = "monotone-increasing";
  int depth_cap = 40;
  std::string out = "-";
};

int run_certify(const CertifyOptions& opt) {
  BernsteinPoly poly = polynomial_from_json(Json::parse(read_file(opt.poly)));
  Certificate cert = certify_shape(poly, shape_query_from_string(opt.query), opt.depth_cap);
  write_output(opt.out, to_json(cert).dump(2));
  return 0;
}

struct HypothesisOptions {
  std::string samples;
  std::string id;
  unsigned bits = 256;
};

int run_hypothesis(const HypothesisOptions& opt) {
  Json doc = Json::parse(read_file(opt.samples));
  std::vector<Rational> values = samples_from_json(doc);
  const int n = static_cast<int>(values.size()) - 1;
  HypothesisResult result =
      check_hypothesis(values, n, hypothesis_from_string(opt.id), opt.bits);
  if (result.holds) {
    std::cout << "pass: " << opt.id << " holds on the n=" << n << " grid\n";
    return 0;
  }
  std::cout << "fail: " << opt.id << " violated at k=" << result.first_violation << "\n";
  return 1;
}

struct CorrectionsOptions {
  std::string kind;
  int n = 3;
  bool check_quadrature = false;
  double tol = 1e-10;
  unsigned bits = 128;
  std::string out = "-";
};

int run_corrections(const CorrectionsOptions& opt) {
  CorrectionKind kind = correction_kind_from_string(opt.kind);
  if (kind == CorrectionKind::PhiEntropy) {
    // no exact table: emit enclosure bounds per grid node
    Json entries = Json::object();
    for (int k = 0; k <= opt.n; ++k) {
      Enclosure e = entropy_phi(make_rational(k, opt.n), opt.bits);
      entries[std::to_string(k)] =
          Json{{"lower", to_string(e.lower)}, {"upper", to_string(e.upper)}};
    }
    Json doc{{"kind", opt.kind}, {"n", opt.n}, {"entries", entries}};
    write_output(opt.out, doc.dump(2));
    return 0;
  }
  CorrectionTable table = correction_grid(kind, opt.n);
  Json doc = to_json(table);
  bool ok = true;
  if (opt.check_quadrature) {
    Real worst(0);
    for (int k = table.k_min(); k <= table.k_max(); ++k) {
      QuadratureResult r = integrate({kind, opt.n, make_rational(k, opt.n)}, opt.tol);
      Real deviation = abs(r.value - to_real(table.at(k)));
      if (deviation > worst) worst = deviation;
    }
    ok = worst <= opt.tol;
    doc["quadrature_check"] =
        Json{{"tol", opt.tol}, {"max_abs_deviation", worst.str(20)}, {"ok", ok}};
  }
  write_output(opt.out, doc.dump(2));
  return ok ? 0 : 1;
}

struct EnvelopeOptions {
  std::string kind;
  int n = 6;
  int grid = 100;
  std::string out = "-";
};

int run_envelope(const EnvelopeOptions& opt) {
  EnvelopeKind kind = envelope_kind_from_string(opt.kind);
  std::vector<Rational> power = envelope_power_coeffs(kind, opt.n);
  std::ostringstream csv;
  csv << "x,value\n";
  for (int j = 0; j <= opt.grid; ++j) {
    Rational x = make_rational(j, opt.grid);
    csv << to_string(x) << "," << to_string(eval_power(power, x)) << "\n";
  }
  write_output(opt.out, csv.str());
  return 0;
}

struct SearchOptions {
  int n = 6;
  std::string op = "floor";
  std::string tie = "half-up";
  std::string query = "monotone-increasing";
  long budget = 100000;
  std::uint64_t seed = 0;
  long resolution = 60;
  std::string mode = "biased";
  int depth_cap = 24;
  std::string out = "-";
};

int run_search(const SearchOptions& opt) {
  SearchConfig cfg;
  cfg.n = opt.n;
  cfg.op = operator_kind_from_strings(opt.op, opt.tie);
  cfg.query = shape_query_from_string(opt.query);
  cfg.budget = opt.budget;
  cfg.seed = opt.seed;
  cfg.resolution = opt.resolution;
  cfg.depth_cap = opt.depth_cap;
  if (opt.mode == "biased") {
    cfg.bias = SampleBias::BoundaryBiased;
  } else if (opt.mode == "uniform") {
    cfg.bias = SampleBias::Uniform;
  } else {
    throw std::invalid_argument("--mode must be 'biased' or 'uniform'");
  }
  auto report = find_counterexample(cfg);
  write_output(opt.out, search_report_json(cfg, report).dump(2));
  return report ? 0 : 1;
}

int run_verify_paper() {
  KnownExamplesReport report = verify_known_examples();
  for (const ExampleCheck& check : report.checks) {
    std::cout << (check.ok ? "[PASS] " : "[FAIL] ") << check.name;
    if (!check.detail.empty()) std::cout << ": " << check.detail;
    std::cout << "\n";
  }
  std::cout << (report.all_ok() ? "all checks passed" : "verification FAILED") << "\n";
  return report.all_ok() ? 0 : 1;
}

struct ConvergenceOptions {
  std::string function;
  std::string ops = "floor";
  std::string tie = "half-up";
  std::string ns = "5,10";
  int grid = 100;
  unsigned bits = 192;
  std::string figure_data;
  int figure_grid = 200;
  std::string out = "-";
};

int run_convergence(const ConvergenceOptions& opt) {
  FunctionSpec f = load_function(opt.function);
  std::vector<std::string> ops = split_list(opt.ops);
  std::vector<int> degrees;
  for (const std::string& item : split_list(opt.ns)) degrees.push_back(std::stoi(item));
  if (ops.empty() || degrees.empty())
    throw std::invalid_argument("convergence: need at least one operator and degree");

  std::vector<std::pair<std::string, BernsteinPoly>> outputs;
  std::ostringstream csv;
  csv << "op,n,sup_lower,sup_upper\n";
  for (const std::string& op : ops) {
    OperatorKind kind = operator_kind_from_strings(op, opt.tie);
    for (int n : degrees) {
      BernsteinPoly poly = output_bernstein(apply(f, n, kind, precision_cap()));
      Enclosure sup = sup_grid_deviation(poly, f, opt.grid, opt.bits);
      csv << op << "," << n << "," << to_string(sup.lower) << "," << to_string(sup.upper)
          << "\n";
      outputs.emplace_back(op + "_" + std::to_string(n), poly);
    }
  }
  write_output(opt.out, csv.str());

  if (!opt.figure_data.empty()) {
    std::ostringstream fig;
    fig << "x,f";
    for (const auto& [name, poly] : outputs) fig << "," << name;
    fig << "\n";
    std::vector<std::vector<Rational>> powers;
    powers.reserve(outputs.size());
    for (const auto& [name, poly] : outputs) powers.push_back(to_power_basis(poly));
    for (int j = 0; j <= opt.figure_grid; ++j) {
      Rational x = make_rational(j, opt.figure_grid);
      fig << to_string(x) << ",";
      FunctionSpec::Value v = f.at(x);
      if (v.is_exact()) {
        fig << to_string(*v.exact);
      } else {
        fig << decimal_midpoint(v.enclosure(opt.bits));
      }
      for (const auto& power : powers) fig << "," << to_string(eval_power(power, x));
      fig << "\n";
    }
    write_output(opt.figure_data, fig.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Bernstein operators with integer coefficients: shape "
               "certification, corrections, envelopes and counterexample search"};
  app.require_subcommand(1);

  ApproxOptions approx_opt;
  CLI::App* approx = app.add_subcommand(
      "approx", "apply an operator to a function and emit polynomial JSON");
  approx->add_option("--f", approx_opt.function,
                     "built-in selector (sqrt, (x+1)^5, linear:a,b, poly:a0,a1,..., entropy) "
                     "or @samples.json")->required();
  approx->add_option("--n", approx_opt.n, "degree")->required()->check(CLI::PositiveNumber);
  approx->add_option("--op", approx_opt.op, "classical|floor|nearest")->required();
  approx->add_option("--tie", approx_opt.tie, "half-up|half-down|half-even");
  approx->add_option("--basis", approx_opt.basis, "bernstein|power");
  approx->add_option("--out", approx_opt.out, "output file, '-' for stdout");

  CertifyOptions certify_opt;
  CLI::App* certify = app.add_subcommand("certify", "certify or refute a shape query");
  certify->add_option("--poly", certify_opt.poly, "polynomial JSON file, '-' for stdin")
      ->required();
  certify->add_option("--query", certify_opt.query,
                      "monotone-increasing|monotone-decreasing|convex|concave")->required();
  certify->add_option("--depth-cap", certify_opt.depth_cap, "subdivision depth cap");
  certify->add_option("--out", certify_opt.out, "output file, '-' for stdout");

  HypothesisOptions hyp_opt;
  CLI::App* hypothesis =
      app.add_subcommand("hypothesis", "check a sufficient-condition grid inequality");
  hypothesis->add_option("--samples", hyp_opt.samples, "samples JSON file")->required();
  hypothesis->add_option("--id", hyp_opt.id, "inequality family id, e.g. Thm1m_a")->required();
  hypothesis->add_option("--bits", hyp_opt.bits, "enclosure precision for entropy margins");

  CorrectionsOptions corr_opt;
  CLI::App* corrections =
      app.add_subcommand("corrections", "emit a correction-function grid table");
  corrections->add_option("--kind", corr_opt.kind,
                          "phi-inc|psi-dec|tilde-varphi|varphi-combined|phi-convex|entropy")
      ->required();
  corrections->add_option("--n", corr_opt.n, "degree")->required();
  corrections->add_flag("--check-quadrature", corr_opt.check_quadrature,
                        "cross-check entries against adaptive integration");
  corrections->add_option("--tol", corr_opt.tol, "quadrature tolerance");
  corrections->add_option("--bits", corr_opt.bits, "enclosure bits for the entropy kind");
  corrections->add_option("--out", corr_opt.out, "output file, '-' for stdout");

  EnvelopeOptions env_opt;
  CLI::App* envelope = app.add_subcommand("envelope", "evaluate a vanishing envelope on a grid");
  envelope->add_option("--kind", env_opt.kind,
                       "epsilon-monotone|epsilon-convex|eta-monotone|eta-convex")->required();
  envelope->add_option("--n", env_opt.n, "degree")->required();
  envelope->add_option("--grid", env_opt.grid, "number of grid cells")->check(CLI::PositiveNumber);
  envelope->add_option("--out", env_opt.out, "output file, '-' for stdout");

  SearchOptions search_opt;
  CLI::App* search = app.add_subcommand("search", "randomized counterexample search");
  search->add_option("--n", search_opt.n, "degree")->required();
  search->add_option("--op", search_opt.op, "classical|floor|nearest");
  search->add_option("--tie", search_opt.tie, "half-up|half-down|half-even");
  search->add_option("--query", search_opt.query, "shape to break");
  search->add_option("--budget", search_opt.budget, "trial budget");
  search->add_option("--seed", search_opt.seed, "RNG seed");
  search->add_option("--resolution", search_opt.resolution, "denominator bound");
  search->add_option("--mode", search_opt.mode, "biased|uniform");
  search->add_option("--depth-cap", search_opt.depth_cap, "certification depth cap");
  search->add_option("--out", search_opt.out, "output file, '-' for stdout");

  CLI::App* verify = app.add_subcommand("verify-paper", "re-run the bundled reference examples");

  ConvergenceOptions conv_opt;
  CLI::App* convergence =
      app.add_subcommand("convergence", "sup-grid deviations of operator outputs");
  convergence->add_option("--f", conv_opt.function, "function selector or @samples.json")
      ->required();
  convergence->add_option("--ops", conv_opt.ops, "comma-separated operator list");
  convergence->add_option("--tie", conv_opt.tie, "tie policy for nearest");
  convergence->add_option("--ns", conv_opt.ns, "comma-separated degree list")->required();
  convergence->add_option("--grid", conv_opt.grid, "deviation grid cells");
  convergence->add_option("--bits", conv_opt.bits, "enclosure precision");
  convergence->add_option("--figure-data", conv_opt.figure_data,
                          "also write x, f(x) and every output polynomial over a fine grid");
  convergence->add_option("--figure-grid", conv_opt.figure_grid, "fine grid cells");
  convergence->add_option("--out", conv_opt.out, "output file, '-' for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (approx->parsed()) return run_approx(approx_opt);
    if (certify->parsed()) return run_certify(certify_opt);
    if (hypothesis->parsed()) return run_hypothesis(hyp_opt);
    if (corrections->parsed()) return run_corrections(corr_opt);
    if (envelope->parsed()) return run_envelope(env_opt);
    if (search->parsed()) return run_search(search_opt);
    if (verify->parsed()) return run_verify_paper();
    if (convergence->parsed()) return run_convergence(conv_opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
