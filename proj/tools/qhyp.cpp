#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qhyp/errors.hpp"
#include "qhyp/specfun.hpp"
#include "qhyp/verify.hpp"

using namespace qhyp;

namespace {

// "x", "a,b,c" or "start:stop:count".
std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> out;
  auto num = [&](const std::string& s) {
    std::size_t pos = 0;
    const double x = std::stod(s, &pos);
    if (pos != s.size()) throw CLI::ValidationError("grid", "bad number '" + s + "'");
    return x;
  };
  try {
    if (spec.find(':') != std::string::npos) {
      std::vector<std::string> parts;
      std::stringstream ss(spec);
      for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
      if (parts.size() != 3) throw CLI::ValidationError("grid", "expected start:stop:count");
      const double a = num(parts[0]), b = num(parts[1]);
      const int m = std::stoi(parts[2]);
      if (m < 1) throw CLI::ValidationError("grid", "count must be positive");
      for (int i = 0; i < m; ++i) out.push_back(m == 1 ? a : a + (b - a) * i / (m - 1));
    } else {
      std::stringstream ss(spec);
      for (std::string p; std::getline(ss, p, ',');) out.push_back(num(p));
    }
  } catch (const std::logic_error&) {
    throw CLI::ValidationError("grid", "cannot parse '" + spec + "'");
  }
  if (out.empty()) throw CLI::ValidationError("grid", "empty grid");
  return out;
}

struct EvalArgs {
  std::string what;
  int n = 1, nu = 0;
  double alpha = 0.0, beta = 0.0, lambda_im = 0.0;
  std::string lambda = "1", t = "0";
  bool have_ab = false;
};

int run_eval(const EvalArgs& a) {
  const auto ls = parse_grid(a.lambda);
  const auto ts = parse_grid(a.t);
  const bool radial = a.what == "c" || a.what == "b";
  if ((a.what == "phi" || a.what == "psi") && !a.have_ab)
    throw CLI::ValidationError("eval", a.what + " needs --alpha and --beta");
  std::cout << "t,lambda,re,im\n" << std::setprecision(17);
  for (double lr : ls) {
    const cplx l(lr, a.lambda_im);
    const std::vector<double> tlist = radial ? std::vector<double>{0.0} : ts;
    for (double t : tlist) {
      cplx v;
      if (a.what == "phi") {
        v = jacobi_phi({a.alpha, a.beta}, l, t);
      } else if (a.what == "psi") {
        v = jacobi_psi({a.alpha, a.beta}, l, t);
      } else if (a.what == "c") {
        v = a.have_ab ? c_ab({a.alpha, a.beta}, l) : c_nu(GroupContext(a.n), BundleWeight{a.nu}, l);
      } else if (a.what == "b") {
        v = b_nu(GroupContext(a.n), BundleWeight{a.nu}, l);
      } else {
        v = spherical_phi(GroupContext(a.n), BundleWeight{a.nu}, l, t);
      }
      if (radial)
        std::cout << ',';
      else
        std::cout << t << ',';
      std::cout << l.real();
      if (a.lambda_im != 0.0) std::cout << (l.imag() < 0 ? "" : "+") << l.imag() << 'i';
      std::cout << ',' << v.real() << ',' << v.imag() << '\n';
    }
  }
  return 0;
}

void print_summary(const nlohmann::json& suite) {
  std::cout << suite["suite"].get<std::string>() << ": " << (suite["pass"].get<bool>() ? "PASS" : "FAIL") << '\n';
  for (const auto& c : suite["checks"]) {
    std::ostringstream line;
    line << "  [" << (c["pass"].get<bool>() ? "pass" : "FAIL") << "] " << std::left << std::setw(28)
         << c["id"].get<std::string>() << " value " << std::setprecision(4) << std::scientific
         << c["value"].get<double>() << "  tol " << c["tolerance"].get<double>();
    std::cout << line.str() << '\n';
  }
  if (suite.contains("data") && suite["data"].contains("defect")) {
    std::cout << "  R,defect\n";
    for (std::size_t i = 0; i < suite["data"]["R"].size(); ++i)
      std::cout << "  " << suite["data"]["R"][i].get<double>() << ',' << suite["data"]["defect"][i].get<double>()
                << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Harmonic analysis on quaternionic hyperbolic space: special functions and checks"};
  app.require_subcommand(1);

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "Evaluate a special function on a grid (CSV t,lambda,re,im)");
  eval->add_option("function", ea.what, "phi | psi | c | b | phinu")
      ->required()
      ->check(CLI::IsMember({"phi", "psi", "c", "b", "phinu"}));
  eval->add_option("--n", ea.n, "quaternionic dimension")->check(CLI::PositiveNumber);
  eval->add_option("--nu", ea.nu, "bundle weight")->check(CLI::NonNegativeNumber);
  auto* oa = eval->add_option("--alpha", ea.alpha, "Jacobi alpha");
  auto* ob = eval->add_option("--beta", ea.beta, "Jacobi beta");
  oa->needs(ob);
  ob->needs(oa);
  eval->add_option("--lambda", ea.lambda, "real part grid: x, a,b,.. or start:stop:count");
  eval->add_option("--lambda-im", ea.lambda_im, "imaginary part of lambda");
  eval->add_option("--t", ea.t, "t grid: x, a,b,.. or start:stop:count");

  VerifyConfig vc;
  std::string suite, out;
  std::string radii = "5,10,20,40";
  auto* verify = app.add_subcommand("verify", "Run a verification suite and write a JSON report");
  std::vector<std::string> allowed = suite_names();
  allowed.push_back("all");
  verify->add_option("suite", suite, "group | specfun | jacobi | poisson | fourier | keylemma | all")
      ->required()
      ->check(CLI::IsMember(allowed));
  verify->add_option("--n", vc.n, "quaternionic dimension")->check(CLI::PositiveNumber);
  verify->add_option("--nu", vc.nu, "bundle weight")->check(CLI::NonNegativeNumber);
  verify->add_option("--lambda", vc.lambda, "spectral parameter (real, nonzero)");
  verify->add_option("--R", radii, "ball radii, comma separated");
  verify->add_option("--seed", vc.seed, "Monte-Carlo seed");
  verify->add_option("--out", out, "JSON report path (default verify_<suite>.json)");

  try {
    app.parse(argc, argv);
    if (eval->parsed()) {
      ea.have_ab = oa->count() > 0;
      return run_eval(ea);
    }
    vc.radii = parse_grid(radii);
    if (vc.lambda == 0.0) throw CLI::ValidationError("--lambda", "must be nonzero");
    const auto report = verify_report(suite, vc);
    const std::string path = out.empty() ? "verify_" + suite + ".json" : out;
    std::ofstream f(path);
    if (!f) {
      std::cerr << "cannot write " << path << '\n';
      return 2;
    }
    f << report.dump(2) << '\n';
    if (suite == "all")
      for (const auto& s : report["suites"]) print_summary(s);
    else
      print_summary(report);
    std::cout << "report: " << path << '\n';
    return report["pass"].get<bool>() ? 0 : 1;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const SpectralPole& e) {
    std::cerr << "pole: " << e.what() << '\n';
    return 3;
  } catch (const ParameterPole& e) {
    std::cerr << "pole: " << e.what() << '\n';
    return 3;
  } catch (const PoleAtNonpositiveInteger& e) {
    std::cerr << "pole: " << e.what() << '\n';
    return 3;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
