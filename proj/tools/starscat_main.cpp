// starscat command-line front end. Subcommands wrap the library one-to-one:
//
//   scatter             exact (or momentum-resolved) scattering matrix
//   classify            canonical form of a free-like scattering matrix
//   approximate         delta-coupling approximating graph at scale d
//   converge            error of the approximation over a halving d-grid
//   enumerate-freelike  the time-reversal-symmetric finite subfamily
//
// Exit codes are a stable scripting contract: 0 success or asserted-true,
// 1 asserted-false (classify of a matrix that is not free-like, converge
// below its quality gate), 2 usage or validation failure, 3 numerical
// failure.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "starscat/approximation.hpp"
#include "starscat/coupling.hpp"
#include "starscat/freelike.hpp"
#include "starscat/graph_solver.hpp"
#include "starscat/io.hpp"

namespace {

using namespace starscat;
using nlohmann::json;

// Quality gate of the converge subcommand, chosen so a healthy first-order
// approximation passes with margin.
constexpr double kOrderGate = 0.8;
constexpr double kFinalErrorGate = 0.05;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    save_text(out_path, text);
}

int cmd_scatter(const std::string& path, bool use_k, double k,
                const std::string& json_path) {
  const CouplingST c = coupling_from_json(load_json(path));
  CMatrix S;
  if (use_k)
    S = ks_scattering(st_to_ab(c), k);
  else
    S = ft_scattering(c);
  std::cout << "scattering matrix (n = " << c.n << "):\n" << format_cmatrix(S);
  if (!json_path.empty())
    save_text(json_path, smatrix_to_json(S).dump(2) + "\n");
  return 0;
}

int cmd_classify(const std::string& path, double tol) {
  const json doc = load_json(path);
  CMatrix S;
  if (doc.is_object() && doc.contains("T"))
    S = ft_scattering(coupling_from_json(doc));
  else
    S = smatrix_from_json(doc);

  const int n = static_cast<int>(S.rows());
  const double udev = max_abs(S.adjoint() * S - CMatrix::Identity(n, n));
  if (udev > tol)
    throw ValidationError("input matrix is not unitary (deviation " +
                          std::to_string(udev) + " exceeds tol)");
  if (!is_freelike(S, tol)) {
    std::cout << "not free-like\n";
    return 1;
  }

  const FreeLikeForm f = classify_freelike(S, tol);
  const char* name = f.kind == FreeLikeCase::MinusJ  ? "MinusJ"
                     : f.kind == FreeLikeCase::PlusJ ? "PlusJ"
                                                     : "Balanced";
  std::cout << "case: " << name << "\n";
  std::cout << "p: " << f.p << "\n";
  char buf[32];
  std::cout << "phases: [";
  for (Eigen::Index i = 0; i < f.phases.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.6f", f.phases(i));
    std::cout << (i ? ", " : "") << buf;
  }
  std::cout << "]\npermutation: [";
  for (std::size_t i = 0; i < f.perm.size(); ++i)
    std::cout << (i ? ", " : "") << (f.perm[i] + 1);
  std::cout << "]\n";
  std::snprintf(buf, sizeof buf, "%.3e", max_abs(realize_smatrix(f) - S));
  std::cout << "reconstruction error: " << buf << "\n";
  return 0;
}

int cmd_approximate(const std::string& path, double d, const std::string& out) {
  const CouplingST c = coupling_from_json(load_json(path));
  const ApproxGraph g = build_approximation(c, d);
  json j = graph_to_json(g);
  j["reconstruction_residual"] = reconstruction_residual(c, g);
  emit(j.dump(2) + "\n", out);
  return 0;
}

int cmd_converge(const std::string& path, double k, double d_start, int d_steps,
                 const std::string& csv_path) {
  if (!(d_start > 0.0))
    throw ValidationError("--d-start must be positive");
  if (d_steps < 3)
    throw ValidationError("--d-steps must be at least 3");
  const CouplingST c = coupling_from_json(load_json(path));
  std::vector<double> ds;
  ds.reserve(d_steps);
  for (int j = 0; j < d_steps; ++j) ds.push_back(d_start * std::pow(2.0, -j));

  const ConvergenceReport report = convergence_study(c, k, ds);
  for (const ConvergenceRow& row : report.rows)
    if (!row.ok)
      throw SingularSystemError("solver failed at d=" + fmt17(row.d) + ", k=" +
                                    fmt17(k) + ": " + row.message,
                                0.0);

  const std::string csv = report_to_csv(report);
  if (csv_path.empty())
    std::cout << csv;
  else
    save_text(csv_path, csv);

  const ConvergenceRow& last = report.rows.back();
  char buf[64];
  std::snprintf(buf, sizeof buf, "fitted_order: %.6f\n", report.fitted_order);
  std::cout << buf;
  std::snprintf(buf, sizeof buf, "final_error: %.6e at d = %g\n", last.error,
                last.d);
  std::cout << buf;
  const bool pass =
      report.fitted_order >= kOrderGate && last.error <= kFinalErrorGate;
  return pass ? 0 : 1;
}

int cmd_enumerate(int n, const std::string& kind_name, bool time_reversal,
                  const std::string& out) {
  if (!time_reversal) {
    std::cerr << "continuous family; use --time-reversal for the finite subfamily\n";
    return 2;
  }
  FreeLikeCase kind;
  if (kind_name == "minus")
    kind = FreeLikeCase::MinusJ;
  else if (kind_name == "plus")
    kind = FreeLikeCase::PlusJ;
  else if (kind_name == "balanced")
    kind = FreeLikeCase::Balanced;
  else
    throw ValidationError("--case must be one of minus, plus, balanced");

  json arr = json::array();
  for (const auto& [c, S] : enumerate_time_reversal(n, kind)) {
    json j = coupling_to_json(c);
    j["S"] = cmatrix_to_json(S);
    arr.push_back(std::move(j));
  }
  emit(arr.dump(2) + "\n", out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scale-invariant star-graph couplings: exact scattering, "
               "free-like classification, delta-coupling approximation"};
  app.require_subcommand(1);

  std::string in_path, out_path, csv_path, json_path, case_name = "minus";
  double k = 0.0, d = 0.0, tol = kModuliTol, d_start = 0.2;
  int n = 0, d_steps = 6;
  bool general_ab = false, time_reversal = false;

  CLI::App* scatter = app.add_subcommand(
      "scatter", "print the scattering matrix of a coupling file");
  scatter->add_option("coupling", in_path, "coupling JSON file")->required();
  CLI::Option* opt_k =
      scatter->add_option("--k", k, "momentum; solve in (A,B) form at this k");
  scatter->add_flag("--general-ab", general_ab, "force the (A,B)-form solve")
      ->needs(opt_k);
  scatter->add_option("--json", json_path, "also write the matrix as JSON here");

  CLI::App* classify = app.add_subcommand(
      "classify", "canonical form of a free-like scattering matrix");
  classify->add_option("input", in_path, "scattering-matrix or coupling JSON file")
      ->required();
  classify->add_option("--tol", tol, "moduli tolerance");

  CLI::App* approx = app.add_subcommand(
      "approximate", "build the delta-coupling approximating graph");
  approx->add_option("coupling", in_path, "coupling JSON file")->required();
  approx->add_option("--d", d, "approximation scale, d > 0")->required();
  approx->add_option("--out", out_path, "write the graph JSON here");

  CLI::App* converge = app.add_subcommand(
      "converge", "measure the approximation error over a halving d-grid");
  converge->add_option("coupling", in_path, "coupling JSON file")->required();
  converge->add_option("--k", k, "momentum")->default_val(1.0);
  converge->add_option("--d-start", d_start, "largest scale");
  converge->add_option("--d-steps", d_steps, "number of halvings, at least 3");
  converge->add_option("--csv", csv_path, "write the d,error table here");

  CLI::App* enumerate = app.add_subcommand(
      "enumerate-freelike", "list the time-reversal-symmetric subfamily");
  enumerate->add_option("--n", n, "vertex degree")->required();
  enumerate->add_option("--case", case_name, "minus | plus | balanced");
  enumerate->add_flag("--time-reversal", time_reversal,
                      "restrict phases to {0, pi} (required; the full family "
                      "is continuous)");
  enumerate->add_option("--out", out_path, "write the JSON array here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (scatter->parsed())
      return cmd_scatter(in_path, opt_k->count() > 0, k, json_path);
    if (classify->parsed()) return cmd_classify(in_path, tol);
    if (approx->parsed()) return cmd_approximate(in_path, d, out_path);
    if (converge->parsed())
      return cmd_converge(in_path, k, d_start, d_steps, csv_path);
    if (enumerate->parsed())
      return cmd_enumerate(n, case_name, time_reversal, out_path);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
