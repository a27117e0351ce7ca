#ifndef CLIM_VERIFY_HPP
#define CLIM_VERIFY_HPP

#include "clim/classical_limit.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace clim
{

/// One measured property: passed iff measured <= tolerance (or the check's own rule).
struct PropertyResult
{
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct SuiteReport
{
  std::string suite;
  std::vector<PropertyResult> properties;
  bool passed() const;
};

nlohmann::json to_json(const PropertyResult &r);
nlohmann::json to_json(const SuiteReport &r);

/// Sampling and tolerance knobs shared by the checks.
struct VerifyOptions
{
  int M = 3;
  std::size_t count = 100;
  std::uint64_t seed = 1;
  double radius = 1.0;

  double golden = 1e-12;
  double anchor = 1e-10;
  double theorem2 = 1e-10;
  Theorem3Tolerance theorem3;
  double poisson = 1e-6;
  double poisson_step = 1e-4;
  double equivariance = 1e-8;
  double commutation = 1e-10;
  double cross_path = 1e-5;
  double parser = 1e-12;
  double exponent_low = -1.3;
  double exponent_high = -0.7;
};

/// r~(E(1,2)) coefficients and l(E(1,2)) against the closed su(3) formulas.
std::vector<PropertyResult> check_golden_su3(const VerifyOptions &o);
/// l(xi) = <psi, rho(xi) psi>/<psi, psi> for every generator.
std::vector<PropertyResult> check_anchor(const std::vector<int> &Ms, int total, const VerifyOptions &o);
/// |N_direct / N_factorized - 1| and the ratio variance.
std::vector<PropertyResult> check_theorem2(const std::vector<int> &Ms, int total, const VerifyOptions &o);
/// Exact polynomial structure of lambda -> l_lambda(alpha) for degrees 2 and 3.
std::vector<PropertyResult> check_theorem3(const VerifyOptions &o);
/// cl_n -> cl for a degree-2 selfadjoint Hamiltonian: monotone for n >= 4 and a fitted exponent in the window.
std::vector<PropertyResult> check_limit_process(const VerifyOptions &o);
/// Flow-derivative bracket residual, its O(h^2) halving, and the Dirac form.
std::vector<PropertyResult> check_poisson(const std::vector<int> &Ms, const VerifyOptions &o);
std::vector<PropertyResult> check_equivariance(const std::vector<int> &Ms, const VerifyOptions &o);
/// Weyl dimensions and commutation residuals of the constructed irreps.
std::vector<PropertyResult> check_irreps(const VerifyOptions &o);
/// l via jets against l via flows and the direct norm, degrees 1..3.
std::vector<PropertyResult> check_cross_path(const VerifyOptions &o);
/// Round trip on the corpus, adjoint involution, selfadjointness vs hermitian images.
std::vector<PropertyResult> check_parser(const VerifyOptions &o);

const std::vector<std::string> &parser_corpus();

/// Suites: norm, theorem3, poisson, golden-su3, all.
const std::vector<std::string> &suite_names();
SuiteReport run_suite(const std::string &suite, const VerifyOptions &o);

} // namespace clim

#endif
