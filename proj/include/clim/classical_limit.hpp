#ifndef CLIM_CLASSICAL_LIMIT_HPP
#define CLIM_CLASSICAL_LIMIT_HPP

#include "clim/irrep.hpp"
#include "clim/norm_geometry.hpp"
#include "clim/operator_algebra.hpp"
#include "clim/orbit_calculus.hpp"

#include <string>
#include <vector>

namespace clim
{

/// Orthonormal basis of su(M) under <A,B> = Re tr(A^* B): the skew-hermitian
/// combinations i(E_kl + E_lk)/sqrt2, (E_kl - E_lk)/sqrt2, then the Cartan part.
std::vector<Matrix> compact_basis(const AlgebraSpec &spec);

/// mu^xi(x) = -2i <x, rho(xi) x> / <x, x>.
cplx moment(const Irrep &irrep, const Matrix &xi, const Vector &x);

/// Components of mu(x) on compact_basis; real up to rounding.
struct MomentValue
{
  std::vector<double> components;
};

MomentValue moment_value(const Irrep &irrep, const Vector &x);

/// | mu(k.x) - Ad*(k) mu(x) | for k in SU(M).
double equivariance_residual(const Irrep &irrep, const Matrix &k, const Vector &x);

/// cl(A)(x) = <x, rho(A) x> / <x, x>.
cplx cl_generator(const Irrep &irrep, const Matrix &a, const Vector &x);
/// Same for a degree-1 abstract operator (a scalar part contributes itself).
cplx cl_generator(const Irrep &irrep, const AbstractOperator &a, const Vector &x);

/// cl(A) at u.v_max without building V_lambda: for the decomposable vector
/// u.v_max the expectation is sum_k lambda_k tr((U_k^* U_k)^{-1} U_k^* A U_k),
/// U_k the first k columns of u.
cplx cl_on_orbit(const Weight &lambda, const Matrix &a, const OrbitPoint &point);

/// prod_i cl(xi_{a_i}); the empty monomial gives 1.
cplx cl_monomial(const Weight &lambda, const Monomial &alpha, const OrbitPoint &point);
/// Linear extension to operators.
cplx cl_operator(const Weight &lambda, const AbstractOperator &op, const OrbitPoint &point);

struct LimitOptions
{
  /// Largest monomial degree accepted by l_symbol (jet width).
  int max_degree = 6;
};

/// l(alpha) = N^{-1} r~(a_1) o ... o r~(a_p) (N) at the point, via jets of the
/// factorized norm.
cplx l_symbol(const Weight &lambda, const Monomial &alpha, const OrbitPoint &point, const LimitOptions &options = {});

/// Independent route to l(alpha): mixed central differences of
/// t -> <psi, rho(exp(t_p a_p) ... exp(t_1 a_1) u) v_max> inside the irrep,
/// Richardson-extrapolated, divided by the direct norm.
cplx l_symbol_by_flows(const Irrep &irrep, const Monomial &alpha, const OrbitPoint &point, double step = 1e-2);

struct ConvergenceTolerance
{
  /// Errors at or below this (relative to max(1,|limit|)) count as exact.
  double exact = 1e-12;
  /// Fitted decay exponent must not exceed this.
  double max_exponent = -0.7;
};

struct ConvergenceReport
{
  std::vector<int> n;
  std::vector<cplx> values;
  std::vector<double> errors;
  cplx limit;
  bool fit_valid = false;
  double exponent = 0.0;
  double fit_residual = 0.0;
  bool passed = false;
  std::string warning;
};

/// cl_n(H) = sum_i n^{-d(i)} l_{n lambda}(alpha_i) for n in n_list, against the
/// limit computed from cl_operator.
ConvergenceReport cl_sequence(const Weight &lambda, const AbstractOperator &hamiltonian, const OrbitPoint &point,
                              const std::vector<int> &n_list, const ConvergenceTolerance &tolerance = {},
                              const LimitOptions &options = {});

/// Least-squares slope of log(error) against log(n); returns {slope, rms residual}.
std::pair<double, double> fit_decay(const std::vector<int> &n, const std::vector<double> &errors);

/// | (mu^eta(exp(-h xi) x) - mu^eta(exp(h xi) x)) / 2h - mu^{[xi,eta]}(x) |.
double poisson_check(const Irrep &irrep, const Matrix &xi, const Matrix &eta, const Vector &x, double h);
/// Hermitian A, B: the bracket identity for xi = iA, eta = iB.
double dirac_check(const Irrep &irrep, const Matrix &a, const Matrix &b, const Vector &x, double h);

struct Theorem3Report
{
  int degree = 0;
  std::size_t nodes = 0;
  std::size_t held_out = 0;
  bool hypothesis_holds = false; ///< every node has some lambda_i > degree
  double held_out_residual = 0.0;
  double leading_deviation = 0.0;
  /// Fitted coefficients keyed by exponent vector, graded order.
  std::vector<std::pair<std::vector<int>, cplx>> coefficients;
  bool passed = false;
};

struct Theorem3Tolerance
{
  double held_out = 1e-8;
  double leading = 1e-8;
};

/// Integer grid for the structure fit: each coordinate in [p+1, p+extent].
std::vector<Weight> theorem3_grid(int M, int degree, int extent = 6);

/// Fits lambda -> l_lambda(alpha)(point) by a polynomial of total degree <= p on
/// part of the grid, checks the held-out nodes, and compares the degree-p part
/// with the product of the degree-1 limits.
Theorem3Report theorem3_structure(const std::vector<Weight> &grid, const Monomial &alpha, const OrbitPoint &point,
                                  const Theorem3Tolerance &tolerance = {});

} // namespace clim

#endif
