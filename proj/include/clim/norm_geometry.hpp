#ifndef CLIM_NORM_GEOMETRY_HPP
#define CLIM_NORM_GEOMETRY_HPP

#include "clim/irrep.hpp"
#include "clim/orbit_calculus.hpp"

#include <vector>

namespace clim
{

/// N_k(u) = |u (e_1 ^ ... ^ e_k)|^2 = sum over k-row subsets S of |det u[S, 1..k]|^2.
double fundamental_norm(int k, const OrbitPoint &point);

/// All fundamental norms N_1..N_{M-1} at one point.
class NormBundle
{
public:
  explicit NormBundle(const OrbitPoint &point);

  int M() const { return static_cast<int>(m_values.size()) + 1; }
  /// N_k, 1-based.
  double operator[](int k) const { return m_values.at(static_cast<std::size_t>(k - 1)); }
  const std::vector<double> &values() const { return m_values; }

  /// prod_k N_k^{lambda_k}
  double factorized(const Weight &lambda) const;

private:
  std::vector<double> m_values;
};

double norm_factorized(const Weight &lambda, const OrbitPoint &point);

/// |rho(u) v_max|^2 computed inside the irrep.
double norm_direct(const Irrep &irrep, const OrbitPoint &point);

} // namespace clim

#endif
