#include "clim/norm_geometry.hpp"

#include <cmath>

namespace clim
{

double fundamental_norm(int k, const OrbitPoint &point)
{
  const int M = point.M();
  if (k < 1 || k > M - 1)
    throw DomainError("fundamental_norm: k = " + std::to_string(k) + " outside 1.." + std::to_string(M - 1));
  const Matrix u = point.unipotent();
  // Cauchy-Binet: sum over row subsets of the first k columns
  std::vector<int> rows(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i)
    rows[static_cast<std::size_t>(i)] = i;
  double sum = 0.0;
  Matrix sub(k, k);
  while (true)
  {
    for (int a = 0; a < k; ++a)
      sub.row(a) = u.row(rows[static_cast<std::size_t>(a)]).head(k);
    sum += std::norm(sub.determinant());
    int i = k - 1;
    while (i >= 0 && rows[static_cast<std::size_t>(i)] == M - k + i)
      --i;
    if (i < 0)
      break;
    ++rows[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      rows[static_cast<std::size_t>(j)] = rows[static_cast<std::size_t>(j - 1)] + 1;
  }
  return sum;
}

NormBundle::NormBundle(const OrbitPoint &point)
{
  for (int k = 1; k < point.M(); ++k)
    m_values.push_back(fundamental_norm(k, point));
}

double NormBundle::factorized(const Weight &lambda) const
{
  if (lambda.M() != M())
    throw DomainError("norm_factorized: weight and point belong to different groups");
  double n = 1.0;
  for (int k = 1; k < M(); ++k)
    n *= std::pow((*this)[k], lambda[k]);
  return n;
}

double norm_factorized(const Weight &lambda, const OrbitPoint &point) { return NormBundle(point).factorized(lambda); }

double norm_direct(const Irrep &irrep, const OrbitPoint &point)
{
  if (irrep.spec().M() != point.M())
    throw DomainError("norm_direct: irrep and point belong to different groups");
  return irrep.orbit_vector(point.unipotent()).squaredNorm();
}

} // namespace clim
