#include "clim/sampling.hpp"

#include <cmath>
#include <numbers>

namespace clim
{

cplx sample_disc(Rng &rng, double radius)
{
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = radius * std::sqrt(unit(rng));
  const double phi = 2.0 * std::numbers::pi * unit(rng);
  return std::polar(r, phi);
}

std::vector<OrbitPoint> sample_points(const Weight &lambda, std::size_t count, std::uint64_t seed, double radius)
{
  Rng rng(seed);
  const int M = lambda.M();
  const auto mask = active_mask(lambda);
  std::vector<OrbitPoint> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n)
  {
    std::vector<cplx> x(mask.size(), cplx(0.0));
    for (std::size_t q = 0; q < mask.size(); ++q)
      if (mask[q])
        x[q] = sample_disc(rng, radius);
    out.push_back(OrbitPoint(M, std::move(x)).on_chart(lambda));
  }
  return out;
}

namespace
{

cplx gaussian(Rng &rng)
{
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

} // namespace

Matrix random_sl_algebra(int M, Rng &rng)
{
  Matrix a(M, M);
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j)
      a(i, j) = gaussian(rng);
  a -= (a.trace() / static_cast<double>(M)) * Matrix::Identity(M, M);
  return a;
}

Matrix random_su_algebra(int M, Rng &rng)
{
  Matrix a = random_sl_algebra(M, rng);
  Matrix s = 0.5 * (a - a.adjoint());
  s -= (s.trace() / static_cast<double>(M)) * Matrix::Identity(M, M);
  return s;
}

Matrix random_su_group(int M, Rng &rng)
{
  Matrix z(M, M);
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j)
      z(i, j) = gaussian(rng);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < M; ++j)
  {
    const cplx d = r(j, j);
    if (std::abs(d) > 0.0)
      q.col(j) *= d / std::abs(d);
  }
  const cplx det = q.determinant();
  q /= std::pow(det, 1.0 / static_cast<double>(M));
  return q;
}

Vector random_vector(Eigen::Index n, Rng &rng)
{
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i)
    v[i] = gaussian(rng);
  return v;
}

} // namespace clim
