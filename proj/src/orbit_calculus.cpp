#include "clim/orbit_calculus.hpp"

#include <algorithm>
#include <numeric>

namespace clim
{

std::vector<LowerIndex> lower_positions(int M)
{
  std::vector<LowerIndex> out;
  for (int i = 2; i <= M; ++i)
    for (int j = 1; j < i; ++j)
      out.push_back({i, j});
  return out;
}

std::vector<bool> active_mask(const Weight &lambda)
{
  const int M = lambda.M();
  std::vector<int> block(static_cast<std::size_t>(M), 0);
  for (int i = 2; i <= M; ++i)
    block[static_cast<std::size_t>(i - 1)] = block[static_cast<std::size_t>(i - 2)] + (lambda[i - 1] != 0 ? 1 : 0);
  std::vector<bool> mask;
  for (const auto &p : lower_positions(M))
    mask.push_back(block[static_cast<std::size_t>(p.i - 1)] != block[static_cast<std::size_t>(p.j - 1)]);
  return mask;
}

namespace
{

std::size_t position_index(int M, int i, int j)
{
  if (i <= j || j < 1 || i > M)
    throw DomainError("x_" + std::to_string(i) + "_" + std::to_string(j) + " is not a strictly-lower coordinate");
  return static_cast<std::size_t>((i - 1) * (i - 2) / 2 + (j - 1));
}

} // namespace

OrbitPoint::OrbitPoint(int M)
    : m_M(M), m_x(static_cast<std::size_t>(M * (M - 1) / 2), cplx(0.0)), m_active(m_x.size(), true)
{
  if (M < 2)
    throw DomainError("orbit points need M >= 2");
}

OrbitPoint::OrbitPoint(int M, std::vector<cplx> coordinates) : OrbitPoint(M)
{
  if (coordinates.size() != m_x.size())
    throw DomainError("expected " + std::to_string(m_x.size()) + " orbit coordinates");
  m_x = std::move(coordinates);
}

OrbitPoint OrbitPoint::from_map(int M, const std::map<std::string, cplx> &named)
{
  OrbitPoint p(M);
  std::size_t used = 0;
  for (const auto &pos : lower_positions(M))
  {
    auto it = named.find(pos.name());
    if (it != named.end())
    {
      p.set(pos.i, pos.j, it->second);
      ++used;
    }
  }
  if (used != named.size())
    throw DomainError("point has coordinates that are not strictly-lower positions of sl_" + std::to_string(M));
  return p;
}

cplx OrbitPoint::x(int i, int j) const { return m_x[position_index(m_M, i, j)]; }

void OrbitPoint::set(int i, int j, cplx value) { m_x[position_index(m_M, i, j)] = value; }

OrbitPoint OrbitPoint::on_chart(const Weight &lambda, bool force) const
{
  if (lambda.M() != m_M)
    throw DomainError("weight and point belong to different groups");
  OrbitPoint out = *this;
  out.m_active = active_mask(lambda);
  for (std::size_t q = 0; q < m_x.size(); ++q)
    if (!out.m_active[q] && m_x[q] != cplx(0.0))
    {
      if (!force)
        throw DomainError("coordinate " + lower_positions(m_M)[q].name() + " must vanish on the chart of " +
                          lambda.str());
      out.m_x[q] = 0.0;
    }
  return out;
}

OrbitPoint OrbitPoint::project(const Weight &lambda) const
{
  if (lambda.M() != m_M)
    throw DomainError("weight and point belong to different groups");
  const auto mask = active_mask(lambda);
  const auto all = lower_positions(m_M);
  // the in-block part of u is unipotent inside the Levi and fixes v_max
  Matrix levi = Matrix::Identity(m_M, m_M);
  for (std::size_t q = 0; q < all.size(); ++q)
    if (!mask[q])
      levi(all[q].i - 1, all[q].j - 1) = m_x[q];
  const Matrix reduced = levi.triangularView<Eigen::UnitLower>().solve<Eigen::OnTheRight>(unipotent());
  std::vector<cplx> x(all.size(), cplx(0.0));
  for (std::size_t q = 0; q < all.size(); ++q)
    if (mask[q])
      x[q] = reduced(all[q].i - 1, all[q].j - 1);
  return OrbitPoint(m_M, std::move(x)).on_chart(lambda);
}

std::vector<LowerIndex> OrbitPoint::active_positions() const
{
  std::vector<LowerIndex> out;
  const auto all = lower_positions(m_M);
  for (std::size_t q = 0; q < all.size(); ++q)
    if (m_active[q])
      out.push_back(all[q]);
  return out;
}

Matrix OrbitPoint::unipotent() const
{
  Matrix u = Matrix::Identity(m_M, m_M);
  for (const auto &p : lower_positions(m_M))
    u(p.i - 1, p.j - 1) = x(p.i, p.j);
  return u;
}

GaussFactors gauss_decompose(const Matrix &g, double relative_threshold)
{
  const Eigen::Index n = g.rows();
  if (g.cols() != n)
    throw DomainError("gauss_decompose: square matrix required");
  Matrix lower = Matrix::Identity(n, n);
  Matrix upper = Matrix::Zero(n, n);
  cplx minor = 1.0;
  double bound = 1.0;
  for (Eigen::Index k = 0; k < n; ++k)
  {
    for (Eigen::Index j = k; j < n; ++j)
    {
      cplx s = g(k, j);
      for (Eigen::Index q = 0; q < k; ++q)
        s -= lower(k, q) * upper(q, j);
      upper(k, j) = s;
    }
    // Hadamard bound of the leading (k+1)-minor scales the threshold
    bound = 1.0;
    for (Eigen::Index r = 0; r <= k; ++r)
      bound *= g.row(r).head(k + 1).norm();
    minor *= upper(k, k);
    if (bound == 0.0 || std::abs(minor) <= relative_threshold * bound)
      throw DecompositionOnClosedSet("leading principal minor " + std::to_string(k + 1) +
                                     " vanishes: element outside the big cell");
    for (Eigen::Index i = k + 1; i < n; ++i)
    {
      cplx s = g(i, k);
      for (Eigen::Index q = 0; q < k; ++q)
        s -= lower(i, q) * upper(q, k);
      lower(i, k) = s / upper(k, k);
    }
  }
  GaussFactors f;
  f.diagonal = upper.diagonal();
  f.lower = std::move(lower);
  f.upper = f.diagonal.cwiseInverse().asDiagonal() * upper;
  return f;
}

ConjugateSplit conjugate_split(const Matrix &xi, const OrbitPoint &point)
{
  const int M = point.M();
  if (xi.rows() != M || xi.cols() != M)
    throw DomainError("conjugate_split: dimension mismatch");
  const Matrix u = point.unipotent();
  const Matrix uinv = u.triangularView<Eigen::UnitLower>().solve(Matrix::Identity(M, M));
  const Matrix a = uinv * xi * u;
  ConjugateSplit s;
  s.lower = a.triangularView<Eigen::StrictlyLower>();
  s.upper = a.triangularView<Eigen::StrictlyUpper>();
  s.diagonal = a.diagonal().asDiagonal();
  s.chart_velocity = u * s.lower;
  return s;
}

cplx FirstOrderOp::vector_coefficient(int i, int j) const
{
  for (std::size_t q = 0; q < m_positions.size(); ++q)
    if (m_positions[q].i == i && m_positions[q].j == j)
      return m_vector[q].value();
  return 0.0;
}

Jet FirstOrderOp::multiplication(const Weight &lambda) const
{
  if (static_cast<std::size_t>(lambda.M() - 1) != m_weight.size())
    throw DomainError("weight does not match the operator's group");
  Jet acc(m_weight.front().layout());
  for (std::size_t k = 0; k < m_weight.size(); ++k)
    if (lambda.fundamental()[k] != 0)
      acc += m_weight[k] * cplx(lambda.fundamental()[k]);
  return acc;
}

namespace
{

/// u(x + dx) over the active coordinates.
JetMatrix unipotent_jet(const OrbitPoint &point, const std::shared_ptr<const JetLayout> &layout)
{
  const int M = point.M();
  JetMatrix u(M, layout);
  for (int i = 0; i < M; ++i)
    u(i, i) = Jet(layout, 1.0);
  int v = 0;
  const auto all = lower_positions(M);
  for (std::size_t q = 0; q < all.size(); ++q)
    if (point.active()[q])
      u(all[q].i - 1, all[q].j - 1) = Jet::variable(layout, v++, point.coordinates()[q]);
  return u;
}

JetMatrix unit_lower_inverse(const JetMatrix &u)
{
  const int M = u.size();
  const auto layout = u(0, 0).layout();
  JetMatrix inv(M, layout);
  for (int i = 0; i < M; ++i)
    inv(i, i) = Jet(layout, 1.0);
  for (int i = 1; i < M; ++i)
    for (int j = i - 1; j >= 0; --j)
    {
      Jet s(layout);
      for (int k = j; k < i; ++k)
        s -= u(i, k) * inv(k, j);
      inv(i, j) = std::move(s);
    }
  return inv;
}

Jet jet_determinant(const JetMatrix &u, const std::vector<int> &rows, int k)
{
  const auto layout = u(0, 0).layout();
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  Jet det(layout);
  do
  {
    int inversions = 0;
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b)
        if (perm[static_cast<std::size_t>(a)] > perm[static_cast<std::size_t>(b)])
          ++inversions;
    Jet term(layout, inversions % 2 ? -1.0 : 1.0);
    bool zero = false;
    for (int c = 0; c < k && !zero; ++c)
    {
      const Jet &e = u(rows[static_cast<std::size_t>(perm[static_cast<std::size_t>(c)])], c);
      zero = std::all_of(e.coefficients().begin(), e.coefficients().end(), [](cplx z) { return z == cplx(0.0); });
      if (!zero)
        term *= e;
    }
    if (!zero)
      det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

} // namespace

FirstOrderOp r_tilde(const Matrix &xi, const OrbitPoint &point, int order)
{
  const int M = point.M();
  if (xi.rows() != M || xi.cols() != M)
    throw DomainError("r_tilde: dimension mismatch");
  const auto positions = point.active_positions();
  const auto layout = JetLayout::get(static_cast<int>(positions.size()), order);

  const JetMatrix u = unipotent_jet(point, layout);
  const JetMatrix a = unit_lower_inverse(u) * JetMatrix::constant(xi, layout) * u;

  // Lower part restricted to the chart directions; the in-block remainder lies in
  // the stabilizer of v_max and drops out.
  JetMatrix b(M, layout);
  const auto all = lower_positions(M);
  for (std::size_t q = 0; q < all.size(); ++q)
    if (point.active()[q])
      b(all[q].i - 1, all[q].j - 1) = a(all[q].i - 1, all[q].j - 1);
  const JetMatrix velocity = u * b;

  std::vector<Jet> vector_part;
  for (const auto &p : positions)
    vector_part.push_back(velocity(p.i - 1, p.j - 1));

  std::vector<Jet> weight_part;
  Jet running(layout);
  for (int k = 0; k < M - 1; ++k)
  {
    running += a(k, k);
    weight_part.push_back(running);
  }
  return FirstOrderOp(positions, std::move(vector_part), std::move(weight_part));
}

Jet apply_vector_part(const FirstOrderOp &op, const Jet &f)
{
  if (f.valid_order() == 0)
    throw JetOrderExhausted("jet order exhausted: composed more operators than the jet order");
  Jet out(f.layout());
  out = out.truncated(f.valid_order() - 1);
  for (std::size_t v = 0; v < op.vector_part().size(); ++v)
    out += op.vector_part()[v] * f.derivative(static_cast<int>(v));
  return out;
}

Jet apply_op(const FirstOrderOp &op, const Weight &lambda, const Jet &f)
{
  Jet out = apply_vector_part(op, f);
  out += op.multiplication(lambda) * f;
  return out.truncated(f.valid_order() - 1);
}

Jet jet_of_fundamental_norm(int k, const OrbitPoint &point, int order)
{
  const int M = point.M();
  if (k < 1 || k > M - 1)
    throw DomainError("fundamental norm index out of range");
  const auto layout = JetLayout::get(static_cast<int>(point.active_positions().size()), order);
  const JetMatrix u = unipotent_jet(point, layout);
  const Matrix u0 = point.unipotent();

  Jet norm(layout);
  std::vector<int> rows(static_cast<std::size_t>(k));
  std::iota(rows.begin(), rows.end(), 0);
  while (true)
  {
    Matrix sub(k, k);
    for (int a = 0; a < k; ++a)
      for (int c = 0; c < k; ++c)
        sub(a, c) = u0(rows[static_cast<std::size_t>(a)], c);
    const cplx frozen = std::conj(sub.determinant());
    if (frozen != cplx(0.0))
      norm += jet_determinant(u, rows, k) * frozen;
    int i = k - 1;
    while (i >= 0 && rows[static_cast<std::size_t>(i)] == M - k + i)
      --i;
    if (i < 0)
      break;
    ++rows[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      rows[static_cast<std::size_t>(j)] = rows[static_cast<std::size_t>(j - 1)] + 1;
  }
  return norm;
}

Jet jet_of_norm(const Weight &lambda, const OrbitPoint &point, int order)
{
  const auto layout = JetLayout::get(static_cast<int>(point.active_positions().size()), order);
  Jet out(layout, 1.0);
  for (int k = 1; k < lambda.M(); ++k)
    if (lambda[k] > 0)
      out *= pow(jet_of_fundamental_norm(k, point, order), lambda[k]);
  return out;
}

} // namespace clim
