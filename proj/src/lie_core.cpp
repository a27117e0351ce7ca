#include "clim/lie_core.hpp"

#include <limits>
#include <map>
#include <sstream>

namespace clim
{

std::string Generator::name() const
{
  std::ostringstream os;
  if (kind == Kind::H)
    os << "H(" << k << ")";
  else
    os << "E(" << k << "," << l << ")";
  return os.str();
}

AlgebraSpec::AlgebraSpec(int M) : m_M(M)
{
  if (M < 2)
    throw DomainError("sl_M requires M >= 2, got " + std::to_string(M));
  for (int k = 1; k <= M; ++k)
    for (int l = 1; l <= M; ++l)
      if (k != l)
        m_catalog.push_back(Generator::E(k, l));
  for (int k = 1; k < M; ++k)
    m_catalog.push_back(Generator::H(k));
}

bool AlgebraSpec::contains(const Generator &g) const
{
  if (g.kind == Generator::Kind::H)
    return g.k >= 1 && g.k < m_M && g.l == g.k + 1;
  return g.k >= 1 && g.k <= m_M && g.l >= 1 && g.l <= m_M && g.k != g.l;
}

Matrix AlgebraSpec::matrix(const Generator &g) const
{
  if (!contains(g))
    throw DomainError("generator " + g.name() + " out of range for sl_" + std::to_string(m_M));
  Matrix a = Matrix::Zero(m_M, m_M);
  if (g.kind == Generator::Kind::H)
  {
    a(g.k - 1, g.k - 1) = 1.0;
    a(g.k, g.k) = -1.0;
  }
  else
    a(g.k - 1, g.l - 1) = 1.0;
  return a;
}

std::vector<std::pair<Generator, cplx>> AlgebraSpec::decompose(const Matrix &a, double tol) const
{
  if (a.rows() != m_M || a.cols() != m_M)
    throw DomainError("decompose: expected a " + std::to_string(m_M) + "x" + std::to_string(m_M) + " matrix");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if (std::abs(a.trace()) > tol * scale)
    throw DomainError("decompose: matrix is not traceless");

  std::vector<std::pair<Generator, cplx>> out;
  for (int k = 1; k <= m_M; ++k)
    for (int l = 1; l <= m_M; ++l)
      if (k != l && a(k - 1, l - 1) != cplx(0.0))
        out.emplace_back(Generator::E(k, l), a(k - 1, l - 1));
  // diag(d) = sum_k h_k H(k) with h_k the running sum of d_11..d_kk
  cplx running = 0.0;
  for (int k = 1; k < m_M; ++k)
  {
    running += a(k - 1, k - 1);
    if (running != cplx(0.0))
      out.emplace_back(Generator::H(k), running);
  }
  return out;
}

Weight::Weight(std::vector<int> fundamental) : m_fundamental(std::move(fundamental))
{
  if (m_fundamental.empty())
    throw DomainError("weight needs at least one fundamental coordinate");
  for (int c : m_fundamental)
    if (c < 0)
      throw DomainError("weight coordinates must be nonnegative");
  const int M = static_cast<int>(m_fundamental.size()) + 1;
  m_partition.assign(M, 0);
  for (int j = M - 2; j >= 0; --j)
    m_partition[j] = m_partition[j + 1] + m_fundamental[j];
}

Weight Weight::rho(int M) { return Weight(std::vector<int>(M - 1, 1)); }

int Weight::total() const
{
  int s = 0;
  for (int c : m_fundamental)
    s += c;
  return s;
}

bool Weight::is_regular() const
{
  for (int c : m_fundamental)
    if (c == 0)
      return false;
  return true;
}

Weight Weight::scaled(int n) const
{
  if (n < 0)
    throw DomainError("weight scale must be nonnegative");
  std::vector<int> f = m_fundamental;
  for (int &c : f)
    c *= n;
  return Weight(std::move(f));
}

Weight Weight::operator+(const Weight &other) const
{
  if (other.M() != M())
    throw DomainError("adding weights of different rank");
  std::vector<int> f = m_fundamental;
  for (std::size_t i = 0; i < f.size(); ++i)
    f[i] += other.m_fundamental[i];
  return Weight(std::move(f));
}

std::string Weight::str() const
{
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < m_fundamental.size(); ++i)
    os << (i ? "," : "") << m_fundamental[i];
  os << ")";
  return os.str();
}

Matrix commutator(const Matrix &a, const Matrix &b)
{
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw DomainError("commutator: dimension mismatch");
  return a * b - b * a;
}

Matrix commutator(const AlgebraSpec &spec, const Generator &a, const Generator &b)
{
  return commutator(spec.matrix(a), spec.matrix(b));
}

namespace
{

void add_factors(std::map<int, int> &exponents, int n, int sign)
{
  for (int p = 2; p * p <= n; ++p)
    while (n % p == 0)
    {
      exponents[p] += sign;
      n /= p;
    }
  if (n > 1)
    exponents[n] += sign;
}

} // namespace

std::uint64_t weyl_dimension(const AlgebraSpec &spec, const Weight &lambda)
{
  if (lambda.M() != spec.M())
    throw DomainError("weight " + lambda.str() + " does not belong to sl_" + std::to_string(spec.M()));
  const auto &m = lambda.partition();
  const int M = spec.M();
  std::map<int, int> exponents;
  for (int i = 0; i < M; ++i)
    for (int j = i + 1; j < M; ++j)
    {
      add_factors(exponents, m[i] - m[j] + j - i, +1);
      add_factors(exponents, j - i, -1);
    }
  std::uint64_t dim = 1;
  for (auto [p, e] : exponents)
  {
    if (e < 0)
      throw Error("weyl_dimension: non-integral result (internal error)");
    for (int r = 0; r < e; ++r)
    {
      if (dim > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(p))
        throw DomainError("weyl_dimension: overflow");
      dim *= static_cast<std::uint64_t>(p);
    }
  }
  return dim;
}

cplx weight_of_cartan_action(const Weight &lambda, const Matrix &d)
{
  const int M = lambda.M();
  if (d.rows() != M || d.cols() != M)
    throw DomainError("weight_of_cartan_action: dimension mismatch");
  const double scale = std::max(1.0, d.cwiseAbs().maxCoeff());
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j)
      if (i != j && std::abs(d(i, j)) > 1e-12 * scale)
        throw DomainError("weight_of_cartan_action: matrix is not diagonal");
  cplx s = 0.0;
  const auto &m = lambda.partition();
  for (int j = 0; j < M; ++j)
    s += static_cast<double>(m[j]) * d(j, j);
  return s;
}

std::vector<Weight> weights_up_to(int M, int total)
{
  std::vector<Weight> out;
  std::vector<int> c(M - 1, 0);
  // odometer over coordinates with bounded sum
  while (true)
  {
    int s = 0;
    for (int v : c)
      s += v;
    if (s <= total)
      out.emplace_back(c);
    int i = 0;
    while (i < M - 1)
    {
      if (++c[i] <= total)
        break;
      c[i] = 0;
      ++i;
    }
    if (i == M - 1)
      break;
  }
  return out;
}

} // namespace clim
