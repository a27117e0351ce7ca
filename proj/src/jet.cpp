#include "clim/jet.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <utility>

namespace clim
{

std::shared_ptr<const JetLayout> JetLayout::get(int variables, int order)
{
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const JetLayout>> cache;
  std::lock_guard lock(mutex);
  auto &slot = cache[{variables, order}];
  if (!slot)
    slot = std::make_shared<const JetLayout>(variables, order);
  return slot;
}

JetLayout::JetLayout(int variables, int order) : m_variables(variables), m_order(order)
{
  if (variables < 0 || order < 0)
    throw DomainError("jet layout needs nonnegative sizes");
  // graded enumeration: degree 0, 1, ..., order
  for (int d = 0; d <= order; ++d)
  {
    if (variables == 0)
    {
      if (d == 0)
      {
        m_exponents.emplace_back();
        m_degree.push_back(0);
      }
      continue;
    }
    std::vector<int> e(static_cast<std::size_t>(variables), 0);
    e[0] = d;
    while (true)
    {
      m_exponents.push_back(e);
      m_degree.push_back(d);
      // next composition of d into `variables` parts (reverse lexicographic)
      int i = variables - 2;
      while (i >= 0 && e[static_cast<std::size_t>(i)] == 0)
        --i;
      if (i < 0)
        break;
      --e[static_cast<std::size_t>(i)];
      const int tail = e[static_cast<std::size_t>(variables - 1)];
      e[static_cast<std::size_t>(variables - 1)] = 0;
      e[static_cast<std::size_t>(i + 1)] = tail + 1;
    }
  }

  std::vector<std::pair<std::uint64_t, std::uint32_t>> keyed;
  keyed.reserve(m_exponents.size());
  for (std::size_t i = 0; i < m_exponents.size(); ++i)
    keyed.emplace_back(key(m_exponents[i]), static_cast<std::uint32_t>(i));
  std::sort(keyed.begin(), keyed.end());
  for (auto [k, i] : keyed)
  {
    m_keys.push_back(k);
    m_key_index.push_back(i);
  }

  std::vector<int> sum(static_cast<std::size_t>(variables));
  for (std::size_t a = 0; a < m_exponents.size(); ++a)
    for (std::size_t b = 0; b < m_exponents.size(); ++b)
    {
      const int d = m_degree[a] + m_degree[b];
      if (d > order)
        continue;
      for (std::size_t v = 0; v < sum.size(); ++v)
        sum[v] = m_exponents[a][v] + m_exponents[b][v];
      m_products.push_back(
          {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(index(sum)), d});
    }
  std::stable_sort(m_products.begin(), m_products.end(),
                   [](const Product &x, const Product &y) { return x.degree < y.degree; });

  m_derivative.resize(static_cast<std::size_t>(variables));
  for (int v = 0; v < variables; ++v)
    for (std::size_t i = 0; i < m_exponents.size(); ++i)
    {
      const int p = m_exponents[i][static_cast<std::size_t>(v)];
      if (p == 0)
        continue;
      auto lower = m_exponents[i];
      --lower[static_cast<std::size_t>(v)];
      m_derivative[static_cast<std::size_t>(v)].push_back(
          {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(index(lower)), static_cast<double>(p)});
    }
}

std::uint64_t JetLayout::key(const std::vector<int> &exponents) const
{
  std::uint64_t k = 0;
  for (int e : exponents)
    k = k * static_cast<std::uint64_t>(m_order + 1) + static_cast<std::uint64_t>(e);
  return k;
}

std::int64_t JetLayout::index(const std::vector<int> &exponents) const
{
  if (static_cast<int>(exponents.size()) != m_variables)
    throw DomainError("jet exponent vector has the wrong length");
  int d = 0;
  for (int e : exponents)
  {
    if (e < 0)
      return -1;
    d += e;
  }
  if (d > m_order)
    return -1;
  const auto k = key(exponents);
  auto it = std::lower_bound(m_keys.begin(), m_keys.end(), k);
  return m_key_index[static_cast<std::size_t>(it - m_keys.begin())];
}

Jet::Jet(std::shared_ptr<const JetLayout> layout, cplx value)
    : m_layout(std::move(layout)), m_valid(m_layout->order()), m_c(m_layout->size(), cplx(0.0))
{
  m_c[0] = value;
}

Jet Jet::variable(std::shared_ptr<const JetLayout> layout, int v, cplx base)
{
  Jet j(std::move(layout), base);
  if (v < 0 || v >= j.m_layout->variables())
    throw DomainError("jet variable index out of range");
  if (j.m_layout->order() >= 1)
  {
    std::vector<int> e(static_cast<std::size_t>(j.m_layout->variables()), 0);
    e[static_cast<std::size_t>(v)] = 1;
    j.m_c[static_cast<std::size_t>(j.m_layout->index(e))] = 1.0;
  }
  return j;
}

cplx Jet::coefficient(const std::vector<int> &exponents) const
{
  const auto i = m_layout->index(exponents);
  if (i < 0 || m_layout->degree(static_cast<std::size_t>(i)) > m_valid)
    return 0.0;
  return m_c[static_cast<std::size_t>(i)];
}

void Jet::check(const Jet &o) const
{
  if (m_layout != o.m_layout)
    throw DomainError("jets over different layouts");
}

Jet Jet::derivative(int v) const
{
  if (m_valid == 0)
    throw JetOrderExhausted("jet order exhausted: cannot differentiate an order-0 jet");
  Jet out(m_layout);
  out.m_valid = m_valid - 1;
  for (const auto &s : m_layout->derivative(v))
    if (m_layout->degree(s.from) <= m_valid)
      out.m_c[s.to] += s.factor * m_c[s.from];
  return out;
}

Jet Jet::truncated(int order) const
{
  Jet out = *this;
  out.m_valid = std::min(m_valid, order);
  for (std::size_t i = 0; i < m_c.size(); ++i)
    if (m_layout->degree(i) > out.m_valid)
      out.m_c[i] = 0.0;
  return out;
}

Jet &Jet::operator+=(const Jet &o)
{
  check(o);
  for (std::size_t i = 0; i < m_c.size(); ++i)
    m_c[i] += o.m_c[i];
  m_valid = std::min(m_valid, o.m_valid);
  return *this;
}

Jet &Jet::operator-=(const Jet &o)
{
  check(o);
  for (std::size_t i = 0; i < m_c.size(); ++i)
    m_c[i] -= o.m_c[i];
  m_valid = std::min(m_valid, o.m_valid);
  return *this;
}

Jet &Jet::operator*=(const Jet &o)
{
  check(o);
  const int valid = std::min(m_valid, o.m_valid);
  std::vector<cplx> out(m_c.size(), cplx(0.0));
  for (const auto &p : m_layout->products())
  {
    if (p.degree > valid)
      break;
    out[p.out] += m_c[p.a] * o.m_c[p.b];
  }
  m_c = std::move(out);
  m_valid = valid;
  return *this;
}

Jet &Jet::operator*=(cplx c)
{
  for (auto &x : m_c)
    x *= c;
  return *this;
}

Jet pow(const Jet &base, int exponent)
{
  if (exponent < 0)
    throw DomainError("jet power needs a nonnegative exponent");
  Jet result(base.layout(), 1.0);
  Jet b = base;
  while (exponent > 0)
  {
    if (exponent & 1)
      result *= b;
    exponent >>= 1;
    if (exponent)
      b *= b;
  }
  // x^0 is exact to every order, otherwise the base's accuracy limits the result
  return base.valid_order() < result.valid_order() ? result.truncated(base.valid_order()) : result;
}

JetMatrix::JetMatrix(int n, std::shared_ptr<const JetLayout> layout)
    : m_n(n), m_a(static_cast<std::size_t>(n * n), Jet(layout))
{
}

JetMatrix JetMatrix::constant(const Matrix &a, std::shared_ptr<const JetLayout> layout)
{
  JetMatrix out(static_cast<int>(a.rows()), layout);
  for (int i = 0; i < out.m_n; ++i)
    for (int j = 0; j < out.m_n; ++j)
      out(i, j) = Jet(layout, a(i, j));
  return out;
}

JetMatrix operator*(const JetMatrix &a, const JetMatrix &b)
{
  const int n = a.m_n;
  JetMatrix out(n, a(0, 0).layout());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
    {
      Jet acc(a(0, 0).layout());
      for (int k = 0; k < n; ++k)
      {
        const auto &x = a(i, k);
        const auto &y = b(k, j);
        // skip exact structural zeros (triangular factors)
        if (std::all_of(x.coefficients().begin(), x.coefficients().end(), [](cplx c) { return c == cplx(0.0); }) ||
            std::all_of(y.coefficients().begin(), y.coefficients().end(), [](cplx c) { return c == cplx(0.0); }))
          continue;
        acc += x * y;
      }
      out(i, j) = std::move(acc);
    }
  return out;
}

Matrix JetMatrix::values() const
{
  Matrix out(m_n, m_n);
  for (int i = 0; i < m_n; ++i)
    for (int j = 0; j < m_n; ++j)
      out(i, j) = (*this)(i, j).value();
  return out;
}

} // namespace clim
