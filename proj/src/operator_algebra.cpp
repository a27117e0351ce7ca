#include "clim/operator_algebra.hpp"

#include <algorithm>
#include <cstdio>

namespace clim
{

std::string monomial_name(const Monomial &m)
{
  if (m.empty())
    return "1";
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i)
  {
    if (i)
      s += " ox ";
    s += m[i].name();
  }
  return s;
}

AbstractOperator AbstractOperator::scalar(cplx c)
{
  AbstractOperator op;
  op.add_term({}, c);
  return op;
}

AbstractOperator AbstractOperator::generator(const Generator &g, cplx c)
{
  AbstractOperator op;
  op.add_term({g}, c);
  return op;
}

AbstractOperator AbstractOperator::monomial(Monomial m, cplx c)
{
  AbstractOperator op;
  op.add_term(m, c);
  return op;
}

cplx AbstractOperator::scalar_part() const
{
  auto it = m_terms.find(Monomial{});
  return it == m_terms.end() ? cplx(0.0) : it->second;
}

int AbstractOperator::degree() const
{
  std::size_t d = 0;
  for (const auto &[m, c] : m_terms)
    d = std::max(d, m.size());
  return static_cast<int>(d);
}

bool AbstractOperator::is_homogeneous(int degree) const
{
  return std::all_of(m_terms.begin(), m_terms.end(),
                     [degree](const auto &t) { return static_cast<int>(t.first.size()) == degree; });
}

bool AbstractOperator::fits(const AlgebraSpec &spec) const
{
  for (const auto &[m, c] : m_terms)
    for (const auto &g : m)
      if (!spec.contains(g))
        return false;
  return true;
}

namespace
{
/// adding +0 turns -0 into +0, so equal values always print alike
cplx unsigned_zeros(cplx c) { return {c.real() + 0.0, c.imag() + 0.0}; }
} // namespace

void AbstractOperator::add_term(const Monomial &m, cplx c)
{
  if (c == cplx(0.0))
    return;
  auto [it, inserted] = m_terms.emplace(m, unsigned_zeros(c));
  if (!inserted)
  {
    it->second = unsigned_zeros(it->second + c);
    if (it->second == cplx(0.0))
      m_terms.erase(it);
  }
}

AbstractOperator &AbstractOperator::operator+=(const AbstractOperator &other)
{
  for (const auto &[m, c] : other.m_terms)
    add_term(m, c);
  return *this;
}

AbstractOperator &AbstractOperator::operator-=(const AbstractOperator &other)
{
  for (const auto &[m, c] : other.m_terms)
    add_term(m, -c);
  return *this;
}

AbstractOperator &AbstractOperator::operator*=(cplx c)
{
  if (c == cplx(0.0))
  {
    m_terms.clear();
    return *this;
  }
  for (auto it = m_terms.begin(); it != m_terms.end();)
  {
    it->second = unsigned_zeros(it->second * c);
    if (it->second == cplx(0.0))
      it = m_terms.erase(it);
    else
      ++it;
  }
  return *this;
}

AbstractOperator tensor(const AbstractOperator &a, const AbstractOperator &b)
{
  AbstractOperator out;
  for (const auto &[ma, ca] : a.terms())
    for (const auto &[mb, cb] : b.terms())
    {
      Monomial m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      out.add_term(m, ca * cb);
    }
  return out;
}

AbstractOperator lie_bracket(const AlgebraSpec &spec, const AbstractOperator &a, const AbstractOperator &b)
{
  if (!a.is_homogeneous(1) || !b.is_homogeneous(1))
    throw DomainError("Lie bracket is defined on degree-1 operators only");
  Matrix acc = Matrix::Zero(spec.M(), spec.M());
  for (const auto &[ma, ca] : a.terms())
    for (const auto &[mb, cb] : b.terms())
      acc += (ca * cb) * commutator(spec, ma.front(), mb.front());
  AbstractOperator out;
  for (const auto &[g, c] : spec.decompose(acc))
    out.add_term({g}, c);
  return out;
}

Generator adjoint(const Generator &g)
{
  // E(k,l)+E(l,k) and i(E(k,l)-E(l,k)) are hermitian; H(k) is hermitian.
  if (g.is_cartan())
    return g;
  return Generator::E(g.l, g.k);
}

AbstractOperator formal_adjoint(const AbstractOperator &op)
{
  AbstractOperator out;
  for (const auto &[m, c] : op.terms())
  {
    Monomial r(m.rbegin(), m.rend());
    for (auto &g : r)
      g = adjoint(g);
    out.add_term(r, std::conj(c));
  }
  return out;
}

namespace
{

/// Diagonal entry j of H(a).
int cartan_entry(int a, int j) { return (j == a) - (j == a + 1); }

bool generators_commute(const Generator &a, const Generator &b)
{
  const bool ha = a.kind == Generator::Kind::H, hb = b.kind == Generator::Kind::H;
  if (ha && hb)
    return true;
  if (ha || hb)
  {
    const Generator &h = ha ? a : b, &e = ha ? b : a;
    return cartan_entry(h.k, e.k) == cartan_entry(h.k, e.l);
  }
  return a.l != b.k && b.l != a.k;
}

/// Lexicographic normal form modulo swaps of adjacent commuting factors.
Monomial commutation_normal_form(Monomial m)
{
  Monomial out;
  out.reserve(m.size());
  while (!m.empty())
  {
    std::size_t best = 0;
    bool found = false;
    for (std::size_t i = 0; i < m.size(); ++i)
    {
      bool movable = true;
      for (std::size_t j = 0; j < i && movable; ++j)
        movable = generators_commute(m[j], m[i]);
      if (movable && (!found || m[i] < m[best]))
      {
        best = i;
        found = true;
      }
    }
    out.push_back(m[best]);
    m.erase(m.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return out;
}

AbstractOperator commutation_canonical(const AbstractOperator &op)
{
  AbstractOperator out;
  for (const auto &[m, c] : op.terms())
    out.add_term(commutation_normal_form(m), c);
  return out;
}

} // namespace

bool is_abstractly_selfadjoint(const AbstractOperator &op)
{
  return commutation_canonical(formal_adjoint(op)) == commutation_canonical(op);
}

std::vector<std::pair<cplx, Monomial>> monomial_decomposition(const AbstractOperator &op)
{
  std::vector<std::pair<cplx, Monomial>> out;
  out.reserve(op.terms().size());
  for (const auto &[m, c] : op.terms())
    out.emplace_back(c, m);
  return out;
}

namespace
{

std::string number(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string coefficient(cplx c)
{
  std::string s = "(" + number(c.real());
  if (std::signbit(c.imag()))
    s += " - " + number(-c.imag()) + "i)";
  else
    s += " + " + number(c.imag()) + "i)";
  return s;
}

} // namespace

std::string format(const AbstractOperator &op)
{
  if (op.is_zero())
    return "0";
  std::string s;
  bool first = true;
  for (const auto &[m, c] : op.terms())
  {
    if (!first)
      s += " + ";
    first = false;
    s += coefficient(c);
    for (std::size_t i = 0; i < m.size(); ++i)
      s += (i == 0 ? " * " : " ox ") + m[i].name();
  }
  return s;
}

} // namespace clim
