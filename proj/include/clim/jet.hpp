#ifndef CLIM_JET_HPP
#define CLIM_JET_HPP

#include "clim/lie_core.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace clim
{

class JetOrderExhausted : public Error
{
public:
  using Error::Error;
};

/// Monomial enumeration for truncated polynomials in `variables` unknowns up to
/// total degree `order`, graded by degree. Layouts are immutable and shared.
class JetLayout
{
public:
  static std::shared_ptr<const JetLayout> get(int variables, int order);

  int variables() const { return m_variables; }
  int order() const { return m_order; }
  std::size_t size() const { return m_degree.size(); }
  int degree(std::size_t i) const { return m_degree[i]; }
  const std::vector<int> &exponents(std::size_t i) const { return m_exponents[i]; }
  /// Index of the monomial with the given exponents, or -1 if above the order.
  std::int64_t index(const std::vector<int> &exponents) const;

  struct Product
  {
    std::uint32_t a, b, out;
    int degree;
  };
  /// Every pair (a,b) whose product stays within the order, sorted by degree.
  const std::vector<Product> &products() const { return m_products; }

  struct Shift
  {
    std::uint32_t from, to;
    double factor;
  };
  /// d/dx_v maps coefficient `from` into `to` scaled by the exponent.
  const std::vector<Shift> &derivative(int v) const { return m_derivative[static_cast<std::size_t>(v)]; }

  JetLayout(int variables, int order);

private:
  std::uint64_t key(const std::vector<int> &exponents) const;

  int m_variables;
  int m_order;
  std::vector<std::vector<int>> m_exponents;
  std::vector<int> m_degree;
  std::vector<std::uint64_t> m_keys; // sorted copy for lookup
  std::vector<std::uint32_t> m_key_index;
  std::vector<Product> m_products;
  std::vector<std::vector<Shift>> m_derivative;
};

/// Truncated Taylor polynomial in the increments dx_1..dx_n around a base point.
/// `valid_order` records how many orders are exact; arithmetic propagates the minimum.
class Jet
{
public:
  Jet() = default;
  explicit Jet(std::shared_ptr<const JetLayout> layout, cplx value = 0.0);

  /// base + dx_v
  static Jet variable(std::shared_ptr<const JetLayout> layout, int v, cplx base);

  const std::shared_ptr<const JetLayout> &layout() const { return m_layout; }
  int valid_order() const { return m_valid; }
  cplx value() const { return m_c.empty() ? cplx(0.0) : m_c[0]; }
  cplx coefficient(const std::vector<int> &exponents) const;
  const std::vector<cplx> &coefficients() const { return m_c; }

  /// Partial derivative; the result is exact through valid_order - 1.
  Jet derivative(int v) const;
  Jet truncated(int order) const;

  Jet &operator+=(const Jet &o);
  Jet &operator-=(const Jet &o);
  Jet &operator*=(const Jet &o);
  Jet &operator*=(cplx c);

  friend Jet operator+(Jet a, const Jet &b) { return a += b; }
  friend Jet operator-(Jet a, const Jet &b) { return a -= b; }
  friend Jet operator*(Jet a, const Jet &b) { return a *= b; }
  friend Jet operator*(Jet a, cplx c) { return a *= c; }
  friend Jet operator*(cplx c, Jet a) { return a *= c; }
  friend Jet operator-(Jet a) { return a *= -1.0; }

private:
  void check(const Jet &o) const;

  std::shared_ptr<const JetLayout> m_layout;
  int m_valid = 0;
  std::vector<cplx> m_c;
};

Jet pow(const Jet &base, int exponent);

/// Dense square matrix of jets.
class JetMatrix
{
public:
  JetMatrix(int n, std::shared_ptr<const JetLayout> layout);
  static JetMatrix constant(const Matrix &a, std::shared_ptr<const JetLayout> layout);

  int size() const { return m_n; }
  Jet &operator()(int i, int j) { return m_a[static_cast<std::size_t>(i * m_n + j)]; }
  const Jet &operator()(int i, int j) const { return m_a[static_cast<std::size_t>(i * m_n + j)]; }

  friend JetMatrix operator*(const JetMatrix &a, const JetMatrix &b);
  Matrix values() const;

private:
  int m_n;
  std::vector<Jet> m_a;
};

} // namespace clim

#endif
