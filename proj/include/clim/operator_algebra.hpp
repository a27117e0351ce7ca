#ifndef CLIM_OPERATOR_ALGEBRA_HPP
#define CLIM_OPERATOR_ALGEBRA_HPP

#include "clim/lie_core.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace clim
{

/// Ordered tensor word xi_{a_1} (x) ... (x) xi_{a_p}. The empty word is the unit.
using Monomial = std::vector<Generator>;

std::string monomial_name(const Monomial &m);

/// Element of the tensor algebra T(g): finite complex combination of monomials.
/// Terms are kept in lexicographic order of the factor lists and exact zeros are
/// dropped, so operator== is structural equality.
class AbstractOperator
{
public:
  AbstractOperator() = default;

  static AbstractOperator scalar(cplx c);
  static AbstractOperator generator(const Generator &g, cplx c = 1.0);
  static AbstractOperator monomial(Monomial m, cplx c = 1.0);

  const std::map<Monomial, cplx> &terms() const { return m_terms; }
  bool is_zero() const { return m_terms.empty(); }
  cplx scalar_part() const;
  /// Largest monomial degree; 0 for pure scalars and the zero operator.
  int degree() const;
  /// True when every term has exactly the given degree (the zero operator qualifies).
  bool is_homogeneous(int degree) const;
  /// Largest generator index used (for range checks against an AlgebraSpec).
  bool fits(const AlgebraSpec &spec) const;

  void add_term(const Monomial &m, cplx c);

  AbstractOperator &operator+=(const AbstractOperator &other);
  AbstractOperator &operator-=(const AbstractOperator &other);
  AbstractOperator &operator*=(cplx c);

  friend AbstractOperator operator+(AbstractOperator a, const AbstractOperator &b) { return a += b; }
  friend AbstractOperator operator-(AbstractOperator a, const AbstractOperator &b) { return a -= b; }
  friend AbstractOperator operator*(cplx c, AbstractOperator a) { return a *= c; }
  friend AbstractOperator operator-(AbstractOperator a) { return a *= -1.0; }

  bool operator==(const AbstractOperator &other) const = default;

private:
  std::map<Monomial, cplx> m_terms;
};

/// Tensor product, extended bilinearly.
AbstractOperator tensor(const AbstractOperator &a, const AbstractOperator &b);

/// Lie bracket of two degree-1 operators, computed in g (never a(x)b - b(x)a).
AbstractOperator lie_bracket(const AlgebraSpec &spec, const AbstractOperator &a, const AbstractOperator &b);

Generator adjoint(const Generator &g);
AbstractOperator formal_adjoint(const AbstractOperator &op);
/// Compared after reordering adjacent factors whose matrix units commute,
/// so H(1) ox H(2) counts as selfadjoint.
bool is_abstractly_selfadjoint(const AbstractOperator &op);

/// Homogeneous pieces in canonical order; the scalar part carries an empty monomial.
std::vector<std::pair<cplx, Monomial>> monomial_decomposition(const AbstractOperator &op);

/// Syntax or type error in a Hamiltonian text; position is a byte offset.
class ParseError : public Error
{
public:
  ParseError(const std::string &message, std::size_t position);
  std::size_t position() const { return m_position; }

private:
  std::size_t m_position;
};

AbstractOperator parse_hamiltonian(std::string_view text, const AlgebraSpec &spec);

/// Text form accepted by parse_hamiltonian; coefficients use 17 significant digits
/// so that reparsing reproduces the operator exactly.
std::string format(const AbstractOperator &op);

} // namespace clim

#endif
