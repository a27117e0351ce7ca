#ifndef CLIM_IRREP_HPP
#define CLIM_IRREP_HPP

#include "clim/lie_core.hpp"
#include "clim/operator_algebra.hpp"

#include <json.hpp>

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace clim
{

struct IrrepOptions
{
  std::size_t dimension_cap = 5000;
  /// Ambient tensor-space size above which construction is refused.
  std::size_t ambient_cap = 2'000'000;
  /// Relative norm below which a new vector is considered already in the span.
  double rank_tolerance = 1e-10;
};

class DimensionCapExceeded : public DomainError
{
public:
  using DomainError::DomainError;
};

/// k-th exterior power of the defining representation: basis e_S for k-subsets S
/// of {0..M-1} in lexicographic order.
class WedgePower
{
public:
  WedgePower(int M, int k);

  int M() const { return m_M; }
  int k() const { return m_k; }
  int size() const { return static_cast<int>(m_subsets.size()); }
  const std::vector<std::vector<int>> &subsets() const { return m_subsets; }

  /// Derivation action xi(v_1 ^ ... ^ v_k) = sum_i v_1 ^ .. ^ xi v_i ^ .. ^ v_k.
  Matrix algebra(const Matrix &xi) const;
  /// Compound matrix: entry (S,T) = det g[S,T].
  Matrix group(const Matrix &g) const;

private:
  int m_M;
  int m_k;
  std::vector<std::vector<int>> m_subsets;
  std::map<std::vector<int>, int> m_index;
};

/// V_lambda realized as the cyclic span of
/// v_max = (x)_k (e_1 ^ ... ^ e_k)^{(x) lambda_k} inside the tensor product of wedge powers.
class Irrep
{
public:
  const AlgebraSpec &spec() const { return m_spec; }
  const Weight &weight() const { return m_weight; }
  int dimension() const { return static_cast<int>(m_basis.cols()); }
  std::size_t ambient_dimension() const { return m_ambient; }

  /// Orthonormal columns spanning V_lambda in the ambient space; column 0 is v_max.
  const Matrix &basis() const { return m_basis; }
  Vector v_max() const;

  const Matrix &generator(const Generator &g) const;
  /// rho(xi) for an arbitrary M x M matrix, by linearity over the action.
  Matrix algebra_image(const Matrix &xi) const;
  /// rho(g) applied to v_max, in irrep coordinates (no full matrix is formed).
  Vector orbit_vector(const Matrix &g) const;

  /// Ambient action helpers; exposed for tests.
  Vector ambient_algebra(const Matrix &xi, const Vector &v) const;
  Vector ambient_group(const Matrix &g, const Vector &v) const;

private:
  friend Irrep build_irrep(const AlgebraSpec &, const Weight &, const IrrepOptions &);
  friend Matrix group_apply(const Irrep &, const Matrix &);

  Irrep(AlgebraSpec spec, Weight weight) : m_spec(std::move(spec)), m_weight(std::move(weight)) {}

  Vector apply_slot(const Vector &v, std::size_t slot, const Matrix &a) const;

  AlgebraSpec m_spec;
  Weight m_weight;
  std::vector<WedgePower> m_powers;  // index k-1
  std::vector<int> m_slots;          // wedge degree per tensor slot
  std::vector<std::size_t> m_stride; // row-major, last slot fastest
  std::size_t m_ambient = 1;
  Matrix m_basis;
  std::map<Generator, Matrix> m_generators;
};

Irrep build_irrep(const AlgebraSpec &spec, const Weight &lambda, const IrrepOptions &options = {});

/// Matrix image of an abstract operator: monomials map to ordered products in
/// the written order, the scalar part to a multiple of the identity.
Matrix rep_apply(const Irrep &irrep, const AbstractOperator &op);

/// Holomorphic action of g in SL_M on V_lambda.
Matrix group_apply(const Irrep &irrep, const Matrix &g);

/// {M, lambda, dim, matrices: {name: [[re,im], ...]}} with matrices flattened row-major.
nlohmann::json irrep_to_json(const Irrep &irrep);
std::map<std::string, Matrix> matrices_from_json(const nlohmann::json &j);

} // namespace clim

#endif
