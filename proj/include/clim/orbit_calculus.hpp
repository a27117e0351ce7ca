#ifndef CLIM_ORBIT_CALCULUS_HPP
#define CLIM_ORBIT_CALCULUS_HPP

#include "clim/jet.hpp"
#include "clim/lie_core.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace clim
{

/// Strictly-lower position (i > j), 1-based.
struct LowerIndex
{
  int i;
  int j;
  std::string name() const { return "x_" + std::to_string(i) + "_" + std::to_string(j); }
  auto operator<=>(const LowerIndex &) const = default;
};

/// All strictly-lower positions of an M x M matrix, row by row:
/// (2,1), (3,1), (3,2), (4,1), ...
std::vector<LowerIndex> lower_positions(int M);

/// Positions of the chart for lambda: x_ij is active when i and j fall in
/// different blocks of the composition of M cut after every k with lambda_k != 0.
std::vector<bool> active_mask(const Weight &lambda);

/// Point u.v_max of the U_- orbit, u unit lower triangular with entries x_ij.
/// Inactive coordinates (singular weights) are held at zero.
class OrbitPoint
{
public:
  /// Origin x = 0 with every coordinate active.
  explicit OrbitPoint(int M);
  /// Coordinates listed in lower_positions(M) order.
  OrbitPoint(int M, std::vector<cplx> coordinates);

  static OrbitPoint from_map(int M, const std::map<std::string, cplx> &named);

  int M() const { return m_M; }
  const std::vector<cplx> &coordinates() const { return m_x; }
  const std::vector<bool> &active() const { return m_active; }
  cplx x(int i, int j) const;
  void set(int i, int j, cplx value);

  /// Restrict the chart to the active coordinates of lambda; inactive entries must
  /// already vanish unless `force` zeroes them.
  OrbitPoint on_chart(const Weight &lambda, bool force = false) const;
  /// The chart point of lambda with the same orbit point u.[v_max]: strips the
  /// in-block factor, u = u' l with l block-diagonal.
  OrbitPoint project(const Weight &lambda) const;

  /// Active coordinates in lower_positions order (these are the jet variables).
  std::vector<LowerIndex> active_positions() const;

  Matrix unipotent() const;

private:
  int m_M;
  std::vector<cplx> m_x;
  std::vector<bool> m_active;
};

/// Raised when a leading principal minor vanishes: the element lies in the
/// Zariski-closed complement of the big cell U_- T U_+.
class DecompositionOnClosedSet : public DomainError
{
public:
  using DomainError::DomainError;
};

struct GaussFactors
{
  Matrix lower;    ///< unit lower triangular
  Vector diagonal; ///< d_kk = Delta_k / Delta_{k-1}
  Matrix upper;    ///< unit upper triangular
};

GaussFactors gauss_decompose(const Matrix &g, double relative_threshold = 1e-12);

struct ConjugateSplit
{
  Matrix lower;    ///< A_-, strictly lower part of u^{-1} xi u
  Matrix diagonal; ///< A_0
  Matrix upper;    ///< A_+
  Matrix chart_velocity; ///< u A_-: derivative of the lower Gauss factor of exp(t xi) u
};

ConjugateSplit conjugate_split(const Matrix &xi, const OrbitPoint &point);

/// First-order operator sum_i a_i d/dx_i + sum_k lambda_k w_k on the chart, with
/// every coefficient stored as a jet at the base point.
class FirstOrderOp
{
public:
  FirstOrderOp(std::vector<LowerIndex> positions, std::vector<Jet> vector_part, std::vector<Jet> weight_part)
      : m_positions(std::move(positions)), m_vector(std::move(vector_part)), m_weight(std::move(weight_part))
  {
  }

  const std::vector<LowerIndex> &positions() const { return m_positions; }
  const std::vector<Jet> &vector_part() const { return m_vector; }
  /// w_k, so that the multiplication term is sum_k lambda_k w_k.
  const std::vector<Jet> &weight_part() const { return m_weight; }

  /// Vector-field coefficient of d/dx_ij at the base point (0 for inactive positions).
  cplx vector_coefficient(int i, int j) const;
  Jet multiplication(const Weight &lambda) const;
  cplx multiplication_value(const Weight &lambda) const { return multiplication(lambda).value(); }

private:
  std::vector<LowerIndex> m_positions;
  std::vector<Jet> m_vector;
  std::vector<Jet> m_weight;
};

/// The operator r~(xi) at a point; coefficients are jets of the given order in
/// the point's active coordinates.
FirstOrderOp r_tilde(const Matrix &xi, const OrbitPoint &point, int order);

/// sum_i a_i df/dx_i + (multiplication) f; the output is exact one order lower.
Jet apply_op(const FirstOrderOp &op, const Weight &lambda, const Jet &f);

/// Vector part only (the derivation without the multiplication term).
Jet apply_vector_part(const FirstOrderOp &op, const Jet &f);

/// Jet of N_k: holomorphic coordinates expanded, conjugates frozen at the base point.
Jet jet_of_fundamental_norm(int k, const OrbitPoint &point, int order);

/// Jet of N_lambda = prod_k N_k^{lambda_k}.
Jet jet_of_norm(const Weight &lambda, const OrbitPoint &point, int order);

} // namespace clim

#endif
