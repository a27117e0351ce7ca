#ifndef CLIM_LIE_CORE_HPP
#define CLIM_LIE_CORE_HPP

#include <Eigen/Dense>

#include <complex>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace clim
{

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain of an operation (bad weight, wrong
/// dimension, point off the chart, ...).
class DomainError : public Error
{
public:
  using Error::Error;
};

/// A generator of sl_M in the matrix-unit catalog: E(k,l) with k != l, or the
/// Cartan element H(k) = E(k,k) - E(k+1,k+1). Indices are 1-based.
struct Generator
{
  enum class Kind
  {
    E,
    H
  };

  Kind kind = Kind::E;
  int k = 1;
  int l = 2;

  static Generator E(int k, int l) { return {Kind::E, k, l}; }
  static Generator H(int k) { return {Kind::H, k, k + 1}; }

  bool is_cartan() const { return kind == Kind::H; }
  std::string name() const;

  auto operator<=>(const Generator &) const = default;
};

/// The complexified algebra sl_M together with its generator catalog.
class AlgebraSpec
{
public:
  explicit AlgebraSpec(int M);

  int M() const { return m_M; }
  int rank() const { return m_M - 1; }
  /// M^2 - 1
  int dimension() const { return m_M * m_M - 1; }

  /// Off-diagonal E(k,l) in lexicographic (k,l) order, then H(1..M-1).
  const std::vector<Generator> &catalog() const { return m_catalog; }

  bool contains(const Generator &g) const;
  /// Defining-representation matrix; throws DomainError if g is out of range.
  Matrix matrix(const Generator &g) const;

  /// Coordinates of a traceless M x M matrix in the catalog basis.
  std::vector<std::pair<Generator, cplx>> decompose(const Matrix &a, double tol = 1e-12) const;

  bool operator==(const AlgebraSpec &other) const { return m_M == other.m_M; }

private:
  int m_M;
  std::vector<Generator> m_catalog;
};

/// Dominant integral weight in fundamental coordinates, with the partition
/// coordinates m_j = sum_{k >= j} lambda_k (m_M = 0) cached.
class Weight
{
public:
  Weight() = default;
  explicit Weight(std::vector<int> fundamental);

  /// Weyl vector: every fundamental coordinate equal to one.
  static Weight rho(int M);
  static Weight zero(int M) { return Weight(std::vector<int>(M - 1, 0)); }

  int M() const { return static_cast<int>(m_fundamental.size()) + 1; }
  const std::vector<int> &fundamental() const { return m_fundamental; }
  const std::vector<int> &partition() const { return m_partition; }
  /// lambda_k, 1-based.
  int operator[](int k) const { return m_fundamental.at(k - 1); }
  int total() const;
  bool is_zero() const { return total() == 0; }
  bool is_regular() const;

  Weight scaled(int n) const;
  Weight operator+(const Weight &other) const;
  bool operator==(const Weight &other) const = default;

  std::string str() const;

private:
  std::vector<int> m_fundamental;
  std::vector<int> m_partition;
};

Matrix commutator(const Matrix &a, const Matrix &b);
Matrix commutator(const AlgebraSpec &spec, const Generator &a, const Generator &b);

/// Dimension of the irreducible representation with highest weight lambda,
/// exact integer arithmetic.
std::uint64_t weyl_dimension(const AlgebraSpec &spec, const Weight &lambda);

/// sum_j m_j d_jj for a diagonal matrix d.
cplx weight_of_cartan_action(const Weight &lambda, const Matrix &d);

/// All dominant weights of sl_M with sum of fundamental coordinates <= total.
std::vector<Weight> weights_up_to(int M, int total);

} // namespace clim

#endif
