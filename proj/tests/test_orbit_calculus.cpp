#include "clim/irrep.hpp"
#include "clim/norm_geometry.hpp"
#include "clim/orbit_calculus.hpp"
#include "clim/sampling.hpp"

#include "test_util.hpp"

#include <unsupported/Eigen/MatrixFunctions>

using namespace clim;
using clim::test::max_abs;
using clim::test::p0;

namespace
{

OrbitPoint random_point(int M, Rng &rng, double radius = 1.0)
{
  std::vector<cplx> x(static_cast<std::size_t>(M * (M - 1) / 2));
  for (auto &c : x)
    c = sample_disc(rng, radius);
  return OrbitPoint(M, x);
}

Jet random_jet(const std::shared_ptr<const JetLayout> &layout, Rng &rng)
{
  Jet f(layout);
  for (std::size_t i = 0; i < layout->size(); ++i)
  {
    Jet mono(layout, sample_disc(rng, 1.0));
    for (int v = 0; v < layout->variables(); ++v)
      mono *= pow(Jet::variable(layout, v, 0.0), layout->exponents(i)[static_cast<std::size_t>(v)]);
    f += mono;
  }
  return f;
}

double jet_distance(const Jet &a, const Jet &b, int through)
{
  double worst = 0.0;
  const auto &layout = *a.layout();
  for (std::size_t i = 0; i < layout.size(); ++i)
    if (layout.degree(i) <= through)
      worst = std::max(worst, std::abs(a.coefficients()[i] - b.coefficients()[i]));
  return worst;
}

Matrix reconstruct(const GaussFactors &f) { return f.lower * f.diagonal.asDiagonal() * f.upper; }

} // namespace

TEST_CASE("lower positions and chart masks")
{
  const auto pos = lower_positions(4);
  REQUIRE(pos.size() == 6);
  CHECK(pos[0].name() == "x_2_1");
  CHECK(pos[1].name() == "x_3_1");
  CHECK(pos[2].name() == "x_3_2");
  CHECK(pos[3].name() == "x_4_1");

  CHECK(active_mask(Weight({1, 1})) == std::vector<bool>{true, true, true});
  // blocks {1},{2,3}: x32 stays inside a block
  CHECK(active_mask(Weight({1, 0})) == std::vector<bool>{true, true, false});
  CHECK(active_mask(Weight({0, 1})) == std::vector<bool>{false, true, true});
  CHECK(active_mask(Weight({0, 0})) == std::vector<bool>{false, false, false});
  CHECK(active_mask(Weight({0, 1, 0})) == std::vector<bool>{false, true, true, true, true, false});

  const OrbitPoint p = p0();
  CHECK_THROWS_AS(p.on_chart(Weight({1, 0})), DomainError);
  const OrbitPoint q = p.on_chart(Weight({1, 0}), true);
  CHECK(q.x(3, 2) == cplx(0.0));
  CHECK(q.x(2, 1) == cplx(0.5));
  CHECK(q.active_positions().size() == 2);

  // projection keeps the orbit point for singular weights
  AlgebraSpec s4(4);
  for (const auto &w : {Weight({0, 1}), Weight({1, 0}), Weight({0, 1, 0}), Weight({2, 0, 1})})
  {
    const int M = w.M();
    std::vector<cplx> x(static_cast<std::size_t>(M * (M - 1) / 2));
    for (std::size_t q = 0; q < x.size(); ++q)
      x[q] = cplx(0.1 * static_cast<double>(q + 1), -0.2 + 0.05 * static_cast<double>(q));
    const OrbitPoint full(M, x);
    const OrbitPoint chart = full.project(w);
    const Irrep rep = build_irrep(AlgebraSpec(M), w);
    const Vector a = rep.orbit_vector(full.unipotent()), b = rep.orbit_vector(chart.unipotent());
    CHECK(max_abs(a - b) <= 1e-14);
    CHECK(chart.active() == active_mask(w));
  }

  const OrbitPoint named = OrbitPoint::from_map(3, {{"x_2_1", 0.5}, {"x_3_1", -0.25}, {"x_3_2", 1.0}});
  CHECK(named.coordinates() == p.coordinates());
  CHECK_THROWS_AS(OrbitPoint::from_map(3, {{"x_1_2", 1.0}}), DomainError);

  const Matrix u = p.unipotent();
  CHECK(u(1, 0) == cplx(0.5));
  CHECK(u(2, 0) == cplx(-0.25));
  CHECK(u(2, 1) == cplx(1.0));
  CHECK(u.determinant() == cplx(1.0));
}

TEST_CASE("Gauss decomposition examples")
{
  const auto id = gauss_decompose(Matrix::Identity(3, 3));
  CHECK(max_abs(id.lower - Matrix::Identity(3, 3)) == 0.0);
  CHECK(max_abs(id.upper - Matrix::Identity(3, 3)) == 0.0);
  CHECK(max_abs(Matrix(id.diagonal.asDiagonal()) - Matrix::Identity(3, 3)) == 0.0);

  // exp(-t E12) u at P0
  const OrbitPoint p = p0();
  const Matrix u = p.unipotent();
  const double t = 0.1;
  Matrix e = Matrix::Identity(3, 3);
  e(0, 1) = -t;
  const auto f = gauss_decompose(e * u);
  const cplx x21 = p.x(2, 1), x31 = p.x(3, 1), x32 = p.x(3, 2);
  CHECK_CLOSE(f.diagonal[0], 1.0 - t * x21, 1e-15);
  CHECK_CLOSE(f.diagonal[1], 1.0 / (1.0 - t * x21), 1e-15);
  CHECK_CLOSE(f.diagonal[2], 1.0, 1e-15);
  // the corrected (3,2) entry of the lower factor; the opposite sign does not reconstruct
  CHECK_CLOSE(f.lower(2, 1), x32 + t * (x31 - x21 * x32), 1e-15);
  CHECK(std::abs(f.lower(2, 1) - (x32 + t * (x21 * x32 - x31))) > 1e-3);
  CHECK(max_abs(reconstruct(f) - e * u) <= 1e-15);
}

TEST_CASE("Gauss decomposition reconstructs 10^4 random matrices")
{
  Rng rng(41);
  double worst = 0.0;
  for (int t = 0; t < 10000; ++t)
  {
    const int M = 2 + t % 4;
    const Matrix g = random_sl_algebra(M, rng) + 3.0 * Matrix::Identity(M, M);
    const auto f = gauss_decompose(g);
    worst = std::max(worst, max_abs(reconstruct(f) - g) / std::max(1.0, max_abs(g)));
    CHECK(max_abs(Matrix(f.lower.triangularView<Eigen::StrictlyUpper>())) == 0.0);
    CHECK(max_abs(Matrix(f.upper.triangularView<Eigen::StrictlyLower>())) == 0.0);
    CHECK(max_abs(f.lower.diagonal() - Vector::Ones(M)) == 0.0);
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("Gauss decomposition rejects the closed set")
{
  Matrix w(2, 2);
  w << 0.0, 1.0, -1.0, 0.0;
  CHECK_THROWS_AS(gauss_decompose(w), DecompositionOnClosedSet);
  // nearly rank-deficient leading block; a small but well-conditioned block is fine
  Matrix g = Matrix::Identity(3, 3);
  g(0, 1) = 1.0;
  g(1, 0) = 1.0;
  g(1, 1) = 1.0 + 1e-14;
  CHECK_THROWS_AS(gauss_decompose(g), DecompositionOnClosedSet);
  g(1, 1) = 1.0 + 1e-6;
  CHECK_NOTHROW(gauss_decompose(g));
  Matrix tiny = Matrix::Identity(3, 3);
  tiny(1, 1) = 1e-14;
  tiny(2, 2) = 1e14;
  CHECK_NOTHROW(gauss_decompose(tiny));
}

TEST_CASE("conjugate split at P0")
{
  AlgebraSpec s3(3);
  const auto split = conjugate_split(s3.matrix(Generator::E(1, 2)), p0());
  Matrix a0 = Matrix::Zero(3, 3);
  a0(0, 0) = 0.5;
  a0(1, 1) = -0.5;
  CHECK(max_abs(split.diagonal - a0) <= 1e-15);
  CHECK_CLOSE(split.chart_velocity(1, 0), -0.25, 1e-15);
  CHECK_CLOSE(split.chart_velocity(2, 0), 0.125, 1e-15);
  CHECK_CLOSE(split.chart_velocity(2, 1), 0.75, 1e-15);
  const Matrix u = p0().unipotent();
  CHECK(max_abs(split.lower + split.diagonal + split.upper - u.inverse() * s3.matrix(Generator::E(1, 2)) * u) <= 1e-15);
}

TEST_CASE("conjugate split matches finite differences of the Gauss factors")
{
  Rng rng(43);
  const double h = 1e-4;
  for (int t = 0; t < 50; ++t)
  {
    const int M = 2 + t % 3;
    const OrbitPoint p = random_point(M, rng);
    const Matrix u = p.unipotent();
    const Matrix xi = random_sl_algebra(M, rng).normalized();
    const auto plus = gauss_decompose(Matrix((h * xi).exp()) * u);
    const auto minus = gauss_decompose(Matrix((-h * xi).exp()) * u);
    const auto split = conjugate_split(xi, p);
    CHECK(max_abs((plus.lower - minus.lower) / (2 * h) - split.chart_velocity) <= 1e-6);
    CHECK(max_abs(Matrix(((plus.diagonal - minus.diagonal) / (2 * h)).asDiagonal()) - split.diagonal) <= 1e-6);
    CHECK(max_abs((plus.upper - minus.upper) / (2 * h) - split.upper) <= 1e-6);
  }
}

TEST_CASE("r~(E(1,2)) golden coefficients")
{
  AlgebraSpec s3(3);
  Rng rng(47);
  const Matrix e12 = s3.matrix(Generator::E(1, 2));
  for (int t = 0; t < 100; ++t)
  {
    const OrbitPoint p = random_point(3, rng);
    const cplx x21 = p.x(2, 1), x31 = p.x(3, 1), x32 = p.x(3, 2);
    const auto op = r_tilde(e12, p, 1);
    CHECK_CLOSE(op.vector_coefficient(2, 1), -x21 * x21, 1e-14);
    CHECK_CLOSE(op.vector_coefficient(3, 1), -x21 * x31, 1e-14);
    CHECK_CLOSE(op.vector_coefficient(3, 2), x21 * x32 - x31, 1e-14);
    CHECK_CLOSE(op.multiplication_value(Weight({1, 0})), x21, 1e-14);
    CHECK_CLOSE(op.multiplication_value(Weight({0, 1})), 0.0, 1e-14);
    CHECK_CLOSE(op.multiplication_value(Weight({3, 2})), 3.0 * x21, 1e-14);
  }
}

TEST_CASE("r~ of Cartan and raising generators")
{
  AlgebraSpec s3(3);
  const OrbitPoint origin(3);
  const auto h1 = r_tilde(s3.matrix(Generator::H(1)), origin, 1);
  for (const auto &q : lower_positions(3))
    CHECK(h1.vector_coefficient(q.i, q.j) == cplx(0.0));
  CHECK_CLOSE(h1.multiplication_value(Weight({4, 7})), 4.0, 1e-15);

  // at a generic point H(1) still has multiplication lambda_1 and linear vector part
  const auto h1p = r_tilde(s3.matrix(Generator::H(1)), p0(), 2);
  CHECK_CLOSE(h1p.multiplication_value(Weight({1, 0})), 1.0, 1e-15);
  CHECK_CLOSE(h1p.vector_coefficient(2, 1), -2.0 * 0.5, 1e-15);

  // U_+ fixes v_max: strictly upper xi at u = I has A_- = A_0 = 0
  for (const auto &g : {Generator::E(1, 2), Generator::E(1, 3), Generator::E(2, 3)})
  {
    const auto split = conjugate_split(s3.matrix(g), origin);
    CHECK(max_abs(split.lower) == 0.0);
    CHECK(max_abs(split.diagonal) == 0.0);
  }
}

TEST_CASE("r~ is complex linear in xi")
{
  Rng rng(53);
  const OrbitPoint p = random_point(4, rng);
  const Matrix a = random_sl_algebra(4, rng), b = random_sl_algebra(4, rng);
  const cplx s(0.7, -1.3);
  const auto ra = r_tilde(a, p, 2), rb = r_tilde(b, p, 2), rs = r_tilde(a + s * b, p, 2);
  for (std::size_t i = 0; i < rs.vector_part().size(); ++i)
    CHECK(jet_distance(rs.vector_part()[i], ra.vector_part()[i] + s * rb.vector_part()[i], 2) <= 1e-13);
  const Weight w({1, 2, 3});
  CHECK(jet_distance(rs.multiplication(w), ra.multiplication(w) + s * rb.multiplication(w), 2) <= 1e-13);
}

TEST_CASE("apply_op examples")
{
  AlgebraSpec s3(3);
  const OrbitPoint p = p0();
  const auto op = r_tilde(s3.matrix(Generator::E(1, 2)), p, 2);
  const auto layout = op.vector_part()[0].layout();
  const Jet x21 = Jet::variable(layout, 0, p.x(2, 1));
  // -x21^2 + x21 lambda_1 x21
  CHECK_CLOSE(apply_op(op, Weight({0, 0}), x21).value(), -0.25, 1e-15);
  CHECK_CLOSE(apply_op(op, Weight({2, 1}), x21).value(), -0.25 + 2.0 * 0.25, 1e-15);
  CHECK(apply_op(op, Weight({2, 1}), x21).valid_order() == 1);

  // zero vector part: pure multiplication
  const auto h = r_tilde(s3.matrix(Generator::H(2)), OrbitPoint(3), 3);
  const Jet f = Jet(h.vector_part()[0].layout(), 2.5);
  CHECK_CLOSE(apply_op(h, Weight({1, 3}), f).value(), 3.0 * 2.5, 1e-15);

  const Jet spent = apply_op(op, Weight({1, 1}), apply_op(op, Weight({1, 1}), x21));
  CHECK(spent.valid_order() == 0);
  CHECK_THROWS_AS(apply_op(op, Weight({1, 1}), spent), JetOrderExhausted);
}

TEST_CASE("r~ acts as a derivation plus multiplication")
{
  Rng rng(59);
  const Weight w({2, 1});
  for (int t = 0; t < 20; ++t)
  {
    const OrbitPoint p = random_point(3, rng);
    const auto op = r_tilde(random_sl_algebra(3, rng), p, 4);
    const auto layout = op.vector_part()[0].layout();
    const Jet f = random_jet(layout, rng), g = random_jet(layout, rng);
    const Jet lhs = apply_op(op, w, f * g);
    const Jet rhs = f * apply_op(op, w, g) + g * apply_vector_part(op, f);
    CHECK(jet_distance(lhs, rhs, 3) <= 1e-12);
  }
}

TEST_CASE("composition of r~ reverses brackets")
{
  // l(a ox b) pairs with rho(b) rho(a), so [r~(a), r~(b)] = -r~([a,b])
  Rng rng(61);
  const Weight w({1, 2});
  for (int t = 0; t < 20; ++t)
  {
    const OrbitPoint p = random_point(3, rng);
    const Matrix a = random_sl_algebra(3, rng), b = random_sl_algebra(3, rng);
    const auto ra = r_tilde(a, p, 4), rb = r_tilde(b, p, 4), rc = r_tilde(commutator(a, b), p, 4);
    const Jet f = random_jet(ra.vector_part()[0].layout(), rng);
    const Jet ab = apply_op(ra, w, apply_op(rb, w, f));
    const Jet ba = apply_op(rb, w, apply_op(ra, w, f));
    const Jet c = apply_op(rc, w, f);
    CHECK(jet_distance(ab - ba, -c, 2) <= 1e-11);

    // associativity: (op_a op_b) op_c applied stepwise equals op_a (op_b op_c)
    const auto rd = r_tilde(random_sl_algebra(3, rng), p, 4);
    const Jet left = apply_op(ra, w, apply_op(rb, w, apply_op(rd, w, f)));
    const Jet inner = apply_op(rb, w, apply_op(rd, w, f));
    CHECK(jet_distance(left, apply_op(ra, w, inner), 1) == 0.0);
  }
}

TEST_CASE("jets of norms")
{
  const OrbitPoint p = p0();
  CHECK_CLOSE(jet_of_fundamental_norm(1, p, 0).value(), 21.0 / 16.0, 1e-15);
  CHECK_CLOSE(jet_of_fundamental_norm(2, p, 0).value(), 41.0 / 16.0, 1e-15);
  CHECK_CLOSE(jet_of_norm(Weight({2, 1}), p, 0).value(), std::pow(21.0 / 16.0, 2) * 41.0 / 16.0, 1e-14);
  CHECK_CLOSE(jet_of_norm(Weight({3, 5}), OrbitPoint(3), 3).value(), 1.0, 0.0);

  const Jet n1 = jet_of_norm(Weight({1, 0}), p.on_chart(Weight({1, 0}), true), 2);
  CHECK_CLOSE(n1.coefficient({1, 0}), 0.5, 1e-15);
  CHECK_CLOSE(n1.coefficient({0, 1}), -0.25, 1e-15);

  // the holomorphic jet agrees with a Wirtinger derivative of N_k
  Rng rng(67);
  for (int t = 0; t < 10; ++t)
  {
    const OrbitPoint q = random_point(4, rng);
    for (int k = 1; k <= 3; ++k)
    {
      const Jet j = jet_of_fundamental_norm(k, q, 1);
      CHECK_CLOSE(j.value(), fundamental_norm(k, q), 1e-13);
      const auto pos = lower_positions(4);
      for (std::size_t v = 0; v < pos.size(); ++v)
      {
        const double h = 1e-5;
        auto shifted = [&](cplx d) {
          OrbitPoint r = q;
          r.set(pos[v].i, pos[v].j, q.x(pos[v].i, pos[v].j) + d);
          return fundamental_norm(k, r);
        };
        // d/dz = (d/dx - i d/dy) / 2
        const double dx = (shifted(h) - shifted(-h)) / (2 * h);
        const double dy = (shifted(cplx(0, h)) - shifted(cplx(0, -h))) / (2 * h);
        std::vector<int> e(pos.size(), 0);
        e[v] = 1;
        CHECK_CLOSE(j.coefficient(e), cplx(dx, -dy) / 2.0, 1e-8);
      }
    }
  }
}
