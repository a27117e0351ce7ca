#include "clim/classical_limit.hpp"
#include "clim/sampling.hpp"

#include "test_util.hpp"

#include <cmath>

using namespace clim;
using clim::test::max_abs;
using clim::test::p0;

namespace
{

const cplx I(0.0, 1.0);

Vector orbit_vector(const Irrep &rep, const OrbitPoint &p) { return rep.orbit_vector(p.unipotent()); }

/// <psi, rho(a_p) ... rho(a_1) psi> / <psi, psi>
cplx reversed_element(const Irrep &rep, const Monomial &alpha, const OrbitPoint &p)
{
  const Vector psi = orbit_vector(rep, p);
  Vector v = psi;
  for (const auto &g : alpha)
    v = rep.generator(g) * v;
  return psi.dot(v) / psi.squaredNorm();
}

Monomial random_monomial(const AlgebraSpec &spec, int degree, Rng &rng)
{
  std::uniform_int_distribution<std::size_t> pick(0, spec.catalog().size() - 1);
  Monomial m;
  for (int d = 0; d < degree; ++d)
    m.push_back(spec.catalog()[pick(rng)]);
  return m;
}

} // namespace

TEST_CASE("moment map examples")
{
  AlgebraSpec s3(3);
  Rng rng(101);
  const Weight w({2, 1});
  const Irrep rep = build_irrep(s3, w);
  for (int t = 0; t < 20; ++t)
  {
    const Vector x = random_vector(rep.dimension(), rng);
    const Matrix xi = random_su_algebra(3, rng);
    const cplx mu = moment(rep, xi, x);
    CHECK(std::abs(mu.imag()) <= 1e-12 * std::max(1.0, std::abs(mu)));
    CHECK_CLOSE(moment(rep, xi, cplx(0.3, -2.0) * x), mu, 1e-12);
  }
  for (int k = 1; k <= 2; ++k)
    CHECK_CLOSE(moment(rep, I * s3.matrix(Generator::H(k)), rep.v_max()), 2.0 * w[k], 1e-14);
  CHECK_THROWS_AS(moment(rep, random_su_algebra(3, rng), Vector::Zero(rep.dimension())), DomainError);

  const auto basis = compact_basis(s3);
  REQUIRE(basis.size() == 8);
  for (std::size_t a = 0; a < basis.size(); ++a)
  {
    CHECK(max_abs(basis[a] + basis[a].adjoint()) <= 1e-15);
    for (std::size_t b = 0; b < basis.size(); ++b)
      CHECK_CLOSE((basis[a].adjoint() * basis[b]).trace().real(), a == b ? 1.0 : 0.0, 1e-15);
  }
}

TEST_CASE("classical values of generators and monomials")
{
  AlgebraSpec s3(3), s2(2);
  const OrbitPoint p = p0();
  const Irrep f1 = build_irrep(s3, Weight({1, 0}));
  const Irrep f2 = build_irrep(s3, Weight({0, 1}));
  const Matrix e12 = s3.matrix(Generator::E(1, 2));
  CHECK_CLOSE(cl_generator(f1, e12, orbit_vector(f1, p)), 8.0 / 21.0, 1e-15);
  CHECK_CLOSE(cl_generator(f2, e12, orbit_vector(f2, p)), 12.0 / 41.0, 1e-15);
  CHECK_CLOSE(cl_generator(f1, AbstractOperator::generator(Generator::E(1, 2)), orbit_vector(f1, p)), 8.0 / 21.0,
              1e-15);
  CHECK_THROWS_AS(cl_generator(f1, parse_hamiltonian("H(1) ox H(1)", s3), f1.v_max()), DomainError);

  const Irrep r21 = build_irrep(s3, Weight({2, 1}));
  CHECK_CLOSE(cl_generator(r21, s3.matrix(Generator::H(1)), r21.v_max()), 2.0, 1e-15);

  const Monomial ee{Generator::E(1, 2), Generator::E(2, 1)};
  CHECK_CLOSE(cl_monomial(Weight({1, 0}), ee, p.on_chart(Weight({1, 0}), true)), 64.0 / 441.0, 1e-15);
  const Monomial hh{Generator::H(1), Generator::H(1)};
  CHECK_CLOSE(cl_monomial(Weight({3, 2}), hh, OrbitPoint(3)), 9.0, 1e-15);
  CHECK(cl_monomial(Weight({3, 2}), {}, p) == cplx(1.0));
  CHECK_CLOSE(cl_monomial(Weight({1, 1}), {Generator::E(1, 2)}, p), 8.0 / 21.0 + 12.0 / 41.0, 1e-15);
}

TEST_CASE("orbit closed form agrees with the irrep expectation")
{
  Rng rng(103);
  for (int M = 2; M <= 4; ++M)
  {
    AlgebraSpec spec(M);
    for (const auto &w : weights_up_to(M, 3))
    {
      if (w.is_zero())
        continue;
      const Irrep rep = build_irrep(spec, w);
      for (const auto &p : sample_points(w, 5, 7 + static_cast<std::uint64_t>(M), 1.0))
      {
        const Matrix a = random_sl_algebra(M, rng);
        CHECK_CLOSE(cl_on_orbit(w, a, p), cl_generator(rep, a, orbit_vector(rep, p)), 1e-12);
      }
    }
  }
}

TEST_CASE("l of E(1,2) over su(3)")
{
  Rng rng(107);
  const Monomial e12{Generator::E(1, 2)};
  const OrbitPoint p = p0();
  CHECK_CLOSE(l_symbol(Weight({1, 0}), e12, p.on_chart(Weight({1, 0}), true)), 8.0 / 21.0, 1e-15);
  // singular weight: P0 itself is off the chart; its projection is (0, x31 - x21 x32, x32)
  const OrbitPoint q0 = p.project(Weight({0, 1}));
  CHECK_CLOSE(q0.x(3, 1), -0.75, 1e-15);
  CHECK_CLOSE(l_symbol(Weight({0, 1}), e12, q0), 12.0 / 41.0, 1e-15);
  CHECK(std::abs(l_symbol(Weight({0, 1}), e12, q0) - 0.292683) <= 1e-6);
  for (int t = 0; t < 100; ++t)
  {
    std::vector<cplx> x{sample_disc(rng, 1.0), sample_disc(rng, 1.0), sample_disc(rng, 1.0)};
    const OrbitPoint q(3, x);
    const cplx x21 = x[0], x31 = x[1], x32 = x[2];
    const double n1 = fundamental_norm(1, q), n2 = fundamental_norm(2, q);
    const int l1 = 1 + t % 4, l2 = 1 + (t / 4) % 3;
    const cplx expected = x21 / n1 * static_cast<double>(l1) +
                          std::conj(x32) * (x21 * x32 - x31) / n2 * static_cast<double>(l2);
    CHECK_CLOSE(l_symbol(Weight({l1, l2}), e12, q), expected, 1e-12);
  }
  // H(1) at the origin is pure multiplication
  CHECK_CLOSE(l_symbol(Weight({5, 2}), {Generator::H(1)}, OrbitPoint(3)), 5.0, 1e-15);
}

TEST_CASE("degree-two recursion through the vector field")
{
  AlgebraSpec s3(3);
  Rng rng(109);
  const Weight w({2, 1});
  for (int t = 0; t < 10; ++t)
  {
    std::vector<cplx> x{sample_disc(rng, 0.8), sample_disc(rng, 0.8), sample_disc(rng, 0.8)};
    const OrbitPoint q(3, x);
    const Generator a = s3.catalog()[static_cast<std::size_t>(t % 8)];
    const Generator b = s3.catalog()[static_cast<std::size_t>((3 * t + 1) % 8)];
    const cplx lab = l_symbol(w, {a, b}, q);
    const cplx la = l_symbol(w, {a}, q), lb = l_symbol(w, {b}, q);

    // holomorphic derivative of l(b): Wirtinger finite differences, Richardson-extrapolated
    const auto op = r_tilde(s3.matrix(a), q, 1);
    cplx drift = 0.0;
    const auto pos = lower_positions(3);
    for (const auto &ij : pos)
    {
      auto dz = [&](double h) {
        auto at = [&](cplx d) {
          OrbitPoint r = q;
          r.set(ij.i, ij.j, q.x(ij.i, ij.j) + d);
          return l_symbol(w, {b}, r);
        };
        return ((at(h) - at(-h)) - I * (at(cplx(0, h)) - at(cplx(0, -h)))) / (4.0 * h);
      };
      const cplx d = (4.0 * dz(5e-4) - dz(1e-3)) / 3.0;
      drift += op.vector_coefficient(ij.i, ij.j) * d;
    }
    CHECK_CLOSE(lab, lb * la + drift, 1e-10);
  }
}

TEST_CASE("degree-one symbols equal the irrep expectation")
{
  for (int M = 2; M <= 4; ++M)
  {
    AlgebraSpec spec(M);
    for (const auto &w : weights_up_to(M, M == 4 ? 2 : 4))
    {
      if (w.is_zero())
        continue;
      CAPTURE(w.str());
      const Irrep rep = build_irrep(spec, w);
      for (const auto &p : sample_points(w, 5, 211, 1.0))
        for (const auto &g : spec.catalog())
          CHECK_CLOSE(l_symbol(w, {g}, p), cl_generator(rep, spec.matrix(g), orbit_vector(rep, p)), 1e-10);
    }
  }
}

TEST_CASE("degree-one symbols are additive in lambda")
{
  AlgebraSpec s4(4);
  Rng rng(113);
  std::vector<cplx> x(6);
  for (auto &c : x)
    c = sample_disc(rng, 1.0);
  const OrbitPoint p(4, x);
  const Weight a({1, 2, 1}), b({2, 1, 3});
  for (const auto &g : s4.catalog())
    CHECK_CLOSE(l_symbol(a + b, {g}, p), l_symbol(a, {g}, p) + l_symbol(b, {g}, p), 1e-12);
}

TEST_CASE("higher symbols match the reversed matrix element")
{
  Rng rng(127);
  for (int M = 2; M <= 3; ++M)
  {
    AlgebraSpec spec(M);
    for (const auto &w : {Weight::rho(M), Weight::rho(M).scaled(2)})
    {
      const Irrep rep = build_irrep(spec, w);
      for (const auto &p : sample_points(w, 4, 17, 0.8))
        for (int degree = 2; degree <= 4; ++degree)
        {
          const Monomial alpha = random_monomial(spec, degree, rng);
          const cplx expected = reversed_element(rep, alpha, p);
          CHECK_CLOSE(l_symbol(w, alpha, p), expected, 1e-10 * std::max(1.0, std::abs(expected)));
        }
    }
  }
}

TEST_CASE("jets and flows give the same symbol")
{
  Rng rng(131);
  AlgebraSpec s3(3);
  for (const auto &w : {Weight({1, 1}), Weight({2, 0}), Weight({1, 2})})
  {
    const Irrep rep = build_irrep(s3, w);
    for (const auto &p : sample_points(w, 3, 19, 0.7))
      for (int degree = 1; degree <= 3; ++degree)
      {
        const Monomial alpha = random_monomial(s3, degree, rng);
        CHECK_CLOSE(l_symbol(w, alpha, p), l_symbol_by_flows(rep, alpha, p), 1e-5);
      }
  }
}

TEST_CASE("selfadjoint operators have real classical values")
{
  AlgebraSpec s3(3);
  Rng rng(137);
  const auto h = parse_hamiltonian("E(1,2) ox E(2,1) + E(2,1) ox E(1,2) + 2.5*H(1) + 1i*E(1,3) - 1i*E(3,1)", s3);
  REQUIRE(is_abstractly_selfadjoint(h));
  for (const auto &p : sample_points(Weight({1, 1}), 20, 23, 1.0))
  {
    CHECK(std::abs(cl_operator(Weight({1, 1}), h, p).imag()) <= 1e-12);
    AbstractOperator op;
    for (int d = 1; d <= 3; ++d)
      op.add_term(random_monomial(s3, d, rng), sample_disc(rng, 1.0));
    CHECK(std::abs(cl_operator(Weight({2, 1}), op + formal_adjoint(op), p).imag()) <= 1e-12);
  }
}

TEST_CASE("classical values are projective invariants")
{
  AlgebraSpec s3(3);
  Rng rng(139);
  const Irrep rep = build_irrep(s3, Weight({1, 2}));
  const Vector x = random_vector(rep.dimension(), rng);
  const Matrix a = random_sl_algebra(3, rng);
  const cplx base = cl_generator(rep, a, x);
  for (double mag : {1e-3, 0.5, 7.0, 1e3})
  {
    const cplx c = std::polar(mag, 0.37 * mag);
    CHECK_CLOSE(cl_generator(rep, a, c * x), base, 1e-12);
    CHECK_CLOSE(moment(rep, a, c * x), moment(rep, a, x), 1e-12);
  }
}

TEST_CASE("limit sequences")
{
  AlgebraSpec s2(2), s3(3);
  const std::vector<int> ns{1, 2, 4, 8, 16, 32, 64};

  const auto lin = parse_hamiltonian("E(1,2) + E(2,1) + 0.5*H(2)", s3);
  const auto r1 = cl_sequence(Weight({1, 1}), lin, p0(), ns);
  CHECK(r1.passed);
  for (double e : r1.errors)
    CHECK(e <= 1e-12);
  CHECK(r1.warning.empty());

  const auto hh = parse_hamiltonian("H(1) ox H(1)", s2);
  const auto r2 = cl_sequence(Weight({1}), hh, OrbitPoint(2), ns);
  CHECK(r2.passed);
  for (std::size_t i = 0; i < ns.size(); ++i)
    CHECK_CLOSE(r2.values[i], 1.0, 1e-12);

  const auto sym = parse_hamiltonian("E(1,2) ox E(2,1) + E(2,1) ox E(1,2)", s3);
  const auto r3 = cl_sequence(Weight({1, 1}), sym, p0(), ns);
  CHECK(r3.passed);
  CHECK(r3.fit_valid);
  CHECK(std::abs(r3.exponent + 1.0) <= 0.3);
  for (std::size_t i = 2; i + 1 < ns.size(); ++i)
    CHECK(r3.errors[i + 1] < r3.errors[i]);

  const auto r4 = cl_sequence(Weight({1, 1}), parse_hamiltonian("E(1,2) ox E(1,2)", s3), p0(), {1, 2});
  CHECK_FALSE(r4.warning.empty());

  CHECK_THROWS_AS(cl_sequence(Weight({0, 0}), sym, p0(), ns), DomainError);
  CHECK_THROWS_AS(cl_sequence(Weight({1, 1}), sym, p0(), {4, 2}), DomainError);
  CHECK_THROWS_AS(cl_sequence(Weight({1, 1}), sym, p0(), {}), DomainError);
}

TEST_CASE("Poisson bracket as a flow derivative")
{
  Rng rng(149);
  AlgebraSpec s2(2), s3(3);
  const Irrep spin = build_irrep(s2, Weight({1}));
  const auto su2 = compact_basis(s2);
  const Vector x = random_vector(2, rng);
  for (const auto &xi : su2)
  {
    CHECK(poisson_check(spin, xi, xi, x, 1e-4) <= 1e-8);
    for (const auto &eta : su2)
      CHECK(poisson_check(spin, xi, eta, x, 1e-4) <= 1e-6);
  }

  const Irrep rep = build_irrep(s3, Weight({1, 1}));
  for (int t = 0; t < 10; ++t)
  {
    const Matrix xi = random_su_algebra(3, rng), eta = random_su_algebra(3, rng);
    const Vector v = random_vector(rep.dimension(), rng);
    const double coarse = poisson_check(rep, xi, eta, v, 1e-2);
    const double fine = poisson_check(rep, xi, eta, v, 5e-3);
    CHECK(poisson_check(rep, xi, eta, v, 1e-4) <= 1e-6);
    // central differences: halving the step quarters the residual
    CHECK(fine / coarse == doctest::Approx(0.25).epsilon(0.05));

    // Dirac form with hermitian A, B
    const Matrix a = I * xi, b = I * eta;
    CHECK(dirac_check(rep, a, b, v, 1e-4) <= 1e-6);
  }
}

TEST_CASE("moment map equivariance")
{
  Rng rng(151);
  for (int M = 2; M <= 3; ++M)
  {
    AlgebraSpec spec(M);
    const Irrep rep = build_irrep(spec, Weight::rho(M));
    for (int t = 0; t < 20; ++t)
    {
      const Matrix k = random_su_group(M, rng);
      CHECK(std::abs(k.determinant() - 1.0) <= 1e-12);
      CHECK(max_abs(k.adjoint() * k - Matrix::Identity(M, M)) <= 1e-12);
      CHECK(equivariance_residual(rep, k, random_vector(rep.dimension(), rng)) <= 1e-8);
    }
  }
}

TEST_CASE("structure of l in lambda")
{
  const OrbitPoint p = p0();
  const auto grid2 = theorem3_grid(3, 2);
  const auto rep2 = theorem3_structure(grid2, {Generator::E(1, 2), Generator::E(2, 1)}, p);
  CHECK(rep2.hypothesis_holds);
  CHECK(rep2.held_out > 0);
  CHECK(rep2.held_out_residual <= 1e-8);
  CHECK(rep2.leading_deviation <= 1e-8);
  CHECK(rep2.passed);

  const auto rep1 = theorem3_structure(theorem3_grid(3, 1), {Generator::E(1, 3)}, p);
  CHECK(rep1.passed);
  for (const auto &[e, c] : rep1.coefficients)
    CHECK(e[0] + e[1] == 1);
  // the linear part is cl itself: coefficients are the fundamental pieces
  CHECK_CLOSE(rep1.coefficients[0].second, cl_on_orbit(Weight({1, 0}), AlgebraSpec(3).matrix(Generator::E(1, 3)), p), 1e-10);

  const auto rep3 = theorem3_structure(theorem3_grid(3, 3), {Generator::E(1, 2), Generator::H(2), Generator::E(3, 1)}, p);
  CHECK(rep3.passed);

  // H ox H at the origin of su(2): exactly lambda^2
  const auto hh = theorem3_structure(theorem3_grid(2, 2), {Generator::H(1), Generator::H(1)}, OrbitPoint(2));
  CHECK(hh.passed);
  for (int n = 1; n <= 6; ++n)
    CHECK_CLOSE(l_symbol(Weight({n}), {Generator::H(1), Generator::H(1)}, OrbitPoint(2)), double(n * n), 1e-12);

  CHECK_THROWS_AS(theorem3_structure({Weight({3, 3}), Weight({4, 3})}, {Generator::E(1, 2), Generator::E(2, 1)}, p),
                  DomainError);
  CHECK_THROWS_AS(theorem3_structure({Weight({3, 3}), Weight({3, 0})}, {Generator::E(1, 2)}, p), DomainError);
}
