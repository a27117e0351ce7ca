#include "clim/classical_limit.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <map>

namespace clim
{

std::vector<Matrix> compact_basis(const AlgebraSpec &spec)
{
  const int M = spec.M();
  const cplx i(0.0, 1.0);
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<Matrix> basis;
  for (int k = 1; k <= M; ++k)
    for (int l = k + 1; l <= M; ++l)
    {
      const Matrix ekl = spec.matrix(Generator::E(k, l));
      const Matrix elk = spec.matrix(Generator::E(l, k));
      basis.push_back(i * r * (ekl + elk));
      basis.push_back(r * (ekl - elk));
    }
  auto inner = [](const Matrix &a, const Matrix &b) { return (a.adjoint() * b).trace().real(); };
  const std::size_t first_cartan = basis.size();
  for (int k = 1; k < M; ++k)
  {
    Matrix h = i * spec.matrix(Generator::H(k));
    for (std::size_t q = first_cartan; q < basis.size(); ++q)
      h -= inner(basis[q], h) * basis[q];
    basis.push_back(h / std::sqrt(inner(h, h)));
  }
  return basis;
}

namespace
{

double checked_norm(const Vector &x)
{
  const double n = x.squaredNorm();
  if (n == 0.0)
    throw DomainError("zero vector has no classical value");
  return n;
}

} // namespace

cplx moment(const Irrep &irrep, const Matrix &xi, const Vector &x)
{
  const double n = checked_norm(x);
  return cplx(0.0, -2.0) * x.dot(irrep.algebra_image(xi) * x) / n;
}

MomentValue moment_value(const Irrep &irrep, const Vector &x)
{
  MomentValue mu;
  for (const auto &xi : compact_basis(irrep.spec()))
    mu.components.push_back(moment(irrep, xi, x).real());
  return mu;
}

double equivariance_residual(const Irrep &irrep, const Matrix &k, const Vector &x)
{
  const auto basis = compact_basis(irrep.spec());
  const MomentValue before = moment_value(irrep, x);
  const MomentValue after = moment_value(irrep, group_apply(irrep, k) * x);
  const Matrix kinv = k.inverse();
  double sq = 0.0;
  for (std::size_t a = 0; a < basis.size(); ++a)
  {
    // (Ad*(k) mu)(xi_a) = mu(k^{-1} xi_a k)
    const Matrix moved = kinv * basis[a] * k;
    double transported = 0.0;
    for (std::size_t b = 0; b < basis.size(); ++b)
      transported += (basis[b].adjoint() * moved).trace().real() * before.components[b];
    sq += std::pow(after.components[a] - transported, 2);
  }
  return std::sqrt(sq);
}

cplx cl_generator(const Irrep &irrep, const Matrix &a, const Vector &x)
{
  const double n = checked_norm(x);
  return x.dot(irrep.algebra_image(a) * x) / n;
}

cplx cl_generator(const Irrep &irrep, const AbstractOperator &a, const Vector &x)
{
  if (a.degree() > 1)
    throw DomainError("cl_generator takes degree-1 operators; use cl_operator for monomials");
  const double n = checked_norm(x);
  return x.dot(rep_apply(irrep, a) * x) / n;
}

cplx cl_on_orbit(const Weight &lambda, const Matrix &a, const OrbitPoint &point)
{
  if (lambda.M() != point.M() || a.rows() != point.M() || a.cols() != point.M())
    throw DomainError("cl_on_orbit: weight, operator and point must share M");
  const Matrix u = point.unipotent();
  cplx total = 0.0;
  for (int k = 1; k < lambda.M(); ++k)
  {
    if (lambda[k] == 0)
      continue;
    const Matrix uk = u.leftCols(k);
    const Matrix gram = uk.adjoint() * uk;
    const Matrix moved = uk.adjoint() * a * uk;
    total += static_cast<double>(lambda[k]) * gram.ldlt().solve(moved).trace();
  }
  return total;
}

cplx cl_monomial(const Weight &lambda, const Monomial &alpha, const OrbitPoint &point)
{
  const AlgebraSpec spec(lambda.M());
  cplx prod = 1.0;
  for (const auto &g : alpha)
    prod *= cl_on_orbit(lambda, spec.matrix(g), point);
  return prod;
}

cplx cl_operator(const Weight &lambda, const AbstractOperator &op, const OrbitPoint &point)
{
  cplx total = 0.0;
  for (const auto &[m, c] : op.terms())
    total += c * cl_monomial(lambda, m, point);
  return total;
}

cplx l_symbol(const Weight &lambda, const Monomial &alpha, const OrbitPoint &point, const LimitOptions &options)
{
  const int p = static_cast<int>(alpha.size());
  if (p > options.max_degree)
    throw DomainError("monomial degree " + std::to_string(p) + " exceeds the configured maximum " +
                      std::to_string(options.max_degree));
  if (p == 0)
    return 1.0;
  const OrbitPoint chart = point.on_chart(lambda);
  const AlgebraSpec spec(lambda.M());

  // N_lambda up to a constant: each N_k rescaled to 1 at the base point
  const auto layout = JetLayout::get(static_cast<int>(chart.active_positions().size()), p);
  Jet f(layout, 1.0);
  for (int k = 1; k < lambda.M(); ++k)
    if (lambda[k] > 0)
    {
      Jet nk = jet_of_fundamental_norm(k, chart, p);
      nk *= 1.0 / nk.value();
      f *= pow(nk, lambda[k]);
    }

  std::map<Generator, FirstOrderOp> ops;
  for (int i = p - 1; i >= 0; --i)
  {
    const auto &g = alpha[static_cast<std::size_t>(i)];
    auto it = ops.find(g);
    if (it == ops.end())
      it = ops.emplace(g, r_tilde(spec.matrix(g), chart, p)).first;
    f = apply_op(it->second, lambda, f);
  }
  return f.value();
}

cplx l_symbol_by_flows(const Irrep &irrep, const Monomial &alpha, const OrbitPoint &point, double step)
{
  const OrbitPoint chart = point.on_chart(irrep.weight());
  const Matrix u = chart.unipotent();
  const Vector psi = irrep.orbit_vector(u);
  const double norm = psi.squaredNorm();
  const int p = static_cast<int>(alpha.size());
  if (p == 0)
    return 1.0;

  std::vector<Matrix> gens;
  for (const auto &g : alpha)
    gens.push_back(irrep.spec().matrix(g));

  auto mixed = [&](double h) {
    cplx acc = 0.0;
    for (unsigned mask = 0; mask < (1u << p); ++mask)
    {
      // exp(t_p a_p) ... exp(t_1 a_1) u
      Matrix g = u;
      double sign = 1.0;
      for (int i = 0; i < p; ++i)
      {
        const double t = (mask >> i) & 1u ? -h : h;
        sign *= (mask >> i) & 1u ? -1.0 : 1.0;
        g = Matrix((t * gens[static_cast<std::size_t>(i)]).exp()) * g;
      }
      acc += sign * psi.dot(irrep.orbit_vector(g));
    }
    return acc / std::pow(2.0 * h, p);
  };
  const cplx coarse = mixed(step);
  const cplx fine = mixed(step / 2.0);
  return (4.0 * fine - coarse) / 3.0 / norm;
}

std::pair<double, double> fit_decay(const std::vector<int> &n, const std::vector<double> &errors)
{
  const std::size_t m = n.size();
  if (m < 2 || errors.size() != m)
    throw DomainError("fit_decay needs at least two samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i)
  {
    const double x = std::log(static_cast<double>(n[i]));
    const double y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double dm = static_cast<double>(m);
  const double denom = dm * sxx - sx * sx;
  if (denom == 0.0)
    throw DomainError("fit_decay needs distinct n values");
  const double slope = (dm * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / dm;
  double rss = 0.0;
  for (std::size_t i = 0; i < m; ++i)
  {
    const double r = std::log(errors[i]) - (intercept + slope * std::log(static_cast<double>(n[i])));
    rss += r * r;
  }
  return {slope, std::sqrt(rss / dm)};
}

ConvergenceReport cl_sequence(const Weight &lambda, const AbstractOperator &hamiltonian, const OrbitPoint &point,
                              const std::vector<int> &n_list, const ConvergenceTolerance &tolerance,
                              const LimitOptions &options)
{
  if (lambda.is_zero())
    throw DomainError("the zero weight has a trivial orbit; no classical limit to take");
  if (n_list.empty())
    throw DomainError("empty n schedule");
  for (std::size_t i = 0; i < n_list.size(); ++i)
    if (n_list[i] < 1 || (i > 0 && n_list[i] <= n_list[i - 1]))
      throw DomainError("n schedule must be strictly increasing positive integers");
  if (!hamiltonian.fits(AlgebraSpec(lambda.M())))
    throw DomainError("Hamiltonian uses generators outside sl_" + std::to_string(lambda.M()));

  const OrbitPoint chart = point.on_chart(lambda);
  ConvergenceReport report;
  if (!is_abstractly_selfadjoint(hamiltonian))
    report.warning = "Hamiltonian is not abstractly selfadjoint; its classical limit may be complex";
  report.limit = cl_operator(lambda, hamiltonian, chart);
  const double scale = std::max(1.0, std::abs(report.limit));

  std::vector<int> fit_n;
  std::vector<double> fit_err;
  bool all_exact = true;
  for (int n : n_list)
  {
    const Weight scaled = lambda.scaled(n);
    cplx value = 0.0;
    for (const auto &[m, c] : hamiltonian.terms())
    {
      if (m.empty())
      {
        value += c;
        continue;
      }
      value += c * l_symbol(scaled, m, chart, options) / std::pow(static_cast<double>(n), static_cast<int>(m.size()));
    }
    const double err = std::abs(value - report.limit);
    report.n.push_back(n);
    report.values.push_back(value);
    report.errors.push_back(err);
    if (err > tolerance.exact * scale)
    {
      all_exact = false;
      fit_n.push_back(n);
      fit_err.push_back(err);
    }
  }
  if (fit_n.size() >= 2)
  {
    auto [slope, residual] = fit_decay(fit_n, fit_err);
    report.fit_valid = true;
    report.exponent = slope;
    report.fit_residual = residual;
  }
  report.passed = all_exact || (report.fit_valid && report.exponent <= tolerance.max_exponent);
  return report;
}

double poisson_check(const Irrep &irrep, const Matrix &xi, const Matrix &eta, const Vector &x, double h)
{
  checked_norm(x);
  const Vector backward = group_apply(irrep, Matrix((-h * xi).exp())) * x;
  const Vector forward = group_apply(irrep, Matrix((h * xi).exp())) * x;
  const cplx derivative = (moment(irrep, eta, backward) - moment(irrep, eta, forward)) / (2.0 * h);
  return std::abs(derivative - moment(irrep, commutator(xi, eta), x));
}

double dirac_check(const Irrep &irrep, const Matrix &a, const Matrix &b, const Vector &x, double h)
{
  const cplx i(0.0, 1.0);
  return poisson_check(irrep, i * a, i * b, x, h);
}

std::vector<Weight> theorem3_grid(int M, int degree, int extent)
{
  const int r = M - 1;
  std::vector<Weight> grid;
  std::vector<int> c(static_cast<std::size_t>(r), degree + 1);
  while (true)
  {
    grid.emplace_back(c);
    int i = 0;
    while (i < r)
    {
      if (++c[static_cast<std::size_t>(i)] <= degree + extent)
        break;
      c[static_cast<std::size_t>(i)] = degree + 1;
      ++i;
    }
    if (i == r)
      break;
  }
  return grid;
}

Theorem3Report theorem3_structure(const std::vector<Weight> &grid, const Monomial &alpha, const OrbitPoint &point,
                                  const Theorem3Tolerance &tolerance)
{
  Theorem3Report report;
  const int p = static_cast<int>(alpha.size());
  report.degree = p;
  if (grid.empty() || p == 0)
    throw DomainError("theorem3_structure needs a non-empty grid and a monomial of degree >= 1");
  const int M = point.M();
  const int r = M - 1;
  const auto mask = active_mask(grid.front());
  report.hypothesis_holds = true;
  for (const auto &w : grid)
  {
    if (w.M() != M)
      throw DomainError("grid weight of the wrong rank");
    if (active_mask(w) != mask)
      throw DomainError("grid weights must share one chart (same zero pattern)");
    report.hypothesis_holds =
        report.hypothesis_holds && std::any_of(w.fundamental().begin(), w.fundamental().end(), [p](int c) { return c > p; });
  }
  const OrbitPoint chart = point.on_chart(grid.front());

  // centred, scaled variables keep the Vandermonde system well conditioned
  std::vector<double> centre(static_cast<std::size_t>(r), 0.0), width(static_cast<std::size_t>(r), 1.0);
  for (int k = 0; k < r; ++k)
  {
    double lo = grid.front().fundamental()[static_cast<std::size_t>(k)], hi = lo;
    for (const auto &w : grid)
    {
      lo = std::min(lo, static_cast<double>(w.fundamental()[static_cast<std::size_t>(k)]));
      hi = std::max(hi, static_cast<double>(w.fundamental()[static_cast<std::size_t>(k)]));
    }
    centre[static_cast<std::size_t>(k)] = 0.5 * (lo + hi);
    width[static_cast<std::size_t>(k)] = std::max(1.0, 0.5 * (hi - lo));
  }
  const auto layout = JetLayout::get(r, p);
  const auto ncoef = static_cast<Eigen::Index>(layout->size());
  auto row = [&](const Weight &w) {
    Eigen::RowVectorXcd v(ncoef);
    for (Eigen::Index c = 0; c < ncoef; ++c)
    {
      double term = 1.0;
      const auto &e = layout->exponents(static_cast<std::size_t>(c));
      for (int k = 0; k < r; ++k)
        term *= std::pow((w.fundamental()[static_cast<std::size_t>(k)] - centre[static_cast<std::size_t>(k)]) /
                             width[static_cast<std::size_t>(k)],
                         e[static_cast<std::size_t>(k)]);
      v[c] = term;
    }
    return v;
  };

  std::vector<cplx> values;
  values.reserve(grid.size());
  double scale = 1.0;
  for (const auto &w : grid)
  {
    values.push_back(l_symbol(w, alpha, chart, LimitOptions{std::max(6, p)}));
    scale = std::max(scale, std::abs(values.back()));
  }

  std::vector<std::size_t> train, held;
  for (std::size_t i = 0; i < grid.size(); ++i)
    (i % 5 == 2 ? held : train).push_back(i);
  report.nodes = grid.size();
  report.held_out = held.size();
  if (static_cast<Eigen::Index>(train.size()) < ncoef || held.empty())
    throw DomainError("grid too small for an exact degree-" + std::to_string(p) + " fit with held-out nodes");

  Matrix design(static_cast<Eigen::Index>(train.size()), ncoef);
  Vector rhs(static_cast<Eigen::Index>(train.size()));
  for (std::size_t t = 0; t < train.size(); ++t)
  {
    design.row(static_cast<Eigen::Index>(t)) = row(grid[train[t]]);
    rhs[static_cast<Eigen::Index>(t)] = values[train[t]];
  }
  Eigen::ColPivHouseholderQR<Matrix> qr(design);
  if (qr.rank() < ncoef)
    throw DomainError("grid is not unisolvent for a degree-" + std::to_string(p) + " fit");
  const Vector coef = qr.solve(rhs);

  for (std::size_t i : held)
    report.held_out_residual =
        std::max(report.held_out_residual, std::abs((row(grid[i]) * coef)(0) - values[i]) / scale);

  // expected degree-p part: product of the linear forms lambda -> cl_lambda(xi_i)
  Jet expected(layout, 1.0);
  const AlgebraSpec spec(M);
  for (const auto &g : alpha)
  {
    Jet linear(layout);
    for (int k = 1; k <= r; ++k)
    {
      std::vector<int> f(static_cast<std::size_t>(r), 0);
      f[static_cast<std::size_t>(k - 1)] = 1;
      linear += Jet::variable(layout, k - 1, 0.0) * cl_on_orbit(Weight(f), spec.matrix(g), chart);
    }
    expected *= linear;
  }
  for (Eigen::Index c = 0; c < ncoef; ++c)
  {
    if (layout->degree(static_cast<std::size_t>(c)) != p)
      continue;
    const auto &e = layout->exponents(static_cast<std::size_t>(c));
    double unscale = 1.0;
    for (int k = 0; k < r; ++k)
      unscale *= std::pow(width[static_cast<std::size_t>(k)], e[static_cast<std::size_t>(k)]);
    const cplx fitted = coef[c] / unscale;
    report.coefficients.emplace_back(e, fitted);
    report.leading_deviation = std::max(report.leading_deviation, std::abs(fitted - expected.coefficient(e)));
  }
  report.passed =
      report.held_out_residual <= tolerance.held_out && report.leading_deviation <= tolerance.leading;
  return report;
}

} // namespace clim
