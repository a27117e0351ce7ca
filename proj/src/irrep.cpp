#include "clim/irrep.hpp"

#include <algorithm>
#include <deque>

namespace clim
{

WedgePower::WedgePower(int M, int k) : m_M(M), m_k(k)
{
  if (k < 0 || k > M)
    throw DomainError("wedge degree out of range");
  std::vector<int> s(k);
  for (int i = 0; i < k; ++i)
    s[i] = i;
  while (true)
  {
    m_index.emplace(s, static_cast<int>(m_subsets.size()));
    m_subsets.push_back(s);
    int i = k - 1;
    while (i >= 0 && s[i] == M - k + i)
      --i;
    if (i < 0)
      break;
    ++s[i];
    for (int j = i + 1; j < k; ++j)
      s[j] = s[j - 1] + 1;
  }
}

Matrix WedgePower::algebra(const Matrix &xi) const
{
  const int n = size();
  Matrix out = Matrix::Zero(n, n);
  for (int col = 0; col < n; ++col)
  {
    const auto &t = m_subsets[col];
    for (int p = 0; p < m_k; ++p)
    {
      const int tp = t[p];
      for (int r = 0; r < m_M; ++r)
      {
        const cplx c = xi(r, tp);
        if (c == cplx(0.0))
          continue;
        if (r == tp)
        {
          out(col, col) += c;
          continue;
        }
        if (std::find(t.begin(), t.end(), r) != t.end())
          continue;
        // moving r into sorted position passes every element strictly between tp and r
        int between = 0;
        for (int q : t)
          if ((q > std::min(r, tp)) && (q < std::max(r, tp)))
            ++between;
        auto s = t;
        s[p] = r;
        std::sort(s.begin(), s.end());
        out(m_index.at(s), col) += (between % 2 ? -c : c);
      }
    }
  }
  return out;
}

Matrix WedgePower::group(const Matrix &g) const
{
  const int n = size();
  Matrix out(n, n);
  if (m_k == 0)
  {
    out(0, 0) = 1.0;
    return out;
  }
  Matrix sub(m_k, m_k);
  for (int row = 0; row < n; ++row)
    for (int col = 0; col < n; ++col)
    {
      for (int a = 0; a < m_k; ++a)
        for (int b = 0; b < m_k; ++b)
          sub(a, b) = g(m_subsets[row][a], m_subsets[col][b]);
      out(row, col) = sub.determinant();
    }
  return out;
}

Vector Irrep::apply_slot(const Vector &v, std::size_t slot, const Matrix &a) const
{
  const std::size_t d = static_cast<std::size_t>(a.rows());
  const std::size_t stride = m_stride[slot];
  const std::size_t outer = m_ambient / (d * stride);
  Vector out(v.size());
  Vector x(d);
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t i = 0; i < stride; ++i)
    {
      const std::size_t base = o * d * stride + i;
      for (std::size_t q = 0; q < d; ++q)
        x[q] = v[base + q * stride];
      const Vector y = a * x;
      for (std::size_t q = 0; q < d; ++q)
        out[base + q * stride] = y[q];
    }
  return out;
}

Vector Irrep::ambient_algebra(const Matrix &xi, const Vector &v) const
{
  std::vector<Matrix> images;
  images.reserve(m_powers.size());
  for (const auto &w : m_powers)
    images.push_back(w.algebra(xi));
  Vector out = Vector::Zero(v.size());
  for (std::size_t s = 0; s < m_slots.size(); ++s)
    out += apply_slot(v, s, images[m_slots[s] - 1]);
  return out;
}

Vector Irrep::ambient_group(const Matrix &g, const Vector &v) const
{
  std::vector<Matrix> images;
  images.reserve(m_powers.size());
  for (const auto &w : m_powers)
    images.push_back(w.group(g));
  Vector out = v;
  for (std::size_t s = 0; s < m_slots.size(); ++s)
    out = apply_slot(out, s, images[m_slots[s] - 1]);
  return out;
}

Vector Irrep::v_max() const
{
  Vector e = Vector::Zero(dimension());
  e[0] = 1.0;
  return e;
}

const Matrix &Irrep::generator(const Generator &g) const
{
  auto it = m_generators.find(g);
  if (it == m_generators.end())
    throw DomainError("generator " + g.name() + " not in sl_" + std::to_string(m_spec.M()));
  return it->second;
}

Matrix Irrep::algebra_image(const Matrix &xi) const
{
  const int M = m_spec.M();
  if (xi.rows() != M || xi.cols() != M)
    throw DomainError("algebra_image: expected an M x M matrix");
  // the identity acts on the tensor space by the number of boxes
  const cplx shift = xi.trace() / static_cast<double>(M);
  int boxes = 0;
  for (int k : m_slots)
    boxes += k;
  Matrix traceless = xi - shift * Matrix::Identity(M, M);
  Matrix out = (shift * static_cast<double>(boxes)) * Matrix::Identity(dimension(), dimension());
  for (const auto &[g, c] : m_spec.decompose(traceless, 1e-9))
    out += c * generator(g);
  return out;
}

namespace
{

void check_unimodular(const Matrix &g, int M)
{
  if (g.rows() != M || g.cols() != M)
    throw DomainError("group element has wrong size");
  if (std::abs(g.determinant() - cplx(1.0)) > 1e-10)
    throw DomainError("group element is not in SL_M (det != 1)");
}

} // namespace

Vector Irrep::orbit_vector(const Matrix &g) const
{
  check_unimodular(g, m_spec.M());
  Vector e = Vector::Zero(static_cast<Eigen::Index>(m_ambient));
  e[0] = 1.0;
  return m_basis.adjoint() * ambient_group(g, e);
}

Irrep build_irrep(const AlgebraSpec &spec, const Weight &lambda, const IrrepOptions &options)
{
  const std::uint64_t expected = weyl_dimension(spec, lambda);
  if (expected > options.dimension_cap)
    throw DimensionCapExceeded("irrep " + lambda.str() + " has dimension " + std::to_string(expected) +
                               " above the cap " + std::to_string(options.dimension_cap));
  const int M = spec.M();
  Irrep rep(spec, lambda);
  for (int k = 1; k < M; ++k)
    rep.m_powers.emplace_back(M, k);
  for (int k = 1; k < M; ++k)
    for (int c = 0; c < lambda[k]; ++c)
      rep.m_slots.push_back(k);

  std::size_t ambient = 1;
  for (int k : rep.m_slots)
  {
    ambient *= static_cast<std::size_t>(rep.m_powers[k - 1].size());
    if (ambient > options.ambient_cap)
      throw DimensionCapExceeded("ambient tensor space for " + lambda.str() + " exceeds the cap");
  }
  rep.m_ambient = ambient;
  rep.m_stride.assign(rep.m_slots.size(), 1);
  for (std::size_t s = rep.m_slots.size(); s-- > 1;)
    rep.m_stride[s - 1] = rep.m_stride[s] * static_cast<std::size_t>(rep.m_powers[rep.m_slots[s] - 1].size());

  std::vector<Matrix> lowering;
  for (int k = 1; k < M; ++k)
    lowering.push_back(spec.matrix(Generator::E(k + 1, k)));

  std::vector<Vector> basis;
  Vector vmax = Vector::Zero(static_cast<Eigen::Index>(ambient));
  vmax[0] = 1.0;
  basis.push_back(vmax);
  for (std::size_t next = 0; next < basis.size(); ++next)
  {
    for (const auto &f : lowering)
    {
      Vector w = rep.ambient_algebra(f, basis[next]);
      const double before = w.norm();
      if (before == 0.0)
        continue;
      for (int pass = 0; pass < 2; ++pass)
        for (const auto &b : basis)
          w -= b.dot(w) * b;
      const double after = w.norm();
      /// basis vectors are unit, so cancellation noise is absolute, not relative to before
      if (after > options.rank_tolerance * std::max(1.0, before))
      {
        basis.push_back(w / after);
        if (basis.size() > expected)
          throw Error("irrep construction overshot the Weyl dimension (internal error)");
      }
    }
  }
  if (basis.size() != expected)
    throw Error("irrep construction produced dimension " + std::to_string(basis.size()) + ", expected " +
                std::to_string(expected));

  rep.m_basis.resize(static_cast<Eigen::Index>(ambient), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j)
    rep.m_basis.col(static_cast<Eigen::Index>(j)) = basis[j];

  for (const auto &g : spec.catalog())
  {
    const Matrix xi = spec.matrix(g);
    Matrix image(ambient, basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
      image.col(static_cast<Eigen::Index>(j)) = rep.ambient_algebra(xi, basis[j]);
    rep.m_generators.emplace(g, rep.m_basis.adjoint() * image);
  }
  return rep;
}

Matrix rep_apply(const Irrep &irrep, const AbstractOperator &op)
{
  if (!op.fits(irrep.spec()))
    throw DomainError("operator uses generators outside sl_" + std::to_string(irrep.spec().M()));
  const int n = irrep.dimension();
  Matrix out = Matrix::Zero(n, n);
  for (const auto &[m, c] : op.terms())
  {
    Matrix prod = Matrix::Identity(n, n);
    for (const auto &g : m)
      prod = prod * irrep.generator(g);
    out += c * prod;
  }
  return out;
}

Matrix group_apply(const Irrep &irrep, const Matrix &g)
{
  check_unimodular(g, irrep.spec().M());
  const Matrix &q = irrep.basis();
  Matrix image(q.rows(), q.cols());
  for (Eigen::Index j = 0; j < q.cols(); ++j)
    image.col(j) = irrep.ambient_group(g, q.col(j));
  return q.adjoint() * image;
}

nlohmann::json irrep_to_json(const Irrep &irrep)
{
  nlohmann::json j;
  j["M"] = irrep.spec().M();
  j["lambda"] = irrep.weight().fundamental();
  j["dim"] = irrep.dimension();
  nlohmann::json mats = nlohmann::json::object();
  for (const auto &g : irrep.spec().catalog())
  {
    const Matrix &a = irrep.generator(g);
    nlohmann::json flat = nlohmann::json::array();
    for (Eigen::Index r = 0; r < a.rows(); ++r)
      for (Eigen::Index c = 0; c < a.cols(); ++c)
        flat.push_back({a(r, c).real(), a(r, c).imag()});
    mats[g.name()] = std::move(flat);
  }
  j["matrices"] = std::move(mats);
  return j;
}

std::map<std::string, Matrix> matrices_from_json(const nlohmann::json &j)
{
  const int dim = j.at("dim").get<int>();
  std::map<std::string, Matrix> out;
  for (const auto &[name, flat] : j.at("matrices").items())
  {
    if (flat.size() != static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim))
      throw DomainError("matrix '" + name + "' has the wrong number of entries");
    Matrix a(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c)
      {
        const auto &e = flat.at(static_cast<std::size_t>(r * dim + c));
        a(r, c) = cplx(e.at(0).get<double>(), e.at(1).get<double>());
      }
    out.emplace(name, std::move(a));
  }
  return out;
}

} // namespace clim
