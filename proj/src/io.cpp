#include "clim/io.hpp"

#include <algorithm>
#include <cstdio>

namespace clim
{

nlohmann::json complex_to_json(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

cplx complex_from_json(const nlohmann::json &j)
{
  if (j.is_number())
    return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw DomainError("expected a number or [re, im], got " + j.dump());
}

nlohmann::json point_to_json(const OrbitPoint &p)
{
  nlohmann::json out = nlohmann::json::object();
  for (const auto &pos : lower_positions(p.M()))
    out[pos.name()] = complex_to_json(p.x(pos.i, pos.j));
  return out;
}

OrbitPoint point_from_json(int M, const nlohmann::json &j)
{
  if (!j.is_object())
    throw DomainError("a point must be an object of coordinates");
  std::map<std::string, cplx> named;
  for (const auto &[key, value] : j.items())
    named[key] = complex_from_json(value);
  return OrbitPoint::from_map(M, named);
}

std::vector<OrbitPoint> points_from_json(int M, const nlohmann::json &j)
{
  std::vector<OrbitPoint> out;
  if (j.is_array())
    for (const auto &item : j)
      out.push_back(point_from_json(M, item));
  else
    out.push_back(point_from_json(M, j));
  if (out.empty())
    throw DomainError("no points given");
  return out;
}

bool LimitRun::passed() const
{
  return std::all_of(reports.begin(), reports.end(), [](const ConvergenceReport &r) { return r.passed; });
}

nlohmann::json limit_to_json(const LimitRun &run)
{
  nlohmann::json points = nlohmann::json::array(), table = nlohmann::json::array(), limits = nlohmann::json::array(),
                 fits = nlohmann::json::array(), warnings = nlohmann::json::array();
  for (std::size_t p = 0; p < run.reports.size(); ++p)
  {
    const auto &r = run.reports[p];
    points.push_back(point_to_json(run.points[p]));
    for (std::size_t i = 0; i < r.n.size(); ++i)
      table.push_back({{"point", p}, {"n", r.n[i]}, {"value", complex_to_json(r.values[i])}, {"error", r.errors[i]}});
    limits.push_back(complex_to_json(r.limit));
    fits.push_back({{"exponent", r.exponent}, {"residual", r.fit_residual}, {"valid", r.fit_valid}, {"passed", r.passed}});
    if (!r.warning.empty())
      warnings.push_back({{"point", p}, {"message", r.warning}});
  }
  return {{"hamiltonian", run.hamiltonian},
          {"weight", run.weight.fundamental()},
          {"points", points},
          {"table", table},
          {"limit", limits},
          {"fit", fits},
          {"warnings", warnings},
          {"passed", run.passed()}};
}

std::string limit_to_csv(const LimitRun &run)
{
  std::string out = "point,n,value_re,value_im,error,limit_re,limit_im\n";
  char buf[256];
  for (std::size_t p = 0; p < run.reports.size(); ++p)
  {
    const auto &r = run.reports[p];
    for (std::size_t i = 0; i < r.n.size(); ++i)
    {
      std::snprintf(buf, sizeof buf, "%zu,%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", p, r.n[i], r.values[i].real(),
                    r.values[i].imag(), r.errors[i], r.limit.real(), r.limit.imag());
      out += buf;
    }
  }
  return out;
}

} // namespace clim
