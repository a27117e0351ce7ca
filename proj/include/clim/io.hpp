#ifndef CLIM_IO_HPP
#define CLIM_IO_HPP

#include "clim/classical_limit.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace clim
{

/// Complex numbers travel as [re, im].
nlohmann::json complex_to_json(cplx z);
cplx complex_from_json(const nlohmann::json &j);

/// {"x_2_1": [re, im], ...}; missing coordinates are zero.
nlohmann::json point_to_json(const OrbitPoint &p);
OrbitPoint point_from_json(int M, const nlohmann::json &j);
/// A single point object or an array of them.
std::vector<OrbitPoint> points_from_json(int M, const nlohmann::json &j);

struct LimitRun
{
  std::string hamiltonian;
  Weight weight;
  std::vector<OrbitPoint> points;
  std::vector<ConvergenceReport> reports;
  bool passed() const;
};

nlohmann::json limit_to_json(const LimitRun &run);
/// point,n,value_re,value_im,error,limit_re,limit_im with %.17g floats.
std::string limit_to_csv(const LimitRun &run);

} // namespace clim

#endif
