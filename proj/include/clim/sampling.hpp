#ifndef CLIM_SAMPLING_HPP
#define CLIM_SAMPLING_HPP

#include "clim/lie_core.hpp"
#include "clim/orbit_calculus.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace clim
{

using Rng = std::mt19937_64;

/// Uniform in the complex disc of the given radius.
cplx sample_disc(Rng &rng, double radius);

/// Chart points with every active coordinate uniform in the disc; inactive
/// coordinates of a singular weight are zero.
std::vector<OrbitPoint> sample_points(const Weight &lambda, std::size_t count, std::uint64_t seed, double radius = 1.0);

/// Random traceless skew-hermitian M x M matrix (element of su(M)).
Matrix random_su_algebra(int M, Rng &rng);
/// Haar-like random element of SU(M) (QR of a complex Gaussian, phases fixed).
Matrix random_su_group(int M, Rng &rng);
/// Random element of sl_M with Gaussian entries.
Matrix random_sl_algebra(int M, Rng &rng);
Vector random_vector(Eigen::Index n, Rng &rng);

} // namespace clim

#endif
