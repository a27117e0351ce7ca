#ifndef CLIM_TEST_UTIL_HPP
#define CLIM_TEST_UTIL_HPP

#include "clim/lie_core.hpp"
#include "clim/orbit_calculus.hpp"

#include <doctest.h>

#include <complex>

namespace clim::test
{

/// The SU(3) sample point used throughout: (x21, x31, x32) = (1/2, -1/4, 1).
inline OrbitPoint p0() { return OrbitPoint(3, {0.5, -0.25, 1.0}); }

inline double max_abs(const Matrix &a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

#define CHECK_CLOSE(a, b, tol) CHECK(std::abs(::clim::cplx(a) - ::clim::cplx(b)) <= (tol))
#define REQUIRE_CLOSE(a, b, tol) REQUIRE(std::abs(::clim::cplx(a) - ::clim::cplx(b)) <= (tol))

} // namespace clim::test

#endif
