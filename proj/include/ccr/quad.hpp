#pragma once

// Quad-precision (binary128) scalars for the numeric templates. Needs GNU extensions and
// libquadmath.

#include <boost/multiprecision/complex128.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/float128.hpp>

#include "ccr/numeric.hpp"

#include <limits>

namespace ccr {

using Quad = boost::multiprecision::float128;
using QuadComplex = boost::multiprecision::complex128;

template <>
struct complex_of<Quad> {
  using type = QuadComplex;
};

}  // namespace ccr

// The generic boost traits predate Eigen 3.4 and lack infinity()/quiet_NaN().
namespace Eigen {

template <>
struct NumTraits<ccr::Quad> : GenericNumTraits<ccr::Quad> {
  using Real = ccr::Quad;
  using NonInteger = ccr::Quad;
  using Literal = ccr::Quad;
  using Nested = ccr::Quad;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 8
  };
  static Real epsilon() { return std::numeric_limits<Real>::epsilon(); }
  static Real dummy_precision() { return 1000 * epsilon(); }
  static Real highest() { return (std::numeric_limits<Real>::max)(); }
  static Real lowest() { return -(std::numeric_limits<Real>::max)(); }
  static Real infinity() { return std::numeric_limits<Real>::infinity(); }
  static Real quiet_NaN() { return std::numeric_limits<Real>::quiet_NaN(); }
  static int digits10() { return std::numeric_limits<Real>::digits10; }
  static int digits() { return std::numeric_limits<Real>::digits; }
};

template <>
struct NumTraits<ccr::QuadComplex> : GenericNumTraits<ccr::QuadComplex> {
  using Real = ccr::Quad;
  using NonInteger = ccr::QuadComplex;
  using Literal = ccr::Quad;
  using Nested = ccr::QuadComplex;
  enum {
    IsComplex = 1,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 8,
    MulCost = 32
  };
  static Real epsilon() { return std::numeric_limits<Real>::epsilon(); }
  static Real dummy_precision() { return 1000 * epsilon(); }
  static ccr::QuadComplex highest() { return (std::numeric_limits<Real>::max)(); }
  static ccr::QuadComplex lowest() { return -(std::numeric_limits<Real>::max)(); }
  static ccr::QuadComplex infinity() { return std::numeric_limits<Real>::infinity(); }
  static ccr::QuadComplex quiet_NaN() { return std::numeric_limits<Real>::quiet_NaN(); }
  static int digits10() { return std::numeric_limits<Real>::digits10; }
  static int digits() { return std::numeric_limits<Real>::digits; }
};

}  // namespace Eigen
