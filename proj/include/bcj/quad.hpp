#pragma once

// 113-bit scalar for the ill-conditioned pipelines (large response entries,
// monomial moments). Link with quadmath.

#include <limits>

#include <Eigen/Core>
#include <boost/multiprecision/float128.hpp>

namespace bcj {

using quad = boost::multiprecision::float128;

}  // namespace bcj

// Boost 1.74 ships an Eigen adaptor that predates Eigen 3.4's NumTraits
// requirements, so the traits are spelled out here.
namespace Eigen {

template <>
struct NumTraits<bcj::quad> : GenericNumTraits<bcj::quad> {
    using Real = bcj::quad;
    using NonInteger = bcj::quad;
    using Literal = bcj::quad;
    using Nested = bcj::quad;
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
    static Real dummy_precision() { return Real(1e-28); }
    static Real highest() { return (std::numeric_limits<Real>::max)(); }
    static Real lowest() { return std::numeric_limits<Real>::lowest(); }
    static Real infinity() { return std::numeric_limits<Real>::infinity(); }
    static Real quiet_NaN() { return std::numeric_limits<Real>::quiet_NaN(); }
    static int digits10() { return std::numeric_limits<Real>::digits10; }
};

}  // namespace Eigen
