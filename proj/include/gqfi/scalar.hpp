#pragma once

#include <complex>
#include <limits>

#include <boost/multiprecision/complex128.hpp>
#include <boost/multiprecision/float128.hpp>
#include <Eigen/Core>

namespace gqfi {
using quad = boost::multiprecision::float128;
using cquad = boost::multiprecision::complex128;
}  // namespace gqfi

// Boost 1.74 ships an Eigen adaptor that predates Eigen 3.4, so the traits
// for the two quad types are spelled out here.
namespace Eigen {
template <>
struct NumTraits<gqfi::quad> : GenericNumTraits<gqfi::quad> {
    typedef gqfi::quad Real;
    typedef gqfi::quad NonInteger;
    typedef gqfi::quad Nested;
    typedef gqfi::quad Literal;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 2,
        AddCost = 8,
        MulCost = 16
    };
    static Real epsilon() { return std::numeric_limits<Real>::epsilon(); }
    static Real dummy_precision() { return Real(1e-28); }
    static Real highest() { return (std::numeric_limits<Real>::max)(); }
    static Real lowest() { return -(std::numeric_limits<Real>::max)(); }
    static Real infinity() { return std::numeric_limits<Real>::infinity(); }
    static Real quiet_NaN() { return std::numeric_limits<Real>::quiet_NaN(); }
    static int digits10() { return std::numeric_limits<Real>::digits10; }
};

template <>
struct NumTraits<gqfi::cquad> : GenericNumTraits<gqfi::cquad> {
    typedef gqfi::quad Real;
    typedef gqfi::cquad NonInteger;
    typedef gqfi::cquad Nested;
    typedef gqfi::cquad Literal;
    enum {
        IsComplex = 1,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 4,
        AddCost = 16,
        MulCost = 64
    };
    static Real epsilon() { return std::numeric_limits<Real>::epsilon(); }
    static Real dummy_precision() { return Real(1e-28); }
    static gqfi::cquad highest() { return gqfi::cquad((std::numeric_limits<Real>::max)()); }
    static gqfi::cquad lowest() { return gqfi::cquad(-(std::numeric_limits<Real>::max)()); }
    static gqfi::cquad infinity() { return gqfi::cquad(std::numeric_limits<Real>::infinity()); }
    static gqfi::cquad quiet_NaN() { return gqfi::cquad(std::numeric_limits<Real>::quiet_NaN()); }
    static int digits10() { return std::numeric_limits<Real>::digits10; }
};

template <>
struct ScalarBinaryOpTraits<gqfi::quad, gqfi::cquad> {
    typedef gqfi::cquad ReturnType;
};
template <>
struct ScalarBinaryOpTraits<gqfi::cquad, gqfi::quad> {
    typedef gqfi::cquad ReturnType;
};
}  // namespace Eigen

#include <Eigen/Dense>

namespace gqfi {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

template <class R>
struct complex_of;
template <>
struct complex_of<double> {
    using type = std::complex<double>;
};
template <>
struct complex_of<quad> {
    using type = cquad;
};

template <class R>
using Complex = typename complex_of<R>::type;
template <class R>
using MatC = Eigen::Matrix<Complex<R>, Eigen::Dynamic, Eigen::Dynamic>;
template <class R>
using VecC = Eigen::Matrix<Complex<R>, Eigen::Dynamic, 1>;

using QMat = MatC<quad>;

inline double to_double(double x) { return x; }
inline double to_double(const quad& x) { return x.convert_to<double>(); }
inline cplx to_double(const cplx& z) { return z; }
inline cplx to_double(const cquad& z) { return {to_double(z.real()), to_double(z.imag())}; }

template <class R>
MatC<R> cast_matrix(const CMat& m) {
    MatC<R> out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out(i, j) = Complex<R>(R(m(i, j).real()), R(m(i, j).imag()));
    return out;
}

template <class R>
CMat to_double_matrix(const MatC<R>& m) {
    CMat out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
    return out;
}

// largest entry modulus, the norm used for every residual in the library
template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
    double best = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            using std::abs;
            double v = to_double(abs(m(i, j)));
            if (v > best) best = v;
        }
    return best;
}

}  // namespace gqfi
