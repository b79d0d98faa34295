#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <sstream>
#include <string>

#include "curvedef/error.hpp"

namespace curvedef {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rat& r) { return r.template convert_to<double>(); }

/// Exact Gaussian rational a + b*i. All arithmetic is exact; this is the
/// coefficient field for every polynomial whose structure (vanishing orders,
/// Smith form, divisibility) must hold on the nose rather than to tolerance.
struct GaussRat {
  Rat re{0};
  Rat im{0};

  GaussRat() = default;
  GaussRat(int v) : re(v) {}            // NOLINT(google-explicit-constructor)
  GaussRat(const Rat& r) : re(r) {}     // NOLINT(google-explicit-constructor)
  GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  static GaussRat i() { return GaussRat(Rat(0), Rat(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  GaussRat operator-() const { return GaussRat(-re, -im); }
  GaussRat conj() const { return GaussRat(re, -im); }

  GaussRat& operator+=(const GaussRat& o) { re += o.re; im += o.im; return *this; }
  GaussRat& operator-=(const GaussRat& o) { re -= o.re; im -= o.im; return *this; }
  GaussRat& operator*=(const GaussRat& o) {
    Rat r = re * o.re - im * o.im;
    Rat i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  GaussRat& operator/=(const GaussRat& o) {
    require(!o.is_zero(), ErrKind::InvalidInput, "division by zero GaussRat");
    Rat n = o.re * o.re + o.im * o.im;
    Rat r = (re * o.re + im * o.im) / n;
    Rat i = (im * o.re - re * o.im) / n;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }

  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
  friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

  GaussRat inv() const { return GaussRat(1) / *this; }

  std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

  std::string str() const {
    std::ostringstream os;
    if (im == 0) {
      os << re;
    } else if (re == 0) {
      os << im << "i";
    } else {
      os << re << (im > 0 ? "+" : "") << im << "i";
    }
    return os.str();
  }
};

inline std::ostream& operator<<(std::ostream& os, const GaussRat& g) { return os << g.str(); }

/// Nearest rational with the given power-of-two denominator.
inline Rat rationalize(double x, int bits = 40) {
  const double scale = std::ldexp(1.0, bits);
  return Rat(BigInt(std::llround(x * scale)), BigInt(1) << bits);
}

inline GaussRat rationalize(std::complex<double> x, int bits = 40) {
  return GaussRat(rationalize(x.real(), bits), rationalize(x.imag(), bits));
}

}  // namespace curvedef
