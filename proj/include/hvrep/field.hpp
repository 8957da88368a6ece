#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>

namespace hvrep {

// The two coefficient fields the library works over.  Exact arithmetic uses
// arbitrary-precision rationals; numeric arithmetic uses complex doubles.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;
using Complex = std::complex<double>;

template <class K>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& v) { return v == 0; }
  static double approx_abs(const Rational& v) {
    return std::abs(v.convert_to<double>());
  }
};

template <>
struct FieldTraits<Complex> {
  static constexpr bool exact = false;
  static bool is_zero(const Complex& v) { return v.real() == 0.0 && v.imag() == 0.0; }
  static double approx_abs(const Complex& v) { return std::abs(v); }
};

inline std::string rational_str(const Rational& v) {
  return numerator(v).str() + "/" + denominator(v).str();
}

// Deterministic random source.  mt19937_64 has a standard-specified output
// sequence, and the raw-bits-to-double conversion below avoids
// std::uniform_real_distribution (whose algorithm is implementation-defined),
// so streams are reproducible across platforms for a fixed seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t raw() { return gen_(); }

  // Uniform in [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // Uniform on the unit circle.
  Complex unit() {
    double t = 2.0 * 3.14159265358979323846 * uniform();
    return Complex(std::cos(t), std::sin(t));
  }

 private:
  std::mt19937_64 gen_;
};

// FNV-1a 64-bit hash, used to fingerprint input files in run reports.
inline std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace hvrep
