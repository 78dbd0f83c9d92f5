#pragma once

#include <mpfr.h>

#include <stdexcept>
#include <string>

namespace cellforge {

struct ArithError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DivisionByEnclosedZero : ArithError {
  DivisionByEnclosedZero() : ArithError("division by an enclosure containing zero") {}
};
struct BranchCutError : ArithError {
  BranchCutError() : ArithError("sqrt argument enclosure touches the branch cut") {}
};
struct PrecisionError : ArithError {
  using ArithError::ArithError;
};

/// Certified complex ball: midpoint (re, im) at a fixed binary precision plus
/// an absolute error radius. Every operation rounds the radius outward, so the
/// true value of any expression stays inside the enclosure.
class Scalar {
 public:
  Scalar();                                // exact 0 at 64 bits
  explicit Scalar(long prec);              // exact 0 at given precision
  Scalar(const Scalar&);
  Scalar(Scalar&&) noexcept;
  Scalar& operator=(const Scalar&);
  Scalar& operator=(Scalar&&) noexcept;
  ~Scalar();

  static Scalar from_int(long v, long prec);
  static Scalar from_rational(long long num, long long den, long prec);
  static Scalar from_double(double re, double im, long prec);  // exact double embed
  /// e^{2 pi i k / ell}
  static Scalar root_of_unity(long ell, long k, long prec);
  /// quantum integer [n]_q at q = e^{2 pi i / ell}; real-valued
  static Scalar quantum_integer(long n, long ell, long prec);
  /// pi as a real ball
  static Scalar pi(long prec);

  long precision() const { return prec_; }

  Scalar operator+(const Scalar&) const;
  Scalar operator-(const Scalar&) const;
  Scalar operator*(const Scalar&) const;
  Scalar operator/(const Scalar&) const;
  Scalar neg() const;
  Scalar conj() const;
  Scalar inv() const;           // throws DivisionByEnclosedZero
  Scalar sqrt() const;          // principal branch; throws BranchCutError
  Scalar pow(long k) const;
  /// |z| as a real ball
  Scalar abs() const;

  /// tight double approximations of the midpoint
  double mid_re() const;
  double mid_im() const;
  /// rounded-up double bound for |midpoint| + radius
  double abs_upper_double() const;
  /// log2 of an upper bound on the radius (HUGE_VAL-safe); -inf when radius = 0
  double radius_log2() const;

  /// |midpoint| + radius < 2^tol_log2
  bool certifies_zero(long tol_log2 = -100) const;
  /// |midpoint| - radius > 0 : the enclosure excludes zero
  bool excludes_zero() const;
  /// |midpoint| - radius > 2^log2bound
  bool certainly_greater(long log2bound) const;
  bool is_real_certain() const;   // im ball is exactly zero-centered with 0 radius

  std::string to_string(int digits = 18) const;

  /// access for tests / io
  void get_mid(mpfr_t out_re, mpfr_t out_im) const;

 private:
  friend class ScalarOps;
  mpfr_t re_, im_;   // midpoint at prec_
  mpfr_t rad_;       // radius, 64-bit, always rounded up
  long prec_;

  void init(long prec);
  // add k ulps of the current midpoint magnitude to rad_ (per-component)
  void bump_rad_ulps(int k, int tern_re, int tern_im);
};

}  // namespace cellforge
