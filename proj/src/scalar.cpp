#include "cellforge/scalar.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

namespace cellforge {

namespace {
constexpr long kRadPrec = 64;

// upper bound of |(re, im)| into out (rounded up)
void hypot_up(mpfr_t out, const mpfr_t re, const mpfr_t im) {
  mpfr_hypot(out, re, im, MPFR_RNDU);
}
void hypot_down(mpfr_t out, const mpfr_t re, const mpfr_t im) {
  mpfr_hypot(out, re, im, MPFR_RNDD);
}

struct Tmp {
  mpfr_t x;
  explicit Tmp(long prec) { mpfr_init2(x, prec); }
  ~Tmp() { mpfr_clear(x); }
  operator mpfr_ptr() { return x; }
  operator mpfr_srcptr() const { return x; }
};
}  // namespace

void Scalar::init(long prec) {
  prec_ = prec;
  mpfr_init2(re_, prec);
  mpfr_init2(im_, prec);
  mpfr_init2(rad_, kRadPrec);
  mpfr_set_zero(re_, 1);
  mpfr_set_zero(im_, 1);
  mpfr_set_zero(rad_, 1);
}

Scalar::Scalar() { init(64); }
Scalar::Scalar(long prec) { init(prec < 2 ? 2 : prec); }

Scalar::Scalar(const Scalar& o) {
  init(o.prec_);
  mpfr_set(re_, o.re_, MPFR_RNDN);
  mpfr_set(im_, o.im_, MPFR_RNDN);
  mpfr_set(rad_, o.rad_, MPFR_RNDU);
}

Scalar::Scalar(Scalar&& o) noexcept {
  prec_ = o.prec_;
  re_[0] = o.re_[0];
  im_[0] = o.im_[0];
  rad_[0] = o.rad_[0];
  // leave o in a destructible state
  mpfr_init2(o.re_, 2);
  mpfr_init2(o.im_, 2);
  mpfr_init2(o.rad_, 2);
}

Scalar& Scalar::operator=(const Scalar& o) {
  if (this == &o) return *this;
  mpfr_set_prec(re_, o.prec_);
  mpfr_set_prec(im_, o.prec_);
  prec_ = o.prec_;
  mpfr_set(re_, o.re_, MPFR_RNDN);
  mpfr_set(im_, o.im_, MPFR_RNDN);
  mpfr_set(rad_, o.rad_, MPFR_RNDU);
  return *this;
}

Scalar& Scalar::operator=(Scalar&& o) noexcept {
  if (this == &o) return *this;
  mpfr_swap(re_, o.re_);
  mpfr_swap(im_, o.im_);
  mpfr_swap(rad_, o.rad_);
  std::swap(prec_, o.prec_);
  return *this;
}

Scalar::~Scalar() {
  mpfr_clear(re_);
  mpfr_clear(im_);
  mpfr_clear(rad_);
}

void Scalar::bump_rad_ulps(int k, int tern_re, int tern_im) {
  // one ulp of x at precision p is 2^{exp(x) - p}; add k of the larger one
  // per inexact component
  for (auto [tern, comp] : {std::pair{tern_re, (mpfr_srcptr)re_},
                            std::pair{tern_im, (mpfr_srcptr)im_}}) {
    if (tern == 0 || mpfr_zero_p(comp)) continue;
    Tmp u(kRadPrec);
    mpfr_set_ui_2exp(u, (unsigned long)k, mpfr_get_exp(comp) - prec_, MPFR_RNDU);
    mpfr_add(rad_, rad_, u, MPFR_RNDU);
  }
}

Scalar Scalar::from_int(long v, long prec) {
  Scalar r(prec);
  mpfr_set_si(r.re_, v, MPFR_RNDN);
  return r;
}

Scalar Scalar::from_rational(long long num, long long den, long prec) {
  if (den == 0) throw DivisionByEnclosedZero();
  Scalar r(prec);
  int t = mpfr_set_sj(r.re_, num, MPFR_RNDN);
  int t2 = mpfr_div_sj(r.re_, r.re_, den, MPFR_RNDN);
  r.bump_rad_ulps(2, t | t2, 0);
  return r;
}

Scalar Scalar::from_double(double re, double im, long prec) {
  Scalar r(prec);
  mpfr_set_d(r.re_, re, MPFR_RNDN);
  mpfr_set_d(r.im_, im, MPFR_RNDN);
  return r;
}

Scalar Scalar::pi(long prec) {
  Scalar r(prec);
  int t = mpfr_const_pi(r.re_, MPFR_RNDN);
  r.bump_rad_ulps(1, t, 0);
  return r;
}

Scalar Scalar::root_of_unity(long ell, long k, long prec) {
  if (ell < 1) throw ArithError("root_of_unity: order must be >= 1");
  long wp = prec + 16;
  Tmp ang(wp), p(wp);
  mpfr_const_pi(p, MPFR_RNDN);
  mpfr_mul_si(ang, p, 2 * k, MPFR_RNDN);
  mpfr_div_si(ang, ang, ell, MPFR_RNDN);
  Scalar r(prec);
  Tmp s(wp), c(wp);
  mpfr_sin_cos(s, c, ang, MPFR_RNDN);
  int tr = mpfr_set(r.re_, c, MPFR_RNDN);
  int ti = mpfr_set(r.im_, s, MPFR_RNDN);
  // |d sin| , |d cos| <= |d ang|; ang error a few ulps at wp, plus rounding here
  Tmp e(kRadPrec);
  mpfr_set_ui_2exp(e, 8, mpfr_get_exp(ang) - wp, MPFR_RNDU);
  mpfr_add(r.rad_, r.rad_, e, MPFR_RNDU);
  r.bump_rad_ulps(2, 1, 1);
  (void)tr;
  (void)ti;
  return r;
}

Scalar Scalar::quantum_integer(long n, long ell, long prec) {
  if (n < 0) throw ArithError("quantum_integer: n must be >= 0");
  if (ell < 3) throw ArithError("quantum_integer: root order must be >= 3");
  long wp = prec + 16;
  // [n]_q = sin(2 pi n / ell) / sin(2 pi / ell)
  auto sin_ball = [&](long mult) {
    Scalar r(prec);
    Tmp p(wp), ang(wp), s(wp);
    mpfr_const_pi(p, MPFR_RNDN);
    mpfr_mul_si(ang, p, 2 * mult, MPFR_RNDN);
    mpfr_div_si(ang, ang, ell, MPFR_RNDN);
    mpfr_sin(s, ang, MPFR_RNDN);
    mpfr_set(r.re_, s, MPFR_RNDN);
    Tmp e(kRadPrec);
    if (!mpfr_zero_p(ang)) {
      mpfr_set_ui_2exp(e, 8, mpfr_get_exp(ang) - wp, MPFR_RNDU);
      mpfr_add(r.rad_, r.rad_, e, MPFR_RNDU);
    }
    r.bump_rad_ulps(2, 1, 0);
    return r;
  };
  Scalar den = sin_ball(1);
  if (!den.excludes_zero()) throw ArithError("quantum_integer: denominator sine not separated from zero");
  return sin_ball(n) / den;
}

Scalar Scalar::operator+(const Scalar& o) const {
  Scalar r(std::max(prec_, o.prec_));
  int tr = mpfr_add(r.re_, re_, o.re_, MPFR_RNDN);
  int ti = mpfr_add(r.im_, im_, o.im_, MPFR_RNDN);
  mpfr_add(r.rad_, rad_, o.rad_, MPFR_RNDU);
  r.bump_rad_ulps(2, tr, ti);
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + o.neg(); }

Scalar Scalar::neg() const {
  Scalar r(*this);
  mpfr_neg(r.re_, r.re_, MPFR_RNDN);
  mpfr_neg(r.im_, r.im_, MPFR_RNDN);
  return r;
}

Scalar Scalar::conj() const {
  Scalar r(*this);
  mpfr_neg(r.im_, r.im_, MPFR_RNDN);
  return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
  Scalar r(std::max(prec_, o.prec_));
  // re = a.re*b.re - a.im*b.im ; im = a.re*b.im + a.im*b.re (single roundings)
  int tr = mpfr_fmms(r.re_, re_, o.re_, im_, o.im_, MPFR_RNDN);
  int ti = mpfr_fmma(r.im_, re_, o.im_, im_, o.re_, MPFR_RNDN);
  // |a| rb + |b| ra + ra rb
  Tmp ua(kRadPrec), ub(kRadPrec), t(kRadPrec);
  hypot_up(ua, re_, im_);
  hypot_up(ub, o.re_, o.im_);
  mpfr_mul(t, ua, o.rad_, MPFR_RNDU);
  mpfr_add(r.rad_, r.rad_, t, MPFR_RNDU);
  mpfr_mul(t, ub, rad_, MPFR_RNDU);
  mpfr_add(r.rad_, r.rad_, t, MPFR_RNDU);
  mpfr_mul(t, rad_, o.rad_, MPFR_RNDU);
  mpfr_add(r.rad_, r.rad_, t, MPFR_RNDU);
  r.bump_rad_ulps(2, tr, ti);
  return r;
}

Scalar Scalar::inv() const {
  // lower bound for |z| over the ball
  Tmp dlo(kRadPrec), L(kRadPrec);
  hypot_down(dlo, re_, im_);
  mpfr_sub(L, dlo, rad_, MPFR_RNDD);
  if (!(mpfr_sgn(L) > 0)) throw DivisionByEnclosedZero();
  Scalar r(prec_);
  // midpoint: conj(m)/|m|^2
  Tmp n(prec_ + 8);
  int tn = mpfr_fmma(n, re_, re_, im_, im_, MPFR_RNDN);
  int tr = mpfr_div(r.re_, re_, n, MPFR_RNDN);
  Tmp negim(prec_);
  mpfr_neg(negim, im_, MPFR_RNDN);
  int ti = mpfr_div(r.im_, negim, n, MPFR_RNDN);
  // radius: rad / (|m| * L) plus midpoint roundings
  Tmp t(kRadPrec);
  mpfr_mul(t, dlo, L, MPFR_RNDD);
  mpfr_div(t, rad_, t, MPFR_RNDU);
  mpfr_add(r.rad_, r.rad_, t, MPFR_RNDU);
  r.bump_rad_ulps(4, tr | tn, ti | tn);
  return r;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inv(); }

Scalar Scalar::sqrt() const {
  // reject enclosures touching the closed negative real axis (incl. zero)
  Tmp absre(kRadPrec), absim(kRadPrec);
  mpfr_abs(absre, re_, MPFR_RNDD);
  mpfr_abs(absim, im_, MPFR_RNDD);
  bool right_half = mpfr_sgn(re_) > 0 && mpfr_cmp(absre, rad_) > 0;
  bool off_axis = mpfr_cmp(absim, rad_) > 0;
  if (!right_half && !off_axis) throw BranchCutError();

  Tmp dlo(kRadPrec), L(kRadPrec);
  hypot_down(dlo, re_, im_);
  mpfr_sub(L, dlo, rad_, MPFR_RNDD);
  if (!(mpfr_sgn(L) > 0)) throw BranchCutError();

  long wp = prec_ + 16;
  Scalar r(prec_);
  if (mpfr_zero_p(im_) && mpfr_sgn(re_) > 0) {
    int tr = mpfr_sqrt(r.re_, re_, MPFR_RNDN);
    r.bump_rad_ulps(2, tr, 0);
  } else {
    // w = sqrt((|z|+|re|)/2), then split by sign of re
    Tmp hyp(wp), t(wp), w(wp);
    mpfr_hypot(hyp, re_, im_, MPFR_RNDN);
    mpfr_abs(t, re_, MPFR_RNDN);
    mpfr_add(t, hyp, t, MPFR_RNDN);
    mpfr_div_ui(t, t, 2, MPFR_RNDN);
    mpfr_sqrt(w, t, MPFR_RNDN);
    Tmp half(wp);
    if (mpfr_sgn(re_) >= 0) {
      int tr = mpfr_set(r.re_, w, MPFR_RNDN);
      mpfr_mul_ui(half, w, 2, MPFR_RNDN);
      Tmp q(wp);
      mpfr_div(q, im_, half, MPFR_RNDN);
      int ti = mpfr_set(r.im_, q, MPFR_RNDN);
      r.bump_rad_ulps(6, tr | 1, ti | 1);
    } else {
      mpfr_mul_ui(half, w, 2, MPFR_RNDN);
      Tmp q(wp);
      mpfr_abs(q, im_, MPFR_RNDN);
      mpfr_div(q, q, half, MPFR_RNDN);
      int tr = mpfr_set(r.re_, q, MPFR_RNDN);
      int ti;
      if (mpfr_sgn(im_) >= 0) {
        ti = mpfr_set(r.im_, w, MPFR_RNDN);
      } else {
        Tmp negw(wp);
        mpfr_neg(negw, w, MPFR_RNDN);
        ti = mpfr_set(r.im_, negw, MPFR_RNDN);
      }
      r.bump_rad_ulps(6, tr | 1, ti | 1);
    }
  }
  // |sqrt(z1)-sqrt(z2)| <= |z1-z2| / (2 sqrt(min|z|))
  Tmp sl(kRadPrec), t2(kRadPrec);
  mpfr_sqrt(sl, L, MPFR_RNDD);
  mpfr_mul_ui(sl, sl, 2, MPFR_RNDD);
  mpfr_div(t2, rad_, sl, MPFR_RNDU);
  mpfr_add(r.rad_, r.rad_, t2, MPFR_RNDU);
  return r;
}

Scalar Scalar::pow(long k) const {
  if (k < 0) return inv().pow(-k);
  Scalar acc = Scalar::from_int(1, prec_);
  Scalar base(*this);
  unsigned long e = (unsigned long)k;
  while (e) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

Scalar Scalar::abs() const {
  Scalar r(prec_);
  int tr = mpfr_hypot(r.re_, re_, im_, MPFR_RNDN);
  mpfr_set(r.rad_, rad_, MPFR_RNDU);
  r.bump_rad_ulps(2, tr, 0);
  return r;
}

double Scalar::mid_re() const { return mpfr_get_d(re_, MPFR_RNDN); }
double Scalar::mid_im() const { return mpfr_get_d(im_, MPFR_RNDN); }

double Scalar::abs_upper_double() const {
  Tmp u(kRadPrec);
  hypot_up(u, re_, im_);
  mpfr_add(u, u, rad_, MPFR_RNDU);
  return mpfr_get_d(u, MPFR_RNDU);
}

double Scalar::radius_log2() const {
  if (mpfr_zero_p(rad_)) return -HUGE_VAL;
  Tmp l(kRadPrec);
  mpfr_log2(l, rad_, MPFR_RNDU);
  return mpfr_get_d(l, MPFR_RNDU);
}

bool Scalar::certifies_zero(long tol_log2) const {
  Tmp u(kRadPrec), tol(kRadPrec);
  hypot_up(u, re_, im_);
  mpfr_add(u, u, rad_, MPFR_RNDU);
  mpfr_set_ui_2exp(tol, 1, tol_log2, MPFR_RNDD);
  return mpfr_cmp(u, tol) < 0;
}

bool Scalar::excludes_zero() const {
  Tmp l(kRadPrec);
  hypot_down(l, re_, im_);
  mpfr_sub(l, l, rad_, MPFR_RNDD);
  return mpfr_sgn(l) > 0;
}

bool Scalar::certainly_greater(long log2bound) const {
  Tmp l(kRadPrec), b(kRadPrec);
  hypot_down(l, re_, im_);
  mpfr_sub(l, l, rad_, MPFR_RNDD);
  mpfr_set_ui_2exp(b, 1, log2bound, MPFR_RNDU);
  return mpfr_cmp(l, b) > 0;
}

bool Scalar::is_real_certain() const {
  return mpfr_zero_p(im_) && mpfr_zero_p(rad_);
}

std::string Scalar::to_string(int digits) const {
  char* s = nullptr;
  int n = mpfr_asprintf(&s, "%.*Rg", digits, re_);
  std::string out = n >= 0 ? s : "?";
  mpfr_free_str(s);
  if (!mpfr_zero_p(im_)) {
    char* si = nullptr;
    n = mpfr_asprintf(&si, "%.*Rg", digits, im_);
    out += (mpfr_sgn(im_) >= 0 ? " + " : " ");  // negative sign comes with the number
    out += (n >= 0 ? si : "?");
    out += "i";
    mpfr_free_str(si);
  }
  if (!mpfr_zero_p(rad_)) {
    char* sr = nullptr;
    n = mpfr_asprintf(&sr, "%.2Re", rad_);
    out += " +/- ";
    out += (n >= 0 ? sr : "?");
    mpfr_free_str(sr);
  }
  return out;
}

void Scalar::get_mid(mpfr_t out_re, mpfr_t out_im) const {
  mpfr_set(out_re, re_, MPFR_RNDN);
  mpfr_set(out_im, im_, MPFR_RNDN);
}

}  // namespace cellforge
