#include "support/map_oracle.hpp"

#include <mpfr.h>

namespace cqz::test {

namespace {

constexpr mpfr_prec_t kPrecision = 256;

// t = c - c^2 from the binary64 component value c.
void logistic_term(mpfr_t out, double c) {
  mpfr_t cc;
  mpfr_init2(cc, kPrecision);
  mpfr_set_d(cc, c, MPFR_RNDN);
  mpfr_sqr(out, cc, MPFR_RNDN);
  mpfr_sub(out, cc, out, MPFR_RNDN);
  mpfr_clear(cc);
}

// Same denominator guard as the library: |d| < 1e-12 becomes +-1e-12.
void guard(mpfr_t d) {
  mpfr_t eps, ad;
  mpfr_init2(eps, kPrecision);
  mpfr_init2(ad, kPrecision);
  mpfr_set_d(eps, 1e-12, MPFR_RNDN);
  mpfr_abs(ad, d, MPFR_RNDN);
  if (mpfr_cmp(ad, eps) < 0) {
    if (mpfr_sgn(d) < 0) {
      mpfr_neg(eps, eps, MPFR_RNDN);
    }
    mpfr_set(d, eps, MPFR_RNDN);
  }
  mpfr_clear(eps);
  mpfr_clear(ad);
}

// frac(param * num / den) rounded to double.
double component(double param, const mpfr_t num, const mpfr_t den) {
  mpfr_t p, r, f;
  mpfr_init2(p, kPrecision);
  mpfr_init2(r, kPrecision);
  mpfr_init2(f, kPrecision);
  mpfr_set_d(p, param, MPFR_RNDN);
  mpfr_mul(r, p, num, MPFR_RNDN);
  mpfr_div(r, r, den, MPFR_RNDN);
  mpfr_floor(f, r);
  mpfr_sub(r, r, f, MPFR_RNDN);
  const double out = mpfr_get_d(r, MPFR_RNDN);
  mpfr_clear(p);
  mpfr_clear(r);
  mpfr_clear(f);
  return out;
}

}  // namespace

OracleState oracle_iterate(const OracleState& state, const OracleKey& key) {
  mpfr_t tx, ty, tz;
  mpfr_init2(tx, kPrecision);
  mpfr_init2(ty, kPrecision);
  mpfr_init2(tz, kPrecision);
  logistic_term(tx, state.x);
  logistic_term(ty, state.y);
  logistic_term(tz, state.z);

  mpfr_t dx, dy, dz;
  mpfr_init2(dx, kPrecision);
  mpfr_init2(dy, kPrecision);
  mpfr_init2(dz, kPrecision);
  mpfr_set(dx, tx, MPFR_RNDN);
  mpfr_set(dy, ty, MPFR_RNDN);
  mpfr_set(dz, tz, MPFR_RNDN);
  guard(dx);
  guard(dy);
  guard(dz);

  OracleState next;
  next.x = component(key.alpha, tx, dy);
  next.y = component(key.beta, ty, dz);
  next.z = component(key.gamma, tz, dx);

  mpfr_clear(tx);
  mpfr_clear(ty);
  mpfr_clear(tz);
  mpfr_clear(dx);
  mpfr_clear(dy);
  mpfr_clear(dz);
  return next;
}

}  // namespace cqz::test
