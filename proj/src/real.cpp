#include "shapebern/real.hpp"

#include <mpfr.h>

namespace shapebern {

Real to_real(const Rational& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.backend().data(), MPFR_RNDN);
  return r;
}

namespace {

// Every finite mpfr value is a dyadic rational; recover it exactly.
Rational mpfr_to_rational(mpfr_srcptr v) {
  if (mpfr_zero_p(v)) return Rational(0);
  Integer mant;
  mpfr_exp_t e = mpfr_get_z_2exp(mant.backend().data(), v);
  if (e >= 0) return Rational(mant << e);
  Integer den = Integer(1) << static_cast<unsigned long>(-e);
  return make_rational(std::move(mant), std::move(den));
}

class MpfrValue {
 public:
  explicit MpfrValue(unsigned bits) { mpfr_init2(v_, static_cast<mpfr_prec_t>(bits)); }
  ~MpfrValue() { mpfr_clear(v_); }
  MpfrValue(const MpfrValue&) = delete;
  MpfrValue& operator=(const MpfrValue&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

}  // namespace

Enclosure log_enclosure(const Rational& q, unsigned bits) {
  if (q <= 0) throw std::domain_error("log_enclosure: argument must be positive");
  if (bits < 8) bits = 8;
  if (q == 1) return Enclosure(Rational(0), Rational(0), bits);
  MpfrValue lo(bits), hi(bits);
  // ln is increasing, so rounding the argument in the same direction as the
  // result keeps the bound valid.
  mpfr_set_q(lo.get(), q.backend().data(), MPFR_RNDD);
  mpfr_log(lo.get(), lo.get(), MPFR_RNDD);
  mpfr_set_q(hi.get(), q.backend().data(), MPFR_RNDU);
  mpfr_log(hi.get(), hi.get(), MPFR_RNDU);
  return Enclosure(mpfr_to_rational(lo.get()), mpfr_to_rational(hi.get()), bits);
}

}  // namespace shapebern
