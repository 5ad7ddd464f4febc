#include "bkd/interval.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace bkd {

namespace {

// RAII scratch value.
struct Scratch {
  explicit Scratch(mpfr_prec_t p) { mpfr_init2(v, p); }
  ~Scratch() { mpfr_clear(v); }
  Scratch(const Scratch&) = delete;
  Scratch& operator=(const Scratch&) = delete;
  mpfr_t v;
};

std::string endpoint_string(mpfr_srcptr x, int digits, mpfr_rnd_t rnd) {
  if (mpfr_zero_p(x)) return "0";
  if (mpfr_inf_p(x)) return mpfr_sgn(x) > 0 ? "inf" : "-inf";
  if (mpfr_nan_p(x)) return "nan";
  mpfr_exp_t exp10 = 0;
  char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<std::size_t>(digits), x, rnd);
  std::string mant(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (!mant.empty() && mant[0] == '-') {
    sign = "-";
    mant.erase(0, 1);
  }
  // mantissa digits d1 d2 ... with value 0.d1d2... * 10^exp10
  std::string out = sign + mant.substr(0, 1);
  if (mant.size() > 1) out += "." + mant.substr(1);
  out += "e" + std::to_string(static_cast<long>(exp10) - 1);
  return out;
}

}  // namespace

Interval::Interval(mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& other) : prec_(other.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : prec_(other.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
  if (this == &other) return *this;
  prec_ = other.prec_;
  mpfr_set_prec(lo_, prec_);
  mpfr_set_prec(hi_, prec_);
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  std::swap(prec_, other.prec_);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

void Interval::set_raw(mpfr_srcptr lo, mpfr_srcptr hi) {
  mpfr_set(lo_, lo, MPFR_RNDD);
  mpfr_set(hi_, hi, MPFR_RNDU);
}

void Interval::check_order() {
  if (mpfr_nan_p(lo_) || mpfr_nan_p(hi_)) throw std::domain_error("Interval: NaN endpoint");
  if (mpfr_cmp(lo_, hi_) > 0) throw std::logic_error("Interval: lo > hi");
}

Interval Interval::from_long(long v, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_si(r.lo_, v, MPFR_RNDD);
  mpfr_set_si(r.hi_, v, MPFR_RNDU);
  return r;
}

Interval Interval::from_double(double v, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_d(r.lo_, v, MPFR_RNDD);
  mpfr_set_d(r.hi_, v, MPFR_RNDU);
  r.check_order();
  return r;
}

Interval Interval::from_mpz(const mpz_class& v, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_mpq(const mpq_class& v, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_q(r.lo_, v.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, v.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_bounds(const mpq_class& lo, const mpq_class& hi, mpfr_prec_t prec) {
  if (lo > hi) throw std::invalid_argument("Interval::from_bounds: lo > hi");
  Interval r(prec);
  mpfr_set_q(r.lo_, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, hi.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, mpfr_prec_t prec) {
  Interval r(prec);
  r.set_raw(lo, hi);
  r.check_order();
  return r;
}

Interval Interval::pi(mpfr_prec_t prec) {
  static std::mutex mu;
  static std::map<mpfr_prec_t, std::unique_ptr<Interval>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[prec];
  if (!slot) {
    slot = std::make_unique<Interval>(prec);
    mpfr_const_pi(slot->lo_, MPFR_RNDD);
    mpfr_const_pi(slot->hi_, MPFR_RNDU);
  }
  return *slot;
}

double Interval::mid_double() const {
  Scratch m(prec_ + 1);
  mpfr_add(m.v, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m.v, m.v, 1, MPFR_RNDN);
  return mpfr_get_d(m.v, MPFR_RNDN);
}

mpq_class Interval::lo_q() const {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), lo_);
  return q;
}

mpq_class Interval::hi_q() const {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), hi_);
  return q;
}

double Interval::width() const {
  Scratch w(prec_);
  mpfr_sub(w.v, hi_, lo_, MPFR_RNDU);
  return mpfr_get_d(w.v, MPFR_RNDU);
}

bool Interval::contains(const mpq_class& x) const {
  return mpfr_cmp_q(lo_, x.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, x.get_mpq_t()) >= 0;
}

bool Interval::contains(const Interval& other) const {
  return mpfr_cmp(lo_, other.lo_) <= 0 && mpfr_cmp(hi_, other.hi_) >= 0;
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(std::max(a.prec_, b.prec_));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(std::max(a.prec_, b.prec_));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

Interval Interval::operator-() const {
  Interval r(prec_);
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  const mpfr_prec_t p = std::max(a.prec_, b.prec_);
  Interval r(p);
  if (mpfr_sgn(a.lo_) >= 0 && mpfr_sgn(b.lo_) >= 0) {
    mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_mul(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }
  Scratch t(p);
  mpfr_srcptr al[2] = {a.lo_, a.hi_};
  mpfr_srcptr bl[2] = {b.lo_, b.hi_};
  bool first = true;
  for (auto x : al) {
    for (auto y : bl) {
      mpfr_mul(t.v, x, y, MPFR_RNDD);
      if (first || mpfr_cmp(t.v, r.lo_) < 0) mpfr_set(r.lo_, t.v, MPFR_RNDD);
      mpfr_mul(t.v, x, y, MPFR_RNDU);
      if (first || mpfr_cmp(t.v, r.hi_) > 0) mpfr_set(r.hi_, t.v, MPFR_RNDU);
      first = false;
    }
  }
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw std::domain_error("Interval: division by an interval containing zero");
  const mpfr_prec_t p = std::max(a.prec_, b.prec_);
  Interval inv(p);
  mpfr_ui_div(inv.lo_, 1, b.hi_, MPFR_RNDD);
  mpfr_ui_div(inv.hi_, 1, b.lo_, MPFR_RNDU);
  return a * inv;
}

Interval sqrt(const Interval& x) {
  if (mpfr_sgn(x.lo_) < 0) throw std::domain_error("Interval sqrt: negative argument");
  Interval r(x.prec_);
  mpfr_sqrt(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

Interval exp(const Interval& x) {
  Interval r(x.prec_);
  mpfr_exp(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

Interval log(const Interval& x) {
  if (!x.certainly_positive()) throw std::domain_error("Interval log: argument not positive");
  Interval r(x.prec_);
  mpfr_log(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_log(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

Interval abs(const Interval& x) {
  if (mpfr_sgn(x.lo_) >= 0) return x;
  if (mpfr_sgn(x.hi_) <= 0) return -x;
  Interval r(x.prec_);
  mpfr_set_zero(r.lo_, 1);
  if (mpfr_cmpabs(x.lo_, x.hi_) > 0) mpfr_neg(r.hi_, x.lo_, MPFR_RNDU);
  else mpfr_set(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

Interval pow(const Interval& x, unsigned e) {
  if (e == 0) return Interval::from_long(1, x.prec_);
  if (mpfr_sgn(x.lo_) >= 0) {
    Interval r(x.prec_);
    mpfr_pow_ui(r.lo_, x.lo_, e, MPFR_RNDD);
    mpfr_pow_ui(r.hi_, x.hi_, e, MPFR_RNDU);
    return r;
  }
  if (mpfr_sgn(x.hi_) <= 0) {
    Interval r = pow(-x, e);
    return e % 2 == 0 ? r : -r;
  }
  // Straddles zero.
  Interval r = pow(abs(x), e);
  if (e % 2 == 0) {
    mpfr_set_zero(r.lo_, 1);
    return r;
  }
  Interval neg = pow(-x, e);
  mpfr_neg(r.lo_, neg.hi_, MPFR_RNDD);
  mpfr_pow_ui(r.hi_, x.hi_, e, MPFR_RNDU);
  return r;
}

Interval square(const Interval& x) { return pow(x, 2); }

Interval hull(const Interval& a, const Interval& b) {
  Interval r(std::max(a.prec_, b.prec_));
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval with_precision(const Interval& x, mpfr_prec_t prec) {
  Interval r(prec);
  r.set_raw(x.lo_, x.hi_);
  return r;
}

Interval widen(const Interval& x, const mpq_class& radius) {
  if (sgn(radius) < 0) throw std::invalid_argument("widen: negative radius");
  Interval r(x.prec_);
  Scratch q(x.prec_);
  mpfr_set_q(q.v, radius.get_mpq_t(), MPFR_RNDU);
  mpfr_sub(r.lo_, x.lo_, q.v, MPFR_RNDD);
  mpfr_add(r.hi_, x.hi_, q.v, MPFR_RNDU);
  return r;
}

bool certainly_less(const Interval& a, const Interval& b) { return mpfr_cmp(a.hi(), b.lo()) < 0; }
bool certainly_less_equal(const Interval& a, const Interval& b) { return mpfr_cmp(a.hi(), b.lo()) <= 0; }

std::string Interval::lo_string(int digits) const { return endpoint_string(lo_, digits, MPFR_RNDD); }
std::string Interval::hi_string(int digits) const { return endpoint_string(hi_, digits, MPFR_RNDU); }

std::string Interval::to_string(int digits) const {
  return "[" + lo_string(digits) + ", " + hi_string(digits) + "]";
}

}  // namespace bkd
