#include "bkd/polynomial.hpp"

#include <mpfr.h>
#include <json.hpp>

#include <algorithm>
#include <map>
#include <sstream>

namespace bkd {

PolyQ::PolyQ(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

PolyQ PolyQ::monomial(Rational c, unsigned degree) {
  std::vector<Rational> v(degree + 1, Rational(0));
  v[degree] = std::move(c);
  return PolyQ(std::move(v));
}

void PolyQ::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

const Rational& PolyQ::leading() const {
  if (coeffs_.empty()) throw std::domain_error("PolyQ: zero polynomial has no leading coefficient");
  return coeffs_.back();
}

Rational PolyQ::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

PolyQ PolyQ::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return PolyQ(std::move(d));
}

PolyQ PolyQ::primitive() const {
  if (is_zero()) return {};
  mpz_class den_lcm = 1;
  for (const auto& c : coeffs_) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> ints;
  ints.reserve(coeffs_.size());
  mpz_class g = 0;
  for (const auto& c : coeffs_) {
    mpz_class v = c.get_num() * (den_lcm / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    ints.push_back(std::move(v));
  }
  std::vector<Rational> out;
  out.reserve(ints.size());
  for (auto& v : ints) {
    mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    out.emplace_back(v);
  }
  return PolyQ(std::move(out));
}

PolyQ operator+(const PolyQ& a, const PolyQ& b) {
  std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
  return PolyQ(std::move(v));
}

PolyQ PolyQ::operator-() const {
  PolyQ r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

PolyQ operator-(const PolyQ& a, const PolyQ& b) { return a + (-b); }

PolyQ operator*(const PolyQ& a, const PolyQ& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return PolyQ(std::move(v));
}

PolyQ operator*(const Rational& s, const PolyQ& p) {
  std::vector<Rational> v = p.coeffs_;
  for (auto& c : v) c *= s;
  return PolyQ(std::move(v));
}

void PolyQ::divmod(const PolyQ& a, const PolyQ& b, PolyQ& quot, PolyQ& rem) {
  if (b.is_zero()) throw std::domain_error("PolyQ: division by zero polynomial");
  std::vector<Rational> r = a.coeffs_;
  const int db = b.degree();
  const int da = a.degree();
  std::vector<Rational> q(da >= db ? static_cast<std::size_t>(da - db + 1) : 0, Rational(0));
  const Rational& lb = b.leading();
  for (int i = da; i >= db; --i) {
    const Rational f = r[static_cast<std::size_t>(i)] / lb;
    if (sgn(f) == 0) continue;
    q[static_cast<std::size_t>(i - db)] = f;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= f * b.coeffs_[static_cast<std::size_t>(j)];
  }
  quot = PolyQ(std::move(q));
  rem = PolyQ(std::move(r));
}

PolyQ PolyQ::gcd(const PolyQ& a, const PolyQ& b) {
  PolyQ x = a.primitive(), y = b.primitive();
  while (!y.is_zero()) {
    PolyQ q, r;
    divmod(x, y, q, r);
    x = std::move(y);
    y = r.primitive();
  }
  if (x.is_zero()) return x;
  return (Rational(1) / x.leading()) * x;
}

std::string PolyQ::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeffs_[static_cast<std::size_t>(i)];
    if (sgn(c) == 0) continue;
    if (!first) os << (sgn(c) > 0 ? " + " : " - ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    const Rational mag = abs(c);
    if (i == 0 || mag != 1) os << mag.get_str() << (i >= 1 ? "*" : "");
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

const Rational& ExtendedRational::value() const {
  if (kind_ != Kind::Finite) throw std::logic_error("ExtendedRational: infinite point has no value");
  return value_;
}

std::string ExtendedRational::to_string() const {
  switch (kind_) {
    case Kind::NegInf: return "-inf";
    case Kind::PosInf: return "+inf";
    default: return value_.get_str();
  }
}

SturmSequence::SturmSequence(const PolyQ& p) {
  if (p.is_zero()) throw std::invalid_argument("SturmSequence: zero polynomial");
  chain_.push_back(p.primitive());
  PolyQ d = p.derivative();
  if (d.is_zero()) return;
  chain_.push_back(d.primitive());
  while (true) {
    PolyQ q, r;
    PolyQ::divmod(chain_[chain_.size() - 2], chain_.back(), q, r);
    if (r.is_zero()) break;
    chain_.push_back((-r).primitive());
  }
}

int SturmSequence::variations(const ExtendedRational& x) const {
  int changes = 0;
  int last = 0;
  for (const auto& poly : chain_) {
    int s;
    if (x.is_finite()) {
      s = poly.sign_at(x.value());
    } else {
      s = sgn(poly.leading());
      if (x.is_neg_inf() && poly.degree() % 2 == 1) s = -s;
    }
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int SturmSequence::count(const ExtendedRational& a, const ExtendedRational& b) const {
  if (a.is_pos_inf() || b.is_neg_inf() || (a.is_finite() && b.is_finite() && !(a.value() < b.value())))
    throw std::invalid_argument("sturm_count: need a < b");
  return variations(a) - variations(b);
}

int sturm_count(const PolyQ& p, const ExtendedRational& a, const ExtendedRational& b) {
  return SturmSequence(p).count(a, b);
}

int real_root_count_with_multiplicity(const PolyQ& p) {
  if (p.is_zero()) throw std::invalid_argument("real_root_count: zero polynomial");
  // Yun's squarefree decomposition p = prod f_i^i.
  int total = 0;
  PolyQ a = p.primitive();
  PolyQ b = a.derivative();
  if (b.is_zero()) return 0;
  PolyQ c = PolyQ::gcd(a, b);
  PolyQ q, r;
  PolyQ::divmod(a, c, q, r);
  PolyQ w = q;
  PolyQ::divmod(b, c, q, r);
  PolyQ y = q;
  int i = 1;
  while (w.degree() > 0) {
    PolyQ z = y - w.derivative();
    PolyQ g = z.is_zero() ? w : PolyQ::gcd(w, z);
    if (g.degree() > 0)
      total += i * sturm_count(g, ExtendedRational::neg_inf(), ExtendedRational::pos_inf());
    PolyQ::divmod(w, g, q, r);
    w = q;
    if (z.is_zero()) break;
    PolyQ::divmod(z, g, q, r);
    y = q;
    ++i;
  }
  return total;
}

PiBracket PiBracket::from_precision(long bits) {
  mpfr_t lo, hi;
  mpfr_init2(lo, bits);
  mpfr_init2(hi, bits);
  mpfr_const_pi(lo, MPFR_RNDD);
  mpfr_const_pi(hi, MPFR_RNDU);
  PiBracket b;
  mpfr_get_q(b.lo.get_mpq_t(), lo);
  mpfr_get_q(b.hi.get_mpq_t(), hi);
  mpfr_clear(lo);
  mpfr_clear(hi);
  return b;
}

PiPoly::PiPoly(std::vector<Term> terms) : terms_(std::move(terms)) {
  for (auto& t : terms_) t.coeff.canonicalize();
  std::erase_if(terms_, [](const Term& t) { return sgn(t.coeff) == 0; });
}

int PiPoly::degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.degree));
  return d;
}

PolyQ PiPoly::substitute(const Rational& pi) const {
  std::map<unsigned, Rational> pi_powers;
  std::vector<Rational> v(static_cast<std::size_t>(std::max(degree(), -1) + 1), Rational(0));
  for (const auto& t : terms_) {
    auto it = pi_powers.find(t.pi_power);
    if (it == pi_powers.end()) {
      Rational pw = 1;
      for (unsigned i = 0; i < t.pi_power; ++i) pw *= pi;
      it = pi_powers.emplace(t.pi_power, pw).first;
    }
    v[t.degree] += t.coeff * it->second;
  }
  return PolyQ(std::move(v));
}

PiPoly operator-(const PiPoly& a, const PiPoly& b) {
  std::vector<PiPoly::Term> terms = a.terms_;
  for (const auto& t : b.terms_) {
    auto it = std::find_if(terms.begin(), terms.end(), [&](const PiPoly::Term& s) {
      return s.pi_power == t.pi_power && s.degree == t.degree;
    });
    if (it != terms.end()) it->coeff -= t.coeff;
    else terms.push_back({-t.coeff, t.pi_power, t.degree});
  }
  return PiPoly(std::move(terms));
}

std::string PiPoly::to_json() const {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& t : terms_) {
    nlohmann::ordered_json j;
    j["pi_power"] = t.pi_power;
    j["numerator"] = t.coeff.get_num().get_str();
    j["denominator"] = t.coeff.get_den().get_str();
    j["degree"] = t.degree;
    arr.push_back(std::move(j));
  }
  return arr.dump();
}

PiPoly PiPoly::from_json(const std::string& text) {
  const auto arr = nlohmann::json::parse(text);
  if (!arr.is_array()) throw std::invalid_argument("PiPoly json: expected an array");
  std::vector<Term> terms;
  for (const auto& j : arr) {
    Term t;
    mpz_class num(j.at("numerator").get<std::string>(), 10);
    mpz_class den(j.at("denominator").get<std::string>(), 10);
    if (den == 0) throw std::invalid_argument("PiPoly json: zero denominator");
    t.coeff = Rational(num, den);
    t.pi_power = j.at("pi_power").get<unsigned>();
    t.degree = j.at("degree").get<unsigned>();
    terms.push_back(std::move(t));
  }
  return PiPoly(std::move(terms));
}

int sturm_count(const PiPoly& p, const ExtendedRational& a, const ExtendedRational& b, const PiBracket& pi) {
  const int lo = sturm_count(p.substitute(pi.lo), a, b);
  const int hi = sturm_count(p.substitute(pi.hi), a, b);
  if (lo != hi)
    throw InconclusiveError("sturm_count: pi bracket endpoints give " + std::to_string(lo) + " and " +
                            std::to_string(hi) + " roots");
  return lo;
}

}  // namespace bkd
