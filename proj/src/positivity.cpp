#include "bkd/positivity.hpp"

#include "bkd/asymptotics.hpp"

#include <json.hpp>

#include <algorithm>
#include <stdexcept>

namespace bkd {

namespace {

using ordered_json = nlohmann::ordered_json;

Rational parse_q(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("certificate json: bad rational '" + s + "'");
  q.canonicalize();
  return q;
}

Rational pow_q(const Rational& x, unsigned e) {
  Rational r = 1;
  for (unsigned i = 0; i < e; ++i) r *= x;
  return r;
}

// Sign picture of one rational polynomial on [x0, inf).
struct RayScan {
  PositivityStatus status = PositivityStatus::Inconclusive;
  std::optional<Rational> witness;
  SturmWitness sturm;
};

PolyQ squarefree(const PolyQ& p) {
  const PolyQ d = p.derivative();
  if (d.is_zero()) return p;
  const PolyQ g = PolyQ::gcd(p, d);
  PolyQ q, r;
  PolyQ::divmod(p, g, q, r);
  return q;
}

// 1 + max |a_i / a_n|: every real root lies strictly below.
Rational cauchy_bound(const PolyQ& p) {
  Rational m = 0;
  const Rational& lead = p.leading();
  for (int i = 0; i < p.degree(); ++i) m = std::max<Rational>(m, abs(p.coeff(static_cast<unsigned>(i)) / lead));
  return m + 1;
}

void isolate(const SturmSequence& s, const Rational& a, const Rational& b, std::vector<std::pair<Rational, Rational>>& out) {
  const int c = s.count(a, b);
  if (c == 0) return;
  if (c == 1) {
    out.emplace_back(a, b);
    return;
  }
  const Rational mid = (a + b) / 2;
  isolate(s, a, mid, out);
  isolate(s, mid, b, out);
}

// A point of (a, u] with no root of the squarefree part in (a, y].
Rational root_free_point(const SturmSequence& s, const Rational& a, Rational u) {
  while (s.count(a, u) > 0) u = (a + u) / 2;
  return u;
}

RayScan scan_ray(const PolyQ& p, const Rational& x0) {
  RayScan out;
  if (p.is_zero()) {
    out.status = PositivityStatus::ZeroOnRay;
    return out;
  }
  const SturmSequence seq(p);
  out.sturm.variations_at_x0 = seq.variations(x0);
  out.sturm.variations_at_inf = seq.variations(ExtendedRational::pos_inf());
  out.sturm.value_at_x0 = p(x0);
  const int roots = out.sturm.variations_at_x0 - out.sturm.variations_at_inf;
  const int s0 = sgn(out.sturm.value_at_x0);

  if (s0 < 0) {
    out.status = PositivityStatus::Refuted;
    out.witness = x0;
    return out;
  }
  if (roots == 0) {
    if (s0 > 0) {
      out.status = PositivityStatus::Certified;
    } else if (sgn(p.leading()) > 0) {
      out.status = PositivityStatus::ZeroOnRay;
    } else {
      out.status = PositivityStatus::Refuted;
      out.witness = x0 + 1;
    }
    return out;
  }

  // Sample one point in every gap between consecutive roots on the ray.
  const PolyQ sf = squarefree(p);
  const SturmSequence sfs(sf);
  const Rational top = std::max(cauchy_bound(sf), x0) + 1;
  std::vector<std::pair<Rational, Rational>> cells;
  isolate(sfs, x0, top, cells);

  std::vector<Rational> samples;
  samples.push_back(s0 != 0 ? x0 : root_free_point(sfs, x0, cells.front().second));
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Rational& b = cells[i].second;
    if (sgn(sf(b)) != 0) {
      samples.push_back(b);
    } else {
      const Rational u = i + 1 < cells.size() ? cells[i + 1].second : top;
      samples.push_back(root_free_point(sfs, b, u));
    }
  }
  for (const auto& x : samples) {
    if (sgn(p(x)) < 0) {
      out.status = PositivityStatus::Refuted;
      out.witness = x;
      return out;
    }
  }
  out.status = PositivityStatus::ZeroOnRay;
  return out;
}

bool has_pi(const PiPoly& p) {
  return std::any_of(p.terms().begin(), p.terms().end(), [](const PiPoly::Term& t) { return t.pi_power > 0; });
}

mpfr_prec_t bracket_check_precision(const PiBracket& b) {
  const std::size_t bits = std::max(mpz_sizeinbase(b.lo.get_den_mpz_t(), 2), mpz_sizeinbase(b.hi.get_den_mpz_t(), 2));
  return static_cast<mpfr_prec_t>(std::max<std::size_t>(bits + 64, 256));
}

bool bracket_encloses_pi(const PiBracket& b) {
  const Interval pi = Interval::pi(bracket_check_precision(b));
  return mpfr_cmp_q(pi.lo(), b.lo.get_mpq_t()) >= 0 && mpfr_cmp_q(pi.hi(), b.hi.get_mpq_t()) <= 0;
}

Rational abs_hi(const CoefficientBracket& c) { return std::max<Rational>(abs(c.lo), abs(c.hi)); }
Rational abs_lo(const CoefficientBracket& c) {
  if (sgn(c.lo) > 0) return c.lo;
  if (sgn(c.hi) < 0) return -c.hi;
  return 0;
}

PolyQ reduced_polynomial(const std::vector<CoefficientBracket>& top, unsigned count) {
  const Rational a = abs_hi(top.front());
  Rational constant = -Rational(count) * a;
  if (sgn(top.front().lo) < 0) constant -= a;
  std::vector<Rational> c{constant};
  for (std::size_t i = 1; i < top.size(); ++i) c.push_back(top[i].lo);
  return PolyQ(std::move(c));
}

bool dominated_from(const std::vector<DominatedTerm>& lower, unsigned pivot, const Rational& a_lo, const Rational& x) {
  for (const auto& t : lower)
    if (pow_q(x, pivot - t.j) * a_lo < t.bound) return false;
  return true;
}

PiPoly as_pipoly(const PolyQ& p) {
  std::vector<PiPoly::Term> terms;
  for (int i = 0; i <= p.degree(); ++i) terms.push_back({p.coeff(static_cast<unsigned>(i)), 0, static_cast<unsigned>(i)});
  return PiPoly(std::move(terms));
}

bool sturm_witness_ok(const PolyQ& p, const Rational& x0, const SturmWitness& w) {
  if (p.is_zero()) return false;
  const SturmSequence seq(p);
  return seq.variations(x0) == w.variations_at_x0 &&
         seq.variations(ExtendedRational::pos_inf()) == w.variations_at_inf &&
         w.variations_at_x0 == w.variations_at_inf && p(x0) == w.value_at_x0 && sgn(w.value_at_x0) > 0;
}

}  // namespace

PiPoly phi_polynomial() {
  return PiPoly({{729, 0, 24},   {-4860, 4, 20}, {7290, 0, 18},  {1296, 8, 16},
                 {-8748, 4, 14}, {-192, 12, 12}, {3645, 0, 12},  {3888, 8, 10},
                 {-4860, 4, 8},  {-576, 12, 6},  {2160, 8, 4},   {-320, 12, 0}});
}

PiPoly psi_polynomial() {
  return PiPoly({{729, 0, 24},   {-4860, 4, 20}, {-7290, 0, 18}, {1296, 8, 16},
                 {8748, 4, 14},  {-192, 12, 12}, {3645, 0, 12},  {-3888, 8, 10},
                 {-4860, 4, 8},  {576, 12, 6},   {2160, 8, 4},   {-320, 12, 0}});
}

Interval evaluate(const PiPoly& p, const Rational& x, mpfr_prec_t prec) {
  const Interval pi = Interval::pi(prec);
  Interval sum(prec);
  for (const auto& t : p.terms())
    sum = sum + Interval::from_mpq(t.coeff * pow_q(x, t.degree), prec) * pow(pi, t.pi_power);
  return sum;
}

const char* to_string(PositivityStatus s) {
  switch (s) {
    case PositivityStatus::Certified: return "CERTIFIED";
    case PositivityStatus::Refuted: return "REFUTED";
    case PositivityStatus::ZeroOnRay: return "ZERO_ON_RAY";
    case PositivityStatus::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

CoefficientBracket CoefficientBracket::from_interval(const Interval& v) { return {v.lo_q(), v.hi_q()}; }

PositivityResult certify_positive_on_ray(const PolyQ& p, const Rational& x0) {
  PositivityResult res;
  const RayScan scan = scan_ray(p, x0);
  res.status = scan.status;
  res.witness = scan.witness;
  if (scan.status == PositivityStatus::Certified) {
    PositivityCertificate cert;
    cert.method = CertificateMethod::Sturm;
    cert.x0 = x0;
    cert.polynomial = as_pipoly(p);
    cert.sturm.push_back(scan.sturm);
    res.certificate = std::move(cert);
  }
  return res;
}

PositivityResult certify_positive_on_ray(const PiPoly& p, const Rational& x0, const PiBracket& pi) {
  if (!has_pi(p)) {
    auto res = certify_positive_on_ray(p.substitute(0), x0);
    if (res.certificate) res.certificate->polynomial = p;
    return res;
  }
  PositivityResult res;
  RayScan lo = scan_ray(p.substitute(pi.lo), x0);
  RayScan hi = scan_ray(p.substitute(pi.hi), x0);
  lo.sturm.pi_value = pi.lo;
  hi.sturm.pi_value = pi.hi;
  if (lo.status != hi.status) {
    res.status = PositivityStatus::Inconclusive;
    res.detail = std::string("pi endpoints disagree: ") + to_string(lo.status) + " vs " + to_string(hi.status);
    return res;
  }
  const mpfr_prec_t prec = bracket_check_precision(pi);
  switch (lo.status) {
    case PositivityStatus::Certified: {
      if (!evaluate(p, x0, prec).certainly_positive()) {
        res.status = PositivityStatus::Inconclusive;
        res.detail = "sign at x0 not settled by the pi enclosure";
        return res;
      }
      PositivityCertificate cert;
      cert.method = CertificateMethod::Sturm;
      cert.x0 = x0;
      cert.polynomial = p;
      cert.pi = pi;
      cert.sturm = {lo.sturm, hi.sturm};
      res.status = PositivityStatus::Certified;
      res.certificate = std::move(cert);
      return res;
    }
    case PositivityStatus::Refuted:
      for (const auto& w : {lo.witness, hi.witness}) {
        if (w && evaluate(p, *w, prec).certainly_negative()) {
          res.status = PositivityStatus::Refuted;
          res.witness = w;
          return res;
        }
      }
      res.status = PositivityStatus::Inconclusive;
      res.detail = "refutation point not confirmed by the pi enclosure";
      return res;
    default:
      res.status = lo.status;
      return res;
  }
}

std::string PositivityCertificate::to_json() const {
  ordered_json j;
  j["method"] = method == CertificateMethod::Sturm ? "STURM" : "DOMINATION";
  j["x0"] = x0.get_str();
  ordered_json w;
  w["polynomial"] = ordered_json::parse(polynomial.to_json());
  if (pi) w["pi"] = {{"lo", pi->lo.get_str()}, {"hi", pi->hi.get_str()}};
  else w["pi"] = nullptr;
  auto subs = ordered_json::array();
  for (const auto& s : sturm) {
    ordered_json e;
    e["pi"] = s.pi_value.get_str();
    e["variations_at_x0"] = s.variations_at_x0;
    e["variations_at_inf"] = s.variations_at_inf;
    e["value_at_x0"] = s.value_at_x0.get_str();
    subs.push_back(std::move(e));
  }
  w["substitutions"] = std::move(subs);
  if (method == CertificateMethod::Domination) {
    w["pivot"] = pivot;
    w["count"] = count;
    w["pivot_abs_lo"] = pivot_abs_lo.get_str();
    auto dom = ordered_json::array();
    for (const auto& t : dominated) dom.push_back({{"j", t.j}, {"bound", t.bound.get_str()}});
    w["dominated"] = std::move(dom);
    auto tops = ordered_json::array();
    for (const auto& t : top) tops.push_back({{"lo", t.lo.get_str()}, {"hi", t.hi.get_str()}});
    w["top"] = std::move(tops);
  }
  j["witness"] = std::move(w);
  return j.dump();
}

PositivityCertificate PositivityCertificate::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  PositivityCertificate c;
  const std::string m = j.at("method").get<std::string>();
  if (m == "STURM") c.method = CertificateMethod::Sturm;
  else if (m == "DOMINATION") c.method = CertificateMethod::Domination;
  else throw std::invalid_argument("certificate json: unknown method " + m);
  c.x0 = parse_q(j.at("x0").get<std::string>());
  const auto& w = j.at("witness");
  c.polynomial = PiPoly::from_json(w.at("polynomial").dump());
  if (!w.at("pi").is_null())
    c.pi = PiBracket{parse_q(w["pi"].at("lo").get<std::string>()), parse_q(w["pi"].at("hi").get<std::string>())};
  for (const auto& e : w.at("substitutions")) {
    SturmWitness s;
    s.pi_value = parse_q(e.at("pi").get<std::string>());
    s.variations_at_x0 = e.at("variations_at_x0").get<int>();
    s.variations_at_inf = e.at("variations_at_inf").get<int>();
    s.value_at_x0 = parse_q(e.at("value_at_x0").get<std::string>());
    c.sturm.push_back(std::move(s));
  }
  if (c.method == CertificateMethod::Domination) {
    c.pivot = w.at("pivot").get<unsigned>();
    c.count = w.at("count").get<unsigned>();
    c.pivot_abs_lo = parse_q(w.at("pivot_abs_lo").get<std::string>());
    for (const auto& t : w.at("dominated")) c.dominated.push_back({t.at("j").get<unsigned>(), parse_q(t.at("bound").get<std::string>())});
    for (const auto& t : w.at("top")) c.top.push_back({parse_q(t.at("lo").get<std::string>()), parse_q(t.at("hi").get<std::string>())});
  }
  return c;
}

bool PositivityCertificate::reverify() const {
  if (method == CertificateMethod::Sturm) {
    if (!pi) {
      if (has_pi(polynomial) || sturm.size() != 1) return false;
      return sturm_witness_ok(polynomial.substitute(0), x0, sturm[0]);
    }
    if (sturm.size() != 2 || sturm[0].pi_value != pi->lo || sturm[1].pi_value != pi->hi) return false;
    if (!bracket_encloses_pi(*pi)) return false;
    for (const auto& s : sturm)
      if (!sturm_witness_ok(polynomial.substitute(s.pi_value), x0, s)) return false;
    return evaluate(polynomial, x0, bracket_check_precision(*pi)).certainly_positive();
  }

  // Domination.
  if (dominated.size() > count) return false;
  if (count == 0 && dominated.empty()) return true;
  if (top.empty() || pivot_abs_lo != abs_lo(top.front())) return false;
  for (const auto& t : dominated)
    if (t.j >= pivot) return false;
  if (!dominated_from(dominated, pivot, pivot_abs_lo, x0)) return false;
  const PolyQ h = reduced_polynomial(top, count);
  if (!(as_pipoly(h).to_json() == polynomial.to_json()) || sturm.size() != 1) return false;
  return sturm_witness_ok(h, x0, sturm[0]);
}

DominationResult domination_threshold(const DominationProblem& problem) {
  if (problem.top.empty()) throw std::invalid_argument("domination_threshold: empty leading block");
  if (problem.lower.size() > problem.count)
    throw std::invalid_argument("domination_threshold: more explicit bounds than dominated terms");
  for (const auto& t : problem.lower) {
    if (t.j >= problem.pivot) throw std::invalid_argument("domination_threshold: lower index not below the pivot");
    if (sgn(t.bound) < 0) throw std::invalid_argument("domination_threshold: negative bound");
  }
  for (const auto& c : problem.top)
    if (c.lo > c.hi) throw std::invalid_argument("domination_threshold: bracket with lo > hi");

  DominationResult res;
  auto& cert = res.certificate;
  cert.method = CertificateMethod::Domination;
  cert.pivot = problem.pivot;
  cert.count = problem.count;
  cert.dominated = problem.lower;
  cert.top = problem.top;
  cert.pivot_abs_lo = abs_lo(problem.top.front());
  res.unchecked_terms = problem.count - static_cast<unsigned>(problem.lower.size());

  if (problem.count == 0) {
    res.threshold = 1;
    res.refined = 1;
    cert.x0 = 1;
    return res;
  }

  const Rational a_lo = cert.pivot_abs_lo;
  if (sgn(a_lo) == 0 && !problem.lower.empty())
    throw std::domain_error("domination_threshold: pivot coefficient may vanish");
  res.reduced = reduced_polynomial(problem.top, problem.count);
  const PolyQ& h = res.reduced;
  if (h.degree() < 1 || sgn(h.leading()) <= 0)
    throw std::domain_error("domination_threshold: leading block is not eventually dominant");
  const SturmSequence seq(h);
  const int v_inf = seq.variations(ExtendedRational::pos_inf());
  auto works = [&](const Rational& x) {
    return sgn(h(x)) > 0 && seq.variations(x) == v_inf && dominated_from(problem.lower, problem.pivot, a_lo, x);
  };

  long hi = 1;
  while (!works(hi)) {
    if (hi > (1L << 60)) throw std::domain_error("domination_threshold: no threshold found");
    hi *= 2;
  }
  long lo = 0;
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    if (works(mid)) hi = mid;
    else lo = mid;
  }
  res.threshold = hi;

  long mlo = 1024 * (hi - 1), mhi = 1024 * hi;
  while (mhi - mlo > 1) {
    const long mid = mlo + (mhi - mlo) / 2;
    if (works(Rational(mid, 1024))) mhi = mid;
    else mlo = mid;
  }
  res.refined = Rational(mhi, 1024);
  res.refined.canonicalize();

  cert.x0 = res.refined;
  cert.polynomial = as_pipoly(h);
  SturmWitness w;
  w.variations_at_x0 = seq.variations(res.refined);
  w.variations_at_inf = v_inf;
  w.value_at_x0 = h(res.refined);
  cert.sturm.push_back(w);
  return res;
}

namespace {

struct AlphaPowers {
  Interval pi4, pi8, a, sa, a2, a3;
  AlphaPowers(unsigned k, mpfr_prec_t prec) {
    const Interval pi = Interval::pi(prec);
    pi4 = pow(pi, 4);
    pi8 = pow(pi, 8);
    a = Interval::from_mpq(alpha_k(k), prec);
    sa = sqrt(a);
    a2 = square(a);
    a3 = pow(a, 3);
  }
};

}  // namespace

DominationProblem j_polynomial_data(unsigned k, mpfr_prec_t prec) {
  const AlphaPowers c(k, prec);
  auto L = [&](long v) { return Interval::from_long(v, prec); };
  const Interval c19 = L(360) * c.pi8 * c.a3 * c.sa;
  const Interval c18 = L(-2349) * c.pi8 * c.a3;
  const Interval c17 = L(2025) * c.pi8 * c.a2 * c.sa + L(3240) * c.pi4 * c.a3 * c.sa + L(189216) * c.pi4 * c.sa;
  DominationProblem p;
  p.pivot = 17;
  p.count = 17;
  p.top = {CoefficientBracket::from_interval(c17), CoefficientBracket::from_interval(c18),
           CoefficientBracket::from_interval(c19)};
  return p;
}

DominationProblem k_polynomial_data(unsigned k, mpfr_prec_t prec) {
  const AlphaPowers c(k, prec);
  auto L = [&](long v) { return Interval::from_long(v, prec); };
  const Interval d21 = L(349920) * c.a3;
  const Interval d20 = L(-6480) * c.pi8 * c.a3 * c.sa;
  const Interval d19 = L(24300) * c.pi8 * c.a3;
  DominationProblem p;
  p.pivot = 19;
  p.count = 19;
  p.top = {CoefficientBracket::from_interval(d19), CoefficientBracket::from_interval(d20),
           CoefficientBracket::from_interval(d21)};
  return p;
}

LemmaUV lemma_uv_check(const Rational& u, const Rational& v) {
  if (u < Rational(15, 16) || !(u < v) || !(v < 1))
    throw std::invalid_argument("lemma_uv_check: need 15/16 <= u < v < 1");
  LemmaUV r;
  const Rational one_u = 1 - u;
  const Rational gap = v - u;
  r.hypothesis = gap * gap < one_u * one_u * one_u;
  const Rational uv = 1 - u * v;
  r.conclusion_value = 4 * one_u * (1 - v) - uv * uv;
  r.conclusion = sgn(r.conclusion_value) > 0;
  return r;
}

PolyQ lemma_quadratic(const Rational& u) {
  return PolyQ({3 - 4 * u, 6 * u - 4, -(u * u)});
}

RootOrdering root_ordering_check(const Rational& u) {
  if (u < Rational(15, 16) || !(u < 1)) throw std::invalid_argument("root_ordering_check: need 15/16 <= u < 1");
  const PolyQ f = lemma_quadratic(u);
  const SturmSequence seq(f);
  RootOrdering r;
  r.roots_in_0_u = seq.count(Rational(0), u);
  r.roots_in_u_1 = seq.count(u, Rational(1));
  r.endpoints_nonzero = sgn(f(0)) != 0 && sgn(f(u)) != 0 && sgn(f(1)) != 0;
  return r;
}

bool tau_positivity_check(const std::vector<Rational>& samples) {
  for (const auto& s : samples) {
    if (sgn(s) <= 0 || s > Rational(1, 4)) throw std::invalid_argument("tau_positivity_check: need 0 < s <= 1/4");
    // -2s + sqrt5 - 1 > 0  iff  5 > (2s+1)^2; the other factors are positive.
    const Rational t = 2 * s + 1;
    if (!(t * t < 5)) return false;
  }
  return true;
}

}  // namespace bkd
