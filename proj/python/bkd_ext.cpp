#include "bkd/asymptotics.hpp"
#include "bkd/commands.hpp"
#include "bkd/eta_series.hpp"
#include "bkd/inequalities.hpp"
#include "bkd/positivity.hpp"
#include "bkd/table_io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace bkd;

namespace {

py::object to_py(const BigInt& v) { return py::module_::import("builtins").attr("int")(v.get_str()); }

py::object to_py(const Rational& v) {
  return py::module_::import("fractions").attr("Fraction")(v.get_num().get_str() + "/" + v.get_den().get_str());
}

BigInt big_from_py(const py::handle& h) { return BigInt(py::str(h).cast<std::string>()); }

Rational rational_from_py(const py::handle& h) {
  Rational q(py::str(h).cast<std::string>());
  q.canonicalize();
  return q;
}

py::object json_to_py(const std::string& text) { return py::module_::import("json").attr("loads")(text); }

py::tuple interval_to_py(const Interval& x) { return py::make_tuple(x.lo_double(), x.hi_double()); }

PartitionTable cached_table(unsigned k, long N, bool cache) {
  if (!cache) return delta_table(k, N);
  return TableCache(TableCache::default_directory()).get_or_build(k, N);
}

py::dict analytic_to_py(const AnalyticCheck& c) {
  py::dict d;
  d["n"] = c.n;
  d["verdict"] = to_string(c.verdict);
  d["precision"] = c.precision;
  d["lower"] = interval_to_py(c.lower);
  d["value"] = interval_to_py(c.value);
  d["upper"] = interval_to_py(c.upper);
  return d;
}

CheckKind kind_from_name(const std::string& name) {
  if (name == "logconcave") return CheckKind::LogConcave;
  if (name == "turan3") return CheckKind::Turan3;
  if (name == "theta-mono") return CheckKind::ThetaMonotone;
  if (name == "dlog") return CheckKind::DLog;
  if (name == "jensen") return CheckKind::Jensen;
  throw std::invalid_argument("unknown check " + name);
}

py::dict scan_to_py(const ConjectureScan& s) {
  py::dict d;
  d["threshold"] = s.threshold ? py::object(py::int_(*s.threshold)) : py::object(py::none());
  d["violations"] = s.violations;
  return d;
}

}  // namespace

PYBIND11_MODULE(_bkd, m) {
  m.doc() = "Broken k-diamond partition counts: exact tables and inequality checks.";

  py::class_<PartitionTable>(m, "Table")
      .def_property_readonly("k", &PartitionTable::k)
      .def_property_readonly("N", &PartitionTable::N)
      .def("__len__", &PartitionTable::size)
      .def("__getitem__", [](const PartitionTable& t, long n) { return to_py(t.at(n)); })
      .def("values",
           [](const PartitionTable& t) {
             py::list out;
             for (const auto& v : t.coeffs()) out.append(to_py(v));
             return out;
           })
      .def("digest", [](const PartitionTable& t) { return table_digest(t); })
      .def("to_json", [](const PartitionTable& t) { return table_to_json(t); })
      .def("__repr__", [](const PartitionTable& t) {
        std::ostringstream s;
        s << "Table(k=" << t.k() << ", N=" << t.N() << ")";
        return s.str();
      });

  m.def("delta_table", &cached_table, py::arg("k"), py::arg("N"), py::arg("cache") = false,
        py::call_guard<py::gil_scoped_release>(),
        "Delta_k(0..N). With cache=True the table is read from or written to BKD_CACHE_DIR.");
  m.def(
      "table_from_values",
      [](const py::list& values) {
        std::vector<BigInt> v;
        for (const auto& h : values) v.push_back(big_from_py(h));
        return PartitionTable::from_values(std::move(v));
      },
      py::arg("values"));
  m.def(
      "delta_oracle",
      [](unsigned k, long N) {
        py::list out;
        for (const auto& v : delta_oracle_logderiv(k, N)) out.append(to_py(v));
        return out;
      },
      py::arg("k"), py::arg("N"));
  m.def(
      "eta_quotient",
      [](const std::vector<std::pair<long, long>>& factors, long N) {
        std::vector<EtaFactor> fs;
        for (const auto& [mod, e] : factors) fs.push_back({mod, e});
        py::list out;
        for (const auto& v : expand_eta_quotient(EtaQuotientSpec(fs), N)) out.append(to_py(v));
        return out;
      },
      py::arg("factors"), py::arg("N"), "Coefficients of prod_m prod_n (1 - q^{mn})^{e_m} for [(m, e_m), ...].");

  m.def("logconcave_margin", [](const PartitionTable& t, long n) { return to_py(logconcave_margin(t, n)); });
  m.def("turan3_margin", [](const PartitionTable& t, long n) { return to_py(turan3_margin(t, n)); });
  m.def("theta_monotone_margin", [](const PartitionTable& t, long n) { return to_py(theta_monotone_margin(t, n)); });
  m.def("dlog_margin", [](const PartitionTable& t, long n, unsigned r) { return to_py(dlog_margin(t, n, r)); });
  m.def("jensen_hyperbolic", &jensen_hyperbolic, py::arg("table"), py::arg("d"), py::arg("n"));
  m.def(
      "jensen_polynomial",
      [](const PartitionTable& t, unsigned d, long n) {
        const auto p = jensen_polynomial(t, d, n);
        py::list out;
        for (int i = 0; i <= p.degree(); ++i) out.append(to_py(p.coeff(static_cast<unsigned>(i))));
        return out;
      },
      py::arg("table"), py::arg("d"), py::arg("n"));

  m.def(
      "scan",
      [](const PartitionTable& t, const std::string& check, long from, long to, unsigned r, unsigned d,
         unsigned workers) {
        ScanOptions opt;
        opt.r = r;
        opt.d = d;
        opt.workers = workers;
        VerificationReport rep;
        {
          py::gil_scoped_release release;
          rep = scan_check(t, kind_from_name(check), from, to, opt);
        }
        return json_to_py(rep.to_json().dump());
      },
      py::arg("table"), py::arg("check"), py::arg("from_n"), py::arg("to_n"), py::arg("r") = 3, py::arg("d") = 3,
      py::arg("workers") = 1, "Report dict for one of logconcave, turan3, theta-mono, dlog, jensen.");
  m.def(
      "conjecture_threshold",
      [](const PartitionTable& t, unsigned r, long to, long from, unsigned workers) {
        return scan_to_py(conjecture_threshold(t, r, to, from, workers));
      },
      py::arg("table"), py::arg("r"), py::arg("to_n"), py::arg("from_n") = 1, py::arg("workers") = 1);
  m.def(
      "jensen_threshold",
      [](const PartitionTable& t, unsigned d, long to, long from, unsigned workers) {
        return scan_to_py(jensen_threshold(t, d, to, from, workers));
      },
      py::arg("table"), py::arg("d"), py::arg("to_n"), py::arg("from_n") = 0, py::arg("workers") = 1);

  m.def("alpha", [](unsigned k) { return to_py(alpha_k(k)); }, py::arg("k"));
  m.def("x_k", [](unsigned k, long n) { return interval_to_py(x_k(k, n)); }, py::arg("k"), py::arg("n"));
  m.def(
      "bessel_I",
      [](unsigned nu, double z, long prec) { return interval_to_py(bessel_I(nu, Interval::from_double(z, prec), prec)); },
      py::arg("nu"), py::arg("z"), py::arg("prec") = kDefaultPrecision);
  m.def(
      "bessel_remainder",
      [](double z, long prec) {
        const auto c = check_bessel_remainder(Interval::from_double(z), prec);
        py::dict d;
        d["z"] = z;
        d["precision"] = c.precision;
        d["margin"] = interval_to_py(c.margin);
        d["scaled_error"] = interval_to_py(c.scaled_error);
        d["verdict"] = to_string(c.verdict);
        return d;
      },
      py::arg("z"), py::arg("prec") = 0, "Checks |I_2(z) e^-z sqrt(2 pi z) - S(z)| <= 73/z^6; prec 0 is automatic.");
  m.def(
      "delta_bounds",
      [](const PartitionTable& t, long n, long prec) { return analytic_to_py(delta_bounds_check(t, n, prec)); },
      py::arg("table"), py::arg("n"), py::arg("prec") = 0);
  m.def(
      "theta_bounds",
      [](const PartitionTable& t, long n, long prec) { return analytic_to_py(theta_bounds_check(t, n, prec)); },
      py::arg("table"), py::arg("n"), py::arg("prec") = 0);
  m.def(
      "lambda_bounds", [](unsigned k, long n, long prec) { return analytic_to_py(lambda_bounds_check(k, n, prec)); },
      py::arg("k"), py::arg("n"), py::arg("prec") = 0);
  m.def(
      "sandwich",
      [](const PartitionTable& t, long n, long prec) { return analytic_to_py(sandwich_check(t, n, prec)); },
      py::arg("table"), py::arg("n"), py::arg("prec") = 0);
  m.def("theta_exact", [](const PartitionTable& t, long n) { return to_py(theta_exact(t, n)); });

  m.def(
      "certify_phi_psi",
      [](long bits) {
        const auto pi = PiBracket::from_precision(bits);
        py::dict out;
        const auto psi = certify_positive_on_ray(psi_polynomial(), Rational(6), pi);
        const auto diff = certify_positive_on_ray(phi_polynomial() - psi_polynomial(), Rational(33, 10), pi);
        for (const auto& [name, r] : {std::pair{"psi", &psi}, std::pair{"phi_minus_psi", &diff}}) {
          py::dict d;
          d["status"] = to_string(r->status);
          d["certificate"] = r->certificate ? json_to_py(r->certificate->to_json()) : py::object(py::none());
          d["reverified"] = r->certificate && r->certificate->reverify();
          out[name] = d;
        }
        return out;
      },
      py::arg("pi_bits") = 256);
  m.def(
      "reverify_certificate", [](const std::string& text) { return PositivityCertificate::from_json(text).reverify(); },
      py::arg("certificate_json"));
  m.def(
      "domination_thresholds",
      [](unsigned k) {
        py::dict out;
        for (const auto& [name, problem] :
             {std::pair{"J", j_polynomial_data(k)}, std::pair{"K", k_polynomial_data(k)}}) {
          const auto r = domination_threshold(problem);
          py::dict d;
          d["threshold"] = r.threshold;
          d["refined"] = to_py(r.refined);
          d["reverified"] = r.certificate.reverify();
          out[name] = d;
        }
        return out;
      },
      py::arg("k"));
  m.def(
      "lemma_uv",
      [](const py::object& u, const py::object& v) {
        const auto r = lemma_uv_check(rational_from_py(u), rational_from_py(v));
        py::dict d;
        d["hypothesis"] = r.hypothesis;
        d["conclusion"] = r.conclusion;
        d["holds"] = r.holds();
        return d;
      },
      py::arg("u"), py::arg("v"), "u, v as Fraction, int or 'p/q' strings.");
  m.def(
      "root_ordering", [](const py::object& u) { return root_ordering_check(rational_from_py(u)).ordered(); },
      py::arg("u"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<std::string> full{"bkd"};
        full.insert(full.end(), args.begin(), args.end());
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = run_cli(full, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command line in-process; returns (exit_code, stdout, stderr).");
}
