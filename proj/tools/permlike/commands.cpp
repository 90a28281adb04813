#include "commands.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "permlike/certify.hpp"
#include "permlike/serialize.hpp"

namespace permlike::cli {

namespace {

std::string read_input(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

std::string orbits_text(const OrbitPartition& part) {
  std::ostringstream os;
  for (std::size_t i = 0; i < part.orbits.size(); ++i) {
    if (i) os << ' ';
    os << '{';
    for (std::size_t k = 0; k < part.orbits[i].members.size(); ++k) {
      if (k) os << ',';
      os << part.orbits[i].members[k];
    }
    os << '}';
  }
  return os.str();
}

std::string phi_product(const PhiMultiplicity& m) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, ak] : m.a) {
    if (ak == 0) continue;
    if (!first) os << ' ';
    os << "Phi_" << k;
    if (ak != 1) os << '^' << ak;
    first = false;
  }
  return first ? "1" : os.str();
}

PhiMultiplicity phi_of(const Spectrum& s) {
  CycleFactors f;
  f.d = static_cast<i64>(s.exps.size());
  for (i64 e : s.exps) f.factors.push_back({1, RootExp(e, s.N)});
  return eigen_multiplicities(f);
}

void print_restriction(const RestrictionReport& r, std::ostream& out, int depth) {
  const std::string pad(static_cast<std::size_t>(2 + 2 * depth), ' ');
  out << pad << "dimension " << checked_pow(r.p, r.n) << " (a=" << r.a << ")\n";
  for (const auto& c : r.checks) {
    out << pad << "  " << c.name << ": " << (!c.applicable ? "n/a" : c.passed ? "pass" : "FAIL");
    if (!c.witness.empty()) out << " (" << c.witness << ")";
    out << "\n";
  }
  if (r.observed_j) out << pad << "  observed j = " << *r.observed_j << "\n";
  for (const auto& sub : r.restricted) print_restriction(sub, out, depth + 1);
}

json counterexample_dump(const GroupSpec& g, const CounterexampleError& e) {
  return {{"potential_counterexample", true},
          {"group", to_json(g)},
          {"case", e.case_label()},
          {"witness", e.witness()}};
}

}  // namespace

int threads_from_env() {
  if (const char* v = std::getenv("PERMLIKE_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(v, &end, 10);
    if (end != v && *end == '\0' && n > 0) return static_cast<int>(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

int cmd_analyze(const AnalyzeOptions& opts, std::ostream& out, std::ostream& err) {
  GroupSpec g = [&] {
    try {
      return group_from_json(parse_json(read_input(opts.input)));
    } catch (const json::exception& e) {
      throw InputError(e.what());
    }
  }();
  const bool text = !(opts.json_out && *opts.json_out == "-");
  json report{{"group", to_json(g)}};
  std::ostringstream os;

  const OrbitPartition part = mu_orbits(g.d(), g.r());
  report["orbits"] = to_json(part);
  os << "group: p=" << g.p() << " n=" << g.n() << " r=" << g.r().value << " M=" << g.modulus() << " |G|=" << g.size()
     << "\n";
  os << "orbits: " << orbits_text(part) << "\n";
  if (g.has_decomp()) {
    const UnitOrderDecomp& dec = g.decomp();
    report["decomposition"] = to_json(dec);
    os << "ord(r) = " << dec.order() << " = s p^a with s=" << dec.s << " a=" << dec.a << "; u=" << dec.u.value
       << " v=" << dec.v << "\n";
  } else {
    os << "ord(r) = " << mult_order(g.r()) << " (no decomposition for p = 2)\n";
  }
  report["order_A"] = g.order_A();
  report["quotient_order"] = g.quotient_order();
  report["quotient_relation"] = g.quotient_relation();
  os << "ord(A) = " << g.order_A() << ", |G/<C>| = " << g.quotient_order() << ", A^" << g.quotient_order()
     << " = C^" << g.quotient_relation() << "\n";

  const GroupVerdict verdict = is_permutation_like_group(g, opts.cycle_types);
  report["permutation_like"] = to_json(verdict);
  if (opts.cycle_types && verdict.permutation_like) {
    os << "cycle types:\n";
    for (const auto& [x, t] : verdict.cycle_types) os << "  " << to_string(x) << "  " << to_string(t) << "\n";
  }

  if (g.has_decomp() && g.decomp().s == 1) {
    GroupSpec target = g;
    try {
      target = adjust_generator_p_case(g).adjusted;
    } catch (const SplitHypothesisError& e) {
      os << "split adjustment: " << e.what() << "\n";
    }
    const RestrictionReport s3 = verify_restriction(target);
    report["restriction"] = to_json(s3);
    os << "restriction checks:\n";
    print_restriction(s3, os, 0);
  } else {
    os << "restriction checks: not applicable (|G/<C>| is not a power of p)\n";
  }

  int code = kOk;
  if (!verdict.permutation_like) {
    const MonoMatrix w = realize(*verdict.failing_element, g);
    const CycloNum tr = trace(w, CycloField::get(g.modulus()));
    report["permutation_like"]["witness"]["trace"] = tr.to_string();
    os << "permutation-like: no; witness " << to_string(*verdict.failing_element) << ": "
       << verdict.failure.message() << "\n";
    os << "  char = " << to_string(verdict.failing_factors) << ", trace = " << tr.to_string() << "\n";
  } else {
    try {
      CertifyOptions copts;
      const CertifyOutcome outcome = certify_group(g, copts);
      const Certificate& cert = *outcome.certificate;
      report["certificate"] = to_json(cert);
      report["verification"] = to_json(*outcome.verification);
      os << "permutation-like: yes; case " << cert.case_label << "; "
         << (cert.verified ? "certified" : "verification FAILED") << "\n";
      if (!cert.verified) code = kVerificationFailed;
    } catch (const CounterexampleError& e) {
      report["counterexample"] = counterexample_dump(g, e);
      os << "permutation-like: yes; POTENTIAL COUNTEREXAMPLE: " << e.what() << "\n";
      code = kVerificationFailed;
    }
  }

  if (text) out << os.str();
  if (opts.json_out) {
    const std::string dumped = report.dump(2) + "\n";
    if (*opts.json_out == "-") {
      out << dumped;
    } else {
      write_output(*opts.json_out, dumped);
    }
  }
  (void)err;
  return code;
}

int cmd_certify(const CertifyCommandOptions& opts, std::ostream& out, std::ostream& err) {
  const json input = parse_json(read_input(opts.input));
  VerifyOptions vopts;
  vopts.exact_determinant = opts.exact_determinant;

  if (opts.verify_only) {
    Certificate cert = [&] {
      try {
        return certificate_from_json(input);
      } catch (const json::exception& e) {
        throw InputError(e.what());
      }
    }();
    const bool consistent = images_consistent(cert);
    const VerificationResult v = verify_certificate(cert, vopts);
    json result = to_json(v);
    result["images_consistent"] = consistent;
    out << result.dump(2) << "\n";
    if (!v.ok || !consistent) {
      err << "verification failed";
      if (!v.generator.empty()) err << " at generator " << v.generator << ", row " << v.row << ", column " << v.col;
      if (!v.reason.empty()) err << ": " << v.reason;
      err << "\n";
      return kVerificationFailed;
    }
    return kOk;
  }

  GroupSpec g = [&] {
    try {
      return group_from_json(input);
    } catch (const json::exception& e) {
      throw InputError(e.what());
    }
  }();
  CertifyOptions copts;
  copts.oracle = opts.oracle;
  copts.verify = vopts;
  CertifyOutcome outcome;
  try {
    outcome = certify_group(g, copts);
  } catch (const CounterexampleError& e) {
    out << counterexample_dump(g, e).dump(2) << "\n";
    err << "potential counterexample: " << e.what() << "\n";
    return kVerificationFailed;
  }
  if (!outcome.verdict.permutation_like) {
    err << "not permutation-like: " << to_string(*outcome.verdict.failing_element) << ": "
        << outcome.verdict.failure.message() << "\n";
    out << to_json(outcome.verdict).dump(2) << "\n";
    return kNotPermutationLike;
  }
  json doc = to_json(*outcome.certificate);
  if (outcome.verification) doc["verification"] = to_json(*outcome.verification);
  const std::string dumped = doc.dump(2) + "\n";
  if (opts.out) {
    write_output(*opts.out, dumped);
  } else {
    out << dumped;
  }
  if (!outcome.certificate->verified) {
    err << "verification failed: " << outcome.verification->reason << "\n";
    return kVerificationFailed;
  }
  return kOk;
}

int cmd_charpoly(const CharpolyOptions& opts, std::ostream& out, std::ostream& err) {
  if (opts.p % 2 == 0 || !is_prime(opts.p)) throw InputError("p must be an odd prime");
  if (opts.n < 1 || opts.a < 0 || opts.a >= opts.n) throw InputError("need n >= 1 and 0 <= a < n");
  const i64 d = checked_pow(opts.p, opts.n);
  const i64 pa = checked_pow(opts.p, opts.a);
  const i64 r_value = opts.r.value_or(mod(1 + checked_pow(opts.p, opts.n - opts.a), d));
  if (gcd(r_value, d) != 1) throw InputError("r must be a unit");
  const Residue r(r_value, d);
  if (mult_order(r) != pa) throw InputError("r must have order p^a");
  std::map<i64, i64> phases;
  for (const Orbit& o : mu_orbits(d, r).orbits) phases[o.rep] = 0;
  const GroupSpec g = GroupSpec::from_phases(opts.p, opts.n, r, phases, d);

  std::vector<i64> ks = opts.ks;
  if (ks.empty()) {
    for (i64 k = 0; k < d; ++k) ks.push_back(k);
  }
  const auto units = unit_indices(opts.p, opts.n);
  out << "l,k,computed,closed_form,computed_phi,closed_phi,equal\n";
  bool all_equal = true;
  for (i64 l = 1; l <= pa; ++l) {
    const MonoMatrix al = power(g.A(), l);
    for (i64 k : ks) {
      const MonoMatrix x = multiply(al, power(g.C(), k));
      const CycleFactors computed = char_factors(restrict(x, units));
      const Spectrum spec = eigenvalues(computed);
      std::string computed_phi;
      try {
        computed_phi = phi_product(phi_of(spec));
      } catch (const SpectrumError&) {
        computed_phi = "not rational";
      }
      out << l << ',' << k << ',' << to_string(computed) << ',';
      if (l % pa == 0) {
        out << "hypothesis not applicable," << computed_phi << ",,n/a\n";
        continue;
      }
      const int a_prime = opts.a - p_adic_valuation(l, opts.p);
      const ClosedForm cf = charpoly_Vstar_closed_form(opts.p, opts.n, a_prime, k);
      const bool equal = spec == cf.spectrum(d);
      all_equal = all_equal && equal;
      out << cf.to_string() << ',' << computed_phi << ',' << phi_product(phi_of(cf.spectrum(d))) << ','
          << (equal ? "true" : "false") << "\n";
    }
  }
  if (!all_equal) {
    err << "closed form mismatch\n";
    return kVerificationFailed;
  }
  return kOk;
}

int cmd_enumerate(const EnumerateOptions& opts, std::ostream& out, std::ostream& err) {
  const SweepReport report = run_sweep(opts.config);
  const std::string dumped = to_json(report).dump(2) + "\n";
  if (opts.out) {
    write_output(*opts.out, dumped);
  } else {
    out << dumped;
  }
  std::optional<std::string> csv = opts.csv;
  if (!csv && opts.out) {
    std::string base = *opts.out;
    if (base.size() > 5 && base.ends_with(".json")) base.resize(base.size() - 5);
    csv = base + ".csv";
  }
  if (csv) write_output(*csv, to_csv(report));

  std::ostream& summary = opts.out ? out : err;
  summary << "hypotheses: p odd prime, C a maximal cycle of order p^n, A normalizing <C>\n";
  for (const auto& b : report.blocks) {
    summary << "p=" << b.p << " n=" << b.n << " r=" << b.r << " M=" << b.modulus << " " << b.mode
            << " configs=" << b.configs << " permutation-like=" << b.permutation_like << " certified=" << b.certified
            << " violations=" << b.violations << "\n";
  }
  summary << "violations: " << report.violations() << "\n";
  return report.violations() == 0 ? kOk : kVerificationFailed;
}

}  // namespace permlike::cli
