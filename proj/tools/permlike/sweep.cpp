#include "sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "permlike/certify.hpp"
#include "permlike/cyclooracle.hpp"
#include "permlike/permsim.hpp"
#include "permlike/structure.hpp"

namespace permlike::cli {

namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct BlockSpec {
  i64 p;
  int n;
  i64 r;
  i64 modulus;
};

struct BlockResult {
  BlockSummary summary;
  std::vector<SweepRecord> records;
};

i64 saturating_pow(i64 base, i64 exp) {
  i64 out = 1;
  for (i64 i = 0; i < exp; ++i) {
    if (out > std::numeric_limits<i64>::max() / base) return std::numeric_limits<i64>::max();
    out *= base;
  }
  return out;
}

std::vector<std::string> structure_failures(const GroupSpec& g, const GroupVerdict& verdict) {
  std::vector<std::string> out;
  const Centralizer cent = centralizer_of_C(g);
  if (!cent.is_cycle_group || static_cast<i64>(cent.elements.size()) != g.d()) {
    out.push_back("centralizer of C is larger than <C>");
  }
  if (g.has_decomp()) {
    const UnitOrderDecomp& dec = g.decomp();
    if (dec.s == 1) {
      try {
        const SplitAdjustment adj = adjust_generator_p_case(g);
        if (!power(adj.adjusted.A(), checked_pow(g.p(), dec.a)).is_identity()) out.push_back("A'^(p^a) != I");
      } catch (const SplitHypothesisError& e) {
        out.push_back(e.what());
      }
    } else if (!check_split_nonp_case(g).holds) {
      out.push_back("A^(s p^a) != I");
    }
  }
  const FieldPtr field = CycloField::get(g.modulus());
  for (const auto& [x, type] : verdict.cycle_types) {
    const auto q = trace(realize(x, g), field).as_rational();
    const auto it = type.c.find(1);
    const i64 fixed = it == type.c.end() ? 0 : it->second;
    if (!q || *q != fixed) out.push_back("trace of " + to_string(x) + " is not its fixed-point count");
  }
  return out;
}

void tally_restriction(const RestrictionReport& report, std::map<std::string, RestrictionTally>& tally) {
  for (const auto& c : report.checks) {
    if (!c.applicable) continue;
    RestrictionTally& t = tally[c.name];
    ++t.applicable;
    if (c.passed) ++t.passed;
  }
  for (const auto& sub : report.restricted) tally_restriction(sub, tally);
}

SweepRecord evaluate(const BlockSpec& b, const OrbitPartition& part, const std::vector<i64>& phases,
                     const SweepConfig& cfg, bool& restriction_ran, std::map<std::string, RestrictionTally>& tally) {
  const auto start = Clock::now();
  SweepRecord rec{.p = b.p, .n = b.n, .r = b.r, .modulus = b.modulus, .phases = phases};
  const Residue r(b.r, part.d);
  std::map<i64, i64> by_rep;
  for (std::size_t i = 0; i < part.orbits.size(); ++i) by_rep[part.orbits[i].rep] = phases[i];
  const bool odd = b.p % 2 == 1;

  // Row l = 1 of the enumeration first: row 0 is <C> and never fails.
  const MonoMatrix a = normalizer_A(b.p, b.n, r, by_rep, b.modulus);
  if (auto bad = coset_failure(a)) {
    rec.witness = to_string(Element{1, bad->k}) + ": " + bad->failure.message();
    rec.millis = millis_since(start);
    return rec;
  }

  const GroupSpec g = GroupSpec::from_phases(b.p, b.n, r, by_rep, b.modulus);
  if (g.size() > cfg.element_cap) {
    rec.skipped = true;
    rec.witness = "group order " + std::to_string(g.size()) + " exceeds the element cap";
    rec.millis = millis_since(start);
    return rec;
  }
  const GroupVerdict verdict = is_permutation_like_group(g, cfg.structure_checks);
  if (!verdict.permutation_like) {
    rec.witness = to_string(*verdict.failing_element) + ": " + verdict.failure.message();
    rec.millis = millis_since(start);
    return rec;
  }
  rec.permutation_like = true;

  try {
    CertifyOptions opts;
    opts.oracle = cfg.oracle;
    const Certificate cert = build_certificate(g, true);
    rec.case_label = cert.case_label;
    restriction_ran = cert.evidence.restriction.has_value();
    if (restriction_ran) tally_restriction(*cert.evidence.restriction, tally);
    rec.certified = true;
    if (cfg.oracle) {
      const VerificationResult v = verify_certificate(cert, opts.verify);
      rec.oracle_verified = v.ok;
      if (!v.ok) {
        rec.certified = false;
        rec.witness = v.reason;
      }
    }
  } catch (const CounterexampleError& e) {
    rec.case_label = e.case_label();
    rec.witness = e.what();
  } catch (const Error& e) {
    rec.witness = e.what();
  }
  if (cfg.structure_checks && odd) rec.structure_check_failures = structure_failures(g, verdict);
  rec.violation = odd && (!rec.certified || !rec.structure_check_failures.empty());
  rec.millis = millis_since(start);
  return rec;
}

BlockResult run_block(const BlockSpec& b, const SweepConfig& cfg) {
  const auto start = Clock::now();
  const i64 d = checked_pow(b.p, b.n);
  const OrbitPartition part = mu_orbits(d, Residue(b.r, d));
  const auto orbit_count = static_cast<i64>(part.orbits.size());

  BlockResult out;
  BlockSummary& s = out.summary;
  s.p = b.p;
  s.n = b.n;
  s.r = b.r;
  s.modulus = b.modulus;
  s.orbits = orbit_count;
  s.space = saturating_pow(b.modulus, orbit_count);
  i64 negatives_kept = 0;

  auto account = [&](const std::vector<i64>& phases) {
    bool restriction_ran = false;
    SweepRecord rec = evaluate(b, part, phases, cfg, restriction_ran, s.restriction_checks);
    ++s.configs;
    if (rec.skipped) ++s.skipped;
    if (rec.permutation_like) ++s.permutation_like;
    if (rec.certified) {
      ++s.certified;
      ++s.cases[rec.case_label];
    }
    if (rec.oracle_verified) ++s.oracle_verified;
    if (rec.violation) ++s.violations;
    if (!rec.structure_check_failures.empty()) ++s.structure_check_failures;
    if (restriction_ran) ++s.restriction_runs;
    const bool negative = !rec.permutation_like && !rec.skipped;
    if (cfg.all_records || !negative || negatives_kept < cfg.negative_examples) {
      if (negative) ++negatives_kept;
      out.records.push_back(std::move(rec));
    }
  };

  if (s.space <= cfg.exhaustive_cap) {
    s.mode = "exhaustive";
    std::vector<i64> phases(static_cast<std::size_t>(orbit_count), 0);
    while (true) {
      ++s.draws;
      account(phases);
      std::size_t i = 0;
      while (i < phases.size() && ++phases[i] == b.modulus) phases[i++] = 0;
      if (i == phases.size()) break;
    }
  } else {
    s.mode = "sampled";
    std::mt19937_64 rng(cfg.seed ^ (static_cast<std::uint64_t>(b.p * 1000003 + b.n * 1009 + b.r) *
                                    0x9E3779B97F4A7C15ULL));
    std::uniform_int_distribution<i64> phase_dist(0, b.modulus - 1);
    std::uniform_int_distribution<i64> shift_dist(0, d - 1);
    std::uniform_int_distribution<int> kind_dist(0, 3);
    std::uniform_int_distribution<std::size_t> orbit_dist(0, part.orbits.size() - 1);
    std::set<std::vector<i64>> seen;
    const i64 step = b.modulus / d;
    for (i64 draw = 0; draw < cfg.samples; ++draw) {
      std::vector<i64> phases(static_cast<std::size_t>(orbit_count));
      const int kind = kind_dist(rng);
      if (kind < 2) {
        for (auto& e : phases) e = phase_dist(rng);
      } else {
        // Cycle products of A_0 C^t, where A_0 has trivial products.
        const i64 t = shift_dist(rng);
        for (std::size_t i = 0; i < part.orbits.size(); ++i) {
          i64 sum = 0;
          for (i64 j : part.orbits[i].members) sum += j;
          phases[i] = mul_mod(mul_mod(step, t, b.modulus), sum, b.modulus);
        }
        if (kind == 3) {
          auto& e = phases[orbit_dist(rng)];
          e = (e + 1 + phase_dist(rng) % (b.modulus - 1)) % b.modulus;
        }
      }
      ++s.draws;
      if (seen.insert(phases).second) account(phases);
    }
  }
  s.millis = millis_since(start);
  return out;
}

std::string join(const std::vector<i64>& xs, char sep) {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) os << sep;
    os << xs[i];
  }
  return os.str();
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

i64 SweepReport::total(i64 BlockSummary::*field) const {
  i64 acc = 0;
  for (const auto& b : blocks) acc += b.*field;
  return acc;
}

i64 SweepReport::violations() const {
  i64 acc = 0;
  for (const auto& b : blocks) {
    if (b.p % 2 == 1) acc += b.violations;
  }
  return acc;
}

SweepReport run_sweep(const SweepConfig& config) {
  SweepReport report;
  report.config = config;
  std::vector<BlockSpec> specs;
  for (i64 p : config.primes) {
    if (!is_prime(p)) throw Error("sweep prime " + std::to_string(p) + " is not prime");
    if (p == 2 && !config.explore_p2) throw Error("p = 2 needs the exploration flag");
    for (int n : config.ns) {
      if (n < 1) throw Error("n must be positive");
      const i64 d = checked_pow(p, n);
      const i64 m = config.modulus.value_or(std::max<i64>(p - 1, 1) * d);
      if (m % d != 0) throw Error("modulus must be a multiple of p^n");
      std::vector<i64> rs;
      if (config.r_values.empty()) {
        for (i64 r = 1; r < std::max<i64>(d, 2); ++r) {
          if (gcd(r, d) == 1) rs.push_back(r);
        }
      } else {
        for (i64 r : config.r_values) {
          const i64 rr = mod(r, d);
          if (gcd(rr, d) != 1) throw Error("r = " + std::to_string(r) + " is not a unit mod " + std::to_string(d));
          if (std::find(rs.begin(), rs.end(), rr) == rs.end()) rs.push_back(rr);
        }
      }
      for (i64 r : rs) specs.push_back({p, n, r, m});
    }
  }

  std::vector<BlockResult> results(specs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < specs.size(); i = next++) results[i] = run_block(specs[i], config);
  };
  const int threads = std::max(1, std::min<int>(config.threads, static_cast<int>(specs.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& res : results) {
    report.blocks.push_back(std::move(res.summary));
    for (auto& rec : res.records) report.records.push_back(std::move(rec));
  }
  return report;
}

nlohmann::json to_json(const SweepReport& report) {
  using nlohmann::json;
  const SweepConfig& c = report.config;
  json config{{"primes", c.primes},
              {"ns", c.ns},
              {"modulus", c.modulus ? json(*c.modulus) : json("(p-1) p^n")},
              {"r_values", c.r_values.empty() ? json("all units") : json(c.r_values)},
              {"explore_p2", c.explore_p2},
              {"oracle", c.oracle},
              {"structure_checks", c.structure_checks},
              {"exhaustive_cap", c.exhaustive_cap},
              {"samples", c.samples},
              {"element_cap", c.element_cap},
              {"seed", c.seed}};
  json blocks = json::array();
  for (const auto& b : report.blocks) {
    json cases = json::object();
    for (const auto& [k, v] : b.cases) cases[std::to_string(k)] = v;
    json checks = json::object();
    for (const auto& [name, t] : b.restriction_checks) checks[name] = {{"applicable", t.applicable}, {"passed", t.passed}};
    json entry{{"p", b.p},
               {"n", b.n},
               {"r", b.r},
               {"M", b.modulus},
               {"orbits", b.orbits},
               {"mode", b.mode},
               {"space", b.space},
               {"draws", b.draws},
               {"configs", b.configs},
               {"permutation_like", b.permutation_like},
               {"certified", b.certified},
               {"oracle_verified", b.oracle_verified},
               {"skipped", b.skipped},
               {"violations", b.violations},
               {"structure_check_failures", b.structure_check_failures},
               {"restriction_runs", b.restriction_runs},
               {"restriction_checks", std::move(checks)},
               {"cases", std::move(cases)}};
    if (c.timing) entry["millis"] = b.millis;
    blocks.push_back(std::move(entry));
  }
  json records = json::array();
  for (const auto& r : report.records) {
    json entry{{"p", r.p},
               {"n", r.n},
               {"r", r.r},
               {"M", r.modulus},
               {"phases", r.phases},
               {"skipped", r.skipped},
               {"permutation_like", r.permutation_like},
               {"certified", r.certified},
               {"case", r.case_label},
               {"oracle_verified", r.oracle_verified},
               {"violation", r.violation}};
    if (!r.witness.empty()) entry["element_failure_witness"] = r.witness;
    if (!r.structure_check_failures.empty()) entry["structure_check_failures"] = r.structure_check_failures;
    if (c.timing) entry["millis"] = r.millis;
    records.push_back(std::move(entry));
  }
  json totals{{"configs", report.total(&BlockSummary::configs)},
              {"permutation_like", report.total(&BlockSummary::permutation_like)},
              {"certified", report.total(&BlockSummary::certified)},
              {"oracle_verified", report.total(&BlockSummary::oracle_verified)},
              {"skipped", report.total(&BlockSummary::skipped)},
              {"structure_check_failures", report.total(&BlockSummary::structure_check_failures)},
              {"violations", report.violations()}};
  return {{"hypotheses", "p is an odd prime, C is a maximal cycle of order p^n, A normalizes <C>"},
          {"config", std::move(config)},
          {"blocks", std::move(blocks)},
          {"totals", std::move(totals)},
          {"records", std::move(records)}};
}

std::string to_csv(const SweepReport& report) {
  std::ostringstream os;
  os << std::boolalpha;
  os << "p,n,r,M,phases,skipped,permutation_like,certified,case,oracle_verified,violation,element_failure_witness";
  if (report.config.timing) os << ",millis";
  os << "\n";
  for (const auto& r : report.records) {
    os << r.p << ',' << r.n << ',' << r.r << ',' << r.modulus << ',' << join(r.phases, ';') << ',' << r.skipped
       << ',' << r.permutation_like << ',' << r.certified << ',' << r.case_label << ',' << r.oracle_verified << ','
       << r.violation << ',' << csv_quote(r.witness);
    if (report.config.timing) os << ',' << r.millis;
    os << "\n";
  }
  return os.str();
}

}  // namespace permlike::cli
