// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <thread>

#include "genlift/error.hpp"
#include "genlift/nielsen.hpp"
#include "genlift/verify.hpp"
#include "oracles.hpp"

using namespace genlift;

namespace {

struct Check {
  std::ostringstream notes;
  bool ok = true;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (!ok) notes << "; ";
      notes << what;
      ok = false;
    }
  }
};

Config acceptance_config() {
  Config c;
  c.threads = std::max(1u, std::thread::hardware_concurrency());
  return c;
}

std::multiset<std::uint64_t> generating_sizes(const OrbitDecomposition& d) {
  std::multiset<std::uint64_t> out;
  for (std::uint32_t id : d.generating_orbit_ids()) out.insert(d.orbit(id).size);
  return out;
}

void claim(Check& c, const ClaimReport& r) {
  std::string label = r.claim_id;
  if (!r.parameters.empty()) label += " " + r.parameters.dump();
  c.require(r.passed, label + " failed: " + r.evidence.dump());
}

void criterion1(Check& c) {
  Workspace ws(acceptance_config());
  const auto d = ws.nielsen_psl2(5);
  c.require(d->gamma_size() == 2280, "gamma size " + std::to_string(d->gamma_size()));
  c.require(generating_sizes(*d) == std::multiset<std::uint64_t>{600, 600, 1080},
            "Nielsen orbit sizes differ");
  const auto aut = aut_orbit_decomposition(*d);
  bool all120 = aut.orbits().size() == 19;
  for (const auto& r : aut.orbits()) all120 = all120 && r.size == 120;
  c.require(all120, "expected 19 PGammaL orbits of size 120");
  c.require(generating_sizes(joint_orbit_decomposition(*d)) ==
                std::multiset<std::uint64_t>{1080, 1200},
            "joint orbit sizes differ");
}

void criterion2(Check& c) {
  Workspace ws(acceptance_config());
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9, 11, 13}) claim(c, verify_trace_table(ws, q));
}

void criterion3(Check& c) {
  Workspace ws(acceptance_config());
  for (std::uint64_t q : {7, 11}) {
    const ClaimReport r = verify_prop_key(ws, q);
    claim(c, r);
    c.require(r.evidence["violations"] == 0, "violations at q=" + std::to_string(q));
  }
}

void criterion4(Check& c) {
  Workspace ws(acceptance_config());
  claim(c, verify_lemma5(ws));
  claim(c, verify_lemma7(ws));
}

void criterion5(Check& c) {
  Workspace ws(acceptance_config());
  for (std::uint64_t q : {4, 5, 7, 8, 11, 13}) claim(c, verify_theorem(ws, TheoremCase::kI, q));
  const auto g = ws.psl2(9);
  c.require(!is_mn_generated(*g, 2, 3), "PSL(2,9) is (2,3)-generated");
  c.require(is_mn_generated(*g, 3, 3), "PSL(2,9) is not (3,3)-generated");
}

void criterion6(Check& c) {
  Workspace ws(acceptance_config());
  for (std::uint64_t q : {7, 11, 13}) claim(c, verify_theorem(ws, TheoremCase::kII, q));
  const ClaimReport r = verify_s2p2(ws, 13);
  claim(c, r);
  const auto& w = r.evidence["witnesses"];
  const auto& s = r.evidence["squares_plus_two"];
  c.require(std::find(w.begin(), w.end(), "4") != w.end(), "4 is not a witness");
  c.require(std::find(s.begin(), s.end(), "4") == s.end(), "4 is of the form s^2+2");
}

void criterion7(Check& c) {
  Workspace ws(acceptance_config());
  for (auto [m, q] : {std::pair<std::uint64_t, std::uint64_t>{4, 7}, {7, 7}, {3, 11}, {5, 11}, {6, 11}}) {
    claim(c, verify_theorem(ws, TheoremCase::kIII, q, m));
  }
}

void criterion8(Check& c) {
  Workspace ws(acceptance_config());
  for (std::uint64_t q : {5, 7, 9, 11}) claim(c, verify_theorem(ws, TheoremCase::kIV, q));
}

void criterion9(Check& c) {
  Workspace ws(acceptance_config());
  claim(c, verify_psl25_lift(ws));
}

void criterion10(Check& c) {
  Workspace ws(acceptance_config());
  claim(c, verify_remark(ws, 7, 13));
}

void criterion11(Check& c) {
  Workspace ws(acceptance_config());
  const ClaimReport r = verify_miller_332(ws);
  claim(c, r);
  c.require(r.evidence["order"] == 288, "order");
  c.require(r.evidence["derived_length"] == 3, "derived length");
  c.require(r.evidence["abelianization"] == nlohmann::json{3, 3}, "abelianization");
  c.require(r.evidence["second_derived_order"] == 2, "second derived subgroup");
}

void criterion12(Check& c) {
  Workspace ws(acceptance_config());
  for (std::uint64_t m = 3; m <= 12; ++m) claim(c, verify_dihedral(ws, m));
  const ClaimReport r = verify_small_q_lifting(ws);
  claim(c, r);
}

void property(Check& c, const std::string& name, const testing::PropertyResult& r) {
  c.require(r.ok, name + ": " + r.detail);
}

void criterion13(Check& c) {
  for (std::uint64_t q : {5, 7, 9, 13, 16}) {
    property(c, "field axioms q=" + std::to_string(q),
             testing::check_field_axioms(*make_field_of_order(q), 10'000, 1000 + q));
  }
  for (std::uint64_t q : {5, 7, 9}) {
    property(c, "bracket q=" + std::to_string(q),
             testing::check_bracket_sign_independence(q, 1000, 2000 + q));
  }
  for (std::uint64_t q : {2, 3, 4, 5, 7}) {
    property(c, "orbit invariants q=" + std::to_string(q),
             testing::check_orbit_invariants_exhaustive(q));
  }
  std::vector<std::shared_ptr<const FiniteGroup>> small{
      std::make_shared<const FiniteGroup>(build_psl2(2)),
      std::make_shared<const FiniteGroup>(build_psl2(3)),
      std::make_shared<const FiniteGroup>(build_psl2(4)),
      std::make_shared<const FiniteGroup>(build_psl2(5)),
      std::make_shared<const FiniteGroup>(build_sl2(3)),
  };
  for (std::uint64_t m = 3; m <= 12; ++m)
    small.push_back(std::make_shared<const FiniteGroup>(build_dihedral(m)));
  for (const auto& g : small) property(c, "naive partition " + g->name(), testing::check_against_naive_partition(g));
  property(c, "smith normal form", testing::check_snf_random(1000, 3000));
  property(c, "Todd-Coxeter", testing::check_todd_coxeter_known());
}

struct Criterion {
  int id;
  const char* title;
  double limit_s;
  std::function<void(Check&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "PSL(2,5): 2280 generating pairs, Nielsen, PGammaL and joint orbits", 10, criterion1},
      {2, "trace spectrum equals the table for q <= 13", 600, criterion2},
      {3, "order-4 key proposition for q = 7, 11", 300, criterion3},
      {4, "cube-element lemmas in SL(2,5) and SL(2,7)", 60, criterion4},
      {5, "case (i) for q in {4,5,7,8,11,13}; PSL(2,9) (m,n)-generation", 600, criterion5},
      {6, "case (ii) for q in {7,11,13}; s^2+2 witness at q = 13", 600, criterion6},
      {7, "case (iii) for five (m,q) instances", 600, criterion7},
      {8, "case (iv) for q in {5,7,9,11}", 600, criterion8},
      {9, "three lifting orbits of PSL(2,5)", 60, criterion9},
      {10, "tau over (2,7)-generating pairs of PSL(2,13)", 600, criterion10},
      {11, "Miller group facts", 5, criterion11},
      {12, "dihedral claims m = 3..12 and small-q lifting", 60, criterion12},
      {13, "property suites", 600, criterion13},
  };
  int failed = 0;
  for (const Criterion& cr : criteria) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(s < cr.limit_s, "runtime " + std::to_string(s) + " s over " +
                                  std::to_string(cr.limit_s) + " s");
    std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << cr.id << ": " << cr.title << " ("
              << std::fixed;
    std::cout.precision(2);
    std::cout << s << " s)";
    if (!c.ok) std::cout << " -- " << c.notes.str();
    std::cout << std::endl;
    failed += c.ok ? 0 : 1;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
