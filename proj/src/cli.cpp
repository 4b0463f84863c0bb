#include "genlift/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <sstream>
#include <thread>

#include "genlift/error.hpp"
#include "genlift/fpgroups.hpp"
#include "genlift/verify.hpp"

namespace genlift::cli {

using nlohmann::json;

namespace {

struct GlobalOptions {
  std::string cache_dir;
  bool no_cache = false;
  std::uint64_t pair_budget = DecomposeOptions{}.pair_budget;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::string output;
  std::string format = "json";
};

Config make_config(const GlobalOptions& g) {
  Config c;
  c.pair_budget = g.pair_budget;
  c.threads = g.threads;
  if (!g.no_cache) {
    c.cache_dir = g.cache_dir.empty() ? default_cache_dir() : std::filesystem::path(g.cache_dir);
  }
  return c;
}

std::pair<std::uint64_t, std::uint64_t> parse_mn(const std::string& s) {
  const auto comma = s.find(',');
  auto number = [&](std::string_view t) {
    std::uint64_t v = 0;
    if (t.empty()) throw PreconditionError("bad --mn value '" + s + "', expected m,n");
    for (char c : t) {
      if (c < '0' || c > '9' || v > UINT32_MAX) {
        throw PreconditionError("bad --mn value '" + s + "', expected m,n");
      }
      v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    if (v == 0) throw PreconditionError("--mn entries must be positive");
    return v;
  };
  if (comma == std::string::npos) throw PreconditionError("bad --mn value '" + s + "', expected m,n");
  const std::string_view view(s);
  return {number(view.substr(0, comma)), number(view.substr(comma + 1))};
}

std::string mn_key(std::pair<std::uint64_t, std::uint64_t> mn) {
  return std::to_string(mn.first) + "," + std::to_string(mn.second);
}

json orbit_table(const OrbitDecomposition& d,
                 const std::vector<std::pair<std::uint64_t, std::uint64_t>>& mns) {
  const FiniteGroup& g = d.host();
  const Field& f = *g.field();
  json rows = json::array();
  for (std::uint32_t id : d.generating_orbit_ids()) {
    const OrbitRecord& r = d.orbit(id);
    json mn = json::object();
    for (const auto& q : mns) mn[mn_key(q)] = d.is_mn_free(id, q.first, q.second);
    json row{{"id", r.id},
             {"size", r.size},
             {"rep", json::array({r.rep.first, r.rep.second})},
             {"rep_matrices", json::array({to_string(g.matrix(r.rep.first)),
                                           to_string(g.matrix(r.rep.second))})},
             {"tau", r.tau ? json(f.to_string(*r.tau)) : json(nullptr)},
             {"commutator_order", r.commutator_order},
             {"mn_free", mn}};
    rows.push_back(std::move(row));
  }
  return rows;
}

void print_orbit_rows(std::ostream& os, const json& rows) {
  os << "  id      size  tau        |[a,b]|  rep\n";
  for (const json& r : rows) {
    std::ostringstream line;
    line << "  " << std::left;
    line.width(6);
    line << r["id"].get<std::uint64_t>() << std::right;
    line.width(6);
    line << r["size"].get<std::uint64_t>() << "  " << std::left;
    line.width(11);
    line << (r["tau"].is_null() ? std::string("-") : r["tau"].get<std::string>());
    line.width(9);
    line << r["commutator_order"].get<std::uint64_t>();
    line << r["rep_matrices"][0].get<std::string>() << " " << r["rep_matrices"][1].get<std::string>();
    for (const auto& [key, free] : r["mn_free"].items()) {
      line << "  " << key << (free.get<bool>() ? ":free" : ":lifts");
    }
    os << line.str() << "\n";
  }
}

void print_claim_table(std::ostream& os, const ClaimReport& r) {
  os << r.claim_id;
  if (!r.parameters.empty()) os << " " << r.parameters.dump();
  os << ": " << (r.passed ? "PASS" : "FAIL") << "\n";
  if (r.claim_id == "all") {
    for (const json& c : r.evidence["claims"]) {
      os << "  " << (c["passed"].get<bool>() ? "PASS " : "FAIL ") << c["claim_id"].get<std::string>();
      if (!c["parameters"].empty()) os << " " << c["parameters"].dump();
      os << "\n";
    }
    return;
  }
  for (const auto& [key, value] : r.evidence.items()) {
    os << "  " << key << ": " << value.dump() << "\n";
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nielsen orbits of generating pairs of PSL(2,q) and claim checks", "genlift"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tool_version()));

  GlobalOptions g;
  app.add_option("--cache-dir", g.cache_dir,
                 "Orbit cache directory (default: $GENLIFT_CACHE_DIR or ~/.cache/genlift)");
  app.add_flag("--no-cache", g.no_cache, "Neither read nor write the orbit cache");
  app.add_option("--pair-budget", g.pair_budget, "Largest |G|^2 to decompose")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1u, 4096u));
  app.add_option("--output,-o", g.output, "Write the report here instead of stdout");
  app.add_option("--format", g.format, "json or table")->check(CLI::IsMember({"json", "table"}));

  std::uint64_t q = 0;
  auto* spectrum = app.add_subcommand("spectrum", "Trace spectrum of PSL(2,q) against the table");
  spectrum->fallthrough();
  spectrum->add_option("--q", q, "Field order")->required();

  bool aut = false;
  std::vector<std::string> mn_args;
  auto* orbits = app.add_subcommand("orbits", "Nielsen orbits on generating pairs of PSL(2,q)");
  orbits->fallthrough();
  orbits->add_option("--q", q, "Field order")->required();
  orbits->add_flag("--aut", aut, "Also list PGammaL(2,q)-orbits");
  orbits->add_option("--mn", mn_args, "Report (m,n)-freeness, as m,n (repeatable)");

  std::string claim;
  std::optional<std::uint64_t> vq, vm, vmax_q;
  auto* verify = app.add_subcommand("verify", "Run one claim driver");
  verify->fallthrough();
  verify->add_option("claim", claim, "Claim id")->required();
  verify->add_option("--q", vq, "Field order");
  verify->add_option("--m", vm, "Element order parameter");
  verify->add_option("--max-q", vmax_q, "Largest q for 'all'");

  std::string file;
  std::vector<std::string> subgroup_words;
  std::size_t max_cosets = 1'000'000;
  bool emit_table = false;
  auto* coset = app.add_subcommand("coset-enum", "Todd-Coxeter coset enumeration");
  coset->fallthrough();
  coset->add_option("file", file, "Presentation file")->required();
  coset->add_option("--subgroup", subgroup_words, "Subgroup generator word (repeatable)");
  coset->add_option("--max", max_cosets, "Maximum coset definitions")->check(CLI::PositiveNumber);
  coset->add_flag("--emit-table", emit_table, "Include the coset table in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  std::ofstream file_out;
  if (!g.output.empty()) {
    file_out.open(g.output, std::ios::trunc);
    if (!file_out) {
      err << "genlift: cannot write " << g.output << "\n";
      return kUsage;
    }
  }
  std::ostream& os = g.output.empty() ? out : file_out;
  const bool table = g.format == "table";

  try {
    if (spectrum->parsed() || verify->parsed()) {
      Workspace ws(make_config(g));
      ClaimReport r;
      if (spectrum->parsed()) {
        r = verify_trace_table(ws, q);
      } else {
        ClaimArgs args{vq, vm, vmax_q};
        r = run_claim(ws, claim, args);
      }
      if (table) {
        print_claim_table(os, r);
      } else {
        os << to_json(r).dump(2) << "\n";
      }
      return r.passed ? kPass : kClaimFailed;
    }

    if (orbits->parsed()) {
      std::vector<std::pair<std::uint64_t, std::uint64_t>> mns;
      for (const auto& s : mn_args) mns.push_back(parse_mn(s));
      Workspace ws(make_config(g));
      const auto d = ws.nielsen_psl2(q);
      json report{{"schema", "genlift.orbits/1"},
                  {"q", q},
                  {"group_order", d->host().order()},
                  {"gamma_size", d->gamma_size()},
                  {"orbits", orbit_table(*d, mns)}};
      if (aut) {
        const auto a = aut_orbit_decomposition(*d);
        report["aut_group_order"] = pgaml_order(q);
        report["aut_orbits"] = orbit_table(a, mns);
      }
      if (table) {
        os << d->host().name() << ": |G| = " << d->host().order()
           << ", generating pairs = " << d->gamma_size() << ", Nielsen orbits = "
           << report["orbits"].size() << "\n";
        print_orbit_rows(os, report["orbits"]);
        if (aut) {
          os << "PGammaL(2," << q << ")-orbits = " << report["aut_orbits"].size() << "\n";
          print_orbit_rows(os, report["aut_orbits"]);
        }
      } else {
        os << report.dump(2) << "\n";
      }
      return kPass;
    }

    // coset-enum
    std::ifstream in(file);
    if (!in) {
      err << "genlift: cannot read " << file << "\n";
      return kUsage;
    }
    std::stringstream text;
    text << in.rdbuf();
    const Presentation p = parse_presentation(text.str());
    std::vector<Word> sub;
    for (const auto& w : subgroup_words) sub.push_back(parse_word(w, p));
    const CosetEnumeration e = todd_coxeter(p, sub, max_cosets);
    const bool complete = e.outcome == CosetOutcome::kComplete;
    json report{{"schema", "genlift.cosets/1"},
                {"generators", p.generator_names},
                {"relators", json::array()},
                {"subgroup", subgroup_words},
                {"max_cosets", max_cosets},
                {"outcome", complete ? "complete" : "overflow"},
                {"cosets", complete ? json(e.table.coset_count) : json(nullptr)},
                {"cosets_defined", e.cosets_defined}};
    for (const Word& w : p.relators) report["relators"].push_back(to_string(w, p));
    if (complete && emit_table) {
      json rows = json::array();
      const std::size_t cols = 2 * std::size_t{e.table.generator_count};
      for (std::size_t c = 0; c < e.table.coset_count; ++c) {
        rows.push_back(std::vector<std::int32_t>(e.table.action.begin() + c * cols,
                                                 e.table.action.begin() + (c + 1) * cols));
      }
      report["table"] = rows;
    }
    if (table) {
      if (complete) {
        os << "cosets: " << e.table.coset_count << "\n";
      } else {
        os << "overflow after " << e.cosets_defined << " coset definitions\n";
      }
    } else {
      os << report.dump(2) << "\n";
    }
    return complete ? kPass : kOverflow;
  } catch (const BudgetExceeded& e) {
    err << "genlift: budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const ParseError& e) {
    err << "genlift: parse error: " << e.what() << "\n";
    return kParse;
  } catch (const PreconditionError& e) {
    err << "genlift: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "genlift: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "genlift: internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace genlift::cli
