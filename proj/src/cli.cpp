#include "twistscl/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "twistscl/homology.hpp"
#include "twistscl/proof_replay.hpp"
#include "twistscl/trace_words.hpp"

namespace twistscl::cli {

IntRange IntRange::parse(const std::string& text) {
  auto to_int = [&](const std::string& part) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(part, &used);
    } catch (const std::exception&) {
      throw UsageError("bad integer '" + part + "' in '" + text + "'");
    }
    if (used != part.size()) throw UsageError("bad integer '" + part + "' in '" + text + "'");
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int v = to_int(text);
    return {v, v};
  }
  IntRange r{to_int(text.substr(0, dots)), to_int(text.substr(dots + 2))};
  if (r.hi < r.lo) throw UsageError("empty range '" + text + "'");
  return r;
}

namespace {

using nlohmann::json;

std::string command_name(Command c) {
  switch (c) {
    case Command::bound: return "bound";
    case Command::table: return "table";
    case Command::verify_homology: return "verify-homology";
    case Command::verify_lemma8: return "verify-lemma8";
    case Command::verify_identity: return "verify-identity";
    case Command::replay: return "replay";
  }
  return "?";
}

void require_g(const RunConfig& c, int min_g) {
  if (!c.g) throw UsageError(command_name(c.command) + ": --g is required");
  if (c.g->lo < min_g) throw UsageError("--g: genus must be >= " + std::to_string(min_g));
}

std::vector<int> h_values(const HSelection& hs, int lo, int hi) {
  std::vector<int> out;
  if (hs.all) {
    for (int h = lo; h <= hi; ++h) out.push_back(h);
  } else {
    for (int h : hs.values)
      if (h >= lo && h <= hi) out.push_back(h);
  }
  return out;
}

int run_bound(const RunConfig& c, std::ostream& out) {
  require_g(c, 2);
  if (!c.g->single()) throw UsageError("--g: bound takes a single genus (use table for ranges)");
  if (!c.h || c.h->all || c.h->values.size() != 1) throw UsageError("--h: bound takes a single h");
  const int g = c.g->lo, h = c.h->values.front();
  if (h < 0 || h > g) throw UsageError("--h: h must lie in 0.." + std::to_string(g));

  const auto res = bound(g, h);
  const auto decimal = to_decimal(res.value, c.precision);
  switch (c.format) {
    case Format::text:
      out << to_string(res.value) << " (≈" << decimal << ")" << (res.via_symmetry ? " via symmetry" : "") << "\n";
      break;
    case Format::json: {
      auto j = res.to_json();
      j["decimal"] = decimal;
      out << j.dump(2) << "\n";
      break;
    }
    case Format::csv: out << table_csv(table(g, g, HSelection{false, {h}}, c.precision)); break;
  }
  return ok;
}

int run_table(const RunConfig& c, std::ostream& out) {
  require_g(c, 2);
  const auto rows = table(c.g->lo, c.g->hi, c.h.value_or(HSelection{}), c.precision, c.threads);
  switch (c.format) {
    case Format::text: out << table_text(rows); break;
    case Format::csv: out << table_csv(rows); break;
    case Format::json: out << table_json(rows).dump(2) << "\n"; break;
  }
  return ok;
}

int run_verify_homology(const RunConfig& c, std::ostream& out) {
  const IntRange gs = c.g.value_or(IntRange{2, 8});
  if (gs.lo < 1) throw UsageError("--g: genus must be >= 1");

  std::vector<HomologyCheck> checks;
  for (int g = gs.lo; g <= gs.hi; ++g) {
    checks.push_back(check_twists_symplectic(g));
    checks.push_back(check_braid_relations(g));
    checks.push_back(check_commutation_relations(g));
    checks.push_back(check_hyperelliptic(g));
    const HSelection hs = c.h.value_or(HSelection{});
    for (int h : h_values(hs, 1, g)) checks.push_back(check_chain_relation(g, h));
    for (int h : h_values(hs, 1, g / 2)) {
      checks.push_back(check_T1_power(g, h));
      checks.push_back(check_eq5(g, h));
    }
  }

  std::size_t passed = 0;
  for (const auto& ch : checks) passed += ch.passed ? 1 : 0;
  switch (c.format) {
    case Format::text:
      for (const auto& ch : checks) {
        out << (ch.passed ? "pass  " : "FAIL  ") << ch.name;
        for (const auto& [key, value] : ch.params.items()) out << ' ' << key << '=' << value.dump();
        if (!ch.passed) out << "  max deviation " << ch.max_deviation;
        out << "\n";
      }
      out << passed << "/" << checks.size() << " checks passed (homology-level verification)\n";
      break;
    case Format::csv:
      out << "name,params,passed,max_deviation\n";
      for (const auto& ch : checks) {
        std::string params;
        for (const auto& [key, value] : ch.params.items())
          params += (params.empty() ? "" : ";") + key + "=" + value.dump();
        out << ch.name << ',' << params << ',' << (ch.passed ? "true" : "false") << ',' << ch.max_deviation << "\n";
      }
      break;
    case Format::json: {
      json j{{"verification_level", "homology-level verification"}, {"passed", passed}, {"total", checks.size()}};
      j["checks"] = json::array();
      for (const auto& ch : checks) j["checks"].push_back(ch.to_json());
      out << j.dump(2) << "\n";
      break;
    }
  }
  return passed == checks.size() ? ok : verification_failed;
}

int run_verify_lemma8(const RunConfig& c, std::ostream& out) {
  const IntRange ns = c.n.value_or(IntRange{12, 12});
  if (ns.lo < 1) throw UsageError("--n: must be >= 1");

  std::vector<ConjugationCertificate> certs;
  for (int n = ns.lo; n <= ns.hi; ++n) certs.push_back(lemma8_verify(n));
  std::size_t valid = 0;
  for (const auto& cert : certs) valid += cert.valid ? 1 : 0;

  switch (c.format) {
    case Format::text:
      for (const auto& cert : certs) out << cert.text();
      if (certs.size() > 1) out << valid << "/" << certs.size() << " certificates valid\n";
      break;
    case Format::csv:
      out << "n,steps,valid_steps,valid\n";
      for (const auto& cert : certs)
        out << cert.n << ',' << cert.steps.size() << ',' << cert.valid_steps() << ',' << (cert.valid ? "true" : "false")
            << "\n";
      break;
    case Format::json:
      if (certs.size() == 1) {
        out << certs.front().to_json().dump(2) << "\n";
      } else {
        json arr = json::array();
        for (const auto& cert : certs) arr.push_back(cert.to_json());
        out << arr.dump(2) << "\n";
      }
      break;
  }
  return valid == certs.size() ? ok : verification_failed;
}

int run_verify_identity(const RunConfig& c, std::ostream& out) {
  const IntRange gs = c.g.value_or(IntRange{2, 300});
  if (gs.lo < 2) throw UsageError("--g: genus must be >= 2");

  struct Row {
    int g, h;
    Rational lhs, rhs;
  };
  std::vector<Row> rows;
  for (int g = gs.lo; g <= gs.hi; ++g)
    for (int h : h_values(c.h.value_or(HSelection{}), 1, g / 2))
      rows.push_back({g, h, defect_weight_sum(g, h), defect_weight_closed_form(g, h)});
  std::size_t holds = 0;
  for (const auto& r : rows) holds += r.lhs == r.rhs ? 1 : 0;

  switch (c.format) {
    case Format::text:
      for (const auto& r : rows)
        if (r.lhs != r.rhs) out << "FAIL  g=" << r.g << " h=" << r.h << "  " << to_string(r.lhs) << " != " << to_string(r.rhs) << "\n";
      out << holds << "/" << rows.size() << " coefficient identities hold for " << gs.lo << " <= g <= " << gs.hi << "\n";
      break;
    case Format::csv:
      out << "g,h,lhs,rhs,holds\n";
      for (const auto& r : rows)
        out << r.g << ',' << r.h << ',' << to_string(r.lhs) << ',' << to_string(r.rhs) << ','
            << (r.lhs == r.rhs ? "true" : "false") << "\n";
      break;
    case Format::json: {
      json j{{"checked", rows.size()}, {"holds", holds}, {"failures", json::array()}};
      for (const auto& r : rows)
        if (r.lhs != r.rhs) j["failures"].push_back({{"g", r.g}, {"h", r.h}, {"lhs", to_string(r.lhs)}, {"rhs", to_string(r.rhs)}});
      out << j.dump(2) << "\n";
      break;
    }
  }
  return holds == rows.size() ? ok : verification_failed;
}

int run_replay(const RunConfig& c, std::ostream& out) {
  require_g(c, 2);
  const HSelection hs = c.h.value_or(HSelection{});
  if (!hs.all)
    for (int h : hs.values)
      if (h < 1 || h > c.g->hi / 2)
        throw UsageError("--h: h = " + std::to_string(h) + " out of range, need 1 <= h <= floor(g/2)");

  std::vector<ReplayReport> reports;
  for (int g = c.g->lo; g <= c.g->hi; ++g)
    for (int h : h_values(hs, 1, g / 2)) reports.push_back(replay_report(g, h));
  if (reports.empty()) throw UsageError("--h: no valid (g, h) pairs in range");

  bool all = true;
  for (const auto& r : reports) all = all && r.all_passed();
  switch (c.format) {
    case Format::text:
      for (const auto& r : reports) out << r.text();
      break;
    case Format::csv:
      out << "g,h,k,r,bound_num,bound_den,all_passed\n";
      for (const auto& r : reports)
        out << r.g << ',' << r.h << ',' << r.k << ',' << r.r << ',' << numerator_of(r.bound) << ','
            << denominator_of(r.bound) << ',' << (r.all_passed() ? "true" : "false") << "\n";
      break;
    case Format::json:
      if (reports.size() == 1) {
        out << reports.front().to_json().dump(2) << "\n";
      } else {
        json arr = json::array();
        for (const auto& r : reports) arr.push_back(r.to_json());
        out << arr.dump(2) << "\n";
      }
      break;
  }
  return all ? ok : verification_failed;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.precision < 0) {
    err << "error: --precision must be non-negative\n";
    return usage_error;
  }
  // Buffer so a usage error found mid-way never leaves partial data behind.
  std::ostringstream buffer;
  int status = ok;
  try {
    switch (config.command) {
      case Command::bound: status = run_bound(config, buffer); break;
      case Command::table: status = run_table(config, buffer); break;
      case Command::verify_homology: status = run_verify_homology(config, buffer); break;
      case Command::verify_lemma8: status = run_verify_lemma8(config, buffer); break;
      case Command::verify_identity: status = run_verify_identity(config, buffer); break;
      case Command::replay: status = run_replay(config, buffer); break;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  }

  if (config.out_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(config.out_path, std::ios::binary);
    if (!file) {
      err << "error: --out: cannot open '" << config.out_path << "'\n";
      return usage_error;
    }
    file << buffer.str();
  }
  return status;
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact separating-twist scl bounds and homology-level verification of their derivation.\n"
               "Decimal output (--precision) is presentation only; every value is computed as an exact rational."};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1, 1);

  RunConfig config;
  std::string g_text, h_text, n_text, format_text = "text";

  const std::map<std::string, Command> commands{
      {"bound", Command::bound},
      {"table", Command::table},
      {"verify-homology", Command::verify_homology},
      {"verify-lemma8", Command::verify_lemma8},
      {"verify-identity", Command::verify_identity},
      {"replay", Command::replay}};
  const std::map<std::string, std::string> help{
      {"bound", "Upper bound on scl(t_{s_h}) for one (g, h)"},
      {"table", "Bounds for a genus range, with reference constants"},
      {"verify-homology", "Check the twist relations on first homology (default g = 2..8)"},
      {"verify-lemma8", "Conjugation certificate for the interleaved/straight products (default n = 12)"},
      {"verify-identity", "Check the defect coefficient identity (default g = 2..300)"},
      {"replay", "Rebuild the block decomposition and re-derive the bound"}};

  for (const auto& [name, cmd] : commands) {
    auto* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("--g", g_text, "Genus, or range a..b");
    sub->add_option("--h", h_text, "h value, comma list, or 'all'");
    if (cmd == Command::verify_lemma8) sub->add_option("--n", n_text, "Number of generators, or range a..b");
    sub->add_option("--format", format_text, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
    sub->add_option("--precision", config.precision, "Decimal digits in rendered values (presentation only)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--threads", config.threads, "Worker threads for table")->check(CLI::PositiveNumber);
    sub->add_option("--out", config.out_path, "Write output to FILE");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  }

  for (const auto& [name, cmd] : commands)
    if (app.got_subcommand(name)) config.command = cmd;
  config.format = format_text == "csv" ? Format::csv : format_text == "json" ? Format::json : Format::text;
  auto parse_flag = [&](const char* flag, const std::string& text, auto&& parse) {
    if (text.empty()) return true;
    try {
      parse(text);
      return true;
    } catch (const std::exception& e) {
      err << "error: " << flag << ": " << e.what() << "\n";
      return false;
    }
  };
  if (!parse_flag("--g", g_text, [&](const std::string& t) { config.g = IntRange::parse(t); }) ||
      !parse_flag("--n", n_text, [&](const std::string& t) { config.n = IntRange::parse(t); }) ||
      !parse_flag("--h", h_text, [&](const std::string& t) { config.h = HSelection::parse(t); }))
    return usage_error;
  return run(config, out, err);
}

}  // namespace twistscl::cli
