// vsdepth: block structures, certificates and Stanley depth of squarefree
// Veronese ideals from the command line.
//
// Exit codes: 0 success / valid, 1 invalid certificate or unproved claim,
// 2 usage error.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

#include "vsdepth/blocks.hpp"
#include "vsdepth/construct.hpp"
#include "vsdepth/intervals.hpp"
#include "vsdepth/solver.hpp"

using namespace vsdepth;

namespace {

constexpr int kUsage = 2;

int usage_error(const std::string& what, const std::string& synopsis) {
  std::cerr << "vsdepth: " << what << "\n" << "usage: " << synopsis << "\n";
  return kUsage;
}

std::string join_blocks(const BlockStructure& bs) {
  std::string out;
  for (const CircBlock& b : bs.blocks) {
    if (!out.empty()) out += ",";
    // Clockwise from the start, so wrapping blocks read {7,8,1}.
    std::string inner;
    for (int p = b.start;; p = cw_next(b.universe, p)) {
      if (!inner.empty()) inner += ",";
      inner += std::to_string(p);
      if (p == b.end) break;
    }
    out += "{" + inner + "}";
  }
  return out;
}

std::string join_gaps(const BlockStructure& bs) {
  std::string out;
  for (const PointSet& g : bs.gaps) {
    if (!out.empty()) out += ",";
    out += format_set(g);
  }
  return out;
}

int cmd_blocks(int n, const std::string& set_text, const std::string& density_text) {
  const PointSet a = parse_set(n, set_text);
  const Density delta = parse_density(density_text);
  const BlockStructure bs = block_structure(n, a, delta);
  std::cout << "blocks " << join_blocks(bs) << "\n";
  std::cout << "gaps " << join_gaps(bs) << "\n";
  std::cout << "f = " << format_set(a | bs.gap_union()) << "\n";
  return 0;
}

int cmd_construct(int n, int d, const std::string& out) {
  const Certificate cert = construct_general(n, d);
  if (out.empty()) {
    std::cout << to_text(cert);
  } else {
    write_certificate_file(out, cert);
    std::cout << "wrote " << out << " n=" << n << " d=" << d << " depth=" << cert.claimed_depth()
              << " intervals=" << cert.size() << "\n";
  }
  return 0;
}

int cmd_verify(const std::string& path) {
  Certificate cert = [&] {
    try {
      return read_certificate_file(path);
    } catch (const Error& e) {
      if (e.code() != Errc::Parse) throw;
      // Unreadable files are usage errors, malformed ones are invalid.
      if (std::string(e.what()).rfind("cannot open", 0) == 0) throw;
      std::cout << "INVALID parse " << e.what() << "\n";
      std::exit(1);
    }
  }();
  const VerifyReport r = verify_certificate(cert);
  if (!r.valid) {
    std::cout << "INVALID " << r.first_violation->describe() << "\n";
    return 1;
  }
  std::cout << "VALID depth=" << *r.achieved_depth << "\n";
  return 0;
}

int cmd_render(const std::string& path, bool stanley) {
  const Certificate cert = read_certificate_file(path);
  if (stanley) {
    std::cout << render_stanley(cert);
    return 0;
  }
  const VerifyReport r = verify_certificate(cert);
  std::cout << "n=" << cert.universe() << " d=" << cert.min_generator_size()
            << " k=" << cert.claimed_depth() << " intervals=" << cert.size() << " "
            << (r.valid ? "valid" : "invalid") << "\n";
  for (const RawInterval& iv : cert.raw_intervals()) {
    std::cout << "[" << format_set(iv.bottom) << ", " << format_set(iv.top)
              << "] dim=" << iv.dimension() << "\n";
  }
  return r.valid ? 0 : 1;
}

int cmd_bounds(int n, int d) {
  const Bounds b = bounds(n, d);
  std::cout << "lower=" << b.lower_certified << " upper=" << b.upper
            << " exact=" << (b.known_exact ? std::to_string(*b.known_exact) : "unknown")
            << " conjectured=" << b.conjectured << "\n";
  return 0;
}

SearchBudget budget_from(double secs, std::uint64_t nodes) {
  SearchBudget b;
  b.wall_time = std::chrono::milliseconds(static_cast<long long>(secs * 1000.0));
  b.max_nodes = nodes;
  return b;
}

int cmd_sdepth(int n, int d, int k, const SearchBudget& budget, const std::string& out) {
  SolveResult r = k > 0 ? certify_at_least(n, d, k, budget) : exact_sdepth(n, d, budget);
  if (k > 0) {
    std::cout << "sdepth>=" << k << " " << status_name(r.status);
  } else if (r.status == SolveStatus::Proved) {
    std::cout << "sdepth=" << r.value_or_bound << " proved";
  } else {
    std::cout << "sdepth>=" << r.value_or_bound << " " << status_name(r.status);
  }
  std::cout << " nodes=" << r.nodes_explored << "\n";
  if (!out.empty() && r.certificate) write_certificate_file(out, *r.certificate);
  return r.status == SolveStatus::Proved ? 0 : 1;
}

int cmd_scan(int max_n, const SearchBudget& budget) {
  const auto rows = conjecture_scan(max_n, budget, thread_count());
  std::cout << format_scan_table(rows);
  for (const ScanRow& row : rows) {
    if (row.discrepancy || row.result.status != SolveStatus::Proved) return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stanley depth of squarefree Veronese ideals"};
  app.require_subcommand(1);

  int n = 0;
  int d = 0;
  int k = 0;
  int max_n = 0;
  std::string set_text;
  std::string density_text;
  std::string cert_path;
  std::string out_path;
  bool stanley = false;
  bool exact = false;
  double budget_secs = 60.0;
  std::uint64_t budget_nodes = SearchBudget{}.max_nodes;

  const std::string blocks_syn = "vsdepth blocks --n N --set {a,b,...} --density p/q";
  const std::string construct_syn = "vsdepth construct --n N --d D [--out FILE]";
  const std::string verify_syn = "vsdepth verify --cert FILE";
  const std::string render_syn = "vsdepth render --cert FILE [--stanley]";
  const std::string bounds_syn = "vsdepth bounds --n N --d D";
  const std::string sdepth_syn =
      "vsdepth sdepth --n N --d D [--exact | --k K] [--budget-secs S] [--budget-nodes M] "
      "[--out FILE]";
  const std::string scan_syn = "vsdepth scan --max-n N [--budget-secs S] [--budget-nodes M]";

  auto* blocks = app.add_subcommand("blocks", "block structure of a set for a density");
  blocks->add_option("--n", n)->required();
  blocks->add_option("--set", set_text)->required();
  blocks->add_option("--density", density_text)->required();

  auto* construct = app.add_subcommand("construct", "certificate for the lower bound");
  construct->add_option("--n", n)->required();
  construct->add_option("--d", d)->required();
  construct->add_option("--out", out_path);

  auto* verify = app.add_subcommand("verify", "check a certificate file");
  verify->add_option("--cert", cert_path)->required();

  auto* render = app.add_subcommand("render", "print a certificate");
  render->add_option("--cert", cert_path)->required();
  render->add_flag("--stanley", stanley, "Stanley decomposition form");

  auto* bnds = app.add_subcommand("bounds", "known bounds on sdepth(I_{n,d})");
  bnds->add_option("--n", n)->required();
  bnds->add_option("--d", d)->required();

  auto* sdepth = app.add_subcommand("sdepth", "exact search");
  sdepth->add_option("--n", n)->required();
  sdepth->add_option("--d", d)->required();
  auto* exact_flag = sdepth->add_flag("--exact", exact, "exact value (default)");
  sdepth->add_option("--k", k, "only decide sdepth >= K")->excludes(exact_flag);
  sdepth->add_option("--budget-secs", budget_secs)->check(CLI::PositiveNumber);
  sdepth->add_option("--budget-nodes", budget_nodes)->check(CLI::PositiveNumber);
  sdepth->add_option("--out", out_path);

  auto* scan = app.add_subcommand("scan", "compare exact values with the formula");
  scan->add_option("--max-n", max_n)->required();
  scan->add_option("--budget-secs", budget_secs)->check(CLI::PositiveNumber);
  scan->add_option("--budget-nodes", budget_nodes)->check(CLI::PositiveNumber);

  auto synopsis = [&]() -> std::string {
    if (blocks->parsed()) return blocks_syn;
    if (construct->parsed()) return construct_syn;
    if (verify->parsed()) return verify_syn;
    if (render->parsed()) return render_syn;
    if (bnds->parsed()) return bounds_syn;
    if (sdepth->parsed()) return sdepth_syn;
    if (scan->parsed()) return scan_syn;
    return "vsdepth {blocks|construct|verify|render|bounds|sdepth|scan} ...";
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return usage_error(e.what(), synopsis());
  }

  try {
    if (blocks->parsed()) return cmd_blocks(n, set_text, density_text);
    if (construct->parsed()) return cmd_construct(n, d, out_path);
    if (verify->parsed()) return cmd_verify(cert_path);
    if (render->parsed()) return cmd_render(cert_path, stanley);
    if (bnds->parsed()) return cmd_bounds(n, d);
    const SearchBudget budget = budget_from(budget_secs, budget_nodes);
    if (sdepth->parsed()) {
      if (sdepth->count("--k") && k < 1) return usage_error("--k must be positive", sdepth_syn);
      return cmd_sdepth(n, d, sdepth->count("--k") ? k : 0, budget, out_path);
    }
    if (scan->parsed()) return cmd_scan(max_n, budget);
  } catch (const Error& e) {
    if (e.code() == Errc::RefusesUnverified) {
      std::cout << "INVALID " << e.what() << "\n";
      return 1;
    }
    return usage_error(std::string(errc_name(e.code())) + ": " + e.what(), synopsis());
  }
  return usage_error("no subcommand", synopsis());
}
