#pragma once

// Command-line front end. run_cli() is the whole program; tools/no3theta.cpp
// only forwards argv and the standard streams.
//
// Exit codes: 0 success, 1 verify found violations, 2 usage or input error.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "no3theta/json_io.hpp"
#include "no3theta/service.hpp"

namespace no3theta::cli {

enum ExitCode { kOk = 0, kViolations = 1, kUsage = 2 };

/// Rows printed top (y = n) to bottom; '#' chosen, '.' free.
inline std::string render(const Construction& c) {
  std::string out;
  const int n = c.dim().n();
  for (int y = n; y >= 1; --y) {
    for (int x = 1; x <= n; ++x) {
      out += c.contains({x, y}) ? '#' : '.';
      if (x < n) out += ' ';
    }
    out += '\n';
  }
  return out;
}

namespace detail {

inline std::string read_all(std::istream& in) {
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::string read_input(const std::string& path, std::istream& in) {
  if (path.empty() || path == "-") return read_all(in);
  std::ifstream file(path);
  if (!file) throw ParseError("cannot open input file '" + path + "'");
  return read_all(file);
}

struct Options {
  int n = 0;
  std::string theta;
  std::string format = "json";
  std::string input = "-";
  std::size_t limit = 0;
  std::string kind;
  bool transpose = false;
  std::string slope;
  std::string mode = "exact";
  std::uint64_t seed = 0;
  std::uint64_t budget_nodes = 0;
  double budget_seconds = 0;
  bool no_symmetry = false;
  int restarts = 16;
  int oracle_max_n = kDefaultOracleMaxN;
  std::string host = "127.0.0.1";
  int port = 8765;
  int max_n = kDefaultMaterializeCap;
  int workers = 2;
};

inline int cmd_verify(const Options& o, std::istream& in, std::ostream& out) {
  const Construction c = io::parse_construction(read_input(o.input, in));
  if (o.n != 0 && o.n != c.dim().n()) {
    throw DomainError("--n " + std::to_string(o.n) + " does not match the file's n=" + std::to_string(c.dim().n()));
  }
  const AngleSpec theta = parse_theta(o.theta);
  const auto result = verify(c, theta, o.limit ? std::optional<std::size_t>(o.limit) : std::nullopt);
  if (o.format == "text") {
    if (result.peaceful()) {
      out << "peaceful\n";
    } else {
      out << "violations: " << result.violations.size() << (result.truncated ? "+" : "") << "\n";
      for (const auto& t : result.violations) out << "  " << to_string(t) << " " << to_string(classify_triple(t)) << "\n";
    }
  } else {
    out << io::dump(io::verify_json(c, theta, result));
  }
  return result.peaceful() ? kOk : kViolations;
}

inline int cmd_construct(const Options& o, std::ostream& out) {
  if (o.kind == "two-rows") {
    const Construction c = two_rows(GridDim(o.n), o.transpose);
    out << (o.format == "text" ? render(c) : io::dump(io::to_json(c)));
    return kOk;
  }
  if (o.kind == "witness") {
    const Witness w = witness(parse_theta(o.theta));
    if (o.format == "text") {
      out << "n=" << w.dim.n() << " vertex " << to_string(w.points[0]) << " triple " << to_string(w.triple) << "\n"
          << render(w.construction());
    } else {
      out << io::dump(io::witness_json(w));
    }
    return kOk;
  }
  throw ParseError("unknown construction kind '" + o.kind + "' (two-rows, witness)");
}

inline int cmd_bounds(const Options& o, std::ostream& out) {
  const GridDim dim(o.n);
  const AngleSpec theta = parse_theta(o.theta);
  if (o.format == "text") {
    const auto lb = lower_bound(theta, dim);
    const auto ub = upper_bound(theta, dim);
    out << "lower " << (lb.value ? std::to_string(*lb.value) : "unknown") << "\n"
        << "upper " << ub.value << " (" << ub.formula << (ub.external ? ", external" : "") << ")\n";
  } else {
    out << io::dump(io::bounds_json(theta, dim));
  }
  return kOk;
}

inline int cmd_solve(const Options& o, std::ostream& out) {
  const GridDim dim(o.n);
  const AngleSpec theta = parse_theta(o.theta);
  SearchConfig cfg;
  cfg.mode = parse_search_mode(o.mode);
  cfg.rng_seed = o.seed;
  cfg.symmetry_breaking = !o.no_symmetry;
  cfg.greedy_restarts = o.restarts;
  cfg.oracle_max_n = o.oracle_max_n;
  if (o.budget_nodes) cfg.node_budget = o.budget_nodes;
  if (o.budget_seconds > 0) cfg.time_budget = std::chrono::milliseconds(static_cast<long long>(o.budget_seconds * 1000));
  const SolveReport r = solve(dim, theta, cfg);
  if (o.format == "text") {
    out << "size " << r.size << (r.optimal ? " (optimal)" : "") << ", nodes " << r.nodes_explored << ", "
        << r.elapsed.count() << " ms\n"
        << render(r.best);
  } else {
    out << io::dump(io::solve_json(theta, r));
  }
  return kOk;
}

inline int cmd_buckets(const Options& o, std::ostream& out) {
  const GridDim dim(o.n);
  const Slope slope = parse_slope(o.slope);
  if (o.format == "text") {
    const SlopeBucketIndex index(dim, slope);
    out << index.count() << " buckets of slope " << slope.to_string() << " on G_" << dim.n() << "\n";
    for (int y = dim.n(); y >= 1; --y) {
      for (int x = 1; x <= dim.n(); ++x) out << (x > 1 ? " " : "") << index.id_of({x, y});
      out << "\n";
    }
  } else {
    out << io::dump(io::buckets_json(slope, dim));
  }
  return kOk;
}

inline int cmd_serve(const Options& o, std::ostream& out) {
  Service service({o.host, o.port, o.max_n, o.workers});
  const int port = service.bind();
  out << "listening on http://" << o.host << ":" << port << "\n" << std::flush;
  return service.listen() ? kOk : kUsage;
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  detail::Options o;
  CLI::App app{"Peaceful constructions: no three grid points forming a given angle"};
  app.require_subcommand(1);

  auto add_theta = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--theta", o.theta, "angle: tan=[-]p/q or deg=45|90|135|180");
    if (required) opt->required();
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
  };

  auto* verify_cmd = app.add_subcommand("verify", "check a construction for forbidden triples");
  verify_cmd->add_option("--n", o.n, "expected grid size");
  add_theta(verify_cmd, true);
  verify_cmd->add_option("--input,input", o.input, "construction JSON file, '-' for stdin");
  verify_cmd->add_option("--limit", o.limit, "stop after this many violations");
  add_format(verify_cmd);

  auto* construct_cmd = app.add_subcommand("construct", "emit a known construction");
  construct_cmd->add_option("--kind", o.kind, "two-rows or witness")->required();
  construct_cmd->add_option("--n", o.n, "grid size (two-rows)");
  add_theta(construct_cmd, false);
  construct_cmd->add_flag("--transpose", o.transpose, "columns instead of rows (two-rows)");
  add_format(construct_cmd);

  auto* bounds_cmd = app.add_subcommand("bounds", "known lower and upper bounds");
  bounds_cmd->add_option("--n", o.n, "grid size")->required();
  add_theta(bounds_cmd, true);
  add_format(bounds_cmd);

  auto* solve_cmd = app.add_subcommand("solve", "search for a maximum peaceful construction");
  solve_cmd->add_option("--n", o.n, "grid size")->required();
  add_theta(solve_cmd, true);
  solve_cmd->add_option("--mode", o.mode, "oracle, exact or greedy")->check(CLI::IsMember({"oracle", "exact", "greedy"}));
  solve_cmd->add_option("--seed", o.seed, "random seed for greedy restarts");
  solve_cmd->add_option("--budget-nodes", o.budget_nodes, "stop after this many search nodes");
  solve_cmd->add_option("--budget-seconds", o.budget_seconds, "stop after this much wall time");
  solve_cmd->add_option("--restarts", o.restarts, "greedy restarts");
  solve_cmd->add_option("--oracle-max-n", o.oracle_max_n, "largest n the exhaustive oracle accepts");
  solve_cmd->add_flag("--no-symmetry", o.no_symmetry, "disable root symmetry breaking");
  add_format(solve_cmd);

  auto* buckets_cmd = app.add_subcommand("buckets", "list the lines of one slope and check the count formula");
  buckets_cmd->add_option("--n", o.n, "grid size")->required();
  buckets_cmd->add_option("--slope", o.slope, "p/q, -p/q, p or vertical")->required();
  add_format(buckets_cmd);

  auto* serve_cmd = app.add_subcommand("serve", "run the local HTTP service");
  serve_cmd->add_option("--host", o.host, "bind address");
  serve_cmd->add_option("--port", o.port, "port (0 picks a free one)");
  serve_cmd->add_option("--max-n", o.max_n, "largest grid the service accepts");
  serve_cmd->add_option("--workers", o.workers, "concurrent solve jobs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*verify_cmd) return detail::cmd_verify(o, in, out);
    if (*construct_cmd) return detail::cmd_construct(o, out);
    if (*bounds_cmd) return detail::cmd_bounds(o, out);
    if (*solve_cmd) return detail::cmd_solve(o, out);
    if (*buckets_cmd) return detail::cmd_buckets(o, out);
    if (*serve_cmd) return detail::cmd_serve(o, out);
  } catch (const Error& e) {
    err << "error [" << e.code() << "]: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace no3theta::cli
