// flagcert: command-line front end for the flag-algebra certification pipeline.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "flagcert/certificate.hpp"
#include "flagcert/density_cache.hpp"
#include "flagcert/parallel.hpp"
#include "flagcert/pipeline.hpp"
#include "flagcert/report.hpp"
#include "flagcert/sdpa_io.hpp"

using namespace flagcert;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kNoConvergence = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int t = 4;
  int l = 6;
  int k = -1;  // type order; default l - 2
  std::string types = "all";
  std::string parity = "+-";
  bool no_sharing = false;
  double tolerance = 1e-9;
  int max_iterations = 200;
  std::string denominator;  // empty: search 10^1..10^10
  std::string bound;
  std::string margin = "1/1000000";
  std::string cache_dir = ".flagcert-cache";
  bool no_cache = false;
  int threads = 0;
  std::string out;
  std::string tsv;
  std::string sdpa;
  std::string solution;
  std::string solution_format = "native";
  std::string certificate;
  bool verbose = false;
  int n = 6;
  int type_index = 0;
};

int thread_count(const RunConfig& c) { return c.threads > 0 ? c.threads : default_thread_count(); }

CacheOptions cache_options(const RunConfig& c) {
  CacheOptions o;
  o.dir = c.cache_dir;
  o.enabled = !c.no_cache;
  o.threads = thread_count(c);
  return o;
}

std::vector<std::size_t> parse_index_list(const std::string& text, std::size_t limit) {
  std::vector<std::size_t> out;
  std::stringstream s(text);
  for (std::string tok; std::getline(s, tok, ',');) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(tok, &pos);
    } catch (const std::exception&) {
      throw UsageError("bad type index '" + tok + "'");
    }
    if (pos != tok.size() || v >= limit) throw UsageError("type index out of range: '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

ObjectiveSpec spec_from(const RunConfig& c) {
  ObjectiveSpec s;
  s.t = c.t;
  s.l = c.l;
  const int k = c.k >= 0 ? c.k : c.l - 2;
  if (k < 0 || k > 4) throw UsageError("type order must be in 0..4");
  const auto all = enumerate_types(k);
  if (c.types == "all") {
    s.types = all;
  } else if (c.types != "none") {
    for (auto i : parse_index_list(c.types, all.size())) s.types.push_back(all[i]);
  }
  if (c.parity != "+-" && c.parity != "-+") {
    if (c.parity != "+" && c.parity != "-") throw UsageError("parity must be '+', '-' or '+-'");
    s.parity.assign(s.types.size(), {c.parity == "+", c.parity == "-"});
  }
  s.complement_sharing = !c.no_sharing;
  return s;
}

IpmOptions ipm_from(const RunConfig& c) {
  IpmOptions o;
  o.gap_tolerance = c.tolerance;
  o.feasibility_tolerance = c.tolerance;
  o.max_iterations = c.max_iterations;
  o.verbose = c.verbose;
  return o;
}

PipelineConfig pipeline_from(const RunConfig& c, PipelineConfig base) {
  base.ipm = ipm_from(c);
  base.cache = cache_options(c);
  base.threads = thread_count(c);
  if (!c.bound.empty()) base.target_bound = parse_rational(c.bound);
  if (!c.denominator.empty()) base.denominators = {BigInt(c.denominator)};
  base.margin = parse_rational(c.margin);
  return base;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void print_report_summary(const SlackReport& r) {
  const auto& row = r.rows.at(r.tightest_row());
  std::printf("blocks PSD: %s\nslacks nonnegative: %s\ntightest graph: %zu (slack %.6e)\n", r.all_psd ? "yes" : "no",
              r.all_slacks_nonnegative ? "yes" : "no", row.graph_index, to_double(row.diff()));
}

Solution obtain_solution(const RunConfig& c, const SdpProblem& p) {
  if (c.solution.empty()) {
    Solution s = solve(p, ipm_from(c));
    if (s.reduced_accuracy)
      std::fprintf(stderr, "warning: solver stalled; using an iterate with gap %.2e, infeasibility %.2e\n",
                   s.relative_gap, std::max(s.primal_infeasibility, s.dual_infeasibility));
    return s;
  }
  std::ifstream in(c.solution);
  if (!in) throw UsageError("cannot read " + c.solution);
  if (c.solution_format == "native") return read_solution(in, p);
  if (c.solution_format == "csdp") return read_csdp_solution(in, p, to_sdpa(p));
  throw UsageError("solution format must be 'native' or 'csdp'");
}

int finish_pipeline(const PipelineResult& r, const RunConfig& c) {
  if (!c.out.empty()) open_out(c.out) << certificate_to_json(r.certificate) << '\n';
  if (!c.tsv.empty()) {
    auto out = open_out(c.tsv);
    write_slack_tsv(out, r.report);
  }
  print_report_summary(r.report);
  if (!r.verified) {
    std::printf("verification FAILED at bound %s\n", to_string(r.certificate.bound).c_str());
    return kVerifyFailed;
  }
  std::printf("denominator: %s\ncertified bound: %s\n", r.denominator.get_str().c_str(),
              to_string(r.certificate.bound).c_str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flagcert: flag-algebra bounds with exact certificates"};
  app.set_config("--config", "", "key=value configuration file");
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig c;
  app.add_option("-t,--clique", c.t, "clique order t");
  app.add_option("-l,--order", c.l, "expansion order l");
  app.add_option("-k,--type-order", c.k, "order of the types (default l-2)");
  app.add_option("--types", c.types, "'all', 'none' or comma-separated type indices");
  app.add_option("--parity", c.parity, "'+', '-' or '+-'");
  app.add_flag("--no-sharing", c.no_sharing, "one matrix per type instead of per complementary pair");
  app.add_option("--tol", c.tolerance, "solver gap and feasibility tolerance");
  app.add_option("--max-iter", c.max_iterations, "solver iteration cap")->check(CLI::PositiveNumber);
  app.add_option("--denominator", c.denominator, "rounding denominator (default: search 10..10^10)");
  app.add_option("--bound", c.bound, "bound to certify, e.g. 1/35");
  app.add_option("--margin", c.margin, "tolerance around the numerical lambda when choosing the bound");
  app.add_option("--cache-dir", c.cache_dir, "density table cache directory");
  app.add_flag("--no-cache", c.no_cache, "recompute density tables");
  app.add_option("--threads", c.threads, "worker threads (default FLAGCERT_THREADS or all cores)");
  app.add_option("-o,--out", c.out, "output file");
  app.add_option("--tsv", c.tsv, "slack report TSV output");
  app.add_option("--sdpa", c.sdpa, "write the SDPA problem instead of solving");
  app.add_option("--solution", c.solution, "use this solution file instead of solving");
  app.add_option("--solution-format", c.solution_format, "'native' or 'csdp'");
  app.add_option("--certificate", c.certificate, "certificate JSON");
  app.add_flag("-v,--verbose", c.verbose, "solver progress on stderr");

  auto* enumerate = app.add_subcommand("enumerate", "list the graphs of order n, one edge list per line");
  enumerate->add_option("-n", c.n, "graph order")->required();
  auto* types = app.add_subcommand("types", "list the types of order k");
  types->add_option("-k", c.k, "type order")->required();
  auto* densities = app.add_subcommand("densities", "objective column, or averaged pair table with --type-index");
  auto* type_index_opt = densities->add_option("--type-index", c.type_index, "type index within enumerate_types(k)");
  auto* build = app.add_subcommand("build", "assemble the relaxation (and export with --sdpa)");
  auto* solve_cmd = app.add_subcommand("solve", "solve the relaxation numerically");
  auto* round = app.add_subcommand("round", "solve (or import) and round to a certificate");
  auto* verify = app.add_subcommand("verify", "verify a certificate from scratch");
  auto* report = app.add_subcommand("report", "objective table and L-column comparison against the shipped reference");
  auto* goodman = app.add_subcommand("goodman", "t=3 pipeline over the order-1 type");
  auto* m4 = app.add_subcommand("m4", "t=4, l=6 pipeline over all order-4 types");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (enumerate->parsed()) {
      if (c.n < 1 || c.n > 8) throw UsageError("-n must be in 1..8");
      for (const auto& g : enumerate_graphs(c.n)) std::cout << format_edge_list(g) << '\n';
      return kOk;
    }
    if (types->parsed()) {
      if (c.k < 0 || c.k > 4) throw UsageError("-k must be in 0..4");
      const auto all = enumerate_types(c.k);
      std::cout << "# index\ttype\t|Aut|\tcomplement\tdim+\tdim-\n";
      for (std::size_t i = 0; i < all.size(); ++i) {
        const auto partner = complement_partner(all, i);
        const auto split = invariant_split(all[i], c.k + 1);
        std::cout << i << '\t' << (c.k == 0 ? std::string("0:") : format_graph_line(all[i].graph)) << '\t'
                  << aut_group(all[i]).size() << '\t' << partner->index << '\t' << split.plus.size() << '\t'
                  << split.minus.size() << '\n';
      }
      return kOk;
    }
    if (densities->parsed()) {
      if (type_index_opt->count() == 0) {
        const auto graphs = enumerate_graphs(c.l);
        const auto obj = objective_column(c.t, c.l);
        std::cout << "# G\tobjective\tgraph\n";
        for (std::size_t g = 0; g < graphs.size(); ++g)
          std::cout << g << '\t' << to_string(obj[g]) << '\t' << format_edge_list(graphs[g]) << '\n';
        return kOk;
      }
      const int k = c.k >= 0 ? c.k : c.l - 2;
      if (k < 0 || k > 4) throw UsageError("type order must be in 0..4");
      const auto all = enumerate_types(k);
      if (c.type_index < 0 || static_cast<std::size_t>(c.type_index) >= all.size())
        throw UsageError("type index out of range");
      const auto table = cached_pair_table(all[c.type_index], k + 1, k + 1, c.l, cache_options(c));
      write_density_table(std::cout, table);
      return kOk;
    }
    if (build->parsed() || solve_cmd->parsed() || round->parsed()) {
      const SdpProblem p = build_problem(spec_from(c), cache_options(c));
      std::fprintf(stderr, "%zu constraints, %zu blocks\n", p.constraint_count(), p.blocks.size());
      if (!c.sdpa.empty()) {
        auto out = open_out(c.sdpa);
        write_sdpa(out, to_sdpa(p));
        return kOk;
      }
      if (build->parsed()) {
        for (const auto& b : p.blocks) std::cout << b.id << '\t' << b.dim << '\n';
        return kOk;
      }
      const Solution s = obtain_solution(c, p);
      std::fprintf(stderr, "lambda %.12f (1/%.6f)\n", s.lambda, 1.0 / s.lambda);
      if (solve_cmd->parsed()) {
        if (c.out.empty()) {
          write_solution(std::cout, s);
        } else {
          auto out = open_out(c.out);
          write_solution(out, s);
        }
        return kOk;
      }
      PipelineConfig base;
      base.spec = spec_from(c);
      base.denominators = default_denominators();
      base.target_bound = c.bound.empty() ? Rational(0) : parse_rational(c.bound);
      const auto r = certify_solution(p, s, pipeline_from(c, base));
      return finish_pipeline(r, c);
    }
    if (verify->parsed()) {
      if (c.certificate.empty()) throw UsageError("verify needs --certificate");
      const Certificate cert = certificate_from_json(read_file(c.certificate));
      const SlackReport r = verify_certificate(cert, thread_count(c));
      if (!c.tsv.empty()) {
        auto out = open_out(c.tsv);
        write_slack_tsv(out, r);
      }
      print_report_summary(r);
      std::printf("%s bound: %s\n", r.passed() ? "certified" : "REJECTED", to_string(cert.bound).c_str());
      return r.passed() ? kOk : kVerifyFailed;
    }
    if (report->parsed()) {
      const auto r = l_column_check();
      if (c.tsv.empty()) {
        write_l_column_tsv(std::cout, r);
      } else {
        auto out = open_out(c.tsv);
        write_l_column_tsv(out, r);
      }
      if (!c.certificate.empty()) {
        const SlackReport s = verify_certificate(certificate_from_json(read_file(c.certificate)), thread_count(c));
        write_slack_tsv(std::cout, s);
      }
      std::fprintf(c.tsv.empty() ? stderr : stdout, "L column: %s (%zu rows, max deviation %.3e)\n",
                   r.passed() ? "PASS" : "FAIL", r.rows.size(), r.max_deviation);
      return r.passed() ? kOk : kVerifyFailed;
    }
    if (goodman->parsed() || m4->parsed()) {
      PipelineConfig base = goodman->parsed() ? goodman_config() : m4_config();
      if (m4->parsed() && c.no_sharing) base.spec.complement_sharing = false;
      if (!c.sdpa.empty()) {
        auto out = open_out(c.sdpa);
        write_sdpa(out, to_sdpa(build_problem(base.spec, cache_options(c))));
        return kOk;
      }
      const auto config = pipeline_from(c, base);
      auto say = [](const std::string& s) { std::fprintf(stderr, "%s\n", s.c_str()); };
      PipelineResult r;
      if (c.solution.empty()) {
        r = run_pipeline(config, say);
      } else {
        const SdpProblem p = build_problem(config.spec, config.cache);
        r = certify_solution(p, obtain_solution(c, p), config, say);
      }
      std::printf("numerical lambda: %.10f\n", r.solution.lambda);
      return finish_pipeline(r, c);
    }
  } catch (const SolverError& e) {
    std::fprintf(stderr, "flagcert: solver: %s\n", e.what());
    return kNoConvergence;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "flagcert: %s\n", e.what());
    return kUsage;
  }
  return kUsage;
}
