// covlab — a finite laboratory for translation coverings: exact
// everywhere-different covering families, tree relabelings, witness
// structures with verifiable covering certificates, exact rational interval
// schemes, and compression/rearrangement constructions.
//
// Exit codes: 0 success (exhaustive or sampled), 1 refuted, 2 usage/refused.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "covlab/experiment.hpp"
#include "covlab/serialize.hpp"
#include "covlab/util.hpp"

namespace {

using covlab::ExperimentConfig;
using covlab::ResultRecord;

int finish(const ExperimentConfig& cfg, const std::string& out_path) {
  ResultRecord rec = covlab::run_experiment(cfg);
  std::string text = rec.to_json();
  if (!out_path.empty())
    covlab::write_file(out_path, text);
  else
    std::cout << text << "\n";
  if (rec.status == covlab::RunStatus::Refuted) {
    std::cerr << "refuted; witness recorded in the payload\n";
  } else if (rec.status == covlab::RunStatus::Refused) {
    std::cerr << "refused: see payload for the reason\n";
  }
  return rec.exit_code();
}

void add_common(CLI::App* sub, ExperimentConfig& cfg, std::string& out_path) {
  sub->add_option_function<std::string>(
      "--budget", [&cfg](const std::string& v) { cfg.kv["budget"] = v; },
      "enumeration budget (default " + std::to_string(covlab::kDefaultBudget) +
          "; env COVLAB_BUDGET overrides)");
  sub->add_option("--out", out_path, "write the result record to this path");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite covering laboratory"};
  app.require_subcommand(1);

  ExperimentConfig cfg;
  std::string out_path;

  auto opt = [&cfg](CLI::App* sub, const std::string& flag, const std::string& key,
                    const std::string& help, bool required = false) {
    auto* o = sub->add_option_function<std::string>(
        flag, [&cfg, key](const std::string& v) { cfg.kv[key] = v; }, help);
    if (required) o->required();
    return o;
  };

  // eq --profile 3,3 --exact|--greedy|--bounds
  auto* eq = app.add_subcommand("eq", "everywhere-different covering numbers");
  opt(eq, "--profile", "profile", "alphabet sizes, e.g. 3,3", true);
  bool f_exact = false, f_greedy = false, f_bounds = false;
  eq->add_flag("--exact", f_exact, "exact minimum with certified minimality (default)");
  eq->add_flag("--greedy", f_greedy, "greedy upper bound family");
  eq->add_flag("--bounds", f_bounds, "lower bounds only");
  add_common(eq, cfg, out_path);
  eq->callback([&] {
    cfg.command = "eq";
    cfg.kv["mode"] = f_greedy ? "greedy" : f_bounds ? "bounds" : "exact";
  });

  auto* relabel = app.add_subcommand("relabel", "push a family into a tree's branches");
  opt(relabel, "--tree", "tree", "tree file (sorted stem : sigma lines)", true);
  opt(relabel, "--family", "family", "family file (CSV rows of digits)", true);
  opt(relabel, "--width", "width", "branching width (default from family digits)");
  add_common(relabel, cfg, out_path);
  relabel->callback([&] { cfg.command = "relabel"; });

  auto* witness = app.add_subcommand("witness", "witness structures and covering certificates");
  auto* winst = witness->add_subcommand("instantiate", "build, check, and verify");
  opt(winst, "--kind", "kind", "lattice|sym|blocked|torus|banach", true);
  opt(winst, "--m", "m", "lattice alphabet");
  opt(winst, "--n", "n", "lattice length / sym levels");
  opt(winst, "--sizes", "sizes", "blocked product moduli, e.g. 2,2,2,2,2,2");
  opt(winst, "--blocks", "blocks", "block lengths, e.g. 2,2,2");
  opt(winst, "--bits", "bits", "torus bits");
  opt(winst, "--dims", "dims", "banach block dimensions");
  opt(winst, "--deltas", "deltas", "banach deltas as rationals, e.g. 1/2,1/4");
  opt(winst, "--seed", "seed", "seed (mandatory for sampled modes)");
  opt(winst, "--samples", "samples", "sample count");
  opt(winst, "--cert", "out", "write the certificate JSON here");
  add_common(winst, cfg, out_path);
  winst->callback([&] {
    cfg.command = "witness";
    cfg.kv["action"] = "instantiate";
  });
  auto* wver = witness->add_subcommand("verify", "re-verify a stored certificate");
  opt(wver, "--cert", "cert", "certificate JSON path", true);
  add_common(wver, cfg, out_path);
  wver->callback([&] {
    cfg.command = "witness";
    cfg.kv["action"] = "verify";
  });
  witness->require_subcommand(1);

  auto* homeo = app.add_subcommand("homeo", "interval scheme homeomorphisms");
  opt(homeo, "--window", "window", "label window M", true);
  opt(homeo, "--depth", "depth", "scheme depth", true);
  opt(homeo, "--branch", "branch", "branch labels, e.g. 1,-2", true);
  opt(homeo, "--p0", "p0", "tracked point as a rational, e.g. 1/2");
  opt(homeo, "--grid", "grid", "lift verification grid (default 32)");
  bool f_verify = false;
  homeo->add_flag("--verify", f_verify, "run containment and lift checks (always on)");
  add_common(homeo, cfg, out_path);
  homeo->callback([&] { cfg.command = "homeo"; });

  auto* compress = app.add_subcommand("compress", "meagre-to-nowhere-dense compression");
  opt(compress, "--model", "model", "model config file", true);
  opt(compress, "--pieces", "pieces", "pieces file (digit rows, blank line between sets)", true);
  add_common(compress, cfg, out_path);
  compress->callback([&] { cfg.command = "compress"; });

  auto* rearrange = app.add_subcommand("rearrange", "rearrangement via disjoint translates");
  opt(rearrange, "--model", "model", "model config file", true);
  opt(rearrange, "--pieces", "pieces", "pieces file", true);
  opt(rearrange, "--u", "u", "designated cylinder stem, e.g. 0,0", true);
  opt(rearrange, "--x", "x", "disjoint translate elements, ';'-separated digit lists");
  opt(rearrange, "--q", "q", "covering translate elements, ';'-separated digit lists");
  add_common(rearrange, cfg, out_path);
  rearrange->callback([&] { cfg.command = "rearrange"; });

  auto* verify = app.add_subcommand("verify", "re-verify a stored certificate");
  opt(verify, "--cert", "cert", "certificate JSON path", true);
  add_common(verify, cfg, out_path);
  verify->callback([&] { cfg.command = "verify"; });

  auto* report = app.add_subcommand("report", "tables from result records");
  opt(report, "--records", "records", "record paths, ';'-separated", true);
  opt(report, "--csv", "csv", "CSV output path prefix");
  add_common(report, cfg, out_path);
  report->callback([&] { cfg.command = "report"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return finish(cfg, out_path);
}
