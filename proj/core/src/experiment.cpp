#include "covlab/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "covlab/banach.hpp"
#include "covlab/compression.hpp"
#include "covlab/ed_family.hpp"
#include "covlab/graded.hpp"
#include "covlab/homeo.hpp"
#include "covlab/instances.hpp"
#include "covlab/serialize.hpp"
#include "covlab/torus.hpp"
#include "covlab/tree_relabel.hpp"
#include "covlab/witness.hpp"

namespace covlab {

using nlohmann::json;

std::string ExperimentConfig::canonical_text() const {
  std::string out = "command = " + command + "\n";
  for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
  return out;
}

ExperimentConfig ExperimentConfig::from_text(const std::string& text) {
  auto kv = parse_kv_text(text);
  auto it = kv.find("command");
  if (it == kv.end()) throw RefusalError("experiment config missing 'command'");
  ExperimentConfig cfg;
  cfg.command = it->second;
  kv.erase(it);
  cfg.kv = std::move(kv);
  return cfg;
}

std::string ExperimentConfig::get(const std::string& key) const {
  auto it = kv.find(key);
  if (it == kv.end()) throw RefusalError("missing required parameter '" + key + "'");
  return it->second;
}

std::string ExperimentConfig::get_or(const std::string& key, const std::string& fallback) const {
  auto it = kv.find(key);
  return it == kv.end() ? fallback : it->second;
}

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Exhaustive: return "exhaustive";
    case RunStatus::Sampled: return "sampled";
    case RunStatus::Refuted: return "refuted";
    case RunStatus::Refused: return "refused";
  }
  return "?";
}

static RunStatus run_status_from_string(const std::string& s) {
  if (s == "exhaustive") return RunStatus::Exhaustive;
  if (s == "sampled") return RunStatus::Sampled;
  if (s == "refuted") return RunStatus::Refuted;
  if (s == "refused") return RunStatus::Refused;
  throw RefusalError("unknown run status: '" + s + "'");
}

std::string ResultRecord::to_json() const {
  json j;
  j["schema"] = "covlab.record/1";
  j["tool_version"] = tool_version;
  json cfg;
  cfg["command"] = config.command;
  for (const auto& [k, v] : config.kv) cfg["params"][k] = v;
  j["config"] = cfg;
  std::ostringstream hash_hex;
  hash_hex << std::hex << config.hash();
  j["config_hash"] = hash_hex.str();
  j["status"] = to_string(status);
  j["payload"] = json::parse(payload_json.empty() ? "{}" : payload_json);
  j["timing_ms"] = timing_ms;
  return j.dump(2);
}

ResultRecord ResultRecord::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw RefusalError(std::string("record is not valid JSON: ") + e.what());
  }
  if (j.value("schema", "") != "covlab.record/1")
    throw RefusalError("not a result record (missing schema tag)");
  ResultRecord rec;
  rec.tool_version = j.value("tool_version", "");
  rec.config.command = j.at("config").at("command").get<std::string>();
  if (j["config"].contains("params"))
    for (const auto& [k, v] : j["config"]["params"].items())
      rec.config.kv[k] = v.get<std::string>();
  rec.status = run_status_from_string(j.at("status").get<std::string>());
  rec.payload_json = j.at("payload").dump(2);
  rec.timing_ms = j.value("timing_ms", 0ull);
  return rec;
}

int ResultRecord::exit_code() const {
  switch (status) {
    case RunStatus::Exhaustive:
    case RunStatus::Sampled: return 0;
    case RunStatus::Refuted: return 1;
    case RunStatus::Refused: return 2;
  }
  return 2;
}

std::uint64_t resolve_budget(const ExperimentConfig& config) {
  if (config.has("budget")) return std::stoull(config.get("budget"));
  if (const char* env = std::getenv("COVLAB_BUDGET")) return std::stoull(env);
  return kDefaultBudget;
}

namespace {

json bounds_to_json(const BoundReport& b) {
  json j;
  j["counting_lb"] = b.counting_lb;
  j["pair_lb"] = b.pair_lb;
  if (b.greedy_ub) j["greedy_ub"] = *b.greedy_ub;
  if (b.exact) j["exact"] = *b.exact;
  return j;
}

json family_payload(const EDFamily& fam) {
  json j;
  j["profile"] = fam.profile.sizes();
  j["members"] = fam.members;
  j["status"] = to_string(fam.status);
  if (fam.refutation) j["refutation_witness"] = *fam.refutation;
  return j;
}

RunStatus status_of_family(const EDFamily& fam) {
  switch (fam.status) {
    case FamilyStatus::VerifiedCovering: return RunStatus::Exhaustive;
    case FamilyStatus::SampledOk: return RunStatus::Sampled;
    case FamilyStatus::Refuted: return RunStatus::Refuted;
    case FamilyStatus::Unverified: return RunStatus::Refused;
  }
  return RunStatus::Refused;
}

RunStatus status_of_cert(const CoveringCertificate& cert) {
  switch (cert.status) {
    case CertStatus::Exhaustive: return RunStatus::Exhaustive;
    case CertStatus::Sampled: return RunStatus::Sampled;
    case CertStatus::Refuted: return RunStatus::Refuted;
    case CertStatus::Unverified: return RunStatus::Refused;
  }
  return RunStatus::Refused;
}

json hypotheses_to_json(const HypothesisReport& rep) {
  json j;
  j["h1"] = rep.h1;
  j["h2"] = rep.h2;
  j["h3"] = rep.h3;
  j["h4"] = rep.h4;
  if (rep.h2_witness_branch) j["h2_witness_branch"] = *rep.h2_witness_branch;
  if (rep.h3_witness_stem) j["h3_witness_stem"] = *rep.h3_witness_stem;
  if (rep.h4_witness)
    j["h4_witness"] = {{"level", rep.h4_witness->level},
                       {"label_i", rep.h4_witness->label_i},
                       {"label_j", rep.h4_witness->label_j},
                       {"element", rep.h4_witness->element}};
  return j;
}

std::pair<RunStatus, json> run_eq(const ExperimentConfig& cfg) {
  Profile profile = Profile::parse(cfg.get("profile"));
  std::string mode = cfg.get_or("mode", "exact");
  std::uint64_t budget = resolve_budget(cfg);
  json payload;
  payload["profile"] = profile.sizes();

  if (mode == "bounds") {
    payload["bounds"] = bounds_to_json(eq_lower_bound(profile));
    return {RunStatus::Exhaustive, payload};
  }
  if (mode == "greedy") {
    EDFamily fam = eq_greedy(profile, budget);
    BoundReport bounds = eq_lower_bound(profile);
    bounds.greedy_ub = fam.size();
    payload["bounds"] = bounds_to_json(bounds);
    payload["family"] = family_payload(fam);
    return {status_of_family(fam), payload};
  }
  if (mode == "exact") {
    EqResult res = eq_exact(profile, budget);
    payload["bounds"] = bounds_to_json(res.bounds);
    if (!res.family) {
      payload["reason"] = "budget exceeded; bounds only, exact absent";
      return {RunStatus::Refused, payload};
    }
    payload["family"] = family_payload(*res.family);
    return {status_of_family(*res.family), payload};
  }
  throw RefusalError("unknown eq mode '" + mode + "' (exact|greedy|bounds)");
}

std::pair<RunStatus, json> run_relabel(const ExperimentConfig& cfg) {
  PrunedTree tree = PrunedTree::from_text(read_file(cfg.get("tree")));
  std::vector<Seq> members = family_from_csv(read_file(cfg.get("family")));
  if (members.empty()) throw RefusalError("family file has no members");
  int width = 0;
  if (cfg.has("width")) {
    width = std::stoi(cfg.get("width"));
  } else {
    for (const Seq& x : members)
      for (int v : x) width = std::max(width, v + 1);
  }
  Profile profile(std::vector<int>(members.front().size(), width));
  EDFamily fam(profile, members);
  fam = verify_family(fam, {resolve_budget(cfg), std::nullopt, 0});
  if (fam.status != FamilyStatus::VerifiedCovering) {
    json payload;
    payload["reason"] = "input family is not a verified covering family";
    payload["family"] = family_payload(fam);
    return {RunStatus::Refused, payload};
  }
  PrunedTree normalized = normalize_disjoint(tree, width);
  PsiSystem psi = PsiSystem::standard(normalized, width);
  TransferResult res = transfer_family(fam, normalized, psi, resolve_budget(cfg));
  json payload;
  payload["width"] = width;
  payload["normalized_tree"] = normalized.to_text();
  payload["branches"] = res.branches;
  payload["universe_size"] = res.universe_size;
  payload["fresh_label"] = res.fresh_label;
  payload["verified"] = res.verified;
  if (res.counterexample) payload["counterexample"] = *res.counterexample;
  return {res.verified ? RunStatus::Exhaustive : RunStatus::Refuted, payload};
}

json cert_summary(const CoveringCertificate& cert) {
  json j;
  j["name"] = cert.name;
  j["model"] = cert.model.descriptor();
  j["translator_count"] = cert.translators.size();
  j["closed_set_size"] = cert.closed_set.size();
  j["status"] = to_string(cert.status);
  if (cert.refuted_witness) j["refutation_witness"] = cert.model.coords(*cert.refuted_witness);
  return j;
}

std::pair<RunStatus, json> run_witness(const ExperimentConfig& cfg) {
  std::string action = cfg.get_or("action", "instantiate");
  std::uint64_t budget = resolve_budget(cfg);

  if (action == "verify") {
    CoveringCertificate cert = certificate_from_json(read_file(cfg.get("cert")));
    CertStatus stored = cert.status;
    CoveringCertificate again =
        cert.sample_seed
            ? verify_covering(cert, nullptr, 0, cert.sample_seed, cert.sample_count)
            : verify_covering(cert, nullptr, budget);
    json payload;
    payload["certificate"] = json::parse(certificate_to_json(again));
    payload["stored_status"] = to_string(stored);
    payload["replayed_status"] = to_string(again.status);
    payload["matches_stored"] = stored == again.status;
    return {status_of_cert(again), payload};
  }
  if (action != "instantiate") throw RefusalError("witness action must be instantiate|verify");

  std::string kind = cfg.get("kind");
  json payload;
  CoveringCertificate cert;

  if (kind == "lattice" || kind == "sym" || kind == "blocked") {
    WitnessStructure w;
    std::vector<Seq> family;
    if (kind == "lattice") {
      int m = std::stoi(cfg.get("m"));
      int n = std::stoi(cfg.get("n"));
      w = instantiate_lattice(m, n);
      Profile p(std::vector<int>(static_cast<std::size_t>(n), m));
      EqResult eq = eq_exact(p, budget);
      if (!eq.family) throw RefusalError("lattice profile exceeds budget");
      family = eq.family->members;
    } else if (kind == "sym") {
      int n = std::stoi(cfg.get("n"));
      w = instantiate_sym(n);
      family = minimal_injective_family(w);
    } else {
      BlockedProduct bp = instantiate_blocked_product(parse_int_list(cfg.get("sizes")),
                                                      parse_int_list(cfg.get("blocks")));
      EqResult eq = eq_exact(bp.block_profile, budget);
      EDFamily fam = eq.family ? *eq.family : eq_greedy(bp.block_profile, budget);
      family = blocked_branches(bp, fam);
      w = bp.w;
    }
    HypothesisReport hyp = check_hypotheses(w);
    payload["hypotheses"] = hypotheses_to_json(hyp);
    if (!hyp.all()) {
      payload["reason"] = "hypothesis check failed";
      return {RunStatus::Refuted, payload};
    }
    cert = build_covering(w, family);
    cert = verify_covering(cert, &w, budget);
  } else if (kind == "torus") {
    TorusPipelineResult res = instantiate_dyadic_torus(std::stoi(cfg.get("bits")),
                                                       parse_int_list(cfg.get("blocks")), budget);
    payload["pairing"] = {{"involution", res.pairing.involution},
                          {"fixed_point_free", res.pairing.fixed_point_free},
                          {"all_pairs", res.pairing.all_pairs}};
    payload["class_profile"] = res.class_profile.sizes();
    payload["class_family"] = family_payload(res.class_family);
    cert = res.cert;
  } else if (kind == "banach") {
    std::vector<int> dims = parse_int_list(cfg.get("dims"));
    std::vector<Rational> deltas;
    for (const auto& d : split(cfg.get("deltas"), ','))
      deltas.push_back(rational_from_string(trim(d)));
    BanachInstance inst = make_banach(dims, deltas);
    BanachSeparationReport sep = banach_check_separation(inst);
    std::uint64_t seed = std::stoull(cfg.get("seed"));  // sampled mode: seed mandatory
    std::uint64_t samples = std::stoull(cfg.get_or("samples", "10000"));
    BanachCoverReport cover = banach_sampled_covering(inst, seed, samples);
    payload["separation"] = {{"smallness", sep.smallness},
                             {"separation", sep.separation},
                             {"h4", sep.h4}};
    payload["family"] = family_payload(cover.family);
    json pts = json::array();
    for (const auto& v : cover.translators) {
      json vec = json::array();
      for (const auto& c : v) vec.push_back(rational_to_string(c));
      pts.push_back(vec);
    }
    payload["translators"] = pts;
    payload["samples"] = cover.samples;
    payload["failures"] = cover.failures;
    payload["seed"] = cover.seed;
    bool ok = sep.smallness && sep.h4 && cover.sampled_ok();
    return {ok ? RunStatus::Sampled : RunStatus::Refuted, payload};
  } else {
    throw RefusalError("unknown witness kind '" + kind + "'");
  }

  payload["certificate"] = json::parse(certificate_to_json(cert));
  payload["summary"] = cert_summary(cert);
  if (cfg.has("out")) write_file(cfg.get("out"), certificate_to_json(cert));
  return {status_of_cert(cert), payload};
}

std::pair<RunStatus, json> run_homeo(const ExperimentConfig& cfg) {
  int window = std::stoi(cfg.get("window"));
  int depth = std::stoi(cfg.get("depth"));
  IntervalScheme scheme(window, depth);
  Seq branch = parse_int_list(cfg.get("branch"));
  if (static_cast<int>(branch.size()) != depth)
    throw RefusalError("branch length must equal depth");
  BranchHomeoResult built = branch_to_homeo(scheme, branch);
  BranchContainmentReport contain = check_branch_containment(scheme, branch, built);

  json payload;
  payload["window"] = window;
  payload["depth"] = depth;
  payload["branch"] = branch;
  json pts = json::array();
  for (const auto& [x, y] : built.homeo.breakpoints())
    pts.push_back({rational_to_string(x), rational_to_string(y)});
  payload["breakpoints"] = pts;
  payload["identity"] = built.homeo.is_identity();
  payload["containment"] = {{"verified", contain.verified},
                            {"unverified", contain.unverified},
                            {"failed", contain.failed}};
  payload["out_of_window_nodes"] = built.out_of_window.size();
  payload["boundary_conflicts"] = built.boundary_conflicts.size();

  if (cfg.has("p0")) {
    Rational p0 = rational_from_string(cfg.get("p0"));
    WitnessPointReport wp = check_homeo_witness(scheme, p0, {branch});
    payload["p0_levels_in_u0"] = wp.b_levels;
    payload["p0_disjointness"] = wp.disjointness_ok;
  }
  LiftCheck lift = lift_product(built.homeo, std::stoi(cfg.get_or("grid", "32")));
  payload["lift"] = {{"grid_points", lift.grid_points},
                     {"intertwines", lift.intertwines},
                     {"preserves_second", lift.preserves_second}};
  bool ok = contain.ok() && lift.intertwines && lift.preserves_second;
  return {ok ? RunStatus::Exhaustive : RunStatus::Refuted, payload};
}

std::vector<GradedNwdSet> load_pieces(const GroupModel& model, const std::string& path) {
  // pieces file: blank-line separated groups of digit rows, one set per group
  std::string text = read_file(path);
  std::vector<GradedNwdSet> pieces;
  ElemList current;
  auto flush = [&]() {
    if (!current.empty()) {
      pieces.push_back(GradedNwdSet::of(model.grade(), current));
      current.clear();
    }
  };
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) {
      flush();
      continue;
    }
    if (line[0] == '#') continue;
    current.push_back(model.from_coords(parse_int_list(line)));
  }
  flush();
  return pieces;
}

std::pair<RunStatus, json> run_compress(const ExperimentConfig& cfg) {
  GroupModel model = model_from_config_text(read_file(cfg.get("model")));
  std::vector<GradedNwdSet> pieces = load_pieces(model, cfg.get("pieces"));
  CompressionInstance inst = CompressionInstance::translation(model, pieces);
  CompressResult res = compress(inst);
  json payload;
  json trace = json::array();
  for (const auto& stage : res.trace) {
    json st;
    st["base"] = stage.base;
    st["u"] = stage.u;
    st["reserved"] = stage.reserved;
    json ys = json::array();
    for (Elem y : stage.y) ys.push_back(model.coords(y));
    st["y"] = ys;
    trace.push_back(st);
  }
  payload["trace"] = trace;
  json ys = json::array();
  for (Elem y : res.y_all) ys.push_back(model.coords(y));
  payload["y"] = ys;
  json stems = json::array();
  for (const Stem& s : to_sorted_stems(res.c, model)) stems.push_back(s);
  payload["c_stems"] = stems;
  payload["replay_ok"] = res.replay_ok;
  payload["postcondition_ok"] = res.postcondition_ok;
  payload["c_graded_nwd"] = res.c_graded_nwd;
  bool ok = res.replay_ok && res.postcondition_ok && res.c_graded_nwd;
  return {ok ? RunStatus::Exhaustive : RunStatus::Refuted, payload};
}

std::pair<RunStatus, json> run_rearrange(const ExperimentConfig& cfg) {
  GroupModel model = model_from_config_text(read_file(cfg.get("model")));
  std::vector<GradedNwdSet> pieces = load_pieces(model, cfg.get("pieces"));
  Stem u_stem = parse_int_list(cfg.get("u"));
  RearrangementInstance inst;
  if (cfg.has("x") || cfg.has("q")) {
    auto parse_elems = [&](const std::string& text) {
      ElemList out;
      for (const auto& part : split(text, ';'))
        out.push_back(model.from_coords(parse_int_list(trim(part))));
      return out;
    };
    inst = RearrangementInstance::make(model, u_stem, parse_elems(cfg.get("x")),
                                       parse_elems(cfg.get("q")), pieces);
  } else {
    inst = RearrangementInstance::coset_default(model, u_stem, pieces);
  }
  RearrangeResult res = rearrange(inst);
  json payload;
  json qs = json::array();
  for (Elem q : res.q_out) qs.push_back(model.coords(q));
  payload["q"] = qs;
  json stems = json::array();
  for (const Stem& s : to_sorted_stems(res.c, model)) stems.push_back(s);
  payload["c_stems"] = stems;
  json table = json::array();
  for (const auto& piece : res.pieces) {
    json row;
    row["n"] = piece.n;
    row["m"] = piece.m;
    row["x_index"] = piece.x_index;
    row["r"] = model.coords(piece.r);
    table.push_back(row);
  }
  payload["pieces"] = table;
  payload["pieces_disjoint"] = res.pieces_disjoint;
  payload["inclusions_ok"] = res.inclusions_ok;
  payload["c_graded_nwd"] = res.c_graded_nwd;
  bool ok = res.pieces_disjoint && res.inclusions_ok && res.c_graded_nwd;
  return {ok ? RunStatus::Exhaustive : RunStatus::Refuted, payload};
}

std::pair<RunStatus, json> run_verify(const ExperimentConfig& cfg) {
  // accepts a certificate file; records verify through their embedded config
  std::string text = read_file(cfg.get("cert"));
  ExperimentConfig sub;
  sub.command = "witness";
  sub.kv["action"] = "verify";
  sub.kv["cert"] = cfg.get("cert");
  if (cfg.has("budget")) sub.kv["budget"] = cfg.get("budget");
  (void)text;
  ResultRecord rec = run_experiment(sub);
  return {rec.status, json::parse(rec.payload_json)};
}

std::pair<RunStatus, json> run_report(const ExperimentConfig& cfg) {
  std::vector<ResultRecord> records;
  for (const auto& path : split(cfg.get("records"), ';'))
    records.push_back(ResultRecord::from_json(read_file(trim(path))));
  ReportTables tables = build_report(records);
  json payload;
  payload["eq_csv"] = tables.eq_csv;
  payload["certificates_csv"] = tables.certificates_csv;
  payload["hypotheses_csv"] = tables.hypotheses_csv;
  payload["warnings"] = tables.warnings;
  if (cfg.has("csv")) {
    std::string base = cfg.get("csv");
    write_file(base + "_eq.csv", tables.eq_csv);
    write_file(base + "_certificates.csv", tables.certificates_csv);
    write_file(base + "_hypotheses.csv", tables.hypotheses_csv);
  }
  return {RunStatus::Exhaustive, payload};
}

}  // namespace

ResultRecord run_experiment(const ExperimentConfig& config) {
  ResultRecord rec;
  rec.config = config;
  auto start = std::chrono::steady_clock::now();
  try {
    std::pair<RunStatus, json> out{RunStatus::Refused, json::object()};
    if (config.command == "eq")
      out = run_eq(config);
    else if (config.command == "relabel")
      out = run_relabel(config);
    else if (config.command == "witness")
      out = run_witness(config);
    else if (config.command == "homeo")
      out = run_homeo(config);
    else if (config.command == "compress")
      out = run_compress(config);
    else if (config.command == "rearrange")
      out = run_rearrange(config);
    else if (config.command == "verify")
      out = run_verify(config);
    else if (config.command == "report")
      out = run_report(config);
    else
      throw RefusalError("unknown command '" + config.command + "'");
    rec.status = out.first;
    rec.payload_json = out.second.dump(2);
  } catch (const RefusalError& e) {
    rec.status = RunStatus::Refused;
    json payload;
    payload["refusal"] = e.what();
    rec.payload_json = payload.dump(2);
  }
  auto end = std::chrono::steady_clock::now();
  rec.timing_ms =
      static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(end - start).count());
  return rec;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

}  // namespace

ReportTables build_report(const std::vector<ResultRecord>& records) {
  ReportTables tables;
  std::string version;
  for (const auto& rec : records) {
    if (version.empty()) version = rec.tool_version;
    else if (version != rec.tool_version)
      tables.warnings.push_back("mixed tool versions: " + version + " vs " + rec.tool_version);
  }

  struct Row { std::string profile, counting, pair, greedy, exact, size, status, witness, version; };
  std::vector<Row> eq_rows;
  std::string cert_csv = "name,model,translators,closed_set,status,refutation_witness,version\n";
  std::string hyp_csv = "name,h1,h2,h3,h4,version\n";

  for (const auto& rec : records) {
    json payload = json::parse(rec.payload_json.empty() ? "{}" : rec.payload_json);
    if (rec.config.command == "eq" && payload.contains("bounds")) {
      Row row;
      row.profile = payload["profile"].dump();
      const auto& b = payload["bounds"];
      row.counting = b.value("counting_lb", 0ull) ? std::to_string(b["counting_lb"].get<std::uint64_t>()) : "0";
      row.pair = std::to_string(b.value("pair_lb", 0ull));
      row.greedy = b.contains("greedy_ub") ? std::to_string(b["greedy_ub"].get<std::uint64_t>()) : "";
      row.exact = b.contains("exact") ? std::to_string(b["exact"].get<std::uint64_t>()) : "";
      if (payload.contains("family")) {
        row.size = std::to_string(payload["family"]["members"].size());
        row.status = payload["family"].value("status", "");
        if (payload["family"].contains("refutation_witness"))
          row.witness = payload["family"]["refutation_witness"].dump();
      }
      row.version = rec.tool_version;
      eq_rows.push_back(row);
    }
    if (payload.contains("summary")) {
      const auto& s = payload["summary"];
      cert_csv += csv_escape(s.value("name", "")) + "," + csv_escape(s.value("model", "")) + "," +
                  std::to_string(s.value("translator_count", 0ull)) + "," +
                  std::to_string(s.value("closed_set_size", 0ull)) + "," + s.value("status", "") +
                  "," + csv_escape(s.contains("refutation_witness") ? s["refutation_witness"].dump() : "") +
                  "," + rec.tool_version + "\n";
    }
    if (payload.contains("hypotheses")) {
      const auto& h = payload["hypotheses"];
      std::string name = payload.contains("summary") ? payload["summary"].value("name", "") :
                         rec.config.canonical_text();
      auto b2s = [](bool b) { return b ? "pass" : "fail"; };
      hyp_csv += csv_escape(name) + "," + b2s(h.value("h1", false)) + "," +
                 b2s(h.value("h2", false)) + "," + b2s(h.value("h3", false)) + "," +
                 b2s(h.value("h4", false)) + "," + rec.tool_version + "\n";
    }
  }

  std::sort(eq_rows.begin(), eq_rows.end(),
            [](const Row& a, const Row& b) { return a.profile < b.profile; });
  std::string eq_csv =
      "profile,counting_lb,pair_lb,greedy_ub,exact,family_size,status,refutation_witness,version\n";
  for (const auto& r : eq_rows)
    eq_csv += csv_escape(r.profile) + "," + r.counting + "," + r.pair + "," + r.greedy + "," +
              r.exact + "," + r.size + "," + r.status + "," + csv_escape(r.witness) + "," +
              r.version + "\n";

  tables.eq_csv = eq_csv;
  tables.certificates_csv = cert_csv;
  tables.hypotheses_csv = hyp_csv;
  return tables;
}

}  // namespace covlab
