#include "covlab/serialize.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace covlab {

using nlohmann::json;

std::map<std::string, std::string> parse_kv_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw RefusalError("config line without '=': '" + line + "'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw RefusalError("config line with empty key");
    if (kv.count(key)) throw RefusalError("duplicate config key: '" + key + "'");
    kv[key] = value;
  }
  return kv;
}

GroupModel model_from_config_text(const std::string& text) {
  auto kv = parse_kv_text(text);
  auto take = [&](const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw RefusalError("model config missing key '" + key + "'");
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  std::string kind = take("kind");
  int grade = std::stoi(take("grade"));
  GroupModel model;
  if (kind == "product") {
    model = GroupModel::product(parse_int_list(take("sizes")), grade);
  } else if (kind == "sym") {
    model = GroupModel::symmetric(std::stoi(take("degree")), grade);
  } else if (kind == "dyadic") {
    model = GroupModel::dyadic(std::stoi(take("bits")), grade);
  } else {
    throw RefusalError("unknown model kind: '" + kind + "'");
  }
  if (!kv.empty()) throw RefusalError("unknown model config key: '" + kv.begin()->first + "'");
  return model;
}

std::string model_to_config_text(const GroupModel& model) {
  std::string out = "kind = " + to_string(model.kind()) + "\n";
  switch (model.kind()) {
    case GroupKind::Product: out += "sizes = " + join(model.moduli()) + "\n"; break;
    case GroupKind::Symmetric: out += "degree = " + std::to_string(model.sym_degree()) + "\n"; break;
    case GroupKind::Dyadic: out += "bits = " + std::to_string(model.dyadic_bits()) + "\n"; break;
  }
  out += "grade = " + std::to_string(model.grade()) + "\n";
  return out;
}

namespace {

json model_to_json(const GroupModel& m) {
  json j;
  j["descriptor"] = m.descriptor();
  j["grade"] = m.grade();
  return j;
}

GroupModel model_from_json(const json& j) {
  return GroupModel::from_descriptor(j.at("descriptor").get<std::string>(),
                                     j.at("grade").get<int>());
}

}  // namespace

std::string certificate_to_json(const CoveringCertificate& cert) {
  json j;
  j["schema"] = "covlab.certificate/1";
  j["name"] = cert.name;
  j["model"] = model_to_json(cert.model);
  json xs = json::array();
  for (Elem x : cert.translators) xs.push_back(cert.model.coords(x));
  j["translators"] = xs;
  json stems = json::array();
  for (const Stem& s : to_sorted_stems(cert.closed_set, cert.model)) stems.push_back(s);
  j["closed_set"] = {{"grade", cert.closed_set.grade}, {"stems", stems}};
  j["status"] = to_string(cert.status);
  if (cert.refuted_witness) {
    j["refutation"] = {{"witness", cert.model.coords(*cert.refuted_witness)}};
    json gamma = json::array();
    for (const auto& g : cert.gamma_trace) {
      if (g)
        gamma.push_back(*g);
      else
        gamma.push_back(nullptr);
    }
    j["refutation"]["gamma"] = gamma;
  }
  if (cert.sample_seed) {
    j["sampling"] = {{"seed", *cert.sample_seed}, {"count", cert.sample_count}};
  }
  return j.dump(2);
}

CoveringCertificate certificate_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const std::exception& e) {
    throw RefusalError(std::string("certificate is not valid JSON: ") + e.what());
  }
  if (j.value("schema", "") != "covlab.certificate/1")
    throw RefusalError("not a certificate file (missing schema tag)");
  CoveringCertificate cert;
  cert.name = j.value("name", "");
  cert.model = model_from_json(j.at("model"));
  for (const auto& x : j.at("translators"))
    cert.translators.push_back(cert.model.from_coords(x.get<Seq>()));
  std::vector<Stem> stems;
  for (const auto& s : j.at("closed_set").at("stems")) stems.push_back(s.get<Stem>());
  cert.closed_set =
      from_sorted_stems(j.at("closed_set").at("grade").get<int>(), stems, cert.model);
  cert.status = cert_status_from_string(j.at("status").get<std::string>());
  if (j.contains("refutation")) {
    cert.refuted_witness = cert.model.from_coords(j["refutation"].at("witness").get<Seq>());
    if (j["refutation"].contains("gamma")) {
      for (const auto& g : j["refutation"]["gamma"]) {
        if (g.is_null())
          cert.gamma_trace.push_back(std::nullopt);
        else
          cert.gamma_trace.push_back(g.get<int>());
      }
    }
  }
  if (j.contains("sampling")) {
    cert.sample_seed = j["sampling"].at("seed").get<std::uint64_t>();
    cert.sample_count = j["sampling"].at("count").get<std::uint64_t>();
  }
  return cert;
}

std::string family_to_json(const EDFamily& family) {
  json j;
  j["profile"] = family.profile.sizes();
  j["members"] = family.members;
  j["status"] = to_string(family.status);
  if (family.refutation) j["refutation_witness"] = *family.refutation;
  if (family.sample_seed)
    j["sampling"] = {{"seed", *family.sample_seed}, {"count", family.sample_count}};
  return j.dump(2);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RefusalError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw RefusalError("cannot write file: " + path);
  out << data;
}

}  // namespace covlab
