#pragma once

#include <map>
#include <string>

#include "covlab/ed_family.hpp"
#include "covlab/witness.hpp"

namespace covlab {

// Plain-text model configuration with documented keys:
//   kind  = product | sym | dyadic   (required)
//   sizes = 3,3,3                    (product only)
//   degree = 6                       (sym only)
//   bits  = 4                        (dyadic only)
//   grade = 2                        (required)
// Unknown keys are rejected; '#' starts a comment.
GroupModel model_from_config_text(const std::string& text);
std::string model_to_config_text(const GroupModel& model);

// generic key = value parser shared by configs
std::map<std::string, std::string> parse_kv_text(const std::string& text);

// Certificates persist as JSON: model descriptor, X as element coordinate
// lists, C as sorted stems, status, any refutation witness verbatim.
std::string certificate_to_json(const CoveringCertificate& cert);
CoveringCertificate certificate_from_json(const std::string& json_text);

std::string family_to_json(const EDFamily& family);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& data);

}  // namespace covlab
