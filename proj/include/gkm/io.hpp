// Graph documents, certificates, DOT export and JSON views of reports.

#pragma once

#include "gkm/obstruction.hpp"

#include <json.hpp>

#include <string>

namespace gkm {

class DocumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kGraphFormat = "gkm-graph/1";
inline constexpr const char* kCertificateFormat = "gkm-nonextendibility-certificate/1";

nlohmann::json integer_to_json(const Integer& x);
Integer integer_from_json(const nlohmann::json& j);

/// Canonical document without the content hash.
nlohmann::json graph_body(const GkmGraph& g);
/// SHA-256 (hex) of the canonical body.
std::string content_hash(const GkmGraph& g);
nlohmann::json graph_to_json(const GkmGraph& g);
/// Throws DocumentError for malformed documents and StructuralError for
/// graphs violating the structural invariants.
GkmGraph graph_from_json(const nlohmann::json& j);

std::string sha256_hex(const std::string& data);

nlohmann::json certificate_to_json(const NonextendibilityCertificate& c);
NonextendibilityCertificate certificate_from_json(const nlohmann::json& j);

nlohmann::json validation_to_json(const ValidationReport& r);
nlohmann::json face_to_json(const Face& f);
nlohmann::json poset_to_json(const FacePoset& p);
nlohmann::json homology_to_json(const std::vector<HomologyGroup>& h);
nlohmann::json obstruction_to_json(const RealizabilityObstruction& o);

std::string export_dot(const GkmGraph& g);

/// Reads a whole file, or stdin for "-".
std::string read_input(const std::string& path);
/// Writes to stdout for "" or "-", else to a temporary file renamed over the
/// destination.
void write_output(const std::string& path, const std::string& data);

}  // namespace gkm
