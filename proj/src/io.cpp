#include "gkm/io.hpp"

#include <openssl/sha.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <limits>
#include <sstream>

namespace gkm {

using nlohmann::json;

json integer_to_json(const Integer& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return x.convert_to<long long>();
  return x.str();
}

Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s.empty() || s.find_first_not_of("-0123456789") != std::string::npos) throw DocumentError("bad integer string");
    return Integer(s);
  }
  throw DocumentError("expected an integer");
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(), digest);
  std::ostringstream os;
  for (unsigned char c : digest) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(c);
  return os.str();
}

namespace {

json vector_to_json(const LatticeVector& v) {
  json a = json::array();
  for (const auto& x : v.entries()) a.push_back(integer_to_json(x));
  return a;
}

template <typename T>
T get_field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw DocumentError(std::string("missing field '") + name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const json::exception&) {
    throw DocumentError(std::string("field '") + name + "' has the wrong type");
  }
}

}  // namespace

json graph_body(const GkmGraph& g) {
  json doc;
  doc["format"] = kGraphFormat;
  doc["k"] = g.k();
  json vertices = json::array();
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    json rec{{"id", v}};
    if (!g.coords().empty()) {
      json c = json::array();
      for (const auto& x : g.coords()[v]) c.push_back(integer_to_json(x));
      rec["coords"] = c;
    }
    vertices.push_back(rec);
  }
  doc["vertices"] = vertices;
  json darts = json::array();
  for (DartId e = 0; e < g.dart_count(); ++e)
    darts.push_back({{"id", e}, {"src", g.src(e)}, {"dst", g.dst(e)}, {"alpha", vector_to_json(g.alpha(e))},
                     {"reverse", g.reverse(e)}});
  doc["darts"] = darts;
  if (g.has_connection()) {
    json conn = json::array();
    for (DartId e = 0; e < g.dart_count(); ++e) {
      json pairs = json::array();
      for (DartId f : g.star(g.src(e))) pairs.push_back({f, g.transport(e, f)});
      conn.push_back({{"dart", e}, {"pairs", pairs}});
    }
    doc["connection"] = conn;
  } else {
    doc["connection"] = nullptr;
  }
  doc["metadata"] = {{"config", g.config()}};
  return doc;
}

std::string content_hash(const GkmGraph& g) { return sha256_hex(graph_body(g).dump()); }

json graph_to_json(const GkmGraph& g) {
  json doc = graph_body(g);
  doc["metadata"]["content_hash"] = sha256_hex(doc.dump());
  return doc;
}

GkmGraph graph_from_json(const json& j) {
  if (!j.is_object()) throw DocumentError("graph document is not an object");
  if (get_field<std::string>(j, "format") != kGraphFormat) throw DocumentError("unsupported graph format");
  const auto k = get_field<std::size_t>(j, "k");
  const auto vertices = get_field<json>(j, "vertices");
  const auto darts = get_field<json>(j, "darts");
  if (!vertices.is_array() || !darts.is_array()) throw DocumentError("vertices and darts must be arrays");

  std::vector<std::vector<Integer>> coords;
  bool any_coords = false;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (get_field<std::size_t>(vertices[i], "id") != i) throw StructuralError("vertex ids are not dense and ordered");
    std::vector<Integer> c;
    if (vertices[i].contains("coords")) {
      any_coords = true;
      for (const auto& x : vertices[i]["coords"]) c.push_back(integer_from_json(x));
    }
    coords.push_back(std::move(c));
  }
  if (!any_coords) coords.clear();

  std::vector<Dart> ds;
  for (std::size_t i = 0; i < darts.size(); ++i) {
    const json& d = darts[i];
    if (get_field<std::size_t>(d, "id") != i) throw StructuralError("dart ids are not dense and ordered");
    Dart dart;
    dart.src = get_field<std::size_t>(d, "src");
    dart.dst = get_field<std::size_t>(d, "dst");
    dart.reverse = get_field<std::size_t>(d, "reverse");
    std::vector<Integer> alpha;
    for (const auto& x : get_field<json>(d, "alpha")) alpha.push_back(integer_from_json(x));
    dart.alpha = LatticeVector(std::move(alpha));
    ds.push_back(std::move(dart));
  }

  std::optional<Connection> conn;
  if (j.contains("connection") && !j["connection"].is_null()) {
    const json& c = j["connection"];
    if (!c.is_array() || c.size() != ds.size()) throw StructuralError("connection does not list every dart");
    // Stars in id order, to translate pairs into positional form.
    std::vector<std::vector<DartId>> stars(vertices.size());
    for (DartId e = 0; e < ds.size(); ++e) {
      if (ds[e].src >= stars.size()) throw StructuralError("dart with unknown source");
      stars[ds[e].src].push_back(e);
    }
    Connection out(ds.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (get_field<std::size_t>(c[i], "dart") != i) throw StructuralError("connection records are not ordered by dart");
      const auto& star = stars[ds[i].src];
      std::vector<std::optional<DartId>> image(star.size());
      for (const auto& p : get_field<json>(c[i], "pairs")) {
        if (!p.is_array() || p.size() != 2) throw DocumentError("connection pair must have two entries");
        const auto from = p[0].get<std::size_t>();
        const auto pos = std::find(star.begin(), star.end(), from);
        if (pos == star.end()) throw StructuralError("connection pair source is not in the star");
        auto& slot = image[static_cast<std::size_t>(pos - star.begin())];
        if (slot) throw StructuralError("connection pair source listed twice");
        slot = p[1].get<std::size_t>();
      }
      for (const auto& s : image) {
        if (!s) throw StructuralError("connection does not cover the star of dart " + std::to_string(i));
        out[i].push_back(*s);
      }
    }
    conn = std::move(out);
  }
  json config = nullptr;
  if (j.contains("metadata") && j["metadata"].is_object() && j["metadata"].contains("config"))
    config = j["metadata"]["config"];
  GkmGraph g(k, vertices.size(), std::move(ds), std::move(conn), std::move(coords), config);
  if (j.contains("metadata") && j["metadata"].contains("content_hash")) {
    if (j["metadata"]["content_hash"] != content_hash(g)) throw DocumentError("content hash does not match the document");
  }
  return g;
}

json certificate_to_json(const NonextendibilityCertificate& c) {
  json w = json::array();
  for (const auto& x : c.witnesses) w.push_back({{"dart", x.dart}, {"path", x.path}});
  return {{"format", kCertificateFormat}, {"graph_hash", c.graph_hash}, {"face_key", c.face_key},
          {"base_vertex", c.base_vertex}, {"face_star", c.face_star}, {"k", c.k},
          {"witnesses", w}, {"verdict", c.verdict}};
}

NonextendibilityCertificate certificate_from_json(const json& j) {
  if (get_field<std::string>(j, "format") != kCertificateFormat) throw DocumentError("unsupported certificate format");
  NonextendibilityCertificate c;
  c.graph_hash = get_field<std::string>(j, "graph_hash");
  c.face_key = get_field<std::string>(j, "face_key");
  c.base_vertex = get_field<std::size_t>(j, "base_vertex");
  c.face_star = get_field<std::vector<DartId>>(j, "face_star");
  c.k = get_field<std::size_t>(j, "k");
  c.verdict = get_field<std::string>(j, "verdict");
  for (const auto& w : get_field<json>(j, "witnesses"))
    c.witnesses.push_back({get_field<DartId>(w, "dart"), get_field<std::vector<DartId>>(w, "path")});
  return c;
}

json validation_to_json(const ValidationReport& r) {
  auto axiom = [](const AxiomResult& a) {
    return json{{"pass", a.pass}, {"offending_darts", a.offending_darts}, {"offending_vertices", a.offending_vertices}};
  };
  json constants = json::array();
  for (const auto& [key, c] : r.constants) constants.push_back({key.first, key.second, integer_to_json(c)});
  json out{{"pass", r.pass()},
           {"type", {r.n, r.k}},
           {"rank", axiom(r.rank)},
           {"opposite_sign", axiom(r.opposite_sign)},
           {"congruence", axiom(r.congruence)},
           {"regularity", axiom(r.regularity)},
           {"valence", r.valence},
           {"congruence_constants", constants}};
  out["inverse_transport"] = r.inverse_transport ? json(*r.inverse_transport) : json(nullptr);
  return out;
}

json face_to_json(const Face& f) {
  json span = json::array();
  for (const auto& row : f.span.row_vectors()) span.push_back(vector_to_json(row));
  return {{"key", f.key}, {"dim", f.dim}, {"vertices", f.vertices}, {"darts", f.darts}, {"span", span}};
}

json poset_to_json(const FacePoset& p) {
  json faces = json::array();
  for (std::size_t i = 0; i < p.size(); ++i) {
    json f = face_to_json(p.face(i));
    json covers = json::array();
    for (std::size_t j : p.above(i))
      if (p.face(j).dim == p.face(i).dim + 1) covers.push_back(p.face(j).key);
    f["covered_by"] = covers;
    faces.push_back(f);
  }
  return {{"f_vector", p.f_vector()}, {"faces", faces}};
}

json homology_to_json(const std::vector<HomologyGroup>& h) {
  json out = json::array();
  for (const auto& g : h) {
    json t = json::array();
    for (const auto& x : g.torsion) t.push_back(integer_to_json(x));
    out.push_back({{"degree", g.degree}, {"betti", g.betti}, {"torsion", t}});
  }
  return out;
}

json obstruction_to_json(const RealizabilityObstruction& o) {
  return {{"face", o.face_key}, {"q", o.q}, {"chi", integer_to_json(o.chi)}, {"required", o.required},
          {"verdict", o.obstructed ? "obstructed" : "not obstructed"}};
}

std::string export_dot(const GkmGraph& g) {
  std::ostringstream os;
  os << "graph gkm {\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    os << "  v" << v;
    if (!g.coords().empty()) {
      os << " [label=\"";
      for (std::size_t i = 0; i < g.coords()[v].size(); ++i) os << (i ? "," : "") << g.coords()[v][i];
      os << "\"]";
    }
    os << ";\n";
  }
  for (DartId e = 0; e < g.dart_count(); ++e) {
    if (g.src(e) > g.dst(e)) continue;
    os << "  v" << g.src(e) << " -- v" << g.dst(e) << " [label=\"" << g.alpha(e).to_string() << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

std::string read_input(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DocumentError("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_output(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout << data;
    std::cout.flush();
    return;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DocumentError("cannot write '" + tmp + "'");
    out << data;
    if (!out) throw DocumentError("write to '" + tmp + "' failed");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace gkm
