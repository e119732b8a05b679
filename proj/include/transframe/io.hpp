#ifndef TRANSFRAME_IO_HPP
#define TRANSFRAME_IO_HPP

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "transframe/frame.hpp"
#include "transframe/omega_tree.hpp"
#include "transframe/reduction.hpp"
#include "transframe/semantics.hpp"
#include "transframe/skeleton.hpp"

namespace transframe {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Frames: {"points": [...], "edges": [[from, to], ...], "closed": bool}.
// "closed" records whether the writer already closed the edge list. It is
// informational: closure happens only when the caller forces it, so an
// intransitive edge list is rejected with its triple otherwise.

inline Frame frame_from_json(const Json& j, bool force_close = false) {
  try {
    if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "frame must be a JSON object");
    auto points = j.at("points").get<std::vector<std::string>>();
    std::vector<Edge> edges;
    if (j.contains("edges"))
      for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::InvalidInput, "edge must be a pair");
        edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
      }
    if (j.contains("closed") && !j.at("closed").is_boolean())
      throw Error(ErrorCode::InvalidInput, "\"closed\" must be a boolean");
    return Frame::build(points, edges, force_close);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidInput, e.what());
  }
}

inline Json frame_to_json(const Frame& f) {
  Json edges = Json::array();
  for (const auto& [a, b] : f.edges()) edges.push_back({a, b});
  return Json{{"points", f.names()}, {"edges", edges}, {"closed", true}};
}

inline Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidInput, path.string() + ": " + e.what());
  }
}

inline void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

inline Frame read_frame(const std::filesystem::path& path, bool force_close = false) {
  return frame_from_json(read_json_file(path), force_close);
}

/// A manifest lists frames either inline or as paths relative to the
/// manifest's own directory: {"frames": [ "H0.json", {...}, ... ]}.
inline std::vector<Frame> read_manifest(const std::filesystem::path& path, bool force_close = false) {
  Json j = read_json_file(path);
  if (!j.is_object() || !j.contains("frames") || !j["frames"].is_array())
    throw Error(ErrorCode::InvalidInput, "manifest needs a \"frames\" array");
  std::vector<Frame> frames;
  for (const auto& entry : j["frames"]) {
    if (entry.is_string())
      frames.push_back(read_frame(path.parent_path() / entry.get<std::string>(), force_close));
    else
      frames.push_back(frame_from_json(entry, force_close));
  }
  return frames;
}

// ---------------------------------------------------------------------------
// Trees, valuations, maps.

inline Json tree_to_json(const OmegaTree& t) {
  detail::CanonicalForm cf(t);
  auto node = [&](auto&& self, OmegaTree::Node v) -> Json {
    Json kids = Json::array();
    for (auto c : cf.order[v]) kids.push_back(self(self, c));
    return Json{{"label", t.label(v)}, {"children", kids}};
  };
  return node(node, t.root());
}

inline OmegaTree tree_from_json(const Json& j) {
  try {
    OmegaTree t = OmegaTree::leaf(j.at("label").get<std::size_t>());
    if (j.contains("children"))
      for (const auto& c : j.at("children")) t.graft(t.root(), tree_from_json(c));
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidTree, e.what());
  }
}

inline Json valuation_to_json(const Valuation& v) {
  Json out = Json::object();
  for (const auto& [var, pts] : v.entries()) out[var] = pts;
  return out;
}

inline Json map_to_json(const ReductionMap& m) {
  Json out = Json::object();
  for (PointIndex w = 0; w < m.map.size(); ++w) out[m.source.name(w)] = m.target.name(m.map[w]);
  return out;
}

inline Json witness_to_json(const ReductionWitness& w) {
  return Json{{"i", w.i}, {"j", w.j}, {"generator", w.generator}, {"map", map_to_json(w.reduction)}};
}

// ---------------------------------------------------------------------------
// Graphviz. Clusters are boxes (dashed when degenerate); reflexive points are
// double circles and irreflexive ones dashed circles. Edges are drawn between
// clusters along the Hasse diagram of the skeleton.

inline std::string to_dot(const Frame& f, const std::string& title = "frame") {
  Skeleton sk(f);
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') q += '\\';
      q += c;
    }
    return q + "\"";
  };
  std::ostringstream os;
  os << "digraph " << quote(title) << " {\n  compound=true;\n  rankdir=BT;\n";
  for (ClusterIndex c = 0; c < sk.size(); ++c) {
    const Cluster& cl = sk.cluster(c);
    os << "  subgraph cluster_" << c << " {\n    style=" << (cl.degenerate ? "dashed" : "solid") << ";\n";
    cl.members.for_each([&](PointIndex w) {
      os << "    " << quote(f.name(w)) << " [shape=" << (f.reflexive(w) ? "doublecircle" : "circle")
         << (f.reflexive(w) ? "" : ", style=dashed") << "];\n";
    });
    os << "  }\n";
  }
  for (ClusterIndex c = 0; c < sk.size(); ++c)
    sk.above(c).for_each([&](ClusterIndex d) {
      bool covered = true;
      sk.above(c).for_each([&](ClusterIndex e) {
        if (e != d && sk.precedes(e, d)) covered = false;
      });
      if (!covered) return;
      os << "  " << quote(f.name(sk.cluster(c).members.first())) << " -> "
         << quote(f.name(sk.cluster(d).members.first())) << " [ltail=cluster_" << c << ", lhead=cluster_" << d
         << "];\n";
    });
  os << "}\n";
  return os.str();
}

}  // namespace transframe

#endif  // TRANSFRAME_IO_HPP
