// Copyright 2026 The ttgos Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ttgos/document.hpp"

#include <cctype>
#include <functional>
#include <json.hpp>

namespace ttgos {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& where, const std::string& msg) {
  fail(ErrorKind::kStructural, (where.empty() ? std::string("document") : where) + ": " + msg);
}

// Runs f, prefixing any error with the JSON location.
template <typename F>
auto at(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kStructural) throw;
    bad(where, e.what());
  }
}

const Json& field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where, "missing \"" + key + "\"");
  return *it;
}

std::string str(const Json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a string");
  return j.get<std::string>();
}

int vertex_index(const VertexSpace& sp, const std::string& name, const std::string& where) {
  for (std::size_t i = 0; i < sp.vertices.size(); ++i) {
    if (sp.vertices[i] == name) return static_cast<int>(i);
  }
  bad(where, "unknown vertex '" + name + "' in space " + sp.name);
}

AttachPoint point(const GraphOfSpaces& g, const Json& j, const std::string& where) {
  std::string space;
  std::optional<std::string> vertex;
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const auto colon = s.find(':');
    space = s.substr(0, colon);
    if (colon != std::string::npos) vertex = s.substr(colon + 1);
  } else if (j.is_object()) {
    space = str(field(j, "space", where), where + "/space");
    if (j.contains("vertex")) vertex = str(j["vertex"], where + "/vertex");
  } else {
    bad(where, "expected \"space:vertex\" or {\"space\", \"vertex\"}");
  }
  const auto s = g.find_space(space);
  if (!s) bad(where, "unknown vertex space '" + space + "'");
  const VertexSpace& sp = g.spaces[static_cast<std::size_t>(*s)];
  if (!vertex) {
    if (sp.vertices.size() != 1) bad(where, "vertex space " + space + " has several vertices; name one");
    return {*s, 0};
  }
  return {*s, vertex_index(sp, *vertex, where)};
}

// Splits a compact word like "abA" into letters when every letter names an
// edge; otherwise keeps the text as is.
std::string spread(const GraphOfSpaces& g, const std::string& text) {
  if (text.find_first_of(" \t\n{}") != std::string::npos) return text;
  if (g.find_edge(text)) return text;
  std::string out;
  for (char c : text) {
    if (!g.find_edge(std::string(1, c))) return text;
    if (!out.empty()) out += ' ';
    out += c;
  }
  return out;
}

void parse_options(const Json& root, DocumentOptions& o) {
  if (!root.contains("options")) return;
  const Json& j = root["options"];
  if (!j.is_object()) bad("/options", "expected an object");
  auto num = [&](const char* key, std::optional<std::uint64_t>& out) {
    if (!j.contains(key)) return;
    if (!j[key].is_number_unsigned()) bad(std::string("/options/") + key, "expected a non-negative integer");
    out = j[key].get<std::uint64_t>();
  };
  num("max_image_length", o.max_image_length);
  num("max_v_entries", o.max_v_entries);
  num("max_v_length", o.max_v_length);
  num("max_iterations", o.max_iterations);
  for (const auto& [k, v] : j.items()) {
    if (k != "max_image_length" && k != "max_v_entries" && k != "max_v_length" && k != "max_iterations") {
      bad("/options/" + k, "unknown option");
    }
  }
}

void point_space(GraphOfSpaces& g, const std::string& name) {
  g.spaces.push_back(VertexSpace{name, {name}, {}});
}

SystemDocument parse_rose(const Json& rose) {
  if (!rose.is_object() || rose.empty()) bad("/rose", "expected a non-empty object of edge images");
  SystemDocument d;
  point_space(d.graph, "v");
  for (const auto& [name, _] : rose.items()) d.graph.edges.push_back(TopEdge{name, {0, 0}, {0, 0}});
  d.morphism.vertex_maps.push_back(VertexMap{0, {0}, {}});
  for (const auto& [name, img] : rose.items()) {
    const std::string where = "/rose/" + name;
    const std::string text = spread(d.graph, str(img, where));
    d.morphism.edge_images.push_back(at(where, [&] { return parse_edge_image(d.graph, text, {0, 0}, {0, 0}); }));
  }
  return d;
}

SystemDocument parse_absolute(const Json& j) {
  SystemDocument d;
  const Json& vs = field(j, "vertices", "/absolute");
  if (!vs.is_array() || vs.empty()) bad("/absolute/vertices", "expected a non-empty array");
  for (std::size_t i = 0; i < vs.size(); ++i) point_space(d.graph, str(vs[i], "/absolute/vertices/" + std::to_string(i)));
  const Json& es = field(j, "edges", "/absolute");
  if (!es.is_object()) bad("/absolute/edges", "expected an object");
  for (const auto& [name, ends] : es.items()) {
    const std::string where = "/absolute/edges/" + name;
    if (!ends.is_array() || ends.size() != 2) bad(where, "expected [from, to]");
    d.graph.edges.push_back(TopEdge{name, point(d.graph, ends[0], where + "/0"), point(d.graph, ends[1], where + "/1")});
  }
  const Json& imgs = field(j, "images", "/absolute");
  if (!imgs.is_object()) bad("/absolute/images", "expected an object");
  // Vertex images: given explicitly or read off the edge images.
  const std::size_t nv = d.graph.spaces.size();
  std::vector<int> vimg(nv, -1);
  if (j.contains("vertex_images")) {
    for (const auto& [name, target] : j["vertex_images"].items()) {
      const std::string where = "/absolute/vertex_images/" + name;
      const auto s = d.graph.find_space(name);
      if (!s) bad(where, "unknown vertex");
      vimg[static_cast<std::size_t>(*s)] = point(d.graph, target, where).space;
    }
  }
  std::vector<EdgePath> paths(d.graph.edges.size());
  for (std::size_t e = 0; e < d.graph.edges.size(); ++e) {
    const std::string& name = d.graph.edges[e].name;
    const std::string where = "/absolute/images/" + name;
    if (!imgs.contains(name)) bad("/absolute/images", "missing image of " + name);
    const std::string text = spread(d.graph, str(imgs[name], where));
    paths[e] = at(where, [&] { return parse_edge_path(d.graph, text); });
    auto settle = [&](int v, int w) {
      int& slot = vimg[static_cast<std::size_t>(v)];
      if (slot >= 0 && slot != w) bad(where, "image does not respect the vertex images");
      slot = w;
    };
    settle(d.graph.edges[e].from.space, d.graph.origin(paths[e].edges.front()).space);
    settle(d.graph.edges[e].to.space, d.graph.terminus(paths[e].edges.back()).space);
  }
  for (std::size_t v = 0; v < nv; ++v) {
    if (vimg[v] < 0) bad("/absolute/vertex_images", "image of " + d.graph.spaces[v].name + " is not determined");
    d.morphism.vertex_maps.push_back(VertexMap{vimg[v], {0}, {}});
  }
  for (std::size_t e = 0; e < d.graph.edges.size(); ++e) {
    EdgeImage img;
    const AttachPoint a = d.graph.origin(paths[e].edges.front());
    const AttachPoint b = d.graph.terminus(paths[e].edges.back());
    img.lead = trivial_path(a.space, a.vertex);
    img.trail = trivial_path(b.space, b.vertex);
    img.path = std::move(paths[e]);
    d.morphism.edge_images.push_back(std::move(img));
  }
  return d;
}

SystemDocument parse_full(const Json& root) {
  SystemDocument d;
  GraphOfSpaces& g = d.graph;
  const Json& vs = field(root, "vertex_spaces", "");
  if (!vs.is_object() || vs.empty()) bad("/vertex_spaces", "expected a non-empty object");
  for (const auto& [name, body] : vs.items()) {
    const std::string where = "/vertex_spaces/" + name;
    VertexSpace sp{name, {}, {}};
    if (body.is_null() || (body.is_object() && !body.contains("vertices"))) {
      sp.vertices.push_back(name);
    } else {
      const Json& verts = field(body, "vertices", where);
      if (!verts.is_array() || verts.empty()) bad(where + "/vertices", "expected a non-empty array");
      for (std::size_t i = 0; i < verts.size(); ++i) sp.vertices.push_back(str(verts[i], where + "/vertices/" + std::to_string(i)));
    }
    if (body.is_object() && body.contains("edges")) {
      const Json& es = body["edges"];
      if (!es.is_object()) bad(where + "/edges", "expected an object");
      for (const auto& [en, ends] : es.items()) {
        const std::string ew = where + "/edges/" + en;
        if (!ends.is_array() || ends.size() != 2) bad(ew, "expected [from, to]");
        sp.edges.push_back(LocalEdgeSpec{en, vertex_index(sp, str(ends[0], ew + "/0"), ew),
                                         vertex_index(sp, str(ends[1], ew + "/1"), ew)});
      }
    }
    g.spaces.push_back(std::move(sp));
  }
  const Json& tes = field(root, "top_edges", "");
  if (!tes.is_array()) bad("/top_edges", "expected an array");
  for (std::size_t i = 0; i < tes.size(); ++i) {
    const std::string where = "/top_edges/" + std::to_string(i);
    const Json& te = tes[i];
    g.edges.push_back(TopEdge{str(field(te, "name", where), where + "/name"),
                              point(g, field(te, "from", where), where + "/from"),
                              point(g, field(te, "to", where), where + "/to")});
  }
  const Json& mor = field(root, "morphism", "");
  const Json& vms = field(mor, "vertex_maps", "/morphism");
  for (const VertexSpace& sp : g.spaces) {
    const std::string where = "/morphism/vertex_maps/" + sp.name;
    if (!vms.contains(sp.name)) bad("/morphism/vertex_maps", "missing vertex map of " + sp.name);
    const Json& vm = vms[sp.name];
    VertexMap m;
    const std::string target = vm.is_string() ? vm.get<std::string>() : str(field(vm, "target", where), where + "/target");
    const auto ts = g.find_space(target);
    if (!ts) bad(where, "unknown target space '" + target + "'");
    m.target = *ts;
    const VertexSpace& tsp = g.spaces[static_cast<std::size_t>(*ts)];
    m.vertex_image.assign(sp.vertices.size(), -1);
    if (vm.is_object() && vm.contains("vertices")) {
      for (const auto& [src, dst] : vm["vertices"].items()) {
        const std::string vw = where + "/vertices/" + src;
        m.vertex_image[static_cast<std::size_t>(vertex_index(sp, src, vw))] = vertex_index(tsp, str(dst, vw), vw);
      }
    }
    for (std::size_t v = 0; v < sp.vertices.size(); ++v) {
      if (m.vertex_image[v] >= 0) continue;
      if (tsp.vertices.size() != 1) bad(where + "/vertices", "no image for vertex " + sp.vertices[v]);
      m.vertex_image[v] = 0;
    }
    for (const LocalEdgeSpec& le : sp.edges) {
      const std::string ew = where + "/edges/" + le.name;
      if (!vm.is_object() || !vm.contains("edges") || !vm["edges"].contains(le.name)) bad(ew, "missing image");
      const std::string text = str(vm["edges"][le.name], ew);
      m.edge_image.push_back(at(ew, [&] {
        return parse_local_path(g, *ts, m.vertex_image[static_cast<std::size_t>(le.from)], text);
      }));
    }
    d.morphism.vertex_maps.push_back(std::move(m));
  }
  const Json& ems = field(mor, "edge_maps", "/morphism");
  for (const TopEdge& te : g.edges) {
    const std::string where = "/morphism/edge_maps/" + te.name;
    if (!ems.contains(te.name)) bad("/morphism/edge_maps", "missing image of " + te.name);
    auto image_of = [&](AttachPoint p) {
      const VertexMap& m = d.morphism.vertex_maps[static_cast<std::size_t>(p.space)];
      return AttachPoint{m.target, m.vertex_image[static_cast<std::size_t>(p.vertex)]};
    };
    const std::string text = spread(g, str(ems[te.name], where));
    d.morphism.edge_images.push_back(
        at(where, [&] { return parse_edge_image(g, text, image_of(te.from), image_of(te.to)); }));
  }
  return d;
}

}  // namespace

SystemDocument parse_document(std::string_view json_text) {
  Json root;
  try {
    root = Json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::kStructural, e.what());
  }
  if (!root.is_object()) bad("", "expected a JSON object");
  SystemDocument d;
  if (root.contains("rose")) {
    d = parse_rose(root["rose"]);
  } else if (root.contains("absolute")) {
    d = parse_absolute(root["absolute"]);
  } else {
    d = parse_full(root);
  }
  parse_options(root, d.options);
  return d;
}

std::string to_document(const System& s, int indent) {
  const GraphOfSpaces& g = s.graph();
  Json root;
  Json vs = Json::object();
  for (const VertexSpace& sp : g.spaces) {
    Json body;
    body["vertices"] = sp.vertices;
    Json es = Json::object();
    for (const LocalEdgeSpec& le : sp.edges) {
      es[le.name] = Json::array({sp.vertices[static_cast<std::size_t>(le.from)], sp.vertices[static_cast<std::size_t>(le.to)]});
    }
    body["edges"] = es;
    vs[sp.name] = body;
  }
  root["vertex_spaces"] = vs;
  Json tes = Json::array();
  for (const TopEdge& te : g.edges) {
    auto name = [&](AttachPoint p) {
      const VertexSpace& sp = g.spaces[static_cast<std::size_t>(p.space)];
      return sp.name + ":" + sp.vertices[static_cast<std::size_t>(p.vertex)];
    };
    tes.push_back({{"name", te.name}, {"from", name(te.from)}, {"to", name(te.to)}});
  }
  root["top_edges"] = tes;
  Json vms = Json::object();
  for (std::size_t i = 0; i < g.spaces.size(); ++i) {
    const VertexSpace& sp = g.spaces[i];
    const VertexMap& m = s.morphism().vertex_maps[i];
    const VertexSpace& tsp = g.spaces[static_cast<std::size_t>(m.target)];
    Json vm;
    vm["target"] = tsp.name;
    Json verts = Json::object();
    for (std::size_t v = 0; v < sp.vertices.size(); ++v) {
      verts[sp.vertices[v]] = tsp.vertices[static_cast<std::size_t>(m.vertex_image[v])];
    }
    vm["vertices"] = verts;
    Json es = Json::object();
    for (std::size_t k = 0; k < sp.edges.size(); ++k) {
      const std::string t = to_string(g, m.edge_image[k]);
      es[sp.edges[k].name] = t.substr(1, t.size() - 2);
    }
    vm["edges"] = es;
    vms[sp.name] = vm;
  }
  Json ems = Json::object();
  for (std::size_t e = 0; e < g.edges.size(); ++e) ems[g.edges[e].name] = to_string(g, s.morphism().edge_images[e]);
  root["morphism"] = {{"vertex_maps", vms}, {"edge_maps", ems}};
  return root.dump(indent);
}

}  // namespace ttgos
