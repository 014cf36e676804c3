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

#include "ttgos/pipeline.hpp"

#include <algorithm>
#include <sstream>

#include "ttgos/absolute.hpp"
#include "ttgos/groupoid.hpp"

namespace ttgos {

namespace {

Report string_list(const std::vector<std::string>& v) {
  Report r = Report::array();
  for (const auto& s : v) r.push_back(s);
  return r;
}

Report bounds_json(const BoundsReport& b) {
  Report r;
  r["C"] = b.C;
  r["t_exp"] = b.t_exp;
  r["lambda_min"] = b.lambda_min;
  r["lambda_max"] = b.lambda_max;
  r["C_prime"] = to_string(b.C_prime);
  r["C_1"] = to_string(b.C_1);
  r["t0"] = b.t0;
  r["t_1"] = b.t_1;
  r["t_hat"] = b.t_hat;
  return r;
}

Report end_json(const GraphOfSpaces& g, const InpEnd& e) {
  Report r;
  if (e.vertex) {
    r["kind"] = "vertex";
  } else {
    r["kind"] = "interior";
    r["edge"] = g.edge_name(e.locus.edge);
    r["occurrence"] = e.locus.occurrence;
    r["power"] = e.locus.power;
  }
  return r;
}

Report inp_json(const GraphOfSpaces& g, const InpRecord& rec) {
  Report r;
  r["path"] = to_string(g, rec.prolongation.eta());
  r["tip"] = rec.prolongation.tip_index();
  r["period"] = rec.period;
  r["head"] = end_json(g, rec.head);
  r["tail"] = end_json(g, rec.tail);
  r["verified"] = rec.verified;
  return r;
}

std::string path_string(const GraphOfSpaces& g, const std::variant<EdgePath, ClosedPath>& p) {
  return std::visit([&](const auto& x) { return to_string(g, x); }, p);
}

Report pieces_json(const GraphOfSpaces& g, const InpAnalysis& a, const std::vector<Piece>& pieces,
                   const std::vector<Edge>& edges) {
  Report out = Report::array();
  for (const Piece& p : pieces) {
    Report r;
    r["kind"] = p.inp ? "inp" : "legal";
    r["first"] = p.first;
    r["last"] = p.last;
    std::string text;
    for (std::size_t i = p.first;; i = (i + 1) % edges.size()) {
      if (!text.empty()) text += ' ';
      text += g.edge_name(edges[i]);
      if (i == p.last) break;
    }
    r["edges"] = text;
    if (p.inp) r["inp"] = to_string(g, a.inps[static_cast<std::size_t>(p.record)].prolongation.eta());
    r["head_partial"] = p.head_partial;
    r["tail_partial"] = p.tail_partial;
    out.push_back(r);
  }
  return out;
}

const std::vector<Edge>& edges_of(const std::variant<EdgePath, ClosedPath>& p) {
  return std::visit([](const auto& x) -> const std::vector<Edge>& { return x.edges; }, p);
}

bool injectivity_violation(const std::string& v) {
  return v.find("pi_1-injective") != std::string::npos || v.find("essential") != std::string::npos;
}

int space_index(const GraphOfSpaces& g, std::string_view name) {
  if (const auto s = g.find_space(name)) return *s;
  fail(ErrorKind::kDomain, "unknown vertex '" + std::string(name) + "'");
}

}  // namespace

Session::Session(std::string_view document, const SessionOptions& defaults,
                 const DocumentOptions& overrides)
    : options_(defaults) {
  SystemDocument d = parse_document(document);
  for (const DocumentOptions* o : std::initializer_list<const DocumentOptions*>{&d.options, &overrides}) {
    if (o->max_image_length) options_.max_image_length = *o->max_image_length;
    if (o->max_v_entries) options_.max_v_entries = static_cast<std::size_t>(*o->max_v_entries);
    if (o->max_v_length) options_.max_v_length = static_cast<std::size_t>(*o->max_v_length);
    if (o->max_iterations) options_.max_iterations = *o->max_iterations;
  }
  system_ = std::make_unique<System>(std::move(d.graph), std::move(d.morphism));
}

Session::~Session() = default;

std::optional<ErrorKind> validation_failure(const Report& r) {
  if (r.at("valid").get<bool>()) return std::nullopt;
  const auto& v = r.at("violations");
  const bool hyp = std::all_of(v.begin(), v.end(), [](const Report& x) { return injectivity_violation(x.get<std::string>()); });
  return hyp ? ErrorKind::kHypothesis : ErrorKind::kStructural;
}

void Session::require_valid() {
  if (validated_) return;
  const Report r = validate();
  if (const auto kind = validation_failure(r)) fail(*kind, r["violations"][0].get<std::string>());
  validated_ = true;
}

Context& Session::context() {
  require_valid();
  if (!context_) context_ = std::make_unique<Context>(*system_);
  return *context_;
}

const InpAnalysis& Session::analysis() {
  if (!analysis_) {
    InpOptions o;
    o.limits.max_entries = options_.max_v_entries;
    o.limits.max_length = options_.max_v_length;
    o.max_image_length = options_.max_image_length;
    analysis_ = compute_inps(context(), o);
  }
  return *analysis_;
}

Report Session::validate() {
  const ValidationReport rep = validate_system(*system_);
  Report r;
  r["valid"] = rep.ok();
  r["violations"] = string_list(rep.violations);
  r["vertex_spaces"] = system_->graph().spaces.size();
  r["top_edges"] = system_->graph().edges.size();
  return r;
}

Report Session::profile() {
  Context& ctx = context();
  const MapProfile p = map_profile(*system_, ctx.closure);
  Report r;
  r["train_track"] = p.train_track;
  r["expanding"] = p.expanding;
  if (p.expanding) {
    r["t_exp"] = p.t_exp;
  } else {
    r["t_exp"] = nullptr;
  }
  r["is_surjective_on_pi1"] = is_surjective_on_pi1(*system_);
  r["illegal_images"] = string_list(p.illegal_images);
  r["stuck_edges"] = string_list(p.stuck_edges);
  return r;
}

Report Session::illegal_turns() {
  Context& ctx = context();
  const GraphOfSpaces& g = ctx.graph();
  Report list = Report::array();
  int degenerate_count = 0;
  for (const auto& [turn, time] : ctx.closure.illegal) {
    if (degenerate(turn)) {
      ++degenerate_count;
      continue;
    }
    list.push_back({{"turn", to_string(g, turn)}, {"degenerates_at", time}});
  }
  Report r;
  r["t0"] = ctx.closure.t0;
  r["count"] = list.size();
  r["degenerate_count"] = degenerate_count;
  r["illegal_turns"] = list;
  return r;
}

Report Session::special_turns(int t) {
  require_valid();
  const GraphOfSpaces& g = system_->graph();
  Report list = Report::array();
  for (const Turn& turn : ttgos::special_turns(*system_, t)) list.push_back(to_string(g, turn));
  Report r;
  r["power"] = t;
  r["count"] = list.size();
  r["special_turns"] = list;
  return r;
}

Report Session::vset(int t) {
  Context& ctx = context();
  VLimits limits{options_.max_v_entries, options_.max_v_length};
  const std::vector<VEntry> v = enumerate_v(ctx, t, limits);
  Report list = Report::array();
  for (const VEntry& e : v) {
    list.push_back({{"path", to_string(ctx.graph(), e.eta())},
                    {"tip", e.tip_index()},
                    {"entry", to_string(ctx.graph(), e)},
                    {"L", e.common},
                    {"reach1", e.reach1},
                    {"reach2", e.reach2}});
  }
  Report r;
  r["power"] = t;
  r["count"] = v.size();
  r["entries"] = list;
  return r;
}

Report Session::bounds() {
  return bounds_json(compute_bounds(context()));
}

Report Session::inp() {
  const InpAnalysis& a = analysis();
  const GraphOfSpaces& g = system_->graph();
  Report r;
  r["bounds"] = bounds_json(a.bounds);
  r["t_plus"] = a.t_plus;
  r["t_star"] = a.t_star;
  r["t_4"] = a.t4;
  r["v_plus_size"] = a.v.size() + 1;
  Report list = Report::array();
  for (const InpRecord& rec : a.inps) list.push_back(inp_json(g, rec));
  r["inps"] = list;
  r["diagnostics"] = string_list(a.diagnostics);
  return r;
}

Report Session::legalize(std::string_view path) {
  const EdgePath gamma = parse_edge_path(system_->graph(), path);
  const InpAnalysis& a = analysis();
  Context& ctx = context();
  const GraphOfSpaces& g = ctx.graph();
  LegalizeOptions o;
  o.max_length = options_.max_image_length;
  o.max_iterations = options_.max_iterations;
  const Legalization l = ttgos::legalize(ctx, a, gamma, o);
  Report r;
  r["path"] = to_string(g, gamma);
  r["ILT"] = ctx.closure.ilt(gamma);
  r["t"] = l.t;
  r["cap"] = l.cap;
  r["zero"] = l.zero;
  if (l.zero) {
    r["result"] = nullptr;
  } else {
    r["result"] = path_string(g, l.result);
  }
  r["ilt_trace"] = l.ilt_trace;
  r["pseudo_legal"] = l.decomposition.pseudo_legal;
  r["pieces"] = l.zero ? Report::array() : pieces_json(g, a, l.decomposition.pieces, edges_of(l.result));
  const DecayReport d = decay_check(ctx, a, gamma, o);
  r["decay"] = {{"t_4", a.t4},           {"ilt_before", d.ilt_before}, {"ilt_after", d.ilt_after},
                {"ilt_t4", d.ilt_t4},    {"lhs", d.lhs},               {"rhs", d.rhs},
                {"holds", d.holds}};
  return r;
}

Report Session::classify(std::string_view loop) {
  const ClosedPath gamma = parse_closed_path(system_->graph(), loop);
  const InpAnalysis& a = analysis();
  Context& ctx = context();
  const GraphOfSpaces& g = ctx.graph();
  LegalizeOptions o;
  o.max_length = options_.max_image_length;
  o.max_iterations = options_.max_iterations;
  const FixCertificate c = classify_conjugacy_class(ctx, a, gamma, o);
  Report r;
  r["loop"] = to_string(g, canonical_rotation(g, reduce_path(g, gamma)));
  r["kind"] = to_string(c.kind);
  r["fixed"] = c.fixed;
  r["shift"] = c.shift;
  r["t"] = c.t;
  r["legalized"] = to_string(g, c.loop);
  r["pieces"] = pieces_json(g, a, c.pieces, c.loop.edges);
  return r;
}

Report Session::fixed(std::string_view vertex, int power) {
  require_valid();
  const int v = space_index(system_->graph(), vertex);
  XStarOptions o;
  o.inp.limits = {options_.max_v_entries, options_.max_v_length};
  o.inp.max_image_length = options_.max_image_length;
  o.max_power = options_.max_power;
  o.power = power;
  const XStar xs = build_xstar(*system_, o);
  const GraphOfSpaces& sub = xs.subdivided->graph();
  Report r;
  r["vertex"] = std::string(vertex);
  r["power"] = xs.power_used;
  Report subs = Report::array();
  for (const Subdivision& s : xs.subdivisions) {
    subs.push_back({{"edge", s.edge}, {"pieces", string_list(s.pieces)}, {"occurrences", s.occurrences}});
  }
  r["subdivisions"] = subs;
  Report arcs = Report::array();
  for (const XStar::Arc& a : xs.arcs) {
    arcs.push_back({{"name", a.name},
                    {"from", sub.spaces[static_cast<std::size_t>(a.from)].name},
                    {"to", sub.spaces[static_cast<std::size_t>(a.to)].name},
                    {"path", to_string(sub, a.h)},
                    {"inp", a.record >= 0}});
  }
  r["arcs"] = arcs;
  std::vector<std::string> gens;
  for (const EdgePath& gen : fixed_subgroup_generators(*system_, xs, v)) {
    gens.push_back(to_string(system_->graph(), gen));
  }
  r["generators"] = string_list(gens);
  r["count"] = gens.size();
  r["diagnostics"] = string_list(xs.diagnostics);
  return r;
}

Report Session::growth() {
  const TransitionAnalysis t = transition_analysis(*system_);
  const GraphOfSpaces& g = system_->graph();
  Report edges = Report::array();
  Report matrix = Report::object();
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    edges.push_back({{"edge", g.edges[i].name},
                     {"growth", t.exponential[i] ? "exponential" : "polynomial"},
                     {"scc", t.scc[i]}});
    Report column = Report::object();
    for (std::size_t j = 0; j < g.edges.size(); ++j) {
      if (t.matrix[j][i] != 0) column[g.edges[j].name] = t.matrix[j][i];
    }
    matrix[g.edges[i].name] = column;
  }
  Report r;
  r["edges"] = edges;
  r["transition_columns"] = matrix;
  r["primitive"] = t.primitive;
  if (t.primitive) {
    r["witness"] = t.witness;
  } else {
    r["witness"] = nullptr;
  }
  r["num_scc"] = t.num_scc;
  return r;
}

Report Session::whitehead() {
  require_valid();
  const GraphOfSpaces& g = system_->graph();
  Report list = Report::array();
  bool all = true;
  for (const WhiteheadGraph& w : whitehead_graphs(*system_)) {
    std::vector<std::string> dirs;
    for (Edge e : w.directions) dirs.push_back(g.edge_name(e));
    Report arcs = Report::array();
    for (auto [a, b] : w.arcs) arcs.push_back(Report::array({g.edge_name(a), g.edge_name(b)}));
    list.push_back({{"vertex", g.spaces[static_cast<std::size_t>(w.space)].name},
                    {"directions", string_list(dirs)},
                    {"arcs", arcs},
                    {"connected", w.connected}});
    all = all && w.connected;
  }
  Report r;
  r["connected"] = all;
  r["graphs"] = list;
  return r;
}

Report Session::gos_build() {
  return Report::parse(to_document(to_graph_of_spaces(*system_)));
}

Report Session::report() {
  Report r;
  r["validate"] = validate();
  r["profile"] = profile();
  r["turns"] = illegal_turns();
  r["inp"] = inp();
  r["bounds"] = r["inp"]["bounds"];
  if (system_->is_absolute()) {
    r["growth"] = growth();
    r["whitehead"] = whitehead();
    Report fixed_list = Report::array();
    for (const VertexSpace& sp : system_->graph().spaces) {
      try {
        fixed_list.push_back(fixed(sp.name));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kDomain) throw;
      }
    }
    r["fixed"] = fixed_list;
  }
  return r;
}

namespace {

bool scalar(const Report& j) { return !j.is_object() && !j.is_array(); }

std::string scalar_text(const Report& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "-";
  return j.dump();
}

void render(std::ostringstream& out, const Report& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (scalar(v)) {
        out << pad << k << ": " << scalar_text(v) << '\n';
      } else if (v.empty()) {
        out << pad << k << ": (none)\n";
      } else if (v.is_array() && std::all_of(v.begin(), v.end(), scalar)) {
        out << pad << k << ":";
        for (const auto& x : v) out << ' ' << (x.is_string() && x.get<std::string>().find(' ') != std::string::npos ? "[" + x.get<std::string>() + "]" : scalar_text(x));
        out << '\n';
      } else {
        out << pad << k << ":\n";
        render(out, v, depth + 1);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (scalar(v)) {
        out << pad << "- " << scalar_text(v) << '\n';
      } else {
        out << pad << "-\n";
        render(out, v, depth + 1);
      }
    }
  } else {
    out << pad << scalar_text(j) << '\n';
  }
}

}  // namespace

std::string render_text(const Report& r) {
  std::ostringstream out;
  render(out, r, 0);
  return out.str();
}

}  // namespace ttgos
