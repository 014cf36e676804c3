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

// Edge-path text form.

#include <cctype>

#include "ttgos/gos.hpp"

namespace ttgos {
namespace {

struct Token {
  bool connector = false;
  std::string edge;                 // when !connector
  std::optional<std::string> space;  // when connector
  std::vector<std::string> steps;   // when connector
  std::size_t column = 0;
};

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

[[noreturn]] void parse_fail(std::size_t col, const std::string& msg) {
  fail(ErrorKind::kStructural, "column " + std::to_string(col + 1) + ": " + msg);
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token t;
    t.column = i;
    if (c == '{') {
      const std::size_t close = text.find('}', i);
      if (close == std::string_view::npos) parse_fail(i, "unterminated connector");
      std::string_view body = text.substr(i + 1, close - i - 1);
      t.connector = true;
      const std::size_t colon = body.find(':');
      if (colon != std::string_view::npos) {
        auto sp = split_ws(body.substr(0, colon));
        if (sp.size() != 1) parse_fail(i, "malformed connector space");
        t.space = sp.front();
        body = body.substr(colon + 1);
      }
      t.steps = split_ws(body);
      i = close + 1;
    } else if (c == '}') {
      parse_fail(i, "unbalanced '}'");
    } else {
      std::size_t j = i;
      while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) &&
             text[j] != '{' && text[j] != '}') {
        ++j;
      }
      t.edge = std::string(text.substr(i, j - i));
      i = j;
    }
    out.push_back(std::move(t));
  }
  return out;
}

LocalPath read_steps(const GraphOfSpaces& g, int space, int start,
                     const std::vector<std::string>& steps, std::size_t col) {
  LocalPath p = trivial_path(space, start);
  const auto& sp = g.spaces[static_cast<std::size_t>(space)];
  for (const auto& name : steps) {
    auto s = g.find_local_edge(space, name);
    if (!s) parse_fail(col, "unknown local edge '" + name + "' in space " + sp.name);
    if (sp.origin(*s) != p.end) {
      parse_fail(col, "local edge '" + name + "' does not start at " + sp.vertices[p.end]);
    }
    p.steps.push_back(*s);
    p.end = sp.terminus(*s);
  }
  reduce_in_place(p);
  return p;
}

int connector_space(const GraphOfSpaces& g, const Token& t, std::optional<int> inferred) {
  if (t.space) {
    auto s = g.find_space(*t.space);
    if (!s) parse_fail(t.column, "unknown vertex space '" + *t.space + "'");
    if (inferred && *inferred != *s) parse_fail(t.column, "connector lies in the wrong vertex space");
    return *s;
  }
  if (inferred) return *inferred;
  if (g.spaces.size() == 1) return 0;
  parse_fail(t.column, "connector needs an explicit vertex space");
}

struct Parsed {
  std::optional<LocalPath> lead;
  EdgePath path;
  std::optional<LocalPath> trail;
};

// lead_start: where a leading connector starts; nullopt forbids one.
Parsed parse_items(const GraphOfSpaces& g, std::string_view text,
                   std::optional<AttachPoint> lead_start, bool allow_trail) {
  Parsed out;
  std::optional<LocalPath> pend;
  for (const Token& t : tokenize(text)) {
    if (t.connector) {
      if (out.path.empty()) {
        if (!lead_start) parse_fail(t.column, "edge path must start with a top edge");
        const int sp = connector_space(g, t, lead_start->space);
        const int start = pend ? pend->end : lead_start->vertex;
        LocalPath piece = read_steps(g, sp, start, t.steps, t.column);
        pend = pend ? concat(*pend, piece) : piece;
      } else {
        const AttachPoint at = g.terminus(out.path.edges.back());
        const int sp = connector_space(g, t, at.space);
        const int start = pend ? pend->end : at.vertex;
        LocalPath piece = read_steps(g, sp, start, t.steps, t.column);
        pend = pend ? concat(*pend, piece) : piece;
      }
      continue;
    }
    auto e = g.find_edge(t.edge);
    if (!e) parse_fail(t.column, "unknown top edge '" + t.edge + "'");
    const AttachPoint o = g.origin(*e);
    if (out.path.empty()) {
      LocalPath lead = pend ? *pend
                            : (lead_start ? trivial_path(lead_start->space, lead_start->vertex)
                                          : trivial_path(o.space, o.vertex));
      if (lead.space != o.space || lead.end != o.vertex) {
        parse_fail(t.column, "'" + t.edge + "' does not start where the path is");
      }
      if (lead_start) out.lead = std::move(lead);
    } else {
      const AttachPoint at = g.terminus(out.path.edges.back());
      LocalPath chi = pend ? *pend : trivial_path(at.space, at.vertex);
      if (chi.space != o.space || chi.end != o.vertex) {
        parse_fail(t.column, "missing or mismatched connector before '" + t.edge + "'");
      }
      out.path.connectors.push_back(std::move(chi));
    }
    out.path.edges.push_back(*e);
    pend.reset();
  }
  if (pend) {
    if (out.path.empty() && !lead_start) parse_fail(0, "edge path has no top edges");
    if (!allow_trail) parse_fail(text.size(), "edge path must end with a top edge");
    out.trail = std::move(pend);
  }
  if (out.path.empty()) parse_fail(0, "edge path has no top edges");
  return out;
}

}  // namespace

LocalPath parse_local_path(const GraphOfSpaces& g, int space, int start, std::string_view text) {
  std::vector<std::string> steps;
  for (const Token& t : tokenize(text)) {
    if (t.connector) {
      steps.insert(steps.end(), t.steps.begin(), t.steps.end());
    } else {
      steps.push_back(t.edge);
    }
  }
  return read_steps(g, space, start, steps, 0);
}

EdgePath parse_edge_path(const GraphOfSpaces& g, std::string_view text) {
  return parse_items(g, text, std::nullopt, false).path;
}

EdgeImage parse_edge_image(const GraphOfSpaces& g, std::string_view text, AttachPoint from,
                           AttachPoint to) {
  Parsed p = parse_items(g, text, from, true);
  EdgeImage img;
  img.path = std::move(p.path);
  img.lead = p.lead ? *p.lead : trivial_path(from.space, from.vertex);
  const AttachPoint last = g.terminus(img.path.edges.back());
  img.trail = p.trail ? *p.trail : trivial_path(last.space, last.vertex);
  if (img.trail.space != to.space || img.trail.end != to.vertex) {
    fail(ErrorKind::kStructural, "edge image does not end at the image of the terminal point");
  }
  return img;
}

ClosedPath parse_closed_path(const GraphOfSpaces& g, std::string_view text) {
  auto tokens = tokenize(text);
  bool has_edge = false;
  for (const auto& t : tokens) has_edge = has_edge || !t.connector;
  ClosedPath c;
  if (!has_edge) {
    if (tokens.empty()) parse_fail(0, "empty loop");
    const int sp = connector_space(g, tokens.front(), std::nullopt);
    std::vector<std::string> steps;
    for (const auto& t : tokens) steps.insert(steps.end(), t.steps.begin(), t.steps.end());
    int start = 0;
    if (!steps.empty()) {
      auto s = g.find_local_edge(sp, steps.front());
      if (!s) parse_fail(0, "unknown local edge '" + steps.front() + "'");
      start = g.spaces[static_cast<std::size_t>(sp)].origin(*s);
    }
    c.vertex_loop = read_steps(g, sp, start, steps, 0);
    if (c.vertex_loop.end != c.vertex_loop.start) parse_fail(0, "loop is not closed");
    return c;
  }
  // A leading connector is folded into the closing one.
  std::size_t first_edge = 0;
  while (tokens[first_edge].connector) ++first_edge;
  std::vector<Token> rotated(tokens.begin() + static_cast<long>(first_edge), tokens.end());
  rotated.insert(rotated.end(), tokens.begin(), tokens.begin() + static_cast<long>(first_edge));
  std::string rebuilt;
  for (const auto& t : rotated) {
    if (t.connector) {
      rebuilt += "{";
      if (t.space) rebuilt += *t.space + ":";
      for (const auto& s : t.steps) rebuilt += " " + s;
      rebuilt += "} ";
    } else {
      rebuilt += t.edge + " ";
    }
  }
  Parsed p = parse_items(g, rebuilt, std::nullopt, true);
  const AttachPoint last = g.terminus(p.path.edges.back());
  const AttachPoint first = g.origin(p.path.edges.front());
  LocalPath closing = p.trail ? *p.trail : trivial_path(last.space, last.vertex);
  if (closing.space != first.space || closing.end != first.vertex) {
    fail(ErrorKind::kStructural, "loop does not close up");
  }
  c.edges = std::move(p.path.edges);
  c.connectors = std::move(p.path.connectors);
  c.connectors.push_back(std::move(closing));
  return c;
}

std::string to_string(const GraphOfSpaces& g, const LocalPath& p, bool with_space) {
  const auto& sp = g.spaces.at(static_cast<std::size_t>(p.space));
  std::string out = "{";
  if (with_space) out += sp.name + ":";
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    if (i > 0 || with_space) out += " ";
    out += sp.edge_name(p.steps[i]);
  }
  out += "}";
  return out;
}

std::string to_string(const GraphOfSpaces& g, const EdgePath& p) {
  std::string out;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    if (i > 0) {
      out += " ";
      if (!p.connectors[i - 1].trivial()) out += to_string(g, p.connectors[i - 1]) + " ";
    }
    out += g.edge_name(p.edges[i]);
  }
  return out;
}

std::string to_string(const GraphOfSpaces& g, const ClosedPath& p) {
  if (p.edges.empty()) return to_string(g, p.vertex_loop, true);
  EdgePath open{p.edges, {p.connectors.begin(), p.connectors.end() - 1}};
  std::string out = to_string(g, open);
  if (!p.connectors.back().trivial()) out += " " + to_string(g, p.connectors.back());
  return out;
}

std::string to_string(const GraphOfSpaces& g, const EdgeImage& p) {
  std::string out;
  if (!p.lead.trivial()) out += to_string(g, p.lead) + " ";
  out += to_string(g, p.path);
  if (!p.trail.trivial()) out += " " + to_string(g, p.trail);
  return out;
}

}  // namespace ttgos
