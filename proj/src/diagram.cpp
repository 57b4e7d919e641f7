#include "kholag/diagram.hpp"

#include <algorithm>
#include <map>

#include <nlohmann/json.hpp>

#include "kholag/detail/dsu.hpp"
#include "kholag/error.hpp"

namespace kholag {

int LinkDiagram::n_plus() const {
  return static_cast<int>(std::count_if(crossings_.begin(), crossings_.end(),
                                        [](const Crossing& c) { return c.sign > 0; }));
}

int LinkDiagram::n_minus() const { return crossing_count() - n_plus(); }

const BraidWord& LinkDiagram::braid() const {
  if (!embedding_) throw DomainError("diagram is not a braid closure");
  return embedding_->braid;
}

void LinkDiagram::compute_components() {
  detail::DisjointSets strands(edge_count_);
  for (const auto& c : crossings_) {
    strands.unite(c.edges[0], c.edges[2]);
    strands.unite(c.edges[1], c.edges[3]);
  }
  components_ = strands.label(component_of_edge_);
}

LinkDiagram braid_closure(const BraidWord& b) {
  LinkDiagram d;
  if (b.is_empty_link()) {
    d.embedding_ = BraidEmbedding{b, 1, {}};
    return d;
  }
  validate(b);
  const int n = b.strands;
  const int len = static_cast<int>(b.letters.size());
  const int levels = std::max(len, 1);

  detail::DisjointSets pieces(levels * n);
  auto id = [n](int t, int k) { return t * n + k; };
  for (int t = 0; t < levels; ++t) {
    int i = len > 0 ? std::abs(b.letters[t]) : 0;
    for (int k = 0; k < n; ++k) {
      if (len > 0 && (k == i - 1 || k == i)) continue;
      pieces.unite(id(t, k), id((t + 1) % levels, k));
    }
  }
  BraidEmbedding emb{b, levels, {}};
  d.edge_count_ = pieces.label(emb.edge_of_piece);

  for (int t = 0; t < len; ++t) {
    const int l = b.letters[t];
    const int i = std::abs(l);
    const int up = (t + 1) % levels;
    const int sw = emb.piece(t, i - 1), se = emb.piece(t, i);
    const int nw = emb.piece(up, i - 1), ne = emb.piece(up, i);
    Crossing c;
    c.sign = l > 0 ? 1 : -1;
    // Positive: over strand SW->NE, under SE->NW. Negative: the reverse.
    c.edges = l > 0 ? std::array<int, 4>{se, ne, nw, sw} : std::array<int, 4>{sw, se, ne, nw};
    d.crossings_.push_back(c);
  }
  d.embedding_ = std::move(emb);
  d.compute_components();
  return d;
}

LinkDiagram from_pd(const std::vector<std::array<int, 4>>& crossings, const std::vector<int>& signs) {
  if (signs.size() != crossings.size()) throw ParseError("PD code: one sign per crossing required");
  std::map<int, int> dense;
  std::map<int, int> uses;
  for (const auto& x : crossings)
    for (int e : x) {
      ++uses[e];
      dense.emplace(e, 0);
    }
  int next = 0;
  for (auto& [label, idx] : dense) {
    if (uses[label] != 2) throw ParseError("PD code: edge " + std::to_string(label) + " must occur exactly twice");
    idx = next++;
  }
  LinkDiagram d;
  d.edge_count_ = next;
  for (std::size_t c = 0; c < crossings.size(); ++c) {
    if (signs[c] != 1 && signs[c] != -1) throw ParseError("PD code: signs must be +1 or -1");
    Crossing x;
    x.sign = signs[c];
    for (int k = 0; k < 4; ++k) x.edges[k] = dense.at(crossings[c][k]);
    d.crossings_.push_back(x);
  }
  d.compute_components();
  return d;
}

LinkDiagram mirror(const LinkDiagram& d) {
  if (d.embedding_) return braid_closure(d.embedding_->braid.mirrored());
  LinkDiagram m;
  m.crossings_ = d.crossings_;
  m.edge_count_ = d.edge_count_;
  m.components_ = d.components_;
  m.component_of_edge_ = d.component_of_edge_;
  for (auto& c : m.crossings_) {
    // The old over strand becomes the under strand; start at its incoming end.
    const auto e = c.edges;
    c.edges = c.sign > 0 ? std::array<int, 4>{e[3], e[0], e[1], e[2]}
                         : std::array<int, 4>{e[1], e[2], e[3], e[0]};
    c.sign = -c.sign;
  }
  return m;
}

Vertex oriented_vertex(const LinkDiagram& d) {
  Vertex v = 0;
  for (int c = 0; c < d.crossing_count(); ++c)
    if (oriented_bit(d.crossings()[c])) v |= Vertex{1} << c;
  return v;
}

namespace {

bool horizontal_at(const Crossing& c, Vertex v, int index) {
  const int bit = static_cast<int>((v >> index) & 1U);
  return bit != oriented_bit(c);
}

void add_geometry(const LinkDiagram& d, Smoothing& s) {
  const auto& emb = *d.embedding();
  const int n = emb.braid.strands;
  const int levels = emb.levels;
  const int len = d.crossing_count();

  for (int t = 0; t < len; ++t) {
    const auto& c = d.crossings()[t];
    if (!horizontal_at(c, s.vertex, t)) continue;
    const int i = std::abs(emb.braid.letters[t]);
    const int up = (t + 1) % levels;
    s.pieces.push_back({t + 0.25, double(i - 1), double(i), s.circle_of_edge[emb.piece(t, i - 1)]});
    s.pieces.push_back({t + 0.75, double(i - 1), double(i), s.circle_of_edge[emb.piece(up, i - 1)]});
  }
  for (int j = 0; j < n; ++j) {
    const int circ = s.circle_of_edge[emb.piece(0, j)];
    const double lo = j, hi = 2.0 * n - 1 - j;
    s.pieces.push_back({double(levels + n - j), lo, hi, circ});
    s.pieces.push_back({-double(n - j), lo, hi, circ});
  }

  // A sample point per circle: the first strand piece on it, nudged right.
  std::vector<std::pair<double, double>> sample(s.circle_count);
  std::vector<bool> have(s.circle_count, false);
  for (int t = 0; t < levels; ++t)
    for (int k = 0; k < n; ++k) {
      const int circ = s.circle_of_edge[emb.piece(t, k)];
      if (!have[circ]) {
        have[circ] = true;
        sample[circ] = {k + 0.5, double(t)};
      }
    }

  const int m = s.circle_count;
  std::vector<std::vector<bool>> inside(m, std::vector<bool>(m, false));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (a != b) inside[a][b] = ray_crossings(s, sample[a].first, sample[a].second, b) % 2 == 1;

  s.depth.assign(m, 0);
  s.parent.assign(m, -1);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (inside[a][b]) ++s.depth[a];
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (inside[a][b] && s.depth[b] == s.depth[a] - 1) s.parent[a] = b;

  s.orientation.assign(m, CircleOrientation::unknown);
  if (s.vertex == oriented_vertex(d))
    // Strands run upward on the left and return downward on the right.
    s.orientation.assign(m, CircleOrientation::clockwise);
}

}  // namespace

Smoothing resolve(const LinkDiagram& d, Vertex vertex) {
  Smoothing s;
  s.vertex = vertex;
  detail::DisjointSets circles(d.edge_count());
  for (int c = 0; c < d.crossing_count(); ++c) {
    const auto& e = d.crossings()[c].edges;
    if ((vertex >> c) & 1U) {
      circles.unite(e[0], e[3]);
      circles.unite(e[1], e[2]);
    } else {
      circles.unite(e[0], e[1]);
      circles.unite(e[2], e[3]);
    }
  }
  s.circle_count = circles.label(s.circle_of_edge);
  if (d.embedding() && !d.is_empty()) add_geometry(d, s);
  return s;
}

Smoothing oriented_resolution(const LinkDiagram& d) { return resolve(d, oriented_vertex(d)); }

int ray_crossings(const Smoothing& s, double x, double y, int circle) {
  int count = 0;
  for (const auto& p : s.pieces) {
    if (circle >= 0 && p.circle != circle) continue;
    if (p.y > y && p.x_lo < x && x < p.x_hi) ++count;
  }
  return count;
}

ClassicalInvariants classical_from_legendrian(int tb, int r) {
  return ClassicalInvariants{tb - r, tb, r, ClassicalInvariants::Source::from_legendrian};
}

ClassicalInvariants classical_from_braid(const BraidWord& b) {
  ClassicalInvariants c;
  c.sl = self_linking(b);
  c.source = ClassicalInvariants::Source::from_braid;
  return c;
}

LinkDiagram parse_diagram_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("diagram JSON: ") + e.what());
  }
  try {
    if (j.is_object() && j.contains("strands")) {
      BraidWord b{j.at("strands").get<int>(), j.value("letters", std::vector<int>{})};
      validate(b);
      return braid_closure(b);
    }
    if (j.is_object() && j.contains("crossings")) {
      const auto crossings = j.at("crossings").get<std::vector<std::array<int, 4>>>();
      const auto signs = j.at("signs").get<std::vector<int>>();
      return from_pd(crossings, signs);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("diagram JSON: ") + e.what());
  }
  throw ParseError("diagram JSON needs either 'strands' and 'letters' or 'crossings' and 'signs'");
}

LinkDiagram parse_diagram(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_diagram_json(text);
  return braid_closure(parse_braid(text));
}

std::string braid_to_json(const BraidWord& b) {
  return nlohmann::json{{"strands", b.strands}, {"letters", b.letters}}.dump();
}

}  // namespace kholag
