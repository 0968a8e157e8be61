#include "flagq/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

namespace flagq {

namespace {

[[noreturn]] void bad(const std::string& why) {
  throw std::invalid_argument("diagram: " + why);
}

// role of each crossing slot: +1 incoming edge, -1 outgoing, 0 unknown
using Roles = std::vector<std::array<int, 4>>;

// Resolve in/out roles per slot: the two occurrences of an edge carry
// opposite roles, and opposite slots (same strand) carry opposite roles.
// Classical crossings seed slot0=in, slot2=out.
Roles resolve_roles(const std::vector<Crossing>& crossings) {
  std::map<int, std::vector<std::pair<int, int>>> occ;  // edge -> (ci, slot)
  for (size_t ci = 0; ci < crossings.size(); ++ci)
    for (int k = 0; k < 4; ++k)
      occ[crossings[ci].slots[k]].push_back({static_cast<int>(ci), k});
  for (auto& [e, v] : occ)
    if (v.size() != 2)
      bad("edge " + std::to_string(e) + " occurs " + std::to_string(v.size()) +
          " times (expected 2)");

  Roles role(crossings.size(), {0, 0, 0, 0});
  for (size_t ci = 0; ci < crossings.size(); ++ci)
    if (crossings[ci].kind == Crossing::Classical) {
      role[ci][0] = +1;
      role[ci][2] = -1;
    }

  auto assign = [&](int ci, int k, int r, bool& changed) {
    if (role[ci][k] == r) return;
    if (role[ci][k] != 0) bad("inconsistent orientation traversal");
    role[ci][k] = r;
    changed = true;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [e, v] : occ) {
      auto [c1, s1] = v[0];
      auto [c2, s2] = v[1];
      int r1 = role[c1][s1], r2 = role[c2][s2];
      if (r1 != 0 && r2 != 0) {
        if (r1 == r2) bad("inconsistent orientation traversal");
      } else if (r1 != 0) {
        assign(c2, s2, -r1, changed);
      } else if (r2 != 0) {
        assign(c1, s1, -r2, changed);
      }
    }
    for (size_t ci = 0; ci < crossings.size(); ++ci)
      for (int k = 0; k < 4; ++k)
        if (role[ci][k] != 0) assign(ci, (k + 2) % 4, -role[ci][k], changed);
  }
  // unconstrained strands (components meeting only virtual crossings as
  // through-strands): orient arbitrarily and re-propagate
  for (size_t ci = 0; ci < crossings.size(); ++ci) {
    for (int k = 0; k < 4; ++k) {
      if (role[ci][k] != 0) continue;
      role[ci][k] = +1;
      bool again = true;
      while (again) {
        again = false;
        for (auto& [e, v] : occ) {
          auto [c1, s1] = v[0];
          auto [c2, s2] = v[1];
          if (role[c1][s1] != 0 && role[c2][s2] == 0)
            assign(c2, s2, -role[c1][s1], again);
          else if (role[c2][s2] != 0 && role[c1][s1] == 0)
            assign(c1, s1, -role[c2][s2], again);
          else if (role[c1][s1] != 0 && role[c1][s1] == role[c2][s2] &&
                   !(c1 == c2 && s1 == s2))
            bad("inconsistent orientation traversal");
        }
        for (size_t cj = 0; cj < crossings.size(); ++cj)
          for (int kk = 0; kk < 4; ++kk)
            if (role[cj][kk] != 0 && role[cj][(kk + 2) % 4] == 0)
              assign(cj, (kk + 2) % 4, -role[cj][kk], again);
      }
    }
  }
  return role;
}

// Fill sign and orientation fields from resolved roles.
void annotate(std::vector<Crossing>& crossings, const Roles& role) {
  for (size_t ci = 0; ci < crossings.size(); ++ci) {
    Crossing& c = crossings[ci];
    if (c.kind == Crossing::Classical) {
      if (role[ci][1] == role[ci][3]) bad("inconsistent orientation traversal");
      c.under_in = c.slots[0];
      c.under_out = c.slots[2];
      if (role[ci][3] > 0) {  // over-strand enters at slot 3: positive
        c.sign = +1;
        c.over_in = c.slots[3];
        c.over_out = c.slots[1];
      } else {
        c.sign = -1;
        c.over_in = c.slots[1];
        c.over_out = c.slots[3];
      }
    } else {
      for (int strand = 0; strand < 2; ++strand) {
        int k = strand, k2 = strand + 2;
        if (role[ci][k] == role[ci][k2]) bad("inconsistent orientation traversal");
        if (role[ci][k] > 0)
          c.passes[strand] = {c.slots[k], c.slots[k2]};
        else
          c.passes[strand] = {c.slots[k2], c.slots[k]};
      }
    }
  }
}

KnotDiagram build_diagram(std::vector<Crossing> crossings, std::string name) {
  KnotDiagram d;
  d.name = std::move(name);
  if (crossings.empty()) {
    d.components = 1;  // 0-crossing unknot
    return d;
  }
  Roles role = resolve_roles(crossings);
  annotate(crossings, role);
  d.crossings = std::move(crossings);
  std::set<int> edges;
  for (auto& c : d.crossings)
    for (int e : c.slots) edges.insert(e);
  d.edges.assign(edges.begin(), edges.end());

  auto succ = d.successor();
  if (succ.size() != d.edges.size()) bad("orientation does not traverse all edges");
  std::set<int> vals;
  for (auto& [e, n] : succ) vals.insert(n);
  if (vals.size() != d.edges.size()) bad("inconsistent orientation traversal");
  // count components = cycles of the successor map
  std::set<int> seen;
  int comps = 0;
  for (int e0 : d.edges) {
    if (seen.count(e0)) continue;
    ++comps;
    int e = e0;
    while (!seen.count(e)) {
      seen.insert(e);
      e = succ.at(e);
    }
  }
  d.components = comps;
  return d;
}

}  // namespace

size_t KnotDiagram::classical_count() const {
  size_t n = 0;
  for (auto& c : crossings) n += c.kind == Crossing::Classical;
  return n;
}

size_t KnotDiagram::virtual_count() const {
  return crossings.size() - classical_count();
}

std::map<int, int> KnotDiagram::successor() const {
  std::map<int, int> succ;
  for (auto& c : crossings) {
    if (c.kind == Crossing::Classical) {
      succ[c.under_in] = c.under_out;
      succ[c.over_in] = c.over_out;
    } else {
      succ[c.passes[0].first] = c.passes[0].second;
      succ[c.passes[1].first] = c.passes[1].second;
    }
  }
  return succ;
}

std::string KnotDiagram::to_pd() const {
  std::string out = "PD[";
  bool first = true;
  for (auto& c : crossings) {
    if (!first) out += ",";
    first = false;
    out += c.kind == Crossing::Classical ? "X[" : "V[";
    for (int k = 0; k < 4; ++k) {
      if (k) out += ",";
      out += std::to_string(c.slots[k]);
    }
    out += "]";
  }
  return out + "]";
}

nlohmann::json KnotDiagram::to_json() const {
  nlohmann::json j;
  if (!name.empty()) j["name"] = name;
  j["components"] = components;
  j["edges"] = edges;
  nlohmann::json arr = nlohmann::json::array();
  for (auto& c : crossings) {
    nlohmann::json cj;
    cj["kind"] = c.kind == Crossing::Classical ? "classical" : "virtual";
    cj["slots"] = c.slots;
    if (c.kind == Crossing::Classical) {
      cj["sign"] = c.sign;
      cj["under"] = {c.under_in, c.under_out};
      cj["over"] = {c.over_in, c.over_out};
    }
    arr.push_back(cj);
  }
  j["crossings"] = arr;
  return j;
}

KnotDiagram parse_pd(std::string_view text) {
  std::string src;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) src += ch;
  if (src.size() < 4 || src.substr(0, 3) != "PD[" || src.back() != ']')
    bad("expected PD[...]");
  std::string body = src.substr(3, src.size() - 4);
  std::vector<Crossing> crossings;
  size_t i = 0;
  while (i < body.size()) {
    if (body[i] == ',') { ++i; continue; }
    char tag = body[i];
    if (tag != 'X' && tag != 'V') bad("unknown node tag");
    if (i + 1 >= body.size() || body[i + 1] != '[') bad("expected [ after tag");
    size_t close = body.find(']', i);
    if (close == std::string::npos) bad("unbalanced brackets");
    std::string inner = body.substr(i + 2, close - i - 2);
    Crossing c;
    c.kind = tag == 'X' ? Crossing::Classical : Crossing::Virtual;
    int slot = 0;
    std::stringstream ss(inner);
    std::string num;
    while (std::getline(ss, num, ',')) {
      if (slot >= 4) bad("crossing arity != 4");
      try {
        size_t used = 0;
        int v = std::stoi(num, &used);
        if (used != num.size() || v <= 0) bad("edge labels must be positive integers");
        c.slots[slot++] = v;
      } catch (const std::invalid_argument&) {
        bad("malformed edge label '" + num + "'");
      }
    }
    if (slot != 4) bad("crossing arity != 4");
    crossings.push_back(c);
    i = close + 1;
  }
  return build_diagram(std::move(crossings), "");
}

KnotDiagram parse_gauss(std::string_view text) {
  struct Passage { char kind; int index; int sign; };  // kind O/U/V
  std::vector<Passage> seq;
  size_t i = 0;
  auto skip_sep = [&] {
    while (i < text.size() &&
           (text[i] == ',' || std::isspace(static_cast<unsigned char>(text[i]))))
      ++i;
  };
  skip_sep();
  while (i < text.size()) {
    char kind = text[i];
    if (kind != 'O' && kind != 'U' && kind != 'V') bad("unknown Gauss token");
    ++i;
    size_t j = i;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i) bad("crossing index expected");
    int index = std::stoi(std::string(text.substr(i, j - i)));
    i = j;
    int sign = 0;
    if (kind != 'V') {
      if (i >= text.size() || (text[i] != '+' && text[i] != '-'))
        bad("sign expected after O/U token");
      sign = text[i] == '+' ? +1 : -1;
      ++i;
    }
    seq.push_back({kind, index, sign});
    skip_sep();
  }
  if (seq.empty()) return build_diagram({}, "");

  // match up passages
  std::map<int, std::pair<int, int>> classical;  // index -> (posO, posU)
  std::map<int, std::pair<int, int>> virt;       // index -> (pos1, pos2)
  std::map<int, int> signs;
  int P = static_cast<int>(seq.size());
  for (int p = 1; p <= P; ++p) {
    const Passage& ps = seq[p - 1];
    if (ps.kind == 'V') {
      auto& pr = virt.try_emplace(ps.index, 0, 0).first->second;
      if (pr.first == 0) pr.first = p;
      else if (pr.second == 0) pr.second = p;
      else bad("virtual crossing " + std::to_string(ps.index) + " visited 3+ times");
    } else {
      auto& pr = classical.try_emplace(ps.index, 0, 0).first->second;
      int& slot = ps.kind == 'O' ? pr.first : pr.second;
      if (slot != 0) bad("crossing " + std::to_string(ps.index) + " has duplicate " +
                         std::string(1, ps.kind) + " occurrence");
      slot = p;
      auto [it, fresh] = signs.try_emplace(ps.index, ps.sign);
      if (!fresh && it->second != ps.sign)
        bad("sign mismatch between O and U occurrence at crossing " +
            std::to_string(ps.index));
    }
  }
  for (auto& [idx, pr] : classical)
    if (pr.first == 0 || pr.second == 0)
      bad("crossing " + std::to_string(idx) + " has no " +
          (pr.first == 0 ? "O" : "U") + " occurrence");
  for (auto& [idx, pr] : virt)
    if (pr.second == 0)
      bad("virtual crossing " + std::to_string(idx) + " visited once");

  // edge p enters passage p; the outgoing edge is p mod P + 1
  auto next = [P](int p) { return p % P + 1; };
  std::vector<Crossing> crossings;
  for (auto& [idx, pr] : classical) {
    auto [pO, pU] = pr;
    Crossing c;
    c.kind = Crossing::Classical;
    c.sign = signs[idx];
    int u_in = pU, u_out = next(pU), o_in = pO, o_out = next(pO);
    if (c.sign > 0)
      c.slots = {u_in, o_out, u_out, o_in};
    else
      c.slots = {u_in, o_in, u_out, o_out};
    crossings.push_back(c);
  }
  for (auto& [idx, pr] : virt) {
    Crossing c;
    c.kind = Crossing::Virtual;
    c.slots = {pr.first, pr.second, next(pr.first), next(pr.second)};
    crossings.push_back(c);
  }
  KnotDiagram d = build_diagram(std::move(crossings), "");
  if (virt.empty() && diagram_genus(d) != 0)
    bad("Gauss code is not realizable in the plane; supply explicit V markers");
  return d;
}

int diagram_genus(const KnotDiagram& d) {
  if (d.crossings.empty()) return 0;
  int n = static_cast<int>(d.crossings.size());
  // darts indexed 4*ci + slot; rotation is the slot order (CCW)
  std::map<int, std::pair<int, int>> tail, head;  // edge -> dart
  Roles role = resolve_roles(d.crossings);
  for (int ci = 0; ci < n; ++ci)
    for (int k = 0; k < 4; ++k) {
      int e = d.crossings[ci].slots[k];
      if (role[ci][k] > 0) head[e] = {ci, k};
      else tail[e] = {ci, k};
    }
  std::vector<int> nxt(4 * n);
  for (int ci = 0; ci < n; ++ci)
    for (int k = 0; k < 4; ++k) {
      int e = d.crossings[ci].slots[k];
      auto [oc, ok] = role[ci][k] > 0 ? tail[e] : head[e];
      nxt[4 * ci + k] = 4 * oc + (ok + 1) % 4;
    }
  std::vector<bool> seen(4 * n, false);
  int faces = 0;
  for (int d0 = 0; d0 < 4 * n; ++d0) {
    if (seen[d0]) continue;
    ++faces;
    for (int x = d0; !seen[x]; x = nxt[x]) seen[x] = true;
  }
  int chi = n - 2 * n + faces;
  return (2 - chi) / 2;
}

ArcLabeling label_arcs(const KnotDiagram& d, ArcMode mode) {
  ArcLabeling lab;
  lab.mode = mode;
  if (d.crossings.empty()) {
    lab.arc_count = d.components;  // one free loop per component
    return lab;
  }
  auto succ = d.successor();
  std::set<int> breaks;  // edges that start a new arc
  for (auto& c : d.crossings) {
    if (c.kind == Crossing::Classical) {
      breaks.insert(c.under_out);
    } else if (mode == ArcMode::VirtualSemiarcs) {
      breaks.insert(c.passes[0].second);
      breaks.insert(c.passes[1].second);
    }
  }
  int arc = 0;
  for (int e0 : breaks) {
    if (lab.edge_to_arc.count(e0)) continue;
    ++arc;
    int e = e0;
    while (true) {
      lab.edge_to_arc[e] = arc;
      e = succ.at(e);
      if (breaks.count(e)) break;
    }
  }
  // components never broken (no undercrossing on them)
  for (int e0 : d.edges) {
    if (lab.edge_to_arc.count(e0)) continue;
    ++arc;
    int e = e0;
    while (!lab.edge_to_arc.count(e)) {
      lab.edge_to_arc[e] = arc;
      e = succ.at(e);
    }
  }
  lab.arc_count = arc;
  return lab;
}

QTerm QTerm::generator(int i) {
  QTerm t;
  t.kind = Gen;
  t.gen = i;
  return t;
}
QTerm QTerm::tri(QTerm lhs, QTerm rhs) {
  QTerm t;
  t.kind = Tri;
  t.a = std::make_shared<QTerm>(std::move(lhs));
  t.b = std::make_shared<QTerm>(std::move(rhs));
  return t;
}
QTerm QTerm::tri_inv(QTerm lhs, QTerm rhs) {
  QTerm t = tri(std::move(lhs), std::move(rhs));
  t.kind = TriInv;
  return t;
}
QTerm QTerm::vmap(QTerm arg) {
  QTerm t;
  t.kind = VMap;
  t.a = std::make_shared<QTerm>(std::move(arg));
  return t;
}

std::string QTerm::to_string() const {
  switch (kind) {
    case Gen: return "x" + std::to_string(gen);
    case Tri: return "(" + a->to_string() + ">" + b->to_string() + ")";
    case TriInv: return "(" + a->to_string() + ">'" + b->to_string() + ")";
    case VMap: return "v(" + a->to_string() + ")";
  }
  return "?";
}

std::string Relation::to_string() const {
  return lhs.to_string() + " = " + rhs.to_string();
}

std::vector<Relation> crossing_relations(const KnotDiagram& d,
                                         const ArcLabeling& lab) {
  std::vector<Relation> rels;
  for (auto& c : d.crossings) {
    if (c.kind == Crossing::Classical) {
      int a_in = lab.arc_of(c.under_in);
      int a_out = lab.arc_of(c.under_out);
      int a_over = lab.arc_of(c.over_in);
      if (c.sign > 0)
        rels.push_back({QTerm::tri(QTerm::generator(a_in), QTerm::generator(a_over)),
                        QTerm::generator(a_out)});
      else
        rels.push_back({QTerm::tri(QTerm::generator(a_out), QTerm::generator(a_over)),
                        QTerm::generator(a_in)});
    } else if (lab.mode == ArcMode::VirtualSemiarcs) {
      for (auto& [in, out] : c.passes)
        rels.push_back({QTerm::vmap(QTerm::generator(lab.arc_of(in))),
                        QTerm::generator(lab.arc_of(out))});
    }
  }
  return rels;
}

namespace {

bool try_match(const KnotDiagram& a, const KnotDiagram& b,
               std::vector<int>& cmap, std::map<int, int>& emap,
               std::vector<bool>& used, size_t ci) {
  if (ci == a.crossings.size()) return true;
  const Crossing& ca = a.crossings[ci];
  for (size_t cj = 0; cj < b.crossings.size(); ++cj) {
    if (used[cj]) continue;
    const Crossing& cb = b.crossings[cj];
    if (ca.kind != cb.kind) continue;
    if (ca.kind == Crossing::Classical && ca.sign != cb.sign) continue;
    int rot_max = ca.kind == Crossing::Virtual ? 4 : 1;
    for (int rot = 0; rot < rot_max; ++rot) {
      std::vector<std::pair<int, int>> added;
      bool ok = true;
      for (int k = 0; k < 4 && ok; ++k) {
        int ea = ca.slots[k], eb = cb.slots[(k + rot) % 4];
        auto it = emap.find(ea);
        if (it == emap.end()) {
          for (auto& [x, y] : emap)
            if (y == eb) { ok = false; break; }
          if (ok) {
            emap[ea] = eb;
            added.push_back({ea, eb});
          }
        } else if (it->second != eb) {
          ok = false;
        }
      }
      if (ok) {
        cmap[ci] = static_cast<int>(cj);
        used[cj] = true;
        if (try_match(a, b, cmap, emap, used, ci + 1)) return true;
        used[cj] = false;
      }
      for (auto& [ea, eb] : added) emap.erase(ea);
    }
  }
  return false;
}

}  // namespace

bool isomorphic(const KnotDiagram& a, const KnotDiagram& b) {
  if (a.crossings.size() != b.crossings.size()) return false;
  if (a.classical_count() != b.classical_count()) return false;
  if (a.components != b.components) return false;
  std::vector<int> cmap(a.crossings.size(), -1);
  std::map<int, int> emap;
  std::vector<bool> used(b.crossings.size(), false);
  return try_match(a, b, cmap, emap, used, 0);
}

}  // namespace flagq
