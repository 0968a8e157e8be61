#ifndef FLAGQ_DIAGRAM_HPP
#define FLAGQ_DIAGRAM_HPP

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace flagq {

/// One crossing record. Slots hold edge labels in counterclockwise rotational
/// order; for classical crossings slot 0 is the incoming under-edge and slot 2
/// the outgoing under-edge. Virtual crossings pair slots (0,2) and (1,3) into
/// two strands with no over/under distinction and no sign.
struct Crossing {
  enum Kind { Classical, Virtual };
  Kind kind = Classical;
  std::array<int, 4> slots{};
  int sign = 0;  // +1 / -1, classical only

  // orientation data resolved at parse time
  int under_in = 0, under_out = 0, over_in = 0, over_out = 0;  // classical
  std::array<std::pair<int, int>, 2> passes{};  // virtual: (in, out) per strand

  bool operator==(const Crossing&) const = default;
};

/// Oriented knot/link diagram. Every edge label occurs exactly twice across
/// all crossing slots; following orientation decomposes the edges into one
/// closed cycle per link component. The 0-crossing unknot is the empty
/// diagram with one component.
struct KnotDiagram {
  std::vector<Crossing> crossings;
  std::vector<int> edges;  // sorted
  int components = 1;
  std::string name;

  size_t classical_count() const;
  size_t virtual_count() const;
  /// edge -> next edge along the orientation
  std::map<int, int> successor() const;

  std::string to_pd() const;
  nlohmann::json to_json() const;
};

/// Parses `PD[X[a,b,c,d],...,V[a,b,c,d],...]`. Whitespace-insensitive.
/// Throws std::invalid_argument on malformed syntax, an edge label not
/// occurring exactly twice, or inconsistent orientation traversal.
KnotDiagram parse_pd(std::string_view text);

/// Parses signed Gauss codes: tokens `O<k><+|->`, `U<k><+|->`, optional
/// `V<k>` marking virtual crossing passages, separated by commas or
/// whitespace (a passage boundary is also recognized without separators).
/// Codes without V markers that are not realizable in the plane are
/// rejected.
KnotDiagram parse_gauss(std::string_view text);

/// Genus of the surface carried by the diagram's rotation system; 0 for
/// honest planar diagrams.
int diagram_genus(const KnotDiagram& d);

enum class ArcMode { ClassicalArcs, VirtualSemiarcs };

/// Arc labeling: arcs are maximal edge runs broken at classical
/// undercrossings, and additionally at virtual crossings in
/// VirtualSemiarcs mode. Arcs are numbered 1..n.
struct ArcLabeling {
  ArcMode mode = ArcMode::ClassicalArcs;
  int arc_count = 0;
  std::map<int, int> edge_to_arc;

  int arc_of(int edge) const { return edge_to_arc.at(edge); }
};

ArcLabeling label_arcs(const KnotDiagram& d, ArcMode mode);

/// Quandle word: generator, w1 (> or >^-1) w2, or v(w).
struct QTerm {
  enum Kind { Gen, Tri, TriInv, VMap };
  Kind kind = Gen;
  int gen = 0;
  std::shared_ptr<const QTerm> a, b;

  static QTerm generator(int i);
  static QTerm tri(QTerm lhs, QTerm rhs);
  static QTerm tri_inv(QTerm lhs, QTerm rhs);
  static QTerm vmap(QTerm arg);
  std::string to_string() const;
};

/// Equation between two quandle words over arc generators.
struct Relation {
  QTerm lhs, rhs;
  std::string to_string() const;
};

/// One relation per classical crossing, in > form: a positive crossing
/// yields u_in > o = u_out, a negative one u_out > o = u_in. In
/// VirtualSemiarcs mode each virtual crossing adds two v-relations
/// v(incoming) = outgoing, one per strand.
std::vector<Relation> crossing_relations(const KnotDiagram& d,
                                         const ArcLabeling& labeling);

/// Exact structural isomorphism: a relabeling of edges and reordering of
/// crossings carrying one diagram onto the other (virtual crossings are
/// compared up to slot rotation). Used by tests; not a knot equivalence.
bool isomorphic(const KnotDiagram& a, const KnotDiagram& b);

}  // namespace flagq

#endif
