#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eqsing/lattice.hpp"

namespace eqsing {

struct Vertex {
  int id = 0;
  long self_intersection = -2;
  bool operator==(const Vertex&) const = default;
};

// Stored with i < j.
struct Edge {
  int i = 0;
  int j = 0;
  long weight = 1;
  bool operator==(const Edge&) const = default;
};

// Vertices are the distinguished basis of vanishing cycles, edges their
// pairwise intersection numbers. Vertices are kept sorted by id and edges
// lexicographically, so equality is structural.
class DynkinDiagram {
 public:
  void add_vertex(int id, long self_intersection);
  void add_edge(int i, int j, long weight);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t size() const { return vertices_.size(); }

  bool has_vertex(int id) const;
  // Position of a vertex id in ascending-id order (= lattice basis index).
  std::size_t index_of(int id) const;
  // Common self-intersection of all vertices, if there is one.
  std::optional<long> uniform_self_intersection() const;

  bool operator==(const DynkinDiagram&) const = default;

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
};

// `generator <name> <i>:<±j> ...`: the image of basis vector i is ±(basis vector j).
struct GeneratorSpec {
  std::string name;
  std::vector<std::pair<int, int>> images;  // (vertex id, signed target id)
  bool operator==(const GeneratorSpec&) const = default;
};

struct CharacterSpec {
  std::vector<std::pair<std::string, int>> values;  // (generator name, ±1)
  bool operator==(const CharacterSpec&) const = default;
};

// Contents of a diagram file: the diagram plus an optional action block.
struct DiagramFile {
  DynkinDiagram diagram;
  std::vector<GeneratorSpec> generators;
  std::optional<CharacterSpec> character;
  bool operator==(const DiagramFile&) const = default;
};

/// Parses the line-oriented diagram format. Diagnostics carry 1-based line
/// and column. Error codes: SyntaxError, DuplicateVertex, DanglingEdge,
/// DuplicateEdge.
DiagramFile parse_diagram(std::string_view text);
DiagramFile read_diagram_file(const std::string& path);

/// Byte-stable serialization: optional '#' header lines, vertices by id,
/// edges lexicographically, then generators in order and the character.
std::string serialize(const DiagramFile& file, const std::vector<std::string>& header = {});

/// Gram matrix in ascending-id order, labels "Δ<id>".
IntLattice to_lattice(const DynkinDiagram& diagram);

/// The 3x3 grid diagram of x1^4+x2^4+y1^2 with solid edges = +1 and dotted
/// diagonals = -1 (pass the weights to build other sign conventions).
DynkinDiagram grid_diagram_x9(long solid_weight = 1, long dotted_weight = -1);

}  // namespace eqsing
