#include "eqsing/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace eqsing {

void DynkinDiagram::add_vertex(int id, long self_intersection) {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id,
                             [](const Vertex& v, int key) { return v.id < key; });
  if (it != vertices_.end() && it->id == id) throw Error("DuplicateVertex", "duplicate vertex " + std::to_string(id));
  vertices_.insert(it, Vertex{id, self_intersection});
}

void DynkinDiagram::add_edge(int i, int j, long weight) {
  if (i == j) throw Error("SyntaxError", "edge joins vertex " + std::to_string(i) + " to itself");
  if (weight == 0) throw Error("SyntaxError", "edge weight must be nonzero");
  if (!has_vertex(i) || !has_vertex(j))
    throw Error("DanglingEdge", "edge " + std::to_string(i) + "-" + std::to_string(j) + " references an unknown vertex");
  Edge e{std::min(i, j), std::max(i, j), weight};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e, [](const Edge& a, const Edge& b) {
    return std::pair(a.i, a.j) < std::pair(b.i, b.j);
  });
  if (it != edges_.end() && it->i == e.i && it->j == e.j)
    throw Error("DuplicateEdge", "duplicate edge " + std::to_string(e.i) + "-" + std::to_string(e.j));
  edges_.insert(it, e);
}

bool DynkinDiagram::has_vertex(int id) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), Vertex{id, 0},
                            [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
}

std::size_t DynkinDiagram::index_of(int id) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id,
                             [](const Vertex& v, int key) { return v.id < key; });
  if (it == vertices_.end() || it->id != id) throw Error("UnknownVertex", "no vertex with id " + std::to_string(id));
  return static_cast<std::size_t>(it - vertices_.begin());
}

std::optional<long> DynkinDiagram::uniform_self_intersection() const {
  if (vertices_.empty()) return std::nullopt;
  const long s = vertices_.front().self_intersection;
  for (const auto& v : vertices_)
    if (v.self_intersection != s) return std::nullopt;
  return s;
}

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size() || line[i] == '#') break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

class LineParser {
 public:
  LineParser(std::size_t line, std::vector<Token> tokens) : line_(line), tokens_(std::move(tokens)) {}

  [[noreturn]] void fail(const std::string& code, std::size_t column, const std::string& msg) const {
    throw ParseError(code, line_, column, msg);
  }
  [[noreturn]] void fail_at(std::size_t tok, const std::string& msg) const {
    fail("SyntaxError", tok < tokens_.size() ? tokens_[tok].column : end_column(), msg);
  }
  std::size_t end_column() const {
    if (tokens_.empty()) return 1;
    return tokens_.back().column + tokens_.back().text.size();
  }

  const Token& at(std::size_t i) const {
    if (i >= tokens_.size()) fail_at(i, "unexpected end of line");
    return tokens_[i];
  }
  std::size_t size() const { return tokens_.size(); }
  std::size_t line() const { return line_; }

  long integer(std::string_view s, std::size_t column, bool allow_plus = true) const {
    std::string_view body = s;
    if (allow_plus && !body.empty() && body.front() == '+') body.remove_prefix(1);
    long v = 0;
    auto [p, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
    if (ec != std::errc() || p != body.data() + body.size() || body.empty())
      fail("SyntaxError", column, "expected an integer, got '" + std::string(s) + "'");
    return v;
  }

  long keyed(std::size_t tok, std::string_view key) const {
    const Token& t = at(tok);
    if (t.text.size() <= key.size() || t.text.substr(0, key.size()) != key)
      fail("SyntaxError", t.column, "expected '" + std::string(key) + "<int>'");
    return integer(t.text.substr(key.size()), t.column + key.size());
  }

  void expect_count(std::size_t n) const {
    if (tokens_.size() > n) fail_at(n, "unexpected trailing token '" + std::string(tokens_[n].text) + "'");
    if (tokens_.size() < n) fail_at(tokens_.size(), "unexpected end of line");
  }

 private:
  std::size_t line_;
  std::vector<Token> tokens_;
};

bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

struct PendingEdge {
  Edge edge;
  std::size_t line;
  std::size_t col_i;
  std::size_t col_j;
};

}  // namespace

DiagramFile parse_diagram(std::string_view text) {
  DiagramFile out;
  std::vector<PendingEdge> edges;
  std::map<std::pair<int, int>, std::size_t> edge_lines;
  std::vector<std::pair<GeneratorSpec, std::size_t>> generators;
  std::vector<std::tuple<std::string, int, std::size_t, std::size_t>> character_entries;
  std::optional<std::size_t> character_line;
  std::vector<std::pair<std::pair<int, std::size_t>, std::size_t>> vertex_lines;

  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    LineParser p(lineno, tokenize(raw));
    if (p.size() == 0) continue;
    const std::string_view kw = p.at(0).text;

    if (kw == "vertex") {
      p.expect_count(3);
      const int id = static_cast<int>(p.integer(p.at(1).text, p.at(1).column, false));
      const long self = p.keyed(2, "self=");
      if (out.diagram.has_vertex(id)) p.fail("DuplicateVertex", p.at(1).column, "duplicate vertex " + std::to_string(id));
      out.diagram.add_vertex(id, self);
    } else if (kw == "edge") {
      p.expect_count(4);
      const int i = static_cast<int>(p.integer(p.at(1).text, p.at(1).column, false));
      const int j = static_cast<int>(p.integer(p.at(2).text, p.at(2).column, false));
      const long w = p.keyed(3, "w=");
      if (i == j) p.fail("SyntaxError", p.at(2).column, "edge joins vertex " + std::to_string(i) + " to itself");
      if (w == 0) p.fail("SyntaxError", p.at(3).column, "edge weight must be nonzero");
      const auto key = std::pair(std::min(i, j), std::max(i, j));
      if (edge_lines.count(key))
        p.fail("DuplicateEdge", p.at(1).column,
               "duplicate edge " + std::to_string(key.first) + "-" + std::to_string(key.second) + " (first on line " +
                   std::to_string(edge_lines[key]) + ")");
      edge_lines[key] = lineno;
      edges.push_back({Edge{i, j, w}, lineno, p.at(1).column, p.at(2).column});
    } else if (kw == "generator") {
      if (p.size() < 2) p.fail_at(1, "generator needs a name");
      GeneratorSpec g;
      g.name = std::string(p.at(1).text);
      if (!valid_name(g.name)) p.fail_at(1, "invalid generator name '" + g.name + "'");
      for (const auto& [other, l] : generators)
        if (other.name == g.name) p.fail_at(1, "duplicate generator '" + g.name + "'");
      std::set<int> sources;
      for (std::size_t t = 2; t < p.size(); ++t) {
        const Token& tok = p.at(t);
        const auto colon = tok.text.find(':');
        if (colon == std::string_view::npos) p.fail("SyntaxError", tok.column, "expected <i>:<±j>");
        const int src = static_cast<int>(p.integer(tok.text.substr(0, colon), tok.column, false));
        const int dst = static_cast<int>(p.integer(tok.text.substr(colon + 1), tok.column + colon + 1));
        if (dst == 0) p.fail("SyntaxError", tok.column + colon + 1, "image must be ±<vertex id>, not 0");
        if (!sources.insert(src).second)
          p.fail("SyntaxError", tok.column, "vertex " + std::to_string(src) + " listed twice in generator");
        g.images.emplace_back(src, dst);
      }
      std::sort(g.images.begin(), g.images.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      generators.emplace_back(std::move(g), lineno);
    } else if (kw == "character") {
      if (character_line) p.fail_at(0, "second character line (first on line " + std::to_string(*character_line) + ")");
      character_line = lineno;
      for (std::size_t t = 1; t < p.size(); ++t) {
        const Token& tok = p.at(t);
        const auto eq = tok.text.find('=');
        if (eq == std::string_view::npos) p.fail("SyntaxError", tok.column, "expected <name>=<+1|-1>");
        const long v = p.integer(tok.text.substr(eq + 1), tok.column + eq + 1);
        if (v != 1 && v != -1) p.fail("SyntaxError", tok.column + eq + 1, "character value must be +1 or -1");
        character_entries.emplace_back(std::string(tok.text.substr(0, eq)), static_cast<int>(v), lineno, tok.column);
      }
    } else {
      p.fail_at(0, "unknown directive '" + std::string(kw) + "'");
    }
  }

  for (const auto& pe : edges) {
    if (!out.diagram.has_vertex(pe.edge.i))
      throw ParseError("DanglingEdge", pe.line, pe.col_i, "edge references unknown vertex " + std::to_string(pe.edge.i));
    if (!out.diagram.has_vertex(pe.edge.j))
      throw ParseError("DanglingEdge", pe.line, pe.col_j, "edge references unknown vertex " + std::to_string(pe.edge.j));
    out.diagram.add_edge(pe.edge.i, pe.edge.j, pe.edge.weight);
  }

  for (auto& [g, line] : generators) {
    std::set<int> targets;
    for (const auto& [src, dst] : g.images) {
      if (!out.diagram.has_vertex(src))
        throw ParseError("SyntaxError", line, 1, "generator '" + g.name + "' maps unknown vertex " + std::to_string(src));
      if (!out.diagram.has_vertex(std::abs(dst)))
        throw ParseError("SyntaxError", line, 1, "generator '" + g.name + "' maps to unknown vertex " + std::to_string(dst));
      targets.insert(std::abs(dst));
    }
    if (g.images.size() != out.diagram.size() || targets.size() != out.diagram.size())
      throw ParseError("SyntaxError", line, 1,
                       "generator '" + g.name + "' must map every vertex, bijectively (" +
                           std::to_string(g.images.size()) + " of " + std::to_string(out.diagram.size()) + " listed)");
    out.generators.push_back(std::move(g));
  }

  if (character_line) {
    CharacterSpec chi;
    for (const auto& [name, v, line, col] : character_entries) {
      if (std::none_of(out.generators.begin(), out.generators.end(), [&](const auto& g) { return g.name == name; }))
        throw ParseError("SyntaxError", line, col, "character refers to unknown generator '" + name + "'");
      if (std::any_of(chi.values.begin(), chi.values.end(), [&](const auto& e) { return e.first == name; }))
        throw ParseError("SyntaxError", line, col, "character value for '" + name + "' given twice");
      chi.values.emplace_back(name, v);
    }
    if (chi.values.size() != out.generators.size())
      throw ParseError("SyntaxError", *character_line, 1, "character must give a value for every generator");
    out.character = std::move(chi);
  }
  return out;
}

DiagramFile read_diagram_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("IOError", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_diagram(ss.str());
}

std::string serialize(const DiagramFile& file, const std::vector<std::string>& header) {
  std::ostringstream out;
  for (const auto& h : header) out << "# " << h << '\n';
  for (const auto& v : file.diagram.vertices()) out << "vertex " << v.id << " self=" << v.self_intersection << '\n';
  for (const auto& e : file.diagram.edges()) out << "edge " << e.i << ' ' << e.j << " w=" << e.weight << '\n';
  for (const auto& g : file.generators) {
    out << "generator " << g.name;
    for (const auto& [src, dst] : g.images) out << ' ' << src << ':' << (dst > 0 ? "+" : "-") << std::abs(dst);
    out << '\n';
  }
  if (file.character) {
    out << "character";
    for (const auto& [name, v] : file.character->values) out << ' ' << name << '=' << (v > 0 ? "+1" : "-1");
    out << '\n';
  }
  return out.str();
}

IntLattice to_lattice(const DynkinDiagram& diagram) {
  const std::size_t n = diagram.size();
  IntMatrix g(n, n);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    g(i, i) = diagram.vertices()[i].self_intersection;
    labels.push_back("Δ" + std::to_string(diagram.vertices()[i].id));
  }
  for (const auto& e : diagram.edges()) {
    const std::size_t a = diagram.index_of(e.i);
    const std::size_t b = diagram.index_of(e.j);
    g(a, b) = g(b, a) = e.weight;
  }
  return IntLattice(std::move(g), std::move(labels));
}

DynkinDiagram grid_diagram_x9(long solid_weight, long dotted_weight) {
  // Grid rows top/middle/bottom: (9 2 6), (5 1 3), (8 4 7).
  DynkinDiagram d;
  for (int id = 1; id <= 9; ++id) d.add_vertex(id, -2);
  const int grid[3][3] = {{9, 2, 6}, {5, 1, 3}, {8, 4, 7}};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      if (c + 1 < 3) d.add_edge(grid[r][c], grid[r][c + 1], solid_weight);
      if (r + 1 < 3) d.add_edge(grid[r][c], grid[r + 1][c], solid_weight);
    }
  // Dotted half-diagonals through the centre.
  for (int corner : {8, 6, 7, 9}) d.add_edge(1, corner, dotted_weight);
  return d;
}

}  // namespace eqsing
