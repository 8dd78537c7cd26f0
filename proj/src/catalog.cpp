#include "eqsing/catalog.hpp"

#include <algorithm>
#include <cctype>

namespace eqsing {

std::string to_string(Setting s) {
  switch (s) {
    case Setting::Z2: return "z2";
    case Setting::Corner: return "corner";
    case Setting::Both: return "both";
  }
  return "?";
}

Setting parse_setting(std::string_view s) {
  if (s == "z2") return Setting::Z2;
  if (s == "corner") return Setting::Corner;
  throw CatalogError("BadParameter", "setting must be z2 or corner, got '" + std::string(s) + "'");
}

const std::vector<FamilyEntry>& families() {
  static const std::vector<FamilyEntry> list = {
      {"A", FamilyKind::Simple, Setting::Both, 1, "x1^2+...+xm^2 + y1^(k+1)", ""},
      {"D", FamilyKind::Simple, Setting::Both, 4, "x1^2+...+xm^2 + y1^2*y2 + y2^(k-1)", ""},
      {"E6", FamilyKind::Simple, Setting::Both, {}, "x1^2+...+xm^2 + y1^3 + y2^4", ""},
      {"E7", FamilyKind::Simple, Setting::Both, {}, "x1^2+...+xm^2 + y1^3 + y1*y2^3", ""},
      {"E8", FamilyKind::Simple, Setting::Both, {}, "x1^2+...+xm^2 + y1^3 + y2^5", ""},
      {"B", FamilyKind::Simple, Setting::Both, 2, "x1^(2k) + x2^2+...+xm^2", ""},
      {"C", FamilyKind::Simple, Setting::Both, 2, "x1^2*y1 + x2^2+...+xm^2 + y1^k", ""},
      {"F4", FamilyKind::Simple, Setting::Both, {}, "x1^4 + x2^2+...+xm^2 + y1^3", ""},
      {"P8", FamilyKind::Confining, Setting::Both, {}, "y1^3 + y2^3 + y3^3 + a*y1*y2*y3", "a^3+27 != 0"},
      {"X9", FamilyKind::Confining, Setting::Both, {}, "y1^4 + y2^4 + a*y1^2*y2^2", "a^2 != 4"},
      {"J10", FamilyKind::Confining, Setting::Both, {}, "y1^3 + y2^6 + a*y1^2*y2^2", "4a^3+27 != 0"},
      {"F10", FamilyKind::Confining, Setting::Both, {}, "x1^6 + y1^3 + a*x1^2*y1^2", "4a^3+27 != 0"},
      {"K42", FamilyKind::Confining, Setting::Both, {}, "x1^4 + y1^4 + a*x1^2*y1^2", "a^2 != 4"},
      {"L6", FamilyKind::Confining, Setting::Both, {}, "x1^2*y1 + a*x1^2*y2 + y1^3 + y2^3", "a^3 != 1"},
      {"M5", FamilyKind::Confining, Setting::Z2, {}, "x1^4 + x2^4 + a*x1^2*x2^2", "a^2 != 4"},
      {"M4", FamilyKind::Confining, Setting::Corner, {}, "x1^4 + x2^4 + a*x1^2*x2^2", "a^2 != 4"},
  };
  return list;
}

const FamilyEntry& family(std::string_view symbol) {
  for (const auto& f : families())
    if (f.symbol == symbol) return f;
  throw CatalogError("UnknownFamily", "unknown family '" + std::string(symbol) + "'");
}

std::vector<FamilyEntry> simple_list() {
  std::vector<FamilyEntry> out;
  for (const auto& f : families())
    if (f.kind == FamilyKind::Simple) out.push_back(f);
  return out;
}

std::vector<FamilyEntry> confining_list(Setting setting) {
  std::vector<FamilyEntry> out;
  for (const auto& f : families()) {
    if (f.kind != FamilyKind::Confining) continue;
    if (f.setting == Setting::Both || setting == Setting::Both || f.setting == setting) out.push_back(f);
  }
  return out;
}

bool modulus_excluded(const FamilyEntry& entry, const Rat& a) {
  const std::string& s = entry.symbol;
  if (s == "X9" || s == "K42" || s == "M5" || s == "M4") return a * a == 4;
  if (s == "P8") return a * a * a + 27 == 0;
  if (s == "J10" || s == "F10") return 4 * a * a * a + 27 == 0;
  if (s == "L6") return a * a * a == 1;
  return false;
}

namespace {

struct Template {
  std::size_t min_m = 0;
  std::size_t min_n = 0;
  std::size_t m = 0;
  std::size_t n = 0;
  int k = 0;
  Rat a;
  GroupKind group = GroupKind::Z2;
};

Template resolve(const FamilyEntry& e, const FamilyParams& p) {
  Template t;
  const std::string& s = e.symbol;
  if (s == "A") t.min_n = 1;
  else if (s == "D" || s == "E6" || s == "E7" || s == "E8" || s == "X9" || s == "J10") t.min_n = 2;
  else if (s == "B") t.min_m = 1;
  else if (s == "C" || s == "F4" || s == "F10" || s == "K42") t.min_m = t.min_n = 1;
  else if (s == "P8") t.min_n = 3;
  else if (s == "L6") t.min_m = 1, t.min_n = 2;
  else if (s == "M5" || s == "M4") t.min_m = 2;

  if (e.k_min) {
    if (!p.k) throw CatalogError("BadParameter", "family " + s + " needs --k");
    if (*p.k < *e.k_min)
      throw CatalogError("BadParameter", "family " + s + " needs k >= " + std::to_string(*e.k_min) + ", got " +
                                             std::to_string(*p.k));
    t.k = *p.k;
  } else if (p.k) {
    throw CatalogError("BadParameter", "family " + s + " takes no k");
  }
  t.m = p.m.value_or(t.min_m);
  t.n = p.n.value_or(t.min_n);
  if (t.m < t.min_m || t.n < t.min_n)
    throw CatalogError("BadParameter", "family " + s + " needs m >= " + std::to_string(t.min_m) + " and n >= " +
                                           std::to_string(t.min_n));
  if (p.modulus) {
    if (!e.has_modulus()) throw CatalogError("BadParameter", "family " + s + " has no modulus");
    if (modulus_excluded(e, *p.modulus))
      throw CatalogError("BadParameter", "modulus a = " + p.modulus->get_str() + " violates " + e.modulus_exclusion);
    t.a = *p.modulus;
  }
  const Setting setting = p.setting.value_or(e.setting == Setting::Corner ? Setting::Corner : Setting::Z2);
  if (setting == Setting::Both) throw CatalogError("BadParameter", "setting must be z2 or corner");
  if (e.setting != Setting::Both && e.setting != setting)
    throw CatalogError("BadParameter", "family " + s + " belongs to the " + to_string(e.setting) + " setting");
  t.group = setting == Setting::Corner ? GroupKind::Corner : GroupKind::Z2;
  return t;
}

class Builder {
 public:
  explicit Builder(const Template& t) : f_(t.m, t.n, t.group), m_(t.m) {}
  // Variables written as 'x' or 'y' plus 1-based index.
  Builder& add(const Rat& c, std::initializer_list<std::tuple<char, std::size_t, int>> factors) {
    if (c == 0) return *this;
    Exponent e(f_.variable_count(), 0);
    for (const auto& [kind, idx, power] : factors) e[(kind == 'x' ? 0 : m_) + idx - 1] += power;
    f_.add_term(c, std::move(e));
    return *this;
  }
  PolyGerm take() { return std::move(f_); }

 private:
  PolyGerm f_;
  std::size_t m_;
};

}  // namespace

PolyGerm normal_form(std::string_view symbol, const FamilyParams& params) {
  const FamilyEntry& e = family(symbol);
  const Template t = resolve(e, params);
  Builder b(t);
  const std::string& s = e.symbol;
  const int k = t.k;
  const Rat& a = t.a;
  if (s == "A") b.add(1, {{'y', 1, k + 1}});
  else if (s == "D") b.add(1, {{'y', 1, 2}, {'y', 2, 1}}).add(1, {{'y', 2, k - 1}});
  else if (s == "E6") b.add(1, {{'y', 1, 3}}).add(1, {{'y', 2, 4}});
  else if (s == "E7") b.add(1, {{'y', 1, 3}}).add(1, {{'y', 1, 1}, {'y', 2, 3}});
  else if (s == "E8") b.add(1, {{'y', 1, 3}}).add(1, {{'y', 2, 5}});
  else if (s == "B") b.add(1, {{'x', 1, 2 * k}});
  else if (s == "C") b.add(1, {{'x', 1, 2}, {'y', 1, 1}}).add(1, {{'y', 1, k}});
  else if (s == "F4") b.add(1, {{'x', 1, 4}}).add(1, {{'y', 1, 3}});
  else if (s == "P8")
    b.add(1, {{'y', 1, 3}}).add(1, {{'y', 2, 3}}).add(1, {{'y', 3, 3}}).add(a, {{'y', 1, 1}, {'y', 2, 1}, {'y', 3, 1}});
  else if (s == "X9") b.add(1, {{'y', 1, 4}}).add(1, {{'y', 2, 4}}).add(a, {{'y', 1, 2}, {'y', 2, 2}});
  else if (s == "J10") b.add(1, {{'y', 1, 3}}).add(1, {{'y', 2, 6}}).add(a, {{'y', 1, 2}, {'y', 2, 2}});
  else if (s == "F10") b.add(1, {{'x', 1, 6}}).add(1, {{'y', 1, 3}}).add(a, {{'x', 1, 2}, {'y', 1, 2}});
  else if (s == "K42") b.add(1, {{'x', 1, 4}}).add(1, {{'y', 1, 4}}).add(a, {{'x', 1, 2}, {'y', 1, 2}});
  else if (s == "L6")
    b.add(1, {{'x', 1, 2}, {'y', 1, 1}}).add(a, {{'x', 1, 2}, {'y', 2, 1}}).add(1, {{'y', 1, 3}}).add(1, {{'y', 2, 3}});
  else if (s == "M5" || s == "M4") b.add(1, {{'x', 1, 4}}).add(1, {{'x', 2, 4}}).add(a, {{'x', 1, 2}, {'x', 2, 2}});
  for (std::size_t i = t.min_m + 1; i <= t.m; ++i) b.add(1, {{'x', i, 2}});
  for (std::size_t j = t.min_n + 1; j <= t.n; ++j) b.add(1, {{'y', j, 2}});
  return b.take();
}

std::vector<Rat> normal_form_weights(std::string_view symbol, const FamilyParams& params) {
  const FamilyEntry& e = family(symbol);
  const Template t = resolve(e, params);
  const std::string& s = e.symbol;
  const Rat half(1, 2);
  std::vector<Rat> x(t.m, half), y(t.n, half);
  const int k = t.k;
  if (s == "A") y[0] = Rat(1, k + 1);
  else if (s == "D") y[1] = Rat(1, k - 1), y[0] = Rat(k - 2, 2 * (k - 1));
  else if (s == "E6") y[0] = Rat(1, 3), y[1] = Rat(1, 4);
  else if (s == "E7") y[0] = Rat(1, 3), y[1] = Rat(2, 9);
  else if (s == "E8") y[0] = Rat(1, 3), y[1] = Rat(1, 5);
  else if (s == "B") x[0] = Rat(1, 2 * k);
  else if (s == "C") y[0] = Rat(1, k), x[0] = Rat(k - 1, 2 * k);
  else if (s == "F4") x[0] = Rat(1, 4), y[0] = Rat(1, 3);
  else if (s == "P8") y[0] = y[1] = y[2] = Rat(1, 3);
  else if (s == "X9") y[0] = y[1] = Rat(1, 4);
  else if (s == "J10") y[0] = Rat(1, 3), y[1] = Rat(1, 6);
  else if (s == "F10") x[0] = Rat(1, 6), y[0] = Rat(1, 3);
  else if (s == "K42") x[0] = y[0] = Rat(1, 4);
  else if (s == "L6") x[0] = y[0] = y[1] = Rat(1, 3);
  else if (s == "M5" || s == "M4") x[0] = x[1] = Rat(1, 4);
  for (auto& w : x) w.canonicalize();
  for (auto& w : y) w.canonicalize();
  x.insert(x.end(), y.begin(), y.end());
  return x;
}

// ---------------------------------------------------------------------------
// Fixtures

namespace {

DynkinDiagram chain(int k) {
  DynkinDiagram d;
  for (int i = 1; i <= k; ++i) d.add_vertex(i, -2);
  for (int i = 1; i < k; ++i) d.add_edge(i, i + 1, 1);
  return d;
}

DynkinDiagram d_diagram(int k) {
  DynkinDiagram d;
  for (int i = 1; i <= k; ++i) d.add_vertex(i, -2);
  for (int i = 1; i + 1 <= k - 2; ++i) d.add_edge(i, i + 1, 1);
  d.add_edge(k - 2, k - 1, 1);
  d.add_edge(k - 2, k, 1);
  return d;
}

DynkinDiagram e_diagram(int k) {
  DynkinDiagram d;
  for (int i = 1; i <= k; ++i) d.add_vertex(i, -2);
  for (int i = 1; i + 1 <= k - 1; ++i) d.add_edge(i, i + 1, 1);
  d.add_edge(3, k, 1);
  return d;
}

// Generator sending vertex v to sign * perm(v); ids not in `swaps` are fixed.
GeneratorSpec signed_swap(const std::string& name, int n, const std::vector<std::pair<int, int>>& swaps, int sign) {
  std::vector<int> target(n + 1);
  for (int v = 1; v <= n; ++v) target[v] = v;
  for (const auto& [a, b] : swaps) target[a] = b, target[b] = a;
  GeneratorSpec g{name, {}};
  for (int v = 1; v <= n; ++v) g.images.emplace_back(v, sign * target[v]);
  return g;
}

void anti_invariant(DiagramFile& f) {
  CharacterSpec c;
  for (const auto& g : f.generators) c.values.emplace_back(g.name, -1);
  f.character = c;
}

void require_range(std::string_view symbol, std::optional<int> k, int lo, int hi) {
  if (!k) throw CatalogError("BadParameter", "fixture " + std::string(symbol) + " needs k");
  if (*k < lo || *k > hi)
    throw CatalogError("NoFixture", "no bundled fixture " + std::string(symbol) + std::to_string(*k) +
                                        " (bundled: k = " + std::to_string(lo) + ".." + std::to_string(hi) + ")");
}

}  // namespace

std::pair<std::string, std::optional<int>> split_fixture_name(std::string_view name) {
  if (name == "E6" || name == "E7" || name == "E8" || name == "F4" || name == "M5" || name == "M4" || name == "X9")
    return {std::string(name), std::nullopt};
  if (name.size() >= 2 && (name[0] == 'A' || name[0] == 'B' || name[0] == 'C' || name[0] == 'D') &&
      std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    return {std::string(name.substr(0, 1)), std::stoi(std::string(name.substr(1)))};
  return {std::string(name), std::nullopt};
}

Fixture fixture(std::string_view symbol, std::optional<int> k) {
  Fixture fx;
  DiagramFile& f = fx.file;
  if (symbol == "A") {
    require_range(symbol, k, 1, 8);
    f.diagram = chain(*k);
  } else if (symbol == "D") {
    require_range(symbol, k, 4, 6);
    f.diagram = d_diagram(*k);
  } else if (symbol == "E6" || symbol == "E7" || symbol == "E8") {
    const int r = symbol[1] - '0';
    f.diagram = e_diagram(r);
    fx.group_enumerated = r == 6;
  } else if (symbol == "B") {
    // A_{2k-1} chain folded by minus the reversal.
    require_range(symbol, k, 2, 4);
    const int n = 2 * *k - 1;
    f.diagram = chain(n);
    std::vector<std::pair<int, int>> swaps;
    for (int i = 1; i < *k; ++i) swaps.emplace_back(i, n + 1 - i);
    f.generators.push_back(signed_swap("s", n, swaps, -1));
    anti_invariant(f);
  } else if (symbol == "C") {
    // D_{k+1} folded by minus the fork swap.
    require_range(symbol, k, 2, 4);
    const int n = *k + 1;
    f.diagram = d_diagram(n);
    f.generators.push_back(signed_swap("s", n, {{n - 1, n}}, -1));
    anti_invariant(f);
  } else if (symbol == "F4") {
    // E6 folded by minus the arm swap.
    f.diagram = e_diagram(6);
    f.generators.push_back(signed_swap("s", 6, {{1, 5}, {2, 4}}, -1));
    anti_invariant(f);
  } else if (symbol == "M5") {
    f.diagram = grid_diagram_x9();
    f.generators.push_back(signed_swap("s", 9, {{2, 4}, {3, 5}, {6, 8}, {7, 9}}, 1));
    f.character = CharacterSpec{{{"s", 1}}};
  } else if (symbol == "M4") {
    f.diagram = grid_diagram_x9();
    f.generators.push_back(signed_swap("s1", 9, {{9, 6}, {5, 3}, {8, 7}}, -1));
    f.generators.push_back(signed_swap("s2", 9, {{9, 8}, {2, 4}, {6, 7}}, -1));
    anti_invariant(f);
  } else if (symbol == "X9") {
    f.diagram = grid_diagram_x9();
  } else {
    family(symbol);
    throw CatalogError("NoFixture", "no bundled diagram data for family " + std::string(symbol));
  }
  if (k && symbol != "A" && symbol != "B" && symbol != "C" && symbol != "D")
    throw CatalogError("BadParameter", "fixture " + std::string(symbol) + " takes no k");
  fx.name = std::string(symbol) + (k ? std::to_string(*k) : "");
  return fx;
}

std::vector<Fixture> all_fixtures() {
  std::vector<Fixture> out;
  for (int k = 1; k <= 8; ++k) out.push_back(fixture("A", k));
  for (int k = 4; k <= 6; ++k) out.push_back(fixture("D", k));
  for (const char* e : {"E6", "E7", "E8"}) out.push_back(fixture(e));
  for (int k = 2; k <= 4; ++k) out.push_back(fixture("B", k));
  for (int k = 2; k <= 4; ++k) out.push_back(fixture("C", k));
  for (const char* s : {"F4", "M5", "M4", "X9"}) out.push_back(fixture(s));
  return out;
}

// ---------------------------------------------------------------------------
// Verdict

Evidence analyze_action(const GroupAction& action, const Character& chi, const GroupOptions& options) {
  Evidence ev;
  ev.isotypic = isotypic_sublattice(action, chi);
  const IntLattice& form = ev.isotypic.restricted();
  ev.form_inertia = inertia(form);
  ev.kernel = kernel_basis(form);
  for (const auto& v : ev.kernel) ev.kernel_ambient.push_back(ev.isotypic.embed(v));

  std::vector<MonodromyElement> elements;
  for (const auto& orbit : orbit_decomposition(action)) {
    try {
      ev.generators.push_back(orbit_generator(action, chi, ev.isotypic, orbit));
    } catch (const MonodromyError& e) {
      if (e.code() != "ProjectsToZero") throw;
      ev.skipped_orbits.push_back(orbit);
      continue;
    }
    ev.generators.back().element.word = {static_cast<int>(ev.generators.size())};
    elements.push_back(ev.generators.back().element);
  }
  ev.verdict = generate_group(form, elements, options);
  if (ev.verdict.infinite()) ev.certificate_verified = verify_certificate(form, ev.verdict.certificate());
  return ev;
}

Evidence simplicity_verdict(std::string_view symbol, std::optional<int> k, const GroupOptions& options) {
  const Fixture fx = fixture(symbol, k);
  if (!fx.group_enumerated)
    throw CatalogError("NoFixture", fx.name + " ships as a diagram only; its group is not enumerated");
  Evidence ev = analyze_action(action_from_file(fx.file), character_from_file(fx.file), options);
  if (!ev.criteria_agree())
    throw CatalogError("InternalError", fx.name + ": form is " + ev.form_inertia.classification() +
                                            " but the monodromy verdict disagrees");
  if (ev.verdict.infinite() && !ev.certificate_verified)
    throw CatalogError("InternalError", fx.name + ": infinite-order certificate failed re-verification");
  return ev;
}

}  // namespace eqsing
