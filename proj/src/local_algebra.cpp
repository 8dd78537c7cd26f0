#include "eqsing/local_algebra.hpp"

#include <algorithm>
#include <charconv>
#include <exception>
#include <fstream>
#include <numeric>
#include <sstream>

#include <cctype>

#include "eqsing/linalg.hpp"

namespace eqsing {

namespace {

int degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

}  // namespace

PolyGerm::PolyGerm(std::size_t m, std::size_t n, GroupKind group) : m_(m), n_(n), group_(group) {}

std::size_t PolyGerm::generator_count() const {
  if (group_ == GroupKind::Corner) return m_;
  return m_ > 0 ? 1 : 0;
}

std::string PolyGerm::variable_name(std::size_t v) const {
  return v < m_ ? "x" + std::to_string(v + 1) : "y" + std::to_string(v - m_ + 1);
}

void PolyGerm::add_term(const Rat& coefficient, Exponent exponent) {
  if (exponent.size() != variable_count()) throw DimensionError("exponent length differs from variable count");
  if (std::any_of(exponent.begin(), exponent.end(), [](int k) { return k < 0; }))
    throw DimensionError("negative exponent");
  Rat& c = terms_[exponent];
  c += coefficient;
  if (c == 0) terms_.erase(exponent);
}

std::size_t PolyGerm::parity(const Exponent& e) const {
  if (group_ == GroupKind::Corner) {
    std::size_t mask = 0;
    for (std::size_t i = 0; i < m_; ++i)
      if (e[i] % 2) mask |= std::size_t{1} << i;
    return mask;
  }
  int total = 0;
  for (std::size_t i = 0; i < m_; ++i) total += e[i];
  return m_ > 0 && total % 2 ? 1 : 0;
}

void PolyGerm::validate_invariant() const {
  for (const auto& [e, c] : terms_) {
    if (degree(e) == 0) throw LocalAlgebraError("ConstantTerm", "germ has a nonzero constant term");
    if (parity(e) != 0) {
      PolyGerm single(m_, n_, group_);
      single.add_term(1, e);
      throw LocalAlgebraError("NotInvariant", "monomial " + single.to_string() + " is not invariant under the action");
    }
  }
}

std::map<Exponent, Rat> PolyGerm::derivative(std::size_t v) const {
  std::map<Exponent, Rat> d;
  for (const auto& [e, c] : terms_) {
    if (e[v] == 0) continue;
    Exponent de = e;
    de[v] -= 1;
    d[de] += c * e[v];
  }
  return d;
}

std::string PolyGerm::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Exponent, Rat>> ordered(terms_.rbegin(), terms_.rend());
  std::string s;
  for (std::size_t t = 0; t < ordered.size(); ++t) {
    const auto& [e, c] = ordered[t];
    Rat mag = abs(c);
    if (t == 0) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    std::string mono;
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += variable_name(v);
      if (e[v] > 1) mono += "^" + std::to_string(e[v]);
    }
    if (mono.empty()) {
      s += mag.get_str();
    } else {
      if (mag != 1) s += mag.get_str() + "*";
      s += mono;
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// File format

Rat parse_rational(std::string_view s) {
  std::string body(s);
  if (!body.empty() && body.front() == '+') body.erase(0, 1);
  if (body.empty()) throw Error("SyntaxError", "empty rational");
  for (char ch : body)
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '/' || ch == '-'))
      throw Error("SyntaxError", "invalid rational '" + std::string(s) + "'");
  Rat r;
  if (r.set_str(body, 10) != 0) throw Error("SyntaxError", "invalid rational '" + std::string(s) + "'");
  if (r.get_den() == 0) throw Error("SyntaxError", "zero denominator in '" + std::string(s) + "'");
  r.canonicalize();
  return r;
}

namespace {

std::vector<std::pair<std::string_view, std::size_t>> split_tokens(std::string_view line) {
  std::vector<std::pair<std::string_view, std::size_t>> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size() || line[i] == '#') break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#') ++i;
    out.emplace_back(line.substr(start, i - start), start + 1);
  }
  return out;
}

std::size_t parse_count(std::string_view s, std::string_view key, std::size_t line, std::size_t col) {
  if (s.substr(0, key.size()) != key) throw ParseError("SyntaxError", line, col, "expected '" + std::string(key) + "<n>'");
  std::size_t v = 0;
  const auto body = s.substr(key.size());
  auto [p, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
  if (ec != std::errc() || p != body.data() + body.size() || body.empty())
    throw ParseError("SyntaxError", line, col + key.size(), "expected a non-negative integer");
  return v;
}

}  // namespace

PolyGerm parse_polynomial(std::string_view text) {
  std::optional<PolyGerm> germ;
  bool saw_group = false;
  bool saw_term = false;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    const auto tokens = split_tokens(raw);
    if (tokens.empty()) continue;
    const auto [kw, kwcol] = tokens[0];

    if (kw == "vars") {
      if (germ) throw ParseError("SyntaxError", lineno, kwcol, "duplicate 'vars' header");
      if (tokens.size() != 3) throw ParseError("SyntaxError", lineno, kwcol, "expected 'vars x:<m> y:<n>'");
      const std::size_t m = parse_count(tokens[1].first, "x:", lineno, tokens[1].second);
      const std::size_t n = parse_count(tokens[2].first, "y:", lineno, tokens[2].second);
      germ.emplace(m, n);
      continue;
    }
    if (!germ) throw ParseError("SyntaxError", lineno, kwcol, "'vars x:<m> y:<n>' header must come first");
    if (kw == "group") {
      if (saw_group || saw_term)
        throw ParseError("SyntaxError", lineno, kwcol, "'group' must appear once, before any term");
      if (tokens.size() != 2) throw ParseError("SyntaxError", lineno, kwcol, "expected 'group z2|corner'");
      saw_group = true;
      GroupKind kind;
      if (tokens[1].first == "z2") {
        kind = GroupKind::Z2;
      } else if (tokens[1].first == "corner") {
        kind = GroupKind::Corner;
      } else {
        throw ParseError("SyntaxError", lineno, tokens[1].second, "unknown group '" + std::string(tokens[1].first) + "'");
      }
      germ.emplace(germ->x_count(), germ->y_count(), kind);
      continue;
    }
    if (tokens.size() != 2) throw ParseError("SyntaxError", lineno, kwcol, "expected '<coefficient> <monomial>'");
    Rat coef;
    try {
      coef = parse_rational(tokens[0].first);
    } catch (const Error& e) {
      throw ParseError("SyntaxError", lineno, kwcol, e.what());
    }
    Exponent e(germ->variable_count(), 0);
    const auto [mono, mcol] = tokens[1];
    if (mono != "1") {
      std::size_t start = 0;
      while (start <= mono.size()) {
        std::size_t star = mono.find('*', start);
        if (star == std::string_view::npos) star = mono.size();
        const auto factor = mono.substr(start, star - start);
        const std::size_t fcol = mcol + start;
        if (factor.size() < 2 || (factor[0] != 'x' && factor[0] != 'y'))
          throw ParseError("SyntaxError", lineno, fcol, "expected a factor like x1 or y2^3");
        const auto caret = factor.find('^');
        const auto idx_text = factor.substr(1, caret == std::string_view::npos ? std::string_view::npos : caret - 1);
        std::size_t idx = 0;
        auto [p, ec] = std::from_chars(idx_text.data(), idx_text.data() + idx_text.size(), idx);
        if (ec != std::errc() || p != idx_text.data() + idx_text.size() || idx == 0)
          throw ParseError("SyntaxError", lineno, fcol + 1, "bad variable index in '" + std::string(factor) + "'");
        int power = 1;
        if (caret != std::string_view::npos) {
          const auto pw = factor.substr(caret + 1);
          auto [q, ec2] = std::from_chars(pw.data(), pw.data() + pw.size(), power);
          if (ec2 != std::errc() || q != pw.data() + pw.size() || power < 1)
            throw ParseError("SyntaxError", lineno, fcol + caret + 1, "bad exponent in '" + std::string(factor) + "'");
        }
        const bool is_x = factor[0] == 'x';
        const std::size_t limit = is_x ? germ->x_count() : germ->y_count();
        if (idx > limit)
          throw ParseError("SyntaxError", lineno, fcol,
                           "variable " + std::string(factor.substr(0, caret)) + " not declared in 'vars'");
        e[(is_x ? 0 : germ->x_count()) + idx - 1] += power;
        start = star + 1;
      }
    }
    germ->add_term(coef, std::move(e));
    saw_term = true;
  }
  if (!germ) throw ParseError("SyntaxError", lineno, 1, "missing 'vars x:<m> y:<n>' header");
  return *germ;
}

PolyGerm read_polynomial_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("IOError", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_polynomial(ss.str());
}

std::string serialize_polynomial(const PolyGerm& f, const std::vector<std::string>& header) {
  std::ostringstream out;
  for (const auto& h : header) out << "# " << h << '\n';
  out << "vars x:" << f.x_count() << " y:" << f.y_count() << '\n';
  out << "group " << (f.group() == GroupKind::Corner ? "corner" : "z2") << '\n';
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    out << c.get_str() << ' ';
    std::string mono;
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += f.variable_name(v);
      if (e[v] > 1) mono += "^" + std::to_string(e[v]);
    }
    out << (mono.empty() ? "1" : mono) << '\n';
  }
  return out.str();
}

PolyGerm stabilize_y(const PolyGerm& f) {
  PolyGerm g(f.x_count(), f.y_count() + 1, f.group());
  for (const auto& [e, c] : f.terms()) {
    Exponent ne = e;
    ne.push_back(0);
    g.add_term(c, std::move(ne));
  }
  Exponent sq(g.variable_count(), 0);
  sq.back() = 2;
  g.add_term(1, std::move(sq));
  return g;
}

PolyGerm stabilize_x(const PolyGerm& f) {
  const std::size_t m = f.x_count();
  PolyGerm g(m + 1, f.y_count(), f.group());
  for (const auto& [e, c] : f.terms()) {
    Exponent ne = e;
    ne.insert(ne.begin() + static_cast<std::ptrdiff_t>(m), 0);
    g.add_term(c, std::move(ne));
  }
  Exponent sq(g.variable_count(), 0);
  sq[m] = 2;
  g.add_term(1, std::move(sq));
  return g;
}

// ---------------------------------------------------------------------------
// Milnor number

namespace {

// Monomials of degree ≤ D, ordered by degree and then lexicographically
// descending; lower degree sorts first and therefore leads in elimination.
std::vector<Exponent> monomials_up_to(std::size_t nvars, int max_degree) {
  std::vector<Exponent> out;
  for (int d = 0; d <= max_degree; ++d) {
    Exponent e(nvars, 0);
    std::vector<Exponent> level;
    auto rec = [&](auto&& self, std::size_t v, int remaining) -> void {
      if (v + 1 == nvars) {
        e[v] = remaining;
        level.push_back(e);
        return;
      }
      for (int k = remaining; k >= 0; --k) {
        e[v] = k;
        self(self, v + 1, remaining - k);
      }
    };
    if (nvars == 0) {
      if (d == 0) level.push_back(e);
    } else {
      rec(rec, 0, d);
    }
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

struct Derivative {
  std::vector<std::pair<Exponent, Rat>> terms;
  int order = 0;
  std::size_t parity = 0;
};

std::vector<Derivative> jacobian(const PolyGerm& f) {
  std::vector<Derivative> out;
  for (std::size_t v = 0; v < f.variable_count(); ++v) {
    const auto d = f.derivative(v);
    if (d.empty()) continue;
    Derivative dv;
    dv.terms.assign(d.begin(), d.end());
    dv.order = degree(dv.terms.front().first);
    dv.parity = f.parity(dv.terms.front().first);
    for (const auto& [e, c] : dv.terms) {
      dv.order = std::min(dv.order, degree(e));
      if (f.parity(e) != dv.parity) throw Error("InternalError", "derivative of an invariant germ is not homogeneous");
    }
    out.push_back(std::move(dv));
  }
  return out;
}

// Truncated Jacobian system at one degree, split by character class.
struct TruncatedSystem {
  int top_degree = 0;
  std::vector<Exponent> monomials;
  std::map<Exponent, std::size_t> column;  // global index
  std::vector<std::size_t> cls;            // class of each monomial
  std::vector<std::size_t> local;          // index within its class
  std::vector<std::size_t> class_size;
  std::vector<std::size_t> class_top;      // degree-D monomials per class
};

TruncatedSystem build_system(const PolyGerm& f, int D) {
  TruncatedSystem s;
  s.top_degree = D;
  s.monomials = monomials_up_to(f.variable_count(), D);
  const std::size_t classes = std::size_t{1} << f.generator_count();
  s.class_size.assign(classes, 0);
  s.class_top.assign(classes, 0);
  for (std::size_t i = 0; i < s.monomials.size(); ++i) {
    const std::size_t c = f.parity(s.monomials[i]);
    s.column.emplace(s.monomials[i], i);
    s.cls.push_back(c);
    s.local.push_back(s.class_size[c]++);
    if (degree(s.monomials[i]) == D) s.class_top[c]++;
  }
  return s;
}

using SparseRow = std::vector<std::pair<std::uint32_t, Rat>>;

// Rows m·∂f (truncated at degree D) that land in character class c.
template <class Emit>
void for_each_row(const PolyGerm& f, const std::vector<Derivative>& jac, const TruncatedSystem& s, std::size_t c,
                  Emit&& emit) {
  for (const auto& dv : jac) {
    for (const auto& m : s.monomials) {
      if (degree(m) + dv.order > s.top_degree) break;
      if ((f.parity(m) ^ dv.parity) != c) continue;
      SparseRow row;
      for (const auto& [e, coef] : dv.terms) {
        Exponent prod = m;
        for (std::size_t v = 0; v < prod.size(); ++v) prod[v] += e[v];
        if (degree(prod) > s.top_degree) continue;
        row.emplace_back(static_cast<std::uint32_t>(s.local[s.column.at(prod)]), coef);
      }
      std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      emit(std::move(row));
    }
  }
}

struct ClassResult {
  std::size_t rank = 0;
  std::size_t top_pivots = 0;
};

// row -= scale * pivot, both sorted by column.
SparseRow subtract(const SparseRow& row, const Rat& scale, const SparseRow& pivot) {
  SparseRow out;
  out.reserve(row.size() + pivot.size());
  std::size_t i = 0, j = 0;
  while (i < row.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
      out.push_back(row[i++]);
    } else if (i == row.size() || pivot[j].first < row[i].first) {
      out.emplace_back(pivot[j].first, -scale * pivot[j].second);
      ++j;
    } else {
      Rat v = row[i].second - scale * pivot[j].second;
      if (v != 0) out.emplace_back(row[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

ClassResult reduce_class(const PolyGerm& f, const std::vector<Derivative>& jac, const TruncatedSystem& s,
                         std::size_t c) {
  std::vector<std::size_t> class_degree(s.class_size[c]);
  for (std::size_t i = 0; i < s.monomials.size(); ++i)
    if (s.cls[i] == c) class_degree[s.local[i]] = static_cast<std::size_t>(degree(s.monomials[i]));
  std::vector<SparseRow> pivots(s.class_size[c]);
  std::vector<bool> has(s.class_size[c], false);
  ClassResult r;
  for_each_row(f, jac, s, c, [&](SparseRow row) {
    while (!row.empty()) {
      const std::uint32_t lead = row.front().first;
      if (!has[lead]) {
        const Rat inv = 1 / row.front().second;
        for (auto& [col, v] : row) v *= inv;
        pivots[lead] = std::move(row);
        has[lead] = true;
        ++r.rank;
        if (class_degree[lead] == static_cast<std::size_t>(s.top_degree)) ++r.top_pivots;
        return;
      }
      row = subtract(row, row.front().second, pivots[lead]);
    }
  });
  return r;
}

}  // namespace

LocalAlgebraReport milnor_number(const PolyGerm& f, const MilnorOptions& options) {
  f.validate_invariant();
  const auto jac = jacobian(f);
  const std::size_t classes = std::size_t{1} << f.generator_count();
  for (int D = 1; D <= static_cast<int>(options.max_degree); ++D) {
    const TruncatedSystem s = build_system(f, D);
    std::vector<ClassResult> results(classes);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) if (options.parallel)
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(classes); ++c) {
      try {
        results[static_cast<std::size_t>(c)] = reduce_class(f, jac, s, static_cast<std::size_t>(c));
      } catch (...) {
#pragma omp critical(eqsing_milnor_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);

    bool certified = true;
    for (std::size_t c = 0; c < classes; ++c) certified = certified && results[c].top_pivots == s.class_top[c];
    if (!certified) continue;
    LocalAlgebraReport rep;
    rep.truncation_degree = static_cast<std::size_t>(D);
    for (std::size_t c = 0; c < classes; ++c) {
      rep.isotypic_dims.push_back(s.class_size[c] - results[c].rank);
      rep.mu += rep.isotypic_dims.back();
    }
    return rep;
  }
  throw LocalAlgebraError("NotCertified", "local algebra not certified finite up to degree " +
                                              std::to_string(options.max_degree) +
                                              " (non-isolated critical point or degree too small)");
}

LocalAlgebraReport milnor_number_reference(const PolyGerm& f, std::size_t max_degree) {
  f.validate_invariant();
  const auto jac = jacobian(f);
  const std::size_t classes = std::size_t{1} << f.generator_count();
  for (int D = 1; D <= static_cast<int>(max_degree); ++D) {
    const TruncatedSystem s = build_system(f, D);
    LocalAlgebraReport rep;
    rep.truncation_degree = static_cast<std::size_t>(D);
    bool certified = true;
    for (std::size_t c = 0; c < classes && certified; ++c) {
      std::vector<SparseRow> rows;
      for_each_row(f, jac, s, c, [&](SparseRow row) { rows.push_back(std::move(row)); });
      // Dense: rank of the rows, and rank after adjoining every degree-D unit vector.
      const std::size_t w = s.class_size[c];
      RatMatrix dense(rows.size() + s.class_top[c], w);
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& [col, v] : rows[i]) dense(i, col) = v;
      std::size_t extra = rows.size();
      for (std::size_t i = 0; i < s.monomials.size(); ++i)
        if (s.cls[i] == c && degree(s.monomials[i]) == D) dense(extra++, s.local[i]) = 1;
      RatMatrix only_rows(rows.size(), w);
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < w; ++j) only_rows(i, j) = dense(i, j);
      const std::size_t r = rank(only_rows);
      certified = r == rank(dense);
      rep.isotypic_dims.push_back(w - r);
      rep.mu += w - r;
    }
    if (certified) return rep;
  }
  throw LocalAlgebraError("NotCertified",
                          "local algebra not certified finite up to degree " + std::to_string(max_degree));
}

std::vector<std::size_t> det_twisted(const PolyGerm& f, const std::vector<std::size_t>& dims) {
  std::size_t det = 0;
  if (f.group() == GroupKind::Corner) {
    det = (std::size_t{1} << f.x_count()) - 1;
  } else if (f.x_count() % 2 == 1) {
    det = 1;
  }
  std::vector<std::size_t> out(dims.size());
  for (std::size_t c = 0; c < dims.size(); ++c) out[c ^ det] = dims[c];
  return out;
}

Int quasihomogeneous_mu(std::span<const Rat> weights) {
  Rat prod = 1;
  for (const auto& w : weights) {
    if (w <= 0 || w > Rat(1, 2))
      throw LocalAlgebraError("BadWeights", "weight " + w.get_str() + " outside (0, 1/2]");
    prod *= 1 / w - 1;
  }
  if (prod.get_den() != 1)
    throw LocalAlgebraError("NotInteger", "weights give non-integral Milnor number " + prod.get_str());
  return prod.get_num();
}

bool is_quasihomogeneous(const PolyGerm& f, std::span<const Rat> weights) {
  if (weights.size() != f.variable_count()) return false;
  for (const auto& [e, c] : f.terms()) {
    Rat d = 0;
    for (std::size_t v = 0; v < e.size(); ++v) d += weights[v] * e[v];
    if (d != 1) return false;
  }
  return true;
}

Coranks coranks(const PolyGerm& f) {
  f.validate_invariant();
  const std::size_t m = f.x_count();
  const std::size_t N = f.variable_count();
  RatMatrix hess(N, N);
  for (const auto& [e, c] : f.terms()) {
    if (degree(e) != 2) continue;
    std::vector<std::size_t> vars;
    for (std::size_t v = 0; v < N; ++v)
      for (int k = 0; k < e[v]; ++k) vars.push_back(v);
    if (vars[0] == vars[1]) {
      hess(vars[0], vars[0]) += 2 * c;
    } else {
      hess(vars[0], vars[1]) += c;
      hess(vars[1], vars[0]) += c;
    }
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = m; j < N; ++j)
      if (hess(i, j) != 0)
        throw LocalAlgebraError("NotInvariant", "mixed second derivative " + f.variable_name(i) + f.variable_name(j) +
                                                    " is nonzero");
  RatMatrix hx(m, m), hy(N - m, N - m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) hx(i, j) = hess(i, j);
  for (std::size_t i = m; i < N; ++i)
    for (std::size_t j = m; j < N; ++j) hy(i - m, j - m) = hess(i, j);
  return Coranks{m - rank(hx), (N - m) - rank(hy)};
}

}  // namespace eqsing
