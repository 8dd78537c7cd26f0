#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "eqsing/catalog.hpp"

namespace eqsing::cli {

namespace {

enum class Format { Text, Machine };

std::string csv(std::span<const Int> v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += v[i].get_str();
  }
  return s;
}

std::string csv_indices(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i] + 1);
  return s;
}

// 2δ1 + δ2 - δ4
std::string combo(std::span<const Int> v, const std::string& letter) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    const Int mag = abs(v[i]);
    if (s.empty()) {
      if (v[i] < 0) s += "-";
    } else {
      s += v[i] < 0 ? " - " : " + ";
    }
    if (mag != 1) s += mag.get_str();
    s += letter + std::to_string(i + 1);
  }
  return s.empty() ? "0" : s;
}

std::string character_text(const GroupAction& action, const Character& chi) {
  if (action.names().empty()) return "trivial";
  std::string s;
  for (std::size_t i = 0; i < chi.values.size(); ++i)
    s += (i ? " " : "") + action.names()[i] + (chi.values[i] > 0 ? "=+1" : "=-1");
  return s;
}

std::string verdict_name(const FinitenessVerdict& v) {
  if (v.finite()) return "finite";
  if (v.infinite()) return "infinite";
  return "unknown";
}

std::string kind_name(CertificateKind k) { return k == CertificateKind::Unipotent ? "unipotent" : "non-torsion"; }

std::string self_intersection_text(const DiagramFile& file) {
  const auto s = file.diagram.uniform_self_intersection();
  return s ? std::to_string(*s) : "mixed";
}

struct Analysis {
  std::string input;
  DiagramFile file;
  GroupAction action;
  Character chi;
  Evidence ev;
  double millis = 0;
};

Analysis run_analysis(std::string input, DiagramFile file, const GroupOptions& options) {
  Analysis a{std::move(input), std::move(file), {}, {}, {}, 0};
  a.action = action_from_file(a.file);
  a.chi = character_from_file(a.file);
  const auto t0 = std::chrono::steady_clock::now();
  a.ev = analyze_action(a.action, a.chi, options);
  a.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return a;
}

void write_machine(std::ostream& o, const Analysis& a) {
  const Evidence& ev = a.ev;
  const IntMatrix& gram = ev.isotypic.restricted_gram();
  o << "input=" << a.input << '\n';
  o << "ambient_rank=" << a.action.lattice().rank() << '\n';
  o << "self_intersection=" << self_intersection_text(a.file) << '\n';
  o << "character=" << character_text(a.action, a.chi) << '\n';
  o << "isotypic_rank=" << ev.isotypic.rank() << '\n';
  for (std::size_t i = 0; i < ev.isotypic.rank(); ++i) o << "basis." << i + 1 << '=' << csv(ev.isotypic.basis()[i]) << '\n';
  for (std::size_t i = 0; i < gram.rows(); ++i) o << "gram." << i + 1 << '=' << csv(gram.row(i)) << '\n';
  o << "inertia=" << ev.form_inertia.n_plus << ',' << ev.form_inertia.n_zero << ',' << ev.form_inertia.n_minus << '\n';
  o << "form=" << ev.form_inertia.classification() << '\n';
  o << "kernel_rank=" << ev.kernel.size() << '\n';
  for (std::size_t i = 0; i < ev.kernel.size(); ++i) {
    o << "kernel." << i + 1 << ".delta=" << csv(ev.kernel[i]) << '\n';
    o << "kernel." << i + 1 << ".ambient=" << csv(ev.kernel_ambient[i]) << '\n';
  }
  o << "reflections=" << ev.generators.size() << '\n';
  for (std::size_t i = 0; i < ev.generators.size(); ++i) {
    const auto& g = ev.generators[i];
    o << "reflection." << i + 1 << ".orbit=" << csv_indices(g.orbit) << '\n';
    o << "reflection." << i + 1 << ".delta=" << csv(g.delta) << '\n';
    o << "reflection." << i + 1 << ".ambient=" << csv(g.delta_ambient) << '\n';
  }
  for (std::size_t i = 0; i < ev.skipped_orbits.size(); ++i)
    o << "skipped_orbit." << i + 1 << '=' << csv_indices(ev.skipped_orbits[i]) << '\n';
  o << "verdict=" << verdict_name(ev.verdict) << '\n';
  if (ev.verdict.finite()) o << "order=" << ev.verdict.order() << '\n';
  if (ev.verdict.unknown()) {
    const auto& u = std::get<UnknownOrder>(ev.verdict.result);
    o << "cap=" << u.cap << '\n' << "explored=" << u.explored << '\n';
  }
  if (ev.verdict.infinite()) {
    const auto& c = ev.verdict.certificate();
    o << "certificate.kind=" << kind_name(c.kind) << '\n';
    o << "certificate.word=" << format_word(c.element.word) << '\n';
    const IntMatrix m = c.element.matrix.to_int_matrix();
    for (std::size_t i = 0; i < m.rows(); ++i) o << "certificate.matrix." << i + 1 << '=' << csv(m.row(i)) << '\n';
    o << "certificate.witness=" << csv(c.witness) << '\n';
    o << "certificate.increment=" << csv(c.increment) << '\n';
    o << "certificate.verified=" << (ev.certificate_verified ? "true" : "false") << '\n';
  }
  o << "criteria_agree=" << (ev.criteria_agree() ? "true" : "false") << '\n';
  o << "simple=" << (ev.simple() ? "true" : "false") << '\n';
}

void write_text(std::ostream& o, const Analysis& a) {
  const Evidence& ev = a.ev;
  const IntMatrix& gram = ev.isotypic.restricted_gram();
  o << "input: " << a.input << '\n';
  o << "ambient rank " << a.action.lattice().rank() << ", self-intersection " << self_intersection_text(a.file)
    << ", character " << character_text(a.action, a.chi) << '\n';
  o << "isotypic sublattice, rank " << ev.isotypic.rank() << ":\n";
  for (std::size_t i = 0; i < ev.isotypic.rank(); ++i)
    o << "  δ" << i + 1 << " = " << combo(ev.isotypic.basis()[i], "Δ") << '\n';
  o << "restricted form:\n";
  std::size_t width = 1;
  for (std::size_t i = 0; i < gram.rows(); ++i)
    for (std::size_t j = 0; j < gram.cols(); ++j) width = std::max(width, gram(i, j).get_str().size());
  for (std::size_t i = 0; i < gram.rows(); ++i) {
    o << "  [";
    for (std::size_t j = 0; j < gram.cols(); ++j) o << ' ' << std::setw(static_cast<int>(width)) << gram(i, j).get_str();
    o << " ]\n";
  }
  o << "inertia (+,0,-) = (" << ev.form_inertia.n_plus << ',' << ev.form_inertia.n_zero << ','
    << ev.form_inertia.n_minus << "): " << ev.form_inertia.classification() << '\n';
  if (ev.kernel.empty()) {
    o << "kernel: 0\n";
  } else {
    o << "kernel:\n";
    for (std::size_t i = 0; i < ev.kernel.size(); ++i)
      o << "  " << combo(ev.kernel[i], "δ") << "  =  " << combo(ev.kernel_ambient[i], "Δ") << '\n';
  }
  o << "orbit reflections:\n";
  for (std::size_t i = 0; i < ev.generators.size(); ++i) {
    const auto& g = ev.generators[i];
    o << "  h" << i + 1 << ": orbit {" << csv_indices(g.orbit) << "}, reflection in " << combo(g.delta, "δ") << " = "
      << combo(g.delta_ambient, "Δ") << ", square " << ev.isotypic.restricted().product(g.delta, g.delta).get_str()
      << '\n';
  }
  for (const auto& orbit : ev.skipped_orbits) o << "  orbit {" << csv_indices(orbit) << "} projects to zero\n";
  if (ev.verdict.finite()) {
    o << "monodromy: finite, order " << ev.verdict.order() << '\n';
  } else if (ev.verdict.unknown()) {
    const auto& u = std::get<UnknownOrder>(ev.verdict.result);
    o << "monodromy: unknown, cap " << u.cap << " reached after " << u.explored << " elements\n";
  } else {
    const auto& c = ev.verdict.certificate();
    o << "monodromy: infinite (" << kind_name(c.kind) << " certificate)\n";
    o << "  g = " << format_word(c.element.word) << '\n';
    o << "  v = " << combo(c.witness, "δ") << '\n';
    o << "  w = (g - 1)v = " << combo(c.increment, "δ") << '\n';
    o << "  g^s v = v + s w, verified: " << (ev.certificate_verified ? "yes" : "NO") << '\n';
  }
  if (!ev.criteria_agree()) o << "WARNING: definiteness and finiteness disagree\n";
  o << "simple: " << (ev.simple() ? "yes" : "no") << '\n';
  o << "time: " << std::fixed << std::setprecision(1) << a.millis << " ms\n";
  o.unsetf(std::ios::floatfield);
}

void write_analysis(std::ostream& o, const Analysis& a, Format f) {
  if (f == Format::Machine) {
    write_machine(o, a);
  } else {
    write_text(o, a);
  }
}

int exit_code(const Evidence& ev) {
  if (!ev.criteria_agree()) return Failure;
  if (ev.verdict.unknown()) return Unknown;
  return ev.simple() ? Simple : NotSimple;
}

void report_error(std::ostream& err, const std::string& where, const std::exception& e) {
  err << "error";
  if (const auto* ee = dynamic_cast<const Error*>(&e)) err << '[' << ee->code() << ']';
  err << ": ";
  // parse messages already start with "line:col: "
  if (!where.empty()) err << where << (dynamic_cast<const ParseError*>(&e) ? ":" : ": ");
  err << e.what() << '\n';
}

Format format_of(const std::string& s) { return s == "machine" ? Format::Machine : Format::Text; }

std::string fixture_header(const Fixture& fx) {
  return "fixture " + fx.name;
}

// "B3" is shorthand for "B --k 3".
std::pair<std::string, std::optional<int>> symbol_and_k(const std::string& symbol, std::optional<int> k) {
  if (k) return {symbol, k};
  return split_fixture_name(symbol);
}

std::vector<Rat> parse_weights(const std::string& s) {
  std::vector<Rat> w;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) w.push_back(parse_rational(item));
  return w;
}

std::string class_label(std::size_t mask, std::size_t generators) {
  if (generators == 0) return "1";
  std::string s;
  for (std::size_t i = 0; i < generators; ++i) s += (mask >> i) & 1 ? '-' : '+';
  return s;
}

std::size_t parse_character(const std::string& spec, const PolyGerm& f) {
  const std::size_t g = f.generator_count();
  if (spec == "invariant") return 0;
  if (spec == "det") {
    std::vector<std::size_t> probe(std::size_t{1} << g);
    probe[0] = 1;
    const auto twisted = det_twisted(f, probe);
    return static_cast<std::size_t>(std::find(twisted.begin(), twisted.end(), 1) - twisted.begin());
  }
  std::size_t mask = 0, i = 0;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (i >= g || (item != "+1" && item != "-1" && item != "1"))
      throw Error("BadParameter", "character must be 'invariant', 'det' or " + std::to_string(g) +
                                      " comma-separated values +1/-1");
    if (item == "-1") mask |= std::size_t{1} << i;
    ++i;
  }
  if (i != g)
    throw Error("BadParameter", "character needs " + std::to_string(g) + " values, got " + std::to_string(i));
  return mask;
}

void write_file_or(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("IOError", "cannot write '" + path + "'");
  f << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equivariant simplicity of Z2-invariant and corner singularities", "eqsing"};
  app.require_subcommand(1);

  std::string format = "text";
  std::size_t cap = GroupOptions{}.cap;
  bool serial = false;

  auto* analyze = app.add_subcommand("analyze", "Run the simplicity pipeline on a diagram + action file");
  std::string diagram_path;
  bool every_fixture = false;
  analyze->add_option("FILE", diagram_path, "diagram file");
  analyze->add_option("--cap", cap, "element cap for indefinite forms")->check(CLI::PositiveNumber);
  analyze->add_option("--format", format)->check(CLI::IsMember({"text", "machine"}));
  analyze->add_flag("--serial", serial, "disable parallel group generation");
  analyze->add_flag("--all-fixtures", every_fixture, "analyze every bundled fixture");

  auto* catalog = app.add_subcommand("catalog", "Families, normal forms and fixtures");
  catalog->require_subcommand(1);
  std::string setting = "z2";
  std::string symbol;
  std::optional<int> k;
  std::optional<std::size_t> m, n;
  std::string modulus;
  std::string output;
  bool poly = false;

  auto* list = catalog->add_subcommand("list", "List simple and confining families");
  list->add_option("--setting", setting)->check(CLI::IsMember({"z2", "corner"}));
  list->add_option("--format", format)->check(CLI::IsMember({"text", "machine"}));

  auto* emit = catalog->add_subcommand("emit", "Write a fixture file or a normal form");
  emit->add_option("SYMBOL", symbol)->required();
  emit->add_option("--k", k);
  emit->add_option("--m", m);
  emit->add_option("--n", n);
  emit->add_option("--modulus", modulus, "rational modulus a");
  emit->add_option("--setting", setting)->check(CLI::IsMember({"z2", "corner"}));
  emit->add_flag("--poly", poly, "emit the normal-form polynomial instead of the fixture");
  emit->add_option("-o,--output", output);

  auto* verdict = catalog->add_subcommand("verdict", "Simplicity verdict for a bundled fixture");
  verdict->add_option("SYMBOL", symbol)->required();
  verdict->add_option("--k", k);
  verdict->add_option("--cap", cap)->check(CLI::PositiveNumber);
  verdict->add_option("--format", format)->check(CLI::IsMember({"text", "machine"}));
  verdict->add_flag("--serial", serial);

  auto* mu = app.add_subcommand("mu", "Milnor number and isotypic dimensions of a polynomial germ");
  std::string poly_path;
  std::string character = "invariant";
  std::size_t max_degree = MilnorOptions{}.max_degree;
  std::string oracle;
  mu->add_option("FILE", poly_path)->required();
  mu->add_option("--character", character, "invariant, det, or +1,-1,... per generator");
  mu->add_option("--max-degree", max_degree)->check(CLI::PositiveNumber);
  mu->add_option("--oracle", oracle, "weights w1,w2,... for the quasihomogeneous formula");
  mu->add_option("--format", format)->check(CLI::IsMember({"text", "machine"}));
  mu->add_flag("--serial", serial);

  std::vector<const char*> argv{"eqsing"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : Failure;
  }

  const Format fmt = format_of(format);
  const GroupOptions options{cap, !serial};

  if (*analyze) {
    if (every_fixture) {
      if (!diagram_path.empty()) {
        err << "error: --all-fixtures takes no FILE\n";
        return Failure;
      }
      const auto fixtures = eqsing::all_fixtures();
      std::vector<std::string> reports(fixtures.size());
      std::vector<int> codes(fixtures.size(), Simple);
      // One fixture per thread; the group search inside runs serially.
#pragma omp parallel for schedule(dynamic)
      for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(fixtures.size()); ++i) {
        const Fixture& fx = fixtures[static_cast<std::size_t>(i)];
        std::ostringstream o;
        o << (fmt == Format::Machine ? "fixture=" : "== ") << fx.name << '\n';
        if (!fx.group_enumerated) {
          o << (fmt == Format::Machine ? "skipped=diagram-only\n" : "skipped: diagram only\n");
        } else {
          try {
            const Analysis a = run_analysis("fixture:" + fx.name, fx.file, GroupOptions{cap, false});
            write_analysis(o, a, fmt);
            codes[static_cast<std::size_t>(i)] = exit_code(a.ev);
          } catch (const std::exception& e) {
            std::ostringstream e2;
            report_error(e2, fx.name, e);
            o << e2.str();
            codes[static_cast<std::size_t>(i)] = Failure;
          }
        }
        reports[static_cast<std::size_t>(i)] = o.str();
      }
      int code = Simple;
      for (std::size_t i = 0; i < fixtures.size(); ++i) {
        if (i) out << '\n';
        out << reports[i];
        if (codes[i] == Failure || codes[i] == Unknown) code = Failure;
      }
      return code;
    }
    if (diagram_path.empty()) {
      err << "error: analyze needs FILE or --all-fixtures\n";
      return Failure;
    }
    try {
      const Analysis a = run_analysis(diagram_path, read_diagram_file(diagram_path), options);
      write_analysis(out, a, fmt);
      if (!a.ev.criteria_agree())
        err << "error[InternalError]: definiteness and finiteness disagree on " << diagram_path << '\n';
      return exit_code(a.ev);
    } catch (const std::exception& e) {
      report_error(err, diagram_path, e);
      return Failure;
    }
  }

  if (*catalog) {
    try {
      if (*list) {
        const Setting s = parse_setting(setting);
        auto row = [&](const FamilyEntry& e) {
          const std::string kind = e.kind == FamilyKind::Simple ? "simple" : "confining";
          std::string range = e.k_min ? "k>=" + std::to_string(*e.k_min) : "";
          if (fmt == Format::Machine) {
            out << "family=" << e.symbol << " kind=" << kind << " setting=" << to_string(e.setting)
                << " k=" << (range.empty() ? "-" : range)
                << " modulus=" << (e.has_modulus() ? e.modulus_exclusion : "-") << '\n';
          } else {
            out << std::left << std::setw(10) << kind << std::setw(5) << e.symbol << std::setw(6) << range
                << e.normal_form;
            if (e.has_modulus()) out << ",  " << e.modulus_exclusion;
            out << '\n';
            out << std::right;
          }
        };
        for (const auto& e : simple_list()) row(e);
        for (const auto& e : confining_list(s)) row(e);
        return 0;
      }
      if (*emit) {
        if (poly) {
          FamilyParams p{k, m, n, std::nullopt, parse_setting(setting)};
          if (!emit->get_option("--setting")->count()) p.setting.reset();
          if (!modulus.empty()) p.modulus = parse_rational(modulus);
          const PolyGerm f = normal_form(symbol, p);
          std::string header = "normal form " + symbol;
          if (k) header += " k=" + std::to_string(*k);
          if (p.modulus) header += " a=" + p.modulus->get_str();
          write_file_or(out, output, serialize_polynomial(f, {header}));
          return 0;
        }
        for (const char* opt : {"--m", "--n", "--modulus", "--setting"})
          if (emit->get_option(opt)->count())
            throw CatalogError("BadParameter", std::string(opt) + " only applies with --poly");
        const auto [s, kk] = symbol_and_k(symbol, k);
        const Fixture fx = fixture(s, kk);
        write_file_or(out, output, serialize(fx.file, {fixture_header(fx)}));
        return 0;
      }
      if (*verdict) {
        const auto [s, kk] = symbol_and_k(symbol, k);
        const Fixture fx = fixture(s, kk);
        if (!fx.group_enumerated)
          throw CatalogError("NoFixture", fx.name + " ships as a diagram only; its group is not enumerated");
        const Analysis a = run_analysis("fixture:" + fx.name, fx.file, options);
        write_analysis(out, a, fmt);
        if (!a.ev.criteria_agree()) {
          err << "error[InternalError]: definiteness and finiteness disagree on " << fx.name << '\n';
          return Failure;
        }
        return exit_code(a.ev);
      }
    } catch (const std::exception& e) {
      report_error(err, "", e);
      return Failure;
    }
  }

  if (*mu) {
    try {
      const PolyGerm f = read_polynomial_file(poly_path);
      const std::size_t mask = parse_character(character, f);
      const auto t0 = std::chrono::steady_clock::now();
      const LocalAlgebraReport r = milnor_number(f, MilnorOptions{max_degree, !serial});
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      const std::size_t g = f.generator_count();
      std::optional<Int> oracle_mu;
      bool oracle_qh = true;
      if (!oracle.empty()) {
        const auto w = parse_weights(oracle);
        oracle_qh = is_quasihomogeneous(f, w);
        oracle_mu = quasihomogeneous_mu(w);
      }
      const bool agree = !oracle_mu || (oracle_qh && *oracle_mu == Int(static_cast<unsigned long>(r.mu)));
      if (fmt == Format::Machine) {
        out << "input=" << poly_path << '\n';
        out << "polynomial=" << f.to_string() << '\n';
        out << "group=" << (f.group() == GroupKind::Corner ? "corner" : "z2") << '\n';
        out << "mu=" << r.mu << '\n';
        out << "truncation_degree=" << r.truncation_degree << '\n';
        for (std::size_t c = 0; c < r.isotypic_dims.size(); ++c)
          out << "isotypic." << class_label(c, g) << '=' << r.isotypic_dims[c] << '\n';
        out << "character=" << class_label(mask, g) << '\n';
        out << "selected_dim=" << r.isotypic_dims[mask] << '\n';
        if (oracle_mu) {
          out << "oracle.quasihomogeneous=" << (oracle_qh ? "true" : "false") << '\n';
          out << "oracle.mu=" << oracle_mu->get_str() << '\n';
          out << "oracle.agrees=" << (agree ? "true" : "false") << '\n';
        }
      } else {
        out << "f = " << f.to_string() << "  (" << f.x_count() << " x, " << f.y_count() << " y, "
            << (f.group() == GroupKind::Corner ? "corner" : "z2") << ")\n";
        out << "mu = " << r.mu << "  (certified at degree " << r.truncation_degree << ")\n";
        out << "isotypic dimensions (function character):";
        for (std::size_t c = 0; c < r.isotypic_dims.size(); ++c)
          out << ' ' << class_label(c, g) << ':' << r.isotypic_dims[c];
        out << '\n';
        out << "character " << class_label(mask, g) << ": dimension " << r.isotypic_dims[mask] << '\n';
        if (oracle_mu) {
          out << "oracle: product formula gives " << oracle_mu->get_str();
          if (!oracle_qh) out << ", but f is not quasihomogeneous for these weights";
          out << (agree ? ", agrees" : ", DISAGREES") << '\n';
        }
        out << "time: " << std::fixed << std::setprecision(1) << ms << " ms\n";
        out.unsetf(std::ios::floatfield);
      }
      return agree ? 0 : NotSimple;
    } catch (const std::exception& e) {
      report_error(err, poly_path, e);
      return Failure;
    }
  }
  return Failure;
}

}  // namespace eqsing::cli
