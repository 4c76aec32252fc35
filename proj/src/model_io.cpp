#include "levy/model_io.hpp"

#include "levy/operator_lab.hpp"

#include "json.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

namespace levy {

ParseError::ParseError(std::size_t line, std::size_t column, std::string field,
                       const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         (field.empty() ? "" : " [" + field + "]") + ": " + message),
      line_(line), column_(column), field_(std::move(field)), message_(message) {}

ModelValue ModelValue::rational(Rational q) {
  ModelValue v;
  v.value = to_double(q);
  v.exact = std::move(q);
  return v;
}

std::string ModelValue::to_string() const {
  if (exact) return levy::to_string(*exact);
  return tag + ":" + levy::to_string(argument);
}

bool ModelFile::is_exact() const {
  auto exact = [](const ModelValue& v) { return v.exact.has_value(); };
  for (const auto& v : drift)
    if (!exact(v)) return false;
  for (const auto& v : covariance)
    if (!exact(v)) return false;
  for (const auto& a : atoms) {
    if (!exact(a.mass)) return false;
    for (const auto& v : a.location)
      if (!exact(v)) return false;
  }
  return true;
}

LevyTriplet ModelFile::triplet() const {
  const std::size_t n = dimension;
  if (is_exact()) {
    ExactTriplet e{RationalVector(n), RationalMatrix(n, n), {}};
    for (std::size_t i = 0; i < n; ++i) e.drift[i] = *drift[i].exact;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) e.covariance(i, j) = *covariance[i * n + j].exact;
    for (const auto& a : atoms) {
      ExactAtom ea{*a.mass.exact, RationalVector(n)};
      for (std::size_t i = 0; i < n; ++i) ea.location[i] = *a.location[i].exact;
      e.atoms.push_back(std::move(ea));
    }
    return LevyTriplet::from_exact(std::move(e));
  }
  RealVector          b(n);
  std::vector<double> q(n * n);
  for (std::size_t i = 0; i < n; ++i) b[i] = drift[i].value;
  for (std::size_t i = 0; i < n * n; ++i) q[i] = covariance[i].value;
  if (atoms.empty()) return LevyTriplet(b, q, NullMeasure{});
  std::vector<Atom> nu;
  for (const auto& a : atoms) {
    Atom at{a.mass.value, RealVector(n)};
    for (std::size_t i = 0; i < n; ++i) at.location[i] = a.location[i].value;
    nu.push_back(std::move(at));
  }
  return LevyTriplet(b, q, std::move(nu));
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

const std::set<std::string>& known_checks() {
  static const std::set<std::string> k{"harmonic",  "applications", "resolvent", "semigroup",
                                       "density",   "corollary1",   "corollary2"};
  return k;
}

struct Cursor {
  std::size_t line;
  std::size_t column;  // 1-based column of the first character of `text`
  std::string_view text;
};

std::string_view trim(std::string_view s, std::size_t* lead = nullptr) {
  std::size_t a = 0;
  while (a < s.size() && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  std::size_t b = s.size();
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  if (lead) *lead = a;
  return s.substr(a, b - a);
}

Cursor trimmed(Cursor c) {
  std::size_t lead = 0;
  auto        t    = trim(c.text, &lead);
  return {c.line, c.column + lead, t};
}

ModelValue parse_value(Cursor c, const std::string& field) {
  c = trimmed(c);
  if (c.text.empty()) throw ParseError(c.line, c.column, field, "missing number");
  for (const char* tag : {"sqrt", "pi"}) {
    const std::string prefix = std::string(tag) + ":";
    if (c.text.substr(0, prefix.size()) == prefix) {
      auto q = parse_rational(c.text.substr(prefix.size()));
      if (!q) throw ParseError(c.line, c.column + prefix.size(), field, "invalid tag argument '" + std::string(c.text) + "'");
      ModelValue v;
      v.tag      = tag;
      v.argument = *q;
      if (v.tag == "sqrt") {
        if (*q < 0) throw ParseError(c.line, c.column, field, "sqrt of a negative number");
        v.value = std::sqrt(to_double(*q));
      } else {
        v.value = std::numbers::pi * to_double(*q);
      }
      // Tagged entries stay tagged even when rational (sqrt:4): they force numeric mode.
      return v;
    }
  }
  auto q = parse_rational(c.text);
  if (!q) throw ParseError(c.line, c.column, field, "invalid number '" + std::string(c.text) + "'");
  return ModelValue::rational(*q);
}

std::vector<ModelValue> parse_vector(Cursor c, const std::string& field) {
  c = trimmed(c);
  if (c.text.size() < 2 || c.text.front() != '(' || c.text.back() != ')')
    throw ParseError(c.line, c.column, field, "expected a parenthesized list '(a, b, ...)'");
  std::vector<ModelValue> out;
  std::size_t             start = 1;
  const std::size_t       end   = c.text.size() - 1;
  if (trim(c.text.substr(1, end - 1)).empty()) return out;
  while (true) {
    std::size_t comma = c.text.find(',', start);
    if (comma == std::string_view::npos || comma > end) comma = end;
    out.push_back(parse_value({c.line, c.column + start, c.text.substr(start, comma - start)},
                              field + "[" + std::to_string(out.size()) + "]"));
    if (comma == end) break;
    start = comma + 1;
  }
  return out;
}

std::pair<Cursor, Cursor> split_at(Cursor c, char sep, const std::string& field,
                                   const char* what) {
  const auto pos = c.text.find(sep);
  if (pos == std::string_view::npos) throw ParseError(c.line, c.column, field, what);
  return {{c.line, c.column, c.text.substr(0, pos)},
          {c.line, c.column + pos + 1, c.text.substr(pos + 1)}};
}

bool is_power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

std::size_t parse_count(Cursor c, const std::string& field) {
  c = trimmed(c);
  std::size_t v   = 0;
  auto [ptr, ec]  = std::from_chars(c.text.data(), c.text.data() + c.text.size(), v);
  if (ec != std::errc{} || ptr != c.text.data() + c.text.size())
    throw ParseError(c.line, c.column, field, "expected a non-negative integer");
  return v;
}

double parse_double(Cursor c, const std::string& field) {
  c = trimmed(c);
  double v       = 0;
  auto [ptr, ec] = std::from_chars(c.text.data(), c.text.data() + c.text.size(), v);
  if (ec != std::errc{} || ptr != c.text.data() + c.text.size())
    throw ParseError(c.line, c.column, field, "expected a floating-point number");
  return v;
}

const std::map<std::string, std::set<std::string>>& bernstein_parameters() {
  static const std::map<std::string, std::set<std::string>> p{
      {"power", {"alpha"}}, {"log", {}},        {"resolvent", {"tau"}},
      {"semigroup", {"t"}}, {"linear", {"a"}}, {"custom", {"a"}}};
  return p;
}

}  // namespace

ModelFile parse_model(std::string_view text) {
  ModelFile   m;
  std::string section;
  std::map<std::string, Cursor> seen;  // key -> where it was defined
  std::vector<Cursor>           atom_lines;
  std::optional<Cursor>         dim_at, points_at, period_at;
  std::size_t                   lineno = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view raw = text.substr(pos, nl - pos);
    pos                  = nl + 1;
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    Cursor line = trimmed({lineno, 1, raw});
    if (line.text.empty()) {
      if (nl == text.size()) break;
      continue;
    }

    if (line.text.front() == '[') {
      if (line.text.back() != ']') throw ParseError(line.line, line.column, "", "unterminated section header");
      section = std::string(trim(line.text.substr(1, line.text.size() - 2)));
      if (section != "bernstein" && section != "grid" && section != "checks")
        throw ParseError(line.line, line.column + 1, section, "unknown section '" + section + "'");
      const std::string key = "[" + section + "]";
      if (seen.count(key)) throw ParseError(line.line, line.column, section, "duplicate section");
      seen.emplace(key, line);
      if (section == "bernstein") m.bernstein.emplace();
      if (section == "grid") m.grid.emplace();
      if (nl == text.size()) break;
      continue;
    }

    auto [key_c, value_c] = split_at(line, '=', "", "expected 'key = value'");
    key_c                 = trimmed(key_c);
    const std::string key(key_c.text);
    if (key.empty()) throw ParseError(line.line, line.column, "", "missing key");
    const std::string field = section.empty() ? key : section + "." + key;
    if (key != "atom") {
      if (seen.count(field)) throw ParseError(key_c.line, key_c.column, field, "duplicate key");
      seen.emplace(field, value_c);
    }

    if (section.empty()) {
      if (key == "name") {
        m.name = std::string(trimmed(value_c).text);
      } else if (key == "dim") {
        m.dimension = parse_count(value_c, field);
        dim_at      = value_c;
        if (m.dimension == 0) throw ParseError(value_c.line, value_c.column, field, "dimension must be positive");
      } else if (key == "drift") {
        m.drift = parse_vector(value_c, field);
      } else if (key == "covariance") {
        m.covariance = parse_vector(value_c, field);
      } else if (key == "atom") {
        const std::string af = "measure.atom[" + std::to_string(m.atoms.size()) + "]";
        auto [mass_c, loc_c] = split_at(value_c, '@', af, "expected 'mass @ (x1, ...)'");
        ModelAtom a{parse_value(mass_c, af + ".mass"), parse_vector(loc_c, af + ".location")};
        m.atoms.push_back(std::move(a));
        atom_lines.push_back(trimmed(mass_c));
      } else {
        throw ParseError(key_c.line, key_c.column, field, "unknown key '" + key + "'");
      }
    } else if (section == "bernstein") {
      auto& b = *m.bernstein;
      if (key == "family") {
        b.family = std::string(trimmed(value_c).text);
        if (!bernstein_parameters().count(b.family))
          throw ParseError(value_c.line, trimmed(value_c).column, field, "unknown family '" + b.family + "'");
      } else if (key == "atom") {
        const std::string af = "bernstein.atom[" + std::to_string(b.atoms.size()) + "]";
        auto [mass_c, loc_c] = split_at(value_c, '@', af, "expected 'mass @ location'");
        b.atoms.emplace_back(parse_value(mass_c, af + ".mass"), parse_value(loc_c, af + ".location"));
      } else {
        b.parameters[key] = parse_value(value_c, field);
      }
    } else if (section == "grid") {
      if (key == "period") {
        m.grid->period = parse_value(value_c, field);
        period_at      = value_c;
      } else if (key == "points") {
        m.grid->points = parse_count(value_c, field);
        points_at      = value_c;
      } else {
        throw ParseError(key_c.line, key_c.column, field, "unknown key '" + key + "'");
      }
    } else {  // checks
      if (!known_checks().count(key))
        throw ParseError(key_c.line, key_c.column, field, "unknown check '" + key + "'");
      const double tol = parse_double(value_c, field);
      if (!(tol > 0)) throw ParseError(value_c.line, value_c.column, field, "tolerance must be positive");
      m.checks.push_back({key, tol});
    }
    if (nl == text.size()) break;
  }

  // Semantic checks.
  if (!dim_at) throw ParseError(lineno, 1, "dim", "missing 'dim'");
  const std::size_t n = m.dimension;
  auto where = [&](const std::string& key) {
    auto it = seen.find(key);
    return it == seen.end() ? Cursor{lineno, 1, {}} : trimmed(it->second);
  };
  if (m.drift.empty() && !seen.count("drift")) m.drift.assign(n, ModelValue::rational(0));
  if (m.covariance.empty() && !seen.count("covariance"))
    m.covariance.assign(n * n, ModelValue::rational(0));
  if (m.drift.size() != n)
    throw ParseError(where("drift").line, where("drift").column, "drift",
                     "expected " + std::to_string(n) + " entries, got " + std::to_string(m.drift.size()));
  if (m.covariance.size() != n * n)
    throw ParseError(where("covariance").line, where("covariance").column, "covariance",
                     "expected " + std::to_string(n * n) + " entries (row-major), got " +
                         std::to_string(m.covariance.size()));
  for (std::size_t i = 0; i < m.atoms.size(); ++i) {
    const auto&       a  = m.atoms[i];
    const auto&       at = atom_lines[i];
    const std::string af = "measure.atom[" + std::to_string(i) + "]";
    if (a.location.size() != n)
      throw ParseError(at.line, at.column, af + ".location",
                       "expected " + std::to_string(n) + " coordinates, got " + std::to_string(a.location.size()));
    if (!(a.mass.value > 0)) throw ParseError(at.line, at.column, af + ".mass", "mass must be positive");
  }
  if (m.bernstein) {
    const auto& b  = *m.bernstein;
    const auto  at = where("[bernstein]");
    if (b.family.empty()) throw ParseError(at.line, at.column, "bernstein.family", "missing 'family'");
    const auto& allowed = bernstein_parameters().at(b.family);
    for (const auto& [k, v] : b.parameters)
      if (!allowed.count(k))
        throw ParseError(where("bernstein." + k).line, where("bernstein." + k).column, "bernstein." + k,
                         "parameter not used by family '" + b.family + "'");
    for (const auto& k : allowed)
      if (!b.parameters.count(k) && !(b.family == "custom" && k == "a"))
        throw ParseError(at.line, at.column, "bernstein." + k, "missing parameter '" + k + "'");
    if (!b.atoms.empty() && b.family != "custom")
      throw ParseError(at.line, at.column, "bernstein.atom", "atoms are only allowed for family 'custom'");
    try {
      (void)make_bernstein(b);
    } catch (const std::invalid_argument& e) {
      throw ParseError(at.line, at.column, "bernstein", e.what());
    }
  }
  if (m.grid) {
    const auto at = where("[grid]");
    if (!period_at) throw ParseError(at.line, at.column, "grid.period", "missing 'period'");
    if (!points_at) throw ParseError(at.line, at.column, "grid.points", "missing 'points'");
    if (!(m.grid->period.value > 0))
      throw ParseError(period_at->line, period_at->column, "grid.period", "period must be positive");
    if (!is_power_of_two(m.grid->points))
      throw ParseError(points_at->line, points_at->column, "grid.points", "points must be a power of two >= 2");
  }

  const auto report = validate_triplet(m.triplet());
  if (!report.ok()) {
    std::string field = "triplet";
    Cursor      at{1, 1, {}};
    std::string message;
    for (const auto& item : report.items) {
      if (item.passed) continue;
      message = item.invariant + (item.detail.empty() ? "" : ": " + item.detail);
      const bool cov = item.invariant.find("covariance") != std::string::npos ||
                       item.invariant.find("PSD") != std::string::npos;
      field = cov ? "covariance" : (item.invariant.find("atom") != std::string::npos ||
                                    item.invariant.find("measure") != std::string::npos)
                                       ? "measure"
                                       : "triplet";
      if (field == "covariance") at = where("covariance");
      break;
    }
    throw ParseError(at.line, at.column, field, message);
  }
  return m;
}

ModelFile load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open model file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str());
}

namespace {

std::string vector_text(const std::vector<ModelValue>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].to_string();
  }
  return s + ")";
}

std::string shortest(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

}  // namespace

std::string serialize_model(const ModelFile& m) {
  std::ostringstream os;
  if (!m.name.empty()) os << "name = " << m.name << "\n";
  os << "dim = " << m.dimension << "\n";
  os << "drift = " << vector_text(m.drift) << "\n";
  os << "covariance = " << vector_text(m.covariance) << "\n";
  for (const auto& a : m.atoms) os << "atom = " << a.mass.to_string() << " @ " << vector_text(a.location) << "\n";
  if (m.bernstein) {
    os << "\n[bernstein]\nfamily = " << m.bernstein->family << "\n";
    for (const auto& [k, v] : m.bernstein->parameters) os << k << " = " << v.to_string() << "\n";
    for (const auto& [mass, loc] : m.bernstein->atoms)
      os << "atom = " << mass.to_string() << " @ " << loc.to_string() << "\n";
  }
  if (m.grid) {
    os << "\n[grid]\nperiod = " << m.grid->period.to_string() << "\npoints = " << m.grid->points << "\n";
  }
  if (!m.checks.empty()) {
    os << "\n[checks]\n";
    for (const auto& c : m.checks) os << c.name << " = " << shortest(c.tolerance) << "\n";
  }
  return os.str();
}

BernsteinFunction make_bernstein(const BernsteinSpec& spec) {
  auto param = [&](const char* k) -> const ModelValue& { return spec.parameters.at(k); };
  if (spec.family == "power") return BernsteinFunction::power(param("alpha").value);
  if (spec.family == "log") return BernsteinFunction::log();
  if (spec.family == "resolvent") return BernsteinFunction::resolvent(param("tau").value);
  if (spec.family == "linear") return BernsteinFunction::linear(param("a").value);
  if (spec.family == "semigroup") {
    const auto& t = param("t");
    return t.exact ? BernsteinFunction::semigroup_complement(*t.exact)
                   : BernsteinFunction::semigroup_complement(t.value);
  }
  if (spec.family == "custom") {
    const double a     = spec.parameters.count("a") ? param("a").value : 0.0;
    const bool   exact = std::all_of(spec.atoms.begin(), spec.atoms.end(),
                                     [](const auto& p) { return p.second.exact.has_value(); });
    if (exact) {
      std::vector<std::pair<double, Rational>> atoms;
      for (const auto& [mass, loc] : spec.atoms) atoms.emplace_back(mass.value, *loc.exact);
      return BernsteinFunction::custom(a, std::move(atoms));
    }
    std::vector<BernsteinAtom> atoms;
    for (const auto& [mass, loc] : spec.atoms) atoms.push_back({mass.value, loc.value});
    return BernsteinFunction::custom(a, std::move(atoms));
  }
  throw std::invalid_argument("unknown Bernstein family '" + spec.family + "'");
}

std::string model_hash(const ModelFile& model) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize_model(model)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

// ---------------------------------------------------------------------------
// Reports

std::string method_name(VerdictMethod m) {
  return m == VerdictMethod::Exact ? "exact" : "numeric-heuristic";
}

bool Report::all_pass() const {
  if (crosscheck && !crosscheck->equal) return false;
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

std::vector<std::string> default_checks(const ModelFile& model) {
  std::vector<std::string> c{"harmonic", "applications", "resolvent", "semigroup", "density"};
  if (model.is_exact()) c.push_back("corollary2");
  if (model.bernstein && model.is_exact()) c.push_back("corollary1");
  return c;
}

namespace {

double check_tolerance(const ModelFile& m, const std::string& name, double fallback) {
  for (const auto& c : m.checks)
    if (c.name == name) return c.tolerance;
  return fallback;
}

TorusGrid work_grid(const ModelFile& m, const ReportOptions& o, double default_period,
                    std::size_t default_points) {
  double      L = default_period;
  std::size_t N = default_points;
  if (m.grid) {
    L = m.grid->period.value;
    N = m.grid->points;
  }
  if (o.grid_period) L = *o.grid_period;
  if (o.grid_points) N = *o.grid_points;
  return TorusGrid(m.dimension, L, N);
}

std::size_t default_points(std::size_t n) { return n == 1 ? 64 : n == 2 ? 32 : 16; }

// Non-harmonic test function for the applications check: 5 grid harmonics.
TrigPolynomial test_polynomial(std::size_t n, double period) {
  std::mt19937_64                        rng(20240611);
  std::uniform_int_distribution<int>     k(-3, 3);
  std::uniform_real_distribution<double> c(-1, 1);
  TrigPolynomial                         p;
  p.dimension = n;
  for (int t = 0; t < 5; ++t) {
    RealVector u(n);
    for (auto& x : u) x = k(rng) / period;
    p.frequencies.push_back(u);
    p.coefficients.emplace_back(c(rng), c(rng));
  }
  return p;
}

}  // namespace

Report build_report(const ModelFile& model, const ReportOptions& options) {
  Report r;
  r.model_name = model.name;
  r.hash       = model_hash(model);
  r.options    = options;

  const auto    triplet = model.triplet();
  DecideOptions decide;
  decide.force_numeric = options.force_numeric || !model.is_exact();
  r.verdict            = decide_liouville(triplet, decide);

  auto names = model.checks.empty() ? default_checks(model) : std::vector<std::string>{};
  for (const auto& c : model.checks) names.push_back(c.name);

  // Harmonic test function: the counterexample when one exists, else a constant.
  std::optional<HarmonicCandidate> candidate;
  if (r.verdict.zero_set && !r.verdict.zero_set->is_trivial() &&
      r.verdict.method == VerdictMethod::Exact)
    candidate = make_harmonic(*r.verdict.zero_set);
  const TorusGrid harmonic = candidate ? harmonic_grid(*candidate, 16) : TorusGrid(model.dimension, 1.0, 16);
  const TrigPolynomial f =
      candidate ? candidate->realization() : TrigPolynomial{model.dimension, {RealVector(model.dimension)}, {1.0}};
  const auto f_grid = f.sample(harmonic);

  for (const auto& name : names) {
    const double tol = check_tolerance(model, name, options.tolerance);
    CheckResult  c{name, 0, tol, false, ""};
    if (name == "harmonic") {
      if (candidate) {
        const auto h = verify_harmonic(*candidate, triplet, harmonic);
        c.value      = std::max(h.fourier_residual, h.direct_residual);
        c.tolerance  = tol * (1 + h.norm);
        c.pass       = h.pass && c.value <= c.tolerance;
        c.detail     = "non-constant bounded harmonic function with " +
                   std::to_string(candidate->frequencies.size()) + " frequencies";
      } else if (r.verdict.holds) {
        c.pass   = true;
        c.detail = "no counterexample: zero set is trivial";
      } else {
        c.pass   = false;
        c.detail = "numeric zeros found but no exact group to build a counterexample";
      }
    } else if (name == "applications") {
      const auto grid = work_grid(model, options, 1.0, default_points(model.dimension));
      const auto tol8 = check_tolerance(model, name, 1e-8);
      c.tolerance     = tol8;
      c.value         = crosscheck_applications(test_polynomial(model.dimension, grid.period()), triplet, grid);
      c.pass          = c.value <= tol8;
      c.detail        = "spectral vs pointwise generator on 5 random grid harmonics";
    } else if (name == "resolvent") {
      c.value  = resolvent_fixed_point(f_grid, triplet, 1.0);
      c.tolerance = tol * (1 + f_grid.sup_norm());
      c.pass   = c.value <= c.tolerance;
      c.detail = candidate ? "tau R_tau f = f for the harmonic f, tau = 1" : "constant f, tau = 1";
    } else if (name == "semigroup") {
      const auto s = semigroup_fixed_point(f_grid, triplet, 1.0);
      c.value      = s.residual;
      c.tolerance  = tol * (1 + f_grid.sup_norm());
      c.pass       = c.value <= c.tolerance;
      c.detail     = std::string("P_1 f = f; ") + (s.conclusive ? "real symbol" : "complex symbol (not conclusive)");
    } else if (name == "density") {
      const auto grid = work_grid(model, options, 8.0, default_points(model.dimension));
      const auto d    = transition_density(triplet, 1.0, grid);
      c.value         = d.min_value;
      c.tolerance     = 0;
      // Positive density implies Liouville; the converse is not claimed.
      c.pass   = !d.strictly_positive || r.verdict.holds;
      c.detail = std::string("periodized density at t = 1 ") +
                 (d.strictly_positive ? "strictly positive on the grid" : "not strictly positive") +
                 " (heuristic)";
    } else if (name == "corollary2") {
      if (!model.is_exact()) {
        c.pass   = false;
        c.detail = "requires exact rational data";
      } else {
        r.crosscheck = crosscheck_corollary2(triplet);
        c.pass       = r.crosscheck->equal;
        c.detail     = r.crosscheck->lhs.to_string() + (c.pass ? " == " : " != ") + r.crosscheck->rhs.to_string();
      }
    } else if (name == "corollary1") {
      if (!model.bernstein) {
        c.pass   = false;
        c.detail = "no [bernstein] section";
      } else {
        const auto g  = make_bernstein(*model.bernstein);
        const auto cc = corollary1_equivalence_check(g, triplet, {tol, 20.0, 0.01});
        c.value       = cc.max_residual_on_zero_set;
        c.pass        = !cc.condition_met || cc.zero_sets_equal;
        c.detail      = std::string(cc.condition_met ? "condition met; " : "condition not met; ") + cc.detail;
      }
    }
    r.checks.push_back(std::move(c));
  }
  return r;
}

namespace {

nlohmann::ordered_json group_json(const ClosedSubgroup& g) {
  nlohmann::ordered_json j;
  j["text"]  = g.to_string();
  j["scale"] = g.scale() == Scale::TwoPi ? "2pi" : "1";
  auto rows  = [](const std::vector<RationalVector>& vs) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& v : vs) {
      auto row = nlohmann::ordered_json::array();
      for (const auto& q : v) row.push_back(to_string(q));
      arr.push_back(row);
    }
    return arr;
  };
  j["subspace"] = rows(g.subspace_basis());
  j["lattice"]  = rows(g.lattice_basis());
  return j;
}

}  // namespace

std::string report_json(const Report& r) {
  nlohmann::ordered_json j;
  j["tool"]  = {{"name", "levy"}, {"version", kToolVersion}};
  j["model"] = {{"name", r.model_name}, {"hash", "fnv1a64:" + r.hash}};
  j["tolerances"] = {{"harmonic", r.options.tolerance},
                     {"numeric_zero", 1e-10},
                     {"applications", 1e-8}};
  nlohmann::ordered_json v;
  v["liouville"] = r.verdict.holds;
  v["method"]    = method_name(r.verdict.method);
  v["zero_set"]  = r.verdict.zero_set ? group_json(*r.verdict.zero_set) : nlohmann::ordered_json();
  v["periodicity_group"] =
      r.verdict.periodicity_group ? group_json(*r.verdict.periodicity_group) : nlohmann::ordered_json();
  auto w = nlohmann::ordered_json::array();
  for (const auto& x : r.verdict.witnesses)
    w.push_back({{"location", x.location}, {"residual", x.residual}, {"tolerance", x.tolerance}});
  v["witnesses"] = w;
  j["verdict"]   = v;
  if (r.crosscheck)
    j["crosscheck"] = {{"lhs", group_json(r.crosscheck->lhs)},
                       {"rhs", group_json(r.crosscheck->rhs)},
                       {"equal", r.crosscheck->equal}};
  else
    j["crosscheck"] = nullptr;
  auto checks = nlohmann::ordered_json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"value", c.value},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass},
                      {"detail", c.detail}});
  j["checks"]   = checks;
  j["all_pass"] = r.all_pass();
  return j.dump(2) + "\n";
}

}  // namespace levy
