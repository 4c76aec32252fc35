// levy: command-line front end for model files.
//
// Exit codes: 0 success, 1 a check failed, 2 bad input.

#include "levy/bernstein.hpp"
#include "levy/model_io.hpp"
#include "levy/operator_lab.hpp"
#include "levy/zero_set.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace levy;
using json = nlohmann::ordered_json;

constexpr int kOk = 0, kCheckFailed = 1, kInputError = 2;

struct Flags {
  std::string              model;
  std::vector<double>      xi;
  std::optional<double>    tolerance;
  std::optional<std::size_t> grid;
  std::optional<double>    period;
  bool                     numeric = false;
  std::string              out;
  bool                     json = false;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("model", f.model, "model file")->required();
  sub->add_option("--tolerance", f.tolerance, "residual tolerance (default 1e-10)");
  sub->add_option("--grid", f.grid, "grid points per axis (power of two)");
  sub->add_option("--period", f.period, "grid period L");
  sub->add_flag("--numeric", f.numeric, "force the numeric heuristic");
  sub->add_option("--out", f.out, "write output to this file");
  sub->add_flag("--json", f.json, "structured output on stdout");
}

ReportOptions report_options(const Flags& f) {
  ReportOptions o;
  if (f.tolerance) o.tolerance = *f.tolerance;
  o.grid_points   = f.grid;
  o.grid_period   = f.period;
  o.force_numeric = f.numeric;
  return o;
}

void emit(const Flags& f, const std::string& text) {
  if (!f.out.empty()) {
    std::ofstream os(f.out, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write '" + f.out + "'");
    os << text;
  } else {
    std::cout << text;
  }
}

std::string complex_text(Complex z) {
  std::ostringstream os;
  os.precision(12);
  os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

std::string vec_text(const RealVector& v) {
  std::ostringstream os;
  os.precision(10);
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ")";
  return os.str();
}

LiouvilleVerdict verdict_for(const ModelFile& m, const Flags& f) {
  DecideOptions d;
  d.force_numeric = f.numeric || !m.is_exact();
  if (f.tolerance) d.zero_threshold = *f.tolerance;
  return decide_liouville(m.triplet(), d);
}

int cmd_validate(const Flags& f) {
  const auto m = load_model(f.model);
  const auto t = m.triplet();
  if (f.json) {
    json j{{"valid", true}, {"name", m.name}, {"dimension", m.dimension},
           {"exact", m.is_exact()}, {"atoms", m.atoms.size()}, {"hash", model_hash(m)}};
    emit(f, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "valid: " << (m.name.empty() ? f.model : m.name) << " (dim " << m.dimension << ", "
       << m.atoms.size() << " atoms, " << (m.is_exact() ? "exact" : "numeric") << ")\n";
    emit(f, os.str());
  }
  return kOk;
}

int cmd_eval(const Flags& f) {
  const auto m = load_model(f.model);
  if (f.xi.size() != m.dimension)
    throw std::invalid_argument("expected " + std::to_string(m.dimension) + " coordinates for xi");
  const auto s = SymbolHandle::from_triplet(m.triplet());
  const auto v = eval_symbol(s, f.xi);
  if (f.json)
    emit(f, json{{"xi", f.xi}, {"re", v.real()}, {"im", v.imag()}}.dump(2) + "\n");
  else
    emit(f, "psi" + vec_text(f.xi) + " = " + complex_text(v) + "\n");
  return kOk;
}

int cmd_zero_set(const Flags& f) {
  const auto m = load_model(f.model);
  const auto v = verdict_for(m, f);
  std::ostringstream os;
  json j;
  j["method"] = method_name(v.method);
  if (v.method == VerdictMethod::Exact) {
    const auto& z = *v.zero_set;
    os << "{ψ=0} = " << z.to_string() << "\n";
    for (const auto& b : z.subspace_basis()) os << "  subspace direction " << to_string(b) << "\n";
    for (const auto& b : z.lattice_basis())
      os << "  lattice generator 2π·" << to_string(b) << "\n";
    j["zero_set"] = z.to_string();
  } else {
    os << "{ψ=0} (numeric heuristic): ";
    if (v.witnesses.empty())
      os << "no zero off the origin; smallest residual " << v.min_residual_off_origin << "\n";
    else
      os << v.witnesses.size() << " zeros off the origin\n";
    auto w = json::array();
    for (const auto& x : v.witnesses) {
      os << "  ξ = " << vec_text(x.location) << ", |ψ| = " << x.residual << "\n";
      w.push_back({{"location", x.location}, {"residual", x.residual}});
    }
    j["witnesses"] = w;
  }
  emit(f, f.json ? j.dump(2) + "\n" : os.str());
  return kOk;
}

int cmd_liouville(const Flags& f) {
  const auto m = load_model(f.model);
  const auto v = verdict_for(m, f);
  std::ostringstream os;
  os << "Liouville: " << (v.holds ? "YES" : "NO");
  if (v.method == VerdictMethod::Exact) {
    if (!v.holds)
      os << "; {ψ=0} = " << v.zero_set->to_string() << "; {ψ=0}^⊥ = " << v.periodicity_group->to_string();
  } else {
    os << " (numeric heuristic";
    if (!v.witnesses.empty())
      os << "; zero at ξ = " << vec_text(v.witnesses.front().location) << ", |ψ| = " << v.witnesses.front().residual;
    os << ")";
  }
  os << "\n";
  if (f.json) {
    json j{{"liouville", v.holds}, {"method", method_name(v.method)}};
    j["zero_set"]          = v.zero_set ? json(v.zero_set->to_string()) : json();
    j["periodicity_group"] = v.periodicity_group ? json(v.periodicity_group->to_string()) : json();
    emit(f, j.dump(2) + "\n");
  } else {
    emit(f, os.str());
  }
  return kOk;
}

int cmd_crosscheck(const Flags& f) {
  const auto m = load_model(f.model);
  if (!m.is_exact()) throw std::invalid_argument("crosscheck needs exact rational model data");
  const auto c = crosscheck_corollary2(m.triplet());
  if (f.json) {
    emit(f, json{{"lhs", c.lhs.to_string()}, {"rhs", c.rhs.to_string()}, {"equal", c.equal}}.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "{ψ=0}^⊥        = " << c.lhs.to_string() << "\n"
       << "closure(G + W) = " << c.rhs.to_string() << "\n"
       << "equality=" << (c.equal ? "true" : "false") << "\n";
    emit(f, os.str());
  }
  return c.equal ? kOk : kCheckFailed;
}

int cmd_subordinate(const Flags& f) {
  const auto m = load_model(f.model);
  if (!m.bernstein) throw std::invalid_argument("model has no [bernstein] section");
  const auto g  = make_bernstein(*m.bernstein);
  const auto hz = halfplane_zero_classification(g);
  std::ostringstream os;
  os << "g = " << g.describe() << "\n";
  bool ok = true;
  json j{{"g", g.describe()}};
  switch (hz.kind) {
    case HalfplaneZeros::Kind::OnlyZeroAtOrigin:
      os << "g vanishes on the closed right half-plane only at 0: {g∘ψ=0} = {ψ=0}\n";
      j["zeros"] = "origin";
      break;
    case HalfplaneZeros::Kind::ImaginaryAxisLattice:
      os << "g vanishes on the imaginary axis at iη, η ∈ " << hz.lattice->to_string() << "\n";
      j["zeros"] = hz.lattice->to_string();
      break;
    case HalfplaneZeros::Kind::Heuristic:
      os << "g zeros on the imaginary axis (numeric): " << hz.evidence.size() << " candidates\n";
      j["zeros"] = "heuristic";
      break;
  }
  if (m.is_exact()) {
    Corollary1Options o;
    if (f.tolerance) o.residual_tolerance = *f.tolerance;
    const auto c = corollary1_equivalence_check(g, m.triplet(), o);
    os << c.detail << "\n";
    if (c.condition_met) {
      ok = c.zero_sets_equal;
      os << "zero-set preservation: " << (ok ? "verified" : "FAILED") << "\n";
    } else {
      os << "zero-set preservation not guaranteed; " << (c.zero_sets_equal ? "holds" : "fails")
         << " on the tested points\n";
    }
    j["condition_met"]   = c.condition_met;
    j["zero_sets_equal"] = c.zero_sets_equal;
  }
  emit(f, f.json ? j.dump(2) + "\n" : os.str());
  return ok ? kOk : kCheckFailed;
}

int cmd_verify(const Flags& f) {
  const auto m = load_model(f.model);
  const auto r = build_report(m, report_options(f));
  if (f.json) {
    emit(f, report_json(r));
  } else {
    std::ostringstream os;
    os << "Liouville: " << (r.verdict.holds ? "YES" : "NO") << " (" << method_name(r.verdict.method) << ")\n";
    for (const auto& c : r.checks)
      os << (c.pass ? "PASS " : "FAIL ") << c.name << ": value " << c.value << ", tolerance "
         << c.tolerance << "; " << c.detail << "\n";
    emit(f, os.str());
  }
  return r.all_pass() ? kOk : kCheckFailed;
}

int cmd_report(const Flags& f) {
  const auto m = load_model(f.model);
  const auto r = build_report(m, report_options(f));
  const auto text = report_json(r);
  if (f.json || f.out.empty())
    std::cout << text;
  if (!f.out.empty()) {
    std::ofstream os(f.out, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write '" + f.out + "'");
    os << text;
  }
  return r.all_pass() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Liouville property of Lévy generators"};
  app.require_subcommand(1);
  app.set_version_flag("--version", levy::kToolVersion);
  Flags f;

  struct Entry {
    const char* name;
    const char* help;
    int (*run)(const Flags&);
  };
  const Entry entries[] = {
      {"validate", "parse and validate a model", cmd_validate},
      {"eval", "evaluate psi at a point", cmd_eval},
      {"zero-set", "print the zero set {psi = 0}", cmd_zero_set},
      {"liouville", "decide the Liouville property", cmd_liouville},
      {"crosscheck", "compare {psi=0}^perp with the triplet characterization", cmd_crosscheck},
      {"subordinate", "zero-set preservation under the [bernstein] function", cmd_subordinate},
      {"verify", "harmonic, fixed-point and cross-application checks", cmd_verify},
      {"report", "full JSON report", cmd_report},
  };
  std::vector<std::pair<CLI::App*, const Entry*>> subs;
  for (const auto& e : entries) {
    auto* sub = app.add_subcommand(e.name, e.help);
    add_common(sub, f);
    if (std::string(e.name) == "eval") sub->add_option("xi", f.xi, "point xi")->required();
    subs.emplace_back(sub, &e);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    for (auto& [sub, e] : subs)
      if (sub->parsed()) return e->run(f);
  } catch (const ParseError& e) {
    std::cerr << f.model << ":" << e.line() << ":" << e.column() << ": error"
              << (e.field().empty() ? "" : " [" + e.field() + "]") << ": " << e.message() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
