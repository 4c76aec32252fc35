#include "levy/group.hpp"

#include "levy/exact_linalg.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace levy {

namespace {

void check_dims(const std::vector<RationalVector>& vs, std::size_t n) {
  for (const auto& v : vs)
    if (v.size() != n) throw std::invalid_argument("vector dimension does not match group dimension");
}

std::vector<RationalVector> canonical_lattice(const std::vector<RationalVector>& gens,
                                              std::size_t n) {
  std::vector<RationalVector> nonzero;
  for (const auto& g : gens)
    if (!is_zero(g)) nonzero.push_back(g);
  if (nonzero.empty()) return {};
  Integer            den = exact::common_denominator(nonzero);
  exact::IntegerRows rows;
  for (const auto& g : nonzero) {
    IntegerVector r(n);
    for (std::size_t j = 0; j < n; ++j) r[j] = boost::multiprecision::numerator(g[j] * den);
    rows.push_back(std::move(r));
  }
  auto                        hnf = exact::hermite_normal_form(std::move(rows), n);
  std::vector<RationalVector> out;
  for (const auto& r : hnf) {
    RationalVector v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = Rational(r[j], den);
    out.push_back(std::move(v));
  }
  return out;
}

std::string lattice_coefficient(const Rational& q) {
  if (q == 1) return "";
  if (is_integral(q)) return levy::to_string(q);
  return "(" + levy::to_string(q) + ")";
}

}  // namespace

ClosedSubgroup ClosedSubgroup::make(std::size_t n, const std::vector<RationalVector>& subspace,
                                    const std::vector<RationalVector>& lattice, Scale scale) {
  check_dims(subspace, n);
  check_dims(lattice, n);
  ClosedSubgroup g;
  g.n_        = n;
  g.subspace_ = exact::canonical_span(subspace, n);
  std::vector<RationalVector> projected;
  projected.reserve(lattice.size());
  for (const auto& v : lattice) projected.push_back(exact::project_off(v, g.subspace_));
  g.lattice_ = canonical_lattice(projected, n);
  g.scale_   = g.lattice_.empty() ? Scale::Unit : scale;
  return g;
}

ClosedSubgroup ClosedSubgroup::trivial(std::size_t n) { return make(n, {}, {}, Scale::Unit); }

ClosedSubgroup ClosedSubgroup::full(std::size_t n) {
  std::vector<RationalVector> basis;
  for (std::size_t i = 0; i < n; ++i) {
    RationalVector e(n);
    e[i] = 1;
    basis.push_back(std::move(e));
  }
  return make(n, basis, {}, Scale::Unit);
}

std::vector<std::vector<double>> ClosedSubgroup::lattice_numeric() const {
  const double                     s = scale_ == Scale::TwoPi ? 2.0 * std::numbers::pi : 1.0;
  std::vector<std::vector<double>> out;
  for (const auto& v : lattice_) {
    auto d = to_double(v);
    for (auto& x : d) x *= s;
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<std::vector<double>> ClosedSubgroup::subspace_numeric() const {
  std::vector<std::vector<double>> out;
  for (const auto& v : subspace_) out.push_back(to_double(v));
  return out;
}

std::string ClosedSubgroup::to_string() const {
  if (is_trivial()) return "{0}";
  if (is_full()) return n_ == 1 ? "ℝ" : "ℝ^" + std::to_string(n_);
  std::string out;
  if (!subspace_.empty()) {
    out = "span{";
    for (std::size_t i = 0; i < subspace_.size(); ++i) {
      if (i) out += ", ";
      out += levy::to_string(subspace_[i]);
    }
    out += "}";
  }
  if (!lattice_.empty()) {
    if (!out.empty()) out += " ⊕ ";
    const std::string prefix = scale_ == Scale::TwoPi ? "2π·" : "";
    if (n_ == 1) {
      out += prefix + lattice_coefficient(lattice_[0][0]) + "ℤ";
    } else {
      bool standard = lattice_.size() == n_;
      for (std::size_t i = 0; standard && i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
          if (lattice_[i][j] != (i == j ? 1 : 0)) standard = false;
      if (standard) {
        out += prefix + "ℤ^" + std::to_string(n_);
      } else {
        out += prefix + "ℤ⟨";
        for (std::size_t i = 0; i < lattice_.size(); ++i) {
          if (i) out += ", ";
          out += levy::to_string(lattice_[i]);
        }
        out += "⟩";
      }
    }
  }
  return out;
}

ClosedSubgroup subgroup_from_generators(const std::vector<RationalVector>& vectors,
                                        std::size_t n) {
  return ClosedSubgroup::make(n, {}, vectors, Scale::Unit);
}

ClosedSubgroup lattice_preimage_unit(const std::vector<RationalVector>& rows,
                                     const std::vector<RationalVector>& admissible,
                                     std::size_t n) {
  check_dims(rows, n);
  check_dims(admissible, n);
  const auto basis = exact::canonical_span(admissible, n);
  const std::size_t k = basis.size();
  if (k == 0) return ClosedSubgroup::trivial(n);
  if (rows.empty()) return ClosedSubgroup::make(n, basis, {}, Scale::Unit);

  // Restriction M = A B^T (m x k), then integer scaling by the common denominator.
  std::vector<RationalVector> restricted;
  for (const auto& a : rows) {
    RationalVector r(k);
    for (std::size_t j = 0; j < k; ++j) r[j] = dot(a, basis[j]);
    restricted.push_back(std::move(r));
  }
  const Integer      den = exact::common_denominator(restricted);
  exact::IntegerRows m;
  for (const auto& r : restricted) {
    IntegerVector ir(k);
    for (std::size_t j = 0; j < k; ++j) ir[j] = boost::multiprecision::numerator(r[j] * den);
    m.push_back(std::move(ir));
  }
  // U M V = D; with t = V s the condition M t in den*Z^m reads d_i s_i in den*Z.
  const auto snf = exact::smith_normal_form(m, k);

  auto lift = [&](std::size_t col, const Rational& factor) {
    RationalVector xi(n);
    for (std::size_t j = 0; j < k; ++j) {
      const Rational t = Rational(snf.right[j][col]) * factor;
      if (t == 0) continue;
      xi = axpy(t, basis[j], std::move(xi));
    }
    return xi;
  };

  std::vector<RationalVector> kernel, lattice;
  for (std::size_t i = 0; i < k; ++i) {
    if (i < snf.invariants.size())
      lattice.push_back(lift(i, Rational(den, snf.invariants[i])));
    else
      kernel.push_back(lift(i, Rational(1)));
  }
  return ClosedSubgroup::make(n, kernel, lattice, Scale::Unit);
}

ClosedSubgroup lattice_preimage(const std::vector<RationalVector>& rows,
                                const std::vector<RationalVector>& admissible, std::size_t n) {
  auto g = lattice_preimage_unit(rows, admissible, n);
  return ClosedSubgroup::make(n, g.subspace_basis(), g.lattice_basis(), Scale::TwoPi);
}

ClosedSubgroup orthogonal_subgroup(const ClosedSubgroup& group) {
  const std::size_t n          = group.dimension();
  const auto        complement = exact::nullspace(group.subspace_basis(), n);
  auto              g          = lattice_preimage_unit(group.lattice_basis(), complement, n);
  // xi . (s*lambda) in 2*pi*Z  <=>  xi . lambda in (2*pi/s) Z.
  const Scale flipped = group.scale() == Scale::TwoPi ? Scale::Unit : Scale::TwoPi;
  return ClosedSubgroup::make(n, g.subspace_basis(), g.lattice_basis(), flipped);
}

ClosedSubgroup group_sum_closure(const ClosedSubgroup& a, const ClosedSubgroup& b) {
  if (a.dimension() != b.dimension())
    throw std::invalid_argument("group_sum_closure: dimension mismatch");
  const bool la = !a.lattice_basis().empty();
  const bool lb = !b.lattice_basis().empty();
  if (la && lb && a.scale() != b.scale())
    throw std::domain_error("group_sum_closure: lattices of incommensurable scales");
  auto subspace = a.subspace_basis();
  subspace.insert(subspace.end(), b.subspace_basis().begin(), b.subspace_basis().end());
  auto lattice = a.lattice_basis();
  lattice.insert(lattice.end(), b.lattice_basis().begin(), b.lattice_basis().end());
  const Scale s = la ? a.scale() : b.scale();
  return ClosedSubgroup::make(a.dimension(), subspace, lattice, s);
}

bool member(const ClosedSubgroup& group, const RationalVector& x, Scale scale) {
  if (x.size() != group.dimension()) throw std::invalid_argument("member: dimension mismatch");
  const auto p = exact::project_off(x, group.subspace_basis());
  if (is_zero(p)) return true;
  if (group.lattice_basis().empty() || group.scale() != scale) return false;
  const auto c = exact::coordinates(group.lattice_basis(), p);
  if (!c) return false;
  for (const auto& q : *c)
    if (!is_integral(q)) return false;
  return true;
}

bool equals(const ClosedSubgroup& a, const ClosedSubgroup& b) { return a == b; }

bool contains(const ClosedSubgroup& outer, const ClosedSubgroup& inner) {
  if (outer.dimension() != inner.dimension())
    throw std::invalid_argument("contains: dimension mismatch");
  for (const auto& v : inner.subspace_basis())
    if (!is_zero(exact::project_off(v, outer.subspace_basis()))) return false;
  for (const auto& v : inner.lattice_basis())
    if (!member(outer, v, inner.scale())) return false;
  return true;
}

ClosedSubgroup intersect_subspace(const ClosedSubgroup& group,
                                  const std::vector<RationalVector>& subspace) {
  const std::size_t n = group.dimension();
  check_dims(subspace, n);
  const auto normals = exact::nullspace(subspace, n);  // rows spanning S^perp
  if (normals.empty()) return group;

  const auto& e   = group.subspace_basis();
  const auto& lam = group.lattice_basis();
  auto        common = exact::intersect_spans(e, subspace, n);

  // x = E^T t + Lambda^T k lies in S iff N E^T t + N Lambda^T k = 0.
  // Columns of K = N E^T span image(K); C annihilates that image.
  std::vector<RationalVector> k_columns;
  for (const auto& v : e) {
    RationalVector col(normals.size());
    for (std::size_t i = 0; i < normals.size(); ++i) col[i] = dot(normals[i], v);
    k_columns.push_back(std::move(col));
  }
  const auto annihilator = exact::nullspace(k_columns, normals.size());
  std::vector<RationalVector> cl_rows;
  for (const auto& c : annihilator) {
    RationalVector row(lam.size());
    for (std::size_t j = 0; j < lam.size(); ++j) {
      Rational s = 0;
      for (std::size_t i = 0; i < normals.size(); ++i) s += c[i] * dot(normals[i], lam[j]);
      row[j] = s;
    }
    cl_rows.push_back(std::move(row));
  }
  const auto kernel = exact::integer_kernel(cl_rows, lam.size());

  std::vector<RationalVector> lattice;
  for (const auto& kv : kernel) {
    RationalVector w(n);
    for (std::size_t j = 0; j < lam.size(); ++j)
      if (kv[j] != 0) w = axpy(Rational(kv[j]), lam[j], std::move(w));
    // Shift w along E back into S: solve K t = -N w.
    std::vector<RationalVector> k_rows(normals.size(), RationalVector(e.size()));
    RationalVector              rhs(normals.size());
    for (std::size_t i = 0; i < normals.size(); ++i) {
      for (std::size_t j = 0; j < e.size(); ++j) k_rows[i][j] = k_columns[j][i];
      rhs[i] = -dot(normals[i], w);
    }
    auto t = exact::particular_solution(k_rows, rhs, e.size());
    if (!t) throw std::logic_error("intersect_subspace: inconsistent shift");
    for (std::size_t j = 0; j < e.size(); ++j) w = axpy((*t)[j], e[j], std::move(w));
    lattice.push_back(std::move(w));
  }
  return ClosedSubgroup::make(n, common, lattice, group.scale());
}

double distance_to_group(const ClosedSubgroup& group, const std::vector<double>& x) {
  const std::size_t n = group.dimension();
  if (x.size() != n) throw std::invalid_argument("distance_to_group: dimension mismatch");
  Eigen::VectorXd p = Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(n));
  const auto      sub = group.subspace_numeric();
  if (!sub.empty()) {
    Eigen::MatrixXd e(n, sub.size());
    for (std::size_t j = 0; j < sub.size(); ++j)
      for (std::size_t i = 0; i < n; ++i) e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = sub[j][i];
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(e);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(sub.size()));
    p -= q * (q.transpose() * p);
  }
  const auto lat = group.lattice_numeric();
  if (lat.empty()) return p.norm();
  Eigen::MatrixXd l(n, lat.size());
  for (std::size_t j = 0; j < lat.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) l(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = lat[j][i];
  Eigen::VectorXd c = l.colPivHouseholderQr().solve(p);
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = std::round(c(i));
  return (p - l * c).norm();
}

}  // namespace levy
