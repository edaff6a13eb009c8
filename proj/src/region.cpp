// SPDX-License-Identifier: Apache-2.0

#include "improj/region.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

namespace improj {

std::string rel_str(Rel r) {
  switch (r) {
    case Rel::LT: return "<";
    case Rel::LE: return "<=";
    case Rel::EQ: return "=";
    case Rel::NE: return "!=";
    case Rel::GT: return ">";
    case Rel::GE: return ">=";
  }
  return "?";
}

bool rel_holds(Rel r, int s) {
  switch (r) {
    case Rel::LT: return s < 0;
    case Rel::LE: return s <= 0;
    case Rel::EQ: return s == 0;
    case Rel::NE: return s != 0;
    case Rel::GT: return s > 0;
    case Rel::GE: return s >= 0;
  }
  return false;
}

namespace {

Rel relaxed(Rel r) {
  switch (r) {
    case Rel::LT: return Rel::LE;
    case Rel::GT: return Rel::GE;
    default: return r;
  }
}

}  // namespace

Region Region::full(int nvars) {
  Region r;
  r.nvars = nvars;
  r.full_space = true;
  return r;
}

Region Region::empty(int nvars) {
  Region r;
  r.nvars = nvars;
  return r;
}

bool Region::member(const std::vector<Rat>& y) const {
  if (static_cast<int>(y.size()) != nvars)
    throw Error(ErrorCode::Precondition, "region dimension mismatch");
  if (full_space) return true;
  for (const auto& p : removed_points)
    if (p == y) return false;
  for (const auto& p : added_points)
    if (p == y) return true;
  for (const auto& clause : clauses) {
    bool ok = true;
    for (const auto& atom : clause.atoms) {
      int s = sign(atom.poly.eval_real(y));
      if (!rel_holds(atom.rel, s)) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

bool Region::member_closed(const std::vector<Rat>& y) const {
  if (full_space) return true;
  for (const auto& p : added_points)
    if (p == y) return true;
  for (const auto& clause : clauses) {
    bool ok = true;
    for (const auto& atom : clause.atoms) {
      if (atom.rel == Rel::NE) continue;
      int s = sign(atom.poly.eval_real(y));
      if (!rel_holds(relaxed(atom.rel), s)) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

Region Region::pulled_back(const AffineTransform& t) const {
  t.validate();
  if (t.dim() != nvars)
    throw Error(ErrorCode::Precondition, "pullback dimension mismatch");
  if (full_space) return *this;
  // y -> A y + Im(b) substituted into every atom polynomial.
  int n = nvars;
  std::vector<MultiPoly> repl;
  repl.reserve(n);
  std::vector<Rat> shift = t.imag_shift();
  for (int i = 0; i < n; ++i) {
    MultiPoly row = MultiPoly::constant(n, RatC(shift[i]));
    for (int j = 0; j < n; ++j) {
      if (t.A[i][j] == 0) continue;
      row = row + MultiPoly::variable(n, j).scaled(RatC(t.A[i][j]));
    }
    repl.push_back(std::move(row));
  }
  Region out;
  out.nvars = n;
  for (const auto& clause : clauses) {
    Clause c;
    for (const auto& atom : clause.atoms)
      c.atoms.push_back({atom.poly.subst(repl), atom.rel});
    out.clauses.push_back(std::move(c));
  }
  // Points map through the inverse of y -> Ay + Im(b).
  RatMatrix ainv = matrix_inverse(t.A);
  auto preimage = [&](const std::vector<Rat>& p) {
    std::vector<Rat> d(p.size());
    for (size_t i = 0; i < p.size(); ++i) d[i] = p[i] - shift[i];
    return matrix_apply(ainv, d);
  };
  for (const auto& p : added_points) out.added_points.push_back(preimage(p));
  for (const auto& p : removed_points)
    out.removed_points.push_back(preimage(p));
  return out;
}

std::string Region::str() const {
  if (full_space) return "R^" + std::to_string(nvars);
  if (clauses.empty() && added_points.empty()) return "{}";
  std::ostringstream os;
  bool first = true;
  for (const auto& clause : clauses) {
    if (!first) os << "  U  ";
    first = false;
    if (clause.atoms.empty()) {
      os << "{ all y }";
      continue;
    }
    os << "{ ";
    for (size_t i = 0; i < clause.atoms.size(); ++i) {
      if (i) os << "  and  ";
      os << clause.atoms[i].poly.str("y") << " " << rel_str(clause.atoms[i].rel)
         << " 0";
    }
    os << " }";
  }
  auto points = [&os](const char* label,
                      const std::vector<std::vector<Rat>>& pts) {
    if (pts.empty()) return;
    os << "  " << label << "  {";
    for (size_t i = 0; i < pts.size(); ++i) {
      if (i) os << ", ";
      os << "(";
      for (size_t j = 0; j < pts[i].size(); ++j) {
        if (j) os << ", ";
        os << rat_str(pts[i][j]);
      }
      os << ")";
    }
    os << "}";
  };
  points("plus points", added_points);
  points("minus points", removed_points);
  return os.str();
}

std::string Region::json() const {
  nlohmann::json out;
  out["nvars"] = nvars;
  out["full_space"] = full_space;
  nlohmann::json cl = nlohmann::json::array();
  for (const auto& clause : clauses) {
    nlohmann::json atoms = nlohmann::json::array();
    for (const auto& atom : clause.atoms) {
      atoms.push_back({{"poly", nlohmann::json::parse(atom.poly.json())},
                       {"rel", rel_str(atom.rel)}});
    }
    cl.push_back(std::move(atoms));
  }
  out["clauses"] = std::move(cl);
  auto pts = [](const std::vector<std::vector<Rat>>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& p : v) {
      nlohmann::json q = nlohmann::json::array();
      for (const auto& x : p) q.push_back(rat_str(x));
      a.push_back(std::move(q));
    }
    return a;
  };
  out["added_points"] = pts(added_points);
  out["removed_points"] = pts(removed_points);
  out["text"] = str();
  return out.dump();
}

std::string RegionResult::json() const {
  nlohmann::json out;
  out["delegated"] = delegated;
  if (delegated)
    out["reason"] = reason;
  else
    out["region"] = nlohmann::json::parse(region.json());
  return out.dump();
}

}  // namespace improj
