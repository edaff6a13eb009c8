// SPDX-License-Identifier: Apache-2.0

#include "improj/formulas.hpp"

#include <nlohmann/json.hpp>

#include "improj/realroots.hpp"

namespace improj {

namespace {

MultiPoly yvar(int n, int i) { return MultiPoly::variable(n, i); }

MultiPoly constant(int n, const Rat& v) {
  return MultiPoly::constant(n, RatC(v));
}

Atom atom(MultiPoly p, Rel r) { return Atom{std::move(p), r}; }

std::vector<Rat> origin(int n) { return std::vector<Rat>(n, Rat(0)); }

// Region of z1^2 + gamma (class 1a.1): one or two lines.
Region region_1a1(int n, const RatC& gamma) {
  Region r = Region::empty(n);
  MultiPoly y1 = yvar(n, 0);
  if (gamma.im == 0 && gamma.re <= 0) {
    r.clauses.push_back({{atom(y1, Rel::EQ)}});
    return r;
  }
  // two lines y1 = +-w, w^2 = (re + |gamma|)/2
  Rat norm2 = gamma.norm2();
  Rat absval;
  if (rational_sqrt(norm2, &absval)) {
    Rat w2 = (gamma.re + absval) / 2;
    r.clauses.push_back({{atom(y1 * y1 - constant(n, w2), Rel::EQ)}});
  } else {
    MultiPoly u = (y1 * y1).scaled(RatC(2)) - constant(n, gamma.re);
    r.clauses.push_back({{atom(u * u - constant(n, norm2), Rel::EQ),
                          atom(u, Rel::GE)}});
  }
  return r;
}

// Region of z1^2 + gamma z2 (class 1a.2), gamma != 0.
Region region_1a2(int n, int lin, const RatC& gamma) {
  Region r = Region::empty(n);
  MultiPoly y1 = yvar(n, 0), yk = yvar(n, lin);
  if (gamma.im == 0) {
    r.clauses.push_back({{atom(y1, Rel::NE)}});
    r.clauses.push_back({{atom(y1, Rel::EQ), atom(yk, Rel::EQ)}});
  } else {
    r.clauses.push_back({{atom(y1 * y1 + yk.scaled(RatC(gamma.im)), Rel::GE)}});
  }
  return r;
}

// Region of z1 z2 + gamma (class 1b).
Region region_1b(int n, const RatC& gamma) {
  Region r = Region::empty(n);
  MultiPoly prod = yvar(n, 0) * yvar(n, 1);
  if (gamma.is_zero()) {
    r.clauses.push_back({{atom(prod, Rel::EQ)}});
    return r;
  }
  if (gamma.im == 0) {
    if (gamma.re > 0) {
      r.clauses.push_back({{atom(prod, Rel::GT),
                            atom(prod - constant(n, gamma.re), Rel::LE)}});
    } else {
      r.clauses.push_back({{atom(prod, Rel::LT),
                            atom(prod - constant(n, gamma.re), Rel::GE)}});
    }
    r.added_points.push_back(origin(n));
    return r;
  }
  // gamma non-real: (2 y1y2 - re)^2 <= |gamma|^2, minus the origin
  MultiPoly u = prod.scaled(RatC(2)) - constant(n, gamma.re);
  r.clauses.push_back({{atom(u * u - constant(n, gamma.norm2()), Rel::LE)}});
  r.removed_points.push_back(origin(n));
  return r;
}

// Region of z2(z1 - alpha z2) + gamma (class 2b), alpha non-real.
Region region_2b(int n, const RatC& alpha, const RatC& gamma) {
  if (gamma.is_zero()) return Region::full(n);
  Region r = Region::empty(n);
  MultiPoly y1 = yvar(n, 0), y2 = yvar(n, 1);
  if (gamma.im == 0) {
    // R^2 minus the origin
    r.clauses.push_back({{atom(y1, Rel::NE)}});
    r.clauses.push_back({{atom(y2, Rel::NE)}});
    return r;
  }
  Rat prod = alpha.im * gamma.im;
  if (prod > 0) return Region::full(n);
  Rat c = -4 * prod;  // > 0; removed open segment y2=0, y1^2 < c
  r.clauses.push_back({{atom(y2, Rel::NE)}});
  r.clauses.push_back(
      {{atom(y2, Rel::EQ), atom(y1 * y1 - constant(n, c), Rel::GE)}});
  return r;
}

// Region of z1^2 + z2^2 + gamma (class 2c.1).
Region region_2c1(int n, const RatC& gamma) {
  if (gamma.im == 0 && gamma.re <= 0) return Region::full(n);
  Region r = Region::empty(n);
  MultiPoly s = yvar(n, 0) * yvar(n, 0) + yvar(n, 1) * yvar(n, 1);
  Rat absval;
  if (rational_sqrt(gamma.norm2(), &absval)) {
    Rat r2 = (gamma.re + absval) / 2;
    r.clauses.push_back({{atom(s - constant(n, r2), Rel::GE)}});
  } else {
    MultiPoly u = s.scaled(RatC(2)) - constant(n, gamma.re);
    r.clauses.push_back({{atom(u, Rel::GE),
                          atom(u * u - constant(n, gamma.norm2()), Rel::GE)}});
  }
  return r;
}

}  // namespace

RegionResult region_conic(const NormalFormResult& nf) {
  RegionResult out;
  if (!nf.exact) {
    out.delegated = true;
    out.reason = "normalization is interval-valued; membership stays exact "
                 "via the oracle";
    return out;
  }
  const RatC& g = *nf.gamma;
  switch (nf.cls) {
    case ConicClass::C1a1: out.region = region_1a1(2, g); break;
    case ConicClass::C1a2: out.region = region_1a2(2, 1, g); break;
    case ConicClass::C1b: out.region = region_1b(2, g); break;
    case ConicClass::C2a1:
    case ConicClass::C2a2: out.region = Region::full(2); break;
    case ConicClass::C2b: out.region = region_2b(2, *nf.alpha, g); break;
    case ConicClass::C2c1: out.region = region_2c1(2, g); break;
    case ConicClass::C2c2:
      out.delegated = true;
      out.reason = "class 2c.2: the boundary may not be algebraic; membership "
                   "is decided by the exact oracle and boundary candidates "
                   "are available separately";
      return out;
  }
  return out;
}

RegionResult region_of_conic_poly(const MultiPoly& p) {
  NormalFormResult nf = normalize_conic(p);
  RegionResult rr = region_conic(nf);
  if (rr.delegated) return rr;
  rr.region = rr.region.pulled_back(nf.transform->inverse());
  return rr;
}

// ---------------------------------------------------------------------------
// n-dimensional

namespace {

// Embed a 2-variable region into n variables at positions (v0, v1); isolated
// points become subspace clauses.
Region embed_region(const Region& r2, int n, int v0, int v1) {
  if (r2.full_space) return Region::full(n);
  Region out = Region::empty(n);
  auto remap = [&](const MultiPoly& q) {
    MultiPoly m(n);
    for (const auto& [e, c] : q.terms()) {
      ExpVec w(n, 0);
      w[v0] = e[0];
      w[v1] = e[1];
      m.add_term(w, c);
    }
    return m;
  };
  std::vector<Clause> base;
  for (const auto& clause : r2.clauses) {
    Clause c;
    for (const auto& a : clause.atoms) c.atoms.push_back({remap(a.poly), a.rel});
    base.push_back(std::move(c));
  }
  // Subtract every removed subspace: conjoin (y_v0 != p0 or y_v1 != p1),
  // distributing over the clause list.
  for (const auto& pt : r2.removed_points) {
    std::vector<Clause> next;
    for (const auto& clause : base) {
      for (int which = 0; which < 2; ++which) {
        Clause c = clause;
        int v = which == 0 ? v0 : v1;
        c.atoms.push_back({yvar(n, v) - constant(n, pt[which]), Rel::NE});
        next.push_back(std::move(c));
      }
    }
    base = std::move(next);
  }
  out.clauses = std::move(base);
  for (const auto& pt : r2.added_points) {
    Clause c;
    c.atoms.push_back({yvar(n, v0) - constant(n, pt[0]), Rel::EQ});
    c.atoms.push_back({yvar(n, v1) - constant(n, pt[1]), Rel::EQ});
    out.clauses.push_back(std::move(c));
  }
  return out;
}

MultiPoly conic_for_low_rank(const NdNormalFormResult& nf) {
  // Normal-form conic matching the first one or two quadratic variables.
  MultiPoly z1 = MultiPoly::variable(2, 0), z2 = MultiPoly::variable(2, 1);
  MultiPoly quad =
      nf.rank_one ? z1 * z1 : z1 * z1 - z2 * z2;
  switch (nf.nd_case) {
    case NdCase::A: return quad;
    case NdCase::E: return quad + MultiPoly::constant(2, *nf.gamma);
    case NdCase::B: return quad + z2;                       // rank-one only
    case NdCase::C: return quad + z2.scaled(*nf.alpha_nd);  // rank-one only
    default:
      throw Error(ErrorCode::Internal, "low-rank conic for full-space case");
  }
}

}  // namespace

Region region_quadric_hyperbolic_nd(const NdNormalFormResult& nf) {
  int n = nf.n;
  if (n < 3)
    throw Error(ErrorCode::Precondition, "nd region needs n >= 3");
  int rank = nf.rank_one ? 1 : nf.j + 1;

  // Full-space cases first.
  if (nf.nd_case == NdCase::D) return Region::full(n);
  if (nf.nd_case == NdCase::C && !nf.rank_one) return Region::full(n);

  if (rank <= 2) {
    // Delegate to the conic formulas on the quadratic (and linear) variables.
    if (nf.nd_case == NdCase::B && !nf.rank_one) {
      // z1^2 - z2^2 + z_k: not a conic; punctured-subspace form directly.
      Region r = Region::empty(n);
      r.clauses.push_back({{atom(yvar(n, 0), Rel::NE)}});
      r.clauses.push_back({{atom(yvar(n, 1), Rel::NE)}});
      r.clauses.push_back({{atom(yvar(n, 0), Rel::EQ),
                            atom(yvar(n, 1), Rel::EQ),
                            atom(yvar(n, nf.linear_var), Rel::EQ)}});
      return r;
    }
    MultiPoly conic = conic_for_low_rank(nf);
    RegionResult rr = region_of_conic_poly(conic);
    if (rr.delegated)
      throw Error(ErrorCode::Internal, "low-rank nd conic unexpectedly delegated");
    int v1;
    if (nf.rank_one)
      v1 = (nf.nd_case == NdCase::B || nf.nd_case == NdCase::C) ? nf.linear_var
                                                                : 1;
    else
      v1 = 1;
    return embed_region(rr.region, n, 0, v1);
  }

  // rank >= 3: j = rank-1 positives, one negative at index rank-1.
  int j = nf.j;
  int neg = rank - 1;
  MultiPoly u = yvar(n, neg) * yvar(n, neg);
  for (int i = 0; i < j; ++i) u = u - yvar(n, i) * yvar(n, i);

  auto subspace_clause = [&]() {
    Clause c;
    for (int i = 0; i < rank; ++i) c.atoms.push_back({yvar(n, i), Rel::EQ});
    return c;
  };

  switch (nf.nd_case) {
    case NdCase::A: {
      Region r = Region::empty(n);
      r.clauses.push_back({{atom(u, Rel::LE)}});
      return r;
    }
    case NdCase::B: {
      Region r = Region::empty(n);
      for (int i = 0; i < rank; ++i)
        r.clauses.push_back({{atom(yvar(n, i), Rel::NE)}});
      Clause c = subspace_clause();
      c.atoms.push_back({yvar(n, nf.linear_var), Rel::EQ});
      r.clauses.push_back(std::move(c));
      return r;
    }
    case NdCase::E: {
      const RatC& g = *nf.gamma;
      Region r = Region::empty(n);
      if (g.im == 0 && g.re > 0) {
        r.clauses.push_back({{atom(u, Rel::LT)}});
        r.clauses.push_back(subspace_clause());
        return r;
      }
      if (g.im == 0) {  // g.re < 0 (nonzero by case E)
        r.clauses.push_back({{atom(u - constant(n, -g.re), Rel::LE)}});
        return r;
      }
      // non-real gamma: u <= (|g| - re)/2, minus the subspace
      std::vector<Clause> conds;
      Rat absval;
      if (rational_sqrt(g.norm2(), &absval)) {
        Rat bound = (absval - g.re) / 2;
        conds.push_back({{atom(u - constant(n, bound), Rel::LE)}});
      } else {
        MultiPoly v = u.scaled(RatC(2)) + constant(n, g.re);
        conds.push_back({{atom(v, Rel::LE)}});
        conds.push_back({{atom(v, Rel::GE),
                          atom(v * v - constant(n, g.norm2()), Rel::LE)}});
      }
      for (const auto& cond : conds) {
        for (int i = 0; i < rank; ++i) {
          Clause c = cond;
          c.atoms.push_back({yvar(n, i), Rel::NE});
          r.clauses.push_back(std::move(c));
        }
      }
      return r;
    }
    default:
      throw Error(ErrorCode::Internal, "unhandled nd case");
  }
}

// ---------------------------------------------------------------------------
// odd-degree full plane

FullPlaneReport full_plane_odd_degree_check(
    const MultiPoly& p, const std::vector<MultiPoly>& factors) {
  if (!factors.empty()) {
    MultiPoly prod = MultiPoly::constant(p.nvars(), RatC(1));
    for (const auto& f : factors) prod = prod * f;
    if (prod != p)
      throw Error(ErrorCode::Precondition,
                  "factor product does not equal the polynomial");
  }
  FullPlaneReport rep;
  auto check_one = [](const MultiPoly& q) {
    auto d = q.degree();
    if (!d || *d < 1 || *d % 2 == 0) return false;
    BinaryForm f = initial_binary_form(q);
    return !binary_form_has_real_root(f).has_root;
  };
  if (factors.empty()) {
    if (p.nvars() != 2)
      throw Error(ErrorCode::Precondition, "full-plane check needs nvars=2");
    rep.full_plane = check_one(p);
    return rep;
  }
  for (size_t i = 0; i < factors.size(); ++i) {
    if (check_one(factors[i])) {
      rep.full_plane = true;
      rep.witness_factor = static_cast<int>(i);
      return rep;
    }
  }
  return rep;
}

std::string FullPlaneReport::json() const {
  nlohmann::json out;
  out["verdict"] = full_plane ? "full-plane" : "unknown";
  if (full_plane && witness_factor >= 0) out["witness_factor"] = witness_factor;
  return out.dump();
}

// ---------------------------------------------------------------------------
// boundary candidates for class 2c.2

namespace {

// Keep only the listed variables (others must be absent).
MultiPoly project_vars(const MultiPoly& p, const std::vector<int>& keep,
                       int out_nvars) {
  MultiPoly out(out_nvars);
  for (const auto& [e, c] : p.terms()) {
    ExpVec w(out_nvars, 0);
    uint32_t seen = 0;
    for (size_t k = 0; k < keep.size(); ++k) {
      w[k] = e[keep[k]];
      seen += e[keep[k]];
    }
    if (seen != exp_total(e))
      throw Error(ErrorCode::Internal, "projection drops live variables");
    out.add_term(w, c);
  }
  return out;
}

}  // namespace

std::vector<const MultiPoly*> BoundaryCandidates::all() const {
  std::vector<const MultiPoly*> v{&octic};
  if (q1) v.push_back(&*q1);
  if (q2) v.push_back(&*q2);
  for (const auto& l : special_lines) v.push_back(&l);
  return v;
}

std::string BoundaryCandidates::json() const {
  nlohmann::json out;
  out["octic"] = octic.str("y");
  out["octic_terms"] = nlohmann::json::parse(octic.json());
  if (q1) out["q1"] = q1->str("y");
  if (q2) out["q2"] = q2->str("y");
  nlohmann::json lines = nlohmann::json::array();
  for (const auto& l : special_lines) lines.push_back(l.str("y"));
  out["special_lines"] = std::move(lines);
  return out.dump();
}

BoundaryCandidates boundary_candidates_2c2(const MultiPoly& p) {
  if (conic_class(p) != ConicClass::C2c2)
    throw Error(ErrorCode::Precondition,
                "boundary candidates are defined for class 2c.2 only");
  RatC a = p.coeff({2, 0});
  if (a.is_zero())
    throw Error(ErrorCode::Internal, "class 2c.2 must have a z1^2 term");
  MultiPoly work = p.scaled(a.inv());

  // Symbolic elimination over (x1, x2, y1, y2).
  RealSplit s = split_real_imag(work);
  auto im_rows = s.p_im.coeffs_in(0);
  auto re_rows = s.p_re.coeffs_in(0);
  MultiPoly M = im_rows[0];
  MultiPoly L = im_rows.size() > 1 ? im_rows[1] : MultiPoly(4);
  MultiPoly P0 = re_rows[0];
  MultiPoly P1 = re_rows.size() > 1 ? re_rows[1] : MultiPoly(4);
  MultiPoly R0 = M * M - P1 * M * L + P0 * L * L;  // quartic in x2

  MultiPoly disc = discriminant(R0, 1);  // eliminates x2
  BoundaryCandidates out{project_vars(odd_multiplicity_part(disc), {2, 3}, 2),
                         std::nullopt,
                         std::nullopt,
                         {}};
  if (out.octic.degree() && *out.octic.degree() > 8)
    throw Error(ErrorCode::Internal, "odd part exceeds degree 8");

  // L = l1 x2 + l0(y); l1 is a rational constant.
  auto l_rows = L.coeffs_in(1);
  MultiPoly l0 = l_rows.empty() ? MultiPoly(4) : l_rows[0];
  MultiPoly l1p = l_rows.size() > 1 ? l_rows[1] : MultiPoly(4);
  Rat l1 = l1p.is_zero() ? Rat(0) : l1p.constant_term().re;

  if (l1 != 0) {
    // Q1: M evaluated on the L = 0 line, cleared by l1^2.
    auto m_rows = M.coeffs_in(1);
    auto mrow = [&](size_t k) {
      return k < m_rows.size() ? m_rows[k] : MultiPoly(4);
    };
    MultiPoly q1 = mrow(2) * l0 * l0 - mrow(1) * l0.scaled(RatC(l1)) +
                   mrow(0).scaled(RatC(l1 * l1));
    if (!q1.is_zero())
      out.q1 = canonical_primitive(project_vars(q1, {2, 3}, 2));
  } else if (!l0.is_zero()) {
    // The L = 0 locus is a line in y-space; boundary points on it come from
    // the on-line elimination in x1.
    MultiPoly line2 = canonical_primitive(project_vars(l0, {2, 3}, 2));
    out.special_lines.push_back(line2);
    // Substitute the line into the system: solve l0 = 0 for y1 (coefficient
    // 2 from the z1^2 term is always present).
    auto l0_rows = project_vars(l0, {2, 3}, 2).coeffs_in(0);  // in y1
    if (l0_rows.size() == 2 && !l0_rows[1].is_zero()) {
      MultiPoly y1_sub =
          -l0_rows[0].scaled(l0_rows[1].constant_term().inv());
      // y1 -> y1_sub(y2) inside the 4-var system, then drop y1.
      auto on_line = [&](const MultiPoly& q) {
        MultiPoly sub4(4);
        for (const auto& [e, c] : y1_sub.terms())
          sub4.add_term({0, 0, e[0], e[1]}, c);
        return q.subst_var(2, sub4);
      };
      MultiPoly re_l = on_line(s.p_re), im_l = on_line(s.p_im);
      if (im_l.degree_in(1) >= 1 && re_l.degree_in(1) >= 1) {
        MultiPoly t = resultant(re_l, im_l, 1);  // eliminate x2
        if (t.degree_in(0) >= 1) {
          MultiPoly d2 = discriminant(t, 0);  // eliminate x1 -> y2 only
          if (!d2.is_zero() && d2.degree() && *d2.degree() > 0) {
            MultiPoly q2 = project_vars(odd_multiplicity_part(d2), {2, 3}, 2);
            if (q2.degree() && *q2.degree() > 0)
              out.q2 = canonical_primitive(q2);
          }
        }
      }
    }
  }
  return out;
}

}  // namespace improj
