// SPDX-License-Identifier: Apache-2.0

#include "improj/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "improj/certify.hpp"
#include "improj/construct.hpp"
#include "improj/formulas.hpp"
#include "improj/oracle.hpp"
#include "improj/rand.hpp"
#include "improj/raster.hpp"

namespace improj {

namespace {

constexpr uint64_t kSeedBase = 0x1A2B3C4D5E6Full;

MultiPoly P(const std::string& text) { return parse_poly(text, 2); }

MultiPoly octic_from_terms(
    const std::vector<std::tuple<int, int, long>>& terms) {
  MultiPoly p(2);
  for (const auto& [e1, e2, c] : terms)
    p.add_term({static_cast<uint32_t>(e1), static_cast<uint32_t>(e2)},
               RatC(Rat(c)));
  return p;
}

// The displayed octic for z1^2 + i z2^2 + i/4.
MultiPoly example_octic_translated() {
  return octic_from_terms({{8, 0, -64},
                           {4, 4, -128},
                           {0, 8, -64},
                           {4, 2, -80},
                           {0, 6, 48},
                           {4, 0, 1},
                           {0, 4, -12},
                           {0, 2, 1}});
}

// The degree-8 polynomial describing I(z1^2 + i z2^2 + z2).
MultiPoly example_octic_original() {
  return octic_from_terms({{8, 0, -64},
                           {4, 4, -128},
                           {0, 8, -64},
                           {4, 3, 256},
                           {0, 7, 256},
                           {4, 2, -272},
                           {0, 6, -400},
                           {4, 1, 144},
                           {0, 5, 304},
                           {4, 0, -27},
                           {0, 4, -112},
                           {0, 3, 16}});
}

struct Ctx {
  std::ostringstream details;
  bool pass = true;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      details << "FAILED: " << what << "; ";
    }
  }
};

// ---------------------------------------------------------------------- 1, 2

void criterion_octic(Ctx& c, bool translated) {
  MultiPoly p = translated ? P("z1^2 + i*z2^2 + 1/4i") : P("z1^2 + i*z2^2 + z2");
  BoundaryCandidates bc = boundary_candidates_2c2(p);
  MultiPoly target =
      translated ? example_octic_translated() : example_octic_original();
  c.expect(proportional_over_q(bc.octic, target),
           "octic differs from the reference coefficients");
  c.details << "octic = " << bc.octic.str("y");
}

// ------------------------------------------------------------------------- 3

void criterion_points(Ctx& c) {
  c.expect(!member_conic_exact(P("z1^2 + i*z2^2 + z2"), {Rat(0), Rat(1, 2)}),
           "(0,1/2) must be outside I(z1^2+i z2^2+z2)");
  c.expect(!member_conic_exact(P("z1^2 + i*z2^2 + 1/4i"), {Rat(0), Rat(0)}),
           "(0,0) must be outside I(z1^2+i z2^2+i/4)");
  c.expect(!member_conic_exact(P("z1^2 + z2^2 + 1"), {Rat(0), Rat(0)}),
           "(0,0) must be outside I(z1^2+z2^2+1)");
  c.expect(member_conic_exact(P("z1^2 + z2^2 + 1"), {Rat(1), Rat(0)}),
           "(1,0) must be inside I(z1^2+z2^2+1)");
}

// ---------------------------------------------------------------------- 4, 5

struct Rep {
  const char* text;
  const char* expected_class;
};

const std::vector<Rep>& representatives() {
  static const std::vector<Rep> reps = {
      {"z1^2 + 1", "1a.1"},
      {"z1^2 - 1", "1a.1"},
      {"z1^2 + i", "1a.1"},
      {"z1^2 + z2", "1a.2"},
      {"z1^2 + 2i*z2", "1a.2"},
      {"z1^2 + 2*z1*z2 + z2^2 + 2i*z2 + 1", "1a.2"},
      {"z1*z2 + 1", "1b"},
      {"z1*z2 - 1", "1b"},
      {"z1*z2 + 2i", "1b"},
      {"z1^2 - z2^2 + 2i", "1b"},
      {"z1^2 - 2i*z1*z2 - z2^2 + 1", "2a.1"},
      {"z1^2 - 2i*z1*z2 - z2^2 + i", "2a.1"},
      {"z1^2 - 2i*z1*z2 - z2^2 + z2", "2a.2"},
      {"z1^2 - 2i*z1*z2 - z2^2 + (2+1i)*z2", "2a.2"},
      {"z1*z2 - i*z2^2 + 3", "2b"},
      {"z1*z2 - i*z2^2 - i", "2b"},
      {"z1*z2 - i*z2^2 + i", "2b"},
      {"z1*z2 - (1+1i)*z2^2 + 2i", "2b"},
      {"z1^2 + z2^2 + 1", "2c.1"},
      {"z1^2 + z2^2 - 1", "2c.1"},
      {"z1^2 + z2^2 + i", "2c.1"},
      {"z1^2 + z2^2 + 2i*z2", "2c.1"},
      {"z1^2 + i*z2^2 + 1/4i", "2c.2"},
      {"z1^2 + i*z2^2 + z2", "2c.2"},
  };
  return reps;
}

void criterion_oracle_vs_formula(Ctx& c) {
  std::mt19937_64 rng(kSeedBase + 4);
  int reps_with_region = 0, delegated = 0;
  for (const auto& rep : representatives()) {
    MultiPoly p = P(rep.text);
    NormalFormResult nf = normalize_conic(p);
    c.expect(conic_class_str(nf.cls) == rep.expected_class,
             std::string(rep.text) + " classified as " +
                 conic_class_str(nf.cls) + " (wanted " + rep.expected_class +
                 ")");
    RegionResult rr = region_of_conic_poly(p);
    if (rr.delegated) {
      c.expect(nf.cls == ConicClass::C2c2 || !nf.exact,
               "unexpected delegation");
      ++delegated;
      continue;
    }
    ++reps_with_region;
    for (int s = 0; s < 1000; ++s) {
      std::vector<Rat> y = {random_rat(rng, 256, 32), random_rat(rng, 256, 32)};
      bool by_region = rr.region.member(y);
      bool by_oracle = member_conic_exact(p, y);
      if (by_region != by_oracle) {
        c.expect(false, std::string("formula/oracle mismatch for ") +
                            rep.text + " at (" + rat_str(y[0]) + "," +
                            rat_str(y[1]) + ")");
        break;
      }
    }
  }
  c.details << reps_with_region << " closed-form representatives, "
            << delegated << " delegated (class 2c.2)";
}

void criterion_real_conics(Ctx& c) {
  const char* cases[8] = {
      "z1^2 + z2^2 - 1", "z1^2 - z2^2 - 1", "z1^2 + z2",  "z1^2 + z2^2 + 1",
      "z1^2 - z2^2",     "z1^2 - 1",        "z1^2 + z2^2", "z1^2 + 1"};
  std::mt19937_64 rng(kSeedBase + 5);
  for (const char* text : cases) {
    MultiPoly p = P(text);
    RegionResult rr = region_of_conic_poly(p);
    c.expect(!rr.delegated, std::string("no closed form for ") + text);
    if (rr.delegated) continue;
    for (int s = 0; s < 500; ++s) {
      std::vector<Rat> y = {random_rat(rng, 256, 32), random_rat(rng, 256, 32)};
      if (rr.region.member(y) != member_conic_exact(p, y)) {
        c.expect(false, std::string("mismatch for ") + text);
        break;
      }
    }
  }
}

// ------------------------------------------------------------------------- 6

void criterion_quartic(Ctx& c) {
  std::mt19937_64 rng(kSeedBase + 6);
  long checked = 0;
  auto check = [&](const Rat& a0, const Rat& a1, const Rat& a2, const Rat& a3,
                   const Rat& a4) {
    if (a4 == 0) return;
    ++checked;
    bool fast = quartic_has_real_root(a0, a1, a2, a3, a4).has_root;
    RealUniPoly f{std::vector<Rat>{a0, a1, a2, a3, a4}};
    bool truth = sturm_count_all(f) > 0;
    if (fast != truth)
      c.expect(false, "criteria disagree with Sturm on " + rat_str(a0) + "," +
                          rat_str(a1) + "," + rat_str(a2) + "," + rat_str(a3) +
                          "," + rat_str(a4));
  };
  for (int i = 0; i < 10000; ++i)
    check(random_rat(rng, 100, 10), random_rat(rng, 100, 10),
          random_rat(rng, 100, 10), random_rat(rng, 100, 10),
          random_nonzero_rat(rng, 100, 10));
  // degenerate families
  check(Rat(0), Rat(0), Rat(0), Rat(0), Rat(1));  // x^4
  for (int i = 0; i < 300; ++i) {
    Rat a = random_rat(rng, 20, 4), b = random_rat(rng, 20, 4);
    // biquadratic (x^2 + a)(x^2 + b)
    check(a * b, Rat(0), a + b, Rat(0), Rat(1));
    // double root (x - r)^2 (x^2 + bx + c)
    Rat r = random_rat(rng, 10, 4), cc = random_rat(rng, 20, 4);
    // (x^2 - 2rx + r^2)(x^2 + bx + c)
    Rat c0 = r * r * cc;
    Rat c1 = r * r * b - 2 * r * cc;
    Rat c2 = r * r + cc - 2 * r * b;
    Rat c3 = b - 2 * r;
    check(c0, c1, c2, c3, Rat(1));
    // quadruple root (x - r)^4
    check(r * r * r * r, -4 * r * r * r, 6 * r * r, -4 * r, Rat(1));
    // (x^2 + a)^2
    check(a * a, Rat(0), 2 * a, Rat(0), Rat(1));
  }
  c.details << checked << " quartics";
}

// ------------------------------------------------------------------------- 7

void criterion_certificates(Ctx& c) {
  // (1a.2, gamma = 2i)
  {
    MultiPoly p = P("z1^2 + 2i*z2");
    auto certs = certificates_for_poly(p);
    auto v = verify_certificate(certs, p, 1000, kSeedBase + 71);
    c.expect(v.ok, "1a.2 certificate verification");
  }
  // pulled-back certificate of the transformed parabola; its matrix must be
  // (1, y1+y2; y1+y2, -2y2+1)
  {
    MultiPoly q = P("z1^2 + 2*z1*z2 + z2^2 + 2i*z2 + 1");
    auto certs = certificates_for_poly(q);
    c.expect(certs.size() == 1, "one component expected");
    if (certs.size() == 1) {
      const auto& m = certs[0].matrix;
      bool entries_ok =
          m[0][0].const_part == 1 && m[0][0].ycoef[0] == 0 &&
          m[0][0].ycoef[1] == 0 && m[0][1].const_part == 0 &&
          m[0][1].ycoef[0] == 1 && m[0][1].ycoef[1] == 1 &&
          m[1][1].const_part == 1 && m[1][1].ycoef[0] == 0 &&
          m[1][1].ycoef[1] == -2;
      c.expect(entries_ok, "pulled-back parabola matrix entries");
      auto v = verify_certificate(certs, q, 1000, kSeedBase + 72);
      c.expect(v.ok, "pulled-back certificate verification");
    }
  }
  // the four quadrant matrices of z1^2 - z2^2 + 2i, frozen
  {
    MultiPoly q = P("z1^2 - z2^2 + 2i");
    auto T = [&](int s00_1, int s00_2, int s11_1, int s11_2,
                 const std::string& name) {
      LMICertificate cert;
      cert.name = name;
      cert.kind = "lmi";
      cert.strict = false;
      LMIEntry d00{Rat(0), Rat(0), Rat(0), {Rat(s00_1), Rat(s00_2)}};
      LMIEntry d11{Rat(0), Rat(0), Rat(0), {Rat(s11_1), Rat(s11_2)}};
      LMIEntry one{Rat(1), Rat(0), Rat(0), {Rat(0), Rat(0)}};
      cert.matrix = {{d00, one}, {one, d11}};
      Region r = Region::empty(2);
      MultiPoly a = MultiPoly::variable(2, 0).scaled(RatC(Rat(s00_1))) +
                    MultiPoly::variable(2, 1).scaled(RatC(Rat(s00_2)));
      MultiPoly b = MultiPoly::variable(2, 0).scaled(RatC(Rat(s11_1))) +
                    MultiPoly::variable(2, 1).scaled(RatC(Rat(s11_2)));
      r.clauses.push_back(
          {{Atom{a, Rel::GE}, Atom{b, Rel::GE},
            Atom{a * b - MultiPoly::constant(2, RatC(1)), Rel::GE}}});
      cert.exact_form = std::move(r);
      return cert;
    };
    std::vector<LMICertificate> certs = {
        T(-1, -1, -1, 1, "T1"), T(1, 1, 1, -1, "T2"), T(-1, -1, 1, -1, "T3"),
        T(1, 1, -1, 1, "T4")};
    auto v = verify_certificate(certs, q, 1000, kSeedBase + 73);
    c.expect(v.ok, "frozen quadrant certificates");
    // cross-check: our own pipeline's certificates for the same conic
    auto own = certificates_for_poly(q);
    c.expect(own.size() == 4, "four pulled-back quadrant certificates");
    auto v2 = verify_certificate(own, q, 1000, kSeedBase + 74);
    c.expect(v2.ok, "pipeline quadrant certificates");
  }
  // (2c.1, gamma = 1): the unit-disk complement
  {
    MultiPoly p = P("z1^2 + z2^2 + 1");
    auto certs = certificates_for_poly(p);
    auto v = verify_certificate(certs, p, 1000, kSeedBase + 75);
    c.expect(v.ok, "disk certificate verification");
  }
}

// ------------------------------------------------------------------------- 8

void criterion_rigid(Ctx& c) {
  MultiPoly q = P("z1^2 + i*z2^2 + 1/4i");
  BoundaryCandidates bc = boundary_candidates_2c2(q);
  std::vector<Rat> pt = {Rat(1, 3), Rat(1, 10)};  // interior, near (1/3, 3/10)
  c.expect(!member_conic_exact(q, pt), "probe point must be in the complement");
  c.expect(bc.octic.eval_real(pt) != 0, "probe point must be off the curve");
  RigidConvexityReport rep =
      rigid_convexity_line_test(bc.octic, pt, 100, kSeedBase + 8);
  c.expect(rep.degree == 8, "octic degree");
  c.expect(rep.fraction_below_degree >= 0.9,
           "fewer than 90% of lines fall below degree-many intersections");
  int vertical = line_intersection_count(bc.octic, {Rat(1, 3), Rat(0)},
                                         {Rat(0), Rat(1)});
  c.expect(vertical == 2, "the line y1 = 1/3 must meet the curve twice, got " +
                              std::to_string(vertical));
  c.details << "counts: ";
  for (auto [count, freq] : rep.count_histogram)
    c.details << count << "x" << freq << " ";
}

// ------------------------------------------------------------------------- 9

void criterion_nd(Ctx& c) {
  std::mt19937_64 rng(kSeedBase + 9);
  const char* gammas[3] = {"1", "-1", "i"};
  for (const char* gtext : gammas) {
    MultiPoly p = parse_poly(std::string("z1^2 + z2^2 - z3^2 + ") + gtext, 3);
    NdNormalFormResult nf = normalize_quadric_nd(p);
    c.expect(nf.exact, "nd normalization exact");
    Region region = region_quadric_hyperbolic_nd(nf);
    Region pulled = region.pulled_back(nf.transform->inverse());
    long agree = 0, numeric_true_formula_false = 0;
    const int samples = 200;
    for (int s = 0; s < samples; ++s) {
      std::vector<Rat> y = {random_rat(rng, 64, 16), random_rat(rng, 64, 16),
                            random_rat(rng, 64, 16)};
      bool formula = pulled.member(y);
      bool numeric = member_quadric_numeric(p, y, 1e-10);
      if (formula == numeric) ++agree;
      if (numeric && !formula) ++numeric_true_formula_false;
    }
    c.expect(numeric_true_formula_false == 0,
             std::string("numeric false positive for gamma=") + gtext);
    c.expect(agree >= samples * 99 / 100,
             std::string("agreement below 99% for gamma=") + gtext + " (" +
                 std::to_string(agree) + "/200)");
    c.details << "gamma=" << gtext << ": " << agree << "/200  ";
  }
}

// ------------------------------------------------------------------------ 10

void criterion_construct(Ctx& c) {
  for (int k : {1, 2, 3, 4, 5, 8}) {
    ConstructionRecipe r = build_k_components(k);
    c.expect(r.verified, "recipe search failed for k=" + std::to_string(k));
    int expected_degree = 2 * ((k + 3) / 4) + 2;
    c.expect(r.degree == expected_degree,
             "degree mismatch for k=" + std::to_string(k));
    ComponentVerification v =
        verify_components(r.factors, recipe_window(r, 800));
    c.expect(v.bounded == k, "k=" + std::to_string(k) + " produced " +
                                 std::to_string(v.bounded) +
                                 " bounded components at 800^2");
    c.expect(v.max_bounded_deviation_px <= 2.0,
             "convexity deviation " +
                 std::to_string(v.max_bounded_deviation_px) + "px for k=" +
                 std::to_string(k));
    c.details << "k=" << k << ": bounded=" << v.bounded
              << " dev=" << v.max_bounded_deviation_px << "px  ";
  }
}

// ------------------------------------------------------------------------ 11

void criterion_full_plane(Ctx& c) {
  std::vector<std::string> conics;
  for (const char* g : {"1", "i", "(2-1i)"}) {
    conics.push_back(std::string("z1^2 - 2i*z1*z2 - z2^2 + ") + g + "*z2");
    conics.push_back(std::string("z1^2 - 2i*z1*z2 - z2^2 + ") + g);
  }
  conics.push_back("z1^2 - 3i*z1*z2 - 2*z2^2");
  for (const auto& text : conics) {
    MultiPoly p = P(text);
    FastConicMembership fast(p);
    bool all = true;
    for (int i = 0; i < 200 && all; ++i) {
      for (int j = 0; j < 200 && all; ++j) {
        Rat x = Rat(-3) + Rat(2 * i + 1) * Rat(6) / Rat(400);
        Rat y = Rat(-3) + Rat(2 * j + 1) * Rat(6) / Rat(400);
        if (!fast.member(x, y)) {
          all = false;
          c.expect(false, text + " misses (" + rat_str(x) + "," + rat_str(y) +
                              ")");
        }
      }
    }
  }
}

// ------------------------------------------------------------------------ 12

void criterion_boundary_coverage(Ctx& c) {
  struct Inst {
    const char* text;
    Rat window;
  };
  const Inst insts[2] = {{"z1^2 + i*z2^2 + 1/4i", Rat(1)},
                         {"z1^2 + i*z2^2 + z2", Rat(3, 2)}};
  for (const auto& inst : insts) {
    MultiPoly p = P(inst.text);
    BoundaryCandidates bc = boundary_candidates_2c2(p);
    RasterSpec spec;
    spec.x_lo = -inst.window;
    spec.x_hi = inst.window;
    spec.y_lo = -inst.window;
    spec.y_hi = inst.window;
    spec.cols = spec.rows = 400;
    Bitmap bm = rasterize_conic(p, spec);
    auto bps = boundary_pixels(bm);
    CoverageReport cov =
        check_against_candidates(bm, bps, spec, bc.all(), 1.5);
    c.expect(cov.coverage == 1.0,
             std::string(inst.text) + " coverage " +
                 std::to_string(cov.coverage));
    c.details << inst.text << ": " << cov.covered << "/" << cov.boundary_count
              << "  ";
  }
}

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;  // 0 = none
  void (*fn)(Ctx&);
};

void run_octic_translated(Ctx& c) { criterion_octic(c, true); }
void run_octic_original(Ctx& c) { criterion_octic(c, false); }

const Criterion kCriteria[] = {
    {1, "octic reproduction (translated form)", 10, run_octic_translated},
    {2, "octic reproduction (original form)", 10, run_octic_original},
    {3, "point facts", 0, criterion_points},
    {4, "oracle vs closed form (all classes)", 300, criterion_oracle_vs_formula},
    {5, "real-conic regression (eight cases)", 0, criterion_real_conics},
    {6, "quartic criteria vs Sturm", 0, criterion_quartic},
    {7, "certificate verification", 0, criterion_certificates},
    {8, "rigid-convexity line test", 0, criterion_rigid},
    {9, "n-dimensional formulas vs numeric", 0, criterion_nd},
    {10, "k-component construction", 300, criterion_construct},
    {11, "full-plane sweeps", 0, criterion_full_plane},
    {12, "boundary candidate coverage", 0, criterion_boundary_coverage},
};

}  // namespace

bool run_acceptance(const AcceptanceReporter& report, int only) {
  bool all = true;
  for (const auto& crit : kCriteria) {
    if (only != 0 && crit.id != only) continue;
    Ctx ctx;
    auto start = std::chrono::steady_clock::now();
    try {
      crit.fn(ctx);
    } catch (const std::exception& e) {
      ctx.pass = false;
      ctx.details << "exception: " << e.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (crit.time_limit_s > 0 && secs > crit.time_limit_s) {
      ctx.pass = false;
      ctx.details << "exceeded time limit of " << crit.time_limit_s << "s";
    }
    CriterionResult res{crit.id, crit.name, ctx.pass, ctx.details.str(), secs};
    all = all && ctx.pass;
    if (report) report(res);
  }
  return all;
}

}  // namespace improj
