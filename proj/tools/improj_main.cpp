// SPDX-License-Identifier: Apache-2.0
//
// Command-line front door.  Every command prints one JSON document on stdout
// with a stable schema; identical argv and seed give byte-identical output
// (elapsed_ms stays null unless --timing is passed).
//
// Exit codes: 0 success, 2 precondition violation, 64 unknown flag / bad
// usage, 65 parse error in a polynomial or point.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdio>
#include <random>
#include <memory>
#include <string>

#include "improj/improj.h"

using nlohmann::json;

namespace {

struct PolyHandle {
  improj_poly* p = nullptr;
  ~PolyHandle() { improj_poly_free(p); }
};

struct RegionHandle {
  improj_region* r = nullptr;
  ~RegionHandle() { improj_region_free(r); }
};

struct BitmapHandle {
  improj_bitmap* b = nullptr;
  ~BitmapHandle() { improj_bitmap_free(b); }
};

struct CliError {
  int exit_code;
  std::string message;
};

[[noreturn]] void fail(improj_status st) {
  int code = 2;
  if (st == IMPROJ_ERROR_SYNTAX) code = 65;
  throw CliError{code, improj_last_error()};
}

void check(improj_status st) {
  if (st != IMPROJ_OK) fail(st);
}

std::string take(char* s) {
  std::string out = s ? s : "";
  improj_string_free(s);
  return out;
}

json take_json(char* s) { return json::parse(take(s)); }

PolyHandle parse(const std::string& text, int nvars) {
  PolyHandle h;
  check(improj_poly_parse(text.c_str(), nvars, &h.p));
  return h;
}

struct Emitter {
  std::string command;
  bool timing = false;
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();

  void emit(const json& result, const std::string& input = "",
            bool exact = true, bool advisory = false) const {
    json out;
    out["schema_version"] = 1;
    out["command"] = command;
    if (!input.empty()) out["input"] = input;
    out["exact"] = exact;
    if (advisory) out["advisory"] = true;
    if (timing) {
      double ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
      out["elapsed_ms"] = ms;
    } else {
      out["elapsed_ms"] = nullptr;
    }
    out["result"] = result;
    std::printf("%s\n", out.dump(2).c_str());
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"improj: exact imaginary projections of complex conics and "
               "quadrics"};
  app.require_subcommand(1);
  bool timing = false;
  app.add_flag("--timing", timing, "include elapsed_ms in the output");

  std::string poly_text, point, window = "-2,2,-2,2", resolution = "400x400";
  std::string factors, emit_pgm, emit_svg, mode = "exact";
  std::string a_override, b_override, s_override;
  int nvars = 2, lines = 100, samples = 1000, kcomp = 4, only = 0;
  unsigned long long seed = 1;
  bool explain = false, nd = false, verify = false;
  double tol = 1e-10;

  auto add_poly_arg = [&](CLI::App* cmd) {
    cmd->add_option("poly", poly_text, "polynomial in z1..zN")->required();
    cmd->add_option("--nvars", nvars, "number of variables (default 2)");
  };

  CLI::App* c_classify = app.add_subcommand("classify", "conic class tag");
  add_poly_arg(c_classify);

  CLI::App* c_normalize =
      app.add_subcommand("normalize", "normal form and transform");
  add_poly_arg(c_normalize);
  c_normalize->add_flag("--nd", nd, "n-dimensional quadric normalization");

  CLI::App* c_region = app.add_subcommand(
      "region", "closed-form region of I(p); odd-degree full-plane check for "
                "non-conics");
  add_poly_arg(c_region);
  c_region->add_flag("--nd", nd, "n-dimensional quadric region");
  c_region->add_option("--factors", factors,
                       "';'-separated exact factorization");
  c_region->add_option("--samples", samples,
                       "sampling budget for undecided 2c.2 evidence");
  c_region->add_option("--seed", seed, "seed for sampling");

  CLI::App* c_member = app.add_subcommand("member", "exact membership oracle");
  add_poly_arg(c_member);
  c_member->add_option("--point", point, "rational point p/q,p/q")->required();
  c_member->add_flag("--explain", explain, "include the elimination trace");
  c_member->add_flag("--nd", nd, "numeric n-dimensional membership (advisory)");
  c_member->add_option("--tol", tol, "numeric tolerance for --nd");

  CLI::App* c_boundary =
      app.add_subcommand("boundary", "degree-8 boundary candidates (2c.2)");
  add_poly_arg(c_boundary);

  CLI::App* c_certify =
      app.add_subcommand("certify", "spectrahedral certificates");
  add_poly_arg(c_certify);
  c_certify->add_flag("--verify", verify, "verify against the oracle");
  c_certify->add_option("--samples", samples, "verification sample count");
  c_certify->add_option("--seed", seed, "verification seed");

  CLI::App* c_rigid =
      app.add_subcommand("rigid", "rigid-convexity line test on h(y1,y2)");
  add_poly_arg(c_rigid);
  c_rigid->add_option("--point", point, "interior rational point")->required();
  c_rigid->add_option("--lines", lines, "number of random lines");
  c_rigid->add_option("--seed", seed, "seed");

  CLI::App* c_construct = app.add_subcommand(
      "construct", "polynomial with exactly k bounded convex complement "
                   "components");
  c_construct->add_option("--k", kcomp, "component count")->required();
  c_construct->add_option("--a", a_override, "circle center x override");
  c_construct->add_option("--b", b_override, "circle center y override");
  c_construct->add_option("--s", s_override, "circle radius override");
  c_construct->add_option("--window", window, "verification window");
  c_construct->add_option("--resolution", resolution, "verification raster");
  c_construct->add_option("--emit-svg", emit_svg, "write an SVG rendering");
  c_construct->add_option("--emit-pgm", emit_pgm, "write a PGM rendering");

  CLI::App* c_raster = app.add_subcommand("raster", "rasterize membership");
  c_raster->add_option("poly", poly_text, "conic (exact) or any bivariate "
                                          "polynomial (float mode)");
  c_raster->add_option("--factors", factors, "';'-separated conic factors");
  c_raster->add_option("--window", window, "x_lo,x_hi,y_lo,y_hi");
  c_raster->add_option("--resolution", resolution, "NxM");
  c_raster->add_option("--mode", mode, "exact|float");
  c_raster->add_option("--emit-pgm", emit_pgm, "write PGM to path");
  c_raster->add_option("--emit-svg", emit_svg, "write SVG to path");

  CLI::App* c_selftest =
      app.add_subcommand("selftest", "run the acceptance suite");
  c_selftest->add_option("--only", only, "run a single criterion id");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    json err;
    err["schema_version"] = 1;
    err["error"] = e.what();
    std::printf("%s\n", err.dump(2).c_str());
    return 64;
  }

  Emitter emit;
  emit.timing = timing;

  try {
    if (app.got_subcommand(c_classify)) {
      emit.command = "classify";
      PolyHandle p = parse(poly_text, nvars);
      char* cls = nullptr;
      check(improj_classify(p.p, &cls));
      char* canon = nullptr;
      check(improj_poly_str(p.p, &canon));
      emit.emit(json{{"class", take(cls)}}, take(canon));
    } else if (app.got_subcommand(c_normalize)) {
      emit.command = "normalize";
      PolyHandle p = parse(poly_text, nvars);
      char* out = nullptr;
      check(nd ? improj_normalize_nd(p.p, &out) : improj_normalize(p.p, &out));
      char* canon = nullptr;
      check(improj_poly_str(p.p, &canon));
      json result = take_json(out);
      emit.emit(result, take(canon), result.value("exact", true));
    } else if (app.got_subcommand(c_region)) {
      emit.command = "region";
      PolyHandle p = parse(poly_text, nvars);
      char* canon = nullptr;
      check(improj_poly_str(p.p, &canon));
      std::string input = take(canon);
      int deg = improj_poly_degree(p.p);
      if (!nd && deg != 2) {
        // odd-degree full-plane criterion, optionally with a factor list
        char* out = nullptr;
        check(improj_full_plane_check(
            p.p, factors.empty() ? nullptr : factors.c_str(), nvars, &out));
        emit.emit(take_json(out), input);
        return 0;
      }
      RegionHandle r;
      check(nd ? improj_region_nd(p.p, &r.r) : improj_region_conic(p.p, &r.r));
      char* out = nullptr;
      check(improj_region_json(r.r, &out));
      json result = take_json(out);
      if (improj_region_delegated(r.r) && !nd) {
        // sampled evidence for the undecided 2c.2 full-plane question
        long misses = 0;
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<long> num(-320, 320);
        std::uniform_int_distribution<long> den(1, 64);
        char pt[128];
        for (int s = 0; s < samples; ++s) {
          long n1 = num(rng), d1 = den(rng), n2 = num(rng), d2 = den(rng);
          std::snprintf(pt, sizeof pt, "%ld/%ld,%ld/%ld", n1, d1, n2, d2);
          int v = 0;
          check(improj_member(p.p, pt, 0, &v, nullptr));
          if (!v) ++misses;
        }
        result["sampling"] = {
            {"samples", samples},
            {"complement_points_found", misses},
            {"note", misses == 0
                         ? "undecided; sampling found no complement point"
                         : "complement is nonempty"}};
      }
      emit.emit(result, input);
    } else if (app.got_subcommand(c_member)) {
      emit.command = "member";
      PolyHandle p = parse(poly_text, nvars);
      char* canon = nullptr;
      check(improj_poly_str(p.p, &canon));
      std::string input = take(canon);
      int verdict = 0;
      json result;
      if (nd) {
        check(improj_member_nd(p.p, point.c_str(), tol, &verdict));
        result["verdict"] = verdict != 0;
        result["tolerance"] = tol;
        emit.emit(result, input, /*exact=*/false, /*advisory=*/true);
      } else {
        char* trace = nullptr;
        check(improj_member(p.p, point.c_str(), explain ? 1 : 0, &verdict,
                            &trace));
        result["verdict"] = verdict != 0;
        if (explain && trace) result["trace"] = take_json(trace);
        emit.emit(result, input);
      }
    } else if (app.got_subcommand(c_boundary)) {
      emit.command = "boundary";
      PolyHandle p = parse(poly_text, nvars);
      char* canon = nullptr;
      check(improj_poly_str(p.p, &canon));
      char* out = nullptr;
      check(improj_boundary(p.p, &out));
      emit.emit(take_json(out), take(canon));
    } else if (app.got_subcommand(c_certify)) {
      emit.command = "certify";
      PolyHandle p = parse(poly_text, nvars);
      char* canon = nullptr;
      check(improj_poly_str(p.p, &canon));
      std::string input = take(canon);
      char* out = nullptr;
      check(improj_certificates(p.p, &out));
      json result;
      result["certificates"] = take_json(out);
      if (verify) {
        char* rep = nullptr;
        check(improj_verify_certificates(p.p, samples, seed, &rep));
        result["verification"] = take_json(rep);
      }
      emit.emit(result, input);
    } else if (app.got_subcommand(c_rigid)) {
      emit.command = "rigid";
      PolyHandle p = parse(poly_text, nvars);
      char* canon = nullptr;
      check(improj_poly_str(p.p, &canon));
      char* out = nullptr;
      check(improj_rigid(p.p, point.c_str(), lines, seed, &out));
      emit.emit(take_json(out), take(canon));
    } else if (app.got_subcommand(c_construct)) {
      emit.command = "construct";
      char* out = nullptr;
      check(improj_construct(
          kcomp, a_override.empty() ? nullptr : a_override.c_str(),
          b_override.empty() ? nullptr : b_override.c_str(),
          s_override.empty() ? nullptr : s_override.c_str(), 0, &out));
      json recipe = take_json(out);
      if (!emit_pgm.empty() || !emit_svg.empty()) {
        std::string facts;
        for (const auto& f : recipe["factors"]) {
          if (!facts.empty()) facts += ";";
          facts += f.get<std::string>();
        }
        int cols = 400, rows = 400;
        std::sscanf(resolution.c_str(), "%dx%d", &cols, &rows);
        BitmapHandle bm;
        check(improj_raster_factors(facts.c_str(), window.c_str(), cols, rows,
                                    &bm.b));
        if (!emit_pgm.empty())
          check(improj_bitmap_write_pgm(bm.b, emit_pgm.c_str()));
        if (!emit_svg.empty())
          check(improj_bitmap_write_svg(bm.b, nullptr, emit_svg.c_str()));
      }
      emit.emit(recipe, "", true);
    } else if (app.got_subcommand(c_raster)) {
      emit.command = "raster";
      int cols = 400, rows = 400;
      if (std::sscanf(resolution.c_str(), "%dx%d", &cols, &rows) != 2)
        throw CliError{64, "bad --resolution, expected NxM"};
      BitmapHandle bm;
      std::string input;
      bool advisory = false;
      if (!factors.empty()) {
        check(improj_raster_factors(factors.c_str(), window.c_str(), cols,
                                    rows, &bm.b));
        input = factors;
      } else {
        if (poly_text.empty())
          throw CliError{64, "raster needs a polynomial or --factors"};
        PolyHandle p = parse(poly_text, nvars);
        char* canon = nullptr;
        check(improj_poly_str(p.p, &canon));
        input = take(canon);
        if (mode == "float") {
          advisory = true;
          check(improj_raster_float(p.p, window.c_str(), cols, rows, &bm.b));
        } else if (mode == "exact") {
          check(improj_raster_conic(p.p, window.c_str(), cols, rows, &bm.b));
        } else {
          throw CliError{64, "bad --mode, expected exact|float"};
        }
      }
      if (!emit_pgm.empty())
        check(improj_bitmap_write_pgm(bm.b, emit_pgm.c_str()));
      if (!emit_svg.empty())
        check(improj_bitmap_write_svg(bm.b, nullptr, emit_svg.c_str()));
      char* comps = nullptr;
      check(improj_bitmap_components(bm.b, 0, &comps));
      json result;
      result["complement_components"] = take_json(comps);
      if (!emit_pgm.empty()) result["pgm"] = emit_pgm;
      if (!emit_svg.empty()) result["svg"] = emit_svg;
      emit.emit(result, input, !advisory, advisory);
    } else if (app.got_subcommand(c_selftest)) {
      emit.command = "selftest";
      char* out = nullptr;
      int all_pass = 0;
      check(improj_selftest(only, &out, &all_pass));
      emit.emit(take_json(out), "", true);
      return all_pass ? 0 : 1;
    }
  } catch (const CliError& e) {
    json err;
    err["schema_version"] = 1;
    err["error"] = e.message;
    std::printf("%s\n", err.dump(2).c_str());
    return e.exit_code;
  }
  return 0;
}
