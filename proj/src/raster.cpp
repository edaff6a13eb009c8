// SPDX-License-Identifier: Apache-2.0

#include "improj/raster.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <thread>

namespace improj {

double RasterSpec::px_x() const {
  Rat w = (x_hi - x_lo) / Rat(cols);
  return mpq_get_d(w.get_mpq_t());
}

void Bitmap::write_pgm(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Precondition, "cannot open " + path);
  f << "P5\n" << cols << " " << rows << "\n255\n";
  // member pixels dark, complement white
  std::vector<uint8_t> row(cols);
  for (int j = 0; j < rows; ++j) {
    for (int i = 0; i < cols; ++i) row[i] = at(i, j) ? 64 : 255;
    f.write(reinterpret_cast<const char*>(row.data()), cols);
  }
}

namespace {

template <typename F>
Bitmap scan(const RasterSpec& spec, F&& member_of_cell) {
  Bitmap bm;
  bm.cols = spec.cols;
  bm.rows = spec.rows;
  bm.bits.assign(size_t(spec.cols) * spec.rows, 0);
  int threads = spec.threads > 0
                    ? spec.threads
                    : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<int>(threads, spec.rows);
  // Precompute the rational centers once.
  std::vector<Rat> xs(spec.cols), ys(spec.rows);
  for (int i = 0; i < spec.cols; ++i) xs[i] = spec.center_x(i);
  for (int j = 0; j < spec.rows; ++j) ys[j] = spec.center_y(j);
  auto worker = [&](int t) {
    for (int j = t; j < spec.rows; j += threads)
      for (int i = 0; i < spec.cols; ++i)
        bm.bits[size_t(j) * spec.cols + i] = member_of_cell(xs[i], ys[j]) ? 1 : 0;
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  return bm;
}

}  // namespace

Bitmap rasterize_conic(const MultiPoly& p, const RasterSpec& spec) {
  FastConicMembership fast(p);
  return scan(spec,
              [&](const Rat& x, const Rat& y) { return fast.member(x, y); });
}

Bitmap rasterize_factors(const std::vector<MultiPoly>& factors,
                         const RasterSpec& spec) {
  if (factors.empty())
    throw Error(ErrorCode::Precondition, "factor list is empty");
  std::vector<FastConicMembership> fasts;
  fasts.reserve(factors.size());
  for (const auto& f : factors) fasts.emplace_back(f);
  return scan(spec, [&](const Rat& x, const Rat& y) {
    for (const auto& f : fasts)
      if (f.member(x, y)) return true;
    return false;
  });
}

Bitmap rasterize_region(const Region& region, const RasterSpec& spec) {
  if (region.nvars != 2)
    throw Error(ErrorCode::Precondition, "raster needs a 2-d region");
  return scan(spec, [&](const Rat& x, const Rat& y) {
    return region.member({x, y});
  });
}

Bitmap rasterize_float(const MultiPoly& p, const RasterSpec& spec,
                       double tol) {
  return scan(spec, [&](const Rat& x, const Rat& y) {
    return member_quadric_numeric(p, {x, y}, tol);
  });
}

// ---------------------------------------------------------------------------
// components

namespace {

// Largest-area convex hull of integer points (Andrew monotone chain).
std::vector<std::pair<long, long>> convex_hull(
    std::vector<std::pair<long, long>> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  size_t n = pts.size();
  if (n < 3) return pts;
  auto cross = [](const std::pair<long, long>& o, const std::pair<long, long>& a,
                  const std::pair<long, long>& b) {
    return (a.first - o.first) * (b.second - o.second) -
           (a.second - o.second) * (b.first - o.first);
  };
  std::vector<std::pair<long, long>> h(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  size_t lower = k + 1;
  for (size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

bool inside_hull(const std::vector<std::pair<long, long>>& hull, long x,
                 long y) {
  size_t n = hull.size();
  if (n == 0) return false;
  if (n == 1) return hull[0] == std::make_pair(x, y);
  for (size_t i = 0; i < n; ++i) {
    auto [x1, y1] = hull[i];
    auto [x2, y2] = hull[(i + 1) % n];
    long c = (x2 - x1) * (y - y1) - (y2 - y1) * (x - x1);
    if (c < 0) return false;  // hull is counterclockwise
  }
  return true;
}

}  // namespace

ComponentReport connected_components(const Bitmap& bm, const RasterSpec& spec,
                                     bool member_polarity) {
  int W = bm.cols, H = bm.rows;
  std::vector<int> label(size_t(W) * H, -1);
  auto want = [&](int i, int j) { return bm.at(i, j) == member_polarity; };
  ComponentReport rep;
  int next = 0;
  for (int j0 = 0; j0 < H; ++j0) {
    for (int i0 = 0; i0 < W; ++i0) {
      if (!want(i0, j0) || label[size_t(j0) * W + i0] >= 0) continue;
      int id = next++;
      ComponentInfo info;
      info.min_i = info.max_i = i0;
      info.min_j = info.max_j = j0;
      std::deque<std::pair<int, int>> queue{{i0, j0}};
      label[size_t(j0) * W + i0] = id;
      std::vector<std::pair<long, long>> pix;
      while (!queue.empty()) {
        auto [i, j] = queue.front();
        queue.pop_front();
        ++info.pixels;
        pix.push_back({i, j});
        info.min_i = std::min(info.min_i, i);
        info.max_i = std::max(info.max_i, i);
        info.min_j = std::min(info.min_j, j);
        info.max_j = std::max(info.max_j, j);
        if (i == 0 || j == 0 || i == W - 1 || j == H - 1)
          info.edge_contact = true;
        const int di[4] = {1, -1, 0, 0};
        const int dj[4] = {0, 0, 1, -1};
        for (int d = 0; d < 4; ++d) {
          int ni = i + di[d], nj = j + dj[d];
          if (ni < 0 || nj < 0 || ni >= W || nj >= H) continue;
          size_t idx = size_t(nj) * W + ni;
          if (label[idx] >= 0 || !want(ni, nj)) continue;
          label[idx] = id;
          queue.push_back({ni, nj});
        }
      }
      // representative: middle listed pixel
      auto [ri, rj] = pix[pix.size() / 2];
      info.representative = {spec.center_x(int(ri)), spec.center_y(int(rj))};
      // convexity deviation: hull pixels missing from the component, measured
      // by 4-neighbour distance to the component
      auto hull = convex_hull(pix);
      std::vector<std::pair<long, long>> gaps;
      for (long j = info.min_j; j <= info.max_j; ++j)
        for (long i = info.min_i; i <= info.max_i; ++i) {
          if (label[size_t(j) * W + i] == id) continue;
          if (inside_hull(hull, i, j)) gaps.push_back({i, j});
        }
      if (!gaps.empty()) {
        // multi-source BFS from the component over the bounding box
        long bw = info.max_i - info.min_i + 1, bh = info.max_j - info.min_j + 1;
        std::vector<int> dist(size_t(bw) * bh, -1);
        std::deque<std::pair<long, long>> q2;
        for (auto [i, j] : pix) {
          dist[size_t(j - info.min_j) * bw + (i - info.min_i)] = 0;
          q2.push_back({i, j});
        }
        while (!q2.empty()) {
          auto [i, j] = q2.front();
          q2.pop_front();
          int d0 = dist[size_t(j - info.min_j) * bw + (i - info.min_i)];
          const int di[4] = {1, -1, 0, 0};
          const int dj[4] = {0, 0, 1, -1};
          for (int d = 0; d < 4; ++d) {
            long ni = i + di[d], nj = j + dj[d];
            if (ni < info.min_i || nj < info.min_j || ni > info.max_i ||
                nj > info.max_j)
              continue;
            size_t idx = size_t(nj - info.min_j) * bw + (ni - info.min_i);
            if (dist[idx] >= 0) continue;
            dist[idx] = d0 + 1;
            q2.push_back({ni, nj});
          }
        }
        int worst = 0;
        for (auto [i, j] : gaps)
          worst = std::max(
              worst, dist[size_t(j - info.min_j) * bw + (i - info.min_i)]);
        info.convexity_deviation_px = worst;
      }
      rep.components.push_back(std::move(info));
    }
  }
  for (const auto& c : rep.components)
    (c.edge_contact ? rep.unbounded : rep.bounded)++;
  return rep;
}

std::vector<std::pair<int, int>> boundary_pixels(const Bitmap& bm) {
  std::vector<std::pair<int, int>> out;
  for (int j = 0; j < bm.rows; ++j)
    for (int i = 0; i < bm.cols; ++i) {
      if (!bm.at(i, j)) continue;
      bool edge = false;
      if (i > 0 && !bm.at(i - 1, j)) edge = true;
      if (!edge && i + 1 < bm.cols && !bm.at(i + 1, j)) edge = true;
      if (!edge && j > 0 && !bm.at(i, j - 1)) edge = true;
      if (!edge && j + 1 < bm.rows && !bm.at(i, j + 1)) edge = true;
      if (edge) out.push_back({i, j});
    }
  return out;
}

CoverageReport check_against_candidates(
    const Bitmap& bm, const std::vector<std::pair<int, int>>& boundary,
    const RasterSpec& spec, const std::vector<const MultiPoly*>& candidates,
    double tol_px) {
  int W = bm.cols, H = bm.rows;
  std::vector<uint8_t> nearzero(size_t(W) * H, 0);
  std::vector<Rat> xs(W), ys(H);
  for (int i = 0; i < W; ++i) xs[i] = spec.center_x(i);
  for (int j = 0; j < H; ++j) ys[j] = spec.center_y(j);
  for (const MultiPoly* cand : candidates) {
    std::vector<int8_t> sgn(size_t(W) * H, 0);
    int threads = spec.threads > 0
                      ? spec.threads
                      : std::max(1u, std::thread::hardware_concurrency());
    auto worker = [&](int t) {
      for (int j = t; j < H; j += threads)
        for (int i = 0; i < W; ++i)
          sgn[size_t(j) * W + i] =
              static_cast<int8_t>(sign(cand->eval_real({xs[i], ys[j]})));
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
    for (int j = 0; j < H; ++j)
      for (int i = 0; i < W; ++i) {
        int8_t s = sgn[size_t(j) * W + i];
        if (s == 0) {
          nearzero[size_t(j) * W + i] = 1;
          continue;
        }
        if (i + 1 < W && sgn[size_t(j) * W + i + 1] * s < 0) {
          nearzero[size_t(j) * W + i] = 1;
          nearzero[size_t(j) * W + i + 1] = 1;
        }
        if (j + 1 < H && sgn[size_t(j + 1) * W + i] * s < 0) {
          nearzero[size_t(j) * W + i] = 1;
          nearzero[size_t(j + 1) * W + i] = 1;
        }
      }
  }
  CoverageReport rep;
  rep.boundary_count = static_cast<long>(boundary.size());
  int radius = static_cast<int>(std::ceil(tol_px));
  double tol2 = tol_px * tol_px;
  for (auto [i, j] : boundary) {
    bool hit = false;
    for (int dj = -radius; dj <= radius && !hit; ++dj)
      for (int di = -radius; di <= radius && !hit; ++di) {
        if (di * di + dj * dj > tol2) continue;
        int ni = i + di, nj = j + dj;
        if (ni < 0 || nj < 0 || ni >= W || nj >= H) continue;
        if (nearzero[size_t(nj) * W + ni]) hit = true;
      }
    if (hit) ++rep.covered;
  }
  rep.coverage = rep.boundary_count
                     ? static_cast<double>(rep.covered) / rep.boundary_count
                     : 1.0;
  return rep;
}

void write_svg(const std::string& path, const Bitmap& bm,
               const RasterSpec& spec,
               const std::vector<const MultiPoly*>& candidates) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::Precondition, "cannot open " + path);
  int W = bm.cols, H = bm.rows;
  f << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='"
    << H << "' viewBox='0 0 " << W << " " << H << "'>\n";
  f << "<rect width='" << W << "' height='" << H << "' fill='white'/>\n";
  // member pixels as horizontal run-length rectangles
  f << "<g fill='#bbbbbb'>\n";
  for (int j = 0; j < H; ++j) {
    int i = 0;
    while (i < W) {
      if (!bm.at(i, j)) {
        ++i;
        continue;
      }
      int start = i;
      while (i < W && bm.at(i, j)) ++i;
      f << "<rect x='" << start << "' y='" << j << "' width='" << (i - start)
        << "' height='1'/>\n";
    }
  }
  f << "</g>\n";
  // candidate curves: segments across sign-changing cell edges
  std::vector<Rat> xs(W), ys(H);
  for (int i = 0; i < W; ++i) xs[i] = spec.center_x(i);
  for (int j = 0; j < H; ++j) ys[j] = spec.center_y(j);
  f << "<g stroke='#cc2222' stroke-width='1' stroke-linecap='round'>\n";
  for (const MultiPoly* cand : candidates) {
    std::vector<int8_t> sgn(size_t(W) * H, 0);
    for (int j = 0; j < H; ++j)
      for (int i = 0; i < W; ++i)
        sgn[size_t(j) * W + i] =
            static_cast<int8_t>(sign(cand->eval_real({xs[i], ys[j]})));
    for (int j = 0; j < H; ++j)
      for (int i = 0; i < W; ++i) {
        int8_t s = sgn[size_t(j) * W + i];
        if (i + 1 < W && sgn[size_t(j) * W + i + 1] * s < 0)
          f << "<line x1='" << i + 1 << "' y1='" << j << "' x2='" << i + 1
            << "' y2='" << j + 1 << "'/>\n";
        if (j + 1 < H && sgn[size_t(j + 1) * W + i] * s < 0)
          f << "<line x1='" << i << "' y1='" << j + 1 << "' x2='" << i + 1
            << "' y2='" << j + 1 << "'/>\n";
      }
  }
  f << "</g>\n</svg>\n";
}

std::string ComponentReport::json() const {
  nlohmann::json out;
  out["bounded"] = bounded;
  out["unbounded"] = unbounded;
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : components) {
    nlohmann::json jc;
    jc["pixels"] = c.pixels;
    jc["bbox"] = {c.min_i, c.min_j, c.max_i, c.max_j};
    jc["edge_contact"] = c.edge_contact;
    jc["convexity_deviation_px"] = c.convexity_deviation_px;
    jc["representative"] = {rat_str(c.representative.first),
                            rat_str(c.representative.second)};
    comps.push_back(std::move(jc));
  }
  out["components"] = std::move(comps);
  return out.dump();
}

std::string CoverageReport::json() const {
  nlohmann::json out;
  out["boundary_pixels"] = boundary_count;
  out["covered"] = covered;
  out["coverage"] = coverage;
  return out.dump();
}

}  // namespace improj
