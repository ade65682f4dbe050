#include "uavsim/geometry.hpp"
#include "uavsim/rng.hpp"

#include <algorithm>
#include <array>
#include <numbers>
#include <stdexcept>

namespace uavsim {

CellIndex cell_index_of(Point2 p, const GridSpec& grid) {
  const double s = grid.cell_size;
  return CellIndex{static_cast<long long>(std::llround((p.x - grid.origin.x) / s - 0.5)),
                   static_cast<long long>(std::llround((p.y - grid.origin.y) / s - 0.5))};
}

Point2 cell_center(CellIndex idx, const GridSpec& grid) {
  const double s = grid.cell_size;
  return Point2{grid.origin.x + (static_cast<double>(idx.ix) + 0.5) * s,
                grid.origin.y + (static_cast<double>(idx.iy) + 0.5) * s};
}

double disk_overlap_area(const Disk& a, const Disk& b) {
  // canonical argument order keeps the result bitwise symmetric
  const Disk* lo = &a;
  const Disk* hi = &b;
  if (hi->radius < lo->radius ||
      (hi->radius == lo->radius &&
       (hi->center.x < lo->center.x ||
        (hi->center.x == lo->center.x && hi->center.y < lo->center.y))))
    std::swap(lo, hi);
  const double d = dist(lo->center, hi->center);
  const double r1 = lo->radius, r2 = hi->radius;
  if (d >= r1 + r2) return 0.0;
  const double rmin = std::min(r1, r2);
  if (d <= std::abs(r1 - r2)) return std::numbers::pi * rmin * rmin;

  auto clamp1 = [](double v) { return std::clamp(v, -1.0, 1.0); };
  const double t1 = r1 * r1 * std::acos(clamp1((d * d + r1 * r1 - r2 * r2) / (2 * d * r1)));
  const double t2 = r2 * r2 * std::acos(clamp1((d * d + r2 * r2 - r1 * r1) / (2 * d * r2)));
  // Heron-style triangle term for the two circular segments
  const double p = (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2);
  const double eta = 0.5 * std::sqrt(std::max(0.0, p));
  return std::max(0.0, t1 + t2 - eta);
}

namespace {

/* One Newton step on F_w(h,k,r) = (h-x_w)^2 + (k-y_w)^2 - (r-r_w)^2, w=1..3.
   3x3 solve by Cramer; returns false when the Jacobian is singular. */
bool newton_refine(const std::array<Disk, 3>& ds, double& h, double& k, double& r) {
  for (int iter = 0; iter < 4; ++iter) {
    std::array<double, 3> f;
    std::array<std::array<double, 3>, 3> J;
    for (int w = 0; w < 3; ++w) {
      const double dx = h - ds[w].center.x;
      const double dy = k - ds[w].center.y;
      const double dr = r - ds[w].radius;
      f[w] = dx * dx + dy * dy - dr * dr;
      J[w] = {2 * dx, 2 * dy, -2 * dr};
    }
    const double det = J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) -
                       J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
                       J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
    // a singular Jacobian just ends refinement; the caller's residual gate
    // decides whether the point is good (it is, e.g., for collinear centers)
    if (std::abs(det) < 1e-14) return true;
    auto det3 = [&](int col) {
      std::array<std::array<double, 3>, 3> m = J;
      for (int w = 0; w < 3; ++w) m[w][col] = -f[w];
      return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
             m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
             m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    h += det3(0) / det;
    k += det3(1) / det;
    r += det3(2) / det;
  }
  return true;
}

double tangency_residual(const std::array<Disk, 3>& ds, double h, double k, double r) {
  double worst = 0;
  for (const Disk& d : ds) {
    const double dx = h - d.center.x, dy = k - d.center.y, dr = r - d.radius;
    worst = std::max(worst, std::abs(dx * dx + dy * dy - dr * dr));
  }
  return worst;
}

} // namespace

std::optional<Circle> apollonius_circle(const Disk& a, const Disk& b, const Disk& c) {
  /* Subtracting pairs of the tangency equations leaves two linear relations
       A_i*h + B_i*k + C_i*r = D_i
     in the unknown center (h,k) and radius r. Solve the best-conditioned
     2x2 minor for two of the unknowns in terms of the third, substitute into
     one original equation, and pick the valid root of the quadratic. Working
     relative to the center of mass keeps the coefficients small. */
  const double cx = (a.center.x + b.center.x + c.center.x) / 3.0;
  const double cy = (a.center.y + b.center.y + c.center.y) / 3.0;
  const std::array<Disk, 3> ds = {Disk{{a.center.x - cx, a.center.y - cy}, a.radius},
                                  Disk{{b.center.x - cx, b.center.y - cy}, b.radius},
                                  Disk{{c.center.x - cx, c.center.y - cy}, c.radius}};

  double A[2], B[2], C[2], D[2];
  for (int i = 0; i < 2; ++i) {
    const Disk& u = ds[0];
    const Disk& v = ds[i + 1];
    A[i] = 2 * (u.center.x - v.center.x);
    B[i] = 2 * (u.center.y - v.center.y);
    C[i] = -2 * (u.radius - v.radius);
    D[i] = (u.center.x * u.center.x - v.center.x * v.center.x) +
           (u.center.y * u.center.y - v.center.y * v.center.y) -
           (u.radius * u.radius - v.radius * v.radius);
  }

  const double det_hk = A[0] * B[1] - A[1] * B[0];
  const double det_hr = A[0] * C[1] - A[1] * C[0];
  const double det_kr = B[0] * C[1] - B[1] * C[0];

  double scale = 0;
  for (int i = 0; i < 2; ++i)
    scale = std::max({scale, std::abs(A[i]), std::abs(B[i]), std::abs(C[i])});
  const double singular = std::max(kSingularTol, kSingularTol * scale * scale);

  /* Parameterize (h,k,r) = base + dir * t, with t the free unknown of the
     chosen minor. */
  int pivot;                   // 0: solve (h,k), 1: solve (h,r), 2: solve (k,r)
  const double abs_hk = std::abs(det_hk), abs_hr = std::abs(det_hr), abs_kr = std::abs(det_kr);
  if (abs_hk >= abs_hr && abs_hk >= abs_kr) pivot = 0;
  else if (abs_hr >= abs_kr) pivot = 1;
  else pivot = 2;

  double det = (pivot == 0) ? det_hk : (pivot == 1) ? det_hr : det_kr;
  if (std::abs(det) < singular) return std::nullopt;

  /* Each case moves the free unknown's column to the right-hand side, so the
     pivot pair comes out affine in the free unknown t. */
  double h0, h1, k0, k1, r0, r1;
  if (pivot == 0) { // unknowns h,k; free r
    h0 = (D[0] * B[1] - D[1] * B[0]) / det;
    h1 = (C[1] * B[0] - C[0] * B[1]) / det;
    k0 = (A[0] * D[1] - A[1] * D[0]) / det;
    k1 = (A[1] * C[0] - A[0] * C[1]) / det;
    r0 = 0; r1 = 1;
  } else if (pivot == 1) { // unknowns h,r; free k
    h0 = (D[0] * C[1] - D[1] * C[0]) / det;
    h1 = (B[1] * C[0] - B[0] * C[1]) / det;
    r0 = (A[0] * D[1] - A[1] * D[0]) / det;
    r1 = (A[1] * B[0] - A[0] * B[1]) / det;
    k0 = 0; k1 = 1;
  } else { // unknowns k,r; free h
    k0 = (D[0] * C[1] - D[1] * C[0]) / det;
    k1 = (A[1] * C[0] - A[0] * C[1]) / det;
    r0 = (B[0] * D[1] - B[1] * D[0]) / det;
    r1 = (A[0] * B[1] - A[1] * B[0]) / det;
    h0 = 0; h1 = 1;
  }

  // substitute into the first tangency equation -> quadratic alpha*t^2 + beta*t + gamma = 0
  const double px = h0 - ds[0].center.x, py = k0 - ds[0].center.y, pr = r0 - ds[0].radius;
  const double alpha = h1 * h1 + k1 * k1 - r1 * r1;
  const double beta = 2 * (px * h1 + py * k1 - pr * r1);
  const double gamma = px * px + py * py - pr * pr;

  std::vector<double> roots;
  if (std::abs(alpha) < 1e-14 * std::max(1.0, std::abs(beta))) {
    if (std::abs(beta) > 1e-14) roots.push_back(-gamma / beta);
  } else {
    const double disc = beta * beta - 4 * alpha * gamma;
    if (disc < 0) return std::nullopt;
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (beta + (beta >= 0 ? sq : -sq));
    roots.push_back(q / alpha);
    if (std::abs(q) > 1e-300) roots.push_back(gamma / q);
  }

  const double rmax = std::max({ds[0].radius, ds[1].radius, ds[2].radius});
  std::optional<Circle> best;
  for (double t : roots) {
    double h = h0 + h1 * t, k = k0 + k1 * t, r = r0 + r1 * t;
    if (!std::isfinite(h) || !std::isfinite(k) || !std::isfinite(r)) continue;
    if (r < rmax - 1e-6) continue;
    if (!newton_refine(ds, h, k, r)) continue;
    if (r < rmax - kGeomTol || r < 0) continue;
    if (tangency_residual(ds, h, k, r) > kGeomTol) continue;
    if (!best || r < best->radius)
      best = Circle{{h + cx, k + cy}, r};
  }
  return best;
}

bool circle_contains_disk(const Circle& outer, const Disk& inner, double tol) {
  return dist(outer.center, inner.center) + inner.radius <= outer.radius + tol;
}

namespace {

Circle circle_of_one(const Disk& d) { return Circle{d.center, d.radius}; }

Circle circle_of_two(const Disk& a, const Disk& b) {
  const double d = dist(a.center, b.center);
  if (d + b.radius <= a.radius) return circle_of_one(a);
  if (d + a.radius <= b.radius) return circle_of_one(b);
  const double r = 0.5 * (d + a.radius + b.radius);
  const double t = (r - a.radius) / d; // distance fraction from a toward b
  return Circle{{a.center.x + (b.center.x - a.center.x) * t,
                 a.center.y + (b.center.y - a.center.y) * t},
                r};
}

Circle circle_of_three(const Disk& a, const Disk& b, const Disk& c) {
  std::optional<Circle> best;
  auto consider = [&](const Circle& cand) {
    if (!circle_contains_disk(cand, a, 1e-7) || !circle_contains_disk(cand, b, 1e-7) ||
        !circle_contains_disk(cand, c, 1e-7))
      return;
    if (!best || cand.radius < best->radius) best = cand;
  };
  consider(circle_of_two(a, b));
  consider(circle_of_two(a, c));
  consider(circle_of_two(b, c));
  if (auto apo = apollonius_circle(a, b, c)) consider(*apo);
  if (best) return *best;
  // numerical corner: grow the widest pair circle until everything fits
  Circle w = circle_of_two(a, b);
  for (const Disk* d : {&a, &b, &c}) {
    const double need = dist(w.center, d->center) + d->radius;
    if (need > w.radius) w.radius = need;
  }
  return w;
}

bool contains_all(const Circle& c, const std::vector<Disk>& disks, double tol) {
  for (const Disk& d : disks)
    if (!circle_contains_disk(c, d, tol)) return false;
  return true;
}

Circle welzl(std::vector<const Disk*>& pts, std::size_t n, std::vector<const Disk*>& support) {
  if (n == 0 || support.size() == 3) {
    switch (support.size()) {
      case 0: return Circle{{0, 0}, -1};
      case 1: return circle_of_one(*support[0]);
      case 2: return circle_of_two(*support[0], *support[1]);
      default: return circle_of_three(*support[0], *support[1], *support[2]);
    }
  }
  const Disk* p = pts[n - 1];
  Circle c = welzl(pts, n - 1, support);
  if (c.radius >= 0 && circle_contains_disk(c, *p, 1e-7 * (1 + c.radius))) return c;
  support.push_back(p);
  c = welzl(pts, n - 1, support);
  support.pop_back();
  // move-to-front so later queries see the hard disk early
  std::rotate(pts.begin(), pts.begin() + static_cast<long>(n - 1), pts.begin() + static_cast<long>(n));
  return c;
}

} // namespace

Circle min_enclosing_disk(const std::vector<Disk>& disks) {
  if (disks.empty()) throw std::invalid_argument("min_enclosing_disk: empty input");
  if (disks.size() == 1) return circle_of_one(disks[0]);

  std::vector<const Disk*> pts;
  pts.reserve(disks.size());
  for (const Disk& d : disks) pts.push_back(&d);
  // deterministic shuffle: fixed seed, same order for identical input
  SplitMix64 rng{0x5eed0123456789abull};
  for (std::size_t i = pts.size() - 1; i > 0; --i)
    std::swap(pts[i], pts[rng() % (i + 1)]);

  std::vector<const Disk*> support;
  Circle c = welzl(pts, pts.size(), support);

  const double tol = 1e-7 * (1 + std::abs(c.radius));
  const bool c_ok = c.radius >= 0 && contains_all(c, disks, tol);

  /* The recursion's support argument is airtight for points but not for
     disks: it can settle on a circle that contains everything yet is not
     minimal. The optimum is determined by at most three disks, so cross-check
     every such support and keep the smaller result. */
  std::optional<Circle> best;
  auto consider = [&](const Circle& cand) {
    if (!contains_all(cand, disks, tol)) return;
    if (!best || cand.radius < best->radius) best = cand;
  };
  const std::size_t n = disks.size();
  for (std::size_t i = 0; i < n; ++i) {
    consider(circle_of_one(disks[i]));
    for (std::size_t j = i + 1; j < n; ++j) {
      consider(circle_of_two(disks[i], disks[j]));
      for (std::size_t k = j + 1; k < n; ++k)
        consider(circle_of_three(disks[i], disks[j], disks[k]));
    }
  }
  if (c_ok && (!best || c.radius <= best->radius + kGeomTol)) return c;
  if (best) return *best;
  // last resort: center of mass, radius to fit
  Circle r{{0, 0}, 0};
  for (const Disk& d : disks) {
    r.center.x += d.center.x / static_cast<double>(n);
    r.center.y += d.center.y / static_cast<double>(n);
  }
  for (const Disk& d : disks)
    r.radius = std::max(r.radius, dist(r.center, d.center) + d.radius);
  return r;
}

namespace {

template <typename Member>
std::vector<Point2> collect_cells(double xmin, double xmax, double ymin, double ymax,
                                  const GridSpec& grid, Member inside) {
  std::vector<Point2> out;
  if (!(xmin <= xmax) || !(ymin <= ymax)) return out;
  const double s = grid.cell_size;
  const long long i0 = static_cast<long long>(std::floor((xmin - grid.origin.x) / s - 0.5)) - 1;
  const long long i1 = static_cast<long long>(std::ceil((xmax - grid.origin.x) / s - 0.5)) + 1;
  const long long j0 = static_cast<long long>(std::floor((ymin - grid.origin.y) / s - 0.5)) - 1;
  const long long j1 = static_cast<long long>(std::ceil((ymax - grid.origin.y) / s - 0.5)) + 1;
  for (long long j = j0; j <= j1; ++j) {
    const double y = grid.origin.y + (static_cast<double>(j) + 0.5) * s;
    for (long long i = i0; i <= i1; ++i) {
      const double x = grid.origin.x + (static_cast<double>(i) + 0.5) * s;
      if (inside(Point2{x, y})) out.push_back(Point2{x, y});
    }
  }
  return out;
}

} // namespace

std::vector<Point2> discretize(const Disk& d, const GridSpec& grid) {
  if (d.radius < 0) return {};
  const double r2 = d.radius * d.radius;
  return collect_cells(d.center.x - d.radius, d.center.x + d.radius,
                       d.center.y - d.radius, d.center.y + d.radius, grid,
                       [&](Point2 p) { return dist2(p, d.center) <= r2; });
}

std::vector<Point2> discretize(const Disk& a, const Disk& b, const GridSpec& grid) {
  if (a.radius < 0 || b.radius < 0) return {};
  const double ra2 = a.radius * a.radius, rb2 = b.radius * b.radius;
  return collect_cells(std::max(a.center.x - a.radius, b.center.x - b.radius),
                       std::min(a.center.x + a.radius, b.center.x + b.radius),
                       std::max(a.center.y - a.radius, b.center.y - b.radius),
                       std::min(a.center.y + a.radius, b.center.y + b.radius), grid,
                       [&](Point2 p) { return dist2(p, a.center) <= ra2 && dist2(p, b.center) <= rb2; });
}

} // namespace uavsim
