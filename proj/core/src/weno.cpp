#include "kinetic/weno.hpp"

#include <algorithm>
#include <cmath>

#include "kinetic/errors.hpp"

namespace kinetic {

Weno1D weno_extrapolate_1d(const double f[3], double dx, double xi_b, double eps_w) {
  if (!(dx > 0.0)) fail(errc::validation_error, "stencil spacing must be positive");
  if (!(1.0 - dx * dx - dx > 0.0))
    fail(errc::validation_error, "spacing too coarse for positive linear weights");
  const double f1 = f[0], f2 = f[1], f3 = f[2];

  Weno1D e;
  const double a = f2 - f1;
  const double b = f3 - 2.0 * f2 + f1;
  e.beta[0] = dx * dx;
  e.beta[1] = a * a / (eps_w + f1 * f1 + f2 * f2);
  e.beta[2] =
      (12.0 * a * a - 24.0 * a * b + 25.0 * b * b) / (12.0 * (eps_w + f1 * f1 + f2 * f2 + f3 * f3));

  const double d0 = dx * dx, d1 = dx, d2 = 1.0 - d0 - d1;
  const double dlin[3] = {d0, d1, d2};
  double alpha[3], asum = 0.0;
  for (int r = 0; r < 3; ++r) {
    const double den = eps_w + e.beta[r];
    alpha[r] = dlin[r] / (den * den);
    asum += alpha[r];
  }
  for (int r = 0; r < 3; ++r) e.w[r] = alpha[r] / asum;

  // Candidate polynomials in the inward coordinate xi (node k at (k-1) dx),
  // evaluated with their derivatives at the boundary offset xi_b.
  const double slope = a / dx;
  const double curv = b / (dx * dx);  // p2'' (constant)
  const double p0v = f1;
  const double p1v = f1 + slope * xi_b;
  const double p2v = p1v + 0.5 * curv * xi_b * (xi_b - dx);
  const double p1d = slope;
  const double p2d = slope + 0.5 * curv * (2.0 * xi_b - dx);

  e.fk[0] = e.w[0] * p0v + e.w[1] * p1v + e.w[2] * p2v;
  e.fk[1] = e.w[1] * p1d + e.w[2] * p2d;
  e.fk[2] = e.w[2] * curv;
  return e;
}

namespace {

struct Poly3 {
  double c[3];  // monomial coefficients about the local origin
};

// Quadratic Lagrange basis through (t0, t1, t2) for node m.
Poly3 lagrange3(double t0, double t1, double t2, int m) {
  const double t[3] = {t0, t1, t2};
  const double ta = t[(m + 1) % 3], tb = t[(m + 2) % 3];
  const double den = (t[m] - ta) * (t[m] - tb);
  return {{ta * tb / den, -(ta + tb) / den, 1.0 / den}};
}

// Linear Lagrange through (t0, t1) for node m; quadratic coefficient zero.
Poly3 lagrange2(double t0, double t1, int m) {
  const double den = m == 0 ? t0 - t1 : t1 - t0;
  const double other = m == 0 ? t1 : t0;
  return {{-other / den, 1.0 / den, 0.0}};
}

double poly_eval(const Poly3& p, double t) { return p.c[0] + t * (p.c[1] + t * p.c[2]); }

double falling(int p, int a) {
  double r = 1.0;
  for (int k = 0; k < a; ++k) r *= p - k;
  return r;
}

// Integral of xi^i eta^j over the dx-by-dy cell centered at the origin.
double cell_integral(int i, int j, double dx, double dy) {
  if (i < 0 || j < 0 || (i % 2) || (j % 2)) return 0.0;
  return std::pow(dx, i + 1) * std::pow(dy, j + 1) / ((i + 1) * (j + 1) * std::pow(2.0, i + j));
}

int pack_index(int i, int j, int n) {  // upper-triangle packing, i <= j
  return i * n - i * (i - 1) / 2 + (j - i);
}

// B = M^T S M packed; S assembled from the derivative multi-indices `alphas`.
template <int N, int NM>
void assemble_form(const double M[NM][N], const int (*alphas)[2], int nalpha, int deg, double dx,
                   double dy, double area, double* packed) {
  double S[NM][NM] = {};
  for (int t = 0; t < nalpha; ++t) {
    const int a1 = alphas[t][0], a2 = alphas[t][1];
    const double factor = (a1 + a2 == 1) ? 1.0 : area;
    for (int p = 0; p < NM; ++p) {
      const int p1 = p / deg, p2 = p % deg;
      if (p1 < a1 || p2 < a2) continue;
      const double cp = falling(p1, a1) * falling(p2, a2);
      for (int q = 0; q < NM; ++q) {
        const int q1 = q / deg, q2 = q % deg;
        if (q1 < a1 || q2 < a2) continue;
        const double cq = falling(q1, a1) * falling(q2, a2);
        S[p][q] += factor * cp * cq *
                   cell_integral(p1 + q1 - 2 * a1, p2 + q2 - 2 * a2, dx, dy);
      }
    }
  }
  for (int i = 0; i < N; ++i) {
    for (int j = i; j < N; ++j) {
      double v = 0.0;
      for (int p = 0; p < NM; ++p)
        for (int q = 0; q < NM; ++q) v += M[p][i] * S[p][q] * M[q][j];
      packed[pack_index(i, j, N)] = v;
    }
  }
}

template <int N>
double quad_form(const double* packed, const double* v) {
  double diag = 0.0, off = 0.0;
  for (int i = 0; i < N; ++i) {
    diag += packed[pack_index(i, i, N)] * v[i] * v[i];
    for (int j = i + 1; j < N; ++j) off += packed[pack_index(i, j, N)] * v[i] * v[j];
  }
  return diag + 2.0 * off;
}

Stencil2D select_impl(const PhaseMesh& mesh, Vec2 xp, Vec2 inward) {
  if (mesh.grid.dim != 2) fail(errc::validation_error, "2D stencil selection needs a 2D mesh");
  Stencil2D st;
  const auto& g = mesh.grid;
  const double n[2] = {inward.x, inward.y};
  const int a = std::abs(n[1]) >= std::abs(n[0]) ? 1 : 0;  // line axis
  const int b = 1 - a;
  st.line_axis = a;
  const double xp_c[2] = {xp.x, xp.y};
  const int s = n[a] > 0.0 ? 1 : -1;
  const double tol = 1e-12 * (std::abs(xp_c[a]) + g.h[a]);

  double frac = (xp_c[a] - g.origin[a]) / g.h[a];
  int k = s > 0 ? static_cast<int>(std::ceil(frac - tol / g.h[a]))
                : static_cast<int>(std::floor(frac + tol / g.h[a]));

  for (; k >= 0 && k < g.npts[a] && st.nlines < 3; k += s) {
    const double line_c = g.origin[a] + k * g.h[a];
    const double t = (line_c - xp_c[a]) / n[a];
    const double cross = xp_c[b] + n[b] * t;
    const int j0 = static_cast<int>(std::lround((cross - g.origin[b]) / g.h[b]));
    // Nodes in order of distance from the crossing, small index first on ties.
    int found = 0;
    int slots[3];
    Vec2 pts[3];
    for (int radius = 0; radius <= 4 && found < 3; ++radius) {
      // Candidates at this radius ordered by true distance from the crossing.
      int cand[2];
      int ncand = 0;
      if (radius == 0) {
        cand[ncand++] = j0;
      } else {
        const double dl = std::abs(g.origin[b] + (j0 - radius) * g.h[b] - cross);
        const double dr = std::abs(g.origin[b] + (j0 + radius) * g.h[b] - cross);
        if (dl <= dr) {
          cand[ncand++] = j0 - radius;
          cand[ncand++] = j0 + radius;
        } else {
          cand[ncand++] = j0 + radius;
          cand[ncand++] = j0 - radius;
        }
      }
      for (int c = 0; c < ncand && found < 3; ++c) {
        const int j = cand[c];
        if (j < 0 || j >= g.npts[b]) continue;
        const int node = a == 1 ? g.lin(j, k) : g.lin(k, j);
        if (mesh.cls[node] != NodeClass::interior) continue;
        slots[found] = mesh.slot_of[node];
        pts[found] = mesh.position(node);
        ++found;
      }
    }
    if (found == 0) continue;
    const int L = st.nlines;
    st.count[L] = found;
    for (int m = 0; m < found; ++m) {
      st.slots[L][m] = slots[m];
      st.pos[L][m] = pts[m];
    }
    ++st.nlines;
  }

  const bool l3 = st.nlines >= 3 && st.count[0] >= 3 && st.count[1] >= 3 && st.count[2] >= 3;
  const bool l2 = st.nlines >= 2 && st.count[0] >= 2 && st.count[1] >= 2;
  const bool l1 = st.nlines >= 1 && st.count[0] >= 1;
  st.levels = l3 ? 3 : (l2 ? 2 : (l1 ? 1 : 0));
  if (st.levels == 0)
    fail(errc::insufficient_interior, "no interior node reachable along the inward normal");
  return st;
}

}  // namespace

Stencil2D select_stencil_2d_partial(const PhaseMesh& mesh, Vec2 xp, Vec2 inward) {
  return select_impl(mesh, xp, inward);
}

Stencil2D select_stencil_2d(const PhaseMesh& mesh, Vec2 xp, Vec2 inward) {
  Stencil2D st = select_impl(mesh, xp, inward);
  if (st.levels < 3)
    fail(errc::insufficient_interior, "fewer than 9 admissible interior stencil nodes");
  return st;
}

Weno2DWorkspace build_weno2d(const PhaseMesh& mesh, const Stencil2D& st,
                             const std::vector<Vec2>& targets, Vec2 xp, double eps_w) {
  Weno2DWorkspace ws;
  ws.stencil = st;
  ws.eps_w = eps_w;
  const int a = st.line_axis, b = 1 - a;
  const double dx = mesh.grid.h[0], dy = mesh.grid.dim == 2 ? mesh.grid.h[1] : mesh.grid.h[0];

  for (int i = 0; i < st.nlines; ++i) {
    const int lim = std::min(st.count[i], 3);
    for (int m = 0; m < lim; ++m) {
      const int slot = st.slots[i][m];
      if (slot < 0 || mesh.cls[mesh.node_of[slot]] != NodeClass::interior)
        fail(errc::stencil_outside_domain, "stencil references a non-interior node");
      ws.gather_slots[i * 3 + m] = slot;
    }
  }

  ws.beta0 = dx * dx + dy * dy;
  ws.d[0] = ws.beta0;
  ws.d[1] = std::sqrt(ws.beta0);
  ws.d[2] = 1.0 - ws.d[0] - ws.d[1];
  if (!(ws.d[2] > 0.0))
    fail(errc::validation_error, "spacing too coarse for positive linear weights");

  auto local = [&](Vec2 p, int axis) {
    const double pc[2] = {p.x, p.y};
    const double xc[2] = {xp.x, xp.y};
    return pc[axis] - xc[axis];
  };

  // Level 2: per-line quadratic Lagrange in the free axis, quadratic across lines.
  Poly3 Lx2[3][3], Ly2[3];
  if (st.levels >= 3) {
    double eta[3];
    for (int i = 0; i < 3; ++i) eta[i] = local(st.pos[i][0], a);
    for (int i = 0; i < 3; ++i) {
      const double x0 = local(st.pos[i][0], b), x1 = local(st.pos[i][1], b),
                   x2 = local(st.pos[i][2], b);
      for (int m = 0; m < 3; ++m) Lx2[i][m] = lagrange3(x0, x1, x2, m);
      Ly2[i] = lagrange3(eta[0], eta[1], eta[2], i);
    }
    double M2[9][9];
    for (int p = 0; p < 9; ++p)
      for (int q = 0; q < 9; ++q) M2[p][q] = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int m = 0; m < 3; ++m)
        for (int pb = 0; pb < 3; ++pb)
          for (int pa = 0; pa < 3; ++pa) {
            // monomial index: free-axis power major for axis b, line-axis power
            const int mono = pb * 3 + pa;
            M2[mono][i * 3 + m] = Lx2[i][m].c[pb] * Ly2[i].c[pa];
          }
    static const int alphas2[5][2] = {{1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
    const double hb = b == 0 ? dx : dy, ha = a == 0 ? dx : dy;
    assemble_form<9, 9>(M2, alphas2, 5, 3, hb, ha, dx * dy, ws.B2);
  }

  // Level 1: bilinear on the first two nodes of the first two lines.
  Poly3 Lx1[2][2], Ly1[2];
  if (st.levels >= 2) {
    double eta[2];
    for (int i = 0; i < 2; ++i) eta[i] = local(st.pos[i][0], a);
    for (int i = 0; i < 2; ++i) {
      const double x0 = local(st.pos[i][0], b), x1 = local(st.pos[i][1], b);
      for (int m = 0; m < 2; ++m) Lx1[i][m] = lagrange2(x0, x1, m);
      Ly1[i] = lagrange2(eta[0], eta[1], i);
    }
    double M1[4][4];
    for (int p = 0; p < 4; ++p)
      for (int q = 0; q < 4; ++q) M1[p][q] = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int m = 0; m < 2; ++m)
        for (int pb = 0; pb < 2; ++pb)
          for (int pa = 0; pa < 2; ++pa) M1[pb * 2 + pa][i * 2 + m] = Lx1[i][m].c[pb] * Ly1[i].c[pa];
    static const int alphas1[2][2] = {{1, 0}, {0, 1}};
    const double hb = b == 0 ? dx : dy, ha = a == 0 ? dx : dy;
    assemble_form<4, 4>(M1, alphas1, 2, 2, hb, ha, dx * dy, ws.B1);
  }

  ws.targets.resize(targets.size());
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const double tb = local(targets[t], b), ta = local(targets[t], a);
    auto& tg = ws.targets[t];
    tg.c0 = 1.0;
    if (st.levels >= 2)
      for (int i = 0; i < 2; ++i)
        for (int m = 0; m < 2; ++m)
          tg.c1[i * 2 + m] = poly_eval(Lx1[i][m], tb) * poly_eval(Ly1[i], ta);
    if (st.levels >= 3)
      for (int i = 0; i < 3; ++i)
        for (int m = 0; m < 3; ++m)
          tg.c2[i * 3 + m] = poly_eval(Lx2[i][m], tb) * poly_eval(Ly2[i], ta);
  }
  return ws;
}

void weno2d_weights(const Weno2DWorkspace& ws, const double* vals, double w[3], double beta_out[3]) {
  const int levels = ws.stencil.levels;
  double beta[3] = {ws.beta0, 0.0, 0.0};
  int avail = 1;
  if (levels >= 2) {
    const double s1v[4] = {vals[0], vals[1], vals[3], vals[4]};
    double sum1 = 0.0;
    for (int i = 0; i < 4; ++i) sum1 += s1v[i] * s1v[i];
    beta[1] = quad_form<4>(ws.B1, s1v) / (ws.eps_w + sum1);
    avail = 2;
  }
  if (levels >= 3) {
    double sum2 = 0.0;
    for (int i = 0; i < 9; ++i) sum2 += vals[i] * vals[i];
    beta[2] = quad_form<9>(ws.B2, vals) / (ws.eps_w + sum2);
    avail = 3;
  }

  double alpha[3] = {0, 0, 0}, asum = 0.0;
  for (int r = 0; r < avail; ++r) {
    const double den = ws.eps_w + beta[r];
    alpha[r] = ws.d[r] / (den * den);
    asum += alpha[r];
  }
  for (int r = 0; r < 3; ++r) w[r] = r < avail ? alpha[r] / asum : 0.0;
  if (beta_out)
    for (int r = 0; r < 3; ++r) beta_out[r] = beta[r];
}

double weno2d_apply(const Weno2DWorkspace& ws, const double* vals, const double w[3], int target) {
  const auto& tg = ws.targets[static_cast<std::size_t>(target)];
  double out = w[0] * vals[0];
  if (w[1] != 0.0) {
    double v1 = tg.c1[0] * vals[0] + tg.c1[1] * vals[1] + tg.c1[2] * vals[3] + tg.c1[3] * vals[4];
    out += w[1] * v1;
  }
  if (w[2] != 0.0) {
    double v2 = 0.0;
    for (int i = 0; i < 9; ++i) v2 += tg.c2[i] * vals[i];
    out += w[2] * v2;
  }
  return out;
}

double weno2d_value(const Weno2DWorkspace& ws, const double* vals, int target, Weno2DEval* diag) {
  double w[3], beta[3];
  weno2d_weights(ws, vals, w, beta);
  if (diag)
    for (int r = 0; r < 3; ++r) {
      diag->beta[r] = beta[r];
      diag->w[r] = w[r];
    }
  return weno2d_apply(ws, vals, w, target);
}

double eno_derivative(const double* s, const double* g, int n, int c) {
  if (n <= 1) return 0.0;
  int lo = c, hi = c;
  auto dd = [&](int i, int j) {  // first divided difference
    return (g[j] - g[i]) / (s[j] - s[i]);
  };

  // First growth step: side with the smaller first divided difference.
  double d_left = lo > 0 ? std::abs(dd(lo - 1, lo)) : -1.0;
  double d_right = hi < n - 1 ? std::abs(dd(hi, hi + 1)) : -1.0;
  if (d_left < 0.0 && d_right < 0.0) return 0.0;
  bool take_left = d_right < 0.0 || (d_left >= 0.0 && d_left <= d_right);
  if (take_left) --lo; else ++hi;

  const double slope = dd(lo, hi);
  const double slope_scale = std::abs(slope);

  // Second growth step: smaller second divided difference, rejected when the
  // quadratic correction dwarfs the current stencil slope (jump guard).
  double dd2_left = lo > 0 ? (dd(lo, hi) - dd(lo - 1, lo)) / (s[hi] - s[lo - 1]) : 0.0;
  double dd2_right = hi < n - 1 ? (dd(hi, hi + 1) - dd(lo, hi)) / (s[hi + 1] - s[lo]) : 0.0;
  bool can_left = lo > 0, can_right = hi < n - 1;
  bool left2 = false;
  if (can_left && can_right)
    left2 = std::abs(dd2_left) <= std::abs(dd2_right);
  else if (can_left)
    left2 = true;
  else if (!can_right)
    return slope;  // only two feet available

  const double dd2 = left2 ? dd2_left : dd2_right;
  const double span = left2 ? s[hi] - s[lo - 1] : s[hi + 1] - s[lo];
  if (std::abs(dd2) * span > 10.0 * slope_scale) return slope;

  if (left2) --lo; else ++hi;
  // Quadratic through (lo, lo+1, lo+2): derivative at the center point.
  const double d01 = dd(lo, lo + 1);
  const double d012 = (dd(lo + 1, lo + 2) - d01) / (s[lo + 2] - s[lo]);
  return d01 + d012 * ((s[c] - s[lo]) + (s[c] - s[lo + 1]));
}

}  // namespace kinetic
