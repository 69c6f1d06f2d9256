#pragma once

#include <algorithm>
#include <array>
#include <cmath>

namespace xxzq {

template <class F>
SimplexResult nelder_mead_2d(F&& f, double x0, double y0, double step, double tol, int max_eval) {
  struct Vertex {
    double x, y, v;
  };
  int evals = 0;
  auto eval = [&](double x, double y) {
    ++evals;
    return Vertex{x, y, f(x, y)};
  };
  std::array<Vertex, 3> s{eval(x0, y0), eval(x0 + step, y0), eval(x0, y0 + step)};
  auto order = [&] {
    std::stable_sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.v < b.v; });
  };
  order();
  while (evals < max_eval) {
    const double size = std::max({std::hypot(s[1].x - s[0].x, s[1].y - s[0].y),
                                  std::hypot(s[2].x - s[0].x, s[2].y - s[0].y)});
    if (size < tol) break;
    const double cx = (s[0].x + s[1].x) / 2.0;
    const double cy = (s[0].y + s[1].y) / 2.0;
    const Vertex r = eval(2.0 * cx - s[2].x, 2.0 * cy - s[2].y);
    if (r.v < s[0].v) {
      const Vertex e = eval(3.0 * cx - 2.0 * s[2].x, 3.0 * cy - 2.0 * s[2].y);
      s[2] = e.v < r.v ? e : r;
    } else if (r.v < s[1].v) {
      s[2] = r;
    } else {
      const bool outside = r.v < s[2].v;
      const Vertex c = outside ? eval(1.5 * cx - 0.5 * s[2].x, 1.5 * cy - 0.5 * s[2].y)
                               : eval(0.5 * cx + 0.5 * s[2].x, 0.5 * cy + 0.5 * s[2].y);
      if (c.v < (outside ? r.v : s[2].v)) {
        s[2] = c;
      } else {
        s[1] = eval((s[0].x + s[1].x) / 2.0, (s[0].y + s[1].y) / 2.0);
        s[2] = eval((s[0].x + s[2].x) / 2.0, (s[0].y + s[2].y) / 2.0);
      }
    }
    order();
  }
  return {s[0].x, s[0].y, s[0].v, evals};
}

}  // namespace xxzq
