#include "rheo/fab/slicer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <cstdint>

#include "rheo/error.hpp"
#include "rheo/parallel.hpp"

namespace rheo {

double signed_area(const Polygon2& poly) {
  double a = 0.0;
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % n];
    a += p[0] * q[1] - q[0] * p[1];
  }
  return 0.5 * a;
}

double perimeter(const Polygon2& poly) {
  double len = 0.0;
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % n];
    len += std::hypot(q[0] - p[0], q[1] - p[1]);
  }
  return len;
}

std::vector<Polygon2> trace_contours(const SliceGrid& grid, const std::vector<double>& values) {
  const int nx = grid.nx, nz = grid.nz;
  if (nx < 2 || nz < 2 || values.size() != grid.count()) {
    throw_invalid_argument("grid", "node values do not match the grid");
  }
  auto node = [&](int i, int j) {
    return values[static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) +
                  static_cast<std::size_t>(i)];
  };
  // Edge ids: horizontal edge (i, j)-(i+1, j) is j*nx + i; vertical edge
  // (i, j)-(i, j+1) is count + j*nx + i.
  const std::size_t vbase = grid.count();
  auto hedge = [&](int i, int j) {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i);
  };
  auto vedge = [&](int i, int j) { return vbase + hedge(i, j); };
  auto crossing = [&](std::size_t id) -> std::array<double, 2> {
    bool vertical = id >= vbase;
    std::size_t local = vertical ? id - vbase : id;
    int i = static_cast<int>(local % static_cast<std::size_t>(nx));
    int j = static_cast<int>(local / static_cast<std::size_t>(nx));
    double va = node(i, j);
    double vb = vertical ? node(i, j + 1) : node(i + 1, j);
    double t = va / (va - vb);
    double x = grid.x0 + grid.spacing * i;
    double z = grid.z0 + grid.spacing * j;
    if (vertical) {
      z += grid.spacing * t;
    } else {
      x += grid.spacing * t;
    }
    return {x, z};
  };

  std::vector<std::int64_t> next(2 * grid.count(), -1);
  std::vector<std::size_t> starts;
  for (int j = 0; j + 1 < nz; ++j) {
    for (int i = 0; i + 1 < nx; ++i) {
      const double v[4] = {node(i, j), node(i + 1, j), node(i + 1, j + 1), node(i, j + 1)};
      const bool in[4] = {v[0] < 0, v[1] < 0, v[2] < 0, v[3] < 0};
      int count_in = in[0] + in[1] + in[2] + in[3];
      if (count_in == 0 || count_in == 4) continue;
      const std::size_t e[4] = {hedge(i, j), vedge(i + 1, j), hedge(i, j + 1), vedge(i, j)};
      bool saddle = count_in == 2 && in[0] == in[2];
      bool center_in = (v[0] + v[1] + v[2] + v[3]) < 0;
      for (int n = 0; n < 4; ++n) {
        if (!(in[n] && !in[(n + 1) % 4])) continue;
        int partner = -1;
        if (saddle) {
          partner = center_in ? (n + 1) % 4 : (n + 3) % 4;
        } else {
          for (int m = 0; m < 4; ++m) {
            if (!in[m] && in[(m + 1) % 4]) partner = m;
          }
        }
        next[e[n]] = static_cast<std::int64_t>(e[partner]);
        starts.push_back(e[n]);
      }
    }
  }

  std::vector<Polygon2> loops;
  std::vector<char> used(next.size(), 0);
  for (std::size_t s : starts) {
    if (used[s]) continue;
    Polygon2 poly;
    std::size_t cur = s;
    while (!used[cur]) {
      used[cur] = 1;
      auto p = crossing(cur);
      if (poly.empty() || poly.back() != p) poly.push_back(p);
      std::int64_t nx_id = next[cur];
      if (nx_id < 0) throw_invalid_argument("grid", "open contour; border nodes must be outside");
      cur = static_cast<std::size_t>(nx_id);
    }
    while (poly.size() > 1 && poly.front() == poly.back()) poly.pop_back();
    if (poly.size() >= 3) loops.push_back(std::move(poly));
  }
  return loops;
}

LayerStack slice_field(const ScalarField& f, const Box3& bbox, double layer_height,
                       double resolution, std::size_t memory_budget) {
  if (!(layer_height > 0) || !std::isfinite(layer_height)) {
    throw_invalid_argument("layer_height", "must be > 0");
  }
  if (!(resolution > 0) || !std::isfinite(resolution)) {
    throw_invalid_argument("resolution", "must be > 0");
  }
  if (!is_finite(bbox.lo) || !is_finite(bbox.hi) || !(bbox.hi.x >= bbox.lo.x) ||
      !(bbox.hi.y > bbox.lo.y) || !(bbox.hi.z >= bbox.lo.z)) {
    throw_invalid_argument("bbox", "must be finite with positive height");
  }
  Vec3 ext = bbox.extent();
  double cols = std::floor(ext.x / resolution + 1e-9) + 3;
  double rows = std::floor(ext.z / resolution + 1e-9) + 3;
  double layers = std::ceil(ext.y / layer_height - 1e-9);
  double nodes = cols * rows;
  double bytes = nodes * layers * 2.0 + nodes * sizeof(double) * thread_count();
  if (cols > 1e8 || rows > 1e8 || bytes > static_cast<double>(memory_budget)) {
    throw_resource_limit("slice", "slicing grid exceeds the memory budget");
  }

  LayerStack stack;
  stack.layer_height = layer_height;
  stack.y_min = bbox.lo.y;
  stack.grid = {bbox.lo.x - resolution, bbox.lo.z - resolution, resolution,
                static_cast<int>(cols), static_cast<int>(rows)};
  const std::size_t nl = static_cast<std::size_t>(layers);
  stack.layers.resize(nl);
  stack.model_mask.assign(nl, {});
  stack.support_mask.assign(nl, std::vector<std::uint8_t>(stack.grid.count(), 0));

  const SliceGrid& g = stack.grid;
  parallel_for(nl, [&](std::size_t begin, std::size_t end) {
    std::vector<double> values(g.count());
    for (std::size_t k = begin; k < end; ++k) {
      double y = bbox.lo.y + (static_cast<double>(k) + 0.5) * layer_height;
      auto& mask = stack.model_mask[k];
      mask.assign(g.count(), 0);
      for (int j = 0; j < g.nz; ++j) {
        for (int i = 0; i < g.nx; ++i) {
          std::size_t id = static_cast<std::size_t>(j) * static_cast<std::size_t>(g.nx) +
                           static_cast<std::size_t>(i);
          bool border = i == 0 || j == 0 || i == g.nx - 1 || j == g.nz - 1;
          double v = border ? g.spacing : f({g.x0 + g.spacing * i, y, g.z0 + g.spacing * j});
          values[id] = v;
          mask[id] = v < 0 ? 1 : 0;
        }
      }
      stack.layers[k].elevation = y;
      stack.layers[k].model = trace_contours(g, values);
    }
  });
  return stack;
}

void estimate_support(LayerStack& stack, double overhang_deg) {
  if (!(overhang_deg > 0 && overhang_deg < 90)) {
    throw_invalid_argument("overhang_deg", "must be in (0, 90)");
  }
  const SliceGrid& g = stack.grid;
  const std::size_t nl = stack.layers.size();
  const double reach = stack.layer_height * std::tan(overhang_deg * std::numbers::pi / 180.0);
  const int rad = static_cast<int>(std::floor(reach / g.spacing + 1e-9));
  std::vector<std::array<int, 2>> disk;
  for (int dj = -rad; dj <= rad; ++dj) {
    for (int di = -rad; di <= rad; ++di) {
      double d2 = (static_cast<double>(di) * di + static_cast<double>(dj) * dj) * g.spacing * g.spacing;
      if (d2 <= reach * reach * (1.0 + 1e-9)) disk.push_back({di, dj});
    }
  }

  stack.overhang_deg = overhang_deg;
  stack.support_mask.assign(nl, std::vector<std::uint8_t>(g.count(), 0));
  auto id_of = [&](int i, int j) {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(g.nx) + static_cast<std::size_t>(i);
  };
  // The lowest layer holding any model rests on the build plate.
  std::size_t plate = 0;
  while (plate < nl && std::find(stack.model_mask[plate].begin(), stack.model_mask[plate].end(),
                                 std::uint8_t{1}) == stack.model_mask[plate].end()) {
    ++plate;
  }
  for (std::size_t k = plate + 1; k < nl; ++k) {
    const auto& below = stack.model_mask[k - 1];
    const auto& here = stack.model_mask[k];
    for (int j = 0; j < g.nz; ++j) {
      for (int i = 0; i < g.nx; ++i) {
        if (!here[id_of(i, j)]) continue;
        bool held = false;
        for (const auto& d : disk) {
          int ii = i + d[0], jj = j + d[1];
          if (ii < 0 || jj < 0 || ii >= g.nx || jj >= g.nz) continue;
          if (below[id_of(ii, jj)]) {
            held = true;
            break;
          }
        }
        if (held) continue;
        for (std::size_t m = k; m-- > plate;) {
          if (stack.model_mask[m][id_of(i, j)]) break;
          stack.support_mask[m][id_of(i, j)] = 1;
        }
      }
    }
  }

  std::size_t model_nodes = 0, support_nodes = 0;
  std::vector<double> values(g.count());
  for (std::size_t k = 0; k < nl; ++k) {
    const auto& sup = stack.support_mask[k];
    for (std::size_t n = 0; n < g.count(); ++n) {
      model_nodes += stack.model_mask[k][n];
      support_nodes += sup[n];
      values[n] = sup[n] ? -1.0 : 1.0;
    }
    stack.layers[k].support = trace_contours(g, values);
  }
  const double cell = g.spacing * g.spacing * stack.layer_height;
  stack.model_volume = static_cast<double>(model_nodes) * cell;
  stack.support_volume = static_cast<double>(support_nodes) * cell;
  stack.support_fraction = model_nodes > 0 ? stack.support_volume / stack.model_volume : 0.0;
}

std::vector<double> layer_areas(const LayerStack& stack) {
  std::vector<double> out;
  out.reserve(stack.layers.size());
  for (const Layer& l : stack.layers) {
    double a = 0.0;
    for (const auto& p : l.model) a += signed_area(p);
    out.push_back(a);
  }
  return out;
}

}  // namespace rheo
