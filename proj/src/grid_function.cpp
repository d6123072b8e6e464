#include "bv/grid_function.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "bv/reduction.hpp"

namespace bv {

TableData::TableData(Ladder l, std::vector<double> node_values) : ladder(std::move(l)) {
  node_counts = ladder.node_counts();
  std::size_t total = 1;
  for (int i = 0; i < ladder.dim(); ++i) {
    node_coords.push_back(ladder.nodes(i));
    total *= static_cast<std::size_t>(node_counts[static_cast<std::size_t>(i)]);
  }
  if (node_values.size() != total) {
    throw std::invalid_argument("TableData: expected " + std::to_string(total) +
                                " node values, got " + std::to_string(node_values.size()));
  }
  values = std::move(node_values);
}

std::size_t TableData::flatten(std::span<const int> idx) const {
  std::size_t flat = 0;
  for (int i = 0; i < dim(); ++i) {
    flat = flat * static_cast<std::size_t>(node_counts[static_cast<std::size_t>(i)]) +
           static_cast<std::size_t>(idx[static_cast<std::size_t>(i)]);
  }
  return flat;
}

double TableData::eval(const Point& x) const {
  std::size_t flat = 0;
  for (int i = 0; i < dim(); ++i) {
    const auto& nodes = node_coords[static_cast<std::size_t>(i)];
    // Largest node <= x_i; node 0 is always 0.
    const auto it = std::upper_bound(nodes.begin(), nodes.end(), x[i]);
    const std::size_t k = static_cast<std::size_t>(it - nodes.begin()) - 1;
    flat = flat * static_cast<std::size_t>(node_counts[static_cast<std::size_t>(i)]) + k;
  }
  return values[flat];
}

GridFunction GridFunction::from_callable(int dim, std::string label, Eval fn) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("GridFunction: bad dimension");
  GridFunction out;
  out.dim_ = dim;
  out.label_ = std::move(label);
  out.eval_ = std::move(fn);
  return out;
}

GridFunction GridFunction::from_table(Ladder ladder, std::vector<double> node_values,
                                      std::string label) {
  GridFunction out;
  out.dim_ = ladder.dim();
  out.label_ = std::move(label);
  out.table_ = std::make_shared<TableData>(std::move(ladder), std::move(node_values));
  return out;
}

double GridFunction::operator()(const Point& x) const {
  if (x.dim() != dim_) throw std::invalid_argument("GridFunction: dimension mismatch");
  if (table_) return table_->eval(x);
  return eval_(x);
}

const TableData& GridFunction::table() const {
  if (!table_) throw std::invalid_argument("GridFunction: not tabulated");
  return *table_;
}

TableData tabulate(const GridFunction& f, const Ladder& ladder) {
  if (f.dim() != ladder.dim()) throw std::invalid_argument("tabulate: dimension mismatch");
  if (f.tabulated() && f.table().ladder == ladder) return f.table();

  const std::vector<int> counts = ladder.node_counts();
  std::vector<std::vector<double>> coords;
  std::size_t total = 1;
  for (int i = 0; i < ladder.dim(); ++i) {
    coords.push_back(ladder.nodes(i));
    total *= static_cast<std::size_t>(counts[static_cast<std::size_t>(i)]);
  }

  std::vector<double> values(total);
  const int d = ladder.dim();
  parallel_for(total, [&](std::size_t begin, std::size_t end) {
    std::array<int, kMaxDim> idx{};
    for (std::size_t flat = begin; flat < end; ++flat) {
      std::size_t rem = flat;
      for (int i = d - 1; i >= 0; --i) {
        const auto n = static_cast<std::size_t>(counts[static_cast<std::size_t>(i)]);
        idx[static_cast<std::size_t>(i)] = static_cast<int>(rem % n);
        rem /= n;
      }
      Point p = Point::zeros(d);
      for (int i = 0; i < d; ++i) {
        p[i] = coords[static_cast<std::size_t>(i)]
                     [static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
      }
      values[flat] = f(p);
    }
  });
  return TableData(ladder, std::move(values));
}

std::vector<double> anchored_increments(const TableData& table) {
  const int d = table.dim();
  std::vector<std::size_t> stride(static_cast<std::size_t>(d));
  stride[static_cast<std::size_t>(d - 1)] = 1;
  for (int i = d - 2; i >= 0; --i) {
    stride[static_cast<std::size_t>(i)] =
        stride[static_cast<std::size_t>(i + 1)] *
        static_cast<std::size_t>(table.node_counts[static_cast<std::size_t>(i + 1)]);
  }
  const std::size_t total = table.values.size();
  std::vector<double> nu = table.values;
  for (int axis = 0; axis < d; ++axis) {
    const std::size_t st = stride[static_cast<std::size_t>(axis)];
    const auto n = static_cast<std::size_t>(table.node_counts[static_cast<std::size_t>(axis)]);
    // Descending scan: each entry reads its lower neighbor's original value.
    for (std::size_t flat = 0; flat < total; ++flat) {
      const std::size_t rev = total - 1 - flat;
      if ((rev / st) % n > 0) nu[rev] -= nu[rev - st];
    }
  }
  return nu;
}

GridFunction multiply_tabulated(const GridFunction& f, const GridFunction& g) {
  if (!f.tabulated() || !g.tabulated() || !(f.table().ladder == g.table().ladder)) {
    throw std::invalid_argument("multiply_tabulated: operands must share one ladder");
  }
  std::vector<double> values = f.table().values;
  for (std::size_t i = 0; i < values.size(); ++i) values[i] *= g.table().values[i];
  return GridFunction::from_table(f.table().ladder, std::move(values),
                                  f.label() + "*" + g.label());
}

GridFunction operator+(const GridFunction& f, const GridFunction& g) {
  if (f.dim() != g.dim()) throw std::invalid_argument("GridFunction+: dimension mismatch");
  if (f.tabulated() && g.tabulated() && f.table().ladder == g.table().ladder) {
    std::vector<double> values = f.table().values;
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += g.table().values[i];
    return GridFunction::from_table(f.table().ladder, std::move(values),
                                    f.label() + "+" + g.label());
  }
  return GridFunction::from_callable(f.dim(), f.label() + "+" + g.label(),
                                     [f, g](const Point& x) { return f(x) + g(x); });
}

GridFunction operator*(double c, const GridFunction& f) {
  if (f.tabulated()) {
    std::vector<double> values = f.table().values;
    for (double& v : values) v *= c;
    return GridFunction::from_table(f.table().ladder, std::move(values), f.label());
  }
  return GridFunction::from_callable(f.dim(), f.label(),
                                     [c, f](const Point& x) { return c * f(x); });
}

}  // namespace bv
