#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "bv/ladder.hpp"

namespace bv {

// Values of a function tabulated on the closed node grid of a ladder
// (breakpoints plus the terminal 1 on each axis), row-major with the last
// axis fastest. Off-grid points evaluate to the containing cell's lower
// corner value (right-continuous step extension), which makes every
// tabulation an exact finite combination of anchored box indicators.
struct TableData {
  Ladder ladder;
  std::vector<int> node_counts;
  std::vector<std::vector<double>> node_coords;
  std::vector<double> values;

  TableData(Ladder l, std::vector<double> node_values);

  int dim() const { return ladder.dim(); }
  std::size_t node_total() const { return values.size(); }
  double value_at_flat(std::size_t flat) const { return values[flat]; }
  std::size_t flatten(std::span<const int> idx) const;
  double eval(const Point& x) const;
};

// An evaluable real function on [0,1]^d: either a closed-form callable or a
// tabulation. Cheap to copy.
class GridFunction {
 public:
  using Eval = std::function<double(const Point&)>;

  static GridFunction from_callable(int dim, std::string label, Eval fn);
  static GridFunction from_table(Ladder ladder, std::vector<double> node_values,
                                 std::string label = "table");

  int dim() const { return dim_; }
  const std::string& label() const { return label_; }
  double operator()(const Point& x) const;

  bool tabulated() const { return table_ != nullptr; }
  const TableData& table() const;

 private:
  int dim_ = 0;
  std::string label_;
  Eval eval_;
  std::shared_ptr<const TableData> table_;
};

// Evaluates f at every node of the extended grid of L. When f is already
// tabulated on L the stored values are reused unchanged.
TableData tabulate(const GridFunction& f, const Ladder& ladder);

// Mixed increments anchored at 0: backward differences along every axis in
// turn (entries with index 0 on an axis keep their lower-dimensional role).
// Per-axis prefix sums invert the transform; the value at a node equals the
// sum of the increments at all indexwise-smaller nodes.
std::vector<double> anchored_increments(const TableData& table);

// Pointwise product of two functions tabulated on the same ladder.
GridFunction multiply_tabulated(const GridFunction& f, const GridFunction& g);

GridFunction operator+(const GridFunction& f, const GridFunction& g);
GridFunction operator*(double c, const GridFunction& f);

}  // namespace bv
