#include "bv/ladder.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace bv {

Ladder Ladder::uniform(int dim, int cells_per_axis) {
  if (cells_per_axis < 1) throw std::invalid_argument("Ladder: cells_per_axis must be >= 1");
  std::vector<double> axis(static_cast<std::size_t>(cells_per_axis));
  for (int i = 0; i < cells_per_axis; ++i) {
    axis[static_cast<std::size_t>(i)] = static_cast<double>(i) / cells_per_axis;
  }
  std::vector<std::vector<double>> axes(static_cast<std::size_t>(dim), axis);
  return from_breakpoints(std::move(axes));
}

Ladder Ladder::from_breakpoints(std::vector<std::vector<double>> axes) {
  if (axes.empty() || axes.size() > static_cast<std::size_t>(kMaxDim)) {
    throw std::invalid_argument("Ladder: dimension must be in [1," + std::to_string(kMaxDim) +
                                "]");
  }
  for (const auto& axis : axes) {
    if (axis.empty() || axis.front() != 0.0) {
      throw std::invalid_argument("Ladder: each axis must start at 0");
    }
    for (std::size_t i = 0; i < axis.size(); ++i) {
      if (!(axis[i] >= 0.0 && axis[i] < 1.0)) {
        throw std::invalid_argument("Ladder: breakpoints must lie in [0,1)");
      }
      if (i > 0 && !(axis[i - 1] < axis[i])) {
        throw std::invalid_argument("Ladder: breakpoints must be strictly increasing");
      }
    }
  }
  Ladder out;
  out.axes_ = std::move(axes);
  return out;
}

std::vector<int> Ladder::cells_per_axis() const {
  std::vector<int> out(axes_.size());
  for (std::size_t i = 0; i < axes_.size(); ++i) out[i] = static_cast<int>(axes_[i].size());
  return out;
}

std::size_t Ladder::cell_count() const {
  std::size_t total = 1;
  for (const auto& axis : axes_) total *= axis.size();
  return total;
}

std::vector<double> Ladder::nodes(int axis) const {
  std::vector<double> out = axes_[static_cast<std::size_t>(axis)];
  out.push_back(1.0);
  return out;
}

std::vector<int> Ladder::node_counts() const {
  std::vector<int> out(axes_.size());
  for (std::size_t i = 0; i < axes_.size(); ++i) out[i] = static_cast<int>(axes_[i].size()) + 1;
  return out;
}

Point Ladder::successor(const Point& y) const {
  if (y.dim() != dim()) throw std::invalid_argument("Ladder::successor: dimension mismatch");
  Point out = y;
  for (int i = 0; i < dim(); ++i) {
    const auto& axis = axes_[static_cast<std::size_t>(i)];
    const auto it = std::lower_bound(axis.begin(), axis.end(), y[i]);
    if (it == axis.end() || *it != y[i]) {
      throw std::invalid_argument("Ladder::successor: coordinate " + std::to_string(i + 1) +
                                  " is not a breakpoint of its axis");
    }
    const auto next = it + 1;
    out[i] = (next == axis.end()) ? 1.0 : *next;
  }
  return out;
}

Ladder Ladder::refined(int factor) const {
  if (factor < 2) throw std::invalid_argument("Ladder::refined: factor must be >= 2");
  std::vector<std::vector<double>> axes;
  axes.reserve(axes_.size());
  for (const auto& axis : axes_) {
    std::vector<double> fine;
    fine.reserve(axis.size() * static_cast<std::size_t>(factor));
    for (std::size_t i = 0; i < axis.size(); ++i) {
      const double lo = axis[i];
      const double hi = (i + 1 < axis.size()) ? axis[i + 1] : 1.0;
      fine.push_back(lo);
      for (int k = 1; k < factor; ++k) {
        fine.push_back(lo + (hi - lo) * static_cast<double>(k) / factor);
      }
    }
    axes.push_back(std::move(fine));
  }
  return from_breakpoints(std::move(axes));
}

FaceLadder::FaceLadder(const Ladder& parent, AxisSet u) : axes_(u) {
  if (u.dim() != parent.dim()) throw std::invalid_argument("FaceLadder: dimension mismatch");
  for (int i = 0; i < parent.dim(); ++i) {
    if (u.contains(i)) face_breakpoints_.push_back(parent.breakpoints(i));
  }
}

std::size_t FaceLadder::point_count() const {
  std::size_t total = 1;
  for (const auto& axis : face_breakpoints_) total *= axis.size();
  return total;
}

Point FaceLadder::point(std::size_t flat) const {
  Point out = Point::ones(axes_.dim());
  std::size_t rem = flat;
  for (int i = axes_.dim() - 1, k = static_cast<int>(face_breakpoints_.size()) - 1; i >= 0; --i) {
    if (!axes_.contains(i)) continue;
    const auto& axis = face_breakpoints_[static_cast<std::size_t>(k--)];
    out[i] = axis[rem % axis.size()];
    rem /= axis.size();
  }
  return out;
}

std::vector<Point> FaceLadder::points() const {
  std::vector<Point> out;
  out.reserve(point_count());
  for (std::size_t flat = 0; flat < point_count(); ++flat) out.push_back(point(flat));
  return out;
}

Point FaceLadder::successor(const Point& y) const {
  Point out = y;
  int k = 0;
  for (int i = 0; i < axes_.dim(); ++i) {
    if (!axes_.contains(i)) {
      if (y[i] != 1.0) throw std::invalid_argument("FaceLadder::successor: off-face coordinate");
      continue;
    }
    const auto& axis = face_breakpoints_[static_cast<std::size_t>(k++)];
    const auto it = std::lower_bound(axis.begin(), axis.end(), y[i]);
    if (it == axis.end() || *it != y[i]) {
      throw std::invalid_argument("FaceLadder::successor: coordinate not on the face ladder");
    }
    const auto next = it + 1;
    out[i] = (next == axis.end()) ? 1.0 : *next;
  }
  return out;
}

FaceLadder face_ladder(const Ladder& parent, AxisSet u) { return FaceLadder(parent, u); }

}  // namespace bv
