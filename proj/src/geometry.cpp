#include "bv/geometry.hpp"

#include <sstream>
#include <stdexcept>

namespace bv {

Point::Point(std::span<const double> coords) {
  if (coords.empty() || coords.size() > static_cast<std::size_t>(kMaxDim)) {
    throw std::invalid_argument("Point: dimension must be in [1," + std::to_string(kMaxDim) +
                                "], got " + std::to_string(coords.size()));
  }
  dim_ = static_cast<int>(coords.size());
  for (int i = 0; i < dim_; ++i) {
    const double x = coords[static_cast<std::size_t>(i)];
    if (!(x >= 0.0 && x <= 1.0)) {
      throw std::invalid_argument("Point: coordinate " + std::to_string(i + 1) + " = " +
                                  std::to_string(x) + " outside [0,1]");
    }
    c_[static_cast<std::size_t>(i)] = x;
  }
}

Point Point::zeros(int dim) { return filled(dim, 0.0); }
Point Point::ones(int dim) { return filled(dim, 1.0); }

Point Point::filled(int dim, double value) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("Point: bad dimension");
  Point p;
  p.dim_ = dim;
  for (int i = 0; i < dim; ++i) p.c_[static_cast<std::size_t>(i)] = value;
  return p;
}

bool leq(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("leq: dimension mismatch");
  for (int i = 0; i < a.dim(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

bool Point::operator==(const Point& other) const {
  if (dim_ != other.dim_) return false;
  for (int i = 0; i < dim_; ++i) {
    if (c_[static_cast<std::size_t>(i)] != other.c_[static_cast<std::size_t>(i)]) return false;
  }
  return true;
}

std::string Point::to_string() const {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < dim_; ++i) {
    if (i) os << ',';
    os << c_[static_cast<std::size_t>(i)];
  }
  os << ')';
  return os.str();
}

AxisSet::AxisSet(std::uint32_t mask, int dim) : mask_(mask), dim_(dim) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("AxisSet: bad dimension");
  if (mask >= (1u << dim)) throw std::invalid_argument("AxisSet: mask wider than dimension");
}

AxisSet AxisSet::union_with(const AxisSet& other) const {
  if (dim_ != other.dim_) throw std::invalid_argument("AxisSet: dimension mismatch");
  return AxisSet(mask_ | other.mask_, dim_);
}

AxisSet AxisSet::intersect(const AxisSet& other) const {
  if (dim_ != other.dim_) throw std::invalid_argument("AxisSet: dimension mismatch");
  return AxisSet(mask_ & other.mask_, dim_);
}

std::string AxisSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < dim_; ++i) {
    if (!contains(i)) continue;
    if (!first) out += ',';
    out += std::to_string(i + 1);
    first = false;
  }
  out += '}';
  return out;
}

Point splice(const Point& a, const Point& b, const AxisSet& u) {
  if (a.dim() != b.dim() || a.dim() != u.dim()) {
    throw std::invalid_argument("splice: dimension mismatch");
  }
  Point out = b;
  for (int i = 0; i < a.dim(); ++i) {
    if (u.contains(i)) out[i] = a[i];
  }
  return out;
}

BoxV::BoxV(Point lower, Point upper, AxisSet v)
    : a(std::move(lower)), b(std::move(upper)), closed_at_b(v) {
  if (a.dim() != b.dim() || a.dim() != closed_at_b.dim()) {
    throw std::invalid_argument("BoxV: dimension mismatch");
  }
  if (!leq(a, b)) throw std::invalid_argument("BoxV: requires a <= b coordinatewise");
}

BoxV BoxV::anchored(Point upper, AxisSet v) {
  const int d = upper.dim();
  return BoxV(Point::zeros(d), std::move(upper), v);
}

bool BoxV::contains(const Point& x) const {
  if (x.dim() != dim()) throw std::invalid_argument("BoxV::contains: dimension mismatch");
  for (int i = 0; i < dim(); ++i) {
    if (x[i] < a[i]) return false;
    if (closed_at_b.contains(i)) {
      if (x[i] > b[i]) return false;
    } else {
      if (x[i] >= b[i]) return false;
    }
  }
  return true;
}

bool BoxV::empty() const {
  for (int i = 0; i < dim(); ++i) {
    if (a[i] == b[i] && !closed_at_b.contains(i)) return true;
  }
  return false;
}

}  // namespace bv
