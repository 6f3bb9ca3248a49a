#include "permdiv/points.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace permdiv {

std::ostream& operator<<(std::ostream& os, const Point& p) {
  return os << '(' << p.row << ',' << p.col << ')';
}

PartialPermutation::PartialPermutation(int n, std::vector<Point> points) : n_(n), points_(std::move(points)) {
  if (n < 0) fail(errc::out_of_range, "ground size must be nonnegative");
  std::sort(points_.begin(), points_.end());
  for (size_t i = 0; i < points_.size(); ++i) {
    const Point& p = points_[i];
    if (p.row < 1 || p.row > n_ || p.col < 1 || p.col > n_)
      fail(errc::out_of_range, "point " + std::to_string(p.row) + "->" + std::to_string(p.col) +
                                   " outside [1," + std::to_string(n_) + "]^2");
  }
  for (size_t i = 1; i < points_.size(); ++i)
    if (points_[i].row == points_[i - 1].row)
      fail(errc::row_collision, "two points share row " + std::to_string(points_[i].row));
  std::vector<int> cols;
  cols.reserve(points_.size());
  for (const Point& p : points_) cols.push_back(p.col);
  std::sort(cols.begin(), cols.end());
  for (size_t i = 1; i < cols.size(); ++i)
    if (cols[i] == cols[i - 1]) fail(errc::col_collision, "two points share column " + std::to_string(cols[i]));
}

bool PartialPermutation::contains(Point p) const {
  return std::binary_search(points_.begin(), points_.end(), p);
}

int PartialPermutation::col_of(int row) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), Point{row, 0});
  if (it != points_.end() && it->row == row) return it->col;
  return 0;
}

std::strong_ordering PartialPermutation::operator<=>(const PartialPermutation& other) const {
  if (auto c = size() <=> other.size(); c != 0) return c;
  if (auto c = points_ <=> other.points_; c != 0) return c;
  return n_ <=> other.n_;
}

static void require_same_ground(int a, int b) {
  if (a != b) fail(errc::mismatched_ground, "ground sizes differ: " + std::to_string(a) + " vs " + std::to_string(b));
}

bool PartialPermutation::intersects(const PartialPermutation& other) const {
  require_same_ground(n_, other.n_);
  auto i = points_.begin();
  auto j = other.points_.begin();
  while (i != points_.end() && j != other.points_.end()) {
    if (*i == *j) return true;
    if (*i < *j)
      ++i;
    else
      ++j;
  }
  return false;
}

bool PartialPermutation::is_subset_of(const PartialPermutation& other) const {
  require_same_ground(n_, other.n_);
  return std::includes(other.points_.begin(), other.points_.end(), points_.begin(), points_.end());
}

PartialPermutation PartialPermutation::united(const PartialPermutation& other) const {
  require_same_ground(n_, other.n_);
  std::vector<Point> merged;
  merged.reserve(points_.size() + other.points_.size());
  std::set_union(points_.begin(), points_.end(), other.points_.begin(), other.points_.end(),
                 std::back_inserter(merged));
  return PartialPermutation(n_, std::move(merged));
}

PartialPermutation PartialPermutation::united(Point p) const {
  std::vector<Point> merged = points_;
  merged.push_back(p);
  return PartialPermutation(n_, std::move(merged));
}

PartialPermutation PartialPermutation::minus(const PartialPermutation& other) const {
  require_same_ground(n_, other.n_);
  std::vector<Point> rest;
  std::set_difference(points_.begin(), points_.end(), other.points_.begin(), other.points_.end(),
                      std::back_inserter(rest));
  return PartialPermutation(n_, std::move(rest));
}

bool PartialPermutation::compatible(Point p) const {
  if (p.row < 1 || p.row > n_ || p.col < 1 || p.col > n_) return false;
  for (const Point& q : points_) {
    if (q.row == p.row || q.col == p.col) return false;
  }
  return true;
}

std::string PartialPermutation::to_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < points_.size(); ++i) {
    if (i) os << ',';
    os << points_[i].row << "->" << points_[i].col;
  }
  return os.str();
}

PartialPermutation PartialPermutation::parse(int n, const std::string& text) {
  std::vector<Point> pts;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    std::string item = text.substr(pos, end - pos);
    size_t arrow = item.find("->");
    if (arrow == std::string::npos) fail(errc::parse_error, "expected 'row->col' in '" + item + "'");
    try {
      int row = std::stoi(item.substr(0, arrow));
      int col = std::stoi(item.substr(arrow + 2));
      pts.push_back(Point{row, col});
    } catch (const std::exception&) {
      fail(errc::parse_error, "bad point '" + item + "'");
    }
    pos = end + 1;
  }
  return PartialPermutation(n, std::move(pts));
}

PartialPermutation identity_segment(int i, int j, int n) {
  if (!(1 <= i && i <= j && j <= n)) fail(errc::out_of_range, "need 1 <= i <= j <= n");
  std::vector<Point> pts;
  pts.reserve(static_cast<size_t>(j - i + 1));
  for (int v = i; v <= j; ++v) pts.push_back(Point{v, v});
  return PartialPermutation(n, std::move(pts));
}

}  // namespace permdiv
