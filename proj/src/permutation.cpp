#include "permdiv/permutation.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace permdiv {

std::uint64_t factorial_u64(int n) {
  if (n < 0 || n > kMaxRankableN) fail(errc::out_of_range, "factorial_u64 needs 0 <= n <= 20");
  static const std::array<std::uint64_t, kMaxRankableN + 1> table = [] {
    std::array<std::uint64_t, kMaxRankableN + 1> t{};
    t[0] = 1;
    for (int i = 1; i <= kMaxRankableN; ++i) t[static_cast<size_t>(i)] = t[static_cast<size_t>(i) - 1] * static_cast<std::uint64_t>(i);
    return t;
  }();
  return table[static_cast<size_t>(n)];
}

// Lexicographic Lehmer rank of a validated image array.
static std::uint64_t lehmer_rank(const std::vector<int>& image) {
  const int n = static_cast<int>(image.size());
  std::uint64_t r = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j)
      if (image[static_cast<size_t>(j)] < image[static_cast<size_t>(i)]) ++smaller;
    r += static_cast<std::uint64_t>(smaller) * factorial_u64(n - 1 - i);
  }
  return r;
}

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
  const int n = static_cast<int>(image_.size());
  if (n > kMaxRankableN) fail(errc::too_large, "permutations limited to n <= 20");
  std::vector<char> seen(static_cast<size_t>(n) + 1, 0);
  for (int v : image_) {
    if (v < 1 || v > n) fail(errc::out_of_range, "image value " + std::to_string(v) + " outside [1,n]");
    if (seen[static_cast<size_t>(v)]) fail(errc::out_of_range, "image value " + std::to_string(v) + " repeated");
    seen[static_cast<size_t>(v)] = 1;
  }
  rank_ = lehmer_rank(image_);
}

Permutation Permutation::identity(int n) {
  std::vector<int> image(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i) image[static_cast<size_t>(i) - 1] = i;
  return Permutation(std::move(image));
}

Permutation Permutation::unrank(int n, std::uint64_t r) {
  if (n < 0 || n > kMaxRankableN) fail(errc::out_of_range, "unrank needs 0 <= n <= 20");
  if (r >= factorial_u64(n)) fail(errc::out_of_range, "rank " + std::to_string(r) + " >= n!");
  std::vector<int> pool(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i) pool[static_cast<size_t>(i) - 1] = i;
  std::vector<int> image;
  image.reserve(static_cast<size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    std::uint64_t f = factorial_u64(i);
    size_t idx = static_cast<size_t>(r / f);
    r %= f;
    image.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return Permutation(std::move(image));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(image_.size());
  for (int i = 1; i <= n(); ++i) inv[static_cast<size_t>((*this)(i)) - 1] = i;
  return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation& other) const {
  if (n() != other.n()) fail(errc::mismatched_ground, "compose needs equal ground sizes");
  std::vector<int> image(image_.size());
  for (int i = 1; i <= n(); ++i) image[static_cast<size_t>(i) - 1] = (*this)(other(i));
  return Permutation(std::move(image));
}

std::set<int> Permutation::support() const {
  std::set<int> s;
  for (int i = 1; i <= n(); ++i)
    if ((*this)(i) != i) s.insert(i);
  return s;
}

bool Permutation::intersects(const Permutation& other) const {
  if (n() != other.n()) fail(errc::mismatched_ground, "intersects needs equal ground sizes");
  for (size_t i = 0; i < image_.size(); ++i)
    if (image_[i] == other.image_[i]) return true;
  return false;
}

bool Permutation::intersects(const PartialPermutation& other) const {
  if (n() != other.n()) fail(errc::mismatched_ground, "intersects needs equal ground sizes");
  for (const Point& p : other.points())
    if ((*this)(p.row) == p.col) return true;
  return false;
}

bool Permutation::contains(const PartialPermutation& p) const {
  if (n() != p.n()) fail(errc::mismatched_ground, "contains needs equal ground sizes");
  for (const Point& q : p.points())
    if ((*this)(q.row) != q.col) return false;
  return true;
}

PartialPermutation Permutation::as_points() const {
  std::vector<Point> pts;
  pts.reserve(image_.size());
  for (int i = 1; i <= n(); ++i) pts.push_back(Point{i, (*this)(i)});
  return PartialPermutation(n(), std::move(pts));
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < image_.size(); ++i) {
    if (i) os << ' ';
    os << image_[i];
  }
  return os.str();
}

Permutation Permutation::parse(const std::string& text) {
  std::istringstream is(text);
  std::vector<int> image;
  int v;
  while (is >> v) image.push_back(v);
  if (!is.eof()) fail(errc::parse_error, "bad one-line permutation '" + text + "'");
  return Permutation(std::move(image));
}

namespace {

// Fills free rows in increasing order with the free columns. Because all fixed
// positions agree across outputs, assigning free columns in increasing value
// order yields the full images in lexicographic (= rank) order.
bool extend_rec(std::vector<int>& image, std::vector<char>& col_used, const std::vector<int>& free_rows,
                size_t depth, const std::function<bool(const Permutation&)>& visit) {
  if (depth == free_rows.size()) {
    return visit(Permutation(image));
  }
  const int row = free_rows[depth];
  const int n = static_cast<int>(image.size());
  for (int c = 1; c <= n; ++c) {
    if (col_used[static_cast<size_t>(c)]) continue;
    image[static_cast<size_t>(row) - 1] = c;
    col_used[static_cast<size_t>(c)] = 1;
    bool keep_going = extend_rec(image, col_used, free_rows, depth + 1, visit);
    col_used[static_cast<size_t>(c)] = 0;
    image[static_cast<size_t>(row) - 1] = 0;
    if (!keep_going) return false;
  }
  return true;
}

}  // namespace

void for_each_extension(const PartialPermutation& p, const std::function<bool(const Permutation&)>& visit) {
  const int n = p.n();
  std::vector<int> image(static_cast<size_t>(n), 0);
  std::vector<char> col_used(static_cast<size_t>(n) + 1, 0);
  for (const Point& q : p.points()) {
    image[static_cast<size_t>(q.row) - 1] = q.col;
    col_used[static_cast<size_t>(q.col)] = 1;
  }
  std::vector<int> free_rows;
  for (int r = 1; r <= n; ++r)
    if (image[static_cast<size_t>(r) - 1] == 0) free_rows.push_back(r);
  extend_rec(image, col_used, free_rows, 0, visit);
}

std::vector<Permutation> extensions(const PartialPermutation& p) {
  std::vector<Permutation> out;
  for_each_extension(p, [&](const Permutation& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

}  // namespace permdiv
