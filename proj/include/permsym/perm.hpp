#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace permsym {

/// Points are stored 0-based; every text format is 1-based.
using Point = std::uint32_t;

enum class Parity { even, odd };

/// A bijection of {0..degree-1}. Products act on the right: x(ab) = (xa)b.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::size_t degree);

  /// Throws Errc::invalid_argument unless `images` is a bijection.
  static Permutation from_images(std::vector<Point> images);

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator[](Point x) const noexcept { return images_[x]; }
  std::span<const Point> images() const noexcept { return images_; }

  bool is_identity() const noexcept;
  /// Smallest moved point, or degree() when the permutation is the identity.
  Point first_moved() const noexcept;

  Permutation operator*(const Permutation& rhs) const;
  Permutation inverse() const;
  Parity parity() const;
  std::uint64_t order() const;

  /// Extends to `degree` points fixing the new ones, or shifts into a larger domain.
  Permutation embed(std::size_t degree, Point offset = 0) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  explicit Permutation(std::vector<Point> images, bool /*trusted*/) : images_(std::move(images)) {}

  std::vector<Point> images_;
};

Permutation parse_cycles(std::string_view text, std::size_t degree);
std::string render_cycles(const Permutation& p);

Permutation compose(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& a);
Parity parity(const Permutation& a);

/// Cycles of `p` with length >= 2, each starting at its least point, sorted by that point.
std::vector<std::vector<Point>> cycles(const Permutation& p);

}  // namespace permsym

template <>
struct std::hash<permsym::Permutation> {
  std::size_t operator()(const permsym::Permutation& p) const noexcept;
};
