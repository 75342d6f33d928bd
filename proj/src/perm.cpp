#include "permsym/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "permsym/error.hpp"

namespace permsym {

Permutation::Permutation(std::size_t degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), Point{0});
}

Permutation Permutation::from_images(std::vector<Point> images) {
  std::vector<bool> seen(images.size(), false);
  for (Point y : images) {
    if (y >= images.size() || seen[y])
      throw Error(Errc::invalid_argument, "image table is not a bijection");
    seen[y] = true;
  }
  return Permutation(std::move(images), true);
}

bool Permutation::is_identity() const noexcept {
  for (Point x = 0; x < images_.size(); ++x)
    if (images_[x] != x) return false;
  return true;
}

Point Permutation::first_moved() const noexcept {
  for (Point x = 0; x < images_.size(); ++x)
    if (images_[x] != x) return x;
  return static_cast<Point>(images_.size());
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  if (degree() != rhs.degree())
    throw Error(Errc::degree_mismatch, "cannot compose permutations of degree " +
                                           std::to_string(degree()) + " and " +
                                           std::to_string(rhs.degree()));
  std::vector<Point> out(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) out[x] = rhs.images_[images_[x]];
  return Permutation(std::move(out), true);
}

Permutation Permutation::inverse() const {
  std::vector<Point> out(images_.size());
  for (Point x = 0; x < images_.size(); ++x) out[images_[x]] = x;
  return Permutation(std::move(out), true);
}

Parity Permutation::parity() const {
  // degree minus number of cycles (fixed points included) counts transpositions
  std::vector<bool> seen(images_.size(), false);
  std::size_t cycle_count = 0;
  for (Point x = 0; x < images_.size(); ++x) {
    if (seen[x]) continue;
    ++cycle_count;
    for (Point y = x; !seen[y]; y = images_[y]) seen[y] = true;
  }
  return (images_.size() - cycle_count) % 2 == 0 ? Parity::even : Parity::odd;
}

std::uint64_t Permutation::order() const {
  std::vector<bool> seen(images_.size(), false);
  std::uint64_t result = 1;
  for (Point x = 0; x < images_.size(); ++x) {
    if (seen[x]) continue;
    std::uint64_t len = 0;
    for (Point y = x; !seen[y]; y = images_[y]) {
      seen[y] = true;
      ++len;
    }
    result = std::lcm(result, len);
  }
  return result;
}

Permutation Permutation::embed(std::size_t degree, Point offset) const {
  if (offset + images_.size() > degree)
    throw Error(Errc::degree_mismatch, "embedding does not fit the target degree");
  std::vector<Point> out(degree);
  std::iota(out.begin(), out.end(), Point{0});
  for (Point x = 0; x < images_.size(); ++x) out[x + offset] = images_[x] + offset;
  return Permutation(std::move(out), true);
}

namespace {

class CycleParser {
 public:
  CycleParser(std::string_view text, std::size_t degree)
      : text_(text), degree_(degree), images_(degree), used_(degree, false) {
    std::iota(images_.begin(), images_.end(), Point{0});
  }

  Permutation parse() {
    skip_ws();
    if (at_end()) return Permutation::from_images(std::move(images_));
    if (peek() == '(') {
      std::size_t save = pos_;
      ++pos_;
      skip_ws();
      if (!at_end() && peek() == ')') {
        ++pos_;
        skip_ws();
        if (!at_end()) fail("trailing input after \"()\"");
        return Permutation::from_images(std::move(images_));
      }
      pos_ = save;
    }
    while (!at_end()) {
      parse_cycle();
      skip_ws();
    }
    return Permutation::from_images(std::move(images_));
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::parse_error,
                "cycle notation: " + why + " at offset " + std::to_string(pos_) + " in \"" +
                    std::string(text_) + "\"");
  }

  void expect(char c) {
    skip_ws();
    if (at_end() || peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  Point parse_point() {
    skip_ws();
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a point");
    std::uint64_t value = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + static_cast<std::uint64_t>(peek() - '0');
      if (value > degree_) {
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        fail("point out of range 1.." + std::to_string(degree_));
      }
      ++pos_;
    }
    if (value == 0) fail("point out of range 1.." + std::to_string(degree_));
    Point p = static_cast<Point>(value - 1);
    if (used_[p]) fail("point " + std::to_string(value) + " repeated");
    used_[p] = true;
    return p;
  }

  void parse_cycle() {
    expect('(');
    std::vector<Point> pts{parse_point()};
    skip_ws();
    while (!at_end() && peek() == ',') {
      ++pos_;
      pts.push_back(parse_point());
      skip_ws();
    }
    expect(')');
    if (pts.size() < 2) fail("a cycle needs at least two points");
    for (std::size_t i = 0; i < pts.size(); ++i) images_[pts[i]] = pts[(i + 1) % pts.size()];
  }

  std::string_view text_;
  std::size_t degree_;
  std::size_t pos_ = 0;
  std::vector<Point> images_;
  std::vector<bool> used_;
};

}  // namespace

Permutation parse_cycles(std::string_view text, std::size_t degree) {
  return CycleParser(text, degree).parse();
}

std::vector<std::vector<Point>> cycles(const Permutation& p) {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(p.degree(), false);
  for (Point x = 0; x < p.degree(); ++x) {
    if (seen[x] || p[x] == x) continue;
    std::vector<Point> cyc;
    for (Point y = x; !seen[y]; y = p[y]) {
      seen[y] = true;
      cyc.push_back(y);
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

std::string render_cycles(const Permutation& p) {
  std::string out;
  for (const auto& cyc : cycles(p)) {
    out += '(';
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(cyc[i] + 1);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Permutation compose(const Permutation& a, const Permutation& b) { return a * b; }
Permutation inverse(const Permutation& a) { return a.inverse(); }
Parity parity(const Permutation& a) { return a.parity(); }

}  // namespace permsym

std::size_t std::hash<permsym::Permutation>::operator()(
    const permsym::Permutation& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto x : p.images()) h = (h ^ x) * 1099511628211ull;
  return h;
}
