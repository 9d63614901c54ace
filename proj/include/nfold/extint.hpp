#pragma once

#include <cassert>
#include <string>
#include <vector>

#include "nfold/errors.hpp"
#include "nfold/ints.hpp"

namespace nfold {

/// Integer extended with the two infinities: the Z u {+-inf} domain that
/// houses lower/upper bound entries. Total order with NegInf < k < PosInf.
class ExtInt {
 public:
  enum class Tag { NegInf, Finite, PosInf };

  ExtInt() : tag_(Tag::Finite), value_(0) {}
  ExtInt(Int v) : tag_(Tag::Finite), value_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  ExtInt(long v) : tag_(Tag::Finite), value_(v) {}            // NOLINT(google-explicit-constructor)
  ExtInt(int v) : tag_(Tag::Finite), value_(v) {}             // NOLINT(google-explicit-constructor)

  static ExtInt neg_inf() { return ExtInt(Tag::NegInf); }
  static ExtInt pos_inf() { return ExtInt(Tag::PosInf); }

  Tag tag() const { return tag_; }
  bool finite() const { return tag_ == Tag::Finite; }
  bool is_neg_inf() const { return tag_ == Tag::NegInf; }
  bool is_pos_inf() const { return tag_ == Tag::PosInf; }

  const Int& value() const {
    assert(finite());
    return value_;
  }

  ExtInt operator-() const {
    switch (tag_) {
      case Tag::NegInf: return pos_inf();
      case Tag::PosInf: return neg_inf();
      default: return ExtInt(-value_);
    }
  }

  friend bool operator==(const ExtInt& a, const ExtInt& b) {
    if (a.tag_ != b.tag_) return false;
    return a.tag_ != Tag::Finite || a.value_ == b.value_;
  }
  friend bool operator!=(const ExtInt& a, const ExtInt& b) { return !(a == b); }
  friend bool operator<(const ExtInt& a, const ExtInt& b) {
    if (a.tag_ == Tag::NegInf) return b.tag_ != Tag::NegInf;
    if (a.tag_ == Tag::PosInf) return false;
    if (b.tag_ == Tag::PosInf) return true;
    if (b.tag_ == Tag::NegInf) return false;
    return a.value_ < b.value_;
  }
  friend bool operator<=(const ExtInt& a, const ExtInt& b) { return !(b < a); }
  friend bool operator>(const ExtInt& a, const ExtInt& b) { return b < a; }
  friend bool operator>=(const ExtInt& a, const ExtInt& b) { return !(a < b); }

  friend const ExtInt& min(const ExtInt& a, const ExtInt& b) { return b < a ? b : a; }
  friend const ExtInt& max(const ExtInt& a, const ExtInt& b) { return a < b ? b : a; }

  std::string str() const {
    switch (tag_) {
      case Tag::NegInf: return "-inf";
      case Tag::PosInf: return "inf";
      default: return value_.get_str();
    }
  }

 private:
  explicit ExtInt(Tag t) : tag_(t), value_(0) {}

  Tag tag_;
  Int value_;
};

using ExtVec = std::vector<ExtInt>;

/// Componentwise box l <= x <= u over Z u {+-inf}.
struct BoundsBox {
  ExtVec lower;
  ExtVec upper;

  BoundsBox() = default;
  BoundsBox(ExtVec l, ExtVec u) : lower(std::move(l)), upper(std::move(u)) {
    if (lower.size() != upper.size())
      throw dimension_error("BoundsBox: lower/upper length mismatch");
  }

  /// All coordinates unbounded.
  static BoundsBox free(std::size_t n) {
    return BoundsBox(ExtVec(n, ExtInt::neg_inf()), ExtVec(n, ExtInt::pos_inf()));
  }
  /// 0 <= x, no upper bound.
  static BoundsBox nonnegative(std::size_t n) {
    return BoundsBox(ExtVec(n, ExtInt(0)), ExtVec(n, ExtInt::pos_inf()));
  }
  static BoundsBox finite(IntVec l, IntVec u) {
    ExtVec lo(l.begin(), l.end()), hi(u.begin(), u.end());
    return BoundsBox(std::move(lo), std::move(hi));
  }
  /// Cube [-radius, radius]^n.
  static BoundsBox cube(std::size_t n, const Int& radius) {
    return finite(IntVec(n, -radius), IntVec(n, radius));
  }

  std::size_t size() const { return lower.size(); }

  bool contains(const IntVec& x) const {
    if (x.size() != size()) throw dimension_error("BoundsBox::contains: length mismatch");
    for (std::size_t i = 0; i < x.size(); ++i) {
      ExtInt xi{x[i]};
      if (xi < lower[i] || upper[i] < xi) return false;
    }
    return true;
  }

  bool all_finite() const {
    for (std::size_t i = 0; i < size(); ++i)
      if (!lower[i].finite() || !upper[i].finite()) return false;
    return true;
  }
};

}  // namespace nfold
