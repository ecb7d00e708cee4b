#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace pramtraj {

using ProcId = std::size_t;

class CellTypeError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// One memory word of the simulated machine: a scalar, a node index, a boolean
/// flag, or the undefined sentinel. Default-constructed cells are undefined.
class Cell {
 public:
  enum class Kind : std::uint8_t { undefined, scalar, index, flag };

  Cell() = default;
  static Cell scalar(double v) {
    Cell c(Kind::scalar);
    c.d_ = v;
    return c;
  }
  static Cell index(std::size_t v) {
    Cell c(Kind::index);
    c.u_ = v;
    return c;
  }
  static Cell flag(bool v) {
    Cell c(Kind::flag);
    c.u_ = v ? 1 : 0;
    return c;
  }

  Kind kind() const { return kind_; }
  bool is_undefined() const { return kind_ == Kind::undefined; }
  bool is_scalar() const { return kind_ == Kind::scalar; }
  bool is_index() const { return kind_ == Kind::index; }
  bool is_flag() const { return kind_ == Kind::flag; }

  double as_scalar() const {
    if (kind_ != Kind::scalar) mismatch("scalar");
    return d_;
  }
  std::size_t as_index() const {
    if (kind_ != Kind::index) mismatch("index");
    return u_;
  }
  bool as_flag() const {
    if (kind_ != Kind::flag) mismatch("flag");
    return u_ != 0;
  }

  bool operator==(const Cell& o) const {
    if (kind_ != o.kind_) return false;
    switch (kind_) {
      case Kind::undefined: return true;
      case Kind::scalar: return d_ == o.d_;
      default: return u_ == o.u_;
    }
  }

  std::string to_string() const;

 private:
  explicit Cell(Kind k) : kind_(k) {}
  [[noreturn]] void mismatch(const char* expected) const;
  const char* kind_name() const;

  Kind kind_ = Kind::undefined;
  union {
    double d_;
    std::uint64_t u_ = 0;
  };
};

}  // namespace pramtraj
