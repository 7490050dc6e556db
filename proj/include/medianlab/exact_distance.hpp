#pragma once

#include <compare>
#include <cstdint>
#include <ostream>

namespace medianlab {

// A distance value `units + eps_count * eps`, where eps is a symbolic
// infinitesimal (1/2^n for an n-point glued space). Ordering is
// lexicographic, which agrees with the real-valued order as long as every
// realized eps_count stays below 2^n.
class ExactDistance {
 public:
  constexpr ExactDistance() = default;
  constexpr explicit ExactDistance(std::int64_t units, std::int64_t eps_count = 0)
      : units_(units), eps_count_(eps_count) {}

  static constexpr ExactDistance zero() { return ExactDistance{}; }
  static constexpr ExactDistance epsilon() { return ExactDistance{0, 1}; }

  constexpr std::int64_t units() const { return units_; }
  constexpr std::int64_t eps_count() const { return eps_count_; }
  constexpr bool is_zero() const { return units_ == 0 && eps_count_ == 0; }

  constexpr ExactDistance& operator+=(const ExactDistance& o) {
    units_ += o.units_;
    eps_count_ += o.eps_count_;
    return *this;
  }
  constexpr ExactDistance& operator-=(const ExactDistance& o) {
    units_ -= o.units_;
    eps_count_ -= o.eps_count_;
    return *this;
  }
  friend constexpr ExactDistance operator+(ExactDistance a, const ExactDistance& b) { return a += b; }
  friend constexpr ExactDistance operator-(ExactDistance a, const ExactDistance& b) { return a -= b; }
  friend constexpr ExactDistance operator*(std::int64_t k, const ExactDistance& d) {
    return ExactDistance{k * d.units_, k * d.eps_count_};
  }
  friend constexpr ExactDistance operator*(const ExactDistance& d, std::int64_t k) { return k * d; }

  friend constexpr bool operator==(const ExactDistance&, const ExactDistance&) = default;
  friend constexpr std::strong_ordering operator<=>(const ExactDistance& a, const ExactDistance& b) {
    if (auto c = a.units_ <=> b.units_; c != 0) return c;
    return a.eps_count_ <=> b.eps_count_;
  }

  // Standard part; the infinitesimal component is dropped.
  constexpr double approx() const { return static_cast<double>(units_); }

 private:
  std::int64_t units_ = 0;
  std::int64_t eps_count_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const ExactDistance& d) {
  os << d.units();
  if (d.eps_count() != 0) os << (d.eps_count() > 0 ? "+" : "") << d.eps_count() << "eps";
  return os;
}

}  // namespace medianlab
