#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace ringbisect {

/// Exact non-negative rational number, kept in lowest terms.
///
/// Balance parameters such as 3/2 + 1/k are compared against integer node
/// counts, so they are never rounded through floating point.
class Ratio {
 public:
  constexpr Ratio() = default;
  Ratio(std::int64_t num, std::int64_t den = 1);

  /// Accepts "p/q", an integer, or a finite decimal such as "1.75".
  static Ratio parse(std::string_view text);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  friend Ratio operator+(const Ratio& a, const Ratio& b);
  friend bool operator==(const Ratio& a, const Ratio& b) = default;
  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Balance parameter of the shadow algorithm for a cut budget of 2k: 3/2 + 1/k.
Ratio shadow_alpha(int k);

}  // namespace ringbisect
