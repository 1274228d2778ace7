#include "ringbisect/ratio.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace ringbisect {

Ratio::Ratio(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("ratio with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num < 0) throw std::invalid_argument("negative ratio");
  const std::int64_t g = std::gcd(num, den);
  num_ = g == 0 ? 0 : num / g;
  den_ = g == 0 ? 1 : den / g;
}

namespace {

std::int64_t parse_integer(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc{} || ptr != last) {
    throw std::invalid_argument("cannot parse ratio '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Ratio Ratio::parse(std::string_view text) {
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    return Ratio(parse_integer(text.substr(0, slash), text), parse_integer(text.substr(slash + 1), text));
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto frac = text.substr(dot + 1);
    if (frac.size() > 12) throw std::invalid_argument("too many decimals in '" + std::string(text) + "'");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const std::int64_t whole = dot == 0 ? 0 : parse_integer(text.substr(0, dot), text);
    const std::int64_t part = frac.empty() ? 0 : parse_integer(frac, text);
    return Ratio(whole * scale + part, scale);
  }
  return Ratio(parse_integer(text, text));
}

std::string Ratio::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Ratio operator+(const Ratio& a, const Ratio& b) {
  return Ratio(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
  return a.num_ * b.den_ <=> b.num_ * a.den_;
}

Ratio shadow_alpha(int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  return Ratio(3, 2) + Ratio(1, k);
}

}  // namespace ringbisect
