#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace bideval {

/// Fixed-point amount with two fractional digits, extended with -inf/+inf.
///
/// Amounts are in whatever unit the tender declares (the bundled tenders use
/// 10^4 yuan). Finite values are held as an integer count of hundredths, so
/// sums and comparisons of prices are exact.
class Money
{
public:
  enum class Kind : std::uint8_t
  {
    NegInf,
    Finite,
    PosInf,
  };

  constexpr Money() = default;

  static constexpr Money from_cents(std::int64_t cents) noexcept { return Money{Kind::Finite, cents}; }
  static constexpr Money from_units(std::int64_t units) noexcept { return Money{Kind::Finite, units * 100}; }
  static constexpr Money infinity() noexcept { return Money{Kind::PosInf, 0}; }
  static constexpr Money neg_infinity() noexcept { return Money{Kind::NegInf, 0}; }

  /// Rounds to the nearest hundredth, halves away from zero. Infinite input
  /// maps to the matching infinity; NaN throws ParseError.
  static Money from_double(double value);

  /// Accepts "3526", "-12.5", "0.07", "+1", "inf", "+inf", "-inf".
  /// More than two fractional digits is an error, not a rounding.
  static Money parse(std::string_view text);

  constexpr Kind kind() const noexcept { return kind_; }
  constexpr bool is_finite() const noexcept { return kind_ == Kind::Finite; }
  /// Only meaningful for finite values.
  constexpr std::int64_t cents() const noexcept { return cents_; }

  double to_double() const noexcept;
  long double to_long_double() const noexcept;

  /// "3526.00", "-0.50", "inf", "-inf".
  std::string to_string() const;

  constexpr std::strong_ordering operator<=>(Money const &other) const noexcept
  {
    if (kind_ != other.kind_)
    {
      return static_cast<int>(kind_) <=> static_cast<int>(other.kind_);
    }
    if (kind_ != Kind::Finite)
    {
      return std::strong_ordering::equal;
    }
    return cents_ <=> other.cents_;
  }
  constexpr bool operator==(Money const &other) const noexcept
  {
    return (*this <=> other) == std::strong_ordering::equal;
  }

  /// Finite arithmetic only; infinite operands or overflow throw NumericError.
  Money operator+(Money const &other) const;
  Money operator-(Money const &other) const;

private:
  constexpr Money(Kind kind, std::int64_t cents) noexcept
    : kind_{kind}
    , cents_{cents}
  {}

  Kind         kind_  = Kind::Finite;
  std::int64_t cents_ = 0;
};

}  // namespace bideval
