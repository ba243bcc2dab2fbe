#include "bideval/money.hpp"

#include "bideval/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

namespace bideval {

Money Money::from_double(double value)
{
  if (std::isnan(value))
  {
    throw ParseError("", "money amount is NaN");
  }
  if (std::isinf(value))
  {
    return value > 0 ? infinity() : neg_infinity();
  }
  long double const scaled = std::roundl(static_cast<long double>(value) * 100.0L);
  if (scaled > static_cast<long double>(std::numeric_limits<std::int64_t>::max()) ||
      scaled < static_cast<long double>(std::numeric_limits<std::int64_t>::min()))
  {
    throw ParseError("", "money amount out of range");
  }
  return from_cents(static_cast<std::int64_t>(scaled));
}

Money Money::parse(std::string_view text)
{
  std::string const original(text);
  auto fail = [&](char const *why) -> Money { throw ParseError("", "invalid money '" + original + "': " + why); };

  if (text.empty())
  {
    return fail("empty");
  }
  bool negative = false;
  if (text.front() == '+' || text.front() == '-')
  {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text == "inf" || text == "infinity")
  {
    return negative ? neg_infinity() : infinity();
  }

  auto const dot = text.find('.');
  std::string_view whole = text.substr(0, dot);
  std::string_view frac  = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (whole.empty())
  {
    return fail("missing integer part");
  }
  if (whole.front() < '0' || whole.front() > '9')
  {
    return fail("not a decimal number");
  }
  if (dot != std::string_view::npos && frac.empty())
  {
    return fail("missing fractional digits");
  }
  if (frac.size() > 2)
  {
    return fail("more than two fractional digits");
  }

  std::int64_t units = 0;
  auto [end, ec] = std::from_chars(whole.data(), whole.data() + whole.size(), units);
  if (ec != std::errc{} || end != whole.data() + whole.size())
  {
    return fail("not a decimal number");
  }
  std::int64_t hundredths = 0;
  for (std::size_t i = 0; i < 2; ++i)
  {
    hundredths *= 10;
    if (i < frac.size())
    {
      if (frac[i] < '0' || frac[i] > '9')
      {
        return fail("not a decimal number");
      }
      hundredths += frac[i] - '0';
    }
  }
  if (units > (std::numeric_limits<std::int64_t>::max() - 99) / 100)
  {
    return fail("out of range");
  }
  std::int64_t const cents = units * 100 + hundredths;
  return from_cents(negative ? -cents : cents);
}

double Money::to_double() const noexcept
{
  return static_cast<double>(to_long_double());
}

long double Money::to_long_double() const noexcept
{
  switch (kind_)
  {
  case Kind::NegInf:
    return -std::numeric_limits<long double>::infinity();
  case Kind::PosInf:
    return std::numeric_limits<long double>::infinity();
  case Kind::Finite:
    break;
  }
  return static_cast<long double>(cents_) / 100.0L;
}

std::string Money::to_string() const
{
  if (kind_ == Kind::PosInf)
  {
    return "inf";
  }
  if (kind_ == Kind::NegInf)
  {
    return "-inf";
  }
  std::uint64_t const magnitude =
      cents_ < 0 ? static_cast<std::uint64_t>(-(cents_ + 1)) + 1 : static_cast<std::uint64_t>(cents_);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%llu.%02llu", cents_ < 0 ? "-" : "",
                static_cast<unsigned long long>(magnitude / 100), static_cast<unsigned long long>(magnitude % 100));
  return buf;
}

Money Money::operator+(Money const &other) const
{
  if (!is_finite() || !other.is_finite())
  {
    throw NumericError("money arithmetic on an infinite amount");
  }
  std::int64_t sum = 0;
  if (__builtin_add_overflow(cents_, other.cents_, &sum))
  {
    throw NumericError("money overflow");
  }
  return from_cents(sum);
}

Money Money::operator-(Money const &other) const
{
  if (!is_finite() || !other.is_finite())
  {
    throw NumericError("money arithmetic on an infinite amount");
  }
  std::int64_t diff = 0;
  if (__builtin_sub_overflow(cents_, other.cents_, &diff))
  {
    throw NumericError("money overflow");
  }
  return from_cents(diff);
}

}  // namespace bideval
