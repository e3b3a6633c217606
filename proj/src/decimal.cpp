// Copyright the ssenclose authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "ssenclose/decimal.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string_view>

namespace ssenclose
{

namespace
{

// |value| = digits * 10^exp10 with digits free of leading and trailing zeros.
struct Decimal
{
  std::string digits;
  int exp10 = 0;
};

// Parses the magnitude of a chars_format::scientific string "d.ddde+XX".
Decimal parse_scientific(std::string_view s)
{
  if (!s.empty() && s.front() == '-')
  {
    s.remove_prefix(1);
  }
  const auto e = s.find('e');
  Decimal d;
  for (std::size_t i = 0; i < e; ++i)
  {
    if (s[i] != '.')
    {
      d.digits.push_back(s[i]);
    }
  }
  int ex = 0;
  std::string_view tail = s.substr(e + 1);
  if (!tail.empty() && tail.front() == '+')
  {
    tail.remove_prefix(1);
  }
  std::from_chars(tail.data(), tail.data() + tail.size(), ex);
  d.exp10 = ex - static_cast<int>(d.digits.size()) + 1;
  while (d.digits.size() > 1 && d.digits.back() == '0')
  {
    d.digits.pop_back();
    ++d.exp10;
  }
  return d;
}

std::string scientific(double x, int precision)
{
  std::string buf(800, '\0');
  const auto res = precision < 0
                       ? std::to_chars(buf.data(), buf.data() + buf.size(), x,
                                       std::chars_format::scientific)
                       : std::to_chars(buf.data(), buf.data() + buf.size(), x,
                                       std::chars_format::scientific, precision);
  if (res.ec != std::errc())
  {
    throw std::runtime_error("decimal conversion failed");
  }
  buf.resize(static_cast<std::size_t>(res.ptr - buf.data()));
  return buf;
}

// Three-way comparison of two nonzero decimal magnitudes.
int compare(const Decimal &a, const Decimal &b)
{
  const int ea = a.exp10 + static_cast<int>(a.digits.size());
  const int eb = b.exp10 + static_cast<int>(b.digits.size());
  if (ea != eb)
  {
    return ea < eb ? -1 : 1;
  }
  const std::size_t len = std::max(a.digits.size(), b.digits.size());
  for (std::size_t i = 0; i < len; ++i)
  {
    const char ca = i < a.digits.size() ? a.digits[i] : '0';
    const char cb = i < b.digits.size() ? b.digits[i] : '0';
    if (ca != cb)
    {
      return ca < cb ? -1 : 1;
    }
  }
  return 0;
}

void step(Decimal &d, bool increase)
{
  if (d.digits.size() == 1)
  {
    d.digits.push_back('0');
    --d.exp10;
  }
  std::size_t i = d.digits.size();
  if (increase)
  {
    while (i > 0 && d.digits[i - 1] == '9')
    {
      d.digits[--i] = '0';
    }
    if (i == 0)
    {
      d.digits.insert(d.digits.begin(), '1');
    }
    else
    {
      ++d.digits[i - 1];
    }
  }
  else
  {
    while (d.digits[i - 1] == '0')
    {
      d.digits[--i] = '9';
    }
    --d.digits[i - 1];
    if (d.digits.front() == '0')
    {
      d.digits.erase(d.digits.begin());
    }
  }
  while (d.digits.size() > 1 && d.digits.back() == '0')
  {
    d.digits.pop_back();
    ++d.exp10;
  }
}

std::string format(const Decimal &d, bool negative)
{
  std::string s = negative ? "-" : "";
  s.push_back(d.digits[0]);
  if (d.digits.size() > 1)
  {
    s.push_back('.');
    s.append(d.digits, 1, std::string::npos);
  }
  const int ex = d.exp10 + static_cast<int>(d.digits.size()) - 1;
  s.push_back('e');
  s.push_back(ex < 0 ? '-' : '+');
  const int a = std::abs(ex);
  if (a < 10)
  {
    s.push_back('0');
  }
  s += std::to_string(a);
  return s;
}

std::string directed(double x, bool up)
{
  if (std::isnan(x))
  {
    throw std::invalid_argument("decimal: NaN endpoint");
  }
  if (std::isinf(x))
  {
    return x > 0 ? "inf" : "-inf";
  }
  if (x == 0.0)
  {
    return "0";
  }
  const bool negative = x < 0.0;
  Decimal shortest = parse_scientific(scientific(x, -1));
  const Decimal exact = parse_scientific(scientific(x, 766));
  // Outward means a larger magnitude for the upper end of a positive number
  // and for the lower end of a negative one.
  const bool grow = (up != negative);
  const int c = compare(shortest, exact);
  if ((grow && c < 0) || (!grow && c > 0))
  {
    step(shortest, grow);
  }
  return format(shortest, negative);
}

}  // namespace

std::string decimal_down(double x)
{
  return directed(x, false);
}

std::string decimal_up(double x)
{
  return directed(x, true);
}

}  // namespace ssenclose
