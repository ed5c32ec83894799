#include "pblimp/rational.hpp"

#include <cctype>

namespace pblimp {

std::string rat_to_string(const Rat& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

std::optional<Rat> rat_from_string(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::size_t i = 0;
  bool neg = false;
  if (text[i] == '-') {
    neg = true;
    ++i;
  }
  auto digits = [&](BigInt& out) -> bool {
    bool any = false;
    out = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      out = out * 10 + (text[i] - '0');
      ++i;
      any = true;
    }
    return any;
  };
  BigInt intpart = 0;
  bool have_int = digits(intpart);
  Rat value(intpart);
  if (i < text.size() && text[i] == '/') {
    ++i;
    BigInt den;
    if (!have_int || !digits(den) || i != text.size() || den == 0) return std::nullopt;
    value = Rat(intpart, den);
  } else if (i < text.size() && text[i] == '.') {
    ++i;
    BigInt frac = 0;
    BigInt scale = 1;
    bool any = false;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      frac = frac * 10 + (text[i] - '0');
      scale *= 10;
      ++i;
      any = true;
    }
    if ((!have_int && !any) || i != text.size()) return std::nullopt;
    value = Rat(intpart) + Rat(frac, scale);
  } else if (!have_int || i != text.size()) {
    return std::nullopt;
  }
  return neg ? Rat(-value) : value;
}

double rat_to_double(const Rat& r) { return r.convert_to<double>(); }

Rat rat_pow(const Rat& base, unsigned exp) {
  Rat acc(1);
  Rat b = base;
  while (exp > 0) {
    if (exp & 1u) acc *= b;
    b *= b;
    exp >>= 1u;
  }
  return acc;
}

}  // namespace pblimp
