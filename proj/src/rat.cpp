#include "divzero/rat.hpp"

#include <cctype>
#include <ostream>

namespace divzero {

namespace {

bool parse_integer(std::string_view s, BigInt& out) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (std::size_t j = i; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
  return out.set_str(std::string(s[0] == '+' ? s.substr(1) : s), 10) == 0;
}

}  // namespace

Rat::Rat(const BigInt& num, const BigInt& den) {
  if (den == 0) throw ArithmeticError("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rat Rat::parse(std::string_view text) {
  const auto slash = text.find('/');
  BigInt num, den = 1;
  if (slash == std::string_view::npos) {
    if (!parse_integer(text, num)) throw ParseError("not a rational: \"" + std::string(text) + "\"");
  } else {
    const auto ds = text.substr(slash + 1);
    if (!parse_integer(text.substr(0, slash), num) || !parse_integer(ds, den) || ds[0] == '-' ||
        ds[0] == '+')
      throw ParseError("not a rational: \"" + std::string(text) + "\"");
    if (den == 0) throw ParseError("zero denominator in \"" + std::string(text) + "\"");
  }
  return Rat(num, den);
}

std::string Rat::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw ArithmeticError("rational division by zero");
  v_ /= o.v_;
  return *this;
}

BigInt Rat::floor() const {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  return q;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

}  // namespace divzero
