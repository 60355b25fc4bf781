#include "nabla/padic.hpp"

#include <cctype>
#include <sstream>

namespace nabla {

Prime::Prime(std::uint32_t p) : p_(p) {
  if (p < 2) throw Error("prime must be >= 2, got " + std::to_string(p));
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= p; ++d) {
    if (p % d == 0) throw Error(std::to_string(p) + " is not prime");
  }
}

const Rational& Exponent::value() const {
  if (infinite_) throw Error("value() of an infinite exponent");
  return value_;
}

Exponent Exponent::operator+(const Exponent& o) const {
  if (infinite_ || o.infinite_) return infinity();
  return Exponent(Rational(value_ + o.value_));
}

Exponent Exponent::operator-() const {
  return Exponent(Rational(-value()));
}

Exponent Exponent::operator-(const Exponent& o) const {
  if (o.infinite_) throw Error("subtracting an infinite exponent");
  if (infinite_) return infinity();
  return Exponent(Rational(value_ - o.value_));
}

Exponent Exponent::scaled(long k) const {
  if (infinite_) {
    if (k < 0) throw Error("negative multiple of an infinite exponent");
    return k == 0 ? Exponent(0) : infinity();
  }
  return Exponent(Rational(value_ * k));
}

bool Exponent::operator==(const Exponent& o) const {
  if (infinite_ || o.infinite_) return infinite_ == o.infinite_;
  return value_ == o.value_;
}

std::strong_ordering Exponent::operator<=>(const Exponent& o) const {
  if (infinite_ || o.infinite_) {
    if (infinite_ == o.infinite_) return std::strong_ordering::equal;
    return infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  int c = cmp(value_, o.value_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Exponent::str() const {
  return infinite_ ? std::string("inf") : format_rational(value_);
}

std::ostream& operator<<(std::ostream& os, const Exponent& e) { return os << e.str(); }

const Exponent& min(const Exponent& a, const Exponent& b) { return b < a ? b : a; }
const Exponent& max(const Exponent& a, const Exponent& b) { return a < b ? b : a; }

long valuation(const Integer& x, Prime p) {
  if (x == 0) throw Error("valuation of zero integer");
  Integer rest;
  Integer prime = p.as_integer();
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), prime.get_mpz_t()));
}

Exponent valuation(const Rational& x, Prime p) {
  if (x == 0) return Exponent::infinity();
  return Exponent(valuation(x.get_num(), p) - valuation(x.get_den(), p));
}

long factorial_valuation(unsigned long n, Prime p) {
  long v = 0;
  while (n > 0) {
    n /= p.value();
    v += static_cast<long>(n);
  }
  return v;
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+') {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  }
  if (num.front() == '+') num.remove_prefix(1);
  Integer n(std::string(num), 10);
  Integer d(std::string(den), 10);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) {
  Rational c(q);
  c.canonicalize();
  return c.get_str(10);
}

PAdicRational::PAdicRational(Rational value, Prime p) : value_(std::move(value)), prime_(p) {
  value_.canonicalize();
}

void PAdicRational::check_prime(const PAdicRational& o) const {
  if (!(prime_ == o.prime_)) throw Error("mixing scalars over different primes");
}

PAdicRational PAdicRational::operator+(const PAdicRational& o) const {
  check_prime(o);
  return {Rational(value_ + o.value_), prime_};
}

PAdicRational PAdicRational::operator-(const PAdicRational& o) const {
  check_prime(o);
  return {Rational(value_ - o.value_), prime_};
}

PAdicRational PAdicRational::operator*(const PAdicRational& o) const {
  check_prime(o);
  return {Rational(value_ * o.value_), prime_};
}

PAdicRational PAdicRational::operator/(const PAdicRational& o) const {
  check_prime(o);
  if (o.is_zero()) throw Error("division by zero");
  return {Rational(value_ / o.value_), prime_};
}

LogNorm lognorm_max(const LogNorm& a, const LogNorm& b) {
  return LogNorm(min(a.exponent(), b.exponent()));
}

LogRadius::LogRadius(const Rational& r) : exponent_(r) {
  if (r < 0) throw Error("radius exponent must be >= 0, got " + format_rational(r));
}

}  // namespace nabla
