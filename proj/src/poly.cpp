#include "kd/poly.hpp"

#include "kd/error.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

namespace kd {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::BadInput: return "bad_input";
    case ErrorKind::CapExceeded: return "cap_exceeded";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

LaurentPoly LaurentPoly::monomial(const BigInt& coeff, int exponent) {
  LaurentPoly p;
  p.add_term(coeff, exponent);
  return p;
}

LaurentPoly LaurentPoly::delta() {
  LaurentPoly d;
  d.add_term(-1, 2);
  d.add_term(-1, -2);
  return d;
}

int LaurentPoly::min_exponent() const {
  if (terms_.empty()) fail(ErrorKind::Precondition, "min_exponent of the zero polynomial");
  return terms_.begin()->first;
}

int LaurentPoly::max_exponent() const {
  if (terms_.empty()) fail(ErrorKind::Precondition, "max_exponent of the zero polynomial");
  return terms_.rbegin()->first;
}

BigInt LaurentPoly::coefficient_at(int exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? BigInt(0) : it->second;
}

void LaurentPoly::add_term(const BigInt& c, int exponent) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& rhs) {
  for (const auto& [k, c] : rhs.terms_) add_term(c, k);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& rhs) {
  for (const auto& [k, c] : rhs.terms_) add_term(-c, k);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& lhs, const LaurentPoly& rhs) {
  LaurentPoly out;
  for (const auto& [ka, ca] : lhs.terms_)
    for (const auto& [kb, cb] : rhs.terms_) out.add_term(ca * cb, ka + kb);
  return out;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& rhs) {
  *this = *this * rhs;
  return *this;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out = *this;
  for (auto& [k, c] : out.terms_) c = -c;
  return out;
}

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly out;
  for (const auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), e + k, c);
  return out;
}

LaurentPoly LaurentPoly::scaled(const BigInt& c) const {
  if (c == 0) return {};
  LaurentPoly out = *this;
  for (auto& [k, v] : out.terms_) v *= c;
  return out;
}

LaurentPoly LaurentPoly::pow(int n) const {
  if (n < 0) {
    if (terms_.size() != 1)
      fail(ErrorKind::BadInput, "negative power of a non-monomial Laurent polynomial");
    const auto& [k, c] = *terms_.begin();
    if (c != 1 && c != -1)
      fail(ErrorKind::BadInput, "negative power of a monomial with non-unit coefficient");
    const bool negative = (c == -1) && (n % 2 != 0);
    return monomial(negative ? -1 : 1, k * n);
  }
  LaurentPoly result = constant(1);
  LaurentPoly base = *this;
  for (unsigned e = static_cast<unsigned>(n); e != 0; e >>= 1) {
    if (e & 1u) result *= base;
    if (e > 1) base *= base;
  }
  return result;
}

LaurentPoly LaurentPoly::substitute_power(int k) const {
  if (k == 0) {
    BigInt total = 0;
    for (const auto& [e, c] : terms_) total += c;
    return constant(total);
  }
  LaurentPoly out;
  for (const auto& [e, c] : terms_) out.terms_.emplace(e * k, c);
  return out;
}

std::string LaurentPoly::to_string(char var) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const int e = it->first;
    BigInt c = it->second;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << c;
      continue;
    }
    if (c != 1) os << c << '*';
    os << var;
    if (e != 1) os << '^' << e;
  }
  return os.str();
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, char var) : text_(text), var_(var) {}

  LaurentPoly run() {
    LaurentPoly out;
    skip_ws();
    if (at_end()) bad("empty polynomial text");
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = (get() == '-') ? -1 : 1;
        skip_ws();
      } else if (!first) {
        bad("expected '+' or '-' between terms");
      }
      first = false;
      auto [coeff, exponent] = term();
      out.add_term(coeff * sign, exponent);
      skip_ws();
    }
    return out;
  }

 private:
  std::pair<BigInt, int> term() {
    BigInt coeff = 1;
    bool have_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = BigInt(digits());
      have_coeff = true;
      skip_ws();
      if (peek() == '*') {
        get();
        skip_ws();
        if (peek() != var_) bad("expected variable after '*'");
      }
    }
    if (peek() != var_) {
      if (!have_coeff) bad("expected a coefficient or the variable");
      return {coeff, 0};
    }
    get();
    skip_ws();
    int exponent = 1;
    if (peek() == '^') {
      get();
      skip_ws();
      int sign = 1;
      if (peek() == '-' || peek() == '+') sign = (get() == '-') ? -1 : 1;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) bad("expected an exponent after '^'");
      exponent = sign * std::stoi(digits());
    }
    return {coeff, exponent};
  }

  std::string digits() {
    std::string out;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) out.push_back(get());
    return out;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  char get() { return text_[pos_++]; }

  [[noreturn]] void bad(const std::string& why) const {
    fail(ErrorKind::BadInput,
         "polynomial parse error at offset " + std::to_string(pos_) + ": " + why);
  }

  std::string_view text_;
  char var_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentPoly LaurentPoly::parse(std::string_view text, char var) {
  return PolyParser(text, var).run();
}

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.to_string(); }

GaussianInt GaussianInt::pow(long n) const {
  GaussianInt base = *this;
  if (n < 0) {
    if (!is_unit()) fail(ErrorKind::BadInput, "negative power of a non-unit Gaussian integer");
    base = conj();  // unit inverse
    n = -n;
  }
  GaussianInt result(1);
  for (unsigned long e = static_cast<unsigned long>(n); e != 0; e >>= 1) {
    if (e & 1ul) result = result * base;
    if (e > 1) base = base * base;
  }
  return result;
}

std::string GaussianInt::to_string() const {
  std::ostringstream os;
  os << re << (im < 0 ? " - " : " + ") << (im < 0 ? BigInt(-im) : im) << "i";
  return os.str();
}

A2Evaluation factor_and_eval_A2(const LaurentPoly& p, const GaussianInt& z) {
  A2Evaluation out;
  if (p.is_zero()) return out;
  const int parity = ((p.min_exponent() % 2) + 2) % 2;
  std::string offending;
  for (const auto& [k, c] : p.terms()) {
    if (((k % 2) + 2) % 2 != parity) offending += (offending.empty() ? "" : ", ") + std::to_string(k);
  }
  if (!offending.empty()) {
    fail(ErrorKind::BadInput,
         "mixed exponent parity: exponents " + offending + " differ in parity from " +
             std::to_string(p.min_exponent()));
  }
  out.parity = parity;
  // Horner-free evaluation: exponents are sparse and strided.
  for (const auto& [k, c] : p.terms()) {
    const long half = (k - parity) / 2;
    out.value = out.value + GaussianInt(c) * z.pow(half);
  }
  return out;
}

BigInt isqrt(const BigInt& n, bool* exact) {
  if (n < 0) fail(ErrorKind::Precondition, "isqrt of a negative integer");
  BigInt r = boost::multiprecision::sqrt(n);
  if (exact) *exact = (r * r == n);
  return r;
}

}  // namespace kd
