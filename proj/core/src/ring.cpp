#include "sphred/ring.hpp"

#include <cctype>
#include <stdexcept>

#include "sphred/errors.hpp"

namespace sphred {

LaurentU::LaurentU(const Rational& c) {
  if (c != 0) terms_[0] = c;
}

LaurentU LaurentU::monomial(const Rational& c, int power) {
  LaurentU r;
  if (c != 0) r.terms_[power] = c;
  return r;
}

void LaurentU::add_term(int power, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find(power);
  if (it == terms_.end()) {
    terms_.emplace(power, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

LaurentU LaurentU::unit_inverse() const {
  if (!is_unit()) throw NonUnitEigenvalue("element " + to_string() + " is not a unit of Q[u, 1/u]");
  const auto& [p, c] = *terms_.begin();
  return monomial(1 / c, -p);
}

Rational LaurentU::evaluate(const Rational& u0) const {
  Rational s = 0;
  for (const auto& [p, c] : terms_) s += c * rational_pow(u0, p);
  return s;
}

std::string LaurentU::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [p, c] : terms_) {
    Rational mag = c;
    if (!first) {
      s += c < 0 ? " - " : " + ";
      if (c < 0) mag = -c;
    }
    first = false;
    if (p == 0) {
      s += mag.get_str();
      continue;
    }
    if (mag == -1)
      s += "-";
    else if (mag != 1)
      s += mag.get_str() + "*";
    s += "u";
    if (p != 1) s += "^" + std::to_string(p);
  }
  return s;
}

LaurentU LaurentU::parse(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.empty()) throw std::invalid_argument("empty ring element");
  LaurentU result;
  size_t i = 0;
  while (i < t.size()) {
    int sign = 1;
    if (t[i] == '+' || t[i] == '-') {
      sign = t[i] == '-' ? -1 : 1;
      ++i;
    }
    size_t j = i;
    // a term ends at the next + or - that is not part of an exponent
    while (j < t.size() && !((t[j] == '+' || t[j] == '-') && j > i && t[j - 1] != '^')) ++j;
    std::string term = t.substr(i, j - i);
    if (term.empty()) throw std::invalid_argument("malformed ring element '" + text + "'");
    Rational coeff = 1;
    int power = 0;
    size_t upos = term.find('u');
    if (upos == std::string::npos) {
      coeff = parse_rational(term);
    } else {
      std::string cpart = term.substr(0, upos);
      if (!cpart.empty()) {
        if (cpart.back() != '*') throw std::invalid_argument("expected '*' before u in '" + text + "'");
        cpart.pop_back();
        coeff = parse_rational(cpart);
      }
      std::string rest = term.substr(upos + 1);
      if (rest.empty()) {
        power = 1;
      } else {
        if (rest[0] != '^') throw std::invalid_argument("expected '^' after u in '" + text + "'");
        power = std::stoi(rest.substr(1));
      }
    }
    result.add_term(power, sign * coeff);
    i = j;
  }
  return result;
}

LaurentU LaurentU::operator-() const {
  LaurentU r = *this;
  for (auto& [p, c] : r.terms_) c = -c;
  return r;
}

LaurentU& LaurentU::operator+=(const LaurentU& o) {
  for (const auto& [p, c] : o.terms_) add_term(p, c);
  return *this;
}

LaurentU& LaurentU::operator-=(const LaurentU& o) {
  for (const auto& [p, c] : o.terms_) add_term(p, -c);
  return *this;
}

LaurentU& LaurentU::operator*=(const LaurentU& o) {
  LaurentU r;
  for (const auto& [p, c] : terms_)
    for (const auto& [q, d] : o.terms_) r.add_term(p + q, c * d);
  *this = std::move(r);
  return *this;
}

}  // namespace sphred
