#include "sphred/text_format.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "sphred/errors.hpp"

namespace sphred {

namespace {

using UPoly = LaurentPoly<LaurentU>;

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

struct Field {
  std::string key;
  std::string value;
  int line = 0;
  int col = 0;  // column of the first value character
};

struct Section {
  std::string name;
  int line = 0;
  std::vector<Field> fields;
};

[[noreturn]] void fail(const Field& f, const std::string& msg, int offset = 0) {
  throw ParseError(f.line, f.col + offset, msg);
}

std::string join(const std::vector<std::string>& v, const std::string& sep = ", ") {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

// Splits at `sep` outside brackets; offsets of the pieces are reported too.
std::vector<std::pair<std::string, int>> split_top(const std::string& s, char sep) {
  std::vector<std::pair<std::string, int>> out;
  int depth = 0;
  size_t start = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    char c = i < s.size() ? s[i] : sep;
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == sep && depth == 0) {
      std::string piece = s.substr(start, i - start);
      size_t lead = piece.find_first_not_of(" \t");
      out.emplace_back(trim(piece), static_cast<int>(start + (lead == std::string::npos ? 0 : lead)));
      start = i + 1;
    }
  }
  return out;
}

std::vector<Section> lex(const std::string& text) {
  std::vector<Section> sections;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw.substr(0, raw.find('#'));
    if (trim(s).empty()) continue;
    size_t first = s.find_first_not_of(" \t");
    if (s[first] == '[') {
      size_t close = s.find(']', first);
      if (close == std::string::npos || !trim(s.substr(close + 1)).empty())
        throw ParseError(line, static_cast<int>(first) + 1, "malformed section header");
      std::string name = trim(s.substr(first + 1, close - first - 1));
      if (name != "pair" && name != "structure" && name != "module" && name != "volume")
        throw ParseError(line, static_cast<int>(first) + 2,
                         "unknown section [" + name + "]; expected one of [pair], [structure], [module], [volume]");
      sections.push_back({name, line, {}});
      continue;
    }
    size_t eq = s.find('=');
    if (eq == std::string::npos) throw ParseError(line, static_cast<int>(first) + 1, "expected 'key = value'");
    if (sections.empty()) throw ParseError(line, static_cast<int>(first) + 1, "key outside of any section");
    Field f;
    f.key = trim(s.substr(0, eq));
    std::string rest = s.substr(eq + 1);
    size_t lead = rest.find_first_not_of(" \t");
    f.value = trim(rest);
    f.line = line;
    f.col = static_cast<int>(eq + 2 + (lead == std::string::npos ? 0 : lead));
    sections.back().fields.push_back(std::move(f));
  }
  if (sections.empty()) throw ParseError(line == 0 ? 1 : line, 1, "no sections");
  return sections;
}

Int parse_int(const Field& f, const std::string& s, int offset) {
  std::string t = trim(s);
  size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(t, &pos);
  } catch (const std::exception&) {
    fail(f, "expected an integer, found '" + t + "'", offset);
  }
  if (pos != t.size()) fail(f, "expected an integer, found '" + t + "'", offset);
  return v;
}

IntVec parse_vector(const Field& f, const std::string& s, int offset = 0) {
  IntVec v;
  if (trim(s).empty()) return v;
  for (const auto& [piece, off] : split_top(s, ',')) v.push_back(parse_int(f, piece, offset + off));
  return v;
}

// "[1,0;0,1]"
IntMat parse_matrix(const Field& f, const std::string& s, int offset = 0) {
  std::string t = trim(s);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') fail(f, "expected a matrix '[r1;r2;...]'", offset);
  IntMat m;
  std::string body = t.substr(1, t.size() - 2);
  if (trim(body).empty()) return m;
  for (const auto& [row, off] : split_top(body, ';')) m.push_back(parse_vector(f, row, offset + 1 + off));
  return m;
}

std::vector<std::string> parse_names(const std::string& s) {
  std::vector<std::string> out;
  for (const auto& [piece, off] : split_top(s, ',')) {
    (void)off;
    if (!piece.empty()) out.push_back(piece);
  }
  return out;
}

RootMask parse_subset(const Field& f, const std::vector<NamedForm>& roots, const std::string& s, int offset = 0) {
  std::string t = trim(s);
  if (t.size() < 2 || t.front() != '{' || t.back() != '}') fail(f, "expected a root subset '{name, ...}'", offset);
  RootMask m = 0;
  for (const auto& [name, off] : split_top(t.substr(1, t.size() - 2), ',')) {
    if (name.empty()) continue;
    bool found = false;
    for (size_t i = 0; i < roots.size(); ++i)
      if (roots[i].name == name) {
        m |= RootMask(1) << i;
        found = true;
      }
    if (!found) {
      std::vector<std::string> valid;
      for (const auto& r : roots) valid.push_back(r.name);
      fail(f, "unknown root '" + name + "'; expected one of " + join(valid), offset + 1 + off);
    }
  }
  return m;
}

Sector parse_sector_token(const Field& f, const std::string& s, int offset = 0) {
  std::string t = trim(s);
  if (t == "plus") return Sector::Plus;
  if (t == "zero") return Sector::Zero;
  if (t == "minus") return Sector::Minus;
  if (t == "none") return Sector::None;
  fail(f, "unknown sector '" + t + "'; expected one of plus, zero, minus, none", offset);
}

Rational parse_rat(const Field& f, const std::string& s, int offset = 0) {
  try {
    return parse_rational(trim(s));
  } catch (const std::exception&) {
    fail(f, "expected a rational number, found '" + trim(s) + "'", offset);
  }
}

// Polynomials in the lattice labels with coefficients in Q[u, 1/u].
class ExprParser {
 public:
  ExprParser(const Field& f, const std::string& text, int offset, const std::vector<std::string>& labels)
      : f_(f), s_(text), base_(offset), labels_(labels) {}

  UPoly parse() {
    UPoly p = expr();
    skip();
    if (i_ < s_.size()) error("unexpected '" + std::string(1, s_[i_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void error(const std::string& msg) { fail(f_, msg, base_ + static_cast<int>(i_)); }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  IntVec zero() const { return IntVec(labels_.size(), 0); }
  UPoly constant(const LaurentU& c) const {
    UPoly p;
    add_term(p, zero(), c);
    return p;
  }

  UPoly expr() {
    skip();
    UPoly acc;
    bool neg = false;
    if (i_ < s_.size() && (s_[i_] == '+' || s_[i_] == '-')) {
      neg = s_[i_] == '-';
      ++i_;
    }
    while (true) {
      UPoly t = term();
      add_into(acc, neg ? poly_shift(t, zero(), LaurentU(-1)) : t);
      skip();
      if (i_ < s_.size() && (s_[i_] == '+' || s_[i_] == '-')) {
        neg = s_[i_] == '-';
        ++i_;
        continue;
      }
      return acc;
    }
  }

  UPoly term() {
    UPoly acc = power();
    while (true) {
      skip();
      if (i_ < s_.size() && s_[i_] == '*') {
        ++i_;
        acc = poly_mul(acc, power());
        continue;
      }
      return acc;
    }
  }

  UPoly power() {
    UPoly base = atom();
    skip();
    if (i_ >= s_.size() || s_[i_] != '^') return base;
    ++i_;
    skip();
    size_t start = i_;
    if (i_ < s_.size() && s_[i_] == '-') ++i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (i_ == start || (i_ == start + 1 && s_[start] == '-')) error("expected an integer exponent");
    Int e = std::stoll(s_.substr(start, i_ - start));
    if (e < 0) {
      if (base.size() != 1 || base.begin()->first != zero() || !base.begin()->second.is_unit())
        error("negative exponents apply only to units of the coefficient ring");
      return constant(ring_pow(base.begin()->second, e));
    }
    UPoly r = constant(LaurentU(1));
    for (Int k = 0; k < e; ++k) r = poly_mul(r, base);
    return r;
  }

  UPoly atom() {
    skip();
    if (i_ >= s_.size()) error("expected a number, 'u', a coordinate label or '('");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      UPoly p = expr();
      skip();
      if (i_ >= s_.size() || s_[i_] != ')') error("expected ')'");
      ++i_;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (i_ < s_.size() && s_[i_] == '/') {
        ++i_;
        size_t d = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (d == i_) error("expected a denominator");
      }
      Rational v = parse_rational(s_.substr(start, i_ - start));
      return constant(LaurentU(v));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      std::string name = s_.substr(start, i_ - start);
      if (name == "u") return constant(LaurentU::u());
      for (size_t k = 0; k < labels_.size(); ++k)
        if (labels_[k] == name) {
          UPoly p;
          IntVec e = zero();
          e[k] = 1;
          add_term(p, e, LaurentU(1));
          return p;
        }
      i_ = start;
      std::vector<std::string> valid{"u"};
      valid.insert(valid.end(), labels_.begin(), labels_.end());
      error("unknown symbol '" + name + "'; expected one of " + join(valid));
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  const Field& f_;
  std::string s_;
  int base_;
  const std::vector<std::string>& labels_;
  size_t i_ = 0;
};

LaurentU parse_ring_element(const Field& f, const std::string& s, int offset) {
  std::vector<std::string> none;
  UPoly p = ExprParser(f, s, offset, none).parse();
  if (p.empty()) return LaurentU();
  return p.begin()->second;
}

void check_unique(const Section& sec, const std::vector<std::string>& repeatable) {
  std::map<std::string, int> seen;
  for (const auto& f : sec.fields) {
    bool rep = false;
    for (const auto& r : repeatable) rep = rep || f.key == r || f.key.rfind(r + "[", 0) == 0;
    if (!rep && seen[f.key]++) fail(f, "duplicate key '" + f.key + "'", -static_cast<int>(f.key.size()) - 2);
  }
}

[[noreturn]] void unknown_key(const Field& f, const std::string& section, const std::vector<std::string>& valid) {
  throw ParseError(f.line, 1,
                   "unknown key '" + f.key + "' in [" + section + "]; expected one of " + join(valid));
}

std::shared_ptr<const SphericalPair> parse_pair(const Section& sec, std::string& reference) {
  static const std::vector<std::string> keys{"catalog", "name",     "g",        "h",        "embed",   "g_roots",
                                              "h_roots", "c_h",      "weyl",     "g_labels", "h_labels", "n_exp"};
  check_unique(sec, {"c_h", "weyl"});
  PairDefinition d;
  const Field* catalog_field = nullptr;
  bool declarative = false;
  for (const auto& f : sec.fields) {
    if (f.key == "catalog") {
      catalog_field = &f;
      continue;
    }
    declarative = true;
    try {
      if (f.key == "name") {
        d.name = f.value;
      } else if (f.key == "g") {
        d.g = GroupSpec::parse(f.value);
      } else if (f.key == "h") {
        d.h = GroupSpec::parse(f.value);
      } else if (f.key == "embed") {
        d.embed = parse_matrix(f, f.value);
      } else if (f.key == "g_roots") {
        d.g_root_names = parse_names(f.value);
      } else if (f.key == "h_roots") {
        d.h_root_names = parse_names(f.value);
      } else if (f.key == "g_labels") {
        d.g_labels = parse_names(f.value);
      } else if (f.key == "h_labels") {
        d.h_labels = parse_names(f.value);
      } else if (f.key == "n_exp") {
        d.n_exp = parse_vector(f, f.value);
      } else if (f.key == "c_h" || f.key == "weyl") {
        size_t colon = f.value.find(':');
        if (colon == std::string::npos) fail(f, "expected 'name: value'");
        std::string name = trim(f.value.substr(0, colon));
        int off = static_cast<int>(colon + 1);
        if (f.key == "c_h")
          d.c_h.emplace_back(name, parse_vector(f, f.value.substr(colon + 1), off));
        else
          d.weyl.emplace_back(name, parse_matrix(f, f.value.substr(colon + 1), off));
      } else {
        unknown_key(f, "pair", keys);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      fail(f, e.what());
    }
  }
  if (catalog_field && declarative) throw ParseError(sec.line, 1, "[pair] mixes 'catalog' with a declarative pair");
  if (catalog_field) {
    try {
      reference = catalog_field->value;
      return catalog_pair(reference);
    } catch (const std::exception& e) {
      fail(*catalog_field, e.what());
    }
  }
  try {
    if (d.name.empty()) throw ParseError(sec.line, 1, "[pair] needs 'catalog' or 'name'");
    // `[]` embeds into a rank-0 H: one empty row per flat G coordinate
    if (d.embed.empty() && root_datum(d.h).flat_rank == 0) d.embed.assign(root_datum(d.g).flat_rank, IntVec());
    return std::make_shared<const SphericalPair>(make_pair(d));
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(sec.line, 1, std::string("invalid pair: ") + e.what());
  }
}

// family(shift; step; {theta}; sector) or fixed(shift; {theta}; sector)
TemplateEntry parse_template_entry(const Field& f, const SphericalPair& pair, const std::string& s, int offset) {
  size_t open = s.find('(');
  if (open == std::string::npos || s.back() != ')') fail(f, "expected 'family(...)' or 'fixed(...)'", offset);
  std::string kind = trim(s.substr(0, open));
  auto parts = split_top(s.substr(open + 1, s.size() - open - 2), ';');
  int base = offset + static_cast<int>(open) + 1;
  TemplateEntry e;
  size_t expect = 0;
  if (kind == "family") {
    e.kind = TemplateEntry::Kind::Family;
    expect = 4;
  } else if (kind == "fixed") {
    e.kind = TemplateEntry::Kind::Fixed;
    expect = 3;
  } else {
    fail(f, "unknown template entry '" + kind + "'; expected family or fixed", offset);
  }
  if (parts.size() != expect) fail(f, kind + " takes " + std::to_string(expect) + " fields", offset);
  size_t k = 0;
  e.shift = parse_vector(f, parts[k].first, base + parts[k].second);
  ++k;
  if (e.kind == TemplateEntry::Kind::Family) {
    e.step = parse_vector(f, parts[k].first, base + parts[k].second);
    ++k;
  }
  e.body.theta_h = parse_subset(f, pair.delta_h, parts[k].first, base + parts[k].second);
  ++k;
  e.body.sector = parse_sector_token(f, parts[k].first, base + parts[k].second);
  for (const IntVec* v : {&e.shift, &e.step})
    if (!v->empty() && static_cast<int>(v->size()) != pair.h_rank())
      fail(f, "vector has dimension " + std::to_string(v->size()) + ", expected " + std::to_string(pair.h_rank()),
           offset);
  return e;
}

// ({theta}; w; s) [reconstructed] [=> entry, entry, ...]
StructureEntry parse_entry(const Field& f, const SphericalPair& pair) {
  const std::string& v = f.value;
  if (v.empty() || v[0] != '(') fail(f, "expected '(theta; w; s)'");
  int depth = 0;
  size_t close = std::string::npos;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] == '(') ++depth;
    if (v[i] == ')' && --depth == 0) {
      close = i;
      break;
    }
  }
  if (close == std::string::npos) fail(f, "unbalanced parentheses");
  auto parts = split_top(v.substr(1, close - 1), ';');
  if (parts.size() != 3) fail(f, "a triple has three fields '(theta; w; s)'");
  StructureEntry e;
  e.triple.theta = parse_subset(f, pair.delta_g, parts[0].first, 1 + parts[0].second);
  e.triple.w = parts[1].first;
  bool known = false;
  std::vector<std::string> names;
  for (const auto& w : pair.weyl) {
    names.push_back(w.name);
    known = known || w.name == e.triple.w;
  }
  if (!known) fail(f, "unknown Weyl element '" + e.triple.w + "'; expected one of " + join(names), 1 + parts[1].second);
  e.triple.s = parse_vector(f, parts[2].first, 1 + parts[2].second);
  if (static_cast<int>(e.triple.s.size()) != pair.h_rank())
    fail(f, "shift has dimension " + std::to_string(e.triple.s.size()) + ", expected " +
                std::to_string(pair.h_rank()),
         1 + parts[2].second);
  std::string rest = v.substr(close + 1);
  size_t lead = rest.find_first_not_of(" \t");
  int off = static_cast<int>(close + 1 + (lead == std::string::npos ? 0 : lead));
  rest = trim(rest);
  if (rest.rfind("reconstructed", 0) == 0) {
    e.tmpl.reconstructed = true;
    rest = rest.substr(13);
    lead = rest.find_first_not_of(" \t");
    off += 13 + static_cast<int>(lead == std::string::npos ? 0 : lead);
    rest = trim(rest);
  }
  if (rest.empty()) return e;
  if (rest.rfind("=>", 0) != 0) fail(f, "expected '=>' or 'reconstructed'", off);
  std::string list = rest.substr(2);
  lead = list.find_first_not_of(" \t");
  off += 2 + static_cast<int>(lead == std::string::npos ? 0 : lead);
  for (const auto& [piece, poff] : split_top(list, ','))
    e.tmpl.entries.push_back(parse_template_entry(f, pair, piece, off + poff));
  return e;
}

ReductionStructure parse_structure(const Section& sec, const SphericalPair& pair) {
  static const std::vector<std::string> keys{"key", "theta_h", "sector", "entry", "note"};
  check_unique(sec, {"entry", "note"});
  ReductionStructure st;
  bool have_sector = false;
  for (const auto& f : sec.fields) {
    if (f.key == "key") {
      st.key = f.value;
    } else if (f.key == "theta_h") {
      st.theta_h = parse_subset(f, pair.delta_h, f.value);
    } else if (f.key == "sector") {
      st.sector = parse_sector_token(f, f.value);
      have_sector = true;
      if ((st.sector == Sector::None) == pair.has_sectors())
        fail(f, "sector " + sector_name(st.sector) + " does not fit pair " + pair.name);
    } else if (f.key == "entry") {
      st.entries.push_back(parse_entry(f, pair));
    } else if (f.key == "note") {
      st.notes.push_back(f.value);
    } else {
      unknown_key(f, "structure", keys);
    }
  }
  if (!have_sector && pair.has_sectors()) throw ParseError(sec.line, 1, "[structure] needs a sector for pair " + pair.name);
  return st;
}

ExpTerm<LaurentU> parse_term(const Field& f, const SphericalPair& pair) {
  auto parts = split_top(f.value, ';');
  if (parts.size() != 3) fail(f, "a term reads 'lambda; chi = v1, ...; poly'");
  ExpTerm<LaurentU> t;
  t.lambda = parse_ring_element(f, parts[0].first, parts[0].second);
  std::string chi = parts[1].first;
  int coff = parts[1].second;
  if (chi.rfind("chi", 0) != 0) fail(f, "expected 'chi = ...'", coff);
  size_t eq = chi.find('=');
  if (eq == std::string::npos) fail(f, "expected 'chi = ...'", coff);
  for (const auto& [piece, off] : split_top(chi.substr(eq + 1), ',')) {
    if (piece.empty()) continue;
    LaurentU x = parse_ring_element(f, piece, coff + static_cast<int>(eq) + 1 + off);
    if (!x.is_unit()) fail(f, "character value " + x.to_string() + " is not a unit", coff + static_cast<int>(eq) + 1 + off);
    t.chi.push_back(x);
  }
  if (static_cast<int>(t.chi.size()) != pair.h_rank())
    fail(f, "character has " + std::to_string(t.chi.size()) + " values, expected " + std::to_string(pair.h_rank()),
         coff);
  t.poly = ExprParser(f, parts[2].first, parts[2].second, pair.h_lattice.labels).parse();
  return t;
}

ModuleSpec parse_module(const Section& sec, const SphericalPair& pair) {
  static const std::vector<std::string> keys{"ring", "term", "term[<sector>]"};
  check_unique(sec, {"term"});
  ModuleSpec m;
  for (const auto& f : sec.fields) {
    if (f.key == "ring") {
      if (f.value == "rational")
        m.ring = RingKind::Rational;
      else if (f.value == "laurent_u")
        m.ring = RingKind::LaurentU;
      else
        fail(f, "unknown ring '" + f.value + "'; expected rational or laurent_u");
    } else if (f.key == "term") {
      m.module.coefficient.terms.push_back(parse_term(f, pair));
    } else if (f.key.rfind("term[", 0) == 0 && f.key.back() == ']') {
      Sector s = parse_sector_token(f, f.key.substr(5, f.key.size() - 6), -static_cast<int>(f.key.size()));
      bool ok = false;
      for (Sector x : sectors_of(pair)) ok = ok || x == s;
      if (!ok) fail(f, "sector " + sector_name(s) + " does not fit pair " + pair.name);
      m.module.sector_coefficients[s].terms.push_back(parse_term(f, pair));
    } else {
      unknown_key(f, "module", keys);
    }
  }
  if (m.ring == RingKind::Rational) {
    try {
      m.rational();
    } catch (const GuardViolation& e) {
      throw ParseError(sec.line, 1, std::string(e.what()) + "; use ring = laurent_u");
    }
  }
  return m;
}

VolumeConfig parse_volume(const Section& sec, const SphericalPair& pair) {
  static const std::vector<std::string> keys{"q", "constant"};
  check_unique(sec, {"constant"});
  VolumeConfig cfg;
  for (const auto& f : sec.fields) {
    if (f.key == "q") {
      cfg.q = parse_rat(f, f.value);
      if (cfg.q <= 1) fail(f, "q must exceed 1");
    } else if (f.key == "constant") {
      size_t colon = f.value.find(':');
      if (colon == std::string::npos) fail(f, "expected '{theta}: value'");
      RootMask m = parse_subset(f, pair.delta_h, f.value.substr(0, colon));
      Rational c = parse_rat(f, f.value.substr(colon + 1), static_cast<int>(colon + 1));
      if (c <= 0) fail(f, "volume constants must be positive", static_cast<int>(colon + 1));
      cfg.constants[m] = c;
    } else {
      unknown_key(f, "volume", keys);
    }
  }
  return cfg;
}

std::string vec_text(const IntVec& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string mat_text(const IntMat& m) {
  std::string s = "[";
  for (size_t i = 0; i < m.size(); ++i) s += (i ? ";" : "") + vec_text(m[i]);
  return s + "]";
}

std::string ring_text(const LaurentU& x) {
  std::string s = x.to_string();
  return s;
}

std::string poly_text(const UPoly& p, const std::vector<std::string>& labels) {
  return poly_to_string(p, labels);
}

void write_terms(std::ostringstream& out, const std::string& key, const SphericalPair& pair,
                 const ExpPolyCoefficient<LaurentU>& c) {
  for (const auto& t : c.terms) {
    out << key << " = " << ring_text(t.lambda) << "; chi = ";
    for (size_t i = 0; i < t.chi.size(); ++i) out << (i ? ", " : "") << ring_text(t.chi[i]);
    out << "; " << poly_text(t.poly, pair.h_lattice.labels) << "\n";
  }
}

}  // namespace

ToyModule<Rational> ModuleSpec::rational() const {
  auto conv = [](const LaurentU& x) {
    if (x.is_zero()) return Rational(0);
    if (x.terms().size() != 1 || x.terms().begin()->first != 0)
      throw GuardViolation("coefficient " + x.to_string() + " involves u");
    return x.terms().begin()->second;
  };
  auto coef = [&](const ExpPolyCoefficient<LaurentU>& c) {
    ExpPolyCoefficient<Rational> out;
    for (const auto& t : c.terms) {
      ExpTerm<Rational> e;
      e.lambda = conv(t.lambda);
      for (const auto& x : t.chi) e.chi.push_back(conv(x));
      for (const auto& [k, v] : t.poly) add_term(e.poly, k, conv(v));
      out.terms.push_back(std::move(e));
    }
    return out;
  };
  ToyModule<Rational> m;
  m.coefficient = coef(module.coefficient);
  for (const auto& [s, c] : module.sector_coefficients) m.sector_coefficients[s] = coef(c);
  return m;
}

ModuleSpec module_spec(const ToyModule<LaurentU>& m) { return {RingKind::LaurentU, m}; }

ModuleSpec module_spec(const ToyModule<Rational>& m) {
  auto coef = [](const ExpPolyCoefficient<Rational>& c) {
    ExpPolyCoefficient<LaurentU> out;
    for (const auto& t : c.terms) {
      ExpTerm<LaurentU> e;
      e.lambda = LaurentU(t.lambda);
      for (const auto& x : t.chi) e.chi.push_back(LaurentU(x));
      for (const auto& [k, v] : t.poly) add_term(e.poly, k, LaurentU(v));
      out.terms.push_back(std::move(e));
    }
    return out;
  };
  ModuleSpec s;
  s.ring = RingKind::Rational;
  s.module.coefficient = coef(m.coefficient);
  for (const auto& [sec, c] : m.sector_coefficients) s.module.sector_coefficients[sec] = coef(c);
  return s;
}

InputDocument parse_input(const std::string& text) {
  InputDocument doc;
  for (const auto& sec : lex(text)) {
    if (sec.name == "pair") {
      if (doc.pair) throw ParseError(sec.line, 1, "only one [pair] section is allowed");
      doc.pair = parse_pair(sec, doc.pair_reference);
      continue;
    }
    if (!doc.pair) throw ParseError(sec.line, 1, "[" + sec.name + "] before any [pair]");
    if (sec.name == "structure") {
      doc.structures.push_back(parse_structure(sec, *doc.pair));
    } else if (sec.name == "module") {
      if (doc.module) throw ParseError(sec.line, 1, "only one [module] section is allowed");
      doc.module = parse_module(sec, *doc.pair);
    } else {
      if (doc.volume) throw ParseError(sec.line, 1, "only one [volume] section is allowed");
      doc.volume = parse_volume(sec, *doc.pair);
    }
  }
  return doc;
}

InputDocument parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, 0, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_input(ss.str());
}

std::string serialize_pair(const SphericalPair& pair) {
  const PairDefinition& d = pair.definition;
  std::ostringstream out;
  out << "[pair]\n";
  out << "name = " << d.name << "\n";
  out << "g = " << d.g.to_string() << "\n";
  out << "h = " << d.h.to_string() << "\n";
  out << "embed = " << mat_text(d.embed) << "\n";
  if (!d.g_root_names.empty()) out << "g_roots = " << join(d.g_root_names) << "\n";
  if (!d.h_root_names.empty()) out << "h_roots = " << join(d.h_root_names) << "\n";
  for (const auto& [n, v] : d.c_h) out << "c_h = " << n << ": " << vec_text(v) << "\n";
  for (const auto& [n, m] : d.weyl) out << "weyl = " << n << ": " << mat_text(m) << "\n";
  if (!d.g_labels.empty()) out << "g_labels = " << join(d.g_labels) << "\n";
  if (!d.h_labels.empty()) out << "h_labels = " << join(d.h_labels) << "\n";
  if (!d.n_exp.empty()) out << "n_exp = " << vec_text(d.n_exp) << "\n";
  return out.str();
}

std::string serialize_structure(const SphericalPair& pair, const ReductionStructure& st) {
  auto subset = [](const std::vector<NamedForm>& roots, RootMask m) {
    return "{" + join(names_from_mask(roots, m)) + "}";
  };
  std::ostringstream out;
  out << "[structure]\n";
  if (!st.key.empty()) out << "key = " << st.key << "\n";
  out << "theta_h = " << subset(pair.delta_h, st.theta_h) << "\n";
  out << "sector = " << sector_name(st.sector) << "\n";
  for (const auto& e : st.entries) {
    out << "entry = (" << subset(pair.delta_g, e.triple.theta) << "; " << e.triple.w << "; " << vec_text(e.triple.s)
        << ")";
    if (e.tmpl.reconstructed) out << " reconstructed";
    if (!e.tmpl.entries.empty()) {
      out << " =>";
      for (size_t i = 0; i < e.tmpl.entries.size(); ++i) {
        const auto& t = e.tmpl.entries[i];
        out << (i ? ", " : " ");
        if (t.kind == TemplateEntry::Kind::Family)
          out << "family(" << vec_text(t.shift) << "; " << vec_text(t.step) << "; ";
        else
          out << "fixed(" << vec_text(t.shift) << "; ";
        out << subset(pair.delta_h, t.body.theta_h) << "; " << sector_name(t.body.sector) << ")";
      }
    }
    out << "\n";
  }
  for (const auto& n : st.notes) out << "note = " << n << "\n";
  return out.str();
}

std::string serialize_module(const SphericalPair& pair, const ModuleSpec& m) {
  std::ostringstream out;
  out << "[module]\n";
  out << "ring = " << (m.ring == RingKind::Rational ? "rational" : "laurent_u") << "\n";
  write_terms(out, "term", pair, m.module.coefficient);
  for (const auto& [s, c] : m.module.sector_coefficients) write_terms(out, "term[" + sector_name(s) + "]", pair, c);
  return out.str();
}

std::string serialize_volume(const SphericalPair& pair, const VolumeConfig& cfg) {
  std::ostringstream out;
  out << "[volume]\n";
  out << "q = " << to_string(cfg.q) << "\n";
  for (const auto& [m, c] : cfg.constants)
    out << "constant = {" << join(names_from_mask(pair.delta_h, m)) << "}: " << to_string(c) << "\n";
  return out.str();
}

std::string serialize(const InputDocument& doc) {
  if (!doc.pair) throw GuardViolation("document without a pair");
  std::string s;
  if (doc.pair_reference.empty())
    s = serialize_pair(*doc.pair);
  else
    s = "[pair]\ncatalog = " + doc.pair_reference + "\n";
  for (const auto& st : doc.structures) s += "\n" + serialize_structure(*doc.pair, st);
  if (doc.module) s += "\n" + serialize_module(*doc.pair, *doc.module);
  if (doc.volume) s += "\n" + serialize_volume(*doc.pair, *doc.volume);
  return s;
}

}  // namespace sphred
