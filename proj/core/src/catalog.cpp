#include <mutex>

#include "sphred/errors.hpp"
#include "sphred/reduction.hpp"

namespace sphred {

namespace {

using PairPtr = std::shared_ptr<const SphericalPair>;

struct RawTriple {
  std::vector<std::string> excluded;  // theta = Delta_G minus these roots
  std::string w;
  IntVec s;
};

class Builder {
 public:
  Builder(PairPtr pair, std::string prefix, std::vector<CatalogItem>& out)
      : pair_(std::move(pair)), prefix_(std::move(prefix)), out_(out) {}

  const SphericalPair& pair() const { return *pair_; }

  RootMask h_mask(const std::vector<std::string>& names) const { return mask_from_names(pair_->delta_h, names); }

  std::string theta_key(RootMask theta_h) const {
    if (theta_h == 0) return "empty";
    std::string s;
    for (const auto& n : names_from_mask(pair_->delta_h, theta_h)) s += (s.empty() ? "" : "+") + n;
    return s;
  }

  ReductionStructure& add(RootMask theta_h, Sector sector, const std::vector<RawTriple>& triples,
                          std::vector<std::string> notes = {}) {
    ReductionStructure st;
    st.key = prefix_;
    st.key += "/" + theta_key(theta_h);
    if (sector != Sector::None) st.key += "/" + sector_name(sector);
    st.theta_h = theta_h;
    st.sector = sector;
    st.notes = std::move(notes);
    for (const auto& t : triples) {
      Triple tr{pair_->full_g_mask() & ~mask_from_names(pair_->delta_g, t.excluded), t.w, t.s};
      st.entries.push_back({tr, reconstruct_template(*pair_, st.cone(), t.s)});
    }
    if (!st.entries.empty()) st.notes.push_back("F1 templates reconstructed");
    out_.push_back({st.key, pair_, std::move(st)});
    return out_.back().structure;
  }

  // Explicit template Family(0, s, body) for every triple.
  void set_geometric_templates(ReductionStructure& st, const StdConeId& body) {
    for (auto& e : st.entries) {
      F1Template t;
      t.entries.push_back({TemplateEntry::Kind::Family, IntVec(pair_->h_rank(), 0), e.triple.s, body});
      e.tmpl = t;
    }
    std::erase(st.notes, std::string("F1 templates reconstructed"));
  }

 private:
  PairPtr pair_;
  std::string prefix_;
  std::vector<CatalogItem>& out_;
};

std::vector<RootMask> subsets_descending(RootMask full) {
  std::vector<RootMask> out;
  for (Int m = full; m >= 0; --m) out.push_back(static_cast<RootMask>(m));
  return out;
}

// Pushes a flat H-lattice vector to the quotient coordinates of the pair.
IntVec h_point(const SphericalPair& pair, const IntVec& flat) { return mat_vec(root_datum(pair.definition.h).proj, flat); }

void add_triple(std::vector<CatalogItem>& out) {
  auto p = catalog_pair("triple");
  Builder b(p, "triple", out);
  IntVec s = h_point(*p, {1, 0});
  auto& st = b.add(0, Sector::None, {{{"a1", "a2", "a3"}, "e", s}});
  b.set_geometric_templates(st, {p->full_h_mask(), Sector::None});
  b.add(p->full_h_mask(), Sector::None, {});
}

void add_waldspurger(std::vector<CatalogItem>& out) {
  auto p = catalog_pair("waldspurger");
  Builder b(p, "wal", out);
  auto& plus = b.add(0, Sector::Plus, {{{"a"}, "e", {1}}});
  b.set_geometric_templates(plus, {0, Sector::Zero});
  b.add(0, Sector::Zero, {});
  auto& minus = b.add(0, Sector::Minus, {{{"a"}, "w", {-1}}});
  b.set_geometric_templates(minus, {0, Sector::Zero});
}

void add_gl(std::vector<CatalogItem>& out, int n) {
  auto p = catalog_pair("gl" + std::to_string(n));
  Builder b(p, "gl/n" + std::to_string(n), out);
  auto beta = [](int i) { return "b" + std::to_string(i); };
  auto alpha = [](int i) { return "a" + std::to_string(i); };
  auto w = [](int j) { return "w" + std::to_string(j); };
  auto T = [n](int i, int shift) {
    IntVec t(n, shift);
    for (int k = 0; k < i; ++k) t[k] += 1;
    return t;
  };
  for (RootMask theta : subsets_descending(p->full_h_mask())) {
    auto outside = [&](int i) { return i >= 1 && i <= n - 1 && !(theta & (RootMask(1) << (i - 1))); };
    std::vector<RawTriple> zero;
    for (int i = 1; i <= n - 1; ++i)
      if (outside(i)) zero.push_back({{beta(i), alpha(i)}, w(n + 1), T(i, 0)});
    std::vector<RawTriple> plus = zero;
    plus.push_back({{beta(n)}, w(n + 1), T(n, 0)});
    std::vector<RawTriple> minus;
    for (int j = 2; j <= n; ++j) {
      if (!outside(j - 1)) continue;
      for (int i = 1; i <= n - 1; ++i)
        if (outside(i) && i + 1 <= j) minus.push_back({{beta(i), alpha(i)}, w(j), T(i, 0)});
      for (int i = 1; i <= n - 1; ++i)
        if (outside(i) && j <= i + 1) minus.push_back({{beta(i + 1), alpha(i)}, w(j), T(i, -1)});
    }
    for (int i = 1; i <= n - 1; ++i)
      if (outside(i)) minus.push_back({{beta(i + 1), alpha(i)}, w(1), T(i, -1)});
    minus.push_back({{beta(1)}, w(1), T(0, -1)});
    b.add(theta, Sector::Plus, plus);
    b.add(theta, Sector::Zero, zero);
    b.add(theta, Sector::Minus, minus, {"minus-sector convention for alpha_0 transcribed literally"});
  }
}

void add_so(std::vector<CatalogItem>& out, int n) {
  auto p = catalog_pair("so" + std::to_string(n));
  Builder b(p, "so/n" + std::to_string(n), out);
  if (n == 3) {
    b.add(b.h_mask({"a1"}), Sector::None, {});
    b.add(0, Sector::None, {{{"b1", "b2", "a1"}, "e", {1}}});
    return;
  }
  b.add(b.h_mask({"a1", "a2"}), Sector::None, {});
  b.add(b.h_mask({"a1"}), Sector::None, {{{"b2", "a2"}, "e", {1, 1}}});
  b.add(b.h_mask({"a2"}), Sector::None, {{{"b2", "a1"}, "w", {1, -1}}});
  b.add(0, Sector::None,
        {{{"b1", "a1", "a2"}, "e", {1, 0}},
         {{"b1", "a1", "a2"}, "w", {1, 0}},
         {{"b2", "a2"}, "e", {1, 1}},
         {{"b2", "a1"}, "w", {1, -1}}});
}

void add_gl4gl2(std::vector<CatalogItem>& out) {
  auto p = catalog_pair("gl4gl2");
  const SphericalPair& pr = *p;
  IntVec a[3] = {{0, 0}, {1, 0}, {1, 1}};
  auto s = [&](int i, int j) { return h_point(pr, {a[i][0], a[i][1], a[j][0], a[j][1]}); };
  Builder t1(p, "table1", out);
  RootMask full = pr.full_h_mask(), m1 = t1.h_mask({"a1"}), m2 = t1.h_mask({"a2"});
  RawTriple b2{{"b2"}, "e", s(2, 0)};
  RawTriple b3a{{"b3", "a"}, "e", s(2, 1)};
  RawTriple b1{{"b1"}, "e", s(1, 0)};
  t1.add(full, Sector::Zero, {});
  t1.add(full, Sector::Plus, {b2});
  t1.add(m1, Sector::Zero, {b3a});
  t1.add(m1, Sector::Plus, {b3a, b2});
  t1.add(m2, Sector::Zero, {b1});
  t1.add(m2, Sector::Plus, {b1, b2});
  t1.add(0, Sector::Zero, {b1, b3a});
  t1.add(0, Sector::Plus, {b1, b3a, b2});

  Builder t2(p, "table2", out);
  t2.add(full, Sector::Minus, {{{"b2"}, "w3412", s(0, 2)}});
  t2.add(m1, Sector::Minus,
         {{{"b1", "a"}, "w3124", s(0, 1)},
          {{"b3", "a"}, "w3124", s(2, 1)},
          {{"b1", "a"}, "w3412", s(0, 1)},
          {{"b2"}, "w3412", s(0, 2)}});
  t2.add(m2, Sector::Minus,
         {{{"b1"}, "w1342", s(1, 0)},
          {{"b3"}, "w1342", s(1, 2)},
          {{"b3"}, "w3412", s(1, 2)},
          {{"b2"}, "w3412", s(0, 2)}});
  t2.add(0, Sector::Minus,
         {{{"b1"}, "w1324", s(1, 0)},
          {{"b2", "a"}, "w1324", s(1, 1)},
          {{"b3", "a"}, "w1324", s(2, 1)},
          {{"b1"}, "w1342", s(1, 0)},
          {{"b3"}, "w1342", s(1, 2)},
          {{"b2", "a"}, "w1342", s(1, 1)},
          {{"b1", "a"}, "w3124", s(0, 1)},
          {{"b2", "a"}, "w3124", s(1, 1)},
          {{"b3", "a"}, "w3124", s(2, 1)},
          {{"b1", "a"}, "w3142", s(0, 1)},
          {{"b2", "a"}, "w3142", s(1, 1)},
          {{"b3"}, "w3142", s(1, 2)},
          {{"b1", "a"}, "w3412", s(0, 1)},
          {{"b3"}, "w3412", s(1, 2)},
          {{"b2"}, "w3412", s(0, 2)}},
         {"Weyl element of the (b3, s12) triple in the w3142 block read as w3142"});
}

void add_sp6sp4(std::vector<CatalogItem>& out) {
  auto p = catalog_pair("sp6sp4");
  Builder b(p, "table3", out);
  IntVec a[3] = {{0, 0}, {1, 0}, {1, 1}};
  auto s = [&](int i, int j) { return IntVec{a[i][0], a[i][1], j}; };
  RootMask mb1 = b.h_mask({"b1"}), mb2 = b.h_mask({"b2"}), ma1 = b.h_mask({"a1"});
  for (RootMask theta : subsets_descending(b.pair().full_h_mask())) {
    if (!(theta & ma1)) continue;
    std::vector<RawTriple> ts;
    if (!(theta & mb1)) ts.push_back({{"g1", "b1"}, "w3", s(1, 0)});
    if (!(theta & mb2)) ts.push_back({{"g2", "b2"}, "w3", s(2, 0)});
    b.add(theta, Sector::None, ts);
  }
  b.add(mb1 | mb2, Sector::None, {{{"g1"}, "e", s(0, 1)}});
  b.add(mb1, Sector::None,
        {{{"g1"}, "e", s(0, 1)},
         {{"g3", "b2"}, "e", s(2, 1)},
         {{"g2", "b2"}, "w3", s(2, 0)},
         {{"g3", "b2"}, "w3", s(2, 1)}});
  b.add(mb2, Sector::None,
        {{{"g1"}, "e", s(0, 1)},
         {{"g2", "b1"}, "e", s(1, 1)},
         {{"g1", "b1"}, "w2", s(1, 0)},
         {{"g2", "b1"}, "w2", s(1, 1)}});
  b.add(0, Sector::None,
        {{{"g1"}, "e", s(0, 1)},
         {{"g2", "b1"}, "e", s(1, 1)},
         {{"g3", "b2"}, "e", s(2, 1)},
         {{"g1", "b1"}, "w2", s(1, 0)},
         {{"g2", "b1"}, "w2", s(1, 1)},
         {{"g3", "b2"}, "w2", s(2, 1)},
         {{"g1", "b1"}, "w3", s(1, 0)},
         {{"g2", "b2"}, "w3", s(2, 0)},
         {{"g3", "b2"}, "w3", s(2, 1)}});
}

void add_aniso(std::vector<CatalogItem>& out) {
  Builder b(catalog_pair("aniso"), "aniso", out);
  b.add(0, Sector::None, {});
}

std::vector<CatalogItem> build_catalog() {
  std::vector<CatalogItem> out;
  add_aniso(out);
  add_triple(out);
  add_waldspurger(out);
  add_gl(out, 2);
  add_gl(out, 3);
  add_so(out, 3);
  add_so(out, 4);
  add_gl4gl2(out);
  add_sp6sp4(out);
  return out;
}

}  // namespace

std::shared_ptr<const SphericalPair> catalog_pair(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, PairPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  auto p = std::make_shared<const SphericalPair>(build_catalog_pair(name));
  cache[name] = p;
  cache[p->name] = p;
  return p;
}

const std::vector<CatalogItem>& catalog() {
  static const std::vector<CatalogItem> items = build_catalog();
  return items;
}

std::vector<CatalogItem> catalog_select(const std::string& selector) {
  std::vector<CatalogItem> out;
  for (const auto& it : catalog())
    if (selector == "all" || it.key == selector || it.key.rfind(selector + "/", 0) == 0) out.push_back(it);
  return out;
}

const CatalogItem& catalog_lookup(const std::string& key) {
  for (const auto& it : catalog())
    if (it.key == key) return it;
  throw UnknownPair("no catalog entry '" + key + "'");
}

std::map<StdConeId, ReductionStructure> catalog_structures(const std::string& pair_name) {
  std::string name = catalog_pair(pair_name)->name;
  std::map<StdConeId, ReductionStructure> out;
  for (const auto& it : catalog())
    if (it.pair->name == name) out[it.structure.cone()] = it.structure;
  if (out.empty()) throw UnknownPair("no catalog structures for pair '" + pair_name + "'");
  return out;
}

std::vector<CatalogItem> redundant_fixtures() {
  std::vector<CatalogItem> out;
  auto pad = [&](const std::string& key, const RawTriple& extra) {
    CatalogItem it = catalog_lookup(key);
    const SphericalPair& p = *it.pair;
    Triple t{p.full_g_mask() & ~mask_from_names(p.delta_g, extra.excluded), extra.w, extra.s};
    it.structure.entries.push_back({t, reconstruct_template(p, it.structure.cone(), t.s)});
    it.key += "+redundant";
    it.structure.key = it.key;
    out.push_back(std::move(it));
  };
  pad("triple/empty", {{"a1", "a2", "a3"}, "e", {2}});
  pad("wal/empty/plus", {{"a"}, "e", {2}});
  pad("gl/n2/empty/zero", {{"b1", "a1"}, "w3", {2, 0}});
  pad("table3/b1+b2", {{"g1"}, "e", {0, 0, 2}});
  return out;
}

}  // namespace sphred
