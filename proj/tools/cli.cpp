#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "sphred/errors.hpp"
#include "sphred/period.hpp"
#include "sphred/reduction.hpp"
#include "sphred/series.hpp"
#include "sphred/text_format.hpp"

namespace sphred::cli {

namespace {

using json = nlohmann::ordered_json;

enum Exit { kPass = 0, kFail = 1, kInconclusive = 2 };

struct Common {
  std::string format = "text";
  std::string out_path;
  bool show_float = false;
  bool timings = false;
};

struct Selection {
  std::string catalog;
  std::string pair;
  std::string theta;
  std::string sector;
  std::vector<std::string> files;
};

// FNV-1a over the canonical input description.
std::string digest(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string decimal(const Rational& x) {
  std::ostringstream s;
  s << std::setprecision(12) << to_double(x);
  return s.str();
}

void put_number(json& j, const std::string& key, const Rational& x, const Common& c) {
  j[key] = to_string(x);
  if (c.show_float) j[key + "_float"] = to_double(x);
}

std::string show(const Rational& x, const Common& c) {
  std::string s = to_string(x);
  if (c.show_float) s += " (~" + decimal(x) + ")";
  return s;
}

json verdict_json(const Verdict& v) {
  json j;
  j["verdict"] = v.kind_name();
  if (!v.reason.empty()) j["reason"] = v.reason;
  if (!v.witness.empty()) j["witness"] = v.witness;
  if (v.piece_i >= 0) j["piece"] = v.piece_i;
  if (v.piece_j >= 0) j["piece2"] = v.piece_j;
  return j;
}

int exit_for(const Verdict& v) { return v.pass() ? kPass : v.fail() ? kFail : kInconclusive; }

std::string status_name(int code) { return code == kPass ? "pass" : code == kFail ? "fail" : "inconclusive"; }

std::vector<Int> parse_int_list(const std::string& s) {
  std::vector<Int> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(std::stoll(item));
  if (v.empty()) throw GuardViolation("empty list '" + s + "'");
  return v;
}

std::vector<Rational> parse_rational_list(const std::vector<std::string>& items) {
  std::vector<Rational> v;
  for (const auto& s : items) {
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(parse_rational(item));
  }
  return v;
}

RootMask theta_from_text(const SphericalPair& pair, const std::string& text) {
  if (text == "empty" || text == "{}" || text.empty()) return 0;
  std::string t = text;
  if (t.front() == '{' && t.back() == '}') t = t.substr(1, t.size() - 2);
  std::vector<std::string> names;
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::stringstream plus(item);
    std::string name;
    while (std::getline(plus, name, '+'))
      if (!name.empty()) names.push_back(name);
  }
  for (const auto& n : names)
    if (pair.delta_h_index(n) < 0) throw GuardViolation("unknown H root '" + n + "' for pair " + pair.name);
  return mask_from_names(pair.delta_h, names);
}

std::string triple_text(const SphericalPair& pair, const Triple& t) {
  return "(" + mask_to_string(pair.delta_g, t.theta) + "; " + t.w + "; " + to_string(t.s) + ")";
}

class Emitter {
 public:
  Emitter(const Common& c, std::ostream& out) : c_(c), out_(out) {}

  void emit(const json& doc, const std::string& text) {
    std::string body = c_.format == "json" ? doc.dump(2) + "\n" : text;
    if (c_.out_path.empty()) {
      out_ << body;
      return;
    }
    std::ofstream f(c_.out_path, std::ios::binary);
    if (!f) throw GuardViolation("cannot write " + c_.out_path);
    f << body;
  }

 private:
  const Common& c_;
  std::ostream& out_;
};

json document(const std::string& command, const std::string& input) {
  json doc;
  doc["version"] = kVersion;
  doc["command"] = command;
  doc["digest"] = digest(command + "\n" + input);
  return doc;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  Selection sel;
  int n_max = 4;
  std::string m_list = "1,3";
  std::string b_list = "12,24";
};

struct VerifyItem {
  std::string key;
  std::shared_ptr<const SphericalPair> pair;
  ReductionStructure structure;
};

std::vector<VerifyItem> select_items(const Selection& sel, std::string& canonical) {
  std::vector<VerifyItem> items;
  if (!sel.files.empty()) {
    for (const auto& path : sel.files) {
      InputDocument doc = parse_file(path);
      canonical += serialize(doc);
      for (size_t i = 0; i < doc.structures.size(); ++i) {
        std::string key = doc.structures[i].key.empty() ? path + "#" + std::to_string(i) : doc.structures[i].key;
        items.push_back({key, doc.pair, doc.structures[i]});
      }
    }
    return items;
  }
  if (!sel.pair.empty()) {
    auto pair = catalog_pair(sel.pair);
    std::optional<RootMask> theta;
    std::optional<Sector> sector;
    if (!sel.theta.empty()) theta = theta_from_text(*pair, sel.theta);
    if (!sel.sector.empty()) sector = parse_sector(sel.sector);
    for (const auto& it : catalog()) {
      if (it.pair->name != pair->name) continue;
      if (theta && it.structure.theta_h != *theta) continue;
      if (sector && it.structure.sector != *sector) continue;
      items.push_back({it.key, it.pair, it.structure});
    }
    canonical += "pair=" + sel.pair + " theta=" + sel.theta + " sector=" + sel.sector + "\n";
  } else {
    std::string s = sel.catalog.empty() ? "all" : sel.catalog;
    for (const auto& it : catalog_select(s)) items.push_back({it.key, it.pair, it.structure});
    canonical += "catalog=" + s + "\n";
  }
  if (items.empty()) throw GuardViolation("the selection matches no catalog structure");
  return items;
}

int cmd_verify(const VerifyArgs& a, const Common& c, std::ostream& out) {
  if (a.n_max < 1 || a.n_max > 8) throw GuardViolation("--nmax must lie in 1..8");
  VerifyOptions opt;
  opt.n_max = a.n_max;
  opt.m_list = parse_int_list(a.m_list);
  opt.b_list = parse_int_list(a.b_list);
  std::string canonical;
  auto items = select_items(a.sel, canonical);
  canonical += "nmax=" + std::to_string(a.n_max) + " m=" + a.m_list + " b=" + a.b_list + "\n";
  json doc = document("verify", canonical);
  json arr = json::array();
  std::ostringstream text;
  int worst = kPass;
  for (const auto& item : items) {
    const SphericalPair& pair = *item.pair;
    Report rep = verify(pair, item.structure, opt);
    Verdict overall = rep.overall();
    int code = exit_for(overall);
    if (code == kFail)
      worst = kFail;
    else if (code == kInconclusive && worst != kFail)
      worst = kInconclusive;

    json j;
    j["key"] = item.key;
    j["pair"] = pair.name;
    j["theta_h"] = mask_to_string(pair.delta_h, item.structure.theta_h);
    j["sector"] = sector_name(item.structure.sector);
    json triples = json::array();
    for (const auto& e : item.structure.entries) triples.push_back(triple_text(pair, e.triple));
    j["triples"] = triples;
    json checks;
    checks["membership"] = verdict_json(rep.membership_verdict());
    json f1 = verdict_json(rep.f1_verdict());
    f1["n_max"] = opt.n_max;
    checks["f1"] = f1;
    json f2 = verdict_json(rep.f2.verdict);
    f2["infinite"] = rep.f2.stage1.infinite_any;
    f2["counts"] = rep.f2.counts;
    f2["agree"] = rep.f2.agree;
    checks["f2"] = f2;
    json mn = verdict_json(rep.minimality.verdict);
    json dels = json::array();
    for (const auto& d : rep.minimality.deletions) dels.push_back(d.verdict.kind_name());
    mn["deletions"] = dels;
    checks["minimality"] = mn;
    j["checks"] = checks;
    json wit = json::array();
    auto add_witness = [&](const std::string& check, const Verdict& v) {
      if (v.pass() || v.witness.empty()) return;
      wit.push_back({{"check", check}, {"kind", v.kind_name()}, {"point", v.witness}});
    };
    add_witness("membership", rep.membership_verdict());
    add_witness("f1", rep.f1_verdict());
    add_witness("f2", rep.f2.verdict);
    add_witness("minimality", rep.minimality.verdict);
    j["witnesses"] = wit;
    json tm = json::object();
    if (c.timings)
      for (const auto& [k, v] : rep.timings_ms) tm[k] = v;
    j["timings"] = tm;
    j["result"] = overall.kind_name();
    arr.push_back(j);

    text << item.key << ": " << overall.kind_name() << "\n";
    for (const auto& e : item.structure.entries) text << "  triple " << triple_text(pair, e.triple) << "\n";
    text << "  membership " << rep.membership_verdict().to_string() << "\n";
    text << "  f1 (n<=" << opt.n_max << ") " << rep.f1_verdict().to_string() << "\n";
    text << "  f2 " << rep.f2.verdict.to_string() << "\n";
    text << "  minimality " << rep.minimality.verdict.to_string() << "\n";
    if (c.timings) {
      text << "  timings";
      for (const auto& [k, v] : rep.timings_ms) text << " " << k << "=" << std::fixed << std::setprecision(2) << v << "ms";
      text << std::defaultfloat << "\n";
    }
  }
  doc["items"] = arr;
  doc["status"] = status_name(worst);
  text << "status: " << status_name(worst) << " (" << items.size() << " structures)\n";
  Emitter(c, out).emit(doc, text.str());
  return worst;
}

// ---------------------------------------------------------------- catalog

int cmd_catalog(const Selection& sel, bool export_text, const Common& c, std::ostream& out) {
  std::string canonical;
  auto items = select_items(sel, canonical);
  if (export_text) {
    InputDocument doc;
    doc.pair = items.front().pair;
    for (const auto& it : items) {
      if (it.pair->name != doc.pair->name) throw GuardViolation("--export needs a selection within one pair");
      doc.structures.push_back(it.structure);
    }
    Common plain = c;
    plain.format = "text";
    Emitter(plain, out).emit(json(), serialize(doc));
    return kPass;
  }
  json doc = document("catalog", canonical);
  json arr = json::array();
  std::ostringstream text;
  for (const auto& it : items) {
    json j;
    j["key"] = it.key;
    j["pair"] = it.pair->name;
    j["triples"] = it.structure.entries.size();
    j["notes"] = it.structure.notes;
    arr.push_back(j);
    text << std::left << std::setw(28) << it.key << " pair=" << it.pair->name
         << " triples=" << it.structure.entries.size();
    for (const auto& n : it.structure.notes) text << " [" << n << "]";
    text << "\n";
  }
  doc["items"] = arr;
  doc["status"] = "pass";
  Emitter(c, out).emit(doc, text.str());
  return kPass;
}

// ---------------------------------------------------------------- series

struct ModuleInput {
  InputDocument doc;
  std::map<StdConeId, ReductionStructure> structures;
  std::string canonical;
};

ModuleInput load_module(const std::vector<std::string>& files) {
  if (files.size() != 1) throw GuardViolation("expected exactly one module file");
  ModuleInput in;
  in.doc = parse_file(files[0]);
  if (!in.doc.module) throw GuardViolation(files[0] + " has no [module] section");
  const SphericalPair& pair = *in.doc.pair;
  try {
    auto cat = catalog_pair(pair.name);
    if (cat->definition == pair.definition) in.structures = catalog_structures(pair.name);
  } catch (const UnknownPair&) {
  }
  for (const auto& st : in.doc.structures) in.structures[st.cone()] = st;
  in.canonical = serialize(in.doc);
  return in;
}

std::vector<StdConeId> select_cones(const SphericalPair& pair, const Selection& sel) {
  std::vector<StdConeId> out;
  std::optional<RootMask> theta;
  std::optional<Sector> sector;
  if (!sel.theta.empty()) theta = theta_from_text(pair, sel.theta);
  if (!sel.sector.empty()) sector = parse_sector(sel.sector);
  for (const auto& cone : all_cones(pair)) {
    if (theta && cone.theta_h != *theta) continue;
    if (sector && cone.sector != *sector) continue;
    out.push_back(cone);
  }
  if (out.empty()) throw GuardViolation("no cone matches the selection");
  return out;
}

template <class R>
json series_json(const RationalSeries<R>& rs, const std::vector<std::string>& vars) {
  json j;
  j["numerator"] = poly_to_string(rs.numerator, vars);
  j["monomial"] = rs.monomial;
  json f = json::array();
  for (const auto& d : rs.factors) f.push_back({{"P", d.P.to_string()}, {"shift", d.shift}});
  j["factors"] = f;
  return j;
}

template <class R>
int run_series(const ModuleInput& in, const ToyModule<R>& m, const std::vector<StdConeId>& cones, Int order,
               const Rational& q, const std::vector<Rational>& eval_u, const Common& c, json& doc,
               std::ostringstream& text) {
  const SphericalPair& pair = *in.doc.pair;
  auto vars = series_variables(pair);
  json arr = json::array();
  int worst = kPass;
  for (const auto& cone : cones) {
    RationalSeries<R> rs = reduce(m, pair, cone, in.structures);
    bool match = expand(rs, order) == truncate(m, pair, cone, order);
    if (!match) worst = kFail;
    Specialized<R> sp = specialize(rs, q, pair.n_exp);
    json j;
    j["key"] = cone_label(pair, cone);
    j["checks"] = {{"oracle", match ? "match @" + std::to_string(order) : "mismatch @" + std::to_string(order)}};
    j["series"] = series_json(rs, vars);
    j["specialization"] = {{"Q", uni_to_string(sp.Q)}, {"P", uni_to_string(sp.P)}};
    text << cone_label(pair, cone) << ":\n";
    text << "  series " << rs.to_string(vars) << "\n";
    for (const auto& d : rs.factors) text << "  factor " << d.P.to_string() << " shift " << to_string(d.shift) << "\n";
    text << "  Q(S) = " << uni_to_string(sp.Q) << "\n";
    text << "  P(S) = " << uni_to_string(sp.P) << "\n";
    text << "  oracle " << (match ? "match" : "MISMATCH") << " @" << order << "\n";
    if constexpr (std::is_same_v<R, LaurentU>) {
      json evs = json::array();
      for (const auto& u0 : eval_u) {
        EvalPoint x{u0};
        auto Q = x.apply(sp.Q), P = x.apply(sp.P);
        FamilyResult fr = eval_family(sp.Q, sp.P, u0);
        json e;
        put_number(e, "u0", u0, c);
        e["Q"] = uni_to_string(Q);
        e["P"] = uni_to_string(P);
        e["at_one"] = fr.to_string();
        if (fr.kind == FamilyResult::Kind::Value) put_number(e, "value", fr.value, c);
        evs.push_back(e);
        text << "  u=" << show(u0, c) << ": Q = " << uni_to_string(Q) << ", P = " << uni_to_string(P) << ", S=1 "
             << fr.to_string() << (fr.kind == FamilyResult::Kind::Value && c.show_float ? " (~" + decimal(fr.value) + ")" : "")
             << "\n";
      }
      j["evaluations"] = evs;
    } else {
      PeriodResult pr = eval_at_one(sp.Q, sp.P);
      json e;
      e["kind"] = pr.is_value() ? "value" : "pole";
      if (pr.is_value()) put_number(e, "value", pr.value, c);
      e["ord_p"] = pr.ord_p;
      e["ord_q"] = pr.ord_q;
      j["at_one"] = e;
      text << "  S=1 " << pr.to_string() << (pr.is_value() && c.show_float ? " (~" + decimal(pr.value) + ")" : "")
           << "\n";
    }
    arr.push_back(j);
  }
  doc["items"] = arr;
  return worst;
}

int cmd_series(const Selection& sel, Int order, const std::string& q_text, const std::vector<std::string>& eval_u,
               const Common& c, std::ostream& out) {
  if (order < 0 || order > 200) throw GuardViolation("--order must lie in 0..200");
  ModuleInput in = load_module(sel.files);
  Rational q = q_text.empty() ? Rational(3) : parse_rational(q_text);
  if (q <= 1) throw GuardViolation("q must exceed 1");
  auto us = parse_rational_list(eval_u);
  auto cones = select_cones(*in.doc.pair, sel);
  std::string canonical = in.canonical + "theta=" + sel.theta + " sector=" + sel.sector +
                          " order=" + std::to_string(order) + " q=" + to_string(q) + " u=";
  for (const auto& u : us) canonical += to_string(u) + ",";
  json doc = document("series", canonical);
  doc["pair"] = in.doc.pair->name;
  doc["ring"] = in.doc.module->ring == RingKind::Rational ? "rational" : "laurent_u";
  std::ostringstream text;
  int code;
  if (in.doc.module->ring == RingKind::Rational)
    code = run_series(in, in.doc.module->rational(), cones, order, q, us, c, doc, text);
  else
    code = run_series(in, in.doc.module->module, cones, order, q, us, c, doc, text);
  doc["status"] = status_name(code);
  text << "status: " << status_name(code) << "\n";
  Emitter(c, out).emit(doc, text.str());
  return code;
}

// ---------------------------------------------------------------- period

json period_result_json(const PeriodResult& r, const Common& c) {
  json j;
  j["kind"] = r.is_value() ? "value" : "pole";
  if (r.is_value())
    put_number(j, "value", r.value, c);
  else {
    j["ord_p"] = r.ord_p;
    j["ord_q"] = r.ord_q;
    if (!r.location.empty()) j["location"] = r.location;
  }
  return j;
}

struct PeriodOutcome {
  int code = kPass;
  std::string status = "pass";
};

PeriodOutcome period_item(const SphericalPair& pair, const ToyModule<Rational>& m, const VolumeConfig& cfg,
                          const std::map<StdConeId, ReductionStructure>& structures, Int n, bool no_temper_check,
                          const Common& c, json& j, std::ostringstream& text) {
  PeriodOutcome res;
  auto margin = temperedness_margin(m, pair, cfg.q);
  if (margin) {
    put_number(j, "margin", *margin, c);
    text << "  margin " << show(*margin, c) << "\n";
  } else {
    j["margin"] = nullptr;
    text << "  margin violated\n";
    if (!no_temper_check) {
      j["result"] = "margin violated";
      return {kInconclusive, "margin violated"};
    }
  }
  j["tempered"] = margin.has_value();
  PeriodReport rep = assemble_period(m, pair, cfg, structures);
  json parts = json::array();
  for (const auto& s : rep.summands) {
    json p;
    p["cone"] = cone_label(pair, s.cone);
    put_number(p, "constant", s.constant, c);
    p["result"] = period_result_json(s.result, c);
    parts.push_back(p);
    text << "  " << std::left << std::setw(16) << cone_label(pair, s.cone) << " C=" << to_string(s.constant) << "  "
         << s.result.to_string() << (s.result.is_value() && c.show_float ? " (~" + decimal(s.result.value) + ")" : "")
         << "\n";
  }
  j["summands"] = parts;
  j["period"] = period_result_json(rep.total, c);
  if (!rep.total.is_value()) {
    text << "  period " << rep.total.to_string() << "\n";
    return {kFail, "pole"};
  }
  Rational brute = brute_force_period(m, pair, cfg, n);
  Rational diff = brute - rep.total.value;
  put_number(j, "value", rep.total.value, c);
  json b;
  b["N"] = n;
  b["sum"] = to_string(brute);
  b["diff"] = to_string(diff);
  b["abs_diff_float"] = std::abs(to_double(diff));
  j["brute_force"] = b;
  text << "  period " << show(rep.total.value, c) << "\n";
  text << "  brute force N=" << n << " |diff| ~ " << decimal(abs_value(diff)) << "\n";
  if (!margin) text << "  not tempered: the value continues the series, the partial sums diverge\n";
  return res;
}

int cmd_period(const Selection& sel, Int n, const std::string& q_text, const std::vector<std::string>& eval_u,
               bool no_temper_check, const Common& c, std::ostream& out) {
  if (n < 0 || n > 200) throw GuardViolation("--order must lie in 0..200");
  ModuleInput in = load_module(sel.files);
  const SphericalPair& pair = *in.doc.pair;
  VolumeConfig cfg = in.doc.volume ? *in.doc.volume : default_volume(pair, q_text.empty() ? Rational(3) : parse_rational(q_text));
  if (in.doc.volume && !q_text.empty()) cfg.q = parse_rational(q_text);
  cfg.validate();
  auto us = parse_rational_list(eval_u);
  std::string canonical = in.canonical + serialize_volume(pair, cfg) + "order=" + std::to_string(n) +
                          " temper=" + (no_temper_check ? "off" : "on") + " u=";
  for (const auto& u : us) canonical += to_string(u) + ",";
  json doc = document("period", canonical);
  doc["pair"] = pair.name;
  put_number(doc, "q", cfg.q, c);
  std::ostringstream text;
  json arr = json::array();
  PeriodOutcome worst;
  auto merge = [&](const PeriodOutcome& o) {
    if (o.code == kPass) return;
    if (worst.code == kPass || (o.code == kInconclusive && worst.code == kFail)) worst = o;
  };
  if (in.doc.module->ring == RingKind::Rational) {
    json j;
    j["key"] = pair.name;
    text << pair.name << ":\n";
    merge(period_item(pair, in.doc.module->rational(), cfg, in.structures, n, no_temper_check, c, j, text));
    arr.push_back(j);
  } else {
    if (us.empty()) throw GuardViolation("a laurent_u module needs --eval-u");
    for (const auto& u0 : us) {
      json j;
      j["key"] = pair.name + "@u=" + to_string(u0);
      text << pair.name << " at u=" << show(u0, c) << ":\n";
      FamilyPeriodReport fam = assemble_family_period(in.doc.module->module, pair, cfg, in.structures, u0);
      j["family"] = fam.total.to_string();
      text << "  family " << fam.total.to_string() << "\n";
      if (fam.total.kind == FamilyResult::Kind::OrderJump) {
        j["result"] = "order jump";
        merge({kInconclusive, "order jump"});
      } else {
        merge(period_item(pair, evaluate_module(in.doc.module->module, u0), cfg, in.structures, n, no_temper_check,
                          c, j, text));
      }
      arr.push_back(j);
    }
  }
  doc["items"] = arr;
  doc["status"] = worst.status;
  text << "status: " << worst.status << "\n";
  Emitter(c, out).emit(doc, text.str());
  return worst.code;
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  app->add_option("--out", c.out_path, "Write the report to PATH");
  app->add_flag("--float", c.show_float, "Add decimal approximations");
}

void add_selection(CLI::App* app, Selection& s, bool with_catalog) {
  if (with_catalog) {
    app->add_option("--catalog", s.catalog, "Catalog key, key prefix, or 'all'");
    app->add_option("--pair", s.pair, "Catalog pair name");
  }
  app->add_option("--theta", s.theta, "Theta_H as root names ('a1,a2' or 'empty')");
  app->add_option("--sector", s.sector, "Sector: plus, zero, minus or none");
  app->add_option("files", s.files, "Input files");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reduction structures, cone series and toy local periods for spherical pairs"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Common common;

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Verify reduction structures");
  add_selection(verify_cmd, va.sel, true);
  add_common(verify_cmd, common);
  verify_cmd->add_option("--nmax", va.n_max, "Largest n for the (F1) check");
  verify_cmd->add_option("--m-list", va.m_list, "Bounds M cross-checked by enumeration");
  verify_cmd->add_option("--b-list", va.b_list, "Box radii B of the enumeration");
  verify_cmd->add_flag("--timings", common.timings, "Include timings (not byte-stable)");

  Selection csel;
  bool export_text = false;
  auto* catalog_cmd = app.add_subcommand("catalog", "List catalog structures");
  add_selection(catalog_cmd, csel, true);
  add_common(catalog_cmd, common);
  catalog_cmd->add_flag("--export", export_text, "Print the selection in the input format");

  Selection ssel;
  Int series_order = 40;
  std::string series_q;
  std::vector<std::string> series_u;
  auto* series_cmd = app.add_subcommand("series", "Rational closed forms of cone series");
  add_selection(series_cmd, ssel, false);
  add_common(series_cmd, common);
  series_cmd->add_option("--order", series_order, "Oracle truncation order");
  series_cmd->add_option("--q", series_q, "Residue field size for the specialization");
  series_cmd->add_option("--eval-u", series_u, "Evaluation points u0 (comma list)");

  Selection psel;
  Int period_n = 200;
  std::string period_q;
  std::vector<std::string> period_u;
  bool no_temper = false;
  auto* period_cmd = app.add_subcommand("period", "Toy local period with a brute-force check");
  add_selection(period_cmd, psel, false);
  add_common(period_cmd, common);
  period_cmd->add_option("--order", period_n, "Brute-force truncation N");
  period_cmd->add_option("--q", period_q, "Residue field size");
  period_cmd->add_option("--eval-u", period_u, "Evaluation points u0 (comma list)");
  period_cmd->add_flag("--no-temper-check", no_temper, "Evaluate even without a temperedness margin");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kPass : kInconclusive;
  }

  try {
    if (*verify_cmd) return cmd_verify(va, common, out);
    if (*catalog_cmd) return cmd_catalog(csel, export_text, common, out);
    if (*series_cmd) return cmd_series(ssel, series_order, series_q, series_u, common, out);
    if (*period_cmd) return cmd_period(psel, period_n, period_q, period_u, no_temper, common, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kInconclusive;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInconclusive;
  }
  return kInconclusive;
}

}  // namespace sphred::cli
