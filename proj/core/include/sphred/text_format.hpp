#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sphred/period.hpp"
#include "sphred/reduction.hpp"
#include "sphred/series.hpp"

namespace sphred {

enum class RingKind { Rational, LaurentU };

// A module as read from a file. Coefficients are kept over Q[u, 1/u]; a
// rational module simply has no u.
struct ModuleSpec {
  RingKind ring = RingKind::Rational;
  ToyModule<LaurentU> module;

  ToyModule<Rational> rational() const;  // throws GuardViolation if some coefficient involves u
  friend bool operator==(const ModuleSpec&, const ModuleSpec&) = default;
};

ModuleSpec module_spec(const ToyModule<Rational>& m);
ModuleSpec module_spec(const ToyModule<LaurentU>& m);

struct InputDocument {
  std::shared_ptr<const SphericalPair> pair;
  std::string pair_reference;  // catalog name when the pair was given as `catalog = name`
  std::vector<ReductionStructure> structures;
  std::optional<ModuleSpec> module;
  std::optional<VolumeConfig> volume;
};

// Sections [pair], [structure], [module], [volume]; `#` starts a comment.
// Errors are ParseError with 1-based line and column.
InputDocument parse_input(const std::string& text);
InputDocument parse_file(const std::string& path);

std::string serialize_pair(const SphericalPair& pair);
std::string serialize_structure(const SphericalPair& pair, const ReductionStructure& st);
std::string serialize_module(const SphericalPair& pair, const ModuleSpec& m);
std::string serialize_volume(const SphericalPair& pair, const VolumeConfig& cfg);
std::string serialize(const InputDocument& doc);

}  // namespace sphred
