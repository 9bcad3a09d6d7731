#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sphred/numeric.hpp"

namespace sphred {

struct CocharLattice {
  std::vector<std::string> labels;

  int rank() const { return static_cast<int>(labels.size()); }
  friend bool operator==(const CocharLattice&, const CocharLattice&) = default;
};

struct LinearForm {
  IntVec coeffs;

  int dim() const { return static_cast<int>(coeffs.size()); }
  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

struct NamedForm {
  std::string name;
  LinearForm form;
  friend bool operator==(const NamedForm&, const NamedForm&) = default;
};

Int pairing(const LinearForm& f, const IntVec& x);

struct GroupSpec {
  enum class Kind { GL, SplitSO, Sp, Torus, Product, CentralQuotient };

  Kind kind = Kind::Torus;
  int n = 0;                        // GL(n), SO(n), Sp(n) with n = 2m, Torus(n)
  std::vector<GroupSpec> factors;   // Product factors, or the single inner group of a quotient
  IntMat central;                   // quotient: basis vectors of the central sublattice

  static GroupSpec gl(int n);
  static GroupSpec so(int n);
  static GroupSpec sp(int n);
  static GroupSpec torus(int r);
  static GroupSpec product(std::vector<GroupSpec> factors);
  static GroupSpec quotient(GroupSpec inner, IntMat central);

  // Text form, e.g. "GL(4)*GL(2)/[1,1,1,1,1,1]" or "(GL(2)/[1,1])*SO(5)".
  std::string to_string() const;
  static GroupSpec parse(std::string_view text);

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

// Torus data of a group: the cocharacter lattice is a quotient of a flat
// lattice Z^flat (the product of the diagonal tori of the factors).
struct RootDatum {
  int flat_rank = 0;
  int rank = 0;
  IntMat proj;   // rank x flat_rank
  IntMat lift;   // flat_rank x rank, proj * lift = identity
  std::vector<LinearForm> simple_roots;    // on the quotient lattice
  std::vector<LinearForm> positive_roots;  // on the quotient lattice
  IntMat kernel;                           // flat vectors spanning ker(proj)
};

RootDatum root_datum(const GroupSpec& g);

using RootMask = std::uint32_t;

struct WeylElement {
  std::string name;
  IntMat matrix;
  friend bool operator==(const WeylElement&, const WeylElement&) = default;
};

IntVec weyl_apply(const WeylElement& w, const IntVec& x);
WeylElement weyl_inverse(const WeylElement& w);

// Declarative description of a pair in flat coordinates; everything else is derived.
struct PairDefinition {
  std::string name;
  GroupSpec g;
  GroupSpec h;
  IntMat embed;  // flat G rank x flat H rank
  std::vector<std::string> g_root_names;
  std::vector<std::string> h_root_names;
  std::vector<std::pair<std::string, IntVec>> c_h;  // forms on the flat H lattice
  std::vector<std::pair<std::string, IntMat>> weyl;  // matrices on the flat G lattice
  std::vector<std::string> g_labels;  // optional, for the quotient coordinates
  std::vector<std::string> h_labels;
  std::vector<Int> n_exp;  // optional; verified when given

  friend bool operator==(const PairDefinition&, const PairDefinition&) = default;
};

struct SphericalPair {
  PairDefinition definition;
  std::string name;
  CocharLattice g_lattice;
  CocharLattice h_lattice;
  IntMat embed;  // G rank x H rank, on quotient lattices
  std::vector<NamedForm> delta_g;
  std::vector<NamedForm> delta_h;
  std::vector<NamedForm> c_h;
  std::vector<LinearForm> positive_h;
  std::vector<Int> n_exp;  // aligned with delta_h
  std::vector<WeylElement> weyl;

  int h_rank() const { return h_lattice.rank(); }
  int g_rank() const { return g_lattice.rank(); }
  bool has_sectors() const { return !c_h.empty(); }
  IntVec embed_point(const IntVec& x) const;
  const WeylElement& weyl_by_name(const std::string& name) const;
  int delta_g_index(const std::string& name) const;
  int delta_h_index(const std::string& name) const;
  RootMask full_g_mask() const { return (RootMask(1) << delta_g.size()) - 1; }
  RootMask full_h_mask() const { return (RootMask(1) << delta_h.size()) - 1; }
  // Pullback of a G-form through w and the embedding, as a form on the H lattice.
  LinearForm pullback(const LinearForm& g_form, const WeylElement& w) const;
};

SphericalPair make_pair(const PairDefinition& def);

std::vector<Int> modulus_exponents(const SphericalPair& pair);

// Catalog pairs: "triple", "waldspurger", "gl" (n = 2, 3), "so" (n = 3, 4),
// "gl4gl2", "sp6sp4", "aniso".
SphericalPair build_catalog_pair(const std::string& name, int n = 0);

// Subset helpers over Delta_G / Delta_H.
RootMask mask_from_names(const std::vector<NamedForm>& roots, const std::vector<std::string>& names);
std::vector<std::string> names_from_mask(const std::vector<NamedForm>& roots, RootMask mask);
std::string mask_to_string(const std::vector<NamedForm>& roots, RootMask mask);

}  // namespace sphred
