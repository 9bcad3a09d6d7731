#include <algorithm>
#include <numeric>

#include "sphred/errors.hpp"
#include "sphred/root_datum.hpp"

namespace sphred {

namespace {

IntMat zeros(int rows, int cols) { return IntMat(rows, IntVec(cols, 0)); }

// Block matrix whose row blocks are the given matrices stacked vertically.
IntMat stack(std::initializer_list<IntMat> blocks) {
  IntMat out;
  for (const auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Identity on a flat lattice of rank n with the block at offset replaced by m.
IntMat block_identity(int n, int offset, const IntMat& m) {
  IntMat id = identity_matrix(n);
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j) id[offset + i][offset + j] = m[i][j];
  return id;
}

// y'_k = y_{perm[k]} (1-based permutation entries).
IntMat permutation_matrix(const std::vector<int>& perm) {
  int n = static_cast<int>(perm.size());
  IntMat m = zeros(n, n);
  for (int k = 0; k < n; ++k) m[k][perm[k] - 1] = 1;
  return m;
}

PairDefinition triple_def() {
  PairDefinition d;
  d.name = "triple";
  d.h = GroupSpec::quotient(GroupSpec::gl(2), {{1, 1}});
  d.g = GroupSpec::quotient(GroupSpec::product({GroupSpec::gl(2), GroupSpec::gl(2), GroupSpec::gl(2)}),
                            {{1, 1, 1, 1, 1, 1}});
  d.embed = stack({identity_matrix(2), identity_matrix(2), identity_matrix(2)});
  d.h_root_names = {"a"};
  d.g_root_names = {"a1", "a2", "a3"};
  d.h_labels = {"t"};
  d.g_labels = {"y1", "y2", "y3", "y4", "y5"};
  d.weyl = {{"e", identity_matrix(6)}};
  d.n_exp = {1};
  return d;
}

PairDefinition waldspurger_def() {
  PairDefinition d;
  d.name = "waldspurger";
  d.h = GroupSpec::torus(1);
  d.g = GroupSpec::quotient(GroupSpec::gl(2), {{1, 1}});
  d.embed = {{1}, {0}};
  d.g_root_names = {"a"};
  d.c_h = {{"beta", {1}}};
  d.h_labels = {"t"};
  d.g_labels = {"y"};
  d.weyl = {{"e", identity_matrix(2)}, {"w", {{0, 1}, {1, 0}}}};
  return d;
}

PairDefinition gl_def(int n) {
  PairDefinition d;
  d.name = "gl" + std::to_string(n);
  d.h = GroupSpec::gl(n);
  d.g = GroupSpec::product({GroupSpec::gl(n + 1), GroupSpec::gl(n)});
  // x -> ((x, 0), x)
  d.embed = zeros(2 * n + 1, n);
  for (int i = 0; i < n; ++i) {
    d.embed[i][i] = 1;
    d.embed[n + 1 + i][i] = 1;
  }
  for (int i = 1; i < n; ++i) d.h_root_names.push_back("a" + std::to_string(i));
  for (int i = 1; i <= n; ++i) d.g_root_names.push_back("b" + std::to_string(i));
  for (int i = 1; i < n; ++i) d.g_root_names.push_back("a" + std::to_string(i));
  IntVec beta(n, 0);
  beta[n - 1] = 1;
  d.c_h = {{"beta", beta}};
  for (int i = 1; i <= n; ++i) d.h_labels.push_back("t" + std::to_string(i));
  for (int i = 1; i <= n + 1; ++i) d.g_labels.push_back("y" + std::to_string(i));
  for (int i = 1; i <= n; ++i) d.g_labels.push_back("z" + std::to_string(i));
  d.weyl.push_back({"e", identity_matrix(2 * n + 1)});
  // w_i puts the last GL(n+1) coordinate in position i.
  for (int i = 1; i <= n + 1; ++i) {
    std::vector<int> perm;
    for (int k = 1; k <= n + 1; ++k) perm.push_back(k < i ? k : (k == i ? n + 1 : k - 1));
    d.weyl.push_back({"w" + std::to_string(i), block_identity(2 * n + 1, 0, permutation_matrix(perm))});
  }
  if (n == 2) d.n_exp = {1};
  if (n == 3) d.n_exp = {2, 2};
  return d;
}

PairDefinition so_def(int n) {
  PairDefinition d;
  d.name = "so" + std::to_string(n);
  d.h = GroupSpec::so(n);
  d.g = GroupSpec::product({GroupSpec::so(n + 1), GroupSpec::so(n)});
  int rh = n / 2, rg = (n + 1) / 2;
  d.embed = zeros(rg + rh, rh);
  for (int i = 0; i < rh; ++i) {
    d.embed[i][i] = 1;
    d.embed[rg + i][i] = 1;
  }
  for (int i = 1; i <= rh; ++i) d.h_root_names.push_back("a" + std::to_string(i));
  for (int i = 1; i <= rg; ++i) d.g_root_names.push_back("b" + std::to_string(i));
  for (int i = 1; i <= rh; ++i) d.g_root_names.push_back("a" + std::to_string(i));
  for (int i = 1; i <= rh; ++i) d.h_labels.push_back("t" + std::to_string(i));
  for (int i = 1; i <= rg; ++i) d.g_labels.push_back("y" + std::to_string(i));
  for (int i = 1; i <= rh; ++i) d.g_labels.push_back("z" + std::to_string(i));
  d.weyl.push_back({"e", identity_matrix(rg + rh)});
  if (rg == rh) {
    // inverts the last coordinate of the larger orthogonal group
    IntMat w = identity_matrix(rg + rh);
    w[rg - 1][rg - 1] = -1;
    d.weyl.push_back({"w", w});
  }
  if (n == 3) d.n_exp = {1};
  if (n == 4) d.n_exp = {1, 1};
  return d;
}

PairDefinition gl4gl2_def() {
  PairDefinition d;
  d.name = "gl4gl2";
  d.h = GroupSpec::quotient(GroupSpec::product({GroupSpec::gl(2), GroupSpec::gl(2)}), {{1, 1, 1, 1}});
  d.g = GroupSpec::quotient(GroupSpec::product({GroupSpec::gl(4), GroupSpec::gl(2)}), {{1, 1, 1, 1, 1, 1}});
  // (t1..t4) -> ((t1,t2,t3,t4),(t3,t4))
  d.embed = stack({identity_matrix(4), IntMat{{0, 0, 1, 0}, {0, 0, 0, 1}}});
  d.h_root_names = {"a1", "a2"};
  d.g_root_names = {"b1", "b2", "b3", "a"};
  d.c_h = {{"beta", {0, 1, -1, 0}}};
  d.h_labels = {"t1", "t2", "t3"};
  d.g_labels = {"y1", "y2", "y3", "y4", "z1"};
  d.weyl.push_back({"e", identity_matrix(6)});
  std::vector<int> perm{1, 2, 3, 4};
  do {
    std::string name = "w";
    for (int k : perm) name += std::to_string(k);
    d.weyl.push_back({name, block_identity(6, 0, permutation_matrix(perm))});
  } while (std::next_permutation(perm.begin(), perm.end()));
  d.n_exp = {1, 1};
  return d;
}

PairDefinition sp6sp4_def() {
  PairDefinition d;
  d.name = "sp6sp4";
  d.h = GroupSpec::product({GroupSpec::sp(4), GroupSpec::sp(2)});
  d.g = GroupSpec::product({GroupSpec::sp(6), GroupSpec::sp(4)});
  // (t1,t2 | t3) -> ((t3,t1,t2),(t1,t2))
  d.embed = {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}, {1, 0, 0}, {0, 1, 0}};
  d.h_root_names = {"b1", "b2", "a1"};
  d.g_root_names = {"g1", "g2", "g3", "b1", "b2"};
  d.h_labels = {"t1", "t2", "t3"};
  d.g_labels = {"y1", "y2", "y3", "z1", "z2"};
  d.weyl = {{"e", identity_matrix(5)},
            {"w2", block_identity(5, 0, permutation_matrix({2, 1, 3}))},
            {"w3", block_identity(5, 0, permutation_matrix({2, 3, 1}))}};
  d.n_exp = {4, 3, 1};
  return d;
}

PairDefinition aniso_def() {
  PairDefinition d;
  d.name = "aniso";
  d.h = GroupSpec::torus(0);
  d.g = GroupSpec::so(3);
  d.embed = IntMat{IntVec{}};
  d.g_root_names = {"a"};
  d.g_labels = {"y"};
  d.weyl = {{"e", identity_matrix(1)}};
  return d;
}

}  // namespace

SphericalPair build_catalog_pair(const std::string& name, int n) {
  if (name == "triple") return make_pair(triple_def());
  if (name == "waldspurger" || name == "wal") return make_pair(waldspurger_def());
  if (name == "gl") {
    if (n != 2 && n != 3) throw UnsupportedRank("gl pair is catalogued for n = 2, 3");
    return make_pair(gl_def(n));
  }
  if (name == "gl2" || name == "gl3") return make_pair(gl_def(name[2] - '0'));
  if (name == "so") {
    if (n != 3 && n != 4) throw UnsupportedRank("so pair is catalogued for n = 3, 4");
    return make_pair(so_def(n));
  }
  if (name == "so3" || name == "so4") return make_pair(so_def(name[2] - '0'));
  if (name == "gl4gl2") return make_pair(gl4gl2_def());
  if (name == "sp6sp4") return make_pair(sp6sp4_def());
  if (name == "aniso") return make_pair(aniso_def());
  throw UnknownPair("unknown catalog pair '" + name + "'");
}

}  // namespace sphred
