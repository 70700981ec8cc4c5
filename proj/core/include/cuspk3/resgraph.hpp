// Weighted dual graphs of exceptional curves and the lattice computations on
// them: definiteness, fundamental cycles, canonical cycles, Dynkin recognition,
// connection indices, Artin invariant and Tate-Shioda.
#pragma once

#include <boost/rational.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cuspk3 {

using IntMatrix = std::vector<std::vector<long long>>;
using Rational = boost::rational<long long>;
// Integer coefficient per vertex, in vertex order.
using Cycle = std::vector<long long>;

struct Vertex {
  std::string id;
  int self_int = -2;
  int genus = 0;
  // Degree of the residue field of the curve; > 1 for a Frobenius orbit of
  // geometric components folded into one vertex.
  int deg = 1;
};

class ResGraph {
 public:
  ResGraph() = default;

  int add_vertex(const Vertex& v);
  int add_vertex(const std::string& id, int self_int = -2, int genus = 0, int deg = 1);
  // Sets E_a . E_b = w (symmetric).  Overwrites an existing value.
  void set_edge(int a, int b, long long w = 1);
  void set_edge(const std::string& a, const std::string& b, long long w = 1);

  int size() const { return static_cast<int>(vertices_.size()); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const Vertex& vertex(int i) const { return vertices_.at(i); }
  int index_of(const std::string& id) const;  // -1 when absent
  int require(const std::string& id) const;   // throws when absent
  long long pairing(int a, int b) const;
  std::vector<int> neighbors(int i) const;
  int valence(int i) const { return static_cast<int>(neighbors(i).size()); }
  bool is_twisted() const;

  IntMatrix matrix() const;
  ResGraph induced(const std::vector<int>& subset) const;
  // Connected components of the subgraph induced on `subset` (all vertices if empty).
  std::vector<std::vector<int>> components(const std::vector<int>& subset = {}) const;
  bool is_connected() const;

  Cycle cycle(const std::map<std::string, long long>& coeffs) const;
  std::map<std::string, long long> to_map(const Cycle& z) const;
  std::string cycle_to_string(const Cycle& z) const;
  long long dot(const Cycle& x, const Cycle& y) const;
  Cycle basis_cycle(int i) const;

 private:
  std::vector<Vertex> vertices_;
  std::vector<std::vector<long long>> w_;
};

// Fraction-free (Bareiss) determinant; throws on 64-bit overflow.
long long determinant(const IntMatrix& m);

struct Definiteness {
  bool negative_definite = false;
  bool negative_semidefinite = false;
  long long det = 0;
  // Primitive integral basis of the radical (kernel of the pairing).
  std::vector<Cycle> radical;
};
Definiteness definiteness(const ResGraph& g);
bool is_negative_definite(const ResGraph& g);

// Minimal Z > 0 supported on `support` with (Z + C').E_i <= 0 for i in support.
// Empty support means all vertices; empty cprime means C' = 0 (classical
// fundamental cycle, support must be connected).  `order` fixes the scan
// order of increments and exists for order-independence tests.
Cycle fundamental_cycle(const ResGraph& g, const std::vector<int>& support = {}, const Cycle& cprime = {},
                        const std::vector<int>& order = {});
// Z + C'.
Cycle schematic_preimage(const ResGraph& g, const std::vector<int>& contracted, const Cycle& cprime);
struct BlowDown {
  std::vector<int> exceptional;  // pairing with the preimage < 0
  std::vector<int> remaining;    // pairing 0: stay contracted
};
BlowDown blown_down_set(const ResGraph& g, const std::vector<int>& contracted, const Cycle& cprime);

// K with K.E_i = -E_i^2 - 2 + 2 g_i.  The pairing must be nondegenerate.
std::vector<Rational> canonical_cycle(const ResGraph& g);
// 1 + (Z^2 + K.Z)/2, with K.Z read off the adjunction right-hand sides.
long long cycle_pa(const ResGraph& g, const Cycle& z);

enum class Family { A, B, D, E, G, Elliptic19, Unknown };

struct SingularityType {
  Family family = Family::Unknown;
  int rank = 0;
  bool twisted = false;
  std::string name() const;  // "D4", "B3", "Elliptic-19_0", "twisted Elliptic-19_0", "Unknown"
  bool is_rdp() const;
  friend bool operator==(const SingularityType& a, const SingularityType& b) {
    return a.family == b.family && a.rank == b.rank && a.twisted == b.twisted;
  }
  friend bool operator<(const SingularityType& a, const SingularityType& b);
};

struct FiberType {
  Family family = Family::Unknown;  // extended family: A~, D~, E~, B~
  int rank = 0;
  bool twisted = false;
  std::vector<long long> multiplicities;  // per vertex of the classified graph
  std::string name() const;  // "D~8", "E~8", "B~3", "Unknown"
  int components() const;    // geometric components over the ground field
  friend bool operator==(const FiberType& a, const FiberType& b) {
    return a.family == b.family && a.rank == b.rank && a.twisted == b.twisted;
  }
};

SingularityType parse_singularity_type(const std::string& name);
FiberType parse_fiber_type(const std::string& name);

// Replace every vertex of degree d by d geometric copies.
ResGraph unfold(const ResGraph& g);

// Weighted isomorphism: self_int, genus, deg and all pairings must correspond.
bool isomorphic(const ResGraph& a, const ResGraph& b);

// Template matching up to weighted graph isomorphism; Unknown when nothing fits.
SingularityType classify(const ResGraph& g);
FiberType fiber_type(const ResGraph& g);

// Templates with Bourbaki numbering (ids "E1".."En", extended node "E0").
ResGraph dynkin_graph(const SingularityType& t);
ResGraph extended_dynkin_graph(Family f, int rank);
std::vector<long long> extended_multiplicities(Family f, int rank);
// Central (-3)-curve E0 with five (-2)-curves; `twisted` folds two leaves
// into one vertex of degree 2.
ResGraph elliptic19_graph(bool twisted = false);

// |det| of the Cartan-type intersection matrix.
long long connection_index(const SingularityType& t);
// The finite root system underneath an extended fiber type (D~n -> Dn).
SingularityType root_type(const FiberType& f);

// sigma_0 with 2^(2 sigma_0 + 2n) = prod |d_i|.
int artin_invariant_from_data(const std::vector<SingularityType>& types, int n);
int artin_invariant_from_data(const std::vector<FiberType>& types, int n);

// rho = 2 + sum (c - 1)
int picard_tate_shioda(const std::vector<int>& component_counts);

}  // namespace cuspk3
