#pragma once
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hkforge/multiplet.hpp"

namespace hkforge {

// Totally symmetric rank-2j spinor; entry depends only on how many indices equal 2.
struct SymmetricSpinorTensor {
  int rank = 0;
  std::vector<cplx> by_twos;  // size rank+1
  cplx at(int n_twos) const { return by_twos[n_twos]; }
};

SymmetricSpinorTensor tensor_of(const Multiplet& m);

struct Slot {
  int vertex = 0;
  int slot = 0;
};

// orientation +1: the edge carries eps[i_from][i_to] with eps_12 = +1.
struct Edge {
  Slot from, to;
  int orientation = 1;
};

struct Vertex {
  std::string id;
  int rank = 0;
  std::string tensor;  // key into the tensor map
};

struct Diagram {
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
};

using TensorMap = std::map<std::string, SymmetricSpinorTensor>;

inline constexpr int kMaxContractionSlots = 24;

void validate_diagram(const Diagram& d, int max_slots = kMaxContractionSlots);

// Brute-force contraction. The default entry point is the parallel kernel;
// the serial one is the plain reference loop kept for tests and benchmarks.
cplx contract_diagram(const Diagram& d, const TensorMap& t, int max_slots = kMaxContractionSlots);
cplx contract_diagram_serial(const Diagram& d, const TensorMap& t, int max_slots = kMaxContractionSlots);
cplx contract_diagram_parallel(const Diagram& d, const TensorMap& t, int max_slots = kMaxContractionSlots);

// Build a diagram from pair multiplicities; slots are handed out in sorted pair
// order and every edge is oriented from the lower to the higher vertex.
Diagram multigraph(const std::vector<std::pair<std::string, int>>& vertex_tensors_and_ranks,
                   const std::map<std::pair<int, int>, int>& multiplicity);

Diagram o2_polygon(int n, const std::string& tensor = "o2");
Diagram o4_double_polygon(int n, const std::string& tensor = "o4");
Diagram bubble(const std::string& a, const std::string& b, int rank);

struct BasicValues {
  double g_sigma2, g_rho2, g_rho3, g_rho_sigma2, g_rho2_sigma2;
};

struct Figure {
  std::string name;
  Diagram diagram;
  std::function<double(const BasicValues&)> expected;
};

// Reference figure identities as data. Tensor keys: "o2", "o4", "o2sq" (square of the O(2)).
std::vector<Figure> standard_figures();
TensorMap standard_tensors(const Multiplet& m2, const Multiplet& m4);

}  // namespace hkforge
