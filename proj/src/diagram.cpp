#include "hkforge/diagram.hpp"

#include <cmath>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hkforge/invariants.hpp"

namespace hkforge {

namespace {

// Flattened edge list: for each edge the two vertex ids and the sign.
struct Plan {
  std::vector<const SymmetricSpinorTensor*> tensors;
  std::vector<int> from_v, to_v;
  double sign = 1.0;
  int edges = 0;
};

Plan make_plan(const Diagram& d, const TensorMap& t, int max_slots) {
  validate_diagram(d, max_slots);
  Plan p;
  for (const auto& v : d.vertices) {
    auto it = t.find(v.tensor);
    if (it == t.end()) throw Error(ErrorKind::structural, "no tensor bound to key '" + v.tensor + "'");
    if (it->second.rank != v.rank) throw Error(ErrorKind::structural, "tensor rank mismatch at vertex " + v.id);
    p.tensors.push_back(&it->second);
  }
  for (const auto& e : d.edges) {
    p.from_v.push_back(e.from.vertex);
    p.to_v.push_back(e.to.vertex);
    if (e.orientation < 0) p.sign = -p.sign;
  }
  p.edges = int(d.edges.size());
  return p;
}

// Term for one assignment: bit e clear means (i_from, i_to) = (1, 2) with eps = +1,
// bit set means (2, 1) with eps = -1.
inline cplx term(const Plan& p, std::uint64_t bits, std::vector<int>& twos) {
  std::fill(twos.begin(), twos.end(), 0);
  int flips = 0;
  for (int e = 0; e < p.edges; ++e) {
    if ((bits >> e) & 1u) {
      ++twos[p.from_v[e]];
      ++flips;
    } else {
      ++twos[p.to_v[e]];
    }
  }
  cplx w = (flips & 1) ? cplx{-1.0, 0.0} : cplx{1.0, 0.0};
  for (size_t v = 0; v < p.tensors.size(); ++v) w *= p.tensors[v]->at(twos[v]);
  return w;
}

struct Neumaier {
  cplx sum{}, comp{};
  void add(cplx x) {
    double s_re = sum.real() + x.real();
    double c_re = std::abs(sum.real()) >= std::abs(x.real()) ? (sum.real() - s_re) + x.real()
                                                            : (x.real() - s_re) + sum.real();
    double s_im = sum.imag() + x.imag();
    double c_im = std::abs(sum.imag()) >= std::abs(x.imag()) ? (sum.imag() - s_im) + x.imag()
                                                            : (x.imag() - s_im) + sum.imag();
    sum = {s_re, s_im};
    comp += cplx{c_re, c_im};
  }
  cplx value() const { return sum + comp; }
};

}  // namespace

SymmetricSpinorTensor tensor_of(const Multiplet& m) {
  auto p = polynomial(m);
  SymmetricSpinorTensor t{m.two_j, std::vector<cplx>(m.two_j + 1)};
  for (int n = 0; n <= m.two_j; ++n) t.by_twos[n] = p[n] / binomial(m.two_j, n);
  return t;
}

void validate_diagram(const Diagram& d, int max_slots) {
  int total = 0;
  std::vector<std::vector<int>> used;
  for (const auto& v : d.vertices) {
    if (v.rank < 0) throw Error(ErrorKind::structural, "negative rank");
    used.emplace_back(v.rank, 0);
    total += v.rank;
  }
  if (total > max_slots)
    throw Error(ErrorKind::structural, "diagram has " + std::to_string(total) + " slots, cap is " +
                                           std::to_string(max_slots));
  auto mark = [&](const Slot& s) {
    if (s.vertex < 0 || s.vertex >= int(used.size()) || s.slot < 0 || s.slot >= int(used[s.vertex].size()))
      throw Error(ErrorKind::structural, "edge refers to a nonexistent slot");
    ++used[s.vertex][s.slot];
  };
  for (const auto& e : d.edges) {
    if (e.orientation != 1 && e.orientation != -1)
      throw Error(ErrorKind::structural, "edge orientation must be +1 or -1");
    mark(e.from);
    mark(e.to);
  }
  for (size_t v = 0; v < used.size(); ++v)
    for (size_t s = 0; s < used[v].size(); ++s) {
      if (used[v][s] == 0)
        throw Error(ErrorKind::structural, "open slot " + std::to_string(s) + " at vertex " + d.vertices[v].id);
      if (used[v][s] > 1)
        throw Error(ErrorKind::structural, "slot " + std::to_string(s) + " at vertex " + d.vertices[v].id +
                                               " used more than once");
    }
}

cplx contract_diagram_serial(const Diagram& d, const TensorMap& t, int max_slots) {
  Plan p = make_plan(d, t, max_slots);
  std::vector<int> twos(p.tensors.size());
  const std::uint64_t n = std::uint64_t{1} << p.edges;
  cplx s{};
  for (std::uint64_t bits = 0; bits < n; ++bits) s += term(p, bits, twos);
  return p.sign * s;
}

cplx contract_diagram_parallel(const Diagram& d, const TensorMap& t, int max_slots) {
  Plan p = make_plan(d, t, max_slots);
  const std::uint64_t n = std::uint64_t{1} << p.edges;
  // fixed block partition keeps the result independent of the thread count
  const std::uint64_t block = 256;
  const std::int64_t nblocks = std::int64_t((n + block - 1) / block);
  std::vector<cplx> partial(nblocks);
#pragma omp parallel
  {
    std::vector<int> twos(p.tensors.size());
#pragma omp for schedule(static)
    for (std::int64_t b = 0; b < nblocks; ++b) {
      cplx s{};
      const std::uint64_t lo = std::uint64_t(b) * block;
      const std::uint64_t hi = std::min(n, lo + block);
      for (std::uint64_t bits = lo; bits < hi; ++bits) s += term(p, bits, twos);
      partial[b] = s;
    }
  }
  Neumaier acc;
  for (auto v : partial) acc.add(v);
  return p.sign * acc.value();
}

cplx contract_diagram(const Diagram& d, const TensorMap& t, int max_slots) {
  return contract_diagram_parallel(d, t, max_slots);
}

Diagram multigraph(const std::vector<std::pair<std::string, int>>& vt,
                   const std::map<std::pair<int, int>, int>& multiplicity) {
  Diagram d;
  for (size_t i = 0; i < vt.size(); ++i) d.vertices.push_back({"v" + std::to_string(i), vt[i].second, vt[i].first});
  std::vector<int> next(vt.size(), 0);
  for (const auto& [pair, count] : multiplicity) {
    for (int c = 0; c < count; ++c) {
      Edge e{{pair.first, next[pair.first]++}, {pair.second, next[pair.second]++}, 1};
      d.edges.push_back(e);
    }
  }
  return d;
}

Diagram o2_polygon(int n, const std::string& tensor) {
  Diagram d;
  for (int v = 0; v < n; ++v) d.vertices.push_back({"v" + std::to_string(v), 2, tensor});
  for (int v = 0; v < n; ++v) {
    Edge e{{v, 1}, {(v + 1) % n, 0}, 1};
    if (v % 2 == 1) std::swap(e.from, e.to);  // alternate the arrows around the cycle
    d.edges.push_back(e);
  }
  return d;
}

Diagram o4_double_polygon(int n, const std::string& tensor) {
  Diagram d;
  for (int v = 0; v < n; ++v) d.vertices.push_back({"v" + std::to_string(v), 4, tensor});
  for (int v = 0; v < n; ++v) d.edges.push_back({{v, 2}, {(v + 1) % n, 0}, 1});
  for (int v = 0; v < n; ++v) d.edges.push_back({{v, 3}, {(v + 1) % n, 1}, 1});
  return d;
}

Diagram bubble(const std::string& a, const std::string& b, int rank) {
  Diagram d;
  d.vertices = {{"a", rank, a}, {"b", rank, b}};
  for (int s = 0; s < rank; ++s) d.edges.push_back({{0, s}, {1, s}, 1});
  return d;
}

TensorMap standard_tensors(const Multiplet& m2, const Multiplet& m4) {
  return {{"o2", tensor_of(m2)}, {"o4", tensor_of(m4)}, {"o2sq", tensor_of(product(m2, m2))}};
}

std::vector<Figure> standard_figures() {
  std::vector<Figure> f;
  using B = BasicValues;
  f.push_back({"o2-bubble", bubble("o2", "o2", 2), [](const B& v) { return -v.g_sigma2 / 2; }});
  f.push_back({"o2-triangle", o2_polygon(3), [](const B&) { return 0.0; }});
  f.push_back({"o2-square", o2_polygon(4), [](const B& v) { return v.g_sigma2 * v.g_sigma2 / 8; }});
  f.push_back({"o2-pentagon", o2_polygon(5), [](const B&) { return 0.0; }});
  f.push_back({"o2-hexagon", o2_polygon(6), [](const B& v) { return -std::pow(v.g_sigma2, 3) / 32; }});
  f.push_back({"o4-bubble", bubble("o4", "o4", 4), [](const B& v) { return v.g_rho2 / 2; }});
  f.push_back({"o4-triangle", o4_double_polygon(3), [](const B& v) { return 3 * v.g_rho3 / 8; }});
  f.push_back({"o4-square", o4_double_polygon(4), [](const B& v) { return v.g_rho2 * v.g_rho2 / 8; }});
  f.push_back({"o4-pentagon", o4_double_polygon(5), [](const B& v) { return 5 * v.g_rho2 * v.g_rho3 / 32; }});
  f.push_back({"o4-hexagon", o4_double_polygon(6), [](const B& v) {
                 return (2 * std::pow(v.g_rho2, 3) + 3 * v.g_rho3 * v.g_rho3) / 64;
               }});
  f.push_back({"mixed-bubble", bubble("o2sq", "o4", 4), [](const B& v) { return v.g_rho_sigma2 / 4; }});
  {
    Diagram d;
    d.vertices = {{"s", 4, "o2sq"}, {"a", 4, "o4"}, {"b", 4, "o4"}};
    d.edges = {{{0, 0}, {1, 0}, 1}, {{0, 1}, {1, 1}, 1}, {{1, 2}, {2, 0}, 1},
               {{1, 3}, {2, 1}, 1}, {{0, 2}, {2, 2}, 1}, {{0, 3}, {2, 3}, 1}};
    f.push_back({"mixed-chain", d, [](const B& v) { return v.g_rho2_sigma2 / 24; }});
  }
  f.push_back({"mixed-square",
               multigraph({{"o2", 2}, {"o2", 2}, {"o4", 4}, {"o4", 4}},
                          {{{0, 1}, 1}, {{0, 2}, 1}, {{1, 3}, 1}, {{2, 3}, 3}}),
               [](const B& v) { return -v.g_rho2 * v.g_sigma2 / 8; }});
  f.push_back({"mixed-crossed",
               multigraph({{"o2", 2}, {"o2", 2}, {"o4", 4}, {"o4", 4}},
                          {{{0, 2}, 1}, {{0, 3}, 1}, {{1, 2}, 1}, {{1, 3}, 1}, {{2, 3}, 2}}),
               [](const B& v) { return (v.g_rho2_sigma2 + v.g_rho2 * v.g_sigma2) / 24; }});
  {
    std::map<std::pair<int, int>, int> m;
    for (int a = 0; a < 4; ++a)
      for (int b = 4; b < 6; ++b) m[{a, b}] = 1;
    f.push_back({"mixed-bipartite",
                 multigraph({{"o2", 2}, {"o2", 2}, {"o2", 2}, {"o2", 2}, {"o4", 4}, {"o4", 4}}, m),
                 [](const B& v) {
                   return (6 * v.g_rho_sigma2 * v.g_rho_sigma2 + 2 * v.g_rho2_sigma2 * v.g_sigma2 -
                           v.g_rho2 * v.g_sigma2 * v.g_sigma2) /
                          96;
                 }});
  }
  f.push_back({"odd-o2-three",
               multigraph({{"o2", 2}, {"o2", 2}, {"o2", 2}, {"o4", 4}},
                          {{{0, 1}, 1}, {{0, 3}, 1}, {{1, 3}, 1}, {{2, 3}, 2}}),
               [](const B&) { return 0.0; }});
  f.push_back({"odd-o2-one", multigraph({{"o2", 2}, {"o4", 4}, {"o4", 4}}, {{{0, 1}, 1}, {{0, 2}, 1}, {{1, 2}, 3}}),
               [](const B&) { return 0.0; }});
  return f;
}

}  // namespace hkforge
