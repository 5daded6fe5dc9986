#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lhyp/lspace.hpp"

namespace lhyp {

class GeodesicGraph {
 public:
  explicit GeodesicGraph(std::size_t n = 0, std::vector<std::string> labels = {});

  void add_edge(std::size_t u, std::size_t v);
  bool has_edge(std::size_t u, std::size_t v) const;
  std::size_t size() const noexcept { return adj_.size(); }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adj_.at(v); }
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;  // u < v, sorted
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  bool connected() const;
  // BFS distances, -1 where unreachable
  std::vector<std::vector<long>> distances() const;

 private:
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::string> labels_;
};

FiniteLambdaSpace as_space(const GeodesicGraph& G);

struct GeodesicCheck {
  bool geodesic = true;
  std::size_t x = 0, y = 0;
  long t = 0;  // failing parameter when !geodesic
};
GeodesicCheck is_geodesic(const FiniteLambdaSpace& X);

struct Tripod {
  QLexElem at_x, at_y, at_z;  // (y.z)_x, (x.z)_y, (x.y)_z; the arm at x has length at_x
};
Tripod tripod_insizes(const FiniteLambdaSpace& X, std::size_t x, std::size_t y, std::size_t z);

// points on some discrete geodesic from x to y
std::vector<std::size_t> interval(const FiniteLambdaSpace& X, std::size_t x, std::size_t y);
bool is_discrete_geodesic(const FiniteLambdaSpace& X, const std::vector<std::size_t>& seq);
// every discrete geodesic from x to y, in lexicographic order; stops after `limit`
std::vector<std::vector<std::size_t>> all_geodesics(const FiniteLambdaSpace& X, std::size_t x, std::size_t y,
                                                    std::size_t limit = 100000);

struct ThinWitness {
  QLexElem value;
  std::vector<std::size_t> at;
};
// H2: at = (x,y,z,t,u,v): u on [x,y], v on [x,z], both at distance t from x
ThinWitness min_thinness(const FiniteLambdaSpace& X);
// H3: at = (x,y,z,u): u on [x,y], far from [x,z] and [y,z]
ThinWitness min_rips(const FiniteLambdaSpace& X);

struct InnerTriangle {
  std::size_t p = 0, q = 0, r = 0;  // on [x,y], [x,z], [y,z]
  long d_pq = 0, d_pr = 0, d_qr = 0;
  long diameter() const { return std::max({d_pq, d_pr, d_qr}); }
};
// sides are explicit discrete geodesics [x,y], [x,z], [y,z]. Insizes that are
// half-integers are rounded toward the corner the offset is measured from.
InnerTriangle inner_triangle(const FiniteLambdaSpace& X, std::size_t x, std::size_t y, std::size_t z,
                             const std::vector<std::size_t>& side_xy, const std::vector<std::size_t>& side_xz,
                             const std::vector<std::size_t>& side_yz);

struct Report129 {
  QLexElem delta1, delta2, delta3;
  // d2<=4d1, d1<=2d2, d3<=d2, d2<=4d3, d3<=4d1, d1<=8d3
  std::array<bool, 6> holds{};
  bool all() const { return std::all_of(holds.begin(), holds.end(), [](bool b) { return b; }); }
  static const std::array<const char*, 6>& names();
};
Report129 check_129(const FiniteLambdaSpace& X);

// Every connected simple graph on n vertices, one per isomorphism class.
std::vector<GeodesicGraph> connected_graphs(std::size_t n);
// canonical code of a graph on <= 11 vertices (equal iff isomorphic)
std::uint64_t canonical_code(const GeodesicGraph& G);

}  // namespace lhyp
