#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace nsgap {

enum class CalibratedConstant { c_thm4, c_q, c_pq };

std::string_view to_string(CalibratedConstant c);
CalibratedConstant constant_from_string(std::string_view name);

// Instance family for a fit. Unused fields are ignored by a given constant.
struct FamilyDescriptor {
  std::size_t size = 8;
  std::uint64_t seed = 0;
  std::size_t max_states = 6;     // c_thm4, c_pq: chain size drawn in [3, max_states]
  std::size_t max_dim = 8;        // c_thm4: l_inf^d with d drawn in [1, max_dim]
  std::size_t max_vertices = 64;  // c_q: cubic graphs on 8 .. max_vertices vertices
  double q = 2.0;                 // c_q
  double p = 4.0;                 // c_pq
};

struct CalibrationFit {
  CalibratedConstant constant = CalibratedConstant::c_thm4;
  double value = 0.0;
  std::vector<double> ratios;  // per-instance constant needed
  std::size_t instances = 0;
};

// c_thm4: max over the family of gamma_heur (1 - lambda_2) / log(D_X + 1),
// the least C making gamma <= C log(D_X + 1)/(1 - lambda_2) hold.
// c_q: min over cubic graphs of gamma D ln d ln r / ln n with D the achieved
// q-average distortion of the Hilbert embedding of the graph metric and r
// its dimension, the largest c for which n^{c/(gamma D ln d)} <= r.
// c_pq: max over chains of gamma_heur(l_p) / (p^2 / (1 - lambda_2)).
// EmptyFamily when the family has no instances.
CalibrationFit calibrate(CalibratedConstant constant, const FamilyDescriptor& family);

}  // namespace nsgap
