// Copyright 2026 The infercost Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

namespace infercost::tco {

// Accelerator A is the candidate, B the baseline. All ratios are A/B.
struct CostInputs {
  double cost_server_b = 1.0;  // purchase cost of one B server
  double cost_infra_b = 1.0;   // infrastructure + OpEx per B server
  double r_sc = 1.0;           // server cost ratio
  double r_ic = 1.0;           // infrastructure cost ratio
  double r_th = 1.0;           // per-server throughput ratio

  // Equal B-side server and infrastructure cost and R_IC = 1.
  static CostInputs equal_costs(double r_sc, double r_th);

  // Throws InvalidArgument unless every field is finite and > 0.
  void validate() const;
};

// TCO_A / TCO_B at fixed traffic. The fleet size N cancels:
//   (Cost_Sv,B * R_SC + Cost_If,B * R_IC) / (R_Th * (Cost_Sv,B + Cost_If,B))
double tco_ratio(const CostInputs& c);

struct GridAssumptions {
  double cost_server_b = 1.0;
  double cost_infra_b = 1.0;
  double r_ic = 1.0;

  bool operator==(const GridAssumptions&) const = default;
};

// cells[i][j] is the ratio at (rth_axis[i], rsc_axis[j]).
struct TcoRatioGrid {
  std::vector<double> rsc_axis;
  std::vector<double> rth_axis;
  std::vector<std::vector<double>> cells;
  GridAssumptions assumptions;

  bool empty() const noexcept { return rsc_axis.empty() || rth_axis.empty(); }
  bool operator==(const TcoRatioGrid&) const = default;
};

// Axes must be nonempty, strictly ascending and positive.
TcoRatioGrid tco_grid(double cost_server_b, double cost_infra_b, double r_ic,
                      const std::vector<double>& rsc_axis, const std::vector<double>& rth_axis);

// Throughput ratio at which A and B cost the same.
double break_even_rth(double cost_server_b, double cost_infra_b, double r_sc, double r_ic);

// Servers needed to carry `traffic` at `per_server_throughput` each.
std::uint64_t servers_needed(double traffic, double per_server_throughput);
// Unrounded N = traffic / per-server throughput, as the ratio model writes it.
double fractional_servers(double traffic, double per_server_throughput);

// Power-limited rack. Fixed cost is amortized over the planning horizon.
struct RackModel {
  double rack_power_budget_w = 0.0;
  double server_power_w = 0.0;
  double rack_fixed_cost = 0.0;
  double energy_price_per_kwh = 0.0;
  double avg_server_power_w = 0.0;
  double horizon_hours = 0.0;

  std::uint64_t servers_per_rack() const;
};

// rack_fixed_cost / servers_per_rack + energy over the horizon.
double infra_cost_per_server(const RackModel& rack);

// R_IC derived from two rack models.
double infra_cost_ratio(const RackModel& rack_a, const RackModel& rack_b);

}  // namespace infercost::tco
