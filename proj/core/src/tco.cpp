// Copyright 2026 The infercost Authors
// SPDX-License-Identifier: Apache-2.0

#include "infercost/tco.hpp"

#include <cmath>
#include <string>

#include "infercost/error.hpp"

namespace infercost::tco {

namespace {

void require_positive(double v, const char* what) {
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw InvalidArgument(std::string(what) + " must be finite and > 0");
  }
}

void require_nonnegative(double v, const char* what) {
  if (!std::isfinite(v) || v < 0.0) {
    throw InvalidArgument(std::string(what) + " must be finite and >= 0");
  }
}

void require_axis(const std::vector<double>& axis, const char* what) {
  if (axis.empty()) throw InvalidArgument(std::string(what) + " is empty");
  for (std::size_t i = 0; i < axis.size(); ++i) {
    require_positive(axis[i], what);
    if (i > 0 && !(axis[i - 1] < axis[i])) {
      throw InvalidArgument(std::string(what) + " must be strictly ascending");
    }
  }
}

}  // namespace

CostInputs CostInputs::equal_costs(double r_sc, double r_th) {
  return CostInputs{1.0, 1.0, r_sc, 1.0, r_th};
}

void CostInputs::validate() const {
  require_positive(cost_server_b, "cost_server_B");
  require_positive(cost_infra_b, "cost_infra_B");
  require_positive(r_sc, "R_SC");
  require_positive(r_ic, "R_IC");
  require_positive(r_th, "R_Th");
}

double tco_ratio(const CostInputs& c) {
  c.validate();
  return (c.cost_server_b * c.r_sc + c.cost_infra_b * c.r_ic) /
         (c.r_th * (c.cost_server_b + c.cost_infra_b));
}

TcoRatioGrid tco_grid(double cost_server_b, double cost_infra_b, double r_ic,
                      const std::vector<double>& rsc_axis, const std::vector<double>& rth_axis) {
  require_axis(rsc_axis, "R_SC axis");
  require_axis(rth_axis, "R_Th axis");
  TcoRatioGrid grid{rsc_axis, rth_axis, {}, {cost_server_b, cost_infra_b, r_ic}};
  grid.cells.assign(rth_axis.size(), std::vector<double>(rsc_axis.size()));
  for (std::size_t i = 0; i < rth_axis.size(); ++i) {
    for (std::size_t j = 0; j < rsc_axis.size(); ++j) {
      grid.cells[i][j] = tco_ratio({cost_server_b, cost_infra_b, rsc_axis[j], r_ic, rth_axis[i]});
    }
  }
  return grid;
}

double break_even_rth(double cost_server_b, double cost_infra_b, double r_sc, double r_ic) {
  require_positive(cost_server_b, "cost_server_B");
  require_positive(cost_infra_b, "cost_infra_B");
  require_positive(r_sc, "R_SC");
  require_positive(r_ic, "R_IC");
  return (cost_server_b * r_sc + cost_infra_b * r_ic) / (cost_server_b + cost_infra_b);
}

double fractional_servers(double traffic, double per_server_throughput) {
  require_positive(traffic, "traffic");
  require_positive(per_server_throughput, "per-server throughput");
  return traffic / per_server_throughput;
}

std::uint64_t servers_needed(double traffic, double per_server_throughput) {
  return static_cast<std::uint64_t>(std::ceil(fractional_servers(traffic, per_server_throughput)));
}

std::uint64_t RackModel::servers_per_rack() const {
  require_positive(rack_power_budget_w, "rack power budget");
  require_positive(server_power_w, "server power");
  return static_cast<std::uint64_t>(std::floor(rack_power_budget_w / server_power_w));
}

double infra_cost_per_server(const RackModel& rack) {
  require_nonnegative(rack.rack_fixed_cost, "rack fixed cost");
  require_nonnegative(rack.energy_price_per_kwh, "energy price");
  require_nonnegative(rack.avg_server_power_w, "average server power");
  require_nonnegative(rack.horizon_hours, "horizon");
  const auto per_rack = rack.servers_per_rack();
  if (per_rack == 0) throw InvalidArgument("server power exceeds the rack power budget");
  return rack.rack_fixed_cost / static_cast<double>(per_rack) +
         rack.energy_price_per_kwh * (rack.avg_server_power_w / 1000.0) * rack.horizon_hours;
}

double infra_cost_ratio(const RackModel& rack_a, const RackModel& rack_b) {
  const double b = infra_cost_per_server(rack_b);
  if (!(b > 0.0)) throw InvalidArgument("baseline infrastructure cost is zero");
  return infra_cost_per_server(rack_a) / b;
}

}  // namespace infercost::tco
