// Copyright 2026 The hovi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hovi/order_analysis.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "hovi/format.hpp"

namespace hovi {

namespace {

void check_h_values(const std::vector<double>& hs) {
  if (hs.size() < 4) throw std::invalid_argument("estimate_order: need at least 4 step sizes");
  const double ratio = hs[1] / hs[0];
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (!(hs[i] > 0.0)) throw std::invalid_argument("estimate_order: step sizes must be positive");
    if (i > 0) {
      if (!(hs[i] < hs[i - 1])) throw std::invalid_argument("estimate_order: step sizes must strictly decrease");
      if (std::abs(hs[i] / hs[i - 1] - ratio) > 1e-9 * ratio) {
        throw std::invalid_argument("estimate_order: step sizes must form a geometric sequence");
      }
    }
  }
}

}  // namespace

std::string OrderReport::to_json() const {
  nlohmann::json j;
  j["scheme"] = scheme;
  j["h"] = h;
  j["errors"] = errors;
  j["ratios"] = ratios;
  j["exact"] = exact;
  if (exact) {
    j["slope"] = nullptr;
    j["order"] = nullptr;
    j["fit_residual"] = nullptr;
    j["status"] = "exact scheme";
  } else {
    j["slope"] = slope;
    j["order"] = order;
    j["fit_residual"] = fit_residual;
    j["status"] = "measured";
  }
  return j.dump(2);
}

std::string OrderReport::to_csv() const {
  std::ostringstream out;
  out << "h,error\n";
  for (std::size_t i = 0; i < h.size(); ++i) out << format_double(h[i]) << ',' << format_double(errors[i]) << '\n';
  return out.str();
}

BoundaryFamily cubic_family(const Eigen::VectorXd& q0, const Eigen::VectorXd& v0, const Eigen::VectorXd& a0,
                            const Eigen::VectorXd& j0) {
  const Eigen::Index n = q0.size();
  if (v0.size() != n || a0.size() != n || j0.size() != n) {
    throw std::invalid_argument("cubic_family: coefficient dimensions differ");
  }
  return [=](double h) {
    const Eigen::VectorXd q1 = q0 + h * v0 + (h * h / 2.0) * a0 + (h * h * h / 6.0) * j0;
    const Eigen::VectorXd v1 = v0 + h * a0 + (h * h / 2.0) * j0;
    return Pair(Jet(q0, {v0}), Jet(q1, {v1}), h);
  };
}

BoundaryFamily flow_family(const LagrangianModel& lagrangian, const Jet& jet3, int substeps) {
  if (jet3.order() != 3) throw std::invalid_argument("flow_family: needs an order-3 jet");
  return [lagrangian, jet3, substeps](double h) {
    const JetFlow end = integrate_jet(lagrangian, jet3, h, substeps);
    return Pair(jet3.truncated(1), end.jet.truncated(1), h);
  };
}

double local_error(const DiscreteLagrangian& ld, const DiscreteLagrangian& exact, const Pair& s) {
  return std::abs(ld.value(s) - exact.value(s));
}

double local_error(const DiscreteLagrangian& ld, const LagrangianModel& lagrangian, const Jet& q1jet,
                   const Jet& q2jet, double h, ExactMethod method) {
  return std::abs(ld.value(Pair(q1jet, q2jet, h)) - exact_Ld(lagrangian, q1jet, q2jet, h, method));
}

OrderReport estimate_order(const DiscreteLagrangian& ld, const DiscreteLagrangian& exact, const BoundaryFamily& family,
                           const std::vector<double>& h_values, int workers) {
  check_h_values(h_values);
  OrderReport rep;
  rep.scheme = ld.name();
  rep.h = h_values;
  rep.errors.assign(h_values.size(), 0.0);

  auto eval = [&](std::size_t i) { rep.errors[i] = local_error(ld, exact, family(h_values[i])); };
  const std::size_t batch = static_cast<std::size_t>(std::max(1, workers));
  for (std::size_t start = 0; start < h_values.size(); start += batch) {
    std::vector<std::future<void>> jobs;
    for (std::size_t i = start; i < std::min(h_values.size(), start + batch); ++i) {
      jobs.push_back(std::async(batch > 1 ? std::launch::async : std::launch::deferred, eval, i));
    }
    for (auto& j : jobs) j.get();
  }

  for (std::size_t i = 0; i + 1 < rep.errors.size(); ++i) {
    rep.ratios.push_back(rep.errors[i + 1] > 0.0 ? rep.errors[i] / rep.errors[i + 1]
                                                 : std::numeric_limits<double>::infinity());
  }

  // fit only the errors above the floor
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < rep.errors.size(); ++i) {
    if (rep.errors[i] > kExactFloor) {
      xs.push_back(std::log(h_values[i]));
      ys.push_back(std::log(rep.errors[i]));
    }
  }
  if (xs.size() < 2) {
    rep.exact = true;
    rep.slope = rep.order = rep.fit_residual = std::numeric_limits<double>::quiet_NaN();
    return rep;
  }
  const double m = static_cast<double>(xs.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / m;
  const double my = sy / m;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  rep.slope = sxy / sxx;
  rep.order = rep.slope - 1.0;
  double ss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (my + rep.slope * (xs[i] - mx));
    ss += r * r;
  }
  rep.fit_residual = std::sqrt(ss / m);
  return rep;
}

std::vector<double> halving_sequence(double h0, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(h0 / std::pow(2.0, i));
  return out;
}

}  // namespace hovi
