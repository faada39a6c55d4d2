#include <algorithm>
#include <cmath>
#include <limits>

#include "kinetic/errors.hpp"
#include "kinetic/solver.hpp"

namespace kinetic {

GronwallResult gronwall_check(const RunLog& log, double C, double m) {
  if (!(C > 0.0)) throw ArgumentError("Gronwall constant must be positive");
  if (log.records.empty()) throw ArgumentError("empty run log");
  if (m != log.m) throw ArgumentError("run log was recorded with a different weight m");
  GronwallResult out;
  const RunRecord& first = log.records.front();
  double integral = 0.0;
  for (std::size_t i = 0; i < log.records.size(); ++i) {
    const RunRecord& r = log.records[i];
    if (i > 0) {
      const RunRecord& p = log.records[i - 1];
      integral += 0.5 * (r.t - p.t) * (r.norm_dpg + p.norm_dpg);
    }
    const double rhs = first.norm_m * std::exp(C * integral);
    const double margin = rhs - r.norm_m;
    out.margin.push_back(margin);
    if (margin < -1e-12 * std::max(rhs, r.norm_m)) out.holds = false;
  }
  return out;
}

RiccatiResult riccati_check(const RunLog& log, double C, double T) {
  if (!(C > 0.0)) throw ArgumentError("Riccati constant must be positive");
  RiccatiResult out;
  const auto& R = log.records;
  out.worst_pairwise = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < R.size(); ++i)
    for (std::size_t j = i + 1; j < R.size(); ++j) {
      const double den = 1.0 - C * R[i].norm_dpg * (R[j].t - R[i].t);
      if (den <= 0.0) {
        out.envelope_blew_up = true;
        continue;
      }
      const double env = R[i].norm_dpg / den;
      const double excess = env > 0.0 ? R[j].norm_dpg / env - 1.0 : (R[j].norm_dpg > 0.0 ? 1.0 : 0.0);
      out.worst_pairwise = std::max(out.worst_pairwise, excess);
    }
  if (R.size() < 2) out.worst_pairwise = 0.0;
  out.pairwise_holds = out.worst_pairwise <= 1e-12;

  out.worst_rate = -std::numeric_limits<double>::infinity();
  if (!R.empty() && T > R.back().t) {
    for (const RunRecord& r : R) out.worst_rate = std::max(out.worst_rate, 1.0 - r.norm_dpg * C * (T - r.t));
    out.rate_holds = out.worst_rate <= 1e-12;
  } else {
    out.worst_rate = 0.0;
  }
  return out;
}

}  // namespace kinetic
