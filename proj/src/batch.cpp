#include "fadecap/batch.hpp"

#include <cmath>
#include <cstdint>
#include <sstream>

namespace fadecap {

std::vector<double> make_q_grid(double q_min, double q_max,
                                std::size_t points, bool log_spacing) {
  if (!(q_min > 0.0) || !(q_max > q_min) || !std::isfinite(q_max)) {
    std::ostringstream os;
    os << "power grid needs 0 < q_min < q_max, got [" << q_min << ", "
       << q_max << "]";
    throw Error(Errc::ConfigError, os.str());
  }
  if (points < 2) {
    throw Error(Errc::ConfigError, "power grid needs at least 2 points");
  }
  std::vector<double> qs(points);
  const double lo = log_spacing ? std::log(q_min) : q_min;
  const double hi = log_spacing ? std::log(q_max) : q_max;
  for (std::size_t k = 0; k < points; ++k) {
    const double t = static_cast<double>(k) / (points - 1);
    const double v = lo + t * (hi - lo);
    qs[k] = log_spacing ? std::exp(v) : v;
  }
  qs.front() = q_min;  // guard the endpoints against rounding
  qs.back() = q_max;
  return qs;
}

namespace {

SweepRow sweep_one(const ChannelSpec& base, double q) {
  SweepRow row;
  row.q = q;
  try {
    row.record = analyze(base.with_power(q));
  } catch (const Error& e) {
    row.error = e.code_name();
  }
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const ChannelSpec& base,
                                const std::vector<double>& qs, Exec exec) {
  std::vector<SweepRow> rows(qs.size());
  const std::int64_t count = static_cast<std::int64_t>(qs.size());
#ifdef _OPENMP
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t k = 0; k < count; ++k) {
      rows[static_cast<std::size_t>(k)] =
          sweep_one(base, qs[static_cast<std::size_t>(k)]);
    }
    return rows;
  }
#endif
  (void)exec;
  for (std::int64_t k = 0; k < count; ++k) {
    rows[static_cast<std::size_t>(k)] =
        sweep_one(base, qs[static_cast<std::size_t>(k)]);
  }
  return rows;
}

}  // namespace fadecap
