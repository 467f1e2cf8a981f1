#include "efx/fixedpoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "efx/generate.hpp"

namespace efx {

namespace {

void check_shape(const Instance& inst, const DualPoint& y) {
  if (y.items() != inst.items() || y.agents() != inst.agents()) {
    throw InputError("point shape does not match the instance");
  }
}

void check_box(const DualPoint& y, double m) {
  for (std::size_t k = 0; k < y.items(); ++k) {
    for (std::size_t j = 0; j < y.agents(); ++j) {
      if (y(k, j) < -m || y(k, j) > 0.0) {
        throw InputError("point lies outside [-M, 0]", k + 1, j + 1);
      }
    }
  }
}

}  // namespace

std::vector<double> row_maxima(const DualPoint& y) {
  std::vector<double> h(y.items());
  for (std::size_t k = 0; k < y.items(); ++k) {
    const auto row = y.matrix().row(k);
    h[k] = *std::max_element(row.begin(), row.end());
  }
  return h;
}

Matrix envy_shift_matrix(const Instance& inst, const DualPoint& y) {
  check_shape(inst, y);
  const std::size_t m = inst.items();
  const std::size_t n = inst.agents();
  const std::vector<double> h = row_maxima(y);

  Matrix a(m, n, -std::numeric_limits<double>::infinity());
  std::vector<double> inc(m);
  std::vector<double> prefix(m + 1);
  std::vector<double> suffix(m + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      for (std::size_t l = 0; l < m; ++l) {
        const double v = inst.value(l, i);
        double top = std::max(y(l, i) - v, y(l, j) + v);
        for (std::size_t r = 0; r < n; ++r) {
          if (r != i && r != j) top = std::max(top, y(l, r));
        }
        inc[l] = std::clamp(top - h[l], -v, v);
      }
      prefix[0] = 0.0;
      for (std::size_t l = 0; l < m; ++l) prefix[l + 1] = prefix[l] + inc[l];
      suffix[m] = 0.0;
      for (std::size_t l = m; l-- > 0;) suffix[l] = suffix[l + 1] + inc[l];
      for (std::size_t k = 0; k < m; ++k) {
        a(k, j) = std::max(a(k, j), prefix[k] + suffix[k + 1]);
      }
    }
  }
  return a;
}

const char* to_string(FixedPointMap map) {
  switch (map) {
    case FixedPointMap::T: return "T";
    case FixedPointMap::TPrime: return "Tprime";
    case FixedPointMap::TTilde: return "Ttilde";
  }
  return "unknown";
}

FixedPointMap parse_fixed_point_map(const std::string& name) {
  if (name == "T") return FixedPointMap::T;
  if (name == "Tprime") return FixedPointMap::TPrime;
  if (name == "Ttilde") return FixedPointMap::TTilde;
  throw InputError("unknown map '" + name + "' (expected T, Tprime or Ttilde)");
}

SelfMapViolation::SelfMapViolation(std::size_t item, std::size_t agent, double value, double m)
    : std::logic_error("T-tilde image entry (" + std::to_string(item + 1) + ", " +
                       std::to_string(agent + 1) + ") = " + std::to_string(value) +
                       " left the box [-" + std::to_string(m) + ", 0]"),
      item_(item),
      agent_(agent),
      value_(value) {}

MapEval map_T(const Instance& inst, const DualPoint& y) {
  MapEval out{row_maxima(y), envy_shift_matrix(inst, y), Matrix(y.items(), y.agents())};
  for (std::size_t k = 0; k < y.items(); ++k) {
    for (std::size_t j = 0; j < y.agents(); ++j) {
      out.image(k, j) = std::min(y(k, j), out.h_row[k] - out.A(k, j));
    }
  }
  return out;
}

MapEval map_T_prime(const Instance& inst, const DualPoint& y) {
  MapEval out{row_maxima(y), envy_shift_matrix(inst, y), Matrix(y.items(), y.agents())};
  for (std::size_t k = 0; k < y.items(); ++k) {
    const bool maximal = out.h_row[k] == 0.0;
    for (std::size_t j = 0; j < y.agents(); ++j) {
      const double second = maximal ? -out.A(k, j) : 0.0;
      out.image(k, j) = std::min(y(k, j) - out.h_row[k], second);
    }
  }
  return out;
}

MapEval map_T_tilde(const Instance& inst, const DualPoint& y, EncodingConstant m) {
  check_shape(inst, y);
  check_box(y, m.value());
  MapEval out{row_maxima(y), envy_shift_matrix(inst, y), Matrix(y.items(), y.agents())};
  for (std::size_t k = 0; k < y.items(); ++k) {
    const double scale = std::exp(out.h_row[k]);
    for (std::size_t j = 0; j < y.agents(); ++j) {
      const double value = std::min(y(k, j) - out.h_row[k], -out.A(k, j) * scale);
      if (!(value >= -m.value() && value <= 0.0)) throw SelfMapViolation(k, j, value, m.value());
      out.image(k, j) = value;
    }
  }
  return out;
}

MapEval apply_map(FixedPointMap map, const Instance& inst, const DualPoint& y,
                  EncodingConstant m) {
  switch (map) {
    case FixedPointMap::T: return map_T(inst, y);
    case FixedPointMap::TPrime: return map_T_prime(inst, y);
    case FixedPointMap::TTilde: return map_T_tilde(inst, y, m);
  }
  throw std::logic_error("unhandled map");
}

ConstraintCheck verify_constraints(const Instance& inst, const DualPoint& y, double tolerance) {
  const std::vector<double> h = row_maxima(y);
  const Matrix a = envy_shift_matrix(inst, y);
  ConstraintCheck out{-std::numeric_limits<double>::infinity(), {}};
  for (std::size_t k = 0; k < y.items(); ++k) {
    for (std::size_t j = 0; j < y.agents(); ++j) {
      const double value = (y(k, j) - h[k]) + a(k, j);
      out.slack = std::max(out.slack, value);
      if (value > tolerance) out.violations.push_back({k, j, value});
    }
  }
  return out;
}

std::vector<NegativeRow> negative_row_diagnostics(const Instance& inst, const DualPoint& y,
                                                 double tolerance) {
  const std::vector<double> h = row_maxima(y);
  const Matrix a = envy_shift_matrix(inst, y);
  const double log_bound = std::log1p(total_mass(inst).total);
  std::vector<NegativeRow> rows;
  for (std::size_t k = 0; k < y.items(); ++k) {
    if (!(h[k] < -tolerance)) continue;
    NegativeRow row{k, h[k], log_bound, {}};
    for (std::size_t j = 0; j < y.agents(); ++j) {
      if (std::abs(y(k, j)) <= tolerance) {
        row.entries.push_back({j, true, 0.0});
      } else {
        row.entries.push_back({j, false, std::abs(std::exp(-h[k]) + a(k, j) / y(k, j))});
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

FixedPointReport picard_iterate(const Instance& inst, const DualPoint& y0,
                                const PicardOptions& options) {
  if (!(options.alpha > 0.0 && options.alpha <= 1.0)) {
    throw InputError("damping alpha must lie in (0, 1]");
  }
  const EncodingConstant m_const =
      options.m_const ? EncodingConstant(*options.m_const) : EncodingConstant::for_instance(inst);
  check_shape(inst, y0);
  check_box(y0, m_const.value());

  const double big_m = m_const.value();
  Matrix y = y0.matrix();
  Matrix best_y = y;
  double best_residual = std::numeric_limits<double>::infinity();
  std::size_t iterations = 0;
  bool converged = false;

  for (std::size_t t = 0;; ++t) {
    const MapEval eval = apply_map(options.map, inst, DualPoint(y), m_const);
    const double residual = max_abs_diff(eval.image, y);
    if (residual < best_residual) {
      best_residual = residual;
      best_y = y;
    }
    iterations = t;
    if (residual <= options.tolerance) {
      converged = true;
      break;
    }
    if (t >= options.max_iterations) break;
    const auto cells = y.flat();
    const auto image = eval.image.flat();
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const double mixed = (1.0 - options.alpha) * cells[c] + options.alpha * image[c];
      // Projects T iterates back into the box; for the other maps this only absorbs rounding.
      cells[c] = std::clamp(mixed, -big_m, 0.0);
    }
  }

  FixedPointReport report;
  report.converged = converged;
  report.iterations = iterations;
  report.residual = best_residual;
  report.y = DualPoint(best_y);
  report.slack_tolerance = options.slack_tolerance;
  report.constraints = verify_constraints(inst, report.y, options.slack_tolerance);
  report.negative_rows = negative_row_diagnostics(inst, report.y, options.tolerance);
  report.extracted = extract_allocation(report.y);
  report.efx = is_efx(inst, report.extracted, options.efx_tolerance).efx;
  return report;
}

FixedPointMultiStart picard_multistart(const Instance& inst, std::size_t starts,
                                       std::uint64_t seed, const PicardOptions& options) {
  const EncodingConstant m_const =
      options.m_const ? EncodingConstant(*options.m_const) : EncodingConstant::for_instance(inst);
  FixedPointMultiStart out;
  for (std::size_t s = 0; s < std::max<std::size_t>(starts, 1); ++s) {
    Engine engine = make_engine(seed, s);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Matrix y0(inst.items(), inst.agents());
    for (double& e : y0.flat()) e = -m_const.value() * unit(engine);
    out.runs.push_back(picard_iterate(inst, DualPoint(std::move(y0)), options));
  }
  auto rank = [](const FixedPointReport& r) { return r.converged && r.efx ? 0 : 1; };
  for (std::size_t s = 1; s < out.runs.size(); ++s) {
    const auto& cand = out.runs[s];
    const auto& cur = out.runs[out.best_start];
    if (rank(cand) < rank(cur) || (rank(cand) == rank(cur) && rank(cur) == 1 &&
                                   cand.residual < cur.residual)) {
      out.best_start = s;
    }
  }
  out.best = out.runs[out.best_start];
  return out;
}

}  // namespace efx
