#include "efx/dc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace efx {

namespace {

void check_box(const DualPoint& y, double m) {
  for (std::size_t k = 0; k < y.items(); ++k) {
    for (std::size_t i = 0; i < y.agents(); ++i) {
      if (y(k, i) < -m || y(k, i) > 0.0) {
        throw InputError("starting point lies outside [-M, 0]", k + 1, i + 1);
      }
    }
  }
}

}  // namespace

double row_max_sum(const DualPoint& y) {
  double total = 0.0;
  for (std::size_t l = 0; l < y.items(); ++l) {
    const auto row = y.matrix().row(l);
    total += *std::max_element(row.begin(), row.end());
  }
  return total;
}

double dc_convex_part(const Instance& inst, const DualPoint& y) {
  if (y.items() != inst.items() || y.agents() != inst.agents()) {
    throw InputError("point shape does not match the instance");
  }
  const std::size_t m = inst.items();
  const std::size_t n = inst.agents();
  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> t(m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      for (std::size_t l = 0; l < m; ++l) {
        const double v = inst.value(l, i);
        double top = std::max(y(l, i) - v, y(l, j) + v);
        for (std::size_t r = 0; r < n; ++r) {
          if (r != i && r != j) top = std::max(top, y(l, r));
        }
        t[l] = top;
      }
      for (std::size_t k = 0; k < m; ++k) {
        double total = y(k, j);
        for (std::size_t l = 0; l < m; ++l) {
          if (l != k) total += t[l];
        }
        best = std::max(best, total);
      }
    }
  }
  return best;
}

DcDecomposition decompose(const Instance& inst, const DualPoint& y) {
  return {dc_convex_part(inst, y), row_max_sum(y)};
}

std::size_t DcaLinearization::z_index(std::size_t l, std::size_t i, std::size_t j) const {
  const std::size_t pair = i * (agents - 1) + (j < i ? j : j - 1);
  return items * agents + l * agents * (agents - 1) + pair;
}

std::vector<std::size_t> row_argmax(const DualPoint& y) {
  return extract_allocation(y).owners();
}

DcaLinearization build_dca_lp(const Instance& inst, const std::vector<std::size_t>& argmax_rows,
                              EncodingConstant m_const) {
  const std::size_t m = inst.items();
  const std::size_t n = inst.agents();
  if (argmax_rows.size() != m) throw InputError("argmax rows must have one entry per item");
  for (std::size_t l = 0; l < m; ++l) {
    if (argmax_rows[l] >= n) throw InputError("argmax row index is not an agent", l + 1);
  }
  const double big_m = m_const.value();
  const double total = total_mass(inst).total;
  double vmax = 0.0;
  for (double v : inst.values().flat()) vmax = std::max(vmax, v);

  DcaLinearization out;
  out.items = m;
  out.agents = n;
  LinearProgram& lp = out.lp;

  for (std::size_t l = 0; l < m; ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      lp.add_variable(argmax_rows[l] == i ? -1.0 : 0.0, -big_m, 0.0);
    }
  }
  for (std::size_t l = 0; l < m; ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) lp.add_variable(0.0, -big_m - vmax, big_m + vmax);
      }
    }
  }
  const double w_bound = static_cast<double>(m + 1) * big_m + total;
  lp.add_variable(1.0, -w_bound, w_bound);
  const std::size_t w = out.w_index();

  const std::size_t before = lp.rows.size();
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        std::vector<std::pair<std::size_t, double>> terms{{out.y_index(k, j), 1.0}};
        for (std::size_t l = 0; l < m; ++l) {
          if (l != k) terms.emplace_back(out.z_index(l, i, j), 1.0);
        }
        terms.emplace_back(w, -1.0);
        lp.add_row(std::move(terms), 0.0);
      }
    }
  }
  out.family_rows[0] = lp.rows.size() - before;

  for (int family = 1; family <= 3; ++family) {
    const std::size_t start = lp.rows.size();
    for (std::size_t l = 0; l < m; ++l) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j) continue;
          const std::size_t z = out.z_index(l, i, j);
          const double v = inst.value(l, i);
          if (family == 1) {
            lp.add_row({{out.y_index(l, i), 1.0}, {z, -1.0}}, v);
          } else if (family == 2) {
            lp.add_row({{out.y_index(l, j), 1.0}, {z, -1.0}}, -v);
          } else {
            for (std::size_t r = 0; r < n; ++r) {
              if (r != i && r != j) lp.add_row({{out.y_index(l, r), 1.0}, {z, -1.0}}, 0.0);
            }
          }
        }
      }
    }
    out.family_rows[family] = lp.rows.size() - start;
  }
  return out;
}

const char* to_string(DcaStatus status) {
  switch (status) {
    case DcaStatus::converged: return "converged";
    case DcaStatus::iteration_limit: return "iteration-limit";
    case DcaStatus::lp_failure: return "lp-failure";
  }
  return "unknown";
}

DcaResult dca_solve(const Instance& inst, const DualPoint& y0, const DcaOptions& options) {
  const EncodingConstant m_const =
      options.m_const ? EncodingConstant(*options.m_const) : EncodingConstant::for_instance(inst);
  if (y0.items() != inst.items() || y0.agents() != inst.agents()) {
    throw InputError("starting point shape does not match the instance");
  }
  check_box(y0, m_const.value());

  DcaResult result;
  Matrix y = y0.matrix();
  result.objective = dc_objective(inst, y0);
  result.status = DcaStatus::iteration_limit;

  for (std::size_t t = 0; t < options.max_iterations; ++t) {
    const DualPoint current(y);
    const DcaLinearization model = build_dca_lp(inst, row_argmax(current), m_const);
    const LpSolution sol = solve_lp(model.lp, options.simplex);
    if (sol.status != LpStatus::optimal) {
      result.status = DcaStatus::lp_failure;
      result.detail = std::string("LP solve failed: ") + to_string(sol.status);
      break;
    }
    Matrix next(inst.items(), inst.agents());
    double step = 0.0;
    for (std::size_t l = 0; l < inst.items(); ++l) {
      for (std::size_t i = 0; i < inst.agents(); ++i) {
        const double v = std::clamp(sol.x[model.y_index(l, i)], -m_const.value(), 0.0);
        next(l, i) = v;
        step = std::max(step, std::abs(v - y(l, i)));
      }
    }
    const DualPoint next_point(next);
    const DcaStep record{t, sol.objective, dc_objective(inst, next_point), step, sol.pivots};
    if (!result.trace.empty() && record.objective > result.trace.back().objective + 1e-9) {
      result.monotone = false;
    }
    result.trace.push_back(record);
    result.objective = sol.objective;
    result.iterations = t + 1;
    y = std::move(next);
    if (step <= options.delta) {
      result.status = DcaStatus::converged;
      break;
    }
  }

  result.y = DualPoint(y);
  result.allocation = extract_allocation(result.y);
  result.efx = is_efx(inst, result.allocation, options.efx_tolerance).efx;
  return result;
}

DualPoint greedy_start(const Instance& inst, EncodingConstant m) {
  std::vector<std::size_t> owner(inst.items());
  for (std::size_t k = 0; k < inst.items(); ++k) {
    const auto row = inst.values().row(k);
    owner[k] = static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
  }
  return encode_allocation(inst, Allocation(std::move(owner), inst.agents()), m);
}

DualPoint random_start(std::size_t items, std::size_t agents, EncodingConstant m,
                       Engine& engine) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Matrix y(items, agents);
  for (double& e : y.flat()) e = -m.value() * unit(engine);
  return DualPoint(std::move(y));
}

MultiStartResult dca_multistart(const Instance& inst, std::size_t starts, std::uint64_t seed,
                                const DcaOptions& options) {
  const EncodingConstant m_const =
      options.m_const ? EncodingConstant(*options.m_const) : EncodingConstant::for_instance(inst);
  MultiStartResult out;
  bool have_best = false;
  for (std::size_t s = 0; s < std::max<std::size_t>(starts, 1); ++s) {
    DualPoint y0 = [&] {
      if (s == 0) return greedy_start(inst, m_const);
      Engine engine = make_engine(seed, s);
      return random_start(inst.items(), inst.agents(), m_const, engine);
    }();
    DcaResult run = dca_solve(inst, y0, options);
    out.objectives.push_back(run.objective);
    const bool better = !have_best || (run.efx && !out.best.efx) ||
                        (run.efx == out.best.efx && run.objective < out.best.objective);
    if (better) {
      out.best = std::move(run);
      out.best_start = s;
      have_best = true;
    }
    if (out.best.efx) break;
  }
  return out;
}

}  // namespace efx
