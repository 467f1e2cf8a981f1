#include "efx/extension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace efx {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_shape(const Instance& inst, std::size_t rows, std::size_t cols) {
  if (rows != inst.items() || cols != inst.agents()) {
    throw InputError("point shape " + std::to_string(rows) + "x" + std::to_string(cols) +
                     " does not match the instance " + std::to_string(inst.items()) + "x" +
                     std::to_string(inst.agents()));
  }
}

double row_max(std::span<const double> row) { return *std::max_element(row.begin(), row.end()); }

}  // namespace

double log_sum_exp(std::span<const double> terms) {
  double top = kNegInf;
  for (double t : terms) top = std::max(top, t);
  if (top == kNegInf) return kNegInf;
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - top);
  return top + std::log(sum);
}

DualPoint::DualPoint(Matrix y) : y_(std::move(y)) {
  for (std::size_t k = 0; k < y_.rows(); ++k) {
    for (std::size_t i = 0; i < y_.cols(); ++i) {
      if (!std::isfinite(y_(k, i))) throw InputError("dual entry is not finite", k + 1, i + 1);
    }
  }
}

InverseTemperature::InverseTemperature(double lambda) : lambda_(lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InputError("lambda must be a positive finite number");
  }
}

EncodingConstant::EncodingConstant(double m) : m_(m) {
  if (!(m > 0.0) || !std::isfinite(m)) throw InputError("M must be a positive finite number");
}

EncodingConstant EncodingConstant::for_instance(const Instance& inst) {
  return EncodingConstant(2.0 * total_mass(inst).total + 1.0);
}

Allocation rowwise_round(const FractionalPoint& x, Engine& engine) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::size_t> owner(x.items());
  for (std::size_t k = 0; k < x.items(); ++k) {
    const double u = unit(engine);
    double cumulative = 0.0;
    std::size_t pick = x.agents();
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < x.agents(); ++i) {
      if (x(k, i) > 0.0) last_positive = i;
      cumulative += x(k, i);
      if (pick == x.agents() && u < cumulative && x(k, i) > 0.0) pick = i;
    }
    // Row sums slightly below 1 can leave u uncovered.
    owner[k] = pick == x.agents() ? last_positive : pick;
  }
  return Allocation(std::move(owner), x.agents());
}

Allocation rowwise_round(const FractionalPoint& x, std::uint64_t seed) {
  Engine engine = make_engine(seed);
  return rowwise_round(x, engine);
}

double expected_envy_bound_log(const Instance& inst, const Matrix& log_x,
                               InverseTemperature lambda) {
  check_shape(inst, log_x.rows(), log_x.cols());
  const std::size_t m = inst.items();
  const std::size_t n = inst.agents();
  const double lam = lambda.value();

  // log_factor[l] for the current (i, j): log of the l-th product factor.
  std::vector<double> log_factor(m);
  std::vector<double> prefix(m + 1), suffix(m + 1);
  std::vector<double> outer;
  outer.reserve(n * (n - 1) * m);
  std::vector<double> parts;
  parts.reserve(n);

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      for (std::size_t l = 0; l < m; ++l) {
        parts.clear();
        for (std::size_t r = 0; r < n; ++r) {
          if (r != i && r != j) parts.push_back(log_x(l, r));
        }
        const double log_rest = log_sum_exp(parts);
        const double v = inst.value(l, i);
        const double terms[3] = {log_rest, log_x(l, i) - lam * v, log_x(l, j) + lam * v};
        log_factor[l] = log_sum_exp(terms);
        if (!(log_factor[l] > kNegInf) || std::isnan(log_factor[l])) {
          throw std::logic_error("bound factor is not strictly positive");
        }
      }
      prefix[0] = 0.0;
      for (std::size_t l = 0; l < m; ++l) prefix[l + 1] = prefix[l] + log_factor[l];
      suffix[m] = 0.0;
      for (std::size_t l = m; l-- > 0;) suffix[l] = suffix[l + 1] + log_factor[l];
      for (std::size_t k = 0; k < m; ++k) {
        if (log_x(k, j) == kNegInf) continue;
        outer.push_back(log_x(k, j) + prefix[k] + suffix[k + 1]);
      }
    }
  }
  return log_sum_exp(outer) / lam;
}

double expected_envy_bound(const Instance& inst, const FractionalPoint& x,
                           InverseTemperature lambda) {
  check_shape(inst, x.items(), x.agents());
  Matrix log_x(x.items(), x.agents());
  for (std::size_t k = 0; k < x.items(); ++k) {
    for (std::size_t i = 0; i < x.agents(); ++i) {
      log_x(k, i) = x(k, i) > 0.0 ? std::log(x(k, i)) : kNegInf;
    }
  }
  return expected_envy_bound_log(inst, log_x, lambda);
}

Matrix log_softmax(const DualPoint& y, InverseTemperature lambda) {
  Matrix out(y.items(), y.agents());
  for (std::size_t k = 0; k < y.items(); ++k) {
    const double top = row_max(y.matrix().row(k));
    double sum = 0.0;
    for (std::size_t i = 0; i < y.agents(); ++i) {
      out(k, i) = lambda.value() * (y(k, i) - top);
      sum += std::exp(out(k, i));
    }
    const double log_sum = std::log(sum);
    for (std::size_t i = 0; i < y.agents(); ++i) out(k, i) -= log_sum;
  }
  return out;
}

FractionalPoint softmax_map(const DualPoint& y, InverseTemperature lambda) {
  Matrix x(y.items(), y.agents());
  for (std::size_t k = 0; k < y.items(); ++k) {
    const double top = row_max(y.matrix().row(k));
    double sum = 0.0;
    for (std::size_t i = 0; i < y.agents(); ++i) {
      x(k, i) = std::exp(lambda.value() * (y(k, i) - top));
      sum += x(k, i);
    }
    for (std::size_t i = 0; i < y.agents(); ++i) x(k, i) /= sum;
  }
  return FractionalPoint(std::move(x));
}

DcObjective dc_objective_detail(const Instance& inst, const DualPoint& y) {
  check_shape(inst, y.items(), y.agents());
  const std::size_t m = inst.items();
  const std::size_t n = inst.agents();

  double row_max_total = 0.0;
  for (std::size_t l = 0; l < m; ++l) row_max_total += row_max(y.matrix().row(l));

  std::vector<double> shifted_max(m);
  DcObjective best{kNegInf, 0, 0, 1};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      for (std::size_t l = 0; l < m; ++l) {
        const double v = inst.value(l, i);
        double t = std::max(y(l, i) - v, y(l, j) + v);
        for (std::size_t r = 0; r < n; ++r) {
          if (r != i && r != j) t = std::max(t, y(l, r));
        }
        shifted_max[l] = t;
      }
      for (std::size_t k = 0; k < m; ++k) {
        double total = y(k, j);
        for (std::size_t l = 0; l < m; ++l) {
          if (l != k) total += shifted_max[l];
        }
        const double value = total - row_max_total;
        const bool lex_smaller =
            value == best.value &&
            std::tie(k, i, j) < std::tie(best.item, best.envious, best.envied);
        if (value > best.value || lex_smaller) best = {value, k, i, j};
      }
    }
  }
  return best;
}

double dc_objective(const Instance& inst, const DualPoint& y) {
  return dc_objective_detail(inst, y).value;
}

DualPoint encode_allocation(const Instance& inst, const Allocation& alloc, EncodingConstant m) {
  check_compatible(inst, alloc);
  const double two_v = 2.0 * total_mass(inst).total;
  if (!(m.value() > two_v)) {
    throw InputError("encoding constant M must exceed 2V = " + std::to_string(two_v));
  }
  Matrix y(alloc.items(), alloc.agents(), -m.value());
  for (std::size_t k = 0; k < alloc.items(); ++k) y(k, alloc.owner(k)) = 0.0;
  return DualPoint(std::move(y));
}

Allocation extract_allocation(const DualPoint& y) {
  std::vector<std::size_t> owner(y.items());
  for (std::size_t k = 0; k < y.items(); ++k) {
    const auto row = y.matrix().row(k);
    owner[k] = static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
  }
  return Allocation(std::move(owner), y.agents());
}

std::vector<double> limit_gaps(const Instance& inst, const DualPoint& y,
                               std::span<const double> lambdas) {
  const double f = dc_objective(inst, y);
  std::vector<double> gaps;
  gaps.reserve(lambdas.size());
  for (double lam : lambdas) {
    const InverseTemperature lambda(lam);
    const double g = expected_envy_bound_log(inst, log_softmax(y, lambda), lambda);
    gaps.push_back(std::abs(g - f));
  }
  return gaps;
}

}  // namespace efx
