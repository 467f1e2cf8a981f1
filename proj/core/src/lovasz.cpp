#include "efx/lovasz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace efx {

FractionalPoint::FractionalPoint(Matrix x) : x_(std::move(x)) {
  for (std::size_t k = 0; k < x_.rows(); ++k) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x_.cols(); ++i) {
      const double v = x_(k, i);
      if (!std::isfinite(v) || v < 0.0 || v > 1.0 + kRowSumTolerance) {
        throw InputError("fractional entry outside [0,1]", k + 1, i + 1);
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      throw InputError("fractional row does not sum to 1", k + 1);
    }
  }
}

FractionalPoint FractionalPoint::uniform(std::size_t items, std::size_t agents) {
  return FractionalPoint(Matrix(items, agents, 1.0 / static_cast<double>(agents)));
}

FractionalPoint FractionalPoint::from_allocation(const Allocation& alloc) {
  Matrix x(alloc.items(), alloc.agents(), 0.0);
  for (std::size_t k = 0; k < alloc.items(); ++k) x(k, alloc.owner(k)) = 1.0;
  return FractionalPoint(std::move(x));
}

double lovasz_extension(const SetFunction& fn, std::span<const double> x) {
  if (x.size() > kMaxGroundSet) throw std::invalid_argument("ground set larger than 64");
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] > x[b]; });
  // Summed by parts, sum_t (x_{pi_t} - x_{pi_{t+1}}) fn(S^t), so that an
  // indicator vector reproduces fn(S) with no rounding.
  double total = 0.0;
  ItemSet prefix;
  for (std::size_t t = 0; t < order.size(); ++t) {
    prefix = prefix.with(order[t]);
    const double next = t + 1 < order.size() ? x[order[t + 1]] : 0.0;
    const double weight = x[order[t]] - next;
    if (weight != 0.0) total += weight * fn(prefix);
  }
  return total;
}

SetFunction pair_envy_set_function(const Instance& inst, std::size_t i, std::size_t j,
                                   EnvyForm form) {
  const std::size_t m = inst.items();
  const std::size_t n = inst.agents();
  if (m * n > kMaxGroundSet) throw std::invalid_argument("m*n exceeds 64 ground-set bits");
  return [&inst, i, j, form, n](ItemSet s) {
    BundleProfile x(n);
    for (std::size_t e : s.elements()) x[e % n] = x[e % n].with(e / n);
    return form == EnvyForm::raw ? pair_envy(inst, i, j, x) : pair_envy_shifted(inst, i, j, x);
  };
}

std::vector<std::size_t> sorted_column(const Matrix& x, std::size_t agent) {
  std::vector<std::size_t> order(x.rows());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x(a, agent) > x(b, agent); });
  return order;
}

namespace {

// f_i^L applied to column j: coefficient of x_kj for each item k.
std::vector<double> reduced_value_weights(const Instance& inst, std::size_t i, std::size_t j,
                                          const Matrix& x) {
  std::vector<double> weight(inst.items(), 0.0);
  const auto order = sorted_column(x, j);
  double running_min = std::numeric_limits<double>::infinity();
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const std::size_t k = order[pos];
    const double v = inst.value(k, i);
    if (pos > 0) weight[k] = v + std::max(running_min - v, 0.0);
    running_min = std::min(running_min, v);
  }
  return weight;
}

void check_shape(const Instance& inst, const Matrix& x) {
  if (x.rows() != inst.items() || x.cols() != inst.agents()) {
    throw InputError("fractional point shape does not match the instance");
  }
}

}  // namespace

double closed_form_extension(const Instance& inst, std::size_t i, std::size_t j,
                             const Matrix& x) {
  check_shape(inst, x);
  if (i == j) throw std::invalid_argument("pair envy needs two distinct agents");
  const auto weight = reduced_value_weights(inst, i, j, x);
  double total = 0.0;
  for (std::size_t k = 0; k < inst.items(); ++k) {
    total += weight[k] * x(k, j) - inst.value(k, i) * x(k, i);
  }
  return total;
}

namespace {

double shifted_extension(const Instance& inst, std::size_t i, std::size_t j, const Matrix& x) {
  const auto weight = reduced_value_weights(inst, i, j, x);
  double total = 0.0;
  for (std::size_t k = 0; k < inst.items(); ++k) {
    total += weight[k] * x(k, j);
    for (std::size_t l = 0; l < inst.agents(); ++l) {
      if (l != i) total += inst.value(k, i) * x(k, l);
    }
  }
  return total;
}

}  // namespace

RelaxationValue relax_objective(const Instance& inst, const Matrix& x) {
  check_shape(inst, x);
  if (!inst.normalized()) {
    throw std::invalid_argument("relaxation objective requires a normalized instance");
  }
  RelaxationValue best{-std::numeric_limits<double>::infinity(), 0, 1};
  for (std::size_t i = 0; i < inst.agents(); ++i) {
    for (std::size_t j = 0; j < inst.agents(); ++j) {
      if (i == j) continue;
      const double u = shifted_extension(inst, i, j, x);
      if (u > best.value) best = {u, i, j};
    }
  }
  return best;
}

Matrix relax_subgradient(const Instance& inst, std::size_t i, std::size_t j, const Matrix& x) {
  check_shape(inst, x);
  const auto weight = reduced_value_weights(inst, i, j, x);
  Matrix g(inst.items(), inst.agents(), 0.0);
  for (std::size_t k = 0; k < inst.items(); ++k) {
    g(k, j) += weight[k];
    for (std::size_t l = 0; l < inst.agents(); ++l) {
      if (l != i) g(k, l) += inst.value(k, i);
    }
  }
  return g;
}

void project_to_simplex(std::span<double> v) {
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double shift = 0.0;
  for (std::size_t r = 0; r < sorted.size(); ++r) {
    cumulative += sorted[r];
    const double candidate = (cumulative - 1.0) / static_cast<double>(r + 1);
    if (sorted[r] - candidate > 0.0) shift = candidate;
  }
  double sum = 0.0;
  for (double& e : v) {
    e = std::max(e - shift, 0.0);
    sum += e;
  }
  // Absorb rounding so the row sums to 1 to machine precision.
  if (sum > 0.0) {
    for (double& e : v) e /= sum;
  }
}

void project_rows_to_simplex(Matrix& x) {
  for (std::size_t k = 0; k < x.rows(); ++k) project_to_simplex(x.row(k));
}

RelaxationResult minimize_relaxation(const Instance& inst, const RelaxationOptions& options) {
  Matrix x = FractionalPoint::uniform(inst.items(), inst.agents()).matrix();
  RelaxationValue current = relax_objective(inst, x);
  RelaxationResult result{FractionalPoint(x), current.value, current.value, 0, 0.0};

  for (std::size_t t = 1; t <= options.iterations; ++t) {
    const Matrix g = relax_subgradient(inst, current.i, current.j, x);
    const double step = options.step0 / std::sqrt(static_cast<double>(t));
    for (std::size_t k = 0; k < x.rows(); ++k) {
      for (std::size_t a = 0; a < x.cols(); ++a) x(k, a) -= step * g(k, a);
    }
    project_rows_to_simplex(x);
    for (std::size_t k = 0; k < x.rows(); ++k) {
      double sum = 0.0;
      for (double e : x.row(k)) sum += e;
      result.max_row_error = std::max(result.max_row_error, std::abs(sum - 1.0));
    }
    current = relax_objective(inst, x);
    if (current.value < result.value) {
      result.value = current.value;
      result.best = FractionalPoint(x);
      result.best_iteration = t;
    }
  }
  return result;
}

ThresholdRounding threshold_round(const FractionalPoint& x, Engine& engine) {
  const std::size_t m = x.items();
  const std::size_t n = x.agents();
  if (m > kMaxGroundSet) throw std::invalid_argument("threshold rounding supports m <= 64");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ThresholdRounding out;
  out.thresholds.resize(n);
  out.bundles.assign(n, ItemSet{});
  for (std::size_t i = 0; i < n; ++i) {
    // theta in (0, 1], so zero entries are never selected and ones always are.
    out.thresholds[i] = 1.0 - unit(engine);
    for (std::size_t k = 0; k < m; ++k) {
      if (x(k, i) >= out.thresholds[i]) out.bundles[i] = out.bundles[i].with(k);
    }
  }
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t holders = 0;
    for (const ItemSet& b : out.bundles) holders += b.contains(k) ? 1 : 0;
    if (holders == 0) out.unassigned.push_back(k);
    if (holders > 1) out.multiply_assigned.push_back(k);
  }
  return out;
}

ThresholdRounding threshold_round(const FractionalPoint& x, std::uint64_t seed) {
  Engine engine = make_engine(seed);
  return threshold_round(x, engine);
}

}  // namespace efx
