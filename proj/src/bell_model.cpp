#include "ontic/bell_model.hpp"

#include <cmath>
#include <stdexcept>

namespace ontic {

EpistemicState prepare_bell(const PureState& psi) {
  return EpistemicState(psi.dim(), {{1.0, DeltaLine{psi, 0.0, 1.0}}});
}

std::vector<double> cumulative_weights(const PureState& direction, const OrderedMeasurement& measurement) {
  if (direction.dim() != measurement.dim()) {
    throw std::invalid_argument("cumulative_weights: dimension mismatch");
  }
  const std::size_t d = measurement.dim();
  std::vector<double> c(d);
  double sum = 0.0;
  double comp = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    const double w = fidelity(measurement[k], direction);
    const double t = sum + w;
    comp += std::abs(sum) >= std::abs(w) ? (sum - t) + w : (w - t) + sum;
    sum = t;
    c[k] = sum + comp;
  }
  const double total = c[d - 1];
  for (auto& v : c) v = std::min(v / total, 1.0);
  c[d - 1] = 1.0;
  return c;
}

Interval response_interval(const PureState& direction, const OrderedMeasurement& measurement,
                           std::size_t k) {
  if (k >= measurement.dim()) throw std::invalid_argument("response_interval: outcome out of range");
  const auto c = cumulative_weights(direction, measurement);
  return {k == 0 ? 0.0 : c[k - 1], c[k]};
}

OutcomeIndex respond_bell(const OnticState& lambda, const OrderedMeasurement& measurement) {
  const auto c = cumulative_weights(lambda.direction(), measurement);
  const std::size_t d = c.size();
  for (std::size_t k = 0; k + 1 < d; ++k) {
    if (lambda.x() < c[k]) return {k};
  }
  return {d - 1};
}

}  // namespace ontic
