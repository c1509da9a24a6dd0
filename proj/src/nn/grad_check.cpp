#include "minparse/nn/grad_check.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace minparse::nn {

std::string GradCheckReport::summary() const {
  std::ostringstream ss;
  ss << std::setprecision(3) << std::scientific;
  ss << "checked=" << checked << " max_rel_error=" << max_rel_error;
  if (checked > 0) ss << " worst=" << worst.param << "[" << worst.row << "," << worst.col << "]";
  ss << " failures=" << failures.size();
  return ss.str();
}

template <typename T>
GradCheckReport grad_check(ParamStore<T>& store, const std::function<double()>& loss,
                           const GradCheckOptions& options) {
  GradCheckReport report;
  Rng rng(options.seed);
  const double total = static_cast<double>(std::max<Index>(store.total_size(), 1));
  for (auto& p : store) {
    const Index size = p->size();
    if (size == 0) continue;
    const Index share = static_cast<Index>(std::ceil(options.total_samples * size / total));
    const Index count = std::min(size, std::max<Index>(options.min_per_param, share));

    std::vector<Index> coords(static_cast<std::size_t>(size));
    for (Index i = 0; i < size; ++i) coords[static_cast<std::size_t>(i)] = i;
    std::shuffle(coords.begin(), coords.end(), rng);
    coords.resize(static_cast<std::size_t>(count));
    std::sort(coords.begin(), coords.end());

    double param_max = 0.0;
    for (const Index flat : coords) {
      T& x = p->value.data()[flat];
      const T saved = x;
      const T plus = static_cast<T>(saved + options.step);
      const T minus = static_cast<T>(saved - options.step);
      x = plus;
      const double up = loss();
      x = minus;
      const double down = loss();
      x = saved;

      GradCheckEntry e;
      e.param = p->name;
      e.row = flat / p->value.cols();
      e.col = flat % p->value.cols();
      e.analytic = static_cast<double>(p->grad.data()[flat]);
      e.numeric = (up - down) / (static_cast<double>(plus) - static_cast<double>(minus));
      const double denom = std::max({std::abs(e.analytic), std::abs(e.numeric), options.floor});
      e.rel_error = std::abs(e.analytic - e.numeric) / denom;

      ++report.checked;
      param_max = std::max(param_max, e.rel_error);
      if (e.rel_error > report.max_rel_error || report.checked == 1) {
        report.max_rel_error = std::max(report.max_rel_error, e.rel_error);
        if (e.rel_error >= report.max_rel_error) report.worst = e;
      }
      if (e.rel_error > options.tolerance) report.failures.push_back(e);
    }
    report.per_param.emplace_back(p->name, param_max);
  }
  return report;
}

template GradCheckReport grad_check<double>(ParamStore<double>&, const std::function<double()>&,
                                            const GradCheckOptions&);
template GradCheckReport grad_check<float>(ParamStore<float>&, const std::function<double()>&,
                                           const GradCheckOptions&);

}  // namespace minparse::nn
