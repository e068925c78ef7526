#include "gvp/singular_kernel.h"

#include <cmath>

#include "gvp/errors.h"

namespace gvp {

SingularKernelSpec SingularKernelSpec::power(double alpha, double scale) {
  SingularKernelSpec k;
  k.kind = Kind::power;
  k.alpha = alpha;
  k.scale = scale;
  k.exponent = clean_exponent(1.0 - alpha);
  k.label = "power";
  k.validate();
  return k;
}

SingularKernelSpec SingularKernelSpec::closed_form(double exponent, std::function<double(double)> regular,
                                                   std::function<double(double)> first_cell, std::string label) {
  SingularKernelSpec k;
  k.kind = Kind::closed_form;
  k.exponent = clean_exponent(exponent);
  k.regular = std::move(regular);
  k.first_cell = std::move(first_cell);
  k.label = std::move(label);
  k.validate();
  return k;
}

SingularKernelSpec SingularKernelSpec::tabulated(GridFunction table, std::string label) {
  SingularKernelSpec k;
  k.kind = Kind::tabulated;
  k.exponent = table.left_exponent;
  if (table.t0 != 0.0) throw config_error("tabulated kernel must start at 0");
  k.table = std::make_shared<const GridFunction>(std::move(table));
  k.label = label.empty() ? "tabulated" : std::move(label);
  k.validate();
  return k;
}

void SingularKernelSpec::validate() const {
  if (!(exponent < 1.0)) throw std::domain_error("kernel not integrable: singular exponent " + std::to_string(exponent) + " >= 1");
  if (kind == Kind::closed_form && !regular) throw config_error("closed-form kernel without regular part");
  if (kind == Kind::tabulated && !table) throw config_error("tabulated kernel without table");
}

namespace {

double interp(const std::vector<double>& r, double step, double x) {
  const double pos = x / step;
  const auto last = r.size() - 1;
  if (pos > static_cast<double>(last) * (1.0 + 1e-12)) throw config_error("tabulated kernel evaluated beyond its table");
  auto i = static_cast<std::size_t>(pos);
  if (i >= last) return r[last];
  const double w = pos - static_cast<double>(i);
  return (1.0 - w) * r[i] + w * r[i + 1];
}

}  // namespace

double SingularKernelSpec::operator()(double x) const {
  switch (kind) {
    case Kind::power:
      return scale * std::pow(x, alpha - 1.0);
    case Kind::closed_form:
      return scale * std::pow(x, -exponent) * regular(x);
    case Kind::tabulated:
      return scale * std::pow(x, -exponent) * interp(table->regular(), table->step(), x);
  }
  return 0.0;
}

std::vector<double> SingularKernelSpec::regular_samples(double step, std::size_t count) const {
  std::vector<double> r(count);
  switch (kind) {
    case Kind::power:
      for (auto& v : r) v = scale;
      return r;
    case Kind::closed_form:
      for (std::size_t m = 1; m < count; ++m) r[m] = scale * regular(step * static_cast<double>(m));
      break;
    case Kind::tabulated: {
      const auto rt = table->regular();
      const double ts = table->step();
      const bool aligned = std::abs(ts - step) <= 1e-12 * step && count <= rt.size();
      for (std::size_t m = 0; m < count; ++m)
        r[m] = scale * (aligned ? rt[m] : interp(rt, ts, step * static_cast<double>(m)));
      break;
    }
  }
  if (kind == Kind::closed_form) {
    if (first_cell) {
      // moment matching on the first cell for the linear interpolant of r
      const double s = exponent;
      const double hp = std::pow(step, 1.0 - s);
      const double r1 = count > 1 ? r[1] : scale * regular(step);
      r[0] = (scale * first_cell(step) - r1 * hp / (2.0 - s)) / (hp / ((1.0 - s) * (2.0 - s)));
    } else {
      r[0] = scale * regular(0.0);
    }
  }
  return r;
}

GridFunction SingularKernelSpec::on_grid(double t0, double t1, std::size_t n) const {
  const double step = (t1 - t0) / static_cast<double>(n);
  return GridFunction::from_regular(t0, t1, n, regular_samples(step, n + 1), exponent, 0.0);
}

SingularKernelSpec SingularKernelSpec::scaled(double c) const {
  SingularKernelSpec k = *this;
  k.scale *= c;
  return k;
}

}  // namespace gvp
