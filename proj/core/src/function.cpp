#include "devratio/function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "devratio/errors.hpp"

namespace devratio {
namespace {

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

// Linear piece through (x0, y0) with slope s, integrated over [a, b].
double integrate_linear(double x0, double y0, double s, double a, double b) {
  if (b <= a) return 0.0;
  const double ya = y0 + s * (a - x0);
  const double yb = y0 + s * (b - x0);
  return 0.5 * (ya + yb) * (b - a);
}

}  // namespace

ScalarFn ScalarFn::constant(double c) { return polynomial({c}); }

ScalarFn ScalarFn::polynomial(std::vector<double> coefficients) {
  for (double c : coefficients) {
    if (!std::isfinite(c)) fail(ErrorCode::InvalidInput, "polynomial coefficient is not finite");
  }
  while (!coefficients.empty() && coefficients.back() == 0.0) coefficients.pop_back();
  return ScalarFn(Polynomial{std::move(coefficients)});
}

ScalarFn ScalarFn::piecewise_linear(std::vector<Breakpoint> points) {
  if (points.empty()) fail(ErrorCode::InvalidInput, "piecewise-linear function needs at least one breakpoint");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i].x) || !std::isfinite(points[i].y)) {
      fail(ErrorCode::InvalidInput, "breakpoint is not finite");
    }
    if (i > 0 && !(points[i].x > points[i - 1].x)) {
      fail(ErrorCode::InvalidInput, "breakpoints must have strictly increasing x (no jumps)");
    }
  }
  return ScalarFn(PiecewiseLinear{std::move(points)});
}

ScalarFn ScalarFn::ramp(double start, double end, double height) {
  return piecewise_linear({{start, 0.0}, {end, height}});
}

ScalarFn ScalarFn::capped_ramp(double start, double end, double height) {
  return piecewise_linear({{start, 0.0}, {end, height}, {end + 1.0, height}});
}

double ScalarFn::operator()(double x) const {
  if (const auto* p = std::get_if<Polynomial>(&rep_)) {
    double acc = 0.0;
    for (auto it = p->c.rbegin(); it != p->c.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  const auto& pts = std::get<PiecewiseLinear>(rep_).pts;
  if (pts.size() == 1 || x <= pts.front().x) return pts.front().y;
  if (x >= pts.back().x) {
    const auto& a = pts[pts.size() - 2];
    const auto& b = pts.back();
    return b.y + (b.y - a.y) / (b.x - a.x) * (x - b.x);
  }
  auto it = std::upper_bound(pts.begin(), pts.end(), x,
                             [](double v, const Breakpoint& bp) { return v < bp.x; });
  const auto& b = *it;
  const auto& a = *(it - 1);
  return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
}

double ScalarFn::integral(double x) const {
  if (const auto* p = std::get_if<Polynomial>(&rep_)) {
    double acc = 0.0;
    for (std::size_t k = p->c.size(); k-- > 0;) acc = acc * x + p->c[k] / static_cast<double>(k + 1);
    return acc * x;
  }
  const auto& pts = std::get<PiecewiseLinear>(rep_).pts;
  if (x <= 0.0) return 0.0;
  double total = 0.0;
  // Flat part left of the first breakpoint.
  total += integrate_linear(pts.front().x, pts.front().y, 0.0, 0.0, std::min(x, pts.front().x));
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const auto& a = pts[i];
    const auto& b = pts[i + 1];
    const double s = (b.y - a.y) / (b.x - a.x);
    total += integrate_linear(a.x, a.y, s, std::max(0.0, a.x), std::min(x, b.x));
  }
  const auto& last = pts.back();
  const double tail_slope =
      pts.size() >= 2 ? (last.y - pts[pts.size() - 2].y) / (last.x - pts[pts.size() - 2].x) : 0.0;
  total += integrate_linear(last.x, last.y, tail_slope, std::max(0.0, last.x), x);
  return total;
}

ScalarFn ScalarFn::scaled(double factor) const {
  if (const auto* p = std::get_if<Polynomial>(&rep_)) {
    std::vector<double> c = p->c;
    for (double& v : c) v *= factor;
    return polynomial(std::move(c));
  }
  std::vector<Breakpoint> pts = std::get<PiecewiseLinear>(rep_).pts;
  for (auto& bp : pts) bp.y *= factor;
  return piecewise_linear(std::move(pts));
}

bool ScalarFn::is_zero() const {
  if (const auto* p = std::get_if<Polynomial>(&rep_)) return p->c.empty();
  const auto& pts = std::get<PiecewiseLinear>(rep_).pts;
  return std::all_of(pts.begin(), pts.end(), [](const Breakpoint& b) { return b.y == 0.0; });
}

std::span<const double> ScalarFn::coefficients() const {
  if (const auto* p = std::get_if<Polynomial>(&rep_)) return p->c;
  return {};
}

std::span<const Breakpoint> ScalarFn::breakpoints() const {
  if (const auto* p = std::get_if<PiecewiseLinear>(&rep_)) return p->pts;
  return {};
}

double ScalarFn::last_breakpoint() const {
  const auto bps = breakpoints();
  return bps.empty() ? 0.0 : bps.back().x;
}

std::vector<double> ScalarFn::sample_grid(double upto) const {
  const ScalarFn* self = this;
  return merged_sample_grid(upto, std::span<const ScalarFn* const>(&self, 1));
}

std::string ScalarFn::describe() const {
  std::ostringstream os;
  if (const auto* p = std::get_if<Polynomial>(&rep_)) {
    if (p->c.empty()) return "0";
    bool first = true;
    for (std::size_t k = 0; k < p->c.size(); ++k) {
      if (p->c[k] == 0.0) continue;
      if (!first) os << (p->c[k] < 0 ? "-" : "+");
      else if (p->c[k] < 0) os << "-";
      first = false;
      const double mag = std::abs(p->c[k]);
      if (k == 0 || mag != 1.0) os << format_number(mag);
      if (k >= 1) os << "x";
      if (k >= 2) os << "^" << k;
    }
    return os.str();
  }
  os << "pwl[";
  const auto& pts = std::get<PiecewiseLinear>(rep_).pts;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) os << ";";
    os << "(" << format_number(pts[i].x) << "," << format_number(pts[i].y) << ")";
  }
  os << "]";
  return os.str();
}

std::vector<double> merged_sample_grid(double upto, std::span<const ScalarFn* const> fns) {
  upto = std::max(upto, 0.0);
  const auto steps = static_cast<std::size_t>(std::ceil(upto * 64.0));
  std::vector<double> grid;
  grid.reserve(steps + 2);
  for (std::size_t k = 0; k <= steps; ++k) grid.push_back(std::min(upto, static_cast<double>(k) / 64.0));
  grid.push_back(upto);
  for (const ScalarFn* fn : fns) {
    for (const auto& bp : fn->breakpoints()) {
      if (bp.x >= 0.0 && bp.x <= upto) grid.push_back(bp.x);
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

LatencyFn::LatencyFn(ScalarFn fn) : fn_(std::move(fn)) {
  if (fn_.is_polynomial()) {
    for (double c : fn_.coefficients()) {
      if (c < 0.0) fail(ErrorCode::InvalidInput, "latency polynomial needs non-negative coefficients");
    }
    return;
  }
  const auto pts = fn_.breakpoints();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].y < 0.0) fail(ErrorCode::InvalidInput, "latency breakpoint below zero");
    if (i > 0 && pts[i].y < pts[i - 1].y) fail(ErrorCode::InvalidInput, "latency must be non-decreasing");
  }
}

}  // namespace devratio
