#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

namespace devratio {

struct Breakpoint {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

/// A scalar function of the flow on one arc: either a polynomial
/// c0 + c1 x + c2 x^2 + ... or a continuous piecewise-linear function given by
/// sorted breakpoints.
///
/// Piecewise-linear functions are flat to the left of the first breakpoint and
/// continue the slope of the last segment to the right of the last one, so a
/// two-breakpoint ramp [(a, 0), (b, h)] is `h * max(0, x - a) / (b - a)`.
/// Appending a third breakpoint at the same height caps the ramp.
///
/// No sign restriction is imposed here; see LatencyFn for the validated
/// non-negative, non-decreasing variant.
class ScalarFn {
 public:
  ScalarFn() : rep_(Polynomial{}) {}

  static ScalarFn zero() { return ScalarFn(); }
  static ScalarFn constant(double c);
  static ScalarFn polynomial(std::vector<double> coefficients);
  static ScalarFn piecewise_linear(std::vector<Breakpoint> points);
  /// h * max(0, x - start) / (end - start), unbounded to the right.
  static ScalarFn ramp(double start, double end, double height);
  /// 0 up to `start`, linear to `height` at `end`, constant afterwards.
  static ScalarFn capped_ramp(double start, double end, double height);

  double operator()(double x) const;
  /// Integral from 0 to x (x >= 0).
  double integral(double x) const;

  ScalarFn scaled(double factor) const;

  bool is_polynomial() const { return std::holds_alternative<Polynomial>(rep_); }
  bool is_zero() const;
  std::span<const double> coefficients() const;
  std::span<const Breakpoint> breakpoints() const;

  /// Largest breakpoint abscissa (0 for polynomials).
  double last_breakpoint() const;

  /// Sample points used for grid checks on [0, upto]: 64 per unit interval
  /// plus every breakpoint inside the range.
  std::vector<double> sample_grid(double upto) const;

  /// Compact human-readable form, e.g. "1+2x^2" or "pwl[(0,0);(1,2)]".
  std::string describe() const;

  friend bool operator==(const ScalarFn& a, const ScalarFn& b) = default;

 private:
  struct Polynomial {
    std::vector<double> c;
    friend bool operator==(const Polynomial&, const Polynomial&) = default;
  };
  struct PiecewiseLinear {
    std::vector<Breakpoint> pts;
    friend bool operator==(const PiecewiseLinear&, const PiecewiseLinear&) = default;
  };

  explicit ScalarFn(Polynomial p) : rep_(std::move(p)) {}
  explicit ScalarFn(PiecewiseLinear p) : rep_(std::move(p)) {}

  std::variant<Polynomial, PiecewiseLinear> rep_;
};

/// Grid used for the feasibility and monotonicity checks: 64 samples per unit
/// on [0, upto] merged with the breakpoints of every supplied function.
std::vector<double> merged_sample_grid(double upto, std::span<const ScalarFn* const> fns);

/// A latency function: finite, non-negative, non-decreasing and continuous on
/// [0, inf). Polynomials must have non-negative coefficients; piecewise-linear
/// functions must have non-negative, non-decreasing breakpoint values.
class LatencyFn {
 public:
  LatencyFn() = default;
  /// Throws Error(InvalidInput) if the function violates the invariants.
  explicit LatencyFn(ScalarFn fn);

  static LatencyFn constant(double c) { return LatencyFn(ScalarFn::constant(c)); }
  static LatencyFn polynomial(std::vector<double> c) { return LatencyFn(ScalarFn::polynomial(std::move(c))); }
  static LatencyFn linear() { return polynomial({0.0, 1.0}); }

  double operator()(double x) const { return fn_(x); }
  double integral(double x) const { return fn_.integral(x); }
  const ScalarFn& fn() const { return fn_; }

  friend bool operator==(const LatencyFn&, const LatencyFn&) = default;

 private:
  ScalarFn fn_;
};

}  // namespace devratio
