// Copyright 2026 The iasolve Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IASOLVE_CONCAVE_FUNCTION_H_
#define IASOLVE_CONCAVE_FUNCTION_H_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace iasolve {

// c*t^4 + d*t^3 + e*t^2 + h*t.
struct Poly4 {
  double c = 0.0;
  double d = 0.0;
  double e = 0.0;
  double h = 0.0;

  bool operator==(const Poly4&) const = default;
};

// c*ln(t) + d*t. The log part is dropped when c == 0.
struct LogLinear {
  double c = 0.0;
  double d = 0.0;

  bool operator==(const LogLinear&) const = default;
};

// gamma*sqrt(t).
struct SqrtScaled {
  double gamma = 1.0;

  bool operator==(const SqrtScaled&) const = default;
};

// a*t^p.
struct PowerScaled {
  double a = -1.0;
  double p = 1.5;

  bool operator==(const PowerScaled&) const = default;
};

// Piecewise-linear interpolation through (point, value) pairs sorted by point.
struct Tabulated {
  std::vector<std::pair<double, double>> points;

  bool operator==(const Tabulated&) const = default;
};

using FamilyParams =
    std::variant<Poly4, LogLinear, SqrtScaled, PowerScaled, Tabulated>;

// A scalar concave function given by family tag and parameters. Terms over
// several variables apply the same scalar function to every coordinate and
// sum the results.
class ConcaveFunction {
 public:
  ConcaveFunction() = default;
  explicit ConcaveFunction(FamilyParams params);

  const FamilyParams& params() const { return params_; }
  std::string_view family_name() const;

  // True when Value(t) is finite and well defined.
  bool Evaluable(double t) const;

  // Throws std::domain_error when !Evaluable(t).
  double Value(double t) const;

  // Analytic derivative; nullopt where it is unbounded (sqrt at 0) or
  // undefined. Tabulated returns the slope of the segment to the right of t
  // (left segment at the last point).
  std::optional<double> Slope(double t) const;

  // Maximum of the function over [lo, hi]. Uses the monotone derivative of a
  // concave function; exact up to bisection precision.
  double MaxOver(double lo, double hi) const;

  friend bool operator==(const ConcaveFunction& a, const ConcaveFunction& b);

 private:
  FamilyParams params_ = Poly4{};
};

}  // namespace iasolve

#endif  // IASOLVE_CONCAVE_FUNCTION_H_
