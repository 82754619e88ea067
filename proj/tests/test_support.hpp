#pragma once

#include <cmath>
#include <ostream>
#include <string>

#include "liftgeo/expr.hpp"
#include "liftgeo/geometry.hpp"
#include "liftgeo/numeric.hpp"

namespace liftgeo {

// Readable gtest failure messages.
inline void PrintTo(const Expr& e, std::ostream* os) { *os << e.str(); }
inline std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << e.str(); }

namespace testing_support {

// Numeric point with exponential stand-ins a*exp(b*x) for abstract functions,
// so every derivative order is consistent. Constants a, c1, c2, e1, e2 are bound too.
inline NumericPoint numeric_point(const Chart& chart, int probe) {
  static const ProbeConfig cfg = [] {
    ProbeConfig c;
    c.seed = 99;
    return c;
  }();
  const ProbeSampler sampler(cfg);
  NumericPoint p;
  for (const auto& c : chart.coords()) p.symbols[c] = sampler.uniform(probe, 0, c, cfg.interval_for(c));
  for (const char* c : {"a", "c1", "c2", "e1", "e2"}) p.symbols[c] = sampler.uniform(probe, 0, c, {0.5, 2.0});
  p.functions = [probe, sampler](const std::string& name, unsigned order, double x) {
    const double a = sampler.uniform(probe, 0, "a:" + name, {1.0, 2.0});
    const double b = sampler.uniform(probe, 0, "b:" + name, {-0.5, 0.5});
    return a * std::pow(b, order) * std::exp(b * x);
  };
  return p;
}

}  // namespace testing_support
}  // namespace liftgeo
