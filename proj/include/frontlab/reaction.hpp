#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace frontlab {

// Reaction nonlinearity on [0,1].  The checks mirror the standing
// hypotheses: f(0) = f(1) = 0, f > 0 strictly inside, f(u) <= u, unit slope
// at the origin.
struct ReactionFn {
  std::string name;
  std::map<std::string, double> params;
  std::function<double(double)> f;

  double operator()(double u) const { return f(u); }

  // Returns the list of violated checks; empty means admissible.
  std::vector<std::string> check() const;

  static ReactionFn logistic();  // u (1 - u)
  // Piecewise-linear reaction from samples on [0,1]; endpoints pinned to 0.
  static ReactionFn from_samples(std::vector<std::pair<double, double>> samples,
                                 const std::string& name);
};

}  // namespace frontlab
