#include "frontlab/reaction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace frontlab {

std::vector<std::string> ReactionFn::check() const {
  std::vector<std::string> bad;
  auto complain = [&](const std::string& s) { bad.push_back(name + ": " + s); };
  if (std::fabs(f(0.0)) > 1e-12) complain("f(0) != 0");
  if (std::fabs(f(1.0)) > 1e-12) complain("f(1) != 0");
  bool pos_ok = true, dom_ok = true;
  for (int k = 1; k < 1000; ++k) {
    double u = static_cast<double>(k) / 1000.0;
    double v = f(u);
    if (!(v > 0.0)) pos_ok = false;
    if (v > u + 1e-12) dom_ok = false;
  }
  if (!pos_ok) complain("f not strictly positive on (0,1)");
  if (!dom_ok) complain("f(u) exceeds u somewhere on (0,1)");
  double q = (f(1e-8) - f(0.0)) / 1e-8;
  if (std::fabs(q - 1.0) > 1e-6) {
    std::ostringstream m;
    m << "one-sided slope at 0 is " << q << ", not 1 within 1e-6";
    complain(m.str());
  }
  return bad;
}

ReactionFn ReactionFn::logistic() {
  ReactionFn r;
  r.name = "logistic";
  r.f = [](double u) { return u * (1.0 - u); };
  return r;
}

ReactionFn ReactionFn::from_samples(std::vector<std::pair<double, double>> samples,
                                    const std::string& name) {
  if (samples.size() < 2) throw std::invalid_argument("ReactionFn::from_samples: too few samples");
  std::sort(samples.begin(), samples.end());
  if (samples.front().first > 0.0) samples.insert(samples.begin(), {0.0, 0.0});
  if (samples.back().first < 1.0) samples.push_back({1.0, 0.0});
  ReactionFn r;
  r.name = name;
  r.f = [samples](double u) {
    if (u <= samples.front().first) return samples.front().second;
    if (u >= samples.back().first) return samples.back().second;
    auto it = std::upper_bound(samples.begin(), samples.end(), std::make_pair(u, 1e300));
    auto lo = it - 1;
    double f = (u - lo->first) / (it->first - lo->first);
    return lo->second + f * (it->second - lo->second);
  };
  return r;
}

}  // namespace frontlab
