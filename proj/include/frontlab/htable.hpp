#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace frontlab {

class HRangeExceeded : public std::domain_error {
 public:
  explicit HRangeExceeded(const std::string& w) : std::domain_error(w) {}
};

// Monotone calibration table for the comparison function h: increasing knots
// v_j with nondecreasing values h_j < 1, h(0) = 0 implicit, h(v) <= min(v,1).
// Lookups interpolate linearly; beyond the last knot h clamps (conservative,
// since h is increasing).
struct HTable {
  std::vector<double> v;
  std::vector<double> h;
  std::string id;  // content hash, referenced by certificates
  std::map<std::string, std::string> meta;

  double eval(double vv) const;
  // Smallest v with h(v) >= y; throws HRangeExceeded when y is above the
  // table's reach.
  double inverse(double y) const;
  double max_h() const { return h.empty() ? 0.0 : h.back(); }

  // Throws std::invalid_argument on any violated invariant.
  void check() const;

  void recompute_id();

  static HTable from_function(const std::function<double(double)>& fn, double vmin, double vmax,
                              std::size_t knots, const std::string& name);
  static HTable from_samples(std::vector<std::pair<double, double>> v_u_pairs);

  std::string to_json() const;
  static HTable from_json_text(const std::string& text);
  static HTable load(const std::string& path);
  void save(const std::string& path) const;
};

}  // namespace frontlab
