#include "frontlab/htable.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace frontlab {

namespace {

std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h = 0xcbf29ce484222325ULL) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

double HTable::eval(double vv) const {
  if (v.empty()) throw std::invalid_argument("HTable::eval: empty table");
  if (vv <= 0.0) return 0.0;
  if (vv <= v.front()) return h.front() * (vv / v.front());  // h(0) = 0 anchor
  if (vv >= v.back()) return h.back();
  auto it = std::upper_bound(v.begin(), v.end(), vv);
  std::size_t j = static_cast<std::size_t>(it - v.begin());
  double f = (vv - v[j - 1]) / (v[j] - v[j - 1]);
  return h[j - 1] + f * (h[j] - h[j - 1]);
}

double HTable::inverse(double y) const {
  if (v.empty()) throw std::invalid_argument("HTable::inverse: empty table");
  if (y <= 0.0) throw std::invalid_argument("HTable::inverse: level must be positive");
  if (y > h.back()) {
    std::ostringstream m;
    m << "HTable::inverse: level " << y << " above table maximum " << h.back();
    throw HRangeExceeded(m.str());
  }
  if (y <= h.front()) return v.front() * (y / h.front());
  auto it = std::lower_bound(h.begin(), h.end(), y);
  std::size_t j = static_cast<std::size_t>(it - h.begin());
  if (h[j] == y) {
    // plateaus: return the smallest knot attaining y
    while (j > 0 && h[j - 1] == y) --j;
    return v[j];
  }
  double f = (y - h[j - 1]) / (h[j] - h[j - 1]);
  return v[j - 1] + f * (v[j] - v[j - 1]);
}

void HTable::check() const {
  if (v.size() != h.size() || v.empty()) throw std::invalid_argument("HTable: bad knot arrays");
  if (v.front() > 1e-3)
    throw std::invalid_argument("HTable: smallest knot must be <= 1e-3 to anchor the slope");
  double q = h.front() / v.front();
  if (q < 0.9 || q > 1.0)
    throw std::invalid_argument("HTable: difference quotient at 0 outside [0.9, 1.0]");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0) || !std::isfinite(v[i])) throw std::invalid_argument("HTable: bad knot v");
    if (i > 0 && !(v[i] > v[i - 1])) throw std::invalid_argument("HTable: knots not increasing");
    if (i > 0 && h[i] < h[i - 1]) throw std::invalid_argument("HTable: values not nondecreasing");
    if (!(h[i] >= 0.0) || h[i] >= 1.0) throw std::invalid_argument("HTable: values must be in [0,1)");
    if (h[i] > std::min(v[i], 1.0) + 1e-15)
      throw std::invalid_argument("HTable: h(v) must stay below min(v,1)");
  }
}

void HTable::recompute_id() {
  std::uint64_t acc = fnv1a(v.data(), v.size() * sizeof(double));
  acc = fnv1a(h.data(), h.size() * sizeof(double), acc);
  char buf[32];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(acc));
  id = buf;
}

HTable HTable::from_function(const std::function<double(double)>& fn, double vmin, double vmax,
                             std::size_t knots, const std::string& name) {
  HTable t;
  double lmin = std::log(vmin), lmax = std::log(vmax);
  for (std::size_t i = 0; i < knots; ++i) {
    double vv = std::exp(lmin + (lmax - lmin) * static_cast<double>(i) /
                                    static_cast<double>(knots - 1));
    double hh = std::min({fn(vv), vv, 1.0 - 1e-9});
    t.v.push_back(vv);
    t.h.push_back(hh);
  }
  // enforce monotonicity against rounding
  for (std::size_t i = 1; i < t.h.size(); ++i) t.h[i] = std::max(t.h[i], t.h[i - 1]);
  t.meta["source"] = name;
  t.recompute_id();
  t.check();
  return t;
}

HTable HTable::from_samples(std::vector<std::pair<double, double>> pairs) {
  if (pairs.empty()) throw std::invalid_argument("HTable::from_samples: no samples");
  std::sort(pairs.begin(), pairs.end());
  // Running minimum from the right: h(v) = min{u_s : v_s >= v} is the
  // largest nondecreasing function below every sample.
  std::vector<double> vv, hh;
  vv.reserve(pairs.size());
  hh.reserve(pairs.size());
  double runmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = pairs.size(); i-- > 0;) {
    runmin = std::min(runmin, pairs[i].second);
    if (!vv.empty() && pairs[i].first == vv.back()) {
      hh.back() = runmin;
      continue;
    }
    vv.push_back(pairs[i].first);
    hh.push_back(runmin);
  }
  std::reverse(vv.begin(), vv.end());
  std::reverse(hh.begin(), hh.end());
  HTable t;
  for (std::size_t i = 0; i < vv.size(); ++i) {
    double capped = std::min({hh[i], vv[i], 1.0 - 1e-9});
    t.v.push_back(vv[i]);
    t.h.push_back(std::max(capped, 0.0));
  }
  for (std::size_t i = 1; i < t.h.size(); ++i) t.h[i] = std::max(t.h[i], t.h[i - 1]);
  t.recompute_id();
  return t;
}

std::string HTable::to_json() const {
  nlohmann::ordered_json j;
  j["id"] = id;
  j["meta"] = meta;
  j["v"] = v;
  j["h"] = h;
  return j.dump();
}

HTable HTable::from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  HTable t;
  t.id = j.at("id").get<std::string>();
  t.v = j.at("v").get<std::vector<double>>();
  t.h = j.at("h").get<std::vector<double>>();
  if (j.contains("meta"))
    t.meta = j.at("meta").get<std::map<std::string, std::string>>();
  return t;
}

HTable HTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open h-table: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

void HTable::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write h-table: " + path);
  out << to_json() << "\n";
}

}  // namespace frontlab
