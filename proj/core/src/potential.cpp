#include "gpbound/potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace gpbound {

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument("potential: " + what);
}

}  // namespace

Potential::Potential(std::vector<PotentialSegment> segments,
                     std::vector<DeltaDefect> deltas,
                     std::optional<SampledGrid> sampled)
    : segments_(std::move(segments)),
      deltas_(std::move(deltas)),
      sampled_(std::move(sampled)) {
  std::sort(segments_.begin(), segments_.end(),
            [](const PotentialSegment& a, const PotentialSegment& b) {
              return a.from < b.from;
            });
  for (const auto& s : segments_) {
    require(std::isfinite(s.from) && std::isfinite(s.to) && std::isfinite(s.v),
            "segment fields must be finite");
    require(s.from < s.to, "segment must have from < to");
  }
  for (std::size_t i = 1; i < segments_.size(); ++i)
    require(segments_[i].from >= segments_[i - 1].to - 1e-15,
            "segments must not overlap");
  if (sampled_) {
    require(sampled_->dtau > 0.0, "sampled grid needs dtau > 0");
    require(sampled_->values.size() >= 2, "sampled grid needs >= 2 points");
  }

  bool any = false;
  double lo = 0.0, hi = 0.0;
  auto extend = [&](double a, double b) {
    if (!any) {
      lo = a;
      hi = b;
      any = true;
    } else {
      lo = std::min(lo, a);
      hi = std::max(hi, b);
    }
  };
  for (const auto& s : segments_) extend(s.from, s.to);
  if (sampled_) {
    const double half = sampled_->dtau / 2;
    extend(sampled_->tau0 - half,
           sampled_->tau0 + (double(sampled_->values.size()) - 0.5) * sampled_->dtau);
  }
  for (const auto& d : deltas_) {
    require(std::isfinite(d.at) && std::isfinite(d.strength),
            "delta fields must be finite");
    if (!segments_.empty() || sampled_)
      require(d.at >= lo - 1e-12 && d.at <= hi + 1e-12,
              "delta position outside declared support");
    extend(d.at, d.at);
  }
  lo_ = lo;
  hi_ = hi;
  std::sort(deltas_.begin(), deltas_.end(),
            [](const DeltaDefect& a, const DeltaDefect& b) { return a.at < b.at; });
}

Potential Potential::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("potential: JSON parse error: ") + e.what());
  }
  std::vector<PotentialSegment> segs;
  std::vector<DeltaDefect> deltas;
  std::optional<SampledGrid> sampled;
  bool any = false;
  if (j.contains("segments")) {
    any = true;
    for (const auto& s : j.at("segments"))
      segs.push_back({s.at("from").get<double>(), s.at("to").get<double>(),
                      s.at("v").get<double>()});
  }
  if (j.contains("deltas")) {
    any = true;
    for (const auto& d : j.at("deltas"))
      deltas.push_back({d.at("at").get<double>(), d.at("strength").get<double>()});
  }
  if (j.contains("sampled")) {
    any = true;
    const auto& s = j.at("sampled");
    sampled = SampledGrid{s.at("tau0").get<double>(), s.at("dtau").get<double>(),
                          s.at("values").get<std::vector<double>>()};
  }
  require(any, "JSON must contain at least one of segments/deltas/sampled");
  return Potential(std::move(segs), std::move(deltas), std::move(sampled));
}

Potential Potential::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("potential: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

Potential Potential::square_well(double v0, double tau0) {
  return Potential({{-tau0, tau0, -v0}});
}

Potential Potential::single_delta(double strength, double at) {
  return Potential({}, {{at, strength}});
}

bool Potential::empty() const {
  return segments_.empty() && deltas_.empty() && !sampled_;
}

double Potential::value(double tau) const {
  double v = 0.0;
  for (const auto& s : segments_) {
    if (tau < s.from) break;
    if (tau < s.to) v += s.v;
  }
  if (sampled_) {
    const auto& g = *sampled_;
    const double idx = std::round((tau - g.tau0) / g.dtau);
    if (idx >= 0 && idx < double(g.values.size())) {
      const double center = g.tau0 + idx * g.dtau;
      if (std::abs(tau - center) <= g.dtau / 2)
        v += g.values[std::size_t(idx)];
    }
  }
  return v;
}

std::vector<double> Potential::breakpoints(double from, double to) const {
  std::vector<double> pts;
  auto add = [&](double t) {
    if (t > from && t < to) pts.push_back(t);
  };
  for (const auto& s : segments_) {
    add(s.from);
    add(s.to);
  }
  for (const auto& d : deltas_) add(d.at);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace gpbound
