#include "apdec/factor.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace apdec {

Factor Factor::trivial(i64 n) {
  Factor f;
  f.ambient = n;
  f.part_id.assign(size_t(n), 0);
  f.parts.resize(1);
  for (i64 x = 1; x <= n; ++x) f.parts[0].push_back(x);
  return f;
}

Factor Factor::singletons(i64 n) {
  Factor f;
  f.ambient = n;
  f.part_id.resize(size_t(n));
  f.parts.resize(size_t(n));
  for (i64 x = 1; x <= n; ++x) {
    f.part_id[size_t(x - 1)] = x - 1;
    f.parts[size_t(x - 1)] = {x};
  }
  return f;
}

bool Factor::consistent() const {
  if (i64(part_id.size()) != ambient) return false;
  std::vector<i64> seen(parts.size(), 0);
  for (i64 x = 1; x <= ambient; ++x) {
    i64 p = part_id[size_t(x - 1)];
    if (p < 0 || p >= i64(parts.size())) return false;
    ++seen[size_t(p)];
  }
  i64 total = 0;
  for (size_t p = 0; p < parts.size(); ++p) {
    if (parts[p].empty()) return false;
    if (i64(parts[p].size()) != seen[p]) return false;
    for (i64 x : parts[p]) {
      if (x < 1 || x > ambient || part_id[size_t(x - 1)] != i64(p)) return false;
    }
    total += i64(parts[p].size());
  }
  return total == ambient;
}

Factor induced_factor(const Eigen::ArrayXd& g, i64 k_resolution) {
  if (k_resolution < 1) throw ConfigInvalid("induced_factor: K >= 1");
  const i64 n = g.size();
  Factor f;
  f.ambient = n;
  f.part_id.resize(size_t(n));
  std::map<i64, i64> bucket_to_part;  // ordered: deterministic part layout
  for (i64 x = 1; x <= n; ++x) {
    i64 bucket = i64(std::floor(double(k_resolution) * g[x - 1]));
    auto it = bucket_to_part.find(bucket);
    if (it == bucket_to_part.end())
      it = bucket_to_part.emplace(bucket, i64(bucket_to_part.size())).first;
    f.part_id[size_t(x - 1)] = it->second;
  }
  // Renumber so parts appear in increasing bucket order.
  std::vector<i64> renumber(bucket_to_part.size());
  i64 next = 0;
  for (auto& [bucket, id] : bucket_to_part) renumber[size_t(id)] = next++;
  f.parts.resize(bucket_to_part.size());
  for (i64 x = 1; x <= n; ++x) {
    i64 p = renumber[size_t(f.part_id[size_t(x - 1)])];
    f.part_id[size_t(x - 1)] = p;
    f.parts[size_t(p)].push_back(x);
  }
  f.provenance.push_back({"induced", k_resolution, 0.0});
  return f;
}

Factor join(std::span<const Factor> factors) {
  if (factors.empty()) throw ConfigInvalid("join: need at least one factor");
  const i64 n = factors[0].ambient;
  for (const auto& f : factors)
    if (f.ambient != n) throw AmbientMismatch("join: mixed ambient [N]");
  Factor out;
  out.ambient = n;
  out.part_id.resize(size_t(n));
  std::map<std::vector<i64>, i64> key_to_part;
  for (i64 x = 1; x <= n; ++x) {
    std::vector<i64> key;
    key.reserve(factors.size());
    for (const auto& f : factors) key.push_back(f.part_id[size_t(x - 1)]);
    auto [it, inserted] = key_to_part.emplace(std::move(key), i64(key_to_part.size()));
    out.part_id[size_t(x - 1)] = it->second;
  }
  // Deterministic order: sort parts by their key tuples.
  std::vector<i64> renumber(key_to_part.size());
  i64 next = 0;
  for (auto& [key, id] : key_to_part) renumber[size_t(id)] = next++;
  out.parts.resize(key_to_part.size());
  for (i64 x = 1; x <= n; ++x) {
    i64 p = renumber[size_t(out.part_id[size_t(x - 1)])];
    out.part_id[size_t(x - 1)] = p;
    out.parts[size_t(p)].push_back(x);
  }
  for (const auto& f : factors)
    out.provenance.insert(out.provenance.end(), f.provenance.begin(),
                          f.provenance.end());
  return out;
}

Factor join(const Factor& a, const Factor& b) {
  std::vector<Factor> fs{a, b};
  return join(fs);
}

namespace {

template <typename Array>
Array project_impl(const Factor& b, const Array& f) {
  if (i64(f.size()) != b.ambient) throw AmbientMismatch("project: wrong length");
  Array out(f.size());
  for (const auto& part : b.parts) {
    auto acc = f[part[0] - 1];
    for (size_t i = 1; i < part.size(); ++i) acc += f[part[i] - 1];
    acc /= double(part.size());
    for (i64 x : part) out[x - 1] = acc;
  }
  return out;
}

}  // namespace

Eigen::ArrayXcd project(const Factor& b, const Eigen::ArrayXcd& f) {
  return project_impl(b, f);
}

Eigen::ArrayXd project(const Factor& b, const Eigen::ArrayXd& f) {
  return project_impl(b, f);
}

std::vector<Rat> project(const Factor& b, const std::vector<Rat>& f) {
  if (i64(f.size()) != b.ambient) throw AmbientMismatch("project: wrong length");
  std::vector<Rat> out(f.size());
  for (const auto& part : b.parts) {
    Rat acc;
    for (i64 x : part) acc += f[size_t(x - 1)];
    acc /= Rat(i64(part.size()));
    for (i64 x : part) out[size_t(x - 1)] = acc;
  }
  return out;
}

double energy(const Factor& b, const Eigen::ArrayXcd& f) {
  if (i64(f.size()) != b.ambient) throw AmbientMismatch("energy: wrong length");
  double acc = 0.0;
  for (const auto& part : b.parts) {
    cd s(0.0, 0.0);
    for (i64 x : part) s += f[x - 1];
    acc += std::norm(s) / double(part.size());
  }
  return acc / double(b.ambient);
}

double energy(const Factor& b, const Eigen::ArrayXd& f) {
  Eigen::ArrayXcd c = f.cast<cd>();
  return energy(b, c);
}

Rat energy_exact(const Factor& b, const std::vector<Rat>& f) {
  if (i64(f.size()) != b.ambient) throw AmbientMismatch("energy: wrong length");
  Rat acc;
  for (const auto& part : b.parts) {
    Rat s;
    for (i64 x : part) s += f[size_t(x - 1)];
    acc += s * s / Rat(i64(part.size()));
  }
  return acc / Rat(b.ambient);
}

RegularityReport regularity(const Eigen::ArrayXd& g, i64 k_resolution,
                            double t) {
  if (k_resolution < 1) throw ConfigInvalid("regularity: K >= 1");
  const i64 n = g.size();
  RegularityReport rep;
  rep.r_floor = 1.0 / (4.0 * double(n) * double(k_resolution));
  std::vector<double> dist(static_cast<size_t>(n));
  for (i64 x = 0; x < n; ++x) {
    double v = double(k_resolution) * g[x] - t;
    double fr = v - std::floor(v);
    dist[size_t(x)] = std::min(fr, 1.0 - fr);
  }
  std::sort(dist.begin(), dist.end());
  // The step ratio count(r)/(2rN) is maximal at realized distances; radii
  // below the floor are clamped (atoms at the cut would otherwise diverge).
  for (size_t i = 0; i < dist.size(); ++i) {
    if (i + 1 < dist.size() && dist[i + 1] == dist[i]) continue;  // same radius
    double r = dist[i];
    double r_eff = std::max(r, rep.r_floor);
    double ratio = double(i + 1) / (2.0 * r_eff * double(n));
    ++rep.grid_size;
    if (ratio > rep.constant) {
      rep.constant = ratio;
      rep.floor_bound = r < rep.r_floor;
    }
  }
  // r = 1/2 always belongs to the grid.
  double half_ratio = 1.0;  // count = N, ratio = N/(2*(1/2)*N)
  ++rep.grid_size;
  if (half_ratio > rep.constant) {
    rep.constant = half_ratio;
    rep.floor_bound = false;
  }
  return rep;
}

double select_shift(const Eigen::ArrayXd& g, i64 k_resolution,
                    const ShiftConfig& cfg) {
  Rng rng(cfg.seed);
  for (int trial = 0; trial < cfg.budget; ++trial) {
    double u = rng.next_double();  // shift t = u / K
    double t_scaled = u == 0.0 ? 0.0 : 1.0 - u;  // {-K t} for the cut test
    RegularityReport rep = regularity(g, k_resolution, t_scaled);
    if (rep.constant <= cfg.c) return u / double(k_resolution);
  }
  throw ShiftNotFound("select_shift: no C-regular shift within budget (C=" +
                      std::to_string(cfg.c) + ")");
}

}  // namespace apdec
