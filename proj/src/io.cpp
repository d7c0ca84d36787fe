#include "apdec/io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace apdec::io {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json poly_json(const BinomialPoly& p) {
  ordered_json j;
  j["basis"] = "binomial";
  std::vector<std::string> coeffs;
  for (const auto& c : p.coeffs()) coeffs.push_back(c.to_string());
  j["coeffs"] = coeffs;
  return j;
}

Rat rat_from_json(const nlohmann::json& v) {
  if (v.is_string()) return Rat::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rat(v.get<i64>());
  if (v.is_number_float()) return Rat::from_double_exact(v.get<double>());
  throw ConfigInvalid("expected rational as string or number");
}

BinomialPoly poly_from_json(const nlohmann::json& j) {
  if (!j.contains("coeffs") || !j["coeffs"].is_array())
    throw ConfigInvalid("polynomial record needs a coeffs array");
  std::vector<Rat> coeffs;
  for (const auto& v : j["coeffs"]) coeffs.push_back(rat_from_json(v));
  std::string basis = j.value("basis", "binomial");
  if (basis == "binomial") return BinomialPoly(std::move(coeffs));
  if (basis == "monomial") return BinomialPoly::from_monomial(coeffs);
  throw ConfigInvalid("unknown basis '" + basis + "'");
}

nlohmann::json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("cannot open file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigInvalid("bad JSON in " + path + ": " + e.what());
  }
  return j;
}

ordered_json footer(const std::string& config) {
  ordered_json j;
  j["version"] = kVersion;
  j["config"] = config;
  j["config_hash"] = config_hash(config);
  return j;
}

ordered_json progression_json(const Progression& p) {
  ordered_json j;
  j["start"] = p.start;
  j["step"] = p.step;
  j["length"] = p.length;
  return j;
}

}  // namespace

std::string poly_to_json(const BinomialPoly& p) { return poly_json(p).dump(2); }

BinomialPoly poly_from_json_text(const std::string& text) {
  return poly_from_json(nlohmann::json::parse(text));
}

std::vector<BinomialPoly> read_polys_file(const std::string& path) {
  nlohmann::json j = parse_file(path);
  std::vector<BinomialPoly> out;
  if (j.contains("polys")) {
    for (const auto& rec : j["polys"]) out.push_back(poly_from_json(rec));
  } else {
    out.push_back(poly_from_json(j));
  }
  if (out.empty()) throw ConfigInvalid("no polynomials in " + path);
  return out;
}

void write_polys_file(const std::string& path,
                      const std::vector<BinomialPoly>& polys) {
  ordered_json j;
  j["polys"] = ordered_json::array();
  for (const auto& p : polys) j["polys"].push_back(poly_json(p));
  write_text_file(path, j.dump(2) + "\n");
}

std::vector<Rat> read_alphas_file(const std::string& path) {
  nlohmann::json j = parse_file(path);
  if (!j.contains("alphas") || !j["alphas"].is_array())
    throw ConfigInvalid("alphas file needs an 'alphas' array");
  std::vector<Rat> out;
  for (const auto& v : j["alphas"]) out.push_back(rat_from_json(v));
  if (out.empty()) throw ConfigInvalid("empty alphas array");
  return out;
}

std::vector<NilPolySeq> read_seqs_file(const std::string& path) {
  nlohmann::json j = parse_file(path);
  if (!j.contains("seqs") || !j["seqs"].is_array())
    throw ConfigInvalid("sequence file needs a 'seqs' array");
  std::vector<NilPolySeq> out;
  for (const auto& rec : j["seqs"]) {
    std::string group = rec.value("group", "");
    const NilCatalogEntry* entry = nullptr;
    if (group == "heisenberg") {
      entry = &NilCatalogEntry::heisenberg();
    } else if (group.rfind("torus:", 0) == 0) {
      int d = std::stoi(group.substr(6));
      int degree = rec.value("degree", 1);
      entry = &NilCatalogEntry::torus(d, degree);
    } else {
      throw ConfigInvalid("unknown group '" + group + "'");
    }
    std::vector<BinomialPoly> coords;
    for (const auto& c : rec["coords"]) coords.push_back(poly_from_json(c));
    while (int(coords.size()) < entry->dim()) coords.emplace_back();
    out.push_back(make_seq(*entry, std::move(coords)));
  }
  if (out.empty()) throw ConfigInvalid("no sequences in " + path);
  return out;
}

GridFunction read_function_file(const std::string& path) {
  nlohmann::json j = parse_file(path);
  GridFunction f;
  std::string domain = j.value("domain", "interval");
  if (domain == "interval")
    f.domain = Domain::interval;
  else if (domain == "cyclic")
    f.domain = Domain::cyclic;
  else
    throw ConfigInvalid("unknown domain '" + domain + "'");

  if (j.contains("set")) {
    i64 n = j.value("n", i64(0));
    if (n < 1) throw ConfigInvalid("set-indicator function needs n >= 1");
    f.values = Eigen::ArrayXcd::Zero(n);
    for (const auto& v : j["set"]) {
      i64 x = v.get<i64>();
      if (x < 1 || x > n) throw ConfigInvalid("set element outside [1, n]");
      f.values[x - 1] = cd(1.0, 0.0);
    }
    f.one_bounded = true;
    return f;
  }
  if (!j.contains("values") || !j["values"].is_array())
    throw ConfigInvalid("function file needs 'values' or 'set'");
  const auto& vals = j["values"];
  f.values = Eigen::ArrayXcd::Zero(i64(vals.size()));
  for (size_t i = 0; i < vals.size(); ++i) {
    if (vals[i].is_array()) {
      f.values[i64(i)] = cd(vals[i][0].get<double>(), vals[i][1].get<double>());
    } else {
      f.values[i64(i)] = cd(vals[i].get<double>(), 0.0);
    }
  }
  double maxabs = 0;
  for (i64 i = 0; i < f.values.size(); ++i)
    maxabs = std::max(maxabs, std::abs(f.values[i]));
  f.one_bounded = maxabs <= 1.0 + 1e-12;
  return f;
}

SetResult read_set_file(const std::string& path) {
  nlohmann::json j = parse_file(path);
  SetResult res;
  res.ambient = j.value("n", i64(0));
  if (res.ambient < 1) throw ConfigInvalid("set file needs n >= 1");
  if (!j.contains("set") || !j["set"].is_array())
    throw ConfigInvalid("set file needs a 'set' array");
  for (const auto& v : j["set"]) res.elements.push_back(v.get<i64>());
  std::sort(res.elements.begin(), res.elements.end());
  for (i64 x : res.elements)
    if (x < 1 || x > res.ambient)
      throw ConfigInvalid("set element outside [1, n]");
  res.kind = j.value("kind", "file");
  res.verified_3ap_free = j.value("verified_3ap_free", false);
  return res;
}

void write_set_file(const std::string& path, const SetResult& set) {
  ordered_json j;
  j["n"] = set.ambient;
  j["kind"] = set.kind;
  j["size"] = set.elements.size();
  j["verified_3ap_free"] = set.verified_3ap_free;
  j["set"] = set.elements;
  write_text_file(path, j.dump(2) + "\n");
}

SetResult load_set(const std::string& path_or_spec) {
  auto split = [](const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    return parts;
  };
  if (path_or_spec.rfind("salem-spencer:", 0) == 0) {
    auto p = split(path_or_spec);
    if (p.size() != 3) throw ConfigInvalid("salem-spencer:<base>:<digits>");
    return make_salem_spencer(std::stoi(p[1]), std::stoi(p[2]));
  }
  if (path_or_spec.rfind("behrend:", 0) == 0) {
    auto p = split(path_or_spec);
    if (p.size() != 3) throw ConfigInvalid("behrend:<d>:<side>");
    return make_behrend(std::stoi(p[1]), std::stoi(p[2]));
  }
  if (path_or_spec.rfind("random:", 0) == 0) {
    auto p = split(path_or_spec);
    if (p.size() != 4) throw ConfigInvalid("random:<n>:<density>:<seed>");
    return make_random(std::stoll(p[1]), std::stod(p[2]),
                       u64(std::stoull(p[3])));
  }
  if (path_or_spec.rfind("interval:", 0) == 0) {
    auto p = split(path_or_spec);
    if (p.size() != 2) throw ConfigInvalid("interval:<n>");
    return make_interval(std::stoll(p[1]));
  }
  return read_set_file(path_or_spec);
}

std::string config_hash(const std::string& canonical) {
  u64 h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", (unsigned long long)h);
  return std::string(buf);
}

std::string decomposition_report(const Decomposition& dec,
                                 const std::string& config) {
  ordered_json j;
  j["ambient_n"] = dec.ambient_n;
  j["part_count"] = dec.parts.size();
  j["min_length"] = dec.min_length;
  j["certified_diameter"] = dec.certified_diameter;
  j["measured_diameter"] = dec.measured_diameter;
  j["parts"] = ordered_json::array();
  for (const auto& p : dec.parts) j["parts"].push_back(progression_json(p));
  j["meta"] = footer(config);
  return j.dump(2) + "\n";
}

std::string nil_report(const NilDecomposeResult& res,
                       const std::string& config) {
  ordered_json j;
  j["ambient_n"] = res.dec.ambient_n;
  j["part_count"] = res.dec.parts.size();
  j["min_length"] = res.dec.min_length;
  j["passes"] = res.passes;
  j["reductions"] = res.reductions.size();
  j["singleton_fallbacks"] = res.singleton_fallbacks;
  j["certified_diameter"] = res.dec.certified_diameter;
  j["measured_diameter"] = res.dec.measured_diameter;
  j["metric_note"] =
      "surrogate homogeneous-norm quotient metric (catalog-specific stand-in)";
  j["parts"] = ordered_json::array();
  for (const auto& p : res.dec.parts) j["parts"].push_back(progression_json(p));
  j["meta"] = footer(config);
  return j.dump(2) + "\n";
}

std::string witness_report(const SchmidtWitness& w, const std::string& config) {
  ordered_json j;
  j["n"] = w.n;
  j["achieved"] = w.achieved;
  j["achieved_exact"] = w.achieved_exact;
  j["method"] = w.method == SchmidtMethod::brute ? "brute" : "lattice";
  j["meta"] = footer(config);
  return j.dump(2) + "\n";
}

std::string scaling_report_json(const ScalingReport& rep,
                                const std::string& config) {
  ordered_json j;
  j["k"] = rep.k;
  j["d"] = rep.d;
  j["n_grid"] = rep.n_grid;
  j["trials"] = rep.trials;
  j["geo_mean"] = rep.geo_mean;
  j["fitted_slope"] = rep.fitted_slope;
  j["monotone_ok"] = rep.monotone_ok;
  j["values"] = rep.values;
  j["meta"] = footer(config);
  return j.dump(2) + "\n";
}

std::string scaling_report_csv(const ScalingReport& rep) {
  std::ostringstream os;
  os << "n,geo_mean";
  for (int t = 0; t < rep.trials; ++t) os << ",trial" << t;
  os << "\n";
  os.precision(15);
  for (size_t gi = 0; gi < rep.n_grid.size(); ++gi) {
    os << rep.n_grid[gi] << "," << rep.geo_mean[gi];
    for (int t = 0; t < rep.trials; ++t)
      os << "," << rep.values[size_t(t)][gi];
    os << "\n";
  }
  return os.str();
}

namespace {

ordered_json chain_json(const std::vector<ChainCheck>& chain) {
  ordered_json arr = ordered_json::array();
  for (const auto& c : chain) {
    ordered_json e;
    e["step"] = c.step;
    e["lhs"] = c.lhs;
    e["rhs"] = c.rhs;
    e["pass"] = c.pass;
    arr.push_back(e);
  }
  return arr;
}

}  // namespace

std::string trace_report(const RunTrace& trace, const std::string& config) {
  ordered_json j;
  j["final_outcome"] = outcome_name(trace.final_outcome);
  j["final_n"] = trace.final_n;
  j["final_delta"] = trace.final_delta;
  j["c_prime_effective"] = trace.c_prime_effective;
  j["consistent"] = trace.consistent;
  j["iterations"] = ordered_json::array();
  for (const auto& it : trace.iterations) {
    ordered_json e;
    e["index"] = it.index;
    e["n"] = it.n;
    e["set_size"] = it.set_size;
    e["delta"] = it.delta;
    e["delta_exact"] = it.delta_exact;
    e["outcome"] = outcome_name(it.outcome);
    e["factor_parts"] = it.factor_parts;
    e["factor_energy"] = it.factor_energy;
    if (it.outcome == OutcomeKind::density_increment) {
      e["progression"] = progression_json(it.progression);
      e["delta_new"] = it.delta_new;
    }
    ordered_json steps = ordered_json::array();
    for (const auto& s : it.factor_steps) {
      ordered_json se;
      se["iteration"] = s.iteration;
      se["u_norm_before"] = s.u_norm_before;
      se["correlation"] = s.correlation;
      se["theta"] = s.theta;
      se["shift"] = s.shift;
      se["energy_after"] = s.energy_after;
      se["energy_gain"] = s.energy_gain;
      se["projection_gap"] = s.projection_gap;
      steps.push_back(se);
    }
    e["factor_steps"] = steps;
    e["chain"] = chain_json(it.chain);
    j["iterations"].push_back(e);
  }
  j["meta"] = footer(config);
  return j.dump(2) + "\n";
}

std::string smallint_report(const SmoothnessDiameterReport& rep,
                            const std::string& config) {
  ordered_json j;
  j["k"] = rep.k;
  j["n"] = rep.n;
  j["eps"] = rep.eps;
  j["trials"] = rep.trials;
  j["max_ratio"] = rep.max_ratio;
  j["mean_ratio"] = rep.mean_ratio;
  j["zero_diameter_trials"] = rep.zero_diameter_trials;
  j["ratios"] = rep.ratios;
  j["meta"] = footer(config);
  return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigInvalid("cannot write file: " + path);
  out << content;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigInvalid("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace apdec::io
