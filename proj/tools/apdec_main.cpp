// apdec: arithmetic-progression decomposition and density-increment toolkit.
//
// One binary, one subcommand per module. Reports are structured text (JSON)
// with exact rationals as strings; identical config and seed give
// byte-identical output. Exit codes: 0 success (including negative scientific
// findings), 2 config error, 3 internal invariant violation.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "apdec/io.hpp"

using namespace apdec;

namespace {

struct GlobalOpts {
  int threads = 1;  // accepted knob; all results are thread-count invariant
  double max_direct_ops = 0;
};

GowersBudget make_budget(const GlobalOpts& g) {
  GowersBudget b;
  if (g.max_direct_ops > 0) b.max_direct_ops = g.max_direct_ops;
  if (const char* env = std::getenv("APDEC_MAX_DIRECT_OPS")) {
    b.max_direct_ops = std::atof(env);
  }
  return b;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    io::write_text_file(out_path, content);
}

std::string describe(std::initializer_list<std::pair<std::string, std::string>>
                         kv) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : kv) {
    if (!first) os << " ";
    first = false;
    os << k << "=" << v;
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"apdec: progression decompositions, uniformity norms, and the "
               "density-increment engine"};
  app.require_subcommand(1);
  GlobalOpts global;
  app.add_option("--threads", global.threads,
                 "worker thread hint (results are thread-count invariant)");
  app.add_option("--max-direct-ops", global.max_direct_ops,
                 "budget for direct Gowers sums (env APDEC_MAX_DIRECT_OPS)");

  // ---- schmidt ----
  auto* schmidt = app.add_subcommand("schmidt", "small fractional parts");
  auto* search = schmidt->add_subcommand("search", "minimize max_i ||a_i n^k||");
  std::string alphas_path, out_path, method = "brute";
  i64 search_n = 100;
  int search_k = 1;
  search->add_option("--alphas", alphas_path, "alphas file")->required();
  search->add_option("--k", search_k, "power")->required();
  search->add_option("--n", search_n, "range [1, n]")->required();
  search->add_option("--method", method, "brute|lattice");
  search->add_option("--out", out_path, "report path (stdout if omitted)");
  search->callback([&]() {
    auto alphas = io::read_alphas_file(alphas_path);
    SchmidtWitness w =
        method == "lattice" ? min_frac_lattice(alphas, search_k, search_n)
                            : min_frac_power(alphas, search_k, search_n);
    emit(out_path, io::witness_report(
                       w, describe({{"cmd", "schmidt search"},
                                    {"alphas", alphas_path},
                                    {"k", std::to_string(search_k)},
                                    {"n", std::to_string(search_n)},
                                    {"method", method}})));
  });

  auto* decomp = schmidt->add_subcommand(
      "decompose", "split [N] into near-constant progressions");
  std::string polys_path, dec_out;
  i64 dec_n = 100;
  int dec_depth = 16;
  decomp->add_option("--polys", polys_path, "polynomials file")->required();
  decomp->add_option("--n", dec_n, "interval length")->required();
  decomp->add_option("--depth", dec_depth, "recursion budget");
  decomp->add_option("--out", dec_out, "report path");
  decomp->callback([&]() {
    auto polys = io::read_polys_file(polys_path);
    Decomposition dec = decompose_interval(polys, dec_n, dec_depth);
    emit(dec_out, io::decomposition_report(
                      dec, describe({{"cmd", "schmidt decompose"},
                                     {"polys", polys_path},
                                     {"n", std::to_string(dec_n)},
                                     {"depth", std::to_string(dec_depth)}})));
  });

  auto* scaling = schmidt->add_subcommand("scaling", "scaling experiment");
  int sc_k = 2, sc_d = 1, sc_trials = 8;
  u64 sc_seed = 2024;
  std::string sc_grid = "100,1000,10000,100000", sc_out, sc_csv;
  scaling->add_option("--k", sc_k, "power");
  scaling->add_option("--d", sc_d, "number of alphas");
  scaling->add_option("--grid", sc_grid, "comma-separated N grid");
  scaling->add_option("--trials", sc_trials, "random alpha draws");
  scaling->add_option("--seed", sc_seed, "rng seed");
  scaling->add_option("--out", sc_out, "report path");
  scaling->add_option("--csv", sc_csv, "plot data path");
  scaling->callback([&]() {
    std::vector<i64> grid;
    std::stringstream ss(sc_grid);
    std::string item;
    while (std::getline(ss, item, ',')) grid.push_back(std::stoll(item));
    auto rep = scaling_experiment(sc_k, sc_d, grid, sc_trials, sc_seed);
    std::string cfg = describe({{"cmd", "schmidt scaling"},
                                {"k", std::to_string(sc_k)},
                                {"d", std::to_string(sc_d)},
                                {"grid", sc_grid},
                                {"trials", std::to_string(sc_trials)},
                                {"seed", std::to_string(sc_seed)}});
    emit(sc_out, io::scaling_report_json(rep, cfg));
    if (!sc_csv.empty()) io::write_text_file(sc_csv, io::scaling_report_csv(rep));
  });

  // ---- nil ----
  auto* nil = app.add_subcommand("nil", "nilmanifold decompositions");
  auto* nil_dec = nil->add_subcommand("decompose", "type-induction decomposition");
  std::string seqs_path, nil_out;
  i64 nil_n = 100;
  nil_dec->add_option("--seqs", seqs_path, "sequences file")->required();
  nil_dec->add_option("--n", nil_n, "interval length")->required();
  nil_dec->add_option("--out", nil_out, "report path");
  nil_dec->callback([&]() {
    auto seqs = io::read_seqs_file(seqs_path);
    auto res = decompose_nil(seqs, nil_n);
    emit(nil_out, io::nil_report(res, describe({{"cmd", "nil decompose"},
                                                {"seqs", seqs_path},
                                                {"n", std::to_string(nil_n)}})));
  });

  // ---- gowers ----
  auto* gowers = app.add_subcommand("gowers", "uniformity norms and AP counts");
  auto* norm = gowers->add_subcommand("norm", "U^s norm");
  std::string fn_path;
  int norm_s = 2;
  i64 norm_ntilde = 0;
  bool norm_cyclic = false;
  norm->add_option("--f", fn_path, "function file")->required();
  norm->add_option("--s", norm_s, "norm order")->required();
  norm->add_option("--ntilde", norm_ntilde, "explicit embedding modulus");
  norm->add_flag("--cyclic", norm_cyclic, "treat the function as cyclic");
  norm->callback([&]() {
    GridFunction f = io::read_function_file(fn_path);
    GowersBudget budget = make_budget(global);
    double v = (norm_cyclic || f.domain == Domain::cyclic)
                   ? gowers_norm_cyclic(f.values, norm_s, budget)
                   : gowers_norm_interval(f.values, norm_s, norm_ntilde, budget);
    std::ostringstream os;
    os.precision(15);
    os << v << "\n";
    std::cout << os.str();
  });

  auto* apcount = gowers->add_subcommand("apcount", "Lambda_k operator");
  std::string ap_path;
  int ap_k = 3;
  apcount->add_option("--f", ap_path, "function file")->required();
  apcount->add_option("--k", ap_k, "progression length")->required();
  apcount->callback([&]() {
    GridFunction f = io::read_function_file(ap_path);
    // Indicator inputs go through the exact integer counter.
    bool indicator = true;
    for (i64 i = 0; i < f.values.size() && indicator; ++i)
      indicator = f.values[i] == cd(0, 0) || f.values[i] == cd(1, 0);
    std::ostringstream os;
    os.precision(15);
    if (indicator) {
      std::vector<char> mem(size_t(f.values.size()));
      for (i64 i = 0; i < f.values.size(); ++i)
        mem[size_t(i)] = f.values[i] == cd(1, 0);
      i64 cnt = ap_count_indicator(mem, ap_k);
      i64 denom = (f.values.size() + 1) * (f.values.size() + 1);
      os << "exact " << cnt << "/" << denom << "\n";
      os << double(cnt) / double(denom) << "\n";
    } else {
      std::vector<Eigen::ArrayXcd> fs(size_t(ap_k), f.values);
      cd v = ap_operator(fs);
      os << v.real() << (v.imag() < 0 ? " - " : " + ")
         << std::abs(v.imag()) << "i\n";
    }
    std::cout << os.str();
  });

  auto* vn = gowers->add_subcommand("vncheck", "counting operator inequalities");
  std::string vn_path;
  int vn_k = 3;
  vn->add_option("--f", vn_path, "function file (used in every slot)")->required();
  vn->add_option("--k", vn_k, "progression length")->required();
  vn->callback([&]() {
    GridFunction f = io::read_function_file(vn_path);
    std::vector<Eigen::ArrayXcd> fs(size_t(vn_k), f.values);
    auto rep = von_neumann_check(fs, make_budget(global));
    std::ostringstream os;
    os.precision(15);
    os << "lambda " << rep.lambda << "\nl1_bound " << rep.l1_bound
       << "\nl1_ok " << (rep.l1_ok ? "true" : "false") << "\n";
    if (rep.u_side_computed)
      os << "u_bound " << rep.u_bound << "\nratio " << rep.ratio << "\n";
    std::cout << os.str();
  });

  // ---- poly ----
  auto* poly = app.add_subcommand("poly", "exact polynomial utilities");
  auto* smallint = poly->add_subcommand("smallint", "smoothness-vs-diameter study");
  int si_k = 3, si_trials = 100;
  i64 si_n = 200;
  double si_eps = 1e-3;
  u64 si_seed = 2024;
  std::string si_out;
  smallint->add_option("--k", si_k, "degree");
  smallint->add_option("--n", si_n, "interval length");
  smallint->add_option("--eps", si_eps, "diameter bound");
  smallint->add_option("--trials", si_trials, "trials");
  smallint->add_option("--seed", si_seed, "rng seed");
  smallint->add_option("--out", si_out, "report path");
  smallint->callback([&]() {
    auto rep = smoothness_diameter_study(si_k, si_n, si_eps, si_trials, si_seed);
    emit(si_out, io::smallint_report(
                     rep, describe({{"cmd", "poly smallint"},
                                    {"k", std::to_string(si_k)},
                                    {"n", std::to_string(si_n)},
                                    {"eps", std::to_string(si_eps)},
                                    {"trials", std::to_string(si_trials)},
                                    {"seed", std::to_string(si_seed)}})));
  });

  // ---- factor ----
  auto* factor = app.add_subcommand("factor", "partitions of [N]");
  auto* fbuild = factor->add_subcommand("build", "factor induced by a function");
  std::string fb_path;
  i64 fb_k = 8;
  bool fb_auto_shift = false;
  double fb_c = 4.0;
  u64 fb_seed = 1;
  fbuild->add_option("--g", fb_path, "generator function file")->required();
  fbuild->add_option("--k", fb_k, "resolution K")->required();
  fbuild->add_flag("--auto-shift", fb_auto_shift, "select a C-regular shift");
  fbuild->add_option("--c", fb_c, "regularity constant");
  fbuild->add_option("--seed", fb_seed, "shift sampling seed");
  fbuild->callback([&]() {
    GridFunction g = io::read_function_file(fb_path);
    Eigen::ArrayXd gr(g.values.size());
    for (i64 i = 0; i < g.values.size(); ++i) gr[i] = g.values[i].real();
    double shift = 0.0;
    if (fb_auto_shift) shift = select_shift(gr, fb_k, ShiftConfig{fb_c, 64, fb_seed});
    Factor b = induced_factor(gr + shift, fb_k);
    std::ostringstream os;
    os.precision(15);
    os << "parts " << b.parts.size() << "\nshift " << shift << "\n";
    for (const auto& part : b.parts) {
      for (size_t i = 0; i < part.size(); ++i)
        os << part[i] << (i + 1 < part.size() ? ' ' : '\n');
    }
    std::cout << os.str();
  });

  // ---- increment ----
  auto* incr = app.add_subcommand("increment", "density increment engine");
  auto* run = incr->add_subcommand("run", "full driver on a set");
  std::string set_spec, trace_path;
  int run_k = 3;
  double run_c = 0.05;
  u64 run_seed = 2024;
  double run_cstar = 0.0;
  i64 run_minlen = 4;
  run->add_option("--set", set_spec,
                  "set file or constructor (salem-spencer:3:7, interval:100, "
                  "random:1000:0.5:7, behrend:2:10)")
      ->required();
  run->add_option("--k", run_k, "progression length (3 for the built-in oracle)");
  run->add_option("--c", run_c, "count-stability constant c");
  run->add_option("--trace", trace_path, "trace output path");
  run->add_option("--seed", run_seed, "engine seed");
  run->add_option("--cstar", run_cstar,
                  "eta = cstar * delta^k for the factor build (0: proof default)");
  run->add_option("--min-len", run_minlen, "floor on increment progressions");
  run->callback([&]() {
    SetResult s = io::load_set(set_spec);
    IncrementConfig cfg;
    cfg.seed = run_seed;
    cfg.cstar_scale = run_cstar;
    cfg.min_progression_length = run_minlen;
    cfg.gowers = make_budget(global);
    RunTrace trace = density_increment_driver(
        s.elements, s.ambient, run_k, run_c, fourier_inverse_oracle, cfg);
    std::string cfgs = describe({{"cmd", "increment run"},
                                 {"set", set_spec},
                                 {"k", std::to_string(run_k)},
                                 {"c", std::to_string(run_c)},
                                 {"seed", std::to_string(run_seed)},
                                 {"cstar", std::to_string(run_cstar)},
                                 {"min_len", std::to_string(run_minlen)}});
    emit(trace_path, io::trace_report(trace, cfgs));
  });

  // ---- makeset ----
  auto* mk = app.add_subcommand("makeset", "test-set constructors");
  std::string mk_kind = "salem-spencer", mk_out;
  int mk_base = 3, mk_digits = 7, mk_d = 2, mk_side = 10;
  i64 mk_n = 100;
  double mk_density = 0.5;
  u64 mk_seed = 7;
  mk->add_option("--kind", mk_kind, "salem-spencer|behrend|random|interval")
      ->required();
  mk->add_option("--base", mk_base, "salem-spencer base");
  mk->add_option("--digits", mk_digits, "salem-spencer digits");
  mk->add_option("--d", mk_d, "behrend dimension");
  mk->add_option("--side", mk_side, "behrend side length");
  mk->add_option("--n", mk_n, "ambient size");
  mk->add_option("--density", mk_density, "random set density");
  mk->add_option("--seed", mk_seed, "random set seed");
  mk->add_option("--out", mk_out, "set file path")->required();
  mk->callback([&]() {
    SetResult s;
    if (mk_kind == "salem-spencer")
      s = make_salem_spencer(mk_base, mk_digits);
    else if (mk_kind == "behrend")
      s = make_behrend(mk_d, mk_side);
    else if (mk_kind == "random")
      s = make_random(mk_n, mk_density, mk_seed);
    else if (mk_kind == "interval")
      s = make_interval(mk_n);
    else
      throw ConfigInvalid("unknown set kind '" + mk_kind + "'");
    io::write_set_file(mk_out, s);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : exit_config;
  } catch (const ConfigInvalid& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const ParamOutOfRange& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_internal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_internal;
  }
  return exit_ok;
}
