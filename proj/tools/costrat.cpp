// Command-line front end. Every spin argument is a twice-value integer.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "costrat/algebra.hpp"
#include "costrat/hamiltonian.hpp"
#include "costrat/invariant_vector.hpp"
#include "costrat/lattice.hpp"
#include "costrat/parallel.hpp"
#include "costrat/strata.hpp"
#include "costrat/verify.hpp"
#include "costrat/wigner.hpp"
#include "json.hpp"

namespace {

using namespace costrat;
using Json = nlohmann::ordered_json;

struct Config {
  int threads = 0;
  std::uint64_t seed = 7;
  std::string out;
  std::string matrix_out;
  int n = 2;
  int cutoff2 = 1;
  double hbar = 1.0;
  double g = 1.0;
  double delta = 1.0;
  double tol = 1e-10;
  std::size_t k = 1;
  std::vector<int> dims{2, 2};
  int r = 1, s = 2, t = 3;
  int nu = 1;
  std::vector<int> nus{1, 1};
  std::string kind;
  std::vector<int> spins;
  std::string a, b;
  std::string suite = "all";
};

std::string number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void emit(const Config& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + cfg.out);
  f << text;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

Json header() {
  Json doc;
  doc["version"] = kFormatVersion;
  return doc;
}

HalfInt cutoff_of(const Config& cfg) {
  if (cfg.cutoff2 < 0) throw std::invalid_argument("--cutoff2 must be nonnegative");
  return HalfInt{cfg.cutoff2};
}

void require_n(const Config& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("--n must be at least 1");
}

// ------------------------------------------------------------------ symbol

HalfInt spin(int twice) {
  if (twice < 0) throw std::invalid_argument("spin labels must be nonnegative");
  return HalfInt{twice};
}

void projection_ok(HalfInt j, int m) {
  if (!valid_projection(j, HalfInt{m})) throw std::invalid_argument("invalid projection for spin");
}

void cmd_symbol(const Config& cfg) {
  const auto& v = cfg.spins;
  const auto need = [&](std::size_t count) {
    if (v.size() != count)
      throw std::invalid_argument(cfg.kind + " takes " + std::to_string(count) + " twice-value spins");
  };
  double value = 0.0;
  if (cfg.kind == "cg") {
    need(6);
    const HalfInt j1 = spin(v[0]), j2 = spin(v[2]), j3 = spin(v[4]);
    projection_ok(j1, v[1]);
    projection_ok(j2, v[3]);
    projection_ok(j3, v[5]);
    value = clebsch_gordan(j1, HalfInt{v[1]}, j2, HalfInt{v[3]}, j3, HalfInt{v[5]});
  } else if (cfg.kind == "6j") {
    need(6);
    value = wigner_6j(spin(v[0]), spin(v[1]), spin(v[2]), spin(v[3]), spin(v[4]), spin(v[5]));
  } else {
    need(9);
    std::array<int, 9> a{};
    for (std::size_t i = 0; i < 9; ++i) a[i] = spin(v[i]).twice;
    const NineJ sym = NineJ::from_twice(a);
    if (cfg.kind == "9j") value = wigner_9j(sym);
    else if (cfg.kind == "paren9j") value = paren_9j(sym);
    else value = bracket_9j(sym);
  }
  emit(cfg, number(value) + "\n");
}

// ------------------------------------------------------------ basis/multiply

void cmd_basis(const Config& cfg) {
  require_n(cfg);
  if (!(cfg.hbar > 0.0)) throw std::invalid_argument("--hbar must be positive");
  const auto idx = enumerate_indices(cfg.n, cutoff_of(cfg));
  Json doc = header();
  doc["n"] = cfg.n;
  doc["cutoff2"] = cfg.cutoff2;
  doc["hbar"] = cfg.hbar;
  doc["count"] = idx.size();
  auto arr = Json::array();
  for (const auto& i : idx) {
    Json e;
    e["index"] = to_string(i);
    e["norm_squared"] = norm_squared(i, cfg.hbar);
    arr.push_back(std::move(e));
  }
  doc["indices"] = std::move(arr);
  emit(cfg, dump(doc));
}

InvariantVector operand(const std::string& text) {
  if (!text.empty() && text.front() == '[') return InvariantVector::basis(parse_multi_index(text));
  std::ifstream f(text, std::ios::binary);
  if (!f) throw std::invalid_argument("operand is neither an index nor a readable file: " + text);
  std::stringstream ss;
  ss << f.rdbuf();
  return invariant_vector_from_json(ss.str());
}

void cmd_multiply(const Config& cfg) { emit(cfg, to_json(multiply(operand(cfg.a), operand(cfg.b)))); }

// ------------------------------------------------------------------ strata

Json vector_json(const InvariantVector& v) { return Json::parse(to_json(v)); }

void check_links(const Config& cfg, int count) {
  require_n(cfg);
  const std::vector<int> l{cfg.r, cfg.s, cfg.t};
  for (int i = 0; i < count; ++i) {
    if (l[i] < 1 || l[i] > cfg.n) throw std::invalid_argument("link numbers must lie in 1..N");
    if (i > 0 && l[i] <= l[i - 1]) throw std::invalid_argument("link numbers must be increasing");
  }
}

SignChain sign_chain(const Config& cfg) {
  for (int x : cfg.nus)
    if (x != 1 && x != -1) throw std::invalid_argument("--nu entries must be 1 or -1");
  return cfg.nus;
}

Json generators_json(const std::vector<Generator>& gens) {
  auto arr = Json::array();
  for (const auto& g : gens) {
    Json e;
    e["label"] = label(g);
    e["links"] = g.links;
    e["seed"] = to_string(g.seed);
    e["vector"] = vector_json(g.vector);
    arr.push_back(std::move(e));
  }
  return arr;
}

void write_system_matrix(const Config& cfg, const CostratumSystem& sys) {
  if (cfg.matrix_out.empty()) return;
  std::ofstream f(cfg.matrix_out, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + cfg.matrix_out);
  f << "%%MatrixMarket matrix coordinate real general\n% " << kFormatVersion << "\n";
  f << sys.rows.size() << ' ' << sys.columns.size() << ' ' << sys.entries.size() << '\n';
  for (const auto& e : sys.entries) f << e.row + 1 << ' ' << e.col + 1 << ' ' << number(e.value) << '\n';
}

void cmd_strata(const Config& cfg, const std::string& what) {
  if (!(cfg.hbar > 0.0)) throw std::invalid_argument("--hbar must be positive");
  if (what == "pT") {
    check_links(cfg, 2);
    emit(cfg, to_json(p_T_rs(cfg.n, cfg.r, cfg.s)));
  } else if (what == "pTrst") {
    check_links(cfg, 3);
    emit(cfg, to_json(p_T_rst(cfg.n, cfg.r, cfg.s, cfg.t)));
  } else if (what == "pnu") {
    check_links(cfg, 1);
    if (cfg.nu != 1 && cfg.nu != -1) throw std::invalid_argument("--nu must be 1 or -1");
    emit(cfg, to_json(p_nu(cfg.n, cfg.r, cfg.nu)));
  } else if (what == "generators") {
    require_n(cfg);
    Json doc = header();
    doc["n"] = cfg.n;
    doc["cutoff2"] = cfg.cutoff2;
    doc["generators"] = generators_json(vanishing_generators_T(cfg.n, cutoff_of(cfg)));
    emit(cfg, dump(doc));
  } else if (what == "system" || what == "kernel") {
    require_n(cfg);
    const auto sys = costratum_T_system(cfg.n, cutoff_of(cfg), cfg.hbar);
    Json doc = header();
    doc["n"] = cfg.n;
    doc["cutoff2"] = cfg.cutoff2;
    doc["hbar"] = cfg.hbar;
    if (what == "system") {
      auto rows = Json::array();
      for (const auto& g : sys.rows) rows.push_back(label(g));
      auto cols = Json::array();
      for (std::size_t j = 0; j < sys.columns.size(); ++j) {
        Json c;
        c["index"] = to_string(sys.columns[j]);
        c["norm_squared"] = sys.column_norm_squared[j];
        cols.push_back(std::move(c));
      }
      doc["rows"] = std::move(rows);
      doc["columns"] = std::move(cols);
      doc["nonzeros"] = sys.entries.size();
      write_system_matrix(cfg, sys);
    } else {
      if (!(cfg.tol > 0.0)) throw std::invalid_argument("--tol must be positive");
      const auto kernel = costratum_T_kernel(sys, cfg.tol);
      doc["tol"] = cfg.tol;
      doc["rows"] = sys.rows.size();
      doc["columns"] = sys.columns.size();
      doc["dimension"] = kernel.size();
      auto vs = Json::array();
      for (const auto& phi : kernel) vs.push_back(vector_json(phi));
      doc["kernel"] = std::move(vs);
    }
    emit(cfg, dump(doc));
  } else if (what == "pointvec") {
    emit(cfg, to_json(point_stratum_vector(sign_chain(cfg), cutoff_of(cfg), cfg.hbar)));
  } else {
    throw std::invalid_argument("unknown strata command " + what);
  }
}

// ---------------------------------------------------------------- spectrum

void cmd_spectrum(const Config& cfg) {
  const auto lattice = build_lattice(cfg.dims);
  const auto h = assemble_matrix(lattice, {cfg.g, cfg.delta, 1.0}, cutoff_of(cfg));
  if (!cfg.matrix_out.empty()) {
    std::ofstream f(cfg.matrix_out, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + cfg.matrix_out);
    h.matrix.write_matrix_market(f);
  }
  const auto pairs = solve_spectrum(h.matrix, std::min(cfg.k, h.matrix.dimension));
  Json doc = header();
  doc["dims"] = cfg.dims;
  doc["n"] = lattice.n_offtree;
  doc["cutoff2"] = cfg.cutoff2;
  doc["g"] = cfg.g;
  doc["delta"] = cfg.delta;
  doc["dimension"] = h.matrix.dimension;
  doc["nonzeros"] = h.matrix.entries.size();
  auto values = Json::array();
  auto vectors = Json::array();
  for (const auto& p : pairs) {
    values.push_back(p.value);
    auto comps = Json::array();
    for (Eigen::Index i = 0; i < p.vector.size(); ++i) {
      if (std::abs(p.vector[i]) <= kPruneThreshold) continue;
      Json c;
      c["index"] = to_string(h.basis[static_cast<std::size_t>(i)]);
      c["c"] = p.vector[i];
      comps.push_back(std::move(c));
    }
    vectors.push_back(std::move(comps));
  }
  doc["eigenvalues"] = std::move(values);
  doc["eigenvectors"] = std::move(vectors);
  emit(cfg, dump(doc));
}

// ------------------------------------------------------------------ verify

int cmd_verify(const Config& cfg) {
  std::vector<SuiteResult> results;
  if (cfg.suite == "all") {
    for (const auto& name : suite_names()) results.push_back(run_suite(name, cfg.seed));
  } else {
    results.push_back(run_suite(cfg.suite, cfg.seed));
  }
  emit(cfg, report_json(results, cfg.seed));
  for (const auto& r : results)
    if (!r.pass()) return 1;
  return 0;
}

std::filesystem::path cache_file() {
  const char* dir = std::getenv("COSTRAT_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return {};
  return std::filesystem::path(dir) / "symbols.bin";
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  CLI::App app{"SU(2) invariant-function calculus: symbols, bases, products, strata and spectra.\n"
               "All spins are given as twice-value integers (1 means spin 1/2)."};
  app.option_defaults()->always_capture_default();
  app.add_option("--threads", cfg.threads, "Worker threads (0 = hardware concurrency)")->check(CLI::NonNegativeNumber);
  app.require_subcommand(1);

  auto out_opt = [&](CLI::App* sub) { sub->add_option("--out", cfg.out, "Output file (default stdout)"); };
  auto add_n = [&](CLI::App* sub) { sub->add_option("--n", cfg.n, "Number of off-tree links N"); };
  auto add_cutoff = [&](CLI::App* sub) {
    sub->add_option("--cutoff2", cfg.cutoff2, "Spin cutoff as a twice-value");
  };

  auto* symbol = app.add_subcommand("symbol", "Clebsch-Gordan, 6j and 9j values");
  symbol->add_option("kind", cfg.kind, "cg | 6j | 9j | paren9j | bracket9j")
      ->required()
      ->check(CLI::IsMember({"cg", "6j", "9j", "paren9j", "bracket9j"}));
  symbol->add_option("spins", cfg.spins, "Twice-values: cg j1 m1 j2 m2 j m; 6j six spins; 9j nine spins row-wise")
      ->required();
  out_opt(symbol);

  auto* basis = app.add_subcommand("basis", "Enumerate the truncated invariant basis");
  add_n(basis);
  add_cutoff(basis);
  basis->add_option("--hbar", cfg.hbar, "Norm parameter");
  out_opt(basis);

  auto* mult = app.add_subcommand("multiply", "Product of two basis functions or vector files");
  mult->add_option("a", cfg.a, "Index text [chain|total|left|right] or InvariantVector JSON file")->required();
  mult->add_option("b", cfg.b, "Second operand")->required();
  out_opt(mult);

  auto* strata = app.add_subcommand("strata", "Stratum invariants, generators and costratum systems");
  strata->require_subcommand(1);
  std::string strata_cmd;
  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"pT", "tr([a_r,a_s]^2) in the basis"},
           {"pTrst", "tr([a_r,a_s]a_t) in the basis"},
           {"pnu", "tr(a_r) - 2 nu"},
           {"generators", "Vanishing generators of the T-stratum"},
           {"system", "Costratum linear system (JSON, --matrix for triplets)"},
           {"kernel", "Null space of the costratum system"},
           {"pointvec", "Point-stratum vector for a sign chain"}}) {
    auto* sub = strata->add_subcommand(name, help);
    add_n(sub);
    add_cutoff(sub);
    sub->add_option("--hbar", cfg.hbar, "Norm parameter");
    sub->add_option("--r", cfg.r, "First link (1-based)");
    sub->add_option("--s", cfg.s, "Second link");
    sub->add_option("--t", cfg.t, "Third link");
    if (name == "pnu") sub->add_option("--nu", cfg.nu, "Sign (1 or -1)");
    if (name == "pointvec") sub->add_option("--nu", cfg.nus, "Sign chain, one entry per link")->delimiter(',');
    if (name == "kernel") sub->add_option("--tol", cfg.tol, "Relative singular-value threshold");
    if (name == "system") sub->add_option("--matrix", cfg.matrix_out, "Matrix Market triplet file");
    out_opt(sub);
    sub->callback([&strata_cmd, n = name] { strata_cmd = n; });
  }

  auto* spectrum = app.add_subcommand("spectrum", "Lowest eigenpairs of the truncated Hamiltonian");
  spectrum->add_option("--dims", cfg.dims, "Lattice extents, e.g. 2,2 or 2,2,2")->delimiter(',');
  add_cutoff(spectrum);
  spectrum->add_option("--g", cfg.g, "Coupling");
  spectrum->add_option("--delta", cfg.delta, "Lattice spacing");
  spectrum->add_option("--k", cfg.k, "Number of eigenpairs")->check(CLI::PositiveNumber);
  spectrum->add_option("--matrix", cfg.matrix_out, "Matrix Market dump of the assembled matrix");
  out_opt(spectrum);

  auto* verify = app.add_subcommand("verify", "Run verification suites and print a JSON report");
  verify->add_option("suite", cfg.suite, "Suite name or all");
  verify->add_option("--seed", cfg.seed, "Random seed");
  out_opt(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const auto cache = cache_file();
  try {
    set_thread_count(cfg.threads);
    if (!cache.empty()) load_symbol_cache(cache);
    int code = 0;
    if (*symbol) cmd_symbol(cfg);
    else if (*basis) cmd_basis(cfg);
    else if (*mult) cmd_multiply(cfg);
    else if (*strata) cmd_strata(cfg, strata_cmd);
    else if (*spectrum) cmd_spectrum(cfg);
    else if (*verify) code = cmd_verify(cfg);
    if (!cache.empty()) {
      std::filesystem::create_directories(cache.parent_path());
      save_symbol_cache(cache);
    }
    return code;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
