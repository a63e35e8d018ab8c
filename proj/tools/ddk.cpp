// ddk: workbench for exact and modular monotone-Boolean-function counting.
//
// Exit codes: 0 success, 2 usage error, 3 resource/budget refusal,
// 4 verification failure.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dedekind/cache.hpp"
#include "dedekind/congruence.hpp"
#include "dedekind/engines.hpp"
#include "dedekind/verify.hpp"

namespace {

using namespace dedekind;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;
constexpr int kExitVerify = 4;

struct GlobalOptions {
  std::string cache_dir;
  bool no_cache = false;
  unsigned threads = 0;
  std::string format = "plain";
  std::uint64_t budget = kDefaultTupleBudget;
  bool quiet = false;
};

std::string default_cache_dir() {
  if (const char* env = std::getenv("DDK_CACHE_DIR")) return env;
  return ".ddk-cache";
}

// Rate-limited chunk progress on the diagnostic stream; the data stream
// stays machine-readable.
class ProgressPrinter {
 public:
  Executor::Progress sink() {
    return [this](std::uint64_t done, std::uint64_t total) {
      std::lock_guard<std::mutex> lock(mu_);
      const auto now = std::chrono::steady_clock::now();
      if (done == total ||
          std::chrono::duration<double>(now - last_).count() > 2.0) {
        last_ = now;
        std::cerr << "progress: " << done << "/" << total << " chunks\r";
        if (done == total) std::cerr << "\n";
      }
    };
  }

 private:
  std::mutex mu_;
  std::chrono::steady_clock::time_point last_ =
      std::chrono::steady_clock::now() - std::chrono::hours(1);
};

struct Session {
  GlobalOptions opts;
  Executor exec;
  LatticeStore store;
  ProgressPrinter printer;

  explicit Session(const GlobalOptions& o)
      : opts(o),
        exec(o.threads),
        store(o.no_cache ? std::filesystem::path{}
                         : std::filesystem::path(o.cache_dir),
              &exec) {
    if (!opts.quiet) store.build_progress = printer.sink();
  }

  std::unique_ptr<KernelContext> ctx(int n, bool with_orbits) {
    auto c = std::make_unique<KernelContext>(
        store.table(n), store.down(n),
        with_orbits ? &store.orbits(n) : nullptr, &exec, opts.budget);
    if (!opts.quiet) c->progress = printer.sink();
    return c;
  }
};

void emit_kv(const GlobalOptions& opts, const std::string& plain_line,
             const json& obj, const std::string& csv_header,
             const std::string& csv_row) {
  if (opts.format == "json") {
    std::cout << obj.dump() << "\n";
  } else if (opts.format == "csv") {
    std::cout << csv_header << "\n" << csv_row << "\n";
  } else {
    std::cout << plain_line << "\n";
  }
}

int cmd_enumerate(Session& s, int n, const std::string& out_file) {
  const PosetTable& t = s.store.table(n);
  if (!out_file.empty()) save_lattice(t, out_file);
  json j{{"n", std::to_string(n)}, {"count", std::to_string(t.size())}};
  if (!out_file.empty()) j["cache_file"] = out_file;
  emit_kv(s.opts, "d_" + std::to_string(n) + " = " + std::to_string(t.size()), j,
          "n,count", std::to_string(n) + "," + std::to_string(t.size()));
  return kExitOk;
}

int cmd_classes(Session& s, int n, bool hist) {
  const OrbitTable& orbits = s.store.orbits(n);
  if (!hist) {
    json j{{"n", std::to_string(n)},
           {"classes", std::to_string(orbits.class_count())}};
    emit_kv(s.opts, "r_" + std::to_string(n) + " = " +
                        std::to_string(orbits.class_count()),
            j, "n,classes",
            std::to_string(n) + "," + std::to_string(orbits.class_count()));
    return kExitOk;
  }
  const auto histogram = gamma_histogram(orbits);
  if (s.opts.format == "json") {
    json j{{"n", std::to_string(n)},
           {"classes", std::to_string(orbits.class_count())}};
    json rows = json::array();
    for (const auto& [g, c] : histogram) {
      rows.push_back({{"orbit_size", std::to_string(g)},
                      {"classes", std::to_string(c)}});
    }
    j["histogram"] = rows;
    std::cout << j.dump() << "\n";
  } else if (s.opts.format == "csv") {
    std::cout << "orbit_size,classes\n";
    for (const auto& [g, c] : histogram) std::cout << g << "," << c << "\n";
  } else {
    std::cout << "r_" << n << " = " << orbits.class_count() << "\n";
    for (const auto& [g, c] : histogram) {
      std::cout << "  orbit size " << g << ": " << c << " classes\n";
    }
  }
  return kExitOk;
}

int base_for_method(const std::string& method, int target) {
  if (method == "g2") return target - 2;
  if (method == "h3" || method == "p4mod3") return target - 3;
  if (method == "f4") return target - 4;
  if (method == "lambda2" || method == "direct") return target;
  throw std::invalid_argument("unknown method: " + method);
}

int cmd_compute(Session& s, int target, const std::string& method) {
  const int base = base_for_method(method, target);
  if (base < 0) {
    throw std::invalid_argument("method " + method +
                                " cannot reach target " + std::to_string(target));
  }
  const auto start = std::chrono::steady_clock::now();
  BigCount value;
  if (method == "direct") {
    value = BigCount(s.store.table(target).size());
  } else if (method == "g2") {
    value = d_via_g(*s.ctx(base, true));
  } else if (method == "h3") {
    value = d_via_h(*s.ctx(base, false));
  } else if (method == "f4") {
    value = d_via_f(*s.ctx(base, true));
  } else {
    throw std::invalid_argument("method " + method +
                                " does not produce exact values");
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  json j{{"target", std::to_string(target)},
         {"method", method},
         {"value", to_decimal(value)},
         {"base_arity", std::to_string(base)},
         {"elapsed_ms", std::to_string(ms)}};
  emit_kv(s.opts,
          "d_" + std::to_string(target) + " = " + to_decimal(value) +
              "  (method " + method + ", base " + std::to_string(base) + ", " +
              std::to_string(ms) + " ms)",
          j, "target,method,value",
          std::to_string(target) + "," + method + "," + to_decimal(value));
  return kExitOk;
}

int cmd_residue(Session& s, int target, std::uint64_t m, const std::string& method) {
  const int base = base_for_method(method, target);
  if (base < 0 || base > kMaxArity) {
    throw std::invalid_argument("method " + method + " cannot reach target " +
                                std::to_string(target) +
                                " with a materializable base lattice");
  }
  ResidueWitness w;
  if (method == "g2") {
    w = residue_via_g(*s.ctx(base, true), m);
  } else if (method == "h3") {
    w = residue_via_h(*s.ctx(base, true), m);
  } else if (method == "f4") {
    w = residue_via_f(*s.ctx(base, true), m);
  } else if (method == "p4mod3") {
    if (m != 3) {
      throw std::invalid_argument("method p4mod3 only produces residues mod 3");
    }
    w = residue_via_p4(*s.ctx(base, false));
  } else if (method == "lambda2") {
    if (m != 2) {
      throw std::invalid_argument("method lambda2 only produces residues mod 2");
    }
    w = residue_via_lambda(s.store.table(base), &s.exec);
  } else {
    throw std::invalid_argument("unknown residue method: " + method);
  }
  if (s.opts.format == "json") {
    std::cout << witness_json(w) << "\n";
  } else if (s.opts.format == "csv") {
    std::cout << "target,modulus,method,sum,residue\n"
              << w.target << "," << w.modulus << "," << w.method << ","
              << to_decimal(w.sum) << "," << w.residue << "\n";
  } else {
    std::cout << "d_" << w.target << " mod " << w.modulus << " = " << w.residue
              << "  (sum " << to_decimal(w.sum) << ", method " << w.method
              << ", base " << w.base_arity << ", " << w.elapsed_ms << " ms)\n";
  }
  return kExitOk;
}

int cmd_p4(Session& s, int n, bool matrix_check) {
  auto ctx = s.ctx(n, false);
  const BigCount count = p4_count(*ctx);
  bool matrix_ok = true;
  if (matrix_check) {
    matrix_ok = matrix_cube_sum(*ctx) == count;
  }
  json j{{"n", std::to_string(n)}, {"count", to_decimal(count)}};
  if (matrix_check) j["matrix_check"] = matrix_ok ? "pass" : "fail";
  std::string plain = "p4_" + std::to_string(n) + " = " + to_decimal(count);
  if (matrix_check) {
    plain += matrix_ok ? "  (matrix cube agrees)" : "  (MATRIX CUBE DISAGREES)";
  }
  emit_kv(s.opts, plain, j, "n,count",
          std::to_string(n) + "," + to_decimal(count));
  if (!matrix_ok) return kExitVerify;
  return kExitOk;
}

std::vector<ResidueEntry> parse_pairs(const std::string& text) {
  std::vector<ResidueEntry> entries;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("expected modulus:residue, got '" + item + "'");
    }
    ResidueEntry e;
    e.modulus = std::stoull(item.substr(0, colon));
    e.residue = std::stoull(item.substr(colon + 1));
    entries.push_back(e);
  }
  if (entries.empty()) throw std::invalid_argument("no modulus:residue pairs given");
  return entries;
}

int cmd_crt(Session& s, const std::string& pairs) {
  const auto entries = parse_pairs(pairs);
  const ResidueSystem sys = crt_combine(entries);
  if (s.opts.format == "json") {
    json j;
    json in = json::array();
    for (const auto& e : entries) {
      in.push_back({{"modulus", std::to_string(e.modulus)},
                    {"residue", std::to_string(e.residue)}});
    }
    j["entries"] = in;
    j["modulus"] = to_decimal(sys.modulus);
    j["residue"] = to_decimal(sys.residue);
    j["sources"] = json::array({"cli"});
    std::cout << j.dump() << "\n";
  } else if (s.opts.format == "csv") {
    std::cout << "modulus,residue\n"
              << to_decimal(sys.modulus) << "," << to_decimal(sys.residue) << "\n";
  } else {
    std::cout << "x = " << to_decimal(sys.residue) << " (mod "
              << to_decimal(sys.modulus) << ")\n";
  }
  return kExitOk;
}

int cmd_verify(Session& s, const std::string& suite, bool with_optional) {
  VerifyOptions vo;
  vo.cache_dir = s.opts.no_cache ? std::filesystem::path{}
                                 : std::filesystem::path(s.opts.cache_dir);
  vo.threads = s.opts.threads;
  vo.tuple_budget = s.opts.budget;
  vo.with_optional = with_optional;
  if (!s.opts.quiet) vo.progress = s.printer.sink();

  std::size_t failures = 0;
  if (suite == "acceptance") {
    for (const CriterionResult& r : run_acceptance(vo)) {
      std::cout << (r.pass ? "[PASS]" : "[FAIL]") << " criterion " << r.number
                << ": " << r.title << " (" << r.detail << ")\n";
      if (!r.pass) ++failures;
    }
  } else {
    for (const CheckResult& r : run_suite(suite, vo)) {
      std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name;
      if (!r.detail.empty()) std::cout << " — " << r.detail;
      std::cout << "\n";
      if (!r.pass) ++failures;
    }
  }
  if (failures > 0) {
    std::cout << failures << " check(s) failed\n";
    return kExitVerify;
  }
  std::cout << "all checks passed\n";
  return kExitOk;
}

void emit_table(std::ostream& out, const std::string& name,
                const std::string& header,
                const std::vector<std::pair<std::string, std::string>>& rows) {
  out << "# table: " << name << "\n" << header << "\n";
  for (const auto& [a, b] : rows) out << a << "," << b << "\n";
  out << "\n";
}

int cmd_tables(Session& s) {
  (void)s;
  const KnownValues& kv = known_values();
  std::ostream& out = std::cout;
  std::vector<std::pair<std::string, std::string>> rows;

  auto series = [&](const std::vector<BigCount>& vals) {
    rows.clear();
    for (std::size_t n = 0; n < vals.size(); ++n) {
      rows.emplace_back(std::to_string(n), to_decimal(vals[n]));
    }
    return rows;
  };
  emit_table(out, "monotone function counts (A000372)", "n,count",
             series(kv.dedekind));
  emit_table(out, "equivalence classes (A003182)", "n,classes",
             series(kv.classes));
  emit_table(out, "self-dual counts (A001206)", "n,count", series(kv.selfdual));
  emit_table(out, "4-chain counts", "n,count", series(kv.p4));

  rows.clear();
  for (std::size_t i = 0; i < kv.no_symmetry.size(); ++i) {
    rows.emplace_back(std::to_string(i + 1), std::to_string(kv.no_symmetry[i]));
  }
  emit_table(out, "classes with full orbit (A220879)", "n,classes", rows);

  rows.clear();
  for (const auto& [g, c] : kv.r4_gamma_histogram) {
    rows.emplace_back(std::to_string(g), std::to_string(c));
  }
  emit_table(out, "orbit-size histogram, n=4", "orbit_size,classes", rows);

  rows.clear();
  for (const auto& [g, c] : kv.r7_gamma_histogram) {
    rows.emplace_back(std::to_string(g), std::to_string(c));
  }
  emit_table(out, "orbit-size histogram, n=7 (reported)", "orbit_size,classes",
             rows);

  rows.clear();
  for (const auto& [m, sum] : kv.h3_sums_base4) {
    rows.emplace_back(std::to_string(m), to_decimal(sum));
  }
  emit_table(out, "reduced triple-kernel sums, base 4", "modulus,sum", rows);

  rows.clear();
  for (const auto& [m, sum] : kv.f4_sums_base4) {
    rows.emplace_back(std::to_string(m), to_decimal(sum));
  }
  emit_table(out, "reduced six-fold sums, base 4", "modulus,sum", rows);

  rows.clear();
  rows.emplace_back("5", to_decimal(kv.g2_sum_base7_mod5));
  rows.emplace_back("7", to_decimal(kv.g2_sum_base7_mod7));
  emit_table(out, "reported pair-kernel sums, base 7", "modulus,sum", rows);

  rows.clear();
  rows.emplace_back("5", to_decimal(kv.f4_sum_base5_mod5));
  emit_table(out, "reported six-fold sum, base 5", "modulus,sum", rows);

  rows.clear();
  for (const auto& [m, size] : kv.ec7_sizes) {
    rows.emplace_back(std::to_string(m), std::to_string(size));
  }
  emit_table(out, "restricted-set sizes, base 7 (reported)", "modulus,elements",
             rows);

  rows.clear();
  for (const auto& e : kv.d9_residues) {
    rows.emplace_back(std::to_string(e.modulus), std::to_string(e.residue));
  }
  emit_table(out, "ninth-value residues", "modulus,residue", rows);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workbench for exact and modular monotone-Boolean-function counting"};
  app.require_subcommand(1);

  GlobalOptions g;
  g.cache_dir = default_cache_dir();
  app.add_option("--cache-dir", g.cache_dir,
                 "Cache directory (env DDK_CACHE_DIR, default ./.ddk-cache)");
  app.add_flag("--no-cache", g.no_cache, "Disable the table cache");
  app.add_option("--threads", g.threads, "Worker threads (0 = auto)");
  app.add_option("--format", g.format, "Output format: plain, json, csv")
      ->check(CLI::IsMember({"plain", "json", "csv"}));
  app.add_option("--budget", g.budget,
                 "Kernel-evaluation budget for reduced sums");
  app.add_flag("--quiet", g.quiet, "Suppress progress on stderr");

  int n = 0, target = 0;
  std::uint64_t modulus = 0;
  std::string method, out_file, pairs, suite = "quick";
  bool hist = false, matrix_check = false, with_optional = false;

  CLI::App* c_enum = app.add_subcommand("enumerate", "Enumerate a lattice");
  c_enum->add_option("--n", n, "Arity")->required();
  c_enum->add_option("--out", out_file, "Write the lattice cache file here");

  CLI::App* c_classes = app.add_subcommand("classes", "Equivalence classes");
  c_classes->add_option("--n", n, "Arity")->required();
  c_classes->add_flag("--hist", hist, "Print the orbit-size histogram");

  CLI::App* c_compute = app.add_subcommand("compute", "Exact counts");
  c_compute->add_option("--target", target, "Target index")->required();
  c_compute->add_option("--method", method, "g2, h3, f4, or direct")->required();

  CLI::App* c_residue = app.add_subcommand("residue", "Residues via reduced sums");
  c_residue->add_option("--target", target, "Target index")->required();
  c_residue->add_option("--mod", modulus, "Modulus")->required();
  c_residue->add_option("--method", method, "g2, h3, f4, p4mod3, lambda2")
      ->required();

  CLI::App* c_p4 = app.add_subcommand("p4", "4-chain counts");
  c_p4->add_option("--n", n, "Arity")->required();
  c_p4->add_flag("--matrix-check", matrix_check,
                 "Cross-check against the order-matrix cube (n <= 3)");

  CLI::App* c_crt = app.add_subcommand("crt", "Combine residues");
  c_crt->add_option("--pairs", pairs, "Comma-separated modulus:residue pairs")
      ->required();

  CLI::App* c_verify = app.add_subcommand("verify", "Verification suites");
  c_verify->add_option("--suite", suite, "quick, paper, oracle, or acceptance");
  c_verify->add_flag("--with-optional", with_optional,
                     "Include the sanctioned long runs");

  CLI::App* c_tables = app.add_subcommand("tables", "Reference tables");
  bool emit = false;
  c_tables->add_flag("--emit", emit, "Emit all reference tables as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    Session session(g);
    if (c_enum->parsed()) return cmd_enumerate(session, n, out_file);
    if (c_classes->parsed()) return cmd_classes(session, n, hist);
    if (c_compute->parsed()) return cmd_compute(session, target, method);
    if (c_residue->parsed()) return cmd_residue(session, target, modulus, method);
    if (c_p4->parsed()) return cmd_p4(session, n, matrix_check);
    if (c_crt->parsed()) return cmd_crt(session, pairs);
    if (c_verify->parsed()) return cmd_verify(session, suite, with_optional);
    if (c_tables->parsed()) return cmd_tables(session);
    std::cerr << "no subcommand\n";
    return kExitUsage;
  } catch (const BudgetError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kExitResource;
  } catch (const ResourceLimitError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
