#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11/CLI11.hpp>
#include <fmt/format.h>

#include "mgl/convergence.hpp"
#include "mgl/density.hpp"
#include "mgl/error.hpp"
#include "mgl/graphon.hpp"
#include "mgl/io.hpp"
#include "mgl/mobius.hpp"
#include "mgl/multigraph.hpp"
#include "mgl/parameter.hpp"
#include "mgl/sampler.hpp"
#include "mgl/version.hpp"

namespace fs = std::filesystem;
using namespace mgl;

namespace {

enum Exit : int { kPass = 0, kVerdictFail = 1, kParse = 2, kBudget = 3, kPrecondition = 4 };

// Input problems (unreadable, malformed or invalid files) all map to exit 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class Fn>
auto load(Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw InputError(e.what());
  }
}

int exit_code(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kParseError: return kParse;
    case ErrorCode::kBudgetExceeded:
    case ErrorCode::kTruncationTooLarge:
    case ErrorCode::kTooLargeForCanonicalization: return kBudget;
    default: return kPrecondition;
  }
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw InputError(path + ": cannot open for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  bool to_file() const { return file_.is_open(); }

 private:
  std::ofstream file_;
};

std::string seed_label(const std::optional<std::uint64_t>& seed) {
  return seed ? std::to_string(*seed) : "none";
}

std::string header(const std::string& command, const std::optional<std::uint64_t>& seed,
                   const Truncation* truncation, const std::string& tol,
                   const std::string& extra = {}) {
  std::string fields = fmt::format("command={} seed={} truncation={} tol={}", command, seed_label(seed),
                                   truncation ? truncation_label(*truncation) : "none", tol);
  if (!extra.empty()) fields += " " + extra;
  return output_header(fields);
}

std::string upper_label(const Multigraph& a) {
  std::string out;
  const auto upper = a.upper_triangle();
  for (std::size_t i = 0; i < upper.size(); ++i) out += fmt::format("{}{}", i ? ";" : "", upper[i]);
  return out;
}

struct Source {
  std::string kind;
  fs::path path;
};

Source split_source(const std::string& source) {
  const auto colon = source.find(':');
  if (colon == std::string::npos) throw InputError(source + ": expected '<kind>:<path>'");
  Source s{source.substr(0, colon), source.substr(colon + 1)};
  if (s.kind == "param") {
    const auto ext = s.path.extension().string();
    if (ext == ".mg") s.kind = "graph";
    else if (ext == ".mgw") s.kind = "graphon";
    else if (ext == ".ptab") s.kind = "table";
    else throw InputError(source + ": cannot infer the parameter kind from the extension");
  }
  return s;
}

GraphParameter load_parameter(const std::string& source, Mode mode, std::uint64_t budget) {
  const Source s = split_source(source);
  return load([&] {
    if (s.kind == "graph") return GraphParameter::from_graph(read_mg_file(s.path), mode, budget);
    if (s.kind == "graphon") return GraphParameter::from_graphon(read_mgw_file(s.path), mode, budget);
    if (s.kind == "table") return GraphParameter::from_table(read_ptab_file(s.path));
    throw Error(ErrorCode::kParseError, source + ": unknown parameter kind '" + s.kind + "'");
  });
}

std::unique_ptr<ArrayGenerator> load_generator(const std::string& source) {
  const Source s = split_source(source);
  return load([&]() -> std::unique_ptr<ArrayGenerator> {
    if (s.kind == "graph") return std::make_unique<GraphArray>(read_mg_file(s.path));
    if (s.kind == "graph0") return std::make_unique<InjectiveGraphArray>(read_mg_file(s.path));
    if (s.kind == "graphon") return std::make_unique<GraphonArray>(read_mgw_file(s.path));
    throw Error(ErrorCode::kParseError, source + ": unknown generator kind '" + s.kind + "'");
  });
}

Truncation make_truncation(Mult max_mult, const std::optional<std::uint64_t>& max_edges) {
  return Truncation{max_mult, max_edges};
}

std::vector<fs::path> sequence_files(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw InputError(dir.string() + ": not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto ext = entry.path().extension();
    if (entry.is_regular_file() && (ext == ".mg" || ext == ".mgw")) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw InputError(dir.string() + ": no .mg or .mgw files");
  return files;
}

// density -------------------------------------------------------------------

struct DensityArgs {
  std::vector<std::string> f;
  std::string g, w, out;
  std::vector<std::string> variants;
  std::string mode = "leq";
  std::uint64_t budget = kDefaultMapBudget;
};

int run_density(const DensityArgs& a) {
  std::vector<Multigraph> fs_;
  std::vector<std::string> names;
  for (const auto& path : a.f) {
    fs_.push_back(load([&] { return read_mg_file(path); }));
    names.push_back(fs::path(path).stem().string());
  }
  DensityTable table;
  if (!a.g.empty()) {
    const Multigraph g = load([&] { return read_mg_file(a.g); });
    std::vector<DensityVariant> variants;
    for (const auto& v : a.variants) variants.push_back(load([&] { return parse_variant(v); }));
    if (variants.empty()) {
      variants = {DensityVariant::kHomLeq, DensityVariant::kHomEq, DensityVariant::kInjLeq,
                  DensityVariant::kInjEq};
    }
    table = density_table(fs_, g, variants, a.budget);
  } else {
    const StepMultigraphon w = load([&] { return read_mgw_file(a.w); });
    const Mode mode = load([&] { return parse_mode(a.mode); });
    table.variants = {mode == Mode::kLeq ? DensityVariant::kHomLeq : DensityVariant::kHomEq};
    for (const auto& f : fs_) {
      DensityCell cell;
      try {
        cell.value = graphon_density_exact(f, w, mode, a.budget);
      } catch (const Error& e) {
        cell.error = e.what();
        cell.code = e.code();
      }
      table.rows.push_back({cell});
    }
  }
  Output out(a.out);
  out.stream() << header("density", std::nullopt, nullptr, "exact",
                         fmt::format("budget={}", a.budget))
               << '\n';
  write_density_csv(out.stream(), table, names);
  int code = kPass;
  for (const auto& row : table.rows) {
    for (const auto& cell : row) {
      if (!cell.value) {
        std::cerr << cell.error << '\n';
        code = std::max(code, cell.code == ErrorCode::kBudgetExceeded ? int(kBudget) : int(kPrecondition));
      }
    }
  }
  return code;
}

// mobius --------------------------------------------------------------------

struct MobiusArgs {
  std::string param, a, out, format = "csv", mode = "leq";
  std::size_t k = 1;
  Mult max_mult = 2;
  std::optional<std::uint64_t> max_edges;
  bool inverse = false, zeta = false;
  std::uint64_t budget = kDefaultMapBudget;
};

int run_mobius(const MobiusArgs& a) {
  const Truncation trunc = make_truncation(a.max_mult, a.max_edges);
  Output out(a.out);
  std::ostream& os = out.stream();
  if (a.zeta) {
    std::vector<Multigraph> basis = enumerate_Ak(a.k, trunc);
    sort_basis(basis);
    const IntMatrix z = zeta_matrix(basis);
    const IntMatrix zi = zeta_inverse(basis);
    const bool identity = (z * zi).isIdentity(0);
    os << header("mobius", std::nullopt, &trunc, "exact", fmt::format("k={}", a.k)) << '\n'
       << "test: zeta inverse\nbasis_size: " << basis.size() << "\nverdict: "
       << (identity ? "pass" : "fail") << '\n';
    return identity ? kPass : kVerdictFail;
  }
  const Mode mode = load([&] { return parse_mode(a.mode); });
  const GraphParameter f = load_parameter(a.param, mode, a.budget);
  std::vector<Multigraph> targets;
  if (!a.a.empty()) targets.push_back(load([&] { return read_mg_file(a.a); }));
  else targets = enumerate_Ak(a.k, trunc);

  if (a.inverse) {
    const Source s = split_source(a.param);
    if (s.kind != "table") throw InputError("--inverse needs a table parameter");
    const auto tables = load([&] { return read_ptab_file(s.path); });
    os << header("mobius", std::nullopt, &trunc, "exact", "inverse=1") << '\n'
       << "A,value_num,value_den,value_float,residual\n";
    for (const auto& target : targets) {
      const auto it = std::find_if(tables.begin(), tables.end(),
                                   [&](const ParameterTable& t) { return t.k == target.size(); });
      if (it == tables.end()) throw Error(ErrorCode::kTableMiss, "no table section for this k");
      const InverseMobius inv = inverse_mobius(*it, target);
      os << fmt::format("{},{},{},{:.17g},{}\n", upper_label(target), numerator(inv.value).str(),
                        denominator(inv.value).str(), to_double(inv.value), to_string(inv.residual));
    }
    return kPass;
  }

  if (a.format == "ptab") {
    ParameterTable table;
    table.k = a.k;
    table.truncation = trunc;
    for (const auto& target : targets) table.entries.emplace(target, f.mobius(target).exact.value());
    const std::vector<std::string> head{header("mobius", std::nullopt, &trunc, "exact")};
    write_ptab(os, std::span<const ParameterTable>(&table, 1), head);
    return kPass;
  }
  os << header("mobius", std::nullopt, &trunc, "exact") << '\n'
     << "A,value_num,value_den,value_float\n";
  for (const auto& target : targets) {
    const Evaluation e = f.mobius(target);
    const Rational& v = e.exact.value();
    os << fmt::format("{},{},{},{:.17g}\n", upper_label(target), numerator(v).str(),
                      denominator(v).str(), e.value);
  }
  return kPass;
}

// check ---------------------------------------------------------------------

struct CheckArgs {
  std::string param, out, mode = "leq";
  std::size_t k = 1, unlabeled = 1, basis_cap = kDefaultBasisCap;
  Mult max_mult = 2;
  std::optional<std::uint64_t> max_edges;
  double tol = 1e-9, psd_tol = kDefaultPsdTolerance, factor_tol = 1e-10;
  std::uint64_t seed = 0, budget = kDefaultMapBudget;
};

int run_check(const CheckArgs& a) {
  const Truncation trunc = make_truncation(a.max_mult, a.max_edges);
  const Mode mode = load([&] { return parse_mode(a.mode); });
  const GraphParameter f = load_parameter(a.param, mode, a.budget);
  ParameterCheckOptions opt;
  opt.tol = a.tol;
  opt.seed = a.seed;
  ParameterReport report = check_parameter(f, a.k, trunc, opt);
  std::vector<std::string> skipped;

  const auto basis = connection_basis(a.k, a.unlabeled, a.max_mult, a.basis_cap);
  try {
    const ConnectionMatrix cm = connection_matrix(f, a.k, basis);
    const PsdResult psd = psd_check(cm.entries, a.psd_tol);
    report.verdicts.push_back(
        {"connection matrix psd", psd.is_psd, false,
         fmt::format("k={}, basis {}, min eigenvalue {:.6g}, max-norm {:.6g}", a.k, basis.size(),
                     psd.min_eigenvalue, psd.max_norm)});
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kTableMiss && e.code() != ErrorCode::kTruncationExceeded) throw;
    skipped.push_back(std::string("connection matrix psd: skipped -- ") + e.what());
  }
  try {
    const FactorizationReport fr =
        factorization_check([&](const Multigraph& g) { return f.exact(g); }, a.k, trunc);
    report.verdicts.push_back(
        {"factorization", fr.max_deviation <= a.factor_tol, false,
         fmt::format("basis {}, max |M - ZDZ^T| {:.3g}", fr.basis_size, fr.max_deviation)});
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kTableMiss && e.code() != ErrorCode::kTruncationExceeded) throw;
    skipped.push_back(std::string("factorization: skipped -- ") + e.what());
  }

  Output out(a.out);
  std::ostream& os = out.stream();
  os << header("check", a.seed, &trunc, fmt::format("{:g}", a.tol),
               fmt::format("k={} psd_tol={:g}", a.k, a.psd_tol))
     << '\n'
     << "parameter: " << f.describe() << '\n';
  for (const auto& line : skipped) os << line << '\n';
  write_report(os, report);
  return report.pass() ? kPass : kVerdictFail;
}

// sample --------------------------------------------------------------------

struct SampleArgs {
  std::string from, consistent, out, out_dir, test, route = "auto";
  std::size_t k = 0, n = 0, samples = 20000;
  std::uint32_t replicate = 0;
  std::optional<std::uint64_t> seed;
  Mult max_mult = 2;
  double alpha = kDefaultSignificance;
  std::uint64_t budget = kDefaultMapBudget;
};

int run_sample(const SampleArgs& a) {
  if (!a.seed) {
    std::cerr << "error: --seed is required\n";
    return kPrecondition;
  }
  const std::uint64_t seed = *a.seed;
  if (!a.consistent.empty()) {
    if (a.n == 0) throw Error(ErrorCode::kInvalidArgument, "--n must be positive");
    if (a.out_dir.empty()) throw Error(ErrorCode::kInvalidArgument, "--out-dir is required");
    const GraphParameter f = load_parameter(a.consistent, Mode::kLeq, a.budget);
    SequenceOptions opt;
    if (a.route == "latent") opt.route = SequenceRoute::kLatent;
    else if (a.route == "enumeration") opt.route = SequenceRoute::kEnumeration;
    else if (a.route != "auto") throw Error(ErrorCode::kInvalidArgument, "unknown route " + a.route);
    const Truncation trunc{a.max_mult, std::nullopt};
    const ConsistentSequence seq = sample_consistent_sequence(f, a.n, trunc, seed, opt);
    fs::create_directories(a.out_dir);
    const std::string route = seq.route == SequenceRoute::kLatent ? "latent" : "enumeration";
    const std::string head = header("sample", seed, &trunc, "none",
                                    fmt::format("route={} source={}", route, a.consistent));
    std::ofstream manifest(fs::path(a.out_dir) / "manifest.csv", std::ios::binary);
    manifest << head << '\n' << "index,file,n,edges,dropped_mass\n";
    const std::size_t digits = std::to_string(a.n).size();
    for (std::size_t i = 0; i < seq.graphs.size(); ++i) {
      const std::string name = fmt::format("G_{:0{}}.mg", i + 1, digits);
      std::ofstream file(fs::path(a.out_dir) / name, std::ios::binary);
      const std::vector<std::string> lines{head, fmt::format("# index={}", i + 1)};
      write_mg(file, seq.graphs[i], lines);
      manifest << fmt::format("{},{},{},{},{:.6g}\n", i + 1, name, seq.graphs[i].size(),
                              edge_count(seq.graphs[i]), seq.dropped_mass[i]);
    }
    if (seq.restarts > 0) std::cerr << "note: " << seq.restarts << " restarts on zero conditional mass\n";
    return kPass;
  }
  if (a.from.empty()) throw Error(ErrorCode::kInvalidArgument, "--from or --consistent is required");
  if (a.k == 0) throw Error(ErrorCode::kInvalidArgument, "--k must be positive");
  const auto gen = load_generator(a.from);
  Output out(a.out);
  std::ostream& os = out.stream();
  const std::string head = header("sample", seed, nullptr, fmt::format("{:g}", a.alpha),
                                  fmt::format("source={} k={}", a.from, a.k));
  if (a.test.empty()) {
    const ArraySample s = gen->sample(a.k, seed, a.replicate);
    const std::vector<std::string> lines{
        head, fmt::format("# generator={} replicate={}", s.source, s.replicate)};
    write_mg(os, s.window, lines);
    return kPass;
  }
  os << head << '\n';
  bool pass = true;
  if (a.test == "exchangeability") {
    const ExchangeabilityReport r = exchangeability_test(*gen, a.k, a.samples, seed, {}, a.alpha);
    for (const auto& rep : r.per_permutation) write_report(os, rep);
    pass = r.pass;
  } else if (a.test == "dissociation") {
    if (a.k < 2 || a.k > 4) throw Error(ErrorCode::kInvalidArgument, "dissociation needs 2 <= k <= 4");
    std::vector<std::size_t> left, right;
    for (std::size_t i = 0; i < a.k; ++i) (i < a.k / 2 ? left : right).push_back(i);
    const StatReport r = dissociation_test(*gen, left, right, a.samples, seed, a.alpha);
    write_report(os, r);
    pass = r.pass;
  } else if (a.test == "consistency") {
    const StatReport r = consistency_test(*gen, a.k, a.samples, seed, a.alpha);
    write_report(os, r);
    pass = r.pass;
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown test " + a.test);
  }
  return pass ? kPass : kVerdictFail;
}

// converge ------------------------------------------------------------------

struct ConvergeArgs {
  std::string seq, tests = "default", out;
  bool tight = false, cross = false;
  std::size_t window = 3, samples = 20000;
  double tol = 0.05, threshold = kDefaultTightnessThreshold;
  std::vector<Mult> m_grid;
  std::uint64_t seed = 0, budget = 10'000'000;
};

std::vector<Multigraph> load_testgraphs(const std::string& source) {
  if (source == "default") return default_testgraphs();
  std::vector<Multigraph> out;
  for (const auto& path : sequence_files(source)) {
    if (path.extension() == ".mg") out.push_back(load([&] { return read_mg_file(path); }));
  }
  if (out.empty()) throw InputError(source + ": no .mg testgraphs");
  return out;
}

int run_converge(const ConvergeArgs& a) {
  const auto files = sequence_files(a.seq);
  Output out(a.out);
  std::ostream& os = out.stream();
  std::ostream& report_os = out.to_file() ? std::cout : std::cerr;

  if (a.tight) {
    std::vector<StepMultigraphon> seq;
    Mult top = 0;
    for (const auto& p : files) {
      seq.push_back(load([&] {
        return p.extension() == ".mgw" ? read_mgw_file(p) : from_graph(read_mg_file(p));
      }));
      top = std::max(top, seq.back().cap());
    }
    std::vector<Mult> grid = a.m_grid;
    if (grid.empty()) {
      for (Mult m = 1; m <= top + 1; ++m) grid.push_back(m);
    }
    const TightnessReport r = tightness_diagnostic(seq, grid, a.threshold);
    os << header("converge", std::nullopt, nullptr, fmt::format("{:g}", a.threshold), "mode=tightness")
       << '\n';
    write_report(os, r);
    return r.pass ? kPass : kVerdictFail;
  }

  std::vector<SequenceElement> seq;
  std::vector<Multigraph> graphs;
  for (const auto& p : files) {
    if (p.extension() == ".mgw") {
      seq.emplace_back(load([&] { return read_mgw_file(p); }));
    } else {
      graphs.push_back(load([&] { return read_mg_file(p); }));
      seq.emplace_back(graphs.back());
    }
  }
  const auto tests = load_testgraphs(a.tests);
  TrajectoryOptions topt;
  topt.budget = a.budget;
  topt.seed = a.seed;
  topt.mc_samples = a.samples;
  const DensityTrajectory traj = density_trajectory(seq, tests, topt);
  os << header("converge", a.seed, nullptr, fmt::format("{:g}", a.tol),
               fmt::format("window={} budget={} mc_samples={}", a.window, a.budget, a.samples))
     << '\n';
  write_trajectory_csv(os, traj);

  bool pass = true;
  if (seq.size() >= 2) {
    const DiagnosticReport r = cauchy_diagnostic(traj, a.window, a.tol);
    write_report(report_os, r);
    pass = r.pass;
  } else {
    report_os << "note: a single sequence entry, no oscillation diagnostic\n";
  }
  std::size_t checked = 0, violations = 0;
  for (const auto& g : graphs) {
    for (const auto& f : tests) {
      try {
        ++checked;
        if (!injective_gap(f, g, a.budget).holds) ++violations;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kBudgetExceeded) throw;
        --checked;
      }
    }
  }
  report_os << fmt::format("injective gap bound: {} pairs checked, {} violations\n", checked, violations);
  if (violations > 0) pass = false;
  if (a.cross) {
    if (graphs.size() < 2) throw Error(ErrorCode::kInvalidArgument, "--cross-check needs two graphs");
    CrossCheckOptions copt;
    copt.window = a.window;
    copt.tol = a.tol;
    copt.budget = a.budget;
    const CrossCheckReport r = cross_check(graphs, tests, a.samples, a.seed, copt);
    write_report(report_os, r);
    if (!r.agree) pass = false;
  }
  return pass ? kPass : kVerdictFail;
}

// quotient ------------------------------------------------------------------

int run_quotient(const std::string& g_path, const std::string& out_path) {
  const Multigraph g = load([&] { return read_mg_file(g_path); });
  const QuotientData q = quotient(g);
  Output out(out_path);
  std::ostream& os = out.stream();
  os << header("quotient", std::nullopt, nullptr, "exact") << '\n' << "classes:";
  for (const auto& cls : q.classes) {
    os << " {";
    for (std::size_t i = 0; i < cls.size(); ++i) os << (i ? "," : "") << cls[i] + 1;
    os << '}';
  }
  os << "\nweights:";
  for (const auto& w : q.weights) os << ' ' << to_string(w);
  os << "\nmatrix:\n";
  write_mg(os, q.matrix);
  const bool ok = isomorphic(reconstruct(q, g.size()), g, std::max(kDefaultCanonicalCap, g.size()));
  os << "roundtrip: " << (ok ? "pass" : "fail") << '\n';
  return ok ? kPass : kVerdictFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multigraph limits: densities, Mobius transforms, samplers and checks", "mgl"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  DensityArgs da;
  auto* density_cmd = app.add_subcommand("density", "Exact homomorphism densities as CSV");
  density_cmd->add_option("--F", da.f, "Testgraph .mg files")->required();
  auto* g_opt = density_cmd->add_option("--G", da.g, "Target graph .mg");
  auto* w_opt = density_cmd->add_option("--W", da.w, "Target step multigraphon .mgw");
  g_opt->excludes(w_opt);
  density_cmd->add_option("--variant", da.variants, "hom_leq, hom_eq, inj_leq, inj_eq (with --G)");
  density_cmd->add_option("--mode", da.mode, "leq or eq (with --W)");
  density_cmd->add_option("--budget", da.budget, "Map enumeration budget");
  density_cmd->add_option("--out", da.out, "Output CSV (default stdout)");

  MobiusArgs ma;
  auto* mobius_cmd = app.add_subcommand("mobius", "Mobius transform table, inverse sums or zeta check");
  mobius_cmd->add_option("--param", ma.param, "graph:|graphon:|table:|param:<path>");
  mobius_cmd->add_option("--k", ma.k, "Vertex count of the matrices");
  mobius_cmd->add_option("--max-mult", ma.max_mult, "Truncation multiplicity cap");
  mobius_cmd->add_option("--max-edges", ma.max_edges, "Truncation edge cap");
  mobius_cmd->add_option("--A", ma.a, "Single matrix .mg instead of the whole truncation");
  mobius_cmd->add_option("--mode", ma.mode, "leq or eq for graph/graphon parameters");
  mobius_cmd->add_option("--format", ma.format, "csv or ptab")->check(CLI::IsMember({"csv", "ptab"}));
  mobius_cmd->add_flag("--inverse", ma.inverse, "Truncated upward sum of a table");
  mobius_cmd->add_flag("--zeta", ma.zeta, "Check zeta_matrix * zeta_inverse = I");
  mobius_cmd->add_option("--budget", ma.budget, "Evaluation budget");
  mobius_cmd->add_option("--out", ma.out, "Output file (default stdout)");

  CheckArgs ca;
  auto* check_cmd = app.add_subcommand("check", "Parameter battery, connection-matrix PSD and factorization");
  check_cmd->add_option("--param", ca.param, "graph:|graphon:|table:|param:<path>")->required();
  check_cmd->add_option("--k", ca.k, "Label count / matrix size");
  check_cmd->add_option("--max-mult", ca.max_mult, "Truncation multiplicity cap");
  check_cmd->add_option("--max-edges", ca.max_edges, "Truncation edge cap");
  check_cmd->add_option("--mode", ca.mode, "leq or eq for graph/graphon parameters");
  check_cmd->add_option("--tol", ca.tol, "Tolerance for equalities and f-dagger >= 0");
  check_cmd->add_option("--psd-tol", ca.psd_tol, "Relative eigenvalue tolerance");
  check_cmd->add_option("--unlabeled", ca.unlabeled, "Unlabeled vertices in basis graphs");
  check_cmd->add_option("--basis-cap", ca.basis_cap, "Connection basis size cap");
  check_cmd->add_option("--seed", ca.seed, "Seed for pair sampling");
  check_cmd->add_option("--budget", ca.budget, "Evaluation budget");
  check_cmd->add_option("--out", ca.out, "Report file (default stdout)");

  SampleArgs sa;
  auto* sample_cmd = app.add_subcommand("sample", "Array windows, statistical tests, consistent sequences");
  sample_cmd->add_option("--from", sa.from, "graph:|graph0:|graphon:<path>");
  sample_cmd->add_option("--consistent", sa.consistent, "graph:|graphon:|table:|param:<path>");
  sample_cmd->add_option("--k", sa.k, "Window size");
  sample_cmd->add_option("--n", sa.n, "Sequence length for --consistent");
  sample_cmd->add_option("--seed", sa.seed, "Master seed (required)");
  sample_cmd->add_option("--replicate", sa.replicate, "Replicate index of the window");
  sample_cmd->add_option("--test", sa.test, "exchangeability, dissociation or consistency");
  sample_cmd->add_option("--samples", sa.samples, "Samples per test group");
  sample_cmd->add_option("--alpha", sa.alpha, "Significance level");
  sample_cmd->add_option("--max-mult", sa.max_mult, "Truncation for the enumeration route");
  sample_cmd->add_option("--route", sa.route, "auto, latent or enumeration");
  sample_cmd->add_option("--out", sa.out, "Output file (default stdout)");
  sample_cmd->add_option("--out-dir", sa.out_dir, "Directory for --consistent output");
  sample_cmd->add_option("--budget", sa.budget, "Evaluation budget");

  ConvergeArgs cva;
  auto* converge_cmd = app.add_subcommand("converge", "Trajectories and convergence diagnostics");
  converge_cmd->add_option("--seq", cva.seq, "Directory of .mg/.mgw files, in name order")->required();
  converge_cmd->add_option("--tests", cva.tests, "'default' or a directory of .mg testgraphs");
  converge_cmd->add_flag("--tight", cva.tight, "Tightness report instead of a trajectory");
  converge_cmd->add_flag("--cross-check", cva.cross, "Compare density and window-law stabilization");
  converge_cmd->add_option("--m-grid", cva.m_grid, "Multiplicity grid for --tight")->delimiter(',');
  converge_cmd->add_option("--threshold", cva.threshold, "Tail threshold for --tight");
  converge_cmd->add_option("--window", cva.window, "Trailing window length");
  converge_cmd->add_option("--tol", cva.tol, "Oscillation tolerance");
  converge_cmd->add_option("--samples", cva.samples, "Monte Carlo samples per cell");
  converge_cmd->add_option("--seed", cva.seed, "Seed for Monte Carlo cells");
  converge_cmd->add_option("--budget", cva.budget, "Exact evaluation budget per cell");
  converge_cmd->add_option("--out", cva.out, "Trajectory CSV (default stdout)");

  std::string q_g, q_out;
  auto* quotient_cmd = app.add_subcommand("quotient", "Twin quotient and reconstruction round trip");
  quotient_cmd->add_option("--G", q_g, "Graph .mg")->required();
  quotient_cmd->add_option("--out", q_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kParse;
  }

  try {
    if (*density_cmd) {
      if (da.g.empty() == da.w.empty()) throw InputError("exactly one of --G and --W is required");
      return run_density(da);
    }
    if (*mobius_cmd) {
      if (!ma.zeta && ma.param.empty()) throw InputError("--param is required");
      return run_mobius(ma);
    }
    if (*check_cmd) return run_check(ca);
    if (*sample_cmd) return run_sample(sa);
    if (*converge_cmd) return run_converge(cva);
    if (*quotient_cmd) return run_quotient(q_g, q_out);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParse;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kPrecondition;
  }
  return kPass;
}
