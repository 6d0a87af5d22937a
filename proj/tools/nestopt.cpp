/*-------------------------------------------------------------------------------------------------
| Part of the nestopt project; distributed under the MIT License.
| See the LICENSE file for details.
*------------------------------------------------------------------------------------------------*/
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nestopt/nestopt.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

struct RunStats {
  std::string circuit_name;
  int n = 0;
  int delta_n = 0;
  int t_initial = 0;       // post-fusion
  int t_initial_raw = 0;   // odd gadgets before fusion
  int t_final = 0;
  std::uint64_t acceptances = 0;
  std::uint64_t seed = 0;
  std::uint64_t reps = 0;
  double wall_seconds = 0.0;        // optimize phase
  double wall_seconds_total = 0.0;  // whole run
  std::string verified = "skipped";
  bool raw_fusion_mismatch = false;
  std::string error;

  json to_json() const {
    json j;
    j["circuit_name"] = circuit_name;
    j["n"] = n;
    j["delta_n"] = delta_n;
    j["t_initial"] = t_initial;
    j["t_initial_raw"] = t_initial_raw;
    j["t_final"] = t_final;
    j["acceptances"] = acceptances;
    j["seed"] = seed;
    j["reps"] = reps;
    j["wall_seconds"] = wall_seconds;
    j["wall_seconds_total"] = wall_seconds_total;
    j["verified"] = verified;
    j["raw_fusion_mismatch"] = raw_fusion_mismatch;
    if (!error.empty()) j["error"] = error;
    return j;
  }
};

struct ReduceOutcome {
  RunStats stats;
  nestopt::Circuit output;
  bool has_measurements = false;
  std::string phi_dump;
  bool verify_failed = false;
};

ReduceOutcome run_reduce(const nestopt::Circuit& input, const std::string& name,
                         std::uint64_t reps, std::uint64_t seed, bool verify, bool want_dump) {
  using namespace nestopt;
  auto t0 = std::chrono::steady_clock::now();

  ReduceOutcome out;
  out.stats.circuit_name = name;
  out.stats.seed = seed;
  out.stats.reps = reps;

  DecomposedCircuit dec = run_pipeline_stages_1_to_5(input);
  out.stats.n = dec.n_original;
  out.stats.delta_n = dec.delta_n;
  out.stats.t_initial = dec.phi.t_count();
  out.stats.t_initial_raw = dec.raw_odd_gadgets;
  out.stats.raw_fusion_mismatch = out.stats.t_initial != out.stats.t_initial_raw;

  auto [phi_opt, ostats] = optimize(dec.phi, OptimizerConfig{reps, seed});
  out.stats.t_final = ostats.t_final;
  out.stats.acceptances = ostats.acceptances;
  out.stats.wall_seconds = ostats.wall_seconds;

  DecomposedCircuit reduced = dec;
  reduced.phi = phi_opt;
  out.output = reduced.recompose();
  out.has_measurements = std::any_of(out.output.gates.begin(), out.output.gates.end(),
                                     [](const Gate& g) { return g.kind == GateKind::MeasX; });
  if (want_dump) out.phi_dump = phi_opt.dump();

  if (verify) {
    int n_total = dec.phi.n();
    if (n_total <= 12) {
      EquivalenceReport rep = circuit_equiv_postselected(input, out.output, 1e-9);
      out.stats.verified = "full";
      out.verify_failed = !rep.equivalent;
    } else if (n_total <= HomogeneousCircuit::kOracleLimit) {
      EquivalenceReport rep = diag_equiv(dec.phi, phi_opt);
      out.stats.verified = "diag";
      out.verify_failed = !rep.equivalent;
    } else {
      out.stats.verified = "skipped";
    }
  }

  out.stats.wall_seconds_total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

int cmd_reduce(const std::string& in_path, const std::string& out_path,
               const std::string& stats_path, std::uint64_t reps, std::uint64_t seed, bool verify,
               bool extended, bool dump_phi) {
  nestopt::Circuit input;
  try {
    input = nestopt::parse_qc(read_file(in_path));
  } catch (const std::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  }

  ReduceOutcome out =
      run_reduce(input, fs::path(in_path).stem().string(), reps, seed, verify, dump_phi);

  if (!out_path.empty())
    write_file(out_path, nestopt::write_qc(out.output, extended || out.has_measurements));
  if (dump_phi) std::cout << out.phi_dump;

  std::string stats_text = out.stats.to_json().dump() + "\n";
  if (stats_path.empty())
    std::cout << stats_text;
  else
    write_file(stats_path, stats_text);

  if (verify && out.verify_failed) {
    std::cerr << "verification FAILED\n";
    return 3;
  }
  return 0;
}

int cmd_verify(const std::string& a_path, const std::string& b_path, bool diag, double tol) {
  using namespace nestopt;
  Circuit a, b;
  try {
    a = parse_qc(read_file(a_path));
    b = parse_qc(read_file(b_path));
  } catch (const std::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  }
  try {
    if (diag) {
      DecomposedCircuit da = run_pipeline_stages_1_to_5(a);
      DecomposedCircuit db = run_pipeline_stages_1_to_5(b);
      int n = std::max(da.phi.n(), db.phi.n());
      if (n > HomogeneousCircuit::kOracleLimit) {
        std::cout << "skipped: diagonal stage exceeds the oracle limit\n";
        return 4;
      }
      HomogeneousCircuit ha(n), hb(n);
      for (const auto& [s, v] : da.phi.coeffs()) ha.add_gadget(s, v);
      for (const auto& [s, v] : db.phi.coeffs()) hb.add_gadget(s, v);
      EquivalenceReport rep = diag_equiv(ha, hb);
      if (rep.equivalent) {
        std::cout << "equivalent (diagonal stages agree on all assignments)\n";
        return 0;
      }
      std::cout << "NOT equivalent: diagonal stages differ at assignment "
                << rep.basis_witness.value_or(0) << "\n";
      return 1;
    }
    EquivalenceReport rep = circuit_equiv_postselected(a, b, tol);
    if (rep.equivalent) {
      std::cout << "equivalent (max deviation " << rep.max_deviation << ")\n";
      return 0;
    }
    std::cout << "NOT equivalent: max deviation " << rep.max_deviation << " at basis input "
              << rep.basis_witness.value_or(0) << "\n";
    return 1;
  } catch (const verifier_error& e) {
    std::cout << "skipped: " << e.what() << "\n";
    return 4;
  }
}

int cmd_bench(const std::string& dir, std::uint64_t reps, std::uint64_t seed,
              const std::string& report_path) {
  using namespace nestopt;
  std::vector<fs::path> files;
  for (const auto& ent : fs::directory_iterator(dir))
    if (ent.is_regular_file() && ent.path().extension() == ".qc") files.push_back(ent.path());
  std::sort(files.begin(), files.end());

  std::vector<RunStats> all;
  for (const fs::path& f : files) {
    RunStats st;
    st.circuit_name = f.stem().string();
    std::uint64_t file_seed = seed ^ fnv1a(f.filename().string());
    try {
      Circuit input = parse_qc(read_file(f.string()));
      ReduceOutcome out = run_reduce(input, st.circuit_name, reps, file_seed, false, false);
      st = out.stats;
      // diagonal-stage check, feasible sizes only
      DecomposedCircuit dec = run_pipeline_stages_1_to_5(input);
      if (dec.phi.n() <= 16) {
        auto [phi_opt, _] = optimize(dec.phi, OptimizerConfig{reps, file_seed});
        st.verified = diag_equiv(dec.phi, phi_opt).equivalent ? "diag" : "diag-FAILED";
      }
    } catch (const std::exception& e) {
      st.error = e.what();
      st.seed = file_seed;
      st.reps = reps;
    }
    all.push_back(st);
  }

  std::printf("%-22s %5s %8s %8s %8s %10s %10s  %s\n", "circuit", "n", "delta_n", "init #T",
              "final #T", "opt (s)", "total (s)", "verified");
  for (const RunStats& st : all) {
    if (!st.error.empty()) {
      std::printf("%-22s  ERROR: %s\n", st.circuit_name.c_str(), st.error.c_str());
      continue;
    }
    std::printf("%-22s %5d %8d %8d %8d %10.3f %10.3f  %s%s\n", st.circuit_name.c_str(), st.n,
                st.delta_n, st.t_initial, st.t_final, st.wall_seconds, st.wall_seconds_total,
                st.verified.c_str(), st.raw_fusion_mismatch ? " [raw!=fused]" : "");
  }

  if (!report_path.empty()) {
    std::ostringstream machine;
    for (const RunStats& st : all) machine << st.to_json().dump() << "\n";
    write_file(report_path, machine.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"T-count reduction for Clifford+T/Toffoli circuits via spider-nest identities"};
  app.require_subcommand(1);

  // reduce
  std::string in_path, out_path, stats_path;
  std::uint64_t reps = 20000, seed = 0;
  bool verify = false, extended = false, dump_phi = false;
  CLI::App* red = app.add_subcommand("reduce", "optimize one .qc circuit");
  red->add_option("input", in_path, "input .qc file")->required();
  red->add_option("-o,--output", out_path, "optimized .qc output path");
  red->add_option("--reps", reps, "PHAGE repetitions per template (default 20000)");
  red->add_option("--seed", seed, "PRNG seed");
  red->add_option("--stats", stats_path, "write the run record (JSON) here instead of stdout");
  red->add_flag("--verify", verify, "verify the output against the input");
  red->add_flag("--extended-qc", extended, "always use the extended .qc output dialect");
  red->add_flag("--dump-phi", dump_phi, "print the optimized diagonal stage, one gadget per line");

  // verify
  std::string va, vb;
  bool diag = false;
  double tol = 1e-9;
  CLI::App* ver = app.add_subcommand("verify", "check equivalence of two .qc circuits");
  ver->add_option("a", va, "first circuit")->required();
  ver->add_option("b", vb, "second circuit")->required();
  ver->add_flag("--diag", diag, "compare diagonal stages exhaustively instead of statevectors");
  ver->add_option("--tol", tol, "numeric tolerance (default 1e-9)");

  // bench
  std::string bench_dir, report_path;
  std::uint64_t breps = 20000, bseed = 0;
  CLI::App* ben = app.add_subcommand("bench", "run the reduction over a directory of .qc files");
  ben->add_option("dir", bench_dir, "benchmark directory")->required();
  ben->add_option("--reps", breps, "PHAGE repetitions per template");
  ben->add_option("--seed", bseed, "base PRNG seed (per-file seed = seed xor hash(name))");
  ben->add_option("--report", report_path, "write newline-delimited JSON records here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (red->parsed())
      return cmd_reduce(in_path, out_path, stats_path, reps, seed, verify, extended, dump_phi);
    if (ver->parsed()) return cmd_verify(va, vb, diag, tol);
    if (ben->parsed()) return cmd_bench(bench_dir, breps, bseed, report_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
