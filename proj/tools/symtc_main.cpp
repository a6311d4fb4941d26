#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "symtc/cemit.hpp"
#include "symtc/error.hpp"
#include "symtc/exec.hpp"
#include "symtc/expr.hpp"
#include "symtc/io.hpp"
#include "symtc/loopgen.hpp"
#include "symtc/oracle.hpp"

namespace {

using namespace symtc;

struct ProblemArgs {
  std::string expr;
  std::string sym;
  std::string extents;
  std::string problem_file;
};

void addProblemFlags(CLI::App* cmd, ProblemArgs& args, bool needExtents) {
  cmd->add_option("--expr", args.expr,
                  "Statement, e.g. \"C[i,j] = A[i,j] + B[i,j]\"");
  cmd->add_option("--sym", args.sym,
                  "Input symmetries, e.g. \"A: {i,j}; B: {i,j}\"");
  cmd->add_option("--extents", args.extents, "Extents, e.g. \"i=4,j=4\"");
  cmd->add_option("--problem", args.problem_file,
                  "Problem JSON file (alternative to --expr/--sym/--extents)");
  (void)needExtents;
}

struct LoadedProblem {
  TensorStatement stmt;
  std::vector<TensorSignature> sigs;  // extents unset
  std::map<std::string, Coord> extents;
};

LoadedProblem loadProblem(const ProblemArgs& args) {
  std::string expr = args.expr;
  std::string sym = args.sym;
  std::map<std::string, Coord> extents;
  if (!args.problem_file.empty()) {
    Problem p = load_problem_json(args.problem_file);
    expr = p.expr;
    sym = p.symmetries;
    extents = p.extents;
  }
  if (!args.extents.empty()) {
    for (const auto& [v, n] : parse_extents(args.extents)) extents[v] = n;
  }
  if (expr.empty()) {
    throw ValidationError("no statement given; use --expr or --problem");
  }
  LoadedProblem loaded;
  loaded.stmt = parse_statement(expr);
  loaded.sigs = parse_symmetries(sym, loaded.stmt);
  loaded.extents = std::move(extents);
  return loaded;
}

std::map<std::string, Coord> requireAllExtents(const LoadedProblem& p) {
  for (const auto& v : p.stmt.var_order) {
    if (!p.extents.count(v)) {
      throw ValidationError("no extent for index variable '" + v +
                            "'; pass --extents");
    }
  }
  return p.extents;
}

int runCodegen(const ProblemArgs& args, const std::string& emit,
               const std::string& name, const std::string& outPath) {
  LoadedProblem p = loadProblem(args);
  std::vector<TensorSignature> sigs = p.sigs;
  if (!p.extents.empty()) sigs = attach_extents(sigs, requireAllExtents(p));
  LoopNest nest = generate(p.stmt, sigs);
  std::string text;
  if (emit == "ir") {
    text = nest.printIr();
  } else if (emit == "c") {
    text = emit_c(nest, name);
  } else {
    throw ValidationError("--emit must be 'ir' or 'c'");
  }
  if (outPath.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(outPath);
    if (!out) throw ValidationError("cannot write file: " + outPath);
    out << text;
  }
  return 0;
}

int runInfo(const ProblemArgs& args) {
  LoadedProblem p = loadProblem(args);
  std::vector<TensorSignature> sigs = p.sigs;
  bool haveExtents = !p.extents.empty();
  if (haveExtents) sigs = attach_extents(sigs, requireAllExtents(p));
  LoopNest nest = generate(p.stmt, sigs);

  std::cout << "statement:       " << nest.stmt.str() << "\n";
  std::cout << "iteration order:";
  for (const auto& v : nest.stmt.var_order) std::cout << " " << v;
  std::cout << "\n";
  std::cout << "gcs:             " << nest.gcs_partition.str() << "\n";
  std::cout << "output symmetry: " << nest.output_sig.symmetry.str() << "\n";
  std::cout << "dependency graph:\n";
  std::istringstream graphLines(nest.graph.str());
  for (std::string line; std::getline(graphLines, line);) {
    std::cout << "  " << line << "\n";
  }
  std::cout << "ordering tree:\n";
  std::istringstream treeLines(nest.tree.listing());
  for (std::string line; std::getline(treeLines, line);) {
    std::cout << "  " << line << "\n";
  }
  if (haveExtents) {
    std::cout << "packed sizes:\n";
    auto describe = [](const TensorSignature& sig) {
      PackedLayout layout{sig};
      std::cout << "  " << sig.name << ": " << layout.totalSize()
                << " stored of " << layout.denseSize() << " dense\n";
    };
    describe(nest.output_sig);
    for (const auto& sig : nest.inputs) describe(sig);
  }
  return 0;
}

int runRun(const ProblemArgs& args,
           const std::vector<std::string>& inputSpecs,
           const std::string& outPath) {
  LoadedProblem p = loadProblem(args);
  auto extents = requireAllExtents(p);
  auto sigs = attach_extents(p.sigs, extents);
  LoopNest nest = generate(p.stmt, sigs);

  std::map<std::string, AnyPackedTensor> loaded;
  for (const auto& spec : inputSpecs) {
    auto eq = spec.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("--input expects NAME=path.json, got: " + spec);
    }
    std::string name = spec.substr(0, eq);
    loaded.emplace(name, load_tensor_json(spec.substr(eq + 1), name));
  }
  bool anyFloat = false;
  for (const auto& sig : sigs) {
    auto it = loaded.find(sig.name);
    if (it == loaded.end()) {
      throw ValidationError("missing --input for tensor " + sig.name);
    }
    if (kindOf(it->second) == ScalarKind::Float64) anyFloat = true;
  }

  if (anyFloat) {
    std::map<std::string, PackedTensor<double>> inputs;
    for (auto& [name, tensor] : loaded) {
      if (auto* f = std::get_if<PackedTensor<double>>(&tensor)) {
        inputs.emplace(name, std::move(*f));
      } else {
        // Promote integer-valued files when mixed with float inputs.
        auto& i = std::get<PackedTensor<std::int64_t>>(tensor);
        PackedTensor<double> promoted{i.layout, {}};
        promoted.values.assign(i.values.begin(), i.values.end());
        inputs.emplace(name, std::move(promoted));
      }
    }
    save_tensor_json(outPath, execute<double>(nest, inputs, extents));
  } else {
    std::map<std::string, PackedTensor<std::int64_t>> inputs;
    for (auto& [name, tensor] : loaded) {
      inputs.emplace(name,
                     std::move(std::get<PackedTensor<std::int64_t>>(tensor)));
    }
    save_tensor_json(outPath, execute<std::int64_t>(nest, inputs, extents));
  }
  std::cout << "wrote " << outPath << "\n";
  return 0;
}

int runVerify(const ProblemArgs& args, std::uint64_t seed, int trials,
              bool jsonOut, bool floatMode) {
  LoadedProblem p = loadProblem(args);
  auto extents = requireAllExtents(p);
  VerifyReport report =
      verify(p.stmt, p.sigs, extents, seed, trials,
             floatMode ? ScalarKind::Float64 : ScalarKind::Int64);
  std::cout << (jsonOut ? report.json() : report.text());
  return report.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "symtc: compile, run, and verify tensor-algebra statements over "
      "partially symmetric tensors in packed storage"};
  app.require_subcommand(1);

  ProblemArgs codegenArgs, infoArgs, runArgs, verifyArgs;

  auto* codegen = app.add_subcommand(
      "codegen", "Generate loop IR pseudocode or C source");
  addProblemFlags(codegen, codegenArgs, false);
  std::string emit = "ir";
  std::string kernelName = "kernel";
  std::string codegenOut;
  codegen->add_option("--emit", emit, "Output form: ir | c")
      ->check(CLI::IsMember({"ir", "c"}));
  codegen->add_option("--name", kernelName, "Function name for --emit c");
  codegen->add_option("--out", codegenOut, "Write to file instead of stdout");

  auto* info = app.add_subcommand(
      "info", "Print derived symmetries, dependency graph, ordering tree, "
              "and packed sizes");
  addProblemFlags(info, infoArgs, false);

  auto* run = app.add_subcommand("run", "Execute a statement on tensor files");
  addProblemFlags(run, runArgs, true);
  std::vector<std::string> runInputs;
  std::string runOut = "out.json";
  run->add_option("--input", runInputs, "Input tensor as NAME=path.json");
  run->add_option("--out", runOut, "Output tensor file");

  auto* verifyCmd = app.add_subcommand(
      "verify", "Compare the compiled pipeline against the dense brute-force "
                "reference on random inputs");
  addProblemFlags(verifyCmd, verifyArgs, true);
  std::uint64_t seed = 1;
  int trials = 5;
  bool jsonOut = false;
  bool floatMode = false;
  verifyCmd->add_option("--seed", seed, "Base seed");
  verifyCmd->add_option("--trials", trials, "Number of seeds to test");
  verifyCmd->add_flag("--json", jsonOut, "Machine-readable report");
  verifyCmd->add_flag("--float", floatMode,
                      "Use float64 scalars (default: exact int64)");

  try {
    app.parse(argc, argv);
    if (codegen->parsed()) {
      return runCodegen(codegenArgs, emit, kernelName, codegenOut);
    }
    if (info->parsed()) return runInfo(infoArgs);
    if (run->parsed()) return runRun(runArgs, runInputs, runOut);
    if (verifyCmd->parsed()) {
      return runVerify(verifyArgs, seed, trials, jsonOut, floatMode);
    }
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
