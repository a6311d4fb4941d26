#include "symtc/oracle.hpp"

#include <cmath>
#include <sstream>

#include "symtc/error.hpp"
#include "symtc/exec.hpp"
#include "symtc/loopgen.hpp"

namespace symtc {

template <typename T>
DenseTensor<T> dense_reference(const TensorStatement& stmt,
                               const std::map<std::string, DenseTensor<T>>& inputs,
                               const std::map<std::string, Coord>& extents) {
  auto extentOf = [&](const std::string& v) {
    auto it = extents.find(v);
    if (it == extents.end()) {
      throw ValidationError("no extent for index variable '" + v + "'");
    }
    return it->second;
  };
  for (const Access* access : stmt.inputAccesses()) {
    const auto& dense = inputs.at(access->tensor);
    if (dense.extents.size() != access->vars.size()) {
      throw ValidationError("dense input " + access->tensor +
                            ": wrong number of dimensions");
    }
    for (std::size_t d = 0; d < access->vars.size(); ++d) {
      if (dense.extents[d] != extentOf(access->vars[d])) {
        throw ValidationError("dense input " + access->tensor +
                              ": extent mismatch for " + access->vars[d]);
      }
    }
  }

  DenseTensor<T> out;
  for (const auto& v : stmt.output.vars) out.extents.push_back(extentOf(v));
  out.values.assign(static_cast<std::size_t>(out.size()), T{});

  for (const auto& term : stmt.terms) {
    auto termVars = term.vars();
    std::vector<Coord> termExtents;
    termExtents.reserve(termVars.size());
    for (const auto& v : termVars) termExtents.push_back(extentOf(v));
    std::int64_t space = 1;
    for (Coord e : termExtents) space = checked_mul(space, e);
    if (space == 0) continue;

    std::map<std::string, Coord> env;
    Coords assignment(termVars.size(), 0);
    do {
      for (std::size_t i = 0; i < termVars.size(); ++i) {
        env[termVars[i]] = assignment[i];
      }
      T product{1};
      for (const auto& factor : term.factors) {
        Coords coords;
        coords.reserve(factor.vars.size());
        for (const auto& v : factor.vars) coords.push_back(env.at(v));
        product = product * inputs.at(factor.tensor).at(coords);
      }
      Coords outCoords;
      outCoords.reserve(stmt.output.vars.size());
      for (const auto& v : stmt.output.vars) outCoords.push_back(env.at(v));
      out.at(outCoords) = out.at(outCoords) + product;
    } while (nextDenseCoords(assignment, termExtents));
  }
  return out;
}

template DenseTensor<std::int64_t> dense_reference(
    const TensorStatement&, const std::map<std::string, DenseTensor<std::int64_t>>&,
    const std::map<std::string, Coord>&);
template DenseTensor<double> dense_reference(
    const TensorStatement&, const std::map<std::string, DenseTensor<double>>&,
    const std::map<std::string, Coord>&);

template <typename T>
PackedTensor<T> random_symmetric(const TensorSignature& sig,
                                 std::uint64_t seed) {
  auto packed = PackedTensor<T>::zeros(PackedLayout{sig});
  SplitMix64 rng(seed);
  for (auto& value : packed.values) {
    std::uint64_t raw = rng.next();
    if constexpr (std::is_integral_v<T>) {
      value = static_cast<T>(raw % 19) - 9;
    } else {
      value = static_cast<T>(raw >> 11) * (2.0 / 9007199254740992.0) - 1.0;
    }
  }
  return packed;
}

template PackedTensor<std::int64_t> random_symmetric(const TensorSignature&,
                                                     std::uint64_t);
template PackedTensor<double> random_symmetric(const TensorSignature&,
                                               std::uint64_t);

bool VerifyReport::pass() const {
  for (const auto& t : trials) {
    if (!t.pass) return false;
  }
  return true;
}

std::string VerifyReport::text() const {
  std::ostringstream out;
  out << "statement:        " << statement << "\n";
  out << "symmetries:       " << symmetries << "\n";
  out << "output symmetry:  " << derived_output_symmetry << "\n";
  for (const auto& t : trials) {
    out << "seed " << t.seed << ": " << (t.pass ? "pass" : "FAIL")
        << " (max abs diff " << t.max_abs_diff << ", write anomalies "
        << t.write_count_anomalies << ")";
    if (t.output_symmetry_violated) out << " [output symmetry violated]";
    if (!t.detail.empty()) out << " " << t.detail;
    out << "\n";
  }
  out << (pass() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

namespace {

std::string jsonEscape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}

}  // namespace

std::string VerifyReport::json() const {
  std::ostringstream out;
  out << "{\n  \"statement\": \"" << jsonEscape(statement) << "\",\n";
  out << "  \"symmetries\": \"" << jsonEscape(symmetries) << "\",\n";
  out << "  \"output_symmetry\": \"" << jsonEscape(derived_output_symmetry)
      << "\",\n";
  out << "  \"pass\": " << (pass() ? "true" : "false") << ",\n";
  out << "  \"trials\": [";
  for (std::size_t i = 0; i < trials.size(); ++i) {
    const auto& t = trials[i];
    out << (i == 0 ? "" : ",") << "\n    {\"seed\": " << t.seed
        << ", \"pass\": " << (t.pass ? "true" : "false")
        << ", \"max_abs_diff\": " << t.max_abs_diff
        << ", \"write_count_anomalies\": " << t.write_count_anomalies
        << ", \"output_symmetry_violated\": "
        << (t.output_symmetry_violated ? "true" : "false") << "}";
  }
  out << "\n  ]\n}\n";
  return out.str();
}

namespace {

template <typename T>
VerifyTrial runTrial(const LoopNest& nest,
                     const std::map<std::string, Coord>& extents,
                     std::uint64_t seed) {
  VerifyTrial trial;
  trial.seed = seed;

  std::map<std::string, PackedTensor<T>> packedInputs;
  std::map<std::string, DenseTensor<T>> denseInputs;
  SplitMix64 seeder(seed);
  for (const auto& sig : nest.inputs) {
    TensorSignature concrete = sig;
    concrete.extents.clear();
    for (const auto& v : sig.index_vars) {
      concrete.extents.push_back(extents.at(v));
    }
    auto packed = random_symmetric<T>(concrete, seeder.next());
    denseInputs[sig.name] = unpack(packed);
    packedInputs[sig.name] = std::move(packed);
  }

  auto trace = execute_instrumented<T>(nest, packedInputs, extents);
  auto reference = dense_reference<T>(nest.stmt, denseInputs, extents);

  TensorSignature outSig = nest.output_sig;
  outSig.extents.clear();
  for (const auto& v : outSig.index_vars) {
    outSig.extents.push_back(extents.at(v));
  }
  PackedTensor<T> packedReference;
  try {
    packedReference = pack(reference, outSig);
  } catch (const ValidationError& e) {
    trial.output_symmetry_violated = true;
    trial.detail = e.what();
    trial.pass = false;
    return trial;
  }

  trial.pass = true;
  for (std::size_t i = 0; i < trace.output.values.size(); ++i) {
    double a = static_cast<double>(trace.output.values[i]);
    double b = static_cast<double>(packedReference.values[i]);
    double diff = std::abs(a - b);
    trial.max_abs_diff = std::max(trial.max_abs_diff, diff);
    if constexpr (std::is_integral_v<T>) {
      if (trace.output.values[i] != packedReference.values[i]) {
        trial.pass = false;
      }
    } else {
      double scale = std::max({1.0, std::abs(a), std::abs(b)});
      if (diff > 1e-12 * scale) trial.pass = false;
    }
  }

  // Every output slot must receive exactly one accumulation per point of
  // each term's reduction domain.
  for (std::size_t t = 0; t < nest.stmt.terms.size(); ++t) {
    std::int64_t domain = 1;
    for (const auto& v : nest.stmt.reductionVarsOf(nest.stmt.terms[t])) {
      domain = checked_mul(domain, extents.at(v));
    }
    for (std::int64_t count : trace.term_writes[t]) {
      if (count != domain) {
        ++trial.write_count_anomalies;
        trial.pass = false;
      }
    }
  }
  return trial;
}

}  // namespace

VerifyReport verify(const TensorStatement& stmt,
                    const std::vector<TensorSignature>& sigs,
                    const std::map<std::string, Coord>& extents,
                    std::uint64_t seed, int trials, ScalarKind kind) {
  LoopNest nest = generate(stmt, attach_extents(sigs, extents));

  VerifyReport report;
  report.statement = stmt.str();
  std::ostringstream syms;
  for (std::size_t i = 0; i < nest.inputs.size(); ++i) {
    if (i > 0) syms << "; ";
    syms << nest.inputs[i].name << ": " << nest.inputs[i].symmetry.str();
  }
  report.symmetries = syms.str();
  report.derived_output_symmetry = nest.output_sig.symmetry.str();

  for (int t = 0; t < trials; ++t) {
    std::uint64_t trialSeed = seed + static_cast<std::uint64_t>(t);
    if (kind == ScalarKind::Int64) {
      report.trials.push_back(runTrial<std::int64_t>(nest, extents, trialSeed));
    } else {
      report.trials.push_back(runTrial<double>(nest, extents, trialSeed));
    }
  }
  return report;
}

}  // namespace symtc
