#pragma once

#include <map>
#include <string>
#include <vector>

#include "symtc/error.hpp"
#include "symtc/loopgen.hpp"
#include "symtc/storage.hpp"

namespace symtc {

/// Interpreter result plus per-term write instrumentation:
/// term_writes[term][position] is the number of accumulations that term
/// contributed to the packed output slot at `position`. With disjoint region
/// cover this equals the size of the term's reduction domain for every slot.
template <typename T>
struct ExecutionTrace {
  PackedTensor<T> output;
  std::vector<std::vector<std::int64_t>> term_writes;
};

namespace detail {

template <typename T>
class Interpreter {
public:
  Interpreter(const LoopNest& nest,
              const std::map<std::string, PackedTensor<T>>& inputs,
              const std::map<std::string, Coord>& extents)
      : nest_(nest), inputs_(inputs), extents_(extents) {
    for (const auto& sig : nest.inputs) {
      auto it = inputs.find(sig.name);
      if (it == inputs.end()) {
        throw ValidationError("missing input tensor " + sig.name);
      }
      TensorSignature expected = sig;
      expected.extents.clear();
      for (const auto& v : sig.index_vars) expected.extents.push_back(extentOf(v));
      expected.validate();
      if (it->second.layout.signature() != expected) {
        throw ValidationError("input tensor " + sig.name +
                              " does not match the statement signature");
      }
    }
  }

  ExecutionTrace<T> run() {
    TensorSignature outSig = nest_.output_sig;
    outSig.extents.clear();
    for (const auto& v : outSig.index_vars) outSig.extents.push_back(extentOf(v));
    ExecutionTrace<T> trace{PackedTensor<T>::zeros(PackedLayout{outSig}),
                            {}};
    trace.term_writes.assign(
        nest_.stmt.terms.size(),
        std::vector<std::int64_t>(
            static_cast<std::size_t>(trace.output.layout.totalSize()), 0));
    out_ = &trace;
    runLoop(nest_.root);
    out_ = nullptr;
    return trace;
  }

private:
  Coord extentOf(const std::string& var) const {
    auto it = extents_.find(var);
    if (it == extents_.end()) {
      throw ValidationError("no extent for index variable '" + var + "'");
    }
    if (it->second < 0) {
      throw ValidationError("negative extent for index variable '" + var + "'");
    }
    return it->second;
  }

  Coord boundValue(const Bound& b, bool isLower, const std::string& loopVar) {
    switch (b.kind) {
      case Bound::Kind::Zero:
        return 0;
      case Bound::Kind::Extent:
        return extentOf(loopVar) - 1;  // inclusive form of the exclusive bound
      case Bound::Kind::Var: {
        Coord v = env_.at(b.var);
        if (isLower) return b.strict ? v + 1 : v;
        return b.strict ? v - 1 : v;
      }
    }
    throw ContractViolation("unreachable bound kind");
  }

  void runLoop(const LoopNode& loop) {
    Coord lo = boundValue(loop.lower, true, loop.var);
    Coord hi = boundValue(loop.upper, false, loop.var);
    for (Coord v = lo; v <= hi; ++v) {
      env_[loop.var] = v;
      for (const auto& inner : loop.loops) runLoop(inner);
      for (const auto& stmt : loop.statements) runStatement(stmt);
    }
    env_.erase(loop.var);
  }

  Coords coordsOf(const Access& access) const {
    Coords coords;
    coords.reserve(access.vars.size());
    for (const auto& v : access.vars) coords.push_back(env_.at(v));
    return coords;
  }

  void runStatement(const StatementNode& stmt) {
    std::int64_t outPos =
        out_->output.layout.position_incremental(coordsOf(stmt.output));
    T total{};
    for (const auto& term : stmt.terms) {
      bool live = true;
      for (const auto& g : term.guard_vars) {
        if (env_.at(g) != 0) {
          live = false;
          break;
        }
      }
      if (!live) continue;
      T product{1};
      for (const auto& factor : term.factors) {
        const PackedTensor<T>& tensor = inputs_.at(factor.tensor);
        product = product *
                  tensor.values[static_cast<std::size_t>(
                      tensor.layout.position_incremental(coordsOf(factor)))];
      }
      total = total + product;
      ++out_->term_writes[static_cast<std::size_t>(term.term_index)]
                         [static_cast<std::size_t>(outPos)];
    }
    auto& slot = out_->output.values[static_cast<std::size_t>(outPos)];
    if (stmt.accumulate) {
      slot = slot + total;
    } else {
      slot = total;
    }
  }

  const LoopNest& nest_;
  const std::map<std::string, PackedTensor<T>>& inputs_;
  const std::map<std::string, Coord>& extents_;
  std::map<std::string, Coord> env_;
  ExecutionTrace<T>* out_ = nullptr;
};

}  // namespace detail

/// Runs the loop nest over packed inputs, producing the packed output under
/// the derived output symmetry. All packed reads go through the incremental
/// position formula, which rejects any non-canonical access.
template <typename T>
PackedTensor<T> execute(const LoopNest& nest,
                        const std::map<std::string, PackedTensor<T>>& inputs,
                        const std::map<std::string, Coord>& extents) {
  detail::Interpreter<T> interp(nest, inputs, extents);
  return interp.run().output;
}

/// As execute(), additionally counting accumulations per term and output
/// coordinate.
template <typename T>
ExecutionTrace<T> execute_instrumented(
    const LoopNest& nest, const std::map<std::string, PackedTensor<T>>& inputs,
    const std::map<std::string, Coord>& extents) {
  detail::Interpreter<T> interp(nest, inputs, extents);
  return interp.run();
}

}  // namespace symtc
