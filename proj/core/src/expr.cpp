#include "symtc/expr.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "symtc/error.hpp"

namespace symtc {

std::string Access::str() const {
  std::ostringstream out;
  out << tensor << '[';
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i > 0) out << ',';
    out << vars[i];
  }
  out << ']';
  return out.str();
}

std::vector<std::string> Term::vars() const {
  std::vector<std::string> result;
  for (const auto& access : factors) {
    for (const auto& v : access.vars) {
      if (std::find(result.begin(), result.end(), v) == result.end()) {
        result.push_back(v);
      }
    }
  }
  return result;
}

std::vector<const Access*> TensorStatement::inputAccesses() const {
  std::vector<const Access*> result;
  for (const auto& term : terms) {
    for (const auto& access : term.factors) result.push_back(&access);
  }
  return result;
}

std::vector<std::string> TensorStatement::inputTensorNames() const {
  std::vector<std::string> result;
  for (const Access* a : inputAccesses()) result.push_back(a->tensor);
  return result;
}

std::vector<std::string> TensorStatement::reductionVars() const {
  std::vector<std::string> result;
  for (const auto& v : var_order) {
    if (std::find(output.vars.begin(), output.vars.end(), v) ==
        output.vars.end()) {
      result.push_back(v);
    }
  }
  return result;
}

std::vector<std::string> TensorStatement::reductionVarsOf(
    const Term& term) const {
  std::vector<std::string> result;
  for (const auto& v : term.vars()) {
    if (std::find(output.vars.begin(), output.vars.end(), v) ==
        output.vars.end()) {
      result.push_back(v);
    }
  }
  return result;
}

std::string TensorStatement::str() const {
  std::ostringstream out;
  out << output.str() << " = ";
  for (std::size_t t = 0; t < terms.size(); ++t) {
    if (t > 0) out << " + ";
    for (std::size_t f = 0; f < terms[t].factors.size(); ++f) {
      if (f > 0) out << " * ";
      out << terms[t].factors[f].str();
    }
  }
  return out.str();
}

namespace {

class Lexer {
public:
  explicit Lexer(const std::string& text) : text_(text) {}

  void skipSpace() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  bool atEnd() {
    skipSpace();
    return pos_ >= text_.size();
  }

  char peek() {
    skipSpace();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  SourceSpan span() {
    skipSpace();
    return {line_, col_};
  }

  void expect(char c, const std::string& what) {
    if (peek() != c) {
      fail("expected '" + std::string(1, c) + "' " + what);
    }
    advance();
  }

  bool accept(char c) {
    if (peek() == c) {
      advance();
      return true;
    }
    return false;
  }

  std::string identifier(const std::string& what) {
    skipSpace();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_')) {
      advance();
    }
    if (start == pos_) fail("expected " + what);
    return text_.substr(start, pos_ - start);
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg, line_, col_);
  }

private:
  void advance() {
    if (pos_ < text_.size()) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

bool isIndexVarName(const std::string& name) {
  for (char c : name) {
    if (!(std::islower(static_cast<unsigned char>(c)) ||
          std::isdigit(static_cast<unsigned char>(c)) || c == '_')) {
      return false;
    }
  }
  return !name.empty() &&
         std::islower(static_cast<unsigned char>(name.front()));
}

Access parseAccess(Lexer& lex) {
  Access access;
  access.span = lex.span();
  access.tensor = lex.identifier("tensor name");
  lex.expect('[', "after tensor name");
  while (true) {
    SourceSpan varSpan = lex.span();
    std::string var = lex.identifier("index variable");
    if (!isIndexVarName(var)) {
      throw ParseError("index variable '" + var + "' must be lowercase",
                       varSpan.line, varSpan.column);
    }
    if (std::find(access.vars.begin(), access.vars.end(), var) !=
        access.vars.end()) {
      throw ParseError("index variable '" + var + "' repeated in access " +
                           access.tensor,
                       varSpan.line, varSpan.column);
    }
    access.vars.push_back(var);
    if (!lex.accept(',')) break;
  }
  lex.expect(']', "to close access");
  return access;
}

}  // namespace

TensorStatement parse_statement(const std::string& text) {
  Lexer lex(text);
  TensorStatement stmt;
  stmt.output = parseAccess(lex);
  lex.expect('=', "after output access");
  while (true) {
    Term term;
    term.factors.push_back(parseAccess(lex));
    while (lex.accept('*')) term.factors.push_back(parseAccess(lex));
    stmt.terms.push_back(std::move(term));
    if (!lex.accept('+')) break;
  }
  if (!lex.atEnd()) lex.fail("unexpected trailing input");

  // Variable universe in first-appearance order.
  auto note = [&stmt](const std::string& v) {
    if (std::find(stmt.var_order.begin(), stmt.var_order.end(), v) ==
        stmt.var_order.end()) {
      stmt.var_order.push_back(v);
    }
  };
  for (const auto& v : stmt.output.vars) note(v);
  for (const auto& term : stmt.terms) {
    for (const auto& access : term.factors) {
      for (const auto& v : access.vars) note(v);
    }
  }

  // Each tensor name may appear in exactly one access; aliased accesses to
  // one tensor have no defined symmetry semantics here.
  std::set<std::string> names{stmt.output.tensor};
  for (const Access* a : stmt.inputAccesses()) {
    if (!names.insert(a->tensor).second) {
      throw ParseError("tensor '" + a->tensor + "' is accessed more than once",
                       a->span.line, a->span.column);
    }
  }

  for (const auto& term : stmt.terms) {
    auto termVars = term.vars();
    for (const auto& v : stmt.output.vars) {
      if (std::find(termVars.begin(), termVars.end(), v) == termVars.end()) {
        throw ParseError("output variable '" + v +
                             "' does not appear in every term",
                         stmt.output.span.line, stmt.output.span.column);
      }
    }
  }
  return stmt;
}

std::vector<TensorSignature> parse_symmetries(const std::string& text,
                                              const TensorStatement& stmt) {
  // Declared partitions by tensor name.
  std::map<std::string, std::vector<std::vector<std::string>>> declared;
  Lexer lex(text);
  while (!lex.atEnd()) {
    SourceSpan nameSpan = lex.span();
    std::string name = lex.identifier("tensor name");
    lex.expect(':', "after tensor name");
    std::vector<std::vector<std::string>> parts;
    while (lex.accept('{')) {
      std::vector<std::string> part;
      while (true) {
        part.push_back(lex.identifier("index variable"));
        if (!lex.accept(',')) break;
      }
      lex.expect('}', "to close symmetry part");
      parts.push_back(std::move(part));
    }
    if (parts.empty()) lex.fail("expected '{' after ':'");
    if (declared.count(name)) {
      throw ParseError("tensor '" + name + "' declared twice", nameSpan.line,
                       nameSpan.column);
    }
    declared[name] = std::move(parts);
    if (!lex.accept(';')) break;
  }
  if (!lex.atEnd()) lex.fail("unexpected trailing input");

  std::vector<const Access*> accesses = stmt.inputAccesses();
  for (const auto& [name, parts] : declared) {
    if (name == stmt.output.tensor) {
      throw ParseError(
          "output tensor '" + name + "' may not declare a symmetry; it is derived",
          1, 1);
    }
    bool known = std::any_of(accesses.begin(), accesses.end(),
                             [&](const Access* a) { return a->tensor == name; });
    if (!known) {
      throw ParseError("unknown tensor '" + name + "' in symmetry declaration",
                       1, 1);
    }
  }

  std::vector<TensorSignature> sigs;
  for (const Access* access : accesses) {
    TensorSignature sig;
    sig.name = access->tensor;
    sig.index_vars = access->vars;
    auto it = declared.find(sig.name);
    std::vector<std::vector<std::string>> parts;
    std::set<std::string> listed;
    if (it != declared.end()) {
      for (const auto& part : it->second) {
        for (const auto& v : part) {
          if (std::find(access->vars.begin(), access->vars.end(), v) ==
              access->vars.end()) {
            throw ParseError("variable '" + v + "' is not an index of tensor " +
                                 sig.name,
                             1, 1);
          }
          if (!listed.insert(v).second) {
            throw ParseError("variable '" + v + "' listed in two parts of " +
                                 sig.name,
                             1, 1);
          }
        }
        parts.push_back(part);
      }
    }
    for (const auto& v : access->vars) {
      if (!listed.count(v)) parts.push_back({v});
    }
    sig.symmetry = SymmetryPartition(std::move(parts), access->vars);
    sigs.push_back(std::move(sig));
  }
  return sigs;
}

std::map<std::string, Coord> parse_extents(const std::string& text) {
  std::map<std::string, Coord> extents;
  Lexer lex(text);
  if (lex.atEnd()) return extents;
  while (true) {
    SourceSpan varSpan = lex.span();
    std::string var = lex.identifier("index variable");
    lex.expect('=', "after variable name");
    SourceSpan valSpan = lex.span();
    std::string digits = lex.identifier("extent value");
    if (!std::all_of(digits.begin(), digits.end(), [](char c) {
          return std::isdigit(static_cast<unsigned char>(c));
        })) {
      throw ParseError("extent for '" + var + "' must be a natural number",
                       valSpan.line, valSpan.column);
    }
    if (extents.count(var)) {
      throw ParseError("extent for '" + var + "' given twice", varSpan.line,
                       varSpan.column);
    }
    extents[var] = std::stoll(digits);
    if (!lex.accept(',')) break;
  }
  if (!lex.atEnd()) lex.fail("unexpected trailing input");
  return extents;
}

std::vector<TensorSignature> attach_extents(
    std::vector<TensorSignature> sigs,
    const std::map<std::string, Coord>& extents) {
  for (auto& sig : sigs) {
    sig.extents.clear();
    for (const auto& v : sig.index_vars) {
      auto it = extents.find(v);
      if (it == extents.end()) {
        throw ValidationError("no extent given for index variable '" + v + "'");
      }
      if (it->second < 0) {
        throw ValidationError("negative extent for index variable '" + v + "'");
      }
      sig.extents.push_back(it->second);
    }
    sig.validate();
  }
  return sigs;
}

void checkExtentConsistency(const TensorStatement& stmt,
                            const std::vector<TensorSignature>& inputs) {
  std::map<std::string, Coord> seen;
  for (const auto& sig : inputs) {
    if (!sig.extentsKnown()) continue;
    for (std::size_t d = 0; d < sig.index_vars.size(); ++d) {
      auto [it, fresh] = seen.emplace(sig.index_vars[d], sig.extents[d]);
      if (!fresh && it->second != sig.extents[d]) {
        throw ValidationError(
            "inconsistent extents for variable '" + sig.index_vars[d] + "': " +
            std::to_string(it->second) + " vs " +
            std::to_string(sig.extents[d]) + " (tensor " + sig.name + ")");
      }
    }
  }
  (void)stmt;
}

}  // namespace symtc
