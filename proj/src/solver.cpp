#include "ect/solver.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <sstream>

#include "ect/printer.hpp"

namespace ect {

QueryFormula QueryFormula::leaf(ExistentialConstraint c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Leaf;
  n->c = std::move(c);
  return QueryFormula(std::move(n));
}

QueryFormula QueryFormula::leaf(LogicalConstraint c) {
  return leaf(ExistentialConstraint(std::move(c)));
}

QueryFormula QueryFormula::negation(QueryFormula f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->kids = {std::move(f)};
  return QueryFormula(std::move(n));
}
QueryFormula QueryFormula::conj(QueryFormula a, QueryFormula b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->kids = {std::move(a), std::move(b)};
  return QueryFormula(std::move(n));
}
QueryFormula QueryFormula::implies(QueryFormula a, QueryFormula b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Implies;
  n->kids = {std::move(a), std::move(b)};
  return QueryFormula(std::move(n));
}
QueryFormula QueryFormula::iff(QueryFormula a, QueryFormula b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Iff;
  n->kids = {std::move(a), std::move(b)};
  return QueryFormula(std::move(n));
}

const ExistentialConstraint& QueryFormula::constraint() const {
  if (kind() != Kind::Leaf) throw Error("not a leaf formula");
  return *node_->c;
}

VariableSet QueryFormula::free_variables() const {
  VariableSet out;
  for (const ExistentialConstraint* c : leaves()) {
    VariableSet fv = c->free_vars();
    out.insert(fv.begin(), fv.end());
  }
  return out;
}

std::vector<const ExistentialConstraint*> QueryFormula::leaves() const {
  std::vector<const ExistentialConstraint*> out;
  std::function<void(const QueryFormula&)> go = [&](const QueryFormula& f) {
    if (f.kind() == Kind::Leaf) {
      out.push_back(&f.constraint());
      return;
    }
    for (const QueryFormula& k : f.node_->kids) go(k);
  };
  go(*this);
  return out;
}

std::string QueryFormula::to_string() const {
  switch (kind()) {
    case Kind::Leaf: {
      const ExistentialConstraint& c = constraint();
      if (c.bound_seq().empty()) return "(" + print_constraint(c.body()) + ")";
      return "(" + print_constraint(c) + ")";
    }
    case Kind::Not:
      return "not " + lhs().to_string();
    case Kind::And:
      return "(" + lhs().to_string() + " /\\ " + rhs().to_string() + ")";
    case Kind::Implies:
      return "(" + lhs().to_string() + " => " + rhs().to_string() + ")";
    case Kind::Iff:
      return "(" + lhs().to_string() + " <=> " + rhs().to_string() + ")";
  }
  throw Error("unreachable");
}

std::string Query::to_string() const {
  return (kind == Kind::Validity ? "valid? " : "sat? ") + formula.to_string();
}

Verdict SolverBackend::check_sat(const ExistentialConstraint& c) {
  ModelResult r = find_model(c);
  if (r.model) return Verdict::holds();
  if (r.definitive_no) return Verdict::fails(std::nullopt, "unsatisfiable");
  return Verdict::unknown(r.note.empty() ? "satisfiability undetermined"
                                         : r.note);
}

Verdict check_valid(const Query& q, SolverBackend& backend) {
  return backend.check_valid(q);
}

Verdict check_sat(const ExistentialConstraint& c, SolverBackend& backend) {
  return backend.check_sat(c);
}

// ---------------------------------------------------------------------------
// Grid backend

namespace {

/// Truth of one existential leaf tabulated densely over its own free
/// variables (mixed radix: grid size for Int, 2 for Bool). The outer
/// enumeration then pays an O(#vars) index computation per leaf.
struct LeafTable {
  std::vector<Variable> vars;
  std::vector<size_t> radix;
  std::vector<bool> truth;

  void build(const ExistentialConstraint& c, const GridRange& grid) {
    VariableSet fv = c.free_vars();
    vars.assign(fv.begin(), fv.end());
    size_t total = 1;
    for (const Variable& x : vars) {
      size_t r = x.sort == sort_bool()
                     ? 2
                     : static_cast<size_t>(grid.size().convert_to<long>());
      radix.push_back(r);
      total *= r;
    }
    truth.assign(total, false);
    size_t ix = 0;
    for_each_valuation(vars, grid, Valuation(),
                       [&](const Valuation& rho) {
                         truth[ix++] = eval_existential(c, rho, grid);
                         return false;
                       });
  }

  bool lookup(const Valuation& rho, const GridRange& grid) const {
    size_t ix = 0;
    for (size_t i = 0; i < vars.size(); ++i) {
      Value v = rho(vars[i]);
      size_t digit =
          v.is_bool() ? (v.as_bool() ? 1 : 0)
                      : static_cast<size_t>(
                            Int(v.as_int() - grid.lo).convert_to<long>());
      ix = ix * radix[i] + digit;
    }
    return truth[ix];
  }
};

}  // namespace

Verdict GridBackend::check_valid(const Query& q) {
  if (q.kind != Query::Kind::Validity)
    throw PreconditionError("check_valid expects a validity query");
  VariableSet fv = q.formula.free_variables();
  std::vector<Variable> vars(fv.begin(), fv.end());

  std::vector<const ExistentialConstraint*> leaves = q.formula.leaves();
  std::vector<LeafTable> tables(leaves.size());
  for (size_t i = 0; i < leaves.size(); ++i)
    tables[i].build(*leaves[i], range_);

  std::function<bool(const QueryFormula&, const Valuation&, size_t&)> value =
      [&](const QueryFormula& f, const Valuation& rho, size_t& leaf_ix) -> bool {
    switch (f.kind()) {
      case QueryFormula::Kind::Leaf:
        return tables[leaf_ix++].lookup(rho, range_);
      case QueryFormula::Kind::Not:
        return !value(f.lhs(), rho, leaf_ix);
      case QueryFormula::Kind::And: {
        bool a = value(f.lhs(), rho, leaf_ix);
        bool b = value(f.rhs(), rho, leaf_ix);
        return a && b;
      }
      case QueryFormula::Kind::Implies: {
        bool a = value(f.lhs(), rho, leaf_ix);
        bool b = value(f.rhs(), rho, leaf_ix);
        return !a || b;
      }
      case QueryFormula::Kind::Iff: {
        bool a = value(f.lhs(), rho, leaf_ix);
        bool b = value(f.rhs(), rho, leaf_ix);
        return a == b;
      }
    }
    throw Error("unreachable");
  };

  std::optional<Valuation> counterexample;
  for_each_valuation(vars, range_, Valuation(), [&](const Valuation& rho) {
    size_t ix = 0;
    if (!value(q.formula, rho, ix)) {
      Valuation w;
      for (const Variable& x : vars) w.set(x, rho(x));
      counterexample = std::move(w);
      return true;
    }
    return false;
  });
  if (counterexample) return Verdict::fails(std::move(counterexample));
  if (exact_) return Verdict::holds();
  return Verdict::unknown("no counterexample within " + name() +
                          "; exact only under grid confinement");
}

ModelResult GridBackend::find_model(const ExistentialConstraint& c) {
  VariableSet fv = c.free_vars();
  std::vector<Variable> vars(fv.begin(), fv.end());
  std::optional<Valuation> found;
  for_each_valuation(vars, range_, Valuation(), [&](const Valuation& rho) {
    if (eval_existential(c, rho, range_)) {
      Valuation w;
      for (const Variable& x : vars) w.set(x, rho(x));
      found = std::move(w);
      return true;
    }
    return false;
  });
  if (found) return {std::move(found), false, ""};
  return {std::nullopt, exact_,
          exact_ ? "" : "no model within " + name()};
}

std::string GridBackend::name() const {
  return "grid[" + range_.lo.str() + ".." + range_.hi.str() + "]";
}

// ---------------------------------------------------------------------------
// SMT-LIB2 backend

namespace {

bool needs_quoting(const std::string& name) {
  if (name.empty() || std::isdigit(static_cast<unsigned char>(name[0])))
    return true;
  for (char ch : name) {
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' ||
          ch == '!' || ch == '.'))
      return true;
  }
  return false;
}

std::string smt_symbol(const std::string& name) {
  return needs_quoting(name) ? "|" + name + "|" : name;
}

std::string smt_op(const std::string& op) {
  if (op == "/\\") return "and";
  if (op == "\\/") return "or";
  if (op == "!=") return "distinct";
  if (op == "<=>") return "=";
  return op;  // + - * mod = <= < >= > not =>
}

void term_to_smt(const Term& t, std::ostringstream& out) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      out << smt_symbol(t.variable().name);
      return;
    case Term::Kind::Value: {
      const Value& v = t.value();
      if (v.is_bool()) {
        out << (v.as_bool() ? "true" : "false");
      } else if (v.as_int() < 0) {
        out << "(- " << Int(-v.as_int()).str() << ")";
      } else {
        out << v.as_int().str();
      }
      return;
    }
    case Term::Kind::Hole:
      throw Error("cannot emit a context hole to SMT");
    case Term::Kind::Application:
      break;
  }
  out << "(" << smt_op(t.symbol().name);
  for (const Term& a : t.args()) {
    out << " ";
    term_to_smt(a, out);
  }
  out << ")";
}

void formula_to_smt(const QueryFormula& f, VariableSet& avoid, int& counter,
                    std::ostringstream& out) {
  switch (f.kind()) {
    case QueryFormula::Kind::Leaf: {
      const ExistentialConstraint& c = f.constraint();
      if (c.bound_seq().empty()) {
        term_to_smt(c.body().term(), out);
        return;
      }
      // Distinct bound names per block, numbered per script so that the
      // emitted text is deterministic.
      std::map<Variable, Variable> to;
      for (const Variable& x : c.bound_seq()) {
        Variable t = x;
        do {
          t.name = x.name + "!" + std::to_string(counter++);
        } while (avoid.count(t));
        avoid.insert(t);
        to.emplace(x, t);
      }
      ExistentialConstraint fresh = rename_bound(c, to);
      out << "(exists (";
      bool first = true;
      for (const Variable& x : fresh.bound_seq()) {
        if (!first) out << " ";
        first = false;
        out << "(" << smt_symbol(x.name) << " " << x.sort.name << ")";
      }
      out << ") ";
      term_to_smt(fresh.body().term(), out);
      out << ")";
      return;
    }
    case QueryFormula::Kind::Not:
      out << "(not ";
      formula_to_smt(f.lhs(), avoid, counter, out);
      out << ")";
      return;
    case QueryFormula::Kind::And:
    case QueryFormula::Kind::Implies:
    case QueryFormula::Kind::Iff: {
      const char* op = f.kind() == QueryFormula::Kind::And ? "and"
                       : f.kind() == QueryFormula::Kind::Implies ? "=>"
                                                                 : "=";
      out << "(" << op << " ";
      formula_to_smt(f.lhs(), avoid, counter, out);
      out << " ";
      formula_to_smt(f.rhs(), avoid, counter, out);
      out << ")";
      return;
    }
  }
  throw Error("unreachable");
}

/// Runs `sh -c command`, writes `input` to its stdin, returns all stdout.
/// stderr is discarded. Returns false on spawn/IO failure.
bool run_process(const std::string& command, const std::string& input,
                 std::string& output, int& exit_code) {
  int in_pipe[2], out_pipe[2];
  if (pipe(in_pipe) != 0) return false;
  if (pipe(out_pipe) != 0) {
    close(in_pipe[0]);
    close(in_pipe[1]);
    return false;
  }
  pid_t pid = fork();
  if (pid < 0) {
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) close(fd);
    return false;
  }
  if (pid == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    FILE* devnull = fopen("/dev/null", "w");
    if (devnull) dup2(fileno(devnull), STDERR_FILENO);
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) close(fd);
    execl("/bin/sh", "sh", "-c", command.c_str(), (char*)nullptr);
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  size_t written = 0;
  while (written < input.size()) {
    ssize_t n = write(in_pipe[1], input.data() + written, input.size() - written);
    if (n <= 0) break;
    written += static_cast<size_t>(n);
  }
  close(in_pipe[1]);
  char buf[4096];
  output.clear();
  ssize_t n;
  while ((n = read(out_pipe[0], buf, sizeof buf)) > 0) output.append(buf, n);
  close(out_pipe[0]);
  int status = 0;
  waitpid(pid, &status, 0);
  exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return written == input.size();
}

// Minimal s-expression reader for (get-model) replies.
struct Sexp {
  std::string atom;
  std::vector<Sexp> kids;
  bool is_atom() const { return kids.empty() && !atom.empty(); }
};

bool parse_sexps(const std::string& text, size_t& pos, std::vector<Sexp>& out) {
  while (pos < text.size()) {
    char ch = text[pos];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++pos;
      continue;
    }
    if (ch == ')') return true;
    if (ch == '(') {
      ++pos;
      Sexp s;
      if (!parse_sexps(text, pos, s.kids)) return false;
      if (pos >= text.size() || text[pos] != ')') return false;
      ++pos;
      out.push_back(std::move(s));
      continue;
    }
    if (ch == '|') {
      size_t end = text.find('|', pos + 1);
      if (end == std::string::npos) return false;
      Sexp s;
      s.atom = text.substr(pos + 1, end - pos - 1);
      out.push_back(std::move(s));
      pos = end + 1;
      continue;
    }
    size_t end = pos;
    while (end < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[end])) &&
           text[end] != '(' && text[end] != ')')
      ++end;
    Sexp s;
    s.atom = text.substr(pos, end - pos);
    out.push_back(std::move(s));
    pos = end;
  }
  return true;
}

std::optional<Value> sexp_value(const Sexp& s, const Sort& sort) {
  if (s.is_atom()) {
    if (sort == sort_bool()) {
      if (s.atom == "true") return Value(true);
      if (s.atom == "false") return Value(false);
      return std::nullopt;
    }
    try {
      return Value(Int(s.atom));
    } catch (...) {
      return std::nullopt;
    }
  }
  // (- 5)
  if (s.kids.size() == 2 && s.kids[0].is_atom() && s.kids[0].atom == "-" &&
      s.kids[1].is_atom() && sort == sort_int()) {
    try {
      return Value(-Int(s.kids[1].atom));
    } catch (...) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

/// Extracts bindings for the given variables from a (get-model) reply.
Valuation parse_model(const std::vector<Sexp>& sexps,
                      const std::vector<Variable>& vars) {
  Valuation out;
  std::function<void(const Sexp&)> scan = [&](const Sexp& s) {
    if (s.kids.size() >= 5 && s.kids[0].is_atom() &&
        s.kids[0].atom == "define-fun" && s.kids[1].is_atom()) {
      for (const Variable& x : vars) {
        if (x.name != s.kids[1].atom) continue;
        if (auto v = sexp_value(s.kids[4], x.sort)) out.set(x, *v);
      }
      return;
    }
    for (const Sexp& k : s.kids) scan(k);
  };
  for (const Sexp& s : sexps) scan(s);
  return out;
}

std::string first_token(const std::string& text, size_t& after) {
  size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
    ++i;
  size_t start = i;
  while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])))
    ++i;
  after = i;
  return text.substr(start, i - start);
}

}  // namespace

std::string to_smtlib(const Term& t) {
  std::ostringstream out;
  term_to_smt(t, out);
  return out.str();
}

std::string SmtBackend::script_for(const Query& q) const {
  VariableSet fv = q.formula.free_variables();
  VariableSet avoid = fv;
  for (const ExistentialConstraint* c : q.formula.leaves()) {
    VariableSet all = c->body().variables();
    avoid.insert(all.begin(), all.end());
  }
  std::ostringstream out;
  out << "(set-logic ALL)\n";
  for (const Variable& x : fv)
    out << "(declare-const " << smt_symbol(x.name) << " " << x.sort.name
        << ")\n";
  std::ostringstream f;
  int fresh_counter = 0;
  formula_to_smt(q.formula, avoid, fresh_counter, f);
  if (q.kind == Query::Kind::Validity) {
    out << "(assert (not " << f.str() << "))\n";
  } else {
    out << "(assert " << f.str() << ")\n";
  }
  out << "(check-sat)\n(get-model)\n";
  return out.str();
}

Verdict SmtBackend::check_valid(const Query& q) {
  if (q.kind != Query::Kind::Validity)
    throw PreconditionError("check_valid expects a validity query");
  std::string output;
  int exit_code = 0;
  if (!run_process(command_, script_for(q), output, exit_code))
    return Verdict::unknown("solver process failed to start: " + command_);
  size_t after = 0;
  std::string tok = first_token(output, after);
  if (tok == "unsat") return Verdict::holds();
  if (tok == "unknown") return Verdict::unknown("solver returned unknown");
  if (tok == "sat") {
    VariableSet fv = q.formula.free_variables();
    std::vector<Variable> vars(fv.begin(), fv.end());
    std::vector<Sexp> sexps;
    size_t pos = after;
    parse_sexps(output, pos, sexps);
    return Verdict::fails(parse_model(sexps, vars));
  }
  if (tok.empty() && exit_code != 0)
    return Verdict::unknown("solver process failed (exit " +
                            std::to_string(exit_code) + ")");
  return Verdict::unknown("malformed solver reply: '" + tok + "'");
}

ModelResult SmtBackend::find_model(const ExistentialConstraint& c) {
  Query q{Query::Kind::Satisfiability, QueryFormula::leaf(c)};
  std::string output;
  int exit_code = 0;
  if (!run_process(command_, script_for(q), output, exit_code))
    return {std::nullopt, false, "solver process failed to start"};
  size_t after = 0;
  std::string tok = first_token(output, after);
  if (tok == "unsat") return {std::nullopt, true, ""};
  if (tok == "sat") {
    VariableSet fv = c.free_vars();
    std::vector<Variable> vars(fv.begin(), fv.end());
    std::vector<Sexp> sexps;
    size_t pos = after;
    parse_sexps(output, pos, sexps);
    Valuation model = parse_model(sexps, vars);
    // Unmentioned frees default to 0/false, which any model permits.
    return {std::move(model), false, ""};
  }
  if (tok == "unknown") return {std::nullopt, false, "solver returned unknown"};
  return {std::nullopt, false, "malformed solver reply: '" + tok + "'"};
}

std::string SmtBackend::name() const { return "smt(" + command_ + ")"; }

std::string default_solver_command() {
  if (const char* env = std::getenv("ECT_SOLVER"); env && *env) return env;
  for (const char* probe :
       {"z3 -in", "cvc5 --lang smt2 --produce-models", "cvc4 --lang smt2"}) {
    std::string cmd(probe);
    std::string bin = cmd.substr(0, cmd.find(' '));
    std::string out;
    int code = 0;
    if (run_process("command -v " + bin, "", out, code) && code == 0 &&
        !out.empty())
      return cmd;
  }
  return "";
}

}  // namespace ect
