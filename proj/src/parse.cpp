#include "ect/parse.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "ect/printer.hpp"

namespace ect {

namespace {

// ---------------------------------------------------------------------------
// Lexer

struct Token {
  enum class Kind { Ident, IntLit, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  int line = 0;
  int col = 0;
};

const char* kReserved[] = {"sig", "term", "E", "true", "false", "not", "mod"};

bool is_reserved(const std::string& s) {
  for (const char* r : kReserved)
    if (s == r) return true;
  return false;
}

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  int line = 1;
  int col = 1;

  explicit Lexer(const std::string& s) : src(s) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(line, col, msg);
  }

  void advance(size_t n) {
    for (size_t i = 0; i < n && pos < src.size(); ++i, ++pos) {
      if (src[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  }

  bool starts_with(const char* s) const {
    return src.compare(pos, std::strlen(s), s) == 0;
  }

  /// Unicode aliases map onto their ASCII spellings.
  bool lex_unicode(std::vector<Token>& out) {
    static const std::pair<const char*, Token::Kind> aliases[] = {
        {"\xE2\x9F\xA8", Token::Kind::Punct},  // left angle
        {"\xE2\x9F\xA9", Token::Kind::Punct},  // right angle
        {"\xE2\x88\x83", Token::Kind::Ident},  // exists
        {"\xE2\x88\xA7", Token::Kind::Punct},  // and
        {"\xE2\x88\xA8", Token::Kind::Punct},  // or
        {"\xC2\xAC", Token::Kind::Ident},      // not
        {"\xE2\x87\x92", Token::Kind::Punct},  // implies
        {"\xE2\x87\x94", Token::Kind::Punct},  // iff
        {"\xE2\x89\xA4", Token::Kind::Punct},  // <=
        {"\xE2\x89\xA5", Token::Kind::Punct},  // >=
        {"\xE2\x89\xA0", Token::Kind::Punct},  // !=
        {"\xC3\x97", Token::Kind::Punct},      // times
    };
    static const char* ascii[] = {"<", ">",  "E",  "/\\", "\\/", "not",
                                  "=>", "<=>", "<=", ">=",  "!=",  "*"};
    for (size_t i = 0; i < std::size(aliases); ++i) {
      if (starts_with(aliases[i].first)) {
        out.push_back({aliases[i].second, ascii[i], line, col});
        advance(std::strlen(aliases[i].first));
        return true;
      }
    }
    return false;
  }

  std::vector<Token> lex() {
    std::vector<Token> out;
    static const char* multi[] = {"<=>", "->", "=>", "<=", ">=",
                                  "!=",  "/\\", "\\/"};
    while (pos < src.size()) {
      char c = src[pos];
      if (c == '#') {
        while (pos < src.size() && src[pos] != '\n') advance(1);
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
        continue;
      }
      if (static_cast<unsigned char>(c) >= 0x80) {
        if (lex_unicode(out)) continue;
        fail("unexpected byte in input");
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        int l = line, co = col;
        size_t start = pos;
        while (pos < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[pos])) ||
                src[pos] == '_' || src[pos] == '\''))
          advance(1);
        out.push_back({Token::Kind::Ident, src.substr(start, pos - start), l, co});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        int l = line, co = col;
        size_t start = pos;
        while (pos < src.size() &&
               std::isdigit(static_cast<unsigned char>(src[pos])))
          advance(1);
        out.push_back({Token::Kind::IntLit, src.substr(start, pos - start), l, co});
        continue;
      }
      bool matched = false;
      for (const char* m : multi) {
        if (starts_with(m)) {
          out.push_back({Token::Kind::Punct, m, line, col});
          advance(std::strlen(m));
          matched = true;
          break;
        }
      }
      if (matched) continue;
      static const std::string singles = "(){}<>|,;.:=+-*[]";
      if (singles.find(c) != std::string::npos) {
        out.push_back({Token::Kind::Punct, std::string(1, c), line, col});
        advance(1);
        continue;
      }
      fail(std::string("unexpected character '") + c + "'");
    }
    out.push_back({Token::Kind::End, "", line, col});
    return out;
  }
};

// ---------------------------------------------------------------------------
// Surface syntax

struct SurfaceExpr {
  enum class K { Var, IntLit, BoolLit, Call, Binop, Not };
  K k = K::Var;
  std::string name;  // Var name / Call symbol / Binop operator
  Int ival;
  bool bval = false;
  std::optional<std::string> annot;  // Var only
  std::vector<SurfaceExpr> kids;
  int line = 0, col = 0;
};

struct SurfaceVar {
  std::string name;
  std::optional<std::string> annot;
  int line = 0, col = 0;
};

struct SurfaceItem {
  std::string name;
  bool classical = false;
  std::vector<SurfaceVar> logical;   // ecterm only
  SurfaceExpr term;
  std::vector<SurfaceVar> bound;     // ecterm only
  std::optional<SurfaceExpr> body;   // constraint body; empty classical [] = true
  int line = 0, col = 0;
};

struct SurfaceDecl {
  std::string name;
  std::vector<std::string> arg_sorts;
  std::string result_sort;
  int line = 0, col = 0;
};

int binop_prec(const std::string& op) {
  if (op == "<=>") return 20;
  if (op == "=>") return 30;
  if (op == "\\/") return 40;
  if (op == "/\\") return 50;
  if (op == "=" || op == "!=" || op == "<=" || op == "<" || op == ">=" ||
      op == ">")
    return 60;
  if (op == "+" || op == "-") return 70;
  if (op == "*" || op == "mod") return 80;
  return -1;
}

bool is_comparison(const std::string& op) { return binop_prec(op) == 60; }

struct Parser {
  std::vector<Token> toks;
  size_t ix = 0;

  const Token& peek(size_t ahead = 0) const {
    return toks[std::min(ix + ahead, toks.size() - 1)];
  }
  const Token& next() { return toks[std::min(ix++, toks.size() - 1)]; }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw ParseError(t.line, t.col, msg);
  }

  bool at_punct(const std::string& p) const {
    return peek().kind == Token::Kind::Punct && peek().text == p;
  }
  bool at_ident(const std::string& s) const {
    return peek().kind == Token::Kind::Ident && peek().text == s;
  }
  void expect_punct(const std::string& p) {
    if (!at_punct(p)) fail(peek(), "expected '" + p + "'");
    next();
  }
  std::string expect_ident(const std::string& what) {
    if (peek().kind != Token::Kind::Ident)
      fail(peek(), "expected " + what);
    if (is_reserved(peek().text))
      fail(peek(), "reserved word '" + peek().text + "' used as " + what);
    return next().text;
  }

  // The operator token at the cursor, if the cursor sits on a binop.
  std::optional<std::string> peek_binop() const {
    if (peek().kind == Token::Kind::Punct && binop_prec(peek().text) >= 0)
      return peek().text;
    if (peek().kind == Token::Kind::Ident && peek().text == "mod") return "mod";
    return std::nullopt;
  }

  SurfaceExpr parse_expr(int min_prec = 0) {
    SurfaceExpr lhs = parse_unary();
    bool lhs_is_comparison = false;
    while (auto op = peek_binop()) {
      int prec = binop_prec(*op);
      if (prec < min_prec) break;
      // comparisons are non-associative: a second one at the same level
      // belongs to the caller (e.g. the '>' closing an ecterm)
      if (is_comparison(*op) && lhs_is_comparison) break;
      // '>' immediately followed by ';' closes an ecterm
      if (*op == ">" && peek(1).kind == Token::Kind::Punct &&
          peek(1).text == ";")
        break;
      next();
      SurfaceExpr rhs;
      if (*op == "=>" || *op == "<=>") {
        rhs = parse_expr(prec);  // right-assoc
      } else {
        rhs = parse_expr(prec + 1);  // left-assoc / non-assoc
      }
      SurfaceExpr node;
      node.k = SurfaceExpr::K::Binop;
      node.name = *op;
      node.line = lhs.line;
      node.col = lhs.col;
      node.kids = {std::move(lhs), std::move(rhs)};
      lhs = std::move(node);
      lhs_is_comparison = is_comparison(*op);
    }
    return lhs;
  }

  SurfaceExpr parse_unary() {
    const Token& t = peek();
    if (at_ident("not")) {
      next();
      SurfaceExpr e;
      e.k = SurfaceExpr::K::Not;
      e.line = t.line;
      e.col = t.col;
      e.kids = {parse_unary()};
      return e;
    }
    if (at_punct("-")) {
      next();
      SurfaceExpr operand = parse_unary();
      if (operand.k == SurfaceExpr::K::IntLit) {
        operand.ival = -operand.ival;
        return operand;
      }
      SurfaceExpr zero;
      zero.k = SurfaceExpr::K::IntLit;
      zero.ival = 0;
      zero.line = t.line;
      zero.col = t.col;
      SurfaceExpr e;
      e.k = SurfaceExpr::K::Binop;
      e.name = "-";
      e.line = t.line;
      e.col = t.col;
      e.kids = {std::move(zero), std::move(operand)};
      return e;
    }
    return parse_primary();
  }

  SurfaceExpr parse_primary() {
    const Token& t = peek();
    SurfaceExpr e;
    e.line = t.line;
    e.col = t.col;
    if (at_punct("(")) {
      next();
      e = parse_expr();
      expect_punct(")");
      return e;
    }
    if (t.kind == Token::Kind::IntLit) {
      next();
      e.k = SurfaceExpr::K::IntLit;
      e.ival = Int(t.text);
      return e;
    }
    if (at_ident("true") || at_ident("false")) {
      e.k = SurfaceExpr::K::BoolLit;
      e.bval = next().text == "true";
      return e;
    }
    if (t.kind == Token::Kind::Ident) {
      if (is_reserved(t.text))
        fail(t, "reserved word '" + t.text + "' in expression");
      std::string name = next().text;
      if (at_punct("(")) {
        next();
        e.k = SurfaceExpr::K::Call;
        e.name = name;
        if (!at_punct(")")) {
          e.kids.push_back(parse_expr());
          while (at_punct(",")) {
            next();
            e.kids.push_back(parse_expr());
          }
        }
        expect_punct(")");
        return e;
      }
      e.k = SurfaceExpr::K::Var;
      e.name = name;
      if (at_punct(":")) {
        next();
        e.annot = expect_ident("a sort name");
      }
      return e;
    }
    fail(t, "expected an expression");
  }

  std::vector<SurfaceVar> parse_varlist(const std::string& terminator) {
    std::vector<SurfaceVar> out;
    if (at_punct(terminator)) return out;
    while (true) {
      SurfaceVar v;
      v.line = peek().line;
      v.col = peek().col;
      v.name = expect_ident("a variable name");
      if (at_punct(":")) {
        next();
        v.annot = expect_ident("a sort name");
      }
      out.push_back(std::move(v));
      if (!at_punct(",")) break;
      next();
    }
    return out;
  }

  SurfaceDecl parse_decl() {
    SurfaceDecl d;
    d.line = peek().line;
    d.col = peek().col;
    next();  // 'sig'
    d.name = expect_ident("a symbol name");
    expect_punct(":");
    while (!at_punct("->")) {
      d.arg_sorts.push_back(expect_ident("a sort name"));
      if (at_punct(",")) {
        next();
        continue;
      }
      if (!at_punct("->")) fail(peek(), "expected ',' or '->'");
    }
    expect_punct("->");
    d.result_sort = expect_ident("a sort name");
    expect_punct(";");
    return d;
  }

  SurfaceItem parse_item() {
    SurfaceItem it;
    it.line = peek().line;
    it.col = peek().col;
    next();  // 'term'
    it.name = expect_ident("a term name");
    expect_punct("=");
    if (at_punct("<")) {
      next();
      expect_punct("{");
      it.logical = parse_varlist("}");
      expect_punct("}");
      expect_punct("|");
      it.term = parse_expr();
      expect_punct("|");
      if (at_ident("E")) {
        next();
        it.bound = parse_varlist(".");
        if (it.bound.empty()) fail(peek(), "empty bound-variable list");
        expect_punct(".");
      }
      it.body = parse_expr();
      expect_punct(">");
    } else {
      it.classical = true;
      it.term = parse_expr();
      expect_punct("[");
      if (!at_punct("]")) it.body = parse_expr();
      expect_punct("]");
    }
    expect_punct(";");
    return it;
  }

  void parse_file(std::vector<SurfaceDecl>& decls,
                  std::vector<SurfaceItem>& items) {
    while (peek().kind != Token::Kind::End) {
      if (at_ident("sig")) {
        if (!items.empty())
          fail(peek(), "signature declarations must precede term items");
        decls.push_back(parse_decl());
      } else if (at_ident("term")) {
        items.push_back(parse_item());
      } else {
        fail(peek(), "expected 'sig' or 'term'");
      }
    }
  }
};

// ---------------------------------------------------------------------------
// Elaboration: sort inference, then construction

struct VarSortSolver {
  std::map<std::string, Sort> known;
  std::map<std::string, std::pair<int, int>> first_use;
  std::vector<std::pair<std::string, std::string>> linked;

  void note_use(const std::string& name, int line, int col) {
    first_use.emplace(name, std::make_pair(line, col));
  }

  void set(const std::string& name, const Sort& sort, int line, int col) {
    note_use(name, line, col);
    auto [it, inserted] = known.emplace(name, sort);
    if (!inserted && it->second != sort)
      throw ParseError(line, col,
                       "variable '" + name + "' used with sorts " +
                           it->second.name + " and " + sort.name);
  }

  void link(const std::string& a, const std::string& b) {
    linked.emplace_back(a, b);
  }

  void resolve() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& [a, b] : linked) {
        auto ia = known.find(a), ib = known.find(b);
        if (ia != known.end() && ib == known.end()) {
          known.emplace(b, ia->second);
          changed = true;
        } else if (ib != known.end() && ia == known.end()) {
          known.emplace(a, ib->second);
          changed = true;
        } else if (ia != known.end() && ib != known.end() &&
                   ia->second != ib->second) {
          auto pos = first_use.at(b);
          throw ParseError(pos.first, pos.second,
                           "variables '" + a + "' and '" + b +
                               "' are equated but have sorts " +
                               ia->second.name + " and " + ib->second.name);
        }
      }
    }
  }

  Sort sort_of(const std::string& name) const {
    auto it = known.find(name);
    return it == known.end() ? sort_int() : it->second;
  }
};

struct Elaborator {
  std::shared_ptr<Signature> sig = std::make_shared<Signature>();
  std::map<std::string, Sort> sorts{{"Int", sort_int()}, {"Bool", sort_bool()}};
  VarSortSolver vars;

  Sort sort_named(const std::string& name, int line, int col,
                  bool allow_new = false) {
    auto it = sorts.find(name);
    if (it != sorts.end()) return it->second;
    if (!allow_new)
      throw ParseError(line, col, "unknown sort '" + name + "'");
    Sort s{name, SortKind::Term};
    sorts.emplace(name, s);
    return s;
  }

  void add_decl(const SurfaceDecl& d) {
    std::vector<Sort> args;
    for (const std::string& a : d.arg_sorts)
      args.push_back(sort_named(a, d.line, d.col, true));
    Sort res = sort_named(d.result_sort, d.line, d.col, true);
    try {
      sig->declare(d.name, std::move(args), std::move(res));
    } catch (const SortError& e) {
      throw ParseError(d.line, d.col, e.what());
    }
  }

  void register_varlist(const std::vector<SurfaceVar>& vs) {
    for (const SurfaceVar& v : vs) {
      vars.note_use(v.name, v.line, v.col);
      if (v.annot)
        vars.set(v.name, sort_named(*v.annot, v.line, v.col), v.line, v.col);
    }
  }

  std::optional<Sort> determine(const SurfaceExpr& e) const {
    switch (e.k) {
      case SurfaceExpr::K::IntLit:
        return sort_int();
      case SurfaceExpr::K::BoolLit:
      case SurfaceExpr::K::Not:
        return sort_bool();
      case SurfaceExpr::K::Call: {
        const FunctionSymbol* f = sig->find(e.name);
        return f ? std::optional<Sort>(f->result_sort) : std::nullopt;
      }
      case SurfaceExpr::K::Binop: {
        int p = binop_prec(e.name);
        if (p == 70 || p == 80) return sort_int();
        return sort_bool();
      }
      case SurfaceExpr::K::Var: {
        if (const FunctionSymbol* f = sig->find(e.name))
          return f->result_sort;  // nullary constant
        if (e.annot) {
          auto it = sorts.find(*e.annot);
          if (it != sorts.end()) return it->second;
        }
        auto it = vars.known.find(e.name);
        if (it != vars.known.end()) return it->second;
        return std::nullopt;
      }
    }
    return std::nullopt;
  }

  // Pass A: record variable-sort facts.
  void infer(const SurfaceExpr& e, const std::optional<Sort>& expected) {
    switch (e.k) {
      case SurfaceExpr::K::IntLit:
      case SurfaceExpr::K::BoolLit:
        return;
      case SurfaceExpr::K::Not:
        infer(e.kids[0], sort_bool());
        return;
      case SurfaceExpr::K::Var: {
        if (sig->find(e.name)) return;  // nullary constant
        vars.note_use(e.name, e.line, e.col);
        if (e.annot)
          vars.set(e.name, sort_named(*e.annot, e.line, e.col), e.line, e.col);
        if (expected) vars.set(e.name, *expected, e.line, e.col);
        return;
      }
      case SurfaceExpr::K::Call: {
        const FunctionSymbol* f = sig->find(e.name);
        if (!f)
          throw ParseError(e.line, e.col,
                           "undeclared function symbol '" + e.name + "'");
        if (f->arg_sorts.size() != e.kids.size())
          throw ParseError(e.line, e.col,
                           "'" + e.name + "' expects " +
                               std::to_string(f->arg_sorts.size()) +
                               " arguments, got " +
                               std::to_string(e.kids.size()));
        for (size_t i = 0; i < e.kids.size(); ++i)
          infer(e.kids[i], f->arg_sorts[i]);
        return;
      }
      case SurfaceExpr::K::Binop: {
        int p = binop_prec(e.name);
        if (p == 70 || p == 80) {  // arithmetic
          infer(e.kids[0], sort_int());
          infer(e.kids[1], sort_int());
        } else if (e.name == "=" || e.name == "!=") {
          std::optional<Sort> s = determine(e.kids[0]);
          if (!s) s = determine(e.kids[1]);
          if (s) {
            infer(e.kids[0], s);
            infer(e.kids[1], s);
          } else {
            // two undetermined variables; linked, defaulting to Int
            infer(e.kids[0], std::nullopt);
            infer(e.kids[1], std::nullopt);
            if (e.kids[0].k == SurfaceExpr::K::Var &&
                e.kids[1].k == SurfaceExpr::K::Var)
              vars.link(e.kids[0].name, e.kids[1].name);
          }
        } else if (p == 60) {  // other comparisons are integer
          infer(e.kids[0], sort_int());
          infer(e.kids[1], sort_int());
        } else {  // boolean connectives
          infer(e.kids[0], sort_bool());
          infer(e.kids[1], sort_bool());
        }
        return;
      }
    }
  }

  // Pass B: construct the sorted term.
  Term build(const SurfaceExpr& e) {
    try {
      switch (e.k) {
        case SurfaceExpr::K::IntLit:
          return Term::val(Value(e.ival));
        case SurfaceExpr::K::BoolLit:
          return Term::val(Value(e.bval));
        case SurfaceExpr::K::Not: {
          const FunctionSymbol* f =
              Signature::theory_symbol("not", std::vector<Sort>{sort_bool()});
          return Term::app(*f, {build(e.kids[0])});
        }
        case SurfaceExpr::K::Var: {
          if (const FunctionSymbol* f = sig->find(e.name))
            return Term::app(*f, {});
          return Term::var(Variable{e.name, vars.sort_of(e.name)});
        }
        case SurfaceExpr::K::Call: {
          std::vector<Term> args;
          for (const SurfaceExpr& k : e.kids) args.push_back(build(k));
          return Term::app(sig->at(e.name), std::move(args));
        }
        case SurfaceExpr::K::Binop: {
          Term a = build(e.kids[0]);
          Term b = build(e.kids[1]);
          std::vector<Sort> argsorts{a.sort(), b.sort()};
          const FunctionSymbol* f =
              Signature::theory_symbol(e.name, argsorts);
          if (!f)
            throw ParseError(e.line, e.col,
                             "operator '" + e.name + "' undefined at sorts " +
                                 a.sort().name + ", " + b.sort().name);
          return Term::app(*f, {std::move(a), std::move(b)});
        }
      }
    } catch (const SortError& err) {
      throw ParseError(e.line, e.col, err.what());
    }
    throw ParseError(e.line, e.col, "malformed expression");
  }

  static SurfaceExpr true_expr(int line, int col) {
    SurfaceExpr e;
    e.k = SurfaceExpr::K::BoolLit;
    e.bval = true;
    e.line = line;
    e.col = col;
    return e;
  }
};

}  // namespace

const ProblemItem* ProblemFile::find(const std::string& name) const {
  for (const ProblemItem& it : items)
    if (it.name == name) return &it;
  return nullptr;
}

ProblemFile parse_problem(const std::string& text) {
  Lexer lexer(text);
  Parser parser{lexer.lex()};
  std::vector<SurfaceDecl> decls;
  std::vector<SurfaceItem> sitems;
  parser.parse_file(decls, sitems);

  Elaborator el;
  for (const SurfaceDecl& d : decls) el.add_decl(d);

  // Variable sorts are global to the file; infer across all items first.
  for (SurfaceItem& it : sitems) {
    if (!it.body) it.body = Elaborator::true_expr(it.line, it.col);
    el.register_varlist(it.logical);
    el.register_varlist(it.bound);
    el.infer(it.term, std::nullopt);
    el.infer(*it.body, sort_bool());
  }
  el.vars.resolve();

  ProblemFile out;
  out.signature = el.sig;
  std::set<std::string> names;
  for (const SurfaceItem& sit : sitems) {
    if (!names.insert(sit.name).second)
      throw ParseError(sit.line, sit.col,
                       "duplicate term name '" + sit.name + "'");
    Term term = el.build(sit.term);
    Term body = el.build(*sit.body);

    if (sit.classical) {
      LogicalConstraint phi = [&] {
        try {
          return LogicalConstraint(body);
        } catch (const SortError& e) {
          throw ParseError(sit.line, sit.col, e.what());
        }
      }();
      ECTerm emb = embed(term, phi);
      ProblemItem item(sit.name, emb.logical_vars(), emb.term(),
                       emb.constraint());
      item.classical = true;
      item.classical_phi = body;
      item.ecterm = std::move(emb);
      out.items.push_back(std::move(item));
      continue;
    }

    VariableSet logical;
    for (const SurfaceVar& v : sit.logical)
      logical.insert(Variable{v.name, el.vars.sort_of(v.name)});
    std::vector<Variable> bound;
    for (const SurfaceVar& v : sit.bound)
      bound.push_back(Variable{v.name, el.vars.sort_of(v.name)});

    ExistentialConstraint c = [&] {
      try {
        return ExistentialConstraint(std::move(bound), LogicalConstraint(body));
      } catch (const SortError& e) {
        throw ParseError(sit.line, sit.col, e.what());
      } catch (const IllFormed& e) {
        throw ParseError(sit.line, sit.col, e.what());
      }
    }();

    ProblemItem item(sit.name, logical, term, c);
    try {
      item.ecterm = ECTerm(logical, term, c);
    } catch (const IllFormed& e) {
      item.wf_error = e;
    }
    out.items.push_back(std::move(item));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

/// Variables whose sort would not be re-inferred from use: no occurrence
/// under a declared symbol argument or a sort-fixing operator.
void collect_implied(const Term& t, bool implied_here, VariableSet& implied) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      if (implied_here) implied.insert(t.variable());
      return;
    case Term::Kind::Value:
    case Term::Kind::Hole:
      return;
    case Term::Kind::Application: {
      const FunctionSymbol& f = t.symbol();
      for (const Term& a : t.args()) {
        bool arg_implied = true;
        if (f.is_theory() && (f.name == "=" || f.name == "!="))
          arg_implied = false;
        collect_implied(a, arg_implied, implied);
      }
      return;
    }
  }
}

VariableSet annotation_set(const std::vector<const Term*>& exprs) {
  VariableSet implied, all;
  for (const Term* t : exprs) {
    collect_implied(*t, false, implied);
    VariableSet vs = variables(*t);
    all.insert(vs.begin(), vs.end());
  }
  VariableSet need;
  for (const Variable& v : all)
    if (v.sort != sort_int() && !implied.count(v)) need.insert(v);
  return need;
}

std::string print_var_list(const std::vector<Variable>& vs) {
  std::ostringstream out;
  for (size_t i = 0; i < vs.size(); ++i) {
    if (i) out << ", ";
    out << vs[i].name;
    if (vs[i].sort != sort_int()) out << ":" << vs[i].sort.name;
  }
  return out.str();
}

}  // namespace

std::string print_item(const ProblemItem& it) {
  std::ostringstream out;
  out << "term " << it.name << " = ";
  if (it.classical) {
    std::vector<const Term*> exprs{&it.term, &*it.classical_phi};
    VariableSet annotate = annotation_set(exprs);
    out << print_term_annotated(it.term, annotate) << " ["
        << print_term_annotated(*it.classical_phi, annotate) << "];";
    return out.str();
  }
  // List-declared variables are annotated in their lists; the remaining
  // non-Int variables are annotated at first use in the term part.
  std::vector<const Term*> exprs{&it.term, &it.constraint.body().term()};
  VariableSet annotate = annotation_set(exprs);
  for (const Variable& v : it.logical) annotate.erase(v);
  for (const Variable& v : it.constraint.bound_seq()) annotate.erase(v);

  out << "<{"
      << print_var_list(std::vector<Variable>(it.logical.begin(),
                                              it.logical.end()))
      << "} | " << print_term_annotated(it.term, annotate) << " | ";
  if (!it.constraint.bound_seq().empty())
    out << "E " << print_var_list(it.constraint.bound_seq()) << ". ";
  out << print_term_annotated(it.constraint.body().term(), annotate) << ">;";
  return out.str();
}

std::string print_problem(const ProblemFile& f) {
  std::ostringstream out;
  for (const auto& [name, sym] : f.signature->term_symbols()) {
    out << "sig " << name << " : ";
    for (size_t i = 0; i < sym.arg_sorts.size(); ++i) {
      if (i) out << ", ";
      out << sym.arg_sorts[i].name;
    }
    out << (sym.arg_sorts.empty() ? "-> " : " -> ") << sym.result_sort.name
        << ";\n";
  }
  for (const ProblemItem& it : f.items) out << print_item(it) << "\n";
  return out.str();
}

}  // namespace ect
