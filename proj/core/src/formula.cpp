#include "folgeo/formula.hpp"

#include <cctype>

namespace folgeo {

FormulaPtr Formula::equal(Term l, Term r) {
  auto f = std::make_shared<Formula>();
  f->kind = Kind::Equal;
  f->lhs = std::move(l);
  f->rhs = std::move(r);
  return f;
}

FormulaPtr Formula::rel(std::string name, std::vector<Term> args) {
  auto f = std::make_shared<Formula>();
  f->kind = Kind::Rel;
  f->sym = std::move(name);
  f->args = std::move(args);
  return f;
}

FormulaPtr Formula::f_or(FormulaPtr a, FormulaPtr b) {
  auto f = std::make_shared<Formula>();
  f->kind = Kind::Or;
  f->a = std::move(a);
  f->b = std::move(b);
  return f;
}

FormulaPtr Formula::f_and(FormulaPtr a, FormulaPtr b) {
  auto f = std::make_shared<Formula>();
  f->kind = Kind::And;
  f->a = std::move(a);
  f->b = std::move(b);
  return f;
}

FormulaPtr Formula::f_not(FormulaPtr a) {
  auto f = std::make_shared<Formula>();
  f->kind = Kind::Not;
  f->a = std::move(a);
  return f;
}

FormulaPtr Formula::exists(std::string var, FormulaPtr body) {
  auto f = std::make_shared<Formula>();
  f->kind = Kind::Exists;
  f->sym = std::move(var);
  f->a = std::move(body);
  return f;
}

FormulaPtr Formula::subst_app(Substitution s, FormulaPtr body) {
  auto f = std::make_shared<Formula>();
  f->kind = Kind::Subst;
  f->subst = std::make_shared<Substitution>(std::move(s));
  f->a = std::move(body);
  return f;
}

bool formulas_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Formula::Kind::Equal:
      return a->lhs == b->lhs && a->rhs == b->rhs;
    case Formula::Kind::Rel:
      return a->sym == b->sym && a->args == b->args;
    case Formula::Kind::Or:
    case Formula::Kind::And:
      return formulas_equal(a->a, b->a) && formulas_equal(a->b, b->b);
    case Formula::Kind::Not:
      return formulas_equal(a->a, b->a);
    case Formula::Kind::Exists:
      return a->sym == b->sym && formulas_equal(a->a, b->a);
    case Formula::Kind::Subst:
      return *a->subst == *b->subst && formulas_equal(a->a, b->a);
  }
  return false;
}

bool is_elementary(const FormulaPtr& f) {
  if (!f) return true;
  if (f->kind == Formula::Kind::Subst) return false;
  return is_elementary(f->a) && is_elementary(f->b);
}

namespace {

void check_formula(const Signature& sig, const VarContext& ctx, const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::Equal: {
      std::string ls = sort_of_term(sig, ctx, f->lhs);
      std::string rs = sort_of_term(sig, ctx, f->rhs);
      if (ls != rs)
        throw DomainError("equality between sorts " + ls + " and " + rs);
      return;
    }
    case Formula::Kind::Rel: {
      auto ri = sig.rel_index(f->sym);
      if (!ri) throw DomainError("unknown relation: " + f->sym);
      const RelDecl& rel = sig.rels[*ri];
      if (rel.arg_sorts.size() != f->args.size())
        throw DomainError("arity mismatch for relation " + f->sym);
      for (std::size_t i = 0; i < f->args.size(); ++i) {
        std::string got = sort_of_term(sig, ctx, f->args[i]);
        if (got != rel.arg_sorts[i])
          throw DomainError("sort mismatch in argument " + std::to_string(i) +
                            " of relation " + f->sym);
      }
      return;
    }
    case Formula::Kind::Or:
    case Formula::Kind::And:
      check_formula(sig, ctx, f->a);
      check_formula(sig, ctx, f->b);
      return;
    case Formula::Kind::Not:
      check_formula(sig, ctx, f->a);
      return;
    case Formula::Kind::Exists:
      if (!ctx.contains(f->sym))
        throw DomainError("quantified variable not in context: " + f->sym);
      check_formula(sig, ctx, f->a);
      return;
    case Formula::Kind::Subst:
      if (!(f->subst->target == ctx))
        throw DomainError("substitution target does not match formula context");
      check_substitution(sig, *f->subst);
      check_formula(sig, f->subst->source, f->a);
      return;
  }
}

}  // namespace

void check_typed(const Signature& sig, const TypedFormula& u) {
  check_context(sig, u.context);
  check_formula(sig, u.context, u.body);
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok { Ident, LParen, RParen, Comma, Dot, EqEq, Bang, Amp, Pipe, End };

struct Lexer {
  const std::string& text;
  std::size_t pos = 0;
  Tok tok = Tok::End;
  std::string ident;
  std::size_t tok_pos = 0;

  explicit Lexer(const std::string& t) : text(t) { advance(); }

  void advance() {
    while (pos < text.size()) {
      char c = text[pos];
      if (c == '#') {
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos;
      } else {
        break;
      }
    }
    tok_pos = pos;
    if (pos >= text.size()) { tok = Tok::End; return; }
    char c = text[pos];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        ++pos;
      ident = text.substr(start, pos - start);
      tok = Tok::Ident;
      return;
    }
    switch (c) {
      case '(': tok = Tok::LParen; ++pos; return;
      case ')': tok = Tok::RParen; ++pos; return;
      case ',': tok = Tok::Comma; ++pos; return;
      case '.': tok = Tok::Dot; ++pos; return;
      case '!': tok = Tok::Bang; ++pos; return;
      case '&': tok = Tok::Amp; ++pos; return;
      case '|': tok = Tok::Pipe; ++pos; return;
      case '=':
        if (pos + 1 < text.size() && text[pos + 1] == '=') {
          tok = Tok::EqEq;
          pos += 2;
          return;
        }
        throw ParseError("expected '=='", pos);
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", pos);
    }
  }
};

struct Parser {
  Lexer lex;
  const VarContext& ctx;
  const Signature& sig;

  Parser(const std::string& text, const VarContext& ctx, const Signature& sig)
      : lex(text), ctx(ctx), sig(sig) {}

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg, lex.tok_pos);
  }

  void expect(Tok t, const char* what) {
    if (lex.tok != t) fail(std::string("expected ") + what);
    lex.advance();
  }

  // A bare identifier is a context variable or a constant op.
  Term resolve_ident(const std::string& name) {
    if (ctx.contains(name)) return Term::var(name);
    auto oi = sig.op_index(name);
    if (oi && sig.ops[*oi].arg_sorts.empty()) return Term::app(name, {});
    fail("unknown symbol: " + name);
  }

  Term parse_term() {
    if (lex.tok != Tok::Ident) fail("expected a term");
    std::string name = lex.ident;
    lex.advance();
    if (lex.tok != Tok::LParen) return resolve_ident(name);
    lex.advance();
    std::vector<Term> args;
    if (lex.tok != Tok::RParen) {
      args.push_back(parse_term());
      while (lex.tok == Tok::Comma) {
        lex.advance();
        args.push_back(parse_term());
      }
    }
    expect(Tok::RParen, "')'");
    return Term::app(name, std::move(args));
  }

  FormulaPtr parse_atom() {
    std::size_t at = lex.tok_pos;
    Term t = parse_term();
    if (lex.tok == Tok::EqEq) {
      lex.advance();
      Term r = parse_term();
      return Formula::equal(std::move(t), std::move(r));
    }
    // Not an equality: the head must be a relation symbol.
    if (t.is_var || !sig.rel_index(t.head))
      throw ParseError("expected '==' or a relation atom", at);
    return Formula::rel(t.head, std::move(t.args));
  }

  bool at_quantifier() {
    if (lex.tok != Tok::Ident || (lex.ident != "E" && lex.ident != "A"))
      return false;
    // Lookahead: IDENT "." after the quantifier letter.
    auto pos = lex.pos;
    auto tok = lex.tok;
    auto ident = lex.ident;
    auto tok_pos = lex.tok_pos;
    lex.advance();
    bool is_quant = lex.tok == Tok::Ident;
    if (is_quant) {
      lex.advance();
      is_quant = lex.tok == Tok::Dot;
    }
    lex.pos = pos;
    lex.tok = tok;
    lex.ident = std::move(ident);
    lex.tok_pos = tok_pos;
    return is_quant;
  }

  FormulaPtr parse_quantifier() {
    bool universal = lex.ident == "A";
    lex.advance();
    std::string var = lex.ident;
    lex.advance();
    expect(Tok::Dot, "'.'");
    FormulaPtr body = parse_or();
    if (universal)
      return Formula::f_not(Formula::exists(var, Formula::f_not(std::move(body))));
    return Formula::exists(var, std::move(body));
  }

  FormulaPtr parse_lit() {
    if (at_quantifier()) return parse_quantifier();
    if (lex.tok == Tok::Bang) {
      lex.advance();
      return Formula::f_not(parse_lit());
    }
    if (lex.tok == Tok::LParen) {
      lex.advance();
      FormulaPtr f = parse_or();
      expect(Tok::RParen, "')'");
      return f;
    }
    return parse_atom();
  }

  FormulaPtr parse_and() {
    FormulaPtr f = parse_lit();
    while (lex.tok == Tok::Amp) {
      lex.advance();
      f = Formula::f_and(std::move(f), parse_lit());
    }
    return f;
  }

  FormulaPtr parse_or() {
    FormulaPtr f = parse_and();
    while (lex.tok == Tok::Pipe) {
      lex.advance();
      f = Formula::f_or(std::move(f), parse_and());
    }
    return f;
  }

  FormulaPtr parse_all() {
    FormulaPtr f = parse_or();
    if (lex.tok != Tok::End) fail("trailing input");
    return f;
  }
};

}  // namespace

TypedFormula parse_formula(const std::string& text, const VarContext& ctx,
                           const Signature& sig) {
  Parser p(text, ctx, sig);
  TypedFormula u{ctx, p.parse_all()};
  check_typed(sig, u);
  return u;
}

// ---------------------------------------------------------------------------
// Printer

namespace {

// Precedence levels: Or=0, And=1, Not=2, atoms=3. Quantifiers print bare
// only in tail position (they scope to the end of the parenthesis level).
std::string print(const FormulaPtr& f, int min_level, bool tail);

int level_of(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Or: return 0;
    case Formula::Kind::And: return 1;
    case Formula::Kind::Not: return 2;
    default: return 3;
  }
}

std::string print(const FormulaPtr& f, int min_level, bool tail) {
  switch (f->kind) {
    case Formula::Kind::Equal:
      return term_to_string(f->lhs) + " == " + term_to_string(f->rhs);
    case Formula::Kind::Rel: {
      std::string out = f->sym + "(";
      for (std::size_t i = 0; i < f->args.size(); ++i) {
        if (i) out += ",";
        out += term_to_string(f->args[i]);
      }
      return out + ")";
    }
    case Formula::Kind::Exists: {
      std::string body = "E " + f->sym + ". " + print(f->a, 0, true);
      return tail ? body : "(" + body + ")";
    }
    case Formula::Kind::Not:
      return 2 < min_level ? "(!" + print(f->a, 2, false) + ")"
                           : "!" + print(f->a, 2, false);
    case Formula::Kind::And: {
      std::string s = print(f->a, 1, false) + " & " + print(f->b, 2, tail);
      return 1 < min_level ? "(" + s + ")" : s;
    }
    case Formula::Kind::Or: {
      std::string s = print(f->a, 0, false) + " | " + print(f->b, 1, tail);
      return 0 < min_level ? "(" + s + ")" : s;
    }
    case Formula::Kind::Subst: {
      std::string s = "[";
      for (std::size_t i = 0; i < f->subst->source.size(); ++i) {
        if (i) s += ", ";
        s += f->subst->source.name(i) + " -> " + term_to_string(f->subst->images[i]);
      }
      return s + "](" + print(f->a, 0, true) + ")";
    }
  }
  return "";
}

}  // namespace

std::string formula_to_string(const FormulaPtr& f) { return print(f, 0, true); }

// ---------------------------------------------------------------------------
// Substitution application and normalization

TypedFormula apply_subst_formula(const Signature& sig, const Substitution& s,
                                 const TypedFormula& u) {
  if (!(u.context == s.source))
    throw DomainError("apply_subst_formula: formula context does not match source");
  check_substitution(sig, s);
  return TypedFormula{s.target, Formula::subst_app(s, u.body)};
}

namespace {

void collect_names(const Term& t, std::set<std::string>& out) {
  if (t.is_var) out.insert(t.head);
  for (const Term& a : t.args) collect_names(a, out);
}

void collect_names(const FormulaPtr& f, std::set<std::string>& out) {
  if (!f) return;
  switch (f->kind) {
    case Formula::Kind::Equal:
      collect_names(f->lhs, out);
      collect_names(f->rhs, out);
      break;
    case Formula::Kind::Rel:
      for (const Term& t : f->args) collect_names(t, out);
      break;
    case Formula::Kind::Exists:
      out.insert(f->sym);
      break;
    case Formula::Kind::Subst:
      for (const auto& [n, s] : f->subst->source.vars()) out.insert(n);
      for (const auto& [n, s] : f->subst->target.vars()) out.insert(n);
      for (const Term& t : f->subst->images) collect_names(t, out);
      break;
    default:
      break;
  }
  collect_names(f->a, out);
  collect_names(f->b, out);
}

struct Normalizer {
  std::set<std::string> used;
  int counter = 0;
  std::vector<std::pair<std::string, std::string>> extras;

  std::string fresh(const std::string& sort) {
    for (;;) {
      std::string name = "_v" + std::to_string(counter++);
      if (used.insert(name).second) {
        extras.emplace_back(name, sort);
        return name;
      }
    }
  }

  FormulaPtr norm(const FormulaPtr& f) {
    switch (f->kind) {
      case Formula::Kind::Equal:
      case Formula::Kind::Rel:
        return f;
      case Formula::Kind::Or: {
        FormulaPtr a = norm(f->a), b = norm(f->b);
        return (a == f->a && b == f->b) ? f : Formula::f_or(a, b);
      }
      case Formula::Kind::And: {
        FormulaPtr a = norm(f->a), b = norm(f->b);
        return (a == f->a && b == f->b) ? f : Formula::f_and(a, b);
      }
      case Formula::Kind::Not: {
        FormulaPtr a = norm(f->a);
        return a == f->a ? f : Formula::f_not(a);
      }
      case Formula::Kind::Exists: {
        FormulaPtr a = norm(f->a);
        return a == f->a ? f : Formula::exists(f->sym, a);
      }
      case Formula::Kind::Subst:
        return push(*f->subst, f->a);
    }
    return f;
  }

  // s_* applied to a formula over s.source; result over s.target plus any
  // fresh variables introduced for quantifiers.
  FormulaPtr push(const Substitution& s, const FormulaPtr& f) {
    switch (f->kind) {
      case Formula::Kind::Equal:
        return Formula::equal(apply_subst_term(s, f->lhs), apply_subst_term(s, f->rhs));
      case Formula::Kind::Rel: {
        std::vector<Term> args;
        args.reserve(f->args.size());
        for (const Term& t : f->args) args.push_back(apply_subst_term(s, t));
        return Formula::rel(f->sym, std::move(args));
      }
      case Formula::Kind::Or:
        return Formula::f_or(push(s, f->a), push(s, f->b));
      case Formula::Kind::And:
        return Formula::f_and(push(s, f->a), push(s, f->b));
      case Formula::Kind::Not:
        return Formula::f_not(push(s, f->a));
      case Formula::Kind::Exists: {
        auto xi = s.source.index_of(f->sym);
        if (!xi) throw DomainError("quantified variable outside context: " + f->sym);
        const std::string& sort = s.source.sort(*xi);
        std::string y = fresh(sort);
        Substitution renamed{s.source, s.target.extended(y, sort), s.images};
        renamed.images[*xi] = Term::var(y);
        return Formula::exists(y, push(renamed, f->a));
      }
      case Formula::Kind::Subst:
        return push(compose_subst(*f->subst, s), f->a);
    }
    return f;
  }
};

}  // namespace

TypedFormula normalize_elementary(const Signature& sig, const TypedFormula& u) {
  Normalizer n;
  for (const auto& [name, sort] : u.context.vars()) n.used.insert(name);
  collect_names(u.body, n.used);
  FormulaPtr body = n.norm(u.body);
  VarContext ctx = u.context;
  if (!n.extras.empty()) ctx = ctx.merged(VarContext(n.extras));
  TypedFormula out{std::move(ctx), std::move(body)};
  check_typed(sig, out);
  return out;
}

namespace {

void free_vars(const FormulaPtr& f, std::set<std::string>& bound,
               std::set<std::string>& out) {
  auto term_vars = [&](const Term& t, auto&& self) -> void {
    if (t.is_var) {
      if (!bound.count(t.head)) out.insert(t.head);
      return;
    }
    for (const Term& a : t.args) self(a, self);
  };
  switch (f->kind) {
    case Formula::Kind::Equal:
      term_vars(f->lhs, term_vars);
      term_vars(f->rhs, term_vars);
      return;
    case Formula::Kind::Rel:
      for (const Term& t : f->args) term_vars(t, term_vars);
      return;
    case Formula::Kind::Or:
    case Formula::Kind::And:
      free_vars(f->a, bound, out);
      free_vars(f->b, bound, out);
      return;
    case Formula::Kind::Not:
      free_vars(f->a, bound, out);
      return;
    case Formula::Kind::Exists: {
      bool was_bound = bound.count(f->sym) > 0;
      bound.insert(f->sym);
      free_vars(f->a, bound, out);
      if (!was_bound) bound.erase(f->sym);
      return;
    }
    case Formula::Kind::Subst:
      throw DomainError("syntactic_support: formula is not elementary");
  }
}

}  // namespace

std::set<std::string> syntactic_support(const TypedFormula& u) {
  std::set<std::string> bound, out;
  free_vars(u.body, bound, out);
  return out;
}

}  // namespace folgeo
