#pragma once

#include <algorithm>
#include <cctype>
#include <climits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "algequiv/statespace.hpp"

namespace algequiv {

// ---------------------------------------------------------------------------
// Update-equation language. Grammar (see README for the full description):
//
//   algorithm  := "algorithm" NAME "(" ["oracles"] odecls ";" ["params"] pdecls ")"
//                 ["implicit"] "{" stmt+ "}"
//   odecl      := NAME [":" kind] ; kind := "prox" "[" step "]" | "prox_conj" "[" step "]"
//                                        | "subdiff" | "subdiff_conj" | "generic"
//   stmt       := VAR "[" ("k+1" | "k") "]" "=" linexpr ";"
//   linexpr    := linear expression over VAR "[" k±d "]" and ORACLE "(" linexpr ")",
//                 with parameter-expression coefficients (+ - * / ^).
//
// A variable assigned at [k+1] is a state; one assigned at [k] is an
// intra-iteration temporary. History references v[k-d] become memory states
// v__1, ..., v__d. An oracle may appear textually more than once: duplicate
// occurrences must carry either the identical argument or a pure time shift
// of it; shifted occurrences read the delayed oracle output through a memory
// state. Statements may reference x[k+1] values assigned elsewhere in the
// body. "0" is the only constant admitted as a full right-hand side.

struct SrcPos {
  int line = 1, col = 1;
};

struct LinAtom {
  enum class Kind { var, site, result } kind = Kind::var;
  std::string name;  // var
  int offset = 0;    // var time offset relative to k
  int site = -1;     // pre-unification call site
  int oracle = -1;   // post-unification oracle channel
  int delay = 0;     // post-unification result delay (0 = current iteration)

  bool operator==(const LinAtom& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
      case Kind::var: return name == o.name && offset == o.offset;
      case Kind::site: return site == o.site;
      case Kind::result: return oracle == o.oracle && delay == o.delay;
    }
    return false;
  }
};

struct LinTerm {
  RatFunc coef;
  LinAtom atom;
};
using LinForm = std::vector<LinTerm>;

struct CallSite {
  int oracle = -1;
  LinForm arg;
  SrcPos pos;
};

struct Statement {
  std::string target;
  int target_offset = 0;  // 0 temporary, 1 next state
  LinForm rhs;
  SrcPos pos;
};

// Parsed and semantically checked algorithm. Oracle arguments are unified:
// exactly one principal argument per oracle, with delayed uses recorded.
struct AlgorithmAST {
  std::string name;
  std::vector<OracleSig> oracles;
  std::vector<std::string> params;
  std::vector<Statement> stmts;
  std::vector<LinForm> oracle_args;  // principal query point per oracle
  std::vector<int> oracle_delay;     // max delayed-result depth per oracle
  bool implicit_marker = false;
  std::string source;
};

namespace detail {

inline void lin_add(LinForm& form, const RatFunc& coef, const LinAtom& atom) {
  if (coef.is_zero()) return;
  for (auto& t : form) {
    if (t.atom == atom) {
      t.coef = t.coef + coef;
      if (t.coef.is_zero()) {
        t.atom = form.back().atom;
        t.coef = form.back().coef;
        form.pop_back();
      }
      return;
    }
  }
  form.push_back({coef, atom});
}

inline LinForm lin_scale(const LinForm& form, const RatFunc& s) {
  LinForm out;
  for (auto& t : form) lin_add(out, t.coef * s, t.atom);
  return out;
}

inline LinForm lin_combine(const LinForm& a, const LinForm& b, bool subtract = false) {
  LinForm out = a;
  for (auto& t : b) lin_add(out, subtract ? -t.coef : t.coef, t.atom);
  return out;
}

class DslParser {
 public:
  explicit DslParser(const std::string& text) : s_(text) {}

  AlgorithmAST parse() {
    ast_.source = s_;
    expect_keyword("algorithm");
    ast_.name = expect_ident("algorithm name");
    expect_char('(');
    parse_oracle_decls();
    expect_char(';');
    parse_param_decls();
    expect_char(')');
    if (peek_keyword("implicit")) {
      consume_ident();
      ast_.implicit_marker = true;
    }
    expect_char('{');
    while (!try_char('}')) {
      require_stream(pos_ < s_.size(), "unterminated algorithm body");
      parse_statement();
    }
    skip_ws();
    require_stream(pos_ >= s_.size(), "trailing input after algorithm body");
    analyze();
    return ast_;
  }

 private:
  // ---- declarations -------------------------------------------------------
  void parse_oracle_decls() {
    skip_ws();
    if (peek_keyword("oracles")) consume_ident();
    skip_ws();
    if (peek() == ';') return;
    while (true) {
      SrcPos pos = here();
      OracleSig sig;
      sig.name = expect_ident("oracle name");
      check_fresh_name(sig.name, pos);
      if (try_char(':')) {
        std::string kind = expect_ident("oracle kind");
        if (kind == "generic") {
          sig.kind = OracleKind::generic;
        } else if (kind == "subdiff") {
          sig.kind = OracleKind::subdiff;
        } else if (kind == "subdiff_conj") {
          sig.kind = OracleKind::subdiff_conj;
        } else if (kind == "prox" || kind == "prox_conj") {
          sig.kind = kind == "prox" ? OracleKind::prox : OracleKind::prox_conj;
          expect_char('[');
          skip_ws();
          if (std::isdigit(peek())) {
            sig.step = std::to_string(integer());
          } else {
            sig.step = expect_ident("stepsize symbol");
          }
          expect_char(']');
        } else {
          fail(pos, "unknown oracle kind '" + kind + "'");
        }
      }
      ast_.oracles.push_back(sig);
      if (!try_char(',')) break;
    }
  }

  void parse_param_decls() {
    skip_ws();
    if (peek_keyword("params")) consume_ident();
    skip_ws();
    if (peek() == ')') return;
    while (true) {
      SrcPos pos = here();
      std::string name = expect_ident("parameter name");
      check_fresh_name(name, pos);
      ast_.params.push_back(name);
      if (!try_char(',')) break;
    }
    // Prox stepsize symbols must be declared parameters or literals.
    for (auto& sig : ast_.oracles) {
      if (sig.step.empty()) continue;
      if (std::isdigit(static_cast<unsigned char>(sig.step[0]))) continue;
      require(std::count(ast_.params.begin(), ast_.params.end(), sig.step) > 0,
              Errc::undeclared_symbol,
              "stepsize symbol '" + sig.step + "' of oracle '" + sig.name +
                  "' is not a declared parameter");
    }
  }

  void check_fresh_name(const std::string& name, SrcPos pos) {
    if (name == "z") fail(pos, "'z' is reserved for the transfer-function indeterminate");
    for (auto& o : ast_.oracles)
      if (o.name == name) fail(pos, "name '" + name + "' already declared");
    for (auto& p : ast_.params)
      if (p == name) fail(pos, "name '" + name + "' already declared");
  }

  // ---- statements ---------------------------------------------------------
  void parse_statement() {
    SrcPos pos = here();
    std::string target = expect_ident("variable name");
    if (is_oracle(target) >= 0 || is_param(target))
      fail(pos, "'" + target + "' is not assignable");
    expect_char('[');
    int off = parse_index();
    expect_char(']');
    if (off != 0 && off != 1)
      fail(pos, "assignments must target v[k] or v[k+1]");
    expect_char('=');
    LinVal v = expression();
    expect_char(';');
    if (!v.scalar.is_zero())
      raise(Errc::nonlinear_expression,
            at(pos) + "constant (affine) term in the update for '" + target + "'");
    ast_.stmts.push_back({target, off, std::move(v.terms), pos});
  }

  int parse_index() {
    SrcPos pos = here();
    std::string k = expect_ident("time index");
    if (k != "k") fail(pos, "time indices must be written relative to k");
    skip_ws();
    if (peek() == '+' || peek() == '-') {
      char op = s_[pos_];
      advance(1);
      skip_ws();
      require_stream(std::isdigit(peek()), "expected integer after 'k" + std::string(1, op) + "'");
      long d = integer();
      return op == '+' ? static_cast<int>(d) : -static_cast<int>(d);
    }
    return 0;
  }

  // ---- expressions --------------------------------------------------------
  struct LinVal {
    RatFunc scalar;
    LinForm terms;
    bool is_scalar() const { return terms.empty(); }
  };

  LinVal expression() {
    LinVal v = term();
    while (true) {
      skip_ws();
      if (peek() == '+') {
        advance(1);
        LinVal r = term();
        v.scalar = v.scalar + r.scalar;
        v.terms = lin_combine(v.terms, r.terms);
      } else if (peek() == '-') {
        advance(1);
        LinVal r = term();
        v.scalar = v.scalar - r.scalar;
        v.terms = lin_combine(v.terms, r.terms, true);
      } else {
        return v;
      }
    }
  }

  LinVal term() {
    SrcPos pos = here();
    LinVal v = unary();
    while (true) {
      skip_ws();
      if (peek() == '*') {
        advance(1);
        LinVal r = unary();
        if (!v.is_scalar() && !r.is_scalar())
          raise(Errc::nonlinear_expression,
                at(pos) + "product of two state/oracle expressions");
        if (r.is_scalar()) {
          v.scalar = v.scalar * r.scalar;
          v.terms = lin_scale(v.terms, r.scalar);
        } else {
          r.terms = lin_scale(r.terms, v.scalar);
          r.scalar = r.scalar * v.scalar;
          v = std::move(r);
        }
      } else if (peek() == '/') {
        advance(1);
        LinVal r = unary();
        if (!r.is_scalar())
          raise(Errc::nonlinear_expression,
                at(pos) + "division by a state or oracle expression");
        if (r.scalar.is_zero()) fail(pos, "division by zero");
        RatFunc inv = r.scalar.inverse();
        v.scalar = v.scalar * inv;
        v.terms = lin_scale(v.terms, inv);
      } else {
        return v;
      }
    }
  }

  LinVal unary() {
    skip_ws();
    if (peek() == '-') {
      advance(1);
      LinVal v = unary();
      v.scalar = -v.scalar;
      v.terms = lin_scale(v.terms, RatFunc(-1L));
      return v;
    }
    if (peek() == '+') {
      advance(1);
      return unary();
    }
    return power();
  }

  LinVal power() {
    SrcPos pos = here();
    LinVal base = primary();
    skip_ws();
    if (peek() != '^') return base;
    advance(1);
    skip_ws();
    require_stream(std::isdigit(peek()), "expected integer exponent");
    long e = integer();
    if (!base.is_scalar() && e != 1)
      raise(Errc::nonlinear_expression, at(pos) + "power of a state/oracle expression");
    LinVal out;
    out.scalar = RatFunc(1L);
    for (long i = 0; i < e; ++i) out.scalar = out.scalar * base.scalar;
    if (!base.is_scalar()) return base;
    return out;
  }

  LinVal primary() {
    skip_ws();
    SrcPos pos = here();
    char c = peek();
    if (c == '(') {
      advance(1);
      LinVal v = expression();
      expect_char(')');
      return v;
    }
    if (std::isdigit(c)) {
      LinVal v;
      v.scalar = RatFunc(Rational(integer()));
      return v;
    }
    if (std::isalpha(c) || c == '_') {
      std::string name = consume_ident();
      if (name == "z") fail(pos, "'z' is reserved for the transfer-function indeterminate");
      skip_ws();
      if (peek() == '(') {
        int oi = is_oracle(name);
        if (oi < 0)
          raise(Errc::undeclared_symbol, at(pos) + "'" + name + "' is not a declared oracle");
        advance(1);
        LinVal arg = expression();
        expect_char(')');
        if (!arg.scalar.is_zero())
          raise(Errc::nonlinear_expression,
                at(pos) + "constant (affine) term inside the call to '" + name + "'");
        LinAtom atom;
        atom.kind = LinAtom::Kind::site;
        atom.site = static_cast<int>(sites_.size());
        sites_.push_back({oi, std::move(arg.terms), pos});
        LinVal v;
        v.terms.push_back({RatFunc(1L), atom});
        return v;
      }
      if (peek() == '[') {
        advance(1);
        int off = parse_index();
        expect_char(']');
        if (is_param(name) || is_oracle(name) >= 0)
          fail(pos, "'" + name + "' cannot be time-indexed");
        LinAtom atom;
        atom.kind = LinAtom::Kind::var;
        atom.name = name;
        atom.offset = off;
        LinVal v;
        v.terms.push_back({RatFunc(1L), atom});
        return v;
      }
      if (is_param(name)) {
        LinVal v;
        v.scalar = RatFunc::param(name);
        return v;
      }
      raise(Errc::undeclared_symbol,
            at(pos) + "'" + name +
                "' is neither a declared parameter nor an indexed variable "
                "(matrix symbols must be declared as scalar parameters)");
    }
    fail(pos, "unexpected character");
  }

  // ---- semantic analysis --------------------------------------------------
  void analyze() {
    require(!ast_.oracles.empty(), Errc::oracle_use, "at least one oracle must be declared");
    require(!ast_.stmts.empty(), Errc::syntax, "empty algorithm body");
    // Single assignment; variable name clashes handled at parse time.
    std::set<std::string> assigned;
    for (auto& st : ast_.stmts) {
      require(!assigned.count(st.target), Errc::syntax,
              at(st.pos) + "variable '" + st.target + "' assigned more than once");
      assigned.insert(st.target);
    }
    unify_calls();
    // Every referenced variable must be defined by some statement.
    auto check_defined = [&](const LinForm& f, SrcPos pos) {
      for (auto& t : f)
        if (t.atom.kind == LinAtom::Kind::var)
          require(assigned.count(t.atom.name), Errc::undeclared_symbol,
                  at(pos) + "variable '" + t.atom.name + "' is read but never defined");
    };
    for (auto& st : ast_.stmts) check_defined(st.rhs, st.pos);
    for (std::size_t i = 0; i < ast_.oracle_args.size(); ++i)
      check_defined(ast_.oracle_args[i], SrcPos{});
  }

  // Groups the call sites of each oracle into one principal call plus
  // delayed references; rewrites site atoms into result atoms.
  void unify_calls() {
    int p = static_cast<int>(ast_.oracles.size());
    std::vector<std::vector<int>> groups(p);
    for (std::size_t s = 0; s < sites_.size(); ++s) groups[sites_[s].oracle].push_back(s);
    std::vector<int> site_delay(sites_.size(), 0);
    std::vector<int> principal(p, -1);
    ast_.oracle_delay.assign(p, 0);

    for (int o = 0; o < p; ++o) {
      auto& g = groups[o];
      require(!g.empty(), Errc::oracle_use,
              "oracle '" + ast_.oracles[o].name + "' is declared but never called");
      // Distinct argument forms in this group.
      std::vector<int> reps;
      for (int s : g) {
        bool found = false;
        for (int r : reps)
          if (same_form(sites_[s].arg, sites_[r].arg)) {
            found = true;
            break;
          }
        if (!found) reps.push_back(s);
      }
      if (reps.size() == 1) {
        principal[o] = reps[0];
        for (int s : g) site_delay[s] = 0;
        continue;
      }
      // Multiple distinct arguments: they must be pure time shifts of one
      // another (variable references only), e.g. F(x[k]) and F(x[k-1]).
      int lead = reps[0];
      for (int r : reps) {
        require(var_only(sites_[r].arg), Errc::oracle_use,
                "oracle '" + ast_.oracles[o].name +
                    "' is called with unrelated argument expressions");
        if (max_offset(sites_[r].arg) > max_offset(sites_[lead].arg)) lead = r;
      }
      principal[o] = lead;
      for (int s : g) {
        int d = shift_between(sites_[lead].arg, sites_[s].arg);
        require(d >= 0, Errc::oracle_use,
                "oracle '" + ast_.oracles[o].name +
                    "' is called with arguments that are not pure time shifts of one another");
        site_delay[s] = d;
        ast_.oracle_delay[o] = std::max(ast_.oracle_delay[o], d);
      }
    }

    // Rewrite site atoms to (oracle, delay) result atoms.
    auto rewrite = [&](LinForm& f) {
      for (auto& t : f) {
        if (t.atom.kind != LinAtom::Kind::site) continue;
        int s = t.atom.site;
        LinAtom a;
        a.kind = LinAtom::Kind::result;
        a.oracle = sites_[s].oracle;
        a.delay = site_delay[s];
        t.atom = a;
      }
    };
    for (auto& st : ast_.stmts) rewrite(st.rhs);
    ast_.oracle_args.resize(p);
    for (int o = 0; o < p; ++o) {
      LinForm arg = sites_[principal[o]].arg;
      rewrite(arg);
      ast_.oracle_args[o] = std::move(arg);
    }
  }

  bool same_form(const LinForm& a, const LinForm& b) const {
    if (a.size() != b.size()) return false;
    for (auto& ta : a) {
      bool found = false;
      for (auto& tb : b) {
        if (!atoms_equal(ta.atom, tb.atom)) continue;
        if (ta.coef != tb.coef) return false;
        found = true;
        break;
      }
      if (!found) return false;
    }
    return true;
  }
  bool atoms_equal(const LinAtom& x, const LinAtom& y) const {
    if (x.kind == LinAtom::Kind::site && y.kind == LinAtom::Kind::site)
      return sites_[x.site].oracle == sites_[y.site].oracle &&
             same_form(sites_[x.site].arg, sites_[y.site].arg);
    return x == y;
  }

  static bool var_only(const LinForm& f) {
    for (auto& t : f)
      if (t.atom.kind != LinAtom::Kind::var) return false;
    return true;
  }
  static int max_offset(const LinForm& f) {
    int m = INT_MIN;
    for (auto& t : f) m = std::max(m, t.atom.offset);
    return m;
  }
  // d >= 0 with b = a shifted d steps into the past; -1 if not a pure shift.
  static int shift_between(const LinForm& a, const LinForm& b) {
    if (a.size() != b.size() || a.empty()) return -1;
    int d = max_offset(a) - max_offset(b);
    if (d < 0) return -1;
    for (auto& ta : a) {
      bool found = false;
      for (auto& tb : b)
        if (tb.atom.name == ta.atom.name && tb.atom.offset == ta.atom.offset - d &&
            tb.coef == ta.coef) {
          found = true;
          break;
        }
      if (!found) return -1;
    }
    return d;
  }

  // ---- lexing helpers -----------------------------------------------------
  SrcPos here() {
    skip_ws();
    return cur_;
  }
  std::string at(SrcPos p) const {
    return "line " + std::to_string(p.line) + ", col " + std::to_string(p.col) + ": ";
  }
  [[noreturn]] void fail(SrcPos p, const std::string& msg) {
    raise(Errc::syntax, at(p) + msg + "\n" + caret_excerpt(p));
  }
  void require_stream(bool ok, const std::string& msg) {
    if (!ok) fail(here(), msg);
  }
  std::string caret_excerpt(SrcPos p) const {
    int line = 1;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s_.size() && line < p.line; ++i)
      if (s_[i] == '\n') {
        ++line;
        start = i + 1;
      }
    std::size_t end = start;
    while (end < s_.size() && s_[end] != '\n') ++end;
    std::string excerpt = s_.substr(start, end - start);
    return "  " + excerpt + "\n  " + std::string(std::max(0, p.col - 1), ' ') + "^";
  }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (s_[pos_] == '\n') {
        ++cur_.line;
        cur_.col = 1;
      } else {
        ++cur_.col;
      }
      ++pos_;
    }
  }
  void skip_ws() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
      } else if (c == '#' || (c == '/' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '/')) {
        while (pos_ < s_.size() && s_[pos_] != '\n') advance(1);
      } else {
        break;
      }
    }
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool try_char(char c) {
    if (peek() == c) {
      advance(1);
      return true;
    }
    return false;
  }
  void expect_char(char c) {
    if (!try_char(c)) fail(here(), std::string("expected '") + c + "'");
  }
  bool peek_keyword(const std::string& kw) {
    skip_ws();
    if (s_.compare(pos_, kw.size(), kw) != 0) return false;
    std::size_t after = pos_ + kw.size();
    return after >= s_.size() || (!std::isalnum(static_cast<unsigned char>(s_[after])) &&
                                  s_[after] != '_');
  }
  void expect_keyword(const std::string& kw) {
    if (!peek_keyword(kw)) fail(here(), "expected '" + kw + "'");
    advance(kw.size());
  }
  std::string consume_ident() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      advance(1);
    return s_.substr(start, pos_ - start);
  }
  std::string expect_ident(const std::string& what) {
    SrcPos p = here();
    char c = peek();
    if (!(std::isalpha(c) || c == '_')) fail(p, "expected " + what);
    return consume_ident();
  }
  long integer() {
    long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      advance(1);
    }
    return v;
  }
  int is_oracle(const std::string& name) const {
    for (std::size_t i = 0; i < ast_.oracles.size(); ++i)
      if (ast_.oracles[i].name == name) return static_cast<int>(i);
    return -1;
  }
  bool is_param(const std::string& name) const {
    return std::count(ast_.params.begin(), ast_.params.end(), name) > 0;
  }

  std::string s_;
  std::size_t pos_ = 0;
  SrcPos cur_;
  AlgorithmAST ast_;
  std::vector<CallSite> sites_;
};

}  // namespace detail

inline AlgorithmAST parse_algorithm(const std::string& text) {
  return detail::DslParser(text).parse();
}

// ---------------------------------------------------------------------------
// Lowering: AST -> (A, B, C, D). State ordering is the order of first
// assignment, with memory states placed right after their base variable and
// oracle-result memory chains appended at the end.

namespace detail {

class Lowerer {
 public:
  explicit Lowerer(const AlgorithmAST& ast) : ast_(ast) {}

  StateSpace run() {
    classify();
    build_state_list();
    int n = static_cast<int>(states_.size());
    int p = static_cast<int>(ast_.oracles.size());
    StateSpace ss;
    ss.A = RatMatrix(n, n);
    ss.B = RatMatrix(n, p);
    ss.C = RatMatrix(p, n);
    ss.D = RatMatrix(p, p);
    ss.oracles = ast_.oracles;
    ss.params = ast_.params;
    ss.state_names = states_;
    for (int i = 0; i < n; ++i) {
      Resolved row = state_update(i);
      for (int j = 0; j < n; ++j) ss.A(i, j) = row.x[j];
      for (int j = 0; j < p; ++j) ss.B(i, j) = row.u[j];
    }
    for (int i = 0; i < p; ++i) {
      Resolved row = resolve_form(ast_.oracle_args[i]);
      for (int j = 0; j < n; ++j) ss.C(i, j) = row.x[j];
      for (int j = 0; j < p; ++j) ss.D(i, j) = row.u[j];
    }
    ss.validate();
    return ss;
  }

 private:
  struct Resolved {
    std::vector<RatFunc> x, u;
  };

  void classify() {
    for (std::size_t i = 0; i < ast_.stmts.size(); ++i) {
      const Statement& st = ast_.stmts[i];
      stmt_of_[st.target] = static_cast<int>(i);
      (st.target_offset == 1 ? state_vars_ : temp_vars_).insert(st.target);
      order_.push_back(st.target);
    }
    // History depth per variable, across statement bodies and oracle args.
    auto scan = [&](const LinForm& f, SrcPos pos) {
      for (auto& t : f) {
        if (t.atom.kind != LinAtom::Kind::var) continue;
        if (t.atom.offset > 1)
          raise(Errc::syntax, "reference to '" + t.atom.name + "' beyond k+1");
        if (t.atom.offset == 1)
          require(state_vars_.count(t.atom.name), Errc::syntax,
                  "only state variables may be referenced at k+1 ('" + t.atom.name + "')");
        if (t.atom.offset < 0) {
          int d = -t.atom.offset;
          int& cur = history_[t.atom.name];
          cur = std::max(cur, d);
        }
        (void)pos;
      }
    };
    for (auto& st : ast_.stmts) scan(st.rhs, st.pos);
    for (auto& arg : ast_.oracle_args) scan(arg, SrcPos{});
  }

  struct Slot {
    enum class Kind { user_state, var_memory, result_memory } kind;
    std::string base;  // base variable (user_state/var_memory)
    int depth = 0;     // memory depth d
    int oracle = -1;   // result_memory channel
  };

  void build_state_list() {
    auto add_state = [&](const std::string& name, Slot slot) {
      require(!state_index_.count(name), Errc::syntax,
              "variable name '" + name + "' collides with a generated memory state");
      state_index_[name] = static_cast<int>(states_.size());
      states_.push_back(name);
      slots_.push_back(std::move(slot));
    };
    for (auto& v : order_) {
      if (state_vars_.count(v))
        add_state(v, Slot{Slot::Kind::user_state, v, 0, -1});
      int depth = history_.count(v) ? history_[v] : 0;
      for (int d = 1; d <= depth; ++d) {
        memory_index_[{v, d}] = static_cast<int>(states_.size());
        add_state(v + "__" + std::to_string(d), Slot{Slot::Kind::var_memory, v, d, -1});
      }
    }
    for (std::size_t o = 0; o < ast_.oracles.size(); ++o) {
      for (int d = 1; d <= ast_.oracle_delay[o]; ++d) {
        result_index_[{static_cast<int>(o), d}] = static_cast<int>(states_.size());
        add_state("u" + ast_.oracles[o].name + "__" + std::to_string(d),
                  Slot{Slot::Kind::result_memory, "", d, static_cast<int>(o)});
      }
    }
  }

  Resolved zero() const {
    Resolved r;
    r.x.assign(states_.size(), RatFunc());
    r.u.assign(ast_.oracles.size(), RatFunc());
    return r;
  }
  Resolved unit_state(int i) const {
    Resolved r = zero();
    r.x[i] = RatFunc(1L);
    return r;
  }
  Resolved unit_result(int o) const {
    Resolved r = zero();
    r.u[o] = RatFunc(1L);
    return r;
  }

  // Update row for the i-th slot of the synthesized state vector.
  Resolved state_update(int i) {
    const Slot& slot = slots_[i];
    switch (slot.kind) {
      case Slot::Kind::user_state:
        return resolve_rhs(slot.base);
      case Slot::Kind::var_memory:
        if (slot.depth > 1) return unit_state(memory_index_.at({slot.base, slot.depth - 1}));
        // First memory slot holds the base variable's current value.
        if (state_vars_.count(slot.base)) return unit_state(state_index_.at(slot.base));
        return resolve_rhs(slot.base);
      case Slot::Kind::result_memory:
        if (slot.depth > 1) return unit_state(result_index_.at({slot.oracle, slot.depth - 1}));
        return unit_result(slot.oracle);
    }
    raise(Errc::internal, "bad state slot");
  }

  Resolved resolve_rhs(const std::string& name) {
    auto it = memo_.find(name);
    if (it != memo_.end()) return it->second;
    require(!visiting_.count(name), Errc::cyclic_definition,
            "'" + name + "' participates in a circular definition that does not pass "
            "through an oracle call");
    visiting_.insert(name);
    auto sit = stmt_of_.find(name);
    require(sit != stmt_of_.end(), Errc::undeclared_symbol,
            "variable '" + name + "' is read but never defined");
    Resolved r = resolve_form(ast_.stmts[sit->second].rhs);
    visiting_.erase(name);
    memo_[name] = r;
    return r;
  }

  Resolved resolve_form(const LinForm& f) {
    Resolved out = zero();
    for (auto& t : f) {
      Resolved part = resolve_atom(t.atom);
      for (std::size_t j = 0; j < out.x.size(); ++j) out.x[j] = out.x[j] + t.coef * part.x[j];
      for (std::size_t j = 0; j < out.u.size(); ++j) out.u[j] = out.u[j] + t.coef * part.u[j];
    }
    return out;
  }

  Resolved resolve_atom(const LinAtom& a) {
    if (a.kind == LinAtom::Kind::result) {
      if (a.delay == 0) return unit_result(a.oracle);
      return unit_state(result_index_.at({a.oracle, a.delay}));
    }
    if (a.offset == 1) return resolve_rhs(a.name);  // next-state value
    if (a.offset == 0) {
      if (state_vars_.count(a.name)) return unit_state(state_index_.at(a.name));
      return resolve_rhs(a.name);  // temporary
    }
    return unit_state(memory_index_.at({a.name, -a.offset}));
  }

  const AlgorithmAST& ast_;
  std::map<std::string, int> stmt_of_;
  std::set<std::string> state_vars_, temp_vars_;
  std::vector<std::string> order_;
  std::map<std::string, int> history_;
  std::vector<std::string> states_;
  std::vector<Slot> slots_;
  std::map<std::string, int> state_index_;
  std::map<std::pair<std::string, int>, int> memory_index_;
  std::map<std::pair<int, int>, int> result_index_;
  std::map<std::string, Resolved> memo_;
  std::set<std::string> visiting_;
};

}  // namespace detail

inline StateSpace lower(const AlgorithmAST& ast) { return detail::Lowerer(ast).run(); }

inline StateSpace lower_text(const std::string& text) { return lower(parse_algorithm(text)); }

// ---------------------------------------------------------------------------
// Emission: StateSpace -> update-equation source. For explicit realizations
// the oracle calls appear in evaluation order; otherwise the text carries the
// `implicit` marker and query points reference oracle outputs freely.

namespace detail {

inline std::string coef_factor(const RatFunc& c, const std::string& atom) {
  if (c.is_one()) return atom;
  if ((-c).is_one()) return "-" + atom;
  std::string cs = c.str();
  // Multi-term coefficients keep their own parentheses; single-term ones pull
  // the sign out so sums render as "a - (1/5)*b" rather than "a + (-1/5)*b".
  if (cs.find_first_of("+- ", 1) != std::string::npos) return "(" + cs + ")*" + atom;
  std::string sign;
  if (cs[0] == '-') {
    sign = "-";
    cs = cs.substr(1);
  }
  if (cs.find('/') != std::string::npos && cs[0] != '(') cs = "(" + cs + ")";
  return sign + cs + "*" + atom;
}

inline void append_term(std::string& out, const std::string& piece) {
  if (out.empty()) {
    out = piece;
  } else if (!piece.empty() && piece[0] == '-') {
    out += " - " + piece.substr(1);
  } else {
    out += " + " + piece;
  }
}

}  // namespace detail

inline std::string emit_source(const StateSpace& ss, const std::string& name = "emitted") {
  ss.validate();
  int n = ss.n(), p = ss.p();
  auto order = is_explicit(ss);

  // Query/result temporary names that do not collide with state names.
  std::set<std::string> taken;
  for (int i = 0; i < n; ++i) taken.insert(ss.state_name(i));
  auto fresh = [&taken](std::string base) {
    while (taken.count(base)) base = base + "_";
    taken.insert(base);
    return base;
  };
  std::vector<std::string> yname(p), uname(p);
  for (int i = 0; i < p; ++i) {
    yname[i] = fresh("y" + std::to_string(i + 1));
    uname[i] = fresh("u" + std::to_string(i + 1));
  }

  std::string out = "algorithm " + name + "(oracles ";
  for (int i = 0; i < p; ++i) {
    if (i) out += ", ";
    out += ss.oracles[i].name;
    switch (ss.oracles[i].kind) {
      case OracleKind::generic: break;
      case OracleKind::subdiff: out += ": subdiff"; break;
      case OracleKind::subdiff_conj: out += ": subdiff_conj"; break;
      case OracleKind::prox: out += ": prox[" + ss.oracles[i].step + "]"; break;
      case OracleKind::prox_conj: out += ": prox_conj[" + ss.oracles[i].step + "]"; break;
    }
  }
  out += "; params";
  for (std::size_t i = 0; i < ss.params.size(); ++i)
    out += (i ? ", " : " ") + ss.params[i];
  out += ")";
  if (!order) out += " implicit";
  out += " {\n";

  auto row_text = [&](const RatMatrix& cm, const RatMatrix& dm, int i) {
    std::string rhs;
    for (int j = 0; j < n; ++j)
      if (!cm(i, j).is_zero())
        detail::append_term(rhs, detail::coef_factor(cm(i, j), ss.state_name(j) + "[k]"));
    for (int j = 0; j < p; ++j)
      if (!dm(i, j).is_zero())
        detail::append_term(rhs, detail::coef_factor(dm(i, j), uname[j] + "[k]"));
    return rhs.empty() ? std::string("0") : rhs;
  };

  std::vector<int> emit_order(p);
  if (order) {
    emit_order = *order;
  } else {
    for (int i = 0; i < p; ++i) emit_order[i] = i;
  }
  for (int idx = 0; idx < p; ++idx) {
    int i = emit_order[idx];
    out += "  " + yname[i] + "[k] = " + row_text(ss.C, ss.D, i) + ";\n";
    if (order)
      out += "  " + uname[i] + "[k] = " + ss.oracles[i].name + "(" + yname[i] + "[k]);\n";
  }
  if (!order) {
    for (int i = 0; i < p; ++i)
      out += "  " + uname[i] + "[k] = " + ss.oracles[i].name + "(" + yname[i] + "[k]);\n";
  }
  for (int i = 0; i < n; ++i)
    out += "  " + ss.state_name(i) + "[k+1] = " + row_text(ss.A, ss.B, i) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace algequiv
