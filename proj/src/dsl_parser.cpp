#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "agc/dsl.hpp"
#include "agc/typecheck.hpp"

namespace agc {

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { Ident, Number, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

const std::set<std::string>& keywords() {
  static const std::set<std::string> k = {
      "component", "in",     "out",      "assume",   "guarantee", "forall", "exists",
      "and",       "or",     "not",      "subset",   "diff",      "adjacent", "obstacle",
      "card_leq",  "true",   "false",    "nat",      "coord",     "bool",   "set",
      "link",      "equal",  "focus"};
  return k;
}

class Lexer {
 public:
  Lexer(std::string_view text, const std::string& file) : text_(text), file_(file) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, "end of input", here_span(pos_, line_, col_)});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  void newline() {
    ++line_;
    col_ = 1;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n' && text_[pos_] != '\r') bump();
      } else if (c == '\n') {
        ++pos_;
        newline();
      } else if (c == '\r') {
        ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '\n') ++pos_;
        newline();
      } else if (c == ' ' || c == '\t' || c == '\f' || c == '\v') {
        bump();
      } else {
        return;
      }
    }
  }

  void bump() {
    ++pos_;
    ++col_;
  }

  SourceSpan here_span(std::size_t start, std::size_t line, std::size_t col) const {
    SourceSpan s;
    s.file = file_;
    s.start_line = line;
    s.start_col = col;
    s.end_line = line_;
    s.end_col = col_;
    s.start_offset = start;
    s.end_offset = pos_;
    return s;
  }

  Token next() {
    const std::size_t start = pos_;
    const std::size_t line = line_, col = col_;
    const char c = text_[pos_];
    auto is_alpha = [](char ch) {
      return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || ch == '_';
    };
    auto is_digit = [](char ch) { return ch >= '0' && ch <= '9'; };
    if (is_alpha(c)) {
      while (pos_ < text_.size() && (is_alpha(text_[pos_]) || is_digit(text_[pos_]))) bump();
      return {Tok::Ident, std::string(text_.substr(start, pos_ - start)), here_span(start, line, col)};
    }
    if (is_digit(c)) {
      while (pos_ < text_.size() && is_digit(text_[pos_])) bump();
      return {Tok::Number, std::string(text_.substr(start, pos_ - start)), here_span(start, line, col)};
    }
    static const char* two[] = {"!=", "<=", "=>", "->"};
    for (const char* t : two) {
      if (text_.substr(pos_, 2) == t) {
        bump();
        bump();
        return {Tok::Punct, t, here_span(start, line, col)};
      }
    }
    if (std::string_view("(){},;.:<>=").find(c) != std::string_view::npos) {
      bump();
      return {Tok::Punct, std::string(1, c), here_span(start, line, col)};
    }
    bump();
    auto byte = static_cast<unsigned char>(c);
    std::ostringstream msg;
    if (byte >= 0x80) {
      msg << "non-ASCII byte 0x" << std::hex << static_cast<int>(byte) << " (input must be ASCII)";
    } else {
      msg << "unexpected character '" << (byte >= 0x20 && byte < 0x7f ? std::string(1, c) : "?")
          << "'";
    }
    throw ParseError(here_span(start, line, col), msg.str());
  }

  std::string_view text_;
  const std::string& file_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

// ---------------------------------------------------------------------------
// Parser

constexpr int kMaxDepth = 200;

class Parser {
 public:
  Parser(std::string_view text, const std::string& file)
      : file_(file), tokens_(Lexer(text, file).run()) {}

  std::vector<Contract> contract_file() {
    std::vector<Contract> out;
    std::set<std::string> names;
    while (!at_end()) {
      const Token& start = peek();
      Contract c = component();
      if (!names.insert(c.component).second) {
        throw ParseError(start.span, "component `" + c.component + "` declared twice");
      }
      out.push_back(std::move(c));
    }
    return out;
  }

  SystemGraph system_file(const std::vector<Contract>& contracts) {
    SystemGraph g;
    g.components = contracts;
    while (!at_end()) {
      const SourceSpan start = peek().span;
      if (accept_kw("focus")) {
        std::string name = identifier("component name");
        expect(";");
        if (!g.find(name)) {
          throw SpannedGraphError(
              GraphError(GraphErrorKind::UnknownComponent, "unknown component `" + name + "`"),
              start);
        }
        g.focus = name;
        continue;
      }
      expect_kw("link");
      std::string from = identifier("component name");
      expect(".");
      std::string from_sel = selector();
      expect("->");
      std::string to = identifier("component name");
      expect(".");
      std::string to_sel = selector();
      LinkKind kind;
      if (accept_kw("equal")) {
        kind = LinkKind::Equal;
      } else if (accept_kw("subset")) {
        kind = LinkKind::SubsetOf;
      } else {
        fail("expected link kind", {"equal", "subset"});
      }
      expect(";");
      try {
        Link l = resolve_link(g.components, from, from_sel, to, to_sel, kind);
        l.id = "L" + std::to_string(g.links.size() + 1);
        g.links.push_back(std::move(l));
      } catch (const GraphError& e) {
        throw SpannedGraphError(e, join(start, previous().span));
      }
    }
    try {
      validate_graph(g);
    } catch (const GraphError& e) {
      throw SpannedGraphError(e, tokens_.front().span);
    }
    return g;
  }

  Formula standalone_formula(const TypeEnv& env) {
    const SourceSpan start = peek().span;
    Formula f = formula();
    if (!at_end()) fail("unexpected trailing input", {"end of input"});
    typecheck_with_span(f, env, join(start, previous().span));
    return f;
  }

 private:
  // -- token helpers --------------------------------------------------------

  const Token& peek() const { return tokens_[pos_]; }
  const Token& previous() const { return tokens_[pos_ == 0 ? 0 : pos_ - 1]; }
  bool at_end() const { return peek().kind == Tok::End; }

  const Token& advance() {
    const Token& t = tokens_[pos_];
    if (t.kind != Tok::End) ++pos_;
    return t;
  }

  bool at_punct(const char* p) const { return peek().kind == Tok::Punct && peek().text == p; }
  bool at_kw(const char* k) const { return peek().kind == Tok::Ident && peek().text == k; }

  bool accept(const char* p) {
    if (!at_punct(p)) return false;
    advance();
    return true;
  }

  bool accept_kw(const char* k) {
    if (!at_kw(k)) return false;
    advance();
    return true;
  }

  [[noreturn]] void fail(const std::string& message, std::vector<std::string> expected) const {
    std::string got = peek().kind == Tok::End ? "end of input" : "`" + peek().text + "`";
    throw ParseError(peek().span, message + ", found " + got, std::move(expected));
  }

  void expect(const char* p) {
    if (!accept(p)) fail(std::string("expected `") + p + "`", {std::string("`") + p + "`"});
  }

  void expect_kw(const char* k) {
    if (!accept_kw(k)) fail(std::string("expected `") + k + "`", {std::string("`") + k + "`"});
  }

  std::string identifier(const char* what) {
    if (peek().kind != Tok::Ident || keywords().count(peek().text)) {
      fail(std::string("expected ") + what, {what});
    }
    return advance().text;
  }

  std::string selector() {
    if (at_kw("in") || at_kw("out")) return advance().text;
    return identifier("port or vector name");
  }

  static SourceSpan join(const SourceSpan& a, const SourceSpan& b) {
    SourceSpan s = a;
    s.end_line = b.end_line;
    s.end_col = b.end_col;
    s.end_offset = b.end_offset;
    return s;
  }

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : p(p) {
      if (++p.depth_ > kMaxDepth) {
        --p.depth_;
        p.fail("expression nested too deeply", {});
      }
    }
    ~DepthGuard() { --p.depth_; }
    Parser& p;
  };

  template <typename Node>
  Node mark(Node n, const SourceSpan& start) {
    spans_[n.id()] = join(start, previous().span);
    return n;
  }

  // -- components -----------------------------------------------------------

  Contract component() {
    const SourceSpan start = peek().span;
    expect_kw("component");
    Contract c;
    c.component = identifier("component name");
    expect("{");
    bool seen_in = false, seen_out = false, seen_assume = false, seen_guarantee = false;
    SourceSpan assume_span = start, guarantee_span = start;
    auto once = [&](bool& seen, const char* what) {
      if (seen) fail(std::string("duplicate `") + what + "` clause", {});
      seen = true;
    };
    while (!accept("}")) {
      if (at_kw("in") || at_kw("out")) {
        const bool input = peek().text == "in";
        once(input ? seen_in : seen_out, input ? "in" : "out");
        advance();
        if (peek().kind == Tok::Ident) {
          (input ? c.input_vector : c.output_vector) = identifier("vector name");
        }
        expect("(");
        auto& ports = input ? c.inputs : c.outputs;
        if (!at_punct(")")) {
          do {
            Port p{identifier("port name"), SemType::nat(),
                   input ? Direction::Input : Direction::Output};
            expect(":");
            p.type = type();
            ports.push_back(std::move(p));
          } while (accept(","));
        }
        expect(")");
        expect(";");
      } else if (at_kw("assume")) {
        once(seen_assume, "assume");
        assume_span = advance().span;
        c.assumption = formula();
        assume_span = join(assume_span, previous().span);
        expect(";");
      } else if (at_kw("guarantee")) {
        once(seen_guarantee, "guarantee");
        guarantee_span = advance().span;
        c.guarantee = formula();
        guarantee_span = join(guarantee_span, previous().span);
        expect(";");
      } else {
        fail("expected a component clause", {"in", "out", "assume", "guarantee", "}"});
      }
    }
    const SourceSpan whole = join(start, previous().span);
    typecheck_with_span(c.assumption, c.input_env(), assume_span);
    typecheck_with_span(c.guarantee, c.full_env(), guarantee_span);
    try {
      validate_contract(c);
    } catch (const GraphError& e) {
      throw SpannedGraphError(e, whole);
    } catch (const TypeError& e) {
      throw SpannedTypeError(e, whole);
    }
    return c;
  }

  void typecheck_with_span(const Formula& f, const TypeEnv& env, const SourceSpan& clause) {
    try {
      typecheck_formula(f, env);
    } catch (const TypeError& e) {
      auto it = spans_.find(e.node());
      throw SpannedTypeError(e, it == spans_.end() ? clause : it->second);
    }
  }

  SemType type() {
    DepthGuard guard(*this);
    if (accept_kw("nat")) return SemType::nat();
    if (accept_kw("coord")) return SemType::coord();
    if (accept_kw("bool")) return SemType::boolean();
    if (at_kw("set")) {
      const SourceSpan start = advance().span;
      expect("<");
      SemType element = type();
      expect(">");
      try {
        return SemType::set_of(element);
      } catch (const TypeError& e) {
        throw ParseError(join(start, previous().span), e.what());
      }
    }
    fail("expected a type", {"nat", "coord", "bool", "set<...>"});
  }

  // -- formulas -------------------------------------------------------------

  Formula formula() {
    DepthGuard guard(*this);
    const SourceSpan start = peek().span;
    Formula lhs = disjunction();
    if (accept("=>")) return mark(Formula::implies(lhs, formula()), start);
    return lhs;
  }

  Formula disjunction() {
    const SourceSpan start = peek().span;
    std::vector<Formula> ops{conjunction()};
    while (accept_kw("or")) ops.push_back(conjunction());
    return ops.size() == 1 ? ops.front() : mark(Formula::disj(std::move(ops)), start);
  }

  Formula conjunction() {
    const SourceSpan start = peek().span;
    std::vector<Formula> ops{unary()};
    while (accept_kw("and")) ops.push_back(unary());
    return ops.size() == 1 ? ops.front() : mark(Formula::conj(std::move(ops)), start);
  }

  Formula unary() {
    DepthGuard guard(*this);
    const SourceSpan start = peek().span;
    if (accept_kw("not")) return mark(Formula::negate(unary()), start);
    if (at_kw("forall") || at_kw("exists")) return quantifier();
    return primary();
  }

  Formula quantifier() {
    const SourceSpan start = peek().span;
    const bool universal = advance().text == "forall";
    std::vector<std::pair<Binder, Term>> binders;
    do {
      Binder b;
      if (accept("(")) {
        b.first = identifier("variable name");
        expect(",");
        b.second = identifier("variable name");
        expect(")");
      } else {
        b.first = identifier("variable name");
      }
      expect_kw("in");
      if (at_punct(".")) fail("expected a domain expression", {"term"});
      binders.emplace_back(std::move(b), term());
    } while (accept(","));
    expect(".");
    Formula body = formula();
    for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
      body = universal ? Formula::forall(it->first, it->second, body)
                       : Formula::exists(it->first, it->second, body);
      mark(body, start);
    }
    return body;
  }

  Formula primary() {
    const std::size_t saved = pos_;
    try {
      return atom();
    } catch (const ParseError& atom_error) {
      const std::size_t atom_reach = pos_;
      pos_ = saved;
      if (accept_kw("true")) return Formula::truth();
      if (accept_kw("false")) return Formula::falsity();
      if (!at_punct("(")) throw;
      try {
        advance();
        Formula inner = formula();
        expect(")");
        return inner;
      } catch (const ParseError& paren_error) {
        if (paren_error.span().start_offset >= atom_error.span().start_offset) throw;
        pos_ = atom_reach;
        throw atom_error;
      }
    }
  }

  Formula atom() {
    const SourceSpan start = peek().span;
    if (at_kw("adjacent") || at_kw("card_leq")) {
      auto kind = peek().text == "adjacent" ? Formula::Kind::Adjacent : Formula::Kind::CardLeq;
      advance();
      expect("(");
      Term a = term();
      expect(",");
      Term b = term();
      expect(")");
      return mark(Formula::atom(kind, a, b), start);
    }
    if (accept_kw("obstacle")) {
      expect("(");
      const SourceSpan arg_start = peek().span;
      Term a = term();
      if (accept(",")) {
        Term b = term();
        a = mark(Term::pair(a, b), arg_start);
      }
      expect(")");
      return mark(Formula::obstacle(a), start);
    }
    Term lhs = term();
    Formula::Kind kind;
    if (accept_kw("in")) kind = Formula::Kind::In;
    else if (accept_kw("subset")) kind = Formula::Kind::SubsetEq;
    else if (accept("=")) kind = Formula::Kind::Eq;
    else if (accept("!=")) kind = Formula::Kind::Neq;
    else if (accept("<=")) kind = Formula::Kind::Leq;
    else if (accept("<")) kind = Formula::Kind::Lt;
    else fail("expected a relation", {"in", "subset", "=", "!=", "<", "<="});
    Term rhs = term();
    return mark(Formula::atom(kind, lhs, rhs), start);
  }

  // -- terms ----------------------------------------------------------------

  Term term() {
    DepthGuard guard(*this);
    const SourceSpan start = peek().span;
    if (peek().kind == Tok::Number) {
      const std::string& digits = advance().text;
      Nat n = 0;
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
      if (ec != std::errc() || ptr != digits.data() + digits.size()) {
        throw ParseError(start, "number `" + digits + "` does not fit in 64 bits");
      }
      return mark(Term::nat(n), start);
    }
    if (accept_kw("true")) return mark(Term::lit(Value::boolean(true), SemType::boolean()), start);
    if (accept_kw("false")) return mark(Term::lit(Value::boolean(false), SemType::boolean()), start);
    if (accept_kw("diff")) {
      expect("(");
      Term a = term();
      expect(",");
      Term b = term();
      expect(")");
      return mark(Term::diff(a, b), start);
    }
    if (accept("(")) {
      Term x = term();
      expect(",");
      Term y = term();
      expect(")");
      return mark(Term::pair(x, y), start);
    }
    if (accept("{")) {
      if (at_punct("}")) fail("empty set literals are not supported", {"term"});
      Value::Elements elements;
      std::optional<SemType> element_type;
      do {
        const SourceSpan elem_start = peek().span;
        Term e = term();
        if (e.kind() != Term::Kind::Lit) {
          throw ParseError(join(elem_start, previous().span),
                           "set literal elements must be constants");
        }
        if (element_type && *element_type != e.lit_type()) {
          throw ParseError(join(elem_start, previous().span),
                           "set literal mixes " + element_type->str() + " and " +
                               e.lit_type().str());
        }
        element_type = e.lit_type();
        elements.push_back(e.value());
      } while (accept(","));
      expect("}");
      try {
        return mark(Term::lit(Value::set(std::move(elements)), SemType::set_of(*element_type)),
                    start);
      } catch (const TypeError& e) {
        throw ParseError(join(start, previous().span), e.what());
      }
    }
    return mark(Term::var(identifier("term")), start);
  }

  const std::string& file_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int depth_ = 0;
  std::unordered_map<const void*, SourceSpan> spans_;
};

}  // namespace

std::vector<Contract> parse_contract_file(std::string_view text, const std::string& file) {
  return Parser(text, file).contract_file();
}

SystemGraph parse_system_file(std::string_view text, const std::vector<Contract>& contracts,
                              const std::string& file) {
  return Parser(text, file).system_file(contracts);
}

Formula parse_formula(std::string_view text, const TypeEnv& env, const std::string& file) {
  return Parser(text, file).standalone_formula(env);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<SourceSpan> span_of(const std::exception& e) {
  if (auto* p = dynamic_cast<const ParseError*>(&e)) return p->span();
  if (auto* t = dynamic_cast<const SpannedTypeError*>(&e)) return t->span();
  if (auto* g = dynamic_cast<const SpannedGraphError*>(&e)) return g->span();
  return std::nullopt;
}

std::string format_diagnostic(const std::exception& e) {
  std::ostringstream out;
  if (auto span = span_of(e)) {
    out << span->file << ":" << span->start_line << ":" << span->start_col << ": ";
  }
  out << "error: " << e.what();
  if (auto* p = dynamic_cast<const ParseError*>(&e); p && !p->expected().empty()) {
    out << " (expected one of:";
    for (const auto& x : p->expected()) out << " " << x;
    out << ")";
  }
  return out.str();
}

}  // namespace agc
