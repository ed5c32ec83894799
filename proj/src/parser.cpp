#include "pblimp/parser.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace pblimp {

namespace {

enum class Tok {
  Ident,
  Int,
  Decimal,
  Assign,    // =
  Lt,
  Le,
  Gt,
  Ge,
  Ne,
  AndAnd,
  OrOr,
  Bang,
  Plus,
  Minus,
  Star,
  Slash,
  Pipe,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Semi,
  Comma,
  DotDot,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

const char* tok_name(Tok k) {
  switch (k) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::Decimal: return "decimal";
    case Tok::Assign: return "'='";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'<='";
    case Tok::Gt: return "'>'";
    case Tok::Ge: return "'>='";
    case Tok::Ne: return "'!='";
    case Tok::AndAnd: return "'&&'";
    case Tok::OrOr: return "'||'";
    case Tok::Bang: return "'!'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Pipe: return "'|'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Semi: return "';'";
    case Tok::Comma: return "','";
    case Tok::DotDot: return "'..'";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto push = [&](Tok k, std::string t, int l, int c) { out.push_back({k, std::move(t), l, c}); };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++col;
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    int tl = line, tc = col;
    auto two = [&](char a, char b) {
      return c == a && i + 1 < text.size() && text[i + 1] == b;
    };
    if (two('<', '=')) { push(Tok::Le, "<=", tl, tc); i += 2; col += 2; continue; }
    if (two('>', '=')) { push(Tok::Ge, ">=", tl, tc); i += 2; col += 2; continue; }
    if (two('!', '=')) { push(Tok::Ne, "!=", tl, tc); i += 2; col += 2; continue; }
    if (two('&', '&')) { push(Tok::AndAnd, "&&", tl, tc); i += 2; col += 2; continue; }
    if (two('|', '|')) { push(Tok::OrOr, "||", tl, tc); i += 2; col += 2; continue; }
    if (two('.', '.')) { push(Tok::DotDot, "..", tl, tc); i += 2; col += 2; continue; }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        num += text[i++];
        ++col;
      }
      // a '.' starts a decimal only when not part of '..'
      if (i < text.size() && text[i] == '.' && !(i + 1 < text.size() && text[i + 1] == '.')) {
        num += text[i++];
        ++col;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          num += text[i++];
          ++col;
        }
        push(Tok::Decimal, num, tl, tc);
      } else {
        push(Tok::Int, num, tl, tc);
      }
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        id += text[i++];
        ++col;
      }
      push(Tok::Ident, id, tl, tc);
      continue;
    }
    switch (c) {
      case '=': push(Tok::Assign, "=", tl, tc); break;
      case '<': push(Tok::Lt, "<", tl, tc); break;
      case '>': push(Tok::Gt, ">", tl, tc); break;
      case '!': push(Tok::Bang, "!", tl, tc); break;
      case '+': push(Tok::Plus, "+", tl, tc); break;
      case '-': push(Tok::Minus, "-", tl, tc); break;
      case '*': push(Tok::Star, "*", tl, tc); break;
      case '/': push(Tok::Slash, "/", tl, tc); break;
      case '|': push(Tok::Pipe, "|", tl, tc); break;
      case '(': push(Tok::LParen, "(", tl, tc); break;
      case ')': push(Tok::RParen, ")", tl, tc); break;
      case '{': push(Tok::LBrace, "{", tl, tc); break;
      case '}': push(Tok::RBrace, "}", tl, tc); break;
      case ';': push(Tok::Semi, ";", tl, tc); break;
      case ',': push(Tok::Comma, ",", tl, tc); break;
      default:
        throw ParseError(tl, tc, std::string("unexpected character '") + c + "'", {});
    }
    ++i;
    ++col;
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  Program parse_program() {
    Program prog;
    while (peek().kind == Tok::Ident &&
           (peek().text == "param" || peek().text == "uvar" || peek().text == "ovar")) {
      parse_decl(prog);
    }
    std::vector<Stmt> stmts;
    while (peek().kind != Tok::End) stmts.push_back(parse_stmt());
    prog.body = seq_of(stmts);
    return prog;
  }

  Expr parse_expr_entry() {
    Expr e = parse_expr();
    expect(Tok::End);
    return e;
  }

  Prop parse_prop_entry() {
    Prop p = parse_prop();
    expect(Tok::End);
    return p;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t idx = pos_ + ahead;
    return idx < toks_.size() ? toks_[idx] : toks_.back();
  }

  Token advance() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    const Token& t = peek();
    std::string msg = "unexpected ";
    msg += t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    if (!expected.empty()) {
      msg += ", expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i) msg += (i + 1 == expected.size()) ? " or " : ", ";
        msg += expected[i];
      }
    }
    throw ParseError(t.line, t.col, msg, std::move(expected));
  }

  Token expect(Tok k) {
    if (peek().kind != k) fail({tok_name(k)});
    return advance();
  }

  bool accept(Tok k) {
    if (peek().kind == k) {
      advance();
      return true;
    }
    return false;
  }

  bool at_keyword(const char* kw) const {
    return peek().kind == Tok::Ident && peek().text == kw;
  }

  void expect_keyword(const char* kw) {
    if (!at_keyword(kw)) fail({std::string("'") + kw + "'"});
    advance();
  }

  void parse_decl(Program& prog) {
    Token head = advance();
    if (head.text == "param") {
      Token name = expect(Tok::Ident);
      expect(Tok::Semi);
      prog.params.push_back(name.text);
      return;
    }
    VarDecl d;
    d.kind = head.text == "uvar" ? VarKind::Unobservable : VarKind::Observable;
    d.name = expect(Tok::Ident).text;
    if (at_keyword("in")) {
      advance();
      d.domain = parse_domain();
    }
    expect(Tok::Semi);
    prog.decls.push_back(std::move(d));
  }

  std::vector<Nat> parse_domain() {
    expect(Tok::LBrace);
    std::vector<Nat> values;
    while (true) {
      Nat lo = parse_nat();
      if (accept(Tok::DotDot)) {
        Nat hi = parse_nat();
        for (Nat v = lo; v <= hi; ++v) values.push_back(v);
      } else {
        values.push_back(lo);
      }
      if (!accept(Tok::Comma)) break;
    }
    expect(Tok::RBrace);
    return values;
  }

  Nat parse_nat() {
    Token t = expect(Tok::Int);
    return static_cast<Nat>(std::stoull(t.text));
  }

  Rat parse_rational() {
    if (peek().kind == Tok::Decimal) {
      return *rat_from_string(advance().text);
    }
    Token t = expect(Tok::Int);
    if (peek().kind == Tok::Slash && peek(1).kind == Tok::Int) {
      advance();
      Token den = advance();
      return *rat_from_string(t.text + "/" + den.text);
    }
    return *rat_from_string(t.text);
  }

  std::optional<CmpOp> peek_cmpop() const {
    switch (peek().kind) {
      case Tok::Lt: return CmpOp::Lt;
      case Tok::Le: return CmpOp::Le;
      case Tok::Gt: return CmpOp::Gt;
      case Tok::Ge: return CmpOp::Ge;
      case Tok::Ne: return CmpOp::Ne;
      case Tok::Assign: return CmpOp::Eq;
      default: return std::nullopt;
    }
  }

  Stmt parse_stmt() {
    int line = peek().line;
    if (at_keyword("skip")) {
      advance();
      expect(Tok::Semi);
      return Stmt::skip();
    }
    if (at_keyword("diverge")) {
      fail({"a statement ('diverge' is reserved for tool-generated unrollings)"});
    }
    if (at_keyword("observe")) {
      advance();
      std::string src = expect(Tok::Ident).text;
      expect(Tok::Semi);
      return Stmt::observe(std::nullopt, src, line);
    }
    if (at_keyword("if")) {
      advance();
      expect(Tok::LParen);
      Prop guard = parse_prop();
      expect(Tok::RParen);
      Stmt then_branch = parse_block();
      Stmt else_branch = Stmt::skip();
      if (at_keyword("else")) {
        advance();
        else_branch = parse_block();
      }
      return Stmt::if_(guard, then_branch, else_branch, line);
    }
    if (at_keyword("while")) {
      advance();
      expect(Tok::LParen);
      Prop guard = parse_prop();
      expect(Tok::RParen);
      Stmt body = parse_block();
      return Stmt::while_(guard, body, line);
    }
    if (at_keyword("infer")) {
      advance();
      expect(Tok::LParen);
      expect_keyword("p");
      expect(Tok::LParen);
      Prop cond = parse_prop();
      expect(Tok::RParen);
      auto op = peek_cmpop();
      if (!op) fail({"comparison operator"});
      advance();
      Threshold thr;
      thr.op = *op;
      if (peek().kind == Tok::Ident) {
        thr.bound = advance().text;
      } else {
        thr.bound = parse_rational();
      }
      expect(Tok::RParen);
      Stmt then_branch = parse_block();
      expect_keyword("else");
      Stmt else_branch = parse_block();
      return Stmt::infer(cond, thr, then_branch, else_branch, line);
    }
    if (peek().kind == Tok::Ident) {
      std::string target = advance().text;
      expect(Tok::Assign);
      if (at_keyword("observe")) {
        advance();
        std::string src = expect(Tok::Ident).text;
        expect(Tok::Semi);
        return Stmt::observe(target, src, line);
      }
      if (at_keyword("sample") && peek(1).kind == Tok::LParen) {
        advance();
        expect(Tok::LParen);
        SampleSpec spec = parse_sample_spec();
        expect(Tok::RParen);
        expect(Tok::Semi);
        return Stmt::sample(target, spec, line);
      }
      Expr value = parse_expr();
      expect(Tok::Semi);
      return Stmt::assign(target, value, line);
    }
    fail({"a statement"});
  }

  Stmt parse_block() {
    expect(Tok::LBrace);
    std::vector<Stmt> stmts;
    while (peek().kind != Tok::RBrace) stmts.push_back(parse_stmt());
    expect(Tok::RBrace);
    return seq_of(stmts);
  }

  SampleSpec parse_sample_spec() {
    SampleSpec spec;
    while (true) {
      SampleBranch br;
      br.weight = parse_rational();
      expect(Tok::Pipe);
      br.value = parse_expr();
      expect(Tok::Gt);
      spec.branches.push_back(std::move(br));
      if (!accept(Tok::Plus)) break;
    }
    return spec;
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      BinOp op = advance().kind == Tok::Plus ? BinOp::Add : BinOp::Sub;
      lhs = Expr::bin(op, lhs, parse_term());
    }
    return lhs;
  }

  Expr parse_term() {
    Expr lhs = parse_factor();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      BinOp op = advance().kind == Tok::Star ? BinOp::Mul : BinOp::Div;
      lhs = Expr::bin(op, lhs, parse_factor());
    }
    return lhs;
  }

  Expr parse_factor() {
    if (peek().kind == Tok::Int) return Expr::constant(parse_nat());
    if (at_keyword("true")) {
      advance();
      return Expr::constant(1);
    }
    if (at_keyword("false")) {
      advance();
      return Expr::constant(0);
    }
    if (peek().kind == Tok::Ident) return Expr::var(advance().text);
    if (accept(Tok::LParen)) {
      Expr e = parse_expr();
      expect(Tok::RParen);
      return e;
    }
    fail({"integer", "identifier", "'('"});
  }

  Prop parse_prop() {
    Prop lhs = parse_and_prop();
    while (accept(Tok::OrOr)) lhs = Prop::disj(lhs, parse_and_prop());
    return lhs;
  }

  Prop parse_and_prop() {
    Prop lhs = parse_not_prop();
    while (accept(Tok::AndAnd)) lhs = Prop::conj(lhs, parse_not_prop());
    return lhs;
  }

  Prop parse_not_prop() {
    if (accept(Tok::Bang)) return Prop::negate(parse_not_prop());
    return parse_atom_prop();
  }

  Prop parse_atom_prop() {
    if (at_keyword("true") &&
        !(peek(1).kind == Tok::Plus || peek(1).kind == Tok::Minus || peek(1).kind == Tok::Star ||
          peek(1).kind == Tok::Slash || peek_cmpop_at(1))) {
      advance();
      return Prop::boolean(true);
    }
    if (at_keyword("false") &&
        !(peek(1).kind == Tok::Plus || peek(1).kind == Tok::Minus || peek(1).kind == Tok::Star ||
          peek(1).kind == Tok::Slash || peek_cmpop_at(1))) {
      advance();
      return Prop::boolean(false);
    }
    // Try: expr [cmpop expr]; fall back to a parenthesized proposition.
    std::size_t save = pos_;
    try {
      Expr lhs = parse_expr();
      if (auto op = peek_cmpop()) {
        advance();
        Expr rhs = parse_expr();
        return Prop::compare(*op, lhs, rhs);
      }
      // bare expression as condition: truthiness
      return Prop::compare(CmpOp::Ne, lhs, Expr::constant(0));
    } catch (const ParseError&) {
      pos_ = save;
    }
    if (accept(Tok::LParen)) {
      Prop p = parse_prop();
      expect(Tok::RParen);
      return p;
    }
    fail({"a proposition"});
  }

  bool peek_cmpop_at(std::size_t ahead) const {
    switch (peek(ahead).kind) {
      case Tok::Lt:
      case Tok::Le:
      case Tok::Gt:
      case Tok::Ge:
      case Tok::Ne:
      case Tok::Assign:
        return true;
      default:
        return false;
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Program parse_program(const std::string& text) { return Parser(text).parse_program(); }

Expr parse_expr_text(const std::string& text) { return Parser(text).parse_expr_entry(); }

Prop parse_prop_text(const std::string& text) { return Parser(text).parse_prop_entry(); }

}  // namespace pblimp
