#include "pblimp/ast.hpp"

#include <algorithm>
#include <stdexcept>

namespace pblimp {

const char* binop_text(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
  }
  return "?";
}

const char* cmpop_text(CmpOp op) {
  switch (op) {
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "!=";
    case CmpOp::Ge: return ">=";
    case CmpOp::Gt: return ">";
  }
  return "?";
}

CmpOp cmpop_negate(CmpOp op) {
  switch (op) {
    case CmpOp::Lt: return CmpOp::Ge;
    case CmpOp::Le: return CmpOp::Gt;
    case CmpOp::Eq: return CmpOp::Ne;
    case CmpOp::Ne: return CmpOp::Eq;
    case CmpOp::Ge: return CmpOp::Lt;
    case CmpOp::Gt: return CmpOp::Le;
  }
  return CmpOp::Eq;
}

bool cmp_holds(CmpOp op, const Rat& lhs, const Rat& rhs) {
  switch (op) {
    case CmpOp::Lt: return lhs < rhs;
    case CmpOp::Le: return lhs <= rhs;
    case CmpOp::Eq: return lhs == rhs;
    case CmpOp::Ne: return lhs != rhs;
    case CmpOp::Ge: return lhs >= rhs;
    case CmpOp::Gt: return lhs > rhs;
  }
  return false;
}

Expr Expr::var(std::string name) {
  return Expr(std::make_shared<ExprNode>(ExprNode{ExprVar{std::move(name)}}));
}
Expr Expr::constant(Nat value) {
  return Expr(std::make_shared<ExprNode>(ExprNode{ExprConst{value}}));
}
Expr Expr::bin(BinOp op, Expr lhs, Expr rhs) {
  return Expr(std::make_shared<ExprNode>(ExprNode{ExprBin{op, std::move(lhs), std::move(rhs)}}));
}

Prop Prop::compare(CmpOp op, Expr lhs, Expr rhs) {
  return Prop(std::make_shared<PropNode>(PropNode{PropCmp{op, std::move(lhs), std::move(rhs)}}));
}
Prop Prop::conj(Prop lhs, Prop rhs) {
  return Prop(std::make_shared<PropNode>(PropNode{PropAnd{std::move(lhs), std::move(rhs)}}));
}
Prop Prop::disj(Prop lhs, Prop rhs) {
  return Prop(std::make_shared<PropNode>(PropNode{PropOr{std::move(lhs), std::move(rhs)}}));
}
Prop Prop::negate(Prop inner) {
  return Prop(std::make_shared<PropNode>(PropNode{PropNot{std::move(inner)}}));
}
Prop Prop::boolean(bool value) {
  return Prop(std::make_shared<PropNode>(PropNode{PropBool{value}}));
}

Stmt Stmt::skip() { return Stmt(std::make_shared<StmtNode>(StmtNode{StmtSkip{}, 0})); }
Stmt Stmt::assign(std::string target, Expr value, int line) {
  return Stmt(std::make_shared<StmtNode>(StmtNode{StmtAssign{std::move(target), std::move(value)}, line}));
}
Stmt Stmt::seq(Stmt first, Stmt second) {
  return Stmt(std::make_shared<StmtNode>(StmtNode{StmtSeq{std::move(first), std::move(second)}, 0}));
}
Stmt Stmt::if_(Prop guard, Stmt then_branch, Stmt else_branch, int line) {
  return Stmt(std::make_shared<StmtNode>(
      StmtNode{StmtIf{std::move(guard), std::move(then_branch), std::move(else_branch)}, line}));
}
Stmt Stmt::while_(Prop guard, Stmt body, int line) {
  return Stmt(std::make_shared<StmtNode>(StmtNode{StmtWhile{std::move(guard), std::move(body)}, line}));
}
Stmt Stmt::sample(std::string target, SampleSpec spec, int line) {
  return Stmt(std::make_shared<StmtNode>(StmtNode{StmtSample{std::move(target), std::move(spec)}, line}));
}
Stmt Stmt::observe(std::optional<std::string> target, std::string source, int line) {
  return Stmt(std::make_shared<StmtNode>(StmtNode{StmtObserve{std::move(target), std::move(source)}, line}));
}
Stmt Stmt::infer(Prop condition, Threshold threshold, Stmt then_branch, Stmt else_branch, int line) {
  return Stmt(std::make_shared<StmtNode>(StmtNode{
      StmtInfer{std::move(condition), threshold, std::move(then_branch), std::move(else_branch)}, line}));
}
Stmt Stmt::diverge() { return Stmt(std::make_shared<StmtNode>(StmtNode{StmtDiverge{}, 0})); }

Declarations::Declarations(const Program& program) : decls_(program.decls), params_(program.params) {
  for (std::size_t i = 0; i < decls_.size(); ++i) {
    index_[decls_[i].name] = static_cast<int>(i);
  }
}

int Declarations::index_of(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

bool Declarations::is_param(const std::string& name) const {
  return std::find(params_.begin(), params_.end(), name) != params_.end();
}

VarKind Declarations::kind_of(const std::string& name) const {
  int idx = index_of(name);
  if (idx < 0) throw std::out_of_range("undeclared variable: " + name);
  return decls_[static_cast<std::size_t>(idx)].kind;
}

const std::optional<std::vector<Nat>>& Declarations::domain_of(const std::string& name) const {
  int idx = index_of(name);
  if (idx < 0) throw std::out_of_range("undeclared variable: " + name);
  return decls_[static_cast<std::size_t>(idx)].domain;
}

bool Declarations::in_domain(std::size_t idx, Nat value) const {
  const auto& dom = decls_[idx].domain;
  if (!dom) return true;
  return std::find(dom->begin(), dom->end(), value) != dom->end();
}

// --- comparison ------------------------------------------------------------

namespace {

template <typename T>
int scalar_cmp(const T& a, const T& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

int string_cmp(const std::string& a, const std::string& b) { return a.compare(b); }

int threshold_cmp(const Threshold& a, const Threshold& b) {
  if (int c = scalar_cmp(static_cast<int>(a.op), static_cast<int>(b.op))) return c;
  if (int c = scalar_cmp(a.bound.index(), b.bound.index())) return c;
  if (a.bound.index() == 0) return scalar_cmp(std::get<Rat>(a.bound), std::get<Rat>(b.bound));
  return string_cmp(std::get<std::string>(a.bound), std::get<std::string>(b.bound));
}

int spec_cmp(const SampleSpec& a, const SampleSpec& b) {
  if (int c = scalar_cmp(a.branches.size(), b.branches.size())) return c;
  for (std::size_t i = 0; i < a.branches.size(); ++i) {
    if (int c = scalar_cmp(a.branches[i].weight, b.branches[i].weight)) return c;
    if (int c = expr_cmp(a.branches[i].value, b.branches[i].value)) return c;
  }
  return 0;
}

}  // namespace

int expr_cmp(const Expr& a, const Expr& b) {
  const ExprNode& na = a.node();
  const ExprNode& nb = b.node();
  if (int c = scalar_cmp(na.v.index(), nb.v.index())) return c;
  if (const auto* va = std::get_if<ExprVar>(&na.v)) {
    return string_cmp(va->name, std::get<ExprVar>(nb.v).name);
  }
  if (const auto* ca = std::get_if<ExprConst>(&na.v)) {
    return scalar_cmp(ca->value, std::get<ExprConst>(nb.v).value);
  }
  const auto& ba = std::get<ExprBin>(na.v);
  const auto& bb = std::get<ExprBin>(nb.v);
  if (int c = scalar_cmp(static_cast<int>(ba.op), static_cast<int>(bb.op))) return c;
  if (int c = expr_cmp(ba.lhs, bb.lhs)) return c;
  return expr_cmp(ba.rhs, bb.rhs);
}

int prop_cmp(const Prop& a, const Prop& b) {
  const PropNode& na = a.node();
  const PropNode& nb = b.node();
  if (int c = scalar_cmp(na.v.index(), nb.v.index())) return c;
  if (const auto* ca = std::get_if<PropCmp>(&na.v)) {
    const auto& cb = std::get<PropCmp>(nb.v);
    if (int c = scalar_cmp(static_cast<int>(ca->op), static_cast<int>(cb.op))) return c;
    if (int c = expr_cmp(ca->lhs, cb.lhs)) return c;
    return expr_cmp(ca->rhs, cb.rhs);
  }
  if (const auto* aa = std::get_if<PropAnd>(&na.v)) {
    const auto& ab = std::get<PropAnd>(nb.v);
    if (int c = prop_cmp(aa->lhs, ab.lhs)) return c;
    return prop_cmp(aa->rhs, ab.rhs);
  }
  if (const auto* oa = std::get_if<PropOr>(&na.v)) {
    const auto& ob = std::get<PropOr>(nb.v);
    if (int c = prop_cmp(oa->lhs, ob.lhs)) return c;
    return prop_cmp(oa->rhs, ob.rhs);
  }
  if (const auto* pa = std::get_if<PropNot>(&na.v)) {
    return prop_cmp(pa->inner, std::get<PropNot>(nb.v).inner);
  }
  return scalar_cmp(std::get<PropBool>(na.v).value, std::get<PropBool>(nb.v).value);
}

int stmt_cmp(const Stmt& a, const Stmt& b) {
  const StmtNode& na = a.node();
  const StmtNode& nb = b.node();
  if (int c = scalar_cmp(na.v.index(), nb.v.index())) return c;
  if (std::holds_alternative<StmtSkip>(na.v) || std::holds_alternative<StmtDiverge>(na.v)) return 0;
  if (const auto* sa = std::get_if<StmtAssign>(&na.v)) {
    const auto& sb = std::get<StmtAssign>(nb.v);
    if (int c = string_cmp(sa->target, sb.target)) return c;
    return expr_cmp(sa->value, sb.value);
  }
  if (const auto* sa = std::get_if<StmtSeq>(&na.v)) {
    const auto& sb = std::get<StmtSeq>(nb.v);
    if (int c = stmt_cmp(sa->first, sb.first)) return c;
    return stmt_cmp(sa->second, sb.second);
  }
  if (const auto* sa = std::get_if<StmtIf>(&na.v)) {
    const auto& sb = std::get<StmtIf>(nb.v);
    if (int c = prop_cmp(sa->guard, sb.guard)) return c;
    if (int c = stmt_cmp(sa->then_branch, sb.then_branch)) return c;
    return stmt_cmp(sa->else_branch, sb.else_branch);
  }
  if (const auto* sa = std::get_if<StmtWhile>(&na.v)) {
    const auto& sb = std::get<StmtWhile>(nb.v);
    if (int c = prop_cmp(sa->guard, sb.guard)) return c;
    return stmt_cmp(sa->body, sb.body);
  }
  if (const auto* sa = std::get_if<StmtSample>(&na.v)) {
    const auto& sb = std::get<StmtSample>(nb.v);
    if (int c = string_cmp(sa->target, sb.target)) return c;
    return spec_cmp(sa->spec, sb.spec);
  }
  if (const auto* sa = std::get_if<StmtObserve>(&na.v)) {
    const auto& sb = std::get<StmtObserve>(nb.v);
    if (int c = scalar_cmp(sa->target.has_value(), sb.target.has_value())) return c;
    if (sa->target) {
      if (int c = string_cmp(*sa->target, *sb.target)) return c;
    }
    return string_cmp(sa->source, sb.source);
  }
  const auto& ia = std::get<StmtInfer>(na.v);
  const auto& ib = std::get<StmtInfer>(nb.v);
  if (int c = prop_cmp(ia.condition, ib.condition)) return c;
  if (int c = threshold_cmp(ia.threshold, ib.threshold)) return c;
  if (int c = stmt_cmp(ia.then_branch, ib.then_branch)) return c;
  return stmt_cmp(ia.else_branch, ib.else_branch);
}

bool operator==(const Program& a, const Program& b) {
  if (a.params != b.params) return false;
  if (a.decls.size() != b.decls.size()) return false;
  for (std::size_t i = 0; i < a.decls.size(); ++i) {
    const auto& da = a.decls[i];
    const auto& db = b.decls[i];
    if (da.name != db.name || da.kind != db.kind || da.domain != db.domain) return false;
  }
  return stmt_cmp(a.body, b.body) == 0;
}

// --- traversal ---------------------------------------------------------------

void collect_expr_vars(const Expr& e, std::vector<std::string>& out) {
  const ExprNode& n = e.node();
  if (const auto* v = std::get_if<ExprVar>(&n.v)) {
    out.push_back(v->name);
  } else if (const auto* b = std::get_if<ExprBin>(&n.v)) {
    collect_expr_vars(b->lhs, out);
    collect_expr_vars(b->rhs, out);
  }
}

void collect_prop_vars(const Prop& p, std::vector<std::string>& out) {
  const PropNode& n = p.node();
  if (const auto* c = std::get_if<PropCmp>(&n.v)) {
    collect_expr_vars(c->lhs, out);
    collect_expr_vars(c->rhs, out);
  } else if (const auto* a = std::get_if<PropAnd>(&n.v)) {
    collect_prop_vars(a->lhs, out);
    collect_prop_vars(a->rhs, out);
  } else if (const auto* o = std::get_if<PropOr>(&n.v)) {
    collect_prop_vars(o->lhs, out);
    collect_prop_vars(o->rhs, out);
  } else if (const auto* nn = std::get_if<PropNot>(&n.v)) {
    collect_prop_vars(nn->inner, out);
  }
}

bool expr_is_observable(const Declarations& decls, const Expr& e) {
  std::vector<std::string> vars;
  collect_expr_vars(e, vars);
  for (const auto& v : vars) {
    if (decls.index_of(v) >= 0 && decls.kind_of(v) == VarKind::Unobservable) return false;
  }
  return true;
}

bool prop_is_observable(const Declarations& decls, const Prop& p) {
  std::vector<std::string> vars;
  collect_prop_vars(p, vars);
  for (const auto& v : vars) {
    if (decls.index_of(v) >= 0 && decls.kind_of(v) == VarKind::Unobservable) return false;
  }
  return true;
}

bool stmt_contains_loop(const Stmt& s) {
  const StmtNode& n = s.node();
  if (std::holds_alternative<StmtWhile>(n.v)) return true;
  if (const auto* q = std::get_if<StmtSeq>(&n.v)) {
    return stmt_contains_loop(q->first) || stmt_contains_loop(q->second);
  }
  if (const auto* q = std::get_if<StmtIf>(&n.v)) {
    return stmt_contains_loop(q->then_branch) || stmt_contains_loop(q->else_branch);
  }
  if (const auto* q = std::get_if<StmtInfer>(&n.v)) {
    return stmt_contains_loop(q->then_branch) || stmt_contains_loop(q->else_branch);
  }
  return false;
}

bool stmt_contains_diverge(const Stmt& s) {
  const StmtNode& n = s.node();
  if (std::holds_alternative<StmtDiverge>(n.v)) return true;
  if (const auto* q = std::get_if<StmtSeq>(&n.v)) {
    return stmt_contains_diverge(q->first) || stmt_contains_diverge(q->second);
  }
  if (const auto* q = std::get_if<StmtIf>(&n.v)) {
    return stmt_contains_diverge(q->then_branch) || stmt_contains_diverge(q->else_branch);
  }
  if (const auto* q = std::get_if<StmtWhile>(&n.v)) {
    return stmt_contains_diverge(q->body);
  }
  if (const auto* q = std::get_if<StmtInfer>(&n.v)) {
    return stmt_contains_diverge(q->then_branch) || stmt_contains_diverge(q->else_branch);
  }
  return false;
}

Stmt seq_of(const std::vector<Stmt>& stmts) {
  if (stmts.empty()) return Stmt::skip();
  Stmt acc = stmts.back();
  for (std::size_t i = stmts.size() - 1; i-- > 0;) {
    acc = Stmt::seq(stmts[i], acc);
  }
  return acc;
}

Stmt bounded_while(const Prop& guard, const Stmt& body, unsigned n) {
  if (n == 0) return Stmt::diverge();
  return Stmt::if_(guard, Stmt::seq(body, bounded_while(guard, body, n - 1)), Stmt::skip());
}

Stmt unroll_loops(const Stmt& s, unsigned fuel) {
  const StmtNode& n = s.node();
  if (const auto* q = std::get_if<StmtSeq>(&n.v)) {
    return Stmt::seq(unroll_loops(q->first, fuel), unroll_loops(q->second, fuel));
  }
  if (const auto* q = std::get_if<StmtIf>(&n.v)) {
    return Stmt::if_(q->guard, unroll_loops(q->then_branch, fuel), unroll_loops(q->else_branch, fuel));
  }
  if (const auto* q = std::get_if<StmtInfer>(&n.v)) {
    return Stmt::infer(q->condition, q->threshold, unroll_loops(q->then_branch, fuel),
                       unroll_loops(q->else_branch, fuel));
  }
  if (const auto* q = std::get_if<StmtWhile>(&n.v)) {
    return bounded_while(q->guard, unroll_loops(q->body, fuel), fuel);
  }
  return s;
}

}  // namespace pblimp
