#include "pblimp/pretty.hpp"

#include <sstream>

namespace pblimp {

namespace {

std::string rat_literal(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

int expr_prec(const Expr& e) {
  const ExprNode& n = e.node();
  if (const auto* b = std::get_if<ExprBin>(&n.v)) {
    return (b->op == BinOp::Add || b->op == BinOp::Sub) ? 1 : 2;
  }
  return 3;
}

void print_expr(std::ostream& os, const Expr& e, int min_prec) {
  const ExprNode& n = e.node();
  if (const auto* v = std::get_if<ExprVar>(&n.v)) {
    os << v->name;
    return;
  }
  if (const auto* c = std::get_if<ExprConst>(&n.v)) {
    os << c->value;
    return;
  }
  const auto& b = std::get<ExprBin>(n.v);
  int prec = expr_prec(e);
  bool parens = prec < min_prec;
  if (parens) os << "(";
  print_expr(os, b.lhs, prec);
  os << " " << binop_text(b.op) << " ";
  print_expr(os, b.rhs, prec + 1);  // left-associative
  if (parens) os << ")";
}

int prop_prec(const Prop& p) {
  const PropNode& n = p.node();
  if (std::holds_alternative<PropOr>(n.v)) return 1;
  if (std::holds_alternative<PropAnd>(n.v)) return 2;
  if (std::holds_alternative<PropNot>(n.v)) return 3;
  return 4;
}

void print_prop(std::ostream& os, const Prop& p, int min_prec) {
  const PropNode& n = p.node();
  int prec = prop_prec(p);
  bool parens = prec < min_prec;
  if (const auto* c = std::get_if<PropCmp>(&n.v)) {
    print_expr(os, c->lhs, 0);
    os << " " << cmpop_text(c->op) << " ";
    print_expr(os, c->rhs, 0);
    return;
  }
  if (const auto* b = std::get_if<PropBool>(&n.v)) {
    os << (b->value ? "true" : "false");
    return;
  }
  if (parens) os << "(";
  if (const auto* a = std::get_if<PropAnd>(&n.v)) {
    print_prop(os, a->lhs, prec);
    os << " && ";
    print_prop(os, a->rhs, prec + 1);
  } else if (const auto* o = std::get_if<PropOr>(&n.v)) {
    print_prop(os, o->lhs, prec);
    os << " || ";
    print_prop(os, o->rhs, prec + 1);
  } else {
    const auto& nn = std::get<PropNot>(n.v);
    os << "!";
    // comparisons need parens under negation: !(x < 2)
    if (std::holds_alternative<PropCmp>(nn.inner.node().v)) {
      os << "(";
      print_prop(os, nn.inner, 0);
      os << ")";
    } else {
      print_prop(os, nn.inner, prec);
    }
  }
  if (parens) os << ")";
}

void flatten_seq(const Stmt& s, std::vector<Stmt>& out) {
  if (const auto* q = std::get_if<StmtSeq>(&s.node().v)) {
    flatten_seq(q->first, out);
    flatten_seq(q->second, out);
  } else {
    out.push_back(s);
  }
}

void print_stmt(std::ostream& os, const Stmt& s, int indent);

void print_block(std::ostream& os, const Stmt& s, int indent) {
  std::vector<Stmt> items;
  flatten_seq(s, items);
  for (const auto& item : items) print_stmt(os, item, indent);
}

void print_stmt(std::ostream& os, const Stmt& s, int indent) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const StmtNode& n = s.node();
  if (std::holds_alternative<StmtSkip>(n.v)) {
    os << pad << "skip;\n";
  } else if (std::holds_alternative<StmtDiverge>(n.v)) {
    os << pad << "diverge;\n";
  } else if (const auto* a = std::get_if<StmtAssign>(&n.v)) {
    os << pad << a->target << " = " << pretty_expr(a->value) << ";\n";
  } else if (const auto* sm = std::get_if<StmtSample>(&n.v)) {
    os << pad << sm->target << " = sample(" << pretty_sample_spec(sm->spec) << ");\n";
  } else if (const auto* ob = std::get_if<StmtObserve>(&n.v)) {
    os << pad;
    if (ob->target) os << *ob->target << " = ";
    os << "observe " << ob->source << ";\n";
  } else if (const auto* i = std::get_if<StmtIf>(&n.v)) {
    os << pad << "if (" << pretty_prop(i->guard) << ") {\n";
    print_block(os, i->then_branch, indent + 1);
    os << pad << "} else {\n";
    print_block(os, i->else_branch, indent + 1);
    os << pad << "}\n";
  } else if (const auto* w = std::get_if<StmtWhile>(&n.v)) {
    os << pad << "while (" << pretty_prop(w->guard) << ") {\n";
    print_block(os, w->body, indent + 1);
    os << pad << "}\n";
  } else if (const auto* inf = std::get_if<StmtInfer>(&n.v)) {
    os << pad << "infer(p(" << pretty_prop(inf->condition) << ") " << pretty_threshold(inf->threshold)
       << ") {\n";
    print_block(os, inf->then_branch, indent + 1);
    os << pad << "} else {\n";
    print_block(os, inf->else_branch, indent + 1);
    os << pad << "}\n";
  } else {
    const auto& q = std::get<StmtSeq>(n.v);
    print_block(os, Stmt::seq(q.first, q.second), indent);
  }
}

}  // namespace

std::string pretty_expr(const Expr& e) {
  std::ostringstream os;
  print_expr(os, e, 0);
  return os.str();
}

std::string pretty_prop(const Prop& p) {
  std::ostringstream os;
  print_prop(os, p, 0);
  return os.str();
}

std::string pretty_sample_spec(const SampleSpec& spec) {
  std::ostringstream os;
  bool first = true;
  for (const auto& br : spec.branches) {
    if (!first) os << " + ";
    first = false;
    os << rat_literal(br.weight) << "|" << pretty_expr(br.value) << ">";
  }
  return os.str();
}

std::string pretty_threshold(const Threshold& t) {
  std::ostringstream os;
  os << cmpop_text(t.op) << " ";
  if (const auto* r = std::get_if<Rat>(&t.bound)) {
    os << rat_literal(*r);
  } else {
    os << std::get<std::string>(t.bound);
  }
  return os.str();
}

std::string stmt_head(const Stmt& s) {
  const StmtNode& n = s.node();
  if (std::holds_alternative<StmtSkip>(n.v)) return "skip";
  if (std::holds_alternative<StmtDiverge>(n.v)) return "diverge";
  if (const auto* a = std::get_if<StmtAssign>(&n.v)) {
    return a->target + " = " + pretty_expr(a->value);
  }
  if (const auto* sm = std::get_if<StmtSample>(&n.v)) {
    return sm->target + " = sample(" + pretty_sample_spec(sm->spec) + ")";
  }
  if (const auto* ob = std::get_if<StmtObserve>(&n.v)) {
    return (ob->target ? *ob->target + " = " : std::string()) + "observe " + ob->source;
  }
  if (const auto* i = std::get_if<StmtIf>(&n.v)) return "if (" + pretty_prop(i->guard) + ")";
  if (const auto* w = std::get_if<StmtWhile>(&n.v)) return "while (" + pretty_prop(w->guard) + ")";
  if (const auto* inf = std::get_if<StmtInfer>(&n.v)) {
    return "infer(p(" + pretty_prop(inf->condition) + ") " + pretty_threshold(inf->threshold) + ")";
  }
  return "seq";
}

std::string pretty_stmt(const Stmt& s, int indent) {
  std::ostringstream os;
  print_block(os, s, indent);
  return os.str();
}

std::string pretty_program(const Program& p) {
  std::ostringstream os;
  for (const auto& name : p.params) os << "param " << name << ";\n";
  for (const auto& d : p.decls) {
    os << (d.kind == VarKind::Observable ? "ovar " : "uvar ") << d.name;
    if (d.domain) {
      os << " in {";
      for (std::size_t i = 0; i < d.domain->size(); ++i) {
        if (i) os << ", ";
        os << (*d.domain)[i];
      }
      os << "}";
    }
    os << ";\n";
  }
  os << "\n";
  os << pretty_stmt(p.body, 0);
  return os.str();
}

}  // namespace pblimp
