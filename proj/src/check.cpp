#include "pblimp/check.hpp"

#include <set>

#include "pblimp/pretty.hpp"

namespace pblimp {

namespace {

class Checker {
 public:
  explicit Checker(const Program& prog) : prog_(prog), decls_(prog) {}

  std::vector<TypeError> run() {
    check_decls();
    check_stmt(prog_.body);
    return std::move(errors_);
  }

 private:
  void error(const Stmt& s, const std::string& var, const std::string& message) {
    errors_.push_back(TypeError{message, var, stmt_head(s), s.node().line});
  }

  void check_decls() {
    std::set<std::string> seen;
    for (const auto& p : prog_.params) {
      if (!seen.insert(p).second) {
        errors_.push_back(TypeError{"duplicate name '" + p + "'", p, "", 0});
      }
    }
    for (const auto& d : prog_.decls) {
      if (!seen.insert(d.name).second) {
        errors_.push_back(TypeError{"duplicate name '" + d.name + "'", d.name, "", 0});
      }
      if (d.kind == VarKind::Unobservable && !d.domain) {
        errors_.push_back(TypeError{"unobservable variable '" + d.name + "' needs a finite domain",
                                    d.name, "", 0});
      }
      if (d.domain && d.domain->empty()) {
        errors_.push_back(TypeError{"empty domain for '" + d.name + "'", d.name, "", 0});
      }
    }
  }

  // Returns the first unobservable variable of e, if any; complains about
  // undeclared variables as a side effect.
  std::optional<std::string> unobservable_in(const Stmt& ctx, const Expr& e) {
    std::vector<std::string> vars;
    collect_expr_vars(e, vars);
    std::optional<std::string> found;
    for (const auto& v : vars) {
      if (decls_.index_of(v) < 0) {
        error(ctx, v, "undeclared variable '" + v + "'");
      } else if (!found && decls_.kind_of(v) == VarKind::Unobservable) {
        found = v;
      }
    }
    return found;
  }

  std::optional<std::string> unobservable_in(const Stmt& ctx, const Prop& p) {
    std::vector<std::string> vars;
    collect_prop_vars(p, vars);
    std::optional<std::string> found;
    for (const auto& v : vars) {
      if (decls_.index_of(v) < 0) {
        error(ctx, v, "undeclared variable '" + v + "'");
      } else if (!found && decls_.kind_of(v) == VarKind::Unobservable) {
        found = v;
      }
    }
    return found;
  }

  void require_declared(const Stmt& ctx, const std::string& name) {
    if (decls_.index_of(name) < 0) error(ctx, name, "undeclared variable '" + name + "'");
  }

  void check_stmt(const Stmt& s) {
    const StmtNode& n = s.node();
    if (const auto* a = std::get_if<StmtAssign>(&n.v)) {
      require_declared(s, a->target);
      if (decls_.index_of(a->target) >= 0 && decls_.kind_of(a->target) == VarKind::Unobservable) {
        error(s, a->target, "assignment targets must be observable; '" + a->target +
                                "' is unobservable (use sample)");
      }
      if (auto leak = unobservable_in(s, a->value)) {
        error(s, *leak, "assignment source uses unobservable '" + *leak + "'");
      }
    } else if (const auto* q = std::get_if<StmtSeq>(&n.v)) {
      check_stmt(q->first);
      check_stmt(q->second);
    } else if (const auto* i = std::get_if<StmtIf>(&n.v)) {
      if (auto leak = unobservable_in(s, i->guard)) {
        error(s, *leak, "if-guard uses unobservable '" + *leak + "'");
      }
      check_stmt(i->then_branch);
      check_stmt(i->else_branch);
    } else if (const auto* w = std::get_if<StmtWhile>(&n.v)) {
      if (auto leak = unobservable_in(s, w->guard)) {
        error(s, *leak, "while-guard uses unobservable '" + *leak + "'");
      }
      check_stmt(w->body);
    } else if (const auto* sm = std::get_if<StmtSample>(&n.v)) {
      require_declared(s, sm->target);
      if (decls_.index_of(sm->target) >= 0 && decls_.kind_of(sm->target) == VarKind::Observable) {
        error(s, sm->target, "sample targets must be unobservable; '" + sm->target +
                                 "' is observable (use assignment)");
      }
      Rat total(0);
      for (const auto& br : sm->spec.branches) {
        if (br.weight <= 0) error(s, sm->target, "sample weights must be positive");
        total += br.weight;
        unobservable_in(s, br.value);  // declaredness only; branch values may be unobservable
      }
      if (sm->spec.branches.empty()) {
        error(s, sm->target, "sample needs at least one branch");
      } else if (total != Rat(1)) {
        error(s, sm->target, "sample weights must sum to 1 (got " + rat_to_string(total) + ")");
      }
    } else if (const auto* ob = std::get_if<StmtObserve>(&n.v)) {
      require_declared(s, ob->source);
      if (decls_.index_of(ob->source) >= 0 && decls_.kind_of(ob->source) == VarKind::Observable) {
        error(s, ob->source, "observe reads an unobservable variable; '" + ob->source +
                                 "' is observable");
      }
      if (ob->target) {
        require_declared(s, *ob->target);
        if (decls_.index_of(*ob->target) >= 0 &&
            decls_.kind_of(*ob->target) == VarKind::Unobservable) {
          error(s, *ob->target, "observe targets must be observable; '" + *ob->target +
                                    "' is unobservable");
        }
      }
    } else if (const auto* inf = std::get_if<StmtInfer>(&n.v)) {
      unobservable_in(s, inf->condition);  // any proposition is allowed here
      if (const auto* bound = std::get_if<Rat>(&inf->threshold.bound)) {
        if (*bound < 0 || *bound > 1) {
          error(s, "", "infer threshold constant must lie in [0, 1]");
        }
      } else {
        const auto& param = std::get<std::string>(inf->threshold.bound);
        if (!decls_.is_param(param)) {
          error(s, param, "undeclared parameter '" + param + "' in infer threshold");
        }
      }
      check_stmt(inf->then_branch);
      check_stmt(inf->else_branch);
    }
    // skip / diverge: nothing to check
  }

  const Program& prog_;
  Declarations decls_;
  std::vector<TypeError> errors_;
};

void desugar_stmt(const Stmt& s, unsigned& counter, std::vector<VarDecl>& new_decls,
                  const Declarations& decls, Stmt& out) {
  const StmtNode& n = s.node();
  if (const auto* ob = std::get_if<StmtObserve>(&n.v)) {
    if (!ob->target) {
      std::string fresh = "_obs" + std::to_string(counter++);
      VarDecl d;
      d.name = fresh;
      d.kind = VarKind::Observable;
      if (decls.index_of(ob->source) >= 0) d.domain = decls.domain_of(ob->source);
      new_decls.push_back(std::move(d));
      out = Stmt::observe(fresh, ob->source, n.line);
      return;
    }
    out = s;
    return;
  }
  if (const auto* q = std::get_if<StmtSeq>(&n.v)) {
    Stmt a, b;
    desugar_stmt(q->first, counter, new_decls, decls, a);
    desugar_stmt(q->second, counter, new_decls, decls, b);
    out = Stmt::seq(a, b);
    return;
  }
  if (const auto* i = std::get_if<StmtIf>(&n.v)) {
    Stmt a, b;
    desugar_stmt(i->then_branch, counter, new_decls, decls, a);
    desugar_stmt(i->else_branch, counter, new_decls, decls, b);
    out = Stmt::if_(i->guard, a, b, n.line);
    return;
  }
  if (const auto* w = std::get_if<StmtWhile>(&n.v)) {
    Stmt b;
    desugar_stmt(w->body, counter, new_decls, decls, b);
    out = Stmt::while_(w->guard, b, n.line);
    return;
  }
  if (const auto* inf = std::get_if<StmtInfer>(&n.v)) {
    Stmt a, b;
    desugar_stmt(inf->then_branch, counter, new_decls, decls, a);
    desugar_stmt(inf->else_branch, counter, new_decls, decls, b);
    out = Stmt::infer(inf->condition, inf->threshold, a, b, n.line);
    return;
  }
  out = s;
}

}  // namespace

std::vector<TypeError> check_observability(const Program& prog) { return Checker(prog).run(); }

Program desugar(const Program& prog) {
  Declarations decls(prog);
  // start the fresh counter above any existing _obsN name
  unsigned counter = 0;
  for (const auto& d : prog.decls) {
    if (d.name.rfind("_obs", 0) == 0) {
      try {
        unsigned n = static_cast<unsigned>(std::stoul(d.name.substr(4)));
        counter = std::max(counter, n + 1);
      } catch (...) {
      }
    }
  }
  Program out;
  out.params = prog.params;
  out.decls = prog.decls;
  std::vector<VarDecl> new_decls;
  desugar_stmt(prog.body, counter, new_decls, decls, out.body);
  for (auto& d : new_decls) out.decls.push_back(std::move(d));
  return out;
}

}  // namespace pblimp
