#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pblimp/rational.hpp"

namespace pblimp {

enum class VarKind { Observable, Unobservable };
enum class BinOp { Add, Sub, Mul, Div };
enum class CmpOp { Lt, Le, Eq, Ne, Ge, Gt };

const char* binop_text(BinOp op);
const char* cmpop_text(CmpOp op);
CmpOp cmpop_negate(CmpOp op);
bool cmp_holds(CmpOp op, const Rat& lhs, const Rat& rhs);

// ---------------------------------------------------------------------------
// Expressions and propositions (Fig. 1 shapes). Immutable shared trees.
// ---------------------------------------------------------------------------

struct ExprNode;

class Expr {
 public:
  Expr() = default;
  static Expr var(std::string name);
  static Expr constant(Nat value);
  static Expr bin(BinOp op, Expr lhs, Expr rhs);

  const ExprNode& node() const { return *node_; }
  bool valid() const { return node_ != nullptr; }

 private:
  explicit Expr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const ExprNode> node_;
};

struct ExprVar {
  std::string name;
};
struct ExprConst {
  Nat value = 0;
};
struct ExprBin {
  BinOp op;
  Expr lhs;
  Expr rhs;
};
struct ExprNode {
  std::variant<ExprVar, ExprConst, ExprBin> v;
};

struct PropNode;

class Prop {
 public:
  Prop() = default;
  static Prop compare(CmpOp op, Expr lhs, Expr rhs);
  static Prop conj(Prop lhs, Prop rhs);
  static Prop disj(Prop lhs, Prop rhs);
  static Prop negate(Prop inner);
  static Prop boolean(bool value);

  const PropNode& node() const { return *node_; }
  bool valid() const { return node_ != nullptr; }

 private:
  explicit Prop(std::shared_ptr<const PropNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const PropNode> node_;
};

struct PropCmp {
  CmpOp op;
  Expr lhs;
  Expr rhs;
};
struct PropAnd {
  Prop lhs;
  Prop rhs;
};
struct PropOr {
  Prop lhs;
  Prop rhs;
};
struct PropNot {
  Prop inner;
};
struct PropBool {
  bool value;
};
struct PropNode {
  std::variant<PropCmp, PropAnd, PropOr, PropNot, PropBool> v;
};

// ---------------------------------------------------------------------------
// Statements
// ---------------------------------------------------------------------------

struct SampleBranch {
  Rat weight;  // positive, branch weights of a spec sum to exactly 1
  Expr value;
};

struct SampleSpec {
  std::vector<SampleBranch> branches;  // non-empty
};

// Single-comparison infer interval: p(P) op bound.
struct Threshold {
  CmpOp op;
  std::variant<Rat, std::string> bound;  // rational constant or parameter name
};

struct StmtNode;

class Stmt {
 public:
  Stmt() = default;
  static Stmt skip();
  static Stmt assign(std::string target, Expr value, int line = 0);
  static Stmt seq(Stmt first, Stmt second);
  static Stmt if_(Prop guard, Stmt then_branch, Stmt else_branch, int line = 0);
  static Stmt while_(Prop guard, Stmt body, int line = 0);
  static Stmt sample(std::string target, SampleSpec spec, int line = 0);
  // Empty target = still-sugared `observe x`.
  static Stmt observe(std::optional<std::string> target, std::string source, int line = 0);
  static Stmt infer(Prop condition, Threshold threshold, Stmt then_branch, Stmt else_branch,
                    int line = 0);
  static Stmt diverge();

  const StmtNode& node() const { return *node_; }
  bool valid() const { return node_ != nullptr; }

 private:
  explicit Stmt(std::shared_ptr<const StmtNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const StmtNode> node_;
};

struct StmtSkip {};
struct StmtAssign {
  std::string target;
  Expr value;
};
struct StmtSeq {
  Stmt first;
  Stmt second;
};
struct StmtIf {
  Prop guard;
  Stmt then_branch;
  Stmt else_branch;
};
struct StmtWhile {
  Prop guard;
  Stmt body;
};
struct StmtSample {
  std::string target;
  SampleSpec spec;
};
struct StmtObserve {
  std::optional<std::string> target;
  std::string source;
};
struct StmtInfer {
  Prop condition;
  Threshold threshold;
  Stmt then_branch;
  Stmt else_branch;
};
struct StmtDiverge {};

struct StmtNode {
  std::variant<StmtSkip, StmtAssign, StmtSeq, StmtIf, StmtWhile, StmtSample, StmtObserve,
               StmtInfer, StmtDiverge>
      v;
  int line = 0;  // 1-based source line, 0 when synthesized
};

// ---------------------------------------------------------------------------
// Programs and declarations
// ---------------------------------------------------------------------------

struct VarDecl {
  std::string name;
  VarKind kind = VarKind::Observable;
  // Required for unobservable variables; advisory for observable ones.
  std::optional<std::vector<Nat>> domain;
};

struct Program {
  std::vector<std::string> params;
  std::vector<VarDecl> decls;
  Stmt body;
};

// Resolved declaration table. Variable indices follow declaration order and
// define the canonical ordering of assignments and belief-state keys.
class Declarations {
 public:
  Declarations() = default;
  explicit Declarations(const Program& program);

  int index_of(const std::string& name) const;        // -1 if undeclared
  bool is_declared(const std::string& name) const { return index_of(name) >= 0; }
  bool is_param(const std::string& name) const;
  std::size_t var_count() const { return decls_.size(); }
  const VarDecl& decl(std::size_t idx) const { return decls_[idx]; }
  const std::vector<VarDecl>& all() const { return decls_; }
  const std::vector<std::string>& params() const { return params_; }

  VarKind kind_of(const std::string& name) const;
  const std::optional<std::vector<Nat>>& domain_of(const std::string& name) const;
  bool in_domain(std::size_t idx, Nat value) const;

 private:
  std::vector<VarDecl> decls_;
  std::vector<std::string> params_;
  std::map<std::string, int> index_;
};

// ---------------------------------------------------------------------------
// Structural comparison / traversal helpers
// ---------------------------------------------------------------------------

int expr_cmp(const Expr& a, const Expr& b);
int prop_cmp(const Prop& a, const Prop& b);
int stmt_cmp(const Stmt& a, const Stmt& b);  // ignores source lines

inline bool operator==(const Expr& a, const Expr& b) { return expr_cmp(a, b) == 0; }
inline bool operator==(const Prop& a, const Prop& b) { return prop_cmp(a, b) == 0; }
inline bool operator==(const Stmt& a, const Stmt& b) { return stmt_cmp(a, b) == 0; }
bool operator==(const Program& a, const Program& b);

void collect_expr_vars(const Expr& e, std::vector<std::string>& out);
void collect_prop_vars(const Prop& p, std::vector<std::string>& out);

// True iff no unobservable variable occurs in the expression/proposition.
bool expr_is_observable(const Declarations& decls, const Expr& e);
bool prop_is_observable(const Declarations& decls, const Prop& p);

bool stmt_contains_loop(const Stmt& s);
bool stmt_contains_diverge(const Stmt& s);

// Right-associated sequence of statements; empty list yields skip.
Stmt seq_of(const std::vector<Stmt>& stmts);

// App. B bounded loop: while^0 = diverge, while^n = if (P) { C; while^{n-1} } else { skip }.
Stmt bounded_while(const Prop& guard, const Stmt& body, unsigned n);

// Replaces every while loop by its bounded unrolling with `fuel` iterations
// (applied recursively to loop bodies first).
Stmt unroll_loops(const Stmt& s, unsigned fuel);

}  // namespace pblimp
