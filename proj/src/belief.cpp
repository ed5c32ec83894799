#include "pblimp/belief.hpp"

#include <algorithm>
#include <stdexcept>

namespace pblimp {

BeliefState BeliefState::point(Assignment sigma) {
  BeliefState b;
  b.weights_.emplace(std::move(sigma), Rat(1));
  return b;
}

BeliefState BeliefState::from_weights(std::map<Assignment, Rat> weights) {
  Rat total(0);
  for (const auto& [sigma, w] : weights) {
    if (w <= 0) throw std::invalid_argument("belief state entries must be positive");
    total += w;
  }
  if (total != Rat(1)) {
    throw std::invalid_argument("belief state mass must be exactly 1, got " + rat_to_string(total));
  }
  BeliefState b;
  b.weights_ = std::move(weights);
  return b;
}

Rat BeliefState::probability_of(const Assignment& sigma) const {
  auto it = weights_.find(sigma);
  return it == weights_.end() ? Rat(0) : it->second;
}

Rat BeliefState::mass() const {
  Rat total(0);
  for (const auto& [sigma, w] : weights_) total += w;
  return total;
}

Nat eval_expr(const Declarations& decls, const Assignment& sigma, const Expr& e) {
  const ExprNode& n = e.node();
  if (const auto* v = std::get_if<ExprVar>(&n.v)) {
    int idx = decls.index_of(v->name);
    if (idx < 0) throw std::out_of_range("undeclared variable: " + v->name);
    return sigma.values[static_cast<std::size_t>(idx)];
  }
  if (const auto* c = std::get_if<ExprConst>(&n.v)) return c->value;
  const auto& b = std::get<ExprBin>(n.v);
  Nat l = eval_expr(decls, sigma, b.lhs);
  Nat r = eval_expr(decls, sigma, b.rhs);
  switch (b.op) {
    case BinOp::Add: return l + r;
    case BinOp::Sub: return l >= r ? l - r : 0;  // truncates at 0
    case BinOp::Mul: return l * r;
    case BinOp::Div: return r == 0 ? 0 : l / r;  // c/0 = 0
  }
  return 0;
}

bool eval_prop(const Declarations& decls, const Assignment& sigma, const Prop& p) {
  const PropNode& n = p.node();
  if (const auto* c = std::get_if<PropCmp>(&n.v)) {
    Nat l = eval_expr(decls, sigma, c->lhs);
    Nat r = eval_expr(decls, sigma, c->rhs);
    switch (c->op) {
      case CmpOp::Lt: return l < r;
      case CmpOp::Le: return l <= r;
      case CmpOp::Eq: return l == r;
      case CmpOp::Ne: return l != r;
      case CmpOp::Ge: return l >= r;
      case CmpOp::Gt: return l > r;
    }
    return false;
  }
  if (const auto* a = std::get_if<PropAnd>(&n.v)) {
    return eval_prop(decls, sigma, a->lhs) && eval_prop(decls, sigma, a->rhs);
  }
  if (const auto* o = std::get_if<PropOr>(&n.v)) {
    return eval_prop(decls, sigma, o->lhs) || eval_prop(decls, sigma, o->rhs);
  }
  if (const auto* nn = std::get_if<PropNot>(&n.v)) {
    return !eval_prop(decls, sigma, nn->inner);
  }
  return std::get<PropBool>(n.v).value;
}

Rat prob(const Declarations& decls, const BeliefState& beta, const Prop& p) {
  Rat total(0);
  for (const auto& [sigma, w] : beta.support()) {
    if (eval_prop(decls, sigma, p)) total += w;
  }
  return total;
}

Assignment with_value(const Assignment& sigma, std::size_t idx, Nat value) {
  Assignment out = sigma;
  out.values[idx] = value;
  return out;
}

BeliefState assign_update(const Declarations& decls, const BeliefState& beta,
                          const std::string& var, const Expr& value) {
  int idx = decls.index_of(var);
  if (idx < 0) throw std::out_of_range("undeclared variable: " + var);
  std::map<Assignment, Rat> out;
  for (const auto& [sigma, w] : beta.support()) {
    Assignment next = with_value(sigma, static_cast<std::size_t>(idx),
                                 eval_expr(decls, sigma, value));
    out[next] += w;
  }
  return BeliefState::from_weights(std::move(out));
}

Rat sample_weight(const Declarations& decls, const SampleSpec& spec, const Assignment& sigma,
                  Nat value) {
  Rat total(0);
  for (const auto& br : spec.branches) {
    if (eval_expr(decls, sigma, br.value) == value) total += br.weight;
  }
  return total;
}

std::vector<Nat> sample_values(const Declarations& decls, const SampleSpec& spec,
                               const Assignment& sigma) {
  std::vector<Nat> values;
  for (const auto& br : spec.branches) values.push_back(eval_expr(decls, sigma, br.value));
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

BeliefState sample_update(const Declarations& decls, const BeliefState& beta,
                          const std::string& var, const SampleSpec& spec) {
  int idx = decls.index_of(var);
  if (idx < 0) throw std::out_of_range("undeclared variable: " + var);
  std::map<Assignment, Rat> out;
  for (const auto& [rho, w] : beta.support()) {
    for (Nat c : sample_values(decls, spec, rho)) {
      if (!decls.in_domain(static_cast<std::size_t>(idx), c)) {
        throw DomainError("sampled value " + std::to_string(c) + " outside the domain of '" + var +
                          "'");
      }
      out[with_value(rho, static_cast<std::size_t>(idx), c)] +=
          w * sample_weight(decls, spec, rho, c);
    }
  }
  return BeliefState::from_weights(std::move(out));
}

BeliefState condition(const Declarations& decls, const BeliefState& beta, const std::string& var,
                      Nat value) {
  int idx = decls.index_of(var);
  if (idx < 0) throw std::out_of_range("undeclared variable: " + var);
  Rat norm(0);
  for (const auto& [sigma, w] : beta.support()) {
    if (sigma.values[static_cast<std::size_t>(idx)] == value) norm += w;
  }
  if (norm == 0) {
    throw ZeroProbabilityObservation("observed '" + var + "' = " + std::to_string(value) +
                                     " has probability 0");
  }
  std::map<Assignment, Rat> out;
  for (const auto& [sigma, w] : beta.support()) {
    if (sigma.values[static_cast<std::size_t>(idx)] == value) out[sigma] = w / norm;
  }
  return BeliefState::from_weights(std::move(out));
}

BeliefState set_var(const Declarations& decls, const BeliefState& beta, const std::string& var,
                    Nat value) {
  return assign_update(decls, beta, var, Expr::constant(value));
}

bool is_consistent(const Declarations& decls, const BeliefState& beta) {
  if (beta.support().empty()) return true;
  const Assignment& first = beta.support().begin()->first;
  for (const auto& [sigma, w] : beta.support()) {
    for (std::size_t i = 0; i < decls.var_count(); ++i) {
      if (decls.decl(i).kind == VarKind::Observable && sigma.values[i] != first.values[i]) {
        return false;
      }
    }
  }
  return true;
}

Assignment default_assignment(const Declarations& decls) {
  Assignment sigma;
  sigma.values.resize(decls.var_count(), 0);
  for (std::size_t i = 0; i < decls.var_count(); ++i) {
    const auto& dom = decls.decl(i).domain;
    if (dom && !dom->empty()) sigma.values[i] = *std::min_element(dom->begin(), dom->end());
  }
  return sigma;
}

}  // namespace pblimp
