#pragma once

#include <map>
#include <vector>

#include "pblimp/ast.hpp"
#include "pblimp/diagnostics.hpp"

namespace pblimp {

// Total assignment of naturals to the declared variables, indexed in
// declaration order (the canonical assignment ordering).
struct Assignment {
  std::vector<Nat> values;

  friend bool operator==(const Assignment& a, const Assignment& b) { return a.values == b.values; }
  friend bool operator<(const Assignment& a, const Assignment& b) { return a.values < b.values; }
};

// Finite rational-weighted distribution over assignments. Canonical by
// construction: support sorted (std::map), no zero entries, mass exactly 1,
// so structural equality coincides with distribution equality.
class BeliefState {
 public:
  BeliefState() = default;

  static BeliefState point(Assignment sigma);
  // Validates positivity and unit mass; prunes nothing (zero entries are
  // rejected as ill-formed input).
  static BeliefState from_weights(std::map<Assignment, Rat> weights);

  const std::map<Assignment, Rat>& support() const { return weights_; }
  Rat probability_of(const Assignment& sigma) const;
  Rat mass() const;
  bool empty() const { return weights_.empty(); }

  friend bool operator==(const BeliefState& a, const BeliefState& b) {
    return a.weights_ == b.weights_;
  }
  friend bool operator<(const BeliefState& a, const BeliefState& b) {
    return a.weights_ < b.weights_;
  }

 private:
  std::map<Assignment, Rat> weights_;
};

// --- evaluation --------------------------------------------------------------

// Total: subtraction truncates at 0, division truncates with c/0 = 0.
Nat eval_expr(const Declarations& decls, const Assignment& sigma, const Expr& e);
bool eval_prop(const Declarations& decls, const Assignment& sigma, const Prop& p);

// (*): probability that P holds under belief state beta.
Rat prob(const Declarations& decls, const BeliefState& beta, const Prop& p);

// --- belief-state operators --------------------------------------------------

// Image measure of sigma -> sigma[x := sigma(E)]; colliding masses merge.
// The Fig. 2 assignment rule (x observable); the pushforward itself is also
// the generalized update used by the Resolution(Assign) identity.
BeliefState assign_update(const Declarations& decls, const BeliefState& beta,
                          const std::string& var, const Expr& value);

// Sampling weight f(sigma, c) of the finite-sum spec.
Rat sample_weight(const Declarations& decls, const SampleSpec& spec, const Assignment& sigma,
                  Nat value);
// Values with positive weight under f(sigma), ascending.
std::vector<Nat> sample_values(const Declarations& decls, const SampleSpec& spec,
                               const Assignment& sigma);

// (+): mixture update beta[x := f]. Throws DomainError if a branch value
// leaves the declared domain of x on the support of beta.
BeliefState sample_update(const Declarations& decls, const BeliefState& beta,
                          const std::string& var, const SampleSpec& spec);

// (++): conditioning beta|_{x=c}. Throws ZeroProbabilityObservation when
// prob(beta, x = c) is zero.
BeliefState condition(const Declarations& decls, const BeliefState& beta, const std::string& var,
                      Nat value);

// Deterministic write beta[y := c] (observe's assignment half).
BeliefState set_var(const Declarations& decls, const BeliefState& beta, const std::string& var,
                    Nat value);

// All support assignments agree on every observable variable.
bool is_consistent(const Declarations& decls, const BeliefState& beta);

Assignment with_value(const Assignment& sigma, std::size_t idx, Nat value);

// Point assignment mapping every variable to the minimum of its declared
// domain (0 when absent); the CLI's default initial belief.
Assignment default_assignment(const Declarations& decls);

}  // namespace pblimp
