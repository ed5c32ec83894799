#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "pblimp/belief.hpp"

namespace pblimp {

// Rational bindings for the program's named parameters.
class ParamEnv {
 public:
  ParamEnv() = default;
  explicit ParamEnv(std::map<std::string, Rat> values) : values_(std::move(values)) {}

  const Rat& lookup(const std::string& name) const;
  bool bound(const std::string& name) const { return values_.count(name) > 0; }
  const std::map<std::string, Rat>& values() const { return values_; }
  void bind(const std::string& name, Rat value) { values_[name] = std::move(value); }

 private:
  std::map<std::string, Rat> values_;
};

Rat threshold_bound(const Threshold& t, const ParamEnv& params);

// Full configuration (C, beta, sigma, p); terminated() encodes the symbol T.
struct Configuration {
  Stmt continuation;  // invalid handle = terminated
  BeliefState belief;
  Assignment truth;
  Rat pathprob;

  bool terminated() const { return !continuation.valid(); }
};

// Belief-only configuration <C, beta, p> of the alternative semantics.
struct AltConfiguration {
  Stmt continuation;
  BeliefState belief;
  Rat pathprob;

  bool terminated() const { return !continuation.valid(); }
};

// Sub-distribution over terminal (belief, truth) pairs; residual is the mass
// still unterminated at the fuel bound. Terminated mass + residual = 1.
struct TerminalDist {
  std::map<std::pair<BeliefState, Assignment>, Rat> entries;
  Rat residual{0};

  Rat terminated_mass() const;
};

struct TerminalBeliefDist {
  std::map<BeliefState, Rat> entries;
  Rat residual{0};

  Rat terminated_mass() const;
};

TerminalBeliefDist marginal_over_beliefs(const TerminalDist& dist);

// One transition of the Fig. 2 rules. Sampling branches once per value with
// positive weight, ascending; observe is deterministic given the truth.
// Requires a desugared program (every observe carries a target).
std::vector<Configuration> step(const Declarations& decls, const Configuration& cfg,
                                const ParamEnv& params);

// One transition of the App. A rules: sample is deterministic, observe
// branches once per value with positive belief probability, ascending.
std::vector<AltConfiguration> step_alt(const Declarations& decls, const AltConfiguration& cfg,
                                       const ParamEnv& params);

enum class ExploreOrder { DepthFirst, BreadthFirst };

// Exhaustive exploration of the computation tree from (C, beta0, sigma0, 1).
// Loops are truncated to `fuel` iterations per syntactic occurrence (the
// bounded-loop semantics); truncated paths report to residual.
TerminalDist explore(const Declarations& decls, const Stmt& program, const BeliefState& beta0,
                     const Assignment& sigma0, unsigned fuel, const ParamEnv& params,
                     ExploreOrder order = ExploreOrder::DepthFirst);

// [C]^beta: the beta0(sigma)-weighted combination of explore over the support.
TerminalDist exec_from_belief(const Declarations& decls, const Stmt& program,
                              const BeliefState& beta0, unsigned fuel, const ParamEnv& params);

// [[C]]^beta via the alternative semantics.
TerminalBeliefDist exec_alt(const Declarations& decls, const Stmt& program,
                            const BeliefState& beta0, unsigned fuel, const ParamEnv& params,
                            ExploreOrder order = ExploreOrder::DepthFirst);

struct Trajectory {
  BeliefState belief;
  Assignment truth;
  bool terminated = false;
  std::uint64_t steps = 0;
};

// Monte-Carlo run of the Fig. 2 semantics: draws the initial truth from
// beta0 and one branch per sample statement; deterministic for a fixed seed.
Trajectory simulate(const Declarations& decls, const Stmt& program, const BeliefState& beta0,
                    std::uint64_t seed, std::uint64_t max_steps, const ParamEnv& params);

}  // namespace pblimp
