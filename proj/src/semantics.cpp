#include "pblimp/semantics.hpp"

#include <deque>
#include <random>
#include <stdexcept>

#include "pblimp/pretty.hpp"

namespace pblimp {

const Rat& ParamEnv::lookup(const std::string& name) const {
  auto it = values_.find(name);
  if (it == values_.end()) throw UnboundParameter("parameter '" + name + "' is not bound");
  return it->second;
}

Rat threshold_bound(const Threshold& t, const ParamEnv& params) {
  if (const auto* r = std::get_if<Rat>(&t.bound)) return *r;
  return params.lookup(std::get<std::string>(t.bound));
}

Rat TerminalDist::terminated_mass() const {
  Rat total(0);
  for (const auto& [key, w] : entries) total += w;
  return total;
}

Rat TerminalBeliefDist::terminated_mass() const {
  Rat total(0);
  for (const auto& [key, w] : entries) total += w;
  return total;
}

TerminalBeliefDist marginal_over_beliefs(const TerminalDist& dist) {
  TerminalBeliefDist out;
  out.residual = dist.residual;
  for (const auto& [key, w] : dist.entries) out.entries[key.first] += w;
  return out;
}

namespace {

bool observable_guard_value(const Declarations& decls, const BeliefState& beta, const Prop& guard) {
  Rat v = prob(decls, beta, guard);
  if (v != Rat(0) && v != Rat(1)) {
    throw std::logic_error("guard '" + pretty_prop(guard) +
                           "' is not 0/1-valued on this belief state; program not well-typed?");
  }
  return v == Rat(1);
}

}  // namespace

std::vector<Configuration> step(const Declarations& decls, const Configuration& cfg,
                                const ParamEnv& params) {
  if (cfg.terminated()) throw std::logic_error("step on a terminated configuration");
  const StmtNode& n = cfg.continuation.node();
  std::vector<Configuration> out;

  if (std::holds_alternative<StmtSkip>(n.v)) {
    out.push_back({Stmt(), cfg.belief, cfg.truth, cfg.pathprob});
  } else if (std::holds_alternative<StmtDiverge>(n.v)) {
    // no successors
  } else if (const auto* a = std::get_if<StmtAssign>(&n.v)) {
    int idx = decls.index_of(a->target);
    Nat value = eval_expr(decls, cfg.truth, a->value);
    out.push_back({Stmt(), assign_update(decls, cfg.belief, a->target, a->value),
                   with_value(cfg.truth, static_cast<std::size_t>(idx), value), cfg.pathprob});
  } else if (const auto* sm = std::get_if<StmtSample>(&n.v)) {
    BeliefState next_belief = sample_update(decls, cfg.belief, sm->target, sm->spec);
    int idx = decls.index_of(sm->target);
    for (Nat c : sample_values(decls, sm->spec, cfg.truth)) {
      Rat q = sample_weight(decls, sm->spec, cfg.truth, c);
      out.push_back({Stmt(), next_belief, with_value(cfg.truth, static_cast<std::size_t>(idx), c),
                     cfg.pathprob * q});
    }
  } else if (const auto* ob = std::get_if<StmtObserve>(&n.v)) {
    if (!ob->target) throw std::logic_error("bare observe reached the engine; desugar first");
    int src = decls.index_of(ob->source);
    Nat c = cfg.truth.values[static_cast<std::size_t>(src)];
    // Thm. 1 guarantees the truth has positive belief mass here.
    BeliefState conditioned = condition(decls, cfg.belief, ob->source, c);
    int tgt = decls.index_of(*ob->target);
    out.push_back({Stmt(), set_var(decls, conditioned, *ob->target, c),
                   with_value(cfg.truth, static_cast<std::size_t>(tgt), c), cfg.pathprob});
  } else if (const auto* i = std::get_if<StmtIf>(&n.v)) {
    bool taken = observable_guard_value(decls, cfg.belief, i->guard);
    out.push_back({taken ? i->then_branch : i->else_branch, cfg.belief, cfg.truth, cfg.pathprob});
  } else if (const auto* w = std::get_if<StmtWhile>(&n.v)) {
    Stmt unrolled = Stmt::if_(w->guard, Stmt::seq(w->body, cfg.continuation), Stmt::skip());
    out.push_back({unrolled, cfg.belief, cfg.truth, cfg.pathprob});
  } else if (const auto* inf = std::get_if<StmtInfer>(&n.v)) {
    Rat v = prob(decls, cfg.belief, inf->condition);
    bool taken = cmp_holds(inf->threshold.op, v, threshold_bound(inf->threshold, params));
    out.push_back({taken ? inf->then_branch : inf->else_branch, cfg.belief, cfg.truth,
                   cfg.pathprob});
  } else {
    const auto& q = std::get<StmtSeq>(n.v);
    Configuration inner{q.first, cfg.belief, cfg.truth, Rat(1)};
    for (auto& succ : step(decls, inner, params)) {
      Stmt cont = succ.terminated() ? q.second : Stmt::seq(succ.continuation, q.second);
      out.push_back({cont, std::move(succ.belief), std::move(succ.truth),
                     cfg.pathprob * succ.pathprob});
    }
  }
  return out;
}

std::vector<AltConfiguration> step_alt(const Declarations& decls, const AltConfiguration& cfg,
                                       const ParamEnv& params) {
  if (cfg.terminated()) throw std::logic_error("step_alt on a terminated configuration");
  const StmtNode& n = cfg.continuation.node();
  std::vector<AltConfiguration> out;

  if (std::holds_alternative<StmtSkip>(n.v)) {
    out.push_back({Stmt(), cfg.belief, cfg.pathprob});
  } else if (std::holds_alternative<StmtDiverge>(n.v)) {
    // no successors
  } else if (const auto* a = std::get_if<StmtAssign>(&n.v)) {
    out.push_back({Stmt(), assign_update(decls, cfg.belief, a->target, a->value), cfg.pathprob});
  } else if (const auto* sm = std::get_if<StmtSample>(&n.v)) {
    out.push_back({Stmt(), sample_update(decls, cfg.belief, sm->target, sm->spec), cfg.pathprob});
  } else if (const auto* ob = std::get_if<StmtObserve>(&n.v)) {
    if (!ob->target) throw std::logic_error("bare observe reached the engine; desugar first");
    int src = decls.index_of(ob->source);
    std::vector<Nat> values;
    for (const auto& [sigma, w] : cfg.belief.support()) {
      values.push_back(sigma.values[static_cast<std::size_t>(src)]);
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (Nat c : values) {
      Rat q = prob(decls, cfg.belief,
                   Prop::compare(CmpOp::Eq, Expr::var(ob->source), Expr::constant(c)));
      BeliefState next = set_var(decls, condition(decls, cfg.belief, ob->source, c), *ob->target, c);
      out.push_back({Stmt(), std::move(next), cfg.pathprob * q});
    }
  } else if (const auto* i = std::get_if<StmtIf>(&n.v)) {
    bool taken = observable_guard_value(decls, cfg.belief, i->guard);
    out.push_back({taken ? i->then_branch : i->else_branch, cfg.belief, cfg.pathprob});
  } else if (const auto* w = std::get_if<StmtWhile>(&n.v)) {
    Stmt unrolled = Stmt::if_(w->guard, Stmt::seq(w->body, cfg.continuation), Stmt::skip());
    out.push_back({unrolled, cfg.belief, cfg.pathprob});
  } else if (const auto* inf = std::get_if<StmtInfer>(&n.v)) {
    Rat v = prob(decls, cfg.belief, inf->condition);
    bool taken = cmp_holds(inf->threshold.op, v, threshold_bound(inf->threshold, params));
    out.push_back({taken ? inf->then_branch : inf->else_branch, cfg.belief, cfg.pathprob});
  } else {
    const auto& q = std::get<StmtSeq>(n.v);
    AltConfiguration inner{q.first, cfg.belief, Rat(1)};
    for (auto& succ : step_alt(decls, inner, params)) {
      Stmt cont = succ.terminated() ? q.second : Stmt::seq(succ.continuation, q.second);
      out.push_back({cont, std::move(succ.belief), cfg.pathprob * succ.pathprob});
    }
  }
  return out;
}

TerminalDist explore(const Declarations& decls, const Stmt& program, const BeliefState& beta0,
                     const Assignment& sigma0, unsigned fuel, const ParamEnv& params,
                     ExploreOrder order) {
  if (beta0.probability_of(sigma0) == 0) {
    throw std::invalid_argument("explore: initial truth is not possible within the belief state");
  }
  TerminalDist result;
  std::deque<Configuration> frontier;
  frontier.push_back({unroll_loops(program, fuel), beta0, sigma0, Rat(1)});
  while (!frontier.empty()) {
    Configuration cfg = order == ExploreOrder::DepthFirst ? std::move(frontier.back())
                                                          : std::move(frontier.front());
    if (order == ExploreOrder::DepthFirst) {
      frontier.pop_back();
    } else {
      frontier.pop_front();
    }
    if (cfg.terminated()) {
      result.entries[{cfg.belief, cfg.truth}] += cfg.pathprob;
      continue;
    }
    auto succs = step(decls, cfg, params);
    if (succs.empty()) {
      result.residual += cfg.pathprob;  // diverge: mass beyond the fuel bound
      continue;
    }
    for (auto& s : succs) frontier.push_back(std::move(s));
  }
  return result;
}

TerminalDist exec_from_belief(const Declarations& decls, const Stmt& program,
                              const BeliefState& beta0, unsigned fuel, const ParamEnv& params) {
  TerminalDist total;
  for (const auto& [sigma, w] : beta0.support()) {
    TerminalDist part = explore(decls, program, beta0, sigma, fuel, params);
    for (const auto& [key, p] : part.entries) total.entries[key] += w * p;
    total.residual += w * part.residual;
  }
  return total;
}

TerminalBeliefDist exec_alt(const Declarations& decls, const Stmt& program,
                            const BeliefState& beta0, unsigned fuel, const ParamEnv& params,
                            ExploreOrder order) {
  TerminalBeliefDist result;
  std::deque<AltConfiguration> frontier;
  frontier.push_back({unroll_loops(program, fuel), beta0, Rat(1)});
  while (!frontier.empty()) {
    AltConfiguration cfg = order == ExploreOrder::DepthFirst ? std::move(frontier.back())
                                                             : std::move(frontier.front());
    if (order == ExploreOrder::DepthFirst) {
      frontier.pop_back();
    } else {
      frontier.pop_front();
    }
    if (cfg.terminated()) {
      result.entries[cfg.belief] += cfg.pathprob;
      continue;
    }
    auto succs = step_alt(decls, cfg, params);
    if (succs.empty()) {
      result.residual += cfg.pathprob;
      continue;
    }
    for (auto& s : succs) frontier.push_back(std::move(s));
  }
  return result;
}

Trajectory simulate(const Declarations& decls, const Stmt& program, const BeliefState& beta0,
                    std::uint64_t seed, std::uint64_t max_steps, const ParamEnv& params) {
  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
  };
  auto pick_weighted = [&](const std::vector<Rat>& weights) {
    double u = uniform();
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      acc += rat_to_double(weights[i]);
      if (u < acc) return i;
    }
    return weights.size() - 1;
  };

  std::vector<Rat> init_weights;
  std::vector<Assignment> init_sigmas;
  for (const auto& [sigma, w] : beta0.support()) {
    init_sigmas.push_back(sigma);
    init_weights.push_back(w);
  }
  Configuration cfg{program, beta0, init_sigmas[pick_weighted(init_weights)], Rat(1)};

  Trajectory traj;
  while (traj.steps < max_steps) {
    if (cfg.terminated()) {
      traj.terminated = true;
      break;
    }
    cfg.pathprob = Rat(1);
    auto succs = step(decls, cfg, params);
    if (succs.empty()) break;  // diverge
    std::size_t chosen = 0;
    if (succs.size() > 1) {
      std::vector<Rat> weights;
      weights.reserve(succs.size());
      for (const auto& s : succs) weights.push_back(s.pathprob);
      chosen = pick_weighted(weights);
    }
    cfg = std::move(succs[chosen]);
    ++traj.steps;
  }
  if (cfg.terminated()) traj.terminated = true;
  traj.belief = std::move(cfg.belief);
  traj.truth = std::move(cfg.truth);
  return traj;
}

}  // namespace pblimp
