#pragma once

#include "oal/mdp.hpp"

namespace oal {

// An MDP paired with the demonstrating expert policy.
struct EnvBundle {
  TabularMdp mdp;
  StochasticPolicy expert;
};

// Two-state chain of the given horizon. From the start state, action 0 stays
// put with probability 1 - alpha and slips to the absorbing bad state with
// probability alpha; action 1 jumps there outright. The expert always plays
// action 0, so its state occupancy decays geometrically: (1-alpha)^h at step h.
EnvBundle stochastic_chain(int horizon, double alpha);

// Fifty start states, two steps. Action 0 funnels every state to state 0;
// action 1 stays put. Uniform initial distribution; the expert always plays
// action 0. Behavioral cloning fails exactly at the starts absent from the
// demonstration set.
EnvBundle fifty_start_mdp();

}  // namespace oal
