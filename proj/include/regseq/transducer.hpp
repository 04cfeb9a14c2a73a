#pragma once

// Complete deterministic subsequential transducers over the digit alphabet
// {0,...,q-1} with complex-rational output labels, read least significant
// digit first. (Many transducer toolkits read most significant digit first;
// the recursion T_j(qn+r) = T_{t(j,r)}(n) + o(j,r) dictates LSD-first here.)

#include <cstdint>
#include <string>
#include <vector>

#include "regseq/linrep.hpp"
#include "regseq/numeric.hpp"

namespace regseq::transducer {

struct Transition {
    int target = 0;    // 0-based state index
    GRational output;  // output label
};

struct Transducer {
    int q = 2;
    int states = 1;                                    // initial state is 0
    std::vector<std::vector<Transition>> transitions;  // [state][digit]
    std::vector<GRational> final_output;               // per state

    const Transition& at(int state, int digit) const { return transitions[state][digit]; }
};

std::vector<std::string> validate(const Transducer& t);

/// T(n): sum of outputs along the digit path from the initial state plus the
/// final output of the terminal state; T(0) is the initial state's final
/// output.
GRational run(const Transducer& t, std::uint64_t n);
GRational run_from(const Transducer& t, int state, std::uint64_t n);

/// Embedding into a sequence-mode q-linear representation of dimension d+2
/// with state vector (T_1(n),...,T_d(n), 1, [n=0]).
LinearRepresentation to_linear_representation(const Transducer& t);

struct ComponentInfo {
    std::vector<int> members;
    bool is_final = false;
    int period = 0;  // gcd of cycle lengths, 0 for trivial acyclic components
};

struct GraphReport {
    std::vector<ComponentInfo> components;
    std::vector<int> component_of;  // state -> component index
    int final_period = 1;           // lcm of final-component periods
};

/// Strongly connected components of the underlying digraph, final-component
/// flags, per-component periods from BFS layering, and the final period p.
GraphReport graph_analysis(const Transducer& t);

/// Adjacency matrix M of the underlying digraph (entry (j,k) counts digits
/// leading from state j to state k).
CMat adjacency_matrix(const Transducer& t);

struct SpectrumCheck {
    bool ok = true;
    std::vector<std::string> violations;
    std::vector<cplx> modulus_q_eigenvalues;
};

/// Checks that every eigenvalue of M of modulus q is q times a p-th root of
/// unity and semisimple there, and other eigenvalues are strictly smaller.
SpectrumCheck adjacency_spectrum_check(const Transducer& t, const GraphReport& report,
                                       double tol = 1e-6);

/// Identity transducer on q = 2: one state, outputs the digit it reads.
Transducer identity_transducer();

/// Deterministic pseudorandom transducer with small rational outputs.
Transducer random_transducer(std::uint64_t seed, int q, int max_states);

}  // namespace regseq::transducer
