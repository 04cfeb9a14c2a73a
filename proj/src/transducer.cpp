#include "regseq/transducer.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <numeric>
#include <queue>

namespace regseq::transducer {

std::vector<std::string> validate(const Transducer& t) {
    std::vector<std::string> bad;
    if (t.q < 2) bad.push_back("radix q must be >= 2");
    if (t.states < 1) bad.push_back("at least one state required");
    if (int(t.transitions.size()) != t.states)
        bad.push_back("transition table must have one row per state");
    for (size_t j = 0; j < t.transitions.size(); ++j) {
        if (int(t.transitions[j].size()) != t.q) {
            bad.push_back("state " + std::to_string(j) + " must have exactly one transition per digit");
            continue;
        }
        for (int r = 0; r < t.q; ++r) {
            int tgt = t.transitions[j][r].target;
            if (tgt < 0 || tgt >= t.states)
                bad.push_back("state " + std::to_string(j) + ", digit " + std::to_string(r) +
                              ": target out of range");
        }
    }
    if (int(t.final_output.size()) != t.states)
        bad.push_back("every state needs a final output");
    return bad;
}

GRational run_from(const Transducer& t, int state, std::uint64_t n) {
    GRational total;
    int cur = state;
    for (int r : digits(n, t.q)) {
        const Transition& tr = t.at(cur, r);
        total += tr.output;
        cur = tr.target;
    }
    return total + t.final_output[cur];
}

GRational run(const Transducer& t, std::uint64_t n) { return run_from(t, 0, n); }

LinearRepresentation to_linear_representation(const Transducer& t) {
    const int d = t.states;
    std::vector<QMat> mats;
    for (int r = 0; r < t.q; ++r) {
        QMat A(d + 2, d + 2);
        for (int j = 0; j < d; ++j) {
            const Transition& tr = t.at(j, r);
            A(j, tr.target) += GRational{1};
            A(j, d) = tr.output;
            if (r == 0) {
                // correction restoring T_j(0) = T_j(q*0 + 0)
                A(j, d + 1) =
                    t.final_output[j] - t.final_output[t.at(j, 0).target] - t.at(j, 0).output;
            }
        }
        A(d, d) = GRational{1};
        if (r == 0) A(d + 1, d + 1) = GRational{1};
        mats.push_back(std::move(A));
    }
    QVec v0(d + 2);
    for (int j = 0; j < d; ++j) v0[j] = t.final_output[j];  // T_j(0)
    v0[d] = GRational{1};
    v0[d + 1] = GRational{1};  // [n=0]
    return make_representation(t.q, std::move(mats), std::move(v0));
}

namespace {

// Tarjan strongly connected components, iterative.
std::vector<int> tarjan_scc(int n, const std::vector<std::vector<int>>& adj, int& count) {
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    int next_index = 0;
    count = 0;

    struct Frame {
        int v;
        size_t edge;
    };
    for (int root = 0; root < n; ++root) {
        if (index[root] >= 0) continue;
        std::vector<Frame> call{{root, 0}};
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            auto& [v, edge] = call.back();
            if (edge < adj[v].size()) {
                int w = adj[v][edge++];
                if (index[w] < 0) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
            } else {
                if (low[v] == index[v]) {
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp[w] = count;
                        if (w == v) break;
                    }
                    ++count;
                }
                call.pop_back();
                if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            }
        }
    }
    return comp;
}

}  // namespace

GraphReport graph_analysis(const Transducer& t) {
    const int n = t.states;
    std::vector<std::vector<int>> adj(n);
    for (int j = 0; j < n; ++j)
        for (int r = 0; r < t.q; ++r) adj[j].push_back(t.at(j, r).target);

    GraphReport report;
    int count = 0;
    report.component_of = tarjan_scc(n, adj, count);
    report.components.resize(count);
    for (int v = 0; v < n; ++v) report.components[report.component_of[v]].members.push_back(v);

    for (int c = 0; c < count; ++c) report.components[c].is_final = true;
    for (int v = 0; v < n; ++v)
        for (int w : adj[v])
            if (report.component_of[w] != report.component_of[v])
                report.components[report.component_of[v]].is_final = false;

    // Period: gcd over intra-component arcs u->w of level(u) + 1 - level(w)
    // from a BFS layering rooted inside the component.
    for (int c = 0; c < count; ++c) {
        auto& comp = report.components[c];
        bool has_intra_arc = false;
        std::vector<int> level(n, -1);
        std::queue<int> bfs;
        int root = comp.members.front();
        level[root] = 0;
        bfs.push(root);
        int g = 0;
        while (!bfs.empty()) {
            int u = bfs.front();
            bfs.pop();
            for (int w : adj[u]) {
                if (report.component_of[w] != c) continue;
                has_intra_arc = true;
                if (level[w] < 0) {
                    level[w] = level[u] + 1;
                    bfs.push(w);
                } else {
                    g = std::gcd(g, std::abs(level[u] + 1 - level[w]));
                }
            }
        }
        comp.period = has_intra_arc ? (g == 0 ? 0 : g) : 0;
        // a strongly connected component with more than one vertex, or a
        // self-loop, always closes a cycle, so g > 0 there
        if (has_intra_arc && g == 0) comp.period = 1;
    }

    long long p = 1;
    for (const auto& comp : report.components)
        if (comp.is_final && comp.period > 0) p = std::lcm(p, (long long)comp.period);
    report.final_period = int(p);
    return report;
}

CMat adjacency_matrix(const Transducer& t) {
    CMat m = CMat::Zero(t.states, t.states);
    for (int j = 0; j < t.states; ++j)
        for (int r = 0; r < t.q; ++r) m(j, t.at(j, r).target) += 1.0;
    return m;
}

SpectrumCheck adjacency_spectrum_check(const Transducer& t, const GraphReport& report,
                                       double tol) {
    SpectrumCheck out;
    CMat m = adjacency_matrix(t);
    Eigen::ComplexEigenSolver<CMat> es(m, false);
    const double q = double(t.q);
    const int p = report.final_period;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        cplx lambda = es.eigenvalues()(i);
        if (std::abs(lambda) < q - tol) continue;
        if (std::abs(lambda) > q + tol) {
            out.ok = false;
            out.violations.push_back("eigenvalue of modulus above q found");
            continue;
        }
        out.modulus_q_eigenvalues.push_back(lambda);
        // lambda should equal q * zeta for a p-th root of unity zeta
        cplx zeta = lambda / q;
        cplx zp = std::pow(zeta, p);
        if (std::abs(zp - 1.0) > 10 * tol) {
            out.ok = false;
            out.violations.push_back("modulus-q eigenvalue is not q times a p-th root of unity");
        }
        // semisimple: nullity of (M - lambda I) equals algebraic multiplicity
        int algebraic = 0;
        for (int jj = 0; jj < es.eigenvalues().size(); ++jj)
            if (std::abs(es.eigenvalues()(jj) - lambda) <= tol * q) ++algebraic;
        Eigen::JacobiSVD<CMat> svd(m - lambda * CMat::Identity(t.states, t.states));
        int rank = 0;
        for (int jj = 0; jj < svd.singularValues().size(); ++jj)
            if (svd.singularValues()(jj) > tol * q) ++rank;
        int nullity = t.states - rank;
        if (nullity != algebraic) {
            out.ok = false;
            out.violations.push_back("modulus-q eigenvalue has a nontrivial Jordan block");
        }
    }
    return out;
}

Transducer identity_transducer() {
    Transducer t;
    t.q = 2;
    t.states = 1;
    t.transitions = {{Transition{0, GRational{0}}, Transition{0, GRational{1}}}};
    t.final_output = {GRational{0}};
    return t;
}

Transducer random_transducer(std::uint64_t seed, int q, int max_states) {
    // splitmix64 steps; deterministic across platforms
    auto next = [&seed]() {
        seed += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = seed;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    Transducer t;
    t.q = q;
    t.states = 1 + int(next() % std::uint64_t(max_states));
    t.transitions.resize(t.states);
    for (int j = 0; j < t.states; ++j) {
        t.transitions[j].resize(q);
        for (int r = 0; r < q; ++r) {
            t.transitions[j][r].target = int(next() % std::uint64_t(t.states));
            long num = long(next() % 7) - 3;
            long den = 1 + long(next() % 3);
            t.transitions[j][r].output = GRational{make_rational(num, den)};
        }
    }
    t.final_output.resize(t.states);
    for (int j = 0; j < t.states; ++j) {
        long num = long(next() % 5) - 2;
        t.final_output[j] = GRational{make_rational(num, 1)};
    }
    return t;
}

}  // namespace regseq::transducer
