#pragma once

#include <array>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qfix/quasifix.hpp"

namespace qfix {

// Psi_i(a) = phi(a)[i] for a constant-length phi.
std::vector<LetterMap> column_letter_maps(const Substitution& phi);

// F_{phi,m}: all Psi_{i_{m-1}} o ... o Psi_{i_0}, as a set of functions.
using ColumnFamily = std::set<LetterMap>;
ColumnFamily column_maps(const Substitution& phi, unsigned m);
// F_{psi,1} read straight from the images of psi.
ColumnFamily first_column_family(const Substitution& psi);

// Least n >= 1 with F_{phi,2n} = F_{phi,n}; then phi^n is column-constant.
unsigned column_constant_power(const Substitution& phi);
// F_{phi^n,1} = F_{phi^n,2}, computed from powers of phi.
bool is_column_constant(const Substitution& phi);

// Two-sided DFAO. A state stands for a sequence (u_n)_{n in Z}; digit d
// leads to the state of n -> u_{kn+d}. obs = (u_{-1}, u_0).
struct KernelAutomaton {
    unsigned base = 2;
    Alphabet output;
    std::vector<std::array<Letter, 2>> obs;
    std::vector<std::vector<std::size_t>> next;
    std::size_t root = 0;
    std::size_t raw_states = 0;  // before minimization, for diagnostics

    std::size_t size() const { return obs.size(); }
};

KernelAutomaton build_kernel_automaton(const Substitution& phi, const Qfp& q, const Coding* tau = nullptr);
// Moore partition refinement; states renumbered breadth-first from the root.
KernelAutomaton minimize(const KernelAutomaton& a);
std::size_t kernel_size(const KernelAutomaton& a);

Letter eval(const KernelAutomaton& a, std::int64_t n);
Window eval_window(const KernelAutomaton& a, std::int64_t lo, std::int64_t hi);
bool equal_sequences(const KernelAutomaton& a, const KernelAutomaton& b);

// States reachable from the root by words of at most `depth` digits.
std::size_t reachable_within(const KernelAutomaton& a, unsigned depth);

// One-sided views: (u_n)_{n>=0}, or (u_{-1-n})_{n>=0} for the negative side.
// Both components of obs carry the same letter; eval works for n >= 0.
KernelAutomaton one_sided_view(const KernelAutomaton& a, bool negative_side);

std::string export_text(const KernelAutomaton& a);
std::string export_dot(const KernelAutomaton& a);
KernelAutomaton import_text(std::string_view text);

}  // namespace qfix
