#pragma once

#include <map>
#include <set>

#include "workbench/grothendieck.hpp"

namespace wb {

// Resolution data for a log-terminal space: exceptional divisors indexed
// 0..m-1 with rational discrepancies, and stratum classes indexed by divisor
// subsets (bitmask). Either closed strata [E_J] for every J, or open strata
// [E_J^0] directly. J = 0 is the ambient resolution class [X].
struct ResolutionModel {
    Theory theory = Theory::Complex;
    int num_divisors = 0;
    std::vector<Rat> discrepancies;            // a_j, one per divisor
    std::map<unsigned, VirtualClass> strata;   // closed or open, per bitmask
    bool strata_are_open = false;

    void validate() const;
};

// Mobius inversion: [E_J^0] = sum_{J' >= J} (-1)^{|J'\J|} [E_J'].
std::map<unsigned, VirtualClass> open_strata(const ResolutionModel& m);

// sum_J p(E_J^0) prod_{j in J} (v-1)/(v^(a_j+1)-1), v = q or t by theory.
// Symbolic atoms stay formal; for fully numeric models the result is a plain
// RatFunc (SymbolicPoly::plain()).
SymbolicPoly stringy_poincare(const AtomTable& table, const ResolutionModel& m);

// Real F2 variant: same formula with real_vb classes and variable t.
SymbolicPoly stringy_real(const AtomTable& table, const ResolutionModel& m);

// Canonical-form equality of stringy functions of two models.
bool check_independence(const AtomTable& table, const ResolutionModel& m1,
                        const ResolutionModel& m2);

}  // namespace wb
