#include "workbench/stringy.hpp"

#include <bit>

namespace wb {

void ResolutionModel::validate() const {
    if (static_cast<int>(discrepancies.size()) != num_divisors)
        throw input_error("discrepancy count does not match divisor count");
    for (const Rat& a : discrepancies)
        if (a <= -1)
            throw precondition_error("log-terminal violation: discrepancy " + rat_str(a) +
                                     " <= -1");
    if (num_divisors > 20) throw input_error("too many divisors");
    if (!strata.count(0)) throw input_error("missing ambient class [E_emptyset] = [X]");
}

std::map<unsigned, VirtualClass> open_strata(const ResolutionModel& m) {
    m.validate();
    unsigned full = (1u << m.num_divisors);
    if (m.strata_are_open) {
        std::map<unsigned, VirtualClass> out = m.strata;
        for (unsigned J = 0; J < full; ++J)
            if (!out.count(J)) out[J] = VirtualClass::zero();
        return out;
    }
    for (unsigned J = 0; J < full; ++J)
        if (!m.strata.count(J))
            throw input_error("missing closed stratum for subset mask " + std::to_string(J));
    std::map<unsigned, VirtualClass> out;
    for (unsigned J = 0; J < full; ++J) {
        VirtualClass acc;
        // sum over supersets of J
        unsigned rest = ~J & (full - 1);
        for (unsigned sub = rest;; sub = (sub - 1) & rest) {
            unsigned Jp = J | sub;
            int sign = (std::popcount(sub) % 2 == 0) ? 1 : -1;
            acc = acc + m.strata.at(Jp).scaled(sign);
            if (sub == 0) break;
        }
        out[J] = acc;
    }
    return out;
}

static SymbolicPoly stringy_impl(const AtomTable& table, const ResolutionModel& m) {
    m.validate();
    auto open = open_strata(m);
    unsigned full = (1u << m.num_divisors);
    FracPoly v = FracPoly::var();  // q (or t; the symbol is fixed per theory at print time)
    FracPoly one(Rat(1));
    SymbolicPoly total;
    for (unsigned J = 0; J < full; ++J) {
        SymbolicPoly p = SymbolicPoly::from_class(table, open.at(J));
        if (p.is_zero()) continue;
        RatFunc factor{Rat(1)};
        for (int j = 0; j < m.num_divisors; ++j) {
            if (!(J & (1u << j))) continue;
            const Rat& a = m.discrepancies[static_cast<size_t>(j)];
            // (v - 1) / (v^(a+1) - 1)
            factor *= RatFunc(v - one, FracPoly::monomial(a + 1, 1) - one);
        }
        total = total + p.scaled(factor);
    }
    return total;
}

SymbolicPoly stringy_poincare(const AtomTable& table, const ResolutionModel& m) {
    if (m.theory != Theory::Complex)
        throw precondition_error("stringy_poincare expects a complex-theory model");
    return stringy_impl(table, m);
}

SymbolicPoly stringy_real(const AtomTable& table, const ResolutionModel& m) {
    if (m.theory != Theory::RealF2)
        throw precondition_error("stringy_real expects a real-F2 model");
    return stringy_impl(table, m);
}

bool check_independence(const AtomTable& table, const ResolutionModel& m1,
                        const ResolutionModel& m2) {
    auto eval = [&table](const ResolutionModel& m) {
        return m.theory == Theory::Complex ? stringy_poincare(table, m)
                                           : stringy_real(table, m);
    };
    return eval(m1) == eval(m2);
}

}  // namespace wb
