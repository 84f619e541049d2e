#pragma once

#include <string>
#include <vector>

#include "workbench/jacobi.hpp"
#include "workbench/truncseries.hpp"

namespace wb {

// Finite model of an even graded cohomology ring with an integration
// functional, Chern classes of the tangent sheaf, and exceptional divisor
// classes with discrepancies. Ring elements are coefficient vectors over the
// monomial basis; structure constants are stored for i <= j and missing pairs
// mean the product is zero (e.g. classes meeting in degree above the top).
struct CohomologyModel {
    std::vector<std::string> basis;  // basis[0] is the unit
    std::vector<int> degree;         // even, degree[0] == 0
    std::map<std::pair<int, int>, std::vector<Rat>> products;
    int top = 0;                           // top degree 2d
    std::vector<Rat> integration;          // supported in the top degree
    std::vector<std::vector<Rat>> chern;   // c_1..c_d as basis vectors
    std::vector<std::vector<Rat>> divisors;
    std::vector<Rat> discrepancies;        // a_k, one per divisor

    int dim() const { return top / 2; }
    void validate() const;  // grading, unit, commutative storage, associativity

    std::vector<Rat> product(int i, int j) const {
        auto it = products.find(i <= j ? std::make_pair(i, j) : std::make_pair(j, i));
        if (it != products.end()) return it->second;
        return std::vector<Rat>(basis.size(), Rat(0));
    }
};

// Pi_l f(y_l) over the d = dim Chern roots y_l (c(TX) = prod (1 + y_l)),
// expanded through Newton's identities; f must be supplied to degree >= d.
std::vector<Rat> chern_root_product(const CohomologyModel& m, const TruncSeries<Rat>& f);

// Two-variable elliptic genus: integral of the product of per-root theta
// factors and per-divisor discrepancy factors, as a q-series with rational
// zeta-function coefficients. Crepant divisors (a_k = 0) contribute exactly 1.
// The lowest q-coefficient times zeta^{d/2} is the chi_{-zeta} genus.
JacobiSeries bl_genus(const CohomologyModel& m, int order);

// Hirzebruch chi_y genus from Chern data (independent specialization oracle);
// the y-convention makes projective space evaluate to 1 + y + ... + y^n.
FracPoly chi_y(const CohomologyModel& m);

// Built-in models used across tests and job documents.
CohomologyModel projective_space_model(int n);
CohomologyModel blowup_p2_model();  // Bl_pt P^2 with exceptional divisor, a = 1

}  // namespace wb
