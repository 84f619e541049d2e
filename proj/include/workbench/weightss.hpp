#pragma once

#include <map>
#include <utility>
#include <vector>

#include "workbench/fracpoly.hpp"
#include "workbench/linalg.hpp"

namespace wb {

// Input for the weight spectral sequence of U = X - D, with X smooth compact
// and D a simple normal crossings divisor with m components. Column i holds
// the disjoint i-fold intersections X^(i) (X^(0) = X); d1 is the signed
// alternating restriction sum H^j(X^(i)) -> H^j(X^(i+1)).
struct SNCData {
    LinField field;
    int m = 0;                            // number of divisor components
    std::vector<std::vector<int>> betti;  // betti[i][j] = dim H^j(X^(i)), i = 0..m
    std::map<std::pair<int, int>, Matrix> d1;  // (i,j) -> matrix, absent = zero map

    int b(int i, int j) const {
        if (i < 0 || i >= static_cast<int>(betti.size())) return 0;
        if (j < 0 || j >= static_cast<int>(betti[i].size())) return 0;
        return betti[i][j];
    }
};

// Page tower of a cohomological spectral sequence with d_r of bidegree
// (r, 1-r). SNC mode populates pages 1 and 2; filtered-complex mode runs the
// tower to stabilization and records E_infinity and the total cohomology.
struct SpectralSequence {
    LinField field;
    std::map<int, std::map<std::pair<int, int>, int>> pages;  // r -> (i,j) -> dim
    std::map<std::pair<int, int>, Matrix> d1;                 // SNC mode only
    int last_page = 1;
    bool stabilized = false;
    std::vector<int> total_cohomology;  // filtered mode: dim H^n of the total complex

    int dim(int r, int i, int j) const {
        auto pg = pages.find(r);
        if (pg == pages.end()) return 0;
        auto it = pg->second.find({i, j});
        return it == pg->second.end() ? 0 : it->second;
    }
    const std::map<std::pair<int, int>, int>& page(int r) const {
        auto pg = pages.find(r);
        if (pg == pages.end()) throw precondition_error("page not computed");
        return pg->second;
    }
};

// Cochain complex over k with a finite decreasing filtration, described in a
// filtered basis: level[n][b] is the filtration level of basis vector b of
// C^n, and F^p C^n is spanned by the vectors of level >= p.
struct FilteredComplex {
    LinField field;
    std::vector<int> dims;                 // dim C^n, n = 0..N
    std::vector<Matrix> d;                 // d[n] : C^n -> C^{n+1}, size N
    std::vector<std::vector<int>> level;   // level[n][b] in [0, depth]

    int degrees() const { return static_cast<int>(dims.size()); }
    int depth() const;
    void validate() const;
};

SpectralSequence build_e1(const SNCData& s);
SpectralSequence compute_e2(SpectralSequence ss);
SpectralSequence pages(const FilteredComplex& fc);

// Graded pieces of the weight filtration on H^n_c: the nonzero dims of
// E^{i,j} with i+j = n on the deepest computed page, in increasing i.
std::vector<int> weight_graded(const SpectralSequence& ss, int n);

// SNC data for the torus U = G_m^n inside X = (P^1)^n with the 2n coordinate
// divisors; restriction matrices come from the Kunneth cell basis.
SNCData toric_builder(int n, const LinField& field = LinField{});

// The same geometry as an honest filtered complex: the total complex of the
// cellular double complex (columns = intersection multiplicity), so higher
// differentials are genuinely computed rather than assumed.
FilteredComplex toric_filtered_complex(int n, const LinField& field = LinField{});

// Sum (-1)^{i+j} dim E_2^{i,j} q^{j/2}; rational coefficients required.
FracPoly vpp_from_ss(const SpectralSequence& ss);

}  // namespace wb
