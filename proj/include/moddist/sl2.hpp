#pragma once

#include <vector>

#include "moddist/gl2.hpp"

namespace moddist {

// Restriction invariants of a dihedral supercuspidal of the extension
// group.  Y is the twist-isomorphism set (characters eta of E^x with
// pi (x) eta.det isomorphic to pi), Y_plus its subset of characters
// trivial on F^x.  lg and lg_plus are the lengths of the restrictions to
// SL2(E) and to the index-two subgroup of matrices whose determinant is a
// base element times a square; both equal the cardinality of the matching
// twist set.  S_phi_order is the centralizer order of the projectivized
// parameter, computed independently and always equal to lg.
struct RestrictionProfile {
    std::vector<SmoothCharacter> Y;
    std::vector<SmoothCharacter> Y_plus;
    int lg = 0;
    int lg_plus = 0;
    int S_phi_order = 0;
};

// Principal series I(chi) of SL2(E), parabolically induced from a smooth
// character chi of the diagonal torus E^x.
struct SL2PrincipalSeries {
    const LocalFieldContext* ctx = nullptr;
    SmoothCharacter chi;
};

// Y, Y_plus and both lengths for a dihedral supercuspidal, by brute-force
// twist isomorphism over the quadratic characters of E^x; the centralizer
// order is computed by the projective-centralizer route and a mismatch
// with |Y| is a logic error.  Only odd residue characteristic is
// supported: the quadratic characters must all be tame for the enumerated
// pool to be complete.
RestrictionProfile restriction_profile(const GL2Rep& pi);

// the characters chi of F^x with Hom_{GL2(F)}(pi, chi o det) nonzero,
// collected over the tame pool with uniformizer order dividing 16.  For
// supercuspidal inputs every member satisfies chi^2 in {1, omega}, so the
// pool is exhaustive there.
std::vector<SmoothCharacter> X_set(const GL2Rep& pi);

// dimension of the SL2(F)-invariant functional space on a distinguished
// component of pi restricted to SL2(E), computed as lg_plus^2 / lg and
// checked against the odd-residue case table {(2,2) -> 2, (2,4) -> 1}.
// When assume_component_distinguished is false the precondition
// |X(pi)| >= 1 is verified first; "not-distinguished" otherwise, and also
// whenever the length pair is incompatible with a distinguished component.
int sl2_supercuspidal_multiplicity(const GL2Rep& pi, bool assume_component_distinguished);

// distinction of I(chi) by SL2(F).  Existence is the closed-orbit
// criterion: chi trivial on F^x or on the norm-one subgroup.  The
// multiplicity is the case-table value for the named component (see the
// rationale string); it is left unset in the regimes the decision table
// does not determine.
DistinctionReport sl2_principal_distinguished(const SL2PrincipalSeries& I);

} // namespace moddist
