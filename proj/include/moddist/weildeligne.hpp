#pragma once

#include <memory>
#include <optional>
#include <string>

#include "moddist/gl2.hpp"
#include "moddist/linalg.hpp"
#include "moddist/weilrep.hpp"

namespace moddist {

// the value field a Weil-Deligne pair over phi computes in: large enough
// for phi's character values, both norm characters, and the sign -1
std::shared_ptr<const FqContext> wd_value_field(const WeilRep2& phi);

// entries reduced from integers into F (the usual N matrices are integral)
Mat2 mat2_from_ints(const FqContext* F, long long a, long long b, long long c,
                    long long d);

// nilpotency of a 2x2 matrix: N^2 = 0, i.e. tr N = 0 and det N = 0
bool is_nilpotent(const Mat2& N);

// the equivariance law  phi(w) N = nu(w) N phi(w)  on the generators of
// phi's group, with nu the norm character of the field phi represents
bool validate(const WeilRep2& phi, const Mat2& N);

// A Weil-Deligne representation (phi, N): a two-dimensional semisimple phi
// together with a matrix N over wd_value_field(phi) satisfying the
// equivariance law.  Pairs failing it cannot be constructed.
class WeilDeligneRep {
public:
    // throws std::invalid_argument ("wrong-domain") when N lives over
    // another field, ("not-equivariant") when the law fails
    WeilDeligneRep(WeilRep2 phi, Mat2 N);

    const WeilRep2& phi() const { return phi_; }
    const Mat2& N() const { return n_; }
    const std::shared_ptr<const FqContext>& fq() const { return fq_; }

    // det phi trivial and tr N = 0
    bool sl2_type() const;
    bool nilpotent_N() const { return is_nilpotent(n_); }

    std::string describe() const;

private:
    WeilRep2 phi_;
    Mat2 n_;
    std::shared_ptr<const FqContext> fq_;
};

bool validate(const WeilDeligneRep& rep);

// One class of the rescaling equivalence: indecomposable summands matched
// up to isomorphism with N rescaled by any nonzero scalar.  The canonical
// representative sorts sum components (conjugating N along) and replaces N
// by the normal form of its case:
//   zero; E12/E21 for a one-slot nilpotent; diag(1,0)/diag(0,1) for a
//   semisimple rank-one; diag(1,-1) for an invertible semisimple;
//   antidiag(1,1) when both off-diagonal slots carry; [[1,1],[0,1]] for an
//   invertible non-semisimple; a first-entry-normalized solution on an
//   irreducible phi.
// Class equality is structural equality of the representative.
class WDEquivClass {
public:
    const WeilDeligneRep& rep() const { return rep_; }
    const std::string& key() const { return key_; }

    friend bool operator==(const WDEquivClass& a, const WDEquivClass& b) {
        return a.key_ == b.key_;
    }
    friend bool operator!=(const WDEquivClass& a, const WDEquivClass& b) {
        return !(a == b);
    }

private:
    WDEquivClass(WeilDeligneRep rep, std::string key);

    WeilDeligneRep rep_;
    std::string key_;

    friend WDEquivClass canonicalize(const WeilDeligneRep& rep);
};

WDEquivClass canonicalize(const WeilDeligneRep& rep);

// whether two pairs are equivalent under the rescaling relation; inputs
// must represent one group (same context and side, induced pairs on one
// tower), "wrong-domain" otherwise
bool equivalent(const WeilDeligneRep& a, const WeilDeligneRep& b);

// The injection of the nilpotent SL2-type pairs into the classes: the
// Steinberg-point pair (psi + psi, one-slot nilpotent) at q_E = 1 mod ell
// and the special-point pair (psi + psi nu, 0) at q_E = -1 mod ell move to
// the class of (phi, antidiag(1,1)); everything else keeps its own class.
// Throws std::invalid_argument ("not-nilpotent", "not-SL2").
WDEquivClass P_inject(const WeilDeligneRep& psi);

// The parameter of an irreducible generic representation with trivial
// central character.  The convention fixes the square root of nu entering
// the two reducible-point rows; N sits in the slot the equivariance law
// admits for the stored component order.  Throws std::invalid_argument
// ("not-generic" on reducible input, "nontrivial-central-character",
// "primitive-marker").
WeilDeligneRep PV(const GL2Rep& pi,
                  NuHalfConvention conv = NuHalfConvention::EvenNumerator);

// Verdict of the case-by-case lifting criteria for a class over the
// extension side, with a description of the witness shape (or of the
// obstruction).  Cases: N = 0 by the semisimple criterion; one-slot
// nilpotent, invertible-at-the-special-point, and repeated-component
// semisimple N by the congruence criteria; irreducible phi by the
// symplectic duality sign.  Throws std::invalid_argument
// ("out-of-case-table") on classes outside the table.
struct LiftVerdict {
    bool exists = false;
    std::string witness;
};

LiftVerdict lift_exists_closed_form(const WDEquivClass& cls);

// Enumeration bounds for the brute-force lift search: characters of the
// base field (split candidates) and of the extension (induced candidates)
// up to the stated conductor and uniformizer-value order.
struct LiftSearchBounds {
    int max_conductor = 1;
    long long max_unif_order = 8;
};

// Independent oracle: enumerate semisimple candidates over the base field,
// solve the equivariance law for N, and test class equality of the
// restriction.  Returns a base-side witness or nothing; sound and complete
// relative to the bounds.  Throws std::invalid_argument
// ("bound-too-large") when the bounds leave the tabulated ranges.
std::optional<WeilDeligneRep> lift_search(const WDEquivClass& cls,
                                          const LiftSearchBounds& bounds);

} // namespace moddist
