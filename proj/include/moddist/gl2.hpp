#pragma once

#include <memory>
#include <optional>
#include <string>

#include "moddist/characters.hpp"
#include "moddist/localfield.hpp"
#include "moddist/weilrep.hpp"

namespace moddist {

enum class GL2Class {
    PrincipalSeries,
    Steinberg,
    Special,
    DihedralSupercuspidal,
    PrimitiveSupercuspidal,
};

std::string to_string(GL2Class c);

// A smooth representation of GL2 over the extension field, named by its
// inducing data.  Steinberg exists only when q_E is not -1 mod ell (there
// the generic subquotient is Special instead), Special only when it is.
// Dihedral supercuspidals carry the tower K/E and a regular character
// theta of K^x; primitive supercuspidals are opaque markers with no
// computable model.
class GL2Rep {
public:
    static GL2Rep principal_series(const LocalFieldContext& ctx, SmoothCharacter chi1,
                                   SmoothCharacter chi2);
    static GL2Rep steinberg(const LocalFieldContext& ctx, SmoothCharacter chi);
    static GL2Rep special(const LocalFieldContext& ctx, SmoothCharacter chi);
    static GL2Rep dihedral_supercuspidal(std::shared_ptr<const WeilTower> tower,
                                         SmoothCharacter theta);
    static GL2Rep primitive_supercuspidal(const LocalFieldContext& ctx, std::string marker);

    GL2Class cls() const { return cls_; }
    const LocalFieldContext& ctx() const { return *ctx_; }
    bool is_supercuspidal() const;
    // false exactly for principal series whose character ratio is nu^{+-1}
    bool is_irreducible() const { return irreducible_; }

    const SmoothCharacter& chi1() const { return chi1_; }
    const SmoothCharacter& chi2() const { return chi2_; }
    // the single character of a Steinberg or Special representation
    const SmoothCharacter& chi() const { return chi1_; }
    const SmoothCharacter& theta() const { return chi1_; }
    const std::shared_ptr<const WeilTower>& tower() const { return tower_; }
    // the induced Weil parameter of a dihedral supercuspidal; throws
    // std::logic_error for the other classes
    const WeilRep2& parameter() const;
    const std::string& marker() const { return marker_; }

    // chi1*chi2 for principal series, chi^2 for Steinberg and Special, the
    // parameter determinant for dihedral supercuspidals (on the reduced
    // model its tower can see); "primitive-marker" otherwise
    SmoothCharacter central_character() const;
    bool central_trivial_on_F() const;
    // trivial central character on all of E^x, the PGL2 objects
    bool pgl2_type() const;

    // tensor by eta o det for a character eta of E^x
    GL2Rep twist(const SmoothCharacter& eta) const;

    std::string str() const;

private:
    GL2Rep() = default;

    GL2Class cls_ = GL2Class::PrincipalSeries;
    const LocalFieldContext* ctx_ = nullptr;
    bool irreducible_ = true;
    SmoothCharacter chi1_; // PS: first character; St/Sp: chi; dihedral: theta
    SmoothCharacter chi2_; // PS only
    std::shared_ptr<const WeilTower> tower_;
    std::optional<WeilRep2> param_; // dihedral only
    std::string marker_;
};

// Outcome of one distinction decision.  multiplicity is the dimension of
// the invariant-functional space when the sources pin it down.
struct DistinctionReport {
    bool distinguished = false;
    std::optional<int> multiplicity;
    std::string rationale;
};

// Hom_{GL2(F)}(pi, 1) != 0, decided by the closed criteria per class:
// principal series by the two-orbit criterion, Steinberg and Special by
// the congruence branches of q_E and q_F, dihedral supercuspidals by the
// duality sign of their parameter.
DistinctionReport gl2F_distinction(const GL2Rep& pi);

// Hom_{GL2(F)}(pi, chiF o det) != 0, via gl2F_distinction of the twist of
// pi by the inverse of an extension of chiF to E^x
DistinctionReport chi_distinction(const GL2Rep& pi, const SmoothCharacter& chiF);

// a character of E^x units restricting to chiF on F^x units, first in the
// deterministic enumeration; throws std::invalid_argument
// ("extension-not-found-at-depth") when the truncated model has none
SmoothCharacter extend_to_E(const LocalFieldContext& ctx, const SmoothCharacter& chiF);

// contragredient isomorphic to the sigma-conjugate
bool is_sigma_selfdual(const GL2Rep& pi);

enum class DichotomyVerdict { Dist, OmegaDist, NotSelfdual };

// the supercuspidal dichotomy: a sigma-selfdual dihedral supercuspidal is
// distinguished or omega-distinguished, never both, read off the sign of
// its parameter; non-selfdual inputs land on NotSelfdual
DichotomyVerdict dichotomy_check(const GL2Rep& pi);

// distinction by a unitary involution subgroup: holds iff the
// sigma-conjugate is isomorphic to the representation itself
bool unitary_distinguished(const GL2Rep& pi);

} // namespace moddist
