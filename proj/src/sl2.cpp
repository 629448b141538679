#include "moddist/sl2.hpp"

#include <optional>
#include <stdexcept>

#include "moddist/rootunity.hpp"
#include "moddist/weilrep.hpp"

namespace moddist {

namespace {

// the four quadratic characters of E^x at odd residue characteristic
std::vector<SmoothCharacter> quadratic_pool(const LocalFieldContext& ctx) {
    std::vector<SmoothCharacter> out;
    for (const SmoothCharacter& chi :
         enumerate_characters(&ctx.E_units(), 2, 1, ctx.spec().ell)) {
        if ((chi * chi).is_trivial())
            out.push_back(chi);
    }
    return out;
}

} // namespace

RestrictionProfile restriction_profile(const GL2Rep& pi) {
    if (pi.cls() != GL2Class::DihedralSupercuspidal)
        throw std::invalid_argument(
            "wrong-domain: restriction profile needs a dihedral supercuspidal");
    const LocalFieldContext& ctx = pi.ctx();
    if (ctx.spec().p == 2)
        throw std::invalid_argument(
            "unsupported enumeration bounds: even residue characteristic has "
            "quadratic characters outside the tame pool");
    const WeilRep2& phi = pi.parameter();
    CharacterLayer cl = CharacterLayer::over_base(ctx);

    RestrictionProfile out;
    for (const SmoothCharacter& chi : quadratic_pool(ctx)) {
        if (!is_isomorphic(phi.twist(chi), phi))
            continue;
        out.Y.push_back(chi);
        if (cl.restrict_to_base(chi).is_trivial())
            out.Y_plus.push_back(chi);
    }
    out.lg = static_cast<int>(out.Y.size());
    out.lg_plus = static_cast<int>(out.Y_plus.size());
    out.S_phi_order = dihedral_centralizer_order(phi);
    if (out.S_phi_order != out.lg)
        throw std::logic_error(
            "centralizer order disagrees with the twist-isomorphism count");
    return out;
}

std::vector<SmoothCharacter> X_set(const GL2Rep& pi) {
    const LocalFieldContext& ctx = pi.ctx();
    std::vector<SmoothCharacter> out;
    for (const SmoothCharacter& chiF :
         enumerate_characters(&ctx.F_units(), 16, 1, ctx.spec().ell)) {
        if (chi_distinction(pi, chiF).distinguished)
            out.push_back(chiF);
    }
    return out;
}

int sl2_supercuspidal_multiplicity(const GL2Rep& pi,
                                   bool assume_component_distinguished) {
    if (!assume_component_distinguished && X_set(pi).empty())
        throw std::invalid_argument(
            "not-distinguished: no character of the base field distinguishes "
            "this representation");
    RestrictionProfile pr = restriction_profile(pi);
    if (pr.lg == 0 || (pr.lg_plus * pr.lg_plus) % pr.lg != 0)
        throw std::invalid_argument(
            "not-distinguished: restriction lengths are incompatible with a "
            "distinguished component");
    int mult = (pr.lg_plus * pr.lg_plus) / pr.lg;
    bool table_ok = (pr.lg_plus == 2 && pr.lg == 2 && mult == 2) ||
                    (pr.lg_plus == 2 && pr.lg == 4 && mult == 1);
    if (!table_ok)
        throw std::logic_error(
            "multiplicity formula escaped the odd-residue case table");
    return mult;
}

DistinctionReport sl2_principal_distinguished(const SL2PrincipalSeries& I) {
    if (I.ctx == nullptr)
        throw std::invalid_argument("wrong-domain: principal series needs a context");
    const LocalFieldContext& ctx = *I.ctx;
    if (I.chi.dom != &ctx.E_units())
        throw std::invalid_argument(
            "wrong-domain: torus character must live on the extension units");
    const FieldSpec& sp = ctx.spec();
    CharacterLayer cl = CharacterLayer::over_base(ctx);
    const SmoothCharacter& chi = I.chi;

    bool f_triv = cl.is_trivial_on_base(chi);
    bool n1_triv = cl.is_trivial_on_norm_one(chi);

    DistinctionReport rep;
    if (!f_triv && !n1_triv) {
        rep.distinguished = false;
        rep.multiplicity = 0;
        rep.rationale = "nontrivial on the base units and on the norm-one subgroup";
        return rep;
    }
    rep.distinguished = true;

    SmoothCharacter nu = nu_character(&ctx.E_units(), sp.qE(), sp.ell);
    CongruenceClass ccE = q_mod_ell_class(sp.qE(), sp.ell);
    bool qf_one = (sp.qF() % sp.ell) == 1;
    bool triv = chi.is_trivial();
    bool quad = (chi * chi).is_trivial();
    bool is_nu = chi == nu || chi == nu.inverse();

    // irreducible principal series
    bool irr = (!is_nu && !quad) || (triv && ccE != CongruenceClass::OneMod);
    if (irr) {
        if (n1_triv) {
            rep.multiplicity = 2;
            rep.rationale = "irreducible, Galois-invariant torus character";
        } else {
            rep.multiplicity = 1;
            rep.rationale = "irreducible, torus character trivial on the base units";
        }
        return rep;
    }

    if (is_nu) {
        // chi = nu or its inverse; at q_E = 1 this is the trivial character
        if (ccE == CongruenceClass::OneMod) {
            rep.multiplicity = 2;
            rep.rationale = "Steinberg component of the unitarily-induced series";
        } else if (ccE == CongruenceClass::Banal) {
            rep.multiplicity = 1;
            rep.rationale = "Steinberg component; the trivial component also "
                            "carries multiplicity one";
        } else if (sp.ramified()) {
            rep.multiplicity = 1;
            rep.rationale = "trivial component; one of the two cuspidal "
                            "components carries multiplicity two";
        } else {
            rep.multiplicity = 1;
            rep.rationale = "trivial component; neither cuspidal component "
                            "is distinguished";
        }
        return rep;
    }

    // quadratic nontrivial torus character away from nu: it is
    // Galois-invariant, hence factors through the norm
    std::optional<SmoothCharacter> chiF;
    for (const SmoothCharacter& eta :
         enumerate_characters(&ctx.F_units(), 4, 1, sp.ell)) {
        if (cl.compose_norm(eta) == chi) {
            chiF = eta;
            break;
        }
    }
    if (!chiF)
        throw std::logic_error(
            "Galois-invariant quadratic character has no norm factorization "
            "in the tame pool");
    SmoothCharacter sq = *chiF * *chiF;
    bool sq_triv = sq.is_trivial();
    if (!sq_triv && !(sq == cl.omega()))
        throw std::logic_error(
            "norm factor of a quadratic character must square into the "
            "class-character pair");

    if (qf_one) {
        if (sq_triv) {
            rep.rationale = "undetermined: base cardinality is 1 and the norm "
                            "factor squares to one";
        } else {
            rep.multiplicity = 1;
            rep.rationale = "both components distinguished once (norm factor "
                            "squares to the class character)";
        }
        return rep;
    }
    if (ccE == CongruenceClass::MinusOneMod) {
        rep.rationale = "undetermined: quadratic non-nu torus character at "
                        "extension cardinality -1";
        return rep;
    }
    if (sq_triv) {
        rep.multiplicity = 3;
        rep.rationale = "single generic component (norm factor squares to one)";
    } else {
        rep.multiplicity = 1;
        rep.rationale = "two components each distinguished once (norm factor "
                        "squares to the class character)";
    }
    return rep;
}

} // namespace moddist
