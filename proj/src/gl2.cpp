#include "moddist/gl2.hpp"

#include <algorithm>
#include <stdexcept>

#include "moddist/rootunity.hpp"

namespace moddist {

namespace {

SmoothCharacter nu_E(const LocalFieldContext& ctx) {
    return nu_character(&ctx.E_units(), ctx.spec().qE(), ctx.spec().ell);
}

void require_E_domain(const LocalFieldContext& ctx, const SmoothCharacter& chi) {
    if (chi.dom != &ctx.E_units())
        throw std::invalid_argument("wrong-domain: character must live on the extension units");
}

// up to `want` distinct characters of E^x restricting to chiF on F^x,
// shallowest conductor first
std::vector<SmoothCharacter> extensions_to_E(const LocalFieldContext& ctx,
                                             const SmoothCharacter& chiF, size_t want) {
    if (chiF.dom != &ctx.F_units())
        throw std::invalid_argument("wrong-domain: character to extend must live on the base units");
    CharacterLayer cl = CharacterLayer::over_base(ctx);
    const UnitGroupModel* E_dom = &ctx.E_units();
    const FieldElem pf = ctx.layer().embed(fe_unif());
    std::vector<SmoothCharacter> out;
    for (int c = 0; c <= ctx.E_ring()->precision() && out.size() < want; ++c) {
        for (const SmoothCharacter& psi : enumerate_characters(E_dom, 1, c, ctx.spec().ell)) {
            // the uniformizer value must satisfy y^{v_E(pi_F)} * psi(u) = chiF(pi_F)
            RootOfUnity target = chiF.unif_value * psi.eval_unit(pf.u).inverse();
            for (long long k = 0; k < pf.v; ++k) {
                RootOfUnity y(target.num() + k * target.den(), pf.v * target.den());
                SmoothCharacter cand = make_character(E_dom, y, psi.unit_values, ctx.spec().ell);
                if (!(cl.restrict_to_base(cand) == chiF)) continue;
                if (std::find(out.begin(), out.end(), cand) != out.end()) continue;
                out.push_back(cand);
                if (out.size() >= want) return out;
            }
        }
    }
    return out;
}

// lift a character of the reduced extension model a tower's determinant
// lives on back to the full-precision extension units
SmoothCharacter inflate_to_full_E(const LocalFieldContext& ctx, const WeilTower& tw,
                                  const SmoothCharacter& red) {
    const UnitGroupModel& full = ctx.E_units();
    if (red.dom == &full) return red;
    if (red.dom != &tw.base_units())
        throw std::invalid_argument("wrong-domain: inflation expects the tower's base model");
    const int m2 = tw.base_units().ring->precision();
    std::vector<RootOfUnity> vals;
    vals.reserve(full.grp.factors.size());
    for (const CyclicFactor& f : full.grp.factors)
        vals.push_back(red.eval_unit(ctx.E_ring()->reduce_code(f.gen, m2)));
    return make_character(&full, red.unif_value, std::move(vals), ctx.spec().ell);
}

} // namespace

std::string to_string(GL2Class c) {
    switch (c) {
    case GL2Class::PrincipalSeries: return "PrincipalSeries";
    case GL2Class::Steinberg: return "Steinberg";
    case GL2Class::Special: return "Special";
    case GL2Class::DihedralSupercuspidal: return "DihedralSupercuspidal";
    case GL2Class::PrimitiveSupercuspidal: return "PrimitiveSupercuspidal";
    }
    return "?";
}

GL2Rep GL2Rep::principal_series(const LocalFieldContext& ctx, SmoothCharacter chi1,
                                SmoothCharacter chi2) {
    require_E_domain(ctx, chi1);
    require_E_domain(ctx, chi2);
    GL2Rep r;
    r.cls_ = GL2Class::PrincipalSeries;
    r.ctx_ = &ctx;
    SmoothCharacter nu = nu_E(ctx);
    r.irreducible_ = !(chi1 == chi2 * nu || chi2 == chi1 * nu);
    r.chi1_ = std::move(chi1);
    r.chi2_ = std::move(chi2);
    return r;
}

GL2Rep GL2Rep::steinberg(const LocalFieldContext& ctx, SmoothCharacter chi) {
    require_E_domain(ctx, chi);
    if (q_mod_ell_class(ctx.spec().qE(), ctx.spec().ell) == CongruenceClass::MinusOneMod)
        throw std::invalid_argument(
            "wrong-regime: no Steinberg subquotient when q_E is -1 mod ell");
    GL2Rep r;
    r.cls_ = GL2Class::Steinberg;
    r.ctx_ = &ctx;
    r.chi1_ = std::move(chi);
    return r;
}

GL2Rep GL2Rep::special(const LocalFieldContext& ctx, SmoothCharacter chi) {
    require_E_domain(ctx, chi);
    if (q_mod_ell_class(ctx.spec().qE(), ctx.spec().ell) != CongruenceClass::MinusOneMod)
        throw std::invalid_argument(
            "wrong-regime: the Special subquotient exists only when q_E is -1 mod ell");
    GL2Rep r;
    r.cls_ = GL2Class::Special;
    r.ctx_ = &ctx;
    r.chi1_ = std::move(chi);
    return r;
}

GL2Rep GL2Rep::dihedral_supercuspidal(std::shared_ptr<const WeilTower> tower,
                                      SmoothCharacter theta) {
    WeilRep2 param = WeilRep2::induced(tower, std::move(theta));
    if (!param.is_irreducible())
        throw std::invalid_argument(
            "reducible-input: a dihedral supercuspidal needs a character not fixed by the layer involution");
    GL2Rep r;
    r.cls_ = GL2Class::DihedralSupercuspidal;
    r.ctx_ = &tower->ctx();
    r.chi1_ = param.theta();
    r.tower_ = std::move(tower);
    r.param_ = std::move(param);
    return r;
}

GL2Rep GL2Rep::primitive_supercuspidal(const LocalFieldContext& ctx, std::string marker) {
    GL2Rep r;
    r.cls_ = GL2Class::PrimitiveSupercuspidal;
    r.ctx_ = &ctx;
    r.marker_ = std::move(marker);
    return r;
}

bool GL2Rep::is_supercuspidal() const {
    return cls_ == GL2Class::DihedralSupercuspidal || cls_ == GL2Class::PrimitiveSupercuspidal;
}

const WeilRep2& GL2Rep::parameter() const {
    if (!param_)
        throw std::logic_error("no Weil parameter attached to this representation class");
    return *param_;
}

SmoothCharacter GL2Rep::central_character() const {
    switch (cls_) {
    case GL2Class::PrincipalSeries: return chi1_ * chi2_;
    case GL2Class::Steinberg:
    case GL2Class::Special: return chi1_ * chi1_;
    case GL2Class::DihedralSupercuspidal: return param_->det_character();
    case GL2Class::PrimitiveSupercuspidal: break;
    }
    throw std::invalid_argument("primitive-marker: no computable central character");
}

bool GL2Rep::central_trivial_on_F() const {
    SmoothCharacter omega_pi = central_character();
    if (cls_ == GL2Class::DihedralSupercuspidal)
        omega_pi = inflate_to_full_E(*ctx_, *tower_, omega_pi);
    CharacterLayer cl = CharacterLayer::over_base(*ctx_);
    return cl.restrict_to_base(omega_pi).is_trivial();
}

bool GL2Rep::pgl2_type() const { return central_character().is_trivial(); }

GL2Rep GL2Rep::twist(const SmoothCharacter& eta) const {
    require_E_domain(*ctx_, eta);
    switch (cls_) {
    case GL2Class::PrincipalSeries:
        return principal_series(*ctx_, chi1_ * eta, chi2_ * eta);
    case GL2Class::Steinberg: return steinberg(*ctx_, chi1_ * eta);
    case GL2Class::Special: return special(*ctx_, chi1_ * eta);
    case GL2Class::DihedralSupercuspidal:
        return dihedral_supercuspidal(tower_, param_->twist(eta).theta());
    case GL2Class::PrimitiveSupercuspidal: break;
    }
    throw std::invalid_argument("primitive-marker: twisting has no computable model");
}

std::string GL2Rep::str() const {
    switch (cls_) {
    case GL2Class::PrincipalSeries:
        return "PS(" + chi1_.str() + "; " + chi2_.str() + ")";
    case GL2Class::Steinberg: return "St(" + chi1_.str() + ")";
    case GL2Class::Special: return "Sp(" + chi1_.str() + ")";
    case GL2Class::DihedralSupercuspidal: {
        const KTower* kt = tower_->k_tower();
        std::string cls = kt ? to_string(kt->cls()) : std::string("base");
        return "Cusp(K=" + cls + ", theta=" + chi1_.str() + ")";
    }
    case GL2Class::PrimitiveSupercuspidal: return "PrimCusp(" + marker_ + ")";
    }
    return "?";
}

DistinctionReport gl2F_distinction(const GL2Rep& pi) {
    const LocalFieldContext& ctx = pi.ctx();
    CharacterLayer cl = CharacterLayer::over_base(ctx);
    const long long ell = ctx.spec().ell;
    DistinctionReport rep;

    switch (pi.cls()) {
    case GL2Class::PrincipalSeries: {
        // the orbit criterion computes Hom out of the full induced space,
        // so reducible inputs are decided too
        const SmoothCharacter& c1 = pi.chi1();
        const SmoothCharacter& c2 = pi.chi2();
        bool closed_orbit = (c1 * cl.galois_twist(c2)).is_trivial();
        bool open_orbits = cl.restrict_to_base(c1).is_trivial() &&
                           cl.restrict_to_base(c2).is_trivial() && !(c1 == c2);
        rep.distinguished = closed_orbit || open_orbits;
        if (rep.distinguished) {
            bool dim2 = q_mod_ell_class(ctx.spec().qF(), ell) == CongruenceClass::OneMod &&
                        c1 == c2 && cl.restrict_to_base(c1).is_trivial();
            rep.multiplicity = dim2 ? 2 : 1;
            rep.rationale = closed_orbit ? "principal-series: chi1 * sigma(chi2) trivial"
                                         : "principal-series: both base restrictions trivial";
        } else {
            rep.rationale = "principal-series: neither orbit criterion holds";
        }
        break;
    }
    case GL2Class::Steinberg: {
        SmoothCharacter chiF = cl.restrict_to_base(pi.chi());
        SmoothCharacter om = cl.omega();
        CongruenceClass qe = q_mod_ell_class(ctx.spec().qE(), ell);
        if (qe == CongruenceClass::Banal) {
            rep.distinguished = chiF == om;
            rep.rationale = rep.distinguished ? "steinberg banal: restriction is omega"
                                              : "steinberg banal: restriction is not omega";
        } else {
            bool qf_one = q_mod_ell_class(ctx.spec().qF(), ell) == CongruenceClass::OneMod;
            rep.distinguished = chiF == om || (chiF.is_trivial() && qf_one);
            rep.rationale = rep.distinguished
                                ? "steinberg at q_E = 1 mod ell: restriction in the allowed set"
                                : "steinberg at q_E = 1 mod ell: restriction outside the allowed set";
        }
        if (rep.distinguished) rep.multiplicity = 1;
        break;
    }
    case GL2Class::Special: {
        SmoothCharacter chiF = cl.restrict_to_base(pi.chi());
        SmoothCharacter om = cl.omega();
        const long long qE = ctx.spec().qE();
        SmoothCharacter half_even = cl.restrict_to_base(
            nu_half_character(&ctx.E_units(), qE, ell, NuHalfConvention::EvenNumerator));
        SmoothCharacter half_odd = cl.restrict_to_base(
            nu_half_character(&ctx.E_units(), qE, ell, NuHalfConvention::OddNumerator));
        bool in_even = chiF == om || chiF == half_even;
        bool in_odd = chiF == om || chiF == half_odd;
        if (in_even != in_odd)
            throw std::logic_error("half-twist restriction depends on the square-root convention");
        bool qf_minus = q_mod_ell_class(ctx.spec().qF(), ell) == CongruenceClass::MinusOneMod;
        rep.distinguished = qf_minus && in_even;
        if (rep.distinguished) {
            rep.multiplicity = 1;
            rep.rationale = "special: q_F = -1 mod ell and restriction in {omega, half-twist}";
        } else {
            rep.rationale = qf_minus ? "special: restriction outside {omega, half-twist}"
                                     : "special: q_F is not -1 mod ell";
        }
        break;
    }
    case GL2Class::DihedralSupercuspidal: {
        switch (conjugate_dual_sign(pi.parameter())) {
        case DualitySign::ConjugateOrthogonal:
            rep.distinguished = true;
            rep.multiplicity = 1;
            rep.rationale = "dihedral: conjugate-orthogonal parameter";
            break;
        case DualitySign::ConjugateSymplectic:
            rep.rationale = "dihedral: conjugate-symplectic parameter";
            break;
        case DualitySign::Neither:
            rep.rationale = "dihedral: parameter not conjugate-selfdual";
            break;
        case DualitySign::Both:
            throw std::logic_error("unexpected duality sign for an irreducible parameter");
        }
        break;
    }
    case GL2Class::PrimitiveSupercuspidal:
        throw std::invalid_argument(
            "primitive-marker: no computable distinction model for primitive supercuspidals");
    }

    if (rep.distinguished && !pi.central_trivial_on_F())
        throw std::logic_error("central character not trivial on the base after a positive verdict");
    return rep;
}

DistinctionReport chi_distinction(const GL2Rep& pi, const SmoothCharacter& chiF) {
    const LocalFieldContext& ctx = pi.ctx();
    std::vector<SmoothCharacter> exts = extensions_to_E(ctx, chiF, 2);
    if (exts.empty())
        throw std::invalid_argument(
            "extension-not-found-at-depth: no extension of the base character in the truncated model");
    DistinctionReport rep = gl2F_distinction(pi.twist(exts[0].inverse()));
    if (exts.size() > 1) {
        // the verdict must not depend on the chosen extension; a second
        // extension too deep to act on a reduced tower model is skipped
        try {
            DistinctionReport other = gl2F_distinction(pi.twist(exts[1].inverse()));
            if (other.distinguished != rep.distinguished)
                throw std::logic_error("distinction verdict depends on the chosen extension");
        } catch (const std::domain_error&) {
        }
    }
    rep.rationale = "after inverse-extension twist; " + rep.rationale;
    return rep;
}

SmoothCharacter extend_to_E(const LocalFieldContext& ctx, const SmoothCharacter& chiF) {
    std::vector<SmoothCharacter> exts = extensions_to_E(ctx, chiF, 1);
    if (exts.empty())
        throw std::invalid_argument(
            "extension-not-found-at-depth: no extension of the base character in the truncated model");
    return exts[0];
}

bool is_sigma_selfdual(const GL2Rep& pi) {
    const LocalFieldContext& ctx = pi.ctx();
    CharacterLayer cl = CharacterLayer::over_base(ctx);
    switch (pi.cls()) {
    case GL2Class::PrincipalSeries: {
        SmoothCharacter a = pi.chi1().inverse();
        SmoothCharacter b = pi.chi2().inverse();
        SmoothCharacter c = cl.galois_twist(pi.chi1());
        SmoothCharacter d = cl.galois_twist(pi.chi2());
        return (a == c && b == d) || (a == d && b == c);
    }
    case GL2Class::Steinberg:
    case GL2Class::Special:
        // contragredient and conjugate are the analogous objects for the
        // inverse and the conjugate character
        return (pi.chi() * cl.galois_twist(pi.chi())).is_trivial();
    case GL2Class::DihedralSupercuspidal:
        return is_isomorphic(pi.parameter().galois_conjugate().dual(), pi.parameter());
    case GL2Class::PrimitiveSupercuspidal: break;
    }
    throw std::invalid_argument(
        "primitive-marker: selfduality of a primitive supercuspidal is not computable");
}

DichotomyVerdict dichotomy_check(const GL2Rep& pi) {
    if (pi.cls() == GL2Class::PrimitiveSupercuspidal)
        throw std::invalid_argument(
            "primitive-marker: the dichotomy needs a computable parameter");
    if (pi.cls() != GL2Class::DihedralSupercuspidal)
        return DichotomyVerdict::NotSelfdual;
    switch (conjugate_dual_sign(pi.parameter())) {
    case DualitySign::ConjugateOrthogonal: return DichotomyVerdict::Dist;
    case DualitySign::ConjugateSymplectic: return DichotomyVerdict::OmegaDist;
    default: return DichotomyVerdict::NotSelfdual;
    }
}

bool unitary_distinguished(const GL2Rep& pi) {
    if (pi.cls() == GL2Class::PrimitiveSupercuspidal)
        throw std::invalid_argument(
            "primitive-marker: unitary distinction needs a computable parameter");
    if (pi.cls() != GL2Class::DihedralSupercuspidal)
        throw std::invalid_argument(
            "wrong-domain: unitary distinction is modeled for dihedral supercuspidals");
    return is_isomorphic(pi.parameter().galois_conjugate(), pi.parameter());
}

} // namespace moddist
