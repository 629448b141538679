#include "doctest.h"

#include <memory>
#include <vector>

#include "moddist/characters.hpp"
#include "moddist/gl2.hpp"
#include "moddist/localfield.hpp"
#include "moddist/weilrep.hpp"

using namespace moddist;

namespace {

FieldSpec make_spec(long long p, ExtType ext, long long ell, int depth = 2) {
    FieldSpec s;
    s.p = p;
    s.f = 1;
    s.base_char = BaseChar::Zero;
    s.ext = ext;
    s.ell = ell;
    s.depth = depth;
    return s;
}

SmoothCharacter triv_E(const LocalFieldContext& ctx) {
    return trivial_character(&ctx.E_units());
}

SmoothCharacter triv_F(const LocalFieldContext& ctx) {
    return trivial_character(&ctx.F_units());
}

SmoothCharacter omega_F(const LocalFieldContext& ctx) {
    return CharacterLayer::over_base(ctx).omega();
}

// regular characters of a K tower's top units at tame level
std::vector<SmoothCharacter> regular_pool(const LocalFieldContext& ctx, const WeilTower& tw,
                                          int max_conductor) {
    CharacterLayer cl = CharacterLayer::over_tower(ctx, *tw.k_tower());
    std::vector<SmoothCharacter> out;
    for (const SmoothCharacter& th :
         enumerate_characters(&tw.top_units(), 2, max_conductor, ctx.spec().ell)) {
        if (cl.galois_twist(th) == th) continue;
        out.push_back(th);
    }
    return out;
}

} // namespace

TEST_CASE("constructor regimes and irreducibility flags") {
    LocalFieldContext c35(make_spec(3, ExtType::Unramified, 5)); // q_E = 9 = -1 mod 5
    LocalFieldContext c73(make_spec(7, ExtType::Unramified, 3)); // q_E = 49 = 1 mod 3

    CHECK_THROWS_AS(GL2Rep::steinberg(c35, triv_E(c35)), std::invalid_argument);
    CHECK_NOTHROW(GL2Rep::special(c35, triv_E(c35)));
    CHECK_THROWS_AS(GL2Rep::special(c73, triv_E(c73)), std::invalid_argument);
    CHECK_NOTHROW(GL2Rep::steinberg(c73, triv_E(c73)));

    // nu is trivial at q_E = 1 mod ell, so the unramified twin of the
    // trivial character sits at a reducible point there but not at c35
    SmoothCharacter nu35 = nu_character(&c35.E_units(), c35.spec().qE(), 5);
    CHECK_FALSE(nu35.is_trivial());
    CHECK_FALSE(GL2Rep::principal_series(c35, nu35, triv_E(c35)).is_irreducible());
    CHECK(GL2Rep::principal_series(c35, triv_E(c35), triv_E(c35)).is_irreducible());
    CHECK_FALSE(GL2Rep::principal_series(c73, triv_E(c73), triv_E(c73)).is_irreducible());

    auto tw = WeilTower::over_k(c35, GammaClass::NonsquareUnit);
    SmoothCharacter theta_triv = trivial_character(&tw->top_units());
    CHECK_THROWS_AS(GL2Rep::dihedral_supercuspidal(tw, theta_triv), std::invalid_argument);

    GL2Rep prim = GL2Rep::primitive_supercuspidal(c35, "opaque");
    CHECK(prim.is_supercuspidal());
    CHECK_THROWS_AS(gl2F_distinction(prim), std::invalid_argument);
    CHECK_THROWS_AS(prim.central_character(), std::invalid_argument);
    CHECK_THROWS_AS(prim.twist(triv_E(c35)), std::invalid_argument);
}

TEST_CASE("principal series distinction") {
    LocalFieldContext c73(make_spec(7, ExtType::Unramified, 3));
    LocalFieldContext c35(make_spec(3, ExtType::Unramified, 5));

    // unramified twin of the trivial character at q_F = 1 mod ell
    DistinctionReport r = gl2F_distinction(GL2Rep::principal_series(c73, triv_E(c73), triv_E(c73)));
    CHECK(r.distinguished);
    REQUIRE(r.multiplicity.has_value());
    CHECK(*r.multiplicity == 2);

    // same shape away from q_F = 1 mod ell: dimension drops to one
    DistinctionReport r2 = gl2F_distinction(GL2Rep::principal_series(c35, triv_E(c35), triv_E(c35)));
    CHECK(r2.distinguished);
    REQUIRE(r2.multiplicity.has_value());
    CHECK(*r2.multiplicity == 1);

    // one factor restricting to omega kills both orbit criteria
    SmoothCharacter om_ext = extend_to_E(c73, omega_F(c73));
    DistinctionReport r3 = gl2F_distinction(GL2Rep::principal_series(c73, om_ext, triv_E(c73)));
    CHECK_FALSE(r3.distinguished);
    CHECK_FALSE(r3.multiplicity.has_value());

    // pairs (chi, inverse of conjugate) always satisfy the closed-orbit test
    CharacterLayer cl = CharacterLayer::over_base(c35);
    int seen = 0;
    for (const SmoothCharacter& chi : enumerate_characters(&c35.E_units(), 2, 1, 5)) {
        SmoothCharacter partner = cl.galois_twist(chi).inverse();
        GL2Rep pi = GL2Rep::principal_series(c35, chi, partner);
        if (!pi.is_irreducible()) continue;
        DistinctionReport rr = gl2F_distinction(pi);
        CHECK(rr.distinguished);
        CHECK(is_sigma_selfdual(pi));
        ++seen;
    }
    CHECK(seen > 10);
}

TEST_CASE("steinberg distinction branches") {
    // banal: q_E = 9, ell = 7
    LocalFieldContext c37(make_spec(3, ExtType::Unramified, 7));
    SmoothCharacter om37 = extend_to_E(c37, omega_F(c37));
    DistinctionReport st_om = gl2F_distinction(GL2Rep::steinberg(c37, om37));
    CHECK(st_om.distinguished);
    REQUIRE(st_om.multiplicity.has_value());
    CHECK(*st_om.multiplicity == 1);
    CHECK_FALSE(gl2F_distinction(GL2Rep::steinberg(c37, triv_E(c37))).distinguished);

    // q_E = 1 mod ell with q_F = 1 mod ell: trivial restriction also works
    LocalFieldContext c73(make_spec(7, ExtType::Unramified, 3));
    CHECK(gl2F_distinction(GL2Rep::steinberg(c73, triv_E(c73))).distinguished);
    SmoothCharacter om73 = extend_to_E(c73, omega_F(c73));
    CHECK(gl2F_distinction(GL2Rep::steinberg(c73, om73)).distinguished);

    // a ramified quadratic restriction is outside the allowed set
    std::vector<RootOfUnity> vals;
    for (const CyclicFactor& f : c73.F_units().grp.factors)
        vals.push_back(f.order % 2 == 0 ? RootOfUnity(1, 2) : RootOfUnity());
    SmoothCharacter quadF = make_character(&c73.F_units(), RootOfUnity(), vals, 3);
    CHECK_FALSE(quadF == omega_F(c73));
    SmoothCharacter quad_ext = extend_to_E(c73, quadF);
    CHECK_FALSE(gl2F_distinction(GL2Rep::steinberg(c73, quad_ext)).distinguished);
}

TEST_CASE("special distinction branches") {
    // q_E = -1 mod ell with q_F not: never distinguished
    LocalFieldContext c35(make_spec(3, ExtType::Unramified, 5));
    CHECK_FALSE(gl2F_distinction(GL2Rep::special(c35, triv_E(c35))).distinguished);
    SmoothCharacter om35 = extend_to_E(c35, omega_F(c35));
    CHECK_FALSE(gl2F_distinction(GL2Rep::special(c35, om35)).distinguished);

    // ramified with q_F = q_E = -1 mod ell: the two-element set is live
    LocalFieldContext c53(make_spec(5, ExtType::RamifiedUnit, 3));
    SmoothCharacter om53 = extend_to_E(c53, omega_F(c53));
    DistinctionReport sp_om = gl2F_distinction(GL2Rep::special(c53, om53));
    CHECK(sp_om.distinguished);
    REQUIRE(sp_om.multiplicity.has_value());
    CHECK(*sp_om.multiplicity == 1);

    SmoothCharacter half =
        nu_half_character(&c53.E_units(), c53.spec().qE(), 3, NuHalfConvention::EvenNumerator);
    CHECK(gl2F_distinction(GL2Rep::special(c53, half)).distinguished);

    CHECK_FALSE(gl2F_distinction(GL2Rep::special(c53, triv_E(c53))).distinguished);

    // the third quadratic restriction (omega times the half-twist) fails
    CharacterLayer cl53 = CharacterLayer::over_base(c53);
    SmoothCharacter third = omega_F(c53) * cl53.restrict_to_base(half);
    CHECK_FALSE(third.is_trivial());
    CHECK_FALSE(third == omega_F(c53));
    SmoothCharacter third_ext = extend_to_E(c53, third);
    CHECK_FALSE(gl2F_distinction(GL2Rep::special(c53, third_ext)).distinguished);
}

TEST_CASE("extension device restricts correctly") {
    for (FieldSpec s : {make_spec(7, ExtType::Unramified, 3), make_spec(5, ExtType::RamifiedUnit, 3)}) {
        LocalFieldContext ctx(s);
        CharacterLayer cl = CharacterLayer::over_base(ctx);
        int found = 0;
        for (const SmoothCharacter& chiF : enumerate_characters(&ctx.F_units(), 2, 1, s.ell)) {
            SmoothCharacter ext = extend_to_E(ctx, chiF);
            CHECK(ext.dom == &ctx.E_units());
            CHECK(cl.restrict_to_base(ext) == chiF);
            ++found;
        }
        CHECK(found > 3);
    }
}

TEST_CASE("supercuspidal distinction, disjunction, dichotomy") {
    LocalFieldContext c35(make_spec(3, ExtType::Unramified, 5));
    SmoothCharacter omF = omega_F(c35);

    // selfdual irreducibles need the biquadratic tower; the cyclic one
    // contributes the not-selfdual rows
    int co = 0, cs = 0, neither = 0;
    for (GammaClass g : {GammaClass::Unif, GammaClass::NonsquareUnit}) {
    auto tw = WeilTower::over_k(c35, g);
    for (const SmoothCharacter& th : regular_pool(c35, *tw, 2)) {
        if (co >= 2 && cs >= 2 && neither >= 8) break;
        GL2Rep pi = GL2Rep::dihedral_supercuspidal(tw, th);
        DistinctionReport plain = gl2F_distinction(pi);
        DistinctionReport omdist = chi_distinction(pi, omF);
        bool selfdual = is_sigma_selfdual(pi);
        DichotomyVerdict dv = dichotomy_check(pi);

        if (selfdual) {
            // exactly one of the two distinctions, matching the verdict
            CHECK(plain.distinguished != omdist.distinguished);
            if (plain.distinguished) {
                CHECK(dv == DichotomyVerdict::Dist);
                REQUIRE(plain.multiplicity.has_value());
                CHECK(*plain.multiplicity == 1);
                CHECK(pi.central_trivial_on_F());
                ++co;
            } else {
                CHECK(dv == DichotomyVerdict::OmegaDist);
                ++cs;
            }
            // contragredient keeps the plain verdict
            GL2Rep dual_pi =
                GL2Rep::dihedral_supercuspidal(tw, pi.parameter().dual().theta());
            CHECK(gl2F_distinction(dual_pi).distinguished == plain.distinguished);
        } else {
            CHECK(dv == DichotomyVerdict::NotSelfdual);
            CHECK_FALSE(plain.distinguished);
            CHECK_FALSE(omdist.distinguished);
            ++neither;
        }
    }
    }
    CHECK(co > 0);
    CHECK(cs > 0);
    CHECK(co + cs + neither > 10);
}

TEST_CASE("steinberg at q_F = 1 mod ell is distinguished both ways") {
    LocalFieldContext c73(make_spec(7, ExtType::Unramified, 3));
    GL2Rep st = GL2Rep::steinberg(c73, triv_E(c73));
    CHECK(chi_distinction(st, triv_F(c73)).distinguished);
    CHECK(chi_distinction(st, omega_F(c73)).distinguished);
    CHECK_FALSE(dichotomy_check(st) == DichotomyVerdict::Dist);
}

TEST_CASE("unitary distinction") {
    LocalFieldContext c35(make_spec(3, ExtType::Unramified, 5));
    CharacterLayer cl = CharacterLayer::over_base(c35);

    // a sigma-invariant twisting character of the extension
    SmoothCharacter mu;
    bool have_mu = false;
    for (const SmoothCharacter& cand : enumerate_characters(&c35.E_units(), 2, 1, 5)) {
        if (cand.is_trivial()) continue;
        if (!(cl.galois_twist(cand) == cand)) continue;
        mu = cand;
        have_mu = true;
        break;
    }
    REQUIRE(have_mu);

    for (GammaClass g :
         {GammaClass::NonsquareUnit, GammaClass::Unif, GammaClass::UnifTimesNonsquare}) {
        auto tw = WeilTower::over_k(c35, g);
        std::vector<SmoothCharacter> pool = regular_pool(c35, *tw, 1);
        REQUIRE(!pool.empty());
        GL2Rep pi = GL2Rep::dihedral_supercuspidal(tw, pool.front());
        if (!tw->quartic_is_galois()) {
            CHECK_THROWS_AS(unitary_distinguished(pi), std::domain_error);
            continue;
        }
        int checked = 0;
        for (const SmoothCharacter& th : pool) {
            GL2Rep p = GL2Rep::dihedral_supercuspidal(tw, th);
            bool u = unitary_distinguished(p);
            // verdict invariant under twisting by sigma-invariant characters
            CHECK(unitary_distinguished(p.twist(mu)) == u);
            if (++checked >= 8) break;
        }
        CHECK(checked > 0);
    }
}

TEST_CASE("central characters and twists") {
    LocalFieldContext c73(make_spec(7, ExtType::Unramified, 3));
    SmoothCharacter om_ext = extend_to_E(c73, omega_F(c73));

    GL2Rep ps = GL2Rep::principal_series(c73, om_ext, om_ext.inverse());
    CHECK(ps.pgl2_type());
    CHECK(ps.central_trivial_on_F());

    GL2Rep st = GL2Rep::steinberg(c73, om_ext);
    CHECK(st.central_character() == om_ext * om_ext);
    CHECK(st.central_trivial_on_F());

    // twisting shifts the central character by the square
    GL2Rep tw = ps.twist(om_ext);
    CHECK(tw.cls() == GL2Class::PrincipalSeries);
    CHECK(tw.central_character() == om_ext * om_ext);

    // dihedral central character lives on the tower's reduced base model
    LocalFieldContext c35(make_spec(3, ExtType::Unramified, 5));
    auto ktw = WeilTower::over_k(c35, GammaClass::NonsquareUnit);
    std::vector<SmoothCharacter> pool = regular_pool(c35, *ktw, 1);
    REQUIRE(!pool.empty());
    GL2Rep cusp = GL2Rep::dihedral_supercuspidal(ktw, pool.front());
    CHECK(cusp.central_character().dom == &ktw->base_units());
    CHECK_NOTHROW(cusp.central_trivial_on_F());

    CHECK_THROWS_AS(unitary_distinguished(st), std::invalid_argument);
}
