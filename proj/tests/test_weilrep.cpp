#include <doctest.h>

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "moddist/weilrep.hpp"

using namespace moddist;

namespace {

FieldSpec mk(long long p, int f, BaseChar bc, ExtType ext, long long ell, int depth) {
    FieldSpec s;
    s.p = p;
    s.f = f;
    s.base_char = bc;
    s.ext = ext;
    s.ell = ell;
    s.depth = depth;
    return s;
}

template <typename Fn>
void expect_error(Fn&& fn, const char* prefix) {
    try {
        fn();
        FAIL_CHECK("expected an error starting with: " << prefix);
    } catch (const std::exception& e) {
        CHECK(std::string(e.what()).rfind(prefix, 0) == 0);
    }
}

WeilElem rand_elem(const WeilTower& tw, const std::vector<uint64_t>& codes,
                   std::mt19937_64& rng) {
    std::uniform_int_distribution<size_t> pick(0, codes.size() - 1);
    std::uniform_int_distribution<long long> vdist(-2, 2);
    std::uniform_int_distribution<int> edist(0, 1);
    return tw.elem(FieldElem{vdist(rng), codes[pick(rng)]}, edist(rng));
}

// conjugate-selfdual characters mu of E with mu != mu^sigma
std::vector<SmoothCharacter> selfdual_pool(const LocalFieldContext& ctx, int max_unif_order) {
    CharacterLayer cl = CharacterLayer::over_base(ctx);
    std::vector<SmoothCharacter> out;
    for (const SmoothCharacter& mu :
         enumerate_characters(&ctx.E_units(), max_unif_order, 2, ctx.spec().ell)) {
        if (!(mu * cl.galois_twist(mu)).is_trivial())
            continue;
        if (cl.galois_twist(mu) == mu)
            continue;
        out.push_back(mu);
    }
    return out;
}

} // namespace

TEST_CASE("weil tower: the index-two group model") {
    for (const FieldSpec& s : {mk(3, 1, BaseChar::Zero, ExtType::Unramified, 5, 2),
                               mk(5, 1, BaseChar::Zero, ExtType::RamifiedUnit, 3, 2)}) {
        LocalFieldContext ctx(s);
        auto tw = WeilTower::over_base(ctx);

        // t is the first enumerated non-norm: the uniformizer for an
        // unramified layer, a unit for a ramified one
        if (!s.ramified())
            CHECK(tw->t() == FieldElem{1, 1});
        else
            CHECK(tw->t().v == 0);
        CHECK(!tw->is_norm(tw->t()));
        CHECK(tw->is_norm(fe_mul(ctx.F_ring(), tw->t(), tw->t())));
        CHECK_THROWS_AS((void)tw->with_t(fe_one()), std::invalid_argument);

        // s^2 = t and s y s^{-1} = sigma(y)
        WeilElem ss = tw->mul(tw->s(), tw->s());
        CHECK(ss.eps == 0);
        CHECK(ss.x == tw->t_in_top());
        std::vector<uint64_t> codes = ctx.E_ring()->unit_codes();
        std::mt19937_64 rng(2024);
        for (int i = 0; i < 50; ++i) {
            WeilElem y = rand_elem(*tw, codes, rng);
            WeilElem c = tw->mul(tw->mul(tw->s(), y), tw->inv(tw->s()));
            WeilElem expect = tw->elem(ctx.layer().sigma(y.x), y.eps);
            CHECK(tw->mul(c, tw->inv(expect)).x == fe_one());
        }
        for (int i = 0; i < 100; ++i) {
            WeilElem a = rand_elem(*tw, codes, rng);
            WeilElem b = rand_elem(*tw, codes, rng);
            WeilElem c = rand_elem(*tw, codes, rng);
            WeilElem l = tw->mul(tw->mul(a, b), c);
            WeilElem r = tw->mul(a, tw->mul(b, c));
            CHECK(l.x == r.x);
            CHECK(l.eps == r.eps);
            WeilElem u = tw->mul(a, tw->inv(a));
            CHECK(u.x == fe_one());
            CHECK(u.eps == 0);
        }
    }
}

TEST_CASE("induced representation: the flip generator image") {
    LocalFieldContext ctx(mk(3, 1, BaseChar::Zero, ExtType::Unramified, 5, 2));
    auto tw = WeilTower::over_base(ctx);
    CharacterLayer cl = CharacterLayer::over_base(ctx);
    int seen = 0;
    for (const SmoothCharacter& mu :
         enumerate_characters(&ctx.E_units(), 2, 1, ctx.spec().ell)) {
        if (cl.galois_twist(mu) == mu)
            continue;
        WeilRep2 rep = WeilRep2::induced(tw, mu);
        const FqContext* k = rep.fq().get();
        Mat2 m = rep.evaluate(tw->s());
        CHECK(m.a.is_zero());
        CHECK(m.d.is_zero());
        CHECK(m.c == k->one());
        CHECK(m.b == k->embed_root(mu.eval(tw->t_in_top())));
        // diagonal on the identity coset
        FieldElem g{0, ctx.E_units().grp.factors.front().gen};
        Mat2 d = rep.evaluate(tw->elem(g, 0));
        CHECK(d.b.is_zero());
        CHECK(d.c.is_zero());
        CHECK(d.a == k->embed_root(mu.eval(g)));
        ++seen;
    }
    CHECK(seen > 0);
}

TEST_CASE("evaluate is a homomorphism on random pairs") {
    for (const FieldSpec& s : {mk(3, 1, BaseChar::Zero, ExtType::Unramified, 5, 2),
                               mk(5, 1, BaseChar::Zero, ExtType::RamifiedUnit, 3, 2)}) {
        LocalFieldContext ctx(s);
        auto base = WeilTower::over_base(ctx);
        CharacterLayer cl = CharacterLayer::over_base(ctx);

        std::vector<std::pair<WeilRep2, std::shared_ptr<const WeilTower>>> cases;
        auto echars = enumerate_characters(&ctx.E_units(), 2, 1, s.ell);
        auto fchars = enumerate_characters(&ctx.F_units(), 2, 1, s.ell);
        cases.emplace_back(WeilRep2::sum(ctx, fchars.at(1), fchars.back()), base);
        for (const SmoothCharacter& mu : echars)
            if (!(cl.galois_twist(mu) == mu)) {
                cases.emplace_back(WeilRep2::induced(base, mu), base);
                break;
            }
        auto ktw = WeilTower::over_k(ctx, GammaClass::NonsquareUnit);
        for (const SmoothCharacter& th :
             enumerate_characters(&ktw->top_units(), 2, 1, s.ell)) {
            CharacterLayer kcl = CharacterLayer::over_tower(ctx, *ktw->k_tower());
            if (!(kcl.galois_twist(th) == th)) {
                cases.emplace_back(WeilRep2::induced(ktw, th), ktw);
                break;
            }
        }
        REQUIRE(cases.size() >= 3);

        std::mt19937_64 rng(77);
        for (auto& [rep, tw] : cases) {
            std::vector<uint64_t> codes = tw->top_ring()->unit_codes();
            for (int i = 0; i < 200; ++i) {
                WeilElem a = rand_elem(*tw, codes, rng);
                WeilElem b = rand_elem(*tw, codes, rng);
                CHECK(rep.evaluate(tw->mul(a, b)) == rep.evaluate(a) * rep.evaluate(b));
            }
            CHECK(rep.evaluate(tw->one()) == Mat2::identity(rep.fq().get()));
        }
    }
}

TEST_CASE("trivial sum evaluates to the identity") {
    LocalFieldContext ctx(mk(3, 1, BaseChar::Zero, ExtType::Unramified, 5, 2));
    auto tw = WeilTower::over_base(ctx);
    SmoothCharacter one = trivial_character(&ctx.F_units());
    WeilRep2 rep = WeilRep2::sum(ctx, one, one);
    std::vector<uint64_t> codes = ctx.E_ring()->unit_codes();
    std::mt19937_64 rng(5);
    for (int i = 0; i < 40; ++i)
        CHECK(rep.evaluate(rand_elem(*tw, codes, rng)) == Mat2::identity(rep.fq().get()));
}

TEST_CASE("isomorphism solving") {
    LocalFieldContext ctx(mk(3, 1, BaseChar::Zero, ExtType::Unramified, 5, 2));
    auto tw = WeilTower::over_base(ctx);
    CharacterLayer cl = CharacterLayer::over_base(ctx);
    auto fchars = enumerate_characters(&ctx.F_units(), 2, 1, ctx.spec().ell);
    SmoothCharacter f1 = fchars.at(1);
    SmoothCharacter f2 = fchars.back();
    REQUIRE(!(f1 == f2));

    SUBCASE("sums") {
        WeilRep2 a = WeilRep2::sum(ctx, f1, f2);
        CHECK(is_isomorphic(a, a));
        CHECK(is_isomorphic(a, WeilRep2::sum(ctx, f2, f1)));
        CHECK(!is_isomorphic(a, WeilRep2::sum(ctx, f1, f1)));
        CHECK(endomorphism_dimension(a) == 2);
        CHECK(endomorphism_dimension(WeilRep2::sum(ctx, f1, f1)) == 4);
    }

    SUBCASE("induced against its tower conjugate, every enumerated character") {
        int seen = 0;
        for (const SmoothCharacter& mu :
             enumerate_characters(&ctx.E_units(), 2, 1, ctx.spec().ell)) {
            if (cl.galois_twist(mu) == mu)
                continue;
            WeilRep2 a = WeilRep2::induced(tw, mu);
            WeilRep2 b = WeilRep2::induced(tw, cl.galois_twist(mu));
            CHECK(is_isomorphic(a, a));
            CHECK(is_isomorphic(a, b));
            CHECK(endomorphism_dimension(a) == 1);
            CHECK(intertwiner_dimension(a, b) == 1);
            ++seen;
        }
        CHECK(seen > 0);
    }

    SUBCASE("mixed kinds never match") {
        SmoothCharacter mu;
        for (const SmoothCharacter& c :
             enumerate_characters(&ctx.E_units(), 2, 1, ctx.spec().ell))
            if (!(cl.galois_twist(c) == c)) {
                mu = c;
                break;
            }
        WeilRep2 ind = WeilRep2::induced(tw, mu);
        WeilRep2 res = ind.restrict_to_E();
        // both are representations of the same group only after restriction;
        // compare an induced over E against a sum over E
        auto ktw = WeilTower::over_k(ctx, GammaClass::NonsquareUnit);
        CharacterLayer kcl = CharacterLayer::over_tower(ctx, *ktw->k_tower());
        for (const SmoothCharacter& th :
             enumerate_characters(&ktw->top_units(), 2, 1, ctx.spec().ell)) {
            if (kcl.galois_twist(th) == th)
                continue;
            WeilRep2 kind = WeilRep2::induced(ktw, th);
            CHECK(!is_isomorphic(kind, res));
            CHECK(intertwiner_dimension(kind, res) == 0);
            break;
        }
    }
}

TEST_CASE("determinant character matches matrix determinants") {
    for (const FieldSpec& s : {mk(3, 1, BaseChar::Zero, ExtType::Unramified, 5, 2),
                               mk(5, 1, BaseChar::Zero, ExtType::RamifiedUnit, 3, 2)}) {
        LocalFieldContext ctx(s);
        auto base = WeilTower::over_base(ctx);
        CharacterLayer cl = CharacterLayer::over_base(ctx);
        std::mt19937_64 rng(99);

        auto check_rep = [&](const WeilRep2& rep, const std::shared_ptr<const WeilTower>& tw) {
            SmoothCharacter det = rep.det_character();
            const FqContext* k = rep.fq().get();
            std::vector<uint64_t> codes = tw->top_ring()->unit_codes();
            for (int i = 0; i < 100; ++i) {
                WeilElem w = rand_elem(*tw, codes, rng);
                CHECK(rep.evaluate(w).det() == k->embed_root(det.eval(tw->abelianized(w))));
            }
        };

        auto fchars = enumerate_characters(&ctx.F_units(), 2, 1, s.ell);
        check_rep(WeilRep2::sum(ctx, fchars.at(1), fchars.back()), base);
        for (const SmoothCharacter& mu :
             enumerate_characters(&ctx.E_units(), 2, 1, s.ell))
            if (!(cl.galois_twist(mu) == mu)) {
                check_rep(WeilRep2::induced(base, mu), base);
                break;
            }
        auto ktw = WeilTower::over_k(ctx, GammaClass::NonsquareUnit);
        CharacterLayer kcl = CharacterLayer::over_tower(ctx, *ktw->k_tower());
        for (const SmoothCharacter& th :
             enumerate_characters(&ktw->top_units(), 2, 1, s.ell))
            if (!(kcl.galois_twist(th) == th)) {
                check_rep(WeilRep2::induced(ktw, th), ktw);
                break;
            }
    }
}

TEST_CASE("duality signs of sums of characters") {
    for (const FieldSpec& s : {mk(3, 1, BaseChar::Zero, ExtType::Unramified, 5, 2),
                               mk(5, 1, BaseChar::Zero, ExtType::RamifiedUnit, 3, 2)}) {
        LocalFieldContext ctx(s);
        CharacterLayer cl = CharacterLayer::over_base(ctx);
        SmoothCharacter trivF = trivial_character(&ctx.F_units());
        SmoothCharacter omega = cl.omega();

        SUBCASE("conjugate-selfdual pairs split by the restriction to F") {
            int co = 0, cs = 0;
            for (const SmoothCharacter& mu : selfdual_pool(ctx, 2)) {
                SmoothCharacter res = cl.restrict_to_base(mu);
                WeilRep2 rep = WeilRep2::sum(ctx, mu, cl.galois_twist(mu));
                DualitySign sign = conjugate_dual_sign(rep);
                if (res.is_trivial()) {
                    CHECK(sign == DualitySign::ConjugateOrthogonal);
                    ++co;
                } else {
                    CHECK(res == omega);
                    CHECK(sign == DualitySign::ConjugateSymplectic);
                    ++cs;
                }
                // component order does not matter
                CHECK(conjugate_dual_sign(WeilRep2::sum(ctx, cl.galois_twist(mu), mu)) == sign);
            }
            if (!s.ramified()) {
                CHECK(co > 0);
                CHECK(cs > 0);
            } else {
                CHECK(co + cs > 0);
            }
        }

        SUBCASE("the trivial pair admits both signs") {
            SmoothCharacter trivE = trivial_character(&ctx.E_units());
            CHECK(conjugate_dual_sign(WeilRep2::sum(ctx, trivE, trivE)) == DualitySign::Both);
        }

        SUBCASE("a sigma-fixed quadratic admits both signs") {
            for (const SmoothCharacter& mu :
                 enumerate_characters(&ctx.E_units(), 2, 1, s.ell)) {
                if (mu.is_trivial() || !is_quadratic(mu))
                    continue;
                if (!(cl.galois_twist(mu) == mu))
                    continue;
                CHECK(conjugate_dual_sign(WeilRep2::sum(ctx, mu, mu)) == DualitySign::Both);
                break;
            }
        }

        SUBCASE("a hyperbolic non-selfdual pair admits both signs") {
            for (const SmoothCharacter& chi :
                 enumerate_characters(&ctx.E_units(), 2, 1, s.ell)) {
                if ((chi * cl.galois_twist(chi)).is_trivial())
                    continue;
                SmoothCharacter other = cl.galois_twist(chi).inverse();
                CHECK(conjugate_dual_sign(WeilRep2::sum(ctx, chi, other)) == DualitySign::Both);
                break;
            }
        }

        SUBCASE("a non-selfdual sum admits neither sign") {
            for (const SmoothCharacter& chi :
                 enumerate_characters(&ctx.E_units(), 2, 1, s.ell)) {
                if ((chi * cl.galois_twist(chi)).is_trivial())
                    continue;
                if ((chi * cl.galois_twist(chi) * chi * cl.galois_twist(chi)).is_trivial())
                    continue; // avoid the hyperbolic-with-itself shapes
                CHECK(conjugate_dual_sign(WeilRep2::sum(ctx, chi, chi)) == DualitySign::Neither);
                break;
            }
        }

        SUBCASE("the sign is a class invariant of t") {
            auto pool = selfdual_pool(ctx, 2);
            if (!pool.empty()) {
                WeilRep2 rep = WeilRep2::sum(ctx, pool.front(), cl.galois_twist(pool.front()));
                DualitySign sign = conjugate_dual_sign(rep);
                auto tw = WeilTower::over_base(ctx);
                std::mt19937_64 rng(7);
                std::vector<uint64_t> codes = ctx.E_ring()->unit_codes();
                for (int i = 0; i < 3; ++i) {
                    WeilElem y = rand_elem(*tw, codes, rng);
                    FieldElem alt =
                        fe_mul(ctx.F_ring(), tw->t(), ctx.layer().norm(y.x));
                    CHECK(conjugate_dual_sign(rep, tw->with_t(alt)) == sign);
                }
            }
        }

        (void)trivF;
    }
}

TEST_CASE("galois structure of quartic towers") {
    SUBCASE("unramified E: the unramified quartic is cyclic with unit data") {
        LocalFieldContext ctx(mk(3, 1, BaseChar::Zero, ExtType::Unramified, 5, 2));
        auto ktw = WeilTower::over_k(ctx, GammaClass::NonsquareUnit);
        CHECK(ktw->quartic_is_galois());
        const WeilGaloisData& gd = ktw->galois();
        CHECK(!gd.order2); // cyclic quartic
        CHECK(gd.eps2 == 1);
        CHECK(gd.x0 == fe_one());
        CHECK(gd.k1 == fe_one());
        CHECK(ktw->t() == FieldElem{1, 1}); // the E uniformizer
    }

    SUBCASE("unramified E: adjoining the root of the uniformizer is biquadratic") {
        LocalFieldContext ctx(mk(3, 1, BaseChar::Zero, ExtType::Unramified, 5, 2));
        auto ktw = WeilTower::over_k(ctx, GammaClass::Unif);
        CHECK(ktw->quartic_is_galois());
        const WeilGaloisData& gd = ktw->galois();
        CHECK(gd.order2);
        CHECK(gd.eps2 == 0);
    }

    SUBCASE("ramified E at p = 5: the fourth root of the uniformizer is cyclic") {
        LocalFieldContext ctx(mk(5, 1, BaseChar::Zero, ExtType::RamifiedUnit, 3, 2));
        auto ktw = WeilTower::over_k(ctx, GammaClass::Unif);
        CHECK(ktw->quartic_is_galois());
        CHECK(!ktw->galois().order2); // -1 is a fourth power root situation: cyclic
    }

    SUBCASE("ramified E at p = 5: the nonsquare-unit closure is biquadratic") {
        LocalFieldContext ctx(mk(5, 1, BaseChar::Zero, ExtType::RamifiedUnit, 3, 2));
        auto ktw = WeilTower::over_k(ctx, GammaClass::NonsquareUnit);
        CHECK(ktw->quartic_is_galois());
        const WeilGaloisData& gd = ktw->galois();
        CHECK(gd.order2);
        CHECK(gd.eps2 == 0);
    }

    SUBCASE("ramified E at p = 3: the uniformizer closure is not galois") {
        LocalFieldContext ctx(mk(3, 1, BaseChar::Zero, ExtType::RamifiedUnit, 5, 2));
        auto ktw = WeilTower::over_k(ctx, GammaClass::Unif);
        CHECK(!ktw->quartic_is_galois());
        expect_error([&] { (void)ktw->galois(); }, "unsupported-tower");
        CharacterLayer kcl = CharacterLayer::over_tower(ctx, *ktw->k_tower());
        for (const SmoothCharacter& th :
             enumerate_characters(&ktw->top_units(), 2, 1, ctx.spec().ell)) {
            if (kcl.galois_twist(th) == th)
                continue;
            WeilRep2 rep = WeilRep2::induced(ktw, th);
            expect_error([&] { (void)conjugate_dual_sign(rep); }, "unsupported-tower");
            break;
        }
    }

    SUBCASE("conjugation data satisfies the automorphism laws") {
        LocalFieldContext ctx(mk(3, 1, BaseChar::Zero, ExtType::Unramified, 5, 2));
        for (GammaClass cls : {GammaClass::NonsquareUnit, GammaClass::Unif}) {
            auto ktw = WeilTower::over_k(ctx, cls);
            const WeilGaloisData& gd = ktw->galois();
            std::vector<uint64_t> codes = ktw->top_ring()->unit_codes();
            std::mt19937_64 rng(31);
            WeilElem g = ktw->elem(gd.k1, gd.eps2);
            for (int i = 0; i < 100; ++i) {
                WeilElem a = rand_elem(*ktw, codes, rng);
                WeilElem b = rand_elem(*ktw, codes, rng);
                // alpha is multiplicative (pins the first consistency datum)
                WeilElem l = gd.conj(*ktw, ktw->mul(a, b));
                WeilElem r = ktw->mul(gd.conj(*ktw, a), gd.conj(*ktw, b));
                CHECK(l.x == r.x);
                CHECK(l.eps == r.eps);
                // alpha^2 is conjugation by the squared-lift image (second datum)
                WeilElem ll = gd.conj(*ktw, gd.conj(*ktw, a));
                WeilElem rr = ktw->mul(ktw->mul(g, a), ktw->inv(g));
                CHECK(ll.x == rr.x);
                CHECK(ll.eps == rr.eps);
            }
        }
    }
}

TEST_CASE("duality signs of induced representations") {
    LocalFieldContext ctx(mk(3, 1, BaseChar::Zero, ExtType::Unramified, 5, 2));
    for (GammaClass cls : {GammaClass::NonsquareUnit, GammaClass::Unif}) {
        auto ktw = WeilTower::over_k(ctx, cls);
        CharacterLayer kcl = CharacterLayer::over_tower(ctx, *ktw->k_tower());
        int selfdual = 0, others = 0;
        bool invariance_done = false;
        // selfdual irreducibles only exist beyond the tame level here
        for (const SmoothCharacter& th :
             enumerate_characters(&ktw->top_units(), 2, 2, ctx.spec().ell)) {
            if (selfdual >= 12 && others >= 20)
                break;
            if (kcl.galois_twist(th) == th)
                continue;
            WeilRep2 rep = WeilRep2::induced(ktw, th);
            bool dual_matches = is_isomorphic(rep.galois_conjugate().dual(), rep);
            if (!dual_matches && others >= 20)
                continue;
            if (selfdual >= 12 && dual_matches)
                continue;
            DualitySign sign = conjugate_dual_sign(rep);
            // irreducible: never both signs at once
            CHECK(sign != DualitySign::Both);
            CHECK((sign != DualitySign::Neither) == dual_matches);
            if (!dual_matches)
                ++others;
            if (sign != DualitySign::Neither) {
                ++selfdual;
                if (!invariance_done) {
                    invariance_done = true;
                    // replace t by t times a norm: the sign only sees the class
                    std::vector<uint64_t> codes = ktw->top_ring()->unit_codes();
                    std::mt19937_64 rng(13);
                    const TruncRing* E = ctx.E_ring();
                    for (int i = 0; i < 2; ++i) {
                        WeilElem y = rand_elem(*ktw, codes, rng);
                        FieldElem nm = ktw->layer().norm(y.x);
                        FieldElem lift{nm.v, E->lift_code(nm.u, ktw->layer().B->precision())};
                        FieldElem alt = fe_mul(E, ktw->t(), lift);
                        CHECK(conjugate_dual_sign(rep, ktw->with_t(alt)) == sign);
                    }
                }
            }
        }
        // over a cyclic quartic the outer square is the layer conjugation,
        // which forces every conjugate-selfdual character to be
        // sigma-fixed: no irreducible selfdual exists there.  Over a
        // biquadratic tower they do exist.
        if (ktw->galois().order2)
            CHECK(selfdual > 0);
        else
            CHECK(selfdual == 0);
        CHECK(others > 0);
    }
}

TEST_CASE("restriction from the base group to the extension group") {
    for (const FieldSpec& s : {mk(3, 1, BaseChar::Zero, ExtType::Unramified, 5, 2),
                               mk(5, 1, BaseChar::Zero, ExtType::RamifiedUnit, 3, 2)}) {
        LocalFieldContext ctx(s);
        CharacterLayer cl = CharacterLayer::over_base(ctx);
        SmoothCharacter trivF = trivial_character(&ctx.F_units());

        WeilRep2 triv = WeilRep2::sum(ctx, trivF, trivF).restrict_to_E();
        CHECK(triv.chi1().is_trivial());
        CHECK(triv.chi2().is_trivial());
        CHECK(!triv.over_base_field());

        SmoothCharacter nuF = nu_character(&ctx.F_units(), s.qF(), s.ell);
        WeilRep2 nures = WeilRep2::sum(ctx, nuF, trivF).restrict_to_E();
        CHECK(nures.chi1() == nu_character(&ctx.E_units(), s.qE(), s.ell));

        auto tw = WeilTower::over_base(ctx);
        for (const SmoothCharacter& mu :
             enumerate_characters(&ctx.E_units(), 2, 1, s.ell)) {
            if (cl.galois_twist(mu) == mu)
                continue;
            WeilRep2 res = WeilRep2::induced(tw, mu).restrict_to_E();
            CHECK(res.kind() == WeilRep2::Kind::Sum);
            CHECK(res.chi1() == mu);
            CHECK(res.chi2() == cl.galois_twist(mu));
            break;
        }
    }
}

TEST_CASE("twisting and conjugating representations") {
    LocalFieldContext ctx(mk(3, 1, BaseChar::Zero, ExtType::Unramified, 5, 2));
    CharacterLayer cl = CharacterLayer::over_base(ctx);
    auto ktw = WeilTower::over_k(ctx, GammaClass::NonsquareUnit);
    CharacterLayer kcl = CharacterLayer::over_tower(ctx, *ktw->k_tower());

    // unramified order-four character of E
    SmoothCharacter eta = make_character(
        &ctx.E_units(), RootOfUnity(1, 4),
        std::vector<RootOfUnity>(ctx.E_units().grp.factors.size(), RootOfUnity(0, 1)),
        ctx.spec().ell);

    for (const SmoothCharacter& th :
         enumerate_characters(&ktw->top_units(), 2, 1, ctx.spec().ell)) {
        if (kcl.galois_twist(th) == th)
            continue;
        WeilRep2 rep = WeilRep2::induced(ktw, th);

        // det(rep tensor eta) = det(rep) * eta^2, compared on the model
        // where both determinants live
        WeilRep2 tw2 = rep.twist(eta);
        SmoothCharacter eta_red = reduce_character(eta, kcl.base());
        CHECK(tw2.det_character() == rep.det_character() * eta_red * eta_red);

        // conjugating twice returns the isomorphism class
        WeilRep2 cc = rep.galois_conjugate().galois_conjugate();
        CHECK(is_isomorphic(cc, rep));
        break;
    }

    // sum over E: conjugation swaps through the layer involution
    auto pool = selfdual_pool(ctx, 2);
    if (!pool.empty()) {
        WeilRep2 rep = WeilRep2::sum(ctx, pool.front(), trivial_character(&ctx.E_units()));
        WeilRep2 conj = rep.galois_conjugate();
        CHECK(conj.chi1() == cl.galois_twist(pool.front()));
        CHECK(conj.chi2().is_trivial());
    }
}

TEST_CASE("projective centralizer: rule against solver") {
    LocalFieldContext ctx(mk(3, 1, BaseChar::Zero, ExtType::Unramified, 5, 2));
    for (GammaClass cls : {GammaClass::NonsquareUnit, GammaClass::Unif}) {
        auto ktw = WeilTower::over_k(ctx, cls);
        CharacterLayer kcl = CharacterLayer::over_tower(ctx, *ktw->k_tower());
        bool saw4 = false, saw2 = false;
        int compared = 0;
        // non-quadratic ratios only appear beyond the tame level
        for (const SmoothCharacter& th :
             enumerate_characters(&ktw->top_units(), 2, 2, ctx.spec().ell)) {
            if (kcl.galois_twist(th) == th)
                continue;
            WeilRep2 rep = WeilRep2::induced(ktw, th);
            int rule = dihedral_centralizer_order(rep);
            bool fresh = (rule == 4 && !saw4) || (rule == 2 && !saw2);
            if (!fresh && compared >= 24)
                continue;
            CHECK(rule == projective_centralizer_count(rep));
            ++compared;
            if (rule == 4)
                saw4 = true;
            else
                saw2 = true;
            if (saw4 && saw2 && compared >= 24)
                break;
        }
        CHECK(saw4);
        CHECK(saw2);
    }

    SmoothCharacter trivF = trivial_character(&ctx.F_units());
    WeilRep2 red = WeilRep2::sum(ctx, trivF, trivF);
    expect_error([&] { (void)dihedral_centralizer_order(red); }, "reducible-input");
    expect_error([&] { (void)projective_centralizer_count(red); }, "reducible-input");
}

TEST_CASE("value field selection") {
    CHECK(value_field_degree(5, 2) == 1);
    CHECK(value_field_degree(5, 3) == 2);
    CHECK(value_field_degree(7, 16) == 2);
    CHECK(value_field_degree(3, 8) == 2);
    CHECK_THROWS_AS((void)value_field_degree(3, 64), std::length_error);
    expect_error([] { (void)value_field_degree(3, 64); }, "too-large");
    auto a = value_field(5, 2);
    auto b = value_field(5, 2);
    CHECK(a.get() == b.get());
}

TEST_CASE("domain validation") {
    LocalFieldContext ctx(mk(3, 1, BaseChar::Zero, ExtType::Unramified, 5, 2));
    CharacterLayer cl = CharacterLayer::over_base(ctx);
    auto tw = WeilTower::over_base(ctx);
    SmoothCharacter trivF = trivial_character(&ctx.F_units());
    SmoothCharacter trivE = trivial_character(&ctx.E_units());

    expect_error([&] { (void)WeilRep2::sum(ctx, trivF, trivE); }, "wrong-domain");
    expect_error([&] { (void)WeilRep2::induced(tw, cl.compose_norm(trivF)); },
                 "reducible-input");
    expect_error([&] { (void)WeilRep2::induced(tw, trivE); }, "reducible-input");

    // a representation of the extension group rejects base-classified input
    WeilRep2 sumE = WeilRep2::sum(ctx, trivE, trivE);
    expect_error([&] { (void)sumE.evaluate(tw->s()); }, "wrong-domain");

    // elements of one tower are rejected by representations on another
    auto ktw = WeilTower::over_k(ctx, GammaClass::NonsquareUnit);
    WeilRep2 sumF = WeilRep2::sum(ctx, trivF, trivF);
    expect_error([&] { (void)sumF.evaluate(ktw->s()); }, "wrong-domain");
}
