#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "moddist/abelian.hpp"
#include "moddist/localfield.hpp"
#include "moddist/truncring.hpp"

using namespace moddist;

namespace {

std::multiset<long long> order_multiset(const UnitGroupModel& m) {
    const auto v = m.orders();
    return {v.begin(), v.end()};
}

FieldSpec spec_unram(long long p, int f, long long ell, int depth,
                     BaseChar bc = BaseChar::Zero) {
    FieldSpec s;
    s.p = p;
    s.f = f;
    s.base_char = bc;
    s.ext = ExtType::Unramified;
    s.ell = ell;
    s.depth = depth;
    return s;
}

FieldSpec spec_ram(long long p, int f, long long ell, int depth,
                   ExtType ext = ExtType::RamifiedUnit) {
    FieldSpec s;
    s.p = p;
    s.f = f;
    s.ext = ext;
    s.ell = ell;
    s.depth = depth;
    return s;
}

} // namespace

TEST_CASE("smith normal form: transforms are tracked exactly") {
    const std::vector<std::vector<long long>> A = {{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}};
    const SnfResult r = smith_normal_form(A);

    // D = U A V
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) {
            long long uav = 0;
            for (size_t k = 0; k < 3; ++k)
                for (size_t l = 0; l < 3; ++l)
                    uav += r.U[i][k] * A[k][l] * r.V[l][j];
            CHECK(uav == r.D[i][j]);
        }
    // V W = I
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) {
            long long vw = 0;
            for (size_t k = 0; k < 3; ++k)
                vw += r.V[i][k] * r.W[k][j];
            CHECK(vw == (i == j ? 1 : 0));
        }
    // diagonal, nonnegative, divisibility chain
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j)
            if (i != j)
                CHECK(r.D[i][j] == 0);
    CHECK(r.D[0][0] >= 0);
    for (size_t i = 0; i + 1 < 3; ++i)
        if (r.D[i][i] != 0)
            CHECK(r.D[i + 1][i + 1] % r.D[i][i] == 0);
}

TEST_CASE("abelian decomposition: multiplicative groups mod n") {
    const auto mul_mod = [](long long n) {
        return [n](uint64_t a, uint64_t b) { return a * b % static_cast<uint64_t>(n); };
    };
    const auto units_mod = [](long long n) {
        std::vector<uint64_t> v;
        for (long long a = 1; a < n; ++a) {
            long long x = a, y = n;
            while (y != 0) {
                const long long t = x % y;
                x = y;
                y = t;
            }
            if (x == 1)
                v.push_back(static_cast<uint64_t>(a));
        }
        return v;
    };

    // (Z/13)x cyclic of order 12 -> primary {4, 3}
    const AbelianModel m13 = decompose_abelian(units_mod(13), 1, mul_mod(13));
    std::multiset<long long> o13;
    for (const auto& f : m13.factors)
        o13.insert(f.order);
    CHECK(o13 == std::multiset<long long>{4, 3});
    CHECK(m13.size == 12);

    // (Z/15)x = Z/4 x Z/2
    const AbelianModel m15 = decompose_abelian(units_mod(15), 1, mul_mod(15));
    std::multiset<long long> o15;
    for (const auto& f : m15.factors)
        o15.insert(f.order);
    CHECK(o15 == std::multiset<long long>{4, 2});

    // (Z/24)x = (Z/2)^3
    const AbelianModel m24 = decompose_abelian(units_mod(24), 1, mul_mod(24));
    std::multiset<long long> o24;
    for (const auto& f : m24.factors)
        o24.insert(f.order);
    CHECK(o24 == std::multiset<long long>{2, 2, 2});

    // dlog of generator i is the i-th unit vector
    for (size_t i = 0; i < m15.factors.size(); ++i) {
        const auto& e = m15.exponents(m15.factors[i].gen);
        for (size_t j = 0; j < e.size(); ++j)
            CHECK(e[j] == (i == j ? 1 : 0));
    }
}

TEST_CASE("unit groups: frozen cyclic structures") {
    SUBCASE("residue field F_3 alone") {
        LocalFieldContext ctx(spec_unram(3, 1, 5, 1));
        CHECK(order_multiset(ctx.F_units()) == std::multiset<long long>{2});
        CHECK(ctx.F_units().size() == 2);
    }
    SUBCASE("q_E = 9 at depth 2") {
        LocalFieldContext ctx(spec_unram(3, 1, 5, 2));
        CHECK(order_multiset(ctx.E_units()) == std::multiset<long long>{8, 3, 3});
        CHECK(ctx.E_units().size() == 72);
    }
    SUBCASE("Z/25 units") {
        LocalFieldContext ctx(spec_unram(5, 1, 3, 2));
        CHECK(order_multiset(ctx.F_units()) == std::multiset<long long>{4, 5});
        CHECK(ctx.F_units().size() == 20);
    }
    SUBCASE("equal characteristic mirrors the structure") {
        LocalFieldContext ctx(spec_unram(3, 1, 5, 2, BaseChar::CharP));
        CHECK(order_multiset(ctx.F_units()) == std::multiset<long long>{3, 2});
        CHECK(order_multiset(ctx.E_units()) == std::multiset<long long>{8, 3, 3});
    }
    SUBCASE("order product matches (q-1) q^(n-1)") {
        LocalFieldContext ctx(spec_ram(5, 1, 3, 3));
        // E ramified at depth 3: (5-1) * 5^2 = 100
        CHECK(ctx.E_units().size() == 100);
        // F sits at depth ceil(3/2) = 2
        CHECK(ctx.F_units().size() == 20);
    }
    SUBCASE("generator dlogs are unit vectors") {
        LocalFieldContext ctx(spec_unram(3, 1, 5, 2));
        const auto& m = ctx.E_units();
        for (size_t i = 0; i < m.grp.factors.size(); ++i) {
            const auto& e = m.dlog(m.grp.factors[i].gen);
            for (size_t j = 0; j < e.size(); ++j)
                CHECK(e[j] == (i == j ? 1 : 0));
        }
    }
    SUBCASE("oversized groups are refused") {
        LocalFieldContext ctx(spec_unram(3, 2, 5, 3));
        CHECK_THROWS_AS(ctx.E_units(), std::length_error);
    }
}

TEST_CASE("sigma: involution with fixed set exactly the embedded base") {
    SUBCASE("unramified, exhaustive at q_E = 9, depth 2") {
        LocalFieldContext ctx(spec_unram(3, 1, 5, 2));
        const QuadRingBase* E = ctx.E_ring();
        const TruncRing* F = ctx.F_ring();
        std::set<uint64_t> embedded;
        for (uint64_t c = 0; c < F->size(); ++c)
            embedded.insert(E->embed(c));
        for (uint64_t x = 0; x < E->size(); ++x) {
            CHECK(E->sigma(E->sigma(x)) == x);
            CHECK((E->sigma(x) == x) == (embedded.count(x) != 0));
        }
    }
    SUBCASE("ramified, exhaustive at q = 5, depth 2") {
        LocalFieldContext ctx(spec_ram(5, 1, 3, 2));
        const QuadRingBase* E = ctx.E_ring();
        const TruncRing* F = ctx.F_ring();
        std::set<uint64_t> embedded;
        for (uint64_t c = 0; c < F->size(); ++c)
            embedded.insert(E->embed(F->reduce_code(c, E->norm_target()->precision())));
        for (uint64_t x = 0; x < E->size(); ++x) {
            CHECK(E->sigma(E->sigma(x)) == x);
            CHECK((E->sigma(x) == x) == (embedded.count(x) != 0));
        }
    }
    SUBCASE("sigma sends the ramified uniformizer to its negative") {
        LocalFieldContext ctx(spec_ram(5, 1, 3, 3));
        const QuadLayer lay = ctx.layer();
        const FieldElem pi = fe_unif();
        const FieldElem spi = lay.sigma(pi);
        CHECK(spi.v == 1);
        CHECK(spi.u == ctx.E_ring()->neg(1));
        // and sigma is an involution on multiplicative elements
        CHECK(lay.sigma(spi) == pi);
    }
    SUBCASE("sigma fixes embedded F multiplicatively") {
        for (const FieldSpec& s : {spec_unram(3, 1, 5, 2), spec_ram(3, 1, 5, 2),
                                   spec_ram(5, 1, 3, 3, ExtType::RamifiedNonsquareUnit)}) {
            LocalFieldContext ctx(s);
            const QuadLayer lay = ctx.layer();
            for (uint64_t c : ctx.F_ring()->unit_codes()) {
                const FieldElem x = lay.embed(fe_unit(lay.B, lay.B->reduce_code(c, lay.B->precision())));
                CHECK(lay.sigma(x) == x);
            }
            const FieldElem piF = lay.embed(fe_unif());
            CHECK(lay.sigma(piF) == piF);
        }
    }
}

TEST_CASE("norm: values, multiplicativity, index two") {
    SUBCASE("norm of an embedded element is its square") {
        for (const FieldSpec& s : {spec_unram(3, 1, 5, 2), spec_ram(5, 1, 3, 2)}) {
            LocalFieldContext ctx(s);
            const QuadLayer lay = ctx.layer();
            for (uint64_t c : lay.B->unit_codes()) {
                const FieldElem x = fe_unit(lay.B, c);
                CHECK(lay.norm(lay.embed(x)) == fe_pow(lay.B, x, 2));
            }
        }
    }
    SUBCASE("ramified uniformizer: norm is -d pi_F") {
        LocalFieldContext ctx(spec_ram(5, 1, 3, 2, ExtType::RamifiedNonsquareUnit));
        const QuadLayer lay = ctx.layer();
        const FieldElem n = lay.norm(fe_unif());
        CHECK(n.v == 1);
        // least nonsquare unit of Z/5 is 2, so Nm(pi_E) = -2 pi_F
        CHECK(n.u == lay.B->neg(lay.B->from_int(2)));
    }
    SUBCASE("multiplicative, exhaustively on units at q_E = 9, depth 2") {
        LocalFieldContext ctx(spec_unram(3, 1, 5, 2));
        const QuadRingBase* E = ctx.E_ring();
        const auto units = E->unit_codes();
        for (uint64_t a : units)
            for (uint64_t b : units)
                CHECK(E->norm(E->mul(a, b)) == E->norm_target()->mul(E->norm(a), E->norm(b)));
    }
    SUBCASE("index of norms in the base units") {
        for (long long p : {3LL, 5LL, 7LL}) {
            for (int depth : {1, 2, 3}) {
                // unramified: unit norms are all of U_F
                LocalFieldContext cu(spec_unram(p, 1, p == 3 ? 5 : 3, depth));
                std::set<uint64_t> img;
                for (uint64_t c : cu.E_ring()->unit_codes())
                    img.insert(cu.E_ring()->norm(c));
                CHECK(img.size() == cu.F_units().grp.dlog.size());

                // ramified: unit norms have index 2
                for (ExtType ext : {ExtType::RamifiedUnit, ExtType::RamifiedNonsquareUnit}) {
                    LocalFieldContext cr(spec_ram(p, 1, p == 3 ? 5 : 3, depth, ext));
                    std::set<uint64_t> rimg;
                    for (uint64_t c : cr.E_ring()->unit_codes())
                        rimg.insert(cr.E_ring()->norm(c));
                    CHECK(2 * rimg.size() == cr.F_units().grp.dlog.size());
                }
            }
        }
    }
}

TEST_CASE("norm-one subgroup and Hilbert 90 at truncation") {
    SUBCASE("unramified q_F = 3, depth 1: kernel on mu_8 has four elements") {
        LocalFieldContext ctx(spec_unram(3, 1, 5, 1));
        const auto ker = ctx.norm_one_codes();
        CHECK(ker.size() == 4);
        CHECK(order_multiset(ctx.norm_one_units()) == std::multiset<long long>{4});
        // 1 is a norm-one element and every listed element has norm 1
        bool has_one = false;
        for (uint64_t c : ker) {
            has_one = has_one || c == 1;
            CHECK(ctx.E_ring()->norm(c) == 1);
        }
        CHECK(has_one);
    }
    SUBCASE("kernel equals the set of sigma(y)/y") {
        for (const FieldSpec& s : {spec_unram(3, 1, 5, 2), spec_unram(3, 1, 5, 1),
                                   spec_ram(5, 1, 3, 2), spec_ram(3, 1, 5, 3),
                                   spec_ram(5, 1, 3, 2, ExtType::RamifiedNonsquareUnit)}) {
            LocalFieldContext ctx(s);
            const QuadLayer lay = ctx.layer();
            const QuadRingBase* E = ctx.E_ring();
            std::set<uint64_t> h90;
            for (uint64_t c : E->unit_codes()) {
                const FieldElem y = fe_unit(E, c);
                for (long long v : {0LL, 1LL}) {
                    const FieldElem z = fe_mul(E, y, {v, 1});
                    const FieldElem q = fe_mul(E, lay.sigma(z), fe_inv(E, z));
                    REQUIRE(q.v == 0);
                    h90.insert(q.u);
                }
            }
            const auto kerv = ctx.norm_one_codes();
            const std::set<uint64_t> ker(kerv.begin(), kerv.end());
            CHECK(h90 == ker);
        }
    }
}

TEST_CASE("principal unit levels under the p-th power") {
    SUBCASE("x = 1 reaches the full depth") {
        LocalFieldContext ctx(spec_unram(3, 1, 5, 2));
        CHECK(unit_power_level(ctx.E_ring(), 1, 1, 3) == 2);
    }
    SUBCASE("exhaustive on U^1 at q_E = 9, depth 4") {
        LocalFieldContext ctx(spec_unram(3, 1, 5, 4));
        const QuadRingBase* E = ctx.E_ring();
        for (uint64_t c : E->unit_codes()) {
            const int i = E->val(E->sub(c, 1));
            if (i < 1)
                continue;
            const int j = unit_power_level(E, c, i, 3);
            CHECK(j >= std::min(i + 1, 4));
        }
    }
    SUBCASE("random draws across configurations") {
        std::mt19937 rng(20240817u);
        for (const FieldSpec& s : {spec_unram(3, 1, 5, 4), spec_ram(5, 1, 3, 4),
                                   spec_unram(7, 1, 3, 2),
                                   spec_unram(3, 1, 5, 3, BaseChar::CharP)}) {
            LocalFieldContext ctx(s);
            const QuadRingBase* E = ctx.E_ring();
            int done = 0;
            while (done < 100) {
                const uint64_t c = rng() % E->size();
                const int i = E->val(E->sub(c, 1));
                if (i < 1 || i >= E->precision())
                    continue;
                const int j = unit_power_level(E, c, i, s.p);
                CHECK(j >= std::min(i + 1, E->precision()));
                ++done;
            }
        }
    }
    SUBCASE("rejects non-principal units") {
        LocalFieldContext ctx(spec_unram(3, 1, 5, 2));
        const uint64_t g = ctx.E_units().grp.factors[0].gen; // order 8, residue != 1
        CHECK_THROWS_AS(unit_power_level(ctx.E_ring(), g, 1, 3), std::domain_error);
        CHECK_THROWS_AS(unit_power_level(ctx.E_ring(), 1, 0, 3), std::domain_error);
    }
}

TEST_CASE("K towers above E") {
    SUBCASE("unramified tower with budget shrink") {
        LocalFieldContext ctx(spec_unram(7, 1, 3, 2)); // q_E = 49, q_K = 2401
        const KTower& kt = ctx.k_tower(GammaClass::NonsquareUnit);
        CHECK(kt.depth() == 1); // 2400 * 2401 units would blow the budget
        CHECK(kt.units().size() == 2400);
        CHECK(kt.ring()->residue_card() == 2401);
        // gamma is a nonsquare unit of E
        const FieldElem g = kt.gamma();
        CHECK(g.v == 0);
        CHECK(ctx.E_ring()->is_unit(g.u));
    }
    SUBCASE("ramified towers keep the natural depth at small q") {
        LocalFieldContext ctx(spec_unram(3, 1, 5, 2));
        const KTower& kt = ctx.k_tower(GammaClass::Unif);
        CHECK(kt.depth() == 4);
        CHECK(kt.units().size() == 8 * 9 * 9 * 9); // (q_K - 1) q_K^3, q_K = 9
        const FieldElem g = kt.gamma();
        CHECK(g.v == 1);
        CHECK(g.u == 1);
        // delta_K^2 computed inside K equals embedded gamma
        const QuadLayer kl = kt.layer();
        const FieldElem dk2 = fe_pow(kt.ring(), fe_unif(), 2);
        FieldElem ge = g;
        ge.u = ctx.E_ring()->reduce_code(ge.u, kl.B->precision());
        CHECK(kl.embed(ge) == dk2);
    }
    SUBCASE("sigma and norm work through stacked layers") {
        LocalFieldContext ctx(spec_ram(5, 1, 3, 2));
        const KTower& kt = ctx.k_tower(GammaClass::NonsquareUnit);
        const QuadLayer kl = kt.layer();
        for (uint64_t c : kt.ring()->unit_codes()) {
            const FieldElem x = fe_unit(kt.ring(), c);
            CHECK(kl.sigma(kl.sigma(x)) == x);
            const FieldElem n = kl.norm(x);
            CHECK(kl.norm(kl.sigma(x)) == n);
        }
    }
}

TEST_CASE("uniformizer power witnesses") {
    SUBCASE("unramified is trivially (1, 1)") {
        LocalFieldContext ctx(spec_unram(3, 1, 5, 2));
        const auto w = uniformizer_power_witness({ctx.layer()}, 2, 10);
        REQUIRE(w.has_value());
        CHECK(w->first == 1);
        CHECK(w->second == 1);
    }
    SUBCASE("ramified with d = 1 gives (2, 1)") {
        LocalFieldContext ctx(spec_ram(5, 1, 3, 2));
        const auto w = uniformizer_power_witness({ctx.layer()}, 2, 10);
        REQUIRE(w.has_value());
        CHECK(w->first == 2);
        CHECK(w->second == 1);
    }
    SUBCASE("ramified with nonsquare d needs the order of d") {
        LocalFieldContext ctx(spec_ram(5, 1, 3, 2, ExtType::RamifiedNonsquareUnit));
        // pi_E^2 = 2 pi_F and ord(2 mod 5) = 4, so the witness is (8, 4)
        const auto w = uniformizer_power_witness({ctx.layer()}, 2, 10);
        REQUIRE(w.has_value());
        CHECK(w->first == 8);
        CHECK(w->second == 4);
        // with the search bound below 4 the witness is honestly absent
        CHECK_FALSE(uniformizer_power_witness({ctx.layer()}, 2, 3).has_value());
    }
    SUBCASE("two-layer tower") {
        LocalFieldContext ctx(spec_unram(3, 1, 5, 2));
        const KTower& kt = ctx.k_tower(GammaClass::Unif);
        const auto w =
            uniformizer_power_witness({ctx.layer(), kt.layer()}, kt.depth(), 10);
        REQUIRE(w.has_value());
        CHECK(w->first == 2);
        CHECK(w->second == 1);
    }
    SUBCASE("level beyond the truncation is rejected") {
        LocalFieldContext ctx(spec_unram(3, 1, 5, 2));
        CHECK_THROWS_AS(uniformizer_power_witness({ctx.layer()}, 9, 10),
                        std::invalid_argument);
    }
}

TEST_CASE("field spec validation") {
    CHECK_THROWS_AS(LocalFieldContext(spec_unram(3, 1, 3, 2)), std::invalid_argument);
    CHECK_THROWS_AS(LocalFieldContext(spec_unram(3, 1, 4, 2)), std::invalid_argument);
    CHECK_THROWS_AS(LocalFieldContext(spec_unram(4, 1, 5, 2)), std::invalid_argument);
    CHECK_THROWS_AS(LocalFieldContext(spec_unram(3, 1, 5, 0)), std::invalid_argument);
    CHECK_THROWS_AS(LocalFieldContext(spec_unram(2, 1, 5, 3, BaseChar::CharP)),
                    std::invalid_argument);
    CHECK_THROWS_AS(LocalFieldContext(spec_unram(2, 1, 5, 2)), std::invalid_argument);
    // p = 2 over a characteristic-zero base at sufficient depth is fine
    LocalFieldContext two(spec_unram(2, 1, 5, 3));
    CHECK(two.E_units().size() == 48);
}
