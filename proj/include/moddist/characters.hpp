#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "moddist/localfield.hpp"
#include "moddist/rootunity.hpp"

namespace moddist {

// A smooth character of a truncated multiplicative group, determined by its
// value at the uniformizer and its values on the generators of the unit
// group model.  Values are roots of unity of order prime to ell, i.e.
// elements of the torsion of an algebraically closed field of
// characteristic ell.
struct SmoothCharacter {
    const UnitGroupModel* dom = nullptr;
    RootOfUnity unif_value{0, 1};
    std::vector<RootOfUnity> unit_values;

    RootOfUnity eval_unit(uint64_t code) const;
    RootOfUnity eval(FieldElem x) const;
    bool is_trivial() const;
    long long order() const;

    SmoothCharacter operator*(const SmoothCharacter& o) const;
    SmoothCharacter inverse() const;
    SmoothCharacter pow(long long k) const;
    friend bool operator==(const SmoothCharacter&, const SmoothCharacter&) = default;

    std::string str() const;
};

// validated constructor: one value per generator, value orders dividing the
// generator orders and prime to ell
SmoothCharacter make_character(const UnitGroupModel* dom, RootOfUnity unif_value,
                               std::vector<RootOfUnity> unit_values, long long ell);
SmoothCharacter trivial_character(const UnitGroupModel* dom);

bool is_quadratic(const SmoothCharacter& chi);
bool is_unramified(const SmoothCharacter& chi);

// the unramified character with unif value q^{-1} viewed in the ell-modular
// torsion, and its square root under the stated convention
SmoothCharacter nu_character(const UnitGroupModel* dom, long long q, long long ell);

enum class NuHalfConvention { EvenNumerator, OddNumerator };

// (nu_half)^2 = nu always; of the two square roots, EvenNumerator picks the
// one whose reduced numerator is even, and when both are odd the
// lexicographically smaller one (OddNumerator picks the complementary root)
SmoothCharacter nu_half_character(const UnitGroupModel* dom, long long q, long long ell,
                                  NuHalfConvention conv);

// all characters with unif-value order dividing max_unif_order and trivial
// on U^max_conductor, in a deterministic order
std::vector<SmoothCharacter> enumerate_characters(const UnitGroupModel* dom,
                                                  long long max_unif_order,
                                                  int max_conductor, long long ell);

// a character of the full-precision domain re-expressed on a reduced-
// precision model of the same tower of rings; throws std::domain_error
// ("dlog-failure") when the character does not factor through the reduction
SmoothCharacter reduce_character(const SmoothCharacter& chi, const UnitGroupModel* red_dom);

// Character operations over one quadratic layer L/B: Galois twist,
// restriction, norm inflation, and the layer's quadratic class character.
class CharacterLayer {
public:
    CharacterLayer(QuadLayer lay, const UnitGroupModel* top, const UnitGroupModel* base,
                   const UnitGroupModel* norm_one, long long ell);

    // bound to the E/F layer of a context
    static CharacterLayer over_base(const LocalFieldContext& ctx);
    // bound to the K/E layer of a tower
    static CharacterLayer over_tower(const LocalFieldContext& ctx, const KTower& kt);

    const QuadLayer& lay() const { return lay_; }
    const UnitGroupModel* top() const { return top_; }
    const UnitGroupModel* base() const { return base_; }
    long long ell() const { return ell_; }

    SmoothCharacter galois_twist(const SmoothCharacter& chi) const;
    SmoothCharacter restrict_to_base(const SmoothCharacter& chi) const;
    SmoothCharacter compose_norm(const SmoothCharacter& eta) const;
    // the unique nontrivial character of B^x trivial on the norms of L^x
    SmoothCharacter omega() const;

    bool is_trivial_on_base(const SmoothCharacter& chi) const;
    bool is_trivial_on_norm_one(const SmoothCharacter& chi) const;
    bool is_galois_invariant(const SmoothCharacter& chi) const;

private:
    QuadLayer lay_;
    const UnitGroupModel* top_;
    const UnitGroupModel* base_;
    const UnitGroupModel* norm_one_;
    long long ell_;
};

} // namespace moddist
