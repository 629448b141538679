#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "moddist/characters.hpp"
#include "moddist/fq.hpp"
#include "moddist/linalg.hpp"
#include "moddist/localfield.hpp"

namespace moddist {

// Which sign of nondegenerate twisted-duality pairing a representation
// admits.  Irreducible inputs land on exactly one sign or Neither; Both
// only occurs for reducible ones.
enum class DualitySign { ConjugateOrthogonal, ConjugateSymplectic, Both, Neither };

std::string to_string(DualitySign s);

class WeilTower;

// Element x * s^eps of the index-two Weil model W(L/M) = L^x . s, with
// s y s^{-1} = sigma(y) and s^2 = t.  Elements remember their tower.
struct WeilElem {
    const WeilTower* tw = nullptr;
    FieldElem x;
    int eps = 0;
};

// sigma_{E/F}-structure transported to a quadratic tower K/E whose quartic
// K/F is Galois: the extension of sigma to K (as the ring map fixing E's
// image and scaling delta_K by c), together with the conjugation data of
// the outer involution on W(K/E):
//   alpha(y, 0)  = (sigma_tilde(y), 0)
//   alpha(1, 1)  = (x0, 1)
//   image of the squared outer lift  = (k1, eps2).
// Consistency at construction:
//   C1  sigma(t) = Nm(x0) * t
//   C2  sigma_tilde(x0) * x0 = k1 / sigma(k1)
//   C3  the base class of (k1, eps2) is the E/F non-norm class.
struct WeilGaloisData {
    bool order2 = true; // sigma_tilde^2 = id (else = sigma_{K/E})
    uint64_t c_code = 1; // full-precision E code, sigma_tilde(delta) = c delta
    FieldElem x0;
    FieldElem k1;
    int eps2 = 0;

    FieldElem apply(const WeilTower& tw, FieldElem x) const; // sigma_tilde on K
    WeilElem conj(const WeilTower& tw, const WeilElem& w) const; // alpha
};

// One quadratic tower L/M carrying the concrete index-two Weil model: the
// E/F layer of a context, or a K/E layer above it.  Immutable; towers are
// shared between the representations built on them.
//
// t is the first non-norm of M^x in the enumeration v-major (v in {0,1}),
// unit code ascending; every consumer depends only on its class modulo
// Nm(L^x), which with_t lets tests vary.
class WeilTower {
public:
    static std::shared_ptr<const WeilTower> over_base(const LocalFieldContext& ctx);
    static std::shared_ptr<const WeilTower> over_k(const LocalFieldContext& ctx,
                                                   GammaClass cls);
    // same tower, replacing t by another non-norm; throws
    // std::invalid_argument when alt_t is a norm
    std::shared_ptr<const WeilTower> with_t(FieldElem alt_t) const;

    const LocalFieldContext& ctx() const { return *ctx_; }
    bool is_base_tower() const { return kt_ == nullptr; }
    const KTower* k_tower() const { return kt_; }
    QuadLayer layer() const { return lay_; }
    const UnitGroupModel& top_units() const { return *top_units_; }
    // units of the layer's norm target (full M for the base tower)
    const UnitGroupModel& base_units() const { return *base_units_; }
    const TruncRing* base_full_ring() const { return base_full_; }
    const TruncRing* top_ring() const { return lay_.L; }

    FieldElem t() const { return t_; }
    // t as an element of L, embedded through the norm target
    FieldElem t_in_top() const;
    // membership of a full-precision M element in Nm(L^x)
    bool is_norm(FieldElem x) const;
    // a full-precision M element reduced to the norm target
    FieldElem reduce_to_norm_target(FieldElem x) const;

    WeilElem elem(FieldElem x, int eps) const;
    WeilElem one() const { return elem(fe_one(), 0); }
    WeilElem s() const { return elem(fe_one(), 1); }
    WeilElem mul(const WeilElem& a, const WeilElem& b) const;
    WeilElem inv(const WeilElem& a) const;
    // (g, 0) for every unit generator of L, (unif_L, 0), and (1, 1)
    std::vector<WeilElem> generators() const;
    // base class of an element: Nm(x) * t^eps over the norm target
    FieldElem abelianized(const WeilElem& w) const;

    // sigma_{E/F} data for a K tower; throws std::domain_error
    // ("unsupported-tower") when K/F is not Galois, std::logic_error on the
    // base tower where the structure is already sigma itself
    const WeilGaloisData& galois() const;
    // whether K/F is Galois (always true for the base tower)
    bool quartic_is_galois() const;

    std::string describe() const;

private:
    WeilTower() = default;

    const LocalFieldContext* ctx_ = nullptr;
    const KTower* kt_ = nullptr;
    QuadLayer lay_;
    const UnitGroupModel* top_units_ = nullptr;
    const UnitGroupModel* base_units_ = nullptr;
    const TruncRing* base_full_ = nullptr;
    FieldElem t_;
    FieldElem norm_unif_; // Nm(unif_L) over the norm target
    std::vector<char> norm_unit_image_; // indicator on norm-target codes
    mutable std::mutex galois_mu_;
    mutable std::optional<WeilGaloisData> galois_;
    mutable bool galois_known_failed_ = false;

    void init(const LocalFieldContext& ctx, const KTower* kt);
    WeilGaloisData compute_galois() const;
};

// least degree d with n | ell^d - 1; throws std::length_error ("too-large")
// when the witnessing field would exceed the context bound
int value_field_degree(long long ell, long long n);

// shared evaluation field F_{ell^d}; contexts are cached per (ell, d)
std::shared_ptr<const FqContext> value_field(long long ell, int d);

// A two-dimensional semisimple representation of the truncated Weil group
// of F or of E: either a sum of two smooth characters of the field itself,
// or the induction of a character theta of the top of a quadratic tower.
// Induced inputs with theta equal to its tower conjugate are rejected, so
// Induced is always irreducible and Sum always reducible.
class WeilRep2 {
public:
    enum class Kind { Sum, Induced };

    static WeilRep2 sum(const LocalFieldContext& ctx, SmoothCharacter chi1,
                        SmoothCharacter chi2);
    static WeilRep2 induced(std::shared_ptr<const WeilTower> tower,
                            SmoothCharacter theta);

    Kind kind() const { return kind_; }
    bool is_irreducible() const { return kind_ == Kind::Induced; }
    const LocalFieldContext& ctx() const { return *ctx_; }
    // true when this represents the Weil group of F, false for E
    bool over_base_field() const { return over_F_; }
    const SmoothCharacter& chi1() const { return chi1_; }
    const SmoothCharacter& chi2() const { return chi2_; }
    const SmoothCharacter& theta() const { return chi1_; }
    const SmoothCharacter& theta_conj() const { return chi2_; }
    const std::shared_ptr<const WeilTower>& tower() const { return tower_; }

    // lcm of the value orders (with 2), the order every evaluation needs
    long long value_order() const;
    const std::shared_ptr<const FqContext>& fq() const { return fq_; }

    // image of w, over this representation's own field; throws
    // std::invalid_argument ("wrong-domain") when w's tower does not match
    Mat2 evaluate(const WeilElem& w) const;
    // image of a plain field element (the abelianized part); Sum only
    Mat2 evaluate_field(FieldElem x) const;

    SmoothCharacter det_character() const;
    WeilRep2 dual() const;
    // tensor by a character of the representation's field
    WeilRep2 twist(const SmoothCharacter& eta) const;
    // sigma_{E/F}-conjugate of a representation of the Weil group of E;
    // Induced towers need Galois K/F ("unsupported-tower" otherwise)
    WeilRep2 galois_conjugate() const;
    // restriction of a representation of the Weil group of F to that of E
    WeilRep2 restrict_to_E() const;

    std::string str() const;

private:
    WeilRep2() = default;

    Kind kind_ = Kind::Sum;
    const LocalFieldContext* ctx_ = nullptr;
    bool over_F_ = false;
    SmoothCharacter chi1_; // Sum: first character; Induced: theta
    SmoothCharacter chi2_; // Sum: second character; Induced: theta's conjugate
    std::shared_ptr<const WeilTower> tower_; // Induced only
    std::shared_ptr<const FqContext> fq_;
};

// dimension of the intertwiner space Hom(a, b) computed over generators
int intertwiner_dimension(const WeilRep2& a, const WeilRep2& b);
int endomorphism_dimension(const WeilRep2& a);

// true iff an invertible intertwiner exists; both inputs over the same
// field of the same context (mixed Sum/Induced inputs are never isomorphic)
bool is_isomorphic(const WeilRep2& a, const WeilRep2& b);

// The twisted-duality sign of a representation of the Weil group of E:
// solves for a nonzero pairing B with  rho(w)^T B rho^sigma(w) = B  on
// generators together with  B^T = b * B * rho(s^2), and classifies by which
// sign b admits a nondegenerate solution.
DualitySign conjugate_dual_sign(const WeilRep2& rep);
// same, with an explicit tower carrying the non-norm class (for Sum inputs
// an E/F tower; for Induced inputs a tower over the same K)
DualitySign conjugate_dual_sign(const WeilRep2& rep,
                                const std::shared_ptr<const WeilTower>& tw);

// centralizer order of the projectivized image of an irreducible Induced
// representation: 4 when theta / theta^sigma has order two, else 2; throws
// std::invalid_argument ("reducible-input") on Sum inputs
int dihedral_centralizer_order(const WeilRep2& rep);
// the same count obtained by solving the projective centralizer equations
// over all sign patterns on the generators
int projective_centralizer_count(const WeilRep2& rep);

} // namespace moddist
