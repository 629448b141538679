#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "moddist/abelian.hpp"
#include "moddist/truncring.hpp"

namespace moddist {

enum class BaseChar { Zero, CharP };
enum class ExtType { Unramified, RamifiedUnit, RamifiedNonsquareUnit };

// Square class of gamma in E^x cutting out the quadratic layer K = E(sqrt gamma)
enum class GammaClass { NonsquareUnit, Unif, UnifTimesNonsquare };

std::string to_string(BaseChar c);
std::string to_string(ExtType e);
std::string to_string(GammaClass g);

// A quadratic extension E/F of local fields with residue characteristic p,
// truncated at depth n counted in the uniformizer of E.
struct FieldSpec {
    long long p = 3;
    int f = 1; // residue degree of F, q_F = p^f
    BaseChar base_char = BaseChar::Zero;
    ExtType ext = ExtType::Unramified;
    long long ell = 5; // coefficient characteristic, odd prime, != p
    int depth = 2;

    bool ramified() const { return ext != ExtType::Unramified; }
    long long qF() const;
    long long qE() const { return ramified() ? qF() : qF() * qF(); }
    // throws std::invalid_argument when a constraint is violated
    void validate() const;
    std::string describe() const;
};

// Multiplicative element unif^v * u, where u is a unit code of the ring the
// element lives in.  Carries one more digit of unit precision than an
// additive ring code of the same valuation would.
struct FieldElem {
    long long v = 0;
    uint64_t u = 1;
    friend bool operator==(const FieldElem&, const FieldElem&) = default;
};

FieldElem fe_one();
FieldElem fe_unif();
FieldElem fe_mul(const TruncRing* R, FieldElem a, FieldElem b);
FieldElem fe_inv(const TruncRing* R, FieldElem a);
FieldElem fe_pow(const TruncRing* R, FieldElem a, long long e);
// unit-code constructor; throws std::invalid_argument on non-units
FieldElem fe_unit(const TruncRing* R, uint64_t code);

// One quadratic layer L/B viewed multiplicatively.  B is L->norm_target(),
// i.e. the base at the precision the norm can honestly reach.
struct QuadLayer {
    const QuadRingBase* L = nullptr;
    const TruncRing* B = nullptr;

    bool ramified() const { return L->ramified(); }
    // residue cardinality of L
    long long qL() const { return L->residue_card(); }

    FieldElem sigma(FieldElem x) const;
    FieldElem norm(FieldElem x) const;
    FieldElem embed(FieldElem x) const; // B -> L
    // additive code of a FieldElem with v >= 0 (unif^v times the unit)
    uint64_t to_code(FieldElem x) const;
    std::string elem_str(FieldElem x) const;
};

// Cyclic decomposition of a truncated unit group together with its dlog
struct UnitGroupModel {
    const TruncRing* ring = nullptr;
    AbelianModel grp;

    std::vector<long long> orders() const;
    long long size() const { return grp.size; }
    const std::vector<long long>& dlog(uint64_t unit_code) const {
        return grp.exponents(unit_code);
    }
};

UnitGroupModel build_unit_group(const TruncRing* R);
UnitGroupModel build_subgroup(const TruncRing* R, std::vector<uint64_t> codes);

// level j >= i+1 with x^p in U^j, for x in U^i, i >= 1; the level is capped
// at the ring precision.  Throws std::domain_error("not-a-principal-unit")
// when x is not in U^i or i < 1.
int unit_power_level(const TruncRing* R, uint64_t x, int i, long long p);

// The quadratic tower K/E cut out by a square class gamma of E^x.  The
// depth of K is the largest the base supports, shrunk until the unit group
// fits the enumeration budget.
class KTower {
public:
    KTower(const QuadLayer& base_layer, GammaClass cls, long long p,
           long long unit_budget);

    GammaClass cls() const { return cls_; }
    const QuadRingBase* ring() const { return K_; }
    QuadLayer layer() const; // K over (reduced) E
    int depth() const { return K_->precision(); }
    // delta_K^2 as an element of the full-precision E ring (for ramified
    // layers; for the unramified layer, the stored quadratic constant)
    FieldElem gamma() const { return gamma_; }

    const UnitGroupModel& units() const;
    // units of norm_target(), the reduced E the norm can see
    const UnitGroupModel& base_units() const;

private:
    GammaClass cls_;
    const QuadRingBase* base_full_;
    std::unique_ptr<QuadRingBase> K_owned_;
    const QuadRingBase* K_;
    FieldElem gamma_;
    mutable std::unique_ptr<UnitGroupModel> units_;
    mutable std::unique_ptr<UnitGroupModel> base_units_;
};

// The full arithmetic context of one FieldSpec: rings for F and E, unit
// group models, the norm-one subgroup, and K towers above E.
class LocalFieldContext {
public:
    explicit LocalFieldContext(const FieldSpec& spec);

    const FieldSpec& spec() const { return spec_; }
    const TruncRing* F_ring() const { return F_; }
    const QuadRingBase* E_ring() const { return E_; }
    QuadLayer layer() const; // E over F
    // F-side truncation depth (= depth for unramified, ceil(depth/2) else)
    int F_depth() const { return F_->precision(); }

    const UnitGroupModel& F_units() const;
    const UnitGroupModel& E_units() const;
    // kernel of the norm on truncated units, E^1
    const UnitGroupModel& norm_one_units() const;
    std::vector<uint64_t> norm_one_codes() const;

    const KTower& k_tower(GammaClass cls) const;

    std::string describe() const;

private:
    FieldSpec spec_;
    std::unique_ptr<TruncRing> F_owned_;
    std::unique_ptr<QuadRingBase> E_owned_;
    const TruncRing* F_;
    const QuadRingBase* E_;
    mutable std::unique_ptr<UnitGroupModel> F_units_;
    mutable std::unique_ptr<UnitGroupModel> E_units_;
    mutable std::unique_ptr<UnitGroupModel> norm_one_;
    mutable std::unique_ptr<KTower> towers_[3];
};

// Witness (m, s) with unif_L^m = unif_bottom^s * u, u in U_L^N, where the
// bottom field sits under one or two quadratic layers.  Searches s up to
// s_max; std::nullopt means no witness below the truncation/search bound.
std::optional<std::pair<long long, long long>>
uniformizer_power_witness(const std::vector<QuadLayer>& tower, int N,
                          long long s_max);

} // namespace moddist
