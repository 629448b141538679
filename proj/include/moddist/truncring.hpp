#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "moddist/fq.hpp"

namespace moddist {

// Truncated valuation ring O/pi^m with dense element codes in [0, size()).
// Code 0 is zero and code 1 is one in every implementation.  Four concrete
// layers cover all fields in play:
//
//   ZqRing        unramified characteristic-0 base, GR(p^m, f)
//   TqRing        positive-characteristic base, F_q[t]/(t^m)
//   QuadUnramRing unramified quadratic layer over any base ring
//   QuadRamRing   ramified quadratic layer (Eisenstein x^2 = d*pi_base)
//
// A ring owns lazily built reduced-precision siblings, shared through the
// full-precision root so pointer identity can be used for "same ring".
class TruncRing {
public:
    virtual ~TruncRing() = default;

    TruncRing(const TruncRing&) = delete;
    TruncRing& operator=(const TruncRing&) = delete;

    long long residue_card() const { return q_; }
    // truncation exponent, measured in this ring's own uniformizer
    int precision() const { return m_; }
    uint64_t size() const { return size_; }

    virtual uint64_t add(uint64_t a, uint64_t b) const = 0;
    virtual uint64_t sub(uint64_t a, uint64_t b) const = 0;
    virtual uint64_t mul(uint64_t a, uint64_t b) const = 0;
    virtual uint64_t neg(uint64_t a) const = 0;
    // inverse of a unit; throws std::domain_error on non-units
    virtual uint64_t inv(uint64_t a) const = 0;
    virtual uint64_t from_int(long long n) const = 0;
    // multiplication by the ring's own uniformizer
    virtual uint64_t times_unif(uint64_t a) const = 0;
    // valuation in the own uniformizer, capped at precision(); val(0) = m
    virtual int val(uint64_t a) const = 0;

    bool is_unit(uint64_t a) const { return val(a) == 0; }
    uint64_t pow(uint64_t a, long long e) const;

    // residue field interface: classes indexed 0..q-1 with a fixed section
    virtual long long residue_index(uint64_t a) const = 0;
    virtual uint64_t residue_section(long long idx) const = 0;

    // reduced-precision sibling, cached at the full-precision root
    const TruncRing* reduced(int m2) const;
    // code of this ring -> code of reduced(m2)
    virtual uint64_t reduce_code(uint64_t a, int m2) const = 0;
    // code of reduced(m_from) -> code of this ring, the natural section
    virtual uint64_t lift_code(uint64_t a, int m_from) const = 0;

    virtual std::string describe() const = 0;
    virtual std::string elem_str(uint64_t a) const = 0;

    // all unit codes, ascending
    std::vector<uint64_t> unit_codes() const;

protected:
    TruncRing() = default;

    long long q_ = 0;
    int m_ = 0;
    uint64_t size_ = 0;
    const TruncRing* root_ = nullptr; // nullptr when this is the root

    virtual std::unique_ptr<TruncRing> make_reduced(int m2) const = 0;

private:
    mutable std::map<int, std::unique_ptr<TruncRing>> reduced_cache_;
};

// GR(p^m, f) = Z_p[x]/(p^m, F(x)) with F the natural lift of the
// deterministic modulus of F_{p^f}.  Elements are f coordinates in Z/p^m,
// code = sum coord_i * (p^m)^i.
class ZqRing : public TruncRing {
public:
    ZqRing(long long p, int m, int f);

    uint64_t add(uint64_t a, uint64_t b) const override;
    uint64_t sub(uint64_t a, uint64_t b) const override;
    uint64_t mul(uint64_t a, uint64_t b) const override;
    uint64_t neg(uint64_t a) const override;
    uint64_t inv(uint64_t a) const override;
    uint64_t from_int(long long n) const override;
    uint64_t times_unif(uint64_t a) const override;
    int val(uint64_t a) const override;
    long long residue_index(uint64_t a) const override;
    uint64_t residue_section(long long idx) const override;
    uint64_t reduce_code(uint64_t a, int m2) const override;
    uint64_t lift_code(uint64_t a, int m_from) const override;
    std::string describe() const override;
    std::string elem_str(uint64_t a) const override;

    long long p() const { return p_; }
    int f() const { return f_; }

protected:
    std::unique_ptr<TruncRing> make_reduced(int m2) const override;

private:
    long long p_;
    int f_;
    long long pm_;            // p^m
    FqContext kq_;            // residue field F_{p^f}
    std::vector<long long> modulus_; // lifted modulus, low f coefficients

    std::vector<long long> coords(uint64_t a) const;
    uint64_t pack(const std::vector<long long>& c) const;
};

// F_q[t]/(t^m); digit i of a code is the F_q element code of the t^i
// coefficient.
class TqRing : public TruncRing {
public:
    TqRing(long long p, int f, int m);

    uint64_t add(uint64_t a, uint64_t b) const override;
    uint64_t sub(uint64_t a, uint64_t b) const override;
    uint64_t mul(uint64_t a, uint64_t b) const override;
    uint64_t neg(uint64_t a) const override;
    uint64_t inv(uint64_t a) const override;
    uint64_t from_int(long long n) const override;
    uint64_t times_unif(uint64_t a) const override;
    int val(uint64_t a) const override;
    long long residue_index(uint64_t a) const override;
    uint64_t residue_section(long long idx) const override;
    uint64_t reduce_code(uint64_t a, int m2) const override;
    uint64_t lift_code(uint64_t a, int m_from) const override;
    std::string describe() const override;
    std::string elem_str(uint64_t a) const override;

    long long p() const { return p_; }
    int f() const { return f_; }

protected:
    std::unique_ptr<TruncRing> make_reduced(int m2) const override;

private:
    long long p_;
    int f_;
    FqContext kq_;

    std::vector<uint32_t> digits(uint64_t a) const;
    uint64_t pack(const std::vector<uint32_t>& d) const;
    Fq at(const std::vector<uint32_t>& d, size_t i) const;
};

// Common interface of the two quadratic layers: the Galois involution of
// the layer, the norm down to the base, and the embedding of the base.
class QuadRingBase : public TruncRing {
public:
    const TruncRing* base() const { return base_; }
    virtual bool ramified() const = 0;

    virtual uint64_t sigma(uint64_t a) const = 0;
    // norm lands in norm_target(): the base at the precision it supports
    virtual uint64_t norm(uint64_t a) const = 0;
    virtual const TruncRing* norm_target() const = 0;
    // embedding of a norm_target() code
    virtual uint64_t embed(uint64_t base_code) const = 0;

protected:
    explicit QuadRingBase(const TruncRing* base) : base_(base) {}
    const TruncRing* base_;
};

// Unramified quadratic layer: base[delta], delta^2 = s delta + r, where
// y^2 - s y - r reduces to the deterministically least irreducible monic
// quadratic over the residue field of the base.  Same precision as the
// base; uniformizer is the base's.
class QuadUnramRing : public QuadRingBase {
public:
    // searches the least residue quadratic
    explicit QuadUnramRing(const TruncRing* base);
    // explicit lift coefficients (used for reduced siblings)
    QuadUnramRing(const TruncRing* base, uint64_t s_code, uint64_t r_code);

    bool ramified() const override { return false; }
    uint64_t s_code() const { return s_; }
    uint64_t r_code() const { return r_; }

    uint64_t add(uint64_t a, uint64_t b) const override;
    uint64_t sub(uint64_t a, uint64_t b) const override;
    uint64_t mul(uint64_t a, uint64_t b) const override;
    uint64_t neg(uint64_t a) const override;
    uint64_t inv(uint64_t a) const override;
    uint64_t from_int(long long n) const override;
    uint64_t times_unif(uint64_t a) const override;
    int val(uint64_t a) const override;
    long long residue_index(uint64_t a) const override;
    uint64_t residue_section(long long idx) const override;
    uint64_t reduce_code(uint64_t a, int m2) const override;
    uint64_t lift_code(uint64_t a, int m_from) const override;
    std::string describe() const override;
    std::string elem_str(uint64_t a) const override;

    uint64_t sigma(uint64_t a) const override;
    uint64_t norm(uint64_t a) const override;
    const TruncRing* norm_target() const override { return base_; }
    uint64_t embed(uint64_t base_code) const override;

    // (a, b) with code = a + |base| * b
    uint64_t pack(uint64_t a, uint64_t b) const;
    std::pair<uint64_t, uint64_t> unpack(uint64_t c) const;

protected:
    std::unique_ptr<TruncRing> make_reduced(int m2) const override;

private:
    uint64_t s_, r_;
};

// Ramified quadratic layer: base[delta], delta^2 = d * pi_base with d a
// unit of the base.  Precision n is counted in delta; the two coordinates
// live at base precisions ceil(n/2) and floor(n/2).
class QuadRamRing : public QuadRingBase {
public:
    QuadRamRing(const TruncRing* base_full, uint64_t d_code_full, int n);

    bool ramified() const override { return true; }
    // d as a code of norm_target()
    uint64_t d_code() const { return d_; }

    uint64_t add(uint64_t a, uint64_t b) const override;
    uint64_t sub(uint64_t a, uint64_t b) const override;
    uint64_t mul(uint64_t a, uint64_t b) const override;
    uint64_t neg(uint64_t a) const override;
    uint64_t inv(uint64_t a) const override;
    uint64_t from_int(long long n) const override;
    uint64_t times_unif(uint64_t a) const override;
    int val(uint64_t a) const override;
    long long residue_index(uint64_t a) const override;
    uint64_t residue_section(long long idx) const override;
    uint64_t reduce_code(uint64_t a, int m2) const override;
    uint64_t lift_code(uint64_t a, int m_from) const override;
    std::string describe() const override;
    std::string elem_str(uint64_t a) const override;

    uint64_t sigma(uint64_t a) const override;
    uint64_t norm(uint64_t a) const override;
    const TruncRing* norm_target() const override { return bh_; }
    uint64_t embed(uint64_t base_code) const override;

    const TruncRing* high() const { return bh_; }
    const TruncRing* low() const { return bl_; }

    uint64_t pack(uint64_t a, uint64_t b) const;
    std::pair<uint64_t, uint64_t> unpack(uint64_t c) const;

protected:
    std::unique_ptr<TruncRing> make_reduced(int m2) const override;

private:
    const TruncRing* bh_; // base at ceil(n/2)
    const TruncRing* bl_; // base at floor(n/2)
    uint64_t d_;          // unit of bh_
};

// least unit code of R that is not a square of a unit (scan over all unit
// squares); throws std::domain_error if every unit is a square
uint64_t least_nonsquare_unit(const TruncRing* R);

} // namespace moddist
