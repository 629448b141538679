#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "moddist/rootunity.hpp"

namespace moddist {

class FqContext;

// Element of F_{ell^d}.  The code packs the coefficient vector of the
// residue polynomial in base ell, least significant digit = constant term.
// Elements are tiny value types; all arithmetic is table-driven through
// the owning context.
class Fq {
public:
    Fq() : ctx_(nullptr), code_(0) {}
    Fq(const FqContext* ctx, uint32_t code) : ctx_(ctx), code_(code) {}

    const FqContext* ctx() const { return ctx_; }
    uint32_t code() const { return code_; }
    bool is_zero() const { return code_ == 0; }

    Fq operator+(const Fq& o) const;
    Fq operator-(const Fq& o) const;
    Fq operator-() const;
    Fq operator*(const Fq& o) const;
    Fq operator/(const Fq& o) const;
    Fq inverse() const;
    Fq pow(long long k) const;

    bool operator==(const Fq& o) const;
    bool operator!=(const Fq& o) const { return !(*this == o); }

    std::string str() const;

private:
    const FqContext* ctx_;
    uint32_t code_;
};

// Arithmetic context for one concrete finite field F_{ell^d}.
//
// Determinism contract (the same on every run and platform):
//   * the modulus is the monic irreducible polynomial of degree d over
//     Z/ell whose low-coefficient code sum_{i<d} c_i ell^i is least;
//   * the generator g is the nonzero element of least code whose
//     multiplicative order is ell^d - 1;
//   * roots of unity embed by a/b  ->  g^(a (ell^d - 1)/b), which makes
//     embeddings along tower inclusions F_{ell^e} -> F_{ell^d} (e | d)
//     commute, since each is transport along the canonical generators.
//
// dlog is an exhaustive table, so construction rejects ell^d > 2^20.
// Contexts are immutable after construction and never copied; elements
// reference them by pointer.
class FqContext {
public:
    FqContext(long long ell, int d);

    FqContext(const FqContext&) = delete;
    FqContext& operator=(const FqContext&) = delete;

    long long ell() const { return ell_; }
    int degree() const { return d_; }
    long long card() const { return q_; }
    long long group_order() const { return q_ - 1; }

    Fq zero() const { return Fq(this, 0); }
    Fq one() const { return Fq(this, 1); }
    Fq gen() const { return Fq(this, gen_); }

    // image of the integer a under Z -> F_{ell^d} (lands in the prime field)
    Fq from_int(long long a) const;

    // g^(z.num * (q-1)/z.den); throws std::domain_error unless z.den | q-1
    Fq embed_root(const RootOfUnity& z) const;

    // inverse of embed_root; throws std::domain_error on zero
    RootOfUnity dlog(const Fq& x) const;

    // multiplicative transport from a smaller context with the same ell and
    // degree dividing d: g_src -> g^((q-1)/(q_src-1)).  This is the map that
    // matches embed_root across degrees; it is not used for cross-degree
    // addition anywhere in the engine.
    Fq embed_from(const Fq& x) const;

    // low d coefficients of the monic modulus, constant term first
    const std::vector<int>& modulus() const { return mod_; }

    // human-readable modulus, e.g. "x^2 + 1"
    std::string describe_modulus() const;

    // element code of g^k for 0 <= k < q-1
    uint32_t exp_table(long long k) const { return exp_[static_cast<size_t>(k)]; }
    // exponent of a nonzero code
    long long log_table(uint32_t code) const { return log_[code]; }

private:
    long long ell_;
    int d_;
    long long q_;
    std::vector<int> mod_;
    uint32_t gen_;
    std::vector<uint32_t> exp_;
    std::vector<long long> log_;

    friend class Fq;
};

} // namespace moddist
