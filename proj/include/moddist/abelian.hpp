#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

namespace moddist {

// Smith normal form over Z with transform tracking: D = U * A * V with
// U, V unimodular and D diagonal, each diagonal entry dividing the next.
// W = V^{-1} is tracked as well, because changing generators of a group
// presented by relation rows of A needs V^{-1}, not V.
struct SnfResult {
    std::vector<std::vector<long long>> D;
    std::vector<std::vector<long long>> U;
    std::vector<std::vector<long long>> V;
    std::vector<std::vector<long long>> W;
};

SnfResult smith_normal_form(std::vector<std::vector<long long>> A);

// One cyclic factor of a finite abelian group: a generator element key
// and its order, always a prime power in the decompositions below.
struct CyclicFactor {
    uint64_t gen;
    long long order;
};

// A verified decomposition of a finite abelian group into cyclic factors
// of prime-power order, with an exhaustive discrete-log table.  Exponent
// vectors e satisfy 0 <= e[i] < factors[i].order, and the product map
// (e) -> prod factors[i].gen^e[i] is a bijection onto the group (checked
// at construction).
struct AbelianModel {
    std::vector<CyclicFactor> factors;
    long long size = 1;
    std::unordered_map<uint64_t, std::vector<long long>> dlog;

    const std::vector<long long>& exponents(uint64_t key) const;
    bool contains(uint64_t key) const { return dlog.count(key) != 0; }
};

using MulFn = std::function<uint64_t(uint64_t, uint64_t)>;

// g^e via repeated squaring under an arbitrary multiplication law
uint64_t pow_elem(uint64_t g, long long e, uint64_t id, const MulFn& mul);

// Decomposes the finite abelian group consisting exactly of `elements`
// (deterministic input order fixes the result) under `mul` with identity
// `id`.  Greedy generator chain -> triangular relation lattice -> Smith
// normal form -> primary splitting; the final table is rebuilt from the
// new generators and verified to enumerate the group bijectively.
// Throws std::invalid_argument when `elements` is not closed or the
// verification fails.
AbelianModel decompose_abelian(const std::vector<uint64_t>& elements,
                               uint64_t id, const MulFn& mul);

} // namespace moddist
