#include "moddist/abelian.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <unordered_set>

namespace moddist {
namespace {

using Mat = std::vector<std::vector<long long>>;

Mat identity(size_t n) {
    Mat I(n, std::vector<long long>(n, 0));
    for (size_t i = 0; i < n; ++i)
        I[i][i] = 1;
    return I;
}

struct SnfWork {
    Mat A, U, V, W;

    void row_swap(size_t i, size_t j) {
        std::swap(A[i], A[j]);
        std::swap(U[i], U[j]);
    }
    // row i += c * row j
    void row_addmul(size_t i, size_t j, long long c) {
        for (size_t k = 0; k < A[i].size(); ++k)
            A[i][k] += c * A[j][k];
        for (size_t k = 0; k < U[i].size(); ++k)
            U[i][k] += c * U[j][k];
    }
    void row_neg(size_t i) {
        for (auto& x : A[i])
            x = -x;
        for (auto& x : U[i])
            x = -x;
    }
    void col_swap(size_t i, size_t j) {
        for (auto& r : A)
            std::swap(r[i], r[j]);
        for (auto& r : V)
            std::swap(r[i], r[j]);
        std::swap(W[i], W[j]); // inverse transform: swap rows
    }
    // col i += c * col j mirrors on W as row j -= c * row i
    void col_addmul(size_t i, size_t j, long long c) {
        for (auto& r : A)
            r[i] += c * r[j];
        for (auto& r : V)
            r[i] += c * r[j];
        for (size_t k = 0; k < W[j].size(); ++k)
            W[j][k] -= c * W[i][k];
    }
    void col_neg(size_t i) {
        for (auto& r : A)
            r[i] = -r[i];
        for (auto& r : V)
            r[i] = -r[i];
        for (auto& x : W[i])
            x = -x;
    }
};

} // namespace

SnfResult smith_normal_form(Mat A0) {
    const size_t m = A0.size();
    const size_t n = m == 0 ? 0 : A0[0].size();
    for (const auto& r : A0)
        if (r.size() != n)
            throw std::invalid_argument("snf: ragged matrix");

    SnfWork w{std::move(A0), identity(m), identity(n), identity(n)};

    const size_t steps = std::min(m, n);
    for (size_t t = 0; t < steps; ++t) {
        for (;;) {
            // locate the entry of least nonzero magnitude in the submatrix
            size_t bi = m, bj = n;
            long long best = 0;
            for (size_t i = t; i < m; ++i)
                for (size_t j = t; j < n; ++j) {
                    const long long a = std::llabs(w.A[i][j]);
                    if (a != 0 && (best == 0 || a < best)) {
                        best = a;
                        bi = i;
                        bj = j;
                    }
                }
            if (best == 0)
                break; // submatrix is zero
            if (bi != t)
                w.row_swap(t, bi);
            if (bj != t)
                w.col_swap(t, bj);
            if (w.A[t][t] < 0)
                w.row_neg(t);

            bool clean = true;
            for (size_t i = t + 1; i < m; ++i)
                if (w.A[i][t] != 0) {
                    w.row_addmul(i, t, -(w.A[i][t] / w.A[t][t]));
                    if (w.A[i][t] != 0)
                        clean = false;
                }
            for (size_t j = t + 1; j < n; ++j)
                if (w.A[t][j] != 0) {
                    w.col_addmul(j, t, -(w.A[t][j] / w.A[t][t]));
                    if (w.A[t][j] != 0)
                        clean = false;
                }
            if (!clean)
                continue;

            // divisibility: pull a bad column into column t and restart
            bool divides = true;
            for (size_t i = t + 1; i < m && divides; ++i)
                for (size_t j = t + 1; j < n && divides; ++j)
                    if (w.A[i][j] % w.A[t][t] != 0) {
                        w.col_addmul(t, j, 1);
                        divides = false;
                    }
            if (divides)
                break;
        }
    }

    return SnfResult{std::move(w.A), std::move(w.U), std::move(w.V), std::move(w.W)};
}

const std::vector<long long>& AbelianModel::exponents(uint64_t key) const {
    auto it = dlog.find(key);
    if (it == dlog.end())
        throw std::invalid_argument("abelian: element not in the modeled group");
    return it->second;
}

uint64_t pow_elem(uint64_t g, long long e, uint64_t id, const MulFn& mul) {
    if (e < 0)
        throw std::invalid_argument("abelian: negative exponent");
    uint64_t r = id, b = g;
    while (e > 0) {
        if (e & 1)
            r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

AbelianModel decompose_abelian(const std::vector<uint64_t>& elements,
                               uint64_t id, const MulFn& mul) {
    if (elements.empty())
        throw std::invalid_argument("abelian: empty element list");
    const std::unordered_set<uint64_t> universe(elements.begin(), elements.end());
    if (universe.count(id) == 0)
        throw std::invalid_argument("abelian: identity not in element list");

    // greedy generator chain; dl holds exponent vectors over the chain so far
    std::unordered_map<uint64_t, std::vector<long long>> dl;
    dl[id] = {};
    std::vector<uint64_t> members{id};
    std::vector<uint64_t> chain;
    std::vector<long long> rel_order;              // order of h_j modulo the previous subgroup
    std::vector<std::vector<long long>> rel_tail;  // h_j^rel_order[j] over previous generators

    for (uint64_t e : elements) {
        if (dl.count(e))
            continue;
        long long d = 1;
        uint64_t cur = e;
        while (dl.count(cur) == 0) {
            if (universe.count(cur) == 0)
                throw std::invalid_argument("abelian: element list not closed under mul");
            cur = mul(cur, e);
            ++d;
        }
        std::vector<long long> tail = dl[cur];
        tail.resize(chain.size(), 0);

        const size_t base = members.size();
        uint64_t hp = id;
        for (long long t = 1; t < d; ++t) {
            hp = mul(hp, e);
            for (size_t s = 0; s < base; ++s) {
                const uint64_t x = mul(hp, members[s]);
                if (universe.count(x) == 0)
                    throw std::invalid_argument("abelian: element list not closed under mul");
                std::vector<long long> v = dl[members[s]];
                v.resize(chain.size(), 0);
                v.push_back(t);
                if (!dl.emplace(x, std::move(v)).second)
                    throw std::invalid_argument("abelian: duplicate element during closure");
                members.push_back(x);
            }
        }
        chain.push_back(e);
        rel_order.push_back(d);
        rel_tail.push_back(std::move(tail));
    }

    if (members.size() != universe.size())
        throw std::invalid_argument("abelian: closure does not exhaust the element list");

    AbelianModel model;
    model.size = static_cast<long long>(universe.size());
    if (chain.empty()) {
        model.dlog[id] = {};
        return model;
    }

    // relation lattice rows: d_j e_j - sum_i tail_i e_i
    const size_t n = chain.size();
    Mat R(n, std::vector<long long>(n, 0));
    for (size_t j = 0; j < n; ++j) {
        R[j][j] = rel_order[j];
        for (size_t i = 0; i < rel_tail[j].size(); ++i)
            R[j][i] -= rel_tail[j][i];
    }
    SnfResult snf = smith_normal_form(R);

    // invariant-factor generators, then split into prime-power parts
    std::vector<CyclicFactor> primary;
    for (size_t k = 0; k < n; ++k) {
        const long long ord = snf.D[k][k];
        if (ord <= 0)
            throw std::invalid_argument("abelian: relation lattice is degenerate");
        if (ord == 1)
            continue;
        uint64_t g = id;
        for (size_t i = 0; i < n; ++i) {
            long long e = snf.W[k][i] % model.size;
            if (e < 0)
                e += model.size;
            g = mul(g, pow_elem(chain[i], e, id, mul));
        }
        long long rest = ord;
        for (long long p = 2; p * p <= rest; ++p) {
            if (rest % p != 0)
                continue;
            long long pk = 1;
            while (rest % p == 0) {
                rest /= p;
                pk *= p;
            }
            primary.push_back({pow_elem(g, ord / pk, id, mul), pk});
        }
        if (rest > 1)
            primary.push_back({pow_elem(g, ord / rest, id, mul), rest});
    }
    std::stable_sort(primary.begin(), primary.end(),
                     [](const CyclicFactor& a, const CyclicFactor& b) {
                         return a.order > b.order;
                     });
    model.factors = std::move(primary);

    long long predicted = 1;
    for (const auto& f : model.factors)
        predicted *= f.order;
    if (predicted != model.size)
        throw std::invalid_argument("abelian: factor orders do not multiply to the group size");

    // rebuild the dlog table from the final generators and verify bijectivity
    const size_t nf = model.factors.size();
    std::vector<long long> e(nf, 0);
    std::vector<uint64_t> part(nf + 1, id);
    for (;;) {
        const uint64_t key = part[nf];
        if (universe.count(key) == 0)
            throw std::invalid_argument("abelian: generator span leaves the group");
        if (!model.dlog.emplace(key, e).second)
            throw std::invalid_argument("abelian: generator span collides, decomposition invalid");
        int i = static_cast<int>(nf) - 1;
        while (i >= 0) {
            ++e[static_cast<size_t>(i)];
            if (e[static_cast<size_t>(i)] < model.factors[static_cast<size_t>(i)].order)
                break;
            e[static_cast<size_t>(i)] = 0;
            --i;
        }
        if (i < 0)
            break;
        const size_t ui = static_cast<size_t>(i);
        part[ui + 1] = mul(part[ui + 1], model.factors[ui].gen);
        for (size_t j = ui + 1; j < nf; ++j)
            part[j + 1] = part[j];
    }
    if (static_cast<long long>(model.dlog.size()) != model.size)
        throw std::invalid_argument("abelian: generator span misses elements");

    return model;
}

} // namespace moddist
