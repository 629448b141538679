#include "moddist/linalg.hpp"

#include <stdexcept>

namespace moddist {

Mat2 Mat2::zero(const FqContext* F) {
    return Mat2(F->zero(), F->zero(), F->zero(), F->zero());
}

Mat2 Mat2::identity(const FqContext* F) {
    return Mat2(F->one(), F->zero(), F->zero(), F->one());
}

Mat2 Mat2::scalar(const Fq& s) {
    const FqContext* F = s.ctx();
    return Mat2(s, F->zero(), F->zero(), s);
}

Mat2 Mat2::diag(const Fq& x, const Fq& y) {
    const FqContext* F = x.ctx();
    return Mat2(x, F->zero(), F->zero(), y);
}

Mat2 Mat2::antidiag(const Fq& x, const Fq& y) {
    const FqContext* F = x.ctx();
    return Mat2(F->zero(), x, y, F->zero());
}

Mat2 Mat2::operator*(const Mat2& o) const {
    return Mat2(a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d);
}

Mat2 Mat2::operator+(const Mat2& o) const {
    return Mat2(a + o.a, b + o.b, c + o.c, d + o.d);
}

Mat2 Mat2::operator-(const Mat2& o) const {
    return Mat2(a - o.a, b - o.b, c - o.c, d - o.d);
}

Mat2 Mat2::scaled(const Fq& s) const {
    return Mat2(a * s, b * s, c * s, d * s);
}

Mat2 Mat2::transpose() const {
    return Mat2(a, c, b, d);
}

Fq Mat2::det() const {
    return a * d - b * c;
}

Fq Mat2::trace() const {
    return a + d;
}

Mat2 Mat2::inverse() const {
    const Fq dt = det();
    if (dt.is_zero())
        throw std::domain_error("mat2: inverse of a singular matrix");
    const Fq di = dt.inverse();
    return Mat2(d * di, -b * di, -c * di, a * di);
}

bool Mat2::operator==(const Mat2& o) const {
    return a == o.a && b == o.b && c == o.c && d == o.d;
}

bool Mat2::is_zero() const {
    return a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero();
}

std::string Mat2::str() const {
    return "[[" + a.str() + "," + b.str() + "],[" + c.str() + "," + d.str() + "]]";
}

std::vector<std::vector<Fq>> nullspace(std::vector<std::vector<Fq>> rows,
                                       size_t ncols, const FqContext* F) {
    for (const auto& r : rows)
        if (r.size() != ncols)
            throw std::invalid_argument("nullspace: ragged rows");

    // forward elimination to row echelon form, tracking pivot columns
    std::vector<size_t> pivot_col;
    size_t rank = 0;
    for (size_t col = 0; col < ncols && rank < rows.size(); ++col) {
        size_t sel = rank;
        while (sel < rows.size() && rows[sel][col].is_zero())
            ++sel;
        if (sel == rows.size())
            continue;
        std::swap(rows[rank], rows[sel]);
        const Fq inv = rows[rank][col].inverse();
        for (size_t j = col; j < ncols; ++j)
            rows[rank][j] = rows[rank][j] * inv;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][col].is_zero())
                continue;
            const Fq f = rows[i][col];
            for (size_t j = col; j < ncols; ++j)
                rows[i][j] = rows[i][j] - f * rows[rank][j];
        }
        pivot_col.push_back(col);
        ++rank;
    }

    std::vector<bool> is_pivot(ncols, false);
    for (size_t c : pivot_col)
        is_pivot[c] = true;

    std::vector<std::vector<Fq>> basis;
    for (size_t free_col = 0; free_col < ncols; ++free_col) {
        if (is_pivot[free_col])
            continue;
        std::vector<Fq> v(ncols, F->zero());
        v[free_col] = F->one();
        for (size_t i = 0; i < rank; ++i)
            v[pivot_col[i]] = -rows[i][free_col];
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace moddist
