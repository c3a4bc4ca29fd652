#include "lcs/linalg.hpp"

#include <numeric>

namespace lcs {

Elimination row_reduce(CoefMatrix a)
{
    Elimination e;
    size_t rows = a.size();
    size_t cols = rows ? a[0].size() : 0;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c].is_zero())
            ++p;
        if (p == rows)
            continue;
        std::swap(a[p], a[r]);
        Coef inv = a[r][c].inverse();
        for (size_t j = c; j < cols; ++j)
            if (!a[r][j].is_zero())
                a[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero())
                continue;
            Coef f = a[i][c];
            for (size_t j = c; j < cols; ++j)
                if (!a[r][j].is_zero())
                    a[i][j] -= f * a[r][j];
        }
        e.pivot_cols.push_back(static_cast<int>(c));
        ++r;
    }
    e.reduced = std::move(a);
    return e;
}

int rank(const CoefMatrix& a) { return row_reduce(a).rank(); }

std::optional<std::vector<Coef>> solve_linear(const CoefMatrix& a, const std::vector<Coef>& rhs)
{
    size_t rows = a.size();
    size_t cols = rows ? a[0].size() : 0;
    if (rhs.size() != rows)
        throw MathError("right-hand side length mismatch");
    CoefMatrix aug = a;
    for (size_t i = 0; i < rows; ++i)
        aug[i].push_back(rhs[i]);
    Elimination e = row_reduce(std::move(aug));
    std::vector<Coef> x(cols);
    for (int i = 0; i < e.rank(); ++i) {
        int c = e.pivot_cols[i];
        if (c == static_cast<int>(cols))
            return std::nullopt;
        x[c] = e.reduced[i][cols];
    }
    return x;
}

static FourierScalar det_rec(const ScalarMatrix& a, std::vector<int>& rows_left, std::vector<int>& cols_left,
                             const RosterPtr& r)
{
    if (rows_left.empty())
        return FourierScalar(r, Coef(1));
    int row = rows_left.back();
    rows_left.pop_back();
    FourierScalar sum(r);
    for (size_t k = 0; k < cols_left.size(); ++k) {
        int c = cols_left[k];
        const FourierScalar& entry = a[row][c];
        if (entry.is_zero())
            continue;
        cols_left.erase(cols_left.begin() + k);
        FourierScalar minor = det_rec(a, rows_left, cols_left, r);
        cols_left.insert(cols_left.begin() + k, c);
        // expanding the last remaining row; sign from the position among remaining columns
        bool neg = (cols_left.size() - 1 - k) % 2 == 1;
        FourierScalar t = entry * minor;
        sum += neg ? -t : t;
    }
    rows_left.push_back(row);
    return sum;
}

FourierScalar determinant(const ScalarMatrix& a, const RosterPtr& r)
{
    std::vector<int> rows(a.size()), cols(a.size());
    std::iota(rows.begin(), rows.end(), 0);
    std::iota(cols.begin(), cols.end(), 0);
    return det_rec(a, rows, cols, r);
}

std::optional<ScalarMatrix> inverse_if_unimodular(const ScalarMatrix& a, const RosterPtr& r)
{
    size_t n = a.size();
    FourierScalar det = determinant(a, r);
    if (det.is_zero() || !det.is_constant())
        return std::nullopt;
    Coef dinv = det.constant_term().inverse();
    ScalarMatrix inv(n, std::vector<FourierScalar>(n, FourierScalar(r)));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            ScalarMatrix minor;
            for (size_t rr = 0; rr < n; ++rr) {
                if (rr == j)
                    continue;
                std::vector<FourierScalar> row;
                for (size_t cc = 0; cc < n; ++cc)
                    if (cc != i)
                        row.push_back(a[rr][cc]);
                minor.push_back(std::move(row));
            }
            FourierScalar c = determinant(minor, r).scaled(dinv);
            inv[i][j] = (i + j) % 2 ? -c : c;
        }
    }
    return inv;
}

Rational rational_determinant(std::vector<std::vector<Rational>> a)
{
    size_t n = a.size();
    Rational det = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && sgn(a[p][c]) == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (size_t i = c + 1; i < n; ++i) {
            if (sgn(a[i][c]) == 0)
                continue;
            Rational f = a[i][c] / a[c][c];
            for (size_t j = c; j < n; ++j)
                a[i][j] -= f * a[c][j];
        }
    }
    return det;
}

int rational_rank(std::vector<std::vector<Rational>> a)
{
    size_t rows = a.size();
    size_t cols = rows ? a[0].size() : 0;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && sgn(a[p][c]) == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(a[p], a[r]);
        for (size_t i = r + 1; i < rows; ++i) {
            if (sgn(a[i][c]) == 0)
                continue;
            Rational f = a[i][c] / a[r][c];
            for (size_t j = c; j < cols; ++j)
                a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return static_cast<int>(r);
}

/* expansion along the first row: Pf(A) = sum_j (-1)^{j} a_{0j} Pf(A with rows/cols 0, j removed) */
static Rational pf_rec(const std::vector<std::vector<Rational>>& a, std::vector<int>& idx)
{
    if (idx.empty())
        return 1;
    int i0 = idx[0];
    Rational sum = 0;
    for (size_t k = 1; k < idx.size(); ++k) {
        int j = idx[k];
        if (sgn(a[i0][j]) == 0)
            continue;
        std::vector<int> rest;
        for (size_t t = 1; t < idx.size(); ++t)
            if (t != k)
                rest.push_back(idx[t]);
        Rational sub = pf_rec(a, rest);
        sum += (k % 2 == 1 ? 1 : -1) * a[i0][j] * sub;
    }
    return sum;
}

Rational pfaffian(const std::vector<std::vector<Rational>>& a)
{
    if (a.size() % 2 != 0)
        return 0;
    std::vector<int> idx(a.size());
    std::iota(idx.begin(), idx.end(), 0);
    return pf_rec(a, idx);
}

}  // namespace lcs
