#ifndef CURVELAB_MATRIX_HPP
#define CURVELAB_MATRIX_HPP

#include <utility>
#include <vector>

#include "curvelab/field.hpp"

namespace curvelab {

// Dense matrix over an exact field.  Elimination is deterministic: columns
// are processed left to right and the pivot is the first row (top down) with
// a nonzero entry, so identical inputs give identical pivots.
template <class K>
class ExactMatrix {
  public:
    ExactMatrix() : rows_(0), cols_(0) {}
    ExactMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(rows, std::vector<K>(cols, K::zero())) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    K& at(int r, int c) { return a_[r][c]; }
    const K& at(int r, int c) const { return a_[r][c]; }
    const std::vector<K>& row(int r) const { return a_[r]; }

    static ExactMatrix identity(int n) {
        ExactMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = K::one();
        return m;
    }

    template <class Rng>
    static ExactMatrix random(int rows, int cols, Rng& rng) {
        ExactMatrix m(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) m.at(r, c) = K::random(rng);
        return m;
    }

    friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
        if (a.cols_ != b.rows_) throw dimension_error("matrix product shape mismatch");
        ExactMatrix r(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                if (a.a_[i][k].is_zero()) continue;
                const K f = a.a_[i][k];
                for (int j = 0; j < b.cols_; ++j) r.a_[i][j] += f * b.a_[k][j];
            }
        return r;
    }

    std::vector<K> apply(const std::vector<K>& v) const {
        if (static_cast<int>(v.size()) != cols_) throw dimension_error("matrix-vector shape mismatch");
        std::vector<K> out(rows_, K::zero());
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c)
                if (!a_[r][c].is_zero()) out[r] += a_[r][c] * v[c];
        return out;
    }

    int rank() const {
        auto work = a_;
        return echelonize(work, cols_);
    }

  private:
    // In-place row echelon form; returns the rank.  Rows below each pivot are
    // cleared; the pivot row is normalized to 1.
    static int echelonize(std::vector<std::vector<K>>& w, int cols) {
        const int rows = static_cast<int>(w.size());
        int rank = 0;
        for (int col = 0; col < cols && rank < rows; ++col) {
            int pivot = -1;
            for (int r = rank; r < rows; ++r)
                if (!w[r][col].is_zero()) { pivot = r; break; }
            if (pivot < 0) continue;
            std::swap(w[rank], w[pivot]);
            const K inv = w[rank][col].inv();
            for (int c = col; c < cols; ++c) w[rank][c] *= inv;
            for (int r = rank + 1; r < rows; ++r) {
                if (w[r][col].is_zero()) continue;
                const K f = w[r][col];
                auto& dst = w[r];
                const auto& src = w[rank];
                for (int c = col; c < cols; ++c)
                    if (!src[c].is_zero()) dst[c] -= f * src[c];
            }
            ++rank;
        }
        return rank;
    }

    friend struct RankKernel;
    template <class K2>
    friend std::pair<int, std::vector<std::vector<K2>>> rank_kernel(const ExactMatrix<K2>& m);

    int rows_;
    int cols_;
    std::vector<std::vector<K>> a_;
};

// Rank of a sparse matrix by leading-column reduction: rows are kept as
// sorted (column, value) lists and reduced against the sparsest pivot with
// the same leading column.  The result is pivot-order independent, so no
// tie-breaking contract is needed here.
template <class K>
class SparseBuilder {
  public:
    SparseBuilder(int rows, int cols) : cols_(cols), rows_(rows) {}

    int rows() const { return static_cast<int>(rows_.size()); }
    int cols() const { return cols_; }

    void add(int r, int c, const K& v) {
        if (v.is_zero()) return;
        rows_[r].emplace_back(c, v);
    }

    int rank() && {
        std::vector<std::vector<std::pair<int, K>>> live;
        live.reserve(rows_.size());
        for (auto& raw : rows_) {
            if (raw.empty()) continue;
            std::sort(raw.begin(), raw.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            std::vector<std::pair<int, K>> row;
            row.reserve(raw.size());
            for (const auto& [c, v] : raw) {
                if (!row.empty() && row.back().first == c) {
                    row.back().second += v;
                    if (row.back().second.is_zero()) row.pop_back();
                } else {
                    row.emplace_back(c, v);
                }
            }
            if (!row.empty()) live.push_back(std::move(row));
        }
        rows_.clear();

        std::vector<std::vector<int>> bucket(cols_);
        for (int i = 0; i < static_cast<int>(live.size()); ++i)
            bucket[live[i].front().first].push_back(i);

        int rank = 0;
        for (int col = 0; col < cols_; ++col) {
            auto& cand = bucket[col];
            if (cand.empty()) continue;
            size_t best = 0;
            for (size_t i = 1; i < cand.size(); ++i)
                if (live[cand[i]].size() < live[cand[best]].size()) best = i;
            const int piv = cand[best];
            cand.erase(cand.begin() + best);
            ++rank;
            const K piv_lead_inv = live[piv].front().second.inv();
            for (int r : cand) {
                const K factor = live[r].front().second * piv_lead_inv;
                live[r] = subtract_scaled(live[r], live[piv], factor);
                if (!live[r].empty()) bucket[live[r].front().first].push_back(r);
            }
            cand.clear();
        }
        return rank;
    }

  private:
    static std::vector<std::pair<int, K>> subtract_scaled(const std::vector<std::pair<int, K>>& a,
                                                          const std::vector<std::pair<int, K>>& b,
                                                          const K& factor) {
        std::vector<std::pair<int, K>> out;
        out.reserve(a.size() + b.size());
        size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
                out.push_back(a[i++]);
            } else if (i == a.size() || b[j].first < a[i].first) {
                out.emplace_back(b[j].first, -(factor * b[j].second));
                ++j;
            } else {
                const K v = a[i].second - factor * b[j].second;
                if (!v.is_zero()) out.emplace_back(a[i].first, v);
                ++i;
                ++j;
            }
        }
        return out;
    }

    int cols_;
    std::vector<std::vector<std::pair<int, K>>> rows_{};
};

// rank + an explicit kernel basis; rank + kernel dimension = cols and every
// kernel vector is exactly annihilated.
template <class K>
std::pair<int, std::vector<std::vector<K>>> rank_kernel(const ExactMatrix<K>& m) {
    const int rows = m.rows(), cols = m.cols();
    auto w = m.a_;
    std::vector<int> pivot_col;
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (!w[r][col].is_zero()) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(w[rank], w[pivot]);
        const K inv = w[rank][col].inv();
        for (int c = col; c < cols; ++c) w[rank][c] *= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || w[r][col].is_zero()) continue;
            const K f = w[r][col];
            for (int c = col; c < cols; ++c)
                if (!w[rank][c].is_zero()) w[r][c] -= f * w[rank][c];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;

    std::vector<std::vector<K>> kernel;
    kernel.reserve(cols - rank);
    for (int free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<K> v(cols, K::zero());
        v[free_col] = K::one();
        for (int r = 0; r < rank; ++r) v[pivot_col[r]] = -w[r][free_col];
        kernel.push_back(std::move(v));
    }
    return {rank, std::move(kernel)};
}

}  // namespace curvelab

#endif
