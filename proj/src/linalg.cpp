#include "hopfmm/linalg.hpp"

namespace hopfmm {

bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

Vec zero_vec(Ring r, size_t n) { return Vec(n, Scalar::zero(r)); }

Vec Echelon::reduce(Vec v) const {
    if (v.size() < dim_) v.resize(dim_, Scalar::zero(ring_));
    for (size_t i = 0; i < rows_.size(); ++i) {
        Scalar c = v[pivots_[i]];
        if (c.is_zero()) continue;
        const Vec& r = rows_[i];
        for (size_t j = 0; j < dim_; ++j)
            if (!r[j].is_zero()) v[j] -= c * r[j];
    }
    return v;
}

bool Echelon::contains(const Vec& v) const { return is_zero(reduce(v)); }

bool Echelon::add(const Vec& v) {
    Vec r = reduce(v);
    size_t p = 0;
    while (p < dim_ && r[p].is_zero()) ++p;
    if (p == dim_) return false;
    Scalar inv = r[p].inverse();
    for (auto& x : r)
        if (!x.is_zero()) x *= inv;
    for (auto& row : rows_) {
        Scalar c = row[p];
        if (c.is_zero()) continue;
        for (size_t j = 0; j < dim_; ++j)
            if (!r[j].is_zero()) row[j] -= c * r[j];
    }
    rows_.push_back(std::move(r));
    pivots_.push_back(p);
    return true;
}

std::vector<Vec> kernel(const std::vector<Vec>& rows, size_t cols, Ring ring) {
    Echelon e(ring, cols);
    for (const auto& r : rows) e.add(r);
    std::vector<bool> is_pivot(cols, false);
    for (size_t p : e.pivots()) is_pivot[p] = true;
    std::vector<Vec> out;
    for (size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        Vec x = zero_vec(ring, cols);
        x[f] = Scalar::one(ring);
        for (size_t i = 0; i < e.rank(); ++i) x[e.pivots()[i]] = -e.rows()[i][f];
        out.push_back(std::move(x));
    }
    return out;
}

std::optional<Vec> solve(const std::vector<Vec>& a, const Vec& b, size_t cols, Ring ring) {
    // Augment with b as the last column and look for a kernel vector ending in -1.
    std::vector<Vec> aug;
    for (size_t i = 0; i < a.size(); ++i) {
        Vec r = a[i];
        r.resize(cols, Scalar::zero(ring));
        r.push_back(b.at(i));
        aug.push_back(std::move(r));
    }
    Echelon e(ring, cols + 1);
    for (const auto& r : aug) e.add(r);
    for (size_t p : e.pivots())
        if (p == cols) return std::nullopt;
    Vec x = zero_vec(ring, cols);
    for (size_t i = 0; i < e.rank(); ++i) x[e.pivots()[i]] = e.rows()[i][cols];
    return x;
}

Scalar determinant(std::vector<Vec> m, Ring ring) {
    size_t n = m.size();
    Scalar det = Scalar::one(ring);
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && m[p][c].is_zero()) ++p;
        if (p == n) return Scalar::zero(ring);
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        Scalar inv = m[c][c].inverse();
        for (size_t r = c + 1; r < n; ++r) {
            if (m[r][c].is_zero()) continue;
            Scalar f = m[r][c] * inv;
            for (size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
        }
    }
    return det;
}

size_t WordIndex::index(const Word& w) {
    auto it = index_.find(w);
    if (it != index_.end()) return it->second;
    index_.emplace(w, words_.size());
    words_.push_back(w);
    return words_.size() - 1;
}

std::optional<size_t> WordIndex::find(const Word& w) const {
    auto it = index_.find(w);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Vec WordIndex::coordinates(const Element& e) {
    for (const auto& [w, c] : e.terms()) index(w);
    Vec v = zero_vec(ring_, words_.size());
    for (const auto& [w, c] : e.terms()) v[index_.at(w)] = c;
    return v;
}

std::optional<Vec> WordIndex::coordinates_if_known(const Element& e) const {
    Vec v = zero_vec(ring_, words_.size());
    for (const auto& [w, c] : e.terms()) {
        auto i = find(w);
        if (!i) return std::nullopt;
        v[*i] = c;
    }
    return v;
}

Element WordIndex::element(const Vec& v) const {
    Element e(ring_);
    for (size_t i = 0; i < v.size() && i < words_.size(); ++i)
        if (!v[i].is_zero()) e.add_term(words_[i], v[i]);
    return e;
}

}  // namespace hopfmm
