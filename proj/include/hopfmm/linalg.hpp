#pragma once

// Dense exact linear algebra over a field-valued scalar ring.

#include <map>
#include <optional>
#include <vector>

#include "hopfmm/algebra.hpp"

namespace hopfmm {

using Vec = std::vector<Scalar>;

// Reduced row echelon form, grown one vector at a time.
class Echelon {
public:
    Echelon(Ring ring, size_t dim) : ring_(ring), dim_(dim) {}

    size_t dim() const { return dim_; }
    size_t rank() const { return rows_.size(); }
    const std::vector<Vec>& rows() const { return rows_; }
    const std::vector<size_t>& pivots() const { return pivots_; }

    // Remainder of v after eliminating every pivot column.
    Vec reduce(Vec v) const;
    bool contains(const Vec& v) const;
    // Returns true when v was independent of the rows so far.
    bool add(const Vec& v);

private:
    Ring ring_;
    size_t dim_;
    std::vector<Vec> rows_;
    std::vector<size_t> pivots_;
};

bool is_zero(const Vec& v);
Vec zero_vec(Ring r, size_t n);

// Basis of {x : sum_j rows[i][j] x[j] = 0 for all i}.
std::vector<Vec> kernel(const std::vector<Vec>& rows, size_t cols, Ring ring);
// Some x with sum_j a[i][j] x[j] = b[i], if any.
std::optional<Vec> solve(const std::vector<Vec>& a, const Vec& b, size_t cols, Ring ring);
Scalar determinant(std::vector<Vec> m, Ring ring);

// Coordinates of elements on a growing list of words.
class WordIndex {
public:
    explicit WordIndex(Ring ring) : ring_(ring) {}
    size_t index(const Word& w);
    std::optional<size_t> find(const Word& w) const;
    size_t size() const { return words_.size(); }
    const Word& word(size_t i) const { return words_.at(i); }
    // Registers any new words first.
    Vec coordinates(const Element& e);
    // Words missing from the index make this return nothing.
    std::optional<Vec> coordinates_if_known(const Element& e) const;
    Element element(const Vec& v) const;

private:
    Ring ring_;
    std::vector<Word> words_;
    std::map<Word, size_t> index_;
};

}  // namespace hopfmm
