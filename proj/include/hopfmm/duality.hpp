#pragma once

// Skew-pairings, comodule algebras, and the constructions built from them.
//
// Pairing laws (left argument in H^v, right argument in H):
//   g(ab, c) = g(a, c1) g(b, c2)      g(a, bc) = g(a1, c) g(a2, b)
// With these laws a right H-comodule becomes a left H^v-module through h |> v = v0 g(h, v1).

#include <map>
#include <memory>
#include <mutex>

#include "hopfmm/hopf.hpp"

namespace hopfmm {

class SkewPairing {
public:
    using Table = std::map<std::pair<int, int>, Scalar>;

    SkewPairing(std::string name, HopfPtr left, HopfPtr right, Table table);
    SkewPairing(const SkewPairing&) = delete;
    SkewPairing& operator=(const SkewPairing&) = delete;

    const std::string& name() const { return name_; }
    const HopfStructure& left() const { return *left_; }
    const HopfStructure& right() const { return *right_; }
    const HopfPtr& left_ptr() const { return left_; }
    const HopfPtr& right_ptr() const { return right_; }
    const Table& table() const { return table_; }
    Ring ring() const { return left_->algebra().ring(); }

    Scalar pair(const Element& a, const Element& b) const;
    Scalar pair_words(const Word& a, const Word& b) const;
    // The convolution inverse, evaluated as g(S(a), b).
    Scalar convolution_inverse(const Element& a, const Element& b) const;

    // Relation consistency on both sides and the two product laws on normal words.
    CheckReport validate(int max_degree = 2) const;

private:
    std::string name_;
    HopfPtr left_, right_;
    Table table_;
    mutable std::mutex mutex_;
    mutable std::map<std::pair<Word, Word>, Scalar> memo_;
};

using PairingPtr = std::shared_ptr<const SkewPairing>;

// Right coaction A -> A (x) H given on generators; slot order is (A, H).
class ComoduleAlgebra {
public:
    ComoduleAlgebra(PresentationPtr base, HopfPtr coacting, std::vector<TensorElement> coaction);
    ComoduleAlgebra(const ComoduleAlgebra&) = delete;
    ComoduleAlgebra& operator=(const ComoduleAlgebra&) = delete;

    const Presentation& algebra() const { return *base_; }
    const PresentationPtr& algebra_ptr() const { return base_; }
    const HopfStructure& coacting() const { return *coacting_; }
    const HopfPtr& coacting_ptr() const { return coacting_; }
    std::vector<const Presentation*> slots() const { return {base_.get(), &coacting_->algebra()}; }
    const TensorElement& generator_coaction(int id) const { return coaction_.at(id); }

    TensorElement coact(const Element& a) const;
    TensorElement coact_word(const Word& w) const;
    bool is_trivial() const;

    CheckReport validate(int max_degree = 2) const;

private:
    PresentationPtr base_;
    HopfPtr coacting_;
    std::vector<TensorElement> coaction_;
    mutable std::mutex mutex_;
    mutable std::unordered_map<Word, TensorElement, WordHash> memo_;
};

using ComodulePtr = std::shared_ptr<const ComoduleAlgebra>;

// The coaction a -> a (x) 1.
ComodulePtr trivial_comodule(PresentationPtr base, HopfPtr coacting);

// h |> a = a0 ev(h, a1).
Element coact_to_act(const SkewPairing& ev, const ComoduleAlgebra& a, const Element& h, const Element& x);

// w (x) v -> v0 (x) w0 ev(w1, v1), with W coacted on by ev.left() and V by ev.right().
// The input has slots (W, V), the output (V, W).
TensorElement distributive_law(const SkewPairing& ev, const ComoduleAlgebra& w, const ComoduleAlgebra& v,
                               const TensorElement& x);
// v (x) w -> w0 (x) v0 ev^-1(w1, v1); undoes distributive_law.
TensorElement distributive_law_inverse(const SkewPairing& ev, const ComoduleAlgebra& w, const ComoduleAlgebra& v,
                                       const TensorElement& y);

// r(a1, b1) a2 b2 = r(a2, b2) b1 a1 for all normal words of length at most max_degree.
CheckReport check_coquasitriangular(const SkewPairing& r, int max_degree = 3);

class HopfMap {
public:
    HopfMap(HopfPtr source, HopfPtr target, std::vector<Element> images);
    const HopfStructure& source() const { return *source_; }
    const HopfStructure& target() const { return *target_; }
    Element apply(const Element& e) const;
    Element apply_word(const Word& w) const;
    CheckReport validate(int max_degree = 2) const;

private:
    HopfPtr source_, target_;
    std::vector<Element> images_;
};

// rH on D (x) H, rD on D (x) D:
//   rH(d, f(e)) = rD(d, e)
//   rH(d1, h1) f(d2) h2 = rH(d2, h2) h1 f(d1)
CheckReport check_relative_coquasitriangular(const SkewPairing& rh, const HopfMap& f, const SkewPairing& rd,
                                             int max_degree = 2);

}  // namespace hopfmm
