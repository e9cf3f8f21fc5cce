#pragma once

// Quantum moment maps mu: F -> A and the constructions around them.
//
// F carries a right H-coaction (as every object of the ambient category) and a right
// H^v-coaction h -> h0 (x) h1 with the H^v leg last. H^v acts on A through ev.

#include <memory>
#include <optional>

#include "hopfmm/duality.hpp"
#include "hopfmm/linalg.hpp"

namespace hopfmm {

struct MomentSource {
    std::string name;
    ComodulePtr algebra;    // F over H
    ComodulePtr covector;   // F over H^v, same base presentation
    std::vector<Scalar> counit;
    PairingPtr ev;          // H^v (x) H -> k
    HopfPtr hopf;           // Hopf structure on F itself, when there is one

    const Presentation& presentation() const { return algebra->algebra(); }
    Scalar counit_word(const Word& w) const;
    Scalar counit_of(const Element& e) const;
    // Counit and both coactions are algebra maps; the two coactions share the base.
    CheckReport validate(int max_degree = 2) const;
};

using SourcePtr = std::shared_ptr<const MomentSource>;

// The coproduct of a Hopf algebra viewed as its own covector coaction.
ComodulePtr covector_from_coproduct(HopfPtr h);

struct MomentMap {
    std::string name;
    SourcePtr source;
    ComodulePtr target;             // A over H
    std::vector<Element> values;    // one per F generator

    Element apply_word(const Word& w) const;
    Element apply(const Element& f) const;
    // Relations of F go to zero and mu intertwines the H-coactions.
    CheckReport validate(int max_degree = 2) const;
};

using MomentPtr = std::shared_ptr<const MomentMap>;

// mu(h) a and (h1 |> a) mu(h0).
std::pair<Element, Element> moment_map_sides(const MomentMap& m, const SkewPairing& ev, const Element& h,
                                             const Element& a);
// Generators against generators, then word pairs of total length at most max_degree.
CheckReport check_moment_map(const MomentMap& m, const SkewPairing& ev, int max_degree = 3);

// h -> mu(h0) (x) h1 with slots (A, H^v).
TensorElement adjoint_value(const MomentMap& m, const Element& h);
std::vector<TensorElement> adjoint_map(const MomentMap& m);

// Product on A (x) (H^v)^op: (a (x) y)(a' (x) z) = a (S(y1) |> a') (x) z y2.
TensorElement crossed_multiply(const SkewPairing& ev, const ComoduleAlgebra& target, const TensorElement& x,
                               const TensorElement& y);
// mu'(h) (a (x) 1) = (a (x) 1) mu'(h) on the same pairs as check_moment_map.
CheckReport check_centrality(const MomentMap& m, int max_degree = 3);

// Pointwise fusion; needs a Hopf structure on F and a commutative H.
MomentPtr fuse(const MomentMap& m1, const MomentMap& m2);

// The algebra k with mu = counit.
MomentPtr trivial_moment_map(SourcePtr source);

enum class ReductionSide { Left, Right };

struct ReductionResult {
    int degree = 0;
    ReductionSide side = ReductionSide::Left;
    size_t slice_dim = 0, ideal_dim = 0;
    std::vector<Element> basis;    // reduced representatives; basis[0] is the class of 1
    // product[i][j]: coordinates of basis[i]*basis[j] on the basis; empty when it left the slice.
    std::vector<std::vector<std::optional<Vec>>> product;
    bool partial = false;
    std::string note;

    size_t dimension() const { return basis.size(); }
};

// Invariants of A/I on the slice of normal words of length at most max_len, where I is the
// one-sided ideal generated by mu(g) - eps(g). With strict set, a product escaping the slice throws.
ReductionResult hamiltonian_reduce(const MomentMap& m, int max_len, ReductionSide side = ReductionSide::Left,
                                   bool strict = false);

// h -> eps(h0) h1 into H^v.
std::vector<Element> rosso_map(const MomentSource& src);
Element rosso_apply(const MomentSource& src, const Element& f);
CheckReport check_rosso(const MomentSource& src, int max_degree = 2);

}  // namespace hopfmm
