#pragma once

// First-order classical limits of families over the dual numbers k[hbar]/hbar^2.

#include "hopfmm/moment.hpp"
#include "hopfmm/qpoisson.hpp"

namespace hopfmm {

using Bracket = std::map<std::pair<int, int>, Element>;

// Same generators, rules with every coefficient replaced by its body.
PresentationPtr body_presentation(const Presentation& quantized, const std::string& name);
HopfPtr body_hopf(const HopfStructure& quantized, PresentationPtr classical);

// Body or slope of each coefficient, transported by generator name and reduced in `to`.
Element body_part(const Element& e, const Presentation& from, const Presentation& to);
Element slope_part(const Element& e, const Presentation& from, const Presentation& to);

// Throws NotFlat unless the quantized rules resolve their critical pairs up to max_degree and
// reduce, at hbar = 0, to the classical ones (in both directions).
void check_flat(const Presentation& quantized, const Presentation& classical, int max_degree = 4);

// {x_i, x_j} = (x_i x_j - x_j x_i)/hbar on generator pairs i < j, nonzero entries only.
Bracket extract_bracket(const Presentation& quantized, const Presentation& classical);

struct RLimit {
    HopfPtr classical;                          // O(D) at hbar = 0
    std::map<std::pair<int, int>, Scalar> r;    // (r - eps (x) eps)/hbar on generator pairs
    Bracket bracket;
    CheckReport report;
};

// Extracts r and {-,-}_D and checks: r has body eps (x) eps, the symmetric part of r is invariant under
// conjugation, the bracket is multiplicative, and it is the biderivation induced by r.
RLimit r_matrix_limit(const HopfStructure& quantized, const SkewPairing& r);

struct LimitProblem {
    MomentPtr quantum;       // over a dual ring
    AffineQP source, target; // hbar = 0 coordinate rings with their declared actions
    LiePtr double_lie;       // group pair with a complement
    HopfPtr double_hopf;     // optional quantized O(D) carrying r
    PairingPtr r;
    int degree = 2;
};

struct LimitResult {
    ClassicalMoment moment;  // extracted bivectors and mu at hbar = 0
    std::optional<RLimit> r;
    CheckReport report;
};

LimitResult classical_limit(const LimitProblem& p);

}  // namespace hopfmm
