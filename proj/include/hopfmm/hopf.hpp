#pragma once

// Coproduct, counit and antipode declared on generators and extended to words.

#include <map>
#include <memory>
#include <mutex>

#include "hopfmm/algebra.hpp"
#include "hopfmm/report.hpp"

namespace hopfmm {

using PresentationPtr = std::shared_ptr<const Presentation>;

class HopfStructure {
public:
    HopfStructure(PresentationPtr alg, std::vector<TensorElement> coproduct, std::vector<Scalar> counit,
                  std::vector<Element> antipode);
    HopfStructure(const HopfStructure&) = delete;
    HopfStructure& operator=(const HopfStructure&) = delete;

    const Presentation& algebra() const { return *alg_; }
    const PresentationPtr& algebra_ptr() const { return alg_; }
    const std::string& name() const { return alg_->name(); }
    std::vector<const Presentation*> slots(int arity) const { return std::vector<const Presentation*>(arity, alg_.get()); }

    const TensorElement& generator_coproduct(int id) const { return coproduct_.at(id); }
    const Scalar& generator_counit(int id) const { return counit_.at(id); }
    const Element& generator_antipode(int id) const { return antipode_.at(id); }

    // Letterwise extensions: multiplicative for the coproduct and counit, anti-multiplicative for S.
    // Input words need not be normal, which is what makes the relation checks meaningful.
    TensorElement coproduct(const Element& e) const;
    TensorElement coproduct_word(const Word& w) const;
    Scalar counit(const Element& e) const;
    Scalar counit_word(const Word& w) const;
    Element antipode(const Element& e) const;
    Element antipode_word(const Word& w) const;

    // (Δ⊗id)Δ and (id⊗Δ)Δ.
    TensorElement coproduct_left(const Element& e) const;
    TensorElement coproduct_right(const Element& e) const;

    // Per-degree memo of validation reports.
    std::optional<CheckReport> cached_report(const std::string& key, int degree) const;
    void store_report(const std::string& key, int degree, const CheckReport& r) const;

private:
    PresentationPtr alg_;
    std::vector<TensorElement> coproduct_;
    std::vector<Scalar> counit_;
    std::vector<Element> antipode_;

    mutable std::mutex mutex_;
    mutable std::unordered_map<Word, TensorElement, WordHash> delta_memo_;
    mutable std::unordered_map<Word, Element, WordHash> s_memo_;
    mutable std::map<std::pair<std::string, int>, CheckReport> reports_;
};

using HopfPtr = std::shared_ptr<const HopfStructure>;

CheckReport check_bialgebra(const HopfStructure& h, int max_degree = 4);
CheckReport check_antipode(const HopfStructure& h, int max_degree = 4);

// A left H-module given by an algebra map H -> V on generators; h acts by left multiplication with its image.
struct LeftModule {
    HopfPtr hopf;
    PresentationPtr space;
    std::vector<Element> image;

    Element image_of(const Element& h) const;
    Element act(const Element& h, const Element& v) const;
};

CheckReport check_module(const LeftModule& m);

enum class HopfModuleMode { Alpha, Beta };
// alpha(h (x) v) = h1 (x) h2 v, beta(h (x) v) = h1 (x) S(h2) v; slots are (H, V).
TensorElement hopf_module_maps(const LeftModule& m, const TensorElement& x, HopfModuleMode mode);

}  // namespace hopfmm
