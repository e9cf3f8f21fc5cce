#pragma once

// Presentation files, the builtin catalog, and the check suites run over a loaded workspace.
//
// A file is a list of sections `[kind args...]` followed by `key = value` lines; `#` starts a comment.
//   [scalars]                          ring = rational | qrational | dual-rational | dual-qrational
//   [import]                           builtin = NAME    or    file = PATH (relative to the importing file)
//   [generators X [ring]]              name = degree
//   [relations X]                      lhs word = rhs
//   [coproduct X] [counit X] [antipode X]
//   [pairing NAME LEFT RIGHT]          a, b = scalar
//   [coaction A H] [covector_coaction F HV]   gen = tensor with slots (A, H)
//   [counit F]                         also used for non-Hopf moment sources
//   [source NAME]                      algebra, coaction, covector, pairing [, hopf]
//   [momentmap NAME SOURCE TARGET]     gen = value in TARGET
//   [module NAME H V]                  gen of H = image in V
//   [hopfmap NAME D H]                 gen of D = image in H
//   [relative NAME RH MAP RD]
//   [lie L]                            basis = ..., [x, y] = ..., pairing(x, y) = ..., subalgebra = ..., complement = ...
//   [derivations X L]                  x, gen = a(x)(gen)      (L may be `T/g`, the subalgebra of T)
//   [bivector X]                       gen, gen = value
//   [phi L]                            phi = ..., delta(x) = ..., twist = ...   (a*b*c denotes a∧b∧c)
//   [classical NAME DG X]              gen of DG = value in X
//   [limit NAME]                       moment, source, target [, double, r, degree]

#include <filesystem>

#include "hopfmm/limit.hpp"
#include "hopfmm/moment.hpp"
#include "hopfmm/qpoisson.hpp"

namespace hopfmm {

class ValidationError : public Error {
public:
    ValidationError(const std::string& msg, CheckReport report)
        : Error(ErrorKind::ValidationFailed, msg), report_(std::move(report)) {}
    const CheckReport& report() const { return report_; }

private:
    CheckReport report_;
};

struct QuasiPoissonData {
    MultiVector phi{3};
    Cobracket delta;
    std::optional<MultiVector> twist;
};

struct RelativeCoqt {
    PairingPtr rh, rd;
    std::shared_ptr<const HopfMap> map;
};

struct Workspace {
    std::vector<std::string> origins;
    std::map<std::string, PresentationPtr> presentations;
    std::map<std::string, HopfPtr> hopf;
    std::map<std::string, PairingPtr> pairings;
    std::map<std::pair<std::string, std::string>, ComodulePtr> coactions, covectors;
    std::map<std::string, std::vector<Scalar>> counits;
    std::map<std::string, SourcePtr> sources;
    std::map<std::string, MomentPtr> moments;
    std::map<std::string, LeftModule> modules;
    std::map<std::string, std::shared_ptr<const HopfMap>> hopf_maps;
    std::map<std::string, RelativeCoqt> relatives;
    std::map<std::string, LiePtr> lies;
    std::map<std::string, QuasiPoissonData> quasi;
    std::map<std::string, AffineQP> varieties;
    std::map<std::string, ClassicalMoment> classical;
    std::map<std::string, LimitProblem> limits;
    CheckReport validation{"load"};

    const Presentation& presentation(const std::string& name) const;
    MomentPtr moment(const std::string& name) const;
};

struct LoadOptions {
    int confluence_degree = 4;
    int validation_degree = 2;
};

// Parses, then runs the mandatory validations; throws ValidationError when any of them fails.
Workspace load_text(const std::string& text, const std::string& origin, const LoadOptions& opts = {});
// A path, or the name of a builtin when no such file exists.
Workspace load_file(const std::string& path, const LoadOptions& opts = {});
Workspace load_builtin(const std::string& name, const LoadOptions& opts = {});
// Several inputs into one workspace; shared imports are loaded once.
Workspace load_files(const std::vector<std::string>& paths, const LoadOptions& opts = {});

std::vector<std::string> builtin_names();
const std::string& builtin_text(const std::string& name);

const std::vector<std::string>& suite_names();
// Throws InvalidInput for an unknown suite.
CheckReport run_suite(const std::string& suite, const Workspace& ws, int degree);

// File text declaring the fused algebra, its coaction and the fused moment map; `imports` are
// the files providing the source and the original algebras (`builtin:NAME` for a builtin).
std::string write_fused(const MomentMap& fused, const std::vector<std::string>& imports);

}  // namespace hopfmm
