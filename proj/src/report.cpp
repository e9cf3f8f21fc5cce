#include "hopfmm/report.hpp"

namespace hopfmm {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Partial: return "partial";
    }
    return "?";
}

bool CheckReport::passed() const { return verdict() == Verdict::Pass; }

Verdict CheckReport::verdict() const {
    Verdict v = Verdict::Pass;
    for (const auto& r : records) {
        if (r.verdict == Verdict::Fail) return Verdict::Fail;
        if (r.verdict == Verdict::Partial) v = Verdict::Partial;
    }
    return v;
}

const CheckRecord* CheckReport::find(const std::string& name) const {
    for (const auto& r : records)
        if (r.name == name) return &r;
    return nullptr;
}

const Witness* CheckReport::first_witness() const {
    for (const auto& r : records)
        if (!r.witnesses.empty()) return &r.witnesses.front();
    return nullptr;
}

void CheckReport::append(const CheckReport& other, const std::string& prefix) {
    for (auto r : other.records) {
        r.name = prefix + r.name;
        records.push_back(std::move(r));
    }
}

nlohmann::ordered_json CheckReport::to_json(bool with_timing) const {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["verdict"] = verdict_name(verdict());
    j["records"] = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        nlohmann::ordered_json jr;
        jr["name"] = r.name;
        jr["verdict"] = verdict_name(r.verdict);
        jr["degree"] = r.degree;
        jr["cases"] = r.cases;
        if (!r.note.empty()) jr["note"] = r.note;
        jr["witnesses"] = nlohmann::ordered_json::array();
        for (const auto& w : r.witnesses) {
            nlohmann::ordered_json jw;
            jw["inputs"] = w.inputs;
            jw["lhs"] = w.lhs;
            jw["rhs"] = w.rhs;
            jr["witnesses"].push_back(jw);
        }
        if (with_timing) jr["seconds"] = r.seconds;
        j["records"].push_back(jr);
    }
    return j;
}

RecordBuilder::RecordBuilder(std::string name, int degree, size_t max_witnesses)
    : max_witnesses_(max_witnesses), start_(std::chrono::steady_clock::now()) {
    rec_.name = std::move(name);
    rec_.degree = degree;
}

void RecordBuilder::fail(Witness w) {
    ++rec_.cases;
    rec_.verdict = Verdict::Fail;
    if (rec_.witnesses.size() < max_witnesses_) rec_.witnesses.push_back(std::move(w));
}

void RecordBuilder::partial(const std::string& note) {
    if (rec_.verdict == Verdict::Pass) rec_.verdict = Verdict::Partial;
    if (rec_.note.empty()) rec_.note = note;
}

CheckRecord RecordBuilder::finish() {
    rec_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return rec_;
}

}  // namespace hopfmm
