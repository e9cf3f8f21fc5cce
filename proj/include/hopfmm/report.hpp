#pragma once

#include <chrono>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

namespace hopfmm {

enum class Verdict { Pass, Fail, Partial };
const char* verdict_name(Verdict v);

// The inputs re-parse in the presentations named by the check; lhs/rhs are the two sides that differed.
struct Witness {
    std::vector<std::string> inputs;
    std::string lhs, rhs;
};

struct CheckRecord {
    std::string name;
    Verdict verdict = Verdict::Pass;
    std::vector<Witness> witnesses;
    int degree = 0;
    size_t cases = 0;
    double seconds = 0;
    std::string note;
};

class CheckReport {
public:
    std::string suite;
    std::vector<CheckRecord> records;

    explicit CheckReport(std::string s = "") : suite(std::move(s)) {}
    bool passed() const;
    Verdict verdict() const;
    const CheckRecord* find(const std::string& name) const;
    const Witness* first_witness() const;
    void append(const CheckReport& other, const std::string& prefix = "");
    nlohmann::ordered_json to_json(bool with_timing = true) const;
};

// Accumulates cases for one record, keeping the first few witnesses.
class RecordBuilder {
public:
    RecordBuilder(std::string name, int degree, size_t max_witnesses = 5);
    void pass() { ++rec_.cases; }
    void fail(Witness w);
    void check(bool ok, const std::function<Witness()>& witness) {
        if (ok)
            pass();
        else
            fail(witness());
    }
    void partial(const std::string& note);
    void note(const std::string& n) { rec_.note = n; }
    bool failed() const { return rec_.verdict == Verdict::Fail; }
    CheckRecord finish();

private:
    CheckRecord rec_;
    size_t max_witnesses_;
    std::chrono::steady_clock::time_point start_;
};

}  // namespace hopfmm
