#pragma once

#include "fakemu/surd.hpp"

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace fakemu {

// An exactly represented real number whose binary digits can be computed by
// integer arithmetic alone: rationals p/q and quadratic surds (a + b*sqrt2)/c.
//
// Digit extraction is defined for values in [0, 1].  Dyadic rationals have two
// binary expansions; the terminating one is the default and `nonterminating`
// selects the trailing-ones expansion.  0 has only the all-zeros expansion and
// 1 only the all-ones expansion, whatever the flag says.
class ExactReal {
public:
    ExactReal() : ExactReal(Surd(), false) {}
    explicit ExactReal(Surd value, bool nonterminating = false);

    static ExactReal rational(long p, long q);
    static ExactReal surd(long a, long b, long c);  // (a + b*sqrt2)/c

    // Accepted forms: "0", "1", "p/q", "b/sqrt2", "a+b/sqrt2", "a-b/sqrt2",
    // each optionally followed by " over c".  "b/sqrt2" denotes b/sqrt(2).
    static ExactReal parse(const std::string& text);
    std::string str() const;

    const Surd& value() const { return value_; }
    bool nonterminating() const { return nonterminating_; }

    bool operator==(const ExactReal& o) const { return value_ == o.value_; }

    // j-th binary digit after the point, j >= 1.  Requires value in [0, 1].
    // Cached; the cache fill is idempotent and guarded for concurrent use.
    int digit(uint64_t j) const;

private:
    Surd value_;
    bool nonterminating_;

    struct DigitCache {
        std::mutex mu;
        std::vector<uint8_t> bits;  // bits[j-1] = digit j
        int constant = -1;          // 0 or 1 for the constant streams of 0 and 1
    };
    std::shared_ptr<DigitCache> cache_;

    void fill_digits(uint64_t n) const;
};

}  // namespace fakemu
