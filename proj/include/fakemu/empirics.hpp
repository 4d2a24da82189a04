#pragma once

#include <string>

#include "fakemu/classify.hpp"
#include "fakemu/sieve.hpp"

namespace fakemu {

enum class CheckKind {
    PersistentConvergence,
    ApparentOscillation,
    NoBiasCentering
};

const char* to_string(CheckKind k);

struct ValidationTolerances {
    double persistentFinal = 0.1;  // |normalized(N) - b| at the endpoint
    double decadeSlack = 0.02;     // allowed increase between decade devs
    double medianHalfWidth = 0.5;  // window for the oscillation median
};

struct ValidationVerdict {
    CheckKind kind = CheckKind::NoBiasCentering;
    bool passed = false;
    double measured = 0;   // endpoint deviation or median, per kind
    double predicted = 0;  // the b tested against
    double tolerance = 0;  // the bound `measured` was compared to
    std::string note;      // which clause decided the verdict
};

// Compares the sieve measurements against the classifier's prediction.
// PersistentConvergence: |normalized(N) - b| within tolerance and the
// deviations at decade checkpoints (largest x <= 10^d, d >= 4) do not
// increase beyond the slack.  ApparentOscillation: the median of
// normalized - b over checkpoints with x in [N/100, N] stays inside the
// median window and at least one sign change occurred.  NoBiasCentering:
// the same median test about 0.  The report must carry the same a and b as
// the classification.
ValidationVerdict validate(const SieveReport& report,
                           const BiasClassification& classification,
                           const ValidationTolerances& tol = {});

// CSV with header u,x,F,normalized, one row per checkpoint, reals in %.10g.
std::string figure_csv(const SieveReport& report);
void export_figure_data(const SieveReport& report, const std::string& path);

// JSON object with keys spec, N, a, b, signChanges, minDev, maxDev,
// nonPositiveUpTo in that order; a and b carry value and errBound, the
// extrema carry value and location.
std::string summary_json(const SieveReport& report);
void write_summary_json(const SieveReport& report, const std::string& path);

}  // namespace fakemu
