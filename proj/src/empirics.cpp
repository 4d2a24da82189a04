#include "fakemu/empirics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

namespace fakemu {

namespace {

double median(std::vector<double> v) {
    if (v.empty())
        throw std::invalid_argument("validate: no checkpoints in the window");
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// deviation |normalized - b| at the last checkpoint with x <= 10^d, d >= 4
std::vector<double> decade_deviations(const SieveReport& rep) {
    std::vector<double> devs;
    for (double X = 1e4; X <= static_cast<double>(rep.limit) * (1 + 1e-9);
         X *= 10) {
        const Checkpoint* last = nullptr;
        for (const Checkpoint& cp : rep.checkpoints) {
            if (static_cast<double>(cp.x) > X) break;
            last = &cp;
        }
        if (last) devs.push_back(std::fabs(last->normalized - rep.b.value));
    }
    return devs;
}

void write_file(const std::string& path, const std::string& payload,
                const char* what) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(std::string(what) + ": cannot open " + path);
    out << payload;
    out.flush();
    if (!out) throw std::runtime_error(std::string(what) + ": write failed on " + path);
}

}  // namespace

const char* to_string(CheckKind k) {
    switch (k) {
        case CheckKind::PersistentConvergence: return "PersistentConvergence";
        case CheckKind::ApparentOscillation: return "ApparentOscillation";
        case CheckKind::NoBiasCentering: return "NoBiasCentering";
    }
    throw std::logic_error("to_string: bad CheckKind");
}

ValidationVerdict validate(const SieveReport& report,
                           const BiasClassification& classification,
                           const ValidationTolerances& tol) {
    if (report.checkpoints.empty())
        throw std::invalid_argument("validate: report has no checkpoints");
    if (report.a.value != classification.a.value ||
        report.b.value != classification.b.value)
        throw std::invalid_argument(
            "validate: report was normalized against a different "
            "classification");

    const double b = classification.b.value;
    ValidationVerdict v;
    v.predicted = b;

    if (classification.verdict == BiasVerdict::PersistentBias) {
        v.kind = CheckKind::PersistentConvergence;
        v.tolerance = tol.persistentFinal;
        v.measured = std::fabs(report.checkpoints.back().normalized - b);
        const bool endpoint = v.measured <= tol.persistentFinal;
        bool monotone = true;
        const std::vector<double> devs = decade_deviations(report);
        for (size_t i = 1; i < devs.size(); ++i)
            if (devs[i] > devs[i - 1] + tol.decadeSlack) monotone = false;
        v.passed = endpoint && monotone;
        v.note = endpoint
                     ? (monotone ? "endpoint and decade checks hold"
                                 : "decade deviations increased beyond slack")
                     : "endpoint deviation above tolerance";
        return v;
    }

    // oscillation cases: median of the deviation over the last two decades
    std::vector<double> window;
    const double cut = static_cast<double>(report.limit) / 100.0;
    for (const Checkpoint& cp : report.checkpoints)
        if (static_cast<double>(cp.x) >= cut)
            window.push_back(cp.normalized - b);
    v.measured = median(std::move(window));
    v.tolerance = tol.medianHalfWidth;
    const bool centered = std::fabs(v.measured) <= tol.medianHalfWidth;

    if (classification.verdict == BiasVerdict::ApparentBias) {
        v.kind = CheckKind::ApparentOscillation;
        const bool flips = report.signChanges >= 1;
        v.passed = centered && flips;
        v.note = centered ? (flips ? "median centered and deviation changed "
                                     "sign"
                                   : "deviation never changed sign")
                          : "median outside the window";
        return v;
    }

    v.kind = CheckKind::NoBiasCentering;
    v.passed = centered;
    v.note = centered ? "median centered" : "median outside the window";
    return v;
}

std::string figure_csv(const SieveReport& report) {
    if (report.checkpoints.empty())
        throw std::invalid_argument("figure_csv: report has no checkpoints");
    std::string out = "u,x,F,normalized\n";
    char buf[128];
    for (const Checkpoint& cp : report.checkpoints) {
        std::snprintf(buf, sizeof buf, "%.10g,%llu,%lld,%.10g\n", cp.u,
                      static_cast<unsigned long long>(cp.x),
                      static_cast<long long>(cp.F), cp.normalized);
        out += buf;
    }
    return out;
}

void export_figure_data(const SieveReport& report, const std::string& path) {
    write_file(path, figure_csv(report), "export_figure_data");
}

std::string summary_json(const SieveReport& report) {
    nlohmann::ordered_json j;
    j["spec"] = report.spec;
    j["N"] = report.limit;
    j["a"] = {{"value", report.a.value}, {"errBound", report.a.errBound}};
    j["b"] = {{"value", report.b.value}, {"errBound", report.b.errBound}};
    j["signChanges"] = report.signChanges;
    j["minDev"] = {{"value", report.minDev}, {"x", report.minDevX}};
    j["maxDev"] = {{"value", report.maxDev}, {"x", report.maxDevX}};
    j["nonPositiveUpTo"] = report.nonPositiveUpTo;
    return j.dump(2) + "\n";
}

void write_summary_json(const SieveReport& report, const std::string& path) {
    write_file(path, summary_json(report), "write_summary_json");
}

}  // namespace fakemu
