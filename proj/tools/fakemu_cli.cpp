#include <CLI11.hpp>

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include "fakemu/classify.hpp"
#include "fakemu/empirics.hpp"
#include "fakemu/epsilon_spec.hpp"
#include "fakemu/euler.hpp"
#include "fakemu/exact_real.hpp"
#include "fakemu/sieve.hpp"
#include "fakemu/spec_io.hpp"
#include "fakemu/zeta.hpp"

using namespace fakemu;

namespace {

std::string fmt_approx(const ApproxReal& x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x.value);
    std::string s = buf;
    if (x.errBound > 0) {
        std::snprintf(buf, sizeof buf, " (err<=%.2g)", x.errBound);
        s += buf;
    }
    return s;
}

struct SpecSource {
    std::string builtinName, specPath;
};

void add_spec_source(CLI::App* cmd, SpecSource& src) {
    cmd->add_option("--builtin", src.builtinName, "builtin spec name");
    cmd->add_option("--spec", src.specPath, "SpecDocument JSON file");
}

EpsilonSpec resolve_spec(const SpecSource& src) {
    if (src.builtinName.empty() == src.specPath.empty())
        throw std::invalid_argument(
            "give exactly one spec source: --builtin NAME or --spec FILE");
    if (!src.builtinName.empty()) return builtin(src.builtinName);
    try {
        return load_spec(src.specPath);
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception& e) {
        throw std::invalid_argument(e.what());
    }
}

SieveConfig make_config(uint64_t limit, double ratio, unsigned workers) {
    SieveConfig cfg;
    cfg.limit = limit;
    cfg.checkpointRatio = ratio;
    cfg.workers = workers;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fake mu: classification, bias constants, and sieving for "
                 "prime-power multiplicative functions"};
    app.require_subcommand(1);
    app.fallthrough();

    int digits = 8;
    app.add_option("--digits", digits, "significant digits printed")
        ->check(CLI::Range(1, 17));

    SpecSource clsSrc;
    CLI::App* cmdClassify =
        app.add_subcommand("classify", "verdict with a and b");
    add_spec_source(cmdClassify, clsSrc);

    SpecSource biasSrc;
    CLI::App* cmdBias = app.add_subcommand("bias", "bias constant b");
    add_spec_source(cmdBias, biasSrc);

    CLI::App* cmdConstants =
        app.add_subcommand("constants", "1/zeta(1/2) and the four extremal "
                                        "bias constants");

    int tanakaR = 0;
    CLI::App* cmdTanaka =
        app.add_subcommand("tanaka", "closed-form bias of the mu_r family");
    cmdTanaka->add_option("--r", tanakaR, "family index r >= 3")->required();

    std::string alphaText, betaText, constructOut;
    bool signedDigits = false;
    CLI::App* cmdConstruct = app.add_subcommand(
        "construct-zero-bias", "spec with vanishing apparent bias");
    cmdConstruct->add_option("alpha", alphaText, "alpha as an ExactReal string")
        ->required();
    cmdConstruct->add_option("beta", betaText, "beta as an ExactReal string")
        ->required();
    cmdConstruct->add_flag("--signed", signedDigits,
                           "use the signed-digit family");
    cmdConstruct->add_option("--out", constructOut,
                             "write the SpecDocument here (default stdout)");

    SpecSource sieveSrc;
    uint64_t limit = 0;
    double ratio = 1.0100501670841681;
    unsigned workers = 1;
    std::string sieveOut = "report";
    CLI::App* cmdSieve =
        app.add_subcommand("sieve", "summatory checkpoints and statistics");
    add_spec_source(cmdSieve, sieveSrc);
    cmdSieve->add_option("--limit", limit, "sieve up to N")->required();
    cmdSieve->add_option("--ratio", ratio, "checkpoint spacing ratio");
    cmdSieve->add_option("--workers", workers, "concurrent segment workers");
    cmdSieve->add_option("--out", sieveOut,
                         "base path; writes <out>.csv and <out>.json");

    SpecSource verifySrc;
    uint64_t verifyLimit = 0;
    double verifyRatio = 1.0100501670841681;
    unsigned verifyWorkers = 1;
    CLI::App* cmdVerify = app.add_subcommand(
        "verify", "sieve and check the classified behavior");
    add_spec_source(cmdVerify, verifySrc);
    cmdVerify->add_option("--limit", verifyLimit, "sieve up to N")->required();
    cmdVerify->add_option("--ratio", verifyRatio, "checkpoint spacing ratio");
    cmdVerify->add_option("--workers", verifyWorkers,
                          "concurrent segment workers");

    SpecSource figSrc;
    uint64_t figLimit = 0;
    double figRatio = 1.0100501670841681;
    unsigned figWorkers = 1;
    std::string figOut = "figure.csv";
    CLI::App* cmdFigure =
        app.add_subcommand("figure", "sieve and export the checkpoint CSV");
    add_spec_source(cmdFigure, figSrc);
    cmdFigure->add_option("--limit", figLimit, "sieve up to N")->required();
    cmdFigure->add_option("--ratio", figRatio, "checkpoint spacing ratio");
    cmdFigure->add_option("--workers", figWorkers,
                          "concurrent segment workers");
    cmdFigure->add_option("--out", figOut, "CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmdClassify->parsed()) {
            const BiasClassification c = classify(resolve_spec(clsSrc));
            std::printf("%s a=%s b=%s\n", to_string(c.verdict),
                        fmt_approx(c.a, digits).c_str(),
                        fmt_approx(c.b, digits).c_str());
            return 0;
        }
        if (cmdBias->parsed()) {
            const BiasClassification c = classify(resolve_spec(biasSrc));
            std::printf("b=%s\n", fmt_approx(c.b, digits).c_str());
            return 0;
        }
        if (cmdConstants->parsed()) {
            const ExtremalConstants ec = extremal_constants();
            std::printf("1/zeta(1/2) = %s\n",
                        fmt_approx(ec.invZetaHalf, digits).c_str());
            std::printf("A1 = %s\n", fmt_approx(ec.A1, digits).c_str());
            std::printf("B1 = %s\n", fmt_approx(ec.B1, digits).c_str());
            std::printf("A2 = %s\n", fmt_approx(ec.A2, digits).c_str());
            std::printf("B2 = %s\n", fmt_approx(ec.B2, digits).c_str());
            return 0;
        }
        if (cmdTanaka->parsed()) {
            std::printf("b_%d = %s\n", tanakaR,
                        fmt_approx(tanaka_bias(tanakaR), digits).c_str());
            return 0;
        }
        if (cmdConstruct->parsed()) {
            const ZeroBiasParams params =
                zero_bias_params(ExactReal::parse(alphaText),
                                 ExactReal::parse(betaText), signedDigits);
            const EpsilonSpec spec = construct_zero_bias(params);
            if (constructOut.empty()) {
                std::cout << spec_to_json(spec);
            } else {
                save_spec(spec, constructOut);
                std::printf("wrote %s\n", constructOut.c_str());
            }
            return 0;
        }
        if (cmdSieve->parsed()) {
            const EpsilonSpec spec = resolve_spec(sieveSrc);
            const SieveReport rep =
                sieve_summatory(spec, make_config(limit, ratio, workers));
            export_figure_data(rep, sieveOut + ".csv");
            write_summary_json(rep, sieveOut + ".json");
            std::cout << summary_json(rep);
            return 0;
        }
        if (cmdVerify->parsed()) {
            const EpsilonSpec spec = resolve_spec(verifySrc);
            const BiasClassification cls = classify(spec);
            const SieveReport rep = sieve_summatory(
                spec, make_config(verifyLimit, verifyRatio, verifyWorkers));
            const ValidationVerdict v = validate(rep, cls);
            std::printf("%s %s measured=%.*g predicted=%.*g tolerance=%.*g "
                        "signChanges=%" PRIu64 "\n  %s\n",
                        to_string(v.kind), v.passed ? "pass" : "fail", digits,
                        v.measured, digits, v.predicted, digits, v.tolerance,
                        rep.signChanges, v.note.c_str());
            return v.passed ? 0 : 1;
        }
        if (cmdFigure->parsed()) {
            const EpsilonSpec spec = resolve_spec(figSrc);
            const SieveReport rep = sieve_summatory(
                spec, make_config(figLimit, figRatio, figWorkers));
            export_figure_data(rep, figOut);
            std::printf("wrote %s\n", figOut.c_str());
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
