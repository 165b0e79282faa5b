#pragma once

#include <optional>
#include <string>

#include "tts/stance.hpp"

namespace tts {

// Scripted overrides for a source's reporting behavior.
enum class ScriptKind : int { Truthful, Flip, UninformedRandom, Constant };

struct ReportScript {
    ScriptKind kind = ScriptKind::Truthful;
    double flip_fraction = 0.0;     // Flip: fraction of spoken claims flipped, in [0, 0.5]
    double support_probability = 0.5; // UninformedRandom: P(support) per spoken claim
    Stance stance = Stance::Contradict; // Constant: the stance always reported

    static ReportScript truthful() { return {ScriptKind::Truthful, 0.0, 0.5, Stance::Support}; }
    static ReportScript flip(double fraction) {
        return {ScriptKind::Flip, fraction, 0.5, Stance::Support};
    }
    static ReportScript uninformed_random(double p) {
        return {ScriptKind::UninformedRandom, 0.0, p, Stance::Support};
    }
    static ReportScript constant(Stance s) { return {ScriptKind::Constant, 0.0, 0.5, s}; }
};

// Generative behavior of one source: effort, binary signal channel, reporting
// rule, coverage, plus an optional scripted override.
struct SourceStrategy {
    std::string name;                   // optional label; world assigns "src_<i>" when empty
    bool effort = true;                 // e_i
    double signal_accuracy_true = 1.0;  // s1 = P(z=1 | claim true)
    double signal_accuracy_false = 0.0; // s0 = P(z=1 | claim false)
    double report_given_one = 1.0;      // q1 = P(report support | z=1)
    double report_given_zero = 0.0;     // q0 = P(report support | z=0)
    double coverage = 1.0;              // alpha_i
    std::optional<ReportScript> script;

    double signal_informativeness() const { return signal_accuracy_true - signal_accuracy_false; }

    static SourceStrategy truthful(double s1, double s0, double alpha = 1.0,
                                   std::string name = {});
    static SourceStrategy flip(double fraction, double s1, double s0, double alpha = 1.0,
                               std::string name = {});
    static SourceStrategy uninformed_random(double p, double alpha = 1.0, std::string name = {});
    static SourceStrategy constant(Stance s, double alpha = 1.0, std::string name = {});
};

// Report informativeness eta_i = (q1 - q0) * (s1 - s0) induced by the strategy.
// Scripts: Flip with effort gives (1 - 2*phi) * (s1 - s0); UninformedRandom,
// Constant, and any no-effort strategy give 0; Truthful gives s1 - s0.
double policy_informativeness(const SourceStrategy& strategy);

// Structural validity of the probability fields; returns a message per violation.
std::vector<std::string> strategy_violations(const SourceStrategy& strategy,
                                             std::size_t source_index);

} // namespace tts
