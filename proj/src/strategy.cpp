#include "tts/strategy.hpp"

#include <vector>

namespace tts {

SourceStrategy SourceStrategy::truthful(double s1, double s0, double alpha, std::string name) {
    SourceStrategy s;
    s.name = std::move(name);
    s.effort = true;
    s.signal_accuracy_true = s1;
    s.signal_accuracy_false = s0;
    s.report_given_one = 1.0;
    s.report_given_zero = 0.0;
    s.coverage = alpha;
    s.script = ReportScript::truthful();
    return s;
}

SourceStrategy SourceStrategy::flip(double fraction, double s1, double s0, double alpha,
                                    std::string name) {
    SourceStrategy s = truthful(s1, s0, alpha, std::move(name));
    s.script = ReportScript::flip(fraction);
    return s;
}

SourceStrategy SourceStrategy::uninformed_random(double p, double alpha, std::string name) {
    SourceStrategy s;
    s.name = std::move(name);
    s.effort = false;
    s.coverage = alpha;
    s.script = ReportScript::uninformed_random(p);
    return s;
}

SourceStrategy SourceStrategy::constant(Stance stance, double alpha, std::string name) {
    SourceStrategy s;
    s.name = std::move(name);
    s.effort = false;
    s.coverage = alpha;
    s.script = ReportScript::constant(stance);
    return s;
}

double policy_informativeness(const SourceStrategy& strategy) {
    const double eta_sig = strategy.signal_informativeness();
    if (strategy.script) {
        switch (strategy.script->kind) {
        case ScriptKind::Truthful:
            return eta_sig; // truthful forces effort and (q1, q0) = (1, 0)
        case ScriptKind::Flip:
            return strategy.effort ? (1.0 - 2.0 * strategy.script->flip_fraction) * eta_sig : 0.0;
        case ScriptKind::UninformedRandom:
        case ScriptKind::Constant:
            return 0.0;
        }
    }
    if (!strategy.effort) return 0.0;
    return (strategy.report_given_one - strategy.report_given_zero) * eta_sig;
}

namespace {
bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }
} // namespace

std::vector<std::string> strategy_violations(const SourceStrategy& strategy,
                                             std::size_t source_index) {
    std::vector<std::string> out;
    const std::string who = "strategy[" + std::to_string(source_index) + "]";
    auto check_unit = [&](double v, const char* field) {
        if (!in_unit(v)) out.push_back(who + ": " + field + " must lie in [0,1]");
    };
    check_unit(strategy.signal_accuracy_true, "signal_accuracy_true");
    check_unit(strategy.signal_accuracy_false, "signal_accuracy_false");
    check_unit(strategy.report_given_one, "report_given_one");
    check_unit(strategy.report_given_zero, "report_given_zero");
    check_unit(strategy.coverage, "coverage");
    if (strategy.script) {
        const ReportScript& sc = *strategy.script;
        if (sc.kind == ScriptKind::Flip &&
            (sc.flip_fraction < 0.0 || sc.flip_fraction > 0.5))
            out.push_back(who + ": flip fraction must lie in [0,0.5]");
        if (sc.kind == ScriptKind::UninformedRandom && !in_unit(sc.support_probability))
            out.push_back(who + ": support_probability must lie in [0,1]");
        if (sc.kind == ScriptKind::Truthful &&
            (!strategy.effort || strategy.report_given_one != 1.0 ||
             strategy.report_given_zero != 0.0))
            out.push_back(who + ": truthful script requires effort=1 and (q1,q0)=(1,0)");
        if (sc.kind == ScriptKind::Flip && !strategy.effort)
            out.push_back(who + ": flip script requires effort=1");
    }
    return out;
}

} // namespace tts
