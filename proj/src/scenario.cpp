#include "sofa/scenario.hpp"

namespace sofa {

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::GerverSym: return "gerver-sym";
        case Scenario::ConstrainedSym: return "constrained-sym";
        case Scenario::AsymA: return "asym-a";
        case Scenario::AsymB: return "asym-b";
        case Scenario::AsymC: return "asym-c";
        case Scenario::Car: return "car";
    }
    return "?";
}

std::optional<Scenario> scenario_from_string(const std::string& name) {
    if (name == "gerver-sym") return Scenario::GerverSym;
    if (name == "constrained-sym") return Scenario::ConstrainedSym;
    if (name == "asym-a") return Scenario::AsymA;
    if (name == "asym-b") return Scenario::AsymB;
    if (name == "asym-c") return Scenario::AsymC;
    if (name == "car") return Scenario::Car;
    return std::nullopt;
}

} // namespace sofa
