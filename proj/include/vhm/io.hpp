#pragma once

// Scenario files and machine-readable reports (JSON). Complex numbers are
// written as [re, im]; doubles are written with round-trip precision.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "vhm/algebra.hpp"
#include "vhm/corpus.hpp"

namespace vhm {

using Json = nlohmann::ordered_json;

/// A malformed scenario document; `field` is a path such as "generators[1][0].exponents".
class SchemaError : public std::invalid_argument {
public:
    SchemaError(std::string field, const std::string& message)
        : std::invalid_argument(field + ": " + message), field_(std::move(field))
    {
    }
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

inline constexpr int kScenarioVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

struct LoadedScenario {
    Scenario scenario;
    Tolerances tol;
    std::optional<std::uint64_t> seed;
};

/// Validates and builds a scenario; tolerances not given fall back to `defaults`.
LoadedScenario parse_scenario(const Json& doc, const Tolerances& defaults = {});
LoadedScenario parse_scenario_text(const std::string& text, const Tolerances& defaults = {});

/// Explicit-generator form of a scenario (builtins are expanded).
Json serialize_scenario(const Scenario& s, const std::optional<Tolerances>& tol = std::nullopt,
                        std::optional<std::uint64_t> seed = std::nullopt);

Json complex_json(Complex c);
/// Sparse term list: [{"exponents": [...], "coefficient": [[re, im], ...]}, ...].
Json element_json(const Element& f);
Element element_from_json(const Json& terms, const SpacePtr& space, const std::string& where);
Json poly_json(const Poly& p);

Json tolerances_json(const Tolerances& t);
Json decomposition_json(const GradedDecomposition& D);
Json report_json(const PropertyReport& r);
Json theorem_json(const TheoremVerdict& v);
Json synthesis_json(const SynthesisTrace& t);
Json axioms_json(const AxiomReport& r);
Json usc_json(const UscReport& r);

Verdict parse_verdict(const std::string& s);

}  // namespace vhm
