#pragma once

#include "bellforge/lift.hpp"
#include "bellforge/polytope.hpp"
#include "bellforge/quantum.hpp"

#include <optional>
#include <string>
#include <variant>

namespace bellforge {

// Inequality interchange document:
//   {"kind":"full"|"general", "settings":[m_1,...,m_n],
//    "terms":[{"settings":[i_1,...,i_n], "coeff":"p/q"}, ...],
//    "constant":"p/q" (general only), "bound":"p/q", "name": optional}
// Setting indices are 1-based; in "general" terms 0 marks an absent party.
// Serialization is deterministic: fixed field order, terms sorted by tuple,
// rationals reduced. parse(serialize(x)) == x exactly.

struct ParsedInequality {
    std::variant<FullCorrelationInequality, GeneralInequality> value;
    std::optional<std::string> name;

    bool is_full() const { return std::holds_alternative<FullCorrelationInequality>(value); }
    const FullCorrelationInequality& full() const;
    const GeneralInequality& general() const;
};

std::string serialize(const FullCorrelationInequality& ineq,
                      const std::optional<std::string>& name = std::nullopt,
                      bool canonical_marker = false);
std::string serialize(const GeneralInequality& ineq,
                      const std::optional<std::string>& name = std::nullopt);

// Throws InputError naming the offending field on malformed documents.
ParsedInequality parse_inequality(const std::string& text);

std::string serialize(const TightnessReport& report);
std::string serialize(const FacetList& list);
std::string serialize(const QuantumReport& report);
std::string serialize(const PartyDecomposition& decomposition);

// Rounds to 12 significant digits; payload reals go through this so output
// is diff-stable.
double round_real(double value);

} // namespace bellforge
