#pragma once

// Text literals and result serialization.
//   ring      l | a/b          (b's prime factors must divide n)
//   element   (gamma; c)
//   morphism  [alpha; beta] | <<gamma; c>>
// Parsers throw ParseError with a 0-based offset into the literal.

#include <string>
#include <string_view>

#include <json.hpp>

#include "bsn/fixstab.hpp"
#include "bsn/group.hpp"
#include "bsn/morphisms.hpp"

namespace bsn {

ZnElem parse_zn(std::string_view text, const BaseRef& base);
BsElem parse_elem(std::string_view text, const BaseRef& base);
Morphism parse_morphism(std::string_view text, const BaseRef& base);

std::string format_fix(const FixOutcome& fix, bool verbose);
std::string format_fix(const FixResult& fix);
std::string format_stab(const StabResult& stab, bool verbose);
std::string format_estab(const EStabResult& estab);

nlohmann::json to_json(const ZnElem& a);
nlohmann::json to_json(const BsElem& g);
nlohmann::json to_json(const Morphism& f);
nlohmann::json to_json(const FixResult& fix);
nlohmann::json to_json(const FixOutcome& fix, bool verbose);
nlohmann::json to_json(const StabResult& stab, bool verbose);
nlohmann::json to_json(const EStabResult& estab);

}  // namespace bsn
