#pragma once

#include <iosfwd>
#include <string>

#include "bdi/formula.hpp"

namespace bdi {

/// Canonical text; parsing it gives back a structurally equal formula.
/// ~<>~x is printed as [] x.
std::string render(const StateFormula& f);
std::string render(const PathFormula& p);
std::string render(const EventExpr& e);
std::string render(const AnyFormula& f);

std::ostream& operator<<(std::ostream& os, const StateFormula& f);
std::ostream& operator<<(std::ostream& os, const PathFormula& p);
std::ostream& operator<<(std::ostream& os, const EventExpr& e);

}  // namespace bdi
