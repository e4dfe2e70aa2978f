#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "ids/bounds.hpp"
#include "ids/empirical.hpp"
#include "ids/random_field.hpp"
#include "ids/step_function.hpp"

namespace ids::cli {

using Json = nlohmann::ordered_json;

// Shortest round-trip decimal; "NaN", "inf", "-inf" for non-finite values.
std::string num(double x);

Json to_json(const StepFunction& f);
StepFunction step_function_from_json(const Json& j);
// x,value at every breakpoint
void write_csv(std::ostream& os, const StepFunction& f);

Json to_json(const BoundReport& b);
void print_table(std::ostream& os, const BoundReport& b);

Json to_json(const Marginal& m);
Json to_json(const FieldSpec& spec);

void write_csv(std::ostream& os, const ConcentrationTable& table);
Json to_json(const ConcentrationTable& table);

Json to_json(const BracketingCover& cover, const BracketStats& stats);

}  // namespace ids::cli
