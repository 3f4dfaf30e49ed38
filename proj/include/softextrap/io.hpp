#pragma once

#include <istream>
#include <ostream>
#include <string>

#include "softextrap/fitting.hpp"

namespace softextrap {

/// Reads a CSV with header naming columns `x` and `g` (any order, extra
/// columns ignored) and sorts rows into decreasing x.
SampleSet read_samples_csv(std::istream& in, double alpha);
SampleSet read_samples_csv_file(const std::string& path, double alpha);

/// Writes `x,g` rows in the sample set's order.
void write_samples_csv(std::ostream& out, const SampleSet& samples);

std::string plan_to_json(const DegreePlan& plan, int indent = 2);
DegreePlan plan_from_json(const std::string& text);

/// JSON model document: basis kind, scale, max degree, coefficients, plan
/// fields and, when given, the grid report.
std::string model_to_json(const FittedModel& model, const GridReport* report = nullptr, int indent = 2);
FittedModel model_from_json(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace softextrap
