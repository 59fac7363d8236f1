#pragma once

#include "floatlab/convergence.hpp"

#include <string>
#include <vector>

namespace floatlab {

// Per-point uncertainties to put in the ratio_err column; empty means zero
// (deterministic sweeps have no sampling error).
std::string report_csv(const ConvergenceReport& rep, const std::vector<double>& ratio_err = {});

// Summary document: target, extrapolated limit, fit parameters, relative
// error, pass/fail, and the per-point sweep data.
std::string report_json(const ConvergenceReport& rep);

// Ratio vs delta on a log-x axis, with the target drawn as a horizontal line.
std::string report_svg(const ConvergenceReport& rep);

// Writes <dir>/<stem>.{csv,json,svg} for each requested format.
// Formats outside {csv, json, svg} and unwritable paths are errors.
void emit_report(const ConvergenceReport& rep, const std::string& dir, const std::string& stem,
                 const std::vector<std::string>& formats,
                 const std::vector<double>& ratio_err = {});

}  // namespace floatlab
