#pragma once

#include <string>
#include <vector>

#include "pinatubo/analysis.hpp"
#include "pinatubo/logic_engine.hpp"

namespace pinatubo {

/// Shortest decimal-with-exponent form that parses back to the same double,
/// e.g. "4e-04", "2.2360679774997898e+05".
std::string format_double(double v);

/// Header: combo,trials,i_min_a,i_mean_a,i_max_a,log10_std,out0,out1,errors
std::string truthtable_csv(const std::vector<ClassStats>& table);

/// Header: class,bin_low_log10a,bin_high_log10a,count
std::string regions_csv(const RegionHistogram& hist);

/// Header: op,n,sigma,margin_ratio,error_rate
std::string margins_csv(const std::vector<MarginRow>& rows);

/// Header: step,command,result_bits (result_bits empty for PROG)
std::string trace_csv(const std::vector<TraceEntry>& trace);

/// Writes via a temp file in the same directory followed by a rename, so a
/// failed run never leaves a truncated output. Throws IoError.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace pinatubo
