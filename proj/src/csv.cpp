#include "pinatubo/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace pinatubo {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific);
  return std::string(buf, res.ptr);
}

std::string truthtable_csv(const std::vector<ClassStats>& table) {
  std::ostringstream out;
  out << "combo,trials,i_min_a,i_mean_a,i_max_a,log10_std,out0,out1,errors\n";
  for (const ClassStats& cls : table) {
    out << bits_to_string(cls.combination) << ',' << cls.trials << ','
        << format_double(cls.current_min_a) << ','
        << format_double(cls.current_mean_a) << ','
        << format_double(cls.current_max_a) << ','
        << format_double(cls.log10_std) << ',' << cls.out0 << ',' << cls.out1
        << ',' << cls.errors << '\n';
  }
  return out.str();
}

std::string regions_csv(const RegionHistogram& hist) {
  std::ostringstream out;
  out << "class,bin_low_log10a,bin_high_log10a,count\n";
  for (const RegionHistogram::Class& cls : hist.classes) {
    for (const auto& [bin, count] : cls.bins) {
      out << bits_to_string(cls.combination) << ','
          << format_double(hist.bin_low_log10a(bin)) << ','
          << format_double(hist.bin_high_log10a(bin)) << ',' << count << '\n';
    }
  }
  return out.str();
}

std::string margins_csv(const std::vector<MarginRow>& rows) {
  std::ostringstream out;
  out << "op,n,sigma,margin_ratio,error_rate\n";
  for (const MarginRow& row : rows) {
    out << row.op.name() << ',' << row.n << ','
        << format_double(row.sigma_decades) << ','
        << format_double(row.margin_ratio) << ','
        << format_double(row.error_rate) << '\n';
  }
  return out.str();
}

std::string trace_csv(const std::vector<TraceEntry>& trace) {
  std::ostringstream out;
  out << "step,command,result_bits\n";
  for (const TraceEntry& entry : trace) {
    out << entry.step << ',' << entry.command << ',';
    if (entry.result) out << bits_to_string(*entry.result);
    out << '\n';
  }
  return out.str();
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::filesystem::path target(path);
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out << contents;
    out.flush();
    if (!out) throw IoError("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw IoError("cannot move output into place at '" + path +
                  "': " + ec.message());
  }
}

}  // namespace pinatubo
