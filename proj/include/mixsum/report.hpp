#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mixsum/counting.hpp"
#include "mixsum/diophantine.hpp"
#include "mixsum/dual.hpp"
#include "mixsum/shortsum.hpp"
#include "mixsum/sums.hpp"

namespace mixsum {

inline constexpr int schema_version = 1;

using json = nlohmann::ordered_json;

// Shortest round-trip decimal form.
std::string format_double(double v);

// RFC 4180 table: fields are quoted when they contain a comma, quote or
// line break, and rows end with CRLF.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void row(std::vector<std::string> fields);
  std::string str() const;
  std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string csv_escape(std::string_view field);

json to_json(cplx z);
json to_json(const MomentReport& m);
json to_json(const CountReport& c);
json to_json(const PoissonResidual& p);
json to_json(const PrincipalTail& t);
json to_json(const M4Assembly& a);
json to_json(const CaseDecomposition& d);
json to_json(const ConditionReport& c);
json to_json(const CurlyLSet& l);
json to_json(const ContinuedFraction& cf);
json to_json(const DistributionProbe& p);

// {r, x, theta, weight, j, re, im}
CsvTable family_csv(const FamilySums& fs);
// {kind, params, count, bound, ratio}
CsvTable count_csv(const std::vector<CountReport>& reports);

// Wraps a payload with schema_version and a kind tag.
json envelope(std::string_view kind, json payload);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace mixsum
