#include "mixsum/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace mixsum {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::row(std::vector<std::string> fields) {
  if (fields.size() != header_.size()) throw std::logic_error("csv row width does not match header");
  rows_.push_back(std::move(fields));
}

std::string CsvTable::str() const {
  std::string out;
  auto emit = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(r[i]);
    }
    out += "\r\n";
  };
  emit(header_);
  for (const auto& r : rows_) emit(r);
  return out;
}

json to_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json to_json(const MomentReport& m) {
  return json{{"first", m.first},
              {"second", m.second},
              {"fourth", m.fourth},
              {"first_over_sqrt_x", m.first_over_sqrt_x},
              {"second_over_x", m.second_over_x},
              {"fourth_over_x2", m.fourth_over_x2},
              {"first_over_sqrt_second", m.first_over_sqrt_second},
              {"second_reference", m.second_reference},
              {"second_relative_error", m.second_relative_error},
              {"cauchy_schwarz", m.cauchy_schwarz},
              {"holder", m.holder}};
}

json to_json(const CountReport& c) {
  json j{{"kind", c.kind}};
  json p = json::object();
  for (const auto& [k, v] : c.params) p[k] = v;
  j["params"] = p;
  j["count"] = c.count;
  j["bound"] = c.bound;
  j["ratio"] = c.ratio;
  if (!c.flags.empty()) j["flags"] = c.flags;
  return j;
}

json to_json(const PoissonResidual& p) {
  return json{{"label", p.label}, {"lhs", to_json(p.lhs)}, {"rhs", to_json(p.rhs)}, {"residual", p.residual},
              {"m_max", p.m_max}};
}

json to_json(const PrincipalTail& t) {
  return json{{"value", to_json(t.value)}, {"abs", t.abs_value},          {"envelope", t.envelope},
              {"ratio", t.ratio},          {"dominant_share", t.dominant_share}, {"terms", t.terms}};
}

json to_json(const M4Assembly& a) {
  json levels = json::array();
  for (const auto& l : a.levels)
    levels.push_back(json{{"j", l.j},
                          {"T", l.T},
                          {"W", l.W},
                          {"size", l.size},
                          {"n4", l.n4},
                          {"n4_exact", l.n4_exact},
                          {"n4_over_surrogate", l.n4_over_surrogate},
                          {"f_max", l.f_max},
                          {"bound_term", l.bound_term},
                          {"shape_term", l.shape_term}});
  return json{{"delta", a.delta},
              {"A", a.A},
              {"levels", levels},
              {"tail_fourth", a.tail_fourth},
              {"bound_total", a.bound_total},
              {"bound_rigorous", a.bound_rigorous},
              {"routed_fourth", a.routed_fourth},
              {"measured_fourth", a.measured_fourth},
              {"shape_total", a.shape_total},
              {"final_envelope", a.final_envelope},
              {"measured_over_shape", a.measured_over_shape},
              {"measured_over_final", a.measured_over_final}};
}

json to_json(const CaseDecomposition& d) {
  return json{{"x", d.x},
              {"root", d.root},
              {"S1", to_json(d.S1)},
              {"S2", to_json(d.S2)},
              {"S3", to_json(d.S3)},
              {"combined", to_json(d.combined)},
              {"offdiag", to_json(d.offdiag)},
              {"relative_error", d.relative_error},
              {"S1_in_L", to_json(d.S1_in_L)},
              {"S1_out_L", to_json(d.S1_out_L)},
              {"S2_in_L", to_json(d.S2_in_L)},
              {"S2_out_L", to_json(d.S2_out_L)},
              {"g_eq_h", d.g_eq_h},
              {"g_eq_h_over_x32", d.g_eq_h_over_x32},
              {"ratio_to_x2", d.ratio_to_x2}};
}

json to_json(const ConditionReport& c) {
  return json{{"verdict", to_string(c.verdict)}, {"constant", c.constant},       {"exponent", c.exponent},
              {"range", c.range},                {"first_failure", c.first_failure}, {"worst_q", c.worst_q},
              {"worst_ratio", c.worst_ratio},    {"indeterminate", c.indeterminate}};
}

json to_json(const CurlyLSet& l) {
  json j{{"x", l.x}, {"eps", l.eps}, {"k_max", l.k_max}, {"l_max", l.l_max}, {"members", l.members},
         {"witnesses", l.witnesses}, {"indeterminate", l.indeterminate}};
  j["min_gap"] = l.min_gap ? json(*l.min_gap) : json(nullptr);
  return j;
}

json to_json(const ContinuedFraction& cf) {
  return json{{"quotients", cf.quotients}, {"p", cf.p},           {"q", cf.q},
              {"terminated", cf.terminated}, {"exhausted", cf.exhausted}, {"overflow", cf.overflow}};
}

json to_json(const DistributionProbe& p) {
  return json{{"mean_abs", p.mean_abs},
              {"mean_sq", p.mean_sq},
              {"mean_fourth", p.mean_fourth},
              {"mean", to_json(p.mean)},
              {"mean_square", to_json(p.mean_square)},
              {"ks_exponential", p.ks_exponential},
              {"reference_abs", DistributionProbe::reference_abs},
              {"reference_fourth", DistributionProbe::reference_fourth}};
}

CsvTable family_csv(const FamilySums& fs) {
  CsvTable t({"r", "x", "theta", "weight", "j", "re", "im"});
  for (std::size_t j = 0; j < fs.values.size(); ++j)
    t.row({std::to_string(fs.r), format_double(fs.x), fs.theta, fs.weight, std::to_string(j),
           format_double(fs.values[j].real()), format_double(fs.values[j].imag())});
  return t;
}

CsvTable count_csv(const std::vector<CountReport>& reports) {
  CsvTable t({"kind", "params", "count", "bound", "ratio"});
  for (const auto& c : reports)
    t.row({c.kind, c.params_string(), std::to_string(c.count), format_double(c.bound), format_double(c.ratio)});
  return t;
}

json envelope(std::string_view kind, json payload) {
  json j{{"schema_version", schema_version}, {"kind", std::string(kind)}};
  j["data"] = std::move(payload);
  return j;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace mixsum
