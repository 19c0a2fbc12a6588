#include "report.hpp"

#include <sstream>

#include "rinv/matrix_io.hpp"

namespace rinv::cli {

namespace {

std::string joined(const IndexSet& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(s[i]);
  }
  return out;
}

bool bound_holds(const SelectorRow& row) {
  return row.selection && row.bound > 0.0 && row.selection->inv_norm <= row.bound;
}

}  // namespace

Json index_array(const IndexSet& s) {
  Json a = Json::array();
  for (int i : s) a.push_back(i);
  return a;
}

Json selection_json(const SubsetSelection& s) {
  Json j;
  j["method"] = std::string(to_string(s.method));
  j["sigma"] = index_array(s.sigma);
  j["k"] = s.k;
  j["smin"] = number(s.smin);
  j["inv_norm"] = number(s.inv_norm);
  return j;
}

Json bound_report_json(const BoundReport& r) {
  Json j;
  j["k"] = r.k;
  j["m"] = r.m;
  j["rank"] = r.rank;
  j["srank"] = number(r.srank);
  j["srank4"] = number(r.srank4);
  j["entropic_srank"] = number(r.entropic_srank);
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json b;
    b["name"] = e.name;
    b["applicable"] = e.applicable;
    if (e.applicable) {
      b["value"] = number(e.value);
    } else {
      b["reason"] = e.reason;
    }
    b["needs_constant"] = e.needs_constant;
    Json params = Json::object();
    for (const auto& [key, v] : e.params) params[key] = number(v);
    b["params"] = params;
    entries.push_back(b);
  }
  j["entries"] = entries;
  return j;
}

Json gia_trace_json(const GiaTrace& t) {
  Json j;
  j["r"] = t.r;
  j["M"] = number(t.M);
  j["C_impl"] = number(t.C_impl);
  j["C_instance"] = number(t.C_instance);
  j["certified_bound"] = number(t.certified_bound);
  j["sigma_untrimmed"] = index_array(t.sigma_untrimmed);
  Json levels = Json::array();
  for (const auto& l : t.levels) {
    Json e;
    e["u"] = l.u;
    e["t"] = l.t;
    e["sigma"] = index_array(l.sigma);
    e["tau"] = index_array(l.tau);
    e["beta"] = index_array(l.beta);
    e["beta_prev"] = index_array(l.beta_prev);
    e["theta"] = index_array(l.theta);
    e["certified_norm"] = number(l.certified_norm);
    e["level_bound"] = number(l.level_bound);
    levels.push_back(e);
  }
  j["levels"] = levels;
  return j;
}

Json oracle_json(const OracleResult& r) {
  Json j;
  j["objective"] = std::string(to_string(r.objective));
  j["best_sigma"] = index_array(r.best_sigma);
  j["best_value"] = number(r.best_value);
  j["evaluated"] = r.evaluated;
  j["certificate"] = selection_json(r.certificate);
  return j;
}

Json selector_json(const SelectorRow& row, const std::optional<OracleResult>& oracle) {
  Json j;
  j["name"] = row.name;
  if (row.error_code) {
    j["error"] = error_json(*row.error_code, row.error_message)["error"];
    return j;
  }
  const Json sel = selection_json(*row.selection);
  for (auto it = sel.begin(); it != sel.end(); ++it) j[it.key()] = it.value();
  j["bound"] = number(row.bound);
  j["bound_label"] = row.bound_label;
  j["bound_holds"] = bound_holds(row);
  if (oracle) j["oracle_smin"] = number(oracle->certificate.smin);
  if (!row.extra.empty()) j["extra"] = row.extra;
  return j;
}

std::string selectors_csv(const std::vector<SelectorRow>& rows, const std::optional<OracleResult>& oracle) {
  std::ostringstream out;
  out << "selector,method,k,sigma,smin,inv_norm,bound,bound_holds,oracle_smin,error\n";
  const std::string oracle_smin = oracle ? format_double(oracle->certificate.smin) : "";
  for (const auto& row : rows) {
    out << row.name << ',';
    if (row.selection) {
      const auto& s = *row.selection;
      out << to_string(s.method) << ',' << s.k << ',' << joined(s.sigma) << ',' << format_double(s.smin) << ','
          << format_double(s.inv_norm) << ',' << format_double(row.bound) << ','
          << (bound_holds(row) ? "true" : "false") << ',' << oracle_smin << ",\n";
    } else {
      out << ",,,,,,," << oracle_smin << ',' << row.error_code.value_or("") << '\n';
    }
  }
  return out.str();
}

Json error_json(const std::string& code, const std::string& message) {
  Json j;
  j["schema"] = kSchema;
  j["error"] = {{"code", code}, {"message", message}};
  return j;
}

}  // namespace rinv::cli
