#pragma once

// Running identity tasks as a batch and writing the results: one report
// file, one certificate file per certified task and a separate timing file.
// Report and certificate bytes depend only on the inputs and the budget.

#include "bamboo/deep.hpp"
#include "bamboo/serialize.hpp"

#include <filesystem>
#include <fstream>
#include <map>

namespace bamboo {

inline constexpr const char* kReportSchema = "bamboo-report/1";
inline constexpr const char* kCertificateSchema = "bamboo-certificate/1";

inline Json to_json(const Budget& b) {
  return Json{{"context_len", b.context_len}, {"max_r", b.max_r}, {"pulled_back", b.pulled_back}};
}

inline Budget budget_from_json(const Json& j) {
  Budget b;
  b.context_len = j.at("context_len").get<int>();
  b.max_r = j.at("max_r").get<int>();
  b.pulled_back = j.at("pulled_back").get<bool>();
  return b;
}

// ---------------------------------------------------------------------------
// tasks

struct IdentityTask {
  std::string id;
  int genus = 1;
  std::vector<std::pair<std::string, int>> params;  // g1 for split, h for sep_off, l/k for deep steps
};

inline const std::vector<std::string>& identity_ids() {
  static const std::vector<std::string> ids = {"symmetry",     "irr",      "sep_off",     "split",
                                               "pullback_psi", "psi_eval", "pushforward", "recursion"};
  return ids;
}

inline const std::vector<std::string>& deep_identity_ids() {
  static const std::vector<std::string> ids = {"deep_symmetry", "deep_irr", "deep_sep_off", "deep_split"};
  return ids;
}

inline bool is_identity_id(const std::string& id) {
  for (const auto* v : {&identity_ids(), &deep_identity_ids()})
    for (const auto& x : *v)
      if (x == id) return true;
  return false;
}

inline int param_of(const std::vector<std::pair<std::string, int>>& ps, const std::string& name) {
  for (const auto& [k, v] : ps)
    if (k == name) return v;
  throw std::invalid_argument("missing parameter " + name);
}

/// Tasks for genus g in a fixed order, optionally restricted to one identity.
/// The lemma-level steps are added when `deep` is set.
inline std::vector<IdentityTask> tasks_for_genus(int g, const std::string& only = "", bool deep = false) {
  std::vector<IdentityTask> out;
  auto want = [&](const std::string& id) { return only.empty() || only == id; };
  for (const auto& id : identity_ids()) {
    if (!want(id)) continue;
    if (id == "sep_off") {
      for (int h = 1; h < g; ++h) out.push_back({id, g, {{"h", h}}});
    } else if (id == "split") {
      for (int g1 = 1; g1 < g; ++g1) out.push_back({id, g, {{"g1", g1}}});
    } else {
      out.push_back({id, g, {}});
    }
  }
  if (!deep && (only.empty() || only.rfind("deep_", 0) != 0)) return out;
  if (want("deep_symmetry"))
    for (int l = 1; l <= g; ++l) out.push_back({"deep_symmetry", g, {{"l", l}}});
  if (want("deep_irr"))
    for (int k = 1; k <= g; ++k) out.push_back({"deep_irr", g, {{"k", k}}});
  if (want("deep_sep_off"))
    for (int h = 1; h < g; ++h)
      for (int k = 1; k <= g; ++k) out.push_back({"deep_sep_off", g, {{"h", h}, {"k", k}}});
  if (want("deep_split"))
    for (int g1 = 1; g1 < g; ++g1)
      for (int l = 1; l <= g - g1; ++l) out.push_back({"deep_split", g, {{"g1", g1}, {"l", l}}});
  return out;
}

inline IdentityReport run_task(const IdentityTask& t, const SuiteOptions& opt = {}) {
  const int g = t.genus;
  auto p = [&](const char* n) { return param_of(t.params, n); };
  if (t.id == "symmetry") return check_symmetry(g, opt);
  if (t.id == "irr") return check_irr(g, opt);
  if (t.id == "sep_off") return check_sep_off(g, p("h"), opt);
  if (t.id == "split") return check_split(g, p("g1"), opt);
  if (t.id == "pullback_psi") return check_pullback_psi(g, opt);
  if (t.id == "psi_eval") return check_psi_eval(g, opt);
  if (t.id == "pushforward") return check_pushforward(g, opt);
  if (t.id == "recursion") return check_recursion(g, opt);
  if (t.id == "deep_symmetry") return check_deep_symmetry(g, p("l"), opt);
  if (t.id == "deep_irr") return check_deep_omega(g, OmegaClass{OmegaKind::Irr, 0}, p("k"), opt);
  if (t.id == "deep_sep_off") return check_deep_omega(g, OmegaClass{OmegaKind::SepOff, p("h")}, p("k"), opt);
  if (t.id == "deep_split") return check_deep_split(g, p("g1"), p("l"), opt);
  throw std::invalid_argument("unknown identity: " + t.id);
}

/// The target a task certifies, rebuilt from the constructors.
inline std::optional<FormalSum> identity_target(const std::string& id, int g,
                                                const std::vector<std::pair<std::string, int>>& ps) {
  auto p = [&](const char* n) { return param_of(ps, n); };
  if (id == "symmetry") return symmetry_target(g);
  if (id == "irr") return omega_target(g, OmegaClass{OmegaKind::Irr, 0});
  if (id == "sep_off") return omega_target(g, OmegaClass{OmegaKind::SepOff, p("h")});
  if (id == "split") return split_target(g, p("g1"));
  if (id == "pullback_psi" || id == "psi_eval") return pullback_target(g);
  if (id == "recursion") return recursion_target(g);
  if (id == "deep_symmetry") return symmetry_partial_target(g, p("l"));
  if (id == "deep_irr") return omega_partial_target(g, OmegaClass{OmegaKind::Irr, 0}, p("k"));
  if (id == "deep_sep_off") return omega_partial_target(g, OmegaClass{OmegaKind::SepOff, p("h")}, p("k"));
  if (id == "deep_split") return split_partial_target(g, p("g1"), p("l"));
  return std::nullopt;
}

/// Runs the tasks with `jobs` workers; results come back in task order.
inline std::vector<IdentityReport> run_suite(const std::vector<IdentityTask>& tasks, const SuiteOptions& opt) {
  std::vector<IdentityReport> out(tasks.size());
  SuiteOptions inner = opt;
  // parallelism goes to the tasks unless there is only one
  if (tasks.size() > 1) inner.jobs = 1;
  detail::parallel_for(tasks.size(), tasks.size() > 1 ? opt.jobs : 1,
                       [&](std::size_t i) { out[i] = run_task(tasks[i], inner); });
  return out;
}

inline std::string certificate_file_name(const IdentityReport& r) { return r.key() + ".json"; }

inline Json certificate_file_json(const IdentityReport& r) {
  Json params = Json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  return Json{{"schema", kCertificateSchema},
              {"identity", r.id},
              {"genus", r.genus},
              {"params", params},
              {"target", to_json(*r.target)},
              {"certificate", to_json(*r.certificate)}};
}

inline Json report_entry_json(const IdentityReport& r) {
  Json params = Json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  Json checks = Json::array();
  for (const auto& c : r.exact_checks)
    checks.push_back(
        {{"name", c.name}, {"passed", c.passed}, {"lhs_support", c.lhs_support}, {"rhs_support", c.rhs_support}});
  Json j{{"identity", r.id},
         {"genus", r.genus},
         {"params", params},
         {"outcome", identity_outcome_name(r.outcome)},
         {"exact_checks", checks},
         {"certificate", r.certificate_path.empty() ? Json(nullptr) : Json(r.certificate_path)},
         {"note", r.note}};
  if (r.diagnostics) {
    const Diagnostics& d = *r.diagnostics;
    j["support"] = {{"target", d.target_support},
                    {"residual", d.residual_support},
                    {"instances", d.instances},
                    {"used_instances", d.used_instances},
                    {"rank", d.rank},
                    {"terms", d.terms}};
  } else {
    j["support"] = nullptr;
  }
  if (r.certificate) j["certificate_entries"] = r.certificate->entries.size();
  return j;
}

inline Json report_json(const std::vector<IdentityReport>& rs, const Budget& budget) {
  std::map<std::string, int> counts;
  for (const char* k : {"ExactZero", "Certified", "UnresolvedWithinBudget", "FailedExactCheck"}) counts[k] = 0;
  Json results = Json::array();
  for (const auto& r : rs) {
    results.push_back(report_entry_json(r));
    ++counts[identity_outcome_name(r.outcome)];
  }
  return Json{{"schema", kReportSchema}, {"budget", to_json(budget)}, {"results", results}, {"summary", counts}};
}

inline Json timings_json(const std::vector<IdentityReport>& rs) {
  Json t = Json::object();
  for (const auto& r : rs) t[r.key()] = r.seconds;
  return t;
}

/// 0 when everything is exact or certified, 2 when something is unresolved,
/// 1 on a failed exact check.
inline int suite_exit_code(const std::vector<IdentityReport>& rs) {
  int code = 0;
  for (const auto& r : rs) {
    if (r.outcome == IdentityOutcome::FailedExactCheck) return 1;
    if (r.outcome == IdentityOutcome::UnresolvedWithinBudget) code = 2;
  }
  return code;
}

namespace detail {

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << text;
  if (!f) throw std::runtime_error("write failed: " + p.string());
}

}  // namespace detail

/// Writes report.json, timings.json and certificates/<key>.json under dir.
/// Fills in certificate_path on the reports.
inline void write_suite(const std::filesystem::path& dir, std::vector<IdentityReport>& rs, const Budget& budget) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "certificates");
  for (auto& r : rs) {
    if (!r.certificate || !r.target) continue;
    r.certificate_path = "certificates/" + certificate_file_name(r);
    detail::write_text(dir / r.certificate_path, certificate_file_json(r).dump(2) + "\n");
  }
  detail::write_text(dir / "report.json", report_json(rs, budget).dump(2) + "\n");
  detail::write_text(dir / "timings.json", timings_json(rs).dump(2) + "\n");
}

struct CertificateFileCheck {
  bool ok = false;
  std::string message;
};

/// Standalone check of a certificate file: the stored target must be the
/// identity's target and the certificate must expand to it.
inline CertificateFileCheck verify_certificate_file(const Json& j) {
  try {
    if (j.at("schema").get<std::string>() != kCertificateSchema) return {false, "unknown schema"};
    const FormalSum target = sum_from_json(j.at("target"));
    const Certificate cert = certificate_from_json(j.at("certificate"));
    const std::string id = j.at("identity").get<std::string>();
    const int g = j.at("genus").get<int>();
    std::vector<std::pair<std::string, int>> params;
    for (const auto& [k, v] : j.at("params").items()) params.emplace_back(k, v.get<int>());
    if (g < 1 || g > 12) return {false, "genus out of range"};
    auto expected = identity_target(id, g, params);
    if (!expected) return {false, "unknown identity " + id};
    if (*expected != target) return {false, "stored target differs from the identity's target"};
    if (target_hash(target) != cert.target_hash) return {false, "target hash mismatch"};
    if (!verify_certificate(cert, target)) return {false, "certificate does not expand to the target"};
    return {true, "ok: " + std::to_string(cert.entries.size()) + " entries"};
  } catch (const std::exception& e) {
    return {false, std::string("malformed certificate file: ") + e.what()};
  }
}

}  // namespace bamboo
