#pragma once

// CSV / JSON renderings of samples, reparametrization tables, structure
// reports and oracle reports. Floats are written in shortest round-trip form.

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "eqaff/curvature.hpp"
#include "eqaff/expr.hpp"
#include "eqaff/manifold.hpp"
#include "eqaff/oracle.hpp"

namespace eqaff {

inline constexpr const char* kSampleColumns =
    "t,x,y,nu,kappa_r,kappa_r_prime,kappa_r_double_prime,kappa_a_intrinsic,kappa_a_relation,"
    "relation_residual,ode_residual_norm,frenet_residual,classification";

namespace detail {

inline std::string cell(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

inline nlohmann::json jcell(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(); }

}  // namespace detail

inline void write_samples_csv(std::ostream& os, const std::vector<CurvatureSample>& samples) {
  using detail::cell;
  os << kSampleColumns << '\n';
  for (const auto& s : samples) {
    os << format_number(s.t) << ',' << format_number(s.x) << ',' << format_number(s.y) << ',' << cell(s.nu) << ','
       << cell(s.kappa_r) << ',' << cell(s.kappa_r_prime) << ',' << cell(s.kappa_r_double_prime) << ','
       << cell(s.kappa_a_intrinsic) << ',' << cell(s.kappa_a_relation) << ',' << cell(s.relation_residual) << ','
       << cell(s.ode_residual_norm) << ',' << cell(s.frenet_residual) << ',' << to_string(s.classification) << '\n';
  }
}

inline nlohmann::json samples_json(const std::vector<CurvatureSample>& samples) {
  using detail::jcell;
  auto rows = nlohmann::json::array();
  for (const auto& s : samples) {
    rows.push_back({{"t", s.t},
                    {"x", s.x},
                    {"y", s.y},
                    {"nu", jcell(s.nu)},
                    {"kappa_r", jcell(s.kappa_r)},
                    {"kappa_r_prime", jcell(s.kappa_r_prime)},
                    {"kappa_r_double_prime", jcell(s.kappa_r_double_prime)},
                    {"kappa_a_intrinsic", jcell(s.kappa_a_intrinsic)},
                    {"kappa_a_relation", jcell(s.kappa_a_relation)},
                    {"relation_residual", jcell(s.relation_residual)},
                    {"ode_residual_norm", jcell(s.ode_residual_norm)},
                    {"frenet_residual", jcell(s.frenet_residual)},
                    {"classification", std::string(to_string(s.classification))}});
  }
  return rows;
}

inline void write_reparam_csv(std::ostream& os, const ReparamTable& tab) {
  os << "t,s,sigma,s_error,sigma_error\n";
  for (std::size_t i = 0; i < tab.t.size(); ++i) {
    os << format_number(tab.t[i]) << ',' << format_number(tab.s[i]) << ',' << format_number(tab.sigma[i]) << ','
       << format_number(tab.s_error[i]) << ',' << format_number(tab.sigma_error[i]) << '\n';
  }
}

inline nlohmann::json reparam_json(const ReparamTable& tab) {
  auto rows = nlohmann::json::array();
  for (std::size_t i = 0; i < tab.t.size(); ++i) {
    rows.push_back({{"t", tab.t[i]},
                    {"s", tab.s[i]},
                    {"sigma", tab.sigma[i]},
                    {"s_error", tab.s_error[i]},
                    {"sigma_error", tab.sigma_error[i]}});
  }
  return {{"rows", rows}, {"s_monotone", tab.s_monotone}, {"sigma_monotone", tab.sigma_monotone}};
}

inline void write_structure_csv(std::ostream& os, const std::vector<StructureReport>& reps) {
  os << "x,y,omega,j_squared_residual,omega_j_residual,nabla_j_residual,nabla_omega_residual,scalar_curvature\n";
  for (const auto& r : reps) {
    os << format_number(r.x) << ',' << format_number(r.y) << ',' << r.omega << ',' << format_number(r.j_squared)
       << ',' << format_number(r.omega_j) << ',' << format_number(r.nabla_j) << ',' << format_number(r.nabla_omega)
       << ',' << format_number(r.scalar_curvature) << '\n';
  }
}

inline nlohmann::json structure_json(const std::vector<StructureReport>& reps) {
  auto rows = nlohmann::json::array();
  for (const auto& r : reps) {
    rows.push_back({{"x", r.x},
                    {"y", r.y},
                    {"omega", r.omega},
                    {"j_squared_residual", r.j_squared},
                    {"omega_j_residual", r.omega_j},
                    {"nabla_j_residual", r.nabla_j},
                    {"nabla_omega_residual", r.nabla_omega},
                    {"scalar_curvature", r.scalar_curvature}});
  }
  return rows;
}

inline nlohmann::json oracle_json(const oracle::OracleReport& rep) {
  auto rows = nlohmann::json::array();
  for (const auto& e : rep.entries) {
    rows.push_back({{"t", e.t},
                    {"quantity", e.quantity},
                    {"jet", e.jet},
                    {"fd", e.fd},
                    {"abs_error", e.abs_error},
                    {"rel_error", e.rel_error},
                    {"step", e.step},
                    {"flagged", e.flagged},
                    {"skipped", e.skipped},
                    {"note", e.note}});
  }
  return {{"tolerance", rep.tolerance}, {"flagged", rep.flagged_count()}, {"skipped", rep.skipped_count()}, {"entries", rows}};
}

struct VerifyTolerances {
  double relation = 1e-7;
  double ode = 1e-7;
  double frenet = 1e-8;
  double oracle = 1e-4;
};

struct VerifySummary {
  std::size_t samples = 0;
  std::size_t nondegenerate = 0;
  double max_relation_residual = 0.0;  // |kappa_a_intrinsic - kappa_a_relation| / max(1, |kappa_a|)
  double max_ode_residual = 0.0;       // scaled, see CurvatureSample::ode_residual_norm
  double max_frenet_residual = 0.0;
  std::size_t relation_missing = 0;    // nondegenerate samples where the relation was undefined
  std::size_t oracle_entries = 0;
  std::size_t oracle_flagged = 0;
  std::size_t oracle_skipped = 0;
  double oracle_max_rel_error = 0.0;
  VerifyTolerances tol;

  bool relation_ok() const { return max_relation_residual < tol.relation && relation_missing == 0; }
  bool ode_ok() const { return max_ode_residual < tol.ode; }
  bool frenet_ok() const { return max_frenet_residual < tol.frenet; }
  bool oracle_ok() const { return oracle_flagged == 0; }
  bool passed() const { return relation_ok() && ode_ok() && frenet_ok() && oracle_ok(); }
};

inline VerifySummary summarize(const std::vector<CurvatureSample>& samples, const oracle::OracleReport& rep,
                               const VerifyTolerances& tol) {
  VerifySummary v;
  v.tol = tol;
  v.samples = samples.size();
  for (const auto& s : samples) {
    if (s.frenet_residual) v.max_frenet_residual = std::max(v.max_frenet_residual, *s.frenet_residual);
    if (s.classification != Classification::nondegenerate) continue;
    ++v.nondegenerate;
    if (s.relation_residual && s.kappa_a_intrinsic) {
      v.max_relation_residual = std::max(v.max_relation_residual,
                                         *s.relation_residual / std::max(1.0, std::fabs(*s.kappa_a_intrinsic)));
    } else {
      ++v.relation_missing;
    }
    if (s.ode_residual_norm) v.max_ode_residual = std::max(v.max_ode_residual, *s.ode_residual_norm);
  }
  v.oracle_entries = rep.entries.size();
  v.oracle_flagged = rep.flagged_count();
  v.oracle_skipped = rep.skipped_count();
  v.oracle_max_rel_error = rep.max_rel_error();
  return v;
}

inline void write_verify_text(std::ostream& os, const VerifySummary& v) {
  const auto line = [&](const char* what, double value, double tol, bool ok) {
    os << what << ' ' << format_number(value) << " tol " << format_number(tol) << ' ' << (ok ? "ok" : "FAIL") << '\n';
  };
  os << "samples " << v.samples << " nondegenerate " << v.nondegenerate << '\n';
  line("max_relation_residual", v.max_relation_residual, v.tol.relation, v.relation_ok());
  if (v.relation_missing) os << "relation_undefined_samples " << v.relation_missing << '\n';
  line("max_ode_residual", v.max_ode_residual, v.tol.ode, v.ode_ok());
  line("max_frenet_residual", v.max_frenet_residual, v.tol.frenet, v.frenet_ok());
  os << "oracle entries " << v.oracle_entries << " flagged " << v.oracle_flagged << " skipped " << v.oracle_skipped
     << " max_rel_error "
     << format_number(v.oracle_max_rel_error) << " tol " << format_number(v.tol.oracle) << ' '
     << (v.oracle_ok() ? "ok" : "FAIL") << '\n';
  os << (v.passed() ? "PASS" : "FAIL") << '\n';
}

inline nlohmann::json verify_json(const VerifySummary& v) {
  return {{"samples", v.samples},
          {"nondegenerate", v.nondegenerate},
          {"max_relation_residual", v.max_relation_residual},
          {"relation_undefined_samples", v.relation_missing},
          {"max_ode_residual", v.max_ode_residual},
          {"max_frenet_residual", v.max_frenet_residual},
          {"oracle_entries", v.oracle_entries},
          {"oracle_flagged", v.oracle_flagged},
          {"oracle_skipped", v.oracle_skipped},
          {"oracle_max_rel_error", v.oracle_max_rel_error},
          {"tolerances",
           {{"relation", v.tol.relation}, {"ode", v.tol.ode}, {"frenet", v.tol.frenet}, {"oracle", v.tol.oracle}}},
          {"passed", v.passed()}};
}

}  // namespace eqaff
