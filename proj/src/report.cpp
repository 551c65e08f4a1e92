#include "grouptest/report.hpp"

#include <cmath>

namespace grouptest {

using nlohmann::json;

json complex_to_json(Complex v) { return json::array({v.real(), v.imag()}); }

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json witness_to_json(const Witness& w) {
  return json{{"kind", w.kind == Witness::Kind::conjugation ? "conjugation" : "product"},
              {"x", w.x},
              {"y", w.y},
              {"lhs", complex_to_json(w.lhs)},
              {"rhs", complex_to_json(w.rhs)}};
}

json report_to_json(const TesterReport& report, const std::string& tester, double epsilon,
                    std::uint64_t seed) {
  json rounds = json::array();
  for (const RoundRecord& r : report.rounds) {
    json rec{{"stage", r.stage}, {"index", r.index}, {"rejected", r.rejected}};
    if (r.x >= 0) rec["x"] = r.x;
    if (r.y >= 0) rec["y"] = r.y;
    if (r.x >= 0) {
      rec["lhs"] = complex_to_json(r.lhs);
      rec["rhs"] = complex_to_json(r.rhs);
    }
    if (!std::isnan(r.statistic)) rec["statistic"] = r.statistic;
    if (!std::isnan(r.threshold)) rec["threshold"] = r.threshold;
    rounds.push_back(std::move(rec));
  }
  json out{{"tool_version", kToolVersion},
           {"tester", tester},
           {"epsilon", epsilon},
           {"seed", seed},
           {"verdict", report.verdict == Verdict::accept ? "accept" : "reject"},
           {"queries", report.queries},
           {"rounds", std::move(rounds)}};
  if (report.witness) out["witness"] = witness_to_json(*report.witness);
  return out;
}

json certificate_to_json(const oracle::FarnessCertificate& cert) {
  const char* method = cert.method == oracle::FarnessCertificate::Method::exhaustive
                           ? "exhaustive"
                           : cert.method == oracle::FarnessCertificate::Method::closed_form
                                 ? "closed-form"
                                 : "heuristic";
  json out{{"property", cert.property}, {"distance", cert.distance}, {"method", method}};
  if (cert.lower_bound) out["lower_bound"] = *cert.lower_bound;
  json optimizer = json::object();
  if (!cert.argmin_label.empty()) optimizer["label"] = cert.argmin_label;
  if (cert.scalar) optimizer["scalar"] = complex_to_json(*cert.scalar);
  if (cert.unitary) optimizer["unitary"] = matrix_to_json(*cert.unitary);
  if (!optimizer.empty()) out["optimizer"] = std::move(optimizer);
  if (!cert.note.empty()) out["note"] = cert.note;
  return out;
}

json irreps_to_json(const IrrepBasis& basis) {
  json irreps = json::array();
  for (const UnitaryIrrep& phi : basis.irreps) {
    json mats = json::array();
    for (const Matrix& m : phi.mats) mats.push_back(matrix_to_json(m));
    json character_values = json::array();
    for (const auto& cls : basis.group->classes())
      character_values.push_back(complex_to_json(phi(cls.front()).trace()));
    irreps.push_back(json{{"label", phi.label},
                          {"dim", phi.dim},
                          {"character_on_classes", std::move(character_values)},
                          {"mats", std::move(mats)}});
  }
  json classes = json::array();
  for (const auto& cls : basis.group->classes()) classes.push_back(cls);
  return json{{"tool_version", kToolVersion},
              {"group", basis.group->name()},
              {"order", basis.group->order()},
              {"classes", std::move(classes)},
              {"irreps", std::move(irreps)}};
}

json fourier_to_json(const FourierCoefficients& coeffs, const IrrepBasis& basis) {
  json out = json::object();
  for (const UnitaryIrrep& phi : basis.irreps) out[phi.label] = matrix_to_json(coeffs.at(phi.label));
  return out;
}

}  // namespace grouptest
