#ifndef GROUPTEST_REPORT_HPP
#define GROUPTEST_REPORT_HPP

#include <json.hpp>
#include <string>

#include "grouptest/fourier.hpp"
#include "grouptest/irreps.hpp"
#include "grouptest/oracle.hpp"
#include "grouptest/testers.hpp"

namespace grouptest {

// Frozen report schema:
// {tool_version, tester, epsilon, seed, verdict, queries, rounds:[...],
//  witness?, certificate?}
nlohmann::json report_to_json(const TesterReport& report, const std::string& tester,
                              double epsilon, std::uint64_t seed);

nlohmann::json witness_to_json(const Witness& w);
nlohmann::json certificate_to_json(const oracle::FarnessCertificate& cert);
nlohmann::json irreps_to_json(const IrrepBasis& basis);
nlohmann::json fourier_to_json(const FourierCoefficients& coeffs, const IrrepBasis& basis);

nlohmann::json complex_to_json(Complex v);
nlohmann::json matrix_to_json(const Matrix& m);

}  // namespace grouptest

#endif
