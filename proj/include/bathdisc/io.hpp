#ifndef BATHDISC_IO_HPP
#define BATHDISC_IO_HPP

#include "bathdisc/bounds.hpp"
#include "bathdisc/csv.hpp"
#include "bathdisc/discretize.hpp"
#include "bathdisc/orthopoly.hpp"
#include "bathdisc/simsuite.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>
#include <vector>

namespace bathdisc {
namespace io {

// CSV round-trips are bit-exact: numbers are written in shortest
// round-trip decimal form and parsed back with from_chars.
CsvTable to_csv(const RecurrenceCoefficients& rc); // index,alpha,beta
RecurrenceCoefficients recurrence_from_csv(const CsvTable& t);
nlohmann::ordered_json to_json(const RecurrenceCoefficients& rc);
RecurrenceCoefficients recurrence_from_json(const nlohmann::json& j);

CsvTable to_csv(const GaussRule& rule); // index,knot,weight
GaussRule gauss_rule_from_csv(const CsvTable& t);
nlohmann::ordered_json to_json(const GaussRule& rule);
GaussRule gauss_rule_from_json(const nlohmann::json& j);

CsvTable to_csv(const DiscretizedBath& bath); // n,frequency,coupling
nlohmann::ordered_json to_json(const DiscretizedBath& bath);
DiscretizedBath bath_from_json(const nlohmann::json& j);

CsvTable to_csv(const ChainCoefficients& cc); // n,site_energy,hop
nlohmann::ordered_json to_json(const ChainCoefficients& cc);

CsvTable to_csv(const std::vector<BoundCurvePoint>& curve); // t,L,scheme,massless,bound

CsvTable to_csv(const ComparisonTable& table);

} // namespace io
} // namespace bathdisc

#endif
