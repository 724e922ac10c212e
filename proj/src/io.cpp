#include "bathdisc/io.hpp"
#include "bathdisc/errors.hpp"

#include <nlohmann/json.hpp>

namespace bathdisc {
namespace io {

namespace {

void expect_header(const CsvTable& t, const std::vector<std::string>& header) {
    if (t.header != header)
        throw ValidationError("invalid_field", "unexpected CSV header");
}

} // namespace

CsvTable to_csv(const RecurrenceCoefficients& rc) {
    CsvTable t;
    t.header = {"index", "alpha", "beta"};
    for (int k = 0; k < rc.size(); ++k)
        t.rows.push_back({std::to_string(k), format_double(rc.alpha[k]), format_double(rc.beta[k])});
    return t;
}

RecurrenceCoefficients recurrence_from_csv(const CsvTable& t) {
    expect_header(t, {"index", "alpha", "beta"});
    RecurrenceCoefficients rc;
    for (const auto& row : t.rows) {
        if (row.size() != 3) throw ValidationError("invalid_field", "bad recurrence CSV row");
        rc.alpha.push_back(parse_double(row[1]));
        rc.beta.push_back(parse_double(row[2]));
    }
    return rc;
}

nlohmann::ordered_json to_json(const RecurrenceCoefficients& rc) {
    nlohmann::ordered_json j;
    j["measure"] = rc.measure.label;
    j["q"] = rc.measure.q;
    j["support"] = {rc.measure.a, rc.measure.b};
    j["alpha"] = rc.alpha;
    j["beta"] = rc.beta;
    return j;
}

RecurrenceCoefficients recurrence_from_json(const nlohmann::json& j) {
    RecurrenceCoefficients rc;
    rc.alpha = j.at("alpha").get<std::vector<double>>();
    rc.beta = j.at("beta").get<std::vector<double>>();
    if (rc.alpha.size() != rc.beta.size())
        throw ValidationError("invalid_field", "alpha and beta must have equal length");
    rc.measure.label = j.value("measure", std::string());
    rc.measure.q = j.value("q", 0);
    if (j.contains("support")) {
        const auto s = j["support"].get<std::vector<double>>();
        if (s.size() == 2) {
            rc.measure.a = s[0];
            rc.measure.b = s[1];
        }
    }
    return rc;
}

CsvTable to_csv(const GaussRule& rule) {
    CsvTable t;
    t.header = {"index", "knot", "weight"};
    for (int n = 0; n < rule.L; ++n)
        t.rows.push_back({std::to_string(n + 1), format_double(rule.knots[n]),
                          format_double(rule.weights[n])});
    return t;
}

GaussRule gauss_rule_from_csv(const CsvTable& t) {
    expect_header(t, {"index", "knot", "weight"});
    GaussRule rule;
    for (const auto& row : t.rows) {
        if (row.size() != 3) throw ValidationError("invalid_field", "bad Gauss rule CSV row");
        rule.knots.push_back(parse_double(row[1]));
        rule.weights.push_back(parse_double(row[2]));
    }
    rule.L = static_cast<int>(rule.knots.size());
    return rule;
}

nlohmann::ordered_json to_json(const GaussRule& rule) {
    nlohmann::ordered_json j;
    j["L"] = rule.L;
    j["measure"] = rule.measure.label;
    j["q"] = rule.measure.q;
    j["support"] = {rule.measure.a, rule.measure.b};
    j["knots"] = rule.knots;
    j["weights"] = rule.weights;
    return j;
}

GaussRule gauss_rule_from_json(const nlohmann::json& j) {
    GaussRule rule;
    rule.knots = j.at("knots").get<std::vector<double>>();
    rule.weights = j.at("weights").get<std::vector<double>>();
    if (rule.knots.size() != rule.weights.size())
        throw ValidationError("invalid_field", "knots and weights must have equal length");
    rule.L = static_cast<int>(rule.knots.size());
    rule.measure.label = j.value("measure", std::string());
    rule.measure.q = j.value("q", 0);
    if (j.contains("support")) {
        const auto s = j["support"].get<std::vector<double>>();
        if (s.size() == 2) {
            rule.measure.a = s[0];
            rule.measure.b = s[1];
        }
    }
    return rule;
}

CsvTable to_csv(const DiscretizedBath& bath) {
    CsvTable t;
    t.header = {"n", "frequency", "coupling"};
    for (int n = 0; n < bath.L; ++n)
        t.rows.push_back({std::to_string(n + 1), format_double(bath.frequencies[n]),
                          format_double(bath.couplings[n])});
    return t;
}

nlohmann::ordered_json to_json(const DiscretizedBath& bath) {
    nlohmann::ordered_json j;
    j["scheme"] = to_string(bath.scheme);
    j["L"] = bath.L;
    j["frequencies"] = bath.frequencies;
    j["couplings"] = bath.couplings;
    j["spectral_density"] = bath.source.to_json();
    return j;
}

DiscretizedBath bath_from_json(const nlohmann::json& j) {
    DiscretizedBath bath;
    const std::string scheme = j.at("scheme").get<std::string>();
    if (scheme == "BC")
        bath.scheme = Scheme::BC;
    else if (scheme == "S2")
        bath.scheme = Scheme::S2;
    else
        throw ValidationError("invalid_field", "scheme must be BC or S2");
    bath.L = j.at("L").get<int>();
    bath.frequencies = j.at("frequencies").get<std::vector<double>>();
    bath.couplings = j.at("couplings").get<std::vector<double>>();
    bath.source = SpectralDensity::from_json(j.at("spectral_density"));
    if (static_cast<int>(bath.frequencies.size()) != bath.L ||
        static_cast<int>(bath.couplings.size()) != bath.L)
        throw ValidationError("invalid_field", "bath arrays must have length L");
    return bath;
}

CsvTable to_csv(const ChainCoefficients& cc) {
    CsvTable t;
    t.header = {"n", "site_energy", "hop"};
    for (int n = 0; n < cc.size(); ++n)
        t.rows.push_back({std::to_string(n), format_double(cc.site_energies[n]),
                          n + 1 < cc.size() ? format_double(cc.hops[n]) : std::string()});
    return t;
}

nlohmann::ordered_json to_json(const ChainCoefficients& cc) {
    nlohmann::ordered_json j;
    j["q"] = cc.q;
    j["system_coupling"] = cc.system_coupling;
    j["site_energies"] = cc.site_energies;
    j["hops"] = cc.hops;
    j["spectral_density"] = cc.source.to_json();
    return j;
}

CsvTable to_csv(const std::vector<BoundCurvePoint>& curve) {
    CsvTable t;
    t.header = {"t", "L", "scheme", "massless", "bound"};
    for (const auto& p : curve)
        t.rows.push_back({format_double(p.t), std::to_string(p.L), to_string(p.scheme),
                          p.massless ? "1" : "0", format_double(p.value)});
    return t;
}

CsvTable to_csv(const ComparisonTable& table) {
    CsvTable t;
    t.header = {"t",       "L",       "L_ref",             "empirical_error",
                "bound_L", "bound_Lref", "certified_ceiling", "cutoff_delta"};
    for (const auto& r : table.rows)
        t.rows.push_back({format_double(r.t), std::to_string(table.L), std::to_string(table.L_ref),
                          format_double(r.empirical), format_double(r.bound_L),
                          format_double(r.bound_Lref), format_double(r.ceiling),
                          format_double(r.cutoff_delta)});
    return t;
}

} // namespace io
} // namespace bathdisc
