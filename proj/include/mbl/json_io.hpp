// JSON and CSV forms of instances, operators, series and reports.

#ifndef MBL_JSON_IO_HPP
#define MBL_JSON_IO_HPP

#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <mbl/abel.hpp>
#include <mbl/corpus.hpp>
#include <mbl/parse.hpp>

namespace mbl {

using Json = nlohmann::json;

inline Json instance_to_json(const MomentInstance& inst)
{
    return Json{{"id", inst.id}, {"P", to_expression(inst.P)}, {"Q", to_expression(inst.Q)},
                {"a", to_string(inst.a)}, {"b", to_string(inst.b)}};
}

inline Rational rational_from_json(const Json& j)
{
    if (j.is_number_integer()) {
        return Rational(j.get<long>());
    }
    return parse_rational(j.get<std::string>());
}

inline MomentInstance instance_from_json(const Json& j)
{
    return MomentInstance(parse_polynomial(j.at("P").get<std::string>()), parse_polynomial(j.at("Q").get<std::string>()),
                          rational_from_json(j.at("a")), rational_from_json(j.at("b")), j.value("id", std::string{}));
}

/// A JSON array of instances, a single instance object, or one object per line.
inline std::vector<MomentInstance> read_instances(std::istream& in)
{
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    std::vector<MomentInstance> out;
    const Json whole = Json::parse(text, nullptr, false);
    if (!whole.is_discarded()) {
        if (whole.is_array()) {
            for (const auto& j : whole) {
                out.push_back(instance_from_json(j));
            }
        } else {
            out.push_back(instance_from_json(whole));
        }
        return out;
    }
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.find_first_not_of(" \t\r") != std::string::npos) {
            out.push_back(instance_from_json(Json::parse(line)));
        }
    }
    return out;
}

inline Json operator_to_json(const LinearOperator& L)
{
    Json c = Json::array();
    for (const auto& ck : L.coefficients()) {
        c.push_back(to_expression(ck));
    }
    return Json{{"order", L.order()}, {"coefficients", c}, {"max_coefficient_degree", L.max_coefficient_degree()}};
}

/// [{"power": -k, "coeff": "num/den"}, ...] over the known, nonzero coefficients.
inline Json series_to_json(const ExactTail& s)
{
    Json out = Json::array();
    for (int k = s.low(); k <= s.valid_to(); ++k) {
        if (sgn(s[k]) != 0) {
            out.push_back(Json{{"power", -k}, {"coeff", to_string(s[k])}});
        }
    }
    return out;
}

inline Json rational_function_to_json(const RationalFunction& f)
{
    return Json{{"numerator", to_expression(f.numerator(), 't')}, {"denominator", to_expression(f.denominator(), 't')}};
}

namespace detail {

template <class T>
Json opt(const std::optional<T>& v)
{
    return v ? Json(*v) : Json(nullptr);
}

} // namespace detail

inline Json kisunko_to_json(const KisunkoReport& k)
{
    Json j{{"r", k.r},
           {"truncation", k.truncation},
           {"h_zero", k.h_zero},
           {"ok", k.ok()},
           {"ord_R", detail::opt(k.ord_R)},
           {"has_polynomial_part", k.has_polynomial_part},
           {"inconsistent_at", detail::opt(k.inconsistent_at)}};
    if (k.fit) {
        j["fit"] = Json{{"B", to_expression(k.fit->numerator, 't')},
                        {"denominator", to_expression(k.fit->denominator, 't')},
                        {"R", rational_function_to_json(k.fit->reduced)},
                        {"margin", k.fit->margin},
                        {"collapsed", k.fit->collapsed},
                        {"pole_order_plus", k.fit->pole_order_plus},
                        {"pole_order_minus", k.fit->pole_order_minus},
                        {"pole_orders_ok", k.fit->pole_orders_ok},
                        {"strict_pole_orders_ok", k.fit->strict_pole_orders_ok},
                        {"denominator_divides", k.fit->denominator_divides}};
    }
    return j;
}

inline Json bound_report_to_json(const BoundReport& r)
{
    Json j{{"id", r.id},
           {"dP", r.dP},
           {"dQ", r.dQ},
           {"r", r.r},
           {"center", r.center},
           {"N", detail::opt(r.N)},
           {"N_bound", r.N_bound},
           {"Ntilde", detail::opt(r.Ntilde)},
           {"Ntilde_bound", r.Ntilde_bound},
           {"gap_triggered", r.gap_triggered},
           {"deg_cr", r.deg_cr},
           {"deg_cr_bound", to_string(r.deg_cr_bound)},
           {"ord_u", r.ord_u},
           {"ord_u_bound", to_string(r.ord_u_bound)},
           {"ord_R", detail::opt(r.ord_R)},
           {"has_polynomial_part", r.has_polynomial_part},
           {"ord_H", detail::opt(r.ord_H)},
           {"ord_H_bound", to_string(r.ord_H_bound)},
           {"fit_margin", r.fit_margin},
           {"fit_strict", r.fit_strict},
           {"truncation", r.truncation},
           {"kmax", r.kmax},
           {"pcc_witness", detail::opt(r.pcc_witness)},
           {"flags", r.failed_flags()},
           {"pass", r.all_pass()}};
    if (r.error) {
        j["error"] = *r.error;
    }
    return j;
}

inline const char* csv_header()
{
    return "id,dP,dQ,r,N,bound,degcr,degcr_bound,ordu,ordu_bound,ordR,ordH,ordH_bound,flags";
}

inline std::string bound_report_csv(const BoundReport& r)
{
    auto o = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); };
    std::string flags;
    for (const auto& f : r.failed_flags()) {
        flags += (flags.empty() ? "" : ";") + f;
    }
    std::ostringstream s;
    s << r.id << ',' << r.dP << ',' << r.dQ << ',' << r.r << ',' << o(r.N) << ',' << r.N_bound << ',' << r.deg_cr << ','
      << to_string(r.deg_cr_bound) << ',' << r.ord_u << ',' << to_string(r.ord_u_bound) << ',' << o(r.ord_R) << ','
      << o(r.ord_H) << ',' << to_string(r.ord_H_bound) << ',' << flags;
    return s.str();
}

inline Json corpus_spec_to_json(const CorpusSpec& s)
{
    Json ends = Json::array();
    for (const auto& [a, b] : s.endpoints) {
        ends.push_back(Json::array({to_string(a), to_string(b)}));
    }
    return Json{{"random", s.random},   {"pcc_center", s.pcc_center}, {"near_vanishing", s.near_vanishing},
                {"dP", {s.dP_min, s.dP_max}}, {"dQ", {s.dQ_min, s.dQ_max}},  {"height", s.height},
                {"max_den", s.max_den}, {"endpoints", ends},           {"seed", s.seed}};
}

/// Summary object; the per-instance lines are written separately.
inline Json run_summary_to_json(const RunReport& r, bool with_time = true)
{
    Json j{{"instances", r.reports.size()}, {"passed", r.passed}, {"failed", r.failed}, {"errors", r.errors},
           {"version", r.version}};
    if (r.has_spec) {
        j["spec"] = corpus_spec_to_json(r.spec);
    }
    if (with_time) {
        j["wall_seconds"] = r.wall_seconds;
    }
    return j;
}

inline Json periodic_count_to_json(const PeriodicCount& pc)
{
    Json roots = Json::array();
    for (const auto& r : pc.roots) {
        roots.push_back(Json{{"y", r.y}, {"lo", r.lo}, {"hi", r.hi}});
    }
    return Json{{"epsilon", pc.epsilon},
                {"y_max", pc.y_max},
                {"grid", pc.grid},
                {"tol", pc.tol},
                {"zero_threshold", pc.zero_threshold},
                {"count", pc.count},
                {"roots", roots},
                {"blowups", pc.blowups},
                {"bound", pc.bound},
                {"within_bound", pc.within_bound},
                {"limitation", PeriodicCount::limitation}};
}

} // namespace mbl

#endif
