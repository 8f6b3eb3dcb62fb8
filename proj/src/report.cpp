#include "zecap/report.hpp"

#include <json.hpp>

#include <cmath>
#include <sstream>

namespace zecap {

FullReport full_report(const Channel& ch, const ReportOptions& opts) {
    FullReport rep;
    rep.capacity = capacity_report(ch, opts.theta_powers);
    rep.simcost = simcost_report(ch);
    rep.se_tol = opts.se_tol;
    rep.se = se_capacity_bounds(ch, 0, opts.se_tol);
    if (opts.family && opts.family->family == Family::S && opts.family->n == 4 &&
        opts.family->m == 2)
        rep.notes.push_back(
            "floor(alpha*) = 2 counts messages: one perfectly transmitted bit, "
            "sometimes quoted as 1 (bits) for this channel");
    if (rep.se.near_integer)
        rep.notes.push_back("theta is within 10*tol of an integer; the SE upper bound uses the "
                            "rounded floor");
    return rep;
}

namespace {

using nlohmann::ordered_json;

ordered_json to_json(const FullReport& rep) {
    ordered_json j;
    ordered_json cap;
    cap["c0"] = rep.capacity.c0.str();
    cap["c0_witness"] = rep.capacity.c0_witness;
    cap["c0_ns"] = rep.capacity.c0_ns_value.str();
    cap["alpha_star"] = to_string(rep.capacity.alpha_star);
    cap["omega_star"] = to_string(rep.capacity.omega_star);
    cap["c0_ns_bits"] = rep.capacity.c0_ns_bits;
    ordered_json lows = ordered_json::array();
    for (auto [n, v] : rep.capacity.theta_lower_bounds) {
        ordered_json e;
        e["power"] = n;
        e["alpha_root"] = v;
        lows.push_back(std::move(e));
    }
    cap["theta_lower_bounds"] = std::move(lows);
    j["capacity"] = std::move(cap);

    ordered_json sim;
    sim["k0_lower"] = rep.simcost.pr_lower;
    sim["k0_upper"] = rep.simcost.pr_upper;
    sim["k0_sr_computed"] = rep.simcost.k0_sr_computed;
    sim["k0_sr"] = rep.simcost.k0_sr_computed ? rep.simcost.k0_sr_value.str() : "";
    sim["k0_ns"] = rep.simcost.k0_ns_value.str();
    sim["colmax_sum"] = to_string(rep.simcost.colmax_sum);
    sim["k_ns_bits"] = rep.simcost.k_ns_bits;
    j["simcost"] = std::move(sim);

    ordered_json se;
    se["lower"] = rep.se.lower;
    se["upper"] = rep.se.upper;
    se["theta"] = rep.se.theta;
    se["near_integer"] = rep.se.near_integer;
    se["tol"] = rep.se_tol;
    j["se"] = std::move(se);
    j["notes"] = rep.notes;
    return j;
}

} // namespace

std::string report_to_json(const FullReport& rep) { return to_json(rep).dump(2); }

FullReport report_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw Error(std::string("report JSON parse error: ") + e.what());
    }
    try {
        FullReport rep;
        const auto& cap = j.at("capacity");
        rep.capacity.c0 = Int(cap.at("c0").get<std::string>());
        rep.capacity.c0_witness = cap.at("c0_witness").get<std::vector<int>>();
        rep.capacity.c0_ns_value = Int(cap.at("c0_ns").get<std::string>());
        rep.capacity.alpha_star = parse_rational(cap.at("alpha_star").get<std::string>());
        rep.capacity.omega_star = parse_rational(cap.at("omega_star").get<std::string>());
        rep.capacity.c0_ns_bits = cap.at("c0_ns_bits").get<double>();
        for (const auto& e : cap.at("theta_lower_bounds"))
            rep.capacity.theta_lower_bounds.push_back(
                {e.at("power").get<int>(), e.at("alpha_root").get<double>()});
        const auto& sim = j.at("simcost");
        rep.simcost.pr_lower = sim.at("k0_lower").get<int>();
        rep.simcost.pr_upper = sim.at("k0_upper").get<int>();
        rep.simcost.k0_sr_computed = sim.at("k0_sr_computed").get<bool>();
        std::string sr = sim.at("k0_sr").get<std::string>();
        rep.simcost.k0_sr_value = sr.empty() ? Int(0) : Int(sr);
        rep.simcost.k0_ns_value = Int(sim.at("k0_ns").get<std::string>());
        rep.simcost.colmax_sum = parse_rational(sim.at("colmax_sum").get<std::string>());
        rep.simcost.k_ns_bits = sim.at("k_ns_bits").get<double>();
        const auto& se = j.at("se");
        rep.se.lower = se.at("lower").get<long>();
        rep.se.upper = se.at("upper").get<long>();
        rep.se.theta = se.at("theta").get<double>();
        rep.se.near_integer = se.at("near_integer").get<bool>();
        rep.se_tol = se.at("tol").get<double>();
        rep.notes = j.at("notes").get<std::vector<std::string>>();
        return rep;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("report JSON is incomplete: ") + e.what());
    }
}

bool operator==(const FullReport& a, const FullReport& b) {
    return a.capacity.c0 == b.capacity.c0 && a.capacity.c0_witness == b.capacity.c0_witness &&
           a.capacity.c0_ns_value == b.capacity.c0_ns_value &&
           a.capacity.alpha_star == b.capacity.alpha_star &&
           a.capacity.omega_star == b.capacity.omega_star &&
           a.capacity.c0_ns_bits == b.capacity.c0_ns_bits &&
           a.capacity.theta_lower_bounds == b.capacity.theta_lower_bounds &&
           a.simcost.pr_lower == b.simcost.pr_lower && a.simcost.pr_upper == b.simcost.pr_upper &&
           a.simcost.k0_sr_computed == b.simcost.k0_sr_computed &&
           a.simcost.k0_sr_value == b.simcost.k0_sr_value &&
           a.simcost.k0_ns_value == b.simcost.k0_ns_value &&
           a.simcost.colmax_sum == b.simcost.colmax_sum &&
           a.simcost.k_ns_bits == b.simcost.k_ns_bits && a.se.lower == b.se.lower &&
           a.se.upper == b.se.upper && a.se.theta == b.se.theta &&
           a.se.near_integer == b.se.near_integer && a.se_tol == b.se_tol && a.notes == b.notes;
}

std::string format_report(const FullReport& rep) {
    std::ostringstream os;
    os.precision(6);
    os << "zero-error coding (messages per use)\n";
    os << "  c0 = alpha(G)            = " << rep.capacity.c0.str() << "   (exact)\n";
    os << "  c0_SE in                 [" << rep.se.lower << ", " << rep.se.upper
       << "]   (alpha lower, floor-theta upper; theta = " << rep.se.theta << " +- "
       << rep.se_tol << ")\n";
    os << "  c0_NS = floor(alpha*)    = " << rep.capacity.c0_ns_value.str()
       << "   (exact; alpha* = " << to_string(rep.capacity.alpha_star) << ")\n";
    os << "  C0_NS = log2(alpha*)     = " << rep.capacity.c0_ns_bits << " bits\n";
    if (!rep.capacity.theta_lower_bounds.empty()) {
        os << "  Theta(G) lower bounds    :";
        for (auto [n, v] : rep.capacity.theta_lower_bounds)
            os << " alpha(G^" << n << ")^(1/" << n << ") = " << v;
        os << "\n";
    }
    os << "exact simulation (messages per use)\n";
    os << "  k0_NS = ceil(sum max)    = " << rep.simcost.k0_ns_value.str()
       << "   (exact; sum_y max_x = " << to_string(rep.simcost.colmax_sum) << ")\n";
    if (rep.simcost.k0_sr_computed)
        os << "  k0_SR                    = " << rep.simcost.k0_sr_value.str()
           << "   (exact LP)\n";
    else
        os << "  k0_SR                    skipped (enumeration guard)\n";
    os << "  k0 (unassisted) in       [" << rep.simcost.pr_lower << ", " << rep.simcost.pr_upper
       << "]   (rank lower, verified factorisation upper"
       << (rep.simcost.pr_lower == rep.simcost.pr_upper ? "; exact" : "") << ")\n";
    os << "  K_NS = log2(sum max)     = " << rep.simcost.k_ns_bits << " bits\n";
    for (const auto& n : rep.notes) os << "note: " << n << "\n";
    return os.str();
}

} // namespace zecap
