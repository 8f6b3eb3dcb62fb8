#pragma once

#include "zecap/capacity.hpp"
#include "zecap/quantum.hpp"
#include "zecap/simulation.hpp"

#include <optional>
#include <string>

namespace zecap {

// Everything the `report` verb prints: the coding chain
// alpha(G) = c0 <= c0_SE <= c0_NS = floor(alpha*) and the simulation chain
// ceil(sum_y max_x) = k0_NS <= k0_SR <= k0, with provenance notes.
struct FullReport {
    CapacityReport capacity;
    SimCostReport simcost;
    SeBounds se;
    double se_tol = 1e-4;
    std::vector<std::string> notes;
};

struct ReportOptions {
    double se_tol = 1e-4;
    int theta_powers = 2;
    std::optional<ChannelFamilySpec> family;
};

FullReport full_report(const Channel& ch, const ReportOptions& opts = {});

std::string report_to_json(const FullReport& rep);
FullReport report_from_json(const std::string& text);
std::string format_report(const FullReport& rep);

bool operator==(const FullReport& a, const FullReport& b);

} // namespace zecap
