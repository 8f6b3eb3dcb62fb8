#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "zecap/report.hpp"

using namespace zecap;

namespace {
Rational q(const char* s) { return parse_rational(s); }
} // namespace

TEST_CASE("full report for the pentagon channel") {
    FullReport rep = full_report(pentagon_channel());
    CHECK(rep.capacity.c0 == 2);
    CHECK(rep.capacity.alpha_star == q("5/2"));
    CHECK(rep.capacity.omega_star == q("5/2"));
    CHECK(rep.capacity.c0_ns_value == 2);
    CHECK(rep.se.lower == 2);
    CHECK(rep.se.upper == 2);
    CHECK(rep.simcost.k0_ns_value == 3); // sum_y max_x = 5/2
    CHECK(rep.simcost.colmax_sum == q("5/2"));
    // the chains hold
    CHECK(rep.capacity.c0 <= rep.se.lower);
    CHECK(rep.se.upper <= rep.capacity.c0_ns_value);
    CHECK(rep.simcost.k0_ns_value <= rep.simcost.k0_sr_value);
    CHECK(rep.simcost.k0_sr_value <= rep.simcost.pr_upper);
}

TEST_CASE("report JSON round-trips to an equal report") {
    ReportOptions opts;
    opts.family = ChannelFamilySpec{Family::S, 4, 2, 0, Rational(0)};
    FullReport rep = full_report(s_channel(4, 2), opts);
    FullReport back = report_from_json(report_to_json(rep));
    CHECK(rep == back);
    CHECK_THROWS_AS(report_from_json("{}"), Error);
    CHECK_THROWS_AS(report_from_json("{bad"), Error);
}

TEST_CASE("the S(4,2) report documents the message-vs-bit count") {
    ReportOptions opts;
    opts.family = ChannelFamilySpec{Family::S, 4, 2, 0, Rational(0)};
    FullReport rep = full_report(s_channel(4, 2), opts);
    REQUIRE(!rep.notes.empty());
    bool found = false;
    for (const auto& n : rep.notes) found = found || n.find("bit") != std::string::npos;
    CHECK(found);
    std::string text = format_report(rep);
    CHECK(text.find("note:") != std::string::npos);
    CHECK(text.find("c0_NS") != std::string::npos);
}

TEST_CASE("format_report shows both chains") {
    std::string text = format_report(full_report(erasure3_channel(q("1/2"))));
    CHECK(text.find("c0 = alpha(G)") != std::string::npos);
    CHECK(text.find("k0_NS") != std::string::npos);
    CHECK(text.find("k0_SR") != std::string::npos);
    CHECK(text.find("K_NS") != std::string::npos);
}
