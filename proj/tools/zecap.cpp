// zecap: zero-error capacities and exact simulation costs of classical
// channels, assisted by shared randomness, entanglement and non-signalling
// boxes. Exact rational arithmetic end to end; floats only in the SDP.
#include "zecap/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>

using namespace zecap;

namespace {

constexpr int kExitVerificationFailed = 1;
constexpr int kExitUsage = 2;

struct ChannelArgs {
    std::string channel_file;
    std::string family;
    int n = 0, m = 0, k = 0;
    std::string p;

    void attach(CLI::App* cmd) {
        cmd->add_option("--channel", channel_file, "channel JSON file");
        cmd->add_option("--family", family, "channel family: S, U, NOT, T, C5, ID, KS");
        cmd->add_option("--n", n, "family parameter n");
        cmd->add_option("--m", m, "family parameter m");
        cmd->add_option("--k", k, "family parameter k");
        cmd->add_option("--p", p, "family parameter p (rational, e.g. 1/2)");
    }

    std::optional<ChannelFamilySpec> spec() const {
        if (family.empty()) return std::nullopt;
        ChannelFamilySpec s;
        s.family = parse_family(family);
        s.n = n;
        s.m = m;
        s.k = k;
        if (!p.empty()) s.p = parse_rational(p);
        return s;
    }

    Channel resolve() const {
        if (!channel_file.empty() && !family.empty())
            throw Error("give either --channel or --family, not both");
        if (!channel_file.empty()) return load_channel(channel_file);
        if (family.empty()) throw Error("a channel is required: --channel FILE or --family NAME");
        auto s = *spec();
        if (s.family == Family::KS) return ks_channel(peres_six_bases()).channel;
        return build_family(s);
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const nlohmann::ordered_json& j) { std::cout << j.dump(2) << "\n"; }

int run(int argc, char** argv) {
    CLI::App app{"zero-error capacities and exact channel-simulation costs"};
    app.require_subcommand(1);
    bool json = false;
    app.add_flag("--json", json, "machine-readable JSON output");

    ChannelArgs alpha_args, packing_args, theta_args, capacity_args, simcost_args, wire_args,
        report_args, build_args, verify_args;

    auto* cmd_alpha = app.add_subcommand("alpha", "independence number of the confusability graph");
    alpha_args.attach(cmd_alpha);

    auto* cmd_packing = app.add_subcommand("packing", "fractional packing and covering numbers");
    packing_args.attach(cmd_packing);

    auto* cmd_theta = app.add_subcommand("theta", "Lovasz theta of the confusability graph");
    theta_args.attach(cmd_theta);
    double theta_tol = 1e-6;
    bool theta_witness = false;
    cmd_theta->add_option("--tol", theta_tol, "SDP residual tolerance (default 1e-6)");
    cmd_theta->add_flag("--witness", theta_witness, "print the PSD witness matrix");

    auto* cmd_capacity = app.add_subcommand("capacity", "zero-error capacities");
    capacity_args.attach(cmd_capacity);

    auto* cmd_simcost = app.add_subcommand("simcost", "exact simulation costs");
    simcost_args.attach(cmd_simcost);

    auto* cmd_wire = app.add_subcommand("wire", "feed a box through a channel");
    wire_args.attach(cmd_wire);
    std::string wire_box, wire_corr_file, wire_lambda;
    bool wire_resource_id = false;
    cmd_wire->add_option("--box", wire_box,
                         "builtin box: PR, P_lambda, S42, SR_COPY, PR_WIRING, P_LAMBDA_WIRING");
    cmd_wire->add_option("--correlation", wire_corr_file, "correlation JSON file");
    cmd_wire->add_option("--lambda", wire_lambda, "P_lambda parameter (rational or 'tsirelson')");
    cmd_wire->add_flag("--resource-id", wire_resource_id,
                       "wire to the identity resource matching the box alphabets");

    auto* cmd_box = app.add_subcommand("box", "emit a builtin correlation");
    std::string box_name, box_lambda;
    int box_k = 2, box_inputs = 2;
    cmd_box->add_option("--name", box_name, "PR, P_lambda, S42, SR_COPY, PR_WIRING, P_LAMBDA_WIRING")
        ->required();
    cmd_box->add_option("--lambda", box_lambda, "P_lambda parameter (rational or 'tsirelson')");
    cmd_box->add_option("--k", box_k, "SR_COPY value count");
    cmd_box->add_option("--inputs", box_inputs, "SR_COPY input alphabet size");

    auto* cmd_build = app.add_subcommand("build-protocol", "build an exact SR simulation protocol");
    build_args.attach(cmd_build);
    int build_q = 1;
    uint64_t build_seed = 0;
    std::string build_out;
    cmd_build->add_option("--q", build_q, "number of channel copies")->required();
    cmd_build->add_option("--seed", build_seed, "touching-set seed (mandatory for reproducibility)")
        ->required();
    cmd_build->add_option("--out", build_out, "write the protocol JSON here");

    auto* cmd_verify = app.add_subcommand("verify-protocol", "re-verify a protocol exactly");
    verify_args.attach(cmd_verify);
    std::string verify_file;
    cmd_verify->add_option("--protocol", verify_file, "protocol JSON file")->required();

    auto* cmd_ks = app.add_subcommand("ks-demo", "the Kochen-Specker channel end to end");
    double ks_tol = 1e-6;
    cmd_ks->add_option("--tol", ks_tol, "SDP residual tolerance");

    auto* cmd_report = app.add_subcommand("report", "full capacity and simulation chains");
    report_args.attach(cmd_report);

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (cmd_alpha->parsed()) {
        Channel ch = alpha_args.resolve();
        Graph g = confusability_graph(ch);
        auto mis = independence_number(g);
        if (json) {
            nlohmann::ordered_json j;
            j["c0"] = mis.size;
            nlohmann::ordered_json w = nlohmann::ordered_json::array();
            for (int v : mis.witness) w.push_back(g.vertex(v));
            j["witness"] = std::move(w);
            emit(j);
        } else {
            std::cout << "c0 = alpha(G) = " << mis.size << "\nwitness:";
            for (int v : mis.witness) std::cout << " " << g.vertex(v);
            std::cout << "\n";
        }
        return 0;
    }

    if (cmd_packing->parsed()) {
        Channel ch = packing_args.resolve();
        Hypergraph h = hypergraph(ch);
        auto pack = fractional_packing(h);
        auto cover = fractional_covering(h);
        if (json) {
            nlohmann::ordered_json j;
            j["alpha_star"] = to_string(pack.value);
            j["omega_star"] = to_string(cover.value);
            nlohmann::ordered_json vw = nlohmann::ordered_json::object();
            for (int v = 0; v < h.size(); ++v) vw[h.vertices[v]] = to_string(pack.vertex_weights[v]);
            j["vertex_weights"] = std::move(vw);
            nlohmann::ordered_json ew = nlohmann::ordered_json::object();
            for (size_t e = 0; e < h.edges.size(); ++e)
                ew[ch.outputs()[e]] = to_string(cover.edge_weights[e]);
            j["edge_weights"] = std::move(ew);
            emit(j);
        } else {
            std::cout << "alpha*(H) = " << to_string(pack.value) << "\n";
            std::cout << "omega*(H) = " << to_string(cover.value) << "\n";
            std::cout << "vertex weights:";
            for (int v = 0; v < h.size(); ++v)
                std::cout << " " << h.vertices[v] << "=" << to_string(pack.vertex_weights[v]);
            std::cout << "\n";
        }
        return 0;
    }

    if (cmd_theta->parsed()) {
        Channel ch = theta_args.resolve();
        Graph g = confusability_graph(ch);
        auto th = lovasz_theta(g, theta_tol);
        if (json) {
            nlohmann::ordered_json j;
            j["theta"] = th.value;
            j["tol"] = theta_tol;
            j["iterations"] = th.iterations;
            if (theta_witness) {
                nlohmann::ordered_json w = nlohmann::ordered_json::array();
                for (int r = 0; r < th.witness.rows(); ++r) {
                    nlohmann::ordered_json row = nlohmann::ordered_json::array();
                    for (int c = 0; c < th.witness.cols(); ++c) row.push_back(th.witness(r, c));
                    w.push_back(std::move(row));
                }
                j["witness"] = std::move(w);
            }
            emit(j);
        } else {
            std::cout << "theta(G) = " << th.value << "  (residuals <= " << theta_tol << ", "
                      << th.iterations << " iterations)\n";
            if (theta_witness) std::cout << th.witness << "\n";
        }
        return 0;
    }

    if (cmd_capacity->parsed()) {
        Channel ch = capacity_args.resolve();
        auto rep = capacity_report(ch);
        if (json) {
            nlohmann::ordered_json j;
            j["c0"] = rep.c0.str();
            j["c0_ns"] = rep.c0_ns_value.str();
            j["alpha_star"] = to_string(rep.alpha_star);
            j["omega_star"] = to_string(rep.omega_star);
            j["c0_ns_bits"] = rep.c0_ns_bits;
            emit(j);
        } else {
            std::cout << "c0        = " << rep.c0.str() << "\n";
            std::cout << "c0_NS     = " << rep.c0_ns_value.str() << "\n";
            std::cout << "alpha*    = " << to_string(rep.alpha_star) << "\n";
            std::cout << "C0_NS     = " << rep.c0_ns_bits << " bits\n";
        }
        return 0;
    }

    if (cmd_simcost->parsed()) {
        Channel ch = simcost_args.resolve();
        auto rep = simcost_report(ch);
        if (json) {
            nlohmann::ordered_json j;
            j["k0_ns"] = rep.k0_ns_value.str();
            j["k0_sr_computed"] = rep.k0_sr_computed;
            j["k0_sr"] = rep.k0_sr_computed ? rep.k0_sr_value.str() : "";
            j["k0_lower"] = rep.pr_lower;
            j["k0_upper"] = rep.pr_upper;
            j["colmax_sum"] = to_string(rep.colmax_sum);
            j["k_ns_bits"] = rep.k_ns_bits;
            emit(j);
        } else {
            std::cout << "k0_NS = " << rep.k0_ns_value.str() << "  (sum "
                      << to_string(rep.colmax_sum) << ")\n";
            if (rep.k0_sr_computed)
                std::cout << "k0_SR = " << rep.k0_sr_value.str() << "\n";
            else
                std::cout << "k0_SR skipped (enumeration guard)\n";
            std::cout << "k0    in [" << rep.pr_lower << ", " << rep.pr_upper << "]\n";
            std::cout << "K_NS  = " << rep.k_ns_bits << " bits\n";
        }
        return 0;
    }

    if (cmd_box->parsed()) {
        auto lam = [&]() {
            if (box_lambda.empty() || box_lambda == "tsirelson") return tsirelson_lambda();
            return Sqrt2Ext(parse_rational(box_lambda));
        };
        std::string out;
        NsCheck ns;
        if (box_name == "PR") {
            auto b = pr_box();
            ns = is_nonsignalling(b);
            out = correlation_to_json(b);
        } else if (box_name == "P_lambda") {
            auto b = p_lambda_box(lam());
            ns = is_nonsignalling(b);
            out = correlation_to_json(b);
        } else if (box_name == "S42") {
            auto b = s42_box();
            ns = is_nonsignalling(b);
            out = correlation_to_json(b);
        } else if (box_name == "SR_COPY") {
            auto b = shared_coin_box(box_k, box_inputs);
            ns = is_nonsignalling(b);
            out = correlation_to_json(b);
        } else if (box_name == "PR_WIRING") {
            auto b = pr_wiring_box();
            ns = is_nonsignalling(b);
            out = correlation_to_json(b);
        } else if (box_name == "P_LAMBDA_WIRING") {
            auto b = p_lambda_wiring_box(lam());
            ns = is_nonsignalling(b);
            out = correlation_to_json(b);
        } else {
            throw Error("unknown box '" + box_name + "'");
        }
        std::cout << out << "\n";
        if (!json)
            std::cout << "non-signalling: A->B " << (ns.a_to_b ? "yes" : "no") << ", B->A "
                      << (ns.b_to_a ? "yes" : "no") << "\n";
        return 0;
    }

    if (cmd_wire->parsed()) {
        if (!wire_box.empty() && !wire_corr_file.empty())
            throw Error("give either --box or --correlation");
        auto lam = [&]() {
            if (wire_lambda.empty() || wire_lambda == "tsirelson") return tsirelson_lambda();
            return Sqrt2Ext(parse_rational(wire_lambda));
        };
        auto resolve_channel = [&](const auto& box) -> Channel {
            if (wire_resource_id)
                return relabel_identity(box.alice_outputs(), box.bob_inputs());
            return wire_args.resolve();
        };
        bool alg_file = false;
        std::string corr_text;
        if (!wire_corr_file.empty()) {
            corr_text = read_file(wire_corr_file);
            alg_file = corr_text.find("sqrt2") != std::string::npos;
        }
        if (wire_box == "P_lambda" || wire_box == "P_LAMBDA_WIRING" || alg_file) {
            AlgCorrelation box = [&]() {
                if (wire_box == "P_lambda") return p_lambda_box(lam());
                if (wire_box == "P_LAMBDA_WIRING") return p_lambda_wiring_box(lam());
                return alg_correlation_from_json(corr_text);
            }();
            AlgChannel wired = wire(box, to_alg(resolve_channel(box)));
            if (json)
                emit(nlohmann::ordered_json::parse(channel_to_json(wired)));
            else
                std::cout << format_channel(wired);
        } else {
            Correlation box = [&]() {
                if (wire_box == "PR") return pr_box();
                if (wire_box == "S42") return s42_box();
                if (wire_box == "PR_WIRING") return pr_wiring_box();
                if (wire_box == "SR_COPY") return shared_coin_box(box_k, box_inputs);
                if (!wire_corr_file.empty()) return correlation_from_json(corr_text);
                throw Error("unknown box '" + wire_box + "'");
            }();
            Channel wired = wire(box, resolve_channel(box));
            if (json)
                emit(nlohmann::ordered_json::parse(channel_to_json(wired)));
            else
                std::cout << format_channel(wired);
        }
        return 0;
    }

    if (cmd_build->parsed()) {
        Channel ch = build_args.resolve();
        SrProtocol p = build_sr_protocol(ch, build_q, build_seed);
        if (!build_out.empty()) {
            std::ofstream out(build_out);
            if (!out) throw Error("cannot write '" + build_out + "'");
            out << protocol_to_json(p) << "\n";
        }
        nlohmann::ordered_json j;
        j["copies"] = p.copies;
        j["perm_degree"] = p.perm_degree;
        j["denominator"] = p.denominator.str();
        j["message_count"] = p.message_count();
        j["rate_bits"] = p.rate_bits();
        j["rate_bound_bits"] = p.rate_bound_bits();
        if (json) {
            emit(j);
        } else {
            std::cout << "copies         = " << p.copies << "\n";
            std::cout << "perm degree    = " << p.perm_degree << " (randomness: " << p.copies
                      << " uniform permutations)\n";
            std::cout << "denominator    = " << p.denominator.str() << "\n";
            std::cout << "messages       = " << p.message_count() << "\n";
            std::cout << "rate           = " << p.rate_bits() << " bits/use (bound "
                      << p.rate_bound_bits() << ")\n";
            if (!build_out.empty()) std::cout << "written to     " << build_out << "\n";
        }
        return 0;
    }

    if (cmd_verify->parsed()) {
        SrProtocol p = protocol_from_json(read_file(verify_file));
        Channel target = verify_args.resolve();
        auto rep = verify_protocol_exact(p, target);
        if (json) {
            nlohmann::ordered_json j;
            j["exact"] = rep.exact;
            j["note"] = rep.note;
            nlohmann::ordered_json mis = nlohmann::ordered_json::array();
            for (const auto& m : rep.mismatches) {
                nlohmann::ordered_json e;
                e["input"] = m.input;
                e["output"] = m.output;
                e["simulated"] = to_string(m.simulated);
                e["expected"] = to_string(m.expected);
                mis.push_back(std::move(e));
            }
            j["mismatches"] = std::move(mis);
            emit(j);
        } else if (rep.exact) {
            std::cout << "exact: the protocol reproduces the target channel\n";
        } else {
            std::cout << "FAILED: " << rep.note << "\n";
            for (const auto& m : rep.mismatches)
                std::cout << "  P(" << m.output << "|" << m.input << ") = " << to_string(m.simulated)
                          << ", expected " << to_string(m.expected) << "\n";
        }
        return rep.exact ? 0 : kExitVerificationFailed;
    }

    if (cmd_ks->parsed()) {
        BasisSet peres = peres_six_bases();
        auto ksc = is_ks_set(peres);
        auto ks = ks_channel(peres);
        auto mis = independence_number(ks.graph);
        auto th = lovasz_theta(ks.graph, ks_tol);
        double err = simulate_partition_protocol(ks.rep, ks.partition, ks.channel);
        auto betas = partition_code_betas(ks.rep, ks.partition);
        auto code = verify_se_code(betas, ks.channel, 1e-9);
        auto bounds = se_capacity_bounds(ks.channel, code.ok ? 6 : 0);
        bool ok = ksc.is_ks && mis.size < 6 && std::abs(th.value - 6.0) < 1e-3 && err <= 1e-10 &&
                  code.ok && bounds.lower == 6 && bounds.upper == 6;
        if (json) {
            nlohmann::ordered_json j;
            j["is_ks_set"] = ksc.is_ks;
            j["inputs"] = ks.channel.num_inputs();
            j["outputs"] = ks.channel.num_outputs();
            j["alpha"] = mis.size;
            j["theta"] = th.value;
            j["protocol_error"] = err;
            j["se_code_verified"] = code.ok;
            j["c0_se_lower"] = bounds.lower;
            j["c0_se_upper"] = bounds.upper;
            j["ok"] = ok;
            emit(j);
        } else {
            std::cout << "KS basis set (6 bases, dim 4): " << (ksc.is_ks ? "yes" : "NO") << "\n";
            std::cout << "channel: " << ks.channel.num_inputs() << " inputs, "
                      << ks.channel.num_outputs() << " outputs\n";
            std::cout << "c0 = alpha(G_Z) = " << mis.size << " (< 6)\n";
            std::cout << "theta(G_Z) = " << th.value << "\n";
            std::cout << "partition protocol max decode error = " << err << "\n";
            std::cout << "SE code verified for 6 messages: " << (code.ok ? "yes" : "NO") << "\n";
            std::cout << "c0_SE in [" << bounds.lower << ", " << bounds.upper << "]\n";
        }
        return ok ? 0 : kExitVerificationFailed;
    }

    if (cmd_report->parsed()) {
        Channel ch = report_args.resolve();
        ReportOptions opts;
        opts.family = report_args.spec();
        FullReport rep = full_report(ch, opts);
        if (json)
            std::cout << report_to_json(rep) << "\n";
        else
            std::cout << format_report(rep);
        return 0;
    }

    return kExitUsage;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
