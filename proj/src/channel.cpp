#include "zecap/channel.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace zecap {

Family parse_family(const std::string& name) {
    if (name == "S") return Family::S;
    if (name == "U") return Family::U;
    if (name == "NOT") return Family::NOT;
    if (name == "T") return Family::T;
    if (name == "C5") return Family::C5;
    if (name == "ID") return Family::ID;
    if (name == "KS") return Family::KS;
    throw Error("unknown channel family '" + name + "'");
}

std::string family_name(Family f) {
    switch (f) {
        case Family::S: return "S";
        case Family::U: return "U";
        case Family::NOT: return "NOT";
        case Family::T: return "T";
        case Family::C5: return "C5";
        case Family::ID: return "ID";
        case Family::KS: return "KS";
    }
    return "?";
}

std::vector<std::vector<int>> subsets_of_size(int n, int m) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(m);
    for (int i = 0; i < m; ++i) cur[i] = i + 1;
    if (m == 0) return {{}};
    for (;;) {
        out.push_back(cur);
        int i = m - 1;
        while (i >= 0 && cur[i] == n - (m - 1 - i)) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < m; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

std::string subset_symbol(const std::vector<int>& subset) {
    std::string s = "{";
    for (size_t i = 0; i < subset.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(subset[i]);
    }
    return s + "}";
}

namespace {

std::vector<std::string> numeric_alphabet(int n, int from = 1) {
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back(std::to_string(from + i));
    return out;
}

} // namespace

Channel s_channel(int n, int m) {
    if (!(n > m && m >= 2)) throw Error("S family needs n > m >= 2");
    auto subsets = subsets_of_size(n, m);
    std::vector<std::string> outputs;
    for (const auto& s : subsets) outputs.push_back(subset_symbol(s));
    Rational hit = make_rational(1, binomial(n - 1, m - 1));
    std::vector<std::vector<Rational>> rows(subsets.size(), std::vector<Rational>(n, Rational(0)));
    for (size_t y = 0; y < subsets.size(); ++y)
        for (int v : subsets[y]) rows[y][v - 1] = hit;
    return Channel(numeric_alphabet(n), std::move(outputs), std::move(rows));
}

Channel u_channel(int n, int m) {
    if (!(n >= m && m >= 1)) throw Error("U family needs n >= m >= 1");
    auto subsets = subsets_of_size(n, m);
    std::vector<std::string> inputs;
    for (const auto& s : subsets) inputs.push_back(subset_symbol(s));
    Rational hit = make_rational(1, m);
    std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(subsets.size(), Rational(0)));
    for (size_t x = 0; x < subsets.size(); ++x)
        for (int v : subsets[x]) rows[v - 1][x] = hit;
    return Channel(std::move(inputs), numeric_alphabet(n), std::move(rows));
}

Channel not_channel(int n) {
    if (n < 2) throw Error("NOT family needs n >= 2");
    Rational off = make_rational(1, n - 1);
    std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n, off));
    for (int i = 0; i < n; ++i) rows[i][i] = 0;
    return Channel(numeric_alphabet(n), numeric_alphabet(n), std::move(rows));
}

Channel erasure3_channel(const Rational& p) {
    if (p < 0 || p > 1) throw Error("T family needs 0 <= p <= 1");
    Rational q = 1 - p;
    std::vector<std::vector<Rational>> rows = {
        {p, 0, 0},
        {0, p, 0},
        {0, 0, p},
        {q, q, q},
    };
    return Channel(numeric_alphabet(3), {"1", "2", "3", "e"}, std::move(rows));
}

Channel pentagon_channel() {
    Rational half = make_rational(1, 2);
    std::vector<std::vector<Rational>> rows(5, std::vector<Rational>(5, Rational(0)));
    for (int x = 0; x < 5; ++x) {
        rows[x][x] = half;
        rows[(x + 1) % 5][x] = half;
    }
    return Channel(numeric_alphabet(5, 0), numeric_alphabet(5, 0), std::move(rows));
}

Channel identity_channel(int k) {
    if (k < 1) throw Error("ID family needs k >= 1");
    std::vector<std::vector<Rational>> rows(k, std::vector<Rational>(k, Rational(0)));
    for (int i = 0; i < k; ++i) rows[i][i] = 1;
    return Channel(numeric_alphabet(k), numeric_alphabet(k), std::move(rows));
}

Channel identity_on(std::vector<std::string> symbols) {
    const size_t k = symbols.size();
    std::vector<std::vector<Rational>> rows(k, std::vector<Rational>(k, Rational(0)));
    for (size_t i = 0; i < k; ++i) rows[i][i] = 1;
    return Channel(symbols, symbols, std::move(rows));
}

Channel relabel_identity(std::vector<std::string> inputs, std::vector<std::string> outputs) {
    if (inputs.size() != outputs.size())
        throw Error("relabel_identity needs alphabets of equal size");
    const size_t k = inputs.size();
    std::vector<std::vector<Rational>> rows(k, std::vector<Rational>(k, Rational(0)));
    for (size_t i = 0; i < k; ++i) rows[i][i] = 1;
    return Channel(std::move(inputs), std::move(outputs), std::move(rows));
}

Channel build_family(const ChannelFamilySpec& spec) {
    switch (spec.family) {
        case Family::S: return s_channel(spec.n, spec.m);
        case Family::U: return u_channel(spec.n, spec.m);
        case Family::NOT: return not_channel(spec.n);
        case Family::T: return erasure3_channel(spec.p);
        case Family::C5: return pentagon_channel();
        case Family::ID: return identity_channel(spec.k);
        case Family::KS:
            throw Error("the KS channel is built by the quantum module (ks_channel)");
    }
    throw Error("unknown family");
}

namespace {

using nlohmann::ordered_json;

template <class S>
ordered_json channel_json(const BasicChannel<S>& ch) {
    ordered_json j;
    j["inputs"] = ch.inputs();
    j["outputs"] = ch.outputs();
    ordered_json rows = ordered_json::array();
    for (int y = 0; y < ch.num_outputs(); ++y) {
        ordered_json row = ordered_json::array();
        for (int x = 0; x < ch.num_inputs(); ++x) row.push_back(to_string(ch.entry(y, x)));
        rows.push_back(std::move(row));
    }
    j["matrix"] = std::move(rows);
    return j;
}

} // namespace

Channel channel_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw Error(std::string("channel JSON parse error: ") + e.what());
    }
    if (!j.contains("inputs") || !j.contains("outputs") || !j.contains("matrix"))
        throw Error("channel JSON needs inputs, outputs and matrix");
    std::vector<std::string> inputs = j["inputs"].get<std::vector<std::string>>();
    std::vector<std::string> outputs = j["outputs"].get<std::vector<std::string>>();
    std::vector<std::vector<Rational>> rows;
    for (const auto& row : j["matrix"]) {
        std::vector<Rational> r;
        for (const auto& cell : row) r.push_back(parse_rational(cell.get<std::string>()));
        rows.push_back(std::move(r));
    }
    return Channel(std::move(inputs), std::move(outputs), std::move(rows));
}

std::string channel_to_json(const Channel& ch) { return channel_json(ch).dump(2); }
std::string channel_to_json(const AlgChannel& ch) { return channel_json(ch).dump(2); }

Channel load_channel(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open channel file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return channel_from_json(ss.str());
}

template <class S>
std::string format_channel(const BasicChannel<S>& ch) {
    std::vector<std::vector<std::string>> cells(ch.num_outputs() + 1);
    cells[0].push_back("");
    for (const auto& x : ch.inputs()) cells[0].push_back(x);
    for (int y = 0; y < ch.num_outputs(); ++y) {
        cells[y + 1].push_back(ch.outputs()[y]);
        for (int x = 0; x < ch.num_inputs(); ++x)
            cells[y + 1].push_back(to_string(ch.entry(y, x)));
    }
    std::vector<size_t> width(cells[0].size(), 0);
    for (const auto& row : cells)
        for (size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    std::string out;
    for (const auto& row : cells) {
        for (size_t c = 0; c < row.size(); ++c) {
            out += row[c];
            out.append(width[c] - row[c].size() + 2, ' ');
        }
        out += '\n';
    }
    return out;
}

template std::string format_channel<Rational>(const BasicChannel<Rational>&);
template std::string format_channel<Sqrt2Ext>(const BasicChannel<Sqrt2Ext>&);

} // namespace zecap
