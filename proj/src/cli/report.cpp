#include "kontakt/cli.hpp"

#include "json.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace kontakt::cli {

namespace {

using json = nlohmann::ordered_json;

json record_json(const CheckRecord &r, bool with_model, bool timing) {
    json j;
    if (with_model) j["model"] = r.model;
    j["name"] = r.name;
    j["kind"] = r.kind;
    j["status"] = r.status;
    if (r.condition) j["condition"] = *r.condition;
    if (!r.ranks.empty()) {
        json ranks = json::object();
        for (const auto &e : r.ranks) {
            if (e.list)
                ranks[e.name] = e.values;
            else
                ranks[e.name] = e.values.at(0);
        }
        j["ranks"] = ranks;
    }
    if (!r.witnesses.empty()) {
        json w = json::object();
        for (const auto &[k, v] : r.witnesses) w[k] = v;
        j["witnesses"] = w;
    }
    if (r.error_code) j["error"] = {{"code", *r.error_code}, {"message", r.error_message.value_or("")}};
    if (timing) j["seconds"] = r.seconds;
    return j;
}

std::string detail_text(const CheckRecord &r) {
    std::vector<std::string> parts;
    for (const auto &e : r.ranks) {
        std::string v;
        if (e.list) {
            v = "(";
            for (std::size_t i = 0; i < e.values.size(); ++i) v += (i ? "," : "") + std::to_string(e.values[i]);
            v += ")";
        } else {
            v = std::to_string(e.values.at(0));
        }
        std::string name = e.name;
        std::replace(name.begin(), name.end(), ' ', '_');
        parts.push_back(name + "=" + v);
    }
    if (r.condition) parts.push_back("condition=" + std::to_string(*r.condition));
    if (r.error_code) parts.push_back("error=" + *r.error_code);
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " " : "") + parts[i];
    return s;
}

} // namespace

std::string emit_report(const Report &r, Format f, bool timing) {
    bool multi = false;
    for (const auto &c : r.checks)
        if (c.model != r.model) multi = true;
    if (f == Format::Json) {
        json j;
        j["tool_version"] = kToolVersion;
        j["model"] = r.model;
        json checks = json::array();
        for (const auto &c : r.checks) checks.push_back(record_json(c, multi, timing));
        j["checks"] = checks;
        if (timing) j["seconds"] = r.seconds;
        return j.dump(2) + "\n";
    }
    std::vector<std::array<std::string, 4>> rows = {{"NAME", "KIND", "STATUS", "DETAIL"}};
    int bad = 0;
    for (const auto &c : r.checks) {
        rows.push_back({multi ? c.model + "/" + c.name : c.name, c.kind, c.status, detail_text(c)});
        bad += !c.ok();
    }
    std::size_t w[3] = {0, 0, 0};
    for (const auto &row : rows)
        for (int i = 0; i < 3; ++i) w[i] = std::max(w[i], row[i].size());
    std::ostringstream os;
    os << "model " << r.model << "\n";
    for (const auto &row : rows) {
        std::string line;
        for (int i = 0; i < 3; ++i) line += row[i] + std::string(w[i] - row[i].size() + 2, ' ');
        line += row[3];
        while (!line.empty() && line.back() == ' ') line.pop_back();
        os << line << "\n";
    }
    os << r.checks.size() << " checks, " << r.checks.size() - bad << " ok, " << bad << " not ok";
    if (timing) os << ", " << r.seconds << " s";
    os << "\n";
    return os.str();
}

} // namespace kontakt::cli
