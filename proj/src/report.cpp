#include "currents/report.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace currents {

using nlohmann::json;

std::string verdict_of(const Report& r) {
    for (const auto& row : r.results) {
        if (row.dim_computed != row.dim_predicted) return "fail";
        if (row.has_deviation && !(row.deviation <= r.config.tol)) return "fail";
    }
    return "pass";
}

namespace {

json config_to_json(const RunConfig& c) {
    return json{{"command", c.command}, {"algebra", c.algebra},   {"n", c.n},
                {"m", c.m},             {"max_d", c.max_d},       {"max_p", c.max_p},
                {"max_w", c.max_w},     {"max_k", c.max_k},       {"tol", c.tol},
                {"backend", c.backend}, {"format", c.format},     {"out", c.out},
                {"threads", c.threads}, {"corrupt", c.corrupt},   {"germ_only", c.germ_only}};
}

RunConfig config_from_json(const json& j) {
    RunConfig c;
    c.command = j.at("command").get<std::string>();
    c.algebra = j.at("algebra").get<std::string>();
    c.n = j.at("n").get<int>();
    c.m = j.at("m").get<int>();
    c.max_d = j.at("max_d").get<int>();
    c.max_p = j.at("max_p").get<int>();
    c.max_w = j.at("max_w").get<int>();
    c.max_k = j.at("max_k").get<int>();
    c.tol = j.at("tol").get<double>();
    c.backend = j.at("backend").get<std::string>();
    c.format = j.at("format").get<std::string>();
    c.out = j.at("out").get<std::string>();
    c.threads = j.at("threads").get<int>();
    c.corrupt = j.at("corrupt").get<bool>();
    c.germ_only = j.at("germ_only").get<bool>();
    return c;
}

} // namespace

std::string to_json(const Report& r) {
    json rows = json::array();
    for (const auto& row : r.results) {
        json o{{"label", row.label},
               {"block", {{"d", row.d}, {"p", row.p}, {"w", row.w}}},
               {"dim_computed", row.dim_computed},
               {"dim_predicted", row.dim_predicted}};
        if (row.has_deviation) o["deviation"] = row.deviation;
        if (row.has_values) {
            o["value_computed"] = row.value_computed;
            o["value_expected"] = row.value_expected;
        }
        rows.push_back(std::move(o));
    }
    json doc{{"config", config_to_json(r.config)},
             {"results", std::move(rows)},
             {"verdict", r.verdict},
             {"timings", {{"seconds", r.seconds}}},
             {"tool_version", r.tool_version}};
    return doc.dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
    json doc = json::parse(text);
    Report r;
    r.config = config_from_json(doc.at("config"));
    for (const auto& o : doc.at("results")) {
        ResultRow row;
        row.label = o.at("label").get<std::string>();
        row.d = o.at("block").at("d").get<int>();
        row.p = o.at("block").at("p").get<int>();
        row.w = o.at("block").at("w").get<int>();
        row.dim_computed = o.at("dim_computed").get<long long>();
        row.dim_predicted = o.at("dim_predicted").get<long long>();
        if (o.contains("deviation")) {
            row.has_deviation = true;
            row.deviation = o.at("deviation").get<double>();
        }
        if (o.contains("value_computed")) {
            row.has_values = true;
            row.value_computed = o.at("value_computed").get<double>();
            row.value_expected = o.at("value_expected").get<double>();
        }
        r.results.push_back(std::move(row));
    }
    r.verdict = doc.at("verdict").get<std::string>();
    r.seconds = doc.at("timings").at("seconds").get<double>();
    r.tool_version = doc.at("tool_version").get<std::string>();
    return r;
}

std::string to_csv(const Report& r) {
    std::ostringstream os;
    os << "label,d,p,w,dim_computed,dim_predicted,deviation,value_computed,value_expected\r\n";
    for (const auto& row : r.results) {
        os << row.label << ',' << row.d << ',' << row.p << ',' << row.w << ','
           << row.dim_computed << ',' << row.dim_predicted << ',';
        if (row.has_deviation) os << row.deviation;
        os << ',';
        if (row.has_values) os << row.value_computed;
        os << ',';
        if (row.has_values) os << row.value_expected;
        os << "\r\n";
    }
    os << "verdict,,,,,,,," << r.verdict << "\r\n";
    return os.str();
}

std::string to_text(const Report& r) {
    std::ostringstream os;
    os << r.tool_version << "  command=" << r.config.command << "  algebra=" << r.config.algebra
       << "\n";
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-28s %4s %4s %4s %10s %10s %12s", "check", "d", "p", "w",
                  "computed", "predicted", "deviation");
    os << buf << "\n";
    for (const auto& row : r.results) {
        std::string dev = row.has_deviation ? [&] {
            char b[32];
            std::snprintf(b, sizeof b, "%.3e", row.deviation);
            return std::string(b);
        }() : std::string("-");
        std::snprintf(buf, sizeof buf, "%-28s %4d %4d %4d %10lld %10lld %12s", row.label.c_str(),
                      row.d, row.p, row.w, row.dim_computed, row.dim_predicted, dev.c_str());
        os << buf << "\n";
        if (row.has_values) {
            std::snprintf(buf, sizeof buf, "%-28s value computed=%.12g expected=%.12g", "",
                          row.value_computed, row.value_expected);
            os << buf << "\n";
        }
    }
    os << "verdict: " << r.verdict << "  (" << r.results.size() << " checks, "
       << r.seconds << "s)\n";
    return os.str();
}

void write_report(const Report& r) {
    std::string body;
    if (r.config.format == "json")
        body = to_json(r);
    else if (r.config.format == "csv")
        body = to_csv(r);
    else if (r.config.format == "text")
        body = to_text(r);
    else
        throw std::invalid_argument("unknown output format: " + r.config.format);
    if (r.config.out.empty()) {
        std::fputs(body.c_str(), stdout);
        return;
    }
    std::ofstream f(r.config.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + r.config.out);
    f << body;
}

} // namespace currents
