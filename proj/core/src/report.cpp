#include <cmforge/report.hpp>

#include <json.hpp>

#include <ostream>
#include <stdexcept>

namespace cmforge::report {

std::string to_json_line(const Record& r)
{
    nlohmann::ordered_json j;
    j["suite"] = r.suite;
    j["params"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.params)
        j["params"][k] = v;
    j["pass"] = r.pass;
    j["residual"] = r.residual;
    j["seconds"] = r.seconds;
    if (!r.error.empty())
        j["error"] = r.error;
    return j.dump();
}

Record from_json_line(const std::string& line)
{
    try {
        const auto j = nlohmann::ordered_json::parse(line);
        Record r;
        r.suite = j.at("suite").get<std::string>();
        for (const auto& [k, v] : j.at("params").items())
            r.params.emplace_back(k, v.get<long>());
        r.pass = j.at("pass").get<bool>();
        r.residual = j.at("residual").get<double>();
        r.seconds = j.at("seconds").get<double>();
        if (j.contains("error"))
            r.error = j.at("error").get<std::string>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed report line: ") + e.what());
    }
}

void Reporter::emit(const Record& r)
{
    ++count_;
    if (!r.pass)
        ++failures_;
    out_ << to_json_line(r) << '\n';
    out_.flush();
}

} // namespace cmforge::report
