#include "subsym/model_io.hpp"

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

namespace subsym {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw ValidationError(field, what);
}

void reject_unknown(const json& j, const char* where,
                    std::initializer_list<const char*> known) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) fail(std::string(where) + "." + it.key(), "unknown field");
    }
}

double number_at(const json& j, const char* where, const char* field) {
    if (!j.contains(field)) fail(std::string(where) + "." + field, "missing field");
    const auto& v = j.at(field);
    if (!v.is_number()) fail(std::string(where) + "." + field, "must be a number");
    return v.get<double>();
}

SubordinatorSpec subordinator_from(const json& j) {
    if (!j.is_object()) fail("subordinator", "must be an object");
    if (!j.contains("type") || !j.at("type").is_string())
        fail("subordinator.type", "missing or non-string");
    const std::string type = j.at("type").get<std::string>();
    if (type == "stable") {
        reject_unknown(j, "subordinator", {"type", "a", "alpha"});
        return StableSubordinator{number_at(j, "subordinator", "a"),
                                  number_at(j, "subordinator", "alpha")};
    }
    if (type == "tempered") {
        reject_unknown(j, "subordinator", {"type", "c", "lambda", "alpha"});
        return TemperedStableSubordinator{number_at(j, "subordinator", "c"),
                                          number_at(j, "subordinator", "lambda"),
                                          number_at(j, "subordinator", "alpha")};
    }
    fail("subordinator.type", "must be \"stable\" or \"tempered\"");
}

json parse_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) fail("document", "not valid JSON");
    if (!j.is_object()) fail("document", "must be a JSON object");
    return j;
}

}  // namespace

AnyModel model_from_json(const std::string& text) {
    const json j = parse_text(text);
    if (!j.contains("type") || !j.at("type").is_string())
        fail("type", "missing or non-string");
    const std::string type = j.at("type").get<std::string>();

    if (type == "tcbm") {
        reject_unknown(j, "model", {"type", "bm", "subordinator", "gamma"});
        if (!j.contains("bm") || !j.at("bm").is_object()) fail("bm", "missing object");
        reject_unknown(j.at("bm"), "bm", {"mu", "sigma"});
        TcbmModel m;
        m.bm.mu = number_at(j.at("bm"), "bm", "mu");
        m.bm.sigma = number_at(j.at("bm"), "bm", "sigma");
        if (!j.contains("subordinator")) fail("subordinator", "missing field");
        m.subordinator = subordinator_from(j.at("subordinator"));
        m.gamma = j.contains("gamma") ? number_at(j, "model", "gamma") : 0.0;
        return validate(AnyModel{m});
    }
    if (type == "cgmy") {
        reject_unknown(j, "model", {"type", "c", "g", "m", "y"});
        CgmyModel m{number_at(j, "model", "c"), number_at(j, "model", "g"),
                    number_at(j, "model", "m"), number_at(j, "model", "y")};
        return validate(AnyModel{m});
    }
    if (type == "meixner") {
        reject_unknown(j, "model", {"type", "a", "b", "d"});
        MeixnerModel m{number_at(j, "model", "a"), number_at(j, "model", "b"),
                       number_at(j, "model", "d")};
        return validate(AnyModel{m});
    }
    fail("type", "must be \"tcbm\", \"cgmy\" or \"meixner\"");
}

MarketSpec market_from_json(const std::string& text) {
    const json j = parse_text(text);
    reject_unknown(j, "market", {"r", "delta", "spot"});
    MarketSpec m{number_at(j, "market", "r"), number_at(j, "market", "delta"),
                 number_at(j, "market", "spot")};
    return validate(m);
}

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::string subordinator_json(const SubordinatorSpec& s) {
    std::ostringstream os;
    if (std::holds_alternative<StableSubordinator>(s)) {
        const auto& v = std::get<StableSubordinator>(s);
        os << "{\"type\":\"stable\",\"a\":" << format_number(v.a)
           << ",\"alpha\":" << format_number(v.alpha) << "}";
    } else {
        const auto& v = std::get<TemperedStableSubordinator>(s);
        os << "{\"type\":\"tempered\",\"c\":" << format_number(v.c)
           << ",\"lambda\":" << format_number(v.lambda)
           << ",\"alpha\":" << format_number(v.alpha) << "}";
    }
    return os.str();
}

}  // namespace

std::string to_json(const AnyModel& m) {
    std::ostringstream os;
    if (std::holds_alternative<TcbmModel>(m)) {
        const auto& v = std::get<TcbmModel>(m);
        os << "{\"type\":\"tcbm\",\"bm\":{\"mu\":" << format_number(v.bm.mu)
           << ",\"sigma\":" << format_number(v.bm.sigma)
           << "},\"subordinator\":" << subordinator_json(v.subordinator)
           << ",\"gamma\":" << format_number(v.gamma) << "}";
    } else if (std::holds_alternative<CgmyModel>(m)) {
        const auto& v = std::get<CgmyModel>(m);
        os << "{\"type\":\"cgmy\",\"c\":" << format_number(v.c)
           << ",\"g\":" << format_number(v.g) << ",\"m\":" << format_number(v.m)
           << ",\"y\":" << format_number(v.y) << "}";
    } else {
        const auto& v = std::get<MeixnerModel>(m);
        os << "{\"type\":\"meixner\",\"a\":" << format_number(v.a)
           << ",\"b\":" << format_number(v.b) << ",\"d\":" << format_number(v.d) << "}";
    }
    return os.str();
}

std::string to_json(const MarketSpec& m) {
    std::ostringstream os;
    os << "{\"r\":" << format_number(m.r) << ",\"delta\":" << format_number(m.delta)
       << ",\"spot\":" << format_number(m.spot) << "}";
    return os.str();
}

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    if (in.bad()) throw IoError("cannot read " + path);
    return os.str();
}

}  // namespace

AnyModel load_model(const std::string& path) { return model_from_json(slurp(path)); }

MarketSpec load_market(const std::string& path) { return market_from_json(slurp(path)); }

}  // namespace subsym
