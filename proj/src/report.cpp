#include "pacorr/report.hpp"

#include <cstdio>
#include <cstdlib>

namespace pacorr {

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "PASS";
        case Verdict::fail: return "FAIL";
        case Verdict::premise_unmet: return "PREMISE_UNMET";
    }
    return "?";
}

nlohmann::ordered_json to_json(const LemmaReport& r) {
    nlohmann::ordered_json j;
    j["lemma"] = r.lemma;
    j["params"] = r.params;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["verdict"] = std::string(to_string(r.verdict));
    if (!r.extra.empty()) j["extra"] = r.extra;
    return j;
}

nlohmann::ordered_json to_json(const std::vector<LemmaReport>& rs) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : rs) arr.push_back(to_json(r));
    return arr;
}

nlohmann::ordered_json rational_to_json(const Rational& q) {
    return {{"num", to_decimal(BigInt(numerator(q)))}, {"den", to_decimal(BigInt(denominator(q)))}};
}

std::string to_decimal(const BigInt& v) { return v.str(); }

std::string to_decimal(const Rational& q) {
    const BigInt den = denominator(q);
    if (den == 1) return to_decimal(BigInt(numerator(q)));
    return to_decimal(BigInt(numerator(q))) + "/" + to_decimal(den);
}

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double round12(double v) { return std::strtod(fmt12(v).c_str(), nullptr); }

bool any_failed(const std::vector<LemmaReport>& rs) {
    for (const auto& r : rs) {
        if (r.verdict == Verdict::fail) return true;
    }
    return false;
}

}  // namespace pacorr
