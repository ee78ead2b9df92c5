#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>
#include <string>
#include <string_view>
#include <vector>

namespace pacorr {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class Verdict { pass, fail, premise_unmet };

std::string_view to_string(Verdict v);

/// One evaluated instance of an inequality or identity: both sides exact
/// where possible, serialised as decimal strings.
struct LemmaReport {
    std::string lemma;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    std::string lhs;
    std::string rhs;
    Verdict verdict = Verdict::pass;
    nlohmann::ordered_json extra = nlohmann::ordered_json::object();
};

nlohmann::ordered_json to_json(const LemmaReport& r);
nlohmann::ordered_json to_json(const std::vector<LemmaReport>& rs);

/// {"num": "...", "den": "..."}
nlohmann::ordered_json rational_to_json(const Rational& q);

std::string to_decimal(const BigInt& v);
std::string to_decimal(const Rational& q);

/// %.12g; the serialisation format used for every float in CSV/JSON output.
std::string fmt12(double v);

/// Parse of fmt12(v): a double whose shortest round-trip form has at most
/// 12 significant digits.
double round12(double v);

bool any_failed(const std::vector<LemmaReport>& rs);

}  // namespace pacorr
