#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "chacon/oracle.hpp"
#include "chacon/rational.hpp"
#include "chacon/sparse_poly.hpp"

namespace chacon {

using json = nlohmann::json;

// Polynomial wire form:
//   {"exp_scale": 1|2, "coeffs": [[exponent, numerator, denominator], ...]}
// sorted by exponent, every integer as a decimal string.  exp_scale 2 marks
// the doubled-exponent grid of symmetric forms (actual power = exponent/2).
inline json poly_to_json(const SparsePoly& f, int exp_scale = 1) {
    json coeffs = json::array();
    for (const auto& [e, c] : f.terms())
        coeffs.push_back({std::to_string(e), c.numerator().str(), c.denominator().str()});
    return json{{"exp_scale", exp_scale}, {"coeffs", coeffs}};
}

inline SparsePoly poly_from_json(const json& j, int* exp_scale = nullptr) {
    if (exp_scale != nullptr) *exp_scale = j.at("exp_scale").get<int>();
    SparsePoly f;
    for (const auto& entry : j.at("coeffs")) {
        const long long e = std::stoll(entry.at(0).get<std::string>());
        f.add_term(e, BigRational(BigInt(entry.at(1).get<std::string>()), BigInt(entry.at(2).get<std::string>())));
    }
    return f;
}

// CSV rows "exponent,numerator,denominator", sorted by exponent, no header.
inline std::string poly_to_csv(const SparsePoly& f) {
    std::ostringstream os;
    for (const auto& [e, c] : f.terms())
        os << e << "," << c.numerator().str() << "," << c.denominator().str() << "\n";
    return os.str();
}

inline SparsePoly poly_from_csv(const std::string& text) {
    SparsePoly f;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw std::invalid_argument("poly_from_csv: malformed row: " + line);
        f.add_term(std::stoll(line.substr(0, c1)),
                   BigRational(BigInt(line.substr(c1 + 1, c2 - c1 - 1)), BigInt(line.substr(c2 + 1))));
    }
    return f;
}

// Distribution wire form:
//   {"mass": [[value, numerator, denominator], ...], "unresolved": [num, den]}
inline json pi_to_json(const PiDistribution& d) {
    json mass = json::array();
    for (const auto& [v, c] : d.mass) mass.push_back({v, c.numerator().str(), c.denominator().str()});
    return json{{"mass", mass},
                {"unresolved", {d.unresolved.numerator().str(), d.unresolved.denominator().str()}}};
}

inline PiDistribution pi_from_json(const json& j) {
    PiDistribution d;
    for (const auto& entry : j.at("mass")) {
        const long long v = entry.at(0).get<long long>();
        d.mass.emplace(v, BigRational(BigInt(entry.at(1).get<std::string>()), BigInt(entry.at(2).get<std::string>())));
    }
    const auto& u = j.at("unresolved");
    d.unresolved = BigRational(BigInt(u.at(0).get<std::string>()), BigInt(u.at(1).get<std::string>()));
    return d;
}

// CSV rows "value,numerator,denominator" plus a final "unresolved,num,den".
inline std::string pi_to_csv(const PiDistribution& d) {
    std::ostringstream os;
    for (const auto& [v, c] : d.mass)
        os << v << "," << c.numerator().str() << "," << c.denominator().str() << "\n";
    os << "unresolved," << d.unresolved.numerator().str() << "," << d.unresolved.denominator().str() << "\n";
    return os.str();
}

inline PiDistribution pi_from_csv(const std::string& text) {
    PiDistribution d;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw std::invalid_argument("pi_from_csv: malformed row: " + line);
        const BigRational value(BigInt(line.substr(c1 + 1, c2 - c1 - 1)), BigInt(line.substr(c2 + 1)));
        const std::string head = line.substr(0, c1);
        if (head == "unresolved")
            d.unresolved = value;
        else
            d.mass.emplace(std::stoll(head), value);
    }
    return d;
}

// Digit prefix text form: base-p digits, least significant first, comma
// separated (e.g. "2,2,0").
inline std::vector<int> parse_digit_prefix(const std::string& text) {
    std::vector<int> digits;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        if (item.empty()) throw std::invalid_argument("parse_digit_prefix: empty digit");
        digits.push_back(std::stoi(item));
    }
    return digits;
}

inline std::string format_digit_prefix(const std::vector<int>& digits) {
    std::ostringstream os;
    for (std::size_t i = 0; i < digits.size(); ++i) os << (i > 0 ? "," : "") << digits[i];
    return os.str();
}

}  // namespace chacon
