#pragma once

#include <json.hpp>

#include <complex>
#include <limits>
#include <string>

#include "epslab/twist_verify.hpp"

namespace epslab {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json big_to_json(const BigInt& v) {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return v.convert_to<long long>();
    return v.str(); // out of 64-bit range: decimal string, accepted back on parse
}

inline BigInt big_from_json(const Json& j) {
    if (j.is_string()) return BigInt(j.get<std::string>());
    return BigInt(j.get<long long>());
}

} // namespace detail

// {"M": int, "num": [int...], "den": int, "e_half": int, "q": int}
inline Json value_to_json(const HalfScaled& h) {
    Cyclo u = h.unit().minimized();
    Json num = Json::array();
    for (const auto& v : u.nums()) num.push_back(detail::big_to_json(v));
    return Json{{"M", u.order()}, {"num", std::move(num)}, {"den", detail::big_to_json(u.den())},
                {"e_half", h.e_half()}, {"q", h.q()}};
}

inline Json value_to_json(const Cyclo& c, i64 q) { return value_to_json(HalfScaled(c, 0, q)); }

inline HalfScaled value_from_json(const Json& j) {
    i64 M = j.at("M").get<i64>();
    std::vector<BigInt> counts;
    for (const auto& v : j.at("num")) counts.push_back(detail::big_from_json(v));
    counts.resize(static_cast<size_t>(M), BigInt(0)); // basis has phi(M) <= M entries
    Cyclo u = Cyclo::from_power_counts(M, std::move(counts));
    BigInt den = detail::big_from_json(j.at("den"));
    return HalfScaled(u.times_rational(1, den), j.at("e_half").get<i64>(), j.at("q").get<i64>());
}

inline Json float_to_json(std::complex<double> z) {
    return Json{{"re", z.real()}, {"im", z.imag()}};
}

// {"p", "n", "exps", "pi_order", "pi_exp", "conductor"}
inline Json char_to_json(const MultChar& chi) {
    return Json{{"p", chi.prime().value()}, {"n", chi.level()}, {"exps", chi.exps()},
                {"pi_order", chi.pi_order()}, {"pi_exp", chi.pi_exp()}, {"conductor", chi.conductor()}};
}

inline MultChar char_from_json(const Json& j) {
    Prime p(j.at("p").get<i64>());
    auto S = unit_group_structure(p, j.at("n").get<int>());
    MultChar chi = MultChar::make(S, j.at("exps").get<std::vector<i64>>(), j.at("pi_order").get<i64>(),
                                  j.at("pi_exp").get<i64>());
    if (chi.conductor() != j.at("conductor").get<int>())
        throw ParseError("stored conductor disagrees with the recomputed one");
    return chi;
}

inline Json psi_to_json(const AddChar& psi) {
    const ValUnit& b = psi.twist();
    return Json{{"p", b.prime().value()}, {"v", b.valuation()}, {"u", b.unit()}, {"k", b.precision()}};
}

inline AddChar psi_from_json(const Json& j) {
    Prime p(j.at("p").get<i64>());
    return AddChar(ValUnit(p, j.at("v").get<i64>(), j.at("u").get<i64>(), j.at("k").get<int>()));
}

inline Json pair_report_to_json(const PairReport& pr) {
    Json modes = Json::array();
    for (const auto& mr : pr.modes) {
        Json m{{"mode", mr.mode.name()}};
        m["rhs"] = mr.rhs ? value_to_json(*mr.rhs) : Json(nullptr);
        m["verdict"] = verdict_name(mr.verdict.kind);
        if (mr.verdict.kind == ModeVerdict::Kind::Float || mr.verdict.kind == ModeVerdict::Kind::Mismatch)
            m["delta"] = mr.verdict.delta;
        if (mr.verdict.kind == ModeVerdict::Kind::Undefined) m["reason"] = mr.verdict.reason;
        modes.push_back(std::move(m));
    }
    return Json{{"chi1", char_to_json(pr.chi1)}, {"chi2", char_to_json(pr.chi2)},
                {"case", case_name(pr.tag)}, {"n", pr.n}, {"m", pr.m}, {"r", pr.r},
                {"lhs", value_to_json(pr.lhs)}, {"modes", std::move(modes)}};
}

inline JacobiMode mode_from_name(const std::string& name) {
    if (name == "strict") return JacobiMode::strict();
    if (name == "autoshell") return JacobiMode::auto_shell();
    if (name.rfind("shell:", 0) == 0) return JacobiMode::shell(std::stoi(name.substr(6)));
    throw ParseError("unknown Jacobi mode '" + name + "'");
}

inline PairReport pair_report_from_json(const Json& j) {
    PairReport pr{char_from_json(j.at("chi1")), char_from_json(j.at("chi2")),
                  CaseTag::Case1, j.at("n").get<i64>(), j.at("m").get<i64>(), j.at("r").get<i64>(),
                  value_from_json(j.at("lhs")), {}};
    std::string cs = j.at("case").get<std::string>();
    for (CaseTag t : {CaseTag::Case1, CaseTag::Case2, CaseTag::Case3, CaseTag::ExcludedUnramifiedProduct,
                      CaseTag::ExcludedUnramifiedFactor})
        if (case_name(t) == cs) pr.tag = t;
    for (const auto& m : j.at("modes")) {
        ModeResult mr{mode_from_name(m.at("mode").get<std::string>()), std::nullopt, {}};
        if (!m.at("rhs").is_null()) mr.rhs = value_from_json(m.at("rhs"));
        std::string vn = m.at("verdict").get<std::string>();
        if (vn == "exact") mr.verdict.kind = ModeVerdict::Kind::Exact;
        else if (vn == "float") mr.verdict.kind = ModeVerdict::Kind::Float;
        else if (vn == "mismatch") mr.verdict.kind = ModeVerdict::Kind::Mismatch;
        else mr.verdict.kind = ModeVerdict::Kind::Undefined;
        if (m.contains("delta")) mr.verdict.delta = m.at("delta").get<double>();
        if (m.contains("reason")) mr.verdict.reason = m.at("reason").get<std::string>();
        pr.modes.push_back(std::move(mr));
    }
    return pr;
}

inline Json sweep_report_to_json(const SweepReport& r) {
    Json j;
    j["p"] = r.p;
    j["n_max"] = r.n_max;
    j["psi"] = Json{{"p", r.psi_twist.prime().value()}, {"v", r.psi_twist.valuation()},
                    {"u", r.psi_twist.unit()}, {"k", r.psi_twist.precision()}};
    Json modes = Json::array();
    for (const auto& m : r.modes) modes.push_back(m.name());
    j["modes"] = std::move(modes);
    if (!(r.chi_pi_values.size() == 1 && r.chi_pi_values[0] == std::make_pair<i64, i64>(1, 0))) {
        Json pis = Json::array();
        for (const auto& [o, e] : r.chi_pi_values) pis.push_back(Json{{"order", o}, {"exp", e}});
        j["chi_pi"] = std::move(pis);
    }
    Json counts;
    for (const auto& [tag, c] : r.counts) counts[case_name(tag)] = c;
    j["counts"] = std::move(counts);
    Json verdicts;
    for (const auto& [tag, tallies] : r.tallies) {
        Json per_mode;
        for (size_t k = 0; k < tallies.size(); ++k)
            per_mode[r.modes[k].name()] = Json{{"exact", tallies[k].exact}, {"float", tallies[k].flt},
                                               {"mismatch", tallies[k].mismatch}, {"undefined", tallies[k].undefined}};
        verdicts[case_name(tag)] = std::move(per_mode);
    }
    j["verdicts"] = std::move(verdicts);
    Json mm = Json::array();
    for (const auto& pr : r.mismatches) mm.push_back(pair_report_to_json(pr));
    j["mismatches"] = std::move(mm);
    return j;
}

inline SweepReport sweep_report_from_json(const Json& j) {
    Prime p(j.at("psi").at("p").get<i64>());
    ValUnit twist(p, j.at("psi").at("v").get<i64>(), j.at("psi").at("u").get<i64>(), j.at("psi").at("k").get<int>());
    SweepReport r(twist);
    r.p = j.at("p").get<i64>();
    r.n_max = j.at("n_max").get<int>();
    for (const auto& m : j.at("modes")) r.modes.push_back(mode_from_name(m.get<std::string>()));
    if (j.contains("chi_pi"))
        for (const auto& pi : j.at("chi_pi"))
            r.chi_pi_values.push_back({pi.at("order").get<i64>(), pi.at("exp").get<i64>()});
    else
        r.chi_pi_values = {{1, 0}};
    for (CaseTag t : {CaseTag::Case1, CaseTag::Case2, CaseTag::Case3, CaseTag::ExcludedUnramifiedProduct,
                      CaseTag::ExcludedUnramifiedFactor}) {
        r.counts[t] = j.at("counts").at(case_name(t)).get<i64>();
        std::vector<SweepTally> tallies;
        for (const auto& m : r.modes) {
            const Json& tj = j.at("verdicts").at(case_name(t)).at(m.name());
            tallies.push_back({tj.at("exact").get<i64>(), tj.at("float").get<i64>(),
                               tj.at("mismatch").get<i64>(), tj.at("undefined").get<i64>()});
        }
        r.tallies[t] = std::move(tallies);
    }
    for (const auto& [tag, c] : r.counts) r.total_pairs += c; // counts partition the ordered pairs
    for (const auto& pr : j.at("mismatches")) r.mismatches.push_back(pair_report_from_json(pr));
    return r;
}

// case,mode,exact,float,mismatch,undefined rows
inline std::string sweep_report_csv(const SweepReport& r) {
    std::string out = "case,mode,exact,float,mismatch,undefined\n";
    for (const auto& [tag, tallies] : r.tallies)
        for (size_t k = 0; k < tallies.size(); ++k)
            out += case_name(tag) + "," + r.modes[k].name() + "," + std::to_string(tallies[k].exact) + "," +
                   std::to_string(tallies[k].flt) + "," + std::to_string(tallies[k].mismatch) + "," +
                   std::to_string(tallies[k].undefined) + "\n";
    return out;
}

} // namespace epslab
