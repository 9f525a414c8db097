#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "epslab/epsilon.hpp"
#include "epslab/util.hpp"

namespace epslab {

// ---------------------------------------------------------------------------
// case taxonomy of the twisting formula, from (a(chi1), a(chi2), a(chi1chi2))
// alone.  r = 0 pairs are excluded rather than forced through the n = m > r
// formula: that formula provably disagrees with the direct value there.
enum class CaseTag {
    Case1,                     // n = m = r
    Case2,                     // n = m > r >= 1
    Case3,                     // n = r > m (or m = r > n, by swapping)
    ExcludedUnramifiedProduct, // r = 0
    ExcludedUnramifiedFactor,  // a(chi1) = 0 or a(chi2) = 0
};

inline std::string case_name(CaseTag t) {
    switch (t) {
        case CaseTag::Case1: return "case1";
        case CaseTag::Case2: return "case2";
        case CaseTag::Case3: return "case3";
        case CaseTag::ExcludedUnramifiedProduct: return "excluded_r0";
        case CaseTag::ExcludedUnramifiedFactor: return "excluded_unramified_factor";
    }
    return "?";
}

struct CaseInfo {
    CaseTag tag;
    i64 n; // a(chi1)
    i64 m; // a(chi2)
    i64 r; // a(chi1 chi2), recomputed, never assumed
    bool swapped; // Case3 entered through m = r > n
};

inline CaseInfo classify_pair(const MultChar& chi1, const MultChar& chi2) {
    CaseInfo info{};
    info.n = chi1.conductor();
    info.m = chi2.conductor();
    info.r = char_mul(chi1, chi2).conductor();
    info.swapped = false;
    if (info.n == 0 || info.m == 0)
        info.tag = CaseTag::ExcludedUnramifiedFactor;
    else if (info.r == 0)
        info.tag = CaseTag::ExcludedUnramifiedProduct;
    else if (info.n == info.m && info.m == info.r)
        info.tag = CaseTag::Case1;
    else if (info.n == info.m)
        info.tag = CaseTag::Case2;
    else {
        info.tag = CaseTag::Case3;
        info.swapped = info.n < info.m;
    }
    return info;
}

inline CaseTag classify_case(const MultChar& chi1, const MultChar& chi2) {
    return classify_pair(chi1, chi2).tag;
}

// ---------------------------------------------------------------------------
// the right-hand side of the twisting formula, with J_1 read per mode.
// AutoShell selects the shell the case proofs' valuation bookkeeping selects:
// v = n - r in case 2, v = n - m in case 3 (and the strict sum in case 1).
inline HalfScaled theorem_rhs(const MultChar& chi1_in, const MultChar& chi2_in, const AddChar& psi,
                              const JacobiMode& mode) {
    CaseInfo info = classify_pair(chi1_in, chi2_in);
    if (info.tag == CaseTag::ExcludedUnramifiedFactor)
        throw PreconditionError("unramified factor: the formula needs two ramified characters");
    if (info.tag == CaseTag::ExcludedUnramifiedProduct)
        throw PreconditionError("r=0: chi1 chi2 is unramified; G(chi1 chi2, psi, 0) is outside the well-defined range");

    const MultChar& chi1 = info.swapped ? chi2_in : chi1_in;
    const MultChar& chi2 = info.swapped ? chi1_in : chi2_in;
    i64 n = info.swapped ? info.m : info.n;
    i64 m = info.swapped ? info.n : info.m;
    i64 r = info.r;

    int level = static_cast<int>(n);
    JacobiMode effective = mode;
    if (mode.kind == JacobiMode::Kind::AutoShell) {
        i64 v = info.tag == CaseTag::Case3 ? n - m : n - r;
        effective = JacobiMode::shell(static_cast<int>(v));
    }
    Cyclo J = effective.kind == JacobiMode::Kind::Strict
                  ? jacobi_strict(chi1, chi2, 1, level)
                  : jacobi_shell(chi1, chi2, level, effective.shell_v);
    if (J.is_zero())
        throw ZeroJacobiError("J_1(" + effective.name() + ") vanishes; the formula divides by it");

    HalfScaled prod = epsilon(chi1, psi).value * epsilon(chi2, psi).value;
    prod = prod.times(J.inverse());
    switch (info.tag) {
        case CaseTag::Case1:
            return prod.times_q_half(n);
        case CaseTag::Case2: {
            i64 Lp = std::lcm(chi1.pi_order(), chi2.pi_order());
            i64 kp = chi1.pi_exp() * (Lp / chi1.pi_order()) + chi2.pi_exp() * (Lp / chi2.pi_order());
            i64 e = (r - n) % Lp + Lp;
            return prod.times(root_of_unity(Lp, kp % Lp * e)).times_q_half(r);
        }
        case CaseTag::Case3:
            return prod.times_q_half(2 * n - m);
        default:
            throw PreconditionError("excluded case");
    }
}

// ---------------------------------------------------------------------------
struct ModeVerdict {
    enum class Kind { Exact, Float, Mismatch, Undefined };
    Kind kind = Kind::Undefined;
    double delta = 0.0;
    std::string reason;
};

inline std::string verdict_name(ModeVerdict::Kind k) {
    switch (k) {
        case ModeVerdict::Kind::Exact: return "exact";
        case ModeVerdict::Kind::Float: return "float";
        case ModeVerdict::Kind::Mismatch: return "mismatch";
        case ModeVerdict::Kind::Undefined: return "undefined";
    }
    return "?";
}

struct ModeResult {
    JacobiMode mode;
    std::optional<HalfScaled> rhs;
    ModeVerdict verdict;
};

struct PairReport {
    MultChar chi1, chi2;
    CaseTag tag;
    i64 n, m, r;
    HalfScaled lhs; // direct eps(chi1 chi2, psi): never assumes the theorem
    std::vector<ModeResult> modes;

    bool has_mismatch() const {
        for (const auto& mr : modes)
            if (mr.verdict.kind == ModeVerdict::Kind::Mismatch) return true;
        return false;
    }
};

inline PairReport verify_pair(const MultChar& chi1, const MultChar& chi2, const AddChar& psi,
                              const std::vector<JacobiMode>& modes) {
    CaseInfo info = classify_pair(chi1, chi2);
    HalfScaled lhs = epsilon(char_mul(chi1, chi2), psi).value;
    PairReport report{chi1, chi2, info.tag, info.n, info.m, info.r, lhs, {}};
    for (const auto& mode : modes) {
        ModeResult mr{mode, std::nullopt, {}};
        try {
            HalfScaled rhs = theorem_rhs(chi1, chi2, psi, mode);
            double delta = std::abs(lhs.embed() - rhs.embed());
            if (lhs.exact_eq(rhs) == HalfScaled::Eq::Equal)
                mr.verdict = {ModeVerdict::Kind::Exact, 0.0, ""};
            else if (delta <= 1e-9)
                mr.verdict = {ModeVerdict::Kind::Float, delta, ""};
            else
                mr.verdict = {ModeVerdict::Kind::Mismatch, delta, ""};
            mr.rhs = std::move(rhs);
        } catch (const Error& e) {
            mr.verdict = {ModeVerdict::Kind::Undefined, 0.0, e.what()};
        }
        report.modes.push_back(std::move(mr));
    }
    return report;
}

// ---------------------------------------------------------------------------
struct SweepOptions {
    i64 max_group = 10000; // desk-scale guard on (p-1) p^{n_max-1}
    bool force = false;
    int threads = 0; // 0 = one per core
    std::vector<std::pair<i64, i64>> chi_pi_values = {{1, 0}}; // (order, exp) choices for chi(pi)
};

struct SweepTally {
    i64 exact = 0, flt = 0, mismatch = 0, undefined = 0;
};

struct SweepReport {
    i64 p = 0;
    int n_max = 0;
    ValUnit psi_twist;
    std::vector<JacobiMode> modes;
    std::vector<std::pair<i64, i64>> chi_pi_values;
    i64 total_pairs = 0;
    std::map<CaseTag, i64> counts;
    std::map<CaseTag, std::vector<SweepTally>> tallies; // per case, per mode (input order)
    std::vector<PairReport> mismatches;

    explicit SweepReport(ValUnit twist) : psi_twist(std::move(twist)) {}
};

// ordered pairs of ramified characters at levels <= n_max, each case formula
// checked under every requested Jacobi reading; deterministic and
// parallelism-independent by construction
inline SweepReport sweep(const Prime& p, int n_max, const AddChar& psi,
                         const std::vector<JacobiMode>& modes, const SweepOptions& opts = {}) {
    i64 group = (p.value() - 1) * p.pow(n_max - 1);
    if (group > opts.max_group && !opts.force)
        throw ScaleError("group order " + std::to_string(group) + " exceeds the guard " +
                         std::to_string(opts.max_group) + " (use force/EPSLAB_MAX_GROUP)");

    std::vector<MultChar> ramified;
    for (const auto& chi : enumerate_chars(p, n_max))
        if (chi.is_ramified())
            for (const auto& [po, pe] : opts.chi_pi_values)
                ramified.push_back(chi.with_pi(po, pe));

    size_t count = ramified.size() * ramified.size();
    std::vector<std::optional<PairReport>> slots(count);
    detail::parallel_for(count, opts.threads, [&](size_t idx) {
        size_t i = idx / ramified.size(), j = idx % ramified.size();
        slots[idx] = verify_pair(ramified[i], ramified[j], psi, modes);
    });

    SweepReport report(psi.twist());
    report.p = p.value();
    report.n_max = n_max;
    report.modes = modes;
    report.chi_pi_values = opts.chi_pi_values;
    report.total_pairs = static_cast<i64>(count);
    for (CaseTag t : {CaseTag::Case1, CaseTag::Case2, CaseTag::Case3, CaseTag::ExcludedUnramifiedProduct,
                      CaseTag::ExcludedUnramifiedFactor}) {
        report.counts[t] = 0;
        report.tallies[t] = std::vector<SweepTally>(modes.size());
    }
    for (auto& slot : slots) {
        PairReport& pr = *slot;
        report.counts[pr.tag] += 1;
        for (size_t k = 0; k < pr.modes.size(); ++k) {
            SweepTally& tally = report.tallies[pr.tag][k];
            switch (pr.modes[k].verdict.kind) {
                case ModeVerdict::Kind::Exact: ++tally.exact; break;
                case ModeVerdict::Kind::Float: ++tally.flt; break;
                case ModeVerdict::Kind::Mismatch: ++tally.mismatch; break;
                case ModeVerdict::Kind::Undefined: ++tally.undefined; break;
            }
        }
        if (pr.has_mismatch()) report.mismatches.push_back(std::move(pr));
    }
    return report;
}

} // namespace epslab
