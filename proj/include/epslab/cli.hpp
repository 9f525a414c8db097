#pragma once

#include <CLI11.hpp>

#include <complex>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "epslab/format.hpp"
#include "epslab/suites.hpp"

namespace epslab::cli {

// --char "exps=e1,e2;pi=zetaM^k|1"
inline MultChar parse_char(const std::string& spec, const Prime& p, int level) {
    std::vector<i64> exps;
    i64 pi_order = 1, pi_exp = 0;
    std::stringstream ss(spec);
    std::string field;
    bool saw_exps = false;
    while (std::getline(ss, field, ';')) {
        auto eq = field.find('=');
        if (eq == std::string::npos) throw ParseError("char spec field without '=': " + field);
        std::string key = field.substr(0, eq), val = field.substr(eq + 1);
        if (key == "exps") {
            saw_exps = true;
            std::stringstream vs(val);
            std::string item;
            while (std::getline(vs, item, ','))
                if (!item.empty()) exps.push_back(std::stoll(item));
        } else if (key == "pi") {
            if (val == "1") {
                pi_order = 1;
                pi_exp = 0;
            } else if (val.rfind("zeta", 0) == 0) {
                auto caret = val.find('^');
                pi_order = std::stoll(val.substr(4, caret == std::string::npos ? std::string::npos : caret - 4));
                pi_exp = caret == std::string::npos ? 1 : std::stoll(val.substr(caret + 1));
            } else {
                throw ParseError("pi value must be 1 or zetaM^k, got '" + val + "'");
            }
        } else {
            throw ParseError("unknown char spec key '" + key + "'");
        }
    }
    if (!saw_exps) throw ParseError("char spec needs exps=...");
    auto S = unit_group_structure(p, level);
    if (exps.size() != S->generators().size())
        throw ParseError("exps has " + std::to_string(exps.size()) + " entries; (Z/p^n)^x has " +
                         std::to_string(S->generators().size()) + " generators");
    return MultChar::make(S, std::move(exps), pi_order, pi_exp);
}

// --psi "canonical" | "b=v:<int>,u:<int>"
inline AddChar parse_psi(const std::string& spec, const Prime& p) {
    if (spec.empty() || spec == "canonical") return AddChar::canonical(p);
    if (spec.rfind("b=", 0) != 0) throw ParseError("psi spec must be 'canonical' or 'b=v:<int>,u:<int>'");
    i64 v = 0, u = 1;
    std::stringstream ss(spec.substr(2));
    std::string field;
    while (std::getline(ss, field, ',')) {
        if (field.rfind("v:", 0) == 0) v = std::stoll(field.substr(2));
        else if (field.rfind("u:", 0) == 0) u = std::stoll(field.substr(2));
        else throw ParseError("unknown psi field '" + field + "'");
    }
    return AddChar(ValUnit(p, v, u, AddChar::default_precision(p)));
}

inline std::string char_spec_string(const MultChar& chi) {
    std::string s = "exps=";
    for (size_t i = 0; i < chi.exps().size(); ++i) {
        if (i) s += ",";
        s += std::to_string(chi.exps()[i]);
    }
    s += ";pi=";
    if (chi.pi_order() == 1) s += "1";
    else s += "zeta" + std::to_string(chi.pi_order()) + "^" + std::to_string(chi.pi_exp());
    return s;
}

inline std::complex<double> parse_complex(const std::string& text) {
    // forms: "1", "0.5", "1+1i", "2-0.5i", "1i"
    std::string t = text;
    if (!t.empty() && t.back() == 'i') {
        size_t split = t.size() - 1;
        for (size_t i = 1; i + 1 < t.size(); ++i)
            if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') split = i;
        if (split == t.size() - 1) return {0.0, std::stod(t.substr(0, split).empty() ? "1" : t.substr(0, split))};
        return {std::stod(t.substr(0, split)), std::stod(t.substr(split, t.size() - 1 - split))};
    }
    return {std::stod(t), 0.0};
}

inline std::vector<JacobiMode> parse_modes(const std::string& list) {
    std::vector<JacobiMode> modes;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) modes.push_back(mode_from_name(item));
    if (modes.empty()) throw ParseError("no Jacobi modes given");
    return modes;
}

inline i64 env_max_group() {
    if (const char* env = std::getenv("EPSLAB_MAX_GROUP")) return std::stoll(env);
    return 10000;
}

struct ValueOutput {
    bool json = false;
    std::string backend = "both"; // exact | float | both
};

inline void print_value(std::ostream& out, const HalfScaled& value, const ValueOutput& fmt) {
    if (fmt.json) {
        Json j;
        if (fmt.backend != "float") j["exact"] = value_to_json(value);
        if (fmt.backend != "exact") j["float"] = float_to_json(value.embed());
        out << j.dump(2) << "\n";
        return;
    }
    if (fmt.backend != "float") out << "exact: " << pretty(value) << "\n";
    if (fmt.backend != "exact") out << "float: " << pretty(value.embed()) << "\n";
}

// ---------------------------------------------------------------------------
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"local epsilon factors, Gauss and Jacobi sums over Q_p, and the twisting-formula verifier"};
    app.require_subcommand(1);

    i64 p_value = 0;
    int level = 1;
    std::string psi_spec = "canonical";
    std::string backend = "both";
    bool as_json = false, as_csv = false, strict_exit = false, force = false;
    int threads = 0;
    app.add_option("--p", p_value, "prime p")->envname("EPSLAB_P");
    app.add_option("--level", level, "storage level n (unit classes mod p^n)");
    app.add_option("--psi", psi_spec, "additive character: canonical | b=v:<int>,u:<int>");
    app.add_option("--backend", backend, "exact | float | both")->check(CLI::IsMember({"exact", "float", "both"}));
    app.add_flag("--json", as_json, "JSON output");
    app.add_flag("--csv", as_csv, "CSV output where applicable");
    app.add_flag("--strict-exit", strict_exit, "exit 2 when a verify/sweep run finds a mismatch");
    app.add_flag("--force", force, "override the desk-scale guard");
    app.add_option("--threads", threads, "worker threads (0 = one per core)");
    app.fallthrough();

    auto* eps_cmd = app.add_subcommand("eps", "epsilon factor of a character");
    std::string char_spec, s_spec;
    eps_cmd->add_option("--char", char_spec, "character spec exps=e1,e2;pi=zetaM^k|1")->required();
    eps_cmd->add_option("--s", s_spec, "complex s: switch to eps_BH(chi,s,psi) = eps_D(chi omega_s,psi,dx_psi)");

    auto* gauss_cmd = app.add_subcommand("gauss", "Gauss sum G(chi, psi, m)");
    int gauss_m = 1;
    gauss_cmd->add_option("--char", char_spec, "character spec")->required();
    gauss_cmd->add_option("--m", gauss_m, "summation level m >= max(a(chi),1)")->required();

    auto* jacobi_cmd = app.add_subcommand("jacobi", "local Jacobi sum J_t(chi1, chi2, n)");
    std::string char2_spec, jmode = "strict";
    i64 jacobi_t = 1;
    jacobi_cmd->add_option("--char", char_spec, "chi1 spec")->required();
    jacobi_cmd->add_option("--char2", char2_spec, "chi2 spec")->required();
    jacobi_cmd->add_option("--mode", jmode, "strict | shell:v");
    jacobi_cmd->add_option("--t", jacobi_t, "translation point t (strict mode)");

    auto* cond_cmd = app.add_subcommand("conductor", "conductor a(chi)");
    cond_cmd->add_option("--char", char_spec, "character spec")->required();

    auto* verify_cmd = app.add_subcommand("verify", "run identity suites (see --list)");
    std::string suite_id = "all", m_range = "-3..3", reports_dir = "reports";
    int a_filter = -1, n_filter = -1;
    bool list_suites = false;
    verify_cmd->add_option("suite", suite_id, "suite id or 'all'");
    verify_cmd->add_flag("--list", list_suites, "list suite ids");
    verify_cmd->add_option("--a", a_filter, "restrict to conductor a");
    verify_cmd->add_option("--n-max", n_filter, "cap the desk-scale level");
    verify_cmd->add_option("--m", m_range, "integral range lo..hi for lemma31");
    verify_cmd->add_option("--reports-dir", reports_dir, "directory with committed sweep reports");

    auto* sweep_cmd = app.add_subcommand("sweep", "exhaustive twisting-formula sweep");
    std::string modes_list = "strict,autoshell", out_file, chi_pi_list;
    int sweep_nmax = 1;
    sweep_cmd->add_option("--n-max", sweep_nmax, "maximal level")->required();
    sweep_cmd->add_option("--modes", modes_list, "comma list: strict | shell:v | autoshell");
    sweep_cmd->add_option("--out", out_file, "write the report to a file");
    sweep_cmd->add_option("--chi-pi", chi_pi_list, "comma list of chi(pi) values: 1 | zetaM^k");

    auto* table_cmd = app.add_subcommand("table", "epsilon factors of all characters of level <= n-max");
    int table_nmax = 1;
    table_cmd->add_option("--n-max", table_nmax, "maximal level")->required();

    std::vector<std::string> argv_copy = args;
    try {
        app.parse(std::vector<std::string>(argv_copy.rbegin(), argv_copy.rend()));
    } catch (const CLI::CallForHelp& e) {
        out << app.help() << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    }

    try {
        ValueOutput fmt{as_json, backend};
        auto need_prime = [&]() {
            if (p_value == 0) throw ParseError("--p is required");
            return Prime(p_value);
        };

        if (eps_cmd->parsed()) {
            Prime p = need_prime();
            MultChar chi = parse_char(char_spec, p, level);
            AddChar psi = parse_psi(psi_spec, p);
            if (!s_spec.empty()) {
                std::complex<double> s = parse_complex(s_spec);
                std::complex<double> v = epsilon_bh(chi, s, psi);
                if (as_json) out << Json{{"float", float_to_json(v)}}.dump(2) << "\n";
                else out << "eps_BH(chi, s, psi) = eps_D(chi omega_s, psi, dx_psi) = " << pretty(v) << "\n";
            } else {
                print_value(out, epsilon(chi, psi).value, fmt);
            }
            return 0;
        }
        if (gauss_cmd->parsed()) {
            Prime p = need_prime();
            MultChar chi = parse_char(char_spec, p, level);
            AddChar psi = parse_psi(psi_spec, p);
            print_value(out, HalfScaled(gauss_sum(chi, psi, gauss_m), 0, p.value()), fmt);
            return 0;
        }
        if (jacobi_cmd->parsed()) {
            Prime p = need_prime();
            MultChar chi1 = parse_char(char_spec, p, level);
            MultChar chi2 = parse_char(char2_spec, p, level);
            JacobiMode mode = mode_from_name(jmode);
            Cyclo j = mode.kind == JacobiMode::Kind::Strict
                          ? jacobi_strict(chi1, chi2, jacobi_t, level)
                          : jacobi_shell(chi1, chi2, level, mode.shell_v);
            print_value(out, HalfScaled(j, 0, p.value()), fmt);
            return 0;
        }
        if (cond_cmd->parsed()) {
            Prime p = need_prime();
            MultChar chi = parse_char(char_spec, p, level);
            if (as_json) out << Json{{"conductor", chi.conductor()}}.dump(2) << "\n";
            else out << chi.conductor() << "\n";
            return 0;
        }
        if (verify_cmd->parsed()) {
            if (list_suites) {
                for (const auto& id : suite_ids()) out << id << "\n";
                return 0;
            }
            SuiteOptions sopt;
            if (p_value != 0) sopt.p_filter = p_value;
            if (a_filter >= 0) sopt.a_filter = a_filter;
            if (n_filter >= 0) sopt.n_filter = n_filter;
            sopt.reports_dir = reports_dir;
            sopt.threads = threads;
            auto dots = m_range.find("..");
            if (dots != std::string::npos)
                sopt.m_range = {std::stoi(m_range.substr(0, dots)), std::stoi(m_range.substr(dots + 2))};
            std::vector<SuiteResult> results;
            if (suite_id == "all") results = run_all_suites(sopt);
            else results.push_back(run_suite(suite_id, sopt));
            bool all_ok = true;
            for (const auto& r : results) {
                out << (r.passed ? "PASS" : "FAIL") << "  " << r.id << "  (" << r.checks << " checks, "
                    << static_cast<long long>(r.millis) << " ms)";
                if (!r.passed) out << "  " << r.detail;
                out << "\n";
                all_ok = all_ok && r.passed;
            }
            return all_ok ? 0 : (strict_exit ? 2 : 0);
        }
        if (sweep_cmd->parsed()) {
            Prime p = need_prime();
            AddChar psi = parse_psi(psi_spec, p);
            SweepOptions sopts;
            sopts.max_group = env_max_group();
            sopts.force = force;
            sopts.threads = threads;
            if (!chi_pi_list.empty()) {
                sopts.chi_pi_values.clear();
                std::stringstream ss(chi_pi_list);
                std::string item;
                while (std::getline(ss, item, ',')) {
                    if (item == "1") sopts.chi_pi_values.push_back({1, 0});
                    else if (item.rfind("zeta", 0) == 0) {
                        auto caret = item.find('^');
                        i64 Mo = std::stoll(item.substr(4, caret == std::string::npos ? std::string::npos : caret - 4));
                        i64 k = caret == std::string::npos ? 1 : std::stoll(item.substr(caret + 1));
                        sopts.chi_pi_values.push_back({Mo, k});
                    } else throw ParseError("chi-pi entries must be 1 or zetaM^k");
                }
            }
            SweepReport rep = sweep(p, sweep_nmax, psi, parse_modes(modes_list), sopts);
            std::string payload = as_csv ? sweep_report_csv(rep) : sweep_report_to_json(rep).dump(2) + "\n";
            if (!out_file.empty()) {
                std::ofstream f(out_file, std::ios::binary);
                f << payload;
                out << "wrote " << out_file << "\n";
            } else {
                out << payload;
            }
            bool any_mismatch = !rep.mismatches.empty();
            return any_mismatch && strict_exit ? 2 : 0;
        }
        if (table_cmd->parsed()) {
            Prime p = need_prime();
            AddChar psi = parse_psi(psi_spec, p);
            i64 group = (p.value() - 1) * p.pow(table_nmax - 1);
            if (group > env_max_group() && !force)
                throw ScaleError("group order " + std::to_string(group) + " over the guard; use --force");
            Json rows = Json::array();
            std::string csv = "char,conductor,eps_exact,eps_re,eps_im\n";
            for (const auto& chi : enumerate_chars(p, table_nmax)) {
                EpsilonValue e = epsilon(chi, psi);
                std::complex<double> z = e.value.embed();
                if (as_json) {
                    rows.push_back(Json{{"char", char_to_json(chi)},
                                        {"conductor", chi.conductor()},
                                        {"eps", value_to_json(e.value)},
                                        {"float", float_to_json(z)}});
                } else if (as_csv) {
                    csv += "\"" + char_spec_string(chi) + "\"," + std::to_string(chi.conductor()) + ",\"" +
                           pretty(e.value) + "\"," + std::to_string(z.real()) + "," + std::to_string(z.imag()) + "\n";
                } else {
                    out << char_spec_string(chi) << "  a=" << chi.conductor() << "  eps=" << pretty(e.value)
                        << "  float=" << pretty(z) << "\n";
                }
            }
            if (as_json) out << rows.dump(2) << "\n";
            else if (as_csv) out << csv;
            return 0;
        }
        err << "no subcommand\n";
        return 1;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace epslab::cli
