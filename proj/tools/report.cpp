#include "report.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "corpus.hpp"
#include "mimostab/errors.hpp"
#include "mimostab/passivity.hpp"
#include "mimostab/robustness.hpp"
#include "mimostab/smith_mcmillan.hpp"

namespace mimostab::cli {

namespace {

using nlohmann::ordered_json;

ordered_json witnesses_json(const RootSet& witnesses) {
    ordered_json arr = ordered_json::array();
    for (const auto& w : witnesses) {
        ordered_json e;
        e["re"] = w.location.real();
        e["im"] = w.location.imag();
        e["multiplicity"] = w.multiplicity;
        arr.push_back(e);
    }
    return arr;
}

ordered_json verdict_json(const Verdict& v) {
    ordered_json j;
    j["status"] = to_string(v.status);
    j["method"] = v.method;
    j["witnesses"] = witnesses_json(v.witness_poles);
    return j;
}

ordered_json tolerances_json(const Tolerances& tol) {
    ordered_json j;
    j["root_match"] = tol.root_match;
    j["root_cluster_rel"] = tol.root_cluster_rel;
    j["marginal_band"] = tol.marginal_band;
    j["winding_exclusion"] = tol.winding_exclusion;
    j["pr_boundary"] = tol.pr_boundary;
    j["hinf_rel"] = tol.hinf_rel;
    j["indent_radius"] = tol.indent_radius;
    return j;
}

std::string verdict_line(const Verdict& v) {
    std::ostringstream os;
    os << to_string(v.status) << " [" << v.method << "]";
    if (!v.witness_poles.empty()) {
        os << ", witness poles:";
        for (const auto& w : v.witness_poles) {
            os << " (" << w.location.real();
            if (w.location.imag() != 0.0) os << (w.location.imag() > 0 ? "+" : "") << w.location.imag() << "j";
            os << ")";
            if (w.multiplicity > 1) os << "^" << w.multiplicity;
        }
    }
    return os.str();
}

std::string sanitize(const std::string& name) {
    std::string out;
    for (char c : name) out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
    return out;
}

std::string curve_path(const RunOptions& opt, const std::string& name, const std::string& kind) {
    return (std::filesystem::path(*opt.curves_dir) / (sanitize(name) + "_" + kind + ".csv")).string();
}

void emit_json(const RunOptions& opt, const ordered_json& report) {
    if (!opt.json_path) return;
    std::ofstream os(*opt.json_path);
    os << report.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// Corpus expectation checking
// ---------------------------------------------------------------------------

bool status_matches(const Verdict& v, const std::string& expected) {
    if (expected == "stable") return v.status == StabilityStatus::Stable;
    if (expected == "unstable") return v.status == StabilityStatus::Unstable;
    if (expected == "marginal") return v.status == StabilityStatus::Marginal;
    if (expected == "not_stable") return v.status != StabilityStatus::Stable;
    return false;
}

bool witnesses_match(const Verdict& v, const ordered_json& expect) {
    if (!expect.contains("witnesses")) return true;
    for (const auto& w : expect.at("witnesses")) {
        const Complex target(w.at("re").get<double>(), w.at("im").get<double>());
        const double tol = w.at("tol").get<double>();
        bool found = false;
        for (const auto& cand : v.witness_poles)
            if (std::abs(cand.location - target) <= tol) found = true;
        if (!found) return false;
    }
    return true;
}

struct CheckOutcome {
    bool pass = false;
    std::string detail;
};

CheckOutcome check_verdict(const Verdict& v, const ordered_json& expect) {
    CheckOutcome out;
    out.pass = status_matches(v, expect.at("status").get<std::string>()) && witnesses_match(v, expect);
    out.detail = verdict_line(v);
    return out;
}

CheckOutcome run_corpus_check(const ordered_json& item, const ordered_json& check,
                              const RunOptions& opt) {
    const std::string kind = check.at("check").get<std::string>();
    const auto& expect = check.contains("expect") ? check.at("expect") : ordered_json::object();
    const SystemDescription sys = parse_system_json(item.at("system").dump());
    const TransferMatrix p = sys.to_transfer_matrix(opt.tol);

    if (kind == "direct") {
        return check_verdict(direct_stability(p, nullptr, opt.tol), expect);
    }
    if (kind == "theorem1") {
        const Theorem1Result r = theorem1_check(p, opt.tol);
        CheckOutcome out;
        out.pass = status_matches(r.verdict, expect.at("status").get<std::string>()) &&
                   r.hidden_mode == expect.at("hidden_mode").get<bool>() &&
                   r.plant_unstable_count == expect.at("unstable_pole_count").get<int>();
        std::ostringstream os;
        os << verdict_line(r.verdict) << ", hidden_mode=" << (r.hidden_mode ? "yes" : "no")
           << ", unstable poles (Smith-McMillan)=" << r.plant_unstable_count;
        out.detail = os.str();
        return out;
    }
    if (kind == "det_value") {
        const RationalFunction d = (TransferMatrix::identity(p.rows()) + p).det();
        const RationalFunction want(Polynomial(expect.at("num").get<std::vector<double>>()),
                                    Polynomial(expect.at("den").get<std::vector<double>>()));
        CheckOutcome out;
        out.pass = d.almost_equal(want, expect.at("tol").get<double>());
        out.detail = "det(I+P) = " + d.str();
        return out;
    }
    if (kind == "det_ip_pair_equal" || kind == "det_p_pair_equal") {
        const SystemDescription sys2 = parse_system_json(item.at("second_system").dump());
        const TransferMatrix q = sys2.to_transfer_matrix(opt.tol);
        const bool of_ip = (kind == "det_ip_pair_equal");
        const RationalFunction d1 =
            of_ip ? (TransferMatrix::identity(p.rows()) + p).det() : p.det();
        const RationalFunction d2 =
            of_ip ? (TransferMatrix::identity(q.rows()) + q).det() : q.det();
        const double tol = expect.at("tol").get<double>();
        CheckOutcome out;
        out.pass = d1.almost_equal(d2, tol);
        if (expect.contains("num")) {
            const RationalFunction want(Polynomial(expect.at("num").get<std::vector<double>>()),
                                        Polynomial(expect.at("den").get<std::vector<double>>()));
            out.pass = out.pass && d1.almost_equal(want, tol);
        }
        out.detail = (of_ip ? "det(I+P) = " : "det(P) = ") + d1.str();
        return out;
    }
    if (kind == "det_nyquist") {
        const DetNyquistResult r = det_nyquist(p, build_grid(p, opt.grid, opt.tol), opt.tol);
        CheckOutcome out = check_verdict(r.verdict, expect);
        if (expect.contains("winding_abs"))
            out.pass = out.pass && std::abs(r.winding) == expect.at("winding_abs").get<int>();
        out.detail += ", winding=" + std::to_string(r.winding) +
                      ", required=" + std::to_string(r.required);
        return out;
    }
    if (kind == "gnc") {
        const GncResult r = generalized_nyquist(p, opt.grid, opt.tol);
        CheckOutcome out = check_verdict(r.verdict, expect);
        if (expect.contains("merged_curves"))
            out.pass = out.pass &&
                       static_cast<int>(r.curves.size()) == expect.at("merged_curves").get<int>();
        if (expect.contains("branch_closed")) {
            const auto want = expect.at("branch_closed").get<std::vector<bool>>();
            for (size_t i = 0; i < want.size(); ++i)
                out.pass = out.pass && r.loci.branch_closed(static_cast<int>(i), opt.tol) == want[i];
        }
        if (expect.contains("merged_winding_abs")) {
            int total_abs = 0;
            for (const auto& c : r.curves)
                total_abs += std::abs(winding_number(c, Complex(-1.0, 0.0), opt.tol));
            out.pass = out.pass && total_abs == expect.at("merged_winding_abs").get<int>();
        }
        out.detail += ", curves=" + std::to_string(r.curves.size()) +
                      ", total winding=" + std::to_string(r.total_winding);
        return out;
    }
    if (kind == "margins") {
        const MarginReport m = uniform_margins(p, opt.grid, opt.tol);
        CheckOutcome out;
        out.pass = true;
        if (expect.at("k1").is_string()) {
            out.pass = out.pass && m.k1_zero_limit;
        } else {
            out.pass = out.pass && !m.k1_zero_limit &&
                       std::abs(m.k1 - expect.at("k1").get<double>()) <=
                           expect.at("tol").get<double>();
        }
        if (expect.at("k2").is_string()) {
            out.pass = out.pass && std::isinf(m.k2);
        } else {
            out.pass = out.pass && std::abs(m.k2 - expect.at("k2").get<double>()) <=
                                       expect.at("tol").get<double>();
        }
        out.pass = out.pass && std::abs(m.theta1 - expect.at("theta1").get<double>()) <=
                                   expect.at("tol").get<double>();
        std::ostringstream os;
        os << "k1=" << (m.k1_zero_limit ? std::string("0 (limit)") : std::to_string(m.k1))
           << ", k2=" << (std::isinf(m.k2) ? std::string("inf") : std::to_string(m.k2))
           << ", theta1=" << m.theta1;
        out.detail = os.str();
        return out;
    }
    if (kind == "perturbed") {
        ordered_json u_doc = check.at("U");
        const SystemDescription u_sys = parse_system_json(u_doc.dump());
        const TransferMatrix u = u_sys.to_transfer_matrix(opt.tol);
        return check_verdict(perturbed_verdict(p, u, opt.tol), expect);
    }
    if (kind == "diag_gain_sweep") {
        CheckOutcome out;
        out.pass = true;
        for (const auto& gains : check.at("gains")) {
            TransferMatrix u(p.rows(), p.cols());
            for (int i = 0; i < p.rows(); ++i)
                u.at(i, i) = RationalFunction::constant(gains.at(static_cast<size_t>(i)).get<double>());
            const Verdict v = perturbed_verdict(p, u, opt.tol);
            out.pass = out.pass && status_matches(v, expect.at("status").get<std::string>());
        }
        out.detail = "all sampled diagonal gain loops checked";
        return out;
    }
    if (kind == "loci_param_independent") {
        const std::string param = check.at("param").get<std::string>();
        const auto values = check.at("values").get<std::vector<double>>();
        std::vector<LocusSet> loci;
        for (double v : values) {
            ordered_json sys_doc = item.at("system");
            sys_doc["parameters"][param] = v;
            const TransferMatrix pv =
                parse_system_json(sys_doc.dump()).to_transfer_matrix(opt.tol);
            loci.push_back(eigen_loci(pv, build_grid(pv, opt.grid, opt.tol), opt.tol));
        }
        double max_dev = 0.0;
        bool comparable = loci.size() == 2 && loci[0].branches.size() == loci[1].branches.size();
        if (comparable)
            for (size_t b = 0; b < loci[0].branches.size(); ++b) {
                comparable = comparable && loci[0].branches[b].values.size() ==
                                               loci[1].branches[b].values.size();
                if (!comparable) break;
                for (size_t k = 0; k < loci[0].branches[b].values.size(); ++k)
                    max_dev = std::max(max_dev, std::abs(loci[0].branches[b].values[k] -
                                                         loci[1].branches[b].values[k]));
            }
        CheckOutcome out;
        out.pass = comparable && max_dev < expect.at("max_deviation").get<double>();
        std::ostringstream os;
        os << "max locus deviation across parameter values = " << max_dev;
        out.detail = os.str();
        return out;
    }
    if (kind == "segment") {
        const SegmentCheck r = siso_segment_check(p, opt.grid, opt.tol);
        CheckOutcome out;
        out.pass = r.crosses_segment == expect.at("crosses_segment").get<bool>() &&
                   r.limit_on_segment == expect.at("limit_on_segment").get<bool>();
        std::ostringstream os;
        os << "crosses_segment=" << (r.crosses_segment ? "yes" : "no")
           << ", limit_on_segment=" << (r.limit_on_segment ? "yes" : "no");
        out.detail = os.str();
        return out;
    }
    if (kind == "passivity") {
        const PassivityClass c = classify_pr(p, opt.tol);
        CheckOutcome out;
        out.pass = to_string(c.tier) == expect.at("tier").get<std::string>();
        out.detail = "tier: " + to_string(c.tier);
        return out;
    }
    if (kind == "passivity_interconnect_self") {
        const InterconnectResult r = passivity_interconnect(p, p, opt.tol);
        CheckOutcome out;
        out.pass = r.theorem_applies == expect.at("theorem_applies").get<bool>();
        const bool want_stable = expect.at("stable").get<bool>();
        out.pass = out.pass && ((r.verdict.status == StabilityStatus::Stable) == want_stable);
        out.pass = out.pass && witnesses_match(r.verdict, expect);
        out.detail = std::string("theorem ") + (r.theorem_applies ? "applies" : "inconclusive") +
                     "; " + verdict_line(r.verdict);
        return out;
    }
    if (kind == "mixed_self") {
        const MixedInterconnectResult r = mixed_interconnect(p, p, opt.tol);
        CheckOutcome out;
        out.pass = r.theorem_applies == expect.at("theorem_applies").get<bool>();
        if (expect.contains("status"))
            out.pass = out.pass && status_matches(r.verdict, expect.at("status").get<std::string>());
        std::ostringstream os;
        os << "theorem " << (r.theorem_applies ? "applies" : "inconclusive");
        if (r.common_c) os << " at common c = " << *r.common_c;
        out.detail = os.str();
        return out;
    }
    if (kind == "smallgain") {
        const SystemDescription sys2 = parse_system_json(item.at("second_system").dump());
        const TransferMatrix q = sys2.to_transfer_matrix(opt.tol);
        const SmallGainResult r = small_gain_check(p, q, opt.tol.hinf_rel, opt.tol);
        CheckOutcome out;
        out.pass = r.applies == expect.at("applies").get<bool>();
        if (expect.contains("product_norm_max"))
            out.pass = out.pass && r.product_norm <= expect.at("product_norm_max").get<double>();
        if (r.applies && expect.contains("status"))
            out.pass = out.pass &&
                       status_matches(*r.verdict_if_applies, expect.at("status").get<std::string>());
        std::ostringstream os;
        os << "applies=" << (r.applies ? "yes" : "no") << ", ||G1 G2||_inf = " << r.product_norm;
        out.detail = os.str();
        return out;
    }
    throw Error("unknown corpus check '" + kind + "'");
}

void write_item_curves(const ordered_json& item, const RunOptions& opt) {
    if (!opt.curves_dir) return;
    const SystemDescription sys = parse_system_json(item.at("system").dump());
    const TransferMatrix p = sys.to_transfer_matrix(opt.tol);
    if (!p.is_square()) return;
    std::filesystem::create_directories(*opt.curves_dir);
    const FrequencyGrid grid = build_grid(p, opt.grid, opt.tol);
    const DetNyquistResult dn = det_nyquist(p, grid, opt.tol);
    write_curve_csv(curve_path(opt, sys.name, "det"), dn.curve);
    const LocusSet loci = eigen_loci(p, grid, opt.tol);
    write_loci_csv(curve_path(opt, sys.name, "loci"), loci);
    const auto curves = merge_loci(loci, opt.tol);
    for (size_t k = 0; k < curves.size(); ++k)
        write_curve_csv(curve_path(opt, sys.name, "merged_" + std::to_string(k)), curves[k]);
}

} // namespace

int run_paper_suite(const RunOptions& opt, std::ostream& out) {
    const std::vector<CorpusItem> corpus =
        opt.corpus_dir ? load_corpus_dir(*opt.corpus_dir) : paper_corpus();
    ordered_json report;
    report["command"] = "paper-suite";
    report["tolerances"] = tolerances_json(opt.tol);
    report["items"] = ordered_json::array();
    bool all_pass = true;
    for (const auto& item : corpus) {
        ordered_json item_json;
        item_json["name"] = item.name;
        item_json["checks"] = ordered_json::array();
        out << item.name << "\n";
        for (const auto& check : item.doc.at("checks")) {
            CheckOutcome oc;
            try {
                oc = run_corpus_check(item.doc, check, opt);
            } catch (const std::exception& e) {
                oc.pass = false;
                oc.detail = std::string("error: ") + e.what();
            }
            all_pass = all_pass && oc.pass;
            const std::string kind = check.at("check").get<std::string>();
            out << "  [" << (oc.pass ? "PASS" : "FAIL") << "] " << kind << ": " << oc.detail
                << "\n";
            ordered_json cj;
            cj["check"] = kind;
            cj["pass"] = oc.pass;
            cj["detail"] = oc.detail;
            item_json["checks"].push_back(cj);
        }
        // Curve exports for the merged-trajectory showcase system.
        if (item.name == "loop_gain_2x2") {
            try {
                write_item_curves(item.doc, opt);
            } catch (const std::exception& e) {
                out << "  curve export failed: " << e.what() << "\n";
            }
        }
        report["items"].push_back(item_json);
    }
    report["pass"] = all_pass;
    emit_json(opt, report);
    out << (all_pass ? "paper-suite: all expectations hold\n"
                     : "paper-suite: MISMATCHES FOUND\n");
    return all_pass ? kOk : kCorpusMismatch;
}

int run_command(const std::string& command, const std::vector<SystemDescription>& systems,
                const RunOptions& opt, std::ostream& out) {
    ordered_json report;
    report["command"] = command;
    report["tolerances"] = tolerances_json(opt.tol);
    ordered_json curves = ordered_json::array();
    const SystemDescription& sys = systems.at(0);
    report["system"] = sys.name;
    const TransferMatrix p = sys.to_transfer_matrix(opt.tol);

    if (command == "stability") {
        const Verdict v = direct_stability(p, nullptr, opt.tol);
        const Theorem1Result t1 = theorem1_check(p, opt.tol);
        report["verdict"] = verdict_json(v);
        report["theorem1"] = verdict_json(t1.verdict);
        report["theorem1"]["hidden_mode"] = t1.hidden_mode;
        report["theorem1"]["unstable_pole_count"] = t1.plant_unstable_count;
        out << sys.name << ": " << verdict_line(v) << "\n";
        out << "  determinant test: " << verdict_line(t1.verdict)
            << (t1.hidden_mode ? " (hidden unstable mode)" : "") << "\n";
        out << "  open-loop unstable poles (Smith-McMillan, with multiplicity): "
            << t1.plant_unstable_count << "\n";
    } else if (command == "nyquist") {
        const FrequencyGrid grid = build_grid(p, opt.grid, opt.tol);
        const DetNyquistResult r = det_nyquist(p, grid, opt.tol);
        const Verdict oracle = direct_stability(p, nullptr, opt.tol);
        report["verdict"] = verdict_json(r.verdict);
        report["winding"] = r.winding;
        report["required"] = r.required;
        report["oracle_direct"] = to_string(oracle.status);
        out << sys.name << ": " << verdict_line(r.verdict) << "\n";
        out << "  encirclements of 0: " << r.winding << " (required: " << r.required << ")\n";
        out << "  direct cross-check: " << to_string(oracle.status) << "\n";
        if (opt.curves_dir) {
            std::filesystem::create_directories(*opt.curves_dir);
            const std::string path = curve_path(opt, sys.name, "det");
            write_curve_csv(path, r.curve);
            curves.push_back(path);
        }
    } else if (command == "gnc") {
        const GncResult r = generalized_nyquist(p, opt.grid, opt.tol);
        const Verdict oracle = direct_stability(p, nullptr, opt.tol);
        report["verdict"] = verdict_json(r.verdict);
        report["total_winding"] = r.total_winding;
        report["required"] = r.required;
        report["merged_curves"] = r.curves.size();
        report["oracle_direct"] = to_string(oracle.status);
        out << sys.name << ": " << verdict_line(r.verdict) << "\n";
        out << "  merged curves: " << r.curves.size() << ", total encirclements of -1: "
            << r.total_winding << " (required: " << r.required << ")\n";
        out << "  direct cross-check: " << to_string(oracle.status) << "\n";
        if (opt.curves_dir) {
            std::filesystem::create_directories(*opt.curves_dir);
            const std::string lpath = curve_path(opt, sys.name, "loci");
            write_loci_csv(lpath, r.loci);
            curves.push_back(lpath);
            for (size_t k = 0; k < r.curves.size(); ++k) {
                const std::string cpath = curve_path(opt, sys.name, "merged_" + std::to_string(k));
                write_curve_csv(cpath, r.curves[k]);
                curves.push_back(cpath);
            }
        }
    } else if (command == "margins") {
        const MarginReport m = uniform_margins(p, opt.grid, opt.tol);
        ordered_json mj;
        mj["k1"] = m.k1;
        mj["k1_zero_limit"] = m.k1_zero_limit;
        if (std::isinf(m.k2)) mj["k2"] = "inf";
        else mj["k2"] = m.k2;
        mj["theta1"] = m.theta1;
        ordered_json pcs = ordered_json::array();
        for (const auto& c : m.per_curve) {
            ordered_json cj;
            cj["k1"] = c.k1;
            cj["k1_zero_limit"] = c.k1_zero_limit;
            if (std::isinf(c.k2)) cj["k2"] = "inf";
            else cj["k2"] = c.k2;
            cj["theta1"] = c.theta1;
            pcs.push_back(cj);
        }
        mj["per_curve"] = pcs;
        report["margins"] = mj;
        out << sys.name << ": uniform margins (U = kI / e^{j theta} I)\n";
        out << "  gain interval: ("
            << (m.k1_zero_limit ? std::string("0") : std::to_string(m.k1)) << ", "
            << (std::isinf(m.k2) ? std::string("inf") : std::to_string(m.k2)) << ")\n";
        out << "  phase margin theta1: " << m.theta1 << " rad\n";
    } else if (command == "smallgain" || command == "mixed") {
        const SystemDescription& sys2 = systems.at(1);
        const TransferMatrix q = sys2.to_transfer_matrix(opt.tol);
        report["system2"] = sys2.name;
        if (command == "smallgain") {
            const SmallGainResult r = small_gain_check(p, q, opt.tol.hinf_rel, opt.tol);
            report["smallgain"]["applies"] = r.applies;
            report["smallgain"]["product_norm"] = r.product_norm;
            out << sys.name << " / " << sys2.name << ": small gain\n";
            out << "  ||G1 G2||_inf = " << r.product_norm << "\n";
            if (r.applies) {
                report["verdict"] = verdict_json(*r.verdict_if_applies);
                out << "  " << verdict_line(*r.verdict_if_applies) << "\n";
            } else {
                const Verdict fb = direct_stability(p * q, nullptr, opt.tol);
                report["verdict"] = verdict_json(fb);
                report["smallgain"]["note"] =
                    "small-gain certificate unavailable; direct check reported";
                out << "  inconclusive by small gain; direct check: " << verdict_line(fb) << "\n";
            }
        } else {
            const MixedInterconnectResult r = mixed_interconnect(p, q, opt.tol);
            report["mixed"]["theorem_applies"] = r.theorem_applies;
            if (r.common_c) report["mixed"]["common_c"] = *r.common_c;
            report["verdict"] = verdict_json(r.verdict);
            out << sys.name << " / " << sys2.name << ": mixed small-gain/positive-real\n";
            if (r.common_c) out << "  common crossover c = " << *r.common_c << "\n";
            out << "  " << verdict_line(r.verdict) << "\n";
        }
    } else if (command == "bounds") {
        const UncertaintyModel add = uncertainty_bound(p, UncertaintyKind::Additive,
                                                       opt.tol.hinf_rel, opt.tol);
        const UncertaintyModel mul = uncertainty_bound(p, UncertaintyKind::Multiplicative,
                                                       opt.tol.hinf_rel, opt.tol);
        report["bounds"]["additive"] = add.bound;
        report["bounds"]["multiplicative"] = mul.bound;
        out << sys.name << ": guaranteed uncertainty bounds (stable perturbations)\n";
        out << "  additive:        ||Delta||_inf < " << add.bound << "\n";
        out << "  multiplicative:  ||Delta||_inf < " << mul.bound << "\n";
    } else if (command == "passivity") {
        const PassivityClass c = classify_pr(p, opt.tol);
        ordered_json pj;
        pj["tier"] = to_string(c.tier);
        if (c.witnesses.failing_frequency) pj["failing_frequency"] = *c.witnesses.failing_frequency;
        if (c.witnesses.failing_pole) {
            pj["failing_pole"]["re"] = c.witnesses.failing_pole->real();
            pj["failing_pole"]["im"] = c.witnesses.failing_pole->imag();
        }
        if (c.witnesses.epsilon) pj["epsilon"] = *c.witnesses.epsilon;
        if (c.witnesses.delta) pj["delta"] = *c.witnesses.delta;
        pj["min_hermitian_eig"] = c.witnesses.min_hermitian_eig;
        report["passivity"] = pj;
        out << sys.name << ": " << to_string(c.tier) << "\n";
        if (c.witnesses.epsilon) out << "  shift certificate epsilon = " << *c.witnesses.epsilon << "\n";
        if (c.witnesses.delta) out << "  uniform delta = " << *c.witnesses.delta << "\n";
        if (c.witnesses.failing_frequency)
            out << "  boundary frequency: " << *c.witnesses.failing_frequency << " rad/s\n";
    } else {
        throw Error("unknown command '" + command + "'");
    }
    if (!curves.empty()) report["curves"] = curves;
    emit_json(opt, report);
    return kOk;
}

} // namespace mimostab::cli
