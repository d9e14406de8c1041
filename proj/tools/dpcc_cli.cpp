// Command-line front end: build schemes, verify them, run the impossibility
// searches, emit trade-off curves and subpacketization comparisons.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dpcc/constructions.hpp"
#include "dpcc/search.hpp"
#include "dpcc/serialize.hpp"
#include "dpcc/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text;
}

nlohmann::json violation_json(const dpcc::Violation& v) {
    return {{"kind", dpcc::to_string(v.kind)}, {"user", v.user},       {"demand", v.demand},
            {"keys", v.keys},                  {"branch", v.branch},   {"detail", v.detail}};
}

nlohmann::json search_report_json(const dpcc::SearchReport& rep) {
    nlohmann::json j;
    j["name"] = rep.name;
    j["candidatesExamined"] = rep.candidates_examined;
    j["feasibleFound"] = rep.feasible_found;
    j["witnesses"] = rep.witnesses;
    j["subLemmaChecks"] = rep.sub_lemma_checks;
    j["elapsedSeconds"] = rep.elapsed_seconds;
    j["privacyCondition"] = rep.privacy_condition;
    j["scope"] = rep.scope;
    return j;
}

void print_search_report(const dpcc::SearchReport& rep, const std::string& format) {
    if (format == "table") {
        std::cout << "search:              " << rep.name << "\n"
                  << "candidates examined: " << rep.candidates_examined << "\n"
                  << "feasible found:      " << rep.feasible_found << "\n";
        for (const auto& [name, ok] : rep.sub_lemma_checks)
            std::cout << "sub-lemma " << name << ":  " << (ok ? "pass" : "FAIL") << "\n";
        for (const auto& w : rep.witnesses) std::cout << "witness: " << w << "\n";
        std::cout << "elapsed: " << rep.elapsed_seconds << " s\n";
    } else {
        std::cout << search_report_json(rep).dump(2) << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"demand-private coded caching toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "json";
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv", "table"}));

    // ---- build ----
    auto* build = app.add_subcommand("build", "construct a scheme and emit its JSON document");
    build->require_subcommand(1);
    std::string out_path;
    build->add_option("--out", out_path, "write to file instead of stdout");

    auto* b_mn = build->add_subcommand("mn", "Maddah-Ali--Niesen non-private scheme");
    unsigned mn_users = 0, mn_files = 0, mn_t = 0;
    b_mn->add_option("--users", mn_users, "K")->required();
    b_mn->add_option("--files", mn_files, "N")->required();
    b_mn->add_option("--t", mn_t, "cached fraction parameter t")->required();

    auto* b_pda = build->add_subcommand("pda", "non-private scheme from a placement delivery array");
    std::string pda_path;
    unsigned pda_files = 0;
    b_pda->add_option("--file", pda_path, "PDA text file, '-' for stdin")->required();
    b_pda->add_option("--files", pda_files, "N")->required();

    build->add_subcommand("table1", "direct (2,2; 1, 2/3) private scheme, subpacketization 3");

    auto* b_triv = build->add_subcommand("trivial", "empty-cache or full-cache endpoint scheme");
    std::string triv_mode;
    unsigned triv_files = 0, triv_users = 0;
    b_triv->add_option("--mode", triv_mode, "empty|full")->required()->check(CLI::IsMember({"empty", "full"}));
    b_triv->add_option("--files", triv_files, "N")->required();
    b_triv->add_option("--users", triv_users, "K")->required();

    auto* b_priv = build->add_subcommand("private", "privatize a deterministic NK-user scheme");
    std::string priv_from;
    b_priv->add_option("--from", priv_from, "source scheme JSON, '-' for stdin")->required();

    auto* b_part = build->add_subcommand("partial", "partially private scheme from an LK-user scheme");
    std::string part_from;
    unsigned part_level = 0;
    b_part->add_option("--from", part_from, "source scheme JSON, '-' for stdin")->required();
    b_part->add_option("--level", part_level, "ambiguity level L")->required();

    auto* b_dual = build->add_subcommand("dual", "interchange caches and transmissions of a (2,2) scheme");
    std::string dual_from;
    b_dual->add_option("--from", dual_from, "source scheme JSON, '-' for stdin")->required();

    auto* b_ts = build->add_subcommand("timeshare", "file-splitting combination of two schemes");
    std::string ts_a, ts_b, ts_alpha;
    b_ts->add_option("--a", ts_a, "first scheme JSON")->required();
    b_ts->add_option("--b", ts_b, "second scheme JSON")->required();
    b_ts->add_option("--alpha", ts_alpha, "weight of the first scheme, rational p/q")->required();

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "check correctness and privacy of a scheme");
    std::string verify_path, privacy_mode = "exact";
    std::uint64_t cap = 10'000'000;
    unsigned min_ambiguity = 2;
    verify->add_option("--scheme", verify_path, "scheme JSON, '-' for stdin")->required();
    verify->add_option("--privacy", privacy_mode, "privacy check to run")
        ->check(CLI::IsMember({"exact", "ambiguity", "weak"}));
    verify->add_option("--cap", cap, "privacy enumeration cap");
    verify->add_option("--min-ambiguity", min_ambiguity, "required ambiguity for --privacy ambiguity");

    // ---- search ----
    auto* search = app.add_subcommand("search", "exhaustive impossibility searches");
    search->require_subcommand(1);
    bool no_privacy_condition = false, progress = false, restrict_structural = false;
    unsigned threads = 1;
    search->add_flag("--no-privacy-condition", no_privacy_condition,
                     "control run without the privacy-necessary condition");
    search->add_flag("--progress", progress, "emit progress to stderr");
    search->add_option("--threads", threads, "worker pool size");
    auto* s_sub2 = search->add_subcommand("sub2", "no (2,2;1,1/2) private linear scheme at subpacketization 2");
    auto* s_sub3 = search->add_subcommand("sub3-uncoded",
                                          "no (2,2;1,2/3) private scheme with uncoded caches at subpacketization 3");
    s_sub3->add_flag("--restrict-structural", restrict_structural,
                     "only caches with two subfiles of one file and one of the other");

    // ---- tradeoff ----
    auto* tradeoff = app.add_subcommand("tradeoff", "achievable (M,R) vertices for (2,2) private schemes");
    unsigned to_files = 2, to_users = 2;
    tradeoff->add_option("--files", to_files, "N (only 2 supported)");
    tradeoff->add_option("--users", to_users, "K (only 2 supported)");

    // ---- compare-subpack ----
    auto* compare = app.add_subcommand("compare-subpack",
                                       "subpacketization of full vs partial privacy constructions");
    unsigned cs_files = 0, cs_users = 0, cs_level = 0;
    std::string cs_memory;
    compare->add_option("--files", cs_files, "N")->required();
    compare->add_option("--users", cs_users, "K")->required();
    compare->add_option("--memory", cs_memory, "M, rational p/q")->required();
    compare->add_option("--level", cs_level, "ambiguity level L")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (build->parsed()) {
            dpcc::Scheme s;
            if (b_mn->parsed()) {
                s = dpcc::build_mn(mn_users, mn_files, mn_t);
            } else if (b_pda->parsed()) {
                s = dpcc::build_from_pda(dpcc::parse_pda(read_input(pda_path)), pda_files);
            } else if (b_triv->parsed()) {
                s = dpcc::build_trivial(triv_files, triv_users,
                                        triv_mode == "empty" ? dpcc::TrivialMode::EmptyCache
                                                             : dpcc::TrivialMode::FullCache);
            } else if (b_priv->parsed()) {
                s = dpcc::privatize(dpcc::deserialize_scheme(read_input(priv_from)));
            } else if (b_part->parsed()) {
                s = dpcc::build_partial_private(dpcc::deserialize_scheme(read_input(part_from)), part_level);
            } else if (b_dual->parsed()) {
                s = dpcc::dualize(dpcc::deserialize_scheme(read_input(dual_from)));
            } else if (b_ts->parsed()) {
                s = dpcc::time_share(dpcc::deserialize_scheme(read_input(ts_a)),
                                     dpcc::deserialize_scheme(read_input(ts_b)),
                                     dpcc::parse_rational(ts_alpha));
            } else {
                s = dpcc::build_table1();
            }
            write_output(out_path, dpcc::serialize_scheme(s));
            return kExitOk;
        }

        if (verify->parsed()) {
            dpcc::Scheme s = dpcc::deserialize_scheme(read_input(verify_path));
            auto [memory, rate] = dpcc::rate_and_memory(s);
            auto violations = dpcc::verify_correctness(s);
            bool failed = !violations.empty();

            nlohmann::json j;
            j["users"] = s.params.users;
            j["files"] = s.params.files;
            j["subpack"] = s.params.subpack;
            j["memory"] = dpcc::to_string(memory);
            j["rate"] = dpcc::to_string(rate);
            j["provenance"] = s.provenance;
            j["correct"] = violations.empty();
            nlohmann::json vlist = nlohmann::json::array();
            for (const auto& v : violations) vlist.push_back(violation_json(v));
            j["violations"] = std::move(vlist);

            if (privacy_mode == "exact" || privacy_mode == "ambiguity") {
                dpcc::PrivacyReport rep = dpcc::privacy_report(s, cap);
                nlohmann::json pj;
                pj["exactPrivate"] = rep.exact_private;
                pj["minAmbiguity"] = rep.min_ambiguity;
                pj["maxMutualInfoBits"] =
                    rep.mutual_info_exact ? dpcc::to_string(rep.max_mutual_info_bits) : "inexact";
                pj["maxMutualInfoBitsApprox"] = rep.max_mutual_info_bits_approx;
                pj["scenarios"] = rep.scenarios;
                j["privacy"] = std::move(pj);
                if (privacy_mode == "exact" && !rep.exact_private) failed = true;
                if (privacy_mode == "ambiguity" && rep.min_ambiguity < min_ambiguity) failed = true;
            } else {
                auto weak = dpcc::weak_privacy_check(s);
                nlohmann::json wlist = nlohmann::json::array();
                for (const auto& v : weak) wlist.push_back(violation_json(v));
                j["privacy"] = {{"weakCheckViolations", std::move(wlist)}};
                if (!weak.empty()) failed = true;
            }
            j["pass"] = !failed;

            if (format == "table") {
                std::cout << "scheme:  (" << s.params.users << "," << s.params.files << "; "
                          << dpcc::to_string(memory) << ", " << dpcc::to_string(rate) << ") f="
                          << s.params.subpack << "\n"
                          << "correct: " << (violations.empty() ? "yes" : "NO") << " ("
                          << violations.size() << " violations)\n"
                          << "privacy: " << j["privacy"].dump() << "\n"
                          << "result:  " << (failed ? "FAIL" : "pass") << "\n";
            } else {
                std::cout << j.dump(2) << "\n";
            }
            return failed ? kExitVerificationFailure : kExitOk;
        }

        if (search->parsed()) {
            dpcc::SearchReport rep;
            if (s_sub2->parsed()) {
                rep = dpcc::search_sub2(!no_privacy_condition);
            } else {
                dpcc::Sub3Options opts;
                opts.privacy_condition = !no_privacy_condition;
                opts.restrict_structural = restrict_structural;
                opts.threads = threads;
                opts.progress = progress;
                rep = dpcc::search_sub3_uncoded(opts);
            }
            print_search_report(rep, format);
            return kExitOk;
        }

        if (tradeoff->parsed()) {
            if (to_files != 2 || to_users != 2)
                throw std::invalid_argument("tradeoff: only the (2,2) curve is constructed");
            auto points = dpcc::tradeoff_curve();
            if (format == "csv") {
                std::cout << "M,R,label\n";
                for (const auto& pt : points)
                    std::cout << dpcc::to_string(pt.memory) << "," << dpcc::to_string(pt.rate) << ","
                              << pt.label << "\n";
            } else if (format == "table") {
                for (const auto& pt : points)
                    std::cout << "(" << dpcc::to_string(pt.memory) << ", " << dpcc::to_string(pt.rate)
                              << ")  " << pt.label << "\n";
            } else {
                nlohmann::json arr = nlohmann::json::array();
                for (const auto& pt : points)
                    arr.push_back({{"M", dpcc::to_string(pt.memory)},
                                   {"R", dpcc::to_string(pt.rate)},
                                   {"label", pt.label}});
                std::cout << arr.dump(2) << "\n";
            }
            return kExitOk;
        }

        if (compare->parsed()) {
            auto [full, partial] =
                dpcc::subpack_comparison(cs_files, cs_users, dpcc::parse_rational(cs_memory), cs_level);
            if (format == "table") {
                std::cout << "full-privacy subpacketization:    " << full.str() << "\n"
                          << "partial-privacy subpacketization: " << partial.str() << "\n";
            } else if (format == "csv") {
                std::cout << "full,partial\n" << full.str() << "," << partial.str() << "\n";
            } else {
                nlohmann::json j;
                j["fullPrivacySubpack"] = full.str();
                j["partialPrivacySubpack"] = partial.str();
                std::cout << j.dump(2) << "\n";
            }
            return kExitOk;
        }
    } catch (const dpcc::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerificationFailure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerificationFailure;
    }
    return kExitUsage;
}
