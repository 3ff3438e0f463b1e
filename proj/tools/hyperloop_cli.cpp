// Command-line front end; talks to the library only through hyperloop.h.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hyperloop/hyperloop.h"

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kPrecondition = 3 };

struct Options {
    std::string out;
    bool timing = false;
};

int status_exit(hl_status s) {
    std::cerr << "error: " << hl_last_error() << "\n";
    return hl_status_is_precondition(s) ? kPrecondition : kUsage;
}

int emit(const Options& opt, char* json) {
    std::string text(json);
    hl_string_free(json);
    text += "\n";
    if (opt.out.empty()) {
        std::cout << text;
        return kPass;
    }
    std::ofstream f(opt.out, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot write " << opt.out << "\n";
        return kUsage;
    }
    f << text;
    return kPass;
}

int emit_report(const Options& opt, hl_report* r) {
    char* json = nullptr;
    hl_status s = hl_report_json(r, opt.timing ? 1 : 0, &json);
    if (s != HL_OK) {
        hl_report_free(r);
        return status_exit(s);
    }
    size_t pass = 0, fail = 0, skip = 0;
    hl_report_counts(r, &pass, &fail, &skip);
    bool ok = hl_report_passed(r) != 0;
    hl_report_free(r);
    int code = emit(opt, json);
    if (code != kPass) return code;
    if (!opt.out.empty())
        std::cout << (ok ? "pass" : "FAIL") << ": " << pass << " passed, " << fail << " failed, " << skip << " skipped\n";
    return ok ? kPass : kFail;
}

// runs fn on a fresh folding
template <class F>
int with_folding(const std::string& type, const std::string& aut, F&& fn) {
    hl_folding* fd = nullptr;
    hl_status s = hl_folding_new(type.c_str(), aut.c_str(), &fd);
    if (s != HL_OK) return status_exit(s);
    int code = fn(fd);
    hl_folding_free(fd);
    return code;
}

std::vector<int> parse_ints(const std::string& text) {
    std::vector<int> out;
    std::string cur;
    for (char c : text + ",") {
        if (c == ',') {
            if (!cur.empty()) out.push_back(std::stoi(cur));
            cur.clear();
        } else if (c != ' ') {
            cur += c;
        }
    }
    return out;
}

std::uint64_t env_seed() {
    const char* s = std::getenv("HYPERLOOP_SEED");
    return s ? std::strtoull(s, nullptr, 10) : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hyperalgebras of twisted loop algebras: folding, modules, identity suites."};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_option("--out", opt.out, "write JSON to this file")->capture_default_str();
    app.add_flag("--timing", opt.timing, "include wall time in reports");

    std::string type, aut = "id", field = "Q", hw, pi;
    bool simple = false;

    auto* fold = app.add_subcommand("fold", "fold a root system along a diagram automorphism");
    fold->add_option("--type", type, "Cartan type, e.g. A3")->required();
    fold->add_option("--auto", aut, "id, flip, rot3 or a 1-based permutation");

    auto* module = app.add_subcommand("module", "Weyl module and simple quotient summary");
    module->add_option("--type", type)->required();
    module->add_option("--hw", hw, "highest weight as Dynkin labels, e.g. 1,1")->required();
    module->add_option("--field", field, "Q, F5, F5^2, F25, ...");
    module->add_flag("--simple", simple, "describe the simple quotient");

    auto* drinfeld = app.add_subcommand("drinfeld", "standard decomposition of a twisted l-weight");
    drinfeld->add_option("--type", type)->required();
    drinfeld->add_option("--auto", aut);
    drinfeld->add_option("--field", field);
    drinfeld->add_option("--pi", pi, "l-weight, e.g. \"1:(1-2u),w2@3\"")->required();

    auto* verify = app.add_subcommand("verify", "run an identity suite");
    verify->require_subcommand(1);
    int nmax = 6;
    auto* heis = verify->add_subcommand("heisenberg", "divided powers in the Heisenberg algebra");
    heis->add_option("--nmax", nmax);

    auto* dsum = verify->add_subcommand("divided-sums", "divided-power sums and binomial addition");
    dsum->add_option("--nmax", nmax);
    dsum->add_option("--field", field);

    auto* tbasis = verify->add_subcommand("twisted-basis", "twisted basis relations and Jacobi sweep");
    tbasis->add_option("--type", type)->required();
    tbasis->add_option("--auto", aut);

    auto* tbr = verify->add_subcommand("twisted-brackets", "bracket formulas of the twisted basis");
    tbr->add_option("--type", type)->required();
    tbr->add_option("--auto", aut);

    int rank_max = 3;
    bool all = false;
    std::string fields = "Q,F5,F7";
    auto* garland = verify->add_subcommand("garland", "Garland-type identities on highest vectors");
    garland->add_flag("--all", all, "run every default case family");
    garland->add_option("--rank-max", rank_max);
    garland->add_option("--fields", fields, "comma-separated fields");

    std::string points = "2,3";
    int height = 2;
    bool grid = false;
    auto* restr = verify->add_subcommand("restriction", "restriction of simple loop modules");
    restr->add_option("--type", type)->required();
    restr->add_option("--auto", aut);
    restr->add_option("--field", field);
    restr->add_option("--pi", pi, "l-weight; omit with --grid");
    restr->add_flag("--grid", grid, "all products of fundamentals at --points up to --height");
    restr->add_option("--points", points);
    restr->add_option("--height", height);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    try {
        if (*fold) {
            return with_folding(type, aut, [&](hl_folding* fd) {
                char* json = nullptr;
                hl_status s = hl_folding_json(fd, &json);
                return s == HL_OK ? emit(opt, json) : status_exit(s);
            });
        }
        if (*module) {
            std::vector<int> labels = parse_ints(hw);
            char* json = nullptr;
            hl_status s = hl_module_json(type.c_str(), labels.data(), labels.size(), field.c_str(), simple ? 1 : 0, &json);
            return s == HL_OK ? emit(opt, json) : status_exit(s);
        }
        if (*drinfeld) {
            return with_folding(type, aut, [&](hl_folding* fd) {
                char* json = nullptr;
                hl_status s = hl_drinfeld_json(fd, field.c_str(), pi.c_str(), &json);
                return s == HL_OK ? emit(opt, json) : status_exit(s);
            });
        }
        hl_report* r = nullptr;
        hl_status s = HL_OK;
        if (*heis) {
            s = hl_verify_heisenberg(nmax, &r);
        } else if (*dsum) {
            s = hl_verify_divided_sums(nmax, field.c_str(), env_seed(), &r);
        } else if (*garland) {
            s = hl_verify_garland(rank_max, fields.c_str(), &r);
        } else {
            return with_folding(type, aut, [&](hl_folding* fd) {
                hl_report* rr = nullptr;
                hl_status st;
                if (*tbasis) {
                    st = hl_verify_twisted_basis(fd, &rr);
                } else if (*tbr) {
                    st = hl_verify_twisted_brackets(fd, &rr);
                } else if (grid) {
                    std::vector<long long> pts;
                    for (int x : parse_ints(points)) pts.push_back(x);
                    st = hl_verify_restriction_grid(fd, field.c_str(), pts.data(), pts.size(), height, &rr);
                } else {
                    if (pi.empty()) {
                        std::cerr << "error: restriction needs --pi or --grid\n";
                        return static_cast<int>(kUsage);
                    }
                    st = hl_verify_restriction(fd, field.c_str(), pi.c_str(), &rr);
                }
                return st == HL_OK ? emit_report(opt, rr) : status_exit(st);
            });
        }
        return s == HL_OK ? emit_report(opt, r) : status_exit(s);
    } catch (const std::exception& e) {
        // malformed integer lists
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
