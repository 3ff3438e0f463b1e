#include "hyperloop/hyperloop.h"

#include <cstring>
#include <string>

#include "hyperloop/jsonio.hpp"
#include "hyperloop/verify.hpp"

using namespace hyperloop;

struct hl_folding {
    FoldingDatum fd;
};

struct hl_report {
    VerificationReport rep;
};

namespace {

thread_local std::string last_error;

template <class F>
hl_status guard(F&& fn) {
    try {
        fn();
        last_error.clear();
        return HL_OK;
    } catch (const Error& e) {
        last_error = e.what();
        return static_cast<hl_status>(e.code());
    } catch (const std::exception& e) {
        last_error = std::string("Internal: ") + e.what();
        return HL_ERR_INTERNAL;
    }
}

void need(const void* p, const char* what) {
    if (!p) fail(ErrorCode::InvalidArgument, std::string(what) + " is null");
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

// splits at commas outside parentheses
std::vector<std::string> split_top(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

hl_report* wrap(VerificationReport r) { return new hl_report{std::move(r)}; }

}  // namespace

extern "C" {

const char* hl_version(void) { return "0.1.0"; }

const char* hl_status_name(hl_status status) {
    if (status == HL_OK) return "Ok";
    if (status < HL_ERR_INVALID_ARGUMENT || status > HL_ERR_INTERNAL) return "Unknown";
    return error_name(static_cast<ErrorCode>(status));
}

int hl_status_is_precondition(hl_status status) {
    if (status < HL_ERR_INVALID_ARGUMENT || status > HL_ERR_INTERNAL) return 0;
    return is_precondition_error(static_cast<ErrorCode>(status)) ? 1 : 0;
}

const char* hl_last_error(void) { return last_error.c_str(); }

void hl_string_free(char* s) { std::free(s); }

hl_status hl_folding_new(const char* type, const char* automorphism, hl_folding** out) {
    return guard([&] {
        need(type, "type");
        need(automorphism, "automorphism");
        need(out, "out");
        RootSystem rs = build_root_system(std::string(type));
        *out = new hl_folding{fold(rs, parse_automorphism(rs, automorphism))};
    });
}

void hl_folding_free(hl_folding* fd) { delete fd; }

hl_status hl_folding_info(const hl_folding* fd, int* m, int* folded_rank) {
    return guard([&] {
        need(fd, "folding");
        if (m) *m = fd->fd.m;
        if (folded_rank) *folded_rank = fd->fd.folded.rank;
    });
}

hl_status hl_folding_json(const hl_folding* fd, char** json_out) {
    return guard([&] {
        need(fd, "folding");
        need(json_out, "json_out");
        *json_out = dup(folding_json(fd->fd).dump(2));
    });
}

hl_status hl_module_json(const char* type, const int* hw, size_t n, const char* field, int simple, char** json_out) {
    return guard([&] {
        need(type, "type");
        need(field, "field");
        need(json_out, "json_out");
        if (n && !hw) fail(ErrorCode::InvalidArgument, "hw is null");
        RootSystem rs = build_root_system(std::string(type));
        if (static_cast<int>(n) != rs.rank)
            fail(ErrorCode::InvalidArgument, "highest weight needs " + std::to_string(rs.rank) + " labels");
        IVec lambda(hw, hw + n);
        for (int x : lambda)
            if (x < 0) fail(ErrorCode::InvalidArgument, "highest weight must be dominant");
        const Ring& f = Ring::parse(field);
        ModulePtr w = build_weyl_module(chevalley_basis(rs), lambda, f);
        ModulePtr v = simple_quotient(w);
        nlohmann::json j = module_json(simple ? *v : *w);
        j["weyl_dim"] = w->dim();
        j["simple_dim"] = v->dim();
        *json_out = dup(j.dump(2));
    });
}

hl_status hl_drinfeld_json(const hl_folding* fd, const char* field, const char* pi, char** json_out) {
    return guard([&] {
        need(fd, "folding");
        need(field, "field");
        need(pi, "pi");
        need(json_out, "json_out");
        LWeight w = parse_lweight(Ring::parse(field), pi, &fd->fd);
        *json_out = dup(decomposition_json(w, fd->fd).dump(2));
    });
}

hl_status hl_verify_heisenberg(int n_max, hl_report** out) {
    return guard([&] {
        need(out, "out");
        if (n_max < 1) fail(ErrorCode::InvalidArgument, "n_max must be positive");
        *out = wrap(check_heisenberg_identity(n_max));
    });
}

hl_status hl_verify_divided_sums(int n_max, const char* field, uint64_t seed, hl_report** out) {
    return guard([&] {
        need(field, "field");
        need(out, "out");
        if (n_max < 1) fail(ErrorCode::InvalidArgument, "n_max must be positive");
        *out = wrap(check_divided_sums(n_max, Ring::parse(field), seed));
    });
}

hl_status hl_verify_twisted_basis(const hl_folding* fd, hl_report** out) {
    return guard([&] {
        need(fd, "folding");
        need(out, "out");
        *out = wrap(check_twisted_basis(fd->fd));
    });
}

hl_status hl_verify_twisted_brackets(const hl_folding* fd, hl_report** out) {
    return guard([&] {
        need(fd, "folding");
        need(out, "out");
        *out = wrap(check_twisted_brackets(fd->fd));
    });
}

hl_status hl_verify_garland(int rank_max, const char* fields, hl_report** out) {
    return guard([&] {
        need(fields, "fields");
        need(out, "out");
        std::vector<const Ring*> rings;
        for (const auto& s : split_top(fields))
            if (!s.empty()) rings.push_back(&Ring::parse(s));
        if (rings.empty()) fail(ErrorCode::InvalidArgument, "no fields given");
        *out = wrap(run_garland_suite(rank_max, rings));
    });
}

hl_status hl_verify_restriction(const hl_folding* fd, const char* field, const char* pi, hl_report** out) {
    return guard([&] {
        need(fd, "folding");
        need(field, "field");
        need(pi, "pi");
        need(out, "out");
        *out = wrap(check_restriction_theorem(parse_lweight(Ring::parse(field), pi, &fd->fd), fd->fd));
    });
}

hl_status hl_verify_restriction_grid(const hl_folding* fd, const char* field, const long long* points, size_t n_points,
                                     int height, hl_report** out) {
    return guard([&] {
        need(fd, "folding");
        need(field, "field");
        need(out, "out");
        if (n_points && !points) fail(ErrorCode::InvalidArgument, "points is null");
        std::vector<long long> pts(points, points + n_points);
        VerificationReport all;
        all.suite = "restriction";
        for (const auto& pi : lweight_grid(fd->fd, Ring::parse(field), pts, height))
            all.merge(check_restriction_theorem(pi, fd->fd));
        *out = wrap(std::move(all));
    });
}

int hl_report_passed(const hl_report* r) { return r && r->rep.passed() ? 1 : 0; }

hl_status hl_report_counts(const hl_report* r, size_t* passed, size_t* failed, size_t* skipped) {
    return guard([&] {
        need(r, "report");
        if (passed) *passed = r->rep.count("pass");
        if (failed) *failed = r->rep.count("fail");
        if (skipped) *skipped = r->rep.count("skipped");
    });
}

hl_status hl_report_json(const hl_report* r, int with_timing, char** json_out) {
    return guard([&] {
        need(r, "report");
        need(json_out, "json_out");
        *json_out = dup(r->rep.to_json(with_timing != 0).dump(2));
    });
}

void hl_report_free(hl_report* r) { delete r; }

}  // extern "C"
