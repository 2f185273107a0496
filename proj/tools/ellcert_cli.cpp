// Command-line front end; talks to the library exclusively through the C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <memory>
#include <string>

#include "ellcert.h"

namespace {

using nlohmann::json;

struct StringGuard {
    char* s = nullptr;
    ~StringGuard() { ec_string_free(s); }
};

struct OptionsGuard {
    ec_options* o = ec_options_new();
    ~OptionsGuard() { ec_options_free(o); }
};

int report_error(int code, const StringGuard& err) {
    std::fprintf(stderr, "error (%d): %s\n", code, err.s ? err.s : "unknown");
    return code == EC_OK ? 1 : code;
}

std::string real_field(const json& j) {
    return j.at("value").get<std::string>() + " +/- " +
           j.at("err").get<std::string>();
}

void print_certificate_summary(const json& c) {
    std::printf("n=%s t=%s delta=%s (%ssquarefree) model=%s\n",
                c.at("n").get<std::string>().c_str(),
                c.at("t").get<std::string>().c_str(),
                c.at("delta").get<std::string>().c_str(),
                c.at("delta_squarefree").get<bool>() ? "" : "not ",
                c.at("model").get<std::string>().c_str());
    std::printf("verdict: %s (branch: %s)\n",
                c.at("verdict").get<std::string>().c_str(),
                c.at("branch").get<std::string>().c_str());
    const json& ev = c.at("evidence");
    if (ev.contains("height_gap")) {
        const json& hg = ev.at("height_gap");
        std::printf("  h_upper  = %s\n", real_field(hg.at("h_upper")).c_str());
        std::printf("  h_lower  = %s\n", real_field(hg.at("h_lower")).c_str());
        std::printf("  quotient = %s\n", real_field(hg.at("quotient")).c_str());
    }
    if (ev.contains("hhat")) {
        std::printf("  hhat((0,n^3)) = %s\n", real_field(ev.at("hhat")).c_str());
        std::printf("  height floor  = %s\n",
                    real_field(ev.at("height_floor")).c_str());
        std::printf("  l_max = %s\n", ev.at("l_max").get<std::string>().c_str());
        for (const json& w : ev.at("witnesses"))
            std::printf("  witness l=%s: p=%s, r_p=%s\n",
                        w.at("l").get<std::string>().c_str(),
                        w.at("p").get<std::string>().c_str(),
                        w.at("r_p").get<std::string>().c_str());
        for (const json& l : ev.at("unwitnessed"))
            std::printf("  unwitnessed l=%s\n", l.get<std::string>().c_str());
    }
    if (ev.contains("counterexample")) {
        const json& ce = ev.at("counterexample");
        std::printf("  counterexample: %s * (%s, %s) = (0, n^3)\n",
                    ce.at("m").get<std::string>().c_str(),
                    ce.at("x").get<std::string>().c_str(),
                    ce.at("y").get<std::string>().c_str());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Non-divisibility certifier for the family y^2 = x^3 + t x^2 "
                 "- n^2(t+3n^2) x + n^6"};
    app.require_subcommand(1);

    std::string n = "1", t = "1";
    unsigned precision = 128;
    std::string prime_budget = "1000000";
    bool as_json = false;

    auto add_nt = [&](CLI::App* cmd) {
        cmd->add_option("--n", n, "family parameter n (positive integer)")
            ->required();
        cmd->add_option("--t", t, "family parameter t (nonzero integer)")
            ->required();
    };

    CLI::App* certify = app.add_subcommand("certify", "certify one pair (n, t)");
    add_nt(certify);
    certify->add_option("--precision", precision, "working precision in bits");
    certify->add_option("--prime-budget", prime_budget,
                        "largest auxiliary prime for witness search");
    certify->add_flag("--json", as_json, "emit the raw JSON certificate");

    std::string n_min, n_max, t_min, t_max, out_path = "certs.jsonl";
    bool resume = false;
    CLI::App* sweep = app.add_subcommand("sweep", "certify a box of (n, t)");
    sweep->add_option("--n-min", n_min)->required();
    sweep->add_option("--n-max", n_max)->required();
    sweep->add_option("--t-min", t_min)->required();
    sweep->add_option("--t-max", t_max)->required();
    sweep->add_option("--out", out_path, "JSONL output path");
    sweep->add_flag("--resume", resume, "skip pairs already in the output file");
    sweep->add_option("--precision", precision);
    sweep->add_option("--prime-budget", prime_budget);

    CLI::App* periods = app.add_subcommand("periods", "periods of the minimal model");
    add_nt(periods);
    periods->add_option("--precision", precision);

    std::string point;
    CLI::App* height = app.add_subcommand("height", "canonical height of a point");
    add_nt(height);
    height->add_option("--point", point, "affine point as x,y (rationals)")
        ->required();
    height->add_option("--precision", precision);

    CLI::App* tate = app.add_subcommand("tate", "local reduction data");
    add_nt(tate);

    std::string verify_path;
    CLI::App* verify = app.add_subcommand("verify", "re-check a JSONL certificate file");
    verify->add_option("file", verify_path, "certificates, one JSON object per line")
        ->required();

    CLI11_PARSE(app, argc, argv);

    OptionsGuard opts;
    ec_options_set_precision(opts.o, precision);
    ec_options_set_prime_budget(opts.o, prime_budget.c_str());

    if (certify->parsed()) {
        StringGuard out, err;
        int rc = ec_certify(n.c_str(), t.c_str(), opts.o, &out.s, &err.s);
        if (rc != EC_OK) return report_error(rc, err);
        if (as_json)
            std::printf("%s\n", out.s);
        else
            print_certificate_summary(json::parse(out.s));
        return 0;
    }
    if (sweep->parsed()) {
        StringGuard out, err;
        int rc = ec_sweep(n_min.c_str(), n_max.c_str(), t_min.c_str(),
                          t_max.c_str(), out_path.c_str(), resume ? 1 : 0,
                          opts.o, &out.s, &err.s);
        if (rc != EC_OK) return report_error(rc, err);
        std::printf("%s\n", out.s);
        return 0;
    }
    if (periods->parsed()) {
        StringGuard out, err;
        int rc = ec_periods(n.c_str(), t.c_str(), precision, &out.s, &err.s);
        if (rc != EC_OK) return report_error(rc, err);
        std::printf("%s\n", out.s);
        return 0;
    }
    if (height->parsed()) {
        auto comma = point.find(',');
        if (comma == std::string::npos) {
            std::fprintf(stderr, "error: --point expects x,y\n");
            return 1;
        }
        std::string x = point.substr(0, comma), y = point.substr(comma + 1);
        StringGuard out, err;
        int rc = ec_height(n.c_str(), t.c_str(), x.c_str(), y.c_str(),
                           precision, &out.s, &err.s);
        if (rc != EC_OK) return report_error(rc, err);
        std::printf("%s\n", out.s);
        return 0;
    }
    if (tate->parsed()) {
        StringGuard out, err;
        int rc = ec_tate(n.c_str(), t.c_str(), &out.s, &err.s);
        if (rc != EC_OK) return report_error(rc, err);
        std::printf("%s\n", out.s);
        return 0;
    }
    if (verify->parsed()) {
        std::FILE* f = std::fopen(verify_path.c_str(), "r");
        if (!f) {
            std::fprintf(stderr, "error: cannot open %s\n", verify_path.c_str());
            return 1;
        }
        std::string line;
        int bad = 0, total = 0;
        char buf[1 << 16];
        while (std::fgets(buf, sizeof buf, f)) {
            line = buf;
            while (!line.empty() && (line.back() == '\n' || line.back() == '\r'))
                line.pop_back();
            if (line.empty()) continue;
            ++total;
            int ok = 0;
            StringGuard reason, err;
            int rc = ec_verify(line.c_str(), &ok, &reason.s, &err.s);
            if (rc != EC_OK || !ok) {
                ++bad;
                std::printf("line %d: REJECTED (%s)\n", total,
                            reason.s ? reason.s : (err.s ? err.s : "error"));
            }
        }
        std::fclose(f);
        std::printf("%d certificate(s), %d rejected\n", total, bad);
        return bad == 0 ? 0 : 1;
    }
    return 0;
}
