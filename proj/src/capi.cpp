#include "ellcert.h"

#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "ellcert/certify.hpp"
#include "ellcert/height.hpp"
#include "ellcert/period.hpp"
#include "ellcert/tate.hpp"

using nlohmann::json;

struct ec_options {
    ellcert::CertifyOptions opts;
};

namespace {

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void set_err(char** err_out, const std::string& msg) {
    if (err_out) *err_out = dup_string(msg);
}

struct parse_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ellcert::ZZ parse_zz(const char* s) {
    if (!s || !*s) throw parse_failure("empty integer");
    try {
        return ellcert::ZZ(std::string(s));
    } catch (const std::exception&) {
        throw parse_failure(std::string("not an integer: ") + s);
    }
}

ellcert::QQ parse_qq(const char* s) {
    if (!s || !*s) throw parse_failure("empty rational");
    try {
        return ellcert::QQ(std::string(s));
    } catch (const std::exception&) {
        throw parse_failure(std::string("not a rational: ") + s);
    }
}

std::string rr_str(const ellcert::RR& v) {
    std::ostringstream os;
    os.precision(25);
    os << std::scientific << v;
    return os.str();
}

json real_json(const ellcert::RR& value, const ellcert::RR& err) {
    return json{{"value", rr_str(value)}, {"err", rr_str(err)}};
}

template <typename Fn>
int guarded(char** err_out, Fn&& fn) {
    try {
        fn();
        return EC_OK;
    } catch (const ellcert::budget_error& e) {
        set_err(err_out, e.what());
        return EC_ERR_BUDGET;
    } catch (const ellcert::range_error& e) {
        set_err(err_out, e.what());
        return EC_ERR_RANGE;
    } catch (const json::exception& e) {
        set_err(err_out, e.what());
        return EC_ERR_PARSE;
    } catch (const parse_failure& e) {
        set_err(err_out, e.what());
        return EC_ERR_PARSE;
    } catch (const std::exception& e) {
        set_err(err_out, e.what());
        return EC_ERR_INTERNAL;
    }
}

ellcert::CertifyOptions options_of(const ec_options* opt) {
    return opt ? opt->opts : ellcert::CertifyOptions{};
}

}  // namespace

extern "C" {

ec_options* ec_options_new(void) { return new (std::nothrow) ec_options{}; }

void ec_options_free(ec_options* opt) { delete opt; }

int ec_options_set_precision(ec_options* opt, unsigned bits) {
    if (!opt || bits < 32 || bits > 1u << 20) return EC_ERR_RANGE;
    opt->opts.precision = bits;
    return EC_OK;
}

int ec_options_set_prime_budget(ec_options* opt, const char* budget) {
    if (!opt) return EC_ERR_RANGE;
    try {
        ellcert::ZZ b = parse_zz(budget);
        if (b < 2) return EC_ERR_RANGE;
        opt->opts.prime_budget = b;
        return EC_OK;
    } catch (const std::exception&) {
        return EC_ERR_PARSE;
    }
}

int ec_options_set_witness_cap(ec_options* opt, unsigned cap) {
    if (!opt || cap == 0) return EC_ERR_RANGE;
    opt->opts.witness_cap = cap;
    return EC_OK;
}

int ec_certify(const char* n, const char* t, const ec_options* opt,
               char** json_out, char** err_out) {
    if (!json_out) return EC_ERR_RANGE;
    return guarded(err_out, [&] {
        ellcert::Certificate cert =
            ellcert::certify(parse_zz(n), parse_zz(t), options_of(opt));
        *json_out = dup_string(ellcert::to_json(cert));
    });
}

int ec_verify(const char* certificate_json, int* ok_out, char** reason_out,
              char** err_out) {
    if (!certificate_json || !ok_out) return EC_ERR_RANGE;
    return guarded(err_out, [&] {
        ellcert::Certificate cert = ellcert::from_json(certificate_json);
        std::string reason;
        bool ok = ellcert::verify_certificate(cert, &reason);
        *ok_out = ok ? 1 : 0;
        if (!ok && reason_out) *reason_out = dup_string(reason);
    });
}

int ec_periods(const char* n, const char* t, unsigned precision,
               char** json_out, char** err_out) {
    if (!json_out) return EC_ERR_RANGE;
    return guarded(err_out, [&] {
        if (precision < 32) throw ellcert::range_error("precision too small");
        ellcert::PrecisionGuard guard(precision + 32);
        ellcert::CurveParams params{parse_zz(n), parse_zz(t)};
        auto [mc, tr] = ellcert::minimal_model(params);
        ellcert::PeriodData pd = ellcert::periods(mc, precision);
        json j;
        j["model"] = mc.provenance == ellcert::ModelTag::Eprime ? "Eprime" : "E";
        ellcert::RR abs_err1 = pd.error_bound * pd.omega1;
        ellcert::RR abs_err2 = pd.error_bound * pd.omega2_im;
        j["omega1"] = real_json(pd.omega1, abs_err1);
        j["omega2_im"] = real_json(pd.omega2_im, abs_err2);
        j["q"] = rr_str(pd.q);
        j["mu"] = rr_str(pd.mu);
        j["precision"] = pd.precision;
        *json_out = dup_string(j.dump());
    });
}

int ec_height(const char* n, const char* t, const char* x, const char* y,
              unsigned precision, char** json_out, char** err_out) {
    if (!json_out) return EC_ERR_RANGE;
    return guarded(err_out, [&] {
        if (precision < 32) throw ellcert::range_error("precision too small");
        ellcert::PrecisionGuard guard(precision + 32);
        ellcert::CurveParams params{parse_zz(n), parse_zz(t)};
        auto [mc, tr] = ellcert::minimal_model(params);
        ellcert::Point p = ellcert::Point::affine(parse_qq(x), parse_qq(y));
        if (!ellcert::on_curve(mc, p)) {
            // accept family-model coordinates too and map them across
            ellcert::Point mapped = tr.forward(p);
            if (!ellcert::on_curve(mc, mapped))
                throw ellcert::range_error("point is not on the curve");
            p = mapped;
        }
        ellcert::HeightValue h = ellcert::canonical_height(mc, p, precision);
        json j;
        j["model"] = mc.provenance == ellcert::ModelTag::Eprime ? "Eprime" : "E";
        j["hhat"] = real_json(h.value, h.error_bound);
        j["naive"] = rr_str(ellcert::naive_height(p));
        *json_out = dup_string(j.dump());
    });
}

int ec_tate(const char* n, const char* t, char** json_out, char** err_out) {
    if (!json_out) return EC_ERR_RANGE;
    return guarded(err_out, [&] {
        ellcert::PrecisionGuard guard(160);
        ellcert::CurveParams params{parse_zz(n), parse_zz(t)};
        auto [mc, tr] = ellcert::minimal_model(params);
        ellcert::GlobalReduction gr = ellcert::tate_global(mc);
        json locals = json::array();
        for (const ellcert::LocalReduction& lr : gr.locals) {
            const char* kind = "good";
            switch (lr.kind) {
                case ellcert::ReductionKind::Good: kind = "good"; break;
                case ellcert::ReductionKind::SplitMultiplicative:
                    kind = "split-multiplicative";
                    break;
                case ellcert::ReductionKind::NonsplitMultiplicative:
                    kind = "nonsplit-multiplicative";
                    break;
                case ellcert::ReductionKind::Additive: kind = "additive"; break;
            }
            locals.push_back(json{{"p", lr.p.str()},
                                  {"kodaira", lr.symbol()},
                                  {"tamagawa", lr.tamagawa.str()},
                                  {"v_min_delta", lr.v_min_delta},
                                  {"kind", kind}});
        }
        json j;
        j["model"] = mc.provenance == ellcert::ModelTag::Eprime ? "Eprime" : "E";
        j["locals"] = locals;
        j["tamagawa_lcm"] = gr.tamagawa_lcm.str();
        j["log_min_delta"] = rr_str(gr.log_min_delta);
        j["height_floor"] = rr_str(gr.height_floor);
        *json_out = dup_string(j.dump());
    });
}

int ec_sweep(const char* n_min, const char* n_max, const char* t_min,
             const char* t_max, const char* out_path, int resume,
             const ec_options* opt, char** json_out, char** err_out) {
    if (!json_out || !out_path) return EC_ERR_RANGE;
    return guarded(err_out, [&] {
        ellcert::SweepJob job;
        job.n_min = parse_zz(n_min);
        job.n_max = parse_zz(n_max);
        job.t_min = parse_zz(t_min);
        job.t_max = parse_zz(t_max);
        job.out_path = out_path;
        job.resume = resume != 0;
        job.options = options_of(opt);
        ellcert::SweepStats st = ellcert::sweep(job);
        json j;
        j["written"] = st.written;
        j["skipped"] = st.skipped;
        j["non_divisible"] = st.non_divisible;
        j["undecided"] = st.undecided;
        j["hypothesis_failed"] = st.hypothesis_failed;
        j["counterexamples"] = st.counterexamples;
        *json_out = dup_string(j.dump());
    });
}

void ec_string_free(char* s) { std::free(s); }

const char* ec_version(void) { return "ellcert 1.0.0"; }

}  // extern "C"
