#include "ellcert/certify.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ellcert/divpoly.hpp"
#include "ellcert/point.hpp"

namespace ellcert {

using nlohmann::json;

namespace {

constexpr const char* kToolVersion = "ellcert 1.0.0";

std::string version_string(const CertifyOptions& opt) {
    std::ostringstream os;
    os << kToolVersion << " precision=" << opt.precision
       << " prime-budget=" << opt.prime_budget
       << " witness-cap=" << opt.witness_cap;
    return os.str();
}

std::string rr_str(const RR& v) {
    std::ostringstream os;
    os.precision(25);
    os << std::scientific << v;
    return os.str();
}

json real_json(const HeightValue& h) {
    return json{{"value", rr_str(h.value)}, {"err", rr_str(h.error_bound)}};
}

HeightValue real_from_json(const json& j) {
    return HeightValue{RR(j.at("value").get<std::string>()),
                       RR(j.at("err").get<std::string>())};
}

ZZ next_prime(const ZZ& p) {
    ZZ q = p + 1;
    if (q <= 2) return ZZ(2);
    if (q % 2 == 0) ++q;
    while (!is_probable_prime(q)) q += 2;
    return q;
}

// floor(sqrt(a/b)) for positive reals, clamped into [0, 10^9]
ZZ floor_sqrt_ratio(const RR& a, const RR& b) {
    if (a <= 0 || b <= 0) return ZZ(0);
    RR r = sqrt(a / b);
    if (r > 1e9) throw budget_error("witness bound overflow");
    return ZZ(static_cast<long>(std::floor(r.convert_to<double>())));
}

}  // namespace

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::NonDivisible: return "non-divisible";
        case Verdict::Counterexample: return "counterexample";
        case Verdict::HypothesisFailed: return "hypothesis-failed";
        case Verdict::Undecided: return "undecided";
    }
    return "?";
}

const char* branch_name(Branch b) {
    switch (b) {
        case Branch::None: return "none";
        case Branch::HeightGap: return "height-gap";
        case Branch::ComponentParity: return "component-parity";
        case Branch::ModularWitness: return "modular-witness";
        case Branch::KnownCounterexample: return "known-counterexample";
        case Branch::OnlyIntegralPoint: return "only-integral-point";
    }
    return "?";
}

namespace {

Verdict verdict_from_name(const std::string& s) {
    for (Verdict v : {Verdict::NonDivisible, Verdict::Counterexample,
                      Verdict::HypothesisFailed, Verdict::Undecided})
        if (s == verdict_name(v)) return v;
    throw range_error("unknown verdict: " + s);
}

Branch branch_from_name(const std::string& s) {
    for (Branch b : {Branch::None, Branch::HeightGap, Branch::ComponentParity,
                     Branch::ModularWitness, Branch::KnownCounterexample,
                     Branch::OnlyIntegralPoint})
        if (s == branch_name(b)) return b;
    throw range_error("unknown branch: " + s);
}

}  // namespace

Certificate certify(const ZZ& n, const ZZ& t, const CertifyOptions& opt) {
    if (n < 1) throw range_error("certify: n must be >= 1");
    if (t == 0) throw range_error("certify: t must be nonzero");
    PrecisionGuard guard(opt.precision + 32);

    CurveParams params{n, t};
    Certificate cert;
    cert.n = n;
    cert.t = t;
    cert.delta = params.delta();
    cert.delta_squarefree = is_squarefree(cert.delta);
    cert.versions = version_string(opt);

    WeierstrassCurve e = make_curve(params);
    auto [mc, tr] = minimal_model(params);
    cert.model = mc.provenance;
    ZZ n2 = n * n, n3 = n2 * n, n4 = n2 * n2;

    // n = 1, t <= -2: (0,1) is the only integral point outside the identity
    // component, with no squarefreeness hypothesis needed, so this test runs
    // before the hypothesis check. When the height-gap hypothesis also holds
    // (t <= -100 with squarefree delta) the height-gap branch is preferred,
    // since its certificate carries quantitative, replayable bounds.
    if (n == 1 && t <= -2 && !(cert.delta_squarefree && t <= -100)) {
        cert.verdict = Verdict::NonDivisible;
        cert.branch = Branch::OnlyIntegralPoint;
        return cert;
    }

    // squarefree hypothesis
    if (!cert.delta_squarefree) {
        cert.verdict = Verdict::HypothesisFailed;
        cert.branch = Branch::None;
        if (t == 5 * n2) {
            Point p = Point::affine(QQ(-4 * n2), QQ(7 * n3));
            Point img = scalar_mul(e, ZZ(3), p);
            if (on_curve(e, p) && !img.infinity && img.x == 0 &&
                img.y == QQ(n3)) {
                cert.verdict = Verdict::Counterexample;
                cert.branch = Branch::KnownCounterexample;
                cert.counterexample = CounterexampleEvidence{ZZ(3), p.x, p.y};
            }
        }
        return cert;
    }

    // asymptotic ranges: height gap
    bool gap_pos = (t >= 100 * n2) && (t >= n4);
    bool gap_neg = (t <= -100 * n2) && (t <= -2 * n4);
    if (gap_pos || gap_neg) {
        RR hu = upper_bound_h0(params, cert.model);
        RR hl = lower_bound_hP(params, cert.model);
        HeightGapEvidence ev;
        ev.h_upper = HeightValue{hu, RR(0)};
        ev.h_lower = HeightValue{hl, RR(0)};
        ev.quotient = HeightValue{hu / hl, RR(0)};
        cert.height_gap = ev;
        if (hl > 0 && ev.quotient.value < 9) {
            cert.verdict = Verdict::NonDivisible;
            cert.branch = Branch::HeightGap;
        } else {
            cert.verdict = Verdict::Undecided;
            cert.branch = Branch::HeightGap;
        }
        return cert;
    }

    // modular witnesses
    try {
        Point q0 = tr.forward(Point::affine(QQ(0), QQ(n3)));
        HeightValue hh = canonical_height(mc, q0, opt.precision);
        GlobalReduction gr = tate_global(mc);
        WitnessEvidence ev;
        ev.hhat = hh;
        ev.height_floor = HeightValue{gr.height_floor, RR(0)};
        ev.l_max = floor_sqrt_ratio(hh.value, gr.height_floor);
        cert.witness_evidence = ev;

        bool parity_ok = component_of(mc, q0) == ComponentTag::Egg;
        std::vector<ZZ> targets;
        if (!parity_ok) targets.push_back(ZZ(2));
        for (ZZ l = 3; l <= ev.l_max; l = next_prime(l))
            if (is_probable_prime(l)) targets.push_back(l);

        std::map<ZZ, FpGroupInfo> info_cache;
        for (const ZZ& l : targets) {
            bool found = false;
            ZZ p = 2;
            for (unsigned tries = 0; tries < opt.witness_cap && p <= opt.prime_budget;
                 ++tries, p = next_prime(p)) {
                if (mc.disc % p == 0) continue;
                auto it = info_cache.find(p);
                if (it == info_cache.end())
                    it = info_cache.emplace(p, fp_group_info(mc, p, opt.prime_budget))
                             .first;
                const FpGroupInfo& gi = it->second;
                if (gi.exponent % l != 0) continue;
                FpCurve fc = reduce_curve(mc, p);
                FpPoint qbar = reduce_mod_p(mc, q0, p);
                if (!fp_scalar_mul(fc, gi.exponent / l, qbar).infinity) {
                    cert.witness_evidence->witnesses.push_back(
                        Witness{l, p, gi.exponent});
                    found = true;
                    break;
                }
            }
            if (!found) cert.witness_evidence->unwitnessed.push_back(l);
        }

        if (!cert.witness_evidence->unwitnessed.empty()) {
            cert.verdict = Verdict::Undecided;
            cert.branch = Branch::ModularWitness;
        } else if (targets.empty()) {
            cert.verdict = Verdict::NonDivisible;
            cert.branch = Branch::ComponentParity;
        } else {
            cert.verdict = Verdict::NonDivisible;
            cert.branch = Branch::ModularWitness;
        }
    } catch (const budget_error&) {
        cert.verdict = Verdict::Undecided;
        if (cert.branch == Branch::None) cert.branch = Branch::ModularWitness;
    }
    return cert;
}

std::string to_json(const Certificate& cert) {
    json j;
    j["n"] = cert.n.str();
    j["t"] = cert.t.str();
    j["delta"] = cert.delta.str();
    j["delta_squarefree"] = cert.delta_squarefree;
    j["model"] = cert.model == ModelTag::Eprime ? "Eprime" : "E";
    j["verdict"] = verdict_name(cert.verdict);
    j["branch"] = branch_name(cert.branch);
    json ev = json::object();
    if (cert.height_gap) {
        ev["height_gap"] = json{{"h_upper", real_json(cert.height_gap->h_upper)},
                                {"h_lower", real_json(cert.height_gap->h_lower)},
                                {"quotient", real_json(cert.height_gap->quotient)}};
    }
    if (cert.witness_evidence) {
        const WitnessEvidence& we = *cert.witness_evidence;
        json ws = json::array();
        for (const Witness& w : we.witnesses)
            ws.push_back(json{{"l", w.l.str()}, {"p", w.p.str()},
                              {"r_p", w.r_p.str()}});
        json unw = json::array();
        for (const ZZ& l : we.unwitnessed) unw.push_back(l.str());
        ev["hhat"] = real_json(we.hhat);
        ev["height_floor"] = real_json(we.height_floor);
        ev["l_max"] = we.l_max.str();
        ev["witnesses"] = ws;
        ev["unwitnessed"] = unw;
    }
    if (cert.counterexample) {
        ev["counterexample"] = json{{"m", cert.counterexample->m.str()},
                                    {"x", cert.counterexample->x.str()},
                                    {"y", cert.counterexample->y.str()}};
    }
    j["evidence"] = ev;
    j["versions"] = cert.versions;
    return j.dump();
}

Certificate from_json(const std::string& line) {
    json j = json::parse(line);
    Certificate cert;
    cert.n = ZZ(j.at("n").get<std::string>());
    cert.t = ZZ(j.at("t").get<std::string>());
    cert.delta = ZZ(j.at("delta").get<std::string>());
    cert.delta_squarefree = j.at("delta_squarefree").get<bool>();
    cert.model = j.at("model").get<std::string>() == "Eprime" ? ModelTag::Eprime
                                                              : ModelTag::E;
    cert.verdict = verdict_from_name(j.at("verdict").get<std::string>());
    cert.branch = branch_from_name(j.at("branch").get<std::string>());
    const json& ev = j.at("evidence");
    if (ev.contains("height_gap")) {
        const json& hg = ev.at("height_gap");
        cert.height_gap = HeightGapEvidence{real_from_json(hg.at("h_upper")),
                                            real_from_json(hg.at("h_lower")),
                                            real_from_json(hg.at("quotient"))};
    }
    if (ev.contains("hhat")) {
        WitnessEvidence we;
        we.hhat = real_from_json(ev.at("hhat"));
        we.height_floor = real_from_json(ev.at("height_floor"));
        we.l_max = ZZ(ev.at("l_max").get<std::string>());
        for (const json& w : ev.at("witnesses"))
            we.witnesses.push_back(Witness{ZZ(w.at("l").get<std::string>()),
                                           ZZ(w.at("p").get<std::string>()),
                                           ZZ(w.at("r_p").get<std::string>())});
        for (const json& l : ev.at("unwitnessed"))
            we.unwitnessed.push_back(ZZ(l.get<std::string>()));
        cert.witness_evidence = std::move(we);
    }
    if (ev.contains("counterexample")) {
        const json& ce = ev.at("counterexample");
        cert.counterexample =
            CounterexampleEvidence{ZZ(ce.at("m").get<std::string>()),
                                   QQ(ce.at("x").get<std::string>()),
                                   QQ(ce.at("y").get<std::string>())};
    }
    cert.versions = j.value("versions", "");
    return cert;
}

namespace {

bool fail(std::string* reason, const std::string& why) {
    if (reason) *reason = why;
    return false;
}

}  // namespace

bool verify_certificate(const Certificate& cert, std::string* reason) {
    PrecisionGuard guard(160);
    if (cert.n < 1 || cert.t == 0) return fail(reason, "bad parameters");
    CurveParams params{cert.n, cert.t};
    if (cert.delta != params.delta()) return fail(reason, "delta mismatch");
    if (cert.delta_squarefree != is_squarefree(cert.delta))
        return fail(reason, "squarefree flag mismatch");
    auto [mc, tr] = minimal_model(params);
    if (mc.provenance != cert.model) return fail(reason, "model mismatch");
    ZZ n2 = cert.n * cert.n, n3 = n2 * cert.n, n4 = n2 * n2;

    switch (cert.branch) {
        case Branch::None:
            if (cert.verdict != Verdict::HypothesisFailed)
                return fail(reason, "branchless certificate must be hypothesis-failed");
            if (cert.delta_squarefree)
                return fail(reason, "hypothesis-failed but delta is squarefree");
            return true;

        case Branch::KnownCounterexample: {
            if (cert.verdict != Verdict::Counterexample || !cert.counterexample)
                return fail(reason, "counterexample payload missing");
            if (cert.delta_squarefree)
                return fail(reason, "counterexample with squarefree delta");
            WeierstrassCurve e = make_curve(params);
            Point p = Point::affine(cert.counterexample->x, cert.counterexample->y);
            if (!on_curve(e, p)) return fail(reason, "divisor point not on curve");
            if (cert.counterexample->m < 2) return fail(reason, "trivial multiplier");
            Point img = scalar_mul(e, cert.counterexample->m, p);
            if (img.infinity || img.x != 0 || img.y != QQ(n3))
                return fail(reason, "scalar multiple does not hit (0, n^3)");
            return true;
        }

        case Branch::OnlyIntegralPoint:
            if (cert.verdict != Verdict::NonDivisible)
                return fail(reason, "only-integral-point must be non-divisible");
            if (cert.n != 1 || cert.t > -2)
                return fail(reason, "only-integral-point outside n=1, t<=-2");
            return true;

        case Branch::HeightGap: {
            if (!cert.height_gap) return fail(reason, "height-gap payload missing");
            if (cert.verdict != Verdict::NonDivisible)
                return fail(reason, "height-gap must conclude non-divisible");
            bool gap_pos = (cert.t >= 100 * n2) && (cert.t >= n4);
            bool gap_neg = (cert.t <= -100 * n2) && (cert.t <= -2 * n4);
            if (!gap_pos && !gap_neg)
                return fail(reason, "height-gap outside its t range");
            RR hu = upper_bound_h0(params, cert.model);
            RR hl = lower_bound_hP(params, cert.model);
            RR tol("1e-9");
            if (abs(hu - cert.height_gap->h_upper.value) > tol * (1 + abs(hu)))
                return fail(reason, "upper bound mismatch");
            if (abs(hl - cert.height_gap->h_lower.value) > tol * (1 + abs(hl)))
                return fail(reason, "lower bound mismatch");
            if (abs(hu / hl - cert.height_gap->quotient.value) >
                tol * (1 + abs(hu / hl)))
                return fail(reason, "quotient mismatch");
            if (cert.verdict == Verdict::NonDivisible &&
                !(hl > 0 && hu / hl < 9))
                return fail(reason, "quotient does not exclude l >= 3");
            return true;
        }

        case Branch::ComponentParity:
        case Branch::ModularWitness: {
            if (!cert.witness_evidence)
                return fail(reason, "witness payload missing");
            const WitnessEvidence& we = *cert.witness_evidence;
            if (cert.verdict == Verdict::Undecided) return true;
            if (cert.verdict != Verdict::NonDivisible)
                return fail(reason, "unexpected verdict for witness branch");
            if (!we.unwitnessed.empty())
                return fail(reason, "non-divisible with unwitnessed primes");
            Point q0 = tr.forward(Point::affine(QQ(0), QQ(n3)));
            if (component_of(mc, q0) != ComponentTag::Egg)
                return fail(reason, "base point not on the bounded component");
            // recompute the height data that determines l_max
            HeightValue hh = canonical_height(mc, q0);
            GlobalReduction gr = tate_global(mc);
            RR tol("1e-6");
            if (abs(hh.value - we.hhat.value) > tol * (1 + abs(hh.value)))
                return fail(reason, "canonical height mismatch");
            if (abs(gr.height_floor - we.height_floor.value) >
                tol * (1 + abs(gr.height_floor)))
                return fail(reason, "height floor mismatch");
            ZZ lmax = floor_sqrt_ratio(hh.value, gr.height_floor);
            if (lmax != we.l_max) return fail(reason, "l_max mismatch");
            // every odd prime <= l_max needs a valid witness
            std::set<ZZ> covered;
            for (const Witness& w : we.witnesses) {
                if (!is_probable_prime(w.l) || w.l < 3)
                    return fail(reason, "witnessed l is not an odd prime");
                if (!is_probable_prime(w.p)) return fail(reason, "witness p not prime");
                if (mc.disc % w.p == 0) return fail(reason, "witness p divides disc");
                if (w.r_p % w.l != 0) return fail(reason, "l does not divide r_p");
                FpGroupInfo gi = fp_group_info(mc, w.p);
                if (gi.exponent != w.r_p) return fail(reason, "r_p mismatch");
                FpCurve fc = reduce_curve(mc, w.p);
                FpPoint qbar = reduce_mod_p(mc, q0, w.p);
                if (fp_scalar_mul(fc, w.r_p / w.l, qbar).infinity)
                    return fail(reason, "witness scalar multiple vanishes");
                covered.insert(w.l);
            }
            for (ZZ l = 3; l <= lmax; l = next_prime(l))
                if (is_probable_prime(l) && !covered.count(l))
                    return fail(reason, "odd prime below l_max not witnessed");
            return true;
        }
    }
    return fail(reason, "unknown branch");
}

SweepStats sweep(const SweepJob& job) {
    SweepStats stats;
    std::set<std::pair<ZZ, ZZ>> done;
    if (job.resume) {
        std::ifstream in(job.out_path);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            Certificate c = from_json(line);
            done.emplace(c.n, c.t);
        }
    }
    std::ofstream out(job.out_path, std::ios::app);
    if (!out) throw range_error("sweep: cannot open output file " + job.out_path);
    for (ZZ n = job.n_min; n <= job.n_max; ++n) {
        for (ZZ t = job.t_min; t <= job.t_max; ++t) {
            if (t == 0) {
                ++stats.skipped;
                continue;
            }
            if (job.resume && done.count({n, t})) {
                ++stats.skipped;
                continue;
            }
            Certificate cert = certify(n, t, job.options);
            out << to_json(cert) << "\n";
            out.flush();
            ++stats.written;
            switch (cert.verdict) {
                case Verdict::NonDivisible: ++stats.non_divisible; break;
                case Verdict::Undecided: ++stats.undecided; break;
                case Verdict::HypothesisFailed: ++stats.hypothesis_failed; break;
                case Verdict::Counterexample: ++stats.counterexamples; break;
            }
        }
    }
    return stats;
}

}  // namespace ellcert
