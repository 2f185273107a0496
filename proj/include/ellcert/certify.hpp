#ifndef ELLCERT_CERTIFY_HPP
#define ELLCERT_CERTIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "ellcert/height.hpp"
#include "ellcert/tate.hpp"

namespace ellcert {

enum class Verdict { NonDivisible, Counterexample, HypothesisFailed, Undecided };

enum class Branch {
    None,
    HeightGap,
    ComponentParity,
    ModularWitness,
    KnownCounterexample,
    OnlyIntegralPoint
};

struct Witness {
    ZZ l, p, r_p;
};

struct CounterexampleEvidence {
    ZZ m;
    QQ x, y;
};

struct HeightGapEvidence {
    HeightValue h_upper, h_lower, quotient;
};

struct WitnessEvidence {
    HeightValue hhat;          // canonical height of the base point
    HeightValue height_floor;  // log|D_min| / (768 C^2)
    ZZ l_max;
    std::vector<Witness> witnesses;
    std::vector<ZZ> unwitnessed;
};

struct Certificate {
    ZZ n, t, delta;
    bool delta_squarefree = false;
    ModelTag model = ModelTag::E;
    Verdict verdict = Verdict::Undecided;
    Branch branch = Branch::None;
    std::optional<HeightGapEvidence> height_gap;
    std::optional<WitnessEvidence> witness_evidence;
    std::optional<CounterexampleEvidence> counterexample;
    std::string versions;
};

struct CertifyOptions {
    unsigned precision = 128;
    ZZ prime_budget{1000000};
    unsigned witness_cap = 10000;  // candidate primes tried per l
};

Certificate certify(const ZZ& n, const ZZ& t, const CertifyOptions& opt = {});

/// One-line JSON; integers as decimal strings, reals as {value, err}.
std::string to_json(const Certificate& cert);
Certificate from_json(const std::string& line);

/// Re-validates the recorded evidence without redoing any search. On failure
/// returns false and stores a reason when `reason` is non-null.
bool verify_certificate(const Certificate& cert, std::string* reason = nullptr);

struct SweepJob {
    ZZ n_min, n_max, t_min, t_max;
    std::string out_path = "certs.jsonl";
    bool resume = false;
    CertifyOptions options;
};

struct SweepStats {
    unsigned long long written = 0;
    unsigned long long skipped = 0;  // resume hits and t = 0
    unsigned long long non_divisible = 0;
    unsigned long long undecided = 0;
    unsigned long long hypothesis_failed = 0;
    unsigned long long counterexamples = 0;
};

/// Appends one certificate per (n, t) in the box to the JSONL output, in
/// lexicographic (n, t) order; with `resume` pairs already present in the
/// file are skipped.
SweepStats sweep(const SweepJob& job);

const char* verdict_name(Verdict v);
const char* branch_name(Branch b);

}  // namespace ellcert

#endif
