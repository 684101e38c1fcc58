// Copyright 2026 The qtoken Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qtoken/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qtoken/attacks.hpp"
#include "qtoken/entropy.hpp"
#include "qtoken/store.hpp"
#include "qtoken/verify.hpp"

namespace qtoken::cli {
namespace {

using nlohmann::ordered_json;

// Sub-stream tags so each command draws from its own part of the seed.
enum Stream : std::uint64_t {
    kGeneratePool = 100,
    kGenerateRng,
    kVerifyPool,
    kVerifyRng,
    kEntropyPool,
    kEntropyRng,
    kEntropySample,
    kAttackPool,
    kAttackRng,
};

void print_json(std::ostream& out, const ordered_json& j) { out << j.dump() << '\n'; }

ordered_json report_json(const verify::VerificationReport& r) {
    ordered_json j;
    j["success"] = r.success;
    j["difference"] = r.difference;
    j["threshold"] = r.threshold;
    j["evolution_step"] = r.evolution_step;
    j["entropy_level"] = r.entropy_level;
    j["temporal_consistency"] = r.temporal_consistency;
    j["verification_rounds"] = r.verification_rounds;
    j["failure_count"] = r.failure_count;
    return j;
}

ordered_json analysis_json(const attacks::SecurityAnalysis& a) {
    ordered_json j;
    for (attacks::AttackKind kind : attacks::kAllAttacks) {
        j[std::string(attacks::to_string(kind))] = a.rate(kind);
    }
    j["trials_per_attack"] = a.trials_per_attack;
    j["overall_security_score"] = a.overall_security_score;
    j["entropy_quality_score"] = a.entropy_quality_score;
    return j;
}

token::TokenRecord fresh_token(const RunConfig& config, std::uint64_t pool_stream, std::uint64_t rng_stream) {
    entropy::EntropyPool pool = entropy::fill_pool(mix_seed(config.seed, pool_stream));
    Rng rng(mix_seed(config.seed, rng_stream));
    return token::generate_token(pool, config.now(), rng);
}

}  // namespace

token::Seconds RunConfig::now() const {
    if (clock_override) {
        return *clock_override;
    }
    return std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch())
        .count();
}

int cmd_generate(const RunConfig& config, std::uint64_t count, std::ostream& out, std::ostream& err) {
    if (count == 0) {
        return kOk;
    }
    try {
        std::vector<token::TokenRecord> tokens = store::load(config.store_path);
        // Keyed on the store size so repeated runs with one seed append new tokens.
        const std::uint64_t salt = tokens.size();
        entropy::EntropyPool pool = entropy::fill_pool(mix_seed(mix_seed(config.seed, kGeneratePool), salt));
        Rng rng(mix_seed(mix_seed(config.seed, kGenerateRng), salt));
        const token::Seconds now = config.now();
        std::vector<std::string> ids;
        for (std::uint64_t i = 0; i < count; ++i) {
            tokens.push_back(token::generate_token(pool, now, rng));
            ids.push_back(tokens.back().token_id);
        }
        store::save(config.store_path, tokens);
        for (const auto& id : ids) {
            out << id << '\n';
        }
        return kOk;
    } catch (const store::StoreIoError& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const store::StoreFormatError& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    }
}

int cmd_verify(const RunConfig& config, const std::string& token_id, std::ostream& out, std::ostream& err) {
    try {
        std::vector<token::TokenRecord> tokens = store::load(config.store_path);
        auto it = std::find_if(tokens.begin(), tokens.end(),
                               [&](const token::TokenRecord& t) { return t.token_id == token_id; });
        if (it == tokens.end()) {
            err << "error: no token with id " << token_id << " in " << config.store_path.string() << '\n';
            return kUsage;
        }
        entropy::EntropyPool pool = entropy::fill_pool(mix_seed(config.seed, kVerifyPool));
        Rng rng(mix_seed(config.seed, kVerifyRng));
        verify::VerificationReport report;
        try {
            report = verify::verify_token(*it, config.now(), pool, rng);
        } catch (const token::ExpiredTokenError& e) {
            err << "error: " << e.what() << '\n';
            return kVerificationFailed;
        } catch (const token::TamperedTokenError& e) {
            err << "error: " << e.what() << '\n';
            return kVerificationFailed;
        }
        store::save(config.store_path, tokens);
        print_json(out, report_json(report));
        return report.success ? kOk : kVerificationFailed;
    } catch (const store::StoreIoError& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const store::StoreFormatError& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    }
}

int cmd_attack(const RunConfig& config, bool fresh, std::uint64_t fresh_count, std::ostream& out,
               std::ostream& err) {
    if (config.trials == 0) {
        err << "error: --trials must be at least 1\n";
        return kUsage;
    }
    std::vector<token::TokenRecord> tokens;
    if (fresh) {
        if (fresh_count == 0) {
            err << "error: --count must be at least 1 with --fresh\n";
            return kUsage;
        }
        entropy::EntropyPool pool = entropy::fill_pool(mix_seed(config.seed, kAttackPool));
        Rng rng(mix_seed(config.seed, kAttackRng));
        for (std::uint64_t i = 0; i < fresh_count; ++i) {
            tokens.push_back(token::generate_token(pool, config.now(), rng));
        }
    } else {
        try {
            tokens = store::load(config.store_path);
        } catch (const std::runtime_error& e) {
            err << "error: " << e.what() << '\n';
            return kIoError;
        }
        std::erase_if(tokens, [](const token::TokenRecord& t) { return !token::lifecycle_audit(t); });
        if (tokens.empty()) {
            err << "error: store " << config.store_path.string()
                << " has no usable tokens (use --fresh to attack generated ones)\n";
            return kUsage;
        }
    }
    const auto analysis =
        attacks::run_security_analysis(tokens, config.trials, config.seed, config.now(), config.shots);
    print_json(out, analysis_json(analysis));
    return kOk;
}

int cmd_entropy_report(const RunConfig& config, std::ostream& out, std::ostream& err) {
    if (config.shots == 0) {
        err << "error: --shots must be at least 1\n";
        return kUsage;
    }
    const token::TokenRecord tok = fresh_token(config, kEntropyPool, kEntropyRng);
    const token::Seconds t = config.now();
    const int step = token::evolution_step(tok, t);
    std::vector<double> layers(static_cast<std::size_t>(tok.temporal_depth));
    for (int l = 0; l < tok.temporal_depth; ++l) {
        layers[static_cast<std::size_t>(l)] = verify::derive_layer_entropy(tok.token_id, step, 0, l);
    }
    qsim::StateVector state = qsim::base_prepared_state();
    qsim::apply_circuit(state, token::evolution_circuit(tok, t, layers));
    Rng sample_rng(mix_seed(config.seed, kEntropySample));
    const qsim::Counts counts = qsim::sample_measurements(state, config.shots, sample_rng);
    const entropy::EntropyQualityReport report = entropy::entropy_quality(counts);

    ordered_json j;
    j["token_id"] = tok.token_id;
    j["shots"] = report.total_count;
    j["distinct_outcomes"] = report.distinct_outcomes;
    j["raw_entropy"] = report.raw_entropy;
    j["max_entropy"] = report.max_entropy;
    j["quality"] = report.quality;
    ordered_json c = ordered_json::object();
    for (const auto& [outcome, count] : counts) {
        c[qsim::to_bitstring(outcome, state.n_qubits())] = count;
    }
    j["counts"] = std::move(c);
    print_json(out, j);
    return kOk;
}

int cmd_evolve(const RunConfig& config, const std::string& token_id, std::int64_t horizon_seconds,
               std::int64_t step_seconds, std::ostream& out, std::ostream& err) {
    if (step_seconds < 1 || horizon_seconds < 0) {
        err << "error: --step must be >= 1 and --horizon >= 0\n";
        return kUsage;
    }
    std::vector<token::TokenRecord> tokens;
    try {
        tokens = store::load(config.store_path);
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    }
    auto it = std::find_if(tokens.begin(), tokens.end(),
                           [&](const token::TokenRecord& t) { return t.token_id == token_id; });
    if (it == tokens.end()) {
        err << "error: no token with id " << token_id << " in " << config.store_path.string() << '\n';
        return kUsage;
    }
    const token::Seconds start = config.now();
    if (start < it->created_at) {
        err << "error: --now precedes the token's creation time\n";
        return kUsage;
    }
    out << "t,qubit,basis,expectation\n";
    const verify::BasisSchedule all_z = [] {
        verify::BasisSchedule b{};
        b.fill(qsim::MeasurementBasis::Z);
        return b;
    }();
    for (std::int64_t dt = 0; dt <= horizon_seconds; dt += step_seconds) {
        const token::Seconds t = start + dt;
        const int step = token::evolution_step(*it, t);
        std::vector<double> layers(static_cast<std::size_t>(it->temporal_depth));
        for (int l = 0; l < it->temporal_depth; ++l) {
            layers[static_cast<std::size_t>(l)] = verify::derive_layer_entropy(it->token_id, step, 0, l);
        }
        const auto values = verify::evolved_expectations(*it, t, layers, all_z);
        for (std::size_t q = 0; q < values.size(); ++q) {
            out << t << ',' << q << ",Z," << store::format_double(values[q]) << '\n';
        }
    }
    return kOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantum-token generation, verification and attack simulation"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig config;
    if (const char* env = std::getenv("QTOKEN_STORE"); env != nullptr && *env != '\0') {
        config.store_path = env;
    }
    std::string store_path = config.store_path.string();
    std::optional<token::Seconds> now;
    std::uint64_t count = 1;
    bool count_given = false;
    bool fresh = false;
    std::int64_t horizon = 3600;
    std::int64_t step = 900;

    app.add_option("--seed", config.seed, "Seed for every random stream");
    app.add_option("--store", store_path, "Token store (JSON lines); defaults to $QTOKEN_STORE");
    app.add_option("--shots", config.shots, "Measurement shots for entropy reports");
    app.add_option("--trials", config.trials, "Trials per attack kind");
    app.add_option("--now", now, "Frozen clock, unix seconds");
    auto* count_opt = app.add_option("--count", count, "Tokens to generate (generate, attack --fresh)");
    app.add_flag("--fresh", fresh, "Attack freshly generated tokens instead of the store");
    app.add_option("--horizon", horizon, "Evolution horizon in seconds");
    app.add_option("--step", step, "Evolution sample spacing in seconds");

    std::string token_id;
    auto* generate = app.add_subcommand("generate", "Append new tokens to the store");
    auto* verify_cmd = app.add_subcommand("verify", "Verify a stored token as its legitimate holder");
    verify_cmd->add_option("token_id", token_id, "Token id")->required();
    auto* attack = app.add_subcommand("attack", "Run the five attack simulations");
    auto* entropy_cmd = app.add_subcommand("entropy", "Entropy quality of a fresh token's evolved register");
    auto* evolve = app.add_subcommand("evolve", "Per-qubit <Z> over time as CSV");
    evolve->add_option("token_id", token_id, "Token id")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }
    count_given = count_opt->count() > 0;
    config.store_path = store_path;
    config.clock_override = now;

    if (generate->parsed()) return cmd_generate(config, count, out, err);
    if (verify_cmd->parsed()) return cmd_verify(config, token_id, out, err);
    if (attack->parsed()) return cmd_attack(config, fresh, count_given ? count : 10, out, err);
    if (entropy_cmd->parsed()) return cmd_entropy_report(config, out, err);
    if (evolve->parsed()) return cmd_evolve(config, token_id, horizon, step, out, err);
    return kUsage;
}

}  // namespace qtoken::cli
