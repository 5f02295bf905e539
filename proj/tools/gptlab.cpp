// gptlab: command-line front end. Every subcommand prints one JSON document
// (or its CSV flattening with --csv) and exits 0 only when every expected
// property held.

#include <gptlab/gptlab.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace {

using gptlab::Rational;
using nlohmann::ordered_json;

constexpr int kExitFailed = 1;
constexpr int kExitSchema = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitSizeCap = 4;

/// Input that could not be understood; maps to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    bool csv = false;
    std::optional<std::uint64_t> seed;
};

std::uint64_t resolve_seed(const Options &o) {
    if (o.seed) {
        return *o.seed;
    }
    if (const char *env = std::getenv("GPTLAB_SEED")) {
        try {
            std::size_t used = 0;
            const std::string s(env);
            const auto v = std::stoull(s, &used);
            if (used == s.size()) {
                return v;
            }
        } catch (const std::exception &) {
        }
        throw UsageError("GPTLAB_SEED must be an unsigned integer");
    }
    return 0;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string trim(std::string s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.pop_back();
    }
    std::size_t i = 0;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) {
        ++i;
    }
    return s.substr(i);
}

/// "random", a path to a truth-table file, or a literal '0'/'1' string.
gptlab::TruthTable load_truth_table(const std::string &source, unsigned n, std::uint64_t seed) {
    if (source == "random") {
        gptlab::Rng rng(gptlab::mix_seed(seed, 0x7461626cULL));
        return gptlab::TruthTable::random(n, rng);
    }
    std::string text = source;
    if (std::filesystem::is_regular_file(source)) {
        text = read_file(source);
    }
    gptlab::TruthTable t;
    try {
        t = gptlab::TruthTable::parse(trim(text));
    } catch (const std::invalid_argument &e) {
        throw UsageError(std::string("truth table: ") + e.what());
    }
    if (t.n() != n) {
        throw UsageError("truth table has " + std::to_string(t.size()) + " entries, --n " + std::to_string(n) +
                         " needs " + std::to_string(std::uint64_t{1} << n));
    }
    return t;
}

void emit(const Options &o, const ordered_json &j) {
    if (o.csv) {
        std::cout << gptlab::flatten_csv(j);
    } else {
        std::cout << j.dump() << "\n";
    }
}

struct Expected {
    bool causality, tomographic_locality, bit_symmetry;
};

int cmd_check_theory(const Options &o, const std::string &which, unsigned k) {
    gptlab::TheoryInstance theory;
    std::optional<Expected> expected;
    const std::uint64_t seed = resolve_seed(o);
    if (which == "classical") {
        theory = gptlab::classical_bit_theory();
        expected = Expected{true, true, true};
    } else if (which == "boxworld" || which == "gbit") {
        theory = gptlab::gbit_theory();
        expected = Expected{true, true, false};
    } else if (which == "rebit") {
        theory = gptlab::rebit_theory(k ? k : 4);
        expected = Expected{true, false, true};
    } else if (which == "qubit") {
        theory = gptlab::qubit_sampled_theory(k ? k : 24, seed);
        expected = Expected{true, true, true};
    } else {
        ordered_json j;
        try {
            j = ordered_json::parse(read_file(which));
        } catch (const ordered_json::parse_error &e) {
            throw gptlab::SchemaError(std::string("theory JSON: ") + e.what());
        }
        theory = gptlab::checked(gptlab::theory_from_json(j));
    }
    const auto v = gptlab::check_principles(theory);
    ordered_json out;
    out["causality"] = v.causality.holds;
    out["tomographic_locality"] = v.tomographic_locality.holds;
    out["bit_symmetry"] = v.bit_symmetry.holds;
    out["mode"] = v.mode;
    out["certificates"] = {v.causality.certificate, v.tomographic_locality.certificate, v.bit_symmetry.certificate};
    emit(o, out);
    if (expected && (expected->causality != v.causality.holds ||
                     expected->tomographic_locality != v.tomographic_locality.holds ||
                     expected->bit_symmetry != v.bit_symmetry.holds)) {
        return kExitFailed;
    }
    return 0;
}

int cmd_dump_theory(const std::string &which, unsigned k, std::uint64_t seed) {
    gptlab::TheoryInstance t;
    if (which == "classical") {
        t = gptlab::classical_bit_theory();
    } else if (which == "boxworld" || which == "gbit") {
        t = gptlab::gbit_theory();
    } else if (which == "rebit") {
        t = gptlab::rebit_theory(k ? k : 4);
    } else if (which == "qubit") {
        t = gptlab::qubit_sampled_theory(k ? k : 24, seed);
    } else {
        throw UsageError("unknown theory '" + which + "'");
    }
    std::cout << gptlab::theory_to_json(t).dump(2) << "\n";
    return 0;
}

int cmd_fbox(const Options &o, unsigned n, const std::string &f_arg, std::uint64_t samples) {
    if (n == 0) {
        throw UsageError("--n must be at least 1");
    }
    gptlab::require_parties(n);
    const std::uint64_t seed = resolve_seed(o);
    const auto f = load_truth_table(f_arg, n, seed);
    const auto box = gptlab::make_f_box(f);
    const auto norm = gptlab::is_normalized(box);
    const auto ns = gptlab::is_no_signalling(box);

    bool weights_ok = true;
    const Rational weight = gptlab::inverse_power_of_two(n - 1);
    for (const auto &v : box.palette()) {
        weights_ok = weights_ok && (v == 0 || v == weight);
    }

    gptlab::Rng pick(gptlab::mix_seed(seed, 0x78ULL));
    std::uint64_t violations = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        const std::uint64_t x = gptlab::uniform_below(pick, box.settings_count());
        const std::uint64_t a = gptlab::sample_local_measurement(box, x, gptlab::mix_seed(seed, i));
        violations += gptlab::parity(a) != f(x);
    }

    ordered_json out;
    out["n"] = n;
    out["seed"] = seed;
    out["f"] = f.str();
    out["nonzero_weight"] = gptlab::to_string(weight);
    out["entries_exact"] = weights_ok;
    out["normalized"] = norm.holds;
    out["no_signalling"] = ns.holds;
    out["samples"] = samples;
    out["violations"] = violations;
    emit(o, out);
    return (weights_ok && norm.holds && ns.holds && violations == 0) ? 0 : kExitFailed;
}

int cmd_commcc(const Options &o, const std::string &task_arg, std::optional<unsigned> n, const std::string &mode) {
    std::optional<gptlab::CommTask> task;
    if (task_arg == "ip" || task_arg == "eq") {
        if (!n || *n == 0) {
            throw UsageError("--task " + task_arg + " needs --n >= 1");
        }
        gptlab::require_parties(*n, 10);
        task = task_arg == "ip" ? gptlab::CommTask::inner_product(*n) : gptlab::CommTask::equality(*n);
    } else {
        try {
            task = gptlab::CommTask::parse(read_file(task_arg));
        } catch (const std::invalid_argument &e) {
            throw UsageError(std::string("task file: ") + e.what());
        }
        if (n && *n != task->n()) {
            throw UsageError("--n disagrees with the task file");
        }
    }
    if (mode == "vandam") {
        const auto r = gptlab::verify_van_dam_all(*task, resolve_seed(o));
        emit(o, gptlab::report_to_json(r));
        return (r.correct == r.total && r.max_messages == 1) ? 0 : kExitFailed;
    }
    gptlab::require_parties(task->n(), 10);
    ordered_json out;
    out["n"] = task->n();
    out["one_way_cc"] = gptlab::one_way_cc(*task);
    out["det_cc"] = task->n() <= gptlab::kMaxDetCcInputBits ? ordered_json(gptlab::det_cc(*task)) : ordered_json(nullptr);
    emit(o, out);
    return 0;
}

int cmd_advice(const Options &o, unsigned n, const std::string &f_arg) {
    if (n == 0) {
        throw UsageError("--n must be at least 1");
    }
    gptlab::require_parties(n);
    const auto f = load_truth_table(f_arg, n, resolve_seed(o));
    const auto r = gptlab::decide_slice({f});
    emit(o, gptlab::report_to_json(r));
    return (r.agreement == r.total && r.deterministic && r.gap == 1) ? 0 : kExitFailed;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"gptlab: generalized probabilistic theory experiments"};
    app.require_subcommand(1);
    Options opts;
    app.add_flag("--csv", opts.csv, "Flatten the report to CSV");

    std::uint64_t seed_value = 0;
    auto add_seed = [&](CLI::App *sub) {
        sub->add_option("--seed", seed_value, "Seed (default: $GPTLAB_SEED, else 0)");
    };

    std::string theory_name;
    unsigned k = 0;
    auto *check = app.add_subcommand("check-theory", "Check causality, tomographic locality and bit-symmetry");
    check->add_option("theory", theory_name, "classical | boxworld | rebit | qubit | path to theory JSON")->required();
    check->add_option("--k", k, "Resolution for rebit (4 or 8) and qubit (6..24)");
    add_seed(check);

    auto *dump = app.add_subcommand("dump-theory", "Print a built-in theory in the theory JSON schema");
    dump->add_option("theory", theory_name, "classical | boxworld | rebit | qubit")->required();
    dump->add_option("--k", k, "Resolution for rebit and qubit");
    add_seed(dump);

    unsigned n = 0;
    std::string f_arg = "random";
    std::uint64_t samples = 10000;
    auto *fbox = app.add_subcommand("fbox", "Build an f-box, verify it exactly, and sample it");
    fbox->add_option("--n", n, "Number of parties")->required();
    fbox->add_option("--f", f_arg, "Truth table: file, literal 0/1 string, or 'random'");
    fbox->add_option("--samples", samples, "Number of seeded samples");
    add_seed(fbox);

    std::string task_arg;
    std::string mode = "vandam";
    auto *comm = app.add_subcommand("commcc", "One-bit protocol over a shared f-box and classical oracles");
    comm->add_option("--task", task_arg, "ip | eq | path to task file")->required();
    auto *comm_n = comm->add_option("--n", n, "Per-party input length");
    comm->add_option("--mode", mode, "vandam | oracle")->check(CLI::IsMember({"vandam", "oracle"}));
    add_seed(comm);

    auto *adv = app.add_subcommand("advice", "Decide a language slice with Boxworld advice");
    adv->add_option("--n", n, "Input length")->required();
    adv->add_option("--f", f_arg, "Membership table: file, literal 0/1 string, or 'random'");
    add_seed(adv);

    CLI11_PARSE(app, argc, argv);

    for (auto *sub : {check, dump, fbox, comm, adv}) {
        if (sub->parsed() && sub->count("--seed")) {
            opts.seed = seed_value;
        }
    }

    try {
        if (check->parsed()) {
            return cmd_check_theory(opts, theory_name, k);
        }
        if (dump->parsed()) {
            return cmd_dump_theory(theory_name, k, resolve_seed(opts));
        }
        if (fbox->parsed()) {
            return cmd_fbox(opts, n, f_arg, samples);
        }
        if (comm->parsed()) {
            std::optional<unsigned> task_n;
            if (comm_n->count()) {
                task_n = n;
            }
            return cmd_commcc(opts, task_arg, task_n, mode);
        }
        if (adv->parsed()) {
            return cmd_advice(opts, n, f_arg);
        }
    } catch (const gptlab::SizeCapExceeded &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSizeCap;
    } catch (const gptlab::InvalidTheory &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const gptlab::GroupNotClosed &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const gptlab::SchemaError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSchema;
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSchema;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSchema;
    }
    return 0;
}
