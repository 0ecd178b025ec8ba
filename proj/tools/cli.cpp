#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "qcorr/entanglement.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/monogamy.hpp"
#include "qcorr/parallel.hpp"
#include "qcorr/state_file.hpp"
#include "report.hpp"

namespace qcorr::cli {

using nlohmann::ordered_json;

namespace {

struct CommonFlags {
    std::uint64_t seed = 1;
    std::size_t restarts = 0;
    std::size_t max_iterations = 2000;
    double opt_tol = 1e-12;
    double tol_sat = kSaturationTol;
    bool json = false;
    bool povm = false;

    OptimizerConfig optimizer(std::uint64_t seed_offset = 0) const {
        OptimizerConfig cfg;
        cfg.seed = seed + seed_offset;
        cfg.restarts = restarts;
        cfg.max_iterations = max_iterations;
        cfg.tolerance = opt_tol;
        cfg.search = povm ? MeasurementSearch::rank_one_povm : MeasurementSearch::projective;
        return cfg;
    }
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--seed", f.seed, "Random seed");
    cmd->add_option("--opt-restarts", f.restarts, "Optimizer restarts per batch (0: auto)");
    cmd->add_option("--opt-tol", f.opt_tol, "Simplex convergence tolerance (bits)");
    cmd->add_option("--opt-max-iter", f.max_iterations, "Simplex iteration cap per restart");
    cmd->add_option("--tol-sat", f.tol_sat, "Entropy-equality tolerance for saturation verdicts");
    cmd->add_flag("--json", f.json, "Emit the report as JSON");
    cmd->add_flag("--povm", f.povm, "Search rank-1 POVMs instead of projective measurements");
}

ordered_json header(const std::string& command, const CommonFlags& f) {
    ordered_json r;
    r["tool"] = "qcorr";
    r["version"] = QCORR_VERSION;
    r["command"] = command;
    r["seed"] = f.seed;
    return r;
}

void emit(const ordered_json& report, const CommonFlags& f, std::ostream& out) {
    if (f.json)
        out << report.dump(2) << '\n';
    else
        render_text(report, out);
}

// "1|2,3" → groups of 1-based factor indices. Empty spec → one group per factor.
Partition parse_partition(const std::string& spec, std::size_t n_factors) {
    std::vector<Party> parties;
    if (spec.empty()) {
        if (n_factors != 2)
            throw PartitionError("state has " + std::to_string(n_factors) +
                                 " factors; pass --partition to group them into two parties");
        return Partition::per_factor(2);
    }
    std::stringstream groups(spec);
    std::string group;
    while (std::getline(groups, group, '|')) {
        Party p{std::string(1, static_cast<char>('A' + parties.size())), {}};
        std::stringstream items(group);
        std::string item;
        while (std::getline(items, item, ',')) {
            std::size_t pos = 0;
            unsigned long idx = 0;
            try {
                idx = std::stoul(item, &pos);
            } catch (const std::exception&) {
                throw PartitionError("bad factor index '" + item + "' in partition spec");
            }
            if (pos != item.size() || idx < 1)
                throw PartitionError("bad factor index '" + item + "' in partition spec");
            p.factors.push_back(idx - 1);
        }
        parties.push_back(std::move(p));
    }
    if (parties.size() != 2) throw PartitionError("partition spec must name exactly two groups");
    return Partition(std::move(parties), n_factors);
}

// "A"/"B" or 1-based "1"/"2".
std::string parse_party(const std::string& spec) {
    if (spec == "A" || spec == "a" || spec == "1") return "A";
    if (spec == "B" || spec == "b" || spec == "2") return "B";
    throw PartitionError("--measure expects A, B, 1 or 2, got '" + spec + "'");
}

DimList parse_dims(const std::string& spec) {
    DimList dims;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        unsigned long d = 0;
        try {
            d = std::stoul(item, &pos);
        } catch (const std::exception&) {
            throw ParseError("bad dimension '" + item + "'");
        }
        if (pos != item.size() || d < 1) throw ParseError("bad dimension '" + item + "'");
        dims.push_back(d);
    }
    if (dims.empty()) throw ParseError("empty --dims");
    return dims;
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
    std::string path;
    std::string measure = "B";
    std::string partition;
    bool no_shortcut = false;
};

ordered_json discord_entry(const DensityMatrix& rho, const Partition& part,
                           const std::string& unmeasured, const std::string& measured,
                           const CommonFlags& f, bool allow_shortcut,
                           std::vector<std::string>& warnings) {
    ordered_json j;
    const std::string dir = "(" + unmeasured + "|" + measured + ")";
    j["measured"] = measured;
    try {
        const auto d = discord(rho, part, unmeasured, measured, f.optimizer(), allow_shortcut,
                               f.tol_sat);
        const double mi = mutual_information(rho, part, unmeasured, measured);
        j["J" + dir] = mi - d.value;
        j["D" + dir] = d.value;
        j["method"] = std::string(to_string(d.method));
        j["spread"] = d.spread;
        j["restarts_used"] = d.restarts_used;
        j["consistent"] = d.consistent;
        if (!d.consistent)
            warnings.push_back("optimizer restarts disagree for D" + dir + " (spread " +
                               std::to_string(d.spread) + ")");
    } catch (const UnsupportedError& e) {
        j["skipped"] = e.what();
    }
    return j;
}

int cmd_analyze(const AnalyzeArgs& args, const CommonFlags& f, std::ostream& out,
                std::ostream& err) {
    StateFile file;
    try {
        file = read_state_file(args.path);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kParseError;
    }
    std::optional<DensityMatrix> rho;
    try {
        rho.emplace(to_density(file));
    } catch (const std::invalid_argument& e) {
        err << "invalid state: " << e.what() << '\n';
        return kInvalidState;
    }
    Partition part = Partition::per_factor(1);
    std::string measured;
    try {
        part = parse_partition(args.partition, rho->dims().size());
        measured = parse_party(args.measure);
    } catch (const PartitionError& e) {
        err << "parse error: " << e.what() << '\n';
        return kParseError;
    }
    const std::string unmeasured = measured == "A" ? "B" : "A";

    auto report = header("analyze", f);
    report["label"] = file.label.value_or("");
    report["dims"] = rho->dims();
    report["measured"] = measured;
    const auto ent = entropy_report(*rho, part);
    report["entropies"] = entropy_json(ent, "A", "B");

    std::vector<std::string> warnings;
    ordered_json discords = ordered_json::array();
    discords.push_back(discord_entry(*rho, part, unmeasured, measured, f, !args.no_shortcut, warnings));
    discords.push_back(discord_entry(*rho, part, measured, unmeasured, f, !args.no_shortcut, warnings));
    report["discord"] = discords;

    const auto verdict = classify_saturation(*rho, part, f.tol_sat);
    report["verdict"] = verdict_json(verdict);

    std::optional<StructureWitness> witness;
    if (verdict.verdict != SaturationCase::neither) {
        const auto outcome = structure_extract(*rho, part, f.tol_sat);
        if (const auto* w = std::get_if<StructureWitness>(&outcome)) {
            witness = *w;
            report["witness"] = witness_json(*w);
        } else {
            report["structure_failure"] = failure_json(std::get<StructureFailure>(outcome));
            warnings.push_back("saturation verdict without a structure witness");
        }
    }

    ordered_json eof;
    const auto rho_ab = marginal(*rho, part, {"A", "B"});
    if (rho_ab.dims() == DimList{2, 2}) {
        const auto e = eof_two_qubit(rho_ab);
        eof["E_F(A:B)"] = e.value;
        eof["concurrence"] = concurrence(rho_ab);
        eof["method"] = std::string(to_string(e.method));
    } else if (ent.s_ab <= kSaturationTol) {
        eof["E_F(A:B)"] = ent.s_a;
        eof["method"] = "pure_state";
    } else if (witness) {
        const auto e = witness->phi.dims() == DimList{2, 2}
                           ? eof_two_qubit(witness->phi.density())
                           : eof_pure(witness->phi, Partition::per_factor(2));
        eof["E_F(A:B)"] = e.value;
        eof["method"] = "structure_" + std::string(to_string(e.method));
    } else {
        eof["E_F(A:B)"] = nullptr;
        eof["method"] = "unavailable";
    }
    report["eof"] = eof;
    report["warnings"] = warnings;
    emit(report, f, out);
    return kSuccess;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    std::string which;
    std::size_t n = 100;
    std::string dims;
    std::size_t rank = 0;
    std::string csv;
    double tol = 3e-3;
    double near_pure = 0.0;
};

struct SweepRow {
    std::vector<double> values;
    bool failed = false;
};

int cmd_verify(const VerifyArgs& args, const CommonFlags& f, std::ostream& out,
               std::ostream& err) {
    DimList dims;
    try {
        if (!args.dims.empty()) dims = parse_dims(args.dims);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kParseError;
    }

    std::vector<std::string> columns;
    std::function<SweepRow(std::uint64_t, const OptimizerConfig&)> sample;
    std::string check;

    if (args.which == "tradeoff") {
        if (dims.empty()) dims = {2, 2, 2};
        if (dims.size() != 3 || dims[1] > kMaxMeasuredDim) {
            err << "unsupported dims for tradeoff: need three factors with d_B <= 4\n";
            return kParseError;
        }
        columns = {"s_b", "discord_ab", "classical_eb", "defect", "spread_d", "spread_j"};
        check = "max |D(A|B) + J(E|B) - S(B)|";
        sample = [&](std::uint64_t seed, const OptimizerConfig& cfg) {
            const auto r = tradeoff_pure(random_pure(dims, seed), Partition::per_factor(3), cfg);
            return SweepRow{{r.s_b, r.discord_ab, r.classical_eb, r.defect, r.spread_d, r.spread_j},
                            std::abs(r.defect) > args.tol};
        };
    } else if (args.which == "kw") {
        if (dims.empty()) dims = {2, 2};
        const std::size_t rank = args.rank ? args.rank : 2;
        if (dims != DimList{2, 2} || rank != 2) {
            err << "unsupported dims for kw: the concurrence check needs dims 2,2 and rank 2\n";
            return kParseError;
        }
        columns = {"s_a", "eof_ae", "classical_ab", "defect", "spread_j"};
        check = "max |E_F(A:E) + J(A|B) - S(A)|";
        sample = [&, rank](std::uint64_t seed, const OptimizerConfig& cfg) {
            const auto rho = random_density(dims, rank, seed);
            const auto psi = purify(rho);
            const auto abe = Partition::per_factor(3);
            const auto psi_rho = psi.density();
            const double eof = eof_two_qubit(marginal(psi_rho, abe, {"A", "C"})).value;
            const auto j = classical_correlation(psi_rho, abe, "A", "B", cfg);
            const double s_a = entropy_of(psi_rho, abe, "A");
            const double defect = eof + j.value - s_a;
            return SweepRow{{s_a, eof, j.value, defect, j.spread}, std::abs(defect) > args.tol};
        };
    } else if (args.which == "inequality") {
        if (dims.empty()) dims = {2, 2, 2};
        const std::size_t rank = args.rank ? args.rank : 2;
        if (dims.size() != 3 || dims[1] > kMaxMeasuredDim || rank > total_dim(dims)) {
            err << "unsupported dims or rank for inequality\n";
            return kParseError;
        }
        columns = {"s_b", "discord_ab", "classical_cb", "slack", "spread_d", "spread_j"};
        check = "min S(B) - D(A|B) - J(C|B)";
        sample = [&, rank](std::uint64_t seed, const OptimizerConfig& cfg) {
            const auto r = tripartite_inequality(random_density(dims, rank, seed),
                                                 Partition::per_factor(3), cfg);
            return SweepRow{{r.rhs, r.discord_ab, r.classical_cb, r.slack, r.spread_d, r.spread_j},
                            r.slack < -args.tol};
        };
    } else if (args.which == "strictness") {
        if (!dims.empty() && dims != DimList{2, 2}) {
            err << "strictness scans two-qubit states only\n";
            return kParseError;
        }
        StrictnessOptions so;
        so.rank = args.rank ? args.rank : 4;
        so.near_pure_weight = args.near_pure;
        if (so.rank < 2 || so.rank > 4) {
            err << "strictness needs rank between 2 and 4\n";
            return kParseError;
        }
        columns = {"gap_b", "gap_a", "spread"};
        check = "min(S(B) - D(A|B), S(A) - D(B|A))";
        sample = [so](std::uint64_t seed, const OptimizerConfig& cfg) {
            const auto rho = strictness_sample(so, seed);
            const auto ab = Partition::per_factor(2);
            const auto ent = entropy_report(rho, ab);
            const auto d_ab = quantum_discord(rho, ab, "A", "B", cfg);
            const auto d_ba = quantum_discord(rho, ab, "B", "A", cfg);
            const double gb = ent.s_b - d_ab.value;
            const double ga = ent.s_a - d_ba.value;
            return SweepRow{{gb, ga, std::max(d_ab.spread, d_ba.spread)}, gb <= 0.0 || ga <= 0.0};
        };
    } else {
        err << "unknown verification '" << args.which << "'\n";
        return kParseError;
    }

    const auto rows = parallel_map(args.n, [&](std::size_t i) {
        return sample(f.seed + i, f.optimizer(i));
    });

    std::ofstream csv;
    if (!args.csv.empty()) {
        csv.open(args.csv);
        if (!csv) {
            err << "cannot write " << args.csv << '\n';
            return kParseError;
        }
        csv << "seed";
        for (const auto& c : columns) csv << ',' << c;
        csv << '\n';
    }

    std::size_t failures = 0;
    std::vector<std::uint64_t> failed_seeds;
    std::vector<std::uint64_t> flagged;
    double worst = args.which == "tradeoff" || args.which == "kw"
                       ? 0.0
                       : std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        const std::uint64_t seed = f.seed + i;
        if (csv.is_open()) {
            csv << seed;
            for (double v : row.values) csv << ',' << csv_number(v);
            csv << '\n';
        }
        if (row.failed) {
            ++failures;
            failed_seeds.push_back(seed);
        }
        if (args.which == "tradeoff" || args.which == "kw") {
            worst = std::max(worst, std::abs(row.values[3]));
        } else if (args.which == "inequality") {
            worst = std::min(worst, row.values[3]);
        } else {
            const double g = std::min(row.values[0], row.values[1]);
            worst = std::min(worst, g);
            if (g < 1e-4) flagged.push_back(seed);
        }
    }

    auto report = header("verify " + args.which, f);
    report["samples"] = args.n;
    report["dims"] = dims;
    report["tolerance"] = args.tol;
    report["check"] = check;
    report["worst"] = args.n ? worst : 0.0;
    report["failures"] = failures;
    report["failed_seeds"] = failed_seeds;
    if (args.which == "strictness") report["flagged_for_inspection"] = flagged;
    if (!args.csv.empty()) report["csv"] = args.csv;
    report["pass"] = failures == 0;
    emit(report, f, out);
    return failures == 0 ? kSuccess : kVerificationFailure;
}

// ---------------------------------------------------------------- structure

struct StructureArgs {
    std::string path;
    std::string write_prefix;
};

int cmd_structure(const StructureArgs& args, const CommonFlags& f, std::ostream& out,
                  std::ostream& err) {
    StateFile file;
    try {
        file = read_state_file(args.path);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kParseError;
    }
    std::optional<DensityMatrix> rho;
    try {
        rho.emplace(to_density(file));
    } catch (const std::invalid_argument& e) {
        err << "invalid state: " << e.what() << '\n';
        return kInvalidState;
    }
    if (rho->dims().size() != 2) {
        err << "parse error: structure expects a bipartite state (two dims)\n";
        return kParseError;
    }
    const auto part = Partition::per_factor(2);
    const auto verdict = classify_saturation(*rho, part, f.tol_sat);

    auto report = header("structure", f);
    report["label"] = file.label.value_or("");
    report["dims"] = rho->dims();
    report["entropies"] = entropy_json(verdict.entropies, "A", "B");
    report["verdict"] = verdict_json(verdict);

    int code = kSuccess;
    if (verdict.verdict != SaturationCase::neither) {
        const auto outcome = structure_extract(*rho, part, f.tol_sat);
        if (const auto* w = std::get_if<StructureWitness>(&outcome)) {
            report["witness"] = witness_json(*w);
            if (!args.write_prefix.empty()) {
                write_state_file(args.write_prefix + "-isolated.json",
                                 make_state_file(w->rho_isolated, std::string("isolated")));
                write_state_file(args.write_prefix + "-phi.json",
                                 make_state_file(w->phi, std::string("phi")));
            }
        } else {
            report["structure_failure"] = failure_json(std::get<StructureFailure>(outcome));
            code = kVerificationFailure;
        }
    }
    emit(report, f, out);
    return code;
}

// ---------------------------------------------------------------- make-example

struct MakeArgs {
    std::string which;
    std::vector<std::uint64_t> params;
    std::string out;
};

int cmd_make_example(const MakeArgs& args, const CommonFlags& f, std::ostream& out,
                     std::ostream& err) {
    StateFile file;
    if (args.which == "paper") {
        file = make_state_file(paper_example_state(), std::string("paper-example"));
    } else if (args.which == "bell") {
        file = make_state_file(bell_state(), std::string("bell"));
    } else if (args.which == "product") {
        ComplexMatrix a(2, 2), b(2, 2);
        a << 0.7, Complex{0.1, 0.05}, Complex{0.1, -0.05}, 0.3;
        b << 0.4, Complex{0.0, -0.2}, Complex{0.0, 0.2}, 0.6;
        file = make_state_file(DensityMatrix(tensor_product(a, b), {2, 2}), std::string("product"));
    } else if (args.which == "constructed") {
        const auto p = args.params;
        if (p.size() != 3 && p.size() != 4) {
            err << "constructed expects d_L d_R d_B [seed]\n";
            return kParseError;
        }
        const std::uint64_t seed = p.size() == 4 ? p[3] : f.seed;
        try {
            file = make_state_file(constructed_saturating_state(p[0], p[1], p[2], seed),
                                   "constructed-" + std::to_string(p[0]) + "-" +
                                       std::to_string(p[1]) + "-" + std::to_string(p[2]) +
                                       "-seed" + std::to_string(seed));
        } catch (const std::invalid_argument& e) {
            err << "parse error: " << e.what() << '\n';
            return kParseError;
        }
    } else {
        err << "unknown example '" << args.which << "'\n";
        return kParseError;
    }
    try {
        write_state_file(args.out, file);
    } catch (const std::exception& e) {
        err << "I/O error: " << e.what() << '\n';
        return kParseError;
    }
    auto report = header("make-example", f);
    report["example"] = args.which;
    report["path"] = args.out;
    report["dims"] = file.dims;
    emit(report, f, out);
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"qcorr: entropic correlation measures and discord-bound checks"};
    app.require_subcommand(1);
    CommonFlags flags;

    AnalyzeArgs analyze;
    auto* a = app.add_subcommand("analyze", "Entropies, J, D, EoF and saturation verdict for a state file");
    a->add_option("path", analyze.path, "State file")->required();
    a->add_option("--measure", analyze.measure, "Measured party: A, B, 1 or 2");
    a->add_option("--partition", analyze.partition, "Group factors into two parties, e.g. 1|2,3");
    a->add_flag("--no-shortcut", analyze.no_shortcut, "Always optimize directly");
    add_common(a, flags);

    VerifyArgs verify;
    auto* v = app.add_subcommand("verify", "Sample random states and check an identity or inequality");
    v->add_option("which", verify.which, "tradeoff | kw | inequality | strictness")
        ->required()
        ->check(CLI::IsMember({"tradeoff", "kw", "inequality", "strictness"}));
    v->add_option("-n", verify.n, "Number of samples");
    v->add_option("--dims", verify.dims, "Comma-separated subsystem dimensions");
    v->add_option("--rank", verify.rank, "Rank of sampled mixed states");
    v->add_option("--csv", verify.csv, "Write per-sample rows to this CSV file");
    v->add_option("--tol", verify.tol, "Tolerance for the exactness check");
    v->add_option("--near-pure", verify.near_pure, "strictness: weight of the minor eigenvector");
    add_common(v, flags);

    StructureArgs structure;
    auto* s = app.add_subcommand("structure", "Extract the product-structure witness of a saturating state");
    s->add_option("path", structure.path, "State file")->required();
    s->add_option("--write-factors", structure.write_prefix, "Write witness factors to PREFIX-*.json");
    add_common(s, flags);

    MakeArgs make;
    auto* m = app.add_subcommand("make-example", "Write an example state file");
    m->add_option("which", make.which, "paper | bell | product | constructed")
        ->required()
        ->check(CLI::IsMember({"paper", "bell", "product", "constructed"}));
    m->add_option("params", make.params, "constructed: d_L d_R d_B [seed]");
    m->add_option("-o,--out", make.out, "Output path")->required();
    add_common(m, flags);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();  // program name
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        if (const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front())
            err << sub->help();
        return kParseError;
    }

    try {
        if (a->parsed()) return cmd_analyze(analyze, flags, out, err);
        if (v->parsed()) return cmd_verify(verify, flags, out, err);
        if (s->parsed()) return cmd_structure(structure, flags, out, err);
        if (m->parsed()) return cmd_make_example(make, flags, out, err);
    } catch (const InvalidStateError& e) {
        err << "invalid state: " << e.what() << '\n';
        return kInvalidState;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kParseError;
    }
    return kParseError;
}

}  // namespace qcorr::cli
