#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zxcss/css.hpp"
#include "zxcss/diagram.hpp"
#include "zxcss/f2.hpp"
#include "zxcss/io.hpp"
#include "zxcss/pauli.hpp"
#include "zxcss/rewrite.hpp"
#include "zxcss/scalar.hpp"
#include "zxcss/surface.hpp"
#include "zxcss/tensor.hpp"

namespace {

using nlohmann::ordered_json;
using namespace zxcss;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void print_text(const std::string& s) {
    std::cout << s;
    if (s.empty() || s.back() != '\n') std::cout << "\n";
}

void print_json(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

ordered_json scalar_json(const Scalar& s) {
    return ordered_json{{"zero", s.zero}, {"sign", s.sign}, {"half_power", s.half_power}};
}

// Entries indexed by output bits then input bits, wire 0 most significant.
ordered_json tensor_json(const DenseTensor& t, bool floats) {
    ordered_json j;
    j["in_qubits"] = t.in_qubits;
    j["out_qubits"] = t.out_qubits;
    ordered_json entries = ordered_json::array();
    const double unit = std::pow(2.0, 0.5 * double(t.half_power));
    for (int64_t v : t.num) {
        if (floats)
            entries.push_back(double(v) * unit);
        else
            entries.push_back(ordered_json::array({v, t.half_power}));
    }
    j["entries"] = entries;
    return j;
}

const char* verdict_name(VerdictKind k) {
    switch (k) {
        case VerdictKind::Equal: return "Equal";
        case VerdictKind::EqualUpToScalar: return "EqualUpToScalar";
        default: return "Different";
    }
}

void emit_trace(const Trace& tr) {
    for (const RuleApplication& a : tr) {
        ordered_json line;
        line["rule"] = rule_name(a.rule);
        line["site"] = a.site;
        line["scalar_delta"] = scalar_json(a.scalar_delta);
        std::cerr << line.dump() << "\n";
    }
}

Form parse_form(const std::string& s) { return s == "xz" ? Form::XZ : Form::ZX; }
Rep parse_rep(const std::string& s) { return s == "z" ? Rep::Z : Rep::X; }

int run_eval(const std::string& file, bool floats) {
    Diagram d = io::diagram_from_json(read_file(file));
    print_json(tensor_json(evaluate(d), floats));
    return 0;
}

int run_reduce(const std::string& file, const std::string& form, bool trace, bool dot) {
    Diagram d = io::diagram_from_json(read_file(file));
    Trace tr;
    NormalForm nf = normalize(d, parse_form(form), trace ? &tr : nullptr);
    if (trace) emit_trace(tr);
    Diagram out = nf_to_diagram(nf);
    if (dot)
        print_text(io::diagram_to_dot(out));
    else
        print_text(io::diagram_to_json(out));
    return 0;
}

int run_equal(const std::string& fa, const std::string& fb) {
    Diagram a = io::diagram_from_json(read_file(fa));
    Diagram b = io::diagram_from_json(read_file(fb));
    if (a.num_inputs() != b.num_inputs() || a.num_outputs() != b.num_outputs())
        throw std::invalid_argument("equal: boundary arities differ");
    Verdict v = pauli_equal(a, b);
    ordered_json j;
    j["verdict"] = verdict_name(v.kind);
    j["lambda"] =
        v.kind == VerdictKind::Different ? ordered_json(nullptr) : scalar_json(v.lambda);
    print_json(j);
    return v.kind == VerdictKind::Different ? 1 : 0;
}

// The chosen colour's generator rows become the interior spiders unchanged,
// so printed generators survive into the picture; the opposite list is only
// checked for commutation.
int run_css_to_zx(const std::string& file, const std::string& rep, bool dot) {
    CssCode code = code_from_json(read_file(file));
    if (!validate(code))
        throw std::invalid_argument(
            "code json: generators must be independent and commute across colours");
    NormalForm nf;
    if (parse_rep(rep) == Rep::X)
        nf = NormalForm{Form::ZX, code.n, code.sx, Scalar::one()};
    else
        nf = NormalForm{Form::XZ, code.n, code.sz, Scalar::one()};
    Diagram d = nf_to_diagram(nf);
    if (dot)
        print_text(io::diagram_to_dot(d));
    else
        print_text(io::diagram_to_json(d));
    return 0;
}

int run_zx_to_css(const std::string& file) {
    Diagram d = io::diagram_from_json(read_file(file));
    auto [s, sperp] = diagram_to_max_css(d);
    CssCode code{int(s.ambient()), s.basis(), sperp.basis()};
    print_text(code_to_json(code));
    return 0;
}

int run_encoder(const std::string& file, bool dot) {
    std::string text = read_file(file);
    CssCode code = code_from_json(text);
    std::optional<LogicalSet> logs = logicals_from_json(text);
    if (!logs)
        throw std::invalid_argument("code json: 'lx' and 'lz' are required to build an encoder");
    Encoder enc = encoder_from_code(code, *logs);
    if (dot)
        print_text(io::diagram_to_dot(enc.diagram));
    else
        print_text(io::diagram_to_json(enc.diagram));
    return 0;
}

int run_stabilises(const std::string& file, const std::string& pauli) {
    Diagram d = io::diagram_from_json(read_file(file));
    PauliOp p = parse_pauli_terms(pauli, d.num_outputs());
    bool ok = stabilises(d, p);
    ordered_json j;
    j["pauli"] = pauli_terms_string(p);
    j["stabilises"] = ok;
    print_json(j);
    return ok ? 0 : 1;
}

int run_surface(int rows, int cols, int parity, const std::string& rep, bool dot) {
    Patch p = surface_code(rows, cols, parity);
    Encoder enc = surface_encoder(p, parse_rep(rep));
    if (dot) {
        print_text(io::diagram_to_dot(enc.diagram));
        return 0;
    }
    ordered_json j;
    j["code"] = ordered_json::parse(code_to_json(p.code, &p.logicals));
    j["encoder"] = ordered_json::parse(io::diagram_to_json(enc.diagram));
    print_json(j);
    return 0;
}

int run_surgery(const std::string& op, int rows, int cols, const std::string& outcomes,
                bool outcomes_given, const std::string& method) {
    SurgeryContract (*build)(int, int, const std::vector<int>&) = nullptr;
    int seams = 0;
    if (op == "zsplit") {
        build = zsplit_contract;
        seams = zsplit_seam_count(rows, cols);
    } else if (op == "xsplit") {
        build = xsplit_contract;
        seams = xsplit_seam_count(rows, cols);
    } else if (op == "zmerge") {
        build = zmerge_contract;
        seams = zmerge_seam_count(rows, cols);
    } else {
        build = xmerge_contract;
        seams = xmerge_seam_count(rows, cols);
    }

    std::vector<std::vector<int>> assignments;
    if (outcomes_given) {
        std::vector<int> bits;
        for (char c : outcomes) {
            if (c != '0' && c != '1')
                throw std::invalid_argument("surgery: --outcomes must be a string of 0/1 bits");
            bits.push_back(c - '0');
        }
        if (int(bits.size()) != seams)
            throw std::invalid_argument("surgery: --outcomes needs exactly " +
                                        std::to_string(seams) + " bits for this operation");
        assignments.push_back(bits);
    } else {
        for (long a = 0; a < (1L << seams); a++) {
            std::vector<int> bits(static_cast<size_t>(seams), 0);
            for (int i = 0; i < seams; i++) bits[size_t(i)] = int((a >> (seams - 1 - i)) & 1);
            assignments.push_back(bits);
        }
    }

    bool all = true;
    ordered_json checks = ordered_json::array();
    for (const std::vector<int>& bits : assignments) {
        SurgeryContract c = build(rows, cols, bits);
        std::string bitstr;
        for (int b : bits) bitstr.push_back(char('0' + b));
        ordered_json entry;
        entry["outcomes"] = bitstr;
        entry["correction"] = pauli_terms_string(c.correction);
        bool ok = true;
        ordered_json scalar = nullptr;
        if (method == "rewrite" || method == "both") {
            Verdict v = pauli_equal(contract_lhs(c), contract_rhs(c));
            bool good = v.kind != VerdictKind::Different;
            entry["rewrite"] = good;
            if (good) scalar = scalar_json(v.lambda);
            ok = ok && good;
        }
        if (method == "oracle" || method == "both") {
            std::optional<Scalar> ratio =
                equal_up_to_scalar(evaluate(contract_lhs(c)), evaluate(contract_rhs(c)));
            bool good = ratio.has_value() && !ratio->zero;
            entry["oracle"] = good;
            if (good && scalar.is_null()) scalar = scalar_json(*ratio);
            ok = ok && good;
        }
        entry["verified"] = ok;
        entry["scalar"] = scalar;
        checks.push_back(entry);
        all = all && ok;
    }

    ordered_json j;
    j["operation"] = op;
    j["rows"] = rows;
    j["cols"] = cols;
    j["seams"] = seams;
    j["checks"] = checks;
    j["all_verified"] = all;
    print_json(j);
    return all ? 0 : 1;
}

int run_cnot_demo() {
    bool all = true;
    ordered_json checks = ordered_json::array();
    for (const CnotVerification& r : verify_cnot_network()) {
        ordered_json e;
        e["outcome"] = r.outcome;
        e["correction"] = pauli_terms_string(r.correction);
        e["matches"] = r.matches;
        checks.push_back(e);
        all = all && r.matches;
    }
    ordered_json j;
    j["checks"] = checks;
    j["all_match"] = all;
    print_json(j);
    return all ? 0 : 1;
}

Diagram random_diagram(std::mt19937& rng, int max_wires, int max_spiders, bool phases) {
    Diagram d;
    int k = 1 + static_cast<int>(rng() % max_spiders);
    std::vector<int> sp;
    for (int i = 0; i < k; i++) {
        Kind kind = (rng() % 2) ? Kind::Z : Kind::X;
        int phase = phases ? static_cast<int>(rng() % 2) : 0;
        sp.push_back(d.add_node(kind, phase));
    }
    int ne = k + static_cast<int>(rng() % (k + 1));
    for (int i = 0; i < ne; i++) {
        int a = sp[rng() % sp.size()];
        int b = sp[rng() % sp.size()];
        if (a == b && rng() % 4 != 0) continue;
        d.add_edge(a, b);
    }
    int wires = static_cast<int>(rng() % (max_wires + 1));
    int w = 0;
    while (w < wires) {
        if (w + 1 < wires && rng() % 8 == 0) {
            int b1 = d.add_output();
            int b2 = d.add_output();
            d.add_edge(b1, b2);
            w += 2;
            continue;
        }
        int b = d.add_output();
        d.add_edge(b, sp[rng() % sp.size()]);
        w++;
    }
    d.validate();
    return d;
}

f2::Subspace random_subspace(std::mt19937& rng, size_t n) {
    f2::BitMatrix gens(1 + rng() % n, n);
    for (size_t i = 0; i < gens.rows(); i++)
        for (size_t j = 0; j < n; j++) gens.set(i, j, rng() % 2);
    return f2::Subspace::span_of(gens);
}

NormalForm shuffled_basis(std::mt19937& rng, const f2::Subspace& s) {
    NormalForm nf = nf_from_subspace(s, Form::ZX);
    for (int step = 0; step < 6; step++) {
        size_t p = nf.rows.rows();
        if (p < 2) break;
        size_t src = rng() % p;
        size_t dst = rng() % p;
        if (src == dst) continue;
        nf = change_basis(nf, int(src), int(dst));
    }
    return nf;
}

int run_selftest(unsigned seed) {
    std::mt19937 rng(seed);
    int failures = 0;
    int nf_trials = 0, eq_trials = 0, push_trials = 0, rt_trials = 0, pauli_trials = 0;

    // Normalisation preserves the dense semantics exactly, in both forms.
    for (int t = 0; t < 40; t++) {
        Diagram d = random_diagram(rng, 4, 6, false);
        DenseTensor want = evaluate(d);
        for (Form f : {Form::ZX, Form::XZ}) {
            if (!(evaluate(nf_to_diagram(normalize(d, f))) == want)) failures++;
            nf_trials++;
        }
    }

    // The equality decision agrees with the oracle on same-subspace pairs in
    // different bases and on distinct-subspace pairs.
    for (int t = 0; t < 30; t++) {
        size_t n = 2 + rng() % 3;
        f2::Subspace s = random_subspace(rng, n);
        Diagram a = nf_to_diagram(shuffled_basis(rng, s));
        Diagram b = nf_to_diagram(shuffled_basis(rng, s));
        bool prop = equal_up_to_scalar(evaluate(a), evaluate(b)).has_value();
        if (equal_diagrams(a, b).kind == VerdictKind::Different || !prop) failures++;
        eq_trials++;

        f2::Subspace s2 = random_subspace(rng, n);
        int guard = 0;
        while (s2 == s && guard++ < 32) s2 = random_subspace(rng, n);
        if (s2 == s) continue;
        Diagram c = nf_to_diagram(nf_from_subspace(s2, Form::ZX));
        bool prop2 = equal_up_to_scalar(evaluate(a), evaluate(c)).has_value();
        if (equal_diagrams(a, c).kind != VerdictKind::Different || prop2) failures++;
        eq_trials++;
    }

    // Phase pushing factors any diagram into Pauli times phase-free exactly.
    for (int t = 0; t < 30; t++) {
        Diagram d = random_diagram(rng, 4, 6, true);
        PiPushResult r = pi_push_to_boundary(d);
        DenseTensor want = evaluate(bend_inputs(d));
        if (!(evaluate(apply_pauli_at_outputs(r.diagram, r.record)) == want)) failures++;
        push_trials++;
    }

    // Serialisation is a fixpoint under parse and print.
    for (int t = 0; t < 30; t++) {
        Diagram d = random_diagram(rng, 4, 6, true);
        std::string text = io::diagram_to_json(d);
        if (io::diagram_to_json(io::diagram_from_json(text)) != text) failures++;
        rt_trials++;
    }

    // Pauli application at the outputs matches the dense route.
    for (int t = 0; t < 30; t++) {
        Diagram d = random_diagram(rng, 4, 5, true);
        int n = d.num_outputs();
        f2::BitVector x{size_t(n)};
        f2::BitVector z{size_t(n)};
        for (int i = 0; i < n; i++) {
            x.set(size_t(i), rng() % 2);
            z.set(size_t(i), rng() % 2);
        }
        PauliOp p(n, x, z, rng() % 2 ? 1 : -1);
        if (!(evaluate(apply_pauli_at_outputs(d, p)) == apply_output_pauli(evaluate(d), p)))
            failures++;
        pauli_trials++;
    }

    ordered_json j;
    j["seed"] = seed;
    j["normal_form_trials"] = nf_trials;
    j["equality_trials"] = eq_trials;
    j["pi_push_trials"] = push_trials;
    j["roundtrip_trials"] = rt_trials;
    j["pauli_trials"] = pauli_trials;
    j["failures"] = failures;
    j["ok"] = failures == 0;
    print_json(j);
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zxcss: phase-free ZX diagrams, CSS codes, and surface patch surgery"};
    app.require_subcommand(1);
    app.footer(R"(Formats:
  diagram JSON  {"nodes":[{"id":0,"kind":"Z"|"X"|"B","phase":0|1},...],
                "edges":[[a,b],...], "inputs":[ids], "outputs":[ids],
                "scalar":{"zero":false,"sign":1,"half_power":0}}
                "phase" defaults to 0, "scalar" to one; unknown keys are rejected.
  code JSON     {"n":7, "sx":[[bits],...], "sz":[[bits],...], "lx":..., "lz":...}
                rows are 0/1 arrays of length n; lx/lz are optional and must
                appear together (one row per logical qubit).
  tensor JSON   {"in_qubits":i, "out_qubits":o, "entries":[...]} with one entry
                per amplitude, indexed by output bits then input bits, wire 0
                most significant; an entry [m,h] means m * 2^(h/2), or a plain
                decimal with --float.
  trace lines   one JSON object per rule application on standard error:
                {"rule":name, "site":[node ids], "scalar_delta":scalar}.
  Pauli syntax  [-]?([XZ][0-9]+)+ with 1-based qubit indices, or "I".

Exit codes: 0 success or true, 1 false or mismatch, 2 usage or format error.
The dense evaluator refuses more than 20 open qubits; set ZXCSS_ORACLE_LIMIT
to change the cap.)");

    std::string eval_file;
    bool eval_float = false;
    CLI::App* eval_cmd = app.add_subcommand("eval", "Contract a diagram to its dense tensor");
    eval_cmd->add_option("diagram", eval_file, "diagram JSON file")->required();
    eval_cmd->add_flag("--float", eval_float, "print decimal amplitudes");

    std::string reduce_file;
    std::string reduce_form = "zx";
    bool reduce_trace = false;
    bool reduce_dot = false;
    CLI::App* reduce_cmd =
        app.add_subcommand("reduce", "Rewrite a phase-free diagram to normal form");
    reduce_cmd->add_option("diagram", reduce_file, "diagram JSON file")->required();
    reduce_cmd->add_option("--form", reduce_form, "target form (default zx)")
        ->check(CLI::IsMember({"zx", "xz"}));
    reduce_cmd->add_flag("--trace", reduce_trace, "stream rule applications to standard error");
    reduce_cmd->add_flag("--dot", reduce_dot, "print Graphviz instead of JSON");

    std::string equal_a;
    std::string equal_b;
    CLI::App* equal_cmd =
        app.add_subcommand("equal", "Decide equality of two diagrams up to a scalar");
    equal_cmd->add_option("first", equal_a, "diagram JSON file")->required();
    equal_cmd->add_option("second", equal_b, "diagram JSON file")->required();

    std::string c2z_file;
    std::string c2z_rep = "x";
    bool c2z_dot = false;
    CLI::App* c2z_cmd =
        app.add_subcommand("css-to-zx", "State diagram of a maximal CSS code");
    c2z_cmd->add_option("code", c2z_file, "code JSON file")->required();
    c2z_cmd->add_option("--rep", c2z_rep,
                        "generator colour carried into the picture (default x)")
        ->check(CLI::IsMember({"x", "z"}));
    c2z_cmd->add_flag("--dot", c2z_dot, "print Graphviz instead of JSON");

    std::string z2c_file;
    CLI::App* z2c_cmd = app.add_subcommand(
        "zx-to-css", "Subspace pair (S, S-perp) of a phase-free state diagram");
    z2c_cmd->add_option("diagram", z2c_file, "diagram JSON file")->required();

    std::string enc_file;
    bool enc_dot = false;
    CLI::App* enc_cmd =
        app.add_subcommand("encoder", "Encoder isometry of a code with chosen logicals");
    enc_cmd->add_option("code", enc_file, "code JSON file with lx/lz")->required();
    enc_cmd->add_flag("--dot", enc_dot, "print Graphviz instead of JSON");

    std::string stab_file;
    std::string stab_pauli;
    CLI::App* stab_cmd =
        app.add_subcommand("stabilises", "Check that a Pauli fixes a state exactly");
    stab_cmd->add_option("diagram", stab_file, "diagram JSON file (state, no inputs)")
        ->required();
    stab_cmd->add_option("--pauli", stab_pauli, "Pauli string, e.g. X2X3X5X6")->required();

    int surf_rows = 0;
    int surf_cols = 0;
    int surf_parity = 0;
    std::string surf_rep = "x";
    bool surf_dot = false;
    CLI::App* surf_cmd =
        app.add_subcommand("surface", "Surface patch generators, logicals, and encoder");
    surf_cmd->add_option("--rows", surf_rows, "patch rows (at least 2)")->required();
    surf_cmd->add_option("--cols", surf_cols, "patch columns (at least 2)")->required();
    surf_cmd->add_option("--parity", surf_parity, "checkerboard parity (default 0)");
    surf_cmd->add_option("--rep", surf_rep, "encoder representation (default x)")
        ->check(CLI::IsMember({"x", "z"}));
    surf_cmd->add_flag("--dot", surf_dot, "print the encoder as Graphviz only");

    std::string surg_op;
    int surg_rows = 0;
    int surg_cols = 0;
    std::string surg_outcomes;
    std::string surg_method = "rewrite";
    CLI::App* surg_cmd = app.add_subcommand(
        "surgery", "Verify a split or merge against its logical contract");
    surg_cmd->add_option("operation", surg_op, "zsplit, xsplit, zmerge, or xmerge")
        ->required()
        ->check(CLI::IsMember({"zsplit", "xsplit", "zmerge", "xmerge"}));
    surg_cmd->add_option("--rows", surg_rows, "patch rows before splitting or merging")
        ->required();
    surg_cmd->add_option("--cols", surg_cols, "patch columns before splitting or merging")
        ->required();
    CLI::Option* surg_out_opt = surg_cmd->add_option(
        "--outcomes", surg_outcomes,
        "seam outcome bits, most significant first (default: all assignments)");
    surg_cmd->add_option("--verify", surg_method, "method (default rewrite)")
        ->check(CLI::IsMember({"rewrite", "oracle", "both"}));

    CLI::App* cnot_cmd = app.add_subcommand(
        "cnot-demo", "Check the split-then-merge network against CNOT for both outcomes");

    unsigned selftest_seed = 1;
    CLI::App* self_cmd =
        app.add_subcommand("selftest", "Randomised property sweep over the whole stack");
    self_cmd->add_option("--seed", selftest_seed, "sampling seed (default 1)");

    int rc = 0;
    eval_cmd->callback([&] { rc = run_eval(eval_file, eval_float); });
    reduce_cmd->callback([&] { rc = run_reduce(reduce_file, reduce_form, reduce_trace, reduce_dot); });
    equal_cmd->callback([&] { rc = run_equal(equal_a, equal_b); });
    c2z_cmd->callback([&] { rc = run_css_to_zx(c2z_file, c2z_rep, c2z_dot); });
    z2c_cmd->callback([&] { rc = run_zx_to_css(z2c_file); });
    enc_cmd->callback([&] { rc = run_encoder(enc_file, enc_dot); });
    stab_cmd->callback([&] { rc = run_stabilises(stab_file, stab_pauli); });
    surf_cmd->callback(
        [&] { rc = run_surface(surf_rows, surf_cols, surf_parity, surf_rep, surf_dot); });
    surg_cmd->callback([&] {
        rc = run_surgery(surg_op, surg_rows, surg_cols, surg_outcomes,
                         surg_out_opt->count() > 0, surg_method);
    });
    cnot_cmd->callback([&] { rc = run_cnot_demo(); });
    self_cmd->callback([&] { rc = run_selftest(selftest_seed); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
