#include "zxcss/css.hpp"

#include <cctype>
#include <set>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "zxcss/rewrite.hpp"
#include "zxcss/scalar.hpp"

namespace zxcss {

bool validate(const CssCode& code) {
    if (code.n < 0) {
        return false;
    }
    size_t n = size_t(code.n);
    if (code.sx.rows() > 0 && code.sx.cols() != n) {
        return false;
    }
    if (code.sz.rows() > 0 && code.sz.cols() != n) {
        return false;
    }
    if (!code.sx.rows_orthogonal_to(code.sz)) {
        return false;
    }
    return f2::rank(code.sx) == code.sx.rows() && f2::rank(code.sz) == code.sz.rows();
}

Diagram max_css_to_diagram(const f2::Subspace& s, Rep rep) {
    return nf_to_diagram(nf_from_subspace(s, rep == Rep::X ? Form::ZX : Form::XZ));
}

std::pair<f2::Subspace, f2::Subspace> diagram_to_max_css(const Diagram& d) {
    if (d.num_inputs() != 0) {
        throw std::invalid_argument("diagram_to_max_css: diagram must be a state");
    }
    f2::Subspace s = subspace_of(normalize(d, Form::ZX));
    return {s, s.orthocomplement()};
}

bool stabilises(const Diagram& d, const PauliOp& p) {
    if (d.num_inputs() != 0) {
        throw std::invalid_argument("stabilises: diagram must be a state");
    }
    if (p.n != d.num_outputs()) {
        throw std::invalid_argument("stabilises: operator size does not match outputs");
    }
    return pauli_equal(apply_pauli_at_outputs(d, p), d).kind == VerdictKind::Equal;
}

int ftst_dimension(const CssCode& code) {
    if (!validate(code)) {
        throw std::invalid_argument("ftst_dimension: invalid code");
    }
    return code.n - int(code.sx.rows()) - int(code.sz.rows());
}

Encoder encoder_from_code(const CssCode& code, const LogicalSet& logicals) {
    if (!validate(code)) {
        throw std::invalid_argument("encoder_from_code: invalid code");
    }
    size_t n = size_t(code.n);
    size_t k = size_t(ftst_dimension(code));
    const f2::BitMatrix& lx = logicals.lx;
    const f2::BitMatrix& lz = logicals.lz;
    if (lx.rows() != k || lz.rows() != k) {
        throw std::invalid_argument("encoder_from_code: need one logical pair per encoded qubit");
    }
    if (k > 0 && (lx.cols() != n || lz.cols() != n)) {
        throw std::invalid_argument("encoder_from_code: logical row length mismatch");
    }
    if (!lx.rows_orthogonal_to(code.sz) || !lz.rows_orthogonal_to(code.sx)) {
        throw std::invalid_argument("encoder_from_code: logicals must commute with stabilisers");
    }
    for (size_t i = 0; i < k; i++) {
        for (size_t j = 0; j < k; j++) {
            if (lx.row(i).dot(lz.row(j)) != (i == j)) {
                throw std::invalid_argument(
                    "encoder_from_code: lx_i and lz_j must anticommute exactly when i == j");
            }
        }
    }
    f2::BitMatrix xall = code.sx;
    f2::BitMatrix zall = code.sz;
    for (size_t i = 0; i < k; i++) {
        xall.append_row(lx.row(i));
        zall.append_row(lz.row(i));
    }
    if (f2::rank(xall) != code.sx.rows() + k) {
        throw std::invalid_argument("encoder_from_code: X logicals depend on stabilisers");
    }
    if (f2::rank(zall) != code.sz.rows() + k) {
        throw std::invalid_argument("encoder_from_code: Z logicals depend on stabilisers");
    }

    // Bent-up encoder state on columns [k logical | n physical]. Its X
    // stabilisers are [0|sx_i] plus one [e_i|lx_i] per logical qubit; the
    // matching Z rows [e_i|lz_i] are orthogonal to these by the checks
    // above, so the state is fixed completely.
    f2::BitMatrix rows(0, k + n);
    for (size_t i = 0; i < code.sx.rows(); i++) {
        rows.append_row(f2::BitVector(k).concat(code.sx.row(i)));
    }
    for (size_t i = 0; i < k; i++) {
        rows.append_row(f2::BitVector::unit(k, i).concat(lx.row(i)));
    }
    // The bare diagram carries 2^((k + n - W)/2) per codeword where W is the
    // total row weight, and each logical basis state spreads over a coset of
    // span(sx); this scalar is what makes the map an exact isometry.
    int64_t weight = 0;
    for (size_t i = 0; i < rows.rows(); i++) {
        weight += int64_t(rows.row(i).weight());
    }
    NormalForm nf{Form::ZX, int(k + n), rows,
                  Scalar::dyadic(1, weight - int64_t(k + n) - int64_t(code.sx.rows()))};
    return Encoder{code, logicals, unbend_outputs(nf_to_diagram(nf), int(k))};
}

std::optional<Diagram> logical_action(const Encoder& e, const Diagram& physical,
                                      PauliOp* found) {
    int n = e.code.n;
    if (physical.num_inputs() != n || physical.num_outputs() != n) {
        throw std::invalid_argument("logical_action: physical map must be square on n qubits");
    }
    int k = e.diagram.num_inputs();
    if (k > 6) {
        throw std::invalid_argument("logical_action: enumeration limited to 6 logical qubits");
    }
    Diagram lhs = compose(e.diagram, physical);
    for (int sign : {1, -1}) {
        for (uint64_t xi = 0; xi < (uint64_t(1) << k); xi++) {
            for (uint64_t zi = 0; zi < (uint64_t(1) << k); zi++) {
                PauliOp p(k, f2::BitVector::from_index(size_t(k), xi),
                          f2::BitVector::from_index(size_t(k), zi), sign);
                Diagram f = apply_pauli_at_outputs(identity_diagram(k), p);
                if (pauli_equal(lhs, compose(f, e.diagram)).kind == VerdictKind::Equal) {
                    if (found != nullptr) {
                        *found = p;
                    }
                    return f;
                }
            }
        }
    }
    return std::nullopt;
}

Diagram projection_diagram(const PauliOp& p, int outcome) {
    bool xtype = p.z.is_zero();
    bool ztype = p.x.is_zero();
    if (!xtype && !ztype) {
        throw std::invalid_argument("projection_diagram: operator must be pure X or pure Z");
    }
    int k = Diagram::norm_phase(outcome + (p.sign < 0 ? 1 : 0));
    Kind wire = xtype ? Kind::X : Kind::Z;
    Kind hub = xtype ? Kind::Z : Kind::X;
    const f2::BitVector& supp = xtype ? p.x : p.z;
    Diagram d;
    int h = d.add_node(hub, k);
    for (int i = 0; i < p.n; i++) {
        int bi = d.add_input();
        int bo = d.add_output();
        if (supp.get(size_t(i))) {
            int s = d.add_node(wire);
            d.add_edge(bi, s);
            d.add_edge(s, bo);
            d.add_edge(s, h);
        } else {
            d.add_edge(bi, bo);
        }
    }
    return d;
}

PauliOp parse_pauli_terms(const std::string& s, int n) {
    if (n < 0) {
        throw std::invalid_argument("parse_pauli_terms: negative qubit count");
    }
    PauliOp p = PauliOp::identity(n);
    size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        p.sign = s[i] == '-' ? -1 : 1;
        i++;
    }
    if (s.substr(i) == "I") {
        return p;
    }
    if (i == s.size()) {
        throw std::invalid_argument("parse_pauli_terms: empty operator");
    }
    while (i < s.size()) {
        char c = s[i];
        if (c != 'X' && c != 'Z') {
            throw std::invalid_argument("parse_pauli_terms: expected X or Z, got '" +
                                        std::string(1, c) + "'");
        }
        size_t j = ++i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
            j++;
        }
        if (j == i) {
            throw std::invalid_argument("parse_pauli_terms: missing qubit index after " +
                                        std::string(1, c));
        }
        int q = std::stoi(s.substr(i, j - i));
        if (q < 1 || q > n) {
            throw std::invalid_argument("parse_pauli_terms: qubit index " + std::to_string(q) +
                                        " out of range 1.." + std::to_string(n));
        }
        if (c == 'X') {
            p.x.flip(size_t(q - 1));
        } else {
            p.z.flip(size_t(q - 1));
        }
        i = j;
    }
    return p;
}

std::string pauli_terms_string(const PauliOp& p) {
    std::string out = p.sign < 0 ? "-" : "";
    for (int i = 0; i < p.n; i++) {
        if (p.x.get(size_t(i))) {
            out += "X" + std::to_string(i + 1);
        }
    }
    for (int i = 0; i < p.n; i++) {
        if (p.z.get(size_t(i))) {
            out += "Z" + std::to_string(i + 1);
        }
    }
    if (p.acts_trivially()) {
        out += "I";
    }
    return out;
}

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json matrix_to_json(const f2::BitMatrix& m) {
    auto rows = ordered_json::array();
    for (size_t i = 0; i < m.rows(); i++) {
        auto row = ordered_json::array();
        for (size_t j = 0; j < m.cols(); j++) {
            row.push_back(m.get(i, j) ? 1 : 0);
        }
        rows.push_back(row);
    }
    return rows;
}

f2::BitMatrix matrix_from_json(const nlohmann::json& j, size_t cols, const std::string& key) {
    if (!j.is_array()) {
        throw std::invalid_argument("code json: '" + key + "' must be an array of rows");
    }
    f2::BitMatrix m(0, cols);
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != cols) {
            throw std::invalid_argument("code json: each '" + key + "' row needs n bits");
        }
        f2::BitVector v(cols);
        for (size_t i = 0; i < cols; i++) {
            const auto& b = row[i];
            if (!b.is_number_integer() || (b.get<int>() != 0 && b.get<int>() != 1)) {
                throw std::invalid_argument("code json: '" + key + "' entries must be 0 or 1");
            }
            v.set(i, b.get<int>() == 1);
        }
        m.append_row(v);
    }
    return m;
}

nlohmann::json parse_code_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("code json: parse error: ") + e.what());
    }
    if (!j.is_object()) {
        throw std::invalid_argument("code json: top level must be an object");
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        static const std::set<std::string> allowed = {"n", "sx", "sz", "lx", "lz"};
        if (allowed.count(it.key()) == 0) {
            throw std::invalid_argument("code json: unknown key '" + it.key() + "'");
        }
    }
    if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<int>() < 0) {
        throw std::invalid_argument("code json: 'n' must be a nonnegative integer");
    }
    if (!j.contains("sx") || !j.contains("sz")) {
        throw std::invalid_argument("code json: 'sx' and 'sz' are required");
    }
    return j;
}

}  // namespace

std::string code_to_json(const CssCode& code, const LogicalSet* logicals, int indent) {
    ordered_json j;
    j["n"] = code.n;
    j["sx"] = matrix_to_json(code.sx);
    j["sz"] = matrix_to_json(code.sz);
    if (logicals != nullptr) {
        j["lx"] = matrix_to_json(logicals->lx);
        j["lz"] = matrix_to_json(logicals->lz);
    }
    return j.dump(indent);
}

CssCode code_from_json(const std::string& text) {
    nlohmann::json j = parse_code_text(text);
    size_t n = size_t(j["n"].get<int>());
    return CssCode{int(n), matrix_from_json(j["sx"], n, "sx"), matrix_from_json(j["sz"], n, "sz")};
}

std::optional<LogicalSet> logicals_from_json(const std::string& text) {
    nlohmann::json j = parse_code_text(text);
    if (!j.contains("lx") && !j.contains("lz")) {
        return std::nullopt;
    }
    if (!j.contains("lx") || !j.contains("lz")) {
        throw std::invalid_argument("code json: 'lx' and 'lz' must appear together");
    }
    size_t n = size_t(j["n"].get<int>());
    return LogicalSet{matrix_from_json(j["lx"], n, "lx"), matrix_from_json(j["lz"], n, "lz")};
}

}  // namespace zxcss
