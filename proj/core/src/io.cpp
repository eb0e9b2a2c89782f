#include "modsym/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace modsym {
namespace io {

using json = nlohmann::ordered_json;

namespace {

Rat rat_from_json(const json& v) {
    if (v.is_number_integer()) return Rat(static_cast<long>(v.get<long long>()));
    if (v.is_string()) return rat_from_string(v.get<std::string>());
    raise(Errc::ParseError, "expected an integer or a \"p/q\" string");
}

Int int_from_json(const json& v) {
    Rat q = rat_from_json(v);
    if (!is_integer(q)) raise(Errc::ParseError, "expected an integer");
    return q.get_num();
}

json int_to_json(const Int& v) {
    if (v.fits_slong_p()) return json(v.get_si());
    return json(v.get_str());
}

json rat_to_json(const Rat& q) {
    if (is_integer(q) && q.get_num().fits_slong_p()) return json(q.get_num().get_si());
    return json(rat_to_string(q));
}

json parse_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) raise(Errc::ParseError, "malformed JSON");
    return j;
}

FieldElement element_from_json(const json& v, size_t d) {
    RatVec coords(d, Rat(0));
    if (v.is_array()) {
        if (v.size() != d) raise(Errc::ParseError, "entry has wrong coordinate length");
        for (size_t l = 0; l < d; ++l) coords[l] = rat_from_json(v[l]);
    } else {
        coords[0] = rat_from_json(v);
    }
    return {std::move(coords)};
}

json order_element_to_json(const OrderElement& e) {
    json arr = json::array();
    for (const auto& c : e.coords) arr.push_back(int_to_json(c));
    return arr;
}

OrderElement order_element_from_json(const json& v, size_t d) {
    FieldElement f = element_from_json(v, d);
    if (!f.is_integral()) raise(Errc::ParseError, "expected integral coordinates");
    return to_order(f);
}

json symbol_matrix_to_json(const SymbolMatrix& m) {
    json cols = json::array();
    for (const auto& col : m.columns()) {
        json jcol = json::array();
        for (const auto& e : col) jcol.push_back(order_element_to_json(e));
        cols.push_back(std::move(jcol));
    }
    return cols;
}

SymbolMatrix symbol_matrix_from_json(const json& v, const NumberOrder& order, size_t n) {
    if (!v.is_array() || v.size() != n) raise(Errc::ParseError, "matrix must have n columns");
    std::vector<std::vector<OrderElement>> cols;
    for (const auto& jcol : v) {
        if (!jcol.is_array() || jcol.size() != n) raise(Errc::ParseError, "column must have n entries");
        std::vector<OrderElement> col;
        for (const auto& je : jcol) col.push_back(order_element_from_json(je, order.degree()));
        cols.push_back(std::move(col));
    }
    return SymbolMatrix(order, std::move(cols));
}

} // namespace

OrderSpec parse_field(const std::string& json_text) {
    json j = parse_text(json_text);
    if (!j.contains("min_poly") || !j.contains("basis"))
        raise(Errc::ParseError, "field file needs min_poly and basis");
    OrderSpec spec;
    for (const auto& c : j["min_poly"]) spec.min_poly.push_back(int_from_json(c));
    const json& basis = j["basis"];
    if (!basis.is_array() || basis.empty()) raise(Errc::ParseError, "basis must be a nonempty array");
    const size_t d = basis.size();
    spec.basis = RatMatrix(d, d);
    for (size_t i = 0; i < d; ++i) {
        if (!basis[i].is_array() || basis[i].size() != d)
            raise(Errc::ParseError, "basis must be a d x d array");
        for (size_t k = 0; k < d; ++k) spec.basis(i, k) = rat_from_json(basis[i][k]);
    }
    return spec;
}

std::string field_to_json(const OrderSpec& spec) {
    json j;
    j["min_poly"] = json::array();
    for (const auto& c : spec.min_poly) j["min_poly"].push_back(int_to_json(c));
    j["basis"] = json::array();
    for (size_t i = 0; i < spec.basis.rows; ++i) {
        json row = json::array();
        for (size_t k = 0; k < spec.basis.cols; ++k) row.push_back(rat_to_json(spec.basis(i, k)));
        j["basis"].push_back(std::move(row));
    }
    return j.dump(2) + "\n";
}

OrderSpec load_field_file(const std::string& path) { return parse_field(read_file(path)); }

std::vector<std::vector<FieldElement>> parse_matrix(const std::string& json_text,
                                                    const NumberOrder& order) {
    json j = parse_text(json_text);
    if (!j.contains("matrix")) raise(Errc::ParseError, "matrix file needs a matrix entry");
    const json& jm = j["matrix"];
    if (!jm.is_array() || jm.empty()) raise(Errc::ParseError, "matrix must be a nonempty array");
    const size_t n = jm.size();
    std::vector<std::vector<FieldElement>> cols;
    for (const auto& jcol : jm) {
        if (!jcol.is_array() || jcol.size() != n)
            raise(Errc::ParseError, "matrix must be square, one array per column");
        std::vector<FieldElement> col;
        for (const auto& je : jcol) col.push_back(element_from_json(je, order.degree()));
        cols.push_back(std::move(col));
    }
    return cols;
}

std::vector<std::vector<FieldElement>> load_matrix_file(const std::string& path,
                                                        const NumberOrder& order) {
    return parse_matrix(read_file(path), order);
}

std::string certificate_to_json(const ReductionCertificate& cert) {
    json j;
    j["format"] = "modsym-cert-1";
    j["field_hash"] = cert.field_hash;
    j["n"] = cert.n;
    j["C"] = int_to_json(cert.C);
    j["root"] = symbol_matrix_to_json(cert.root);
    j["root_sign"] = cert.root_sign;
    j["root_is_zero"] = cert.root_is_zero;
    j["nodes"] = json::array();
    for (const auto& nd : cert.nodes) {
        json n;
        n["matrix"] = symbol_matrix_to_json(nd.matrix);
        n["norm"] = int_to_json(nd.norm);
        json px = json::array();
        for (const auto& e : nd.pivot_x) px.push_back(order_element_to_json(e));
        n["pivot_x"] = std::move(px);
        json pq = json::array();
        for (const auto& q : nd.pivot_q) {
            json coords = json::array();
            for (const auto& c : q.coords) coords.push_back(rat_to_string(c));
            pq.push_back(std::move(coords));
        }
        n["q"] = std::move(pq);
        json ch = json::array();
        for (const auto& [sgn, child] : nd.children) {
            json c;
            c["sign"] = sgn;
            c["matrix"] = symbol_matrix_to_json(child);
            ch.push_back(std::move(c));
        }
        n["children"] = std::move(ch);
        j["nodes"].push_back(std::move(n));
    }
    j["leaves"] = json::array();
    for (const auto& leaf : cert.leaves) {
        json l;
        l["coeff"] = int_to_json(leaf.coeff);
        l["matrix"] = symbol_matrix_to_json(leaf.matrix);
        l["norm"] = int_to_json(leaf.norm);
        j["leaves"].push_back(std::move(l));
    }
    return j.dump(2) + "\n";
}

ReductionCertificate parse_certificate(const std::string& json_text, const NumberOrder& order) {
    json j = parse_text(json_text);
    for (const char* k : {"field_hash", "n", "C", "root", "root_sign", "root_is_zero", "nodes", "leaves"})
        if (!j.contains(k)) raise(Errc::ParseError, std::string("certificate is missing ") + k);

    ReductionCertificate cert;
    cert.field_hash = j["field_hash"].get<std::string>();
    cert.n = j["n"].get<size_t>();
    cert.C = int_from_json(j["C"]);
    cert.root = symbol_matrix_from_json(j["root"], order, cert.n);
    cert.root_sign = j["root_sign"].get<int>();
    cert.root_is_zero = j["root_is_zero"].get<bool>();

    for (const auto& n : j["nodes"]) {
        CertNode nd;
        nd.matrix = symbol_matrix_from_json(n["matrix"], order, cert.n);
        nd.norm = int_from_json(n["norm"]);
        if (!n["pivot_x"].is_array() || n["pivot_x"].size() != cert.n)
            raise(Errc::ParseError, "pivot_x must have n entries");
        for (const auto& je : n["pivot_x"])
            nd.pivot_x.push_back(order_element_from_json(je, order.degree()));
        if (!n["q"].is_array() || n["q"].size() != cert.n)
            raise(Errc::ParseError, "q must have n entries");
        for (const auto& jq : n["q"]) nd.pivot_q.push_back(element_from_json(jq, order.degree()));
        for (const auto& jc : n["children"]) {
            int sgn = jc["sign"].get<int>();
            nd.children.emplace_back(sgn, symbol_matrix_from_json(jc["matrix"], order, cert.n));
        }
        cert.nodes.push_back(std::move(nd));
    }
    for (const auto& l : j["leaves"]) {
        CertLeaf leaf;
        leaf.coeff = int_from_json(l["coeff"]);
        leaf.matrix = symbol_matrix_from_json(l["matrix"], order, cert.n);
        leaf.norm = int_from_json(l["norm"]);
        cert.leaves.push_back(std::move(leaf));
    }
    return cert;
}

ReductionCertificate load_certificate_file(const std::string& path, const NumberOrder& order) {
    return parse_certificate(read_file(path), order);
}

std::string chain_to_json(const SymbolChain& chain) {
    json j = json::array();
    for (const auto& [key, term] : chain.terms()) {
        (void)key;
        json t;
        t["coeff"] = int_to_json(term.coeff);
        t["matrix"] = symbol_matrix_to_json(term.matrix);
        j.push_back(std::move(t));
    }
    return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::ParseError, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(Errc::ParseError, "cannot write " + path);
    out << content;
}

} // namespace io
} // namespace modsym
