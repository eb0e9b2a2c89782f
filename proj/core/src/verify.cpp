#include "modsym/verify.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace modsym {

namespace {

/// Sign of the column-i replacement in relation (4), re-derived here so the
/// verifier does not trust the engine's bookkeeping: omitting v_i from the
/// tuple (x, v_1, ..., v_n) carries (-1)^i, moving [m] across the equation
/// contributes -1, and commuting x into slot i costs (-1)^{i-1}.
int replacement_sign(size_t idx) {
    const size_t i1 = idx + 1;
    int omission = (i1 % 2 == 0) ? 1 : -1;
    int commute = ((i1 - 1) % 2 == 0) ? 1 : -1;
    return -(omission * commute);
}

Int recompute_norm(const NumberOrder& order, const SymbolMatrix& m) {
    return norm_determinant(order, m.columns());
}

bool is_zero_symbol(const NumberOrder& order, const SymbolMatrix& m) {
    std::vector<std::vector<FieldElement>> cols;
    for (const auto& col : m.columns()) {
        std::vector<FieldElement> fcol;
        for (const auto& e : col) fcol.push_back(to_field(e));
        cols.push_back(std::move(fcol));
    }
    return det_over_field(order, cols).is_zero();
}

} // namespace

std::vector<Violation> verify(const ReductionCertificate& cert, const NumberOrder& order) {
    if (cert.field_hash != spec_hash(order.spec()))
        raise(Errc::FieldMismatch, "certificate was produced for a different order");

    std::vector<Violation> out;
    auto flag = [&](std::string node, std::string check, std::string message) {
        out.push_back({std::move(node), std::move(check), std::move(message)});
    };

    if (cert.root_sign != 1 && cert.root_sign != -1)
        flag("root", "structure", "root sign must be +1 or -1");
    if (cert.n < 2 || cert.root.dim() != cert.n) flag("root", "structure", "root has wrong dimension");

    bool root_zero = is_zero_symbol(order, cert.root);
    if (root_zero != cert.root_is_zero)
        flag("root", "structure", "root singularity flag does not match the matrix");
    if (cert.root_is_zero) {
        if (!cert.nodes.empty() || !cert.leaves.empty())
            flag("root", "structure", "zero symbol must have an empty certificate");
        std::sort(out.begin(), out.end(), [](const Violation& x, const Violation& y) {
            return std::tie(x.node, x.check) < std::tie(y.node, y.check);
        });
        return out;
    }

    std::map<std::string, size_t> node_index;
    std::map<std::string, Int> node_norm;
    for (size_t i = 0; i < cert.nodes.size(); ++i) {
        const auto& key = cert.nodes[i].matrix.key();
        if (!node_index.emplace(key, i).second)
            flag("node:" + std::to_string(i), "structure", "duplicate node matrix");
        node_norm[key] = recompute_norm(order, cert.nodes[i].matrix);
    }
    std::map<std::string, size_t> leaf_index;
    std::map<std::string, Int> leaf_norm;
    for (size_t i = 0; i < cert.leaves.size(); ++i) {
        const auto& key = cert.leaves[i].matrix.key();
        if (!leaf_index.emplace(key, i).second)
            flag("leaf:" + std::to_string(i), "structure", "duplicate leaf matrix");
        if (node_index.count(key))
            flag("leaf:" + std::to_string(i), "structure", "matrix is both node and leaf");
        leaf_norm[key] = recompute_norm(order, cert.leaves[i].matrix);
    }

    const std::string& root_key = cert.root.key();
    if (!node_index.count(root_key) && !leaf_index.count(root_key))
        flag("root", "structure", "root is neither expanded nor declared a leaf");

    for (size_t i = 0; i < cert.nodes.size(); ++i) {
        const CertNode& nd = cert.nodes[i];
        const std::string path = "node:" + std::to_string(i);
        const Int& my_norm = node_norm[nd.matrix.key()];

        if (nd.norm != my_norm) flag(path, "g", "stored norm does not match the matrix");
        if (!(my_norm > cert.C)) flag(path, "structure", "expanded matrix is not above the bound");

        if (nd.pivot_x.size() != cert.n || nd.pivot_q.size() != cert.n) {
            flag(path, "a", "pivot has wrong shape");
            continue;
        }
        bool x_nonzero = false;
        for (const auto& e : nd.pivot_x)
            if (!e.is_zero()) x_nonzero = true;
        if (!x_nonzero) flag(path, "a", "pivot x is zero");

        // (a) x = sum q_i v_i, checked row by row
        bool identity_ok = true;
        for (size_t k = 0; k < cert.n && identity_ok; ++k) {
            FieldElement acc{RatVec(order.degree(), Rat(0))};
            for (size_t c = 0; c < cert.n; ++c) {
                FieldElement t = order.mul(nd.pivot_q[c], to_field(nd.matrix.entry(k, c)));
                for (size_t l = 0; l < order.degree(); ++l) acc.coords[l] += t.coords[l];
            }
            if (!(acc == to_field(nd.pivot_x[k]))) identity_ok = false;
        }
        if (!identity_ok) flag(path, "a", "x != sum q_i v_i");

        // (b) strict norm condition on the nonzero coefficients
        for (size_t c = 0; c < cert.n; ++c) {
            if (nd.pivot_q[c].is_zero()) continue;
            if (!(::abs(order.norm(nd.pivot_q[c])) < 1))
                flag(path, "b", "|N(q_" + std::to_string(c + 1) + ")| is not < 1");
        }

        // (c) children are exactly the nonzero-coefficient replacements with
        // mechanically derived signs
        std::vector<std::pair<int, SymbolMatrix>> derived;
        for (size_t c = 0; c < cert.n; ++c) {
            if (nd.pivot_q[c].is_zero()) continue;
            std::vector<OrderElement> xcol = nd.pivot_x;
            derived.emplace_back(replacement_sign(c), nd.matrix.with_column(order, c, xcol));
        }
        if (derived.size() != nd.children.size()) {
            flag(path, "c", "child count does not match the nonzero coefficients");
        } else {
            for (size_t c = 0; c < derived.size(); ++c) {
                if (derived[c].first != nd.children[c].first)
                    flag(path, "c", "child sign differs from the derived sign");
                if (!(derived[c].second == nd.children[c].second))
                    flag(path, "c", "child matrix is not the expected replacement");
            }
        }

        // (d) strict norm decrease into every child, and every child resolved
        for (size_t c = 0; c < nd.children.size(); ++c) {
            const auto& child = nd.children[c].second;
            Int child_norm = recompute_norm(order, child);
            if (!(child_norm < my_norm)) flag(path, "d", "child norm is not strictly smaller");
            if (!node_index.count(child.key()) && !leaf_index.count(child.key()))
                flag(path, "structure", "child is neither expanded nor declared a leaf");
        }
    }

    // (e) every leaf lies in M(C)
    for (size_t i = 0; i < cert.leaves.size(); ++i) {
        const std::string path = "leaf:" + std::to_string(i);
        const Int& nm = leaf_norm[cert.leaves[i].matrix.key()];
        if (cert.leaves[i].norm != nm) flag(path, "g", "stored norm does not match the matrix");
        if (nm > cert.C) flag(path, "e", "leaf norm exceeds C");
        if (nm == 0) flag(path, "e", "leaf is a zero symbol");
    }

    // (f) expanding the tree reproduces the declared leaf coefficients
    std::vector<const CertNode*> ordered;
    for (const auto& nd : cert.nodes) ordered.push_back(&nd);
    std::sort(ordered.begin(), ordered.end(), [&](const CertNode* a, const CertNode* b) {
        const Int& na = node_norm[a->matrix.key()];
        const Int& nb = node_norm[b->matrix.key()];
        if (na != nb) return na > nb;
        return a->matrix.key() < b->matrix.key();
    });
    std::map<std::string, Int> mult;
    mult[root_key] = 1;
    for (const CertNode* nd : ordered) {
        Int c = mult[nd->matrix.key()];
        if (c == 0) continue;
        for (const auto& [sgn, child] : nd->children) mult[child.key()] += c * sgn;
    }
    std::set<std::string> declared;
    for (size_t i = 0; i < cert.leaves.size(); ++i) {
        const auto& leaf = cert.leaves[i];
        declared.insert(leaf.matrix.key());
        Int expected = mult[leaf.matrix.key()] * cert.root_sign;
        if (leaf.coeff != expected)
            flag("leaf:" + std::to_string(i), "f",
                 "declared coefficient " + leaf.coeff.get_str() + " != expansion " + expected.get_str());
    }
    for (const auto& [key, idx] : leaf_index) {
        (void)idx;
        (void)key;
    }
    for (const auto& [key, m] : mult) {
        if (m == 0) continue;
        if (node_index.count(key)) continue;
        if (!declared.count(key)) flag("chain", "f", "expansion reaches an undeclared leaf");
    }

    std::sort(out.begin(), out.end(), [](const Violation& x, const Violation& y) {
        return std::tie(x.node, x.check, x.message) < std::tie(y.node, y.check, y.message);
    });
    return out;
}

namespace {

std::vector<OrderElement> normalize_column(std::vector<OrderElement> col) {
    Int content(0);
    for (const auto& e : col)
        for (const auto& c : e.coords) content = gcd_int(content, c);
    int lead = 0;
    for (const auto& e : col)
        for (const auto& c : e.coords)
            if (lead == 0 && c != 0) lead = sgn(c);
    if (lead < 0) content = -content;
    if (content != 0 && content != 1)
        for (auto& e : col)
            for (auto& c : e.coords) c /= content;
    return col;
}

std::string column_key(const std::vector<OrderElement>& col) {
    std::string s;
    for (const auto& e : col)
        for (const auto& c : e.coords) {
            s += c.get_str();
            s += ',';
        }
    return s;
}

} // namespace

bool chain_equal_small(const NumberOrder& order, const SymbolChain& a, const SymbolChain& b,
                       const Int& bound, size_t support_cap) {
    // target = a - b on canonical symbol keys
    std::map<std::string, Rat> target;
    auto accumulate = [&](const SymbolChain& chain, int s) {
        for (const auto& [key, term] : chain.terms()) {
            target[key] += Rat(term.coeff) * s;
            if (target[key] == 0) target.erase(key);
        }
    };
    accumulate(a, 1);
    accumulate(b, -1);
    if (target.empty()) return true;

    // support: canonical primitive columns of both chains
    std::map<std::string, std::vector<OrderElement>> support;
    size_t n = 0;
    auto collect = [&](const SymbolChain& chain) {
        for (const auto& [key, term] : chain.terms()) {
            (void)key;
            n = term.matrix.dim();
            for (const auto& col : term.matrix.columns()) {
                auto norm_col = normalize_column(col);
                for (const auto& e : norm_col)
                    for (const auto& c : e.coords)
                        if (::abs(c) > bound)
                            raise(Errc::SupportTooLarge, "column entries exceed the stated bound");
                support.emplace(column_key(norm_col), norm_col);
            }
        }
    };
    collect(a);
    collect(b);
    if (support.size() > support_cap)
        raise(Errc::SupportTooLarge, "support has " + std::to_string(support.size()) + " columns");
    if (n < 2 || n > 3)
        raise(Errc::SupportTooLarge, "relation span enumeration is limited to n in {2, 3}");

    std::vector<std::vector<OrderElement>> verts;
    for (const auto& [key, col] : support) verts.push_back(col);
    const size_t v = verts.size();

    double rows_estimate = 1;
    for (size_t i = 0; i < n + 1; ++i) rows_estimate *= static_cast<double>(v - i) / static_cast<double>(i + 1);
    if (rows_estimate > 300000.0) raise(Errc::SupportTooLarge, "too many relation tuples");

    // sparse echelon over Q keyed by canonical symbol
    std::map<std::string, std::map<std::string, Rat>> echelon;
    auto reduce_against = [&](std::map<std::string, Rat> row) {
        while (!row.empty()) {
            auto lead = row.begin();
            auto piv = echelon.find(lead->first);
            if (piv == echelon.end()) return row;
            Rat f = lead->second / piv->second.at(lead->first);
            for (const auto& [k, val] : piv->second) {
                row[k] -= f * val;
                if (row[k] == 0) row.erase(k);
            }
        }
        return row;
    };

    // all (n+1)-subsets of the support columns span the relation space
    std::vector<size_t> comb(n + 1);
    std::function<void(size_t, size_t)> visit = [&](size_t start, size_t depth) {
        if (depth == n + 1) {
            std::vector<std::vector<OrderElement>> tuple;
            for (size_t t = 0; t < n + 1; ++t) tuple.push_back(verts[comb[t]]);
            std::map<std::string, Rat> row;
            for (const auto& [sgn_p, omitted] : relation4_expand(tuple)) {
                std::vector<std::vector<FieldElement>> fcols;
                for (const auto& col : omitted) {
                    std::vector<FieldElement> fcol;
                    for (const auto& e : col) fcol.push_back(to_field(e));
                    fcols.push_back(std::move(fcol));
                }
                NormalSymbol ns = canonicalize(order, fcols);
                if (ns.is_zero) continue;
                row[ns.matrix.key()] += Rat(sgn_p * ns.sign);
                if (row[ns.matrix.key()] == 0) row.erase(ns.matrix.key());
            }
            row = reduce_against(std::move(row));
            if (!row.empty()) {
                std::string lead_key = row.begin()->first;
                echelon.emplace(std::move(lead_key), std::move(row));
            }
            return;
        }
        for (size_t i = start; i + (n - depth) < v; ++i) {
            comb[depth] = i;
            visit(i + 1, depth + 1);
        }
    };
    if (v >= n + 1) visit(0, 0);

    return reduce_against(std::move(target)).empty();
}

} // namespace modsym
