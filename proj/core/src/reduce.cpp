#include "modsym/reduce.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

namespace modsym {

void SymbolChain::add(const SymbolMatrix& matrix, const Int& coeff) {
    if (coeff == 0) return;
    auto it = terms_.find(matrix.key());
    if (it == terms_.end()) {
        terms_.emplace(matrix.key(), Term{matrix, coeff});
    } else {
        it->second.coeff += coeff;
        if (it->second.coeff == 0) terms_.erase(it);
    }
}

void SymbolChain::add(const NormalSymbol& sym, const Int& coeff) {
    if (sym.is_zero || coeff == 0) return;
    add(sym.matrix, coeff * sym.sign);
}

void SymbolChain::add_chain(const SymbolChain& other, const Int& scale) {
    for (const auto& [key, term] : other.terms_) add(term.matrix, term.coeff * scale);
}

bool SymbolChain::operator==(const SymbolChain& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    auto it = terms_.begin();
    auto jt = o.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt) {
        if (it->first != jt->first || it->second.coeff != jt->second.coeff) return false;
    }
    return true;
}

namespace {

std::vector<Int> flatten_column(const std::vector<OrderElement>& col) {
    std::vector<Int> flat;
    for (const auto& e : col)
        for (const auto& c : e.coords) flat.push_back(c);
    return flat;
}

} // namespace

NormalSymbol canonicalize(const NumberOrder& order,
                          const std::vector<std::vector<FieldElement>>& columns) {
    const size_t n = columns.size();
    if (n == 0) raise(Errc::DimensionMismatch, "empty symbol");
    for (const auto& col : columns)
        if (col.size() != n) raise(Errc::DimensionMismatch, "symbol matrix must be square");

    // integralize and remove rational content per column (relation (2))
    std::vector<std::vector<OrderElement>> cols;
    cols.reserve(n);
    for (const auto& col : columns) {
        bool all_zero = true;
        Int den_lcm(1);
        for (const auto& e : col)
            for (const auto& c : e.coords) {
                if (c != 0) all_zero = false;
                den_lcm = lcm_int(den_lcm, c.get_den());
            }
        if (all_zero) raise(Errc::ZeroColumn, "symbol columns must be nonzero");
        std::vector<OrderElement> icol(col.size());
        Int content(0);
        for (size_t k = 0; k < col.size(); ++k) {
            icol[k].coords.resize(col[k].coords.size());
            for (size_t l = 0; l < col[k].coords.size(); ++l) {
                Rat scaled = col[k].coords[l] * Rat(den_lcm);
                icol[k].coords[l] = scaled.get_num();
                content = gcd_int(content, icol[k].coords[l]);
            }
        }
        int lead_sign = 0;
        for (const auto& e : icol)
            for (const auto& c : e.coords) {
                if (lead_sign == 0 && c != 0) lead_sign = sgn(c);
            }
        if (lead_sign < 0) content = -content;
        for (auto& e : icol)
            for (auto& c : e.coords) c /= content;
        cols.push_back(std::move(icol));
    }

    // dependence over K (relation (3))
    std::vector<std::vector<FieldElement>> fcols;
    for (const auto& col : cols) {
        std::vector<FieldElement> fcol;
        for (const auto& e : col) fcol.push_back(to_field(e));
        fcols.push_back(std::move(fcol));
    }
    bool zero = det_over_field(order, fcols).is_zero();

    // fixed total order on columns: descending lexicographic on the
    // flattened coordinates, sign from the sorting permutation (relation (1))
    std::vector<size_t> perm(n);
    for (size_t i = 0; i < n; ++i) perm[i] = i;
    std::vector<std::vector<Int>> flats;
    for (const auto& col : cols) flats.push_back(flatten_column(col));
    std::stable_sort(perm.begin(), perm.end(),
                     [&](size_t a, size_t b) { return flats[a] > flats[b]; });
    int inversions = 0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (perm[i] > perm[j]) ++inversions;

    std::vector<std::vector<OrderElement>> sorted;
    sorted.reserve(n);
    for (size_t i = 0; i < n; ++i) sorted.push_back(cols[perm[i]]);

    NormalSymbol out{SymbolMatrix(order, std::move(sorted)), (inversions % 2 == 0) ? 1 : -1, zero};
    if (out.is_zero) out.sign = 1;
    return out;
}

NormalSymbol canonicalize(const NumberOrder& order, const SymbolMatrix& m) {
    std::vector<std::vector<FieldElement>> cols;
    for (const auto& col : m.columns()) {
        std::vector<FieldElement> fcol;
        for (const auto& e : col) fcol.push_back(to_field(e));
        cols.push_back(std::move(fcol));
    }
    return canonicalize(order, cols);
}

std::vector<std::pair<int, std::vector<std::vector<OrderElement>>>> relation4_expand(
    const std::vector<std::vector<OrderElement>>& tuple) {
    std::vector<std::pair<int, std::vector<std::vector<OrderElement>>>> out;
    for (size_t p = 0; p < tuple.size(); ++p) {
        std::vector<std::vector<OrderElement>> omitted;
        for (size_t i = 0; i < tuple.size(); ++i)
            if (i != p) omitted.push_back(tuple[i]);
        out.emplace_back((p % 2 == 0) ? 1 : -1, std::move(omitted));
    }
    return out;
}

std::vector<std::pair<int, SymbolMatrix>> reduce_step(const NumberOrder& order,
                                                      const SymbolMatrix& m, const Pivot& p) {
    const size_t n = m.dim();
    if (p.x.size() != n || p.q.size() != n) raise(Errc::InvalidPivot, "pivot has wrong shape");

    bool nonzero = false;
    for (const auto& e : p.x)
        if (!e.is_zero()) nonzero = true;
    if (!nonzero) raise(Errc::InvalidPivot, "pivot x must be nonzero");

    // x = sum q_i v_i, checked exactly per row
    for (size_t k = 0; k < n; ++k) {
        FieldElement acc{RatVec(order.degree(), Rat(0))};
        for (size_t i = 0; i < n; ++i) {
            FieldElement t = order.mul(p.q[i], to_field(m.entry(k, i)));
            for (size_t l = 0; l < order.degree(); ++l) acc.coords[l] += t.coords[l];
        }
        if (!(acc == to_field(p.x[k]))) raise(Errc::InvalidPivot, "x != sum q_i v_i");
    }
    for (const auto& qi : p.q) {
        if (!(::abs(order.norm(qi)) < 1)) raise(Errc::InvalidPivot, "|N(q_i)| must be < 1");
    }

    std::vector<std::pair<int, SymbolMatrix>> children;
    for (size_t idx = 0; idx < n; ++idx) {
        if (p.q[idx].is_zero()) continue;
        // relation (4) on (x, v_1, ..., v_n): omitting v_i carries (-1)^i,
        // moving [m] across the equation contributes -1, and commuting x
        // from slot 0 into slot i costs (-1)^{i-1}
        const size_t i1 = idx + 1;
        int omission = (i1 % 2 == 0) ? 1 : -1;
        int commute = ((i1 - 1) % 2 == 0) ? 1 : -1;
        int sign = -(omission * commute);

        SymbolMatrix child = m.with_column(order, idx, p.x);
        Rat expected = ::abs(order.norm(p.q[idx])) * Rat(m.norm());
        if (Rat(child.norm()) != expected)
            raise(Errc::InvalidPivot, "child norm does not equal |N(q_i)| |m|");
        children.emplace_back(sign, std::move(child));
    }
    if (children.empty()) raise(Errc::InvalidPivot, "all pivot coefficients vanish");
    return children;
}

std::string spec_hash(const OrderSpec& spec) {
    std::ostringstream os;
    os << "p:";
    for (const auto& c : spec.min_poly) os << c.get_str() << ',';
    os << ";b:";
    for (const auto& e : spec.basis.a) os << rat_to_string(e) << ',';
    return fnv1a64_hex(os.str());
}

namespace {

struct NodeRec {
    SymbolMatrix matrix;
    Pivot pivot;
    std::vector<std::pair<int, SymbolMatrix>> children;
};

NodeRec expand_one(const NumberOrder& order, const SymbolMatrix& mat, const SearchConfig& search) {
    NodeRec rec;
    rec.matrix = mat;
    rec.pivot = find_pivot(order, mat, search);
    rec.children = reduce_step(order, mat, rec.pivot);
    return rec;
}

} // namespace

ReduceResult reduce(const NumberOrder& order,
                    const std::vector<std::vector<FieldElement>>& columns, const Int& C,
                    const ReduceConfig& config) {
    const size_t n = columns.size();
    if (n < 2) raise(Errc::UnsupportedDimension, "reduction needs n >= 2");

    NormalSymbol root = canonicalize(order, columns);
    BoundReport bound = spanning_bound(order, n);
    if (C < bound.c_min && !config.force)
        raise(Errc::BoundTooSmall,
              "C = " + C.get_str() + " is below the certified spanning bound " + bound.c_min.get_str());

    ReduceResult res;
    res.certificate.field_hash = spec_hash(order.spec());
    res.certificate.n = n;
    res.certificate.C = C;
    res.certificate.root = root.matrix;
    res.certificate.root_sign = root.sign;
    res.certificate.root_is_zero = root.is_zero;
    res.stats.max_leaf_norm = 0;
    if (root.is_zero) return res;

    std::map<std::string, NodeRec> nodes;
    std::map<std::string, SymbolMatrix> leaf_mats;
    std::vector<SymbolMatrix> pending;
    std::set<std::string> queued;

    auto classify = [&](const SymbolMatrix& mat) {
        if (mat.norm() <= C) {
            leaf_mats.emplace(mat.key(), mat);
        } else if (queued.insert(mat.key()).second) {
            pending.push_back(mat);
        }
    };
    classify(root.matrix);

    while (!pending.empty()) {
        if (nodes.size() + pending.size() > config.node_budget)
            raise(Errc::NodeBudgetExceeded,
                  "expanded nodes would exceed the budget of " + std::to_string(config.node_budget));
        std::vector<SymbolMatrix> batch;
        batch.swap(pending);

        std::vector<NodeRec> recs(batch.size());
        if (config.jobs <= 1 || batch.size() == 1) {
            for (size_t i = 0; i < batch.size(); ++i) recs[i] = expand_one(order, batch[i], config.search);
        } else {
            const size_t workers = std::min<size_t>(static_cast<size_t>(config.jobs), batch.size());
            std::vector<std::thread> threads;
            std::vector<std::exception_ptr> errors(workers);
            for (size_t w = 0; w < workers; ++w) {
                threads.emplace_back([&, w]() {
                    try {
                        for (size_t i = w; i < batch.size(); i += workers)
                            recs[i] = expand_one(order, batch[i], config.search);
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
            }
            for (auto& t : threads) t.join();
            for (const auto& err : errors)
                if (err) std::rethrow_exception(err);
        }

        for (auto& rec : recs) {
            for (const auto& [sgn, child] : rec.children) {
                (void)sgn;
                classify(child);
            }
            std::string key = rec.matrix.key();
            nodes.emplace(std::move(key), std::move(rec));
        }
    }

    // multiplicities: process nodes in descending norm order (children are
    // always strictly smaller, so this is topological)
    std::vector<const NodeRec*> ordered;
    ordered.reserve(nodes.size());
    for (const auto& [key, rec] : nodes) ordered.push_back(&rec);
    std::sort(ordered.begin(), ordered.end(), [](const NodeRec* a, const NodeRec* b) {
        if (a->matrix.norm() != b->matrix.norm()) return a->matrix.norm() > b->matrix.norm();
        return a->matrix.key() < b->matrix.key();
    });

    std::map<std::string, Int> mult;
    mult[root.matrix.key()] = 1;
    for (const NodeRec* rec : ordered) {
        Int c = mult[rec->matrix.key()];
        if (c == 0) continue;
        for (const auto& [sgn, child] : rec->children) mult[child.key()] += c * sgn;
    }

    for (const NodeRec* rec : ordered) {
        res.certificate.nodes.push_back(
            {rec->matrix, rec->matrix.norm(), rec->pivot.x, rec->pivot.q, rec->children});
    }
    for (const auto& [key, mat] : leaf_mats) {
        Int c = mult[key] * root.sign;
        if (c == 0) continue;
        res.certificate.leaves.push_back({mat, mat.norm(), c});
        res.chain.add(canonicalize(order, mat), c);
        if (mat.norm() > res.stats.max_leaf_norm) res.stats.max_leaf_norm = mat.norm();
    }
    res.stats.expanded_nodes = nodes.size();
    res.stats.leaf_count = res.certificate.leaves.size();
    return res;
}

SymbolChain cf_reduce_2x2_rational(const NumberOrder& order, const IntMatrix& m) {
    if (order.degree() != 1)
        raise(Errc::UnsupportedDimension, "continued-fraction reduction needs K = Q");
    if (m.rows != 2 || m.cols != 2)
        raise(Errc::UnsupportedDimension, "continued-fraction reduction needs a 2x2 matrix");
    if (det(m) == 0) raise(Errc::SingularMatrix, "symbol is zero");

    // convergent chain from the cusp at infinity to a/c
    auto path = [](Int a, Int c) {
        std::vector<std::array<Int, 4>> terms;
        Int g = gcd_int(a, c);
        a /= g;
        c /= g;
        Int p0(0), q0(1), p1(1), q1(0);
        while (c != 0) {
            Int a0;
            mpz_fdiv_q(a0.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
            Int pk = a0 * p1 + p0, qk = a0 * q1 + q0;
            terms.push_back({p1, q1, pk, qk});
            Int r = a - a0 * c;
            p0 = p1;
            q0 = q1;
            p1 = pk;
            q1 = qk;
            a = c;
            c = r;
        }
        return terms;
    };

    SymbolChain chain;
    auto add_path = [&](const std::vector<std::array<Int, 4>>& terms, int s) {
        for (const auto& t : terms) {
            std::vector<std::vector<OrderElement>> cols{{OrderElement{{t[0]}}, OrderElement{{t[1]}}},
                                                        {OrderElement{{t[2]}}, OrderElement{{t[3]}}}};
            chain.add(canonicalize(order, SymbolMatrix(order, std::move(cols))), Int(s));
        }
    };
    add_path(path(m(0, 1), m(1, 1)), 1);
    add_path(path(m(0, 0), m(1, 0)), -1);
    return chain;
}

std::vector<IntMatrix> enumerate_hnf_classes(size_t n, const Int& C, size_t cap) {
    if (n < 1) raise(Errc::UnsupportedDimension, "HNF enumeration needs n >= 1");
    std::vector<IntMatrix> out;
    if (C < 1) return out;

    std::vector<Int> diag(n, Int(1));
    Int total(0);
    std::function<void(size_t, Int)> count_rec = [&](size_t idx, Int prod) {
        if (idx == n) {
            Int w(1);
            for (size_t j = 0; j < n; ++j) w *= pow_int(diag[j], static_cast<unsigned long>(j));
            total += w;
            return;
        }
        for (Int dv(1); prod * dv <= C; ++dv) {
            diag[idx] = dv;
            count_rec(idx + 1, prod * dv);
        }
        diag[idx] = 1;
    };
    count_rec(0, Int(1));
    if (total > static_cast<long>(cap))
        raise(Errc::CapExceeded, "class count " + total.get_str() + " exceeds the cap");

    std::function<void(size_t, Int)> gen_rec = [&](size_t idx, Int prod) {
        if (idx < n) {
            for (Int dv(1); prod * dv <= C; ++dv) {
                diag[idx] = dv;
                gen_rec(idx + 1, prod * dv);
            }
            diag[idx] = 1;
            return;
        }
        // above-diagonal positions, column-major, odometer with the last
        // position fastest
        std::vector<std::pair<size_t, size_t>> pos;
        for (size_t j = 1; j < n; ++j)
            for (size_t i = 0; i < j; ++i) pos.emplace_back(i, j);
        std::vector<Int> fill(pos.size(), Int(0));
        while (true) {
            IntMatrix h(n, n);
            for (size_t j = 0; j < n; ++j) h(j, j) = diag[j];
            for (size_t t = 0; t < pos.size(); ++t) h(pos[t].first, pos[t].second) = fill[t];
            out.push_back(std::move(h));
            size_t p = pos.size();
            bool wrapped = true;
            while (p > 0) {
                --p;
                if (++fill[p] < diag[pos[p].second]) {
                    wrapped = false;
                    break;
                }
                fill[p] = 0;
            }
            if (wrapped || pos.empty()) break;
        }
    };
    gen_rec(0, Int(1));
    return out;
}

} // namespace modsym
