#include "isoclass/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace isoclass {

namespace {

long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }

int mod_pow(long long base, long long exp, long long mod) {
    long long r = 1 % mod;
    base %= mod;
    if (base < 0) base += mod;
    for (; exp > 0; exp >>= 1) {
        if (exp & 1) r = r * base % mod;
        base = base * base % mod;
    }
    return static_cast<int>(r);
}

int mod_inv(int a, int mod) {
    // mod is small; brute force is clearest.
    a %= mod;
    if (a < 0) a += mod;
    for (int x = 0; x < mod; ++x)
        if (a * x % mod == 1 % mod) return x;
    throw BadParameters("no inverse of " + std::to_string(a) + " mod " + std::to_string(mod));
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

FiniteGroup cyclic_group(int n) {
    if (n < 1) throw BadParameters("cyclic_group: n must be >= 1");
    std::vector<Elem> mul(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) mul[static_cast<size_t>(i) * n + j] = (i + j) % n;
    return FiniteGroup::from_table(std::move(mul), "Z" + std::to_string(n));
}

FiniteGroup abelian_group(const std::vector<int>& orders) {
    if (orders.empty()) throw BadParameters("abelian_group: empty factor list");
    FiniteGroup G = cyclic_group(orders[0]);
    std::string label = "Z" + std::to_string(orders[0]);
    for (size_t i = 1; i < orders.size(); ++i) {
        label += "xZ" + std::to_string(orders[i]);
        G = direct_product(G, cyclic_group(orders[i]), label);
    }
    return G;
}

FiniteGroup dihedral_group(int n) {
    if (n < 3) throw BadParameters("dihedral_group: n must be >= 3");
    std::vector<int> rot(n), refl(n);
    for (int i = 0; i < n; ++i) {
        rot[i] = (i + 1) % n;
        refl[i] = (n - i) % n;
    }
    FiniteGroup G = group_from_permutations(n, {rot, refl}, "D" + std::to_string(n));
    if (G.order() != 2 * n) throw RelationCheckFailed("dihedral_group: wrong order");
    return G;
}

FiniteGroup quaternion_group() {
    // i and j in the left regular representation on {1,i,-1,-i,j,ij,-j,-ij}.
    std::vector<std::vector<int>> gens = {{1, 2, 3, 0, 5, 6, 7, 4}, {4, 7, 6, 5, 2, 1, 0, 3}};
    FiniteGroup G = group_from_permutations(8, gens, "Q8");
    if (G.order() != 8) throw RelationCheckFailed("quaternion_group: wrong order");
    return G;
}

FiniteGroup dpqr_group(int p, int q, int r) {
    if (p < 1 || q < 1) throw BadParameters("dpqr_group: p, q must be >= 1");
    int rq = ((r % q) + q) % q;
    if (gcd_ll(rq, q) != 1) throw BadParameters("dpqr_group: gcd(r, q) != 1");
    if (mod_pow(rq, p, q) != 1 % q) throw BadParameters("dpqr_group: r^p != 1 (mod q)");
    // Elements x^i y^j, index i*q + j. From x y x^-1 = y^r we get
    // x^-k y^j x^k = y^{j * r^-k}, so (x^i y^j)(x^k y^l) = x^{i+k} y^{j r^-k + l}.
    int rinv = mod_inv(rq, q);
    int n = p * q;
    std::vector<Elem> mul(static_cast<size_t>(n) * n);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < q; ++j)
            for (int k = 0; k < p; ++k)
                for (int l = 0; l < q; ++l) {
                    int ii = (i + k) % p;
                    int jj = (j * mod_pow(rinv, k, q) + l) % q;
                    mul[static_cast<size_t>(i * q + j) * n + (k * q + l)] = ii * q + jj;
                }
    std::string label =
        "D(" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r) + ")";
    FiniteGroup G = FiniteGroup::from_table(std::move(mul), label);
    Elem x = (p > 1) ? q : 0, y = (q > 1) ? 1 : 0;
    if (G.power(x, p) != 0 || G.power(y, q) != 0 || G.conj(x, y) != G.power(y, rq) ||
        !generates(G, {x, y}))
        throw RelationCheckFailed("dpqr_group: defining relations failed");
    return G;
}

FiniteGroup symmetric_group(int n) {
    if (n < 2 || n > 5) throw BadParameters("symmetric_group: need 2 <= n <= 5");
    std::vector<int> transposition(n), cycle(n);
    std::iota(transposition.begin(), transposition.end(), 0);
    std::swap(transposition[0], transposition[1]);
    for (int i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
    FiniteGroup G = group_from_permutations(n, {cycle, transposition}, "S" + std::to_string(n));
    int fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    if (G.order() != fact) throw RelationCheckFailed("symmetric_group: wrong order");
    return G;
}

FiniteGroup alternating_group(int n) {
    if (n < 3 || n > 5) throw BadParameters("alternating_group: need 3 <= n <= 5");
    std::vector<std::vector<int>> gens;
    std::vector<int> three(n);
    std::iota(three.begin(), three.end(), 0);
    three[0] = 1, three[1] = 2, three[2] = 0;
    gens.push_back(three);
    if (n == 4) gens.push_back({0, 2, 3, 1});
    if (n == 5) gens.push_back({1, 2, 3, 4, 0});
    FiniteGroup G = group_from_permutations(n, gens, "A" + std::to_string(n));
    int fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    if (G.order() != fact / 2) throw RelationCheckFailed("alternating_group: wrong order");
    return G;
}

namespace {

/// Group of 2x2 matrices over F_3 with determinant in `dets`, identity first.
FiniteGroup matrix_group_f3(const std::vector<int>& dets, const std::string& label) {
    struct M {
        int a, b, c, d;
    };
    std::vector<M> elems;
    elems.push_back({1, 0, 0, 1});
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                for (int d = 0; d < 3; ++d) {
                    if (a == 1 && b == 0 && c == 0 && d == 1) continue;
                    int det = ((a * d - b * c) % 3 + 3) % 3;
                    if (std::find(dets.begin(), dets.end(), det) != dets.end())
                        elems.push_back({a, b, c, d});
                }
    int n = static_cast<int>(elems.size());
    auto key = [](const M& m) { return ((m.a * 3 + m.b) * 3 + m.c) * 3 + m.d; };
    std::map<int, int> index;
    for (int i = 0; i < n; ++i) index[key(elems[i])] = i;
    std::vector<Elem> mul(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const M &x = elems[i], &y = elems[j];
            M z{(x.a * y.a + x.b * y.c) % 3, (x.a * y.b + x.b * y.d) % 3,
                (x.c * y.a + x.d * y.c) % 3, (x.c * y.b + x.d * y.d) % 3};
            mul[static_cast<size_t>(i) * n + j] = index.at(key(z));
        }
    return FiniteGroup::from_table(std::move(mul), label);
}

}  // namespace

FiniteGroup sl2_f3() {
    FiniteGroup G = matrix_group_f3({1}, "SL(2,3)");
    if (G.order() != 24) throw RelationCheckFailed("sl2_f3: wrong order");
    return G;
}

FiniteGroup gl2_f3() {
    FiniteGroup G = matrix_group_f3({1, 2}, "GL(2,3)");
    if (G.order() != 48) throw RelationCheckFailed("gl2_f3: wrong order");
    return G;
}

FiniteGroup psl2_f7() {
    // Action on the projective line over F_7: points 0..6 and infinity = 7,
    // generated by z -> z+1 and z -> -1/z.
    std::vector<int> s(8), t(8);
    for (int z = 0; z < 7; ++z) s[z] = (z + 1) % 7;
    s[7] = 7;
    t[0] = 7;
    t[7] = 0;
    for (int z = 1; z < 7; ++z) t[z] = (7 - mod_inv(z, 7)) % 7;
    FiniteGroup G = group_from_permutations(8, {s, t}, "PSL(2,7)");
    if (G.order() != 168) throw RelationCheckFailed("psl2_f7: wrong order");
    return G;
}

FiniteGroup direct_product(const FiniteGroup& A, const FiniteGroup& B, std::string label) {
    std::vector<Automorphism> trivial(A.order());
    std::vector<Elem> id(B.order());
    std::iota(id.begin(), id.end(), 0);
    for (auto& a : trivial) a.perm = id;
    if (label.empty()) label = A.label() + "x" + B.label();
    return semidirect_product(A, B, trivial, std::move(label));
}

FiniteGroup semidirect_product(const FiniteGroup& A, const FiniteGroup& N,
                               const std::vector<Automorphism>& action, std::string label) {
    int na = A.order(), nn = N.order();
    if (static_cast<int>(action.size()) != na)
        throw BadParameters("semidirect_product: action must have one entry per element of A");
    for (const auto& phi : action) {
        if (static_cast<int>(phi.perm.size()) != nn)
            throw BadParameters("semidirect_product: action entry of wrong degree");
        for (Elem x = 0; x < nn; ++x)
            for (Elem y = 0; y < nn; ++y)
                if (phi(N.mul(x, y)) != N.mul(phi(x), phi(y)))
                    throw BadParameters("semidirect_product: action entry is not an automorphism");
    }
    for (Elem a = 0; a < na; ++a)
        for (Elem b = 0; b < na; ++b)
            for (Elem x = 0; x < nn; ++x)
                if (action[A.mul(a, b)](x) != action[a](action[b](x)))
                    throw BadParameters("semidirect_product: action is not a homomorphism");
    // Element (a, x) stands for a*x; (a x)(b y) = ab (b^-1 x b) y.
    int n = na * nn;
    std::vector<Elem> mul(static_cast<size_t>(n) * n);
    for (Elem a = 0; a < na; ++a)
        for (Elem x = 0; x < nn; ++x)
            for (Elem b = 0; b < na; ++b)
                for (Elem y = 0; y < nn; ++y) {
                    Elem ab = A.mul(a, b);
                    Elem xy = N.mul(action[A.inv(b)](x), y);
                    mul[static_cast<size_t>(a * nn + x) * n + (b * nn + y)] = ab * nn + xy;
                }
    if (label.empty()) label = A.label() + "|x" + N.label();
    return FiniteGroup::from_table(std::move(mul), std::move(label));
}

std::vector<std::vector<Automorphism>> action_homomorphisms(const FiniteGroup& A,
                                                            const FiniteGroup& N) {
    std::vector<Automorphism> auts = automorphism_group(N);
    int nauts = static_cast<int>(auts.size());
    // Order of each automorphism (as a permutation) for image filtering.
    auto aut_order = [&](const Automorphism& phi) {
        int ord = 1;
        Automorphism cur = phi;
        std::vector<Elem> id(N.order());
        std::iota(id.begin(), id.end(), 0);
        while (cur.perm != id) {
            Automorphism next;
            next.perm.resize(N.order());
            for (Elem x = 0; x < N.order(); ++x) next.perm[x] = phi(cur(x));
            cur = next;
            ++ord;
        }
        return ord;
    };
    std::vector<int> orders(nauts);
    std::map<std::vector<Elem>, int> aut_index;
    for (int i = 0; i < nauts; ++i) {
        orders[i] = aut_order(auts[i]);
        aut_index[auts[i].perm] = i;
    }
    auto compose = [&](int i, int j) {
        std::vector<Elem> p(N.order());
        for (Elem x = 0; x < N.order(); ++x) p[x] = auts[i](auts[j](x));
        return aut_index.at(p);
    };

    std::vector<Elem> gens = minimal_generating_tuple(A);
    int k = static_cast<int>(gens.size());
    std::vector<std::vector<Automorphism>> result;
    std::vector<int> choice(k, 0);

    // Extends generator images to a full map A -> indices into auts, or
    // returns an empty vector if the extension is inconsistent.
    auto extend = [&](const std::vector<int>& imgs) -> std::vector<int> {
        std::vector<int> img(A.order(), -1);
        img[0] = aut_index.at([&] {
            std::vector<Elem> id(N.order());
            std::iota(id.begin(), id.end(), 0);
            return id;
        }());
        std::vector<Elem> queue = {0};
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            Elem x = queue[qi];
            for (int gi = 0; gi < k; ++gi) {
                Elem y = A.mul(x, gens[gi]);
                int want = compose(img[x], imgs[gi]);
                if (img[y] == -1) {
                    img[y] = want;
                    queue.push_back(y);
                } else if (img[y] != want) {
                    return {};
                }
            }
        }
        for (Elem a = 0; a < A.order(); ++a)
            for (Elem b = 0; b < A.order(); ++b)
                if (img[A.mul(a, b)] != compose(img[a], img[b])) return {};
        return img;
    };

    // Depth-first enumeration over generator image tuples.
    std::vector<int> imgs(k);
    std::function<void(int)> rec = [&](int depth) {
        if (depth == k) {
            std::vector<int> img = extend(imgs);
            if (img.empty()) return;
            std::vector<Automorphism> hom(A.order());
            for (Elem a = 0; a < A.order(); ++a) hom[a] = auts[img[a]];
            result.push_back(std::move(hom));
            return;
        }
        int need = A.elem_order(gens[depth]);
        for (int i = 0; i < nauts; ++i) {
            if (need % orders[i] != 0) continue;
            imgs[depth] = i;
            rec(depth + 1);
        }
    };
    rec(0);
    return result;
}

FiniteGroup construct_named(const std::string& name) {
    // Split into atoms on 'x', but not inside parentheses.
    std::vector<std::string> atoms;
    std::string cur;
    int depth = 0;
    for (char c : name) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == 'x' && depth == 0) {
            atoms.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    atoms.push_back(cur);

    auto atom = [](const std::string& s) -> FiniteGroup {
        if (s.empty()) throw BadParameters("construct_named: empty atom");
        if (s == "Q8") return quaternion_group();
        if (s == "SL(2,3)") return sl2_f3();
        if (s == "GL(2,3)") return gl2_f3();
        if (s == "PSL(2,7)") return psl2_f7();
        if (s[0] == 'D' && s.size() > 1 && s[1] == '(') {
            int p, q, r;
            char c1, c2, c3, c4;
            std::istringstream in(s.substr(1));
            if (!(in >> c1 >> p >> c2 >> q >> c3 >> r >> c4) || c1 != '(' || c2 != ',' ||
                c3 != ',' || c4 != ')')
                throw BadParameters("construct_named: bad D(p,q,r) atom: " + s);
            return dpqr_group(p, q, r);
        }
        char kind = s[0];
        if (kind == 'Z' || kind == 'D' || kind == 'S' || kind == 'A') {
            int n;
            std::istringstream in(s.substr(1));
            if (!(in >> n) || !in.eof()) throw BadParameters("construct_named: bad atom: " + s);
            if (kind == 'Z') return cyclic_group(n);
            if (kind == 'D') return dihedral_group(n);
            if (kind == 'S') return symmetric_group(n);
            return alternating_group(n);
        }
        throw BadParameters("construct_named: unknown atom: " + s);
    };

    FiniteGroup G = atom(atoms[0]);
    for (size_t i = 1; i < atoms.size(); ++i) G = direct_product(G, atom(atoms[i]), name);
    return G;
}

// --- Cycle notation ----------------------------------------------------------

std::string cycles_to_string(const std::vector<int>& perm) {
    int n = static_cast<int>(perm.size());
    std::string out;
    std::vector<bool> seen(n, false);
    for (int i = 0; i < n; ++i) {
        if (seen[i] || perm[i] == i) continue;
        out += "(";
        int j = i;
        bool first = true;
        do {
            if (!first) out += " ";
            out += std::to_string(j);
            seen[j] = true;
            j = perm[j];
            first = false;
        } while (j != i);
        out += ")";
    }
    if (out.empty()) out = "()";
    return out;
}

std::vector<int> parse_cycles(const std::string& text, int degree) {
    std::vector<int> perm(degree);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<bool> used(degree, false);
    size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip_ws();
    bool any = false;
    while (pos < text.size()) {
        if (text[pos] != '(') throw ParseError("expected '(' in cycle notation: " + text);
        ++pos;
        std::vector<int> cycle;
        skip_ws();
        while (pos < text.size() && text[pos] != ')') {
            if (!std::isdigit(static_cast<unsigned char>(text[pos])))
                throw ParseError("expected digit in cycle notation: " + text);
            int v = 0;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                v = v * 10 + (text[pos++] - '0');
            if (v >= degree) throw ParseError("cycle entry " + std::to_string(v) +
                                              " exceeds degree " + std::to_string(degree));
            if (used[v]) throw ParseError("repeated entry in cycle notation: " + text);
            used[v] = true;
            cycle.push_back(v);
            skip_ws();
        }
        if (pos >= text.size()) throw ParseError("unterminated cycle: " + text);
        ++pos;  // ')'
        for (size_t i = 0; i < cycle.size(); ++i) perm[cycle[i]] = cycle[(i + 1) % cycle.size()];
        any = true;
        skip_ws();
    }
    if (!any) throw ParseError("empty permutation text: " + text);
    return perm;
}

std::vector<std::vector<int>> regular_generators(const FiniteGroup& G) {
    std::vector<std::vector<int>> gens;
    for (Elem g : minimal_generating_tuple(G)) {
        std::vector<int> perm(G.order());
        for (Elem x = 0; x < G.order(); ++x) perm[x] = G.mul(g, x);
        gens.push_back(std::move(perm));
    }
    if (gens.empty()) gens.push_back({0});  // trivial group still needs one generator line
    return gens;
}

// --- Catalog -----------------------------------------------------------------

Catalog Catalog::load(const std::string& path) { return load_impl(path, true); }

Catalog Catalog::load_unvalidated(const std::string& path) { return load_impl(path, false); }

Catalog Catalog::load_impl(const std::string& path, bool validate_pairwise) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open catalog file: " + path);
    Catalog cat;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw ParseError(path + ":" + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::vector<std::string> fields;
        std::string field;
        std::istringstream fs(t);
        while (std::getline(fs, field, ';')) fields.push_back(trim(field));
        if (fields.size() < 5) fail("expected at least 5 ';'-separated fields");
        CatalogEntry e;
        try {
            e.order = std::stoi(fields[0]);
            e.degree = std::stoi(fields[3]);
        } catch (const std::exception&) {
            fail("order and degree must be integers");
        }
        if (e.order < 1) fail("order must be positive");
        if (e.degree < 1) fail("degree must be positive");
        e.label = fields[1];
        e.paper_id = fields[2];
        if (e.label.empty()) fail("label must be nonempty");
        for (size_t i = 4; i < fields.size(); ++i) {
            try {
                e.generators.push_back(parse_cycles(fields[i], e.degree));
            } catch (const ParseError& err) {
                fail(err.what());
            }
        }
        FiniteGroup G = group_from_permutations(e.degree, e.generators, e.label, e.paper_id);
        if (G.order() != e.order)
            throw OrderMismatch(path + ":" + std::to_string(lineno) + ": entry '" + e.label +
                                "' declares order " + std::to_string(e.order) +
                                " but generates order " + std::to_string(G.order()));
        cat.entries_.push_back(std::move(e));
        cat.by_order_[cat.entries_.back().order].push_back(std::move(G));
    }

    {
        std::map<std::string, int> labels;
        for (const auto& e : cat.entries_)
            if (++labels[e.label] > 1) throw ParseError("duplicate catalog label: " + e.label);
    }

    if (validate_pairwise) {
        for (const auto& [order, groups] : cat.by_order_) {
            int m = static_cast<int>(groups.size());
            if (order <= 32) {
                for (int i = 0; i < m; ++i)
                    for (int j = i + 1; j < m; ++j)
                        if (iso_fingerprint(groups[i]) == iso_fingerprint(groups[j]) &&
                            is_isomorphic(groups[i], groups[j]))
                            throw ParseError("catalog entries '" + groups[i].label() + "' and '" +
                                             groups[j].label() + "' are isomorphic");
            } else if (m > 1) {
                // Spot check a deterministic sample of pairs.
                std::mt19937 rng(static_cast<unsigned>(order));
                for (int s = 0; s < std::min(10, m); ++s) {
                    int i = static_cast<int>(rng() % m), j = static_cast<int>(rng() % m);
                    if (i == j) continue;
                    if (iso_fingerprint(groups[i]) == iso_fingerprint(groups[j]) &&
                        is_isomorphic(groups[i], groups[j]))
                        throw ParseError("catalog entries '" + groups[i].label() + "' and '" +
                                         groups[j].label() + "' are isomorphic");
                }
            }
        }
    }
    return cat;
}

std::vector<int> Catalog::covered_orders() const {
    std::vector<int> out;
    for (const auto& [order, groups] : by_order_) out.push_back(order);
    return out;
}

const std::vector<FiniteGroup>& Catalog::groups_of_order(int n) const {
    auto it = by_order_.find(n);
    if (it == by_order_.end())
        throw OrderNotCovered("catalog does not cover order " + std::to_string(n));
    return it->second;
}

const FiniteGroup& Catalog::by_label(const std::string& label) const {
    for (const auto& [order, groups] : by_order_)
        for (const auto& G : groups)
            if (G.label() == label) return G;
    throw OrderNotCovered("no catalog entry labeled '" + label + "'");
}

void write_catalog(const std::string& path, const std::vector<CatalogEntry>& entries) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path);
    out << "# Catalog of finite groups, one isomorphism class per line.\n";
    out << "# Format: order;label;paper_id;degree;gen1;gen2;...\n";
    for (const auto& e : entries) {
        out << e.order << ";" << e.label << ";" << e.paper_id << ";" << e.degree;
        for (const auto& g : e.generators) out << ";" << cycles_to_string(g);
        out << "\n";
    }
}

}  // namespace isoclass
