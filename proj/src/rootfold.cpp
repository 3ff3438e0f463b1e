#include "hyperloop/rootfold.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace hyperloop {

namespace {

std::vector<IVec> cartan_matrix(char series, int n) {
    std::vector<IVec> a(n, IVec(n, 0));
    for (int i = 0; i < n; ++i) a[i][i] = 2;
    auto link = [&](int i, int j) { a[i][j] = a[j][i] = -1; };
    switch (series) {
        case 'A':
            for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
            break;
        case 'B':
            for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
            a[n - 1][n - 2] = -2;
            break;
        case 'C':
            for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
            a[n - 2][n - 1] = -2;
            break;
        case 'D':
            for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
            link(n - 3, n - 1);
            break;
        case 'E':
            link(0, 2);
            link(2, 3);
            link(1, 3);
            for (int i = 3; i + 1 < n; ++i) link(i, i + 1);
            break;
        case 'F':
            link(0, 1);
            link(1, 2);
            link(2, 3);
            a[2][1] = -2;
            break;
        case 'G':
            a[0][1] = -3;
            a[1][0] = -1;
            break;
        default:
            break;
    }
    return a;
}

bool valid_type(char series, int n) {
    switch (series) {
        case 'A': return n >= 1;
        case 'B': return n >= 2;
        case 'C': return n >= 2;
        case 'D': return n >= 4;
        case 'E': return n >= 6 && n <= 8;
        case 'F': return n == 4;
        case 'G': return n == 2;
        default: return false;
    }
}

// Symmetrizer: d_i a_ij = d_j a_ji, minimal positive integers.
IVec symmetrizer(const std::vector<IVec>& a) {
    const int n = static_cast<int>(a.size());
    IVec d(n, 0);
    d[0] = 1;
    std::vector<Rational> q(n, Rational(0));
    q[0] = 1;
    std::deque<int> todo{0};
    std::vector<bool> seen(n, false);
    seen[0] = true;
    while (!todo.empty()) {
        int i = todo.front();
        todo.pop_front();
        for (int j = 0; j < n; ++j) {
            if (seen[j] || a[i][j] == 0) continue;
            q[j] = q[i] * a[i][j] / a[j][i];
            seen[j] = true;
            todo.push_back(j);
        }
    }
    Integer den = 1;
    for (auto& x : q) den = lcm(den, Integer(x.get_den()));
    Integer g = 0;
    for (auto& x : q) {
        Rational y = x * den;
        g = gcd(g, Integer(y.get_num()));
    }
    for (int i = 0; i < n; ++i) d[i] = static_cast<int>(Integer(q[i] * den / g).get_si());
    return d;
}

}  // namespace

int RootSystem::find(const IVec& coords) const {
    auto it = index.find(coords);
    return it == index.end() ? -1 : it->second;
}

int RootSystem::height(int root) const { return std::accumulate(pos[root].begin(), pos[root].end(), 0); }

int RootSystem::pair_coroot(const IVec& c, int i) const {
    int s = 0;
    for (int j = 0; j < rank; ++j) s += c[j] * cartan[i][j];
    return s;
}

IVec RootSystem::labels(const IVec& c) const {
    IVec l(rank);
    for (int i = 0; i < rank; ++i) l[i] = pair_coroot(c, i);
    return l;
}

int RootSystem::root_length2(int root) const {
    const IVec& c = pos[root];
    int s = 0;
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) s += c[i] * c[j] * d[i] * cartan[i][j];
    return s / 2;
}

IVec RootSystem::coroot(int root) const {
    const int l = root_length2(root);
    IVec h(rank);
    for (int j = 0; j < rank; ++j) h[j] = pos[root][j] * d[j] / l;
    return h;
}

int RootSystem::weight_on_coroot(const IVec& lab, int root) const {
    IVec h = coroot(root);
    int s = 0;
    for (int j = 0; j < rank; ++j) s += h[j] * lab[j];
    return s;
}

bool RootSystem::is_long(int root) const {
    return root_length2(root) == *std::max_element(d.begin(), d.end());
}

bool RootSystem::is_simply_laced() const {
    return std::all_of(d.begin(), d.end(), [](int x) { return x == 1; });
}

std::vector<Rational> RootSystem::fundamental_weight(int i) const {
    // solve A c = e_i
    std::vector<std::vector<Rational>> m(rank, std::vector<Rational>(rank + 1));
    for (int r = 0; r < rank; ++r) {
        for (int c = 0; c < rank; ++c) m[r][c] = cartan[r][c];
        m[r][rank] = (r == i) ? 1 : 0;
    }
    for (int c = 0; c < rank; ++c) {
        int p = c;
        while (m[p][c] == 0) ++p;
        std::swap(m[p], m[c]);
        for (int r = 0; r < rank; ++r) {
            if (r == c || m[r][c] == 0) continue;
            Rational f = m[r][c] / m[c][c];
            for (int k = c; k <= rank; ++k) m[r][k] -= f * m[c][k];
        }
    }
    std::vector<Rational> out(rank);
    for (int r = 0; r < rank; ++r) out[r] = m[r][rank] / m[r][r];
    return out;
}

Integer RootSystem::weyl_dimension(const IVec& lab) const {
    Rational prod = 1;
    for (int a = 0; a < num_pos(); ++a) {
        IVec h = coroot(a);
        long num = 0, den = 0;
        for (int j = 0; j < rank; ++j) {
            num += static_cast<long>(h[j]) * (lab[j] + 1);
            den += h[j];
        }
        prod *= Rational(num, den);
    }
    prod.canonicalize();
    return Integer(prod.get_num());
}

IVec RootSystem::reflect(const IVec& lab, int i) const {
    IVec out = lab;
    for (int j = 0; j < rank; ++j) out[j] -= lab[i] * cartan[j][i];
    return out;
}

RootSystem build_root_system(char series, int rank) {
    if (!valid_type(series, rank))
        fail(ErrorCode::InvalidType, std::string("no finite type ") + series + std::to_string(rank));
    RootSystem rs;
    rs.series = series;
    rs.rank = rank;
    rs.cartan = cartan_matrix(series, rank);
    rs.d = symmetrizer(rs.cartan);

    std::set<IVec> found;
    std::vector<IVec> level;
    for (int i = 0; i < rank; ++i) {
        IVec e(rank, 0);
        e[i] = 1;
        level.push_back(e);
        found.insert(e);
    }
    std::vector<IVec> all = level;
    while (!level.empty()) {
        std::set<IVec> next;
        for (const IVec& b : level) {
            for (int i = 0; i < rank; ++i) {
                // p = length of the alpha_i-string below b
                int p = 0;
                IVec c = b;
                while (true) {
                    c[i] -= 1;
                    if (!found.count(c)) break;
                    ++p;
                }
                int q = p - rs.pair_coroot(b, i);
                if (q > 0) {
                    IVec up = b;
                    up[i] += 1;
                    if (!found.count(up)) next.insert(up);
                }
            }
        }
        level.assign(next.begin(), next.end());
        for (auto& v : level) {
            found.insert(v);
            all.push_back(v);
        }
    }
    std::sort(all.begin(), all.end(), [](const IVec& a, const IVec& b) {
        int ha = std::accumulate(a.begin(), a.end(), 0), hb = std::accumulate(b.begin(), b.end(), 0);
        if (ha != hb) return ha < hb;
        return a > b;
    });
    rs.pos = all;
    for (int k = 0; k < static_cast<int>(all.size()); ++k) rs.index[all[k]] = k;
    rs.theta = all.back();
    return rs;
}

RootSystem build_root_system(const std::string& name) {
    if (name.size() < 2 || !std::isalpha(static_cast<unsigned char>(name[0])))
        fail(ErrorCode::InvalidType, "bad type '" + name + "'");
    int n = 0;
    for (std::size_t i = 1; i < name.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) fail(ErrorCode::InvalidType, "bad type '" + name + "'");
        n = n * 10 + (name[i] - '0');
        if (n > 64) fail(ErrorCode::InvalidType, "rank too large");
    }
    return build_root_system(static_cast<char>(std::toupper(static_cast<unsigned char>(name[0]))), n);
}

int epsilon_sign(const RootSystem& rs, const IVec& a, const IVec& b) {
    long s = 0;
    for (int i = 0; i < rs.rank; ++i)
        for (int j = 0; j <= i; ++j) {
            if (i != j && rs.cartan[i][j] == 0) continue;
            s += static_cast<long>(a[i]) * b[j];
        }
    return (s % 2 == 0) ? 1 : -1;
}

IVec sigma_adapted_signs(const RootSystem& rs, const IVec& perm, IVec* fixed_eigen) {
    const int P = rs.num_pos();
    const int n = rs.rank;
    auto apply = [&](const IVec& c) {
        IVec out(n);
        for (int i = 0; i < n; ++i) out[perm[i]] = c[i];
        return out;
    };
    // sigma(E_alpha) = c_alpha E_{sigma alpha}
    IVec c(P, 1);
    for (int a = n; a < P; ++a) {
        const IVec& al = rs.pos[a];
        for (int i = 0; i < n; ++i) {
            IVec b = al;
            b[i] -= 1;
            int bi = rs.find(b);
            if (bi < 0) continue;
            IVec ei(n, 0);
            ei[i] = 1;
            c[a] = epsilon_sign(rs, ei, b) * epsilon_sign(rs, apply(ei), apply(b)) * c[bi];
            break;
        }
    }
    IVec s(P, 0), fe(P, 1);
    for (int a = 0; a < P; ++a) {
        if (s[a] != 0) continue;
        s[a] = 1;
        int cur = a;
        while (true) {
            int nxt = rs.find(apply(rs.pos[cur]));
            if (nxt == a) {
                // going once around the orbit must give the identity
                if (cur == a) fe[a] = c[a];
                else if (s[cur] * c[cur] != s[a]) fail(ErrorCode::Internal, "sign cocycle is not trivial on an orbit");
                break;
            }
            s[nxt] = s[cur] * c[cur];
            cur = nxt;
        }
    }
    if (fixed_eigen) *fixed_eigen = fe;
    return s;
}

std::vector<IVec> weyl_orbit(const RootSystem& rs, const IVec& lab) {
    std::set<IVec> seen{lab};
    std::deque<IVec> todo{lab};
    while (!todo.empty()) {
        IVec w = todo.front();
        todo.pop_front();
        for (int i = 0; i < rs.rank; ++i) {
            if (w[i] == 0) continue;
            IVec r = rs.reflect(w, i);
            if (seen.insert(r).second) todo.push_back(r);
        }
    }
    return {seen.begin(), seen.end()};
}

IVec dominant_conjugate(const RootSystem& rs, IVec lab) {
    bool moved = true;
    while (moved) {
        moved = false;
        for (int i = 0; i < rs.rank; ++i)
            if (lab[i] < 0) {
                lab = rs.reflect(lab, i);
                moved = true;
            }
    }
    return lab;
}

// ---------------------------------------------------------------------------

DiagramAutomorphism make_automorphism(const RootSystem& rs, const IVec& perm) {
    const int n = rs.rank;
    if (static_cast<int>(perm.size()) != n) fail(ErrorCode::NotAnAutomorphism, "permutation has wrong length");
    IVec seen(n, 0);
    for (int x : perm) {
        if (x < 0 || x >= n || seen[x]) fail(ErrorCode::NotAnAutomorphism, "not a permutation");
        seen[x] = 1;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (rs.cartan[perm[i]][perm[j]] != rs.cartan[i][j])
                fail(ErrorCode::NotAnAutomorphism, "permutation does not preserve the Cartan matrix");
    DiagramAutomorphism s;
    s.perm = perm;
    IVec cur = perm;
    s.order = 1;
    auto is_id = [&](const IVec& p) {
        for (int i = 0; i < n; ++i)
            if (p[i] != i) return false;
        return true;
    };
    while (!is_id(cur)) {
        IVec nxt(n);
        for (int i = 0; i < n; ++i) nxt[i] = perm[cur[i]];
        cur = nxt;
        ++s.order;
    }
    if (s.order > 3) fail(ErrorCode::NotAnAutomorphism, "order exceeds 3");
    return s;
}

DiagramAutomorphism parse_automorphism(const RootSystem& rs, const std::string& spec) {
    const int n = rs.rank;
    IVec perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    if (spec == "id") return make_automorphism(rs, perm);
    if (spec == "flip") {
        switch (rs.series) {
            case 'A':
                if (n < 2) fail(ErrorCode::NotAnAutomorphism, "A1 has no flip");
                for (int i = 0; i < n; ++i) perm[i] = n - 1 - i;
                break;
            case 'D': std::swap(perm[n - 2], perm[n - 1]); break;
            case 'E':
                if (n != 6) fail(ErrorCode::NotAnAutomorphism, "only E6 has a flip");
                std::swap(perm[0], perm[5]);
                std::swap(perm[2], perm[4]);
                break;
            default: fail(ErrorCode::NotAnAutomorphism, rs.name() + " has no flip");
        }
        return make_automorphism(rs, perm);
    }
    if (spec == "rot3") {
        if (rs.series != 'D' || n != 4) fail(ErrorCode::NotAnAutomorphism, "rot3 needs D4");
        perm = {2, 1, 3, 0};  // 1 -> 3 -> 4 -> 1
        return make_automorphism(rs, perm);
    }
    std::stringstream ss(spec);
    std::string tok;
    IVec p;
    while (std::getline(ss, tok, ',')) {
        try {
            p.push_back(std::stoi(tok) - 1);
        } catch (const std::exception&) {
            fail(ErrorCode::InvalidArgument, "bad automorphism spec '" + spec + "'");
        }
    }
    return make_automorphism(rs, p);
}

// ---------------------------------------------------------------------------

int FoldingDatum::sigma_root(int root, int j) const {
    j %= m;
    for (int k = 0; k < j; ++k) root = perm_root[root];
    return root;
}

bool FoldingDatum::grade_nonzero(int root, int eps) const {
    if (gamma[root] == m && m > 1) return true;
    if (m == 1) return eps == 0;
    return a2n ? eps == 1 : eps == 0;
}

int FoldingDatum::rep_of_folded(int mu, bool doubled) const {
    for (int a : O) {
        if (doubled ? restricted_half[a] == mu : restricted_root[a] == mu) return a;
    }
    fail(ErrorCode::InvalidArgument, "no representative for folded root");
}

IVec FoldingDatum::extend_weight(const IVec& lab0) const {
    IVec lab(base.rank, 0);
    for (int i = 0; i < folded.rank; ++i) lab[o_map[i]] = lab0[i];
    return lab;
}

IVec FoldingDatum::restrict_weight(const IVec& lab) const {
    IVec r(folded.rank, 0);
    for (int i = 0; i < folded.rank; ++i)
        for (int k : node_orbits[i]) r[i] += lab[k];
    return r;
}

bool FoldingDatum::a2n_short_node(int i) const {
    if (!a2n) return false;
    const IVec& orb = node_orbits[i];
    return orb.size() == 2 && base.cartan[orb[0]][orb[1]] != 0;
}

namespace {

RootSystem expected_folded(const RootSystem& rs, int m) {
    if (m == 1) return rs;
    const int n = rs.rank;
    if (rs.series == 'A' && m == 2) {
        if (n == 2) return build_root_system('A', 1);
        if (n % 2 == 0) return build_root_system('B', n / 2);
        return build_root_system('C', (n + 1) / 2);
    }
    if (rs.series == 'D' && m == 2) return build_root_system('B', n - 1);
    if (rs.series == 'D' && m == 3 && n == 4) return build_root_system('G', 2);
    if (rs.series == 'E' && n == 6 && m == 2) return build_root_system('F', 4);
    fail(ErrorCode::NotAnAutomorphism, "no folding for " + rs.name() + " of order " + std::to_string(m));
}

}  // namespace

FoldingDatum fold(const RootSystem& rs, const DiagramAutomorphism& sigma) {
    FoldingDatum fd;
    fd.base = rs;
    fd.sigma = make_automorphism(rs, sigma.perm);
    fd.m = fd.sigma.order;
    const int m = fd.m;
    fd.a2n = (rs.series == 'A' && rs.rank % 2 == 0 && m == 2);
    const int P = rs.num_pos();

    // sigma on roots
    fd.perm_root.resize(P);
    for (int a = 0; a < P; ++a) {
        IVec c(rs.rank);
        for (int i = 0; i < rs.rank; ++i) c[fd.sigma.perm[i]] = rs.pos[a][i];
        fd.perm_root[a] = rs.find(c);
    }
    fd.gamma.resize(P);
    for (int a = 0; a < P; ++a) fd.gamma[a] = (fd.perm_root[a] == a) ? 1 : m;

    // node orbits, each listed from its least element along sigma
    std::vector<IVec> orbits;
    std::vector<bool> seen(rs.rank, false);
    for (int i = 0; i < rs.rank; ++i) {
        if (seen[i]) continue;
        IVec orb;
        for (int k = i; !seen[k]; k = fd.sigma.perm[k]) {
            seen[k] = true;
            orb.push_back(k);
        }
        orbits.push_back(orb);
    }
    const int n0 = static_cast<int>(orbits.size());
    auto special = [&](const IVec& orb) { return orb.size() == 2 && rs.cartan[orb[0]][orb[1]] != 0; };
    // M[I][J] = alpha_{min J}(coroot of orbit I)
    std::vector<IVec> M(n0, IVec(n0, 0));
    for (int I = 0; I < n0; ++I)
        for (int J = 0; J < n0; ++J) {
            int s = 0;
            for (int k : orbits[I]) s += rs.cartan[k][orbits[J][0]];
            M[I][J] = special(orbits[I]) ? 2 * s : s;
        }
    fd.folded = expected_folded(rs, m);
    if (fd.folded.rank != n0) fail(ErrorCode::Internal, "folded rank mismatch");
    IVec ord(n0);
    std::iota(ord.begin(), ord.end(), 0);
    bool matched = false;
    do {
        bool ok = true;
        for (int i = 0; i < n0 && ok; ++i)
            for (int j = 0; j < n0 && ok; ++j)
                if (M[ord[i]][ord[j]] != fd.folded.cartan[i][j]) ok = false;
        if (ok) {
            matched = true;
            break;
        }
    } while (std::next_permutation(ord.begin(), ord.end()));
    if (!matched) fail(ErrorCode::Internal, "folded Cartan matrix does not match " + fd.folded.name());
    for (int i = 0; i < n0; ++i) {
        fd.node_orbits.push_back(orbits[ord[i]]);
        fd.o_map.push_back(orbits[ord[i]][0]);
    }

    // restriction
    fd.restriction.resize(P);
    fd.restricted_root.assign(P, -1);
    fd.restricted_half.assign(P, -1);
    for (int a = 0; a < P; ++a) {
        IVec c(n0, 0);
        for (int i = 0; i < n0; ++i)
            for (int k : fd.node_orbits[i]) c[i] += rs.pos[a][k];
        fd.restriction[a] = c;
        int idx = fd.folded.find(c);
        if (idx >= 0) {
            fd.restricted_root[a] = idx;
            continue;
        }
        IVec half(n0);
        bool even = true;
        for (int i = 0; i < n0; ++i) {
            if (c[i] % 2) even = false;
            half[i] = c[i] / 2;
        }
        int h = even ? fd.folded.find(half) : -1;
        if (!fd.a2n || h < 0) fail(ErrorCode::Internal, "restriction is not a folded root");
        fd.restricted_half[a] = h;
    }

    // short roots of g_0
    const int P0 = fd.folded.num_pos();
    fd.folded_short.assign(P0, false);
    for (int mu = 0; mu < P0; ++mu) fd.folded_short[mu] = !fd.folded.is_long(mu);
    if (fd.a2n)
        for (int a = 0; a < P; ++a)
            if (fd.restricted_half[a] >= 0) fd.folded_short[fd.restricted_half[a]] = true;

    // orbit representatives
    if (rs.is_simply_laced()) {
        IVec fe;
        fd.basis_signs = sigma_adapted_signs(rs, fd.sigma.perm, &fe);
        for (int a = 0; a < P; ++a)
            if (fd.gamma[a] == 1 && fe[a] != (fd.a2n ? -1 : 1))
                fail(ErrorCode::Internal, "sigma acts on a fixed root vector with the wrong sign");
    } else {
        fd.basis_signs.assign(P, 1);
    }
    fd.rep.assign(P, -1);
    auto orbit_of = [&](int a) {
        IVec orb{a};
        for (int b = fd.perm_root[a]; b != a; b = fd.perm_root[b]) orb.push_back(b);
        return orb;
    };
    std::vector<int> reps;
    if (m == 3) {
        int j = -1, i = -1;
        for (int k = 0; k < rs.rank; ++k) {
            if (fd.sigma.perm[k] == k) j = k;
            else if (i < 0) i = k;
        }
        auto e = [&](int k) {
            IVec c(rs.rank, 0);
            c[k] = 1;
            return c;
        };
        IVec c1 = e(i), c2 = e(j), c3 = e(j);
        c2[i] += 1;
        c3[fd.sigma.perm[i]] += 1;
        c3[fd.sigma.perm[fd.sigma.perm[i]]] += 1;
        for (int a = 0; a < P; ++a)
            if (fd.gamma[a] == 1) reps.push_back(a);
        reps.push_back(rs.find(c1));
        reps.push_back(rs.find(c2));
        reps.push_back(rs.find(c3));
    } else {
        for (int a = 0; a < P; ++a) {
            IVec orb = orbit_of(a);
            if (*std::min_element(orb.begin(), orb.end()) != a) continue;
            int r = a;
            if (fd.a2n && orb.size() == 2) {
                IVec sum(rs.rank);
                for (int k = 0; k < rs.rank; ++k) sum[k] = rs.pos[a][k] + rs.pos[orb[1]][k];
                int t = rs.find(sum);
                if (t >= 0) {
                    int n = fd.basis_signs[a] * fd.basis_signs[orb[1]] * fd.basis_signs[t] *
                            epsilon_sign(rs, rs.pos[a], rs.pos[orb[1]]);
                    if (n != 1) r = orb[1];
                }
            }
            reps.push_back(r);
        }
    }
    for (int r : reps) {
        if (r < 0) fail(ErrorCode::Internal, "bad orbit representative");
        for (int b : orbit_of(r)) {
            if (fd.rep[b] >= 0) fail(ErrorCode::Internal, "orbit covered twice");
            fd.rep[b] = r;
        }
    }
    for (int a = 0; a < P; ++a)
        if (fd.rep[a] < 0) fail(ErrorCode::Internal, "orbit without representative");
    std::sort(reps.begin(), reps.end());
    fd.O = reps;

    // wt(g_eps) positive part
    fd.eps_weights.assign(m, {});
    for (int eps = 0; eps < m; ++eps) {
        std::set<IVec> w;
        for (int a : fd.O)
            if (fd.grade_nonzero(a, eps)) w.insert(fd.restriction[a]);
        fd.eps_weights[eps].assign(w.begin(), w.end());
    }

    // classify wt(g_1)\{0} against the candidate patterns
    if (m == 1) {
        fd.g1_pattern = "none";
    } else {
        std::set<IVec> g1(fd.eps_weights[1].begin(), fd.eps_weights[1].end());
        std::set<IVec> rs_set, r0_set, r0_2rs;
        for (int mu = 0; mu < P0; ++mu) {
            r0_set.insert(fd.folded.pos[mu]);
            if (fd.folded_short[mu]) {
                rs_set.insert(fd.folded.pos[mu]);
                IVec dbl = fd.folded.pos[mu];
                for (int& x : dbl) x *= 2;
                r0_2rs.insert(dbl);
            }
        }
        for (auto& v : r0_set) r0_2rs.insert(v);
        if (g1 == rs_set) fd.g1_pattern = "+-R_s";
        else if (g1 == r0_2rs) fd.g1_pattern = "+-R_0 u +-2R_s";
        else if (g1 == r0_set) fd.g1_pattern = "+-R_0";
        else fd.g1_pattern = "other";
    }
    return fd;
}

int orbit_size(const FoldingDatum& fd, int root) {
    if (root < 0 || root >= fd.base.num_pos()) fail(ErrorCode::InvalidArgument, "root index out of range");
    return fd.gamma[root];
}

}  // namespace hyperloop
