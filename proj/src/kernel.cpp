#include "qfix/kernel.hpp"

#include <deque>
#include <map>
#include <sstream>
#include <tuple>

#include "qfix/desub.hpp"
#include "qfix/error.hpp"

namespace qfix {

namespace {

std::size_t need_constant(const Substitution& phi) {
    const auto k = phi.constant_length();
    if (!k) throw Error("column maps need a constant-length substitution");
    return *k;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

ColumnFamily step_family(const std::vector<LetterMap>& psi, const ColumnFamily& p) {
    ColumnFamily out;
    for (const auto& f : p)
        for (const auto& g : psi) out.insert(compose_maps(g, f));
    return out;
}

}  // namespace

std::vector<LetterMap> column_letter_maps(const Substitution& phi) {
    const std::size_t k = need_constant(phi);
    std::vector<LetterMap> out(k, LetterMap(phi.size()));
    for (Letter a = 0; a < phi.size(); ++a)
        for (std::size_t i = 0; i < k; ++i) out[i][a] = phi.image(a)[i];
    return out;
}

ColumnFamily column_maps(const Substitution& phi, unsigned m) {
    const auto psi = column_letter_maps(phi);
    ColumnFamily p{identity_map(phi.size())};
    for (unsigned i = 0; i < m; ++i) p = step_family(psi, p);
    return p;
}

ColumnFamily first_column_family(const Substitution& psi) {
    const auto maps = column_letter_maps(psi);
    return ColumnFamily(maps.begin(), maps.end());
}

unsigned column_constant_power(const Substitution& phi) {
    const auto psi = column_letter_maps(phi);
    std::vector<ColumnFamily> fam{ColumnFamily{identity_map(phi.size())}};  // fam[m] = F_{phi,m}
    for (unsigned n = 1; n < 100000; ++n) {
        while (fam.size() <= 2 * n) fam.push_back(step_family(psi, fam.back()));
        if (fam[2 * n] == fam[n]) return n;
    }
    throw InvariantError("column family sequence did not become periodic");
}

bool is_column_constant(const Substitution& phi) {
    return first_column_family(phi) == first_column_family(power(phi, 2));
}

KernelAutomaton build_kernel_automaton(const Substitution& phi, const Qfp& q, const Coding* tau) {
    const std::size_t k = need_constant(phi);
    if (tau && !(tau->source() == phi.alphabet())) throw Error("coding source does not match the substitution");
    ChainView view(phi, q);
    const DesubChain& ch = view.chain();
    const auto psi = column_letter_maps(phi);

    using Key = std::tuple<LetterMap, std::size_t, unsigned>;
    std::map<Key, std::size_t> id;
    std::vector<Key> keys;
    KernelAutomaton a;
    a.base = static_cast<unsigned>(k);
    a.output = tau ? tau->target() : phi.alphabet();
    auto intern = [&](Key key) {
        auto [it, fresh] = id.emplace(key, keys.size());
        if (fresh) keys.push_back(std::move(key));
        return it->second;
    };
    intern({identity_map(phi.size()), 0, 0});
    for (std::size_t s = 0; s < keys.size(); ++s) {
        const auto [f, j, carry] = keys[s];
        std::array<Letter, 2> o{f[view.letter(j, static_cast<std::int64_t>(carry) - 1)],
                                f[view.letter(j, static_cast<std::int64_t>(carry))]};
        if (tau) o = {(*tau)(o[0]), (*tau)(o[1])};
        a.obs.push_back(o);
        std::vector<std::size_t> succ(k);
        for (std::size_t d = 0; d < k; ++d) {
            // u_{kn+d} = f(z^j_{kn+d+s}) = f(Psi_{e mod k}(z^{j+1}_{n + e div k})), e = d+s+c_j.
            const std::size_t e = d + carry + ch.digits[j];
            succ[d] = intern({compose_maps(f, psi[e % k]), ch.next(j), static_cast<unsigned>(e / k)});
        }
        a.next.push_back(std::move(succ));
    }
    a.raw_states = a.obs.size();
    return a;
}

KernelAutomaton minimize(const KernelAutomaton& a) {
    const std::size_t n = a.size();
    std::vector<std::size_t> cls(n);
    {
        std::map<std::array<Letter, 2>, std::size_t> ids;
        for (std::size_t s = 0; s < n; ++s) cls[s] = ids.emplace(a.obs[s], ids.size()).first->second;
    }
    std::size_t count = 0;
    for (;;) {
        std::map<std::vector<std::size_t>, std::size_t> ids;
        std::vector<std::size_t> next_cls(n);
        for (std::size_t s = 0; s < n; ++s) {
            std::vector<std::size_t> sig{cls[s]};
            for (std::size_t t : a.next[s]) sig.push_back(cls[t]);
            next_cls[s] = ids.emplace(std::move(sig), ids.size()).first->second;
        }
        const std::size_t c = ids.size();
        cls = std::move(next_cls);
        if (c == count) break;
        count = c;
    }
    // Renumber classes breadth-first from the root.
    std::map<std::size_t, std::size_t> order;
    std::vector<std::size_t> rep;
    std::deque<std::size_t> work{a.root};
    order[cls[a.root]] = 0;
    rep.push_back(a.root);
    while (!work.empty()) {
        const std::size_t s = work.front();
        work.pop_front();
        for (std::size_t t : a.next[s])
            if (order.emplace(cls[t], rep.size()).second) {
                rep.push_back(t);
                work.push_back(t);
            }
    }
    KernelAutomaton out;
    out.base = a.base;
    out.output = a.output;
    out.raw_states = a.raw_states;
    for (std::size_t s : rep) {
        out.obs.push_back(a.obs[s]);
        std::vector<std::size_t> succ;
        for (std::size_t t : a.next[s]) succ.push_back(order.at(cls[t]));
        out.next.push_back(std::move(succ));
    }
    return out;
}

std::size_t kernel_size(const KernelAutomaton& a) { return minimize(a).size(); }

Letter eval(const KernelAutomaton& a, std::int64_t n) {
    const auto k = static_cast<std::int64_t>(a.base);
    std::size_t s = a.root;
    while (n != 0 && n != -1) {
        const std::int64_t q = floor_div(n, k);
        s = a.next[s][static_cast<std::size_t>(n - q * k)];
        n = q;
    }
    return a.obs[s][n == 0 ? 1 : 0];
}

Window eval_window(const KernelAutomaton& a, std::int64_t lo, std::int64_t hi) {
    Window w{lo, {}};
    for (std::int64_t n = lo; n <= hi; ++n) w.letters.push_back(eval(a, n));
    return w;
}

bool equal_sequences(const KernelAutomaton& a, const KernelAutomaton& b) {
    if (a.base != b.base) throw Error("automata read digits in different bases");
    std::set<std::pair<std::size_t, std::size_t>> seen{{a.root, b.root}};
    std::deque<std::pair<std::size_t, std::size_t>> work{{a.root, b.root}};
    while (!work.empty()) {
        const auto [s, t] = work.front();
        work.pop_front();
        for (int i = 0; i < 2; ++i)
            if (a.output.token(a.obs[s][i]) != b.output.token(b.obs[t][i])) return false;
        for (std::size_t d = 0; d < a.base; ++d) {
            std::pair<std::size_t, std::size_t> p{a.next[s][d], b.next[t][d]};
            if (seen.insert(p).second) work.push_back(p);
        }
    }
    return true;
}

std::size_t reachable_within(const KernelAutomaton& a, unsigned depth) {
    std::set<std::size_t> seen{a.root};
    std::vector<std::size_t> frontier{a.root};
    for (unsigned i = 0; i < depth; ++i) {
        std::vector<std::size_t> next;
        for (std::size_t s : frontier)
            for (std::size_t t : a.next[s])
                if (seen.insert(t).second) next.push_back(t);
        frontier = std::move(next);
    }
    return seen.size();
}

KernelAutomaton one_sided_view(const KernelAutomaton& a, bool negative_side) {
    KernelAutomaton v = a;
    for (std::size_t s = 0; s < a.size(); ++s) {
        const Letter x = negative_side ? a.obs[s][0] : a.obs[s][1];
        v.obs[s] = {x, x};
        // -1 - n = k(-1 - q) + (k - 1 - d) when n = kq + d.
        if (negative_side)
            for (std::size_t d = 0; d < a.base; ++d) v.next[s][d] = a.next[s][a.base - 1 - d];
    }
    return minimize(v);
}

std::string export_text(const KernelAutomaton& a) {
    std::ostringstream out;
    out << "k=" << a.base << " root=" << a.root << '\n';
    out << "output";
    for (const auto& t : a.output.tokens()) out << ' ' << t;
    out << '\n';
    for (std::size_t s = 0; s < a.size(); ++s)
        out << "state " << s << " obs=" << a.output.token(a.obs[s][0]) << ',' << a.output.token(a.obs[s][1]) << '\n';
    for (std::size_t s = 0; s < a.size(); ++s)
        for (std::size_t d = 0; d < a.base; ++d) out << "edge " << s << ' ' << d << ' ' << a.next[s][d] << '\n';
    return out.str();
}

std::string export_dot(const KernelAutomaton& a) {
    std::ostringstream out;
    out << "digraph dfao {\n  rankdir=LR;\n  start [shape=point];\n  start -> s" << a.root << ";\n";
    for (std::size_t s = 0; s < a.size(); ++s)
        out << "  s" << s << " [shape=box, label=\"" << s << ": " << a.output.token(a.obs[s][0]) << ','
            << a.output.token(a.obs[s][1]) << "\"];\n";
    for (std::size_t s = 0; s < a.size(); ++s)
        for (std::size_t d = 0; d < a.base; ++d)
            out << "  s" << s << " -> s" << a.next[s][d] << " [label=\"" << d << "\"];\n";
    out << "}\n";
    return out.str();
}

KernelAutomaton import_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    KernelAutomaton a;
    bool header = false;
    std::vector<std::string> tokens;
    std::map<std::string, Letter> tindex;
    auto token_id = [&](const std::string& t) {
        auto [it, fresh] = tindex.emplace(t, static_cast<Letter>(tokens.size()));
        if (fresh) tokens.push_back(t);
        return it->second;
    };
    std::vector<std::vector<std::optional<std::size_t>>> edges;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        if (head.rfind("k=", 0) == 0) {
            std::string root;
            ls >> root;
            if (root.rfind("root=", 0) != 0) throw ParseError(line_no, "expected root=<id>");
            try {
                a.base = static_cast<unsigned>(std::stoul(head.substr(2)));
                a.root = std::stoul(root.substr(5));
            } catch (const std::exception&) {
                throw ParseError(line_no, "bad header");
            }
            if (a.base < 2) throw ParseError(line_no, "base must be at least 2");
            header = true;
        } else if (head == "output") {
            if (!a.obs.empty()) throw ParseError(line_no, "output must precede the states");
            for (std::string t; ls >> t;) token_id(t);
        } else if (head == "state") {
            std::size_t id;
            std::string obs;
            if (!(ls >> id >> obs) || obs.rfind("obs=", 0) != 0) throw ParseError(line_no, "expected state <id> obs=<a>,<b>");
            const auto comma = obs.find(',', 4);
            if (comma == std::string::npos) throw ParseError(line_no, "observation needs two letters");
            if (id != a.obs.size()) throw ParseError(line_no, "states must be listed in order");
            a.obs.push_back({token_id(obs.substr(4, comma - 4)), token_id(obs.substr(comma + 1))});
        } else if (head == "edge") {
            std::size_t s, d, t;
            if (!(ls >> s >> d >> t)) throw ParseError(line_no, "expected edge <from> <digit> <to>");
            if (!header) throw ParseError(line_no, "edge before header");
            if (s >= a.obs.size() || d >= a.base) throw ParseError(line_no, "edge out of range");
            edges.resize(a.obs.size(), std::vector<std::optional<std::size_t>>(a.base));
            edges[s][d] = t;
        } else {
            throw ParseError(line_no, "unknown line '" + head + "'");
        }
    }
    if (!header) throw ParseError(line_no, "missing header");
    if (a.obs.empty() || a.root >= a.obs.size()) throw ParseError(line_no, "root state missing");
    edges.resize(a.obs.size(), std::vector<std::optional<std::size_t>>(a.base));
    for (std::size_t s = 0; s < a.obs.size(); ++s) {
        std::vector<std::size_t> succ;
        for (std::size_t d = 0; d < a.base; ++d) {
            if (!edges[s][d] || *edges[s][d] >= a.obs.size())
                throw ParseError(line_no, "state " + std::to_string(s) + " lacks a valid edge on digit " + std::to_string(d));
            succ.push_back(*edges[s][d]);
        }
        a.next.push_back(std::move(succ));
    }
    a.output = Alphabet(tokens);
    a.raw_states = a.obs.size();
    return a;
}

Comparison compare(const Substitution& phi, const Qfp& p, const Qfp& q, std::int64_t radius) {
    if (phi.constant_length())
        return {equal_sequences(build_kernel_automaton(phi, p), build_kernel_automaton(phi, q)), true};
    return {materialize(phi, p, -radius, radius) == materialize(phi, q, -radius, radius), false};
}

}  // namespace qfix
