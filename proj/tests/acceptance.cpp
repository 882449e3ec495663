// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.
//
//   acceptance --data DIR --golden DIR [--update]
//
// --update rewrites the golden transcripts from the current build.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "repgeo/class_operators.hpp"
#include "repgeo/cli/commands.hpp"
#include "support.hpp"

using namespace repgeo;
using namespace testing;

namespace {

// Sample sizes and bounds. Every comparison below is exact: zero tolerance.
constexpr int kFoxWords = 200;
constexpr int kTaylorWords = 200;
constexpr int kGaloisInstances = 50;
constexpr std::size_t kGaloisProbeLength = 3;
constexpr int kQuasiIdentities = 200;
constexpr int kGroupConstraintInstances = 50;
constexpr int kNonFaithfulReps = 10;
constexpr std::size_t kRefuterLength = 3;
constexpr std::size_t kRefuterPremises = 2;
constexpr std::uint64_t kExhaustiveBudget = 10'000'000;
constexpr std::size_t kChainLength = 6;
constexpr int kFilters = 20;
constexpr std::size_t kMaxFilterIndices = 4;

struct Outcome {
    bool pass = true;
    std::string detail;
    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

std::filesystem::path data_dir, golden_dir;
bool update_goldens = false;

// Fox fundamental identity u - eps(u) = sum_i d_i(u) (y_i - 1).
Outcome fox_identity() {
    Outcome o;
    Rng rng(1001);
    int checked = 0;
    for (Field f : {Field::prime(5), Field::rationals()}) {
        for (int t = 0; t < kFoxWords; ++t) {
            int m = uniform(rng, 1, 3);
            auto u = GroupRingElement::word(f, Word(random_letters(rng, m, 10)));
            // a random element built from several such words, to cover nonunit coefficients
            auto v = random_element(rng, f, m, 4, 10);
            for (const auto& e : {u, v}) {
                auto rhs = GroupRingElement::zero(f);
                for (int i = 1; i <= m; ++i) rhs += fox_derivative(i, e) * GroupRingElement::augmentation_generator(f, i);
                o.require(e - GroupRingElement::constant(augment(e)) == rhs, "identity fails on " + e.to_string());
                ++checked;
            }
        }
    }
    o.detail = o.pass ? std::to_string(checked) + " elements over F5 and Q" : o.detail;
    return o;
}

Outcome taylor_reconstruction() {
    Outcome o;
    Rng rng(1002);
    int checked = 0;
    for (int t = 0; t < kTaylorWords; ++t) {
        Field f = t % 2 ? Field::rationals() : Field::prime(5);
        int m = uniform(rng, 1, 3);
        auto u = GroupRingElement::word(f, Word(random_letters(rng, m, 10)));
        for (int k = 1; k <= 4; ++k) {
            o.require(taylor_expand(u, k, m).reconstruct() == u, "k=" + std::to_string(k) + " on " + u.to_string());
            ++checked;
        }
    }
    o.detail = o.pass ? std::to_string(checked) + " expansions, k = 1..4" : o.detail;
    return o;
}

// All sequences over {1..m} of exactly the given length.
std::vector<std::vector<int>> sequences(int m, int length) {
    std::vector<std::vector<int>> out{{}};
    for (int i = 0; i < length; ++i) {
        std::vector<std::vector<int>> next;
        for (const auto& s : out)
            for (int g = 1; g <= m; ++g) {
                auto t = s;
                t.push_back(g);
                next.push_back(t);
            }
        out = std::move(next);
    }
    return out;
}

Outcome truncated_dimension() {
    Outcome o;
    const Field Q = Field::rationals();
    Rng rng(1003);
    for (int m = 1; m <= 3; ++m) {
        for (int n = 1; n <= 4; ++n) {
            std::size_t expected = 0, power = 1;
            for (int k = 0; k < n; ++k, power *= static_cast<std::size_t>(m)) expected += power;
            auto tag = "m=" + std::to_string(m) + " n=" + std::to_string(n);
            o.require(TruncatedElement::dimension(m, n) == expected, tag + ": dimension");
            // surjective: each basis index is hit by its augmentation monomial
            std::size_t hit = 0;
            for (int len = 0; len < n; ++len)
                for (const auto& s : sequences(m, len)) {
                    auto t = truncate(augmentation_monomial(Q, s), n, m);
                    o.require(t == TruncatedElement::basis_vector(Q, m, n, s), tag + ": basis vector");
                    ++hit;
                }
            o.require(hit == expected, tag + ": basis count");
            // kernel: every length-n product, also between random multipliers
            for (const auto& s : sequences(m, n)) {
                o.require(truncate(augmentation_monomial(Q, s), n, m).is_zero(), tag + ": length-n product survives");
                auto wrapped = random_element(rng, Q, m, 2, 3) * augmentation_monomial(Q, s) * random_element(rng, Q, m, 2, 3);
                o.require(truncate(wrapped, n, m).is_zero(), tag + ": multiple of a length-n product survives");
            }
        }
    }
    if (o.pass) o.detail = "m <= 3, n <= 4";
    return o;
}

FiniteRepresentation small_rep(Rng& rng) {
    std::uint32_t p = uniform(rng, 0, 1) ? 2 : 3;
    auto d = static_cast<std::size_t>(uniform(rng, 1, 2));
    return random_rep(rng, p, d, 8);
}

Arity small_arity(Rng& rng) {
    return {static_cast<std::size_t>(uniform(rng, 1, 2)), static_cast<std::size_t>(uniform(rng, 1, 2))};
}

std::vector<FreeModuleElement> random_equations(Rng& rng, Field f, Arity a, int count) {
    std::vector<FreeModuleElement> out;
    for (int i = 0; i < count; ++i)
        out.push_back(random_module_element(rng, f, static_cast<int>(a.nx), static_cast<int>(a.ny), 3, 3));
    return out;
}

std::vector<FreeModuleElement> selected(const std::vector<FreeModuleElement>& probes, const std::vector<bool>& sig) {
    std::vector<FreeModuleElement> out;
    for (std::size_t i = 0; i < probes.size(); ++i)
        if (sig[i]) out.push_back(probes[i]);
    return out;
}

bool signature_subset(const std::vector<bool>& a, const std::vector<bool>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] && !b[i]) return false;
    return true;
}

Outcome galois_laws() {
    Outcome o;
    Rng rng(1004);
    for (int t = 0; t < kGaloisInstances && o.pass; ++t) {
        auto rep = small_rep(rng);
        auto arity = small_arity(rng);
        auto t2 = random_equations(rng, rep.field(), arity, uniform(rng, 1, 3));
        std::vector<FreeModuleElement> t1(t2.begin(), t2.begin() + uniform(rng, 0, static_cast<int>(t2.size())));
        EquationSet s1{arity, t1, {}}, s2{arity, t2, {}};
        AffineSpace space(rep, arity, 1'000'000);
        auto tag = "instance " + std::to_string(t) + ": ";
        // antitone on both sides
        auto v1 = solution_set(space, s1), v2 = solution_set(space, s2);
        o.require(v2.is_subset_of(v1), tag + "T1 in T2 but V(T2) not in V(T1)");
        auto sig1 = closed_submodule_signature(rep, s1, kGaloisProbeLength);
        auto sig2 = closed_submodule_signature(rep, s2, kGaloisProbeLength);
        o.require(signature_subset(sig1, sig2), tag + "V(T2) in V(T1) but closed probes of T1 not in those of T2");
        // extensive
        for (const auto& w : t2) o.require(closure_member(rep, s2, w), tag + "T not inside its closure");
        // V(T) = V(T'') with T'' sampled through the closed probes
        auto probes = probe_elements(rep.field(), arity, kGaloisProbeLength);
        auto closed = selected(probes, sig2);
        EquationSet grown{arity, t2, {}};
        grown.action.insert(grown.action.end(), closed.begin(), closed.end());
        o.require(solution_set(space, grown) == v2, tag + "V(T) differs from V(T'')");
        o.require(solution_set(space, EquationSet{arity, closed, {}}).count() >= v2.count(), tag + "closed probes cut V(T)");
    }
    if (o.pass) o.detail = std::to_string(kGaloisInstances) + " instances, probes at L = 3";
    return o;
}

Outcome quasi_identity_oracle() {
    Outcome o;
    Rng rng(1005);
    int group_cases = 0;
    for (int t = 0; t < kQuasiIdentities; ++t) {
        auto rep = small_rep(rng);
        Arity arity{1, static_cast<std::size_t>(uniform(rng, 1, 2))};
        QuasiIdentity q;
        q.arity = arity;
        q.premises = random_equations(rng, rep.field(), arity, uniform(rng, 0, 2));
        if (uniform(rng, 0, 3) == 0) q.group_premises.push_back(Word(random_letters(rng, static_cast<int>(arity.ny), 3)));
        EquationSet premises{arity, q.premises, q.group_premises};
        bool closure;
        if (uniform(rng, 0, 4) == 0) {
            q.group_conclusion = Word(random_letters(rng, static_cast<int>(arity.ny), 3));
            closure = group_closure_member(rep, premises, *q.group_conclusion);
            ++group_cases;
        } else {
            q.conclusion = random_equations(rng, rep.field(), arity, 1)[0];
            closure = closure_member(rep, premises, *q.conclusion);
        }
        o.require(check_quasi_identity(rep, q).holds == closure, "disagreement on instance " + std::to_string(t));
    }
    if (o.pass)
        o.detail = std::to_string(kQuasiIdentities) + " quasi-identities (" + std::to_string(group_cases) +
                   " with group conclusions), 100% agreement";
    return o;
}

Outcome group_identity_constraints() {
    Outcome o;
    Rng rng(1006);
    for (int t = 0; t < kGroupConstraintInstances; ++t) {
        auto rep = small_rep(rng);
        Arity arity{1, static_cast<std::size_t>(uniform(rng, 1, 2))};
        EquationSet ts{arity, random_equations(rng, rep.field(), arity, uniform(rng, 0, 2)), {}};
        o.require(group_identity_constraints_agree(rep, ts), "instance " + std::to_string(t));
    }
    if (o.pass) o.detail = std::to_string(kGroupConstraintInstances) + " instances";
    return o;
}

// Action of r in KG as the matrix sum_g r_g rho(g).
ModMatrix action_of(const FiniteRepresentation& rep, const ModVector& r) {
    ModMatrix m(rep.action_dim(), rep.action_dim(), rep.p());
    for (std::size_t g = 0; g < r.size(); ++g)
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                m(i, j) = static_cast<std::uint32_t>((m(i, j) + std::uint64_t{r[g]} * rep.action_matrix(g)(i, j)) % rep.p());
    return m;
}

Outcome group_algebra_ideals() {
    Outcome o;
    int ideals = 0;
    for (std::uint32_t p : {2u, 3u}) {
        for (std::size_t n : {2u, 3u}) {
            auto group = cyclic_regular(p, n);
            GroupAlgebra alg(group);
            auto tag = "KC" + std::to_string(n) + " over F" + std::to_string(p) + ": ";
            std::vector<ModMatrix> right, two_sided;
            for (const auto& s : all_subspaces(p, n)) {
                if (!is_right_ideal(alg, s)) continue;
                right.push_back(s);
                if (is_two_sided(alg, RightIdealBasis{s})) two_sided.push_back(s);
            }
            auto elements = all_vectors(p, n);
            for (const auto& u_basis : right) {
                RightIdealBasis u{u_basis};
                auto quotient = quotient_module_representation(alg, u);
                auto module = all_vectors(p, quotient.action_dim());
                auto ann = annihilator(quotient, module);
                o.require(subspace_contains(u.basis, ann.basis), tag + "ann(KG/U) not inside U");
                o.require(is_two_sided(alg, ann), tag + "ann(KG/U) not two-sided");
                for (const auto& j : two_sided)
                    if (subspace_contains(u.basis, j)) o.require(subspace_contains(ann.basis, j), tag + "ann(KG/U) not maximal");
                auto kernel = kernel_via_ideal(alg, ann);
                o.require(kernel == action_kernel(quotient), tag + "kernel via ideal differs from the action kernel");
                // stab S = 1 + ann S against a direct check that r fixes every s in S
                std::vector<std::vector<ModVector>> subsets{module, {}};
                if (module.size() > 1) subsets.push_back({module[1]});
                for (const auto& subset : subsets) {
                    auto stab = stabilizer(quotient, subset);
                    for (const auto& r : elements) {
                        auto m = action_of(quotient, r);
                        bool fixes = true;
                        for (const auto& s : subset) fixes = fixes && multiply(s, m) == s;
                        o.require(stab.contains(alg, r) == fixes, tag + "stabilizer membership disagrees");
                    }
                }
                ++ideals;
            }
        }
    }
    if (o.pass) o.detail = std::to_string(ideals) + " right ideals of KC2, KC3 over F2, F3";
    return o;
}

RefuteOptions refuter_bounds() {
    RefuteOptions opts;
    opts.arity = {1, 1};
    opts.max_len = kRefuterLength;
    opts.max_premises = kRefuterPremises;
    opts.candidate_budget = kExhaustiveBudget;
    return opts;
}

Outcome faithful_image_equivalence() {
    Outcome o;
    Rng rng(1008);
    int found = 0;
    std::uint64_t candidates = 0;
    while (found < kNonFaithfulReps) {
        auto rep = random_rep(rng, uniform(rng, 0, 1) ? 2 : 3, static_cast<std::size_t>(uniform(rng, 1, 2)), 8);
        if (action_kernel(rep).size() == 1) continue;
        auto image = faithful_image(rep);
        auto r = refute_equivalence(rep, image, refuter_bounds());
        o.require(!r.sampled, "search was sampled, not exhaustive");
        o.require(!r.witness, "witness found against the faithful image: " + (r.witness ? r.witness->conclusion.to_string() : ""));
        candidates += r.candidates_total;
        ++found;
    }
    if (o.pass)
        o.detail = std::to_string(kNonFaithfulReps) + " non-faithful reps, " + std::to_string(candidates) +
                   " candidates, no witness";
    return o;
}

Outcome group_equation_separation() {
    Outcome o;
    auto c2 = trivial_action_c2();
    auto one = trivial_group();
    auto r = refute_equivalence(c2, one, refuter_bounds());
    o.require(!r.sampled, "search was sampled");
    o.require(!r.witness, "action-type refuter separated them");
    EquationSet none{{1, 1}, {}, {}};
    bool in_trivial = group_closure_member(one, none, Word{1});
    bool in_c2 = group_closure_member(c2, none, Word{1});
    o.require(in_trivial && !in_c2, "group closure does not separate them");
    if (o.pass)
        o.detail = "action refuter: no witness (" + std::to_string(r.candidates_total) +
                   " candidates); y1 = 1 closed over trivial group: " + (in_trivial ? "yes" : "no") +
                   ", over C2: " + (in_c2 ? "yes" : "no");
    return o;
}

Outcome chain_stabilization() {
    Outcome o;
    const Field F3 = Field::prime(3);
    // C4 acting on F3^2 by a quarter turn
    ModMatrix quarter(3, {{0, 2}, {1, 0}});
    auto rep = FiniteRepresentation::generate(3, 2, 2, {{quarter, quarter}});
    auto y = GroupRingElement::word(F3, Word{1});
    auto one = GroupRingElement::one(F3);
    auto x = [](const GroupRingElement& u) { return FreeModuleElement::basis(1, u); };
    // V(T) shrinks: all of V x G, then x = 0 off {1, -1}, then x = 0 off {1}, then x = 0.
    std::vector<FreeModuleElement> steps{x(y.pow(4) - one), x(y * y - one), x(y - one), x(y * y + one), x(one), x(y)};
    static_assert(kChainLength == 6);
    std::vector<std::vector<bool>> sigs;
    EquationSet t{{1, 1}, {}, {}};
    for (const auto& w : steps) {
        t.action.push_back(w);
        sigs.push_back(closed_submodule_signature(rep, t, kGaloisProbeLength));
    }
    for (std::size_t j = 0; j + 1 < sigs.size(); ++j) o.require(signature_subset(sigs[j], sigs[j + 1]), "not monotone");
    std::size_t stable = sigs.size() - 1;
    while (stable > 0 && sigs[stable - 1] == sigs.back()) --stable;
    // once x1 lies in T, every probe is closed
    o.require(std::all_of(sigs.back().begin(), sigs.back().end(), [](bool b) { return b; }), "final signature not full");
    o.require(stable == 3, "stabilizes at step " + std::to_string(stable) + ", expected 3");
    for (std::size_t j = 0; j < stable; ++j) o.require(sigs[j] != sigs[j + 1], "step " + std::to_string(j + 1) + " adds nothing");
    if (o.pass) {
        std::ostringstream d;
        d << "closed probes per step:";
        for (const auto& s : sigs) d << ' ' << std::count(s.begin(), s.end(), true);
        d << "; constant from step " << stable;
        o.detail = d.str();
    }
    return o;
}

Outcome filtered_product_reduction() {
    Outcome o;
    Rng rng(1011);
    for (int t = 0; t < kFilters; ++t) {
        std::uint32_t p = uniform(rng, 0, 1) ? 2 : 3;
        auto n = static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(kMaxFilterIndices)));
        std::vector<FiniteRepresentation> factors;
        for (std::size_t i = 0; i < n; ++i) factors.push_back(random_rep(rng, p, 1, 4, 1));
        // every filter on a finite set is principal; list its members directly
        std::uint32_t full = (1u << n) - 1;
        std::uint32_t core = static_cast<std::uint32_t>(uniform(rng, 1, static_cast<int>(full)));
        std::vector<std::uint32_t> members;
        for (std::uint32_t s = 1; s <= full; ++s)
            if ((s & core) == core) members.push_back(s);
        FilterSpec filter(n, members);
        auto literal = literal_filtered_product(factors, filter, 1'000'000);
        auto shortcut = filtered_product(p, factors, filter, 0);
        auto tag = "filter " + std::to_string(t) + ": ";
        o.require(literal.vector_classes.size() == shortcut.rep.vector_count(), tag + "module sizes differ");
        o.require(literal.group_classes.size() == shortcut.rep.order(), tag + "group sizes differ");
        o.require(literal_matches_core(literal, shortcut.rep, factors, shortcut.core), tag + "tables differ");
    }
    if (o.pass) o.detail = std::to_string(kFilters) + " filters over n <= 4";
    return o;
}

struct GoldenCase {
    std::string name;
    std::vector<std::string> args;
};

std::vector<GoldenCase> load_cases() {
    std::ifstream in(golden_dir / "cases.tsv");
    if (!in) throw std::runtime_error("cannot read " + (golden_dir / "cases.tsv").string());
    std::vector<GoldenCase> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        GoldenCase c;
        std::istringstream fields(line);
        std::string field;
        std::getline(fields, c.name, '\t');
        while (std::getline(fields, field, '\t')) {
            for (auto pos = field.find("@DATA@"); pos != std::string::npos; pos = field.find("@DATA@"))
                field.replace(pos, 6, data_dir.string());
            c.args.push_back(field);
        }
        out.push_back(std::move(c));
    }
    return out;
}

// Stdout, then stderr under a marker, then the exit code.
std::string transcript(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run_command(args, out, err);
    std::string t = out.str();
    if (!err.str().empty()) t += "[stderr]\n" + err.str();
    t += "[exit " + std::to_string(code) + "]\n";
    // keep transcripts independent of where the data lives
    const auto dir = data_dir.string();
    for (auto pos = t.find(dir); pos != std::string::npos; pos = t.find(dir, pos)) t.replace(pos, dir.size(), "@DATA@");
    return t;
}

Outcome golden_determinism() {
    Outcome o;
    const std::set<std::string> threaded{"eval", "vset", "closure", "qcheck", "equiv", "chain"};
    auto cases = load_cases();
    int compared_workers = 0;
    for (const auto& c : cases) {
        auto first = transcript(c.args);
        auto path = golden_dir / (c.name + ".out");
        if (update_goldens) {
            std::ofstream(path, std::ios::binary) << first;
        } else {
            std::ifstream in(path, std::ios::binary);
            std::string expected((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
            o.require(bool(in) || !expected.empty(), c.name + ": missing golden file");
            o.require(first == expected, c.name + ": differs from golden transcript");
        }
        o.require(transcript(c.args) == first, c.name + ": second run differs");
        if (threaded.count(c.args.front())) {
            auto one = c.args, four = c.args;
            one.insert(one.end(), {"--workers", "1"});
            four.insert(four.end(), {"--workers", "4"});
            o.require(transcript(one) == transcript(four), c.name + ": workers 1 and 4 differ");
            o.require(transcript(one) == first, c.name + ": explicit --workers 1 differs");
            ++compared_workers;
        }
    }
    if (o.pass)
        o.detail = std::to_string(cases.size()) + " transcripts, " + std::to_string(compared_workers) +
                   " also compared across worker counts";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--data" && i + 1 < argc) data_dir = argv[++i];
        else if (a == "--golden" && i + 1 < argc) golden_dir = argv[++i];
        else if (a == "--update") update_goldens = true;
        else {
            std::cerr << "usage: acceptance --data DIR --golden DIR [--update]\n";
            return 2;
        }
    }
    if (data_dir.empty() || golden_dir.empty()) {
        std::cerr << "usage: acceptance --data DIR --golden DIR [--update]\n";
        return 2;
    }

    struct Criterion {
        const char* name;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {"Fox fundamental identity", fox_identity},
        {"Taylor reconstruction", taylor_reconstruction},
        {"truncated algebra dimension", truncated_dimension},
        {"Galois laws", galois_laws},
        {"quasi-identity check agrees with closure", quasi_identity_oracle},
        {"group identity constraints", group_identity_constraints},
        {"group algebra ideals, annihilators and stabilizers", group_algebra_ideals},
        {"equivalence with the faithful image", faithful_image_equivalence},
        {"group equations separate what action equations cannot", group_equation_separation},
        {"chain stabilization", chain_stabilization},
        {"filtered product reduction", filtered_product_reduction},
        {"golden transcript determinism", golden_determinism},
    };
    int failures = 0, index = 0;
    for (const auto& c : criteria) {
        ++index;
        Outcome o;
        auto start = std::chrono::steady_clock::now();
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
        failures += !o.pass;
        std::cout << "AC" << index << (o.pass ? " PASS: " : " FAIL: ") << c.name << " (" << o.detail << ", " << ms << " ms)"
                  << std::endl;
    }
    return failures ? 1 : 0;
}
