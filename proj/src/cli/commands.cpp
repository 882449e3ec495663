#include "repgeo/cli/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "repgeo/class_operators.hpp"
#include "repgeo/cli/parser.hpp"
#include "repgeo/cli/rep_io.hpp"
#include "repgeo/fox.hpp"
#include "repgeo/geometry.hpp"

namespace repgeo::cli {

using nlohmann::json;

Field parse_field(const std::string& text) {
    if (text == "q" || text == "Q") return Field::rationals();
    if (text.empty() || text.size() > 9 || !std::all_of(text.begin(), text.end(), ::isdigit))
        throw AlgebraError("usage", "field must be 'q' or a prime, got '" + text + "'");
    return Field::prime(static_cast<std::uint32_t>(std::stoul(text)));
}

std::uint64_t default_max_points() {
    if (const char* env = std::getenv("REPGEO_MAX_POINTS")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 1'000'000;
}

namespace {

class UsageError : public Error {
public:
    explicit UsageError(const std::string& message) : Error("usage", message) {}
};

// Per-invocation state: parsed flags plus the output sink.
struct Context {
    SessionConfig cfg;
    std::string field_flag;
    std::string format_flag = "text";
    std::ostream* out = nullptr;

    bool records() const { return cfg.format == OutputFormat::records; }
    void emit(const json& record) const { *out << record.dump() << '\n'; }
    void line(const std::string& s) const { *out << s << '\n'; }
};

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
    return out;
}

std::string vector_text(std::span<const std::uint32_t> v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return out + ")";
}

std::string elements_text(const std::vector<std::size_t>& els) {
    std::vector<std::string> parts;
    for (auto g : els) parts.push_back("g" + std::to_string(g));
    return parts.empty() ? "(none)" : join(parts, " ");
}

std::string sequence_text(const IndexSequence& s) {
    std::string out = "(";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + ")";
}

FiniteRepresentation load(const Context& ctx, const std::string& path) {
    auto rep = load_representation(path, ctx.cfg.max_group);
    if (ctx.cfg.field && !(*ctx.cfg.field == rep.field()))
        throw AlgebraError("field_mismatch", "--field " + ctx.cfg.field->name() + " but " + path + " is over " +
                                                 rep.field().name());
    return rep;
}

ModVector parse_vector(const std::string& text, std::uint32_t p, std::size_t dim) {
    ModVector v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            long long x = std::stoll(item, &used);
            if (item.find_first_not_of(" ", used) != std::string::npos) throw std::invalid_argument(item);
            v.push_back(Scalar(Field::prime(p), static_cast<std::int64_t>(x)).residue());
        } catch (const std::logic_error&) {
            throw UsageError("bad vector entry '" + item + "' in '" + text + "'");
        }
    }
    if (dim == 0 && (text.empty() || text == "()")) return {};
    if (v.size() != dim)
        throw UsageError("vector '" + text + "' has " + std::to_string(v.size()) + " entries, expected " +
                         std::to_string(dim));
    return v;
}

std::vector<ModVector> parse_vectors(const std::vector<std::string>& texts, std::uint32_t p, std::size_t dim) {
    std::vector<ModVector> out;
    for (const auto& t : texts) out.push_back(parse_vector(t, p, dim));
    return out;
}

std::size_t parse_element(std::size_t g, const FiniteRepresentation& rep) {
    if (g >= rep.order())
        throw UsageError("element index " + std::to_string(g) + " out of range (order " + std::to_string(rep.order()) + ")");
    return g;
}

std::vector<FreeModuleElement> parse_modules(const std::vector<std::string>& texts, Field field) {
    std::vector<FreeModuleElement> out;
    for (const auto& t : texts) out.push_back(parse_module_expr(t, field));
    return out;
}

std::vector<Word> parse_words(const std::vector<std::string>& texts) {
    std::vector<Word> out;
    for (const auto& t : texts) out.push_back(parse_word(t));
    return out;
}

// Declared arity: explicit flags, else the largest indices used (at least 1).
Arity arity_for(const SessionConfig& cfg, const std::vector<FreeModuleElement>& ws, const std::vector<Word>& fs) {
    std::size_t nx = 1, ny = 1;
    for (const auto& w : ws) {
        nx = std::max<std::size_t>(nx, static_cast<std::size_t>(w.max_module_index()));
        ny = std::max<std::size_t>(ny, static_cast<std::size_t>(w.max_generator()));
    }
    for (const auto& f : fs) ny = std::max<std::size_t>(ny, static_cast<std::size_t>(f.max_generator()));
    return {cfg.nx.value_or(nx), cfg.ny.value_or(ny)};
}

GeometryOptions geometry_options(const SessionConfig& cfg) { return {cfg.max_points, cfg.workers}; }

std::string module_list(const std::vector<FreeModuleElement>& ws) {
    std::vector<std::string> parts;
    for (const auto& w : ws) parts.push_back(w.to_string());
    return parts.empty() ? "(none)" : join(parts, "; ");
}

void emit_rep(const Context& ctx, const FiniteRepresentation& rep, json extra = json::object()) {
    if (ctx.records()) {
        extra["result"] = json::parse(representation_to_json(rep));
        ctx.emit(extra);
    } else {
        ctx.line(representation_to_json(rep));
    }
}

// ---- subcommand options -------------------------------------------------

struct Args {
    std::vector<std::string> vars;
    int k = 1;
    int n = 1;
    std::optional<int> m;
    std::string expr;
    std::string rep;
    std::vector<std::string> reps;
    std::vector<std::string> equations;
    std::vector<std::string> group_equations;
    std::vector<std::string> premises;
    std::vector<std::string> group_premises;
    std::string conclusion;
    std::string group_conclusion;
    std::vector<std::string> alpha;
    std::vector<std::size_t> beta;
    std::vector<std::string> vectors;
    std::vector<std::size_t> elements;
    std::vector<std::string> ideal;
    std::vector<std::string> filter_sets;
    std::vector<std::string> covers;
    std::size_t group_dim = 0;
    bool group_candidate = false;
};

// ---- algebra ------------------------------------------------------------

int cmd_fox(const Context& ctx, const Args& a) {
    Field field = ctx.cfg.field.value_or(Field::rationals());
    auto u = parse_ring_expr(a.expr, field);
    IndexSequence indices;
    for (const auto& v : a.vars) {
        int i = 0;
        try {
            i = std::stoi(v);
        } catch (const std::logic_error&) {
            throw UsageError("--var expects a generator index, got '" + v + "'");
        }
        if (i < 1) throw UsageError("--var indices start at 1");
        indices.push_back(i);
    }
    auto d = iterated_fox(indices, u);
    if (ctx.records())
        ctx.emit({{"result", d.to_string()}});
    else
        ctx.line(d.to_string());
    return 0;
}

int cmd_taylor(const Context& ctx, const Args& a) {
    Field field = ctx.cfg.field.value_or(Field::rationals());
    auto u = parse_ring_expr(a.expr, field);
    if (a.k < 1) throw UsageError("--k must be at least 1");
    int m = a.m.value_or(std::max(1, u.max_generator()));
    if (m < u.max_generator()) throw UsageError("--m is smaller than the largest generator used");
    auto t = taylor_expand(u, a.k, m);
    bool exact = t.reconstruct() == u;
    if (ctx.records()) {
        json head = json::object(), tail = json::object();
        for (const auto& [s, c] : t.head) head[sequence_text(s)] = c.to_string();
        for (const auto& [s, c] : t.tail) tail[sequence_text(s)] = c.to_string();
        ctx.emit({{"result", {{"head", head}, {"tail", tail}}}, {"reconstruction_exact", exact}});
    } else {
        for (const auto& [s, c] : t.head) ctx.line("head " + sequence_text(s) + ": " + c.to_string());
        for (const auto& [s, c] : t.tail) ctx.line("tail " + sequence_text(s) + ": " + c.to_string());
        ctx.line(std::string("reconstruction: ") + (exact ? "exact" : "MISMATCH"));
    }
    return exact ? 0 : 1;
}

int cmd_truncate(const Context& ctx, const Args& a) {
    Field field = ctx.cfg.field.value_or(Field::rationals());
    auto u = parse_ring_expr(a.expr, field);
    if (a.n < 1) throw UsageError("--n must be at least 1");
    int m = a.m.value_or(std::max(1, u.max_generator()));
    if (m < u.max_generator()) throw UsageError("--m is smaller than the largest generator used");
    if (TruncatedElement::dimension(m, a.n) > 1'000'000) throw BudgetError("truncated algebra dimension too large");
    auto t = truncate(u, a.n, m);
    std::size_t dim = TruncatedElement::dimension(m, a.n);
    if (ctx.records()) {
        json coords = json::object();
        for (std::size_t i = 0; i < dim; ++i)
            if (!t.coordinates()[i].is_zero())
                coords[sequence_text(TruncatedElement::basis_sequence(m, i))] = t.coordinates()[i].to_string();
        ctx.emit({{"result", coords}, {"dimension", dim}});
    } else {
        ctx.line("dimension: " + std::to_string(dim));
        *ctx.out << t.to_string();
        if (!t.to_string().empty() && t.to_string().back() != '\n') *ctx.out << '\n';
    }
    return 0;
}

// ---- evaluation and geometry --------------------------------------------

int cmd_eval(const Context& ctx, const Args& a) {
    auto rep = load(ctx, a.rep);
    std::vector<std::size_t> beta;
    for (auto g : a.beta) beta.push_back(parse_element(g, rep));
    auto alpha = parse_vectors(a.alpha, rep.p(), rep.action_dim());
    if (a.expr.find('x') != std::string::npos) {
        auto w = parse_module_expr(a.expr, rep.field());
        if (static_cast<std::size_t>(w.max_module_index()) > alpha.size())
            throw UsageError("expression uses x" + std::to_string(w.max_module_index()) + " but only " +
                             std::to_string(alpha.size()) + " --alpha values were given");
        if (static_cast<std::size_t>(w.max_generator()) > beta.size())
            throw UsageError("expression uses y" + std::to_string(w.max_generator()) + " but only " +
                             std::to_string(beta.size()) + " --beta values were given");
        auto v = eval_point(rep, alpha, beta, w);
        if (ctx.records())
            ctx.emit({{"result", v}});
        else
            ctx.line(vector_text(v));
        return 0;
    }
    auto u = parse_ring_expr(a.expr, rep.field());
    if (static_cast<std::size_t>(u.max_generator()) > beta.size())
        throw UsageError("expression uses y" + std::to_string(u.max_generator()) + " but only " +
                         std::to_string(beta.size()) + " --beta values were given");
    auto m = eval_ring(rep, beta, u);
    if (ctx.records())
        ctx.emit({{"result", m.to_nested()}});
    else
        ctx.line(m.to_string());
    return 0;
}

int cmd_vset(const Context& ctx, const Args& a) {
    auto rep = load(ctx, a.rep);
    auto ws = parse_modules(a.equations, rep.field());
    auto fs = parse_words(a.group_equations);
    EquationSet t{arity_for(ctx.cfg, ws, fs), ws, fs};
    AffineSpace space(rep, t.arity, ctx.cfg.max_points);
    auto points = solution_set(space, t, ctx.cfg.workers).indices();
    if (ctx.records()) {
        json pts = json::array();
        for (auto i : points) pts.push_back(space.point(i).to_string());
        ctx.emit({{"result", points.size()}, {"points", pts}, {"points_enumerated", space.size()}});
    } else {
        ctx.line("points: " + std::to_string(points.size()) + " of " + std::to_string(space.size()));
        for (auto i : points) ctx.line(space.point(i).to_string());
    }
    return 0;
}

int cmd_closure(const Context& ctx, const Args& a) {
    auto rep = load(ctx, a.rep);
    auto ws = parse_modules(a.equations, rep.field());
    auto fs = parse_words(a.group_equations);
    bool member = false;
    Arity arity;
    if (a.group_candidate) {
        Word f0 = parse_word(a.expr);
        auto all_fs = fs;
        all_fs.push_back(f0);
        arity = arity_for(ctx.cfg, ws, all_fs);
        member = group_closure_member(rep, EquationSet{arity, ws, fs}, f0, geometry_options(ctx.cfg));
    } else {
        auto w0 = parse_module_expr(a.expr, rep.field());
        auto all_ws = ws;
        all_ws.push_back(w0);
        arity = arity_for(ctx.cfg, all_ws, fs);
        member = closure_member(rep, EquationSet{arity, ws, fs}, w0, geometry_options(ctx.cfg));
    }
    const auto points = AffineSpace(rep, arity, ctx.cfg.max_points).size();
    if (ctx.records())
        ctx.emit({{"result", member}, {"points_enumerated", points}});
    else
        ctx.line(member ? "IN CLOSURE" : "NOT IN CLOSURE");
    return member ? 0 : 1;
}

int cmd_qcheck(const Context& ctx, const Args& a) {
    auto rep = load(ctx, a.rep);
    if (a.conclusion.empty() == a.group_conclusion.empty())
        throw UsageError("give exactly one of --conclusion and --group-conclusion");
    QuasiIdentity q;
    q.premises = parse_modules(a.premises, rep.field());
    q.group_premises = parse_words(a.group_premises);
    auto ws = q.premises;
    auto fs = q.group_premises;
    if (!a.conclusion.empty()) {
        q.conclusion = parse_module_expr(a.conclusion, rep.field());
        ws.push_back(*q.conclusion);
    } else {
        q.group_conclusion = parse_word(a.group_conclusion);
        fs.push_back(*q.group_conclusion);
    }
    q.arity = arity_for(ctx.cfg, ws, fs);
    auto r = check_quasi_identity(rep, q, geometry_options(ctx.cfg));
    if (ctx.records()) {
        json witness = r.counterexample ? json(r.counterexample->to_string()) : json(nullptr);
        ctx.emit({{"result", r.holds ? "holds" : "fails"}, {"witness", witness}, {"points_enumerated", r.points_enumerated}});
    } else {
        ctx.line(r.holds ? "HOLDS" : "FAILS");
        if (r.counterexample) ctx.line("counterexample: " + r.counterexample->to_string());
        ctx.line("points enumerated: " + std::to_string(r.points_enumerated));
    }
    return r.holds ? 0 : 1;
}

int cmd_equiv(const Context& ctx, const Args& a) {
    if (a.reps.size() != 2) throw UsageError("equiv takes two representation files");
    auto rep1 = load(ctx, a.reps[0]);
    auto rep2 = load(ctx, a.reps[1]);
    RefuteOptions opts;
    opts.arity = {ctx.cfg.nx.value_or(1), ctx.cfg.ny.value_or(1)};
    opts.max_premises = ctx.cfg.max_premises;
    opts.max_len = ctx.cfg.max_len;
    opts.candidate_budget = ctx.cfg.budget;
    opts.seed = ctx.cfg.seed;
    opts.workers = ctx.cfg.workers;
    opts.max_points = ctx.cfg.max_points;
    auto r = refute_equivalence(rep1, rep2, opts);
    const std::string mode = r.sampled ? "sampled" : "exhaustive";
    if (ctx.records()) {
        json witness = nullptr;
        if (r.witness) {
            json premises = json::array();
            for (const auto& w : r.witness->premises) premises.push_back(w.to_string());
            witness = {{"premises", premises}, {"conclusion", r.witness->conclusion.to_string()},
                       {"closed_in", r.witness->closed_in}};
        }
        ctx.emit({{"result", r.witness ? "witness" : "none"},
                  {"witness", witness},
                  {"seed", r.seed},
                  {"mode", mode},
                  {"candidates_total", r.candidates_total},
                  {"candidates_checked", r.candidates_checked},
                  {"points_enumerated", r.points_enumerated}});
    } else {
        if (r.witness) {
            ctx.line("WITNESS (" + mode + ", seed " + std::to_string(r.seed) + ")");
            ctx.line("premises: " + module_list(r.witness->premises));
            ctx.line("conclusion: " + r.witness->conclusion.to_string());
            ctx.line("closed over rep " + std::to_string(r.witness->closed_in) + ", not over rep " +
                     std::to_string(3 - r.witness->closed_in));
        } else {
            ctx.line("NO WITNESS (" + mode + ", seed " + std::to_string(r.seed) + "): inconclusive");
        }
        ctx.line("candidates checked: " + std::to_string(r.candidates_checked) + " of " +
                 std::to_string(r.candidates_total));
        ctx.line("points enumerated: " + std::to_string(r.points_enumerated));
    }
    return r.witness ? 1 : 0;
}

int cmd_chain(const Context& ctx, const Args& a) {
    auto rep = load(ctx, a.rep);
    auto ws = parse_modules(a.equations, rep.field());
    Arity arity = arity_for(ctx.cfg, ws, {});
    std::vector<std::vector<bool>> sigs;
    for (std::size_t j = 0; j <= ws.size(); ++j) {
        EquationSet t{arity, std::vector<FreeModuleElement>(ws.begin(), ws.begin() + static_cast<long>(j)), {}};
        sigs.push_back(closed_submodule_signature(rep, t, ctx.cfg.max_len, geometry_options(ctx.cfg)));
    }
    bool monotone = true;
    for (std::size_t j = 1; j < sigs.size(); ++j)
        for (std::size_t i = 0; i < sigs[j].size(); ++i)
            if (sigs[j - 1][i] && !sigs[j][i]) monotone = false;
    std::size_t stable_from = sigs.size() - 1;
    while (stable_from > 0 && sigs[stable_from - 1] == sigs.back()) --stable_from;

    auto bits = [](const std::vector<bool>& s) {
        std::string out;
        for (bool b : s) out += b ? '1' : '0';
        return out;
    };
    if (ctx.records()) {
        json steps = json::array();
        for (const auto& s : sigs) steps.push_back(bits(s));
        ctx.emit({{"result", monotone}, {"signatures", steps}, {"stable_from", stable_from}});
    } else {
        for (std::size_t j = 0; j < sigs.size(); ++j)
            ctx.line("step " + std::to_string(j) + ": " + bits(sigs[j]) + " (" +
                     std::to_string(std::count(sigs[j].begin(), sigs[j].end(), true)) + " closed)");
        ctx.line(std::string("monotone: ") + (monotone ? "yes" : "no"));
        ctx.line("stable from step: " + std::to_string(stable_from));
    }
    return monotone ? 0 : 1;
}

// ---- group algebra ------------------------------------------------------

json rows_json(const ModMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row_vector(r));
    return rows;
}

int cmd_ann(const Context& ctx, const Args& a) {
    auto rep = load(ctx, a.rep);
    auto ann = annihilator(rep, parse_vectors(a.vectors, rep.p(), rep.action_dim()));
    GroupAlgebra alg(rep);
    bool two_sided = is_two_sided(alg, ann);
    if (ctx.records()) {
        ctx.emit({{"result", rows_json(ann.basis)}, {"rank", ann.rank()}, {"two_sided", two_sided}});
    } else {
        ctx.line("rank: " + std::to_string(ann.rank()) + " of " + std::to_string(alg.dimension()));
        ctx.line(std::string("two-sided: ") + (two_sided ? "yes" : "no"));
        for (std::size_t r = 0; r < ann.basis.rows(); ++r) ctx.line(vector_text(ann.basis.row(r)));
    }
    return 0;
}

int cmd_stab(const Context& ctx, const Args& a) {
    auto rep = load(ctx, a.rep);
    auto st = stabilizer(rep, parse_vectors(a.vectors, rep.p(), rep.action_dim()));
    if (ctx.records()) {
        ctx.emit({{"result", st.group_elements}, {"annihilator", rows_json(st.annihilator.basis)}});
    } else {
        ctx.line("annihilator rank: " + std::to_string(st.annihilator.rank()));
        ctx.line("group elements: " + elements_text(st.group_elements));
    }
    return 0;
}

int cmd_ker(const Context& ctx, const Args& a) {
    auto rep = load(ctx, a.rep);
    std::vector<std::size_t> kernel;
    if (a.ideal.empty()) {
        kernel = action_kernel(rep);
    } else {
        GroupAlgebra alg(rep);
        auto u = make_right_ideal(alg, parse_vectors(a.ideal, rep.p(), rep.order()));
        kernel = kernel_via_ideal(alg, u);
    }
    if (ctx.records()) {
        ctx.emit({{"result", kernel}, {"order", kernel.size()}});
    } else {
        ctx.line("kernel: " + elements_text(kernel));
        ctx.line("order: " + std::to_string(kernel.size()));
    }
    return 0;
}

int cmd_regular(const Context& ctx, const Args& a) {
    emit_rep(ctx, regular_representation(load(ctx, a.rep)));
    return 0;
}

int cmd_quotmod(const Context& ctx, const Args& a) {
    auto rep = load(ctx, a.rep);
    GroupAlgebra alg(rep);
    auto u = right_ideal_generated(alg, parse_vectors(a.ideal, rep.p(), rep.order()));
    emit_rep(ctx, quotient_module_representation(alg, u), {{"ideal_rank", u.rank()}});
    return 0;
}

// ---- class operators ----------------------------------------------------

std::vector<FiniteRepresentation> load_all(const Context& ctx, const std::vector<std::string>& paths) {
    std::vector<FiniteRepresentation> reps;
    for (const auto& p : paths) reps.push_back(load(ctx, p));
    return reps;
}

std::uint32_t common_prime(const Context& ctx, const std::vector<FiniteRepresentation>& reps) {
    if (!reps.empty()) return reps.front().p();
    if (ctx.cfg.field && !ctx.cfg.field->is_rational()) return ctx.cfg.field->characteristic();
    throw UsageError("an empty product needs --field p");
}

int cmd_product(const Context& ctx, const Args& a) {
    auto reps = load_all(ctx, a.reps);
    emit_rep(ctx, cartesian_product(common_prime(ctx, reps), reps, ctx.cfg.max_group));
    return 0;
}

std::uint32_t parse_subset(const std::string& text, std::size_t n) {
    std::uint32_t mask = 0;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t i = 0;
        try {
            i = std::stoul(item);
        } catch (const std::logic_error&) {
            throw UsageError("bad index '" + item + "' in filter set '" + text + "'");
        }
        if (i < 1 || i > n) throw UsageError("filter index " + item + " outside 1.." + std::to_string(n));
        mask |= 1u << (i - 1);
    }
    return mask;
}

int cmd_fprod(const Context& ctx, const Args& a) {
    auto reps = load_all(ctx, a.reps);
    if (reps.empty()) throw UsageError("fprod needs at least one representation");
    if (reps.size() > FilterSpec::kMaxIndices) throw UsageError("too many factors for a filter");
    if (a.filter_sets.empty()) throw UsageError("give the filter members with --set");
    std::vector<std::uint32_t> members;
    for (const auto& s : a.filter_sets) members.push_back(parse_subset(s, reps.size()));
    FilterSpec filter(reps.size(), members);
    auto fp = filtered_product(common_prime(ctx, reps), reps, filter);
    json core = json::array();
    for (auto i : fp.core) core.push_back(i + 1);
    emit_rep(ctx, fp.rep, {{"core", core}, {"verified_literally", fp.verified_literally}});
    return 0;
}

int cmd_subrep(const Context& ctx, const Args& a) {
    auto rep = load(ctx, a.rep);
    std::vector<std::size_t> gens;
    for (auto g : a.elements) gens.push_back(parse_element(g, rep));
    auto sub = generated_subrepresentation(rep, parse_vectors(a.vectors, rep.p(), rep.action_dim()), gens);
    emit_rep(ctx, sub.as_representation(rep), {{"group_elements", sub.group_elements}});
    return 0;
}

int cmd_quot(const Context& ctx, const Args& a) {
    auto rep = load(ctx, a.rep);
    std::vector<std::size_t> n;
    for (auto g : a.elements) n.push_back(parse_element(g, rep));
    if (n.empty()) n = action_kernel(rep);
    std::sort(n.begin(), n.end());
    n.erase(std::unique(n.begin(), n.end()), n.end());
    emit_rep(ctx, qr_quotient(rep, n));
    return 0;
}

int cmd_inflate(const Context& ctx, const Args& a) {
    auto d = load(ctx, a.rep);
    std::vector<CoverGenerator> cover;
    for (const auto& c : a.covers) {
        auto colon = c.rfind(':');
        if (colon == std::string::npos) throw UsageError("--cover expects MATRIX:IMAGE, got '" + c + "'");
        json m;
        try {
            m = json::parse(c.substr(0, colon));
        } catch (const json::parse_error&) {
            throw UsageError("bad matrix in --cover '" + c + "'");
        }
        std::size_t image = 0;
        try {
            image = std::stoul(c.substr(colon + 1));
        } catch (const std::logic_error&) {
            throw UsageError("bad image index in --cover '" + c + "'");
        }
        std::vector<std::vector<std::int64_t>> rows;
        try {
            rows = m.get<std::vector<std::vector<std::int64_t>>>();
        } catch (const json::exception&) {
            throw UsageError("--cover matrix must be a list of integer rows");
        }
        cover.push_back({ModMatrix(d.p(), rows, a.group_dim), image});
    }
    emit_rep(ctx, q0_inflation(d, a.group_dim, cover, ctx.cfg.max_group));
    return 0;
}

int cmd_faithful(const Context& ctx, const Args& a) {
    emit_rep(ctx, faithful_image(load(ctx, a.rep)));
    return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Context ctx;
    ctx.out = &out;
    ctx.cfg.max_points = default_max_points();
    Args a;

    CLI::App app{"Action-type algebraic geometry over finite group representations", "repgeo"};
    app.require_subcommand(1, 1);

    auto common = [&](CLI::App* s) {
        s->add_option("--field", ctx.field_flag, "Coefficient field: q or a prime");
        s->add_option("--format", ctx.format_flag, "Output format: text or records")
            ->check(CLI::IsMember({"text", "records"}));
        return s;
    };
    auto budgets = [&](CLI::App* s) {
        s->add_option("--max-points", ctx.cfg.max_points, "Largest affine space to enumerate")->check(CLI::PositiveNumber);
        s->add_option("--max-group", ctx.cfg.max_group, "Largest group to generate")->check(CLI::PositiveNumber);
        s->add_option("--workers", ctx.cfg.workers, "Worker threads")->check(CLI::Range(1u, 256u));
        s->add_option("--nx", ctx.cfg.nx, "Number of module variables x1..x_nx");
        s->add_option("--ny", ctx.cfg.ny, "Number of group variables y1..y_ny");
        return s;
    };

    std::map<std::string, std::function<int(const Context&, const Args&)>> handlers;
    auto add = [&](const std::string& name, const std::string& help, auto handler) {
        handlers[name] = handler;
        return common(app.add_subcommand(name, help));
    };

    auto* fox = add("fox", "Fox derivative d_{i1,...,ik}(u); the last --var is applied first", cmd_fox);
    fox->add_option("--var", a.vars, "Generator index, repeatable")->allow_extra_args(false)->required();
    fox->add_option("expr", a.expr, "Ring expression")->required();

    auto* taylor = add("taylor", "Fox-Taylor expansion of order k", cmd_taylor);
    taylor->add_option("--k", a.k, "Order")->required();
    taylor->add_option("--m", a.m, "Number of generators");
    taylor->add_option("expr", a.expr, "Ring expression")->required();

    auto* trunc = add("truncate", "Coordinates in KF(Y)/Delta^n", cmd_truncate);
    trunc->add_option("--n", a.n, "Degree bound")->required();
    trunc->add_option("--m", a.m, "Number of generators");
    trunc->add_option("expr", a.expr, "Ring expression")->required();

    auto* eval = budgets(add("eval", "Evaluate a module expression at a point, or a ring expression at beta", cmd_eval));
    eval->add_option("rep", a.rep, "Representation file")->required();
    eval->add_option("--alpha", a.alpha, "Vector for x_k, comma separated, repeatable")->allow_extra_args(false);
    eval->add_option("--beta", a.beta, "Element index for y_i, repeatable")->allow_extra_args(false);
    eval->add_option("expr", a.expr, "Expression")->required();

    auto* vset = budgets(add("vset", "Algebraic set of a system of equations", cmd_vset));
    vset->add_option("rep", a.rep, "Representation file")->required();
    vset->add_option("--equation,-e", a.equations, "Action equation w (read w = 0), repeatable")->allow_extra_args(false);
    vset->add_option("--group-equation", a.group_equations, "Group equation f (read f = 1), repeatable")->allow_extra_args(false);

    auto* closure = budgets(add("closure", "Closure membership", cmd_closure));
    closure->add_option("rep", a.rep, "Representation file")->required();
    closure->add_option("--equation,-e", a.equations, "Action equation, repeatable")->allow_extra_args(false);
    closure->add_option("--group-equation", a.group_equations, "Group equation, repeatable")->allow_extra_args(false);
    closure->add_flag("--group", a.group_candidate, "Candidate is a group word");
    closure->add_option("candidate", a.expr, "Candidate element")->required();

    auto* qcheck = budgets(add("qcheck", "Quasi-identity check by point enumeration", cmd_qcheck));
    qcheck->add_option("rep", a.rep, "Representation file")->required();
    qcheck->add_option("--premise", a.premises, "Action premise, repeatable")->allow_extra_args(false);
    qcheck->add_option("--group-premise", a.group_premises, "Group premise, repeatable")->allow_extra_args(false);
    qcheck->add_option("--conclusion", a.conclusion, "Action conclusion");
    qcheck->add_option("--group-conclusion", a.group_conclusion, "Group conclusion");

    auto* equiv = budgets(add("equiv", "Bounded search refuting action-type geometric equivalence", cmd_equiv));
    equiv->add_option("reps", a.reps, "Two representation files")->required()->expected(2);
    equiv->add_option("--max-len", ctx.cfg.max_len, "Longest word in a probe element");
    equiv->add_option("--max-premises", ctx.cfg.max_premises, "Most premises per candidate");
    equiv->add_option("--budget", ctx.cfg.budget, "Candidates before switching to sampling")->check(CLI::PositiveNumber);
    equiv->add_option("--seed", ctx.cfg.seed, "Sampling seed");

    auto* chain = budgets(add("chain", "Closure signatures along a growing chain of equation sets", cmd_chain));
    chain->add_option("rep", a.rep, "Representation file")->required();
    chain->add_option("--equation,-e", a.equations, "Equation appended at each step, repeatable")->allow_extra_args(false);
    chain->add_option("--max-len", ctx.cfg.max_len, "Longest probe word");

    auto* ann = add("ann", "Annihilator in KG of a set of vectors", cmd_ann);
    ann->add_option("rep", a.rep, "Representation file")->required();
    ann->add_option("--vector", a.vectors, "Vector of V, repeatable")->allow_extra_args(false);

    auto* stab = add("stab", "Stabilizer 1 + ann of a set of vectors", cmd_stab);
    stab->add_option("rep", a.rep, "Representation file")->required();
    stab->add_option("--vector", a.vectors, "Vector of V, repeatable")->allow_extra_args(false);

    auto* ker = add("ker", "Kernel of the action, or {g | g - 1 in U} for a two-sided ideal U", cmd_ker);
    ker->add_option("rep", a.rep, "Representation file")->required();
    ker->add_option("--ideal", a.ideal, "Spanning element of U in KG coordinates, repeatable")->allow_extra_args(false);

    auto* regular = add("regular", "Regular representation (KG, G)", cmd_regular);
    regular->add_option("rep", a.rep, "Representation file")->required();

    auto* quotmod = add("quotmod", "Quotient module (KG/U, G), U the right ideal generated", cmd_quotmod);
    quotmod->add_option("rep", a.rep, "Representation file")->required();
    quotmod->add_option("--ideal", a.ideal, "Generator of U in KG coordinates, repeatable")->allow_extra_args(false);

    auto* product = add("product", "Cartesian product", cmd_product);
    product->add_option("reps", a.reps, "Representation files");
    product->add_option("--max-group", ctx.cfg.max_group, "Largest group to generate");

    auto* fprod = add("fprod", "Filtered product; the filter is the full list of member sets", cmd_fprod);
    fprod->add_option("reps", a.reps, "Representation files")->required();
    fprod->add_option("--set", a.filter_sets, "Member set such as 1,2 (1-based), repeatable")->allow_extra_args(false)->required();

    auto* subrep = add("subrep", "Subrepresentation generated by vectors and elements", cmd_subrep);
    subrep->add_option("rep", a.rep, "Representation file")->required();
    subrep->add_option("--vector", a.vectors, "Module generator, repeatable")->allow_extra_args(false);
    subrep->add_option("--element", a.elements, "Group generator index, repeatable")->allow_extra_args(false);

    auto* quot = add("quot", "(V, G/N) for a normal subgroup N acting trivially (default: the kernel)", cmd_quot);
    quot->add_option("rep", a.rep, "Representation file")->required();
    quot->add_option("--element", a.elements, "Element of N, repeatable")->allow_extra_args(false);

    auto* inflate = add("inflate", "(V, G) acting through an epimorphism G -> D", cmd_inflate);
    inflate->add_option("rep", a.rep, "Representation file for (V, D)")->required();
    inflate->add_option("--group-dim", a.group_dim, "Size of the covering group's matrices")->required();
    inflate->add_option("--cover", a.covers, "Generator as MATRIX:IMAGE, e.g. [[0,2],[1,0]]:1, repeatable")->allow_extra_args(false);
    inflate->add_option("--max-group", ctx.cfg.max_group, "Largest group to generate");

    auto* faithful = add("faithful", "Faithful image (V, G/ker)", cmd_faithful);
    faithful->add_option("rep", a.rep, "Representation file")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error[usage]: " << e.what() << '\n';
        return 2;
    }

    try {
        if (!ctx.field_flag.empty()) ctx.cfg.field = parse_field(ctx.field_flag);
        ctx.cfg.format = ctx.format_flag == "records" ? OutputFormat::records : OutputFormat::text;
        if (ctx.cfg.max_len > 8) throw BudgetError("--max-len above 8 is not supported");
        if (ctx.cfg.max_premises > 8) throw UsageError("--max-premises above 8 is not supported");
        auto* sub = app.get_subcommands().front();
        return handlers.at(sub->get_name())(ctx, a);
    } catch (const Error& e) {
        err << "error[" << e.code() << "]: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error[internal]: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace repgeo::cli
