#include "precut/avoidance.hpp"
#include "precut/error.hpp"
#include "precut/fock.hpp"
#include "precut/instances.hpp"
#include "precut/pairs.hpp"
#include "precut/parallel.hpp"
#include "precut/parking.hpp"
#include "precut/preorder.hpp"
#include "precut/setn.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace precut;
using nlohmann::json;

namespace {

struct InstanceFlags {
    std::string instance = "perm_f";
    int palette = 2;
    std::string avoid;
    int cap = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--instance,-i", instance, "instance name or alias")->capture_default_str();
        cmd->add_option("--palette", palette, "colors for colored/tensor")->capture_default_str();
        cmd->add_option("--avoid", avoid, "avoidance preset, atoms joined by '+'");
        cmd->add_option("--cap", cap, "override the instance size cap");
    }
    SpeciesPtr build() const { return build_instance(instance, {palette, avoid, cap}); }
};

std::string format = "text";

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string read_source(const std::string& arg) {
    if (arg == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return arg;
    std::ifstream in(arg);
    if (!in) throw Error(ErrorCode::InvalidInput, "cannot read " + arg);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// "n:x<y,y<z" (reflexive-transitive closure of the listed x <= y) or a JSON {"ground","rel"} object.
Preorder parse_preorder(const std::string& text) {
    if (!text.empty() && text.front() == '{') return preorder_from_json(json::parse(text));
    const auto colon = text.find(':');
    const int n = std::stoi(text.substr(0, colon));
    std::vector<std::pair<int, int>> pairs;
    if (colon != std::string::npos) {
        std::stringstream in(text.substr(colon + 1));
        for (std::string item; std::getline(in, item, ',');) {
            if (item.empty()) continue;
            const auto lt = item.find('<');
            if (lt == std::string::npos) throw Error(ErrorCode::InvalidInput, "expected x<y in " + item);
            pairs.push_back({std::stoi(item.substr(0, lt)), std::stoi(item.substr(lt + 1))});
        }
    }
    return Preorder::closure(n, pairs);
}

std::string preorder_text(const Preorder& p) {
    std::string out = std::to_string(p.size()) + ":";
    bool first = true;
    for (int x = 0; x < p.size(); ++x)
        for (int y = 0; y < p.size(); ++y)
            if (x != y && p.leq(x, y)) {
                out += (first ? "" : ",") + std::to_string(x) + "<" + std::to_string(y);
                first = false;
            }
    return out;
}

json preorder_out(const Preorder& p) { return {{"text", preorder_text(p)}, {"json", to_json(p)}}; }

json masks_json(const std::vector<Mask>& ms) {
    json out = json::array();
    for (Mask m : ms) out.push_back(mask_json(m));
    return out;
}

Filtration parse_filtration(const std::string& chain, const std::string& word, int n) {
    if (!word.empty()) {
        std::vector<int> a;
        std::stringstream in(word);
        for (std::string item; std::getline(in, item, ',');) a.push_back(std::stoi(item));
        int top = 0;
        for (int v : a) {
            if (v < 1) throw Error(ErrorCode::InvalidInput, "parking values start at 1");
            top = std::max(top, v);
        }
        Filtration f{static_cast<int>(a.size()), std::vector<Mask>(top + 1, 0)};
        for (int t = 0; t <= top; ++t)
            for (std::size_t x = 0; x < a.size(); ++x)
                if (a[x] <= t) f.chain[t] |= Mask(1) << x;
        return f;
    }
    const json j = json::parse(chain);
    Filtration f{n, {}};
    if (n <= 0) {
        for (const auto& set : j)
            for (const auto& x : set) f.n = std::max(f.n, x.get<int>() + 1);
    }
    for (const auto& set : j) {
        Mask m = 0;
        for (const auto& x : set) m |= Mask(1) << x.get<int>();
        f.chain.push_back(m);
    }
    validate(f);
    return f;
}

json filtration_json(const Filtration& f) {
    json chain = json::array();
    for (Mask m : f.chain) chain.push_back(mask_json(m));
    return {{"n", f.n}, {"chain", chain}};
}

int report(const VerificationReport& r) {
    emit(to_json(r));
    return r.passed ? 0 : 1;
}

Mask parse_subset(const std::string& text) {
    Mask m = 0;
    std::stringstream in(text);
    for (std::string item; std::getline(in, item, ',');)
        if (!item.empty()) m |= Mask(1) << std::stoi(item);
    return m;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"precut: restriction species over preorders and their Fock tables"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "worker threads (default: hardware concurrency)");
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));

    // enum
    auto* enum_cmd = app.add_subcommand("enum", "list elements or orbit classes per degree");
    InstanceFlags enum_flags;
    enum_flags.attach(enum_cmd);
    int enum_n = 3;
    bool enum_classes = false, enum_single = false, enum_count = false;
    enum_cmd->add_option("--n,-n", enum_n, "ground set size")->capture_default_str();
    enum_cmd->add_flag("--classes", enum_classes, "orbit classes instead of labeled elements");
    enum_cmd->add_flag("--single", enum_single, "single parking filtrations instead of pairs");
    enum_cmd->add_flag("--count", enum_count, "print counts only");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run species, intertwining or bimonoid checks");
    InstanceFlags verify_flags;
    verify_flags.attach(verify_cmd);
    std::string check = "intertwined";
    int nmax = 3;
    verify_cmd->add_option("--check", check, "which check")
        ->check(CLI::IsMember({"species", "intertwined", "bimonoid", "bimonoid1", "bimonoid2", "all"}))
        ->capture_default_str();
    verify_cmd->add_option("--nmax", nmax, "largest ground size")->capture_default_str();

    // avoid
    auto* avoid_cmd = app.add_subcommand("avoid", "avoidance presets and irreducibility");
    InstanceFlags avoid_flags;
    avoid_flags.attach(avoid_cmd);
    std::string preset;
    int avoid_nmax = 4, irreducible = 0;
    bool avoid_intertwined = false;
    avoid_cmd->add_option("--preset", preset, "avoidance preset, e.g. 213 or 132+213")->required();
    avoid_cmd->add_option("--nmax", avoid_nmax, "largest ground size")->capture_default_str();
    avoid_cmd->add_option("--check-irreducible", irreducible, "coproduct index to test")->check(CLI::IsMember({1, 2}));
    avoid_cmd->add_flag("--check-intertwined", avoid_intertwined, "also verify the avoiding instance");

    // fock
    auto* fock_cmd = app.add_subcommand("fock", "Fock functor structure constants");
    InstanceFlags fock_flags;
    fock_flags.attach(fock_cmd);
    int fock_delta = 1, fock_mu = 2, fock_N = 3;
    std::string fock_out;
    bool fock_force = false, fock_dual = false, fock_verify = false;
    std::vector<std::string> fock_products, fock_coproducts;
    fock_cmd->add_option("--delta", fock_delta, "coproduct cut index")->check(CLI::IsMember({1, 2}))->capture_default_str();
    fock_cmd->add_option("--mu", fock_mu, "product cut index")->check(CLI::IsMember({1, 2}))->capture_default_str();
    fock_cmd->add_option("--N", fock_N, "degree bound")->capture_default_str();
    fock_cmd->add_option("--out", fock_out, "write the table (json or csv by --format)");
    fock_cmd->add_flag("--force", fock_force, "skip the intertwining precondition");
    fock_cmd->add_flag("--dual", fock_dual, "emit the graded dual");
    fock_cmd->add_flag("--verify", fock_verify, "check the Hopf axioms");
    fock_cmd->add_option("--product", fock_products, "spot product a*b by class labels");
    fock_cmd->add_option("--coproduct", fock_coproducts, "spot coproduct by class label");

    // check-square
    auto* square_cmd = app.add_subcommand("check-square", "partial pullback vs dual commutation of a square");
    std::string square_src = "-";
    square_cmd->add_option("square", square_src, "JSON file, inline JSON, or - for stdin")->capture_default_str();

    // preorder
    auto* pre_cmd = app.add_subcommand("preorder", "preorder lattice calculator");
    std::string pre_op, pre_p, pre_q;
    int pre_n = 3;
    pre_cmd->add_option("op", pre_op, "operation")
        ->required()
        ->check(CLI::IsMember({"meet", "join", "opposite", "precedes", "bubbles", "components", "cuts", "restrict",
                               "refines", "total-refinement", "classify", "enumerate"}));
    pre_cmd->add_option("--p", pre_p, "preorder as n:x<y,... or JSON");
    pre_cmd->add_option("--q", pre_q, "second preorder");
    pre_cmd->add_option("--n", pre_n, "size for enumerate")->capture_default_str();
    std::string pre_subset;
    pre_cmd->add_option("--subset", pre_subset, "positions for restrict, e.g. 0,2");

    // parking
    auto* park_cmd = app.add_subcommand("parking", "filtrations: parkize, break points, slices");
    std::string park_op, park_chain = "[]", park_word, park_subset;
    int park_n = 0, park_b = 0;
    park_cmd->add_option("op", park_op, "operation")
        ->required()
        ->check(CLI::IsMember(
            {"parkize", "break-points", "dilation", "preorder", "slice-below", "slice-above", "restrict", "enumerate"}));
    park_cmd->add_option("--chain", park_chain, "JSON list of subsets, starting with []");
    park_cmd->add_option("--word", park_word, "values a(x) >= 1, comma separated");
    park_cmd->add_option("--n", park_n, "ground size");
    park_cmd->add_option("--b", park_b, "break point");
    park_cmd->add_option("--subset", park_subset, "positions for restrict");

    // pairs
    auto* pairs_cmd = app.add_subcommand("pairs", "pairs of preorders of types cc, nc, nn");
    std::string pairs_op, pairs_kind = "cc", pairs_p, pairs_q, pairs_frame;
    int pairs_n = 2;
    pairs_cmd->add_option("op", pairs_op, "operation")
        ->required()
        ->check(CLI::IsMember({"classify", "member", "frame", "generate", "matrix", "enumerate"}));
    pairs_cmd->add_option("--kind", pairs_kind, "cc, nc or nn")->capture_default_str();
    pairs_cmd->add_option("--p", pairs_p, "first preorder");
    pairs_cmd->add_option("--q", pairs_q, "second preorder");
    pairs_cmd->add_option("--frame", pairs_frame, "JSON frame {first, second, refinable_first, refinable_second}");
    pairs_cmd->add_option("--n", pairs_n, "size for enumerate")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }
    if (threads > 0) set_thread_count(threads);

    try {
        if (*enum_cmd) {
            if (enum_single) {
                const auto fs = enumerate_parking_filtrations(enum_n);
                if (enum_count) {
                    std::cout << fs.size() << "\n";
                    return 0;
                }
                json out = json::array();
                for (const auto& f : fs) out.push_back(filtration_json(f));
                if (format == "json") emit(out);
                else
                    for (const auto& f : out) std::cout << f["chain"].dump() << "\n";
                return 0;
            }
            auto S = enum_flags.build();
            if (enum_classes) {
                const auto index = orbit_classes(*S, enum_n);
                json out = json::array();
                int count = 0;
                for (const auto& c : index.classes)
                    if (c.degree == enum_n) {
                        ++count;
                        out.push_back({{"id", c.id}, {"label", c.label}, {"repr", c.repr}});
                    }
                if (enum_count) std::cout << count << "\n";
                else if (format == "json") emit(out);
                else
                    for (const auto& c : out) std::cout << c["label"].get<std::string>() << "\n";
                return 0;
            }
            const auto& list = S->elements(enum_n);
            if (enum_count) {
                std::cout << list.size() << "\n";
                return 0;
            }
            if (format == "json") {
                json out = json::array();
                for (const auto& e : list) out.push_back(S->to_json(e));
                emit(out);
            } else {
                for (const auto& e : list) std::cout << S->describe(e) << "\n";
            }
            return 0;
        }

        if (*verify_cmd) {
            auto S = verify_flags.build();
            json out = json::object();
            bool ok = true;
            auto run = [&](const std::string& name, const VerificationReport& r) {
                out[name] = to_json(r);
                ok = ok && r.passed;
            };
            if (check == "species" || check == "all") run("species", check_species_over_preorders(*S, nmax));
            if (check == "intertwined" || check == "all") run("intertwined", check_intertwined(*S, nmax));
            if (check == "bimonoid" || check == "bimonoid1" || check == "all")
                run("bimonoid1", check_bimonoid(*S, Projection::First, nmax));
            if (check == "bimonoid" || check == "bimonoid2" || check == "all")
                run("bimonoid2", check_bimonoid(*S, Projection::Second, nmax));
            out["instance"] = S->name();
            out["passed"] = ok;
            emit(out);
            return ok ? 0 : 1;
        }

        if (*avoid_cmd) {
            auto parent = avoid_flags.build();
            const AvoidanceSet A = avoidance_preset(preset, *parent);
            const auto avoiding = avoiding_instance(parent, A);
            json out{{"parent", parent->name()}, {"preset", A.name}};
            json counts = json::array();
            for (int n = 0; n <= avoid_nmax; ++n) counts.push_back(avoiding->elements(n).size());
            out["avoiders_per_degree"] = counts;
            bool ok = true;
            if (irreducible) {
                const Projection which = projection_from_int(irreducible);
                const auto r = is_irreducible(*parent, which, A, avoid_nmax);
                out["irreducible"] = to_json(r);
                ok = r.passed;
                if (r.passed) out["roles"] = to_json(quotient_or_sub_bimonoid(parent, A, which, r));
            }
            if (avoid_intertwined) {
                const auto r = check_intertwined(*avoiding, avoid_nmax);
                out["intertwined"] = to_json(r);
                ok = ok && r.passed;
            }
            emit(out);
            return ok ? 0 : 1;
        }

        if (*fock_cmd) {
            auto S = fock_flags.build();
            FockOptions options{projection_from_int(fock_delta), projection_from_int(fock_mu), fock_N, fock_force};
            FockTable t = cached_fock_tables(*S, options);
            if (fock_dual) t = graded_dual(t);
            bool ok = true;
            json summary{{"instance", t.instance}, {"delta", t.delta}, {"mu", t.mu}, {"N", t.N},
                         {"dimensions", t.dimensions()}};
            if (fock_verify) {
                const auto r = verify_hopf_axioms(t, t.N);
                summary["axioms"] = to_json(r);
                ok = r.passed;
            }
            auto lookup = [&](const std::string& label) {
                int c = t.find(label);
                if (c < 0) throw Error(ErrorCode::InvalidInput, "no class labeled " + label);
                return c;
            };
            json spots = json::array();
            for (const auto& spec : fock_products) {
                const auto star = spec.find('*');
                if (star == std::string::npos) throw Error(ErrorCode::InvalidInput, "products are written a*b");
                const auto r = t.multiply({{lookup(spec.substr(0, star)), 1}}, {{lookup(spec.substr(star + 1)), 1}});
                json terms = json::array();
                for (const auto& [c, v] : r) terms.push_back({{"class", t.classes[c].label}, {"coeff", v}});
                spots.push_back({{"product", spec}, {"terms", terms}});
            }
            for (const auto& label : fock_coproducts) {
                json terms = json::array();
                for (const auto& [lr, v] : t.coproduct[lookup(label)])
                    terms.push_back({{"left", t.classes[lr.first].label}, {"right", t.classes[lr.second].label}, {"coeff", v}});
                spots.push_back({{"coproduct", label}, {"terms", terms}});
            }
            if (!spots.empty()) summary["spots"] = spots;
            if (!fock_out.empty()) {
                std::ofstream out(fock_out);
                if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + fock_out);
                if (format == "csv") out << to_csv(t);
                else out << to_json(t).dump(2) << "\n";
                summary["written"] = fock_out;
            }
            if (format == "csv" && fock_out.empty()) std::cout << to_csv(t);
            else if (format == "json" && fock_out.empty()) emit(to_json(t));
            else emit(summary);
            return ok ? 0 : 1;
        }

        if (*square_cmd) {
            const Square sq = square_from_json(json::parse(read_source(square_src)));
            const auto pb = check_partial_pullback(sq);
            json out{{"partial_pullback", pb.passed}, {"pullback_witness", pb.witness}};
            try {
                const auto dc = check_dual_commutation(sq);
                out["dual_commutes"] = dc.passed;
                out["dual_witness"] = dc.witness;
            } catch (const Error& e) {
                out["dual_commutes"] = nullptr;
                out["dual_error"] = error_code_name(e.code());
            }
            emit(out);
            return pb.passed ? 0 : 1;
        }

        if (*pre_cmd) {
            json out;
            if (pre_op == "enumerate") {
                const auto all = enumerate_preorders(pre_n, std::max(pre_n, 5));
                if (format == "json") {
                    out = json::array();
                    for (const auto& p : all) out.push_back(to_json(p));
                    emit(out);
                } else {
                    for (const auto& p : all) std::cout << preorder_text(p) << "\n";
                }
                return 0;
            }
            const Preorder p = parse_preorder(pre_p);
            auto q = [&] {
                if (pre_q.empty()) throw Error(ErrorCode::InvalidInput, pre_op + " needs --q");
                return parse_preorder(pre_q);
            };
            if (pre_op == "meet") out = preorder_out(meet(p, q()));
            else if (pre_op == "join") out = preorder_out(join(p, q()));
            else if (pre_op == "opposite") out = preorder_out(opposite(p));
            else if (pre_op == "precedes") out = {{"precedes", precedes(p, q())}};
            else if (pre_op == "bubbles") out = {{"bubbles", masks_json(bubbles(p))}};
            else if (pre_op == "components") out = preorder_out(component_partition(p));
            else if (pre_op == "restrict") out = preorder_out(restrict(p, parse_subset(pre_subset)));
            else if (pre_op == "refines") out = {{"refines", is_refinement(p, q())}, {"bubble_refines", is_bubble_refinement(p, q())}};
            else if (pre_op == "total-refinement") out = preorder_out(minimal_total_refinement(p));
            else if (pre_op == "cuts") {
                out = json::array();
                for (const Cut& c : cuts(p)) out.push_back({{"down", mask_json(c.down)}, {"up", mask_json(c.up)}});
            } else {
                out = {{"total_preorder", is_total_preorder(p)}, {"total_order", is_total_order(p)},
                       {"partition_order", is_partition_order(p)}, {"poset", is_poset(p)},
                       {"discrete", is_discrete(p)}, {"coarse", is_coarse(p)}};
            }
            emit(out);
            return 0;
        }

        if (*park_cmd) {
            if (park_op == "enumerate") {
                json out = json::array();
                for (const auto& f : enumerate_parking_filtrations(park_n)) out.push_back(filtration_json(f));
                emit(out);
                return 0;
            }
            const Filtration f = parse_filtration(park_chain, park_word, park_n);
            json out;
            if (park_op == "parkize") out = filtration_json(parkize(f));
            else if (park_op == "break-points") out = {{"break_points", break_points(f)}};
            else if (park_op == "dilation") out = {{"dilation", dilation_sequence(f)}};
            else if (park_op == "preorder") out = preorder_out(filtration_preorder(f));
            else if (park_op == "slice-below") out = filtration_json(slice_below(parkize(f), park_b));
            else if (park_op == "slice-above") out = filtration_json(slice_above(parkize(f), park_b));
            else out = filtration_json(restrict_filtration(parkize(f), parse_subset(park_subset)));
            emit(out);
            return 0;
        }

        if (*pairs_cmd) {
            const PairKind kind = pair_kind_from_name(pairs_kind);
            json out;
            if (pairs_op == "enumerate") {
                out = json::array();
                const auto all = enumerate_preorders(pairs_n, std::max(pairs_n, 5));
                for (const auto& p : all)
                    for (const auto& q : all)
                        if (satisfies(kind, p, q)) out.push_back({{"p", preorder_text(p)}, {"q", preorder_text(q)}});
                if (format == "json") emit(out);
                else std::cout << out.size() << "\n";
                return 0;
            }
            if (pairs_op == "generate") {
                const json j = json::parse(read_source(pairs_frame));
                auto masks = [](const json& a) {
                    std::vector<Mask> out;
                    for (const auto& set : a) {
                        Mask m = 0;
                        for (const auto& x : set) m |= Mask(1) << x.get<int>();
                        out.push_back(m);
                    }
                    return out;
                };
                PairFrame frame{parse_preorder(j.at("first").get<std::string>()),
                                parse_preorder(j.at("second").get<std::string>()),
                                masks(j.value("refinable_first", json::array())),
                                masks(j.value("refinable_second", json::array()))};
                const Preorder rp = pairs_p.empty() ? frame.first : parse_preorder(pairs_p);
                const Preorder rq = pairs_q.empty() ? frame.second : parse_preorder(pairs_q);
                const auto pair = generate_pair(kind, frame, rp, rq);
                emit({{"p", preorder_out(pair.p)}, {"q", preorder_out(pair.q)}, {"kind", pair_kind_name(pair.kind)}});
                return 0;
            }
            const Preorder p = parse_preorder(pairs_p), q = parse_preorder(pairs_q);
            if (pairs_op == "classify") {
                const auto c = classify_pair(p, q);
                out = {{"cc", c.cc}, {"nc", c.nc}, {"cn", c.cn}, {"nn", c.nn}};
            } else if (pairs_op == "member") {
                const auto n = normalize(kind, p, q);
                out = {{"member", n.has_value()}, {"swapped", n ? n->swapped : false}};
                emit(out);
                return n ? 0 : 1;
            } else if (pairs_op == "frame") {
                const auto f = reconstruct_frame(kind, p, q);
                out = {{"first", preorder_out(f.first)},
                       {"second", preorder_out(f.second)},
                       {"refinable_first", masks_json(f.refinable_first)},
                       {"refinable_second", masks_json(f.refinable_second)}};
            } else {
                out = {{"matrix", cc_matrix(p, q)}};
            }
            emit(out);
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << json{{"error", error_code_name(e.code())}, {"message", e.what()}}.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "InvalidInput"}, {"message", e.what()}}.dump() << "\n";
        return 2;
    }
    return 2;
}
