#include "zetareg/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

namespace zetareg {

namespace {

long jlong(const Json& j, const char* what) {
    if (j.is_number_integer()) return j.get<long>();
    if (j.is_string()) {
        try {
            return std::stol(j.get<std::string>());
        } catch (const std::exception&) {
        }
    }
    throw ParseError(std::string("expected integer for ") + what);
}

Int jbig(const Json& j, const char* what) {
    if (j.is_number_integer()) return Int(j.get<long>());
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::invalid_argument&) {
        }
    }
    throw ParseError(std::string("expected integer for ") + what);
}

const Json& need(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end())
        throw ParseError(std::string("missing field \"") + key + "\"");
    return *it;
}

MultiPoly poly_from_json(const Json& j) {
    unsigned nvars = static_cast<unsigned>(jlong(need(j, "nvars"), "nvars"));
    std::vector<MultiPoly::Term> terms;
    for (const auto& t : need(j, "terms")) {
        MultiPoly::Term term;
        for (const auto& e : need(t, "exps"))
            term.exponents.push_back(
                static_cast<unsigned>(jlong(e, "exponent")));
        if (term.exponents.size() != nvars)
            throw ParseError("term exponent list length != nvars");
        term.coeff = static_cast<unsigned long long>(
            jlong(need(t, "coeff"), "coeff"));
        terms.push_back(std::move(term));
    }
    return make_poly(nvars, std::move(terms));
}

Json poly_to_json(const MultiPoly& p) {
    Json j;
    j["nvars"] = p.nvars;
    j["terms"] = Json::array();
    for (const auto& t : p.terms) {
        Json jt;
        jt["exps"] = t.exponents;
        jt["coeff"] = t.coeff;
        j["terms"].push_back(jt);
    }
    return j;
}

} // namespace

SpecPtr variety_from_json(const Json& j, const FieldRef& base) {
    std::string kind = need(j, "kind").get<std::string>();
    if (kind == "affine_space")
        return affine_space(base, static_cast<int>(jlong(need(j, "dim"), "dim")));
    if (kind == "projective_space")
        return projective_space(base,
                                static_cast<int>(jlong(need(j, "dim"), "dim")));
    if (kind == "affine_sub" || kind == "projective_sub") {
        int ambient = static_cast<int>(jlong(need(j, "ambient"), "ambient"));
        std::vector<MultiPoly> polys;
        for (const auto& p : need(j, "polys")) polys.push_back(poly_from_json(p));
        std::optional<int> dim;
        if (j.contains("dim")) dim = static_cast<int>(jlong(j["dim"], "dim"));
        if (kind == "affine_sub")
            return affine_sub(base, ambient, std::move(polys), dim);
        return projective_sub(base, ambient, std::move(polys), dim);
    }
    if (kind == "product")
        return product(variety_from_json(need(j, "left"), base),
                       variety_from_json(need(j, "right"), base));
    if (kind == "disjoint_union") {
        std::vector<SpecPtr> parts;
        for (const auto& p : need(j, "parts"))
            parts.push_back(variety_from_json(p, base));
        return disjoint_union(std::move(parts));
    }
    if (kind == "complement")
        return complement(variety_from_json(need(j, "ambient"), base),
                          variety_from_json(need(j, "closed"), base));
    if (kind == "base_restriction") {
        unsigned degree =
            static_cast<unsigned>(jlong(need(j, "degree"), "degree"));
        if (degree == 0) throw ParseError("restriction degree must be >= 1");
        FieldRef ext = build_field(base->p, base->e * degree);
        return base_restriction(variety_from_json(need(j, "inner"), ext),
                                degree);
    }
    throw ParseError("unknown variety kind: " + kind);
}

Json variety_to_json(const SpecPtr& spec) {
    Json j;
    switch (spec->kind) {
    case VarietySpec::Kind::AffineSpace:
        j["kind"] = "affine_space";
        j["dim"] = spec->ambient;
        break;
    case VarietySpec::Kind::ProjectiveSpace:
        j["kind"] = "projective_space";
        j["dim"] = spec->ambient;
        break;
    case VarietySpec::Kind::AffineSub:
    case VarietySpec::Kind::ProjectiveSub:
        j["kind"] = spec->kind == VarietySpec::Kind::AffineSub
                        ? "affine_sub"
                        : "projective_sub";
        j["ambient"] = spec->ambient;
        j["polys"] = Json::array();
        for (const auto& p : spec->polys) j["polys"].push_back(poly_to_json(p));
        j["dim"] = spec->dim;
        break;
    case VarietySpec::Kind::Product:
        j["kind"] = "product";
        j["left"] = variety_to_json(spec->left);
        j["right"] = variety_to_json(spec->right);
        break;
    case VarietySpec::Kind::DisjointUnion:
        j["kind"] = "disjoint_union";
        j["parts"] = Json::array();
        for (const auto& p : spec->parts)
            j["parts"].push_back(variety_to_json(p));
        break;
    case VarietySpec::Kind::Complement:
        j["kind"] = "complement";
        j["ambient"] = variety_to_json(spec->ambient_spec);
        j["closed"] = variety_to_json(spec->closed_spec);
        break;
    case VarietySpec::Kind::BaseRestriction:
        j["kind"] = "base_restriction";
        j["degree"] = spec->restrict_degree;
        j["inner"] = variety_to_json(spec->inner);
        break;
    }
    return j;
}

SNCConfig snc_from_json(const Json& j) {
    SNCConfig cfg;
    cfg.dim = static_cast<int>(jlong(need(j, "dim"), "dim"));
    for (const auto& level : need(j, "levels")) {
        std::vector<int> ids;
        for (const auto& id : level)
            ids.push_back(static_cast<int>(jlong(id, "stratum id")));
        cfg.levels.push_back(std::move(ids));
    }
    for (const auto& f : need(j, "faces")) {
        int from = static_cast<int>(jlong(need(f, "from"), "from"));
        int drop = static_cast<int>(jlong(need(f, "drop"), "drop"));
        int to = static_cast<int>(jlong(need(f, "to"), "to"));
        cfg.faces[{from, drop}] = to;
    }
    return cfg;
}

Json snc_to_json(const SNCConfig& cfg) {
    Json j;
    j["dim"] = cfg.dim;
    j["levels"] = cfg.levels;
    j["faces"] = Json::array();
    for (const auto& [key, to] : cfg.faces) {
        Json f;
        f["from"] = key.first;
        f["drop"] = key.second;
        f["to"] = to;
        j["faces"].push_back(f);
    }
    return j;
}

FQGroup fqgroup_from_json(const Json& j) {
    FQGroup g;
    FGAbGroup fin;
    if (j.contains("free"))
        fin.free_rank = static_cast<size_t>(jlong(j["free"], "free"));
    if (j.contains("torsion"))
        for (const auto& t : j["torsion"]) {
            Int d = jbig(t, "torsion order");
            if (d < 2) throw ParseError("torsion orders must be >= 2");
            fin.torsion.push_back(d);
        }
    // Normalize arbitrary cyclic factors into invariant-factor form.
    {
        size_t gens = fin.ngens();
        IntMatrix R(gens, fin.torsion.size());
        for (size_t i = 0; i < fin.torsion.size(); ++i)
            R.at(i, i) = fin.torsion[i];
        g.finite = group_from_presentation(gens, R);
    }
    if (j.contains("divisible") && !j["divisible"].is_null())
        g.divisible_rank = jbig(j["divisible"], "divisible");
    return g;
}

Json fqgroup_to_json(const FQGroup& g) {
    Json j;
    j["free"] = g.finite.free_rank;
    j["torsion"] = Json::array();
    for (const auto& d : g.finite.torsion) j["torsion"].push_back(d.get_str());
    if (g.divisible_rank)
        j["divisible"] = g.divisible_rank->get_str();
    else
        j["divisible"] = nullptr;
    return j;
}

ChowProfile profile_from_json(const Json& j, const std::string& base_dir) {
    if (j.contains("file")) {
        namespace fs = std::filesystem;
        fs::path path = fs::path(base_dir) / j["file"].get<std::string>();
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open profile file " + path.string());
        Json doc;
        try {
            doc = Json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(path.string() + ": " + e.what());
        }
        std::string name = need(j, "name").get<std::string>();
        if (!doc.contains(name))
            throw ParseError("profile \"" + name + "\" not in " + path.string());
        return profile_from_json(doc[name], path.parent_path().string());
    }
    if (j.contains("builder")) {
        std::string b = j["builder"].get<std::string>();
        if (b == "point") {
            Int q = jbig(need(j, "q"), "q");
            long r_depth = j.contains("r_depth") ? jlong(j["r_depth"], "r_depth") : 6;
            long i_max = j.contains("i_max") ? jlong(j["i_max"], "i_max") : 13;
            return point_profile(q, r_depth, i_max);
        }
        if (b == "curve") {
            std::vector<Int> P;
            for (const auto& c : need(j, "P")) P.push_back(jbig(c, "P coefficient"));
            return curve_profile(P, jbig(need(j, "q"), "q"),
                                 jlong(need(j, "e"), "e"));
        }
        if (b == "bundle") {
            ChowProfile base = profile_from_json(need(j, "base"), base_dir);
            return projective_bundle_profile(
                base, static_cast<int>(jlong(need(j, "n"), "n")));
        }
        throw ParseError("unknown profile builder: " + b);
    }
    ChowProfile p;
    p.tag = j.contains("tag") ? j["tag"].get<std::string>() : "";
    p.q = jbig(need(j, "q"), "q");
    p.dim = static_cast<int>(jlong(need(j, "dim"), "dim"));
    if (j.contains("component_degrees"))
        for (const auto& d : j["component_degrees"])
            p.component_degrees.push_back(jbig(d, "component degree"));
    else
        p.component_degrees = {Int(1)};
    for (const auto& [key, val] : need(j, "table").items()) {
        auto comma = key.find(',');
        if (comma == std::string::npos)
            throw ParseError("table key must be \"r,i\": " + key);
        long r = std::stol(key.substr(0, comma));
        long i = std::stol(key.substr(comma + 1));
        p.table[{r, i}] = fqgroup_from_json(val);
    }
    return p;
}

Json profile_to_json(const ChowProfile& p) {
    Json j;
    j["tag"] = p.tag;
    j["q"] = p.q.get_str();
    j["dim"] = p.dim;
    j["component_degrees"] = Json::array();
    for (const auto& d : p.component_degrees)
        j["component_degrees"].push_back(d.get_str());
    Json table = Json::object();
    for (const auto& [key, g] : p.table)
        table[std::to_string(key.first) + "," + std::to_string(key.second)] =
            fqgroup_to_json(g);
    j["table"] = table;
    return j;
}

RegulatorAssembly assembly_from_json(const Json& j, const std::string& base_dir) {
    RegulatorAssembly A;
    A.dim = static_cast<int>(jlong(need(j, "dim"), "dim"));
    for (const auto& t : need(j, "terms")) {
        RegTerm term;
        for (const auto& c : need(t, "components")) {
            RegComponent comp;
            comp.profile = profile_from_json(need(c, "profile"), base_dir);
            if (c.contains("constant_field_degree"))
                comp.constant_field_degree =
                    jbig(c["constant_field_degree"], "constant_field_degree");
            if (c.contains("degree_image_index")) {
                if (c["degree_image_index"].is_null())
                    comp.degree_image_index = std::nullopt;
                else
                    comp.degree_image_index =
                        jbig(c["degree_image_index"], "degree_image_index");
            }
            term.components.push_back(std::move(comp));
        }
        A.terms.push_back(std::move(term));
    }
    if (j.contains("weight_ranks")) {
        std::vector<Int> ranks;
        for (const auto& r : j["weight_ranks"])
            ranks.push_back(jbig(r, "weight rank"));
        A.weight_ranks = std::move(ranks);
    }
    validate_assembly(A);
    return A;
}

Scenario scenario_from_json(const Json& j, const std::string& base_dir) {
    if (!j.contains("schema") || jlong(j["schema"], "schema") != 1)
        throw ParseError("unsupported or missing schema version");
    Scenario s;
    s.name = need(j, "name").get<std::string>();
    const Json& f = need(j, "field");
    s.p = static_cast<unsigned long>(jlong(need(f, "p"), "p"));
    s.e = static_cast<unsigned>(jlong(need(f, "e"), "e"));
    s.field = build_field(s.p, s.e);
    if (j.contains("variety")) s.variety = variety_from_json(j["variety"], s.field);
    if (j.contains("snc")) s.snc = snc_from_json(j["snc"]);
    if (j.contains("strata")) {
        for (const auto& level : j["strata"]) {
            std::vector<SpecPtr> specs;
            for (const auto& v : level)
                specs.push_back(variety_from_json(v, s.field));
            s.strata.push_back(std::move(specs));
        }
    }
    if (j.contains("assembly"))
        s.assembly = assembly_from_json(j["assembly"], base_dir);
    if (j.contains("profile"))
        s.profile = profile_from_json(j["profile"], base_dir);
    if (j.contains("sign_only")) s.sign_only = j["sign_only"].get<bool>();
    if (j.contains("zeta_bound")) {
        const auto& b = j["zeta_bound"];
        if (!b.is_array() || b.size() != 2)
            throw ParseError("zeta_bound must be [num_degree, den_degree]");
        s.zeta_bound = {static_cast<size_t>(jlong(b[0], "zeta_bound")),
                        static_cast<size_t>(jlong(b[1], "zeta_bound"))};
    }
    if (j.contains("zeta_guard"))
        s.zeta_guard = static_cast<size_t>(jlong(j["zeta_guard"], "zeta_guard"));
    if (j.contains("depth"))
        s.depth = static_cast<size_t>(jlong(j["depth"], "depth"));
    for (const auto& t : need(j, "targets")) {
        Scenario::Target target;
        target.statement = need(t, "statement").get<std::string>();
        if (t.contains("r")) target.r = jlong(t["r"], "r");
        s.targets.push_back(std::move(target));
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scenario file " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    return scenario_from_json(j,
                              std::filesystem::path(path).parent_path().string());
}

namespace {

std::string group_str(const FGAbGroup& g) {
    if (g.is_trivial()) return "0";
    std::string out;
    auto app = [&](const std::string& s) {
        if (!out.empty()) out += " + ";
        out += s;
    };
    if (g.free_rank == 1) app("Z");
    else if (g.free_rank > 1) app("Z^" + std::to_string(g.free_rank));
    for (const auto& d : g.torsion) app("Z/" + d.get_str());
    return out;
}

Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

struct ZetaWork {
    const Scenario& s;
    unsigned jobs;

    size_t depth_for(std::optional<std::pair<size_t, size_t>> bound) const {
        if (s.depth) return *s.depth;
        if (bound) return bound->first + bound->second + s.zeta_guard;
        return 8;
    }

    RationalFunctionQ zeta_of(const SpecPtr& spec,
                              std::optional<std::pair<size_t, size_t>> bound) const {
        size_t m = depth_for(bound);
        std::vector<Int> counts;
        for (size_t n = 1; n <= m; ++n)
            counts.push_back(count_points(spec, static_cast<unsigned>(n), jobs));
        return reconstruct_rational(zeta_series(counts), bound, s.zeta_guard);
    }
};

void finish_compare(TargetResult& res, const Rat& lhs, const Rat& rhs,
                    const Int& p, bool sign_only) {
    res.lhs = lhs;
    res.rhs = rhs;
    res.lhs_stripped = strip_sign_ppower(lhs, p);
    res.rhs_stripped = strip_sign_ppower(rhs, p);
    bool ok = sign_only ? rat_abs(lhs) == rat_abs(rhs)
                        : *res.lhs_stripped == *res.rhs_stripped;
    res.verdict = ok ? "match" : "mismatch";
    res.factors.emplace_back("comparison",
                             sign_only ? "up to sign" : "up to sign and p-power");
}

void do_main_zero(const Scenario& s, const ZetaWork& zw, TargetResult& res) {
    if (!s.variety || !s.assembly) {
        res.verdict = "skipped";
        res.reason = "needs a variety and a regulator assembly";
        return;
    }
    SpadeReport spade = spadesuit_check(*s.assembly);
    if (spade.status == SpadeStatus::Failed) {
        res.verdict = "spade-failed";
        res.reason = spade.reason;
        return;
    }
    if (spade.status == SpadeStatus::Unknown) {
        res.verdict = "skipped";
        res.reason = "surjectivity hypothesis not certified: " + spade.reason;
        return;
    }
    RationalFunctionQ Z = zw.zeta_of(s.variety, s.zeta_bound);
    LaurentData lv = special_value(Z, s.field->cardinality(), 0);
    RegulatorChiReport full = regulator_chi(*s.assembly, Lambda::Z());
    RegulatorChiReport away = regulator_chi(*s.assembly, Lambda::Z_inv(Int(static_cast<long>(s.p))));
    res.factors.emplace_back("zeta_order", std::to_string(lv.order));
    for (const auto& tf : full.factors)
        res.factors.emplace_back("term_" + std::to_string(tf.term),
                                 rat_string(tf.contribution));
    finish_compare(res, lv.leading,
                   s.sign_only ? full.product : away.product,
                   Int(static_cast<long>(s.p)), s.sign_only);
}

Rat profile_product(const ChowProfile& prof, long r, long i_max) {
    Rat out(1);
    for (long i = 0; i <= i_max; ++i) {
        auto e = prof.entry(r, i);
        if (!e)
            throw IncompleteProfile("CH_" + std::to_string(r) + "(X, " +
                                    std::to_string(i) + ") unknown");
        Int t = e->finite.torsion_order();
        if (i % 2 == 0) out *= Rat(t);
        else out /= Rat(t);
    }
    out.canonicalize();
    return out;
}

void do_smooth_proper(const Scenario& s, const ZetaWork& zw, TargetResult& res) {
    if (!s.variety || !s.profile) {
        res.verdict = "skipped";
        res.reason = "needs a variety and a Chow profile";
        return;
    }
    RationalFunctionQ Z = zw.zeta_of(s.variety, s.zeta_bound);
    LaurentData lv = special_value(Z, s.field->cardinality(), 0);
    Rat rhs = profile_product(*s.profile, 0, 2L * s.profile->dim);
    res.factors.emplace_back("zeta_order", std::to_string(lv.order));
    finish_compare(res, lv.leading, rhs, Int(static_cast<long>(s.p)), s.sign_only);
}

void do_negative_r(const Scenario& s, const ZetaWork& zw, long r,
                   TargetResult& res) {
    if (!s.variety || !s.profile) {
        res.verdict = "skipped";
        res.reason = "needs a variety and a Chow profile";
        return;
    }
    if (r >= 0) throw ParseError("negative_r target needs r < 0");
    RationalFunctionQ Z = zw.zeta_of(s.variety, s.zeta_bound);
    LaurentData lv = special_value(Z, s.field->cardinality(), r);
    Rat rhs = profile_product(*s.profile, r, 2L * (s.profile->dim - r));
    res.factors.emplace_back("zeta_order", std::to_string(lv.order));
    finish_compare(res, lv.leading, rhs, Int(static_cast<long>(s.p)), s.sign_only);
}

void do_base_change(const Scenario& s, const ZetaWork& zw, TargetResult& res) {
    if (!s.variety ||
        s.variety->kind != VarietySpec::Kind::BaseRestriction) {
        res.verdict = "skipped";
        res.reason = "needs a base-restriction variety";
        return;
    }
    unsigned f = s.variety->restrict_degree;
    RationalFunctionQ Zk = zw.zeta_of(s.variety, std::nullopt);
    RationalFunctionQ ZK = zw.zeta_of(s.variety->inner, std::nullopt);
    LaurentData lk = special_value(Zk, s.field->cardinality(), 0);
    LaurentData lK =
        special_value(ZK, s.variety->inner->base->cardinality(), 0);
    res.factors.emplace_back("degree", std::to_string(f));
    res.factors.emplace_back("order_over_k", std::to_string(lk.order));
    res.factors.emplace_back("order_over_K", std::to_string(lK.order));
    res.lhs = lK.leading;
    res.rhs = Rat(static_cast<long>(f)) * lk.leading;
    bool ok = lK.order == lk.order && *res.lhs == *res.rhs;
    res.verdict = ok ? "match" : "mismatch";
    res.factors.emplace_back("comparison", "exact");
}

void do_snc_multiplicativity(const Scenario& s, const ZetaWork& zw,
                             TargetResult& res) {
    if (!s.variety || !s.snc || s.strata.size() != s.snc->levels.size()) {
        res.verdict = "skipped";
        res.reason = "needs a variety, boundary data, and matching strata";
        return;
    }
    validate_snc(*s.snc);
    for (size_t a = 0; a < s.strata.size(); ++a)
        if (s.strata[a].size() != s.snc->levels[a].size())
            throw ParseError("stratum list does not match level " +
                             std::to_string(a));
    RationalFunctionQ lhsZ = zw.zeta_of(s.variety, s.zeta_bound);
    RationalFunctionQ rhsZ = rf_one();
    for (size_t a = 0; a < s.strata.size(); ++a) {
        for (const auto& spec : s.strata[a]) {
            RationalFunctionQ Zs = zw.zeta_of(spec, std::nullopt);
            rhsZ = rf_mul(rhsZ, a % 2 == 0 ? Zs : rf_inv(Zs));
        }
    }
    bool same = rf_equal(lhsZ, rhsZ);
    LaurentData ll = special_value(lhsZ, s.field->cardinality(), 0);
    LaurentData rl = special_value(rhsZ, s.field->cardinality(), 0);
    res.lhs = ll.leading;
    res.rhs = rl.leading;
    res.factors.emplace_back("zeta_order", std::to_string(ll.order));
    res.factors.emplace_back("comparison", "full rational function");
    res.verdict = same ? "match" : "mismatch";
}

void do_weight_vanishing(const Scenario& s, TargetResult& res) {
    if (!s.snc) {
        res.verdict = "skipped";
        res.reason = "needs boundary data";
        return;
    }
    WeightComplex W = build_snc_complex(*s.snc, Lambda::Z());
    std::vector<FGAbGroup> H = weight_homology(W);
    bool ok = true;
    for (size_t j = 0; j < H.size(); ++j) {
        res.factors.emplace_back("H_" + std::to_string(j), group_str(H[j]));
        if (static_cast<int>(j) > s.snc->dim && !H[j].is_trivial()) ok = false;
    }
    LocalizationReport loc = localization_check(*s.snc, Lambda::Z());
    res.factors.emplace_back("long_sequence_exact", loc.exact ? "yes" : "no");
    if (!loc.exact) {
        ok = false;
        res.reason = "long sequence fails at degree " +
                     std::to_string(loc.failing_degree);
    }
    res.verdict = ok ? "match" : "mismatch";
}

} // namespace

ScenarioReport run_scenario(const Scenario& s, unsigned jobs) {
    ScenarioReport rep;
    rep.name = s.name;
    ZetaWork zw{s, jobs};
    for (const auto& t : s.targets) {
        TargetResult res;
        res.statement = t.statement;
        try {
            if (t.statement == "main_zero") do_main_zero(s, zw, res);
            else if (t.statement == "smooth_proper") do_smooth_proper(s, zw, res);
            else if (t.statement == "negative_r") do_negative_r(s, zw, t.r, res);
            else if (t.statement == "base_change") do_base_change(s, zw, res);
            else if (t.statement == "snc_multiplicativity")
                do_snc_multiplicativity(s, zw, res);
            else if (t.statement == "weight_vanishing")
                do_weight_vanishing(s, res);
            else {
                res.verdict = "error";
                res.reason = "unknown statement: " + t.statement;
            }
        } catch (const Error& e) {
            res.verdict = "error";
            res.reason = e.what();
        }
        if (res.verdict == "mismatch" || res.verdict == "spade-failed")
            rep.all_match = false;
        if (res.verdict == "error") {
            rep.all_match = false;
            rep.had_error = true;
        }
        rep.targets.push_back(std::move(res));
    }
    return rep;
}

Json report_to_json(const ScenarioReport& r) {
    Json j;
    j["name"] = r.name;
    j["all_match"] = r.all_match;
    j["targets"] = Json::array();
    for (const auto& t : r.targets) {
        Json jt;
        jt["statement"] = t.statement;
        jt["verdict"] = t.verdict;
        if (!t.reason.empty()) jt["reason"] = t.reason;
        if (t.lhs) jt["lhs"] = rat_string(*t.lhs);
        if (t.rhs) jt["rhs"] = rat_string(*t.rhs);
        if (t.lhs_stripped) jt["lhs_stripped"] = rat_string(*t.lhs_stripped);
        if (t.rhs_stripped) jt["rhs_stripped"] = rat_string(*t.rhs_stripped);
        Json factors = Json::array();
        for (const auto& [k, v] : t.factors) {
            Json jf;
            jf[k] = v;
            factors.push_back(jf);
        }
        jt["factors"] = factors;
        j["targets"].push_back(jt);
    }
    return j;
}

int run_scenario_files(const std::vector<std::string>& paths, unsigned jobs,
                       std::ostream& out, std::vector<Json>* json_reports) {
    std::vector<Scenario> scenarios;
    for (const auto& path : paths) {
        try {
            scenarios.push_back(load_scenario(path));
        } catch (const Error& e) {
            out << "input error: " << e.what() << "\n";
            return 2;
        }
    }
    std::vector<ScenarioReport> reports(scenarios.size());
    if (jobs > 1 && scenarios.size() > 1) {
        std::atomic<size_t> next{0};
        std::vector<std::thread> workers;
        unsigned nthreads =
            std::min<size_t>(jobs, scenarios.size());
        for (unsigned t = 0; t < nthreads; ++t)
            workers.emplace_back([&] {
                for (;;) {
                    size_t i = next.fetch_add(1);
                    if (i >= scenarios.size()) return;
                    reports[i] = run_scenario(scenarios[i], 1);
                }
            });
        for (auto& w : workers) w.join();
    } else {
        for (size_t i = 0; i < scenarios.size(); ++i)
            reports[i] = run_scenario(scenarios[i], jobs);
    }
    bool all_ok = true;
    for (const auto& rep : reports) {
        out << rep.name << "\n";
        for (const auto& t : rep.targets) {
            out << "  " << t.statement << ": " << t.verdict;
            if (t.lhs && t.rhs)
                out << "  lhs=" << rat_string(*t.lhs)
                    << " rhs=" << rat_string(*t.rhs);
            if (!t.reason.empty()) out << "  (" << t.reason << ")";
            out << "\n";
        }
        if (!rep.all_match) all_ok = false;
        if (json_reports) json_reports->push_back(report_to_json(rep));
    }
    return all_ok ? 0 : 1;
}

} // namespace zetareg
